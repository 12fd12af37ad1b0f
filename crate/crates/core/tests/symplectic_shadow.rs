//! Cross-checks between the matrix route and the action-table route.
//!
//! Every order computed through the symplectic factorization is compared
//! against a direct exact-matrix closure or a classical formula, never
//! against itself.

use cbnv_core::clifford::{
    action_table, enumerate_pauli_cosets, order_via_factorization, symplectic_group_order,
    symplectic_of, SymplecticMatrix,
};
use cbnv_core::gate::{gate, GateMatrix, GateName};
use cbnv_core::group::{closure, GroupElement};
use cbnv_core::pauli::PauliElement;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn on(name: GateName, n: usize, pos: &[usize]) -> GateMatrix {
    gate(name, n, pos).unwrap()
}

/// H tensor H, H tensor P, CZ: the full two-qubit Clifford generators.
fn c2_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::H, 2, &[0]).mul(&on(GateName::H, 2, &[1])),
        on(GateName::H, 2, &[0]).mul(&on(GateName::P, 2, &[1])),
        on(GateName::Cz, 2, &[0, 1]),
    ]
}

/// H tensor H, H tensor P, R: the two-qubit real-entangler subgroup.
fn b2_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::H, 2, &[0]).mul(&on(GateName::H, 2, &[1])),
        on(GateName::H, 2, &[0]).mul(&on(GateName::P, 2, &[1])),
        on(GateName::R, 2, &[0, 1]),
    ]
}

#[test]
fn two_qubit_clifford_order_agrees_between_routes() {
    let gens = c2_gens();
    let direct = closure(&gens, 100_000).unwrap();
    let factored = order_via_factorization(&gens, 100_000).unwrap();
    assert_eq!(direct.order(), 92_160);
    assert_eq!(factored.order, direct.order());
    assert_eq!(factored.image_order, symplectic_group_order(2));
    assert_eq!(factored.kernel_order, 128);
}

#[test]
fn two_qubit_kernel_is_the_phased_pauli_group() {
    let factored = order_via_factorization(&c2_gens(), 100_000).unwrap();
    let phased_pauli = closure(
        &[
            PauliElement::x_gen(2, 0).to_matrix(),
            PauliElement::x_gen(2, 1).to_matrix(),
            PauliElement::z_gen(2, 0).to_matrix(),
            PauliElement::z_gen(2, 1).to_matrix(),
            GateMatrix::identity(2).mul_unit(1),
        ],
        256,
    )
    .unwrap();
    assert_eq!(factored.kernel.order(), phased_pauli.order());
    for m in phased_pauli.elements() {
        assert!(
            factored.kernel.ord_of_key(&m.key()).is_some(),
            "kernel misses a phased Pauli element"
        );
    }
}

#[test]
fn symplectic_image_closure_matches_the_classical_formula() {
    let sp_gens: Vec<SymplecticMatrix> = c2_gens()
        .iter()
        .map(|m| symplectic_of(&action_table(m).unwrap()).unwrap())
        .collect();
    let image = closure(&sp_gens, 10_000).unwrap();
    assert_eq!(image.order(), symplectic_group_order(2));
    assert_eq!(image.order(), 720);
}

#[test]
fn shadow_is_a_homomorphism_on_ten_thousand_random_words() {
    let gens = c2_gens();
    let mut rng = ChaCha8Rng::seed_from_u64(0xCB17);
    let word = |len: usize, rng: &mut ChaCha8Rng| -> GateMatrix {
        let mut m = GateMatrix::identity(2);
        for _ in 0..len {
            m = m.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        m
    };
    for _ in 0..10_000 {
        let a = word(rng.gen_range(1..8), &mut rng);
        let b = word(rng.gen_range(1..8), &mut rng);
        let lhs = symplectic_of(&action_table(&a.mul(&b)).unwrap()).unwrap();
        let rhs = symplectic_of(&action_table(&a).unwrap())
            .unwrap()
            .mul(&symplectic_of(&action_table(&b).unwrap()).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn real_subgroup_coset_counts_and_order_identity() {
    let gens = b2_gens();
    let plain = enumerate_pauli_cosets(&gens, false, 10_000).unwrap();
    assert_eq!(plain.plain_count, 120);

    let keyed = enumerate_pauli_cosets(&gens, true, 10_000).unwrap();
    assert_eq!(keyed.plain_count, 120);
    assert_eq!(keyed.keyed_count, 240);
    assert!(keyed.both_parities_seen);

    // |G| = (number of Pauli cosets) * |phased Pauli group| when the
    // group contains both the Paulis and the eighth root of unity.
    let factored = order_via_factorization(&gens, 100_000).unwrap();
    assert_eq!(factored.order, 15_360);
    assert_eq!(factored.order, keyed.keyed_count * 64);
    let direct = closure(&gens, 20_000).unwrap();
    assert_eq!(direct.order(), factored.order);
}

#[test]
fn full_two_qubit_coset_counts() {
    let gens = c2_gens();
    let plain = enumerate_pauli_cosets(&gens, false, 10_000).unwrap();
    assert_eq!(plain.plain_count, 720);
    let keyed = enumerate_pauli_cosets(&gens, true, 10_000).unwrap();
    assert_eq!(keyed.keyed_count, 1440);
}

#[test]
fn single_qubit_kernel_across_routes() {
    let gens = [on(GateName::H, 1, &[0]), on(GateName::P, 1, &[0])];
    let factored = order_via_factorization(&gens, 10_000).unwrap();
    let direct = closure(&gens, 10_000).unwrap();
    assert_eq!(direct.order(), 192);
    assert_eq!(factored.order, direct.order());
    assert_eq!(factored.image_order, 6);
    assert_eq!(factored.kernel_order, 32);
}
