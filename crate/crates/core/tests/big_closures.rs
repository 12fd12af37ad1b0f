//! Expensive three-qubit group computations, ignored by default.
//!
//! Run with `cargo test --test big_closures -- --ignored --nocapture`.
//! These exercise the same paths the claim checks use, at full size, and
//! print wall times so regressions are visible.

use std::time::Instant;

use cbnv_core::clifford::{enumerate_pauli_cosets, order_via_factorization};
use cbnv_core::gate::{gate, GateMatrix, GateName};

fn on(name: GateName, n: usize, pos: &[usize]) -> GateMatrix {
    gate(name, n, pos).unwrap()
}

/// H tensor H tensor P, H tensor R, R tensor H.
fn b3_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::H, 3, &[0]).mul(&on(GateName::H, 3, &[1])).mul(&on(GateName::P, 3, &[2])),
        on(GateName::H, 3, &[0]).mul(&on(GateName::R, 3, &[1, 2])),
        on(GateName::R, 3, &[0, 1]).mul(&on(GateName::H, 3, &[2])),
    ]
}

/// H tensor H tensor P, H tensor CZ, CZ tensor H.
fn c3_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::H, 3, &[0]).mul(&on(GateName::H, 3, &[1])).mul(&on(GateName::P, 3, &[2])),
        on(GateName::H, 3, &[0]).mul(&on(GateName::Cz, 3, &[1, 2])),
        on(GateName::Cz, 3, &[0, 1]).mul(&on(GateName::H, 3, &[2])),
    ]
}

#[test]
#[ignore = "minutes-scale three-qubit computation"]
fn three_qubit_real_group_factorizes() {
    let t0 = Instant::now();
    let f = order_via_factorization(&b3_gens(), 2_000_000).unwrap();
    println!(
        "b3: order {} = image {} x kernel {} in {:.1?}",
        f.order,
        f.image_order,
        f.kernel_order,
        t0.elapsed()
    );
    assert_eq!(f.image_order, 51_840);
    assert_eq!(f.kernel_order, 256);
    assert_eq!(f.order, 13_271_040);
}

#[test]
#[ignore = "minutes-scale three-qubit computation"]
fn three_qubit_full_group_factorizes() {
    let t0 = Instant::now();
    let f = order_via_factorization(&c3_gens(), 2_000_000).unwrap();
    println!(
        "c3: order {} = image {} x kernel {} in {:.1?}",
        f.order,
        f.image_order,
        f.kernel_order,
        t0.elapsed()
    );
    assert_eq!(f.image_order, 1_451_520);
    assert_eq!(f.kernel_order, 512);
    assert_eq!(f.order, 743_178_240);
}

#[test]
#[ignore = "minutes-scale three-qubit computation"]
fn three_qubit_real_group_coset_census() {
    let t0 = Instant::now();
    let plain = enumerate_pauli_cosets(&b3_gens(), false, 100_000).unwrap();
    println!("b3 plain cosets: {} in {:.1?}", plain.plain_count, t0.elapsed());
    assert_eq!(plain.plain_count, 51_840);

    let t1 = Instant::now();
    let keyed = enumerate_pauli_cosets(&b3_gens(), true, 100_000).unwrap();
    println!(
        "b3 keyed cosets: {} (both parities: {}) in {:.1?}",
        keyed.keyed_count, keyed.both_parities_seen, t1.elapsed()
    );
    // The eighth root of unity is not in the group, so the parity
    // refinement does not split any class.
    assert_eq!(keyed.keyed_count, 51_840);
    assert!(!keyed.both_parities_seen);
}
