//! Temporary diagnostic: census of order-1152 subgroups in the two
//! order-4608 realizations of the local Clifford group.

use std::collections::BTreeSet;
use std::sync::Arc;

use cbnv_core::coxeter::{find_certificate, CoxeterType};
use cbnv_core::gate::{gate, GateMatrix, GateName};
use cbnv_core::group::{closure, from_elements, quotient, FiniteGroup, GroupElement};

fn on(name: GateName, n: usize, pos: &[usize]) -> GateMatrix {
    gate(name, n, pos).expect("valid gate")
}

fn census(name: &str, g: &FiniteGroup<GateMatrix>, b2: &FiniteGroup<GateMatrix>, c2: &FiniteGroup<GateMatrix>) {
    let total = g.order();
    let target = total / 4;
    println!("== {name}: order {total}, abelianization {:?}", g.abelianization_invariants());
    let lattice = g.normal_subgroup_lattice(target, 4096).expect("lattice");
    let mut orders: Vec<u64> = lattice.iter().map(|n| n.order()).collect();
    orders.sort_unstable();
    println!("   normal lattice orders (<= {target}): {orders:?}");
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut cands: Vec<FiniteGroup<GateMatrix>> = Vec::new();
    for n in &lattice {
        if target % n.order() != 0 || 6 % (target / n.order()) != 0 {
            continue;
        }
        let q = quotient(&Arc::new(g.clone_for_probe()), n);
        let q = match q {
            Ok(q) => q,
            Err(e) => {
                println!("   quotient failed: {e}");
                continue;
            }
        };
        let sub_order = q.order() / 4;
        for t in q.subgroups_of_order(sub_order, 4096).expect("subgroups") {
            let mut ords: Vec<u32> = Vec::new();
            let mut members: Vec<GateMatrix> = Vec::new();
            for (ord, x) in g.elements().iter().enumerate() {
                if t.membership(&q.project(x).expect("project")) {
                    ords.push(ord as u32);
                    members.push(x.clone());
                }
            }
            if members.len() as u64 == target && seen.insert(ords) {
                cands.push(from_elements(members).expect("candidate group"));
            }
        }
    }
    println!("   order-{target} subgroups found: {}", cands.len());
    let omega = GateMatrix::identity(2).mul_unit(1);
    let f4 = CoxeterType::F4.data();
    for (i, cand) in cands.iter().enumerate() {
        let cert = find_certificate(cand, &f4, 50_000_000).expect("certificate search");
        let has_omega = cand.membership(&omega);
        let has_i = cand.membership(&GateMatrix::identity(2).mul_unit(2));
        let meet: u64 = b2.elements().iter().filter(|e| cand.membership(e)).count() as u64;
        let mut gen_ords: Vec<u32> = Vec::new();
        for e in cand.generator_elements().iter().chain(b2.generator_elements().iter()) {
            gen_ords.push(c2.ord_of_key(&e.key()).expect("inside c2"));
        }
        let joint = c2.generated_order(&gen_ords);
        println!(
            "   cand {i}: f4_cert={} omega={} i={} |cand ^ B2|={} |<cand,B2>|={} abel={:?} center={} exponent={}",
            cert.is_some(),
            has_omega,
            has_i,
            meet,
            joint,
            cand.abelianization_invariants(),
            cand.center().order(),
            cand.exponent(),
        );
    }
}

trait CloneForProbe {
    fn clone_for_probe(&self) -> Self;
}

impl CloneForProbe for FiniteGroup<GateMatrix> {
    fn clone_for_probe(&self) -> Self {
        from_elements(self.elements().to_vec()).expect("reclone")
    }
}

#[test]
#[ignore]
fn census_local_realizations() {
    let h0 = on(GateName::H, 2, &[0]);
    let h1 = on(GateName::H, 2, &[1]);
    let p0 = on(GateName::P, 2, &[0]);
    let p1 = on(GateName::P, 2, &[1]);
    let t = on(GateName::T, 2, &[0, 1]);
    let r = on(GateName::R, 2, &[0, 1]);
    let cz = on(GateName::Cz, 2, &[0, 1]);

    let c2l = closure(&[h0.clone(), h1.clone(), p0.clone(), p1.clone()], 6_000).expect("c2l");
    let b2 = closure(&[h0.mul(&h1), h0.mul(&p1), r.clone()], 20_000).expect("b2");
    let c2 = closure(&[h0.clone(), h1.clone(), p0.clone(), p1.clone(), cz], 100_000).expect("c2");
    println!("|C2L|={} |B2|={} |C2|={}", c2l.order(), b2.order(), c2.order());
    println!("T in C2L: {}", c2l.membership(&t));
    println!("T in C2: {}", c2.membership(&t));

    let alt = closure(&[h0.mul(&h1), h0.mul(&p1), t.clone()], 20_000).expect("alt");
    println!("|<HxH, HxP, T>| = {}", alt.order());
    let same = alt.order() == c2l.order()
        && alt.elements().iter().all(|e| c2l.membership(e));
    println!("alt == C2L as sets: {same}");

    census("pure-local C2L", &c2l, &b2, &c2);
    census("swap-closure <HxH,HxP,T>", &alt, &b2, &c2);
}
