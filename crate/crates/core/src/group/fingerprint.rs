//! Isomorphism-invariant group fingerprints.
//!
//! Equal fingerprints are necessary but not sufficient for isomorphism;
//! verdicts based on them must say "fingerprint-consistent". An explicit
//! isomorphism witness (see [`super::morphism`]) upgrades the verdict.

use super::{FiniteGroup, GroupElement};
use serde::Serialize;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GroupFingerprint {
    pub order: u64,
    pub center_order: u64,
    /// Orders along `G' ⊇ G'' ⊇ …` until stable.
    pub derived_series: Vec<u64>,
    /// Primary invariants of `G/G'` (sorted prime powers).
    pub abelianization: Vec<u64>,
    /// (class size, multiplicity), sorted by size.
    pub class_sizes: Vec<(u64, u64)>,
    /// (element order, count), sorted by order.
    pub order_histogram: Vec<(u32, u64)>,
    pub exponent: u64,
}

impl<E: GroupElement> FiniteGroup<E> {
    pub fn fingerprint(&self) -> GroupFingerprint {
        let classes = self.conjugacy_classes();
        let mut size_counts = std::collections::BTreeMap::new();
        for class in &classes.classes {
            *size_counts.entry(class.len() as u64).or_insert(0u64) += 1;
        }
        let mut order_counts = std::collections::BTreeMap::new();
        for &o in self.element_orders() {
            *order_counts.entry(o).or_insert(0u64) += 1;
        }
        GroupFingerprint {
            order: self.order(),
            center_order: self.center().order(),
            derived_series: self.derived_series_orders(),
            abelianization: self.abelianization_invariants(),
            class_sizes: size_counts.into_iter().collect(),
            order_histogram: order_counts.into_iter().collect(),
            exponent: self.exponent(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::closure;
    use crate::perm::{self, Permutation};

    #[test]
    fn isomorphic_copies_fingerprint_identically() {
        // S3 on three points vs S3 acting on four points fixing the last.
        let s3 = perm::symmetric(3);
        let embedded = closure(
            &[
                Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap(),
            ],
            6,
        )
        .unwrap();
        assert_eq!(s3.fingerprint(), embedded.fingerprint());
    }

    #[test]
    fn z4_and_klein_four_differ() {
        let z4 = perm::cyclic(4).fingerprint();
        let v4 = perm::z2_power(2).fingerprint();
        assert_eq!(z4.order, v4.order);
        assert_ne!(z4.order_histogram, v4.order_histogram);
        assert_ne!(z4, v4);
    }

    #[test]
    fn fingerprint_fields_for_s4() {
        let fp = perm::symmetric(4).fingerprint();
        assert_eq!(fp.order, 24);
        assert_eq!(fp.center_order, 1);
        assert_eq!(fp.derived_series, vec![12, 4, 1]);
        assert_eq!(fp.abelianization, vec![2]);
        assert_eq!(fp.class_sizes, vec![(1, 1), (3, 1), (6, 2), (8, 1)]);
        assert_eq!(fp.order_histogram, vec![(1, 1), (2, 9), (3, 8), (4, 6)]);
        assert_eq!(fp.exponent, 12);
    }

    #[test]
    fn conjugated_copy_is_indistinguishable() {
        let a5 = perm::alternating(5);
        // Relabel points by an outer conjugation inside S5.
        let outer = Permutation::from_cycles(5, &[vec![0, 4]]).unwrap();
        let gens: Vec<Permutation> = a5
            .generator_elements()
            .iter()
            .map(|g| outer.inverse().mul(g).mul(&outer))
            .collect();
        let copy = closure(&gens, 60).unwrap();
        assert_eq!(a5.fingerprint(), copy.fingerprint());
    }
}
