//! Double-coset partitions `A\G/B`.

use super::{FiniteGroup, GroupElement};
use crate::error::{Error, Result};

/// Partition of a group into `(A, B)` double cosets. Cosets are numbered in
/// order of their least element ordinal, which is also the stored
/// representative.
#[derive(Clone, Debug)]
pub struct DoubleCosets {
    pub coset_of: Vec<u32>,
    pub sizes: Vec<u64>,
    pub reps: Vec<u32>,
}

impl DoubleCosets {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }
}

impl<E: GroupElement> FiniteGroup<E> {
    /// Partitions the whole group into `a`-left, `b`-right orbits.
    pub fn double_cosets(
        &self,
        a: &FiniteGroup<E>,
        b: &FiniteGroup<E>,
    ) -> Result<DoubleCosets> {
        if !self.contains_group(a) || !self.contains_group(b) {
            return Err(Error::NotASubgroup);
        }
        let left_maps: Vec<Vec<u32>> = a
            .generator_elements()
            .iter()
            .map(|g| self.left_mult_perm(self.ord_of_key(&g.key()).unwrap()))
            .collect();
        let right_maps: Vec<Vec<u32>> = b
            .generator_elements()
            .iter()
            .map(|g| self.right_mult_perm(self.ord_of_key(&g.key()).unwrap()))
            .collect();

        let n = self.order() as usize;
        let mut coset_of = vec![u32::MAX; n];
        let mut sizes = Vec::new();
        let mut reps = Vec::new();
        for start in 0..n as u32 {
            if coset_of[start as usize] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            reps.push(start);
            let mut size = 0u64;
            let mut stack = vec![start];
            coset_of[start as usize] = id;
            while let Some(x) = stack.pop() {
                size += 1;
                for map in left_maps.iter().chain(&right_maps) {
                    let y = map[x as usize];
                    if coset_of[y as usize] == u32::MAX {
                        coset_of[y as usize] = id;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        debug_assert_eq!(sizes.iter().sum::<u64>(), self.order());
        Ok(DoubleCosets { coset_of, sizes, reps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::closure;
    use crate::perm::{self, Permutation};

    #[test]
    fn s3_over_a_transposition_has_two_cosets() {
        let s3 = perm::symmetric(3);
        let a = closure(&[Permutation::from_cycles(3, &[vec![0, 1]]).unwrap()], 10).unwrap();
        let dc = s3.double_cosets(&a, &a).unwrap();
        let mut sizes = dc.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(dc.count(), 2);
    }

    #[test]
    fn whole_group_gives_a_single_coset() {
        let s4 = perm::symmetric(4);
        let dc = s4.double_cosets(&s4, &perm::symmetric(4)).unwrap();
        assert_eq!(dc.sizes, vec![24]);
    }

    #[test]
    fn trivial_subgroups_give_singletons() {
        let s3 = perm::symmetric(3);
        let trivial = closure(&[Permutation::identity(3)], 1).unwrap();
        let dc = s3.double_cosets(&trivial, &trivial).unwrap();
        assert_eq!(dc.count(), 6);
        assert!(dc.sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn sizes_match_the_orbit_counting_identity() {
        // |A x B| = |A| * |B| / |A ∩ x B x^-1| for every representative x.
        let g = perm::symmetric(4);
        let a = closure(
            &[Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
              Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap()],
            6,
        )
        .unwrap();
        let b = closure(&[Permutation::from_cycles(4, &[vec![2, 3]]).unwrap()], 2).unwrap();
        let dc = g.double_cosets(&a, &b).unwrap();
        assert_eq!(dc.sizes.iter().sum::<u64>(), 24);
        for (idx, &rep) in dc.reps.iter().enumerate() {
            let x = g.element(rep);
            let xinv = x.inverse();
            let stab = a
                .elements()
                .iter()
                .filter(|e| b.membership(&xinv.mul(e).mul(x)))
                .count() as u64;
            assert_eq!(dc.sizes[idx], a.order() * b.order() / stab);
        }
    }

    #[test]
    fn non_subgroups_are_rejected() {
        let s3 = perm::symmetric(3);
        let s4 = perm::symmetric(4);
        assert!(matches!(s3.double_cosets(&s4, &s4), Err(Error::NotASubgroup)));
    }
}
