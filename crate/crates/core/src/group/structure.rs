//! Structural queries on an enumerated group: conjugacy classes, element
//! orders, center, derived and lower central series, exhaustive normal
//! subgroup and complement searches.

use super::{closure, from_elements, FiniteGroup, GroupElement};
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet};

/// Partition of the element ordinals into conjugacy classes. Classes are
/// numbered in order of their least ordinal.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub class_of: Vec<u32>,
    pub classes: Vec<Vec<u32>>,
}

/// Outcome of an exhaustive complement search for a normal subgroup.
pub struct SplitCheck<E: GroupElement> {
    pub splits: bool,
    pub complement: Option<FiniteGroup<E>>,
}

impl<E: GroupElement> FiniteGroup<E> {
    /// Orbits of the conjugation action, computed once and cached.
    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes_cache().get_or_init(|| {
            let n = self.order() as usize;
            // conj_g(x) = g * x * g^-1 as an ordinal permutation per generator.
            let conj_maps: Vec<Vec<u32>> = self
                .generator_ords()
                .iter()
                .map(|&g| {
                    let gi = self.inverse_ord(g);
                    let right = self.right_mult_perm(gi);
                    (0..n as u32).map(|x| self.mul_ord(g, right[x as usize])).collect()
                })
                .collect();
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n as u32 {
                if class_of[start as usize] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut orbit = vec![start];
                class_of[start as usize] = id;
                let mut head = 0;
                while head < orbit.len() {
                    let x = orbit[head];
                    head += 1;
                    for map in &conj_maps {
                        let y = map[x as usize];
                        if class_of[y as usize] == u32::MAX {
                            class_of[y as usize] = id;
                            orbit.push(y);
                        }
                    }
                }
                orbit.sort();
                classes.push(orbit);
            }
            ConjugacyClasses { class_of, classes }
        })
    }

    /// Multiplicative order of every element, cached.
    pub fn element_orders(&self) -> &[u32] {
        self.orders_cache().get_or_init(|| {
            let id = self.identity_ord();
            (0..self.order() as u32)
                .map(|x| {
                    let mut pow = x;
                    let mut ord = 1u32;
                    while pow != id {
                        pow = self.mul_ord(pow, x);
                        ord += 1;
                    }
                    ord
                })
                .collect()
        })
    }

    pub fn element_order(&self, ord: u32) -> u32 {
        self.element_orders()[ord as usize]
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders().iter().fold(1u64, |acc, &o| {
            let o = o as u64;
            acc / gcd(acc, o) * o
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_ords();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul_ord(a, b) == self.mul_ord(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.element_orders().iter().any(|&o| o as u64 == n)
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> FiniteGroup<E> {
        let centrals: Vec<E> = (0..self.order() as u32)
            .filter(|&x| {
                self.generator_ords()
                    .iter()
                    .all(|&g| self.mul_ord(g, x) == self.mul_ord(x, g))
            })
            .map(|x| self.element(x).clone())
            .collect();
        from_elements(centrals).expect("the center is a subgroup")
    }

    /// Smallest subgroup containing `seeds` and closed under conjugation.
    pub fn normal_closure(&self, seeds: &[E]) -> FiniteGroup<E> {
        let budget = self.order() as usize;
        let mut gens: Vec<E> = Vec::new();
        let mut seen: HashSet<E::Key> = HashSet::new();
        for s in seeds {
            if seen.insert(s.key()) {
                gens.push(s.clone());
            }
        }
        if gens.is_empty() {
            gens.push(self.element(self.identity_ord()).identity_like());
        }
        loop {
            let sub = closure(&gens, budget).expect("normal closure stays inside the group");
            let mut grew = false;
            for &g in self.generator_ords() {
                let ge = self.element(g);
                let gi = ge.inverse();
                for s in gens.clone() {
                    let conj = ge.mul(&s).mul(&gi);
                    if !sub.membership(&conj) && seen.insert(conj.key()) {
                        gens.push(conj);
                        grew = true;
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    /// The commutator subgroup, i.e. the normal closure of all generator
    /// commutators.
    pub fn derived_subgroup(&self) -> FiniteGroup<E> {
        let mut comms = Vec::new();
        for &a in self.generator_ords() {
            for &b in self.generator_ords() {
                let ae = self.element(a);
                let be = self.element(b);
                comms.push(ae.mul(be).mul(&ae.inverse()).mul(&be.inverse()));
            }
        }
        self.normal_closure(&comms)
    }

    /// Orders along `G' ⊇ G'' ⊇ …` until they stabilize.
    pub fn derived_series_orders(&self) -> Vec<u64> {
        let mut series = Vec::new();
        let mut current = self.derived_subgroup();
        loop {
            series.push(current.order());
            if current.order() == 1 {
                return series;
            }
            let next = current.derived_subgroup();
            if next.order() == current.order() {
                return series;
            }
            current = next;
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Orders along the lower central series `G ⊇ [G,G] ⊇ [G,[G,G]] ⊇ …`
    /// until stable.
    pub fn lower_central_series_orders(&self) -> Vec<u64> {
        let mut series = vec![self.order()];
        let mut current: Option<FiniteGroup<E>> = None;
        loop {
            let prev_gens: Vec<E> = match &current {
                None => self.generator_elements(),
                Some(g) => g.generator_elements(),
            };
            let mut comms = Vec::new();
            for &a in self.generator_ords() {
                let ae = self.element(a);
                for be in &prev_gens {
                    comms.push(ae.mul(be).mul(&ae.inverse()).mul(&be.inverse()));
                }
            }
            let next = self.normal_closure(&comms);
            if series.last() == Some(&next.order()) {
                return series;
            }
            series.push(next.order());
            if next.order() == 1 {
                return series;
            }
            current = Some(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        *self.lower_central_series_orders().last().unwrap() == 1
    }

    /// Primary invariants of the abelianization `G/G'`, as a sorted list of
    /// prime powers (e.g. `[2,2,3]` means Z2 x Z2 x Z3).
    pub fn abelianization_invariants(&self) -> Vec<u64> {
        let derived = self.derived_subgroup();
        let coset_of = self.left_coset_partition(&derived);
        let n_cosets = 1 + *coset_of.iter().max().unwrap() as usize;
        // Order of each coset in the quotient: least power landing in G'.
        let mut rep_of = vec![u32::MAX; n_cosets];
        for (x, &c) in coset_of.iter().enumerate() {
            if rep_of[c as usize] == u32::MAX {
                rep_of[c as usize] = x as u32;
            }
        }
        let id_coset = coset_of[self.identity_ord() as usize];
        let coset_orders: Vec<u64> = rep_of
            .iter()
            .map(|&r| {
                let mut pow = r;
                let mut ord = 1u64;
                while coset_of[pow as usize] != id_coset {
                    pow = self.mul_ord(pow, r);
                    ord += 1;
                }
                ord
            })
            .collect();
        abelian_invariants_from_orders(&coset_orders)
    }

    /// Per-ordinal id of the left coset `x * H`, numbered by least ordinal.
    pub(crate) fn left_coset_partition(&self, h: &FiniteGroup<E>) -> Vec<u32> {
        let h_gens: Vec<u32> = h
            .generator_elements()
            .iter()
            .map(|g| self.ord_of_key(&g.key()).expect("subgroup generator inside the group"))
            .collect();
        let maps: Vec<Vec<u32>> = h_gens.iter().map(|&g| self.right_mult_perm(g)).collect();
        let mut coset_of = vec![u32::MAX; self.order() as usize];
        let mut next_id = 0u32;
        for start in 0..self.order() as u32 {
            if coset_of[start as usize] != u32::MAX {
                continue;
            }
            let id = next_id;
            next_id += 1;
            let mut stack = vec![start];
            coset_of[start as usize] = id;
            while let Some(x) = stack.pop() {
                for map in &maps {
                    let y = map[x as usize];
                    if coset_of[y as usize] == u32::MAX {
                        coset_of[y as usize] = id;
                        stack.push(y);
                    }
                }
            }
        }
        coset_of
    }

    /// All normal subgroups of exactly the given order. Exhaustive: normal
    /// subgroups are unions of conjugacy classes, so the lattice is generated
    /// by joins of single-class normal closures.
    pub fn normal_subgroups(&self, order: u64, max_count: usize) -> Result<Vec<FiniteGroup<E>>> {
        let lattice = self.normal_subgroup_lattice(order, max_count)?;
        Ok(lattice.into_iter().filter(|n| n.order() == order).collect())
    }

    /// Every normal subgroup of order at most `max_order`, found by
    /// saturating class-closure joins.
    pub fn normal_subgroup_lattice(
        &self,
        max_order: u64,
        max_count: usize,
    ) -> Result<Vec<FiniteGroup<E>>> {
        let classes = self.conjugacy_classes();
        let signature = |n: &FiniteGroup<E>| -> Vec<u32> {
            let mut sig: Vec<u32> = n
                .elements()
                .iter()
                .map(|e| classes.class_of[self.ord_of_key(&e.key()).unwrap() as usize])
                .collect();
            sig.sort();
            sig.dedup();
            sig
        };

        let mut seeds: Vec<FiniteGroup<E>> = Vec::new();
        for class in &classes.classes {
            let rep = self.element(class[0]).clone();
            let n = self.normal_closure(&[rep]);
            if n.order() <= max_order {
                seeds.push(n);
            }
        }

        let trivial = closure(&[self.element(self.identity_ord()).identity_like()], 1)
            .expect("trivial group");
        let mut found: HashMap<Vec<u32>, FiniteGroup<E>> = HashMap::new();
        found.insert(signature(&trivial), trivial);
        let mut work: Vec<Vec<u32>> = Vec::new();
        for seed in seeds {
            let sig = signature(&seed);
            if !found.contains_key(&sig) {
                work.push(sig.clone());
                found.insert(sig, seed);
            }
        }
        while let Some(sig) = work.pop() {
            let current_gens = found[&sig].generator_elements();
            let others: Vec<Vec<E>> =
                found.values().map(|n| n.generator_elements()).collect();
            for other_gens in others {
                let mut gens = current_gens.clone();
                gens.extend(other_gens);
                let join = match closure(&gens, max_order as usize) {
                    Ok(j) => j,
                    // Join grew past the order bound: every normal subgroup
                    // containing it does too, so pruning is safe.
                    Err(Error::BudgetExceeded { .. }) => continue,
                    Err(e) => return Err(e),
                };
                let join_sig = signature(&join);
                if !found.contains_key(&join_sig) {
                    if found.len() >= max_count {
                        return Err(Error::BudgetExceeded {
                            found: found.len() + 1,
                            limit: max_count,
                        });
                    }
                    work.push(join_sig.clone());
                    found.insert(join_sig, join);
                }
            }
        }
        let mut result: Vec<(Vec<u32>, FiniteGroup<E>)> = found.into_iter().collect();
        result.sort_by(|a, b| (a.1.order(), &a.0).cmp(&(b.1.order(), &b.0)));
        Ok(result.into_iter().map(|(_, n)| n).collect())
    }

    /// Every subgroup of exactly `order`, by saturating joins of cyclic
    /// subgroups whose orders divide it. `max_tracked` bounds the number of
    /// intermediate subgroups kept before giving up.
    pub fn subgroups_of_order(
        &self,
        order: u64,
        max_tracked: usize,
    ) -> Result<Vec<FiniteGroup<E>>> {
        let divides = |n: u64| order % n == 0;
        let mut cyclics: Vec<FiniteGroup<E>> = Vec::new();
        let mut seen_cyclic: HashSet<Vec<u32>> = HashSet::new();
        for x in 0..self.order() as u32 {
            if !divides(self.element_order(x) as u64) {
                continue;
            }
            let sub = closure(&[self.element(x).clone()], order as usize)
                .expect("cyclic subgroup of dividing order fits the budget");
            let mut sig: Vec<u32> = sub
                .elements()
                .iter()
                .map(|e| self.ord_of_key(&e.key()).unwrap())
                .collect();
            sig.sort();
            if seen_cyclic.insert(sig) {
                cyclics.push(sub);
            }
        }

        let sig_of = |g: &FiniteGroup<E>| -> Vec<u32> {
            let mut sig: Vec<u32> =
                g.elements().iter().map(|e| self.ord_of_key(&e.key()).unwrap()).collect();
            sig.sort();
            sig
        };
        let mut found: HashMap<Vec<u32>, FiniteGroup<E>> = HashMap::new();
        let mut work: Vec<Vec<u32>> = Vec::new();
        for c in &cyclics {
            let sig = sig_of(c);
            if !found.contains_key(&sig) {
                work.push(sig.clone());
                found.insert(sig, c.clone());
            }
        }
        while let Some(sig) = work.pop() {
            let base_gens = found[&sig].generator_elements();
            for c in &cyclics {
                let mut gens = base_gens.clone();
                gens.extend(c.generator_elements());
                let join = match closure(&gens, order as usize) {
                    Ok(j) => j,
                    Err(Error::BudgetExceeded { .. }) => continue,
                    Err(e) => return Err(e),
                };
                if !divides(join.order()) {
                    continue;
                }
                let join_sig = sig_of(&join);
                if !found.contains_key(&join_sig) {
                    if found.len() >= max_tracked {
                        return Err(Error::BudgetExceeded {
                            found: found.len() + 1,
                            limit: max_tracked,
                        });
                    }
                    work.push(join_sig.clone());
                    found.insert(join_sig, join);
                }
            }
        }
        let mut result: Vec<(Vec<u32>, FiniteGroup<E>)> =
            found.into_iter().filter(|(_, g)| g.order() == order).collect();
        result.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(result.into_iter().map(|(_, g)| g).collect())
    }

    /// Exhaustively decides whether `G -> G/N` splits by searching for a
    /// complement: a subgroup of order `|G|/|N|` meeting `N` trivially.
    pub fn split_check(&self, n: &FiniteGroup<E>, max_tracked: usize) -> Result<SplitCheck<E>> {
        if !self.is_normal(n)? {
            return Err(Error::NotNormal);
        }
        let index = self.order() / n.order();
        for cand in self.subgroups_of_order(index, max_tracked)? {
            let meets = cand.elements().iter().filter(|e| n.membership(e)).count();
            if meets == 1 {
                return Ok(SplitCheck { splits: true, complement: Some(cand) });
            }
        }
        Ok(SplitCheck { splits: false, complement: None })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reconstructs the primary decomposition of an abelian group from the
/// multiset of its element orders: for each prime p, the count of elements
/// of order dividing p^k determines the partition of p-exponents.
fn abelian_invariants_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut primes: Vec<u64> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }

    let mut factors: Vec<u64> = Vec::new();
    for &p in &primes {
        let count_dividing = |pk: u64| orders.iter().filter(|&&o| pk % o == 0).count() as u64;
        // parts_ge[k-1] = number of cyclic p-factors with exponent >= k,
        // read off the growth of |{x : x^(p^k) = 1}|.
        let mut parts_ge: Vec<u32> = Vec::new();
        let mut prev = 1u64;
        for k in 1.. {
            let cur = count_dividing(p.pow(k));
            if cur == prev {
                break;
            }
            let mut ratio = cur / prev;
            let mut parts = 0u32;
            while ratio > 1 {
                ratio /= p;
                parts += 1;
            }
            parts_ge.push(parts);
            prev = cur;
        }
        for k in 1..=parts_ge.len() {
            let ge_next = if k < parts_ge.len() { parts_ge[k] } else { 0 };
            for _ in 0..(parts_ge[k - 1] - ge_next) {
                factors.push(p.pow(k as u32));
            }
        }
    }
    factors.sort_unstable();
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm;

    #[test]
    fn conjugacy_classes_of_s3() {
        let s3 = perm::symmetric(3);
        let classes = s3.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(classes.class_of.len(), 6);
    }

    #[test]
    fn classes_match_brute_force_conjugation() {
        for g in [perm::symmetric(4), perm::dihedral(6)] {
            let classes = g.conjugacy_classes();
            let n = g.order() as u32;
            for x in 0..n {
                for gg in 0..n {
                    let conj = g.mul_ord(g.mul_ord(gg, x), g.inverse_ord(gg));
                    assert_eq!(
                        classes.class_of[conj as usize],
                        classes.class_of[x as usize]
                    );
                }
            }
            let total: usize = classes.classes.iter().map(|c| c.len()).sum();
            assert_eq!(total as u64, g.order());
        }
    }

    #[test]
    fn element_orders_and_exponent() {
        let z8 = perm::cyclic(8);
        let mut hist: Vec<u32> = z8.element_orders().to_vec();
        hist.sort();
        assert_eq!(hist, vec![1, 2, 4, 4, 8, 8, 8, 8]);
        assert_eq!(z8.exponent(), 8);
        assert!(z8.is_cyclic());
        assert!(z8.is_abelian());
        assert!(!perm::symmetric(3).is_abelian());
        assert!(!perm::z2_power(3).is_cyclic());
    }

    #[test]
    fn center_of_dihedral_groups() {
        // Even-gon dihedral groups have center Z2; odd ones are centerless.
        assert_eq!(perm::dihedral(4).center().order(), 2);
        assert_eq!(perm::dihedral(5).center().order(), 1);
        let abelian = perm::cyclic(6);
        assert_eq!(abelian.center().order(), 6);
    }

    #[test]
    fn derived_subgroups_match_brute_force() {
        for g in [perm::symmetric(3), perm::symmetric(4), perm::dihedral(4), perm::alternating(4)]
        {
            let derived = g.derived_subgroup();
            // Oracle: closure of every commutator in the full table.
            let mut comms = Vec::new();
            for a in 0..g.order() as u32 {
                for b in 0..g.order() as u32 {
                    let ia = g.inverse_ord(a);
                    let ib = g.inverse_ord(b);
                    let c = g.mul_ord(g.mul_ord(g.mul_ord(a, b), ia), ib);
                    comms.push(g.element(c).clone());
                }
            }
            let oracle = closure(&comms, g.order() as usize).unwrap();
            assert_eq!(derived.order(), oracle.order());
            assert!(oracle.elements().iter().all(|e| derived.membership(e)));
        }
    }

    #[test]
    fn derived_and_central_series() {
        let s3 = perm::symmetric(3);
        assert_eq!(s3.derived_series_orders(), vec![3, 1]);
        assert!(!s3.is_nilpotent());
        assert_eq!(s3.lower_central_series_orders(), vec![6, 3]);
        let s4 = perm::symmetric(4);
        assert_eq!(s4.derived_series_orders(), vec![12, 4, 1]);
        let d4 = perm::dihedral(4);
        assert!(d4.is_nilpotent());
        assert!(perm::z3_squared().is_nilpotent());
        assert!(perm::alternating(5).is_perfect());
    }

    #[test]
    fn abelianization_invariants_distinguish_z4_from_z2z2() {
        assert_eq!(perm::cyclic(4).abelianization_invariants(), vec![4]);
        assert_eq!(perm::z2_power(2).abelianization_invariants(), vec![2, 2]);
        assert_eq!(perm::symmetric(3).abelianization_invariants(), vec![2]);
        assert_eq!(perm::alternating(4).abelianization_invariants(), vec![3]);
        assert_eq!(perm::cyclic(12).abelianization_invariants(), vec![3, 4]);
        assert_eq!(perm::alternating(5).abelianization_invariants(), Vec::<u64>::new());
    }

    #[test]
    fn normal_subgroups_exhaustive_on_small_groups() {
        let s3 = perm::symmetric(3);
        let n3 = s3.normal_subgroups(3, 100).unwrap();
        assert_eq!(n3.len(), 1);
        assert_eq!(n3[0].order(), 3);
        assert!(s3.normal_subgroups(2, 100).unwrap().is_empty());
        assert_eq!(s3.normal_subgroups(6, 100).unwrap().len(), 1);

        // Oracle: brute scan over all subgroups generated by element pairs.
        let a4 = perm::alternating(4);
        let lattice = a4.normal_subgroup_lattice(12, 100).unwrap();
        let orders: Vec<u64> = lattice.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12]);

        let d4 = perm::dihedral(4);
        let d4_orders: Vec<u64> =
            d4.normal_subgroup_lattice(8, 100).unwrap().iter().map(|n| n.order()).collect();
        // D4: trivial, center, three order-4 subgroups, the whole group.
        assert_eq!(d4_orders, vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn brute_normality_agrees_with_lattice_on_s4() {
        let s4 = perm::symmetric(4);
        let lattice = s4.normal_subgroup_lattice(24, 100).unwrap();
        let orders: Vec<u64> = lattice.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        for n in &lattice {
            assert!(s4.is_normal(n).unwrap());
        }
    }

    #[test]
    fn subgroup_enumeration_and_split_checks() {
        let s3 = perm::symmetric(3);
        let a3 = perm::alternating(3);
        let check = s3.split_check(&a3, 1000).unwrap();
        assert!(check.splits);
        assert_eq!(check.complement.unwrap().order(), 2);

        let z4 = perm::cyclic(4);
        let gen = z4.generator_elements().remove(0);
        let z2_in_z4 = closure(&[gen.mul(&gen)], 4).unwrap();
        assert_eq!(z2_in_z4.order(), 2);
        let check = z4.split_check(&z2_in_z4, 1000).unwrap();
        assert!(!check.splits);

        // All three order-2 subgroups of Z2 x Z2 complement each other.
        let v4 = perm::z2_power(2);
        let subs = v4.subgroups_of_order(2, 100).unwrap();
        assert_eq!(subs.len(), 3);
    }
}
