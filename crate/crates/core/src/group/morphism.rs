//! Homomorphisms given by generator images: image closure with witness
//! words, Schreier kernel generators, and explicit isomorphism search.

use super::{closure, closure_with_witnesses, FiniteGroup, GroupElement};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// A homomorphism `D -> I` described by its values on generators.
///
/// The image closure is enumerated with a witness word per element. The
/// construction trusts that the generator assignment extends to a
/// homomorphism (true by construction for the action maps used here);
/// [`Homomorphism::verify_on`] checks it explicitly for enumerable domains.
pub struct Homomorphism<D: GroupElement, I: GroupElement> {
    domain_gens: Vec<D>,
    image: FiniteGroup<I>,
    image_gen_ords: Vec<u32>,
    witness: Vec<(u32, u16)>,
}

impl<D: GroupElement, I: GroupElement> Homomorphism<D, I> {
    pub fn span(domain_gens: Vec<D>, image_gens: Vec<I>, max_image: usize) -> Result<Self> {
        if domain_gens.is_empty() || domain_gens.len() != image_gens.len() {
            return Err(Error::Malformed(
                "domain and image generator lists must match and be nonempty".into(),
            ));
        }
        let (image, witness) = closure_with_witnesses(&image_gens, max_image)?;
        let image_gen_ords = image.generator_ords().to_vec();
        Ok(Homomorphism { domain_gens, image, image_gen_ords, witness })
    }

    pub fn image(&self) -> &FiniteGroup<I> {
        &self.image
    }

    pub fn domain_generators(&self) -> &[D] {
        &self.domain_gens
    }

    /// Generator letters whose left-to-right product is the image element.
    pub fn word_for(&self, image_ord: u32) -> Vec<u16> {
        let mut word = Vec::new();
        let mut at = image_ord;
        while self.witness[at as usize].1 != u16::MAX {
            let (parent, letter) = self.witness[at as usize];
            word.push(letter);
            at = parent;
        }
        word.reverse();
        word
    }

    /// Evaluates a generator word in the domain.
    pub fn evaluate(&self, word: &[u16]) -> D {
        let id = self.domain_gens[0].identity_like();
        word.iter().fold(id, |acc, &l| acc.mul(&self.domain_gens[l as usize]))
    }

    /// The domain-side transversal element sitting over an image element.
    pub fn transversal(&self, image_ord: u32) -> D {
        self.evaluate(&self.word_for(image_ord))
    }

    /// Kernel as the closure of all Schreier generators
    /// `t_u * s * t_{u*s}^(-1)`, which is exact by Schreier's lemma since
    /// the transversal words index the kernel cosets.
    pub fn schreier_kernel(&self, max_kernel: usize) -> Result<FiniteGroup<D>> {
        let n = self.image.order() as u32;
        let transversal: Vec<D> = (0..n).map(|u| self.transversal(u)).collect();
        let mut seen = std::collections::HashSet::new();
        let mut gens: Vec<D> = Vec::new();
        for u in 0..n {
            for (letter, s) in self.domain_gens.iter().enumerate() {
                let v = self.image.mul_ord(u, self.image_gen_ords[letter]);
                let k = transversal[u as usize].mul(s).mul(&transversal[v as usize].inverse());
                if seen.insert(k.key()) {
                    gens.push(k);
                }
            }
        }
        closure(&gens, max_kernel)
    }

    /// Explicitly checks `phi(x*g) = phi(x)*phi(g)` over a full enumeration
    /// of the domain.
    pub fn verify_on(&self, domain: &FiniteGroup<D>) -> bool {
        let gen_ords: Vec<Option<u32>> =
            self.domain_gens.iter().map(|g| domain.ord_of_key(&g.key())).collect();
        if gen_ords.iter().any(|o| o.is_none()) {
            return false;
        }
        let gen_ords: Vec<u32> = gen_ords.into_iter().map(|o| o.unwrap()).collect();
        // Map each domain element by BFS along witnessed edges.
        let mut phi: Vec<Option<u32>> = vec![None; domain.order() as usize];
        phi[domain.identity_ord() as usize] = Some(self.image.identity_ord());
        let mut queue = vec![domain.identity_ord()];
        while let Some(x) = queue.pop() {
            let fx = phi[x as usize].unwrap();
            for (letter, &g) in gen_ords.iter().enumerate() {
                let y = domain.mul_ord(x, g);
                let fy = self.image.mul_ord(fx, self.image_gen_ords[letter]);
                match phi[y as usize] {
                    None => {
                        phi[y as usize] = Some(fy);
                        queue.push(y);
                    }
                    Some(existing) if existing != fy => return false,
                    _ => {}
                }
            }
        }
        phi.iter().all(|v| v.is_some())
    }
}

/// An explicit isomorphism between two enumerated groups, stored as the
/// ordinal map from the first group to the second.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub map: Vec<u32>,
}

/// Backtracking search for an isomorphism, with class-invariant pruning.
///
/// Returns `Ok(None)` when the search space is exhausted (the groups are not
/// isomorphic), `Err(BudgetExceeded)` when `budget` extension steps were
/// spent first. Orders above 2000 are rejected up front.
pub fn find_isomorphism<A: GroupElement, B: GroupElement>(
    g: &FiniteGroup<A>,
    k: &FiniteGroup<B>,
    budget: usize,
) -> Result<Option<Isomorphism>> {
    if g.order() != k.order() {
        return Ok(None);
    }
    if g.order() > 2000 {
        return Err(Error::BudgetExceeded { found: g.order() as usize, limit: 2000 });
    }
    let g_orders = g.element_orders();
    let k_orders = k.element_orders();
    {
        let mut a = g_orders.to_vec();
        let mut b = k_orders.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }

    // Invariant of an element: (order, conjugacy class size).
    let g_classes = g.conjugacy_classes();
    let k_classes = k.conjugacy_classes();
    let g_inv = |x: u32| {
        (g_orders[x as usize], g_classes.classes[g_classes.class_of[x as usize] as usize].len())
    };
    let k_inv = |x: u32| {
        (k_orders[x as usize], k_classes.classes[k_classes.class_of[x as usize] as usize].len())
    };

    let gens = minimal_generators(g);
    let mut candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&ge| (0..k.order() as u32).filter(|&ke| k_inv(ke) == g_inv(ge)).collect())
        .collect();
    // Most constrained generator first.
    let mut order_idx: Vec<usize> = (0..gens.len()).collect();
    order_idx.sort_by_key(|&i| candidates[i].len());
    let gens: Vec<u32> = order_idx.iter().map(|&i| gens[i]).collect();
    candidates = order_idx.iter().map(|&i| candidates[i].clone()).collect();

    let mut assignment: Vec<u32> = Vec::new();
    let mut spent = 0usize;
    if dfs(g, k, &gens, &candidates, &mut assignment, &mut spent, budget)? {
        match extend_over_prefix(g, k, &gens, &assignment) {
            Extension::Full(map) => return Ok(Some(Isomorphism { map })),
            _ => unreachable!("dfs only succeeds on a full extension"),
        }
    }
    Ok(None)
}

enum Extension {
    Conflict,
    Partial,
    Full(Vec<u32>),
}

fn dfs<A: GroupElement, B: GroupElement>(
    g: &FiniteGroup<A>,
    k: &FiniteGroup<B>,
    gens: &[u32],
    candidates: &[Vec<u32>],
    assignment: &mut Vec<u32>,
    spent: &mut usize,
    budget: usize,
) -> Result<bool> {
    let depth = assignment.len();
    if depth == gens.len() {
        return Ok(matches!(extend_over_prefix(g, k, gens, assignment), Extension::Full(_)));
    }
    for &cand in &candidates[depth] {
        *spent += 1;
        if *spent > budget {
            return Err(Error::BudgetExceeded { found: *spent, limit: budget });
        }
        assignment.push(cand);
        let ok = !matches!(
            extend_over_prefix(g, k, &gens[..=depth], assignment),
            Extension::Conflict
        );
        if ok && dfs(g, k, gens, candidates, assignment, spent, budget)? {
            return Ok(true);
        }
        assignment.pop();
    }
    Ok(false)
}

/// Extends `gens[i] -> images[i]` over the subgroup generated by the prefix,
/// checking every Cayley edge. Respecting right multiplication by every
/// generator everywhere makes the extension a homomorphism on the generated
/// subgroup, and injectivity plus equal order makes it bijective at full
/// depth, so `Full` is a complete isomorphism certificate.
fn extend_over_prefix<A: GroupElement, B: GroupElement>(
    g: &FiniteGroup<A>,
    k: &FiniteGroup<B>,
    gens: &[u32],
    images: &[u32],
) -> Extension {
    let mut phi: HashMap<u32, u32> = HashMap::new();
    let mut used: std::collections::HashSet<u32> = std::collections::HashSet::new();
    phi.insert(g.identity_ord(), k.identity_ord());
    used.insert(k.identity_ord());
    let mut queue = vec![g.identity_ord()];
    while let Some(x) = queue.pop() {
        let fx = phi[&x];
        for (i, &gen) in gens.iter().enumerate() {
            let y = g.mul_ord(x, gen);
            let fy = k.mul_ord(fx, images[i]);
            match phi.get(&y) {
                None => {
                    if !used.insert(fy) {
                        return Extension::Conflict;
                    }
                    phi.insert(y, fy);
                    queue.push(y);
                }
                Some(&existing) => {
                    if existing != fy {
                        return Extension::Conflict;
                    }
                }
            }
        }
    }
    if phi.len() as u64 == g.order() {
        let mut map = vec![0u32; g.order() as usize];
        for (x, fx) in phi {
            map[x as usize] = fx;
        }
        Extension::Full(map)
    } else {
        Extension::Partial
    }
}

/// Greedily drops redundant generators.
fn minimal_generators<E: GroupElement>(g: &FiniteGroup<E>) -> Vec<u32> {
    let mut gens: Vec<u32> = g.generator_ords().to_vec();
    gens.dedup();
    loop {
        let mut dropped = false;
        for i in 0..gens.len() {
            if gens.len() == 1 {
                break;
            }
            let rest: Vec<E> =
                gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &o)| g.element(o).clone()).collect();
            if let Ok(sub) = closure(&rest, g.order() as usize) {
                if sub.order() == g.order() {
                    gens.remove(i);
                    dropped = true;
                    break;
                }
            }
        }
        if !dropped {
            return gens;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{self, Permutation};

    fn s3_gens() -> Vec<Permutation> {
        vec![
            Permutation::from_cycles(3, &[vec![0, 1]]).unwrap(),
            Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
        ]
    }

    #[test]
    fn identity_hom_has_trivial_kernel() {
        let gens = s3_gens();
        let h = Homomorphism::span(gens.clone(), gens, 10).unwrap();
        assert_eq!(h.image().order(), 6);
        assert_eq!(h.schreier_kernel(10).unwrap().order(), 1);
        assert!(h.verify_on(&perm::symmetric(3)));
    }

    #[test]
    fn sign_hom_kernel_is_alternating() {
        let swap = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let h = Homomorphism::span(s3_gens(), vec![swap, Permutation::identity(2)], 10).unwrap();
        assert_eq!(h.image().order(), 2);
        let kernel = h.schreier_kernel(10).unwrap();
        assert_eq!(kernel.order(), 3);
        assert_eq!(h.image().order() * kernel.order(), 6);
        assert!(h.verify_on(&perm::symmetric(3)));
    }

    #[test]
    fn witness_words_evaluate_to_their_elements() {
        let gens = s3_gens();
        let h = Homomorphism::span(gens.clone(), gens, 10).unwrap();
        for ord in 0..h.image().order() as u32 {
            let evaluated = h.evaluate(&h.word_for(ord));
            assert_eq!(evaluated.key(), h.image().element(ord).key());
        }
    }

    #[test]
    fn kernel_times_image_accounts_for_the_domain() {
        // Project S3 x Z2 (on five points) onto its S3 factor.
        let domain_gens = vec![
            Permutation::from_cycles(5, &[vec![0, 1]]).unwrap(),
            Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap(),
            Permutation::from_cycles(5, &[vec![3, 4]]).unwrap(),
        ];
        let image_gens = vec![
            Permutation::from_cycles(3, &[vec![0, 1]]).unwrap(),
            Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
            Permutation::identity(3),
        ];
        let domain = crate::group::closure(&domain_gens, 20).unwrap();
        assert_eq!(domain.order(), 12);
        let h = Homomorphism::span(domain_gens, image_gens, 10).unwrap();
        let kernel = h.schreier_kernel(12).unwrap();
        assert_eq!(h.image().order() * kernel.order(), domain.order());
        assert!(h.verify_on(&domain));
    }

    #[test]
    fn isomorphism_found_between_isomorphic_copies() {
        let s3 = perm::symmetric(3);
        let d3 = perm::dihedral(3);
        let iso = find_isomorphism(&s3, &d3, 10_000).unwrap().expect("S3 is D3");
        // The map must be a bijection respecting products.
        let mut seen = iso.map.clone();
        seen.sort();
        assert_eq!(seen, (0..6).collect::<Vec<u32>>());
        for a in 0..6u32 {
            for b in 0..6u32 {
                assert_eq!(
                    iso.map[s3.mul_ord(a, b) as usize],
                    d3.mul_ord(iso.map[a as usize], iso.map[b as usize])
                );
            }
        }
    }

    #[test]
    fn non_isomorphic_groups_are_exhausted() {
        let z4 = perm::cyclic(4);
        let v4 = perm::z2_power(2);
        assert!(find_isomorphism(&z4, &v4, 10_000).unwrap().is_none());
        let z6 = perm::cyclic(6);
        let s3 = perm::symmetric(3);
        assert!(find_isomorphism(&z6, &s3, 10_000).unwrap().is_none());
    }

    #[test]
    fn reference_product_is_recognized() {
        let ref_group = perm::z2_x_s5();
        let rebuilt = perm::direct_product(&[&perm::symmetric(5), &perm::cyclic(2)]);
        let iso = find_isomorphism(&ref_group, &rebuilt, 2_000_000).unwrap();
        assert!(iso.is_some());
    }
}
