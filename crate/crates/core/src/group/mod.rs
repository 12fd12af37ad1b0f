//! Generic finite-group machinery over any element kind that exposes a
//! canonical key, multiplication, inversion and an identity.
//!
//! Groups are stored explicitly: an index-ordered element list plus a
//! key-to-ordinal map. Element ordering is breadth-first from the generators
//! with each new level sorted by canonical key, so two builds from equal
//! generator lists produce byte-identical orderings.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::OnceLock;

mod cosets;
mod fingerprint;
mod morphism;
mod quotient;
mod structure;

pub use cosets::DoubleCosets;
pub use fingerprint::GroupFingerprint;
pub use morphism::{find_isomorphism, Homomorphism, Isomorphism};
pub use quotient::{quotient, CosetRep};
pub use structure::{ConjugacyClasses, SplitCheck};

/// Contract every concrete element kind implements.
///
/// `key` must be injective on the element domain, `mul` associative,
/// `inverse` exact, and `identity_like` must return the identity of the same
/// shape (matrix dimension, point count) as `self`.
pub trait GroupElement: Clone + Send + Sync {
    type Key: Ord + std::hash::Hash + Eq + Clone + Send + Sync;

    fn key(&self) -> Self::Key;
    fn mul(&self, rhs: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn identity_like(&self) -> Self;
}

/// An explicitly enumerated finite group.
pub struct FiniteGroup<E: GroupElement> {
    elements: Vec<E>,
    index: HashMap<E::Key, u32>,
    generators: Vec<u32>,
    identity: u32,
    inverses: OnceLock<Vec<u32>>,
    classes: OnceLock<ConjugacyClasses>,
    orders: OnceLock<Vec<u32>>,
}

/// Breadth-first closure of the generator list.
///
/// Fails with [`Error::BudgetExceeded`] once more than `max_elements`
/// elements have been found.
pub fn closure<E: GroupElement>(gens: &[E], max_elements: usize) -> Result<FiniteGroup<E>> {
    Ok(closure_with_witnesses(gens, max_elements)?.0)
}

/// Like [`closure`], but also returns, per element, the BFS witness
/// `(parent ordinal, generator letter)` with `element = parent * gens[letter]`.
/// The identity carries the sentinel `(0, u16::MAX)`.
pub fn closure_with_witnesses<E: GroupElement>(
    gens: &[E],
    max_elements: usize,
) -> Result<(FiniteGroup<E>, Vec<(u32, u16)>)> {
    let first = gens.first().ok_or_else(|| Error::Malformed("empty generator list".into()))?;
    assert!(gens.len() < u16::MAX as usize, "generator letters must fit in u16");
    let id = first.identity_like();
    let id_key = id.key();
    for g in gens {
        if g.mul(&g.inverse()).key() != id_key {
            return Err(Error::Malformed("generator times its inverse is not the identity".into()));
        }
    }

    let mut elements = vec![id];
    let mut witnesses = vec![(0u32, u16::MAX)];
    let mut index = HashMap::new();
    index.insert(id_key, 0u32);
    let mut frontier = vec![0u32];
    while !frontier.is_empty() {
        // Unseen products are parked in the index with a sentinel ordinal so
        // duplicate detection within a level stays O(1), then the level is
        // sorted by key and ordinals are assigned in that order.
        let mut level: Vec<(E::Key, E, u32, u16)> = Vec::new();
        for &ord in &frontier {
            for (letter, g) in gens.iter().enumerate() {
                let prod = elements[ord as usize].mul(g);
                let key = prod.key();
                if !index.contains_key(&key) {
                    index.insert(key.clone(), u32::MAX);
                    level.push((key, prod, ord, letter as u16));
                }
            }
            if elements.len() + level.len() > max_elements {
                return Err(Error::BudgetExceeded {
                    found: elements.len() + level.len(),
                    limit: max_elements,
                });
            }
        }
        level.sort_by(|a, b| a.0.cmp(&b.0));
        frontier.clear();
        for (key, elem, parent, letter) in level {
            let ord = elements.len() as u32;
            elements.push(elem);
            witnesses.push((parent, letter));
            index.insert(key, ord);
            frontier.push(ord);
        }
    }

    let generators = gens.iter().map(|g| index[&g.key()]).collect();
    let group = FiniteGroup {
        elements,
        index,
        generators,
        identity: 0,
        inverses: OnceLock::new(),
        classes: OnceLock::new(),
        orders: OnceLock::new(),
    };
    Ok((group, witnesses))
}

/// Rebuilds a group from its full element set, choosing generators greedily
/// by least canonical key. The result is independent of the input order, so
/// subgroups obtained by filtering get a canonical element ordering.
pub fn from_elements<E: GroupElement>(mut elems: Vec<E>) -> Result<FiniteGroup<E>> {
    if elems.is_empty() {
        return Err(Error::Malformed("empty element set".into()));
    }
    elems.sort_by_cached_key(|e| e.key());
    elems.dedup_by_key(|e| e.key());
    let budget = elems.len();
    let id_key = elems[0].identity_like().key();
    if !elems.iter().any(|e| e.key() == id_key) {
        return Err(Error::NotASubgroup);
    }

    let mut keys: Vec<E::Key> = elems.iter().map(|e| e.key()).collect();
    keys.sort();
    let mut gens: Vec<E> = Vec::new();
    let mut current = closure(&[elems[0].identity_like()], budget)?;
    while current.order() < elems.len() as u64 {
        let next = elems
            .iter()
            .find(|e| !current.index.contains_key(&e.key()))
            .expect("closure order below set size implies a missing element");
        gens.push(next.clone());
        current = closure(&gens, budget).map_err(|e| match e {
            Error::BudgetExceeded { .. } => Error::NotASubgroup,
            other => other,
        })?;
    }
    let mut got: Vec<E::Key> = current.elements.iter().map(|e| e.key()).collect();
    got.sort();
    if got != keys {
        return Err(Error::NotASubgroup);
    }
    Ok(current)
}

/// Reassembles a group from an element list whose order is preserved as-is,
/// for reloading a previously enumerated group byte-identically.
///
/// Validates key uniqueness, that the identity sits at ordinal 0 (where the
/// breadth-first builders put it) and that generator ordinals are in range.
/// Closure under multiplication is NOT revalidated here; callers that do not
/// trust the source must run [`FiniteGroup::verify_closed`] afterwards.
pub fn from_ordered_elements<E: GroupElement>(
    elements: Vec<E>,
    generator_ords: Vec<u32>,
) -> Result<FiniteGroup<E>> {
    if elements.is_empty() {
        return Err(Error::Malformed("empty element set".into()));
    }
    let mut index = HashMap::with_capacity(elements.len());
    for (ord, e) in elements.iter().enumerate() {
        if index.insert(e.key(), ord as u32).is_some() {
            return Err(Error::Malformed(format!("duplicate element key at ordinal {ord}")));
        }
    }
    if elements[0].key() != elements[0].identity_like().key() {
        return Err(Error::Malformed("ordinal 0 is not the identity".into()));
    }
    if generator_ords.is_empty() {
        return Err(Error::Malformed("empty generator list".into()));
    }
    for &g in &generator_ords {
        if g as usize >= elements.len() {
            return Err(Error::Malformed(format!("generator ordinal {g} out of range")));
        }
    }
    Ok(FiniteGroup {
        elements,
        index,
        generators: generator_ords,
        identity: 0,
        inverses: OnceLock::new(),
        classes: OnceLock::new(),
        orders: OnceLock::new(),
    })
}

impl<E: GroupElement> FiniteGroup<E> {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, ord: u32) -> &E {
        &self.elements[ord as usize]
    }

    pub fn identity_ord(&self) -> u32 {
        self.identity
    }

    pub fn generator_ords(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<E> {
        self.generators.iter().map(|&g| self.elements[g as usize].clone()).collect()
    }

    pub fn ord_of_key(&self, key: &E::Key) -> Option<u32> {
        self.index.get(key).copied()
    }

    pub fn membership(&self, x: &E) -> bool {
        self.index.contains_key(&x.key())
    }

    /// Ordinal of `a*b`. Panics if the product falls outside the group,
    /// which closure guarantees cannot happen.
    pub fn mul_ord(&self, a: u32, b: u32) -> u32 {
        let prod = self.elements[a as usize].mul(&self.elements[b as usize]);
        self.index[&prod.key()]
    }

    /// Ordinal-level inverse table, computed once.
    pub fn inverse_ords(&self) -> &[u32] {
        self.inverses.get_or_init(|| {
            self.elements.iter().map(|e| self.index[&e.inverse().key()]).collect()
        })
    }

    pub fn inverse_ord(&self, a: u32) -> u32 {
        self.inverse_ords()[a as usize]
    }

    /// The permutation `x -> g*x` of element ordinals.
    pub fn left_mult_perm(&self, g: u32) -> Vec<u32> {
        (0..self.elements.len() as u32).map(|x| self.mul_ord(g, x)).collect()
    }

    /// The permutation `x -> x*g` of element ordinals.
    pub fn right_mult_perm(&self, g: u32) -> Vec<u32> {
        (0..self.elements.len() as u32).map(|x| self.mul_ord(x, g)).collect()
    }

    /// True if every element of `h` lies in this group.
    pub fn contains_group(&self, h: &FiniteGroup<E>) -> bool {
        h.elements.iter().all(|e| self.membership(e))
    }

    /// Elements common to both groups, as a group of its own.
    pub fn intersection(&self, other: &FiniteGroup<E>) -> Result<FiniteGroup<E>> {
        let (small, big) =
            if self.order() <= other.order() { (self, other) } else { (other, self) };
        let common: Vec<E> =
            small.elements.iter().filter(|e| big.membership(e)).cloned().collect();
        if common.is_empty() {
            return Err(Error::DimensionMismatch(0, 0));
        }
        from_elements(common)
    }

    /// Order of the subgroup generated by the given element ordinals,
    /// computed by orbit search inside the enumerated group.
    pub fn generated_order(&self, gens: &[u32]) -> u64 {
        let n = self.order() as usize;
        let mut seen = vec![false; n];
        let mut stack = vec![self.identity_ord()];
        seen[self.identity_ord() as usize] = true;
        let mut count = 1u64;
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul_ord(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    /// True iff `g h g^-1 = h` for every generator `g`; checking generators
    /// suffices because elements normalizing `h` form a subgroup.
    pub fn is_normal(&self, h: &FiniteGroup<E>) -> Result<bool> {
        if !self.contains_group(h) {
            return Err(Error::NotASubgroup);
        }
        for &g in &self.generators {
            let ge = &self.elements[g as usize];
            let gi = ge.inverse();
            for &s in &h.generators {
                let conj = ge.mul(&h.elements[s as usize]).mul(&gi);
                if !h.membership(&conj) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Verifies closure under multiplication and inversion over the full
    /// table. Quadratic; meant for tests and small groups.
    pub fn verify_closed(&self) -> bool {
        let n = self.elements.len() as u32;
        (0..n).all(|a| {
            self.index.contains_key(&self.elements[a as usize].inverse().key())
                && (0..n).all(|b| {
                    let prod = self.elements[a as usize].mul(&self.elements[b as usize]);
                    self.index.contains_key(&prod.key())
                })
        })
    }

    pub(crate) fn classes_cache(&self) -> &OnceLock<ConjugacyClasses> {
        &self.classes
    }

    pub(crate) fn orders_cache(&self) -> &OnceLock<Vec<u32>> {
        &self.orders
    }
}

impl<E: GroupElement> Clone for FiniteGroup<E> {
    fn clone(&self) -> Self {
        FiniteGroup {
            elements: self.elements.clone(),
            index: self.index.clone(),
            generators: self.generators.clone(),
            identity: self.identity,
            inverses: self.inverses.clone(),
            classes: self.classes.clone(),
            orders: self.orders.clone(),
        }
    }
}

impl<E: GroupElement> std::fmt::Debug for FiniteGroup<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {}, {} generators)", self.order(), self.generators.len())
    }
}
