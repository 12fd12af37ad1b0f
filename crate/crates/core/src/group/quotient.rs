//! Quotient groups. Cosets are represented by their least-key member and
//! multiplied by multiplying representatives in the parent, then snapping
//! back to the canonical representative.

use super::{from_elements, FiniteGroup, GroupElement};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Shared context of one quotient construction.
pub struct QuotientCtx<E: GroupElement> {
    parent: Arc<FiniteGroup<E>>,
    coset_of: Vec<u32>,
    rep_of: Vec<u32>,
}

/// One coset of a normal subgroup, usable as a group element itself.
pub struct CosetRep<E: GroupElement> {
    ctx: Arc<QuotientCtx<E>>,
    rep: u32,
}

impl<E: GroupElement> CosetRep<E> {
    /// The canonical (least-key) member of the coset.
    pub fn representative(&self) -> &E {
        self.ctx.parent.element(self.rep)
    }

    /// Ordinal of the representative in the parent group.
    pub fn rep_ord(&self) -> u32 {
        self.rep
    }

    fn snap(&self, parent_ord: u32) -> CosetRep<E> {
        let coset = self.ctx.coset_of[parent_ord as usize];
        CosetRep { ctx: Arc::clone(&self.ctx), rep: self.ctx.rep_of[coset as usize] }
    }
}

impl<E: GroupElement> Clone for CosetRep<E> {
    fn clone(&self) -> Self {
        CosetRep { ctx: Arc::clone(&self.ctx), rep: self.rep }
    }
}

impl<E: GroupElement> FiniteGroup<CosetRep<E>> {
    /// Maps a parent-group element to its coset in this quotient.
    ///
    /// Fails when `x` is not a member of the parent the quotient was built
    /// from.
    pub fn project(&self, x: &E) -> Result<CosetRep<E>> {
        let ctx = &self.elements()[self.identity_ord() as usize].ctx;
        let ord = ctx
            .parent
            .ord_of_key(&x.key())
            .ok_or_else(|| Error::Malformed("element is outside the quotient's parent".into()))?;
        let coset = ctx.coset_of[ord as usize];
        Ok(CosetRep { ctx: Arc::clone(ctx), rep: ctx.rep_of[coset as usize] })
    }
}

impl<E: GroupElement> GroupElement for CosetRep<E> {
    type Key = E::Key;

    fn key(&self) -> E::Key {
        self.representative().key()
    }

    fn mul(&self, rhs: &CosetRep<E>) -> CosetRep<E> {
        self.snap(self.ctx.parent.mul_ord(self.rep, rhs.rep))
    }

    fn inverse(&self) -> CosetRep<E> {
        self.snap(self.ctx.parent.inverse_ord(self.rep))
    }

    fn identity_like(&self) -> CosetRep<E> {
        self.snap(self.ctx.parent.identity_ord())
    }
}

impl<E: GroupElement> std::fmt::Debug for CosetRep<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CosetRep(parent ordinal {})", self.rep)
    }
}

/// The quotient `g/n`. Fails with [`Error::NotNormal`] when `n` is not
/// normal in `g`.
pub fn quotient<E: GroupElement>(
    g: &Arc<FiniteGroup<E>>,
    n: &FiniteGroup<E>,
) -> Result<FiniteGroup<CosetRep<E>>> {
    if !g.is_normal(n)? {
        return Err(Error::NotNormal);
    }
    let coset_of = g.left_coset_partition(n);
    let n_cosets = 1 + *coset_of.iter().max().unwrap() as usize;
    let mut rep_of: Vec<u32> = vec![u32::MAX; n_cosets];
    let mut rep_key: Vec<Option<E::Key>> = vec![None; n_cosets];
    for (x, &c) in coset_of.iter().enumerate() {
        let key = g.element(x as u32).key();
        if rep_key[c as usize].as_ref().is_none_or(|best| key < *best) {
            rep_key[c as usize] = Some(key);
            rep_of[c as usize] = x as u32;
        }
    }
    let ctx = Arc::new(QuotientCtx { parent: Arc::clone(g), coset_of, rep_of });
    let cosets: Vec<CosetRep<E>> =
        ctx.rep_of.iter().map(|&rep| CosetRep { ctx: Arc::clone(&ctx), rep }).collect();
    let q = from_elements(cosets)?;
    assert_eq!(q.order() * n.order(), g.order(), "coset count times |N| must equal |G|");
    Ok(q)
}
