//! Small square matrices over GF(2), packed one row per byte.
//!
//! These carry the symplectic shadow of Clifford conjugation and the
//! GL(2,2) toy example. Dimensions are capped at 8 so a whole matrix
//! fits in a `u128` key.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// Largest supported dimension; rows pack into single bytes.
pub const MAX_DIM: usize = 8;

/// Square bit matrix of dimension `n <= 8`; row `i` bit `j` is entry (i, j).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinMatrix {
    n: u8,
    rows: [u8; MAX_DIM],
}

impl BinMatrix {
    pub fn new(n: usize, rows: &[u8]) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::RankTooLarge(n, MAX_DIM));
        }
        if rows.len() != n {
            return Err(Error::Malformed(format!(
                "expected {n} rows, got {}",
                rows.len()
            )));
        }
        let mask = if n == 8 { 0xff } else { (1u8 << n) - 1 };
        let mut packed = [0u8; MAX_DIM];
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(Error::Malformed(format!("row {i} has bits beyond column {n}")));
            }
            packed[i] = r;
        }
        Ok(Self { n: n as u8, rows: packed })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        let mut rows = [0u8; MAX_DIM];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = 1 << i;
        }
        Self { n: n as u8, rows }
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn row(&self, i: usize) -> u8 {
        assert!(i < self.dim());
        self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        assert!(i < self.dim() && j < self.dim());
        self.rows[i] >> j & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// Standard matrix product; panics on dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch in GF(2) product");
        let mut rows = [0u8; MAX_DIM];
        for i in 0..self.dim() {
            let mut acc = 0u8;
            let mut sel = self.rows[i];
            while sel != 0 {
                let j = sel.trailing_zeros() as usize;
                acc ^= other.rows[j];
                sel &= sel - 1;
            }
            rows[i] = acc;
        }
        Self { n: self.n, rows }
    }

    pub fn transpose(&self) -> Self {
        let mut rows = [0u8; MAX_DIM];
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.entry(i, j) {
                    rows[j] |= 1 << i;
                }
            }
        }
        Self { n: self.n, rows }
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn try_inverse(&self) -> Option<Self> {
        let n = self.dim();
        let mut a = self.rows;
        let mut inv = Self::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(Self { n: self.n, rows: inv })
    }

    pub fn key_u128(&self) -> u128 {
        let mut k = self.n as u128;
        for (i, &r) in self.rows.iter().enumerate() {
            k |= (r as u128) << (8 * (i + 1));
        }
        k
    }
}

impl GroupElement for BinMatrix {
    type Key = u128;

    fn key(&self) -> u128 {
        self.key_u128()
    }

    fn mul(&self, other: &Self) -> Self {
        BinMatrix::mul(self, other)
    }

    fn inverse(&self) -> Self {
        self.try_inverse().expect("group element must be invertible")
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.dim())
    }
}

impl std::fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinMatrix{}[", self.n)?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, "|")?;
            }
            for j in 0..self.dim() {
                write!(f, "{}", u8::from(self.entry(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

/// Reduced-echelon span of bit vectors of length <= 16.
///
/// Supports membership tests and canonical coset representatives for
/// sign-vector reduction.
#[derive(Clone, Debug, Default)]
pub struct GfSpan {
    basis: Vec<u16>,
}

impl GfSpan {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a vector, returning true when the dimension grew.
    pub fn insert(&mut self, v: u16) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let lead = 15 - r.leading_zeros() as usize;
        for b in &mut self.basis {
            if *b >> lead & 1 == 1 {
                *b ^= r;
            }
        }
        self.basis.push(r);
        self.basis.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: u16) -> u16 {
        let mut r = v;
        for &b in &self.basis {
            let lead = 15 - b.leading_zeros() as usize;
            if r >> lead & 1 == 1 {
                r ^= b;
            }
        }
        r
    }

    pub fn contains(&self, v: u16) -> bool {
        self.reduce(v) == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> u64 {
        1 << self.basis.len()
    }
}
