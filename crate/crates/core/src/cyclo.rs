//! Exact arithmetic in the cyclotomic ring of eighth roots of unity with
//! dyadic denominators.
//!
//! A value is `(a + b·w + c·w^2 + d·w^3) / 2^k` where `w = exp(i*pi/4)`, so
//! `w^4 = -1`, `w^2 = i` and `sqrt(2) = w - w^3`. Every quantity the engine
//! touches (gate entries, inner products, scalar factors) lives in this
//! ring, so equality is always decidable and exact.

use serde::{Deserialize, Serialize};

/// One ring element in canonical form.
///
/// Canonical means `k == 0` or at least one of `a, b, c, d` is odd. All
/// constructors and operations re-canonicalize, so `==` on the derived
/// `PartialEq` is true ring equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycloNum {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub k: u8,
}

// Coefficients of unitary-matrix entries at denominator 2^k are bounded by
// 2^k, and every group in scope keeps k below ten, so i64 never overflows in
// honest use. All arithmetic still goes through i128 with a checked narrow:
// an overflow aborts loudly instead of wrapping.
#[inline]
fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("cyclotomic coefficient overflow")
}

impl CycloNum {
    pub const ZERO: CycloNum = CycloNum { a: 0, b: 0, c: 0, d: 0, k: 0 };
    pub const ONE: CycloNum = CycloNum { a: 1, b: 0, c: 0, d: 0, k: 0 };

    /// Builds `(a + b·w + c·w^2 + d·w^3) / 2^k` and canonicalizes.
    pub fn new(a: i64, b: i64, c: i64, d: i64, k: u8) -> CycloNum {
        let mut v = CycloNum { a, b, c, d, k };
        v.reduce();
        v
    }

    pub fn from_int(a: i64) -> CycloNum {
        CycloNum { a, b: 0, c: 0, d: 0, k: 0 }
    }

    /// `w^j` for any exponent, using `w^4 = -1`.
    pub fn root_of_unity(j: u8) -> CycloNum {
        let mut v = CycloNum::ONE;
        v.mul_unit_assign(j);
        v
    }

    /// The imaginary unit `i = w^2`.
    pub fn i() -> CycloNum {
        CycloNum { a: 0, b: 0, c: 1, d: 0, k: 0 }
    }

    /// `1/sqrt(2) = (w - w^3)/2`.
    pub fn inv_sqrt2() -> CycloNum {
        CycloNum { a: 0, b: 1, c: 0, d: -1, k: 1 }
    }

    /// `sqrt(2) = w - w^3`.
    pub fn sqrt2() -> CycloNum {
        CycloNum { a: 0, b: 1, c: 0, d: -1, k: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0 && self.d == 0
    }

    pub fn is_one(&self) -> bool {
        *self == CycloNum::ONE
    }

    fn reduce(&mut self) {
        if self.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 && self.a & 1 == 0 && self.b & 1 == 0 && self.c & 1 == 0 && self.d & 1 == 0
        {
            self.a /= 2;
            self.b /= 2;
            self.c /= 2;
            self.d /= 2;
            self.k -= 1;
        }
    }

    pub fn neg(&self) -> CycloNum {
        CycloNum { a: -self.a, b: -self.b, c: -self.c, d: -self.d, k: self.k }
    }

    pub fn add(&self, rhs: &CycloNum) -> CycloNum {
        let k = self.k.max(rhs.k);
        let ls = 1i128 << (k - self.k);
        let rs = 1i128 << (k - rhs.k);
        CycloNum::new(
            narrow(self.a as i128 * ls + rhs.a as i128 * rs),
            narrow(self.b as i128 * ls + rhs.b as i128 * rs),
            narrow(self.c as i128 * ls + rhs.c as i128 * rs),
            narrow(self.d as i128 * ls + rhs.d as i128 * rs),
            k,
        )
    }

    pub fn sub(&self, rhs: &CycloNum) -> CycloNum {
        self.add(&rhs.neg())
    }

    /// Ring product, folding `w^4 = -1` back into the four coefficients.
    pub fn mul(&self, rhs: &CycloNum) -> CycloNum {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let (e, f, g, h) = (rhs.a as i128, rhs.b as i128, rhs.c as i128, rhs.d as i128);
        CycloNum::new(
            narrow(a * e - b * h - c * g - d * f),
            narrow(a * f + b * e - c * h - d * g),
            narrow(a * g + b * f + c * e - d * h),
            narrow(a * h + b * g + c * f + d * e),
            self.k.checked_add(rhs.k).expect("cyclotomic denominator overflow"),
        )
    }

    /// Complex conjugate: `conj(w) = w^-1 = -w^3`.
    pub fn conj(&self) -> CycloNum {
        CycloNum { a: self.a, b: -self.d, c: -self.c, d: -self.b, k: self.k }
    }

    /// In-place multiplication by the unit `w^j`. Each step sends
    /// `(a, b, c, d)` to `(-d, a, b, c)`.
    pub fn mul_unit_assign(&mut self, j: u8) {
        for _ in 0..(j & 7) {
            let d = self.d;
            self.d = self.c;
            self.c = self.b;
            self.b = self.a;
            self.a = -d;
        }
    }

    pub fn mul_unit(&self, j: u8) -> CycloNum {
        let mut v = *self;
        v.mul_unit_assign(j);
        v
    }

    /// `x * conj(x)`, which is real and non-negative.
    pub fn norm(&self) -> CycloNum {
        self.mul(&self.conj())
    }

    /// If the value is exactly `w^j`, returns `j` in `0..8`.
    pub fn unit_root_exponent(&self) -> Option<u8> {
        (0..8).find(|&j| *self == CycloNum::root_of_unity(j))
    }

    /// True if the value is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.b == -self.d && self.c == 0
    }

    /// Appends the canonical byte encoding: signed varints of `a, b, c, d`
    /// then the denominator exponent.
    pub fn encode_into(&self, out: &mut Vec<u8>) {
        write_varint(zigzag(self.a), out);
        write_varint(zigzag(self.b), out);
        write_varint(zigzag(self.c), out);
        write_varint(zigzag(self.d), out);
        write_varint(self.k as u64, out);
    }

    /// Inverse of [`encode_into`], consuming bytes from the front of `buf`.
    pub fn decode_from(buf: &mut &[u8]) -> Option<CycloNum> {
        let a = unzigzag(read_varint(buf)?);
        let b = unzigzag(read_varint(buf)?);
        let c = unzigzag(read_varint(buf)?);
        let d = unzigzag(read_varint(buf)?);
        let k = u8::try_from(read_varint(buf)?).ok()?;
        let v = CycloNum { a, b, c, d, k };
        let mut canon = v;
        canon.reduce();
        // Reject non-canonical encodings so byte keys stay unique.
        (canon == v).then_some(v)
    }
}

#[inline]
fn zigzag(v: i64) -> u64 {
    ((v << 1) ^ (v >> 63)) as u64
}

#[inline]
fn unzigzag(v: u64) -> i64 {
    ((v >> 1) as i64) ^ -((v & 1) as i64)
}

pub(crate) fn write_varint(mut v: u64, out: &mut Vec<u8>) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

pub(crate) fn read_varint(buf: &mut &[u8]) -> Option<u64> {
    let mut v = 0u64;
    let mut shift = 0u32;
    loop {
        let (&byte, rest) = buf.split_first()?;
        *buf = rest;
        if shift >= 64 {
            return None;
        }
        v |= ((byte & 0x7f) as u64) << shift;
        if byte & 0x80 == 0 {
            return Some(v);
        }
        shift += 7;
    }
}

impl std::fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}+{}w+{}w2+{}w3)/2^{}", self.a, self.b, self.c, self.d, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w() -> CycloNum {
        CycloNum::root_of_unity(1)
    }

    #[test]
    fn eighth_root_relations() {
        assert_eq!(w().mul(&CycloNum::root_of_unity(3)), CycloNum::from_int(-1));
        assert_eq!(CycloNum::i().mul(&CycloNum::i()), CycloNum::from_int(-1));
        assert_eq!(CycloNum::root_of_unity(8), CycloNum::ONE);
        assert_eq!(CycloNum::sqrt2().mul(&CycloNum::sqrt2()), CycloNum::from_int(2));
        let half = CycloNum::inv_sqrt2().mul(&CycloNum::inv_sqrt2());
        assert_eq!(half, CycloNum::new(1, 0, 0, 0, 1));
    }

    #[test]
    fn conjugation_fixes_reals_and_inverts_units() {
        assert_eq!(w().conj(), CycloNum::new(0, 0, 0, -1, 0));
        assert_eq!(CycloNum::i().conj(), CycloNum::i().neg());
        assert_eq!(CycloNum::sqrt2().conj(), CycloNum::sqrt2());
        assert!(CycloNum::inv_sqrt2().is_real());
        assert!(!CycloNum::i().is_real());
        assert_eq!(w().norm(), CycloNum::ONE);
    }

    #[test]
    fn canonical_form_reduces_even_numerators() {
        let v = CycloNum::new(2, 4, 6, 8, 3);
        assert_eq!(v, CycloNum::new(1, 2, 3, 4, 2));
        assert_eq!(CycloNum::new(0, 0, 0, 0, 5), CycloNum::ZERO);
    }

    #[test]
    fn encoding_round_trips_and_rejects_non_canonical() {
        let vals = [
            CycloNum::ZERO,
            CycloNum::ONE,
            CycloNum::inv_sqrt2(),
            CycloNum::new(-3, 7, 0, -1, 4),
        ];
        let mut buf = Vec::new();
        for v in &vals {
            v.encode_into(&mut buf);
        }
        let mut slice = buf.as_slice();
        for v in &vals {
            assert_eq!(CycloNum::decode_from(&mut slice), Some(*v));
        }
        assert!(slice.is_empty());

        // (2,2,2,2)/2 is non-canonical; its encoding must not decode.
        let mut bad = Vec::new();
        for coeff in [2i64, 2, 2, 2] {
            write_varint(zigzag(coeff), &mut bad);
        }
        write_varint(1, &mut bad);
        assert_eq!(CycloNum::decode_from(&mut bad.as_slice()), None);
    }

    fn cyclo_strategy() -> impl Strategy<Value = CycloNum> {
        (-40i64..40, -40i64..40, -40i64..40, -40i64..40, 0u8..5)
            .prop_map(|(a, b, c, d, k)| CycloNum::new(a, b, c, d, k))
    }

    proptest! {
        #[test]
        fn ring_laws(x in cyclo_strategy(), y in cyclo_strategy(), z in cyclo_strategy()) {
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.add(&x.neg()), CycloNum::ZERO);
            prop_assert_eq!(x.mul(&CycloNum::ONE), x);
        }

        #[test]
        fn conjugation_is_a_ring_involution(x in cyclo_strategy(), y in cyclo_strategy()) {
            prop_assert_eq!(x.conj().conj(), x);
            prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
            prop_assert_eq!(x.add(&y).conj(), x.conj().add(&y.conj()));
            prop_assert!(x.norm().is_real());
        }

        #[test]
        fn unit_multiplication_matches_ring_product(x in cyclo_strategy(), j in 0u8..8) {
            prop_assert_eq!(x.mul_unit(j), x.mul(&CycloNum::root_of_unity(j)));
        }

        #[test]
        fn byte_encoding_round_trips(x in cyclo_strategy()) {
            let mut buf = Vec::new();
            x.encode_into(&mut buf);
            let mut slice = buf.as_slice();
            prop_assert_eq!(CycloNum::decode_from(&mut slice), Some(x));
            prop_assert!(slice.is_empty());
        }
    }
}
