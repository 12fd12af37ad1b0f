//! Pauli group elements with exact phase bookkeeping.
//!
//! An element is i^phase * X^x * Z^z on n qubits, with x and z packed as
//! bit vectors (bit q refers to qubit q). Conjugating such an element by
//! a unitary matrix and pattern-matching the result back is the exact
//! Clifford membership test used throughout the symplectic layer.

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::gate::GateMatrix;
use crate::group::GroupElement;

/// Most qubits a Pauli element supports; bit vectors live in a `u8`.
pub const MAX_QUBITS: usize = 8;

/// i^phase * X^x * Z^z on `n` qubits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliElement {
    n: u8,
    phase: u8,
    x: u8,
    z: u8,
}

fn parity(bits: u8) -> u8 {
    (bits.count_ones() & 1) as u8
}

impl PauliElement {
    pub fn new(n: usize, phase: u8, x: u8, z: u8) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::RankTooLarge(n, MAX_QUBITS));
        }
        let mask = if n == 8 { 0xff } else { (1u8 << n) - 1 };
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::Malformed(format!("support bits beyond qubit {n}")));
        }
        Ok(Self { n: n as u8, phase: phase & 3, x, z })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, 0, 0, 0).expect("identity fits any supported width")
    }

    /// X on qubit `q`, identity elsewhere.
    pub fn x_gen(n: usize, q: usize) -> Self {
        assert!(q < n);
        Self::new(n, 0, 1 << q, 0).expect("generator fits")
    }

    /// Z on qubit `q`, identity elsewhere.
    pub fn z_gen(n: usize, q: usize) -> Self {
        assert!(q < n);
        Self::new(n, 0, 0, 1 << q).expect("generator fits")
    }

    /// Y on qubit `q`: Y = i X Z.
    pub fn y_gen(n: usize, q: usize) -> Self {
        assert!(q < n);
        Self::new(n, 1, 1 << q, 1 << q).expect("generator fits")
    }

    pub fn n_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bits(&self) -> u8 {
        self.x
    }

    pub fn z_bits(&self) -> u8 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.x == 0 && self.z == 0
    }

    /// Phase bumped by i^k.
    pub fn mul_i(&self, k: u8) -> Self {
        Self { phase: (self.phase + k) & 3, ..*self }
    }

    /// Exact product: moving Z^z1 past X^x2 contributes (-1)^(z1.x2).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "qubit count mismatch in Pauli product");
        Self {
            n: self.n,
            phase: (self.phase + other.phase + 2 * parity(self.z & other.x)) & 3,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            phase: (4 - self.phase + 2 * parity(self.x & self.z)) & 3,
            x: self.x,
            z: self.z,
        }
    }

    /// True when the two elements commute (symplectic pairing is even).
    pub fn commutes_with(&self, other: &Self) -> bool {
        parity(self.x & other.z) == parity(self.z & other.x)
    }

    /// Hermitian elements are +/- the canonical i^(x.z) X^x Z^z; returns
    /// the sign as `false` for + and `true` for -, or `None` when the
    /// element is not Hermitian.
    pub fn hermitian_sign(&self) -> Option<bool> {
        let overlap = parity(self.x & self.z);
        match (self.phase + 4 - overlap) & 3 {
            0 => Some(false),
            2 => Some(true),
            _ => None,
        }
    }

    /// Canonical Hermitian element i^(x.z) X^x Z^z, negated when `sign`.
    pub fn hermitian(n: usize, x: u8, z: u8, sign: bool) -> Result<Self> {
        let base = Self::new(n, 0, x, z)?;
        let phase = (parity(x & z) + if sign { 2 } else { 0 }) & 3;
        Ok(Self { phase, ..base })
    }

    /// Dense matrix: X^x Z^z maps |c> to (-1)^(z.c) |c xor x>.
    ///
    /// Qubit 0 is the leftmost tensor factor, hence the most significant
    /// index bit; support bits are reversed to match.
    pub fn to_matrix(&self) -> GateMatrix {
        let n = self.n_qubits();
        let dim = 1usize << n;
        let rx = self.x.reverse_bits() >> (8 - n);
        let rz = self.z.reverse_bits() >> (8 - n);
        let mut entries = vec![CycloNum::ZERO; dim * dim];
        for c in 0..dim {
            let r = c ^ rx as usize;
            let e = (self.phase + 2 * parity(rz & c as u8)) & 3;
            entries[r * dim + c] = CycloNum::root_of_unity(2 * e);
        }
        GateMatrix::from_entries(n, entries).expect("pauli matrix is square")
    }

    /// Pattern-matches a dense matrix back to a Pauli element.
    pub fn from_matrix(m: &GateMatrix) -> Result<Self> {
        let n = m.n_qubits() as usize;
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::NotInPauliGroup);
        }
        let dim = m.dim();
        let rx = (0..dim)
            .find(|&r| !m.entry(r, 0).is_zero())
            .ok_or(Error::NotInPauliGroup)?;
        let e = m.entry(rx, 0).unit_root_exponent().ok_or(Error::NotInPauliGroup)?;
        if e % 2 != 0 {
            return Err(Error::NotInPauliGroup);
        }
        let phase = (e / 2) & 3;
        let mut z = 0u8;
        for q in 0..n {
            let c = 1usize << (n - 1 - q);
            let exp = m.entry(c ^ rx, c).unit_root_exponent().ok_or(Error::NotInPauliGroup)?;
            match (exp + 8 - 2 * phase) % 8 {
                0 => {}
                4 => z |= 1 << q,
                _ => return Err(Error::NotInPauliGroup),
            }
        }
        let x = (rx as u8).reverse_bits() >> (8 - n);
        let candidate = Self::new(n, phase, x, z).map_err(|_| Error::NotInPauliGroup)?;
        if &candidate.to_matrix() == m {
            Ok(candidate)
        } else {
            Err(Error::NotInPauliGroup)
        }
    }

    pub fn key_u32(&self) -> u32 {
        u32::from_le_bytes([self.n, self.phase, self.x, self.z])
    }
}

impl GroupElement for PauliElement {
    type Key = u32;

    fn key(&self) -> u32 {
        self.key_u32()
    }

    fn mul(&self, other: &Self) -> Self {
        PauliElement::mul(self, other)
    }

    fn inverse(&self) -> Self {
        PauliElement::inverse(self)
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.n_qubits())
    }
}

impl std::fmt::Debug for PauliElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "i^{} ", self.phase)?;
        for q in 0..self.n_qubits() {
            let letter = match (self.x >> q & 1, self.z >> q & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'W', // X and Z on the same wire, i.e. -iY
            };
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Computes M p M^dagger exactly and pattern-matches the result.
///
/// Failure witnesses that M does not normalize the Pauli group.
pub fn conjugate_pauli(m: &GateMatrix, p: &PauliElement) -> Result<PauliElement> {
    if m.dim() != 1 << p.n_qubits() {
        return Err(Error::DimensionMismatch(m.dim(), 1 << p.n_qubits()));
    }
    let conj = m.mul(&p.to_matrix()).mul(&m.dagger());
    PauliElement::from_matrix(&conj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{gate, GateName};

    fn single(name: GateName) -> GateMatrix {
        gate(name, 1, &[0]).unwrap()
    }

    #[test]
    fn products_follow_the_phase_rule() {
        let x = PauliElement::x_gen(1, 0);
        let z = PauliElement::z_gen(1, 0);
        let y = PauliElement::y_gen(1, 0);
        // XZ = -iY, ZX = iY.
        assert_eq!(x.mul(&z), y.mul_i(3));
        assert_eq!(z.mul(&x), y.mul_i(1));
        assert_eq!(x.mul(&x), PauliElement::identity(1));
        assert_eq!(y.mul(&y), PauliElement::identity(1));
        assert!(!x.commutes_with(&z));
        assert!(x.commutes_with(&x));
    }

    #[test]
    fn inverse_cancels() {
        for phase in 0..4 {
            for x in 0..4u8 {
                for z in 0..4u8 {
                    let p = PauliElement::new(2, phase, x, z).unwrap();
                    assert!(p.mul(&p.inverse()).is_identity());
                    assert!(p.inverse().mul(&p).is_identity());
                }
            }
        }
    }

    #[test]
    fn hermitian_signs() {
        let x = PauliElement::x_gen(1, 0);
        let y = PauliElement::y_gen(1, 0);
        assert_eq!(x.hermitian_sign(), Some(false));
        assert_eq!(x.mul_i(2).hermitian_sign(), Some(true));
        assert_eq!(x.mul_i(1).hermitian_sign(), None);
        assert_eq!(y.hermitian_sign(), Some(false));
        let back = PauliElement::hermitian(1, 1, 1, false).unwrap();
        assert_eq!(back, y);
    }

    #[test]
    fn matrices_round_trip() {
        for phase in 0..4 {
            for x in 0..4u8 {
                for z in 0..4u8 {
                    let p = PauliElement::new(2, phase, x, z).unwrap();
                    let m = p.to_matrix();
                    assert_eq!(PauliElement::from_matrix(&m).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn matrix_product_agrees_with_symbolic_product() {
        let a = PauliElement::new(2, 1, 0b10, 0b01).unwrap();
        let b = PauliElement::new(2, 3, 0b11, 0b10).unwrap();
        assert_eq!(a.mul(&b).to_matrix(), a.to_matrix().mul(&b.to_matrix()));
    }

    #[test]
    fn non_pauli_matrices_are_rejected() {
        let h = single(GateName::H);
        assert!(matches!(
            PauliElement::from_matrix(&h),
            Err(Error::NotInPauliGroup)
        ));
    }

    #[test]
    fn conjugation_by_h_and_p() {
        let h = single(GateName::H);
        let p = single(GateName::P);
        let x = PauliElement::x_gen(1, 0);
        let z = PauliElement::z_gen(1, 0);
        let y = PauliElement::y_gen(1, 0);
        assert_eq!(conjugate_pauli(&h, &x).unwrap(), z);
        assert_eq!(conjugate_pauli(&h, &z).unwrap(), x);
        assert_eq!(conjugate_pauli(&p, &x).unwrap(), y);
        assert_eq!(conjugate_pauli(&p, &z).unwrap(), z);
    }

    #[test]
    fn conjugation_by_cz_entangles_support() {
        let cz = gate(GateName::Cz, 2, &[0, 1]).unwrap();
        let x0 = PauliElement::x_gen(2, 0);
        let expect = PauliElement::new(2, 0, 0b01, 0b10).unwrap(); // X(0) Z(1)
        assert_eq!(conjugate_pauli(&cz, &x0).unwrap(), expect);
    }

    #[test]
    fn non_clifford_conjugation_is_detected() {
        // sqrt(T)-like diagonal with an eighth root is outside the
        // Clifford normalizer of X.
        let m = GateMatrix::diagonal(&[CycloNum::ONE, CycloNum::root_of_unity(1)]);
        let x = PauliElement::x_gen(1, 0);
        assert!(matches!(
            conjugate_pauli(&m, &x),
            Err(Error::NotInPauliGroup)
        ));
    }

    #[test]
    fn pauli_group_closure_has_expected_orders() {
        let gens = vec![
            PauliElement::x_gen(1, 0),
            PauliElement::z_gen(1, 0),
            PauliElement::identity(1).mul_i(1),
        ];
        let p1 = crate::group::closure(&gens, 100).unwrap();
        assert_eq!(p1.order(), 16);
        let gens2 = vec![
            PauliElement::x_gen(2, 0),
            PauliElement::z_gen(2, 0),
            PauliElement::x_gen(2, 1),
            PauliElement::z_gen(2, 1),
            PauliElement::identity(2).mul_i(1),
        ];
        let p2 = crate::group::closure(&gens2, 100).unwrap();
        assert_eq!(p2.order(), 64);
    }
}
