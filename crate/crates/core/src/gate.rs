//! Exact unitary matrices on qubit registers.
//!
//! A [`GateMatrix`] is a square matrix of [`CycloNum`] entries with dimension
//! `2^n`. The standard gate library (H, P, CZ, the qubit swap T, the
//! entangling gate R, and the Paulis) is built here, and any library gate can
//! be embedded at chosen qubit positions of a wider register. Qubit 0 is the
//! leftmost tensor factor, i.e. the most significant index bit.

use crate::cyclo::{read_varint, write_varint, CycloNum};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GateMatrix {
    n_qubits: u8,
    data: Box<[CycloNum]>,
}

/// The built-in gate library.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GateName {
    H,
    P,
    X,
    Y,
    Z,
    I,
    Cz,
    T,
    R,
}

impl GateName {
    pub fn arity(self) -> usize {
        match self {
            GateName::H | GateName::P | GateName::X | GateName::Y | GateName::Z | GateName::I => 1,
            GateName::Cz | GateName::T | GateName::R => 2,
        }
    }

    /// The gate's matrix on exactly `arity()` qubits.
    pub fn base_matrix(self) -> GateMatrix {
        let o = CycloNum::ONE;
        let z = CycloNum::ZERO;
        let n = CycloNum::from_int(-1);
        let i = CycloNum::i();
        match self {
            GateName::I => GateMatrix::identity(1),
            GateName::H => GateMatrix::from_entries(1, vec![o, o, o, n])
                .unwrap()
                .scale(&CycloNum::inv_sqrt2()),
            GateName::P => GateMatrix::from_entries(1, vec![o, z, z, i]).unwrap(),
            GateName::X => GateMatrix::from_entries(1, vec![z, o, o, z]).unwrap(),
            GateName::Y => GateMatrix::from_entries(1, vec![z, i.neg(), i, z]).unwrap(),
            GateName::Z => GateMatrix::from_entries(1, vec![o, z, z, n]).unwrap(),
            GateName::Cz => GateMatrix::diagonal(&[o, o, o, n]),
            GateName::T => GateMatrix::from_entries(
                2,
                vec![o, z, z, z, z, z, o, z, z, o, z, z, z, z, z, o],
            )
            .unwrap(),
            GateName::R => GateMatrix::from_entries(
                2,
                vec![o, z, z, o, z, o, n, z, z, o, o, z, n, z, z, o],
            )
            .unwrap()
            .scale(&CycloNum::inv_sqrt2()),
        }
    }
}

/// The named gate embedded at `positions` on an `n_qubits` register, with
/// identity elsewhere.
pub fn gate(name: GateName, n_qubits: usize, positions: &[usize]) -> Result<GateMatrix> {
    if positions.len() != name.arity() {
        return Err(Error::BadPosition(format!(
            "{name:?} acts on {} qubit(s), got {} position(s)",
            name.arity(),
            positions.len()
        )));
    }
    name.base_matrix().embedded(n_qubits, positions)
}

impl GateMatrix {
    pub fn identity(n_qubits: usize) -> GateMatrix {
        let dim = 1usize << n_qubits;
        let mut data = vec![CycloNum::ZERO; dim * dim];
        for r in 0..dim {
            data[r * dim + r] = CycloNum::ONE;
        }
        GateMatrix { n_qubits: n_qubits as u8, data: data.into() }
    }

    pub fn diagonal(diag: &[CycloNum]) -> GateMatrix {
        let dim = diag.len();
        assert!(dim.is_power_of_two(), "diagonal length must be a power of two");
        let mut data = vec![CycloNum::ZERO; dim * dim];
        for (r, v) in diag.iter().enumerate() {
            data[r * dim + r] = *v;
        }
        GateMatrix { n_qubits: dim.trailing_zeros() as u8, data: data.into() }
    }

    /// Row-major entries; the length must be `4^n_qubits`.
    pub fn from_entries(n_qubits: usize, entries: Vec<CycloNum>) -> Result<GateMatrix> {
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(dim * dim, entries.len()));
        }
        Ok(GateMatrix { n_qubits: n_qubits as u8, data: entries.into() })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits as usize
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn entry(&self, r: usize, c: usize) -> &CycloNum {
        &self.data[r * self.dim() + c]
    }

    /// Matrix product. Panics if the dimensions differ; use [`try_mul`] for
    /// the fallible form.
    ///
    /// [`try_mul`]: GateMatrix::try_mul
    pub fn mul(&self, rhs: &GateMatrix) -> GateMatrix {
        assert_eq!(self.n_qubits, rhs.n_qubits, "gate dimension mismatch");
        let dim = self.dim();
        let mut data = vec![CycloNum::ZERO; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let lhs = self.entry(r, k);
                if lhs.is_zero() {
                    continue;
                }
                for c in 0..dim {
                    let rhs_v = rhs.entry(k, c);
                    if rhs_v.is_zero() {
                        continue;
                    }
                    let cell = &mut data[r * dim + c];
                    *cell = cell.add(&lhs.mul(rhs_v));
                }
            }
        }
        GateMatrix { n_qubits: self.n_qubits, data: data.into() }
    }

    pub fn try_mul(&self, rhs: &GateMatrix) -> Result<GateMatrix> {
        if self.n_qubits != rhs.n_qubits {
            return Err(Error::DimensionMismatch(self.dim(), rhs.dim()));
        }
        Ok(self.mul(rhs))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> GateMatrix {
        let dim = self.dim();
        let mut data = vec![CycloNum::ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                data[c * dim + r] = self.entry(r, c).conj();
            }
        }
        GateMatrix { n_qubits: self.n_qubits, data: data.into() }
    }

    pub fn kron(&self, rhs: &GateMatrix) -> GateMatrix {
        let (da, db) = (self.dim(), rhs.dim());
        let dim = da * db;
        let mut data = vec![CycloNum::ZERO; dim * dim];
        for ra in 0..da {
            for ca in 0..da {
                let va = self.entry(ra, ca);
                if va.is_zero() {
                    continue;
                }
                for rb in 0..db {
                    for cb in 0..db {
                        let vb = rhs.entry(rb, cb);
                        if !vb.is_zero() {
                            data[(ra * db + rb) * dim + (ca * db + cb)] = va.mul(vb);
                        }
                    }
                }
            }
        }
        GateMatrix { n_qubits: self.n_qubits + rhs.n_qubits, data: data.into() }
    }

    pub fn scale(&self, s: &CycloNum) -> GateMatrix {
        let data: Vec<CycloNum> = self.data.iter().map(|v| v.mul(s)).collect();
        GateMatrix { n_qubits: self.n_qubits, data: data.into() }
    }

    /// Multiplies every entry by the unit `w^j`.
    pub fn mul_unit(&self, j: u8) -> GateMatrix {
        let data: Vec<CycloNum> = self.data.iter().map(|v| v.mul_unit(j)).collect();
        GateMatrix { n_qubits: self.n_qubits, data: data.into() }
    }

    pub fn is_identity(&self) -> bool {
        let dim = self.dim();
        self.data.iter().enumerate().all(|(i, v)| {
            if i / dim == i % dim {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    }

    /// Exact check of `M * dagger(M) = I`.
    pub fn is_unitary(&self) -> bool {
        self.mul(&self.dagger()).is_identity()
    }

    /// Places this gate (on `m` qubits) at the given `m` distinct positions
    /// of an `n_qubits` register. Factor `i` of the gate acts on qubit
    /// `positions[i]`.
    pub fn embedded(&self, n_qubits: usize, positions: &[usize]) -> Result<GateMatrix> {
        let m = positions.len();
        if self.n_qubits as usize != m {
            return Err(Error::BadPosition(format!(
                "gate on {} qubit(s) cannot fill {m} position(s)",
                self.n_qubits
            )));
        }
        for (i, &p) in positions.iter().enumerate() {
            if p >= n_qubits {
                return Err(Error::BadPosition(format!(
                    "position {p} out of range for {n_qubits} qubit(s)"
                )));
            }
            if positions[..i].contains(&p) {
                return Err(Error::BadPosition(format!("position {p} repeated")));
            }
        }
        let dim = 1usize << n_qubits;
        let sub_dim = 1usize << m;
        let mut data = vec![CycloNum::ZERO; dim * dim];
        // Bit of qubit q in an index: qubit 0 is the most significant.
        let bit_shift = |q: usize| n_qubits - 1 - q;
        for row in 0..dim {
            let mut sub_r = 0usize;
            for (i, &p) in positions.iter().enumerate() {
                sub_r |= ((row >> bit_shift(p)) & 1) << (m - 1 - i);
            }
            for sub_c in 0..sub_dim {
                let v = self.entry(sub_r, sub_c);
                if v.is_zero() {
                    continue;
                }
                let mut col = row;
                for (i, &p) in positions.iter().enumerate() {
                    let bit = (sub_c >> (m - 1 - i)) & 1;
                    col = (col & !(1 << bit_shift(p))) | (bit << bit_shift(p));
                }
                data[row * dim + col] = *v;
            }
        }
        Ok(GateMatrix { n_qubits: n_qubits as u8, data: data.into() })
    }

    /// Canonical byte key: varint dim, then each entry's encoding row-major.
    /// With `projective` the key is minimized over the unit scalars, so two
    /// matrices get equal keys iff they differ by a factor of plus or minus
    /// some power of `w`. Those sixteen candidate units collapse to the eight
    /// distinct powers of `w` since `w^4 = -1`.
    pub fn canonical_key(&self, projective: bool) -> Vec<u8> {
        if !projective {
            return self.plain_key();
        }
        (0..8)
            .map(|j| self.mul_unit(j).plain_key())
            .min()
            .unwrap()
    }

    fn plain_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + self.data.len() * 5);
        write_varint(self.dim() as u64, &mut out);
        for v in self.data.iter() {
            v.encode_into(&mut out);
        }
        out
    }

    /// Decodes a non-projective [`canonical_key`] back into the matrix.
    ///
    /// [`canonical_key`]: GateMatrix::canonical_key
    pub fn from_canonical_key(mut key: &[u8]) -> Result<GateMatrix> {
        let buf = &mut key;
        let dim = read_varint(buf).ok_or_else(|| Error::Malformed("truncated key".into()))?;
        let dim = usize::try_from(dim).ok().filter(|d| d.is_power_of_two() && *d > 0).ok_or_else(
            || Error::Malformed(format!("key dimension {dim} is not a positive power of two")),
        )?;
        let mut data = Vec::with_capacity(dim * dim);
        for _ in 0..dim * dim {
            data.push(
                CycloNum::decode_from(buf)
                    .ok_or_else(|| Error::Malformed("bad entry encoding in key".into()))?,
            );
        }
        if !buf.is_empty() {
            return Err(Error::Malformed("trailing bytes in key".into()));
        }
        Ok(GateMatrix { n_qubits: dim.trailing_zeros() as u8, data: data.into() })
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<[i64; 5]> =
            self.data.iter().map(|v| [v.a, v.b, v.c, v.d, v.k as i64]).collect();
        serde_json::to_string(&MatrixJson { dim: self.dim(), entries }).unwrap()
    }

    pub fn from_json(text: &str) -> Result<GateMatrix> {
        let raw: MatrixJson = serde_json::from_str(text)?;
        if !raw.dim.is_power_of_two() || raw.dim == 0 {
            return Err(Error::Malformed(format!("dim {} is not a positive power of two", raw.dim)));
        }
        if raw.entries.len() != raw.dim * raw.dim {
            return Err(Error::DimensionMismatch(raw.dim * raw.dim, raw.entries.len()));
        }
        let data: Vec<CycloNum> = raw
            .entries
            .iter()
            .map(|&[a, b, c, d, k]| {
                let k = u8::try_from(k)
                    .map_err(|_| Error::Malformed(format!("denominator exponent {k} out of range")))?;
                Ok(CycloNum::new(a, b, c, d, k))
            })
            .collect::<Result<_>>()?;
        Ok(GateMatrix { n_qubits: raw.dim.trailing_zeros() as u8, data: data.into() })
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<[i64; 5]>,
}

impl GroupElement for GateMatrix {
    type Key = Box<[u8]>;

    fn key(&self) -> Box<[u8]> {
        self.canonical_key(false).into()
    }

    fn mul(&self, rhs: &GateMatrix) -> GateMatrix {
        GateMatrix::mul(self, rhs)
    }

    /// Inverse as the conjugate transpose; group members must be unitary.
    fn inverse(&self) -> GateMatrix {
        self.dagger()
    }

    fn identity_like(&self) -> GateMatrix {
        GateMatrix::identity(self.n_qubits())
    }
}

/// A gate matrix compared modulo the unit scalars `±w^j`, for working in
/// projective (scalar-blind) groups.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjectiveGate(pub GateMatrix);

impl GroupElement for ProjectiveGate {
    type Key = Box<[u8]>;

    fn key(&self) -> Box<[u8]> {
        self.0.canonical_key(true).into()
    }

    fn mul(&self, rhs: &ProjectiveGate) -> ProjectiveGate {
        ProjectiveGate(self.0.mul(&rhs.0))
    }

    fn inverse(&self) -> ProjectiveGate {
        ProjectiveGate(self.0.dagger())
    }

    fn identity_like(&self) -> ProjectiveGate {
        ProjectiveGate(GateMatrix::identity(self.0.n_qubits()))
    }
}

impl std::fmt::Debug for GateMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GateMatrix({0}x{0})", self.dim())?;
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                write!(f, " {:?}", self.entry(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g1(name: GateName) -> GateMatrix {
        name.base_matrix()
    }

    #[test]
    fn library_matrices_match_their_definitions() {
        let h = g1(GateName::H);
        assert_eq!(*h.entry(0, 0), CycloNum::inv_sqrt2());
        assert_eq!(*h.entry(1, 1), CycloNum::inv_sqrt2().neg());
        let p = g1(GateName::P);
        assert_eq!(*p.entry(1, 1), CycloNum::i());
        let t = g1(GateName::T);
        for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            assert!(t.entry(r, c).is_one());
        }
        let r = g1(GateName::R);
        let s = CycloNum::inv_sqrt2();
        let expect = [
            [1, 0, 0, 1],
            [0, 1, -1, 0],
            [0, 1, 1, 0],
            [-1, 0, 0, 1],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(*r.entry(i, j), s.mul(&CycloNum::from_int(v)));
            }
        }
        assert_eq!(g1(GateName::Cz), GateMatrix::diagonal(&[
            CycloNum::ONE,
            CycloNum::ONE,
            CycloNum::ONE,
            CycloNum::from_int(-1),
        ]));
    }

    #[test]
    fn involutions_and_unitarity() {
        for name in [
            GateName::H,
            GateName::P,
            GateName::X,
            GateName::Y,
            GateName::Z,
            GateName::I,
            GateName::Cz,
            GateName::T,
            GateName::R,
        ] {
            assert!(name.base_matrix().is_unitary(), "{name:?} must be unitary");
        }
        for name in [GateName::H, GateName::X, GateName::Y, GateName::Z, GateName::Cz, GateName::T]
        {
            let m = name.base_matrix();
            assert!(m.mul(&m).is_identity(), "{name:?} must be an involution");
        }
        assert!(!GateMatrix::from_entries(1, vec![CycloNum::ONE; 4]).unwrap().is_unitary());
    }

    #[test]
    fn r_satisfies_yang_baxter() {
        let r = g1(GateName::R);
        let i = GateMatrix::identity(1);
        let ri = r.kron(&i);
        let ir = i.kron(&r);
        assert_eq!(ri.mul(&ir).mul(&ri), ir.mul(&ri).mul(&ir));
    }

    #[test]
    fn embedding_places_gates_on_the_right_qubits() {
        let x1 = gate(GateName::X, 2, &[1]).unwrap();
        assert_eq!(x1, GateMatrix::identity(1).kron(&g1(GateName::X)));
        let p0 = gate(GateName::P, 2, &[0]).unwrap();
        assert_eq!(p0, g1(GateName::P).kron(&GateMatrix::identity(1)));

        // CZ on qubits 0,1 of three flips the sign exactly where both high
        // bits are set.
        let cz01 = gate(GateName::Cz, 3, &[0, 1]).unwrap();
        let mut diag = vec![CycloNum::ONE; 8];
        diag[6] = CycloNum::from_int(-1);
        diag[7] = CycloNum::from_int(-1);
        assert_eq!(cz01, GateMatrix::diagonal(&diag));
        assert_eq!(cz01, gate(GateName::Cz, 3, &[1, 0]).unwrap());

        // Swapping the positions of the asymmetric R reverses the qubit roles.
        let r01 = gate(GateName::R, 2, &[0, 1]).unwrap();
        let r10 = gate(GateName::R, 2, &[1, 0]).unwrap();
        let t = g1(GateName::T);
        assert_eq!(r10, t.mul(&r01).mul(&t));
    }

    #[test]
    fn embedding_rejects_bad_positions() {
        assert!(matches!(gate(GateName::Cz, 3, &[1, 1]), Err(Error::BadPosition(_))));
        assert!(matches!(gate(GateName::X, 2, &[2]), Err(Error::BadPosition(_))));
        assert!(matches!(gate(GateName::X, 2, &[0, 1]), Err(Error::BadPosition(_))));
    }

    #[test]
    fn canonical_keys_and_json_round_trip() {
        for m in [g1(GateName::H), g1(GateName::R), gate(GateName::Cz, 3, &[2, 0]).unwrap()] {
            let key = m.canonical_key(false);
            assert_eq!(GateMatrix::from_canonical_key(&key).unwrap(), m);
            assert_eq!(GateMatrix::from_json(&m.to_json()).unwrap(), m);
        }
        assert_ne!(g1(GateName::H).canonical_key(false), g1(GateName::P).canonical_key(false));
    }

    #[test]
    fn projective_keys_identify_unit_multiples() {
        let id = GateMatrix::identity(2);
        for j in 0..8 {
            assert_eq!(id.mul_unit(j).canonical_key(true), id.canonical_key(true));
        }
        let minus_h = g1(GateName::H).mul_unit(4);
        assert_eq!(minus_h.canonical_key(true), g1(GateName::H).canonical_key(true));
        assert_ne!(minus_h.canonical_key(false), g1(GateName::H).canonical_key(false));
        assert_ne!(g1(GateName::H).canonical_key(true), g1(GateName::P).canonical_key(true));
    }

    #[test]
    fn json_shape_is_stable() {
        let p = g1(GateName::P);
        assert_eq!(
            p.to_json(),
            "{\"dim\":2,\"entries\":[[1,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,1,0,0]]}"
        );
    }

    fn word_strategy() -> impl Strategy<Value = GateMatrix> {
        proptest::collection::vec(0usize..3, 0..6).prop_map(|word| {
            let gens = [GateName::H, GateName::P, GateName::X];
            word.iter().fold(GateMatrix::identity(1), |acc, &i| acc.mul(&gens[i].base_matrix()))
        })
    }

    proptest! {
        #[test]
        fn kron_respects_products(a in word_strategy(), b in word_strategy(),
                                  c in word_strategy(), d in word_strategy()) {
            prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
            prop_assert_eq!(a.kron(&b).dagger(), a.dagger().kron(&b.dagger()));
        }

        #[test]
        fn kron_is_associative(a in word_strategy(), b in word_strategy(), c in word_strategy()) {
            prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
        }

        #[test]
        fn dagger_reverses_products(a in word_strategy(), b in word_strategy()) {
            prop_assert_eq!(a.mul(&b).dagger(), b.dagger().mul(&a.dagger()));
            prop_assert!(a.is_unitary());
        }
    }
}
