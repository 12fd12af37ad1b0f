//! Conjugation action tables of Clifford matrices and their GF(2) shadow.
//!
//! A Clifford matrix M is pinned down, up to a scalar, by the images
//! M X_q M^dagger and M Z_q M^dagger. The table of those images composes
//! like the matrices themselves, drops to a symplectic bit matrix when
//! signs are forgotten, and packs into a 128-bit key. That key is what
//! makes groups of millions of elements enumerable without ever holding
//! millions of cyclotomic matrices.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::binmat::{BinMatrix, GfSpan};
use crate::error::{Error, Result};
use crate::gate::GateMatrix;
use crate::group::{closure, closure_with_witnesses, from_elements, FiniteGroup, GroupElement};
use crate::pauli::{conjugate_pauli, PauliElement};

/// Table keys pack n plus 2n images of (sign, x, z) into 128 bits.
pub const MAX_QUBITS: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
struct SignedImage {
    sign: bool,
    x: u8,
    z: u8,
}

/// Images of X_0..X_{n-1}, Z_0..Z_{n-1} under conjugation, signs kept.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CliffordActionTable {
    n: u8,
    imgs: [SignedImage; 2 * MAX_QUBITS],
}

impl CliffordActionTable {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_QUBITS, "unsupported qubit count {n}");
        let mut imgs = [SignedImage::default(); 2 * MAX_QUBITS];
        for q in 0..n {
            imgs[q] = SignedImage { sign: false, x: 1 << q, z: 0 };
            imgs[n + q] = SignedImage { sign: false, x: 0, z: 1 << q };
        }
        Self { n: n as u8, imgs }
    }

    pub fn n_qubits(&self) -> usize {
        self.n as usize
    }

    /// Image of the idx-th generator (X_idx for idx < n, else Z_{idx-n}).
    pub fn image(&self, idx: usize) -> PauliElement {
        let n = self.n_qubits();
        assert!(idx < 2 * n);
        let img = self.imgs[idx];
        PauliElement::hermitian(n, img.x, img.z, img.sign).expect("image bits fit")
    }

    /// Pushes an arbitrary Pauli element through the table.
    pub fn apply(&self, p: &PauliElement) -> PauliElement {
        let n = self.n_qubits();
        assert_eq!(p.n_qubits(), n, "qubit count mismatch");
        let mut acc = PauliElement::identity(n).mul_i(p.phase());
        for q in 0..n {
            if p.x_bits() >> q & 1 == 1 {
                acc = acc.mul(&self.image(q));
            }
        }
        for q in 0..n {
            if p.z_bits() >> q & 1 == 1 {
                acc = acc.mul(&self.image(n + q));
            }
        }
        acc
    }

    /// Table of the matrix product: self applied after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n_qubits();
        assert_eq!(other.n_qubits(), n, "qubit count mismatch");
        let mut imgs = [SignedImage::default(); 2 * MAX_QUBITS];
        for idx in 0..2 * n {
            let q = self.apply(&other.image(idx));
            let sign = q
                .hermitian_sign()
                .expect("composite of valid tables keeps Hermitian images");
            imgs[idx] = SignedImage { sign, x: q.x_bits(), z: q.z_bits() };
        }
        Self { n: self.n, imgs }
    }

    /// Bit part as a 2n x 2n matrix; column j holds the image of
    /// generator j, x components in rows 0..n and z components below.
    pub fn sp_bits(&self) -> BinMatrix {
        let n = self.n_qubits();
        let mut rows = vec![0u8; 2 * n];
        for j in 0..2 * n {
            let img = self.imgs[j];
            for r in 0..n {
                if img.x >> r & 1 == 1 {
                    rows[r] |= 1 << j;
                }
                if img.z >> r & 1 == 1 {
                    rows[n + r] |= 1 << j;
                }
            }
        }
        BinMatrix::new(2 * n, &rows).expect("table bits fit the matrix")
    }

    pub fn inverse(&self) -> Self {
        let n = self.n_qubits();
        let inv_bits = self
            .sp_bits()
            .try_inverse()
            .expect("action table bit part is invertible");
        let mut imgs = [SignedImage::default(); 2 * MAX_QUBITS];
        for idx in 0..2 * n {
            let mut x = 0u8;
            let mut z = 0u8;
            for r in 0..n {
                if inv_bits.entry(r, idx) {
                    x |= 1 << r;
                }
                if inv_bits.entry(n + r, idx) {
                    z |= 1 << r;
                }
            }
            let candidate = PauliElement::hermitian(n, x, z, false).expect("bits fit");
            let forward = self.apply(&candidate);
            let target = Self::identity(n).image(idx);
            let sign = if forward == target {
                false
            } else if forward == target.mul_i(2) {
                true
            } else {
                panic!("table is not invertible over the Pauli group");
            };
            imgs[idx] = SignedImage { sign, x, z };
        }
        Self { n: self.n, imgs }
    }

    /// Signs of the 2n images as a bit vector.
    pub fn sign_vector(&self) -> u16 {
        let mut v = 0u16;
        for idx in 0..2 * self.n_qubits() {
            if self.imgs[idx].sign {
                v |= 1 << idx;
            }
        }
        v
    }

    pub fn key_u128(&self) -> u128 {
        let n = self.n_qubits();
        let mut k = n as u128;
        let mut shift = 4;
        for idx in 0..2 * n {
            let img = self.imgs[idx];
            let packed =
                (img.sign as u128) | (img.x as u128) << 1 | (img.z as u128) << (1 + n);
            k |= packed << shift;
            shift += 1 + 2 * n;
        }
        k
    }

    /// JSON as 2n triples `[phase, x_bits, z_bits]` with phase 0 or 2.
    pub fn to_json(&self) -> String {
        let triples: Vec<[u8; 3]> = (0..2 * self.n_qubits())
            .map(|idx| {
                let img = self.imgs[idx];
                [if img.sign { 2 } else { 0 }, img.x, img.z]
            })
            .collect();
        serde_json::to_string(&triples).expect("triples serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let triples: Vec<[u8; 3]> = serde_json::from_str(s)?;
        Self::from_triples(&triples)
    }

    /// Builds a table from 2n image triples `[phase, x_bits, z_bits]`,
    /// phase 0 or 2, validating that the bit part is symplectic.
    pub fn from_triples(triples: &[[u8; 3]]) -> Result<Self> {
        if triples.len() % 2 != 0 || triples.is_empty() {
            return Err(Error::Malformed("expected 2n image triples".into()));
        }
        let n = triples.len() / 2;
        if n > MAX_QUBITS {
            return Err(Error::RankTooLarge(n, MAX_QUBITS));
        }
        let mask = (1u16 << n) - 1;
        let mut imgs = [SignedImage::default(); 2 * MAX_QUBITS];
        for (idx, t) in triples.iter().enumerate() {
            let sign = match t[0] {
                0 => false,
                2 => true,
                other => {
                    return Err(Error::Malformed(format!("image phase {other} is not 0 or 2")))
                }
            };
            if u16::from(t[1]) & !mask != 0 || u16::from(t[2]) & !mask != 0 {
                return Err(Error::Malformed("image bits beyond qubit count".into()));
            }
            imgs[idx] = SignedImage { sign, x: t[1], z: t[2] };
        }
        let table = Self { n: n as u8, imgs };
        symplectic_of(&table)?;
        Ok(table)
    }
}

impl GroupElement for CliffordActionTable {
    type Key = u128;

    fn key(&self) -> u128 {
        self.key_u128()
    }

    fn mul(&self, other: &Self) -> Self {
        self.compose(other)
    }

    fn inverse(&self) -> Self {
        CliffordActionTable::inverse(self)
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.n_qubits())
    }
}

impl std::fmt::Debug for CliffordActionTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.n_qubits();
        write!(f, "Table{{")?;
        for idx in 0..2 * n {
            if idx > 0 {
                write!(f, ", ")?;
            }
            let gen = if idx < n { format!("X{idx}") } else { format!("Z{}", idx - n) };
            write!(f, "{gen}->{:?}", self.image(idx))?;
        }
        write!(f, "}}")
    }
}

/// Conjugates every Pauli generator through `m`; errors witness that `m`
/// is not Clifford.
pub fn action_table(m: &GateMatrix) -> Result<CliffordActionTable> {
    let n = m.n_qubits();
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::RankTooLarge(n, MAX_QUBITS));
    }
    if !m.is_unitary() {
        return Err(Error::Malformed("conjugation requires a unitary matrix".into()));
    }
    let mut imgs = [SignedImage::default(); 2 * MAX_QUBITS];
    for q in 0..n {
        for (slot, gen) in [(q, PauliElement::x_gen(n, q)), (n + q, PauliElement::z_gen(n, q))] {
            let img = conjugate_pauli(m, &gen)?;
            let sign = img.hermitian_sign().ok_or(Error::NotInPauliGroup)?;
            imgs[slot] = SignedImage { sign, x: img.x_bits(), z: img.z_bits() };
        }
    }
    let table = CliffordActionTable { n: n as u8, imgs };
    symplectic_of(&table)?;
    Ok(table)
}

/// 2n x 2n bit matrix preserving the standard symplectic form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix(BinMatrix);

impl SymplecticMatrix {
    /// Standard form J: pairs (x_i, z_i) across the half-dimension split.
    pub fn standard_form(half: usize) -> BinMatrix {
        let mut rows = vec![0u8; 2 * half];
        for i in 0..half {
            rows[i] = 1 << (half + i);
            rows[half + i] = 1 << i;
        }
        BinMatrix::new(2 * half, &rows).expect("form fits")
    }

    pub fn new(m: BinMatrix) -> Result<Self> {
        let dim = m.dim();
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::FormViolation);
        }
        let j = Self::standard_form(dim / 2);
        if m.transpose().mul(&j).mul(&m) != j {
            return Err(Error::FormViolation);
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &BinMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }
}

impl GroupElement for SymplecticMatrix {
    type Key = u128;

    fn key(&self) -> u128 {
        self.0.key_u128()
    }

    fn mul(&self, other: &Self) -> Self {
        // Products of isometries are isometries; no recheck needed.
        Self(self.0.mul(&other.0))
    }

    fn inverse(&self) -> Self {
        Self(self.0.try_inverse().expect("symplectic matrices are invertible"))
    }

    fn identity_like(&self) -> Self {
        Self(BinMatrix::identity(self.0.dim()))
    }
}

impl std::fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sp{:?}", self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct SpJson {
    dim: usize,
    rows: Vec<String>,
}

impl Serialize for SymplecticMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = (0..self.dim()).map(|i| format!("{:02x}", self.0.row(i))).collect();
        SpJson { dim: self.dim(), rows }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SymplecticMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SpJson::deserialize(de)?;
        let mut rows = Vec::with_capacity(raw.dim);
        for r in &raw.rows {
            rows.push(u8::from_str_radix(r, 16).map_err(D::Error::custom)?);
        }
        let m = BinMatrix::new(raw.dim, &rows).map_err(D::Error::custom)?;
        SymplecticMatrix::new(m).map_err(D::Error::custom)
    }
}

/// Drops the signs of a table, checking the symplectic invariant.
pub fn symplectic_of(t: &CliffordActionTable) -> Result<SymplecticMatrix> {
    SymplecticMatrix::new(t.sp_bits())
}

/// |Sp(2n, 2)| by the classical formula 2^(n^2) * prod (4^i - 1).
pub fn symplectic_group_order(n: u32) -> u64 {
    let mut order = 1u64 << (n * n);
    for i in 1..=n {
        order *= (1u64 << (2 * i)) - 1;
    }
    order
}

/// Canonical key of a table modulo Pauli-inner sign flips.
///
/// The sign flips attainable by multiplying with Pauli elements form a
/// fixed linear code; the sign vector is reduced to its canonical coset
/// representative and an optional phase-parity bit is appended.
pub fn coset_key(t: &CliffordActionTable, phase_bit: Option<bool>) -> u128 {
    let n = t.n_qubits();
    let mut code = GfSpan::new();
    let identity = CliffordActionTable::identity(n);
    for p_idx in 0..2 * n {
        let p = identity.image(p_idx);
        let mut v = 0u16;
        for g_idx in 0..2 * n {
            if !p.commutes_with(&identity.image(g_idx)) {
                v |= 1 << g_idx;
            }
        }
        code.insert(v);
    }
    let rem = code.reduce(t.sign_vector());
    let mut k = t.sp_bits().key_u128();
    k |= (rem as u128) << 80;
    if let Some(b) = phase_bit {
        k |= 1u128 << 100;
        k |= (b as u128) << 101;
    }
    k
}

/// Result of the image-times-kernel order computation.
pub struct Factorization {
    pub order: u64,
    pub image_order: u64,
    pub kernel_order: u64,
    pub image: FiniteGroup<SymplecticMatrix>,
    pub kernel: FiniteGroup<GateMatrix>,
}

/// True when `m` is `ω^j·I` for some eighth root of unity `ω^j`.
pub fn is_scalar_matrix(m: &GateMatrix) -> bool {
    m.entry(0, 0)
        .unit_root_exponent()
        .is_some_and(|e| *m == GateMatrix::identity(m.n_qubits()).mul_unit(e))
}

fn transversal_matrix(
    cache: &mut [Option<GateMatrix>],
    witnesses: &[(u32, u16)],
    gens: &[GateMatrix],
    u: usize,
) -> GateMatrix {
    if let Some(m) = &cache[u] {
        return m.clone();
    }
    let mut chain = Vec::new();
    let mut v = u;
    while cache[v].is_none() {
        let (parent, letter) = witnesses[v];
        chain.push((v, letter));
        v = parent as usize;
    }
    let mut m = cache[v].clone().expect("walk stopped at a cached node");
    for &(node, letter) in chain.iter().rev() {
        m = m.mul(&gens[letter as usize]);
        cache[node] = Some(m.clone());
    }
    m
}

/// Computes |<gens>| as image order times kernel order along the
/// symplectic quotient.
///
/// The image is closed directly over bit matrices. Kernel generators come
/// from Schreier's lemma; their sign tables span the kernel's table group
/// exactly, which caps the kernel at table-span times the eight scalar
/// phases. Matrix-level Schreier generators are folded in until that cap
/// is reached or every generator has been processed, so the kernel order
/// is exact on both paths.
pub fn order_via_factorization(gens: &[GateMatrix], budget: usize) -> Result<Factorization> {
    if gens.is_empty() {
        return Err(Error::Malformed("no generators supplied".into()));
    }
    let n = gens[0].n_qubits();
    let tables: Vec<CliffordActionTable> = gens.iter().map(action_table).collect::<Result<_>>()?;
    let sp_gens: Vec<SymplecticMatrix> =
        tables.iter().map(symplectic_of).collect::<Result<_>>()?;

    let (image, witnesses) = closure_with_witnesses(&sp_gens, budget)?;
    let order = image.order() as usize;

    // Tables of one transversal element per image point, in ordinal order.
    let mut point_tables = vec![CliffordActionTable::identity(n); order];
    for i in 0..order {
        let (parent, letter) = witnesses[i];
        if letter != u16::MAX {
            point_tables[i] = point_tables[parent as usize].compose(&tables[letter as usize]);
        }
    }

    let gen_ords: Vec<u32> = sp_gens
        .iter()
        .map(|s| image.ord_of_key(&s.key()).expect("generator lies in its closure"))
        .collect();

    // Sign vectors of all Schreier generators span the kernel's table group.
    let mut ktab = GfSpan::new();
    'span: for u in 0..order {
        for (li, table) in tables.iter().enumerate() {
            let v = image.mul_ord(u as u32, gen_ords[li]) as usize;
            let schreier = point_tables[u].compose(table).compose(&point_tables[v].inverse());
            debug_assert!(schreier.sp_bits().is_identity());
            ktab.insert(schreier.sign_vector());
            if ktab.dim() == 2 * n {
                break 'span;
            }
        }
    }

    let cap = (ktab.size() * 8) as usize;
    let mut trans_cache: Vec<Option<GateMatrix>> = vec![None; order];
    trans_cache[0] = Some(GateMatrix::identity(n));
    let mut kernel_gens: Vec<GateMatrix> = Vec::new();
    let mut kernel = from_elements(vec![GateMatrix::identity(n)])?;
    'kernel: for u in 0..order {
        for (li, gen) in gens.iter().enumerate() {
            let v = image.mul_ord(u as u32, gen_ords[li]) as usize;
            let tu = transversal_matrix(&mut trans_cache, &witnesses, gens, u);
            let tv = transversal_matrix(&mut trans_cache, &witnesses, gens, v);
            let schreier = tu.mul(gen).mul(&tv.dagger());
            if kernel.ord_of_key(&schreier.key()).is_some() {
                continue;
            }
            kernel_gens.push(schreier);
            kernel = closure(&kernel_gens, cap)
                .map_err(|_| Error::Malformed("kernel exceeded its table-span bound".into()))?;
            if kernel.order() as usize == cap {
                break 'kernel;
            }
        }
    }

    let scalar_count = kernel.elements().iter().filter(|m| is_scalar_matrix(m)).count() as u64;
    assert_eq!(
        kernel.order(),
        ktab.size() * scalar_count,
        "kernel order must factor as table span times scalars"
    );

    Ok(Factorization {
        order: image.order() * kernel.order(),
        image_order: image.order(),
        kernel_order: kernel.order(),
        image,
        kernel,
    })
}

/// Counts of Pauli-coset keys over a closure, with or without the
/// omega-parity refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CosetEnumeration {
    pub plain_count: u64,
    pub keyed_count: u64,
    pub both_parities_seen: bool,
}

fn omega_parity(anchor: &GateMatrix, m: &GateMatrix) -> Result<bool> {
    let d = anchor.dagger().mul(m);
    let dim = d.dim();
    let (r, c) = (0..dim * dim)
        .map(|i| (i / dim, i % dim))
        .find(|&(r, c)| !d.entry(r, c).is_zero())
        .ok_or_else(|| Error::Malformed("zero matrix in coset comparison".into()))?;
    let e = d
        .entry(r, c)
        .unit_root_exponent()
        .ok_or_else(|| Error::Malformed("coset difference is not a phased Pauli".into()))?;
    // The difference must be w^e times a Pauli matrix for the parity to
    // mean anything; verify rather than trust the first entry.
    let dephased = d.mul_unit((8 - e) % 8);
    PauliElement::from_matrix(&dephased)
        .map_err(|_| Error::Malformed("coset difference is not a phased Pauli".into()))?;
    Ok(e % 2 == 1)
}

/// Breadth-first enumeration of coset keys over the group generated by
/// `gens`. With `with_parity`, matrices are materialized transiently and
/// each symplectic class keeps its first-seen matrix as the anchor that
/// defines phase parity. This is the one place matrices back the
/// quotient arithmetic.
pub fn enumerate_pauli_cosets(
    gens: &[GateMatrix],
    with_parity: bool,
    budget: usize,
) -> Result<CosetEnumeration> {
    if gens.is_empty() {
        return Err(Error::Malformed("no generators supplied".into()));
    }
    let n = gens[0].n_qubits();
    let tables: Vec<CliffordActionTable> = gens.iter().map(action_table).collect::<Result<_>>()?;

    if !with_parity {
        let mut seen: HashSet<u128> = HashSet::new();
        let identity = CliffordActionTable::identity(n);
        seen.insert(coset_key(&identity, None));
        let mut frontier = vec![identity];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for t in &frontier {
                for g in &tables {
                    let p = t.compose(g);
                    if seen.insert(coset_key(&p, None)) {
                        if seen.len() > budget {
                            return Err(Error::BudgetExceeded { found: seen.len(), limit: budget });
                        }
                        next.push(p);
                    }
                }
            }
            next.sort_unstable_by_key(|t| coset_key(t, None));
            frontier = next;
        }
        let count = seen.len() as u64;
        return Ok(CosetEnumeration {
            plain_count: count,
            keyed_count: count,
            both_parities_seen: false,
        });
    }

    let mut anchors: HashMap<u128, GateMatrix> = HashMap::new();
    let mut seen: HashSet<u128> = HashSet::new();
    let id_mat = GateMatrix::identity(n);
    let id_tab = CliffordActionTable::identity(n);
    anchors.insert(coset_key(&id_tab, None), id_mat.clone());
    seen.insert(coset_key(&id_tab, Some(false)));
    let mut frontier = vec![(id_mat, id_tab)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (m, t) in &frontier {
            for (g, gt) in gens.iter().zip(&tables) {
                let m2 = m.mul(g);
                let t2 = t.compose(gt);
                let plain = coset_key(&t2, None);
                let parity = match anchors.get(&plain) {
                    Some(anchor) => omega_parity(anchor, &m2)?,
                    None => {
                        anchors.insert(plain, m2.clone());
                        false
                    }
                };
                if seen.insert(coset_key(&t2, Some(parity))) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded { found: seen.len(), limit: budget });
                    }
                    next.push((m2, t2));
                }
            }
        }
        next.sort_unstable_by_key(|(_, t)| coset_key(t, None));
        frontier = next;
    }
    let keyed = seen.len() as u64;
    let plain = anchors.len() as u64;
    Ok(CosetEnumeration {
        plain_count: plain,
        keyed_count: keyed,
        both_parities_seen: keyed > plain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNum;
    use crate::gate::{gate, GateName};

    fn single(name: GateName) -> GateMatrix {
        gate(name, 1, &[0]).unwrap()
    }

    fn two(name: GateName, a: usize, b: usize) -> GateMatrix {
        gate(name, 2, &[a, b]).unwrap()
    }

    #[test]
    fn identity_and_scalars_share_the_identity_table() {
        let id2 = GateMatrix::identity(2);
        let t = action_table(&id2).unwrap();
        assert_eq!(t, CliffordActionTable::identity(2));
        let omega_id = id2.mul_unit(1);
        assert_eq!(action_table(&omega_id).unwrap(), t);
    }

    #[test]
    fn hadamard_swaps_x_and_z() {
        let t = action_table(&single(GateName::H)).unwrap();
        assert_eq!(t.image(0), PauliElement::z_gen(1, 0));
        assert_eq!(t.image(1), PauliElement::x_gen(1, 0));
        let h0 = gate(GateName::H, 2, &[0]).unwrap();
        let h1 = gate(GateName::H, 2, &[1]).unwrap();
        let hh = action_table(&h0.mul(&h1)).unwrap();
        // H on both wires: every X_i <-> Z_i with plus signs.
        for q in 0..2 {
            assert_eq!(hh.image(q), PauliElement::z_gen(2, q));
            assert_eq!(hh.image(2 + q), PauliElement::x_gen(2, q));
        }
    }

    #[test]
    fn pauli_conjugation_only_flips_signs() {
        let x0 = PauliElement::x_gen(2, 0).to_matrix();
        let t = action_table(&x0).unwrap();
        assert!(t.sp_bits().is_identity());
        // Conjugation by X_0 negates Z_0 and nothing else.
        assert_eq!(t.sign_vector(), 1 << 2);
    }

    #[test]
    fn composition_matches_matrix_products() {
        let mats = [
            gate(GateName::H, 2, &[0]).unwrap(),
            gate(GateName::P, 2, &[1]).unwrap(),
            two(GateName::Cz, 0, 1),
            two(GateName::R, 0, 1),
        ];
        for a in &mats {
            for b in &mats {
                let ab = a.mul(b);
                assert_eq!(
                    action_table(&ab).unwrap(),
                    action_table(a).unwrap().compose(&action_table(b).unwrap())
                );
            }
        }
    }

    #[test]
    fn inverse_matches_dagger() {
        for m in [
            gate(GateName::H, 2, &[0]).unwrap(),
            gate(GateName::P, 2, &[0]).unwrap(),
            two(GateName::Cz, 0, 1),
            two(GateName::R, 1, 0),
        ] {
            let t = action_table(&m).unwrap();
            assert_eq!(t.inverse(), action_table(&m.dagger()).unwrap());
            assert_eq!(t.compose(&t.inverse()), CliffordActionTable::identity(2));
        }
    }

    #[test]
    fn swap_table_drops_to_the_coordinate_swap() {
        let t = action_table(&two(GateName::T, 0, 1)).unwrap();
        let sp = symplectic_of(&t).unwrap();
        // (x0,z0) <-> (x1,z1): permutation matrix in the x|z block layout.
        let expect = BinMatrix::new(4, &[0b0010, 0b0001, 0b1000, 0b0100]).unwrap();
        assert_eq!(*sp.matrix(), expect);
        assert!(symplectic_of(&action_table(&GateMatrix::identity(2)).unwrap())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn symplectic_form_is_enforced() {
        // A projection-like bit matrix violates the form.
        let bad = BinMatrix::new(2, &[0b01, 0b01]).unwrap();
        assert!(matches!(SymplecticMatrix::new(bad), Err(Error::FormViolation)));
        let j = SymplecticMatrix::standard_form(1);
        assert!(SymplecticMatrix::new(j).is_ok());
    }

    #[test]
    fn symplectic_of_is_a_homomorphism_on_sampled_words() {
        let gens = [
            gate(GateName::H, 2, &[0]).unwrap(),
            gate(GateName::P, 2, &[1]).unwrap(),
            two(GateName::Cz, 0, 1),
        ];
        let words: Vec<GateMatrix> = (0..64u32)
            .map(|seed| {
                let mut m = GateMatrix::identity(2);
                let mut s = seed;
                for _ in 0..3 {
                    m = m.mul(&gens[(s % 3) as usize]);
                    s /= 3;
                }
                m
            })
            .collect();
        for a in words.iter().take(8) {
            for b in words.iter().take(8) {
                let lhs = symplectic_of(&action_table(&a.mul(b)).unwrap()).unwrap();
                let ta = symplectic_of(&action_table(a).unwrap()).unwrap();
                let tb = symplectic_of(&action_table(b).unwrap()).unwrap();
                assert_eq!(lhs, ta.mul(&tb));
            }
        }
    }

    #[test]
    fn coset_keys_ignore_pauli_factors() {
        let id = action_table(&GateMatrix::identity(3)).unwrap();
        let x = action_table(&PauliElement::x_gen(3, 0).to_matrix()).unwrap();
        assert_eq!(coset_key(&id, None), coset_key(&x, None));
        let h0 = action_table(&gate(GateName::H, 3, &[0]).unwrap()).unwrap();
        let p0 = action_table(&gate(GateName::P, 3, &[0]).unwrap()).unwrap();
        assert_ne!(coset_key(&h0, None), coset_key(&p0, None));
        assert_ne!(coset_key(&id, Some(false)), coset_key(&id, None));
        assert_ne!(coset_key(&id, Some(true)), coset_key(&id, Some(false)));
    }

    #[test]
    fn single_qubit_clifford_factorizes() {
        let gens = [single(GateName::H), single(GateName::P)];
        let f = order_via_factorization(&gens, 10_000).unwrap();
        assert_eq!(f.image_order, symplectic_group_order(1));
        assert_eq!(f.kernel_order, 32);
        assert_eq!(f.order, 192);
        // Kernel is exactly the phased Pauli group with the eighth root.
        let expected = closure(
            &[
                PauliElement::x_gen(1, 0).to_matrix(),
                PauliElement::z_gen(1, 0).to_matrix(),
                GateMatrix::identity(1).mul_unit(1),
            ],
            64,
        )
        .unwrap();
        assert_eq!(f.kernel.order(), expected.order());
        for m in expected.elements() {
            assert!(f.kernel.ord_of_key(&m.key()).is_some());
        }
    }

    #[test]
    fn factorization_respects_budget() {
        let gens = [single(GateName::H), single(GateName::P)];
        assert!(matches!(
            order_via_factorization(&gens, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn coset_enumeration_counts_the_single_qubit_quotients() {
        let gens = [single(GateName::H), single(GateName::P)];
        let plain = enumerate_pauli_cosets(&gens, false, 1000).unwrap();
        // sp(C_1) = Sp(2,2) has order 6.
        assert_eq!(plain.plain_count, 6);
        let keyed = enumerate_pauli_cosets(&gens, true, 1000).unwrap();
        assert_eq!(keyed.plain_count, 6);
        // C_1 contains wI, so every class splits into two parities:
        // |C_1 / P_1| = 192 / 16 = 12.
        assert_eq!(keyed.keyed_count, 12);
        assert!(keyed.both_parities_seen);
    }

    #[test]
    fn action_table_rejects_non_clifford_input() {
        let t_gate = GateMatrix::diagonal(&[CycloNum::ONE, CycloNum::root_of_unity(1)]);
        assert!(matches!(action_table(&t_gate), Err(Error::NotInPauliGroup)));
    }

    #[test]
    fn table_json_round_trips() {
        let t = action_table(&two(GateName::R, 0, 1)).unwrap();
        let json = t.to_json();
        assert_eq!(CliffordActionTable::from_json(&json).unwrap(), t);
        assert!(CliffordActionTable::from_json("[[1,0,0]]").is_err());
        // Sign-only corruption that breaks no form still parses; bit
        // corruption that breaks the form must not.
        assert!(CliffordActionTable::from_json("[[0,1,0],[0,1,0]]").is_err());
    }

    #[test]
    fn symplectic_json_round_trips() {
        let t = action_table(&two(GateName::Cz, 0, 1)).unwrap();
        let sp = symplectic_of(&t).unwrap();
        let json = serde_json::to_string(&sp).unwrap();
        let back: SymplecticMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sp);
        let bad = r#"{"dim":2,"rows":["01","01"]}"#;
        assert!(serde_json::from_str::<SymplecticMatrix>(bad).is_err());
    }

    #[test]
    fn classical_orders() {
        assert_eq!(symplectic_group_order(1), 6);
        assert_eq!(symplectic_group_order(2), 720);
        assert_eq!(symplectic_group_order(3), 1_451_520);
    }
}
