//! Binary on-disk cache of enumerated groups.
//!
//! A cache file stores one group: a fixed header, the generator ordinals,
//! then every element in its enumeration order. Reloading preserves that
//! order exactly, so ordinals, witnesses and reports built on top of a
//! reloaded group match the originals byte for byte. Serialization is
//! deterministic, which makes store-load-store a fixed point; the `check`
//! pass exploits that by re-encoding each file and comparing bytes.
//!
//! Writes go to a temporary sibling file first and are committed with an
//! atomic rename, so a crashed writer leaves either the old file or none.

use std::fs;
use std::path::{Path, PathBuf};

use crate::binmat::BinMatrix;
use crate::clifford::{CliffordActionTable, SymplecticMatrix};
use crate::error::{Error, Result};
use crate::gate::GateMatrix;
use crate::group::{from_ordered_elements, FiniteGroup, GroupElement};
use crate::perm::Permutation;

const MAGIC: &[u8; 4] = b"CBNV";
const VERSION: u16 = 1;

/// Element kinds that know how to write and read themselves in the cache
/// record format. `KIND` tags the file header so a reader cannot silently
/// decode a file as the wrong element type.
pub trait Cacheable: GroupElement + Sized {
    const KIND: u8;

    fn write_bytes(&self, out: &mut Vec<u8>);
    fn read_bytes(input: &mut &[u8]) -> Result<Self>;
}

fn corrupt(detail: impl Into<String>) -> Error {
    Error::CorruptCache(detail.into())
}

fn take<'a>(input: &mut &'a [u8], n: usize) -> Result<&'a [u8]> {
    if input.len() < n {
        return Err(corrupt(format!("truncated: wanted {n} bytes, {} left", input.len())));
    }
    let (head, tail) = input.split_at(n);
    *input = tail;
    Ok(head)
}

fn take_u8(input: &mut &[u8]) -> Result<u8> {
    Ok(take(input, 1)?[0])
}

fn take_u16(input: &mut &[u8]) -> Result<u16> {
    Ok(u16::from_le_bytes(take(input, 2)?.try_into().unwrap()))
}

fn take_u32(input: &mut &[u8]) -> Result<u32> {
    Ok(u32::from_le_bytes(take(input, 4)?.try_into().unwrap()))
}

fn take_u64(input: &mut &[u8]) -> Result<u64> {
    Ok(u64::from_le_bytes(take(input, 8)?.try_into().unwrap()))
}

impl Cacheable for GateMatrix {
    const KIND: u8 = 1;

    fn write_bytes(&self, out: &mut Vec<u8>) {
        let key = self.canonical_key(false);
        out.extend_from_slice(&(key.len() as u32).to_le_bytes());
        out.extend_from_slice(&key);
    }

    fn read_bytes(input: &mut &[u8]) -> Result<Self> {
        let len = take_u32(input)? as usize;
        GateMatrix::from_canonical_key(take(input, len)?)
            .map_err(|e| corrupt(format!("bad matrix record: {e}")))
    }
}

impl Cacheable for Permutation {
    const KIND: u8 = 2;

    fn write_bytes(&self, out: &mut Vec<u8>) {
        out.push(self.points() as u8);
        out.extend_from_slice(self.images());
    }

    fn read_bytes(input: &mut &[u8]) -> Result<Self> {
        let n = take_u8(input)? as usize;
        Permutation::from_images(take(input, n)?.to_vec())
            .map_err(|e| corrupt(format!("bad permutation record: {e}")))
    }
}

impl Cacheable for BinMatrix {
    const KIND: u8 = 3;

    fn write_bytes(&self, out: &mut Vec<u8>) {
        out.push(self.dim() as u8);
        for i in 0..self.dim() {
            out.push(self.row(i));
        }
    }

    fn read_bytes(input: &mut &[u8]) -> Result<Self> {
        let dim = take_u8(input)? as usize;
        if dim == 0 || dim > 8 {
            return Err(corrupt(format!("bit matrix dimension {dim} out of range")));
        }
        BinMatrix::new(dim, take(input, dim)?)
            .map_err(|e| corrupt(format!("bad bit matrix record: {e}")))
    }
}

impl Cacheable for CliffordActionTable {
    const KIND: u8 = 4;

    fn write_bytes(&self, out: &mut Vec<u8>) {
        let n = self.n_qubits();
        out.push(n as u8);
        for idx in 0..2 * n {
            let img = self.image(idx);
            let sign = img.hermitian_sign().expect("table images are hermitian Paulis");
            out.push(if sign { 2 } else { 0 });
            out.push(img.x_bits());
            out.push(img.z_bits());
        }
    }

    fn read_bytes(input: &mut &[u8]) -> Result<Self> {
        let n = take_u8(input)? as usize;
        if n == 0 || n > crate::clifford::MAX_QUBITS {
            return Err(corrupt(format!("table qubit count {n} out of range")));
        }
        let mut triples = Vec::with_capacity(2 * n);
        for _ in 0..2 * n {
            let t = take(input, 3)?;
            triples.push([t[0], t[1], t[2]]);
        }
        CliffordActionTable::from_triples(&triples)
            .map_err(|e| corrupt(format!("bad action table record: {e}")))
    }
}

impl Cacheable for SymplecticMatrix {
    const KIND: u8 = 5;

    fn write_bytes(&self, out: &mut Vec<u8>) {
        self.matrix().write_bytes(out);
    }

    fn read_bytes(input: &mut &[u8]) -> Result<Self> {
        SymplecticMatrix::new(BinMatrix::read_bytes(input)?)
            .map_err(|e| corrupt(format!("bad symplectic record: {e}")))
    }
}

/// Serializes a group to the cache byte format.
pub fn encode<E: Cacheable>(g: &FiniteGroup<E>) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(E::KIND);
    out.push(0);
    out.extend_from_slice(&g.order().to_le_bytes());
    out.extend_from_slice(&(g.generator_ords().len() as u32).to_le_bytes());
    for &gen in g.generator_ords() {
        out.extend_from_slice(&gen.to_le_bytes());
    }
    for e in g.elements() {
        e.write_bytes(&mut out);
    }
    out
}

/// Decodes a group from the cache byte format, kind-checked against `E`.
pub fn decode<E: Cacheable>(bytes: &[u8]) -> Result<FiniteGroup<E>> {
    let input = &mut &bytes[..];
    let (kind, count, gens) = decode_header(input)?;
    if kind != E::KIND {
        return Err(corrupt(format!("kind {kind}, expected {}", E::KIND)));
    }
    let mut elements = Vec::with_capacity(count);
    for _ in 0..count {
        elements.push(E::read_bytes(input)?);
    }
    if !input.is_empty() {
        return Err(corrupt(format!("{} trailing bytes", input.len())));
    }
    from_ordered_elements(elements, gens).map_err(|e| corrupt(format!("inconsistent group: {e}")))
}

/// Reads and validates the fixed header, returning kind, element count and
/// generator ordinals with the cursor left at the first element record.
fn decode_header(input: &mut &[u8]) -> Result<(u8, usize, Vec<u32>)> {
    let magic = take(input, 4)?;
    if magic != MAGIC {
        return Err(corrupt(format!("magic {magic:02x?}, expected {MAGIC:02x?}")));
    }
    let version = take_u16(input)?;
    if version != VERSION {
        return Err(corrupt(format!("version {version}, expected {VERSION}")));
    }
    let kind = take_u8(input)?;
    let reserved = take_u8(input)?;
    if reserved != 0 {
        return Err(corrupt(format!("reserved byte {reserved}, expected 0")));
    }
    let count = take_u64(input)?;
    let count = usize::try_from(count).map_err(|_| corrupt("element count overflow"))?;
    let gen_count = take_u32(input)? as usize;
    let mut gens = Vec::with_capacity(gen_count);
    for _ in 0..gen_count {
        gens.push(take_u32(input)?);
    }
    Ok((kind, count, gens))
}

/// Health summary of one cache file from [`GroupCache::check`].
#[derive(Clone, Debug, serde::Serialize)]
pub struct CacheEntryReport {
    pub name: String,
    pub kind: u8,
    pub count: u64,
    pub bytes: u64,
    pub ok: bool,
    pub detail: String,
}

/// A directory of group cache files, one `.cbnv` file per named group.
pub struct GroupCache {
    dir: PathBuf,
}

impl GroupCache {
    /// Opens (creating if needed) the cache directory.
    pub fn new(dir: impl Into<PathBuf>) -> Result<GroupCache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(GroupCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, name: &str) -> PathBuf {
        self.dir.join(format!("{name}.cbnv"))
    }

    /// Writes the group under `name`, committing with an atomic rename.
    pub fn store<E: Cacheable>(&self, name: &str, g: &FiniteGroup<E>) -> Result<()> {
        let bytes = encode(g);
        let tmp = self.dir.join(format!("{name}.{}.tmp", std::process::id()));
        fs::write(&tmp, &bytes)?;
        fs::rename(&tmp, self.path_for(name))?;
        Ok(())
    }

    /// Loads the group stored under `name`, or `Ok(None)` when absent.
    pub fn load<E: Cacheable>(&self, name: &str) -> Result<Option<FiniteGroup<E>>> {
        let path = self.path_for(name);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        decode(&bytes).map(Some).map_err(|e| match e {
            Error::CorruptCache(d) => corrupt(format!("{}: {d}", path.display())),
            other => other,
        })
    }

    /// Loads `name` if cached, otherwise builds, stores and returns it.
    pub fn load_or_build<E: Cacheable>(
        &self,
        name: &str,
        build: impl FnOnce() -> Result<FiniteGroup<E>>,
    ) -> Result<FiniteGroup<E>> {
        if let Some(g) = self.load(name)? {
            return Ok(g);
        }
        let g = build()?;
        self.store(name, &g)?;
        Ok(g)
    }

    /// Validates every `.cbnv` file in the directory.
    ///
    /// Each file must decode under its declared kind and re-encode to the
    /// identical bytes. Small groups are additionally checked for closure
    /// under multiplication; large ones get a deterministic sample of
    /// product-membership probes.
    pub fn check(&self) -> Result<Vec<CacheEntryReport>> {
        let mut names: Vec<String> = Vec::new();
        for entry in fs::read_dir(&self.dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "cbnv") {
                if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                    names.push(stem.to_string());
                }
            }
        }
        names.sort();
        let mut reports = Vec::with_capacity(names.len());
        for name in names {
            reports.push(self.check_one(&name));
        }
        Ok(reports)
    }

    fn check_one(&self, name: &str) -> CacheEntryReport {
        let path = self.path_for(name);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) => return entry_err(name, 0, 0, format!("unreadable: {e}")),
        };
        let size = bytes.len() as u64;
        let header = {
            let input = &mut &bytes[..];
            decode_header(input)
        };
        let (kind, count, _) = match header {
            Ok(h) => h,
            Err(e) => return entry_err(name, 0, size, e.to_string()),
        };
        let verdict = match kind {
            GateMatrix::KIND => roundtrip::<GateMatrix>(&bytes),
            Permutation::KIND => roundtrip::<Permutation>(&bytes),
            BinMatrix::KIND => roundtrip::<BinMatrix>(&bytes),
            CliffordActionTable::KIND => roundtrip::<CliffordActionTable>(&bytes),
            SymplecticMatrix::KIND => roundtrip::<SymplecticMatrix>(&bytes),
            other => Err(corrupt(format!("unknown kind {other}"))),
        };
        match verdict {
            Ok(detail) => CacheEntryReport {
                name: name.to_string(),
                kind,
                count: count as u64,
                bytes: size,
                ok: true,
                detail,
            },
            Err(e) => entry_err(name, kind, size, e.to_string()),
        }
    }
}

fn entry_err(name: &str, kind: u8, bytes: u64, detail: String) -> CacheEntryReport {
    CacheEntryReport { name: name.to_string(), kind, count: 0, bytes, ok: false, detail }
}

/// Full closure check below this order; sampled probes above it.
const FULL_CHECK_LIMIT: u64 = 4096;
const SAMPLED_PROBES: u64 = 1000;

fn roundtrip<E: Cacheable>(bytes: &[u8]) -> Result<String> {
    let g: FiniteGroup<E> = decode(bytes)?;
    if encode(&g) != bytes {
        return Err(corrupt("re-encoding differs from file bytes"));
    }
    if g.order() <= FULL_CHECK_LIMIT {
        if !g.verify_closed() {
            return Err(corrupt("element set is not closed under multiplication"));
        }
        Ok(format!("{} elements, closure verified", g.order()))
    } else {
        // Deterministic product probes: a fixed stride walk of element pairs.
        let n = g.order();
        let stride = (n / SAMPLED_PROBES).max(1);
        let mut a = 1u64;
        let mut b = n / 2;
        for _ in 0..SAMPLED_PROBES {
            let x = g.element((a % n) as u32);
            let y = g.element((b % n) as u32);
            let prod = x.mul(y);
            if g.ord_of_key(&prod.key()).is_none() {
                return Err(corrupt("sampled product fell outside the element set"));
            }
            a += stride;
            b += stride.wrapping_mul(3) + 1;
        }
        Ok(format!("{} elements, {} product probes hit inside", n, SAMPLED_PROBES))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::action_table;
    use crate::gate::{gate, GateName};
    use crate::group::closure;
    use crate::perm;

    fn tmpdir() -> tempfile::TempDir {
        tempfile::tempdir().expect("create temp dir")
    }

    fn one_qubit_group() -> FiniteGroup<GateMatrix> {
        closure(
            &[gate(GateName::H, 1, &[0]).unwrap(), gate(GateName::P, 1, &[0]).unwrap()],
            200,
        )
        .unwrap()
    }

    #[test]
    fn matrix_group_roundtrips_byte_identically() {
        let dir = tmpdir();
        let cache = GroupCache::new(dir.path()).unwrap();
        let g = one_qubit_group();
        cache.store("c1", &g).unwrap();
        let reloaded: FiniteGroup<GateMatrix> = cache.load("c1").unwrap().unwrap();
        assert_eq!(reloaded.order(), g.order());
        assert_eq!(reloaded.generator_ords(), g.generator_ords());
        for (a, b) in g.elements().iter().zip(reloaded.elements()) {
            assert_eq!(a.key(), b.key());
        }
        let original = std::fs::read(cache.path_for("c1")).unwrap();
        cache.store("c1-again", &reloaded).unwrap();
        let rewritten = std::fs::read(cache.path_for("c1-again")).unwrap();
        assert_eq!(original, rewritten);
    }

    #[test]
    fn permutation_bitmatrix_table_and_symplectic_kinds_roundtrip() {
        let dir = tmpdir();
        let cache = GroupCache::new(dir.path()).unwrap();

        let s4 = perm::symmetric(4);
        cache.store("s4", &s4).unwrap();
        assert_eq!(cache.load::<Permutation>("s4").unwrap().unwrap().order(), 24);

        let upper = BinMatrix::new(2, &[0b11, 0b10]).unwrap();
        let swap = BinMatrix::new(2, &[0b10, 0b01]).unwrap();
        let gl = closure(&[upper, swap], 10).unwrap();
        cache.store("gl2", &gl).unwrap();
        assert_eq!(cache.load::<BinMatrix>("gl2").unwrap().unwrap().order(), 6);

        let tables = closure(
            &[
                action_table(&gate(GateName::H, 1, &[0]).unwrap()).unwrap(),
                action_table(&gate(GateName::P, 1, &[0]).unwrap()).unwrap(),
            ],
            100,
        )
        .unwrap();
        cache.store("tables", &tables).unwrap();
        let back = cache.load::<CliffordActionTable>("tables").unwrap().unwrap();
        assert_eq!(back.order(), tables.order());

        let sp = closure(
            &[
                crate::clifford::symplectic_of(tables.element(tables.generator_ords()[0]))
                    .unwrap(),
                crate::clifford::symplectic_of(tables.element(tables.generator_ords()[1]))
                    .unwrap(),
            ],
            100,
        )
        .unwrap();
        cache.store("sp", &sp).unwrap();
        assert_eq!(cache.load::<SymplecticMatrix>("sp").unwrap().unwrap().order(), sp.order());
    }

    #[test]
    fn truncated_file_reports_corrupt_cache() {
        let dir = tmpdir();
        let cache = GroupCache::new(dir.path()).unwrap();
        cache.store("c1", &one_qubit_group()).unwrap();
        let path = cache.path_for("c1");
        let mut bytes = std::fs::read(&path).unwrap();
        bytes.truncate(bytes.len() - 7);
        std::fs::write(&path, &bytes).unwrap();
        match cache.load::<GateMatrix>("c1") {
            Err(Error::CorruptCache(d)) => assert!(d.contains("truncated"), "detail: {d}"),
            Err(other) => panic!("expected CorruptCache, got {other}"),
            Ok(_) => panic!("expected CorruptCache, load succeeded"),
        }
    }

    #[test]
    fn version_and_magic_mismatches_are_detected_with_detail() {
        let dir = tmpdir();
        let cache = GroupCache::new(dir.path()).unwrap();
        cache.store("c1", &one_qubit_group()).unwrap();
        let path = cache.path_for("c1");
        let good = std::fs::read(&path).unwrap();

        let mut wrong_version = good.clone();
        wrong_version[4] = 9;
        std::fs::write(&path, &wrong_version).unwrap();
        match cache.load::<GateMatrix>("c1") {
            Err(Error::CorruptCache(d)) => {
                assert!(d.contains("version 9"), "detail: {d}");
                assert!(d.contains("expected 1"), "detail: {d}");
            }
            Err(other) => panic!("expected CorruptCache, got {other}"),
            Ok(_) => panic!("expected CorruptCache, load succeeded"),
        }

        let mut wrong_magic = good;
        wrong_magic[0] = b'X';
        std::fs::write(&path, &wrong_magic).unwrap();
        match cache.load::<GateMatrix>("c1") {
            Err(Error::CorruptCache(d)) => assert!(d.contains("magic"), "detail: {d}"),
            Err(other) => panic!("expected CorruptCache, got {other}"),
            Ok(_) => panic!("expected CorruptCache, load succeeded"),
        }
    }

    #[test]
    fn wrong_element_kind_is_rejected() {
        let dir = tmpdir();
        let cache = GroupCache::new(dir.path()).unwrap();
        cache.store("s4", &perm::symmetric(4)).unwrap();
        match cache.load::<GateMatrix>("s4") {
            Err(Error::CorruptCache(d)) => assert!(d.contains("kind"), "detail: {d}"),
            Err(other) => panic!("expected CorruptCache, got {other}"),
            Ok(_) => panic!("expected CorruptCache, load succeeded"),
        }
    }

    #[test]
    fn missing_entry_loads_as_none_and_build_runs_once() {
        let dir = tmpdir();
        let cache = GroupCache::new(dir.path()).unwrap();
        assert!(cache.load::<GateMatrix>("absent").unwrap().is_none());
        let mut builds = 0;
        for _ in 0..2 {
            let g = cache
                .load_or_build("c1", || {
                    builds += 1;
                    Ok(one_qubit_group())
                })
                .unwrap();
            assert_eq!(g.order(), 192);
        }
        assert_eq!(builds, 1);
    }

    #[test]
    fn check_reports_each_file_and_flags_damage() {
        let dir = tmpdir();
        let cache = GroupCache::new(dir.path()).unwrap();
        cache.store("c1", &one_qubit_group()).unwrap();
        cache.store("s4", &perm::symmetric(4)).unwrap();
        let reports = cache.check().unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.ok), "reports: {reports:?}");
        assert_eq!(reports[0].name, "c1");
        assert!(reports[0].detail.contains("closure verified"));

        let path = cache.path_for("s4");
        let mut bytes = std::fs::read(&path).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 0x1;
        std::fs::write(&path, &bytes).unwrap();
        let reports = cache.check().unwrap();
        let bad = reports.iter().find(|r| r.name == "s4").unwrap();
        assert!(!bad.ok);
    }
}
