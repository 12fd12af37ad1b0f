//! Lazily built, process-wide groups shared by the claim checks.
//!
//! Every entry is computed at most once per [`GroupStore`], optionally
//! backed by the on-disk cache, and handed out as `Arc`s so several claims
//! can read the same enumeration without rebuilding it. Build failures are
//! memoized as strings and rehydrated as [`Error::Malformed`] so a broken
//! construction fails every dependent claim the same way.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use crate::bn::{verify_pair, verify_reduced_pair, BNReport, CheckMode, PairSpec, ReducedPairSpec};
use crate::binmat::BinMatrix;
use crate::cache::{Cacheable, GroupCache};
use crate::clifford::{
    action_table, order_via_factorization, symplectic_of, CliffordActionTable, Factorization,
    SymplecticMatrix,
};
use crate::coxeter::{find_certificate, CoxeterType};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::gate::{gate, GateMatrix, GateName};
use crate::group::{closure, from_elements, quotient, CosetRep, FiniteGroup};
use crate::perm::Permutation;
use crate::schlaefli::{automorphism_group, IncidenceGraph};

/// Node budget for Coxeter certificate searches.
pub const CERT_BUDGET: usize = 50_000_000;
/// Extension-step budget for explicit isomorphism searches.
pub const ISO_BUDGET: usize = 5_000_000;
/// Element budget for the three-qubit symplectic factorizations.
const FACTORIZATION_BUDGET: usize = 2_000_000;
/// Tracked-subgroup cap for the exhaustive subgroup scans.
const SCAN_CAP: usize = 4096;

pub(crate) fn on(name: GateName, n_qubits: usize, positions: &[usize]) -> GateMatrix {
    gate(name, n_qubits, positions).expect("fixed generator recipes are well formed")
}

fn c1_gens() -> Vec<GateMatrix> {
    vec![on(GateName::H, 1, &[0]), on(GateName::P, 1, &[0])]
}

fn p1_gens() -> Vec<GateMatrix> {
    vec![on(GateName::X, 1, &[0]), on(GateName::Y, 1, &[0]), on(GateName::Z, 1, &[0])]
}

/// Independent model of the imprimitive reflection group G(4,2,2):
/// monomial 2x2 matrices whose nonzero entries are fourth roots of unity
/// with product a square; generated without reference to Pauli matrices.
fn g422_gens() -> Vec<GateMatrix> {
    let i = CycloNum::i();
    vec![
        on(GateName::X, 1, &[0]),
        GateMatrix::diagonal(&[i, i.neg()]),
        GateMatrix::diagonal(&[CycloNum::from_int(-1), CycloNum::ONE]),
    ]
}

fn c2_gens() -> Vec<GateMatrix> {
    let mut gens = c2l_gens();
    gens.push(on(GateName::Cz, 2, &[0, 1]));
    gens
}

fn c2l_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::H, 2, &[0]),
        on(GateName::H, 2, &[1]),
        on(GateName::P, 2, &[0]),
        on(GateName::P, 2, &[1]),
    ]
}

fn c2l_alt_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::H, 2, &[0]).mul(&on(GateName::H, 2, &[1])),
        on(GateName::H, 2, &[0]).mul(&on(GateName::P, 2, &[1])),
        on(GateName::T, 2, &[0, 1]),
    ]
}

fn b2_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::H, 2, &[0]).mul(&on(GateName::H, 2, &[1])),
        on(GateName::H, 2, &[0]).mul(&on(GateName::P, 2, &[1])),
        on(GateName::R, 2, &[0, 1]),
    ]
}

fn p2_gens() -> Vec<GateMatrix> {
    let mut gens = e32_gens();
    gens.push(GateMatrix::identity(2).mul_unit(2));
    gens
}

fn e32_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::X, 2, &[0]),
        on(GateName::Z, 2, &[0]),
        on(GateName::X, 2, &[1]),
        on(GateName::Z, 2, &[1]),
    ]
}

pub(crate) fn c3_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::H, 3, &[0]).mul(&on(GateName::H, 3, &[1])).mul(&on(GateName::P, 3, &[2])),
        on(GateName::H, 3, &[0]).mul(&on(GateName::Cz, 3, &[1, 2])),
        on(GateName::Cz, 3, &[0, 1]).mul(&on(GateName::H, 3, &[2])),
    ]
}

pub(crate) fn b3_gens() -> Vec<GateMatrix> {
    vec![
        on(GateName::H, 3, &[0]).mul(&on(GateName::H, 3, &[1])).mul(&on(GateName::P, 3, &[2])),
        on(GateName::H, 3, &[0]).mul(&on(GateName::R, 3, &[1, 2])),
        on(GateName::R, 3, &[0, 1]).mul(&on(GateName::H, 3, &[2])),
    ]
}

fn c3l_gens() -> Vec<GateMatrix> {
    let mut gens = Vec::new();
    for q in 0..3 {
        gens.push(on(GateName::H, 3, &[q]));
        gens.push(on(GateName::P, 3, &[q]));
    }
    gens
}

fn p3_table_gens() -> Result<Vec<CliffordActionTable>> {
    let mut gens = Vec::new();
    for q in 0..3 {
        gens.push(action_table(&on(GateName::X, 3, &[q]))?);
        gens.push(action_table(&on(GateName::Z, 3, &[q]))?);
    }
    Ok(gens)
}

fn tables_of(gens: &[GateMatrix]) -> Result<Vec<CliffordActionTable>> {
    gens.iter().map(action_table).collect()
}

/// Isomorphism-invariant profile of one order-1152 subgroup found by the
/// index-4 census.
#[derive(Clone, serde::Serialize)]
pub struct Index4Profile {
    pub f4_certified: bool,
    /// Whether the subgroup contains the scalar `ω·I`.
    pub contains_omega: bool,
    pub center_order: u64,
    pub abelianization: Vec<u64>,
    /// Order of the intersection with the Bell group.
    pub meets_bell_order: u64,
}

/// Result of an exhaustive index-4 subgroup census of an order-4608 group:
/// every subgroup of order 1152 is enumerated through normal cores, then
/// tested for a rank-4 F4 Coxeter certificate. `W(F4)` has center of order
/// 2, so the certificate search is skipped (and recorded as refused) for
/// candidates whose center already rules them out.
pub struct F4Scan {
    /// Distinct order-1152 subgroups found (the census is complete).
    pub index4_count: usize,
    /// How many of them carry an F4 certificate.
    pub f4_certified: usize,
    pub profiles: Vec<Index4Profile>,
    /// The first certified subgroup, when one exists.
    pub group: Option<Arc<FiniteGroup<GateMatrix>>>,
    pub certificate: Option<serde_json::Value>,
}

/// Central quotients of derived subgroups on the two-qubit side, together
/// with the images of the named subgroups inside the hatted Clifford group.
pub struct HatStack {
    /// `derived(C2) / center(derived(C2))`, order 5760 expected.
    pub c2_hat: Arc<FiniteGroup<CosetRep<GateMatrix>>>,
    pub c2_derived_order: u64,
    pub c2_derived_center_order: u64,
    /// Image of `derived(C2L)` in the hatted group.
    pub img_c2l_derived: Arc<FiniteGroup<CosetRep<GateMatrix>>>,
    /// Image of `derived(B2)` in the hatted group.
    pub img_b2_derived: Arc<FiniteGroup<CosetRep<GateMatrix>>>,
    /// Image of the Pauli group, when it lies inside `derived(C2)`.
    pub img_pauli: Option<FiniteGroup<CosetRep<GateMatrix>>>,
    pub pauli_inside_derived: bool,
    /// Standalone `derived(B2)/center(derived(B2))` order, for comparison
    /// with the image route.
    pub b2_hat_standalone_order: u64,
    pub b2_hat_matches_image: bool,
    /// Standalone `derived(C2L)/center(derived(C2L))` order.
    pub c2l_hat_standalone_order: u64,
    pub c2l_hat_matches_image: bool,
}

type Slot<T> = OnceLock<std::result::Result<T, String>>;

fn get<T: Clone>(lock: &Slot<T>, build: impl FnOnce() -> Result<T>) -> Result<T> {
    match lock.get_or_init(|| build().map_err(|e| e.to_string())) {
        Ok(v) => Ok(v.clone()),
        Err(msg) => Err(Error::Malformed(msg.clone())),
    }
}

#[derive(Default)]
pub struct GroupStore {
    cache: Option<GroupCache>,
    c1: Slot<Arc<FiniteGroup<GateMatrix>>>,
    p1: Slot<Arc<FiniteGroup<GateMatrix>>>,
    g422: Slot<Arc<FiniteGroup<GateMatrix>>>,
    c2: Slot<Arc<FiniteGroup<GateMatrix>>>,
    c2l: Slot<Arc<FiniteGroup<GateMatrix>>>,
    b2: Slot<Arc<FiniteGroup<GateMatrix>>>,
    p2: Slot<Arc<FiniteGroup<GateMatrix>>>,
    e32: Slot<Arc<FiniteGroup<GateMatrix>>>,
    z_b2: Slot<Arc<FiniteGroup<GateMatrix>>>,
    c2l_alt: Slot<Arc<FiniteGroup<GateMatrix>>>,
    f4_local: Slot<Arc<F4Scan>>,
    f4_swap: Slot<Arc<F4Scan>>,
    c2_pair: Slot<Arc<BNReport>>,
    hat: Slot<Arc<HatStack>>,
    hat_pair: Slot<Arc<BNReport>>,
    c3_fact: Slot<Arc<Factorization>>,
    b3_fact: Slot<Arc<Factorization>>,
    c3l: Slot<Arc<FiniteGroup<GateMatrix>>>,
    c3l_tables: Slot<Arc<FiniteGroup<CliffordActionTable>>>,
    p3_tables: Slot<Arc<FiniteGroup<CliffordActionTable>>>,
    v_image: Slot<Arc<FiniteGroup<SymplecticMatrix>>>,
    aut27: Slot<Arc<FiniteGroup<Permutation>>>,
}

impl GroupStore {
    pub fn new(cache_dir: Option<&Path>) -> Result<GroupStore> {
        let cache = match cache_dir {
            Some(dir) => Some(GroupCache::new(dir)?),
            None => None,
        };
        Ok(GroupStore { cache, ..GroupStore::default() })
    }

    pub fn cache(&self) -> Option<&GroupCache> {
        self.cache.as_ref()
    }

    fn cached_closure<E: Cacheable>(
        &self,
        name: &str,
        gens: &[E],
        max: usize,
    ) -> Result<FiniteGroup<E>> {
        match &self.cache {
            Some(c) => c.load_or_build(name, || closure(gens, max)),
            None => closure(gens, max),
        }
    }

    /// `⟨H, P⟩` on one qubit, order 192 expected.
    pub fn c1(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.c1, || Ok(Arc::new(closure(&c1_gens(), 400)?)))
    }

    /// One-qubit Pauli group `⟨X, Y, Z⟩`, order 16 expected.
    pub fn p1(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.p1, || Ok(Arc::new(closure(&p1_gens(), 40)?)))
    }

    /// Independent G(4,2,2) model for comparison with the Pauli group.
    pub fn g422(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.g422, || Ok(Arc::new(closure(&g422_gens(), 40)?)))
    }

    /// Two-qubit Clifford group `⟨H⊗I, I⊗H, P⊗I, I⊗P, CZ⟩`.
    pub fn c2(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.c2, || Ok(Arc::new(self.cached_closure("c2", &c2_gens(), 100_000)?)))
    }

    /// Two-qubit local Clifford group `⟨H⊗I, I⊗H, P⊗I, I⊗P⟩`.
    pub fn c2l(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.c2l, || Ok(Arc::new(self.cached_closure("c2l", &c2l_gens(), 6_000)?)))
    }

    /// Two-qubit Bell group `⟨H⊗H, H⊗P, R⟩`.
    pub fn b2(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.b2, || Ok(Arc::new(self.cached_closure("b2", &b2_gens(), 20_000)?)))
    }

    /// Two-qubit Pauli group with `i·I` adjoined, order 64 expected.
    pub fn p2(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.p2, || Ok(Arc::new(closure(&p2_gens(), 100)?)))
    }

    /// Sign-only Pauli subgroup `⟨X⊗I, Z⊗I, I⊗X, I⊗Z⟩`, order 32 expected.
    pub fn e32(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.e32, || Ok(Arc::new(closure(&e32_gens(), 40)?)))
    }

    /// Center of the Bell group.
    pub fn z_b2(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.z_b2, || Ok(Arc::new(self.b2()?.center())))
    }

    /// The other order-4608 realization written for the local group:
    /// `⟨H⊗H, H⊗P, T⟩`, which contains the qubit swap.
    pub fn c2l_alt(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.c2l_alt, || {
            Ok(Arc::new(self.cached_closure("c2l-alt", &c2l_alt_gens(), 6_000)?))
        })
    }

    /// Index-4 census of the local Clifford group (pure tensor products).
    pub fn f4_local(&self) -> Result<Arc<F4Scan>> {
        get(&self.f4_local, || Ok(Arc::new(self.census_1152(&self.c2l()?)?)))
    }

    /// Index-4 census of the swap-containing realization `⟨H⊗H, H⊗P, T⟩`.
    pub fn f4_swap(&self) -> Result<Arc<F4Scan>> {
        get(&self.f4_swap, || Ok(Arc::new(self.census_1152(&self.c2l_alt()?)?)))
    }

    /// The order-1152 Borel subgroup for the two-qubit pair: the unique
    /// F4-certified subgroup from whichever order-4608 realization carries
    /// one, preferring the pure tensor-product group.
    pub fn borel_1152(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        if let Some(g) = &self.f4_local()?.group {
            return Ok(Arc::clone(g));
        }
        if let Some(g) = &self.f4_swap()?.group {
            return Ok(Arc::clone(g));
        }
        Err(Error::Malformed(
            "no F4-certified order-1152 subgroup in either order-4608 realization".into(),
        ))
    }

    fn census_1152(&self, g: &Arc<FiniteGroup<GateMatrix>>) -> Result<F4Scan> {
        let b2 = self.b2()?;
        let total = g.order();
        let target = total / 4;

        // Any index-4 subgroup S has a normal core N with G/N embedding in
        // S4, so |S : N| divides 6 and N appears in the normal subgroup
        // lattice below order 1152. Enumerating S/N inside G/N for every
        // such N therefore finds every S.
        let lattice = g.normal_subgroup_lattice(target, SCAN_CAP)?;
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut candidates: Vec<FiniteGroup<GateMatrix>> = Vec::new();
        for n in &lattice {
            if target % n.order() != 0 || 6 % (target / n.order()) != 0 {
                continue;
            }
            let q = quotient(g, n)?;
            let sub_order = q.order() / 4;
            for t in q.subgroups_of_order(sub_order, SCAN_CAP)? {
                let mut ords: Vec<u32> = Vec::with_capacity(target as usize);
                let mut members: Vec<GateMatrix> = Vec::with_capacity(target as usize);
                for (ord, x) in g.elements().iter().enumerate() {
                    if t.membership(&q.project(x)?) {
                        ords.push(ord as u32);
                        members.push(x.clone());
                    }
                }
                if members.len() as u64 == target && seen.insert(ords) {
                    candidates.push(from_elements(members)?);
                }
            }
        }

        let f4_data = CoxeterType::F4.data();
        let omega = GateMatrix::identity(2).mul_unit(1);
        let index4_count = candidates.len();
        let mut profiles = Vec::with_capacity(index4_count);
        let mut group = None;
        let mut certificate = None;
        for cand in candidates {
            let center_order = cand.center().order();
            let cert = if center_order == 2 {
                find_certificate(&cand, &f4_data, CERT_BUDGET)?
            } else {
                None
            };
            profiles.push(Index4Profile {
                f4_certified: cert.is_some(),
                contains_omega: cand.membership(&omega),
                center_order,
                abelianization: cand.abelianization_invariants(),
                meets_bell_order: b2.elements().iter().filter(|e| cand.membership(e)).count()
                    as u64,
            });
            if let Some(c) = cert {
                if group.is_none() {
                    certificate = Some(c.to_json());
                    group = Some(Arc::new(cand));
                }
            }
        }
        let f4_certified = profiles.iter().filter(|p| p.f4_certified).count();
        Ok(F4Scan { index4_count, f4_certified, profiles, group, certificate })
    }

    /// The two-qubit pair (B = certified F4 subgroup, N = Bell group)
    /// checked exhaustively inside the full Clifford group.
    pub fn c2_pair(&self) -> Result<Arc<BNReport>> {
        get(&self.c2_pair, || Ok(Arc::new(self.build_c2_pair(CheckMode::Exhaustive)?)))
    }

    pub fn build_c2_pair(&self, mode: CheckMode) -> Result<BNReport> {
        let c2 = self.c2()?;
        let borel = self.borel_1152()?;
        let b2 = self.b2()?;
        let z_b2 = self.z_b2()?;
        let s_types = [CoxeterType::D5.data()];
        let spec = PairSpec {
            name: "c2-pair",
            g: c2.as_ref(),
            b: borel.as_ref(),
            n: &b2,
            claimed_h: Some(z_b2.as_ref()),
            claimed_w_order: Some(1920),
            s_types: &s_types,
            w_reference: None,
            check_split: true,
            cert_budget: CERT_BUDGET,
        };
        verify_pair(&spec, mode)
    }

    /// Hatted two-qubit groups: central quotients of derived subgroups.
    pub fn hat(&self) -> Result<Arc<HatStack>> {
        get(&self.hat, || Ok(Arc::new(self.build_hat()?)))
    }

    fn build_hat(&self) -> Result<HatStack> {
        let c2 = self.c2()?;
        let b2 = self.b2()?;
        let c2l = self.c2l()?;
        let p2 = self.p2()?;

        let c2d = Arc::new(c2.derived_subgroup());
        let z = c2d.center();
        let c2_derived_order = c2d.order();
        let c2_derived_center_order = z.order();
        let c2_hat = Arc::new(quotient(&c2d, &z)?);

        let img_of = |sub: &FiniteGroup<GateMatrix>| -> Result<FiniteGroup<CosetRep<GateMatrix>>> {
            let mut reps = Vec::with_capacity(sub.order() as usize);
            for e in sub.elements() {
                reps.push(c2_hat.project(e)?);
            }
            from_elements(reps)
        };

        let b2d = b2.derived_subgroup();
        let c2ld = c2l.derived_subgroup();
        let img_b2_derived = Arc::new(img_of(&b2d)?);
        let img_c2l_derived = Arc::new(img_of(&c2ld)?);
        let pauli_inside_derived = p2.elements().iter().all(|e| c2d.membership(e));
        let img_pauli = if pauli_inside_derived { Some(img_of(&p2)?) } else { None };

        let hat_of = |g: &FiniteGroup<GateMatrix>| -> Result<FiniteGroup<CosetRep<GateMatrix>>> {
            let d = Arc::new(g.derived_subgroup());
            let zd = d.center();
            quotient(&d, &zd)
        };
        let b2_hat = hat_of(&b2)?;
        let c2l_hat = hat_of(&c2l)?;

        Ok(HatStack {
            b2_hat_standalone_order: b2_hat.order(),
            b2_hat_matches_image: b2_hat.fingerprint() == img_b2_derived.fingerprint(),
            c2l_hat_standalone_order: c2l_hat.order(),
            c2l_hat_matches_image: c2l_hat.fingerprint() == img_c2l_derived.fingerprint(),
            c2_hat,
            c2_derived_order,
            c2_derived_center_order,
            img_c2l_derived,
            img_b2_derived,
            img_pauli,
            pauli_inside_derived,
        })
    }

    /// The split pair inside the hatted Clifford group, checked
    /// exhaustively with the alternating group of degree 5 as the Weyl
    /// reference.
    pub fn hat_pair(&self) -> Result<Arc<BNReport>> {
        get(&self.hat_pair, || Ok(Arc::new(self.build_hat_pair(CheckMode::Exhaustive)?)))
    }

    pub fn build_hat_pair(&self, mode: CheckMode) -> Result<BNReport> {
        let hat = self.hat()?;
        let a5 = crate::perm::alternating(5);
        let spec = PairSpec {
            name: "c2-hat-split-pair",
            g: hat.c2_hat.as_ref(),
            b: hat.img_c2l_derived.as_ref(),
            n: &hat.img_b2_derived,
            claimed_h: hat.img_pauli.as_ref(),
            claimed_w_order: Some(60),
            s_types: &[],
            w_reference: Some(("alternating-5", &a5)),
            check_split: true,
            cert_budget: CERT_BUDGET,
        };
        verify_pair(&spec, mode)
    }

    fn cached_factorization(
        &self,
        image_name: &str,
        kernel_name: &str,
        gens: &[GateMatrix],
    ) -> Result<Factorization> {
        if let Some(c) = &self.cache {
            let image = c.load::<SymplecticMatrix>(image_name)?;
            let kernel = c.load::<GateMatrix>(kernel_name)?;
            if let (Some(image), Some(kernel)) = (image, kernel) {
                let image_order = image.order();
                let kernel_order = kernel.order();
                return Ok(Factorization {
                    order: image_order * kernel_order,
                    image_order,
                    kernel_order,
                    image,
                    kernel,
                });
            }
        }
        let f = order_via_factorization(gens, FACTORIZATION_BUDGET)?;
        if let Some(c) = &self.cache {
            c.store(image_name, &f.image)?;
            c.store(kernel_name, &f.kernel)?;
        }
        Ok(f)
    }

    /// Symplectic-image factorization of the three-qubit Clifford group.
    pub fn c3_fact(&self) -> Result<Arc<Factorization>> {
        get(&self.c3_fact, || {
            Ok(Arc::new(self.cached_factorization("c3-image", "c3-kernel", &c3_gens())?))
        })
    }

    /// Symplectic-image factorization of the three-qubit Bell group.
    pub fn b3_fact(&self) -> Result<Arc<Factorization>> {
        get(&self.b3_fact, || {
            Ok(Arc::new(self.cached_factorization("b3-image", "b3-kernel", &b3_gens())?))
        })
    }

    /// Three-qubit local Clifford group by direct matrix closure. Held in
    /// memory only: at 110592 matrices the disk image would dwarf every
    /// other cache entry while saving little time.
    pub fn c3l(&self) -> Result<Arc<FiniteGroup<GateMatrix>>> {
        get(&self.c3l, || Ok(Arc::new(closure(&c3l_gens(), 120_000)?)))
    }

    /// Action-table quotient of the local three-qubit group (matrices
    /// modulo scalars), order 13824 expected.
    pub fn c3l_tables(&self) -> Result<Arc<FiniteGroup<CliffordActionTable>>> {
        get(&self.c3l_tables, || {
            let gens = tables_of(&c3l_gens())?;
            Ok(Arc::new(self.cached_closure("c3l-tables", &gens, 16_000)?))
        })
    }

    /// Sign tables of the three-qubit Pauli group, order 64 expected.
    pub fn p3_tables(&self) -> Result<Arc<FiniteGroup<CliffordActionTable>>> {
        get(&self.p3_tables, || Ok(Arc::new(closure(&p3_table_gens()?, 100)?)))
    }

    /// Symplectic image of the local three-qubit group, order 216 expected.
    pub fn v_image(&self) -> Result<Arc<FiniteGroup<SymplecticMatrix>>> {
        get(&self.v_image, || {
            let tables = tables_of(&c3l_gens())?;
            let sps: Vec<SymplecticMatrix> =
                tables.iter().map(symplectic_of).collect::<Result<_>>()?;
            Ok(Arc::new(closure(&sps, 2_000)?))
        })
    }

    /// The reduced three-qubit pair: symplectic images plus table-level
    /// kernel bookkeeping, never enumerating the ambient group.
    pub fn build_c3_pair(&self, mode: CheckMode) -> Result<BNReport> {
        let c3 = self.c3_fact()?;
        let b3 = self.b3_fact()?;
        let c3l_tables = self.c3l_tables()?;
        let p3_tables = self.p3_tables()?;
        let v_image = self.v_image()?;
        let n_table_gens = tables_of(&b3_gens())?;
        let g_table_gens = tables_of(&c3_gens())?;
        let s_types = [CoxeterType::E6.data()];
        let spec = ReducedPairSpec {
            name: "c3-pair",
            sp_g: &c3.image,
            b_image: v_image.as_ref(),
            n_image: &b3.image,
            kernel_order: p3_tables.order(),
            b_tables: c3l_tables.as_ref(),
            n_table_gens: &n_table_gens,
            g_table_gens: &g_table_gens,
            claimed_h: p3_tables.as_ref(),
            claimed_w_order: Some(25920),
            s_types: &s_types,
            check_split: true,
            cert_budget: CERT_BUDGET,
        };
        verify_reduced_pair(&spec, mode)
    }

    /// Brute-force toy pair over GF(2): B upper triangular, N monomial.
    pub fn build_toy_pair(&self, mode: CheckMode) -> Result<BNReport> {
        let upper = BinMatrix::new(2, &[0b11, 0b10])?;
        let swap = BinMatrix::new(2, &[0b10, 0b01])?;
        let g = closure(&[upper.clone(), swap.clone()], 10)?;
        let b = closure(&[upper], 10)?;
        let n = Arc::new(closure(&[swap], 10)?);
        let s_types = [CoxeterType::A(1).data()];
        let spec = PairSpec {
            name: "gl2f2-toy",
            g: &g,
            b: &b,
            n: &n,
            claimed_h: None,
            claimed_w_order: Some(2),
            s_types: &s_types,
            w_reference: None,
            check_split: true,
            cert_budget: 10_000,
        };
        verify_pair(&spec, mode)
    }

    /// Automorphism group of the 27-line incidence graph.
    pub fn aut27(&self) -> Result<Arc<FiniteGroup<Permutation>>> {
        get(&self.aut27, || {
            let build = || automorphism_group(&IncidenceGraph::build());
            let g = match &self.cache {
                Some(c) => c.load_or_build("aut27", build)?,
                None => build()?,
            };
            Ok(Arc::new(g))
        })
    }
}
