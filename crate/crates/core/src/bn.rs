//! Mechanical verification of Tits system (BN-pair) structure.
//!
//! A Tits system in a group `G` is a pair of subgroups `B`, `N` such that
//! `B` and `N` together generate `G`, `H = B ∩ N` is normal in `N`, the
//! Weyl group `W = N/H` is generated by a set `S` of involutions, and
//!
//! - axiom (i): `s B w ⊆ BwB ∪ BswB` for every `s` in `S`, `w` in `W`,
//! - axiom (ii): `s B s ≠ B` for every `s` in `S`.
//!
//! [`verify_pair`] takes explicitly enumerated groups and computes every
//! ingredient, reporting what holds rather than presuming it: the computed
//! `H` is compared against any claimed one, the Bruhat map `w ↦ BwB` is
//! tested for well-definedness and bijectivity, the cell multiplication
//! rules are measured, and every failed check carries a counterexample in
//! terms of element ordinals. A pair that fails an axiom produces a report
//! saying so, not an error.
//!
//! [`verify_reduced_pair`] covers ambient groups too large to enumerate.
//! It works with unitary conjugation-action tables and their symplectic
//! images: when the kernel `K` of the symplectic map lies inside `B`,
//! every statement about `B`-cosets descends faithfully to the image, so
//! double cosets, both axioms, and the cell rules can be decided on the
//! image while `H` itself is still computed at table level. The kernel
//! premise is checked mechanically before any reduction step is trusted.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::CliffordActionTable;
use crate::clifford::SymplecticMatrix;
use crate::coxeter::{self, CoxeterTypeData};
use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, GroupElement};
use crate::perm::Permutation;

const MAX_COUNTEREXAMPLES: usize = 5;

/// How the triple scan behind axiom (i) and the cell rules is driven.
#[derive(Clone, Copy, Debug)]
pub enum CheckMode {
    /// Every `(s, w, b)` triple.
    Exhaustive,
    /// A seeded uniform sample of triples. Verdicts from this mode are
    /// labeled `sampled` and never claim set equalities, only that no
    /// violation was observed.
    Sampled { triples: u64, seed: u64 },
}

/// Inputs for [`verify_pair`]. All groups must consist of elements of the
/// ambient group `g`; `n` is shared so the Weyl quotient can borrow it.
pub struct PairSpec<'a, E: GroupElement> {
    pub name: &'a str,
    pub g: &'a FiniteGroup<E>,
    pub b: &'a FiniteGroup<E>,
    pub n: &'a Arc<FiniteGroup<E>>,
    /// The `H` the axioms are claimed to hold with. When it differs from
    /// the computed `B ∩ N` the mismatch is reported and the axioms still
    /// run with the claimed subgroup.
    pub claimed_h: Option<&'a FiniteGroup<E>>,
    pub claimed_w_order: Option<u64>,
    /// Diagram types tried, in order, for a Weyl group certificate.
    pub s_types: &'a [CoxeterTypeData],
    /// Optional reference group the Weyl quotient is compared against by
    /// explicit isomorphism search (for types outside the diagram list).
    pub w_reference: Option<(&'a str, &'a FiniteGroup<Permutation>)>,
    /// Also decide the saturation axioms: existence of a normal nilpotent
    /// complement `U` of `H` in `B`, and whether the `N`-core of `B` is
    /// exactly `H`.
    pub check_split: bool,
    pub cert_budget: usize,
}

/// Inputs for [`verify_reduced_pair`].
///
/// The ambient group is `⟨g_table_gens⟩`, never enumerated; its symplectic
/// image is `sp_g`, enumerated in full. `b_tables` enumerates `B` at table
/// level, `b_image` and `n_image` are the images of `B` and `N`, and
/// `kernel_order` is the order of the kernel `K` of the symplectic map,
/// which must satisfy `K ⊆ B` and must equal the claimed `H` exactly: the
/// reduction identifies `W = N/K` with `n_image`.
pub struct ReducedPairSpec<'a> {
    pub name: &'a str,
    pub sp_g: &'a FiniteGroup<SymplecticMatrix>,
    pub b_image: &'a FiniteGroup<SymplecticMatrix>,
    pub n_image: &'a FiniteGroup<SymplecticMatrix>,
    pub kernel_order: u64,
    pub b_tables: &'a FiniteGroup<CliffordActionTable>,
    pub n_table_gens: &'a [CliffordActionTable],
    pub g_table_gens: &'a [CliffordActionTable],
    pub claimed_h: &'a FiniteGroup<CliffordActionTable>,
    pub claimed_w_order: Option<u64>,
    pub s_types: &'a [CoxeterTypeData],
    pub check_split: bool,
    pub cert_budget: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BNReport {
    pub pair: String,
    pub ambient_order: u64,
    pub b_order: u64,
    pub n_order: u64,
    pub generation: GenerationReport,
    pub h: HReport,
    pub w: Option<WReport>,
    pub axiom_i: Option<ScanReport>,
    pub axiom_ii: Vec<InvolutionWitness>,
    pub bruhat: Option<BruhatReport>,
    pub cells: Option<CellReport>,
    pub split: Option<SplitReport>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenerationReport {
    pub generated_order: u64,
    pub generates: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HReport {
    pub computed_order: u64,
    pub computed_normal_in_n: bool,
    pub computed_normal_in_g: bool,
    pub claimed_order: Option<u64>,
    pub equals_claimed: Option<bool>,
    /// `"computed"` or `"claimed"`: which subgroup the axioms ran with.
    pub axioms_use: String,
    pub used_order: u64,
    pub used_cyclic: bool,
    pub used_exponent: u64,
    pub used_normal_in_n: bool,
    pub used_normal_in_g: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WReport {
    pub order: u64,
    pub claimed_order: Option<u64>,
    pub matches_claimed_order: Option<bool>,
    pub certificate: Option<serde_json::Value>,
    pub certificate_type: Option<String>,
    pub s_size: usize,
    pub s_from_fallback: bool,
    pub length_histogram: Vec<(u32, u64)>,
    pub reference_name: Option<String>,
    pub reference_isomorphic: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub mode: String,
    pub checked: u64,
    pub failures: u64,
    pub holds: bool,
    pub counterexamples: Vec<String>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvolutionWitness {
    pub s_index: usize,
    /// True iff some `b` with `s b s ∉ B` exists; that element's ordinal
    /// (within `B`'s enumeration) is the witness.
    pub holds: bool,
    pub witness_b_index: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BruhatReport {
    pub double_coset_count: u64,
    pub w_order: u64,
    pub fiber_well_defined: bool,
    pub well_defined_counterexample: Option<String>,
    pub fiber_injective: bool,
    pub fiber_surjective: bool,
    pub bijective: bool,
    pub index_bound: u64,
    pub within_index_bound: bool,
    pub sizes_sum: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellReport {
    pub ascent_checked: u64,
    pub ascent_failures: u64,
    pub ascent_counterexample: Option<String>,
    pub descent_checked: u64,
    pub descent_failures: u64,
    pub descent_counterexample: Option<String>,
    /// `(s, w)` pairs with `l(sw) = l(w)`; impossible over a genuine Weyl
    /// group, so a nonzero count is itself a defect signal.
    pub length_ties: u64,
    pub quadratic: Vec<QuadraticCell>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadraticCell {
    pub s_index: usize,
    /// `C(s)C(s) = B ∪ C(s)` measured as a class-set identity.
    pub product_is_b_union_cell: bool,
    /// `C(s) ≠ B`.
    pub cell_differs_from_b: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplitReport {
    pub expected_u_order: u64,
    pub candidates_examined: u64,
    pub u_found: bool,
    pub u_order: Option<u64>,
    pub u_nilpotent: Option<bool>,
    pub u_meets_h_trivially: Option<bool>,
    pub u_h_product_is_b: Option<bool>,
    pub core_order: u64,
    pub core_equals_h: bool,
}

impl CheckMode {
    fn label(&self) -> &'static str {
        match self {
            CheckMode::Exhaustive => "exhaustive",
            CheckMode::Sampled { .. } => "sampled",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            CheckMode::Exhaustive => None,
            CheckMode::Sampled { seed, .. } => Some(*seed),
        }
    }
}

/// Greedy minimal set of involutions generating `w`, in ordinal order.
/// Returns an empty vector when no involution generating set exists.
fn fallback_involution_gens<E: GroupElement>(w: &FiniteGroup<E>) -> Vec<u32> {
    let order = w.order();
    let mut chosen: Vec<u32> = Vec::new();
    let mut span = 1u64;
    for x in 0..order as u32 {
        if span == order {
            break;
        }
        if w.element_order(x) != 2 {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(x);
        let grown = w.generated_order(&trial);
        if grown > span {
            chosen = trial;
            span = grown;
        }
    }
    if span != order {
        return Vec::new();
    }
    let mut i = 0;
    while i < chosen.len() {
        let mut trial = chosen.clone();
        trial.remove(i);
        if !trial.is_empty() && w.generated_order(&trial) == order {
            chosen = trial;
        } else {
            i += 1;
        }
    }
    chosen
}

/// Word lengths over `s` by breadth-first search of the Cayley graph.
fn weyl_lengths<E: GroupElement>(w: &FiniteGroup<E>, s: &[u32]) -> Vec<u32> {
    let mut len = vec![u32::MAX; w.order() as usize];
    let mut queue = VecDeque::new();
    len[w.identity_ord() as usize] = 0;
    queue.push_back(w.identity_ord());
    while let Some(x) = queue.pop_front() {
        for &g in s {
            let y = w.mul_ord(x, g);
            if len[y as usize] == u32::MAX {
                len[y as usize] = len[x as usize] + 1;
                queue.push_back(y);
            }
        }
    }
    len
}

fn length_histogram(lengths: &[u32]) -> Vec<(u32, u64)> {
    let mut hist: Vec<(u32, u64)> = Vec::new();
    let mut sorted = lengths.to_vec();
    sorted.sort_unstable();
    for l in sorted {
        match hist.last_mut() {
            Some((v, c)) if *v == l => *c += 1,
            _ => hist.push((l, 1)),
        }
    }
    hist
}

/// Certificate search over the configured types, then the involution
/// fallback. Returns `(s_ordinals, certificate_json, type_name, fallback)`.
fn select_s<E: GroupElement>(
    w: &FiniteGroup<E>,
    types: &[CoxeterTypeData],
    budget: usize,
) -> Result<(Vec<u32>, Option<serde_json::Value>, Option<String>, bool)> {
    for t in types {
        if let Some(cert) = coxeter::find_certificate(w, t, budget)? {
            let name = cert.type_name.clone();
            let json = cert.to_json();
            return Ok((cert.generator_ordinals, Some(json), Some(name), false));
        }
    }
    Ok((fallback_involution_gens(w), None, None, true))
}

struct CellScan {
    scan: ScanReport,
    cells: CellReport,
}

fn new_cell_scan(mode: &CheckMode) -> CellScan {
    CellScan {
        scan: ScanReport {
            mode: mode.label().into(),
            checked: 0,
            failures: 0,
            holds: true,
            counterexamples: Vec::new(),
            seed: mode.seed(),
        },
        cells: CellReport {
            ascent_checked: 0,
            ascent_failures: 0,
            ascent_counterexample: None,
            descent_checked: 0,
            descent_failures: 0,
            descent_counterexample: None,
            length_ties: 0,
            quadratic: Vec::new(),
        },
    }
}

impl CellScan {
    fn record_product(&mut self, class: u32, d_w: u32, d_sw: u32, context: impl Fn() -> String) {
        self.scan.checked += 1;
        if class != d_w && class != d_sw {
            self.scan.failures += 1;
            if self.scan.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.scan.counterexamples.push(context());
            }
        }
    }

    /// Set-equality verdict for one fully scanned `(s, w)` pair.
    fn record_pair(
        &mut self,
        d_set: &[u32],
        ascent: bool,
        tie: bool,
        d_w: u32,
        d_sw: u32,
        context: impl Fn() -> String,
    ) {
        if tie {
            self.cells.length_ties += 1;
            return;
        }
        let mut expected: Vec<u32> = if ascent { vec![d_sw] } else { vec![d_w, d_sw] };
        expected.sort_unstable();
        expected.dedup();
        let mut actual = d_set.to_vec();
        actual.sort_unstable();
        let ok = actual == expected;
        if ascent {
            self.cells.ascent_checked += 1;
            if !ok {
                self.cells.ascent_failures += 1;
                if self.cells.ascent_counterexample.is_none() {
                    self.cells.ascent_counterexample = Some(context());
                }
            }
        } else {
            self.cells.descent_checked += 1;
            if !ok {
                self.cells.descent_failures += 1;
                if self.cells.descent_counterexample.is_none() {
                    self.cells.descent_counterexample = Some(context());
                }
            }
        }
    }

    /// Membership-only verdict for one sampled product.
    fn record_sampled_cell(&mut self, class: u32, ascent: bool, tie: bool, d_w: u32, d_sw: u32) {
        if tie {
            self.cells.length_ties += 1;
            return;
        }
        if ascent {
            self.cells.ascent_checked += 1;
            if class != d_sw {
                self.cells.ascent_failures += 1;
            }
        } else {
            self.cells.descent_checked += 1;
            if class != d_w && class != d_sw {
                self.cells.descent_failures += 1;
            }
        }
    }

    fn finish(mut self) -> (ScanReport, CellReport) {
        self.scan.holds = self.scan.failures == 0;
        (self.scan, self.cells)
    }
}

/// Runs the full check battery on an explicitly enumerated pair.
pub fn verify_pair<E: GroupElement>(spec: &PairSpec<'_, E>, mode: CheckMode) -> Result<BNReport> {
    let g = spec.g;
    let b = spec.b;
    let n = spec.n.as_ref();
    if !g.contains_group(b) || !g.contains_group(n) {
        return Err(Error::NotASubgroup);
    }
    let mut notes: Vec<String> = Vec::new();

    let ord_in_g = |e: &E| -> u32 {
        g.ord_of_key(&e.key()).expect("element of a subgroup lies in the ambient group")
    };

    // Generation.
    let mut gen_ords: Vec<u32> = Vec::new();
    for e in b.generator_elements().iter().chain(n.generator_elements().iter()) {
        gen_ords.push(ord_in_g(e));
    }
    let generated_order = g.generated_order(&gen_ords);
    let generation =
        GenerationReport { generated_order, generates: generated_order == g.order() };
    if !generation.generates {
        notes.push(format!(
            "B and N generate a subgroup of order {generated_order}, not the ambient {}",
            g.order()
        ));
    }

    // H, computed and claimed.
    let computed_h = b.intersection(n)?;
    let computed_normal_in_n = n.is_normal(&computed_h)?;
    let computed_normal_in_g = g.is_normal(&computed_h)?;
    let mut equals_claimed = None;
    if let Some(claimed) = spec.claimed_h {
        let equal =
            claimed.order() == computed_h.order() && computed_h.contains_group(claimed);
        equals_claimed = Some(equal);
        if !equal {
            let claimed_extra = claimed
                .elements()
                .iter()
                .find(|e| !computed_h.membership(e))
                .map(|e| ord_in_g(e));
            let computed_extra = computed_h
                .elements()
                .iter()
                .find(|e| !claimed.membership(e))
                .map(|e| ord_in_g(e));
            notes.push(format!(
                "claimed H (order {}) differs from computed B ∩ N (order {}): \
                 claimed-only ambient ordinal {:?}, computed-only ambient ordinal {:?}",
                claimed.order(),
                computed_h.order(),
                claimed_extra,
                computed_extra
            ));
        }
    }
    let h_used: &FiniteGroup<E> = spec.claimed_h.unwrap_or(&computed_h);
    let axioms_use = if spec.claimed_h.is_some() { "claimed" } else { "computed" };

    let h_in_n = n.contains_group(h_used);
    let used_normal_in_n = h_in_n && n.is_normal(h_used)?;
    let used_normal_in_g = g.contains_group(h_used) && g.is_normal(h_used)?;
    let h_report = HReport {
        computed_order: computed_h.order(),
        computed_normal_in_n,
        computed_normal_in_g,
        claimed_order: spec.claimed_h.map(|h| h.order()),
        equals_claimed,
        axioms_use: axioms_use.into(),
        used_order: h_used.order(),
        used_cyclic: h_used.is_cyclic(),
        used_exponent: h_used.exponent(),
        used_normal_in_n,
        used_normal_in_g,
    };

    let mut report = BNReport {
        pair: spec.name.into(),
        ambient_order: g.order(),
        b_order: b.order(),
        n_order: n.order(),
        generation,
        h: h_report,
        w: None,
        axiom_i: None,
        axiom_ii: Vec::new(),
        bruhat: None,
        cells: None,
        split: None,
        notes,
    };

    if !h_in_n {
        report.notes.push("the H in use is not contained in N; no Weyl quotient exists".into());
        return Ok(report);
    }
    if !used_normal_in_n {
        report.notes.push("the H in use is not normal in N; no Weyl quotient exists".into());
        return Ok(report);
    }

    // Weyl quotient and S.
    let w_q = quotient(spec.n, h_used)?;
    let (s_qords, cert_json, cert_type, s_from_fallback) =
        select_s(&w_q, spec.s_types, spec.cert_budget)?;
    let mut w_report = WReport {
        order: w_q.order(),
        claimed_order: spec.claimed_w_order,
        matches_claimed_order: spec.claimed_w_order.map(|c| c == w_q.order()),
        certificate: cert_json,
        certificate_type: cert_type,
        s_size: s_qords.len(),
        s_from_fallback,
        length_histogram: Vec::new(),
        reference_name: None,
        reference_isomorphic: None,
    };
    if let Some((ref_name, ref_group)) = spec.w_reference {
        w_report.reference_name = Some(ref_name.into());
        w_report.reference_isomorphic = match crate::group::find_isomorphism(
            &w_q,
            ref_group,
            spec.cert_budget,
        ) {
            Ok(found) => Some(found.is_some()),
            Err(Error::BudgetExceeded { .. }) => {
                report.notes.push(format!(
                    "isomorphism search against {ref_name} exceeded its budget"
                ));
                None
            }
            Err(e) => return Err(e),
        };
    }
    if s_qords.is_empty() {
        w_report.length_histogram = vec![];
        report.w = Some(w_report);
        report
            .notes
            .push("the Weyl quotient has no generating set of involutions; axioms skipped".into());
        return Ok(report);
    }
    let lengths = weyl_lengths(&w_q, &s_qords);
    w_report.length_histogram = length_histogram(&lengths);
    report.w = Some(w_report);

    // Ambient-ordinal tables.
    let w_rep_g: Vec<u32> =
        w_q.elements().iter().map(|c| ord_in_g(c.representative())).collect();
    let b_ords: Vec<u32> = b.elements().iter().map(&ord_in_g).collect();
    let h_ords: Vec<u32> = h_used.elements().iter().map(&ord_in_g).collect();
    let mut b_mask = vec![false; g.order() as usize];
    for &x in &b_ords {
        b_mask[x as usize] = true;
    }

    // Double-coset partition of G under (B, B).
    let dc = g.double_cosets(b, b)?;
    let class_of = |ord: u32| dc.coset_of[ord as usize];
    let id_class = class_of(g.identity_ord());

    // Bruhat fiber map.
    let mut well_defined = true;
    let mut well_example = None;
    'outer: for (wi, &wg) in w_rep_g.iter().enumerate() {
        let d = class_of(wg);
        for &h in &h_ords {
            let y = g.mul_ord(wg, h);
            if class_of(y) != d {
                well_defined = false;
                well_example = Some(format!(
                    "coset {wi}: representative (ambient ordinal {wg}) lies in class {d} but \
                     representative times H member (ambient ordinal {h}) lies in class {}",
                    class_of(y)
                ));
                break 'outer;
            }
        }
    }
    let fibers: Vec<u32> = w_rep_g.iter().map(|&wg| class_of(wg)).collect();
    let mut distinct = fibers.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let fiber_injective = distinct.len() == fibers.len();
    let fiber_surjective = distinct.len() == dc.count();
    let index_bound = g.order() / b.order();
    report.bruhat = Some(BruhatReport {
        double_coset_count: dc.count() as u64,
        w_order: w_q.order(),
        fiber_well_defined: well_defined,
        well_defined_counterexample: well_example,
        fiber_injective,
        fiber_surjective,
        bijective: well_defined && fiber_injective && fiber_surjective,
        index_bound,
        within_index_bound: dc.count() as u64 <= index_bound,
        sizes_sum: dc.sizes.iter().sum(),
    });

    // Axiom (ii) witnesses.
    for (si, &s_q) in s_qords.iter().enumerate() {
        let s_g = w_rep_g[s_q as usize];
        let mut witness = None;
        for (bi, &x) in b_ords.iter().enumerate() {
            let t = g.mul_ord(g.mul_ord(s_g, x), s_g);
            if !b_mask[t as usize] {
                witness = Some(bi as u32);
                break;
            }
        }
        report.axiom_ii.push(InvolutionWitness {
            s_index: si,
            holds: witness.is_some(),
            witness_b_index: witness,
        });
    }

    // Axiom (i) and cell rules.
    let mut cs = new_cell_scan(&mode);
    match mode {
        CheckMode::Exhaustive => {
            for (si, &s_q) in s_qords.iter().enumerate() {
                let s_g = w_rep_g[s_q as usize];
                let srow: Vec<u32> = b_ords.iter().map(|&x| g.mul_ord(s_g, x)).collect();
                for w_ord in 0..w_q.order() as u32 {
                    let w_g = w_rep_g[w_ord as usize];
                    let sw = w_q.mul_ord(s_q, w_ord);
                    let d_w = class_of(w_g);
                    let d_sw = class_of(w_rep_g[sw as usize]);
                    let ascent = lengths[sw as usize] > lengths[w_ord as usize];
                    let tie = lengths[sw as usize] == lengths[w_ord as usize];
                    let mut d_set: Vec<u32> = Vec::with_capacity(2);
                    for (bi, &sx) in srow.iter().enumerate() {
                        let c = class_of(g.mul_ord(sx, w_g));
                        if !d_set.contains(&c) {
                            d_set.push(c);
                        }
                        cs.record_product(c, d_w, d_sw, || {
                            format!(
                                "s#{si} w={w_ord} b#{bi}: product class {c}, allowed {{{d_w}, {d_sw}}}"
                            )
                        });
                    }
                    cs.record_pair(&d_set, ascent, tie, d_w, d_sw, || {
                        format!(
                            "s#{si} w={w_ord}: product classes {d_set:?}, l(w)={} l(sw)={}",
                            lengths[w_ord as usize], lengths[sw as usize]
                        )
                    });
                }
            }
        }
        CheckMode::Sampled { triples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..triples {
                let si = rng.gen_range(0..s_qords.len());
                let w_ord = rng.gen_range(0..w_q.order() as u32);
                let bi = rng.gen_range(0..b_ords.len());
                let s_q = s_qords[si];
                let s_g = w_rep_g[s_q as usize];
                let w_g = w_rep_g[w_ord as usize];
                let sw = w_q.mul_ord(s_q, w_ord);
                let d_w = class_of(w_g);
                let d_sw = class_of(w_rep_g[sw as usize]);
                let ascent = lengths[sw as usize] > lengths[w_ord as usize];
                let tie = lengths[sw as usize] == lengths[w_ord as usize];
                let c = class_of(g.mul_ord(g.mul_ord(s_g, b_ords[bi]), w_g));
                cs.record_product(c, d_w, d_sw, || {
                    format!(
                        "s#{si} w={w_ord} b#{bi}: product class {c}, allowed {{{d_w}, {d_sw}}}"
                    )
                });
                cs.record_sampled_cell(c, ascent, tie, d_w, d_sw);
            }
        }
    }
    // Quadratic rule, always exhaustive: one row per s.
    for (si, &s_q) in s_qords.iter().enumerate() {
        let s_g = w_rep_g[s_q as usize];
        let d_s = class_of(s_g);
        let mut d_set: Vec<u32> = Vec::with_capacity(2);
        for &x in &b_ords {
            let c = class_of(g.mul_ord(g.mul_ord(s_g, x), s_g));
            if !d_set.contains(&c) {
                d_set.push(c);
            }
        }
        d_set.sort_unstable();
        let mut expected = vec![id_class, d_s];
        expected.sort_unstable();
        expected.dedup();
        cs.cells.quadratic.push(QuadraticCell {
            s_index: si,
            product_is_b_union_cell: d_set == expected,
            cell_differs_from_b: d_s != id_class,
        });
    }
    let (scan, cells) = cs.finish();
    report.axiom_i = Some(scan);
    report.cells = Some(cells);

    // Saturation axioms.
    if spec.check_split {
        report.split = Some(split_axioms(g, b, n, h_used, &b_ords, &h_ords, &mut report.notes)?);
    }

    Ok(report)
}

/// Axiom (iii): a normal nilpotent `U ≤ B` with `U ∩ H = 1` and `UH = B`;
/// axiom (iv): the `N`-core of `B` equals `H`.
fn split_axioms<E: GroupElement>(
    g: &FiniteGroup<E>,
    b: &FiniteGroup<E>,
    n: &FiniteGroup<E>,
    h_used: &FiniteGroup<E>,
    b_ords: &[u32],
    h_ords: &[u32],
    notes: &mut Vec<String>,
) -> Result<SplitReport> {
    let expected = if h_used.order() != 0 && b.order() % h_used.order() == 0 {
        b.order() / h_used.order()
    } else {
        0
    };
    let mut examined = 0u64;
    let mut found: Option<FiniteGroup<E>> = None;
    if expected >= 1 {
        let candidates = match b.normal_subgroups(expected, 4096) {
            Ok(c) => c,
            Err(Error::BudgetExceeded { found, limit }) => {
                notes.push(format!(
                    "normal-subgroup scan of B aborted after {found} of {limit} tracked; \
                     the complement verdict is incomplete"
                ));
                Vec::new()
            }
            Err(e) => return Err(e),
        };
        examined = candidates.len() as u64;
        for u in candidates {
            let nilpotent = u.is_nilpotent();
            let meets_trivially =
                u.elements().iter().filter(|e| h_used.membership(e)).count() == 1;
            if nilpotent && meets_trivially {
                found = Some(u);
                break;
            }
        }
    }
    let (u_order, u_nilpotent, u_meets_h_trivially, u_h_product_is_b) = match &found {
        Some(u) => {
            let mut product: HashSet<E::Key> = HashSet::new();
            for ue in u.elements() {
                for he in h_used.elements() {
                    product.insert(ue.mul(he).key());
                }
            }
            let is_b = product.len() as u64 == b.order()
                && product.iter().all(|k| b.ord_of_key(k).is_some());
            (Some(u.order()), Some(true), Some(true), Some(is_b))
        }
        None => (None, None, None, None),
    };

    // N-core of B: iteratively discard members whose conjugate under some
    // generator of N escapes the survivor set. At the fixpoint the set is
    // invariant under every generator, hence under all of N.
    let n_gen_ords: Vec<u32> = n
        .generator_elements()
        .iter()
        .map(|e| g.ord_of_key(&e.key()).expect("generator of a subgroup of G"))
        .collect();
    let mut members = vec![false; g.order() as usize];
    for &x in b_ords {
        members[x as usize] = true;
    }
    let mut core: Vec<u32> = b_ords.to_vec();
    loop {
        let mut changed = false;
        for &ng in &n_gen_ords {
            let ngi = g.inverse_ord(ng);
            let before = core.len();
            core.retain(|&x| {
                let z = g.mul_ord(g.mul_ord(ngi, x), ng);
                members[z as usize]
            });
            if core.len() != before {
                changed = true;
                let mut fresh = vec![false; g.order() as usize];
                for &x in &core {
                    fresh[x as usize] = true;
                }
                members = fresh;
            }
        }
        if !changed {
            break;
        }
    }
    let h_set: HashSet<u32> = h_ords.iter().copied().collect();
    let core_equals_h =
        core.len() == h_set.len() && core.iter().all(|x| h_set.contains(x));
    Ok(SplitReport {
        expected_u_order: expected,
        candidates_examined: examined,
        u_found: found.is_some(),
        u_order,
        u_nilpotent,
        u_meets_h_trivially,
        u_h_product_is_b,
        core_order: core.len() as u64,
        core_equals_h,
    })
}

/// Runs the battery through the symplectic reduction.
///
/// Soundness: write `π` for the symplectic map on the table group
/// `G = ⟨g_table_gens⟩` with kernel `K`. The premises checked below are
/// `K ⊆ B` (counted inside `b_tables`), `claimed H = K` as sets, and
/// `π(B) = b_image`, `π(G) = sp_g` by generation. Then `BxB ↦ π(B)π(x)π(B)`
/// is a bijection between double cosets upstairs and downstairs, `x ∈ B`
/// iff `π(x) ∈ π(B)`, and `W = N/K ≅ n_image`, so every axiom decision made
/// on the image is exact for the table group.
pub fn verify_reduced_pair(spec: &ReducedPairSpec<'_>, mode: CheckMode) -> Result<BNReport> {
    let sp_g = spec.sp_g;
    let mut notes: Vec<String> = Vec::new();

    // Reduction premises.
    let kernel_tables: Vec<&CliffordActionTable> =
        spec.b_tables.elements().iter().filter(|t| t.sp_bits().is_identity()).collect();
    if kernel_tables.len() as u64 != spec.kernel_order {
        return Err(Error::Malformed(format!(
            "B contains {} kernel tables, expected the full kernel of order {}",
            kernel_tables.len(),
            spec.kernel_order
        )));
    }
    if spec.claimed_h.order() != spec.kernel_order
        || !kernel_tables.iter().all(|t| spec.claimed_h.membership(t))
    {
        return Err(Error::Malformed(
            "the reduced verifier requires the claimed H to be exactly the reduction kernel"
                .into(),
        ));
    }
    if spec.b_tables.order() != spec.b_image.order() * spec.kernel_order {
        return Err(Error::Malformed(format!(
            "|B| = {} does not equal |π(B)| × |K| = {} × {}",
            spec.b_tables.order(),
            spec.b_image.order(),
            spec.kernel_order
        )));
    }
    notes.push(format!(
        "symplectic reduction: kernel of order {} verified inside B; double cosets and \
         memberships decided on the image",
        spec.kernel_order
    ));

    let ambient_order = sp_g.order() * spec.kernel_order;
    let n_order = spec.n_image.order() * spec.kernel_order;

    let sp_ord = |m: &SymplecticMatrix| -> u32 {
        sp_g.ord_of_key(&m.key()).expect("image element lies in the enumerated image group")
    };

    // Generation at image level.
    let mut gen_ords: Vec<u32> = Vec::new();
    for e in spec.b_image.generator_elements().iter() {
        gen_ords.push(sp_ord(e));
    }
    for e in spec.n_image.generator_elements().iter() {
        gen_ords.push(sp_ord(e));
    }
    let generated_image = sp_g.generated_order(&gen_ords);
    let generation = GenerationReport {
        generated_order: generated_image * spec.kernel_order,
        generates: generated_image == sp_g.order(),
    };

    // H at table level: members of B whose image lies in the image of N.
    let h_elements: Vec<CliffordActionTable> = spec
        .b_tables
        .elements()
        .iter()
        .filter(|t| spec.n_image.ord_of_key(&t.sp_bits().key_u128()).is_some())
        .cloned()
        .collect();
    let computed_h = crate::group::from_elements(h_elements)?;
    let normal_under = |h: &FiniteGroup<CliffordActionTable>,
                        gens: &[CliffordActionTable]|
     -> bool {
        gens.iter().all(|gen| {
            let gi = gen.inverse();
            h.elements().iter().all(|x| h.membership(&gen.compose(x).compose(&gi)))
        })
    };
    let computed_normal_in_n = normal_under(&computed_h, spec.n_table_gens);
    let computed_normal_in_g = normal_under(&computed_h, spec.g_table_gens);
    let equals_claimed = spec.claimed_h.order() == computed_h.order()
        && computed_h.contains_group(spec.claimed_h);
    if !equals_claimed {
        notes.push(format!(
            "claimed H (order {}) differs from computed B ∩ N (order {}); axioms run with \
             the claimed subgroup",
            spec.claimed_h.order(),
            computed_h.order()
        ));
    }
    let h_report = HReport {
        computed_order: computed_h.order(),
        computed_normal_in_n,
        computed_normal_in_g,
        claimed_order: Some(spec.claimed_h.order()),
        equals_claimed: Some(equals_claimed),
        axioms_use: "claimed".into(),
        used_order: spec.claimed_h.order(),
        used_cyclic: spec.claimed_h.is_cyclic(),
        used_exponent: spec.claimed_h.exponent(),
        used_normal_in_n: normal_under(spec.claimed_h, spec.n_table_gens),
        used_normal_in_g: normal_under(spec.claimed_h, spec.g_table_gens),
    };

    let mut report = BNReport {
        pair: spec.name.into(),
        ambient_order,
        b_order: spec.b_tables.order(),
        n_order,
        generation,
        h: h_report,
        w: None,
        axiom_i: None,
        axiom_ii: Vec::new(),
        bruhat: None,
        cells: None,
        split: None,
        notes,
    };

    // W is the image of N; S by certificate or fallback.
    let w_q = spec.n_image;
    let (s_qords, cert_json, cert_type, s_from_fallback) =
        select_s(w_q, spec.s_types, spec.cert_budget)?;
    let mut w_report = WReport {
        order: w_q.order(),
        claimed_order: spec.claimed_w_order,
        matches_claimed_order: spec.claimed_w_order.map(|c| c == w_q.order()),
        certificate: cert_json,
        certificate_type: cert_type,
        s_size: s_qords.len(),
        s_from_fallback,
        length_histogram: Vec::new(),
        reference_name: None,
        reference_isomorphic: None,
    };
    if s_qords.is_empty() {
        report.w = Some(w_report);
        report
            .notes
            .push("the Weyl quotient has no generating set of involutions; axioms skipped".into());
        return Ok(report);
    }
    let lengths = weyl_lengths(w_q, &s_qords);
    w_report.length_histogram = length_histogram(&lengths);
    report.w = Some(w_report);

    // Left-coset point space sp_g / b_image.
    let b_ords_sp: Vec<u32> = spec.b_image.elements().iter().map(&sp_ord).collect();
    let mut b_mask = vec![false; sp_g.order() as usize];
    for &x in &b_ords_sp {
        b_mask[x as usize] = true;
    }
    let mut point_of = vec![u32::MAX; sp_g.order() as usize];
    let mut transversal: Vec<u32> = Vec::new();
    {
        let fill = |rep: u32, id: u32, point_of: &mut Vec<u32>| {
            for &s in &b_ords_sp {
                point_of[sp_g.mul_ord(rep, s) as usize] = id;
            }
        };
        transversal.push(sp_g.identity_ord());
        fill(sp_g.identity_ord(), 0, &mut point_of);
        let mut next = 0usize;
        while next < transversal.len() {
            let t = transversal[next];
            next += 1;
            for &gen in sp_g.generator_ords() {
                let u = sp_g.mul_ord(gen, t);
                if point_of[u as usize] == u32::MAX {
                    let id = transversal.len() as u32;
                    transversal.push(u);
                    fill(u, id, &mut point_of);
                }
            }
        }
    }
    let points = transversal.len();
    debug_assert_eq!(points as u64 * spec.b_image.order(), sp_g.order());

    // Double cosets = orbits of B acting on the left of the point space.
    let b_gen_perms: Vec<Vec<u32>> = spec
        .b_image
        .generator_elements()
        .iter()
        .map(|e| {
            let o = sp_ord(e);
            (0..points)
                .map(|p| point_of[sp_g.mul_ord(o, transversal[p]) as usize])
                .collect()
        })
        .collect();
    let mut orbit_of = vec![u32::MAX; points];
    let mut orbit_sizes: Vec<u64> = Vec::new();
    for start in 0..points {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let id = orbit_sizes.len() as u32;
        let mut stack = vec![start as u32];
        orbit_of[start] = id;
        let mut size = 0u64;
        while let Some(p) = stack.pop() {
            size += 1;
            for perm in &b_gen_perms {
                let q = perm[p as usize];
                if orbit_of[q as usize] == u32::MAX {
                    orbit_of[q as usize] = id;
                    stack.push(q);
                }
            }
        }
        orbit_sizes.push(size);
    }
    let class_count = orbit_sizes.len();
    let id_class = orbit_of[point_of[sp_g.identity_ord() as usize] as usize];

    // Point permutations of every element of the image of B, and of each s.
    let sigma_perms: Vec<Vec<u32>> = b_ords_sp
        .iter()
        .map(|&o| {
            (0..points)
                .map(|p| point_of[sp_g.mul_ord(o, transversal[p]) as usize])
                .collect()
        })
        .collect();
    let n_ords_sp: Vec<u32> = w_q.elements().iter().map(&sp_ord).collect();
    let s_perms: Vec<Vec<u32>> = s_qords
        .iter()
        .map(|&s_q| {
            let o = n_ords_sp[s_q as usize];
            (0..points)
                .map(|p| point_of[sp_g.mul_ord(o, transversal[p]) as usize])
                .collect()
        })
        .collect();
    let p_w: Vec<u32> = n_ords_sp.iter().map(|&o| point_of[o as usize]).collect();

    // Bruhat census. Representatives of one W element differ by kernel
    // members, which lie inside B, so the fiber map is well defined.
    let fibers: Vec<u32> = p_w.iter().map(|&p| orbit_of[p as usize]).collect();
    let mut distinct = fibers.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let sizes_sum: u64 = orbit_sizes.iter().map(|s| s * spec.b_tables.order()).sum();
    report.bruhat = Some(BruhatReport {
        double_coset_count: class_count as u64,
        w_order: w_q.order(),
        fiber_well_defined: true,
        well_defined_counterexample: None,
        fiber_injective: distinct.len() == fibers.len(),
        fiber_surjective: distinct.len() == class_count,
        bijective: distinct.len() == fibers.len() && distinct.len() == class_count,
        index_bound: points as u64,
        within_index_bound: class_count as u64 <= points as u64,
        sizes_sum,
    });

    // Axiom (ii) on the image: membership in B is membership in its image.
    for (si, &s_q) in s_qords.iter().enumerate() {
        let s_o = n_ords_sp[s_q as usize];
        let mut witness = None;
        for (bi, &x) in b_ords_sp.iter().enumerate() {
            let t = sp_g.mul_ord(sp_g.mul_ord(s_o, x), s_o);
            if !b_mask[t as usize] {
                witness = Some(bi as u32);
                break;
            }
        }
        report.axiom_ii.push(InvolutionWitness {
            s_index: si,
            holds: witness.is_some(),
            witness_b_index: witness,
        });
    }

    // Axiom (i) and cell rules via point arithmetic:
    // the point of (s σ w)B is s_perm[σ_perm[p_w]].
    let mut cs = new_cell_scan(&mode);
    match mode {
        CheckMode::Exhaustive => {
            for (si, s_perm) in s_perms.iter().enumerate() {
                for w_ord in 0..w_q.order() as u32 {
                    let sw = w_q.mul_ord(s_qords[si], w_ord);
                    let d_w = orbit_of[p_w[w_ord as usize] as usize];
                    let d_sw = orbit_of[s_perm[p_w[w_ord as usize] as usize] as usize];
                    let ascent = lengths[sw as usize] > lengths[w_ord as usize];
                    let tie = lengths[sw as usize] == lengths[w_ord as usize];
                    let mut d_set: Vec<u32> = Vec::with_capacity(2);
                    for (bi, sigma_perm) in sigma_perms.iter().enumerate() {
                        let c = orbit_of
                            [s_perm[sigma_perm[p_w[w_ord as usize] as usize] as usize] as usize];
                        if !d_set.contains(&c) {
                            d_set.push(c);
                        }
                        cs.record_product(c, d_w, d_sw, || {
                            format!(
                                "s#{si} w={w_ord} b#{bi}: product class {c}, allowed {{{d_w}, {d_sw}}}"
                            )
                        });
                    }
                    cs.record_pair(&d_set, ascent, tie, d_w, d_sw, || {
                        format!(
                            "s#{si} w={w_ord}: product classes {d_set:?}, l(w)={} l(sw)={}",
                            lengths[w_ord as usize], lengths[sw as usize]
                        )
                    });
                }
            }
        }
        CheckMode::Sampled { triples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..triples {
                let si = rng.gen_range(0..s_perms.len());
                let w_ord = rng.gen_range(0..w_q.order() as u32);
                let bi = rng.gen_range(0..sigma_perms.len());
                let sw = w_q.mul_ord(s_qords[si], w_ord);
                let d_w = orbit_of[p_w[w_ord as usize] as usize];
                let d_sw = orbit_of[s_perms[si][p_w[w_ord as usize] as usize] as usize];
                let ascent = lengths[sw as usize] > lengths[w_ord as usize];
                let tie = lengths[sw as usize] == lengths[w_ord as usize];
                let c = orbit_of
                    [s_perms[si][sigma_perms[bi][p_w[w_ord as usize] as usize] as usize] as usize];
                cs.record_product(c, d_w, d_sw, || {
                    format!(
                        "s#{si} w={w_ord} b#{bi}: product class {c}, allowed {{{d_w}, {d_sw}}}"
                    )
                });
                cs.record_sampled_cell(c, ascent, tie, d_w, d_sw);
            }
        }
    }
    for (si, s_perm) in s_perms.iter().enumerate() {
        let p_s = p_w[s_qords[si] as usize];
        let d_s = orbit_of[p_s as usize];
        let mut d_set: Vec<u32> = Vec::with_capacity(2);
        for sigma_perm in &sigma_perms {
            let c = orbit_of[s_perm[sigma_perm[p_s as usize] as usize] as usize];
            if !d_set.contains(&c) {
                d_set.push(c);
            }
        }
        d_set.sort_unstable();
        let mut expected = vec![id_class, d_s];
        expected.sort_unstable();
        expected.dedup();
        cs.cells.quadratic.push(QuadraticCell {
            s_index: si,
            product_is_b_union_cell: d_set == expected,
            cell_differs_from_b: d_s != id_class,
        });
    }
    let (scan, cells) = cs.finish();
    report.axiom_i = Some(scan);
    report.cells = Some(cells);

    if spec.check_split {
        report.split = Some(reduced_split_axioms(spec, &mut report.notes)?);
    }

    Ok(report)
}

/// Saturation axioms at table level: `B` is enumerated there, and the
/// `N`-core fixpoint only ever conjugates members of `B`, so it never
/// needs the ambient group.
fn reduced_split_axioms(
    spec: &ReducedPairSpec<'_>,
    notes: &mut Vec<String>,
) -> Result<SplitReport> {
    let b = spec.b_tables;
    let h = spec.claimed_h;
    let expected = if b.order() % h.order() == 0 { b.order() / h.order() } else { 0 };
    let mut examined = 0u64;
    let mut found: Option<FiniteGroup<CliffordActionTable>> = None;
    if expected >= 1 {
        let candidates = match b.normal_subgroups(expected, 4096) {
            Ok(c) => c,
            Err(Error::BudgetExceeded { found, limit }) => {
                notes.push(format!(
                    "normal-subgroup scan of B aborted after {found} of {limit} tracked; \
                     the complement verdict is incomplete"
                ));
                Vec::new()
            }
            Err(e) => return Err(e),
        };
        examined = candidates.len() as u64;
        for u in candidates {
            let nilpotent = u.is_nilpotent();
            let meets_trivially = u.elements().iter().filter(|e| h.membership(e)).count() == 1;
            if nilpotent && meets_trivially {
                found = Some(u);
                break;
            }
        }
    }
    let (u_order, u_nilpotent, u_meets_h_trivially, u_h_product_is_b) = match &found {
        Some(u) => {
            let mut product: HashSet<u128> = HashSet::new();
            for ue in u.elements() {
                for he in h.elements() {
                    product.insert(ue.compose(he).key_u128());
                }
            }
            let is_b = product.len() as u64 == b.order()
                && product.iter().all(|k| b.ord_of_key(k).is_some());
            (Some(u.order()), Some(true), Some(true), Some(is_b))
        }
        None => (None, None, None, None),
    };

    let mut core: Vec<CliffordActionTable> = b.elements().to_vec();
    let mut keys: HashSet<u128> = core.iter().map(|t| t.key_u128()).collect();
    loop {
        let mut changed = false;
        for gen in spec.n_table_gens {
            let gi = gen.inverse();
            let before = core.len();
            core.retain(|t| keys.contains(&gi.compose(t).compose(gen).key_u128()));
            if core.len() != before {
                changed = true;
                keys = core.iter().map(|t| t.key_u128()).collect();
            }
        }
        if !changed {
            break;
        }
    }
    let core_equals_h = core.len() as u64 == h.order()
        && core.iter().all(|t| h.membership(t));
    Ok(SplitReport {
        expected_u_order: expected,
        candidates_examined: examined,
        u_found: found.is_some(),
        u_order,
        u_nilpotent,
        u_meets_h_trivially,
        u_h_product_is_b,
        core_order: core.len() as u64,
        core_equals_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binmat::BinMatrix;
    use crate::clifford::{action_table, symplectic_of};
    use crate::coxeter::CoxeterType;
    use crate::gate::{gate, GateName};
    use crate::group::closure;
    use crate::perm;

    fn toy_spec<'a>(
        g: &'a FiniteGroup<BinMatrix>,
        b: &'a FiniteGroup<BinMatrix>,
        n: &'a Arc<FiniteGroup<BinMatrix>>,
        types: &'a [CoxeterTypeData],
    ) -> PairSpec<'a, BinMatrix> {
        PairSpec {
            name: "gl2f2-toy",
            g,
            b,
            n,
            claimed_h: None,
            claimed_w_order: Some(2),
            s_types: types,
            w_reference: None,
            check_split: true,
            cert_budget: 10_000,
        }
    }

    #[test]
    fn gl2f2_toy_pair_satisfies_every_axiom() {
        let upper = BinMatrix::new(2, &[0b11, 0b10]).unwrap();
        let swap = BinMatrix::new(2, &[0b10, 0b01]).unwrap();
        let g = closure(&[upper.clone(), swap.clone()], 10).unwrap();
        assert_eq!(g.order(), 6);
        let b = closure(&[upper], 4).unwrap();
        let n = Arc::new(closure(&[swap], 4).unwrap());
        let types = [CoxeterType::A(1).data()];
        let spec = toy_spec(&g, &b, &n, &types);
        let report = verify_pair(&spec, CheckMode::Exhaustive).unwrap();

        assert!(report.generation.generates);
        assert_eq!(report.h.computed_order, 1);
        let w = report.w.as_ref().unwrap();
        assert_eq!(w.order, 2);
        assert_eq!(w.certificate_type.as_deref(), Some("A1"));
        assert!(!w.s_from_fallback);
        assert_eq!(w.length_histogram, vec![(0, 1), (1, 1)]);
        let scan = report.axiom_i.as_ref().unwrap();
        assert_eq!(scan.mode, "exhaustive");
        assert_eq!(scan.checked, 4);
        assert!(scan.holds);
        assert!(report.axiom_ii.iter().all(|w| w.holds));
        let bruhat = report.bruhat.as_ref().unwrap();
        assert_eq!(bruhat.double_coset_count, 2);
        assert!(bruhat.bijective);
        assert!(bruhat.within_index_bound);
        assert_eq!(bruhat.sizes_sum, 6);
        let cells = report.cells.as_ref().unwrap();
        assert_eq!(cells.ascent_failures + cells.descent_failures, 0);
        assert_eq!(cells.length_ties, 0);
        assert!(cells.quadratic[0].product_is_b_union_cell);
        assert!(cells.quadratic[0].cell_differs_from_b);
        let split = report.split.as_ref().unwrap();
        assert_eq!(split.expected_u_order, 2);
        assert!(split.u_found);
        assert_eq!(split.core_order, 1);
        assert!(split.core_equals_h);
    }

    #[test]
    fn projective_line_pair_over_three_points_passes_with_computed_h() {
        // The symmetric group on four letters acting on the projective
        // line over the field with three elements: B fixes a point, N
        // stabilizes an unordered pair of points.
        let g = perm::symmetric(4);
        let b = closure(
            &[
                Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[vec![1, 2]]).unwrap(),
            ],
            10,
        )
        .unwrap();
        assert_eq!(b.order(), 6);
        let n = Arc::new(
            closure(
                &[
                    Permutation::from_cycles(4, &[vec![0, 3]]).unwrap(),
                    Permutation::from_cycles(4, &[vec![1, 2]]).unwrap(),
                ],
                10,
            )
            .unwrap(),
        );
        assert_eq!(n.order(), 4);
        let claimed = closure(&[Permutation::from_cycles(4, &[vec![1, 2]]).unwrap()], 4).unwrap();
        let types = [CoxeterType::A(1).data()];
        let spec = PairSpec {
            name: "pgl2f3",
            g: &g,
            b: &b,
            n: &n,
            claimed_h: Some(&claimed),
            claimed_w_order: Some(2),
            s_types: &types,
            w_reference: None,
            check_split: true,
            cert_budget: 10_000,
        };
        let report = verify_pair(&spec, CheckMode::Exhaustive).unwrap();

        assert!(report.generation.generates);
        assert_eq!(report.h.computed_order, 2);
        assert_eq!(report.h.equals_claimed, Some(true));
        assert!(report.h.used_normal_in_n);
        assert!(!report.h.used_normal_in_g);
        let w = report.w.as_ref().unwrap();
        assert_eq!(w.order, 2);
        assert_eq!(w.matches_claimed_order, Some(true));
        let scan = report.axiom_i.as_ref().unwrap();
        assert_eq!(scan.checked, 2 * 6);
        assert!(scan.holds);
        assert!(report.axiom_ii[0].holds);
        let bruhat = report.bruhat.as_ref().unwrap();
        assert!(bruhat.fiber_well_defined);
        assert!(bruhat.bijective);
        assert_eq!(bruhat.double_coset_count, 2);
        let cells = report.cells.as_ref().unwrap();
        assert_eq!(cells.ascent_failures + cells.descent_failures, 0);
        let split = report.split.as_ref().unwrap();
        assert_eq!(split.expected_u_order, 3);
        assert!(split.u_found);
        assert_eq!(split.u_order, Some(3));
        assert_eq!(split.u_h_product_is_b, Some(true));
        assert!(split.core_equals_h);
    }

    #[test]
    fn abelian_pair_fails_axiom_two_and_the_quadratic_rule() {
        let g = perm::z2_power(2);
        let a = g.element(1).clone();
        let c = g
            .elements()
            .iter()
            .find(|e| {
                let k = e.key();
                k != g.element(0).key() && k != a.key() && k != a.mul(&a).key()
            })
            .cloned()
            .unwrap();
        let b = closure(&[a], 4).unwrap();
        let n = Arc::new(closure(&[c], 4).unwrap());
        let types = [CoxeterType::A(1).data()];
        let spec = PairSpec {
            name: "abelian-degenerate",
            g: &g,
            b: &b,
            n: &n,
            claimed_h: None,
            claimed_w_order: None,
            s_types: &types,
            w_reference: None,
            check_split: false,
            cert_budget: 1_000,
        };
        let report = verify_pair(&spec, CheckMode::Exhaustive).unwrap();

        assert!(report.generation.generates);
        assert!(report.axiom_i.as_ref().unwrap().holds);
        assert!(!report.axiom_ii[0].holds, "conjugating B by s never leaves B here");
        let cells = report.cells.as_ref().unwrap();
        assert_eq!(cells.descent_failures, 1);
        assert!(!cells.quadratic[0].product_is_b_union_cell);
        assert!(cells.quadratic[0].cell_differs_from_b);
        let bruhat = report.bruhat.as_ref().unwrap();
        assert!(bruhat.bijective, "a census can look healthy while an axiom fails");
    }

    #[test]
    fn wrong_claimed_h_is_reported_and_fallback_s_kicks_in() {
        let g = perm::symmetric(4);
        let b = closure(
            &[
                Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[vec![1, 2]]).unwrap(),
            ],
            10,
        )
        .unwrap();
        let n = Arc::new(
            closure(
                &[
                    Permutation::from_cycles(4, &[vec![0, 3]]).unwrap(),
                    Permutation::from_cycles(4, &[vec![1, 2]]).unwrap(),
                ],
                10,
            )
            .unwrap(),
        );
        let trivial = closure(&[Permutation::identity(4)], 1).unwrap();
        let types = [CoxeterType::A(1).data()];
        let spec = PairSpec {
            name: "pgl2f3-trivial-h",
            g: &g,
            b: &b,
            n: &n,
            claimed_h: Some(&trivial),
            claimed_w_order: None,
            s_types: &types,
            w_reference: None,
            check_split: false,
            cert_budget: 10_000,
        };
        let report = verify_pair(&spec, CheckMode::Exhaustive).unwrap();

        assert_eq!(report.h.equals_claimed, Some(false));
        assert_eq!(report.h.axioms_use, "claimed");
        assert!(report.notes.iter().any(|n| n.contains("differs from computed")));
        let w = report.w.as_ref().unwrap();
        assert_eq!(w.order, 4, "quotient by the trivial subgroup is N itself");
        assert!(w.s_from_fallback);
        assert_eq!(w.s_size, 2);
        // With W too large the fiber map cannot be injective: 4 cosets
        // cannot map onto at most |G : B| = 4 classes injectively unless
        // the census happens to have 4 classes.
        let bruhat = report.bruhat.as_ref().unwrap();
        assert_eq!(bruhat.w_order, 4);
        assert!(!bruhat.bijective);
    }

    #[test]
    fn sampled_mode_is_reproducible_and_labeled() {
        let upper = BinMatrix::new(2, &[0b11, 0b10]).unwrap();
        let swap = BinMatrix::new(2, &[0b10, 0b01]).unwrap();
        let g = closure(&[upper.clone(), swap.clone()], 10).unwrap();
        let b = closure(&[upper], 4).unwrap();
        let n = Arc::new(closure(&[swap], 4).unwrap());
        let types = [CoxeterType::A(1).data()];
        let spec = toy_spec(&g, &b, &n, &types);
        let mode = CheckMode::Sampled { triples: 50, seed: 7 };
        let r1 = verify_pair(&spec, mode).unwrap();
        let r2 = verify_pair(&spec, mode).unwrap();
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap()
        );
        let scan = r1.axiom_i.as_ref().unwrap();
        assert_eq!(scan.mode, "sampled");
        assert_eq!(scan.seed, Some(7));
        assert_eq!(scan.checked, 50);
        assert!(scan.holds);
    }

    fn one_qubit_table(name: GateName) -> CliffordActionTable {
        action_table(&gate(name, 1, &[0]).unwrap()).unwrap()
    }

    #[test]
    fn reduced_verifier_agrees_with_the_rank_one_borel_pair() {
        // One-qubit tables: the ambient is the table quotient of the
        // Clifford group, B adds the phase gate to the Pauli kernel, N
        // adds the Hadamard. The image pair is the Borel pair of the
        // two-by-two linear group over the field with two elements.
        let x = one_qubit_table(GateName::X);
        let z = one_qubit_table(GateName::Z);
        let p = one_qubit_table(GateName::P);
        let h = one_qubit_table(GateName::H);

        let b_tables = closure(&[x.clone(), z.clone(), p.clone()], 100).unwrap();
        assert_eq!(b_tables.order(), 8);
        let claimed_h = closure(&[x.clone(), z.clone()], 100).unwrap();
        assert_eq!(claimed_h.order(), 4);

        let sp_of = |t: &CliffordActionTable| symplectic_of(t).unwrap();
        let sp_g = closure(&[sp_of(&p), sp_of(&h)], 100).unwrap();
        assert_eq!(sp_g.order(), 6);
        let b_image = closure(&[sp_of(&p)], 100).unwrap();
        assert_eq!(b_image.order(), 2);
        let n_image = closure(&[sp_of(&h)], 100).unwrap();
        assert_eq!(n_image.order(), 2);

        let n_table_gens = [x.clone(), z.clone(), h.clone()];
        let g_table_gens = [h.clone(), p.clone()];
        let types = [CoxeterType::A(1).data()];
        let spec = ReducedPairSpec {
            name: "one-qubit-borel",
            sp_g: &sp_g,
            b_image: &b_image,
            n_image: &n_image,
            kernel_order: 4,
            b_tables: &b_tables,
            n_table_gens: &n_table_gens,
            g_table_gens: &g_table_gens,
            claimed_h: &claimed_h,
            claimed_w_order: Some(2),
            s_types: &types,
            check_split: true,
            cert_budget: 10_000,
        };
        let report = verify_reduced_pair(&spec, CheckMode::Exhaustive).unwrap();

        assert_eq!(report.ambient_order, 24);
        assert_eq!(report.b_order, 8);
        assert_eq!(report.n_order, 8);
        assert!(report.generation.generates);
        assert_eq!(report.h.computed_order, 4);
        assert_eq!(report.h.equals_claimed, Some(true));
        assert!(report.h.used_normal_in_n);
        assert!(report.h.used_normal_in_g);
        let w = report.w.as_ref().unwrap();
        assert_eq!(w.order, 2);
        assert_eq!(w.certificate_type.as_deref(), Some("A1"));
        let scan = report.axiom_i.as_ref().unwrap();
        assert_eq!(scan.checked, 4);
        assert!(scan.holds);
        assert!(report.axiom_ii[0].holds);
        let bruhat = report.bruhat.as_ref().unwrap();
        assert_eq!(bruhat.double_coset_count, 2);
        assert!(bruhat.bijective);
        assert_eq!(bruhat.sizes_sum, 24);
        let cells = report.cells.as_ref().unwrap();
        assert_eq!(cells.ascent_failures + cells.descent_failures, 0);
        assert!(cells.quadratic[0].product_is_b_union_cell);
        let split = report.split.as_ref().unwrap();
        assert_eq!(split.expected_u_order, 2);
        assert!(
            !split.u_found,
            "no normal order-2 complement avoids the kernel in this dihedral B"
        );
        assert!(split.core_equals_h, "the N-core of B collapses exactly onto the kernel");
    }

    #[test]
    fn reduced_verifier_rejects_a_claimed_h_other_than_the_kernel() {
        let x = one_qubit_table(GateName::X);
        let z = one_qubit_table(GateName::Z);
        let p = one_qubit_table(GateName::P);
        let h = one_qubit_table(GateName::H);
        let b_tables = closure(&[x.clone(), z.clone(), p.clone()], 100).unwrap();
        let wrong_h = closure(&[z.clone()], 100).unwrap();
        let sp_of = |t: &CliffordActionTable| symplectic_of(t).unwrap();
        let sp_g = closure(&[sp_of(&p), sp_of(&h)], 100).unwrap();
        let b_image = closure(&[sp_of(&p)], 100).unwrap();
        let n_image = closure(&[sp_of(&h)], 100).unwrap();
        let n_table_gens = [x.clone(), z.clone(), h.clone()];
        let g_table_gens = [h.clone(), p.clone()];
        let types = [CoxeterType::A(1).data()];
        let spec = ReducedPairSpec {
            name: "bad-kernel",
            sp_g: &sp_g,
            b_image: &b_image,
            n_image: &n_image,
            kernel_order: 4,
            b_tables: &b_tables,
            n_table_gens: &n_table_gens,
            g_table_gens: &g_table_gens,
            claimed_h: &wrong_h,
            claimed_w_order: None,
            s_types: &types,
            check_split: false,
            cert_budget: 1_000,
        };
        assert!(matches!(
            verify_reduced_pair(&spec, CheckMode::Exhaustive),
            Err(Error::Malformed(_))
        ));
    }
}
