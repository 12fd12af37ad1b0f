//! Registry of quoted claims bound to executable checks.
//!
//! Each claim cites the statement it tests, lists the shared group
//! constructions it reads, and produces a [`ClaimReport`] whose verdict is
//! decided entirely by computation: `verified` and `refuted` come only from
//! exhaustive checks, `sampled-pass` from seeded sampling, and
//! `fingerprint-consistent` from invariant agreement short of isomorphism.

mod store;
mod surface;
mod three_qubit;
mod two_qubit;

pub use store::{F4Scan, GroupStore, HatStack, Index4Profile, CERT_BUDGET, ISO_BUDGET};

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::Value;

use crate::bn::{BNReport, CheckMode};
use crate::error::{Error, Result};
use crate::report::{ClaimReport, Verdict};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scale {
    Instant,
    Minutes,
    OptInHeavy,
}

impl Scale {
    pub fn label(self) -> &'static str {
        match self {
            Scale::Instant => "instant",
            Scale::Minutes => "minutes",
            Scale::OptInHeavy => "opt-in-heavy",
        }
    }
}

pub struct ClaimDef {
    pub id: &'static str,
    pub quote: &'static str,
    /// Store entries the check reads; recorded in the report as the cache
    /// keys the verdict depended on.
    pub depends_on: &'static [&'static str],
    pub scale: Scale,
    /// True when the exhaustive mode of this claim is a heavyweight opt-in
    /// and the default run samples instead.
    pub heavy_exhaustive: bool,
}

pub fn registry() -> &'static [ClaimDef] {
    &REGISTRY
}

static REGISTRY: [ClaimDef; 27] = [
    ClaimDef {
        id: "CLM-01",
        quote: "The weight enumerator of Type II codes is invariant under the group of order \
                192 generated by P and H, that is C1 itself",
        depends_on: &["c1"],
        scale: Scale::Instant,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-02",
        quote: "Both groups C2^L and B2 are subgroups of order 4608 (with index 20) and 15360 \
                (with index 6) of the Clifford group",
        depends_on: &["c2", "c2l"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-03",
        quote: "Both groups C2^L and B2 are subgroups of order 4608 (with index 20) and 15360 \
                (with index 6) of the Clifford group",
        depends_on: &["c2", "b2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-04",
        quote: "Their intersection is the Pauli group P2, of order 64, that is isomorphic to \
                the central product E32+ * Z4",
        depends_on: &["c2l", "b2", "p2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-05",
        quote: "isomorphic to the central product E32+ * Z4 (where E32+ is the extraspecial \
                2-group of order 32 and type +)",
        depends_on: &["p2", "e32"],
        scale: Scale::Instant,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-06",
        quote: "The Pauli group P2 is normal in the Clifford and Bell groups",
        depends_on: &["c2", "b2", "p2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-07",
        quote: "the quotients of C2 and B2 by the Pauli group P2 are isomorphic to g6 and \
                g5 := A5.Z2^2, respectively",
        depends_on: &["c2", "b2", "p2", "aut27"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-08",
        quote: "B is the unique subgroup of C2^L which is both of order 1152 and isomorphic to \
                the Coxeter group W(F4) of type F4 (the symmetry group of the 24-cell)",
        depends_on: &["c2l", "c2l-alt", "b2", "c2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-09",
        quote: "H is the center Z(B2) ... H == Z(B2) iso Z8",
        depends_on: &["b2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-10",
        quote: "W, of order 1920, is isomorphic to the Coxeter group W(D5) of type D5",
        depends_on: &["b2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-11",
        quote: "The above pair of groups is of the BN type seeing that conditions (i) and (ii) \
                are satisfied. Axiom (i) directly follows from the Coxeter group structure of W",
        depends_on: &["c2", "c2l", "b2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-12",
        quote: "The latter coset contains the entangling match gate R' = TRT, which lies in B2 \
                but not in C2^L",
        depends_on: &["c2l", "b2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-13",
        quote: "The mapping from w to C(w) = BwB is a bijection from W to the set B\\G/B of \
                double cosets of G along B",
        depends_on: &["c2", "c2l", "b2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-14",
        quote: "The BN pair does not split because there is no normal subgroup of order \
                |B|/|H| = 144 within the group B",
        depends_on: &["c2", "c2l", "b2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-15",
        quote: "C2-hat = <C2L-hat, B2-hat> iso U6, B2-hat iso M20 and C2L-hat iso W-hat(F4) \
                ... Group U6 = Z2^4 : A6, of order 5760 ... Group M20 = Z2^4 : A5, of order 960",
        depends_on: &["c2", "c2l", "b2", "p2", "aut27"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-16",
        quote: "the group C2-hat forms the split BN-pair B == C2L-hat, N == B2-hat, \
                H == P2-tilde iso Z2^4, W iso A5, and U iso Z3^2",
        depends_on: &["c2", "c2l", "b2", "p2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-17",
        quote: "M20 is the smallest perfect group for which the set of commutators departs \
                from the commutator subgroup",
        depends_on: &["c2", "b2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-18",
        quote: "are subgroups of index 6720 and 56, respectively, of the three-qubit Clifford \
                group (of order 743 178 240)",
        depends_on: &["c3-image", "c3-kernel"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-19",
        quote: "C3^L = {C1 x C1 x C1} ... are subgroups of index 6720 and 56, respectively, of \
                the three-qubit Clifford group",
        depends_on: &["c3-image", "c3-kernel", "c3l"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-20",
        quote: "B3 = <H x H x P, H x R, R x H> ... are subgroups of index 6720 and 56, \
                respectively, of the three-qubit Clifford group",
        depends_on: &["c3-image", "c3-kernel", "b3-image", "b3-kernel"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-21",
        quote: "C3-tilde = Z2^6 : W'(E7) and B3-tilde = Z2^6 : W'(E6), in which \
                W'(E7) == Sp(6,2) ... V iso S3^3",
        depends_on: &["c3-image", "c3-kernel", "b3-image", "b3-kernel", "c3l-tables", "aut27"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-22",
        quote: "one immediately gets the non-split BN-pair B == C3L-tilde, N == B3-tilde, \
                H == P3-tilde iso Z2^6, W iso W'(E6), and C3L-tilde/H == V",
        depends_on: &["c3-image", "b3-image", "b3-kernel", "c3l-tables"],
        scale: Scale::Minutes,
        heavy_exhaustive: true,
    },
    ClaimDef {
        id: "CLM-23",
        quote: "The surface contains a maximum of 27 lines in general position and 45 sets of \
                tritangent planes. The group of permutations of the 27 lines is W(E6), the \
                stabilizer of a line is W(D5) (observe that |W(E6)|/|W(D5)| = 27) and the \
                stabilizer of a tritangent plane is W(F4) ... The number 216 of pairs of skew \
                lines of S equals the cardinality of the quotient group V. There are 36 double \
                sixes, each one stabilized by the group g6 := A6.Z2^2 of order 1440 (the \
                symbol . means that the group extension does not split)",
        depends_on: &["aut27", "c2", "b2", "p2", "b3-image"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-24",
        quote: "It also satisfies the Yang-Baxter equation \
                (R x I)(I x R)(R x I) = (I x R)(R x I)(I x R)",
        depends_on: &[],
        scale: Scale::Instant,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-25",
        quote: "It is straightforward to check another representation of the local Clifford \
                group as C2^L = <H x H, H x P, T>",
        depends_on: &["c2l", "c2l-alt"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-26",
        quote: "The latter may be represented as C2 = <H x H, H x P, CZ>",
        depends_on: &["c2"],
        scale: Scale::Minutes,
        heavy_exhaustive: false,
    },
    ClaimDef {
        id: "CLM-27",
        quote: "the single qubit Pauli group P1 (generated by the ordinary Pauli spin matrices \
                sigma_x, sigma_y and sigma_z) is the imprimitive reflection group G(4,2,2)",
        depends_on: &["p1"],
        scale: Scale::Instant,
        heavy_exhaustive: false,
    },
];

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Run the opt-in exhaustive mode of sampled claims.
    pub exhaustive: bool,
    /// Sample count override for sampled scans.
    pub budget: Option<u64>,
    /// Accepted for interface stability; execution is sequential.
    pub jobs: usize,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig { exhaustive: false, budget: None, jobs: 1, seed: 7, cache_dir: None }
    }
}

impl RunConfig {
    pub(crate) fn sample_triples(&self) -> u64 {
        self.budget.unwrap_or(100_000)
    }

    pub(crate) fn three_qubit_mode(&self) -> CheckMode {
        if self.exhaustive {
            CheckMode::Exhaustive
        } else {
            CheckMode::Sampled { triples: self.sample_triples(), seed: self.seed }
        }
    }
}

/// Accumulates the values, witnesses, and pass/fail requirements of one
/// check. Any failed requirement forces `refuted`; otherwise an explicit
/// verdict (if set) wins, defaulting to `verified`.
pub(crate) struct Outcome {
    verdict: Option<Verdict>,
    values: BTreeMap<String, Value>,
    witnesses: Vec<String>,
    failed: Vec<String>,
}

impl Outcome {
    pub fn new() -> Outcome {
        Outcome { verdict: None, values: BTreeMap::new(), witnesses: Vec::new(), failed: Vec::new() }
    }

    pub fn put(&mut self, key: &str, value: impl serde::Serialize) {
        let v = serde_json::to_value(value)
            .unwrap_or_else(|e| Value::String(format!("unserializable: {e}")));
        self.values.insert(key.to_string(), v);
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn require(&mut self, name: &str, ok: bool) {
        self.put(name, ok);
        if !ok {
            self.failed.push(name.to_string());
        }
    }

    pub fn set_verdict(&mut self, v: Verdict) {
        self.verdict = Some(v);
    }

    fn finish(mut self) -> (Verdict, BTreeMap<String, Value>, Vec<String>) {
        let verdict = if self.failed.is_empty() {
            self.verdict.unwrap_or(Verdict::Verified)
        } else {
            self.witnesses.push(format!("failed checks: {}", self.failed.join(", ")));
            Verdict::Refuted
        };
        (verdict, self.values, self.witnesses)
    }
}

fn execute(id: &str, store: &GroupStore, cfg: &RunConfig) -> Result<Outcome> {
    match id {
        "CLM-01" => two_qubit::clm01(store),
        "CLM-02" => two_qubit::clm02(store),
        "CLM-03" => two_qubit::clm03(store),
        "CLM-04" => two_qubit::clm04(store),
        "CLM-05" => two_qubit::clm05(store),
        "CLM-06" => two_qubit::clm06(store),
        "CLM-07" => two_qubit::clm07(store),
        "CLM-08" => two_qubit::clm08(store),
        "CLM-09" => two_qubit::clm09(store),
        "CLM-10" => two_qubit::clm10(store),
        "CLM-11" => two_qubit::clm11(store),
        "CLM-12" => two_qubit::clm12(store),
        "CLM-13" => two_qubit::clm13(store),
        "CLM-14" => two_qubit::clm14(store),
        "CLM-15" => two_qubit::clm15(store),
        "CLM-16" => two_qubit::clm16(store),
        "CLM-17" => two_qubit::clm17(store),
        "CLM-18" => three_qubit::clm18(store),
        "CLM-19" => three_qubit::clm19(store),
        "CLM-20" => three_qubit::clm20(store),
        "CLM-21" => three_qubit::clm21(store),
        "CLM-22" => three_qubit::clm22(store, cfg),
        "CLM-23" => surface::clm23(store),
        "CLM-24" => two_qubit::clm24(),
        "CLM-25" => two_qubit::clm25(store),
        "CLM-26" => two_qubit::clm26(store),
        "CLM-27" => two_qubit::clm27(store),
        other => Err(Error::UnknownClaim(other.to_string())),
    }
}

fn report_for(def: Option<&'static ClaimDef>, id: &str, store: &GroupStore, cfg: &RunConfig) -> ClaimReport {
    let started = Instant::now();
    let (verdict, mut values, witnesses) = match def {
        Some(def) => match execute(def.id, store, cfg) {
            Ok(outcome) => outcome.finish(),
            Err(e) => {
                (Verdict::Error, BTreeMap::new(), vec![format!("execution error: {e}")])
            }
        },
        None => (
            Verdict::Error,
            BTreeMap::new(),
            vec![format!("execution error: {}", Error::UnknownClaim(id.to_string()))],
        ),
    };
    if let Some(def) = def {
        values.insert(
            "cache_keys".to_string(),
            Value::Array(def.depends_on.iter().map(|k| Value::String(k.to_string())).collect()),
        );
    }
    ClaimReport {
        claim_id: id.to_string(),
        quote: def.map(|d| d.quote.to_string()).unwrap_or_default(),
        verdict,
        values,
        witnesses,
        elapsed_ms: started.elapsed().as_millis() as u64,
        seed: cfg.seed,
    }
}

/// Runs the requested claims in registry (dependency) order. Unknown ids
/// yield per-claim error reports; the run continues.
pub fn run(store: &GroupStore, ids: &[String], cfg: &RunConfig) -> Vec<ClaimReport> {
    let mut reports = Vec::new();
    let mut remaining: Vec<&String> = ids.iter().collect();
    for def in REGISTRY.iter() {
        if remaining.iter().any(|id| id.as_str() == def.id) {
            remaining.retain(|id| id.as_str() != def.id);
            reports.push(report_for(Some(def), def.id, store, cfg));
        }
    }
    for id in remaining {
        reports.push(report_for(None, id, store, cfg));
    }
    reports
}

pub fn run_all(store: &GroupStore, cfg: &RunConfig) -> Vec<ClaimReport> {
    let ids: Vec<String> = REGISTRY.iter().map(|d| d.id.to_string()).collect();
    run(store, &ids, cfg)
}

pub struct RegistryRow {
    pub id: &'static str,
    pub quote: &'static str,
    pub scale: String,
}

/// The registry as printable rows; sampled claims show their exhaustive
/// mode as opt-in-heavy.
pub fn list() -> Vec<RegistryRow> {
    REGISTRY
        .iter()
        .map(|def| RegistryRow {
            id: def.id,
            quote: def.quote,
            scale: if def.heavy_exhaustive {
                format!("{} (exhaustive: {})", def.scale.label(), Scale::OptInHeavy.label())
            } else {
                def.scale.label().to_string()
            },
        })
        .collect()
}

pub const PAIR_NAMES: [&str; 4] = ["c2-pair", "c2-hat-split-pair", "c3-pair", "gl2f2-toy"];

/// Builds and verifies one of the named group pairs.
pub fn verify_named_pair(store: &GroupStore, name: &str, mode: CheckMode) -> Result<BNReport> {
    match name {
        "c2-pair" => store.build_c2_pair(mode),
        "c2-hat-split-pair" => store.build_hat_pair(mode),
        "c3-pair" => store.build_c3_pair(mode),
        "gl2f2-toy" => store.build_toy_pair(mode),
        other => Err(Error::UnknownPair(other.to_string())),
    }
}
