//! Claim verification reports and their JSON / markdown renderings.
//!
//! A verdict of `verified` or `refuted` is only ever produced by an
//! exhaustive computation. Sampled scans top out at `sampled-pass`, and
//! fingerprint equality without an explicit isomorphism tops out at
//! `fingerprint-consistent`. `error` marks a claim whose check could not
//! run to completion (unknown id, budget exhausted, malformed input); it
//! maps to the execution-failure exit code rather than a refutation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Refuted,
    FingerprintConsistent,
    SampledPass,
    UnverifiedOutOfScope,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::FingerprintConsistent => "fingerprint-consistent",
            Verdict::SampledPass => "sampled-pass",
            Verdict::UnverifiedOutOfScope => "unverified-out-of-scope",
            Verdict::Error => "error",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of checking one claim.
///
/// `values` is a sorted map so two runs with equal results serialize to
/// identical bytes; volatile data (wall time) lives only in `elapsed_ms`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub quote: String,
    pub verdict: Verdict,
    pub values: BTreeMap<String, serde_json::Value>,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u64,
    pub seed: u64,
}

impl ClaimReport {
    /// Copy with wall time zeroed, for byte-level reproducibility checks.
    pub fn without_timings(&self) -> ClaimReport {
        ClaimReport { elapsed_ms: 0, ..self.clone() }
    }
}

/// Process exit code for a batch: error dominates, then refutation.
pub fn exit_code(reports: &[ClaimReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Error) {
        2
    } else if reports.iter().any(|r| r.verdict == Verdict::Refuted) {
        1
    } else {
        0
    }
}

/// Pretty JSON array of reports.
pub fn to_json(reports: &[ClaimReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// Markdown rendering: a summary table, then per-claim detail sections.
pub fn to_markdown(reports: &[ClaimReport]) -> String {
    let mut out = String::new();
    out.push_str("# Claim verification report\n\n");
    out.push_str("| claim | verdict | elapsed (ms) |\n");
    out.push_str("|-------|---------|--------------|\n");
    for r in reports {
        out.push_str(&format!("| {} | {} | {} |\n", r.claim_id, r.verdict, r.elapsed_ms));
    }
    for r in reports {
        out.push_str(&format!("\n## {}\n\n", r.claim_id));
        out.push_str(&format!("> {}\n\n", r.quote));
        out.push_str(&format!("Verdict: **{}** (seed {})\n", r.verdict, r.seed));
        if !r.values.is_empty() {
            out.push('\n');
            for (k, v) in &r.values {
                out.push_str(&format!("- {k}: {v}\n"));
            }
        }
        if !r.witnesses.is_empty() {
            out.push_str("\nWitnesses:\n");
            for w in &r.witnesses {
                out.push_str(&format!("- {w}\n"));
            }
        }
    }
    out
}
