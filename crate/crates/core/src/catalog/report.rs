//! End-to-end check that MSS_18 is 18- and 26-contractible, refuting the
//! published claim that it is not 18-contractible.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::homotopy::ContractionVerdict;
use crate::search::{Caps, GuidedSearch, SearchStrategy, SearchVerdict};

use super::{curve_s, curve_s_prime, h_tables, homotopy_from_labels, mss18, mss18_point};

/// The claim under test.
pub const REFUTED_CLAIM: &str = "MSS_18 is not 18-contractible";

/// Replace H(p_label, t) with p_value before verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corruption {
    pub t: usize,
    pub label: usize,
    pub value: usize,
}

#[derive(Debug, Clone, Default)]
pub struct RefutationOptions {
    /// Also look for an independent contraction with guided search.
    pub search: bool,
    pub caps: Caps,
    /// Test hook: corrupt one entry of the built-in certificate.
    pub corrupt: Option<Corruption>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationReport {
    pub claim: &'static str,
    pub refuted: bool,
    pub stages: Vec<Stage>,
    /// q for the 18- and 26-contraction runs, when they verify.
    pub targets: Vec<(u32, Option<String>)>,
    pub search_witness_length: Option<usize>,
    pub elapsed_ms: u64,
}

impl RefutationReport {
    pub fn passed(&self) -> bool {
        self.refuted
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for RefutationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim under test: {}", self.claim)?;
        for s in &self.stages {
            writeln!(f, "[{}] {}: {}", if s.passed { "PASS" } else { "FAIL" }, s.name, s.detail)?;
        }
        write!(f, "overall: {} ({} ms)", if self.refuted { "PASS, claim refuted" } else { "FAIL" }, self.elapsed_ms)
    }
}

fn label_of(p: &crate::lattice::LatticePoint) -> String {
    (0..10).find(|&i| &mss18_point(i) == p).map(|i| format!("p{i} = ({p})")).unwrap_or_else(|| format!("({p})"))
}

/// Runs the full pipeline. Failures become failed stages, never panics.
pub fn refutation_report(opts: &RefutationOptions) -> RefutationReport {
    let started = Instant::now();
    let mut stages = Vec::new();
    let mut push = |name: String, passed: bool, detail: String| stages.push(Stage { name, passed, detail });

    let img = mss18(18).expect("18 is supported");
    push(
        "MSS_18 construction".into(),
        img.len() == 10 && img.is_connected(),
        format!("{} points, 18-connected: {}", img.len(), img.is_connected()),
    );

    for adj in [18, 26] {
        for (name, curve) in [("S", curve_s(adj)), ("S'", curve_s_prime(adj))] {
            let ok = curve.as_ref().map(|c| c.len() == 4 && c.is_simple_closed_curve()).unwrap_or(false);
            push(
                format!("{name} is a simple closed curve under {adj}-adjacency"),
                ok,
                match curve {
                    Ok(c) => format!("{} points, all degrees 2: {}", c.len(), ok),
                    Err(e) => e.to_string(),
                },
            );
        }
    }

    let mut tables = h_tables();
    if let Some(c) = opts.corrupt {
        if c.t < tables.len() && c.label < 10 && c.value < 10 {
            tables[c.t][c.label] = c.value;
        }
    }
    let p6 = mss18_point(6);
    let mut targets = Vec::new();
    for adj in [18, 26] {
        let h = homotopy_from_labels(adj, &tables);
        let (passed, target, detail) = match h.is_contraction() {
            Ok(ContractionVerdict::Contraction { target }) => {
                let ok = target == p6;
                (ok, Some(label_of(&target)), format!("accepted, m = {}, q = {}", h.m(), label_of(&target)))
            }
            Ok(ContractionVerdict::NotContraction { failure }) => (false, None, format!("rejected: {failure}")),
            Err(e) => (false, None, format!("error: {e}")),
        };
        targets.push((adj, target));
        push(format!("H is a {adj}-contraction of MSS_18 onto p6"), passed, detail);
    }

    let mut search_witness_length = None;
    if opts.search {
        let outcome = GuidedSearch.search(&Arc::new(img), &opts.caps);
        let verified = outcome
            .witness
            .as_ref()
            .map(|w| w.is_contraction().map(|v| v.is_contraction()).unwrap_or(false))
            .unwrap_or(false);
        let len = outcome.witness.as_ref().map(|w| w.m());
        search_witness_length = len;
        let ok = outcome.verdict == SearchVerdict::Contractible && verified && len.is_some_and(|m| m <= 3);
        push(
            "independent 18-contraction found by guided search".into(),
            ok,
            format!(
                "verdict {}, witness length {}, {} states visited",
                outcome.verdict,
                len.map_or_else(|| "-".to_string(), |m| m.to_string()),
                outcome.stats.states_visited
            ),
        );
    }

    let refuted = stages.iter().all(|s| s.passed);
    RefutationReport {
        claim: REFUTED_CLAIM,
        refuted,
        stages,
        targets,
        search_witness_length,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}
