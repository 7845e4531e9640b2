use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

/// Version of the line-delimited report schema.
pub const SCHEMA_VERSION: u32 = 1;

/// First counterexample found for a law, printed in the term-document
/// syntax so it can be replayed with `delta-cat eval`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub terms: Vec<String>,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
    pub comparison: String,
}

/// Outcome of one randomized equational check.
///
/// `elapsed` is kept out of the serialized form so that reruns with the same
/// seed produce byte-identical records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub schema: u32,
    pub law: String,
    pub model: String,
    pub seed: u64,
    pub trials: usize,
    pub depth: usize,
    pub failures: usize,
    pub comparison: String,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skipped: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// All reports passed (skipped laws count as passed).
pub fn all_passed(reports: &[LawReport]) -> bool {
    reports.iter().all(LawReport::passed)
}

pub fn to_jsonl(reports: &[LawReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_json());
        out.push('\n');
    }
    out
}

/// Human-readable table, one row per law, with witnesses listed below.
pub fn to_table(reports: &[LawReport]) -> String {
    let width = reports.iter().map(|r| r.law.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:<20}  {:>6}  {:>8}  {:>9}  status",
        "law", "model", "trials", "failures", "ms"
    );
    for r in reports {
        let status = match (&r.skipped, r.passed()) {
            (Some(_), _) => "skipped",
            (None, true) => "ok",
            (None, false) => "FAILED",
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:<20}  {:>6}  {:>8}  {:>9.1}  {status}",
            r.law,
            r.model,
            r.trials,
            r.failures,
            r.elapsed.as_secs_f64() * 1e3
        );
    }
    for r in reports {
        if let Some(reason) = &r.skipped {
            let _ = writeln!(out, "\n{} skipped: {reason}", r.law);
        }
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "\n{} witness ({}):", r.law, w.comparison);
            for t in &w.terms {
                let _ = writeln!(out, "  term  {t}");
            }
            let _ = writeln!(out, "  input {}\n  lhs   {}\n  rhs   {}", w.input, w.lhs, w.rhs);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> LawReport {
        LawReport {
            schema: SCHEMA_VERSION,
            law: "CD0".into(),
            model: "findiff".into(),
            seed: 42,
            trials: 10,
            depth: 4,
            failures: 0,
            comparison: "exact".into(),
            witness: None,
            skipped: None,
            elapsed: Duration::from_millis(5),
        }
    }

    #[test]
    fn elapsed_is_not_serialized() {
        let mut a = sample();
        let mut b = sample();
        a.elapsed = Duration::from_secs(1);
        b.elapsed = Duration::from_secs(2);
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.to_json().contains("elapsed"));
    }

    #[test]
    fn json_roundtrip() {
        let r = sample();
        let back: LawReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.law, r.law);
        assert_eq!(back.witness, None);
    }
}
