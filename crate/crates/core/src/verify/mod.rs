//! Verification suites and their reports.
//!
//! A report lists every check of a suite once, in a fixed order, with a
//! three-valued verdict. Reports hold no timings or host data, so equal
//! options give byte-identical JSON.

mod algebra;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::builders::BUILDER_VERSION;
use crate::homology::Verdict;

pub use algebra::{random_subspace_pair, random_torsion_complement, wall_axioms, AxiomReport};
pub use suites::{
    algebra_checks, complexes_checks, connectivity_checks, posets_checks, random_chain_poset,
    run_suite,
};

/// Schema tag of [`VerificationReport`] JSON.
pub const REPORT_SCHEMA: &str = "wallcx-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Posets,
    Complexes,
    Connectivity,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["algebra", "posets", "complexes", "connectivity", "all"];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(Suite::NAMES[*self as usize])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}` (expected one of algebra, posets, complexes, connectivity, all)")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "algebra" => Ok(Suite::Algebra),
            "posets" => Ok(Suite::Posets),
            "complexes" => Ok(Suite::Complexes),
            "connectivity" => Ok(Suite::Connectivity),
            "all" => Ok(Suite::All),
            other => Err(UnknownSuite(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Extra bounds the connectivity probes may build.
    pub budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            budget: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    /// Name of the statement the check exercises.
    pub anchor: String,
    pub verdict: Verdict,
    pub params: BTreeMap<String, serde_json::Value>,
    pub summary: String,
    /// Structured outcome of the underlying computation.
    pub data: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: String,
    pub version: String,
    pub suite: Suite,
    pub seed: u64,
    pub budget: usize,
    pub verdict: Verdict,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(suite: Suite, opts: &VerifyOptions, checks: Vec<CheckResult>) -> Self {
        let verdict = checks
            .iter()
            .map(|c| c.verdict)
            .max()
            .unwrap_or(Verdict::Pass);
        VerificationReport {
            schema: REPORT_SCHEMA.into(),
            version: BUILDER_VERSION.into(),
            suite,
            seed: opts.seed,
            budget: opts.budget,
            verdict,
            checks,
        }
    }

    /// 0 when everything passed, 1 on any FAIL, 2 when the worst outcome
    /// is INCONCLUSIVE.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per check: id, verdict, anchor, params as JSON, summary.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,verdict,anchor,params,summary\n");
        for c in &self.checks {
            let params = serde_json::to_string(&c.params).expect("params serialize");
            let row = [
                c.id.as_str(),
                &c.verdict.to_string(),
                &c.anchor,
                &params,
                &c.summary,
            ];
            let cells: Vec<String> = row.iter().map(|f| csv_cell(f)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().to_string(), n);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn exit_codes_follow_dominance() {
        let opts = VerifyOptions::default();
        let mk = |v: Verdict| CheckResult {
            id: "x".into(),
            anchor: "a".into(),
            verdict: v,
            params: BTreeMap::new(),
            summary: "s, \"q\"".into(),
            data: serde_json::Value::Null,
        };
        let r = VerificationReport::new(
            Suite::All,
            &opts,
            vec![mk(Verdict::Pass), mk(Verdict::Inconclusive)],
        );
        assert_eq!(r.exit_code(), 2);
        let r = VerificationReport::new(
            Suite::All,
            &opts,
            vec![mk(Verdict::Fail), mk(Verdict::Inconclusive)],
        );
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_csv().contains("\"s, \"\"q\"\"\""));
        assert_eq!(
            VerificationReport::new(Suite::All, &opts, vec![]).exit_code(),
            0
        );
    }
}
