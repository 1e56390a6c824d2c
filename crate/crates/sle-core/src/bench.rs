//! Runs several algorithms over a corpus and cross-checks their verdicts.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::model::Instance;
use crate::solve::{solve, Algorithm, SolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Extendable,
    NotExtendable,
    Timeout,
    Capacity,
    /// The algorithm's precondition does not hold for the instance.
    Skipped,
    Error,
}

impl Verdict {
    /// `Some(extendable)` for a decided run.
    pub fn decided(self) -> Option<bool> {
        match self {
            Verdict::Extendable => Some(true),
            Verdict::NotExtendable => Some(false),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchRun {
    pub algorithm: Algorithm,
    pub verdict: Verdict,
    pub wall_ms: f64,
    pub branches: u64,
    pub dp_cells: u64,
    pub bound: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchEntry {
    pub instance: String,
    pub runs: Vec<BenchRun>,
    pub discrepancy: bool,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct BenchReport {
    pub entries: Vec<BenchEntry>,
}

impl BenchReport {
    pub fn discrepancies(&self) -> usize {
        self.entries.iter().filter(|e| e.discrepancy).count()
    }

    /// Runs whose branch counter exceeded the stated bound.
    pub fn over_bound(&self) -> Vec<(&str, Algorithm)> {
        self.entries
            .iter()
            .flat_map(|e| {
                e.runs
                    .iter()
                    .filter(|r| r.algorithm != Algorithm::Oracle && r.bound.is_some_and(|b| u128::from(r.branches) > b))
                    .map(move |r| (e.instance.as_str(), r.algorithm))
            })
            .collect()
    }
}

pub fn run_one(inst: &Instance, algorithm: Algorithm, timeout: Option<Duration>, oracle_cap: u128) -> BenchRun {
    let opts = SolveOptions { algorithm, timeout, oracle_cap };
    let mut run = BenchRun {
        algorithm,
        verdict: Verdict::Error,
        wall_ms: 0.0,
        branches: 0,
        dp_cells: 0,
        bound: None,
        message: None,
    };
    if !algorithm.resolve(inst).applies_to(inst) {
        run.verdict = Verdict::Skipped;
        return run;
    }
    match solve(inst, &opts) {
        Ok(out) => {
            run.verdict = if out.extendable() { Verdict::Extendable } else { Verdict::NotExtendable };
            run.wall_ms = out.stats.elapsed.as_secs_f64() * 1e3;
            run.branches = out.stats.branches;
            run.dp_cells = out.stats.dp_cells;
            run.bound = out.stats.bound;
        }
        Err(Error::Timeout) => run.verdict = Verdict::Timeout,
        Err(e @ Error::Capacity { .. }) => {
            run.verdict = Verdict::Capacity;
            run.message = Some(e.to_string());
        }
        Err(e) => run.message = Some(e.to_string()),
    }
    run
}

/// Runs every algorithm on one instance. A discrepancy is two decided verdicts
/// that disagree, or a run that failed with an error.
pub fn bench_instance(
    name: &str,
    inst: &Instance,
    algorithms: &[Algorithm],
    timeout: Option<Duration>,
    oracle_cap: u128,
) -> BenchEntry {
    let runs: Vec<BenchRun> = algorithms.iter().map(|&a| run_one(inst, a, timeout, oracle_cap)).collect();
    let decided: Vec<bool> = runs.iter().filter_map(|r| r.verdict.decided()).collect();
    let disagree = decided.windows(2).any(|w| w[0] != w[1]);
    let failed = runs.iter().any(|r| r.verdict == Verdict::Error);
    BenchEntry { instance: name.to_string(), runs, discrepancy: disagree || failed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InstanceBuilder;

    #[test]
    fn agreement_and_skips() {
        let mut b = InstanceBuilder::new(1);
        b.old_vertices(["a", "b", "c", "d"]).old_edge("a", "c", 1).new_edge("b", "d");
        let inst = b.build().unwrap();
        let e = bench_instance("t", &inst, &Algorithm::ALL, None, u128::MAX);
        assert!(!e.discrepancy);
        let by = |a| e.runs.iter().find(|r| r.algorithm == a).unwrap().verdict;
        assert_eq!(by(Algorithm::Oracle), Verdict::NotExtendable);
        assert_eq!(by(Algorithm::OneVertex), Verdict::Skipped);
        assert_eq!(by(Algorithm::EdgesFpt), Verdict::NotExtendable);
        let report = BenchReport { entries: vec![e] };
        assert_eq!(report.discrepancies(), 0);
        assert!(report.over_bound().is_empty());
    }

    #[test]
    fn capacity_is_not_a_discrepancy() {
        let mut b = InstanceBuilder::new(2);
        b.old_vertices(["a", "b", "c"]).new_vertex("x").new_vertex("y").new_edge("x", "a").new_edge("y", "b");
        let inst = b.build().unwrap();
        let e = bench_instance("t", &inst, &[Algorithm::Oracle, Algorithm::Xp], None, 1);
        assert_eq!(e.runs[0].verdict, Verdict::Capacity);
        assert_eq!(e.runs[1].verdict, Verdict::Extendable);
        assert!(!e.discrepancy);
    }
}
