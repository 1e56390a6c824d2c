//! One entry point over all solvers, with automatic dispatch and a final
//! re-check of every layout handed back.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::classical::{solve_edges_only, solve_one_vertex, solve_xp_with};
use crate::error::{Error, Result};
use crate::fpt::{solve_fpt_with, solve_greedy_is_with};
use crate::geometry::{extends, is_valid};
use crate::model::{Instance, Layout};
use crate::oracle::{default_cap, search_space, solve_exhaustive_with};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    #[default]
    Auto,
    Oracle,
    EdgesFpt,
    OneVertex,
    Xp,
    DpFpt,
    GreedyIs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Auto,
        Algorithm::Oracle,
        Algorithm::EdgesFpt,
        Algorithm::OneVertex,
        Algorithm::Xp,
        Algorithm::DpFpt,
        Algorithm::GreedyIs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Oracle => "oracle",
            Algorithm::EdgesFpt => "edges-fpt",
            Algorithm::OneVertex => "one-vertex",
            Algorithm::Xp => "xp",
            Algorithm::DpFpt => "dp-fpt",
            Algorithm::GreedyIs => "greedy-is",
        }
    }

    /// Whether the algorithm accepts `inst` at all.
    pub fn applies_to(self, inst: &Instance) -> bool {
        match self {
            Algorithm::EdgesFpt => inst.n_add() == 0,
            Algorithm::OneVertex => inst.n_add() == 1 && inst.new_edges_between_old().is_empty(),
            Algorithm::GreedyIs => inst.new_vertices_independent(),
            _ => true,
        }
    }

    /// The most specific algorithm for `inst`; other choices are returned as is.
    pub fn resolve(self, inst: &Instance) -> Algorithm {
        if self != Algorithm::Auto {
            return self;
        }
        [Algorithm::EdgesFpt, Algorithm::OneVertex, Algorithm::GreedyIs]
            .into_iter()
            .find(|a| a.applies_to(inst))
            .unwrap_or(Algorithm::DpFpt)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub timeout: Option<Duration>,
    /// Search-space ceiling for the oracle.
    pub oracle_cap: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { algorithm: Algorithm::Auto, timeout: None, oracle_cap: default_cap() }
    }
}

/// Counters of one run. Fields a solver does not track stay zero or `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub branches: u64,
    pub rejected: u64,
    pub dp_cells: u64,
    /// Theoretical ceiling on `branches` (or on the search space for the oracle).
    pub bound: Option<u128>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    /// The algorithm that actually ran.
    pub algorithm: Algorithm,
    pub layout: Option<Layout>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn extendable(&self) -> bool {
        self.layout.is_some()
    }
}

pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<SolveOutcome> {
    let algorithm = opts.algorithm.resolve(inst);
    if !algorithm.applies_to(inst) {
        return Err(Error::Precondition(format!("{algorithm} does not apply to this instance")));
    }
    let budget = opts.timeout.map_or_else(Budget::unlimited, Budget::with_timeout);
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let layout = match algorithm {
        Algorithm::Auto => unreachable!("resolved above"),
        Algorithm::Oracle => {
            stats.bound = Some(search_space(inst));
            solve_exhaustive_with(inst, opts.oracle_cap, &budget)?
        }
        Algorithm::EdgesFpt => solve_edges_only(inst)?,
        Algorithm::OneVertex => solve_one_vertex(inst)?,
        Algorithm::Xp => {
            let (l, s) = solve_xp_with(inst, &budget)?;
            stats.branches = s.branches;
            stats.bound = Some(s.bound);
            l
        }
        Algorithm::DpFpt | Algorithm::GreedyIs => {
            let (l, s) = if algorithm == Algorithm::DpFpt {
                solve_fpt_with(inst, &budget)?
            } else {
                solve_greedy_is_with(inst, &budget)?
            };
            stats.branches = s.branches;
            stats.rejected = s.rejected;
            stats.dp_cells = s.dp_cells;
            stats.bound = Some(s.bound);
            l
        }
    };
    stats.elapsed = start.elapsed();
    if let Some(l) = &layout {
        if !is_valid(inst.g(), l)? || !extends(l, inst.layout_h())? {
            return Err(Error::InvalidLayout(format!("{algorithm} returned a layout that is not a valid extension")));
        }
    }
    Ok(SolveOutcome { algorithm, layout, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InstanceBuilder;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert!("fast".parse::<Algorithm>().is_err());
    }

    #[test]
    fn auto_dispatch() {
        let mut b = InstanceBuilder::new(1);
        b.old_vertices(["a", "b", "c"]).old_edge("a", "c", 1);
        let edges_only = {
            let mut b = b.clone();
            b.new_edge("a", "b");
            b.build().unwrap()
        };
        let one = {
            let mut b = b.clone();
            b.new_vertex("x").new_edge("x", "b");
            b.build().unwrap()
        };
        let indep = {
            let mut b = b.clone();
            b.new_vertex("x").new_vertex("y").new_edge("x", "b").new_edge("y", "a");
            b.build().unwrap()
        };
        let general = {
            let mut b = b;
            b.new_vertex("x").new_vertex("y").new_edge("x", "y");
            b.build().unwrap()
        };
        assert_eq!(Algorithm::Auto.resolve(&edges_only), Algorithm::EdgesFpt);
        assert_eq!(Algorithm::Auto.resolve(&one), Algorithm::OneVertex);
        assert_eq!(Algorithm::Auto.resolve(&indep), Algorithm::GreedyIs);
        assert_eq!(Algorithm::Auto.resolve(&general), Algorithm::DpFpt);
        for inst in [&edges_only, &one, &indep, &general] {
            let out = solve(inst, &SolveOptions::default()).unwrap();
            assert!(out.extendable());
        }
        let err = solve(&general, &SolveOptions { algorithm: Algorithm::OneVertex, ..Default::default() });
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
