//! Algorithm dispatch shared by `solve`, `compare` and `bench`.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use cranesched::bounded_dp::{locality, solve_bounded_with, BoundedOptions, TraceRecord};
use cranesched::dot::{bipartite_dot, interval_dot, job_graph_dot, two_level_dot};
use cranesched::eulerian::{build_job_graph, semi_eulerize, solve_zero_buffer};
use cranesched::model::DEFAULT_ORACLE_CAP;
use cranesched::pathcover::{
    build_interval_digraph, exact_subset_dp, is_acyclic, schedule_from_cover,
    solve_acyclic_matching, DEFAULT_SUBSET_CAP,
};
use cranesched::twolevel::{approx_solve_with, build_two_level, ApproxOptions};
use cranesched::{brute_force_opt_capped, Instance, Result, Schedule};

pub const ORACLE_CAP_VAR: &str = "CRANESCHED_ORACLE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Oracle,
    Euler0,
    Approx,
    DpBounded,
    DpExactSubset,
    Matching,
    Auto,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Euler0 => "euler0",
            Algorithm::Approx => "approx",
            Algorithm::DpBounded => "dp-bounded",
            Algorithm::DpExactSubset => "dp-exact-subset",
            Algorithm::Matching => "matching",
            Algorithm::Auto => "auto",
        }
    }
}

/// An algorithm with its parameter, as written in `compare` lists
/// (`approx:2`, `dp-bounded`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Choice {
    pub algorithm: Algorithm,
    pub k: Option<usize>,
}

impl FromStr for Choice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (name, k) = match s.split_once(':') {
            Some((name, k)) => (
                name,
                Some(k.parse().map_err(|_| format!("bad k in `{s}`"))?),
            ),
            None => (s, None),
        };
        let algorithm = Algorithm::from_str(name.trim(), false)?;
        if k.is_some() && algorithm != Algorithm::Approx {
            return Err(format!("only approx takes a k, got `{s}`"));
        }
        Ok(Choice { algorithm, k })
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "{}:{k}", self.algorithm.name()),
            None => f.write_str(self.algorithm.name()),
        }
    }
}

pub struct Run {
    pub schedule: Schedule,
    /// The algorithm that produced the schedule (differs from the request
    /// for `auto`).
    pub used: Algorithm,
    pub trace: Vec<TraceRecord>,
    pub dot: Option<String>,
}

pub fn oracle_cap() -> std::result::Result<usize, String> {
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("{ORACLE_CAP_VAR} must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

pub fn default_k(instance: &Instance) -> usize {
    instance.len().min(3)
}

/// Runs one algorithm. `want_dot` also renders the graph the solver worked
/// on.
pub fn run(instance: &Instance, choice: Choice, oracle_cap: usize, want_dot: bool) -> Result<Run> {
    let plain = |schedule, used, dot| Run {
        schedule,
        used,
        trace: Vec::new(),
        dot,
    };
    match choice.algorithm {
        Algorithm::Oracle => {
            let schedule = brute_force_opt_capped(instance, oracle_cap)?;
            let dot = want_dot.then(|| interval_dot(&build_interval_digraph(instance)));
            Ok(plain(schedule, Algorithm::Oracle, dot))
        }
        Algorithm::Euler0 => {
            let schedule = solve_zero_buffer(instance)?;
            let dot = if want_dot {
                let g = build_job_graph(instance);
                let added = if g.is_empty() {
                    Default::default()
                } else {
                    semi_eulerize(&g)?
                };
                Some(job_graph_dot(&g, &added))
            } else {
                None
            };
            Ok(plain(schedule, Algorithm::Euler0, dot))
        }
        Algorithm::Approx => {
            let k = choice.k.unwrap_or_else(|| default_k(instance));
            let out = approx_solve_with(instance, k, ApproxOptions::default())?;
            let dot = if want_dot && !instance.is_empty() {
                Some(two_level_dot(
                    &build_two_level(instance),
                    Some(&out.assignment),
                )?)
            } else {
                None
            };
            Ok(plain(out.schedule, Algorithm::Approx, dot))
        }
        Algorithm::DpBounded => {
            let out = solve_bounded_with(instance, BoundedOptions::default())?;
            let dot = if want_dot && !instance.is_empty() {
                Some(two_level_dot(
                    &build_two_level(instance),
                    Some(&out.assignment),
                )?)
            } else {
                None
            };
            Ok(Run {
                schedule: out.schedule,
                used: Algorithm::DpBounded,
                trace: out.trace,
                dot,
            })
        }
        Algorithm::DpExactSubset => {
            let digraph = build_interval_digraph(instance);
            let cover = exact_subset_dp(&digraph)?;
            let schedule = schedule_from_cover(instance, &cover)?;
            Ok(plain(
                schedule,
                Algorithm::DpExactSubset,
                want_dot.then(|| interval_dot(&digraph)),
            ))
        }
        Algorithm::Matching => {
            let digraph = build_interval_digraph(instance).without_loops();
            let out = solve_acyclic_matching(&digraph)?;
            let schedule = schedule_from_cover(instance, &out.cover)?;
            Ok(plain(
                schedule,
                Algorithm::Matching,
                want_dot.then(|| bipartite_dot(&out.split)),
            ))
        }
        Algorithm::Auto => {
            let next = pick(instance, oracle_cap);
            let k = (next == Algorithm::Approx).then(|| default_k(instance));
            run(
                instance,
                Choice { algorithm: next, k },
                oracle_cap,
                want_dot,
            )
        }
    }
}

/// Cheapest exact method that applies, else approx.
pub fn pick(instance: &Instance, oracle_cap: usize) -> Algorithm {
    let n = instance.len();
    if instance.buffer() == 0 {
        Algorithm::Euler0
    } else if is_acyclic(&build_interval_digraph(instance).without_loops()) {
        Algorithm::Matching
    } else if locality(instance) <= BoundedOptions::default().k_limit {
        Algorithm::DpBounded
    } else if n <= DEFAULT_SUBSET_CAP {
        Algorithm::DpExactSubset
    } else if n <= oracle_cap {
        Algorithm::Oracle
    } else {
        Algorithm::Approx
    }
}

/// Row status for `compare` and `bench`.
pub fn status_of(result: &Result<Run>) -> &'static str {
    match result {
        Ok(_) => "ok",
        Err(e) if e.is_precondition() => "skipped",
        Err(_) => "error",
    }
}
