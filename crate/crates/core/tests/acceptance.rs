//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use cranesched::bounded_dp::{solve_bounded_with, solve_unit_with, BoundedOptions};
use cranesched::eulerian::{
    build_job_graph, is_semi_eulerian_with, min_added_edges, semi_eulerize, solve_zero_buffer,
};
use cranesched::pathcover::{
    build_interval_digraph, exact_subset_dp, is_acyclic, schedule_from_cover,
    solve_acyclic_matching, solve_matching, PathCoverOptions,
};
use cranesched::twolevel::approx_solve;
use cranesched::{brute_force_opt, Instance, Schedule};

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn golden_instance_check() -> Check {
    let h = golden_instance();
    let d = build_interval_digraph(&h);
    ensure(is_acyclic(&d), || "digraph not acyclic".into())?;
    ensure(d.edge_count() == 3, || format!("{} edges", d.edge_count()))?;
    let out = solve_acyclic_matching(&d).map_err(|e| e.to_string())?;
    let mu = out.split.matching_size();
    ensure(mu == 2, || format!("mu = {mu}"))?;
    ensure(out.cover.len() == 2, || {
        format!("rho = {}", out.cover.len())
    })?;
    let energies = [
        (
            "matching",
            solve_matching(&h, PathCoverOptions::default()).map(|s| s.energy),
        ),
        (
            "subset",
            exact_subset_dp(&d)
                .and_then(|c| schedule_from_cover(&h, &c))
                .map(|s| s.energy),
        ),
        ("approx(4)", approx_solve(&h, 4).map(|s| s.energy)),
        ("oracle", brute_force_opt(&h).map(|s| s.energy)),
        ("reference", Ok(oracle(&h))),
    ];
    for (name, e) in energies {
        ensure(e == Ok(2), || format!("{name} gave {e:?}"))?;
    }
    Ok("3 edges, mu = 2, rho = 2, energy 2 from every solver".into())
}

fn zero_buffer_corpus() -> Vec<Instance> {
    corpus(300, 1..=8, 12, &[0], None, 2)
}

fn zero_buffer_exact() -> Check {
    for (at, i) in zero_buffer_corpus().iter().enumerate() {
        let s = solve_zero_buffer(i).map_err(|e| e.to_string())?;
        let opt = oracle(i);
        let f = min_added_edges(&build_job_graph(i)).map_err(|e| e.to_string())?;
        ensure(s.energy == opt && f + 1 == opt, || {
            format!(
                "instance {at}: solver {}, formula {}, oracle {opt}",
                s.energy,
                f + 1
            )
        })?;
    }
    Ok("300 instances".into())
}

fn formula_vs_construction() -> Check {
    for (at, i) in zero_buffer_corpus().iter().enumerate() {
        let g = build_job_graph(i);
        let added = semi_eulerize(&g).map_err(|e| e.to_string())?;
        let f = min_added_edges(&g).map_err(|e| e.to_string())?;
        ensure(added.len() == f, || {
            format!("instance {at}: {} edges vs formula {f}", added.len())
        })?;
        ensure(is_semi_eulerian_with(&g, &added), || {
            format!("instance {at}: not semi-Eulerian")
        })?;
    }
    Ok("300 instances".into())
}

fn approx_corpus() -> Vec<Instance> {
    corpus(200, 1..=7, 12, &[0, 1, 2], None, 4)
}

fn approx_bound() -> Check {
    let mut failures = Vec::new();
    for (at, i) in approx_corpus().iter().enumerate() {
        let n = i.len();
        let opt = oracle(i);
        for k in 0..=n {
            match approx_solve(i, k) {
                Ok(s)
                    if s.energy >= opt && s.energy <= opt + n - k && (k < n || s.energy == opt) => {
                }
                other => failures.push(format!("instance {at}, k = {k}: {other:?}, oracle {opt}")),
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("200 instances, every k".into())
}

fn bounded_corpus() -> Vec<Instance> {
    corpus(200, 1..=7, 12, &[0, 1, 2], Some(2), 5)
}

fn bounded_exact() -> Check {
    for (at, i) in bounded_corpus().iter().enumerate() {
        let out = solve_bounded_with(i, BoundedOptions::default()).map_err(|e| e.to_string())?;
        let opt = oracle(i);
        ensure(out.opt == opt && out.schedule.energy == opt, || {
            format!(
                "instance {at}: dp {} / schedule {}, oracle {opt}",
                out.opt, out.schedule.energy
            )
        })?;
    }
    for (at, i) in unit_corpus(100, 6, 55).iter().enumerate() {
        let unit = solve_unit_with(i).map_err(|e| e.to_string())?;
        let bounded =
            solve_bounded_with(i, BoundedOptions::default()).map_err(|e| e.to_string())?;
        ensure(unit.opt == bounded.opt, || {
            format!(
                "unit instance {at}: unit {}, bounded {}",
                unit.opt, bounded.opt
            )
        })?;
    }
    Ok("200 bounded instances, 100 unit instances".into())
}

fn path_cover_corpus() -> Vec<Instance> {
    corpus(200, 1..=7, 12, &[0, 1, 2], None, 6)
}

fn path_cover_equivalence() -> Check {
    let mut acyclic = 0;
    for (at, i) in path_cover_corpus().iter().enumerate() {
        let d = build_interval_digraph(i);
        let cover = exact_subset_dp(&d).map_err(|e| e.to_string())?;
        cover
            .validate(&d)
            .map_err(|e| format!("instance {at}: {e}"))?;
        let opt = oracle(i);
        ensure(cover.len() == opt, || {
            format!("instance {at}: {} paths, oracle {opt}", cover.len())
        })?;
        let stripped = d.without_loops();
        if !is_acyclic(&stripped) {
            continue;
        }
        acyclic += 1;
        let out = solve_acyclic_matching(&stripped).map_err(|e| e.to_string())?;
        out.cover
            .validate(&d)
            .map_err(|e| format!("instance {at}: {e}"))?;
        let mu = out.split.matching_size();
        let adjacency: Vec<Vec<usize>> = (0..i.len())
            .map(|u| out.split.neighbors(u).to_vec())
            .collect();
        let best = max_matching_exhaustive(&adjacency);
        ensure(out.split.is_valid_matching() && mu == best, || {
            format!("instance {at}: matching {mu}, exhaustive {best}")
        })?;
        ensure(
            out.cover.len() == opt && out.cover.len() == i.len() - mu,
            || {
                format!(
                    "instance {at}: matching cover {}, n - mu = {}",
                    out.cover.len(),
                    i.len() - mu
                )
            },
        )?;
    }
    ensure(acyclic >= 20, || {
        format!("only {acyclic} acyclic instances")
    })?;
    Ok(format!(
        "200 instances, {acyclic} acyclic after loop stripping"
    ))
}

fn schedule_validity() -> Check {
    let mut checked = 0;
    let mut check = |name: &str,
                     i: &Instance,
                     s: cranesched::Result<Schedule>|
     -> std::result::Result<(), String> {
        let s = s.map_err(|e| format!("{name}: {e}"))?;
        checked += 1;
        ensure(schedule_ok(i, &s), || {
            format!("{name}: bad schedule {s:?} for {i:?}")
        })
    };
    for i in &zero_buffer_corpus() {
        check("zero-buffer", i, solve_zero_buffer(i))?;
    }
    for i in &approx_corpus() {
        let n = i.len();
        check("oracle", i, brute_force_opt(i))?;
        for k in [0, n.min(3), n] {
            check("approx", i, approx_solve(i, k))?;
        }
    }
    for i in &bounded_corpus() {
        check(
            "bounded",
            i,
            solve_bounded_with(i, BoundedOptions::default()).map(|o| o.schedule),
        )?;
    }
    for i in &unit_corpus(100, 6, 55) {
        check("unit", i, solve_unit_with(i).map(|o| o.schedule))?;
    }
    for i in &path_cover_corpus() {
        let d = build_interval_digraph(i);
        check(
            "subset",
            i,
            exact_subset_dp(&d).and_then(|c| schedule_from_cover(i, &c)),
        )?;
        if is_acyclic(&d.without_loops()) {
            check(
                "matching",
                i,
                solve_matching(i, PathCoverOptions::default()),
            )?;
        }
    }
    Ok(format!("{checked} schedules"))
}

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "four-job golden instance",
            limit: Some(Duration::from_secs(1)),
            run: golden_instance_check,
        },
        Criterion {
            id: 2,
            title: "zero-buffer exactness",
            limit: Some(Duration::from_secs(30)),
            run: zero_buffer_exact,
        },
        Criterion {
            id: 3,
            title: "added-edge formula vs construction",
            limit: None,
            run: formula_vs_construction,
        },
        Criterion {
            id: 4,
            title: "approximation bound for every k",
            limit: Some(Duration::from_secs(120)),
            run: approx_bound,
        },
        Criterion {
            id: 5,
            title: "bounded DP exactness",
            limit: Some(Duration::from_secs(120)),
            run: bounded_exact,
        },
        Criterion {
            id: 6,
            title: "path-cover equivalence",
            limit: None,
            run: path_cover_equivalence,
        },
        Criterion {
            id: 7,
            title: "schedule validity across solvers",
            limit: None,
            run: schedule_validity,
        },
    ];
    let mut passed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!(
            "criterion {} [{tag}] {}: {detail} ({elapsed:.2?})",
            c.id, c.title
        );
        passed.push((c.id, result.is_ok()));
    }
    // No standalone check: passes iff the property-based substitutes pass.
    let substitutes = [2, 4, 5];
    let ok8 = passed
        .iter()
        .filter(|(id, _)| substitutes.contains(id))
        .all(|(_, ok)| *ok);
    println!(
        "criterion 8 [{}] unreproducible worked example covered by criteria 2, 4, 5; runtimes checked as time limits above",
        if ok8 { "PASS" } else { "FAIL" }
    );
    if ok8 && passed.iter().all(|(_, ok)| *ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
