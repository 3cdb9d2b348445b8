//! Instances, schedules and the energy model.
//!
//! Slots are 1-based positions on a line `[1, eta]`. A job moves one
//! container from its origin slot to its destination slot. Lifting costs one
//! unit of energy unless the crane still holds energy from the previous
//! lowering, which is the case when the next origin lies within `buffer`
//! slots of the previous destination.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slot index on the storage line.
pub type Slot = u32;

/// Default maximum number of jobs accepted by [`brute_force_opt`].
pub const DEFAULT_ORACLE_CAP: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub id: usize,
    pub origin: Slot,
    pub dest: Slot,
}

impl Job {
    pub fn length(&self) -> u32 {
        self.origin.abs_diff(self.dest)
    }
}

/// A validated problem instance. Jobs are stored sorted by id and ids are
/// exactly `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    eta: Slot,
    buffer: u32,
    jobs: Vec<Job>,
}

impl Instance {
    pub fn new(eta: Slot, buffer: u32, mut jobs: Vec<Job>) -> Result<Self> {
        if eta == 0 {
            return Err(Error::InvalidInstance("eta must be at least 1".into()));
        }
        jobs.sort_by_key(|j| j.id);
        for (expected, job) in jobs.iter().enumerate() {
            if job.id != expected {
                return Err(Error::InvalidInstance(format!(
                    "job ids must be exactly 0..{}; found id {} at position {}",
                    jobs.len(),
                    job.id,
                    expected
                )));
            }
            for (name, slot) in [("origin", job.origin), ("dest", job.dest)] {
                if slot == 0 || slot > eta {
                    return Err(Error::InvalidInstance(format!(
                        "job {}: {} {} outside [1, {}]",
                        job.id, name, slot, eta
                    )));
                }
            }
        }
        Ok(Instance { eta, buffer, jobs })
    }

    /// Builds an instance from `(origin, dest)` pairs; job `i` gets id `i`.
    pub fn from_pairs(eta: Slot, buffer: u32, pairs: &[(Slot, Slot)]) -> Result<Self> {
        let jobs = pairs
            .iter()
            .enumerate()
            .map(|(id, &(origin, dest))| Job { id, origin, dest })
            .collect();
        Instance::new(eta, buffer, jobs)
    }

    pub fn eta(&self) -> Slot {
        self.eta
    }

    pub fn buffer(&self) -> u32 {
        self.buffer
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn job(&self, id: usize) -> &Job {
        &self.jobs[id]
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    /// The same jobs under a different energy buffer.
    pub fn with_buffer(&self, buffer: u32) -> Instance {
        Instance {
            eta: self.eta,
            buffer,
            jobs: self.jobs.clone(),
        }
    }

    /// All occupied slots (origins and destinations), ascending.
    pub fn occupied_slots(&self) -> Vec<Slot> {
        let set: BTreeSet<Slot> = self.jobs.iter().flat_map(|j| [j.origin, j.dest]).collect();
        set.into_iter().collect()
    }

    pub fn max_length(&self) -> u32 {
        self.jobs.iter().map(Job::length).max().unwrap_or(0)
    }

    /// Whether job `next` can be lifted with the energy left by `prev`.
    pub fn is_free_transition(&self, prev: usize, next: usize) -> bool {
        self.jobs[prev].dest.abs_diff(self.jobs[next].origin) <= self.buffer
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub order: Vec<usize>,
    pub energy: usize,
}

impl Schedule {
    /// Evaluates `order` against `instance` and wraps it.
    pub fn evaluated(instance: &Instance, order: Vec<usize>) -> Result<Self> {
        let energy = evaluate_energy(instance, &order)?;
        Ok(Schedule { order, energy })
    }

    pub fn empty() -> Self {
        Schedule {
            order: Vec::new(),
            energy: 0,
        }
    }

    /// Checks that the order is a permutation of the instance's jobs and
    /// that the stated energy matches the recomputed one.
    pub fn verify(&self, instance: &Instance) -> Result<()> {
        let actual = evaluate_energy(instance, &self.order)?;
        if actual != self.energy {
            return Err(Error::InvalidSchedule(format!(
                "stated energy {} but the order consumes {}",
                self.energy, actual
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidSchedule(format!(
            "order has {} entries, expected {}",
            order.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &id in order {
        if id >= n {
            return Err(Error::InvalidSchedule(format!("unknown job id {id}")));
        }
        if std::mem::replace(&mut seen[id], true) {
            return Err(Error::InvalidSchedule(format!("job id {id} appears twice")));
        }
    }
    Ok(())
}

/// Total energy of processing the jobs in `order`.
pub fn evaluate_energy(instance: &Instance, order: &[usize]) -> Result<usize> {
    check_permutation(order, instance.len())?;
    if order.is_empty() {
        return Ok(0);
    }
    let paid = order
        .windows(2)
        .filter(|w| !instance.is_free_transition(w[0], w[1]))
        .count();
    Ok(1 + paid)
}

/// Exhaustive search over all orders, with the default cap.
pub fn brute_force_opt(instance: &Instance) -> Result<Schedule> {
    brute_force_opt_capped(instance, DEFAULT_ORACLE_CAP)
}

/// Exhaustive search over all `n!` orders. Returns the lexicographically
/// smallest order among the minimum-energy ones.
pub fn brute_force_opt_capped(instance: &Instance, cap: usize) -> Result<Schedule> {
    let n = instance.len();
    if n > cap {
        return Err(Error::TooLarge {
            solver: "oracle",
            n,
            cap,
        });
    }
    if n == 0 {
        return Ok(Schedule::empty());
    }

    struct Search<'a> {
        instance: &'a Instance,
        used: Vec<bool>,
        current: Vec<usize>,
        best: usize,
        best_order: Vec<usize>,
    }

    impl Search<'_> {
        fn extend(&mut self, cost: usize) {
            // Costs never decrease along a prefix, and orders are visited in
            // lexicographic order, so only strict improvements are kept.
            if cost >= self.best {
                return;
            }
            let n = self.used.len();
            if self.current.len() == n {
                self.best = cost;
                self.best_order.clone_from(&self.current);
                return;
            }
            for next in 0..n {
                if self.used[next] {
                    continue;
                }
                let step = match self.current.last() {
                    None => 1,
                    Some(&prev) if self.instance.is_free_transition(prev, next) => 0,
                    Some(_) => 1,
                };
                self.used[next] = true;
                self.current.push(next);
                self.extend(cost + step);
                self.current.pop();
                self.used[next] = false;
            }
        }
    }

    let mut search = Search {
        instance,
        used: vec![false; n],
        current: Vec::with_capacity(n),
        best: usize::MAX,
        best_order: Vec::new(),
    };
    search.extend(0);
    Ok(Schedule {
        order: search.best_order,
        energy: search.best,
    })
}

/// Deterministic random instance. Origins are uniform on `[1, eta]`;
/// destinations are uniform on the slots within `max_length` of the origin
/// (or on the whole line when unbounded).
pub fn generate_instance(
    n: usize,
    eta: Slot,
    buffer: u32,
    max_length: Option<u32>,
    seed: u64,
) -> Result<Instance> {
    if eta == 0 {
        return Err(Error::InvalidInstance("eta must be at least 1".into()));
    }
    if let Some(limit) = max_length {
        if limit >= eta {
            return Err(Error::InvalidInstance(format!(
                "max_length {limit} must be smaller than eta {eta}"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs = (0..n)
        .map(|id| {
            let origin = rng.random_range(1..=eta);
            let (lo, hi) = match max_length {
                Some(l) => (
                    origin.saturating_sub(l).max(1),
                    origin.saturating_add(l).min(eta),
                ),
                None => (1, eta),
            };
            let dest = rng.random_range(lo..=hi);
            Job { id, origin, dest }
        })
        .collect();
    Instance::new(eta, buffer, jobs)
}

fn map_json_error(err: serde_path_to_error::Error<serde_json::Error>) -> Error {
    let path = err.path().to_string();
    let message = err.inner().to_string();
    // Missing fields are reported against the parent object; name the
    // field itself.
    let named = message
        .strip_prefix("missing field `")
        .and_then(|rest| rest.split('`').next());
    let field = match (named, path.as_str()) {
        (Some(name), ".") => name.to_string(),
        (Some(name), parent) => format!("{parent}.{name}"),
        (None, p) => p.to_string(),
    };
    Error::Parse { field, message }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    eta: Slot,
    buffer: u32,
    jobs: Vec<Job>,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawInstance = serde_path_to_error::deserialize(de).map_err(map_json_error)?;
    Instance::new(raw.eta, raw.buffer, raw.jobs)
}

pub fn serialize_instance(instance: &Instance) -> String {
    serde_json::to_string(instance).expect("instance serializes")
}

/// Parses a schedule and checks that its order is a permutation of `0..len`.
pub fn parse_schedule(text: &str) -> Result<Schedule> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let schedule: Schedule = serde_path_to_error::deserialize(de).map_err(map_json_error)?;
    check_permutation(&schedule.order, schedule.order.len())?;
    Ok(schedule)
}

pub fn serialize_schedule(schedule: &Schedule) -> String {
    serde_json::to_string(schedule).expect("schedule serializes")
}
