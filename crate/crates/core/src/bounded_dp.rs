//! Exact sweep over the slot line when `k = max(buffer, longest job)` is
//! small.
//!
//! Slots are visited left to right. At slot `i` the lower vertex `b_i`
//! receives its auxiliary edges; afterwards every upper vertex that no later
//! lower vertex can reach retires and pays for its imbalance. A retiring
//! vertex whose component has no member left in the window closes that
//! component, which costs one more unit if the component is balanced.
//!
//! Costs are kept doubled (`sum |out - in| + 2 * balanced components`) so
//! that partial values stay integral. The energy is half the final value.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Serialize;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::model::{Instance, Schedule, Slot};
use crate::twolevel::{
    build_two_level, penalty_count, schedule_from_assignment, AuxAssignment, TwoLevelGraph,
};

pub const DEFAULT_K_LIMIT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedOptions {
    /// Largest `max(buffer, longest job)` accepted.
    pub k_limit: usize,
}

impl Default for BoundedOptions {
    fn default() -> Self {
        BoundedOptions {
            k_limit: DEFAULT_K_LIMIT,
        }
    }
}

/// DP state between two slots: the upper vertices still in the window, how
/// they are connected so far, whether every retired member of each class was
/// balanced, and the auxiliary in-degree each has received.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    lo: usize,
    /// Class of each window vertex, numbered by first occurrence.
    labels: Vec<u8>,
    /// Per class: all retired members were balanced.
    gammas: Vec<bool>,
    indegrees: Vec<u32>,
}

impl Configuration {
    /// Every vertex of `window` on its own, untouched.
    pub fn singletons(window: Range<usize>) -> Self {
        let len = window.len();
        Configuration {
            lo: window.start,
            labels: (0..len as u8).collect(),
            gammas: vec![true; len],
            indegrees: vec![0; len],
        }
    }

    /// Slot indices of the window vertices.
    pub fn window(&self) -> Range<usize> {
        self.lo..self.lo + self.labels.len()
    }

    fn pos(&self, x: usize) -> usize {
        assert!(self.window().contains(&x), "slot index {x} outside window");
        x - self.lo
    }

    pub fn connected(&self, x: usize, y: usize) -> bool {
        self.labels[self.pos(x)] == self.labels[self.pos(y)]
    }

    pub fn gamma(&self, x: usize) -> bool {
        self.gammas[self.labels[self.pos(x)] as usize]
    }

    pub fn indegree(&self, x: usize) -> u32 {
        self.indegrees[self.pos(x)]
    }

    pub fn class_count(&self) -> usize {
        self.gammas.len()
    }
}

/// Edges incident to one lower vertex `b_i`, plus the window moves around it.
#[derive(Debug, Clone)]
pub struct EdgeBatch<'a> {
    /// Job count per upper vertex, indexed by slot index.
    pub out_degrees: &'a [u32],
    /// Window end once the vertices `b_i` can reach are introduced.
    pub extend_to: usize,
    /// Upper endpoints of the jobs ending at `b_i`.
    pub origins: Vec<usize>,
    /// Auxiliary edges leaving `b_i`: endpoint and multiplicity.
    pub targets: Vec<(usize, u32)>,
    /// Window start once finished vertices are retired.
    pub retire_to: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetiredVertex {
    pub index: usize,
    pub indegree: u32,
    pub balanced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub next: Configuration,
    pub retired: Vec<RetiredVertex>,
    /// Components whose last window member retired.
    pub closed: usize,
    /// Closed components that are balanced and not isolated.
    pub eulerian: usize,
    /// Doubled cost: imbalance of retired vertices plus two per Eulerian
    /// closure.
    pub cost2: usize,
}

/// Applies one lower vertex's edges to `config` and retires finished
/// vertices.
pub fn transition_config(config: &Configuration, batch: &EdgeBatch<'_>) -> Result<Transition> {
    let lo = config.lo;
    let old_hi = config.window().end;
    if batch.extend_to < old_hi || batch.retire_to < lo || batch.retire_to > batch.extend_to {
        return Err(Error::InvalidAssignment(format!(
            "window moves {lo}..{old_hi} -> {}..{} are not monotone",
            batch.retire_to, batch.extend_to
        )));
    }
    let width = batch.extend_to - lo;
    let endpoints = batch
        .origins
        .iter()
        .copied()
        .chain(batch.targets.iter().filter(|t| t.1 > 0).map(|t| t.0));
    let mut touched = Vec::new();
    for x in endpoints {
        if !(lo..batch.extend_to).contains(&x) {
            return Err(Error::InvalidAssignment(format!(
                "edge endpoint {x} outside window {lo}..{}",
                batch.extend_to
            )));
        }
        touched.push(x - lo);
    }

    let mut dsu = DisjointSets::new(width);
    let mut first_of_label = vec![usize::MAX; config.gammas.len()];
    for (p, &label) in config.labels.iter().enumerate() {
        match first_of_label[label as usize] {
            usize::MAX => first_of_label[label as usize] = p,
            q => {
                dsu.union(p, q);
            }
        }
    }
    let mut gamma = vec![true; width];
    for (p, &label) in config.labels.iter().enumerate() {
        let r = dsu.find(p);
        gamma[r] = config.gammas[label as usize];
    }
    let mut indegrees = config.indegrees.clone();
    indegrees.resize(width, 0);

    if let Some(&first) = touched.first() {
        for &p in &touched[1..] {
            let (ra, rb) = (dsu.find(first), dsu.find(p));
            if ra != rb {
                let g = gamma[ra] && gamma[rb];
                dsu.union(ra, rb);
                let r = dsu.find(ra);
                gamma[r] = g;
            }
        }
    }
    for &(x, c) in &batch.targets {
        indegrees[x - lo] += c;
    }

    let cut = batch.retire_to - lo;
    let mut cost2 = 0;
    let mut has_degree = vec![false; width];
    let mut retired = Vec::with_capacity(cut);
    for (p, &indegree) in indegrees.iter().enumerate().take(cut) {
        let out = batch.out_degrees[lo + p];
        let balanced = out == indegree;
        cost2 += out.abs_diff(indegree) as usize;
        let r = dsu.find(p);
        gamma[r] &= balanced;
        has_degree[r] |= out > 0 || indegree > 0;
        retired.push(RetiredVertex {
            index: lo + p,
            indegree,
            balanced,
        });
    }
    let mut alive = vec![false; width];
    for p in cut..width {
        let r = dsu.find(p);
        alive[r] = true;
    }
    let (mut closed, mut eulerian) = (0, 0);
    let mut counted = vec![false; width];
    for p in 0..cut {
        let r = dsu.find(p);
        if alive[r] || counted[r] {
            continue;
        }
        counted[r] = true;
        closed += 1;
        if gamma[r] && has_degree[r] {
            eulerian += 1;
        }
    }
    cost2 += 2 * eulerian;

    let mut label_of_root = vec![u8::MAX; width];
    let mut labels = Vec::with_capacity(width - cut);
    let mut gammas = Vec::new();
    for p in cut..width {
        let r = dsu.find(p);
        if label_of_root[r] == u8::MAX {
            label_of_root[r] = gammas.len() as u8;
            gammas.push(gamma[r]);
        }
        labels.push(label_of_root[r]);
    }
    Ok(Transition {
        next: Configuration {
            lo: batch.retire_to,
            labels,
            gammas,
            indegrees: indegrees[cut..].to_vec(),
        },
        retired,
        closed,
        eulerian,
        cost2,
    })
}

/// One line of `--trace` output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub slot: Slot,
    /// Distinct states after this slot.
    pub states: usize,
    /// Smallest doubled partial cost among them.
    pub best: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedOutcome {
    pub schedule: Schedule,
    pub assignment: AuxAssignment,
    /// Optimal energy found by the sweep.
    pub opt: usize,
    pub trace: Vec<TraceRecord>,
}

/// `max(buffer, longest job)`.
pub fn locality(instance: &Instance) -> usize {
    instance.buffer().max(instance.max_length()) as usize
}

/// Upper bound on distinct configurations per slot for a window of `2k`
/// vertices whose in-degrees lie in `0..=max_indegree`.
pub fn state_count_bound(k: usize, max_indegree: usize) -> u128 {
    let w = 2 * k as u32;
    let pow = |b: u128| b.saturating_pow(w);
    pow(2 * k as u128)
        .saturating_mul(pow(2))
        .saturating_mul(pow(max_indegree as u128 + 1))
}

pub fn solve_bounded(instance: &Instance) -> Result<Schedule> {
    solve_bounded_with(instance, BoundedOptions::default()).map(|o| o.schedule)
}

struct Entry<S> {
    state: S,
    value: usize,
    prev: usize,
    split: Vec<u32>,
}

/// Per-slot tables: entries in discovery order plus an index by state.
struct Layers<S> {
    layers: Vec<Vec<Entry<S>>>,
}

impl<S: Ord + Clone> Layers<S> {
    fn new(start: S) -> Self {
        Layers {
            layers: vec![vec![Entry {
                state: start,
                value: 0,
                prev: 0,
                split: Vec::new(),
            }]],
        }
    }

    fn last(&self) -> &[Entry<S>] {
        self.layers.last().unwrap()
    }

    fn push(&mut self, layer: Vec<Entry<S>>) {
        self.layers.push(layer);
    }

    /// Splits chosen at each step, first step first, ending at `entry` of
    /// the last layer.
    fn splits(&self, mut entry: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.layers.len() - 1);
        for layer in self.layers[1..].iter().rev() {
            out.push(layer[entry].split.clone());
            entry = layer[entry].prev;
        }
        out.reverse();
        out
    }
}

/// Keeps the cheapest way to reach each state; ties keep the first found.
struct Frontier<S> {
    index: BTreeMap<S, usize>,
    entries: Vec<Entry<S>>,
}

impl<S: Ord + Clone> Frontier<S> {
    fn new() -> Self {
        Frontier {
            index: BTreeMap::new(),
            entries: Vec::new(),
        }
    }

    fn offer(&mut self, state: S, value: usize, prev: usize, split: &[u32]) {
        match self.index.get(&state) {
            Some(&at) => {
                let e = &mut self.entries[at];
                if value < e.value {
                    e.value = value;
                    e.prev = prev;
                    e.split = split.to_vec();
                }
            }
            None => {
                self.index.insert(state.clone(), self.entries.len());
                self.entries.push(Entry {
                    state,
                    value,
                    prev,
                    split: split.to_vec(),
                });
            }
        }
    }
}

/// Calls `visit` with every way to write `total` as an ordered sum of
/// `allowed.len()` non-negative terms, lexicographically. Terms whose
/// `allowed` flag is false stay zero.
fn for_each_split(
    total: u32,
    allowed: &[bool],
    visit: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    fn rec(
        at: usize,
        left: u32,
        allowed: &[bool],
        split: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> Result<()>,
    ) -> Result<()> {
        if at == allowed.len() {
            return if left == 0 { visit(split) } else { Ok(()) };
        }
        let hi = if allowed[at] { left } else { 0 };
        for v in 0..=hi {
            split[at] = v;
            rec(at + 1, left - v, allowed, split, visit)?;
        }
        split[at] = 0;
        Ok(())
    }
    let mut split = vec![0; allowed.len()];
    rec(0, total, allowed, &mut split, visit)
}

/// Slot-line data shared by both sweeps.
struct Line {
    graph: TwoLevelGraph,
    out_degrees: Vec<u32>,
    /// Jobs ending at each slot index, by id.
    jobs_into: Vec<Vec<usize>>,
}

impl Line {
    fn new(instance: &Instance) -> Self {
        let graph = build_two_level(instance);
        let mut jobs_into = vec![Vec::new(); graph.slots().len()];
        for e in graph.edges() {
            jobs_into[graph.slot_index(e.dest).unwrap()].push(e.job);
        }
        Line {
            out_degrees: graph.out_degrees(),
            graph,
            jobs_into,
        }
    }

    fn slots(&self) -> &[Slot] {
        self.graph.slots()
    }

    /// Assigns the jobs ending at slot `i` to `targets` (slot indices, in
    /// order) by increasing job id.
    fn assign(&self, assignment: &mut AuxAssignment, i: usize, targets: &[usize]) {
        for (&job, &y) in self.jobs_into[i].iter().zip(targets) {
            assignment.set(job, Some(self.slots()[y]));
        }
    }

    fn finish(
        &self,
        assignment: AuxAssignment,
        opt: usize,
        trace: Vec<TraceRecord>,
    ) -> Result<BoundedOutcome> {
        let penalties = penalty_count(&self.graph, &assignment)?;
        if penalties + 1 != opt {
            return Err(Error::InvalidAssignment(format!(
                "backtracked assignment needs {penalties} penalty edges, sweep reported {opt}"
            )));
        }
        let schedule = schedule_from_assignment(&self.graph, &assignment)?;
        Ok(BoundedOutcome {
            schedule,
            assignment,
            opt,
            trace,
        })
    }
}

fn empty_outcome() -> BoundedOutcome {
    BoundedOutcome {
        schedule: Schedule::empty(),
        assignment: AuxAssignment::unassigned(0),
        opt: 0,
        trace: Vec::new(),
    }
}

pub fn solve_bounded_with(instance: &Instance, options: BoundedOptions) -> Result<BoundedOutcome> {
    let k = locality(instance);
    if k > options.k_limit {
        return Err(Error::Precondition(format!(
            "max(buffer, longest job) = {k} exceeds the limit of {}; use the path-cover or exact subset solver",
            options.k_limit
        )));
    }
    if instance.is_empty() {
        return Ok(empty_outcome());
    }
    let line = Line::new(instance);
    let slots = line.slots();
    let m = slots.len();
    let k = k as Slot;

    let mut layers = Layers::new(Configuration::singletons(0..0));
    let mut trace = Vec::with_capacity(m);
    for i in 0..m {
        let neighbors = line.graph.window(slots[i]);
        let extend_to = slots.partition_point(|&x| x <= slots[i] + k);
        let retire_to = if i + 1 < m {
            slots.partition_point(|&x| x + k < slots[i + 1])
        } else {
            m
        };
        let origins: Vec<usize> = line.jobs_into[i]
            .iter()
            .map(|&j| line.graph.slot_index(instance.job(j).origin).unwrap())
            .collect();
        let total = line.jobs_into[i].len() as u32;
        let allowed = vec![true; neighbors.len()];

        let mut frontier = Frontier::new();
        for (prev, entry) in layers.last().iter().enumerate() {
            for_each_split(total, &allowed, &mut |split| {
                let batch = EdgeBatch {
                    out_degrees: &line.out_degrees,
                    extend_to,
                    origins: origins.clone(),
                    targets: neighbors.clone().zip(split.iter().copied()).collect(),
                    retire_to,
                };
                let t = transition_config(&entry.state, &batch)?;
                frontier.offer(t.next, entry.value + t.cost2, prev, split);
                Ok(())
            })?;
        }
        trace.push(TraceRecord {
            slot: slots[i],
            states: frontier.entries.len(),
            best: frontier.entries.iter().map(|e| e.value).min().unwrap_or(0),
        });
        layers.push(frontier.entries);
    }

    let (best, entry) = layers
        .last()
        .iter()
        .enumerate()
        .min_by_key(|(_, e)| e.value)
        .map(|(at, e)| (e.value, at))
        .expect("sweep keeps at least one state");
    let mut assignment = AuxAssignment::unassigned(instance.len());
    for (i, split) in layers.splits(entry).into_iter().enumerate() {
        let targets: Vec<usize> = line
            .graph
            .window(slots[i])
            .zip(split)
            .flat_map(|(y, c)| std::iter::repeat_n(y, c as usize))
            .collect();
        line.assign(&mut assignment, i, &targets);
    }
    line.finish(assignment, best / 2, trace)
}

/// State of the unit-length sweep at position `i`: the pair
/// `(a_i, a_{i+1})`. Position 0 is a virtual slot left of the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitState {
    pub i: usize,
    /// `a_i` and `a_{i+1}` are weakly connected.
    pub c: bool,
    /// Every retired vertex connected to `a_i` is balanced.
    pub gamma0: bool,
    /// Same for `a_{i+1}`.
    pub gamma1: bool,
    pub delta0: u32,
    pub delta1: u32,
}

/// Exact sweep for `buffer = 1` and unit-length jobs on a contiguous slot
/// range. Other slot sets are handed to [`solve_bounded`].
pub fn solve_unit(instance: &Instance) -> Result<Schedule> {
    solve_unit_with(instance).map(|o| o.schedule)
}

pub fn solve_unit_with(instance: &Instance) -> Result<BoundedOutcome> {
    if instance.buffer() != 1 {
        return Err(Error::Precondition(format!(
            "unit sweep needs buffer 1, got {}",
            instance.buffer()
        )));
    }
    if let Some(j) = instance.jobs().iter().find(|j| j.length() != 1) {
        return Err(Error::Precondition(format!(
            "unit sweep needs unit-length jobs; job {} has length {}",
            j.id,
            j.length()
        )));
    }
    if instance.is_empty() {
        return Ok(empty_outcome());
    }
    let line = Line::new(instance);
    let slots = line.slots();
    let m = slots.len();
    if slots[m - 1] - slots[0] + 1 != m as Slot {
        return solve_bounded_with(instance, BoundedOptions::default());
    }

    // Positions 1..=m are slot indices 0..m; 0 and m + 1 are virtual.
    let out = |p: usize| {
        if (1..=m).contains(&p) {
            line.out_degrees[p - 1]
        } else {
            0
        }
    };
    let jobs_between = |from: usize, to: usize| -> bool {
        (1..=m).contains(&from)
            && line.jobs_into[to - 1]
                .iter()
                .any(|&j| instance.job(j).origin == slots[from - 1])
    };

    let start = UnitState {
        i: 0,
        c: false,
        gamma0: true,
        gamma1: true,
        delta0: 0,
        delta1: 0,
    };
    let mut layers = Layers::new(start);
    let mut trace = Vec::with_capacity(m + 1);
    for q in 1..=m {
        let p = q - 1;
        let total = line.jobs_into[q - 1].len() as u32;
        let allowed = [p >= 1, true, q < m];
        let from_left = jobs_between(p, q);
        let from_right = jobs_between(q + 1, q);
        let mut frontier = Frontier::new();
        for (prev, entry) in layers.last().iter().enumerate() {
            let s = entry.state;
            for_each_split(total, &allowed, &mut |split| {
                let (left, here, right) = (split[0], split[1], split[2]);
                let touched = [from_left || left > 0, here > 0, from_right || right > 0];
                // 0 = a_p, 1 = a_q, 2 = a_{q+1}
                let mut dsu = DisjointSets::new(3);
                if s.c {
                    dsu.union(0, 1);
                }
                let hit: Vec<usize> = (0..3).filter(|&v| touched[v]).collect();
                for w in hit.windows(2) {
                    dsu.union(w[0], w[1]);
                }
                let p_in = s.delta0 + left;
                let balanced_p = p_in == out(p);
                let closes = !dsu.same(0, 1) && !dsu.same(0, 2);
                let eulerian = closes && s.gamma0 && balanced_p && (out(p) > 0 || p_in > 0);
                let c = dsu.same(1, 2);
                let gamma0 = if dsu.same(0, 1) {
                    s.gamma1 && s.gamma0 && balanced_p
                } else {
                    s.gamma1
                };
                let gamma1 = if c {
                    gamma0
                } else if dsu.same(0, 2) {
                    s.gamma0 && balanced_p
                } else {
                    true
                };
                let next = UnitState {
                    i: q,
                    c,
                    gamma0,
                    gamma1,
                    delta0: s.delta1 + here,
                    delta1: right,
                };
                let cost2 = out(p).abs_diff(p_in) as usize + 2 * eulerian as usize;
                frontier.offer(next, entry.value + cost2, prev, split);
                Ok(())
            })?;
        }
        trace.push(TraceRecord {
            slot: slots[q - 1],
            states: frontier.entries.len(),
            best: frontier.entries.iter().map(|e| e.value).min().unwrap_or(0),
        });
        layers.push(frontier.entries);
    }

    // Retire a_m; nothing lies to its right.
    let (best, entry) = layers
        .last()
        .iter()
        .enumerate()
        .map(|(at, e)| {
            let s = e.state;
            let balanced = s.delta0 == out(m);
            let eulerian = s.gamma0 && balanced && (out(m) > 0 || s.delta0 > 0);
            (
                e.value + out(m).abs_diff(s.delta0) as usize + 2 * eulerian as usize,
                at,
            )
        })
        .min()
        .expect("sweep keeps at least one state");
    let mut assignment = AuxAssignment::unassigned(instance.len());
    for (step, split) in layers.splits(entry).into_iter().enumerate() {
        // Step `step` handles position q = step + 1, i.e. slot index `step`.
        let targets: Vec<usize> = split
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .flat_map(|(d, &c)| std::iter::repeat_n(step + d - 1, c as usize))
            .collect();
        line.assign(&mut assignment, step, &targets);
    }
    line.finish(assignment, best / 2, trace)
}
