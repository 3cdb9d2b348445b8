//! Scheduling as a minimum vertex-disjoint path cover.
//!
//! Job `v` may directly follow job `u` for free iff `s_v` lies within the
//! buffer of `t_u`. These pairs form the interval digraph; an order of all
//! jobs costs one unit per maximal free run, so the optimum equals the
//! minimum number of simple paths covering the digraph.

use std::collections::VecDeque;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::model::{check_permutation, Instance, Schedule, Slot};

pub const DEFAULT_SUBSET_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalDigraph {
    instance: Instance,
    /// Sorted successor lists; may include the vertex itself.
    successors: Vec<Vec<usize>>,
}

impl IntervalDigraph {
    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn vertex_count(&self) -> usize {
        self.successors.len()
    }

    pub fn source(&self, v: usize) -> Slot {
        self.instance.job(v).origin
    }

    /// Slots from which the next lift is free after finishing `u`.
    pub fn terminal(&self, u: usize) -> RangeInclusive<Slot> {
        let t = self.instance.job(u).dest;
        let e = self.instance.buffer();
        t.saturating_sub(e)..=t.saturating_add(e)
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.successors[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.successors[u].binary_search(&v).is_ok()
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.has_edge(v, v))
    }

    /// The same digraph without loops. Minimum cover size is unchanged since
    /// a simple path never uses a loop.
    pub fn without_loops(&self) -> IntervalDigraph {
        let successors = self
            .successors
            .iter()
            .enumerate()
            .map(|(u, vs)| vs.iter().copied().filter(|&v| v != u).collect())
            .collect();
        IntervalDigraph {
            instance: self.instance.clone(),
            successors,
        }
    }
}

pub fn build_interval_digraph(instance: &Instance) -> IntervalDigraph {
    let n = instance.len();
    let mut digraph = IntervalDigraph {
        instance: instance.clone(),
        successors: vec![Vec::new(); n],
    };
    for u in 0..n {
        let window = digraph.terminal(u);
        digraph.successors[u] = (0..n)
            .filter(|&v| window.contains(&instance.job(v).origin))
            .collect();
    }
    digraph
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCover {
    pub paths: Vec<Vec<usize>>,
}

impl PathCover {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks that the paths partition the vertices and follow edges.
    pub fn validate(&self, digraph: &IntervalDigraph) -> Result<()> {
        let n = digraph.vertex_count();
        if let Some(at) = self.paths.iter().position(Vec::is_empty) {
            return Err(Error::InvalidCover(format!("path {at} is empty")));
        }
        let flat: Vec<usize> = self.paths.iter().flatten().copied().collect();
        check_permutation(&flat, n).map_err(|e| Error::InvalidCover(e.to_string()))?;
        for path in &self.paths {
            if let Some(w) = path.windows(2).find(|w| !digraph.has_edge(w[0], w[1])) {
                return Err(Error::InvalidCover(format!(
                    "{} -> {} is not an edge",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }
}

/// Minimum path cover of any digraph by dynamic programming over subsets:
/// the best ordering of `S` ending in `i` pays one unit per vertex not
/// entered along an edge.
pub fn exact_subset_dp(digraph: &IntervalDigraph) -> Result<PathCover> {
    exact_subset_dp_capped(digraph, DEFAULT_SUBSET_CAP)
}

pub fn exact_subset_dp_capped(digraph: &IntervalDigraph, cap: usize) -> Result<PathCover> {
    let n = digraph.vertex_count();
    if n > cap || n > 24 {
        return Err(Error::TooLarge {
            solver: "dp-exact-subset",
            n,
            cap: cap.min(24),
        });
    }
    if n == 0 {
        return Ok(PathCover { paths: Vec::new() });
    }
    const UNSET: u8 = u8::MAX;
    let full = (1usize << n) - 1;
    let at = |set: usize, i: usize| set * n + i;
    let mut value = vec![UNSET; (full + 1) * n];
    let mut back = vec![UNSET; (full + 1) * n];
    let mut predecessors = vec![0usize; n];
    for (u, vs) in digraph.successors.iter().enumerate() {
        for &v in vs {
            predecessors[v] |= 1 << u;
        }
    }
    for i in 0..n {
        value[at(1 << i, i)] = 1;
    }
    for set in 1..=full {
        if set.count_ones() < 2 {
            continue;
        }
        for i in (0..n).filter(|&i| set & (1 << i) != 0) {
            let rest = set & !(1 << i);
            let mut best: Option<(u8, bool, usize)> = None;
            for j in (0..n).filter(|&j| rest & (1 << j) != 0) {
                let edge = predecessors[i] & (1 << j) != 0;
                let v = value[at(rest, j)] + u8::from(!edge);
                // Cheaper first, then an edge over a new path, then smaller j.
                let better = match best {
                    None => true,
                    Some((bv, bedge, _)) => v < bv || (v == bv && edge && !bedge),
                };
                if better {
                    best = Some((v, edge, j));
                }
            }
            let (v, _, j) = best.unwrap();
            value[at(set, i)] = v;
            back[at(set, i)] = j as u8;
        }
    }
    let last = (0..n).min_by_key(|&i| (value[at(full, i)], i)).unwrap();

    let mut order = Vec::with_capacity(n);
    let (mut set, mut i) = (full, last);
    loop {
        order.push(i);
        if set == 1 << i {
            break;
        }
        let j = back[at(set, i)] as usize;
        set &= !(1 << i);
        i = j;
    }
    order.reverse();
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match paths.last_mut() {
            Some(path) if digraph.has_edge(*path.last().unwrap(), v) => path.push(v),
            _ => paths.push(vec![v]),
        }
    }
    debug_assert_eq!(paths.len(), value[at(full, last)] as usize);
    Ok(PathCover { paths })
}

/// True iff the digraph has no directed cycle. A loop is a cycle.
pub fn is_acyclic(digraph: &IntervalDigraph) -> bool {
    let n = digraph.vertex_count();
    let mut indegree = vec![0usize; n];
    for vs in &digraph.successors {
        for &v in vs {
            indegree[v] += 1;
        }
    }
    let mut ready: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = ready.pop_front() {
        seen += 1;
        for &v in &digraph.successors[u] {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                ready.push_back(v);
            }
        }
    }
    seen == n
}

/// Left copy `x_u` for every tail, right copy `y_v` for every head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSplit {
    adjacency: Vec<Vec<usize>>,
    /// Right partner of each left vertex.
    matching: Vec<Option<usize>>,
}

impl BipartiteSplit {
    pub fn new(digraph: &IntervalDigraph) -> Self {
        BipartiteSplit {
            adjacency: digraph.successors.clone(),
            matching: vec![None; digraph.vertex_count()],
        }
    }

    pub fn side_len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adjacency[left]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
            .collect()
    }

    /// Matched `(left, right)` pairs, by left vertex.
    pub fn matching(&self) -> Vec<(usize, usize)> {
        self.matching
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
            .collect()
    }

    pub fn matching_size(&self) -> usize {
        self.matching.iter().flatten().count()
    }

    /// Matching edges are split edges and share no endpoint.
    pub fn is_valid_matching(&self) -> bool {
        let mut used = vec![false; self.side_len()];
        self.matching().into_iter().all(|(u, v)| {
            let fresh = !std::mem::replace(&mut used[v], true);
            fresh && self.adjacency[u].contains(&v)
        })
    }

    /// Hopcroft-Karp: shortest augmenting paths in phases.
    pub fn maximize(&mut self) {
        let n = self.side_len();
        let mut left_of: Vec<Option<usize>> = vec![None; n];
        for (u, v) in self.matching() {
            left_of[v] = Some(u);
        }
        let mut dist = vec![usize::MAX; n];
        loop {
            // Layer free left vertices at 0 and alternate through matches.
            let mut queue = VecDeque::new();
            for (u, d) in dist.iter_mut().enumerate() {
                if self.matching[u].is_none() {
                    *d = 0;
                    queue.push_back(u);
                } else {
                    *d = usize::MAX;
                }
            }
            let mut found = false;
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    match left_of[v] {
                        None => found = true,
                        Some(w) if dist[w] == usize::MAX => {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                        Some(_) => {}
                    }
                }
            }
            if !found {
                return;
            }
            for u in 0..n {
                if self.matching[u].is_none() {
                    self.augment(u, &mut dist, &mut left_of);
                }
            }
        }
    }

    fn augment(&mut self, u: usize, dist: &mut [usize], left_of: &mut [Option<usize>]) -> bool {
        for i in 0..self.adjacency[u].len() {
            let v = self.adjacency[u][i];
            let ok = match left_of[v] {
                None => true,
                Some(w) => dist[w] == dist[u] + 1 && self.augment(w, dist, left_of),
            };
            if ok {
                self.matching[u] = Some(v);
                left_of[v] = Some(u);
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathCoverOptions {
    /// Drop loops before the acyclicity test.
    pub strip_loops: bool,
}

impl Default for PathCoverOptions {
    fn default() -> Self {
        PathCoverOptions { strip_loops: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingOutcome {
    pub cover: PathCover,
    pub split: BipartiteSplit,
}

/// Minimum path cover of an acyclic digraph: `|V| - mu` paths from a
/// maximum matching of the bipartite split.
pub fn solve_acyclic(digraph: &IntervalDigraph) -> Result<PathCover> {
    solve_acyclic_matching(digraph).map(|o| o.cover)
}

pub fn solve_acyclic_matching(digraph: &IntervalDigraph) -> Result<MatchingOutcome> {
    if !is_acyclic(digraph) {
        return Err(Error::Precondition("interval digraph has a cycle".into()));
    }
    let mut split = BipartiteSplit::new(digraph);
    split.maximize();
    let n = digraph.vertex_count();
    let mut has_pred = vec![false; n];
    for (_, v) in split.matching() {
        has_pred[v] = true;
    }
    let paths: Vec<Vec<usize>> = (0..n)
        .filter(|&v| !has_pred[v])
        .map(|start| {
            let mut path = vec![start];
            while let Some(next) = split.matching[*path.last().unwrap()] {
                path.push(next);
            }
            path
        })
        .collect();
    let cover = PathCover { paths };
    debug_assert_eq!(cover.len(), n - split.matching_size());
    Ok(MatchingOutcome { cover, split })
}

/// Concatenates the paths, ordered by smallest job id. The energy is the
/// evaluated one, which may beat the path count when a junction happens to
/// be free.
pub fn schedule_from_cover(instance: &Instance, cover: &PathCover) -> Result<Schedule> {
    let digraph = build_interval_digraph(instance);
    cover.validate(&digraph)?;
    let mut paths = cover.paths.clone();
    paths.sort_by_key(|p| *p.iter().min().unwrap());
    Schedule::evaluated(instance, paths.concat())
}

/// Matching pipeline: build the digraph, optionally strip loops, require it
/// to be acyclic, and schedule the cover.
pub fn solve_matching(instance: &Instance, options: PathCoverOptions) -> Result<Schedule> {
    let mut digraph = build_interval_digraph(instance);
    if options.strip_loops {
        digraph = digraph.without_loops();
    }
    let cover = solve_acyclic(&digraph)?;
    schedule_from_cover(instance, &cover)
}

pub fn solve_subset(instance: &Instance) -> Result<Schedule> {
    let cover = exact_subset_dp(&build_interval_digraph(instance))?;
    schedule_from_cover(instance, &cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{brute_force_opt, generate_instance};

    fn golden_instance() -> Instance {
        Instance::from_pairs(14, 1, &[(7, 2), (2, 9), (11, 9), (8, 13)]).unwrap()
    }

    fn digraph(pairs: &[(Slot, Slot)], buffer: u32) -> IntervalDigraph {
        build_interval_digraph(&Instance::from_pairs(20, buffer, pairs).unwrap())
    }

    #[test]
    fn interval_edges() {
        let d = build_interval_digraph(&golden_instance());
        assert_eq!(d.edges(), vec![(0, 1), (1, 3), (2, 3)]);
        assert_eq!(d.terminal(1), 8..=10);

        let d = digraph(&[(1, 2), (2, 5), (3, 1)], 0);
        assert_eq!(d.edges(), vec![(0, 1), (2, 0)]);
        let d = digraph(&[(3, 3)], 0);
        assert_eq!(d.edges(), vec![(0, 0)]);
        assert!(d.without_loops().edges().is_empty());
    }

    #[test]
    fn subset_dp_examples() {
        let d = build_interval_digraph(&golden_instance());
        let cover = exact_subset_dp(&d).unwrap();
        assert_eq!(cover.len(), 2);
        cover.validate(&d).unwrap();

        let chain = digraph(&[(1, 2), (2, 3), (3, 4)], 0);
        assert_eq!(exact_subset_dp(&chain).unwrap().paths, vec![vec![0, 1, 2]]);

        let apart = digraph(&[(1, 1), (4, 4), (7, 7), (10, 10)], 1);
        assert_eq!(exact_subset_dp(&apart).unwrap().len(), 4);

        let big = build_interval_digraph(&generate_instance(21, 30, 1, None, 1).unwrap());
        assert!(matches!(exact_subset_dp(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn acyclicity() {
        assert!(is_acyclic(&build_interval_digraph(&golden_instance())));
        assert!(!is_acyclic(&digraph(&[(1, 2), (2, 1)], 0)));
        assert!(!is_acyclic(&digraph(&[(3, 3)], 0)));
        assert!(is_acyclic(&digraph(&[(3, 3)], 0).without_loops()));
    }

    #[test]
    fn matching_examples() {
        let d = build_interval_digraph(&golden_instance());
        let out = solve_acyclic_matching(&d).unwrap();
        assert_eq!(out.split.matching(), vec![(0, 1), (1, 3)]);
        assert!(out.split.is_valid_matching());
        assert_eq!(out.cover.paths, vec![vec![0, 1, 3], vec![2]]);

        let chain = digraph(&[(1, 2), (2, 3), (3, 4)], 0);
        let out = solve_acyclic_matching(&chain).unwrap();
        assert_eq!((out.split.matching_size(), out.cover.len()), (2, 1));

        let apart = digraph(&[(1, 1), (4, 4), (7, 7)], 0).without_loops();
        let out = solve_acyclic_matching(&apart).unwrap();
        assert_eq!((out.split.matching_size(), out.cover.len()), (0, 3));

        assert!(solve_acyclic(&digraph(&[(1, 2), (2, 1)], 0))
            .unwrap_err()
            .is_precondition());
    }

    #[test]
    fn schedules() {
        let h = golden_instance();
        let cover = PathCover {
            paths: vec![vec![2], vec![0, 1, 3]],
        };
        let s = schedule_from_cover(&h, &cover).unwrap();
        assert_eq!((s.order, s.energy), (vec![0, 1, 3, 2], 2));
        assert_eq!(
            solve_matching(&h, PathCoverOptions::default())
                .unwrap()
                .energy,
            2
        );

        let chain = Instance::from_pairs(5, 0, &[(1, 2), (2, 3)]).unwrap();
        let one = PathCover {
            paths: vec![vec![0, 1]],
        };
        assert_eq!(schedule_from_cover(&chain, &one).unwrap().energy, 1);

        let apart = Instance::from_pairs(12, 1, &[(1, 1), (4, 4), (7, 7), (10, 10)]).unwrap();
        let singles = PathCover {
            paths: (0..4).map(|v| vec![v]).collect(),
        };
        assert_eq!(schedule_from_cover(&apart, &singles).unwrap().energy, 4);
        assert_eq!(brute_force_opt(&apart).unwrap().energy, 4);

        let bad = PathCover {
            paths: vec![vec![1, 0]],
        };
        assert!(matches!(
            schedule_from_cover(&chain, &bad),
            Err(Error::InvalidCover(_))
        ));
        let partial = PathCover {
            paths: vec![vec![0]],
        };
        assert!(schedule_from_cover(&chain, &partial).is_err());
    }

    #[test]
    fn subset_dp_matches_oracle() {
        for seed in 0..60u64 {
            let i = generate_instance(1 + (seed % 7) as usize, 12, (seed % 3) as u32, None, seed)
                .unwrap();
            let d = build_interval_digraph(&i);
            let cover = exact_subset_dp(&d).unwrap();
            cover.validate(&d).unwrap();
            let opt = brute_force_opt(&i).unwrap().energy;
            assert_eq!(cover.len(), opt, "seed {seed}");
            let stripped = d.without_loops();
            if is_acyclic(&stripped) {
                assert_eq!(solve_acyclic(&stripped).unwrap().len(), opt, "seed {seed}");
            }
        }
    }
}
