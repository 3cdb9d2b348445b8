//! Zero-buffer solver.
//!
//! With `buffer = 0` a transition is free exactly when the previous
//! destination equals the next origin, so an optimal order is an Euler path
//! of the job multigraph after adding as few edges as possible. The minimum
//! number of added edges has a closed form:
//!
//! ```text
//! f(G) = 1/2 * sum_x |in(x) - out(x)| + (#balanced weakly connected components) - 1
//! ```
//!
//! and the minimum energy is `f(G) + 1`.
//!
//! The helpers at the bottom of this module work on plain index graphs and
//! are reused by the two-level model.

use std::collections::BTreeMap;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::model::{Instance, Schedule, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JobEdge {
    pub from: Slot,
    pub to: Slot,
    pub job: usize,
}

/// Multigraph on the occupied slots with one edge per job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotMultiDigraph {
    slots: Vec<Slot>,
    edges: Vec<JobEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeRole {
    /// Joins two weakly connected components.
    Connector,
    /// Cancels one unit of in-surplus against one unit of out-surplus.
    Balancer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AddedEdge {
    pub from: Slot,
    pub to: Slot,
    pub role: EdgeRole,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AddedEdgeSet {
    pub edges: Vec<AddedEdge>,
}

impl AddedEdgeSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// One step of an Euler path over job edges plus added edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrailEdge {
    Job(JobEdge),
    /// Index into the [`AddedEdgeSet`].
    Added {
        from: Slot,
        to: Slot,
        index: usize,
    },
}

impl TrailEdge {
    pub fn from(&self) -> Slot {
        match *self {
            TrailEdge::Job(e) => e.from,
            TrailEdge::Added { from, .. } => from,
        }
    }

    pub fn to(&self) -> Slot {
        match *self {
            TrailEdge::Job(e) => e.to,
            TrailEdge::Added { to, .. } => to,
        }
    }
}

impl SlotMultiDigraph {
    pub fn vertices(&self) -> &[Slot] {
        &self.slots
    }

    pub fn edges(&self) -> &[JobEdge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn index_of(&self, slot: Slot) -> Option<usize> {
        self.slots.binary_search(&slot).ok()
    }

    pub fn in_degree(&self, slot: Slot) -> usize {
        self.edges.iter().filter(|e| e.to == slot).count()
    }

    pub fn out_degree(&self, slot: Slot) -> usize {
        self.edges.iter().filter(|e| e.from == slot).count()
    }

    fn index_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|e| (self.index_of(e.from).unwrap(), self.index_of(e.to).unwrap()))
            .collect()
    }

    fn index_edges_with(&self, added: &AddedEdgeSet) -> Result<Vec<(usize, usize)>> {
        let mut edges = self.index_edges();
        for a in &added.edges {
            match (self.index_of(a.from), self.index_of(a.to)) {
                (Some(u), Some(v)) => edges.push((u, v)),
                _ => {
                    return Err(Error::Precondition(format!(
                        "added edge {}->{} leaves the slot set",
                        a.from, a.to
                    )))
                }
            }
        }
        Ok(edges)
    }
}

pub fn build_job_graph(instance: &Instance) -> SlotMultiDigraph {
    SlotMultiDigraph {
        slots: instance.occupied_slots(),
        edges: instance
            .jobs()
            .iter()
            .map(|j| JobEdge {
                from: j.origin,
                to: j.dest,
                job: j.id,
            })
            .collect(),
    }
}

/// Minimum number of edges whose addition makes the graph semi-Eulerian,
/// computed from degrees and component structure alone.
pub fn min_added_edges(graph: &SlotMultiDigraph) -> Result<usize> {
    if graph.is_empty() {
        return Err(Error::Precondition(
            "the semi-Eulerization cost of an empty graph is undefined".into(),
        ));
    }
    Ok(semi_eulerization_cost(
        graph.slots.len(),
        &graph.index_edges(),
    ))
}

/// Constructs a minimum set of edges that makes the graph semi-Eulerian.
///
/// Components are chained in order of their smallest slot; within each
/// component the smallest qualifying slot is used as entry/exit point.
pub fn semi_eulerize(graph: &SlotMultiDigraph) -> Result<AddedEdgeSet> {
    if graph.is_empty() {
        return Err(Error::Precondition(
            "cannot semi-Eulerize an empty graph".into(),
        ));
    }
    let added = augmenting_edges(graph.slots.len(), &graph.index_edges());
    Ok(AddedEdgeSet {
        edges: added
            .into_iter()
            .map(|(u, v, role)| AddedEdge {
                from: graph.slots[u],
                to: graph.slots[v],
                role,
            })
            .collect(),
    })
}

pub fn is_semi_eulerian_with(graph: &SlotMultiDigraph, added: &AddedEdgeSet) -> bool {
    match graph.index_edges_with(added) {
        Ok(edges) => is_semi_eulerian(graph.slots.len(), &edges),
        Err(_) => false,
    }
}

/// Euler path through all job edges and added edges, starting at the
/// out-surplus vertex if there is one and at the smallest slot otherwise.
pub fn euler_path(graph: &SlotMultiDigraph, added: &AddedEdgeSet) -> Result<Vec<TrailEdge>> {
    let edges = graph.index_edges_with(added)?;
    let trail = euler_trail(graph.slots.len(), &edges)?;
    let jobs = graph.edges.len();
    Ok(trail
        .into_iter()
        .map(|e| {
            if e < jobs {
                TrailEdge::Job(graph.edges[e])
            } else {
                let a = added.edges[e - jobs];
                TrailEdge::Added {
                    from: a.from,
                    to: a.to,
                    index: e - jobs,
                }
            }
        })
        .collect())
}

/// Exact solver for `buffer = 0`.
pub fn solve_zero_buffer(instance: &Instance) -> Result<Schedule> {
    if instance.buffer() != 0 {
        return Err(Error::Precondition(format!(
            "zero-buffer solver requires buffer 0, got {}",
            instance.buffer()
        )));
    }
    if instance.is_empty() {
        return Ok(Schedule::empty());
    }
    let graph = build_job_graph(instance);
    let added = semi_eulerize(&graph)?;
    let trail = euler_path(&graph, &added)?;
    // Dropping the added edges splits the path into runs of job edges; each
    // run is processed with a single lift.
    let order: Vec<usize> = trail
        .iter()
        .filter_map(|e| match e {
            TrailEdge::Job(j) => Some(j.job),
            TrailEdge::Added { .. } => None,
        })
        .collect();
    let schedule = Schedule::evaluated(instance, order)?;
    debug_assert_eq!(schedule.energy, added.len() + 1);
    Ok(schedule)
}

// --- index-graph helpers -------------------------------------------------

pub(crate) fn degrees(n: usize, edges: &[(usize, usize)]) -> (Vec<i64>, Vec<i64>) {
    let mut indeg = vec![0i64; n];
    let mut outdeg = vec![0i64; n];
    for &(u, v) in edges {
        outdeg[u] += 1;
        indeg[v] += 1;
    }
    (indeg, outdeg)
}

/// Weakly connected components over non-isolated vertices, each sorted,
/// ordered by smallest member.
pub(crate) fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut dsu = DisjointSets::new(n);
    let mut touched = vec![false; n];
    for &(u, v) in edges {
        dsu.union(u, v);
        touched[u] = true;
        touched[v] = true;
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut roots_in_order = Vec::new();
    for x in (0..n).filter(|&x| touched[x]) {
        let r = dsu.find(x);
        let members = by_root.entry(r).or_insert_with(|| {
            roots_in_order.push(r);
            Vec::new()
        });
        members.push(x);
    }
    roots_in_order
        .into_iter()
        .map(|r| by_root.remove(&r).unwrap())
        .collect()
}

/// Closed-form semi-Eulerization cost; isolated vertices are ignored.
/// Returns 0 for an edgeless graph.
pub(crate) fn semi_eulerization_cost(n: usize, edges: &[(usize, usize)]) -> usize {
    if edges.is_empty() {
        return 0;
    }
    let (indeg, outdeg) = degrees(n, edges);
    let imbalance: i64 = (0..n).map(|x| (indeg[x] - outdeg[x]).abs()).sum();
    let balanced_components = components(n, edges)
        .iter()
        .filter(|c| c.iter().all(|&x| indeg[x] == outdeg[x]))
        .count();
    (imbalance / 2) as usize + balanced_components - 1
}

/// Constructive semi-Eulerization: chain the components, then pair up the
/// remaining surpluses until at most one start and one end vertex remain.
/// Vertex indices double as the tie-break order.
pub(crate) fn augmenting_edges(
    n: usize,
    edges: &[(usize, usize)],
) -> Vec<(usize, usize, EdgeRole)> {
    if edges.is_empty() {
        return Vec::new();
    }
    let (mut indeg, mut outdeg) = degrees(n, edges);
    let comps = components(n, edges);

    // (entry, exit) per component: entry has out-surplus, exit in-surplus.
    let ends: Vec<(usize, usize)> = comps
        .iter()
        .map(|c| {
            let entry = c.iter().copied().find(|&x| indeg[x] < outdeg[x]);
            let exit = c.iter().copied().find(|&x| indeg[x] > outdeg[x]);
            match (entry, exit) {
                (Some(a), Some(b)) => (a, b),
                (a, b) => (a.unwrap_or(c[0]), b.unwrap_or(c[0])),
            }
        })
        .collect();

    let mut added = Vec::new();
    for w in ends.windows(2) {
        let (from, to) = (w[0].1, w[1].0);
        outdeg[from] += 1;
        indeg[to] += 1;
        added.push((from, to, EdgeRole::Connector));
    }

    loop {
        let imbalance: i64 = (0..n).map(|x| (indeg[x] - outdeg[x]).abs()).sum();
        if imbalance <= 2 {
            break;
        }
        let from = (0..n).find(|&x| indeg[x] > outdeg[x]).unwrap();
        let to = (0..n).find(|&x| indeg[x] < outdeg[x]).unwrap();
        outdeg[from] += 1;
        indeg[to] += 1;
        added.push((from, to, EdgeRole::Balancer));
    }
    added
}

/// Weakly connected (ignoring isolated vertices) with at most one vertex of
/// each surplus kind, each of size one.
pub(crate) fn is_semi_eulerian(n: usize, edges: &[(usize, usize)]) -> bool {
    if edges.is_empty() {
        return true;
    }
    if components(n, edges).len() != 1 {
        return false;
    }
    let (indeg, outdeg) = degrees(n, edges);
    let mut starts = 0;
    let mut ends = 0;
    for x in 0..n {
        match outdeg[x] - indeg[x] {
            0 => {}
            1 => starts += 1,
            -1 => ends += 1,
            _ => return false,
        }
    }
    starts <= 1 && ends <= 1
}

/// Hierholzer's algorithm. Returns edge indices in traversal order.
pub(crate) fn euler_trail(n: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    if !is_semi_eulerian(n, edges) {
        return Err(Error::Precondition("graph is not semi-Eulerian".into()));
    }
    if edges.is_empty() {
        return Ok(Vec::new());
    }
    let (indeg, outdeg) = degrees(n, edges);
    let start = (0..n)
        .find(|&x| outdeg[x] - indeg[x] == 1)
        .or_else(|| (0..n).find(|&x| outdeg[x] > 0))
        .unwrap();

    let mut adjacency = vec![Vec::new(); n];
    for (i, &(u, _)) in edges.iter().enumerate() {
        adjacency[u].push(i);
    }
    let mut next = vec![0usize; n];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut trail = Vec::with_capacity(edges.len());
    while let Some(&(v, via)) = stack.last() {
        if next[v] < adjacency[v].len() {
            let e = adjacency[v][next[v]];
            next[v] += 1;
            stack.push((edges[e].1, Some(e)));
        } else {
            stack.pop();
            if let Some(e) = via {
                trail.push(e);
            }
        }
    }
    trail.reverse();
    debug_assert_eq!(trail.len(), edges.len());
    Ok(trail)
}
