//! Reference implementations written from the problem statement only.

#![allow(dead_code)]

use cranesched::{generate_instance, Instance, Schedule};
use itertools::Itertools;

/// Energy of `order`: one for the first lift, one for every lift whose
/// origin is more than `buffer` away from the previous destination.
pub fn energy_of(instance: &Instance, order: &[usize]) -> usize {
    let jobs = instance.jobs();
    let paid = order
        .windows(2)
        .filter(|w| jobs[w[1]].origin.abs_diff(jobs[w[0]].dest) > instance.buffer())
        .count();
    if order.is_empty() {
        0
    } else {
        1 + paid
    }
}

/// Minimum energy over every permutation.
pub fn oracle(instance: &Instance) -> usize {
    let n = instance.len();
    (0..n)
        .permutations(n)
        .map(|order| energy_of(instance, &order))
        .min()
        .unwrap_or(0)
}

pub fn is_permutation(order: &[usize], n: usize) -> bool {
    order.iter().copied().sorted().eq(0..n)
}

/// The schedule lists every job once and reports its true energy.
pub fn schedule_ok(instance: &Instance, schedule: &Schedule) -> bool {
    is_permutation(&schedule.order, instance.len())
        && energy_of(instance, &schedule.order) == schedule.energy
}

/// Largest matching of a bipartite graph given as left adjacency lists,
/// by trying every choice for every left vertex.
pub fn max_matching_exhaustive(adjacency: &[Vec<usize>]) -> usize {
    fn go(at: usize, adjacency: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
        if at == adjacency.len() {
            return 0;
        }
        let mut best = go(at + 1, adjacency, used);
        for &v in &adjacency[at] {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + go(at + 1, adjacency, used));
                used[v] = false;
            }
        }
        best
    }
    let mut used = vec![false; adjacency.len()];
    go(0, adjacency, &mut used)
}

pub fn golden_instance() -> Instance {
    Instance::from_pairs(14, 1, &[(7, 2), (2, 9), (11, 9), (8, 13)]).unwrap()
}

/// `count` instances with sizes cycling through `sizes`, buffers through
/// `buffers`, on a line of `eta` slots.
pub fn corpus(
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
    eta: u32,
    buffers: &[u32],
    max_length: Option<u32>,
    salt: u64,
) -> Vec<Instance> {
    let sizes: Vec<usize> = sizes.collect();
    (0..count)
        .map(|i| {
            let n = sizes[i % sizes.len()];
            let buffer = buffers[(i / sizes.len()) % buffers.len()];
            let seed = salt.wrapping_mul(1_000_003).wrapping_add(i as u64);
            generate_instance(n, eta, buffer, max_length, seed).unwrap()
        })
        .collect()
}

/// Unit-length jobs on slots `1..=span`, each between two neighbours.
pub fn unit_corpus(count: usize, span: u32, salt: u64) -> Vec<Instance> {
    use rand::{Rng, SeedableRng};
    (0..count)
        .map(|i| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(salt ^ (i as u64) << 8);
            let n = 1 + i % 7;
            let pairs: Vec<_> = (0..n)
                .map(|_| {
                    let s = rng.random_range(1..span);
                    if rng.random_bool(0.5) {
                        (s, s + 1)
                    } else {
                        (s + 1, s)
                    }
                })
                .collect();
            Instance::from_pairs(span, 1, &pairs).unwrap()
        })
        .collect()
}
