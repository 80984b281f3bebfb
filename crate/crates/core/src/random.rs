//! Seeded random metric spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::MetricSpace;
use crate::rational::frac;

/// Shortest-path metric of a complete graph on `n` points with weights in {1/2, 1, …, 3}.
pub fn random_space(n: usize, rng: &mut impl Rng) -> MetricSpace {
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((labels[i].clone(), labels[j].clone(), frac(rng.gen_range(1..=6), 2)));
        }
    }
    MetricSpace::from_weighted_graph(labels, &edges).expect("complete graph with positive weights")
}

pub fn seeded_space(n: usize, seed: u64) -> MetricSpace {
    random_space(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A random tree on `n` vertices with unit edges.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> MetricSpace {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<_> = (1..n).map(|i| (labels[rng.gen_range(0..i)].clone(), labels[i].clone(), frac(1, 1))).collect();
    MetricSpace::from_weighted_graph(labels, &edges).expect("trees are connected")
}
