//! Seeded random graph sampling for property checks and benchmarks.
//!
//! All samplers are deterministic in the seed. Links are symmetric (same
//! weight in both directions) to match the evaluation corpus.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{is_two_edge_connected, Cost, Graph, GraphBuilder};

/// Random connected graph: a random spanning tree plus extra random links.
pub fn connected(seed: u64, nodes: RangeInclusive<usize>, weights: RangeInclusive<Cost>) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(nodes);
    sample(&mut rng, n, weights)
}

/// Random connected graph with every link at the same weight.
pub fn constant_weight(seed: u64, nodes: RangeInclusive<usize>, weight: Cost) -> Graph {
    connected(seed, nodes, weight..=weight)
}

/// Random bridge-free graph: rejection-samples [`connected`] until the
/// bridge scan comes back empty. Densities are chosen so this terminates
/// quickly in practice.
pub fn two_edge_connected(
    seed: u64,
    nodes: RangeInclusive<usize>,
    weights: RangeInclusive<Cost>,
) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(nodes.clone());
        // Start from a random cycle so low densities already have a chance.
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.node(&format!("v{i}"));
        }
        for i in 0..n {
            let (u, v) = (order[i], order[(i + 1) % n]);
            let w = rng.gen_range(weights.clone());
            let _ = b.try_link(&format!("v{u}"), &format!("v{v}"), w, w, 0);
        }
        let extra = rng.gen_range(n / 2..=n);
        let g = add_random_links(&mut rng, b, n, extra, weights.clone());
        if is_two_edge_connected(&g)
            .map(|r| r.two_edge_connected())
            .unwrap_or(false)
        {
            return g;
        }
    }
}

fn sample(rng: &mut ChaCha8Rng, n: usize, weights: RangeInclusive<Cost>) -> Graph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.node(&format!("v{i}"));
    }
    // Random spanning tree: attach each node to a random earlier one.
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let w = rng.gen_range(weights.clone());
        b.link(&format!("v{}", order[i]), &format!("v{parent}"), w);
    }
    let extra = if n >= 2 { rng.gen_range(0..=n) } else { 0 };
    add_random_links(rng, b, n, extra, weights)
}

fn add_random_links(
    rng: &mut ChaCha8Rng,
    mut b: GraphBuilder,
    n: usize,
    extra: usize,
    weights: RangeInclusive<Cost>,
) -> Graph {
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < extra * 8 {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let w = rng.gen_range(weights.clone());
        if b.try_link(&format!("v{u}"), &format!("v{v}"), w, w, 0).is_ok() {
            added += 1;
        }
    }
    b.build()
}
