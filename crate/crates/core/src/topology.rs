//! Two-tier access/backbone topology generator.
//!
//! Routers are grouped into clusters of roughly `cluster_size` nodes. Every
//! cluster has two head routers joined by a backbone link; the remaining
//! members are dual-homed onto both heads with access links. Cluster heads
//! form a backbone ring, and extra head-to-head chords are added until the
//! mean degree reaches the target. Only the two configured weights appear
//! in the output.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Cost, Graph, GraphBuilder, GraphError};

#[derive(Debug, Clone)]
pub struct TopologyGenSpec {
    pub nodes: usize,
    pub cluster_size: usize,
    /// Weight of member-to-head links (slow access tier).
    pub access_weight: Cost,
    /// Weight of head-to-head links (fast backbone tier).
    pub backbone_weight: Cost,
    pub target_mean_degree: f64,
    pub seed: u64,
}

impl TopologyGenSpec {
    pub fn new(nodes: usize, seed: u64) -> Self {
        TopologyGenSpec {
            nodes,
            cluster_size: 10,
            access_weight: 64,
            backbone_weight: 1,
            target_mean_degree: 4.0,
            seed,
        }
    }
}

/// Deterministic for a fixed spec: the only randomness is the seeded chord
/// selection.
pub fn generate_topology(spec: &TopologyGenSpec) -> Result<Graph, GraphError> {
    if spec.cluster_size < 2 || spec.nodes < spec.cluster_size {
        return Err(GraphError::InfeasibleDegree {
            target: spec.target_mean_degree,
            nodes: spec.nodes,
            cluster: spec.cluster_size,
        });
    }
    let n = spec.nodes;
    // Clusters must hold at least two nodes each (the two heads).
    let clusters = n.div_ceil(spec.cluster_size).min(n / 2).max(1);
    let base = n / clusters;
    let extra = n % clusters;

    let mut builder = GraphBuilder::new();
    let labels: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
    for l in &labels {
        builder.node(l);
    }
    let mut linked: HashSet<(usize, usize)> = HashSet::new();
    let add = |builder: &mut GraphBuilder,
               linked: &mut HashSet<(usize, usize)>,
               a: usize,
               b: usize,
               w: Cost| {
        let key = (a.min(b), a.max(b));
        if linked.insert(key) {
            builder.link(&labels[a], &labels[b], w);
        }
    };

    let mut heads: Vec<(usize, usize)> = Vec::with_capacity(clusters);
    let mut start = 0usize;
    for c in 0..clusters {
        let size = base + usize::from(c < extra);
        let (h1, h2) = (start, start + 1);
        heads.push((h1, h2));
        add(&mut builder, &mut linked, h1, h2, spec.backbone_weight);
        for m in start + 2..start + size {
            add(&mut builder, &mut linked, m, h1, spec.access_weight);
            add(&mut builder, &mut linked, m, h2, spec.access_weight);
        }
        start += size;
    }

    // Backbone ring over clusters; the two-cluster case gets both
    // cross links so no inter-cluster bridge exists.
    if clusters == 2 {
        add(&mut builder, &mut linked, heads[0].1, heads[1].0, spec.backbone_weight);
        add(&mut builder, &mut linked, heads[1].1, heads[0].0, spec.backbone_weight);
    } else if clusters > 2 {
        for c in 0..clusters {
            let next = (c + 1) % clusters;
            add(
                &mut builder,
                &mut linked,
                heads[c].1,
                heads[next].0,
                spec.backbone_weight,
            );
        }
    }

    let mean = |links: usize| 2.0 * links as f64 / n as f64;
    if spec.target_mean_degree < mean(linked.len()) - 1.0 {
        return Err(GraphError::InfeasibleDegree {
            target: spec.target_mean_degree,
            nodes: spec.nodes,
            cluster: spec.cluster_size,
        });
    }

    // Chords between random head pairs until the target degree is close.
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let head_ids: Vec<usize> = heads.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut missing: Vec<(usize, usize)> = Vec::new();
    for (i, &a) in head_ids.iter().enumerate() {
        for &b in &head_ids[i + 1..] {
            if !linked.contains(&(a.min(b), a.max(b))) {
                missing.push((a, b));
            }
        }
    }
    while mean(linked.len()) < spec.target_mean_degree - 0.25 {
        if missing.is_empty() {
            return Err(GraphError::InfeasibleDegree {
                target: spec.target_mean_degree,
                nodes: spec.nodes,
                cluster: spec.cluster_size,
            });
        }
        let pick = rng.gen_range(0..missing.len());
        let (a, b) = missing.swap_remove(pick);
        add(&mut builder, &mut linked, a, b, spec.backbone_weight);
    }
    let g = builder.build();
    debug_assert!(g.is_connected());
    Ok(g)
}
