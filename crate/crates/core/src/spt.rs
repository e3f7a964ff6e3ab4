//! Deterministic shortest path tree computation and equal-cost multipath
//! candidate sets, instrumented with operation counts.
//!
//! The best-cost vector is a plain array and the minimum extraction is a
//! linear scan over the not-yet-marked nodes, so operation counts are
//! directly comparable across the algorithms built on top of this sweep.
//! Ties are broken towards the smallest node index, both when extracting
//! the minimum and when keeping an existing father on an equal-cost
//! relaxation, which makes every derived structure deterministic.

use crate::graph::{cost_add, Cost, Graph, NodeId, INF};

/// Instrumentation counters shared by all algorithms in this crate.
///
/// Units: one minimum-scan comparison per candidate examined during an
/// extraction; one relaxation test per explored edge; one cost update per
/// assignment to the best-cost vector; matrix ops count cost-matrix tests
/// and assignments; next-hop ops count next-hop table updates (used by the
/// multipath sweeps and the ECMP set inheritance).
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounter {
    pub min_scan_comparisons: u64,
    pub relax_tests: u64,
    pub cost_updates: u64,
    pub matrix_ops: u64,
    pub nexthop_ops: u64,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.min_scan_comparisons
            + self.relax_tests
            + self.cost_updates
            + self.matrix_ops
            + self.nexthop_ops
    }

    pub fn absorb(&mut self, other: &OpCounter) {
        self.min_scan_comparisons += other.min_scan_comparisons;
        self.relax_tests += other.relax_tests;
        self.cost_updates += other.cost_updates;
        self.matrix_ops += other.matrix_ops;
        self.nexthop_ops += other.nexthop_ops;
    }
}

/// Shortest path tree rooted at `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SptResult {
    pub root: NodeId,
    /// Best cost per node; `INF` for unreachable nodes.
    pub cost: Vec<Cost>,
    /// Father on the tree; `None` for the root and unreachable nodes.
    pub father: Vec<Option<NodeId>>,
    /// Nodes in marking order, root first. Unreachable nodes are absent.
    pub order: Vec<NodeId>,
    /// Primary next hop per node; `None` for the root and unreachable nodes.
    pub first_hop: Vec<Option<NodeId>>,
}

impl SptResult {
    pub fn cost_of(&self, d: NodeId) -> Cost {
        self.cost[d.index()]
    }

    pub fn first_hop_of(&self, d: NodeId) -> Option<NodeId> {
        self.first_hop[d.index()]
    }

    pub fn reachable(&self, d: NodeId) -> bool {
        self.cost[d.index()] != INF
    }
}

pub(crate) enum Relax {
    Improved,
    Equal,
    Worse,
}

/// One in-progress sweep. The multipath algorithms drive this directly so
/// that their tie-breaking and operation accounting match plain Dijkstra's
/// exactly.
pub(crate) struct Sweep {
    pub root: NodeId,
    pub cost: Vec<Cost>,
    pub father: Vec<Option<NodeId>>,
    pub first_hop: Vec<Option<NodeId>>,
    pub order: Vec<NodeId>,
    marked: Vec<bool>,
    unmarked: Vec<NodeId>,
}

impl Sweep {
    pub fn new(g: &Graph, root: NodeId) -> Sweep {
        let n = g.node_count();
        let mut cost = vec![INF; n];
        cost[root.index()] = 0;
        Sweep {
            root,
            cost,
            father: vec![None; n],
            first_hop: vec![None; n],
            order: Vec::with_capacity(n),
            marked: vec![false; n],
            unmarked: g.nodes().collect(),
        }
    }

    /// Linear scan for the unmarked node of minimum cost, smallest index
    /// first among ties. One comparison is counted per candidate examined.
    /// Returns `None` once only unreachable nodes remain.
    pub fn pop_min(&mut self, ops: &mut OpCounter) -> Option<NodeId> {
        let mut best: Option<(usize, NodeId, Cost)> = None;
        for (slot, &x) in self.unmarked.iter().enumerate() {
            ops.min_scan_comparisons += 1;
            let c = self.cost[x.index()];
            let better = match best {
                None => c != INF,
                Some((_, bx, bc)) => c < bc || (c == bc && x < bx),
            };
            if better {
                best = Some((slot, x, c));
            }
        }
        let (slot, x, _) = best?;
        self.unmarked.swap_remove(slot);
        self.marked[x.index()] = true;
        self.order.push(x);
        Some(x)
    }

    pub fn is_marked(&self, x: NodeId) -> bool {
        self.marked[x.index()]
    }

    /// Relaxation test for edge `(x, y)`; `x` must be marked. On strict
    /// improvement the father and first hop move to the new path.
    pub fn relax(&mut self, x: NodeId, y: NodeId, w: Cost, ops: &mut OpCounter) -> Relax {
        ops.relax_tests += 1;
        let cand = cost_add(self.cost[x.index()], w);
        let cur = self.cost[y.index()];
        if cand < cur {
            ops.cost_updates += 1;
            self.cost[y.index()] = cand;
            self.father[y.index()] = Some(x);
            self.first_hop[y.index()] = if x == self.root {
                Some(y)
            } else {
                self.first_hop[x.index()]
            };
            Relax::Improved
        } else if cand == cur && cand != INF {
            Relax::Equal
        } else {
            Relax::Worse
        }
    }

    pub fn into_result(self) -> SptResult {
        SptResult {
            root: self.root,
            cost: self.cost,
            father: self.father,
            order: self.order,
            first_hop: self.first_hop,
        }
    }
}

/// Single-source shortest paths from `s`. Unreachable nodes keep cost
/// `INF`; the marking order covers reachable nodes only.
pub fn dijkstra(g: &Graph, s: NodeId) -> (SptResult, OpCounter) {
    let mut ops = OpCounter::default();
    let mut sweep = Sweep::new(g, s);
    while let Some(x) = sweep.pop_min(&mut ops) {
        for &(y, w) in g.succ(x) {
            sweep.relax(x, y, w, &mut ops);
        }
    }
    (sweep.into_result(), ops)
}

/// Equal-cost multipath next hops per destination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcmpCandidates {
    pub root: NodeId,
    /// Best cost per destination (same as the SPT's).
    pub cost: Vec<Cost>,
    /// Next hops carrying an equal best cost path, ascending by index.
    pub next_hops: Vec<Vec<NodeId>>,
}

impl EcmpCandidates {
    pub fn next_hops_of(&self, d: NodeId) -> &[NodeId] {
        &self.next_hops[d.index()]
    }
}

/// ECMP candidate sets by set inheritance along the sweep: a node explored
/// over an edge that ties the best cost takes the union of its own and the
/// explorer's first-hop sets. Set element copies are counted as next-hop
/// table updates.
pub fn ecmp_candidates(g: &Graph, s: NodeId) -> (EcmpCandidates, OpCounter) {
    let mut ops = OpCounter::default();
    let mut sweep = Sweep::new(g, s);
    let mut sets: Vec<Vec<NodeId>> = vec![Vec::new(); g.node_count()];
    while let Some(x) = sweep.pop_min(&mut ops) {
        for &(y, w) in g.succ(x) {
            if y == s {
                sweep.relax(x, y, w, &mut ops);
                continue;
            }
            let outcome = sweep.relax(x, y, w, &mut ops);
            if matches!(outcome, Relax::Worse) {
                continue;
            }
            let inherited: Vec<NodeId> = if x == s {
                vec![y]
            } else {
                sets[x.index()].clone()
            };
            match outcome {
                Relax::Improved => {
                    ops.nexthop_ops += inherited.len() as u64;
                    sets[y.index()] = inherited;
                }
                Relax::Equal => {
                    for v in inherited {
                        if !sets[y.index()].contains(&v) {
                            ops.nexthop_ops += 1;
                            sets[y.index()].push(v);
                        }
                    }
                }
                Relax::Worse => unreachable!(),
            }
        }
    }
    for set in &mut sets {
        set.sort_unstable();
    }
    let result = sweep.into_result();
    (
        EcmpCandidates {
            root: s,
            cost: result.cost,
            next_hops: sets,
        },
        ops,
    )
}
