//! Multipath cost matrix computation: the DT and mDT sweeps.
//!
//! Both algorithms run one deterministic shortest-path sweep from the root
//! and fill a cost matrix `Mc` indexed by (neighbor, destination) with
//! overestimates of the best cost reachable through that neighbor. The
//! finite entries of a row are the candidate next hops. Two composition
//! passes then extend the recorded paths backward (up tree links) and
//! forward (down tree links), which is what makes every single-transverse
//! route visible in the matrix.
//!
//! DT records, for each explored edge `(x, y)`, the cost of the primary
//! path to `x` plus the edge, under `x`'s own first hop. mDT generalizes
//! the recording: a not-yet-marked `y` inherits every alternative already
//! known at `x` (tracked by the next-hop presence table `Tp`), including
//! over internal edges, which is how equal best cost paths survive into
//! the matrix.

use crate::graph::{cost_add, Cost, Graph, NodeId, INF};
use crate::spt::{OpCounter, SptResult, Sweep};

/// Multipath cost matrix for one root: per (neighbor, destination) the
/// best recorded cost of a route through that neighbor, `INF` when none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    root: NodeId,
    neighbors: Vec<NodeId>,
    row_of: Vec<Option<usize>>,
    first_hop_weight: Vec<Cost>,
    first_hop: Vec<Option<NodeId>>,
    values: Vec<Cost>,
    n: usize,
}

impl CostMatrix {
    fn new(g: &Graph, root: NodeId, first_hop: Vec<Option<NodeId>>) -> CostMatrix {
        let neighbors: Vec<NodeId> = g.succ(root).iter().map(|&(v, _)| v).collect();
        let mut row_of = vec![None; g.node_count()];
        for (i, &v) in neighbors.iter().enumerate() {
            row_of[v.index()] = Some(i);
        }
        let first_hop_weight = g.succ(root).iter().map(|&(_, w)| w).collect();
        let n = g.node_count();
        CostMatrix {
            root,
            neighbors,
            row_of,
            first_hop_weight,
            first_hop,
            values: vec![INF; n * g.succ(root).len()],
            n,
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Root neighbors in row order (ascending node index).
    pub fn neighbors(&self) -> &[NodeId] {
        &self.neighbors
    }

    pub fn row_of(&self, v: NodeId) -> Option<usize> {
        self.row_of[v.index()]
    }

    /// `w(root, v)` for a neighbor row.
    pub fn first_hop_weight(&self, row: usize) -> Cost {
        self.first_hop_weight[row]
    }

    /// Primary next hop toward `d` (from the underlying tree).
    pub fn primary_next_hop(&self, d: NodeId) -> Option<NodeId> {
        self.first_hop[d.index()]
    }

    pub fn get(&self, v: NodeId, d: NodeId) -> Cost {
        match self.row_of[v.index()] {
            Some(row) => self.values[row * self.n + d.index()],
            None => INF,
        }
    }

    fn get_row(&self, row: usize, d: NodeId) -> Cost {
        self.values[row * self.n + d.index()]
    }

    /// `Mc(row, d) <- min(Mc(row, d), cand)` with one counted test and, on
    /// improvement, one counted update.
    fn min_in(&mut self, row: usize, d: NodeId, cand: Cost, ops: &mut OpCounter) {
        ops.matrix_ops += 1;
        let cell = &mut self.values[row * self.n + d.index()];
        if cand < *cell {
            ops.matrix_ops += 1;
            *cell = cand;
        }
    }
}

/// Next-hop presence table filled by the mDT sweep: `tp(v, y)` answers
/// whether neighbor `v` was recorded as a candidate first hop toward `y`
/// during the sweep phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NextHopMatrix {
    neighbors: Vec<NodeId>,
    present: Vec<bool>,
    n: usize,
}

impl NextHopMatrix {
    fn new(neighbors: Vec<NodeId>, n: usize) -> NextHopMatrix {
        let k = neighbors.len();
        NextHopMatrix {
            neighbors,
            present: vec![false; k * n],
            n,
        }
    }

    /// Returns `v` when the row is present toward `y`.
    pub fn tp(&self, row: usize, y: NodeId) -> Option<NodeId> {
        self.present[row * self.n + y.index()].then(|| self.neighbors[row])
    }

    fn set(&mut self, row: usize, y: NodeId) -> bool {
        let cell = &mut self.present[row * self.n + y.index()];
        let fresh = !*cell;
        *cell = true;
        fresh
    }
}

/// Candidate next hops per destination, each with its recorded cost,
/// sorted by (cost, node index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub root: NodeId,
    primary: Vec<Option<NodeId>>,
    dests: Vec<Vec<(NodeId, Cost)>>,
}

impl CandidateSet {
    pub(crate) fn new(
        root: NodeId,
        primary: Vec<Option<NodeId>>,
        mut dests: Vec<Vec<(NodeId, Cost)>>,
    ) -> CandidateSet {
        for list in &mut dests {
            list.sort_unstable_by_key(|&(v, c)| (c, v));
        }
        CandidateSet {
            root,
            primary,
            dests,
        }
    }

    pub fn candidates(&self, d: NodeId) -> &[(NodeId, Cost)] {
        &self.dests[d.index()]
    }

    pub fn next_hops(&self, d: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.dests[d.index()].iter().map(|&(v, _)| v)
    }

    pub fn contains(&self, d: NodeId, v: NodeId) -> bool {
        self.dests[d.index()].iter().any(|&(h, _)| h == v)
    }

    pub fn count(&self, d: NodeId) -> usize {
        self.dests[d.index()].len()
    }

    /// Primary next hop toward `d`, always a member of the candidate list
    /// for reachable destinations.
    pub fn primary(&self, d: NodeId) -> Option<NodeId> {
        self.primary[d.index()]
    }

    /// Total candidate count over all destinations.
    pub fn total(&self) -> u64 {
        self.dests.iter().map(|l| l.len() as u64).sum()
    }

    pub(crate) fn from_ecmp(ecmp: &crate::spt::EcmpCandidates, spt: &SptResult) -> CandidateSet {
        let dests = ecmp
            .next_hops
            .iter()
            .enumerate()
            .map(|(d, hops)| {
                hops.iter()
                    .map(|&v| (v, ecmp.cost[d]))
                    .collect::<Vec<_>>()
            })
            .collect();
        CandidateSet::new(ecmp.root, spt.first_hop.clone(), dests)
    }
}

/// Extracts the candidate sets from a cost matrix: per destination all
/// finite-cost (next hop, cost) pairs.
pub fn candidates_from_matrix(mc: &CostMatrix) -> CandidateSet {
    let mut dests: Vec<Vec<(NodeId, Cost)>> = vec![Vec::new(); mc.n];
    for d in 0..mc.n {
        let d = NodeId(d as u32);
        if d == mc.root {
            continue;
        }
        for (row, &v) in mc.neighbors.iter().enumerate() {
            let c = mc.get_row(row, d);
            if c != INF {
                dests[d.index()].push((v, c));
            }
        }
    }
    CandidateSet::new(mc.root, mc.first_hop.clone(), dests)
}

enum Mode {
    Dt,
    Mdt,
}

/// Dijkstra-Transverse: one sweep recording simple transverse routes under
/// the explorer's first hop, then the two composition passes.
pub fn dt(g: &Graph, s: NodeId) -> (CostMatrix, CandidateSet, OpCounter) {
    run(g, s, Mode::Dt)
}

/// multi-Dijkstra-Transverse: like DT, but a not-yet-marked node explored
/// over any edge inherits all candidate rows known at the explorer, so
/// every equal best cost first hop is recorded as well.
pub fn mdt(g: &Graph, s: NodeId) -> (CostMatrix, CandidateSet, OpCounter) {
    run(g, s, Mode::Mdt)
}

fn run(g: &Graph, s: NodeId, mode: Mode) -> (CostMatrix, CandidateSet, OpCounter) {
    let mut ops = OpCounter::default();
    let (mut mc, spt, _) = sweep_phase(g, s, mode, &mut ops);
    composition_passes(g, &spt, &mut mc, &mut ops);
    let candidates = candidates_from_matrix(&mc);
    (mc, candidates, ops)
}

/// Sweep phase shared by DT and mDT. Returns the matrix before the
/// composition passes plus the tree and presence table, which the tests
/// inspect directly.
fn sweep_phase(
    g: &Graph,
    s: NodeId,
    mode: Mode,
    ops: &mut OpCounter,
) -> (CostMatrix, SptResult, NextHopMatrix) {
    let mut sweep = Sweep::new(g, s);
    let neighbors: Vec<NodeId> = g.succ(s).iter().map(|&(v, _)| v).collect();
    let mut row_of = vec![usize::MAX; g.node_count()];
    for (i, &v) in neighbors.iter().enumerate() {
        row_of[v.index()] = i;
    }
    let k = neighbors.len();
    let n = g.node_count();
    let mut values = vec![INF; k * n];
    let mut tp = NextHopMatrix::new(neighbors.clone(), n);
    // Rows present per node, in insertion order; drives mDT inheritance.
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];

    let mut min_in = |values: &mut Vec<Cost>, row: usize, d: NodeId, cand: Cost, ops: &mut OpCounter| {
        ops.matrix_ops += 1;
        let cell = &mut values[row * n + d.index()];
        if cand < *cell {
            ops.matrix_ops += 1;
            *cell = cand;
        }
    };

    while let Some(x) = sweep.pop_min(ops) {
        for &(y, w) in g.succ(x) {
            if y != s {
                if x == s {
                    // Seed: the one-edge route to each neighbor.
                    let row = row_of[y.index()];
                    ops.nexthop_ops += 1;
                    if tp.set(row, y) {
                        rows[y.index()].push(row);
                    }
                    min_in(&mut values, row, y, w, ops);
                } else {
                    let inherit = matches!(mode, Mode::Mdt) && !sweep.is_marked(y);
                    if inherit {
                        let from = rows[x.index()].clone();
                        for row in from {
                            ops.nexthop_ops += 1;
                            if tp.set(row, y) {
                                rows[y.index()].push(row);
                            }
                            let cand = cost_add(values[row * n + x.index()], w);
                            min_in(&mut values, row, y, cand, ops);
                        }
                    } else {
                        // DT recording: route = primary path to x plus this
                        // edge, filed under x's first hop. Only transverse
                        // edges can actually improve a cell here; tree and
                        // internal edges land on costs the tree already beat.
                        let fh = sweep.first_hop[x.index()].expect("marked non-root");
                        let row = row_of[fh.index()];
                        let cand = cost_add(sweep.cost[x.index()], w);
                        min_in(&mut values, row, y, cand, ops);
                        if matches!(mode, Mode::Dt) && tp.set(row, y) {
                            rows[y.index()].push(row);
                        }
                    }
                }
            }
            sweep.relax(x, y, w, ops);
        }
    }

    let spt = sweep.into_result();
    let mut mc = CostMatrix::new(g, s, spt.first_hop.clone());
    mc.values = values;
    (mc, spt, tp)
}

/// The backward then forward composition over tree links, each pass run
/// once. Backward walks the marking order in reverse so climbs toward the
/// root chain up within the single pass; forward walks it in order so
/// descents chain down. Updates that would write the root's column are
/// skipped.
fn composition_passes(g: &Graph, spt: &SptResult, mc: &mut CostMatrix, ops: &mut OpCounter) {
    let k = mc.neighbors.len();
    // Backward: lift costs from a node onto its father.
    for &t in spt.order.iter().rev() {
        if t == spt.root {
            continue;
        }
        let f = spt.father[t.index()].expect("reachable non-root");
        if f == spt.root {
            continue;
        }
        let w_up = g.weight(t, f).expect("father link");
        for row in 0..k {
            let cand = cost_add(mc.get_row(row, t), w_up);
            mc.min_in(row, f, cand, ops);
        }
    }
    // Forward: push costs from a father onto its child.
    for &t in spt.order.iter() {
        if t == spt.root {
            continue;
        }
        let f = spt.father[t.index()].expect("reachable non-root");
        let w_down = g.weight(f, t).expect("father link");
        for row in 0..k {
            let cand = cost_add(mc.get_row(row, f), w_down);
            mc.min_in(row, t, cand, ops);
        }
    }
}

/// Searches seeded random graphs for an instance where DT misses an equal
/// best cost next hop that mDT records: the regression material for the
/// inheritance generalization. Returns the first witness found.
pub struct SeparationWitness {
    pub seed: u64,
    pub graph: Graph,
    pub root: NodeId,
    pub dest: NodeId,
    pub missed_hop: NodeId,
}

pub fn find_dt_mdt_separation(max_seeds: u64) -> Option<SeparationWitness> {
    for seed in 0..max_seeds {
        let g = crate::random::connected(seed, 6..=10, 1..=2);
        if let Some(w) = separation_in(&g, seed) {
            return Some(w);
        }
    }
    None
}

/// Checks one graph for the DT/mDT separation property.
pub fn separation_in(g: &Graph, seed: u64) -> Option<SeparationWitness> {
    for s in g.nodes() {
        let (ecmp, _) = crate::spt::ecmp_candidates(g, s);
        let (_, dt_cands, _) = dt(g, s);
        let (_, mdt_cands, _) = mdt(g, s);
        for d in g.nodes() {
            if d == s {
                continue;
            }
            for &v in ecmp.next_hops_of(d) {
                if !dt_cands.contains(d, v) && mdt_cands.contains(d, v) {
                    return Some(SeparationWitness {
                        seed,
                        graph: g.clone(),
                        root: s,
                        dest: d,
                        missed_hop: v,
                    });
                }
            }
        }
    }
    None
}
