//! Weighted directed graph with guaranteed symmetric edge presence.
//!
//! Every link `{x, y}` is stored as the two directed edges `(x, y)` and
//! `(y, x)`. The two directions always exist together but may carry
//! different weights. Weights are strictly positive integers.

use std::collections::HashMap;

use thiserror::Error;

/// Path and edge costs. Additive, strictly positive per edge.
pub type Cost = u64;

/// Sentinel for "no path recorded".
pub const INF: Cost = Cost::MAX;

/// Addition that absorbs [`INF`] instead of wrapping.
#[inline]
pub fn cost_add(a: Cost, b: Cost) -> Cost {
    if a == INF || b == INF { INF } else { a + b }
}

/// Dense node index. Indices run `0..n` in order of first appearance in the
/// input, which is also the tie-breaking order used by every algorithm in
/// this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: cannot parse `{text}`")]
    Parse { line: usize, text: String },
    #[error("line {line}: weight must be a strictly positive integer")]
    NonpositiveWeight { line: usize },
    #[error("line {line}: self loop on `{label}`")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: duplicate link `{a}`-`{b}`")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("cannot reach mean degree {target} with {nodes} nodes and cluster size {cluster}")]
    InfeasibleDegree {
        target: f64,
        nodes: usize,
        cluster: usize,
    },
}

/// Immutable weighted graph. Construct through [`GraphBuilder`] or
/// [`Graph::parse`]; safe to share across threads once built.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    by_label: HashMap<String, NodeId>,
    /// Successor lists sorted by neighbor index.
    adj: Vec<Vec<(NodeId, Cost)>>,
    links: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of directed edges (twice the link count).
    pub fn edge_count(&self) -> usize {
        self.links * 2
    }

    /// Number of undirected links.
    pub fn link_count(&self) -> usize {
        self.links
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.labels.len() as u32).map(NodeId)
    }

    /// Successors of `x` with edge weights, ascending by node index.
    pub fn succ(&self, x: NodeId) -> &[(NodeId, Cost)] {
        &self.adj[x.index()]
    }

    /// Outgoing degree `k+(x)`.
    pub fn out_degree(&self, x: NodeId) -> usize {
        self.adj[x.index()].len()
    }

    /// Incoming degree `k-(x)`. Equal to the outgoing degree because edge
    /// presence is symmetric.
    pub fn in_degree(&self, x: NodeId) -> usize {
        self.out_degree(x)
    }

    pub fn weight(&self, x: NodeId, y: NodeId) -> Option<Cost> {
        let list = &self.adj[x.index()];
        list.binary_search_by_key(&y, |&(n, _)| n)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn label(&self, x: NodeId) -> &str {
        &self.labels[x.index()]
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.by_label.get(label).copied()
    }

    /// All directed edges `(x, y, w)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, Cost)> + '_ {
        self.nodes()
            .flat_map(move |x| self.adj[x.index()].iter().map(move |&(y, w)| (x, y, w)))
    }

    /// All undirected links as `(x, y, w_xy, w_yx)` with `x < y`.
    pub fn links(&self) -> impl Iterator<Item = (NodeId, NodeId, Cost, Cost)> + '_ {
        self.edges().filter_map(move |(x, y, w)| {
            (x < y).then(|| (x, y, w, self.weight(y, x).unwrap()))
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.labels.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![NodeId(0)];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in self.succ(x) {
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.node_count()
    }

    /// Parses the edge-list format: one link per line, `u v w` or
    /// `u v w w_rev`, `#` starts a comment, a single bare token declares an
    /// isolated node. The reverse direction of every link is implied; when
    /// `w_rev` is omitted it equals `w`.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut builder = GraphBuilder::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                [node] => {
                    builder.node(node);
                }
                [u, v, rest @ ..] if rest.len() == 1 || rest.len() == 2 => {
                    let parse_w = |tok: &str| -> Result<Cost, GraphError> {
                        let w: Cost = tok.parse().map_err(|_| GraphError::Parse {
                            line,
                            text: content.to_string(),
                        })?;
                        if w == 0 {
                            return Err(GraphError::NonpositiveWeight { line });
                        }
                        Ok(w)
                    };
                    let w = parse_w(rest[0])?;
                    let w_rev = if rest.len() == 2 { parse_w(rest[1])? } else { w };
                    builder.try_link(u, v, w, w_rev, line)?;
                }
                _ => {
                    return Err(GraphError::Parse {
                        line,
                        text: content.to_string(),
                    })
                }
            }
        }
        Ok(builder.build())
    }

    /// Serializes to the edge-list format parsed by [`Graph::parse`].
    /// Links are emitted sorted by endpoint indices; bare node declarations
    /// are prepended when needed so that parsing reproduces the exact node
    /// order (isolated nodes, or nodes whose first link would otherwise
    /// introduce them out of order).
    pub fn to_edge_list(&self) -> String {
        let links: Vec<(NodeId, NodeId, Cost, Cost)> = self.links().collect();
        // Replay introduction order to see which nodes need declarations.
        let mut introduced = vec![false; self.node_count()];
        let mut next_expected = 0usize;
        let mut need_decl = vec![false; self.node_count()];
        for &(x, y, _, _) in &links {
            for id in [x, y] {
                if !introduced[id.index()] {
                    if id.index() != next_expected {
                        need_decl[id.index()] = true;
                    } else {
                        introduced[id.index()] = true;
                        next_expected += 1;
                        while next_expected < self.node_count() && introduced[next_expected] {
                            next_expected += 1;
                        }
                    }
                }
            }
        }
        let mut out = String::new();
        for x in self.nodes() {
            let isolated = self.adj[x.index()].is_empty();
            if need_decl[x.index()] || isolated {
                out.push_str(self.label(x));
                out.push('\n');
            }
        }
        for (x, y, w, w_rev) in links {
            if w == w_rev {
                out.push_str(&format!("{} {} {}\n", self.label(x), self.label(y), w));
            } else {
                out.push_str(&format!(
                    "{} {} {} {}\n",
                    self.label(x),
                    self.label(y),
                    w,
                    w_rev
                ));
            }
        }
        out
    }
}

/// Incremental construction with label interning. Links added here are
/// undirected: both directions are materialized on [`GraphBuilder::build`].
#[derive(Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    by_label: HashMap<String, NodeId>,
    adj: Vec<Vec<(NodeId, Cost)>>,
    links: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.by_label.get(label) {
            return id;
        }
        let id = NodeId(self.labels.len() as u32);
        self.labels.push(label.to_string());
        self.by_label.insert(label.to_string(), id);
        self.adj.push(Vec::new());
        id
    }

    /// Adds a symmetric-weight link. Panics on self loops or duplicates;
    /// use [`GraphBuilder::try_link`] for fallible insertion.
    pub fn link(&mut self, u: &str, v: &str, w: Cost) -> &mut Self {
        self.try_link(u, v, w, w, 0).expect("invalid link");
        self
    }

    /// Adds a link with distinct per-direction weights.
    pub fn link_asym(&mut self, u: &str, v: &str, w: Cost, w_rev: Cost) -> &mut Self {
        self.try_link(u, v, w, w_rev, 0).expect("invalid link");
        self
    }

    pub fn try_link(
        &mut self,
        u: &str,
        v: &str,
        w: Cost,
        w_rev: Cost,
        line: usize,
    ) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop {
                line,
                label: u.to_string(),
            });
        }
        if w == 0 || w_rev == 0 {
            return Err(GraphError::NonpositiveWeight { line });
        }
        let a = self.node(u);
        let b = self.node(v);
        if self.adj[a.index()].iter().any(|&(n, _)| n == b) {
            return Err(GraphError::DuplicateEdge {
                line,
                a: u.to_string(),
                b: v.to_string(),
            });
        }
        self.adj[a.index()].push((b, w));
        self.adj[b.index()].push((a, w_rev));
        self.links += 1;
        Ok(())
    }

    pub fn build(mut self) -> Graph {
        for list in &mut self.adj {
            list.sort_unstable_by_key(|&(n, _)| n);
        }
        Graph {
            labels: self.labels,
            by_label: self.by_label,
            adj: self.adj,
            links: self.links,
        }
    }
}

/// The 16-router test topology used throughout the test suite: root `s`
/// with three branches under neighbors `1`, `n` and `6`, two transverse
/// links (`6`-`1` and `b`-`c`), one internal link (`c`-`11`), all weights 1.
///
/// Node insertion order is part of the fixture: it pins the deterministic
/// tie-breaking (node `11` precedes `c`), and with it the marking order
/// that the golden tests assert against.
pub fn fig1() -> Graph {
    let mut b = GraphBuilder::new();
    b.link("s", "1", 1)
        .link("s", "n", 1)
        .link("s", "6", 1)
        .link("1", "b", 1)
        .link("b", "2", 1)
        .link("b", "3", 1)
        .link("2", "4", 1)
        .link("2", "5", 1)
        .link("n", "11", 1)
        .link("11", "d", 1)
        .link("n", "c", 1)
        .link("c", "9", 1)
        .link("c", "10", 1)
        .link("6", "7", 1)
        .link("6", "8", 1)
        .link("6", "1", 1) // transverse t1
        .link("b", "c", 1) // transverse t2
        .link("c", "11", 1); // internal i
    b.build()
}

/// Outcome of the bridge scan. A bridge is a link whose removal disconnects
/// the graph; a graph without bridges is 2-edge-connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeReport {
    /// Bridges as `(x, y)` with `x < y`, sorted.
    pub bridges: Vec<(NodeId, NodeId)>,
}

impl BridgeReport {
    pub fn two_edge_connected(&self) -> bool {
        self.bridges.is_empty()
    }
}

/// Finds all bridge links with one DFS over the undirected structure
/// (visit times and earliest back-edge reachability). Errors on
/// disconnected input.
pub fn is_two_edge_connected(g: &Graph) -> Result<BridgeReport, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.node_count();
    let mut visit = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut clock = 0usize;
    let mut bridges = Vec::new();
    if n == 0 {
        return Ok(BridgeReport { bridges });
    }

    // Iterative DFS: (node, parent, next successor slot).
    let mut stack: Vec<(NodeId, Option<NodeId>, usize)> = vec![(NodeId(0), None, 0)];
    visit[0] = clock;
    low[0] = clock;
    clock += 1;
    while let Some(&mut (x, parent, ref mut slot)) = stack.last_mut() {
        if let Some(&(y, _)) = g.succ(x).get(*slot) {
            *slot += 1;
            if Some(y) == parent {
                continue;
            }
            if visit[y.index()] == usize::MAX {
                visit[y.index()] = clock;
                low[y.index()] = clock;
                clock += 1;
                stack.push((y, Some(x), 0));
            } else {
                low[x.index()] = low[x.index()].min(visit[y.index()]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p.index()] = low[p.index()].min(low[x.index()]);
                if low[x.index()] > visit[p.index()] {
                    let (a, b) = if p < x { (p, x) } else { (x, p) };
                    bridges.push((a, b));
                }
            }
        }
    }
    bridges.sort_unstable();
    Ok(BridgeReport { bridges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(g: &Graph, labels: &[&str]) -> Vec<NodeId> {
        labels.iter().map(|l| g.node_by_label(l).unwrap()).collect()
    }

    #[test]
    fn parse_symmetric_default() {
        let g = Graph::parse("a b 5").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 2);
        let (a, b) = (g.node_by_label("a").unwrap(), g.node_by_label("b").unwrap());
        assert_eq!(g.weight(a, b), Some(5));
        assert_eq!(g.weight(b, a), Some(5));
    }

    #[test]
    fn parse_asymmetric_weights() {
        let g = Graph::parse("a b 5 9").unwrap();
        let (a, b) = (g.node_by_label("a").unwrap(), g.node_by_label("b").unwrap());
        assert_eq!(g.weight(a, b), Some(5));
        assert_eq!(g.weight(b, a), Some(9));
    }

    #[test]
    fn parse_rejects_duplicate_link() {
        let err = Graph::parse("a b 5\na b 6").unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { line: 2, .. }));
        // The implied reverse direction collides too.
        let err = Graph::parse("a b 5\nb a 6").unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { line: 2, .. }));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            Graph::parse("a a 3").unwrap_err(),
            GraphError::SelfLoop { line: 1, .. }
        ));
        assert!(matches!(
            Graph::parse("a b 0").unwrap_err(),
            GraphError::NonpositiveWeight { line: 1 }
        ));
        assert!(matches!(
            Graph::parse("a b x").unwrap_err(),
            GraphError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            Graph::parse("a b 1 2 3").unwrap_err(),
            GraphError::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn parse_skips_comments_and_blanks() {
        let g = Graph::parse("# header\n\na b 2 # trailing\n").unwrap();
        assert_eq!(g.link_count(), 1);
    }

    #[test]
    fn fig1_shape() {
        let g = fig1();
        assert_eq!(g.node_count(), 16);
        assert_eq!(g.link_count(), 18);
        assert_eq!(g.edge_count(), 36);
        let s = g.node_by_label("s").unwrap();
        assert_eq!(g.out_degree(s), 3);
        assert!(g.edges().all(|(_, _, w)| w == 1));
    }

    #[test]
    fn round_trip_fig1() {
        let g = fig1();
        let text = g.to_edge_list();
        let back = Graph::parse(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn round_trip_isolated_node() {
        let mut b = GraphBuilder::new();
        b.node("lonely");
        let g = b.build();
        let back = Graph::parse(&g.to_edge_list()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn round_trip_out_of_order_introduction() {
        // Node order a, b, c but the only links are a-c and b-c: a sorted
        // link emission would introduce c before b without declarations.
        let mut builder = GraphBuilder::new();
        builder.node("a");
        builder.node("b");
        builder.node("c");
        builder.link("a", "c", 1).link("b", "c", 2);
        let g = builder.build();
        let back = Graph::parse(&g.to_edge_list()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn bridges_on_triangle_and_path() {
        let mut b = GraphBuilder::new();
        b.link("a", "b", 1).link("b", "c", 1).link("a", "c", 1);
        let report = is_two_edge_connected(&b.build()).unwrap();
        assert!(report.two_edge_connected());
        assert!(report.bridges.is_empty());

        let mut b = GraphBuilder::new();
        b.link("a", "b", 1).link("b", "c", 1);
        let g = b.build();
        let report = is_two_edge_connected(&g).unwrap();
        assert!(!report.two_edge_connected());
        let want: Vec<(NodeId, NodeId)> = vec![
            (g.node_by_label("a").unwrap(), g.node_by_label("b").unwrap()),
            (g.node_by_label("b").unwrap(), g.node_by_label("c").unwrap()),
        ];
        let mut want = want
            .into_iter()
            .map(|(x, y)| if x < y { (x, y) } else { (y, x) })
            .collect::<Vec<_>>();
        want.sort_unstable();
        assert_eq!(report.bridges, want);
    }

    #[test]
    fn bridges_on_fig1_include_leaf_links() {
        let g = fig1();
        let report = is_two_edge_connected(&g).unwrap();
        assert!(!report.two_edge_connected());
        let [eleven, d] = ids(&g, &["11", "d"])[..] else {
            unreachable!()
        };
        let key = if eleven < d { (eleven, d) } else { (d, eleven) };
        assert!(report.bridges.contains(&key));
    }

    #[test]
    fn bridges_error_on_disconnected() {
        let mut b = GraphBuilder::new();
        b.link("a", "b", 1);
        b.node("c");
        assert_eq!(
            is_two_edge_connected(&b.build()).unwrap_err(),
            GraphError::Disconnected
        );
    }

    /// Brute force: a link is a bridge iff removing it disconnects the graph.
    fn brute_force_bridges(g: &Graph) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (x, y, _, _) in g.links() {
            let mut seen = vec![false; g.node_count()];
            let mut stack = vec![NodeId(0)];
            seen[0] = true;
            let mut count = 1;
            while let Some(a) = stack.pop() {
                for &(b, _) in g.succ(a) {
                    let skipped = (a == x && b == y) || (a == y && b == x);
                    if !skipped && !seen[b.index()] {
                        seen[b.index()] = true;
                        count += 1;
                        stack.push(b);
                    }
                }
            }
            if count != g.node_count() {
                out.push((x, y));
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn bridge_finder_matches_brute_force() {
        for seed in 0..60u64 {
            let g = crate::random::connected(seed, 4..=12, 1..=10);
            let fast = is_two_edge_connected(&g).unwrap().bridges;
            assert_eq!(fast, brute_force_bridges(&g), "seed {seed}");
        }
    }
}
