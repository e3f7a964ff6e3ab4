//! Partition of the directed edges relative to a root's shortest path tree.
//!
//! Every non-root node sits in exactly one branch: the tree subtree hanging
//! off one of the root's tree neighbors. Relative to that structure a
//! directed edge between reachable nodes falls into one of four classes
//! (first hop, branch, transverse, internal), plus a bookkeeping class for
//! edges that point back into the root, which no path construction ever
//! uses as a last hop.

use crate::graph::{Graph, NodeId};
use crate::spt::SptResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    /// `(s, h)` where `h` is a tree neighbor of the root: the first edge of
    /// the primary paths into `h`'s branch.
    FirstHop,
    /// Either direction of a tree father link not incident to the root.
    Branch,
    /// Joins two distinct branches, or joins the root to a node that is not
    /// the head of its branch.
    Transverse,
    /// Joins two nodes of one branch without being a tree link.
    Internal,
    /// Points into the root; outside the four-way partition.
    RootReverse,
}

impl EdgeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeClass::FirstHop => "first_hop",
            EdgeClass::Branch => "branch",
            EdgeClass::Transverse => "transverse",
            EdgeClass::Internal => "internal",
            EdgeClass::RootReverse => "root_reverse",
        }
    }
}

/// Classification of every directed edge among reachable nodes, plus the
/// branch head of every reachable non-root node. Edges touching
/// unreachable nodes carry no class.
#[derive(Debug, Clone)]
pub struct EdgePartition {
    pub root: NodeId,
    /// Parallel to the graph's successor lists: `classes[x][slot]`.
    classes: Vec<Vec<Option<EdgeClass>>>,
    /// Branch head per node (its primary next hop); `None` for the root
    /// and unreachable nodes.
    branch: Vec<Option<NodeId>>,
}

impl EdgePartition {
    pub fn class_of(&self, g: &Graph, x: NodeId, y: NodeId) -> Option<EdgeClass> {
        let slot = g
            .succ(x)
            .binary_search_by_key(&y, |&(n, _)| n)
            .ok()?;
        self.classes[x.index()][slot]
    }

    pub fn branch_of(&self, x: NodeId) -> Option<NodeId> {
        self.branch[x.index()]
    }

    /// All classified directed edges with their class.
    pub fn edges<'a>(
        &'a self,
        g: &'a Graph,
    ) -> impl Iterator<Item = (NodeId, NodeId, EdgeClass)> + 'a {
        g.nodes().flat_map(move |x| {
            g.succ(x)
                .iter()
                .zip(&self.classes[x.index()])
                .filter_map(move |(&(y, _), class)| class.map(|c| (x, y, c)))
        })
    }
}

/// Classifies every directed edge of `g` relative to `spt`.
pub fn classify_edges(g: &Graph, spt: &SptResult) -> EdgePartition {
    let root = spt.root;
    let mut classes = Vec::with_capacity(g.node_count());
    for x in g.nodes() {
        let mut row = Vec::with_capacity(g.out_degree(x));
        for &(y, _) in g.succ(x) {
            let class = if !spt.reachable(x) || !spt.reachable(y) {
                None
            } else if y == root {
                Some(EdgeClass::RootReverse)
            } else if x == root {
                if spt.father[y.index()] == Some(root) {
                    Some(EdgeClass::FirstHop)
                } else {
                    Some(EdgeClass::Transverse)
                }
            } else if spt.father[y.index()] == Some(x) || spt.father[x.index()] == Some(y) {
                Some(EdgeClass::Branch)
            } else if spt.first_hop[x.index()] != spt.first_hop[y.index()] {
                Some(EdgeClass::Transverse)
            } else {
                Some(EdgeClass::Internal)
            };
            row.push(class);
        }
        classes.push(row);
    }
    EdgePartition {
        root,
        classes,
        branch: spt.first_hop.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fig1, GraphBuilder};
    use crate::spt::dijkstra;

    fn fig1_partition() -> (crate::graph::Graph, EdgePartition) {
        let g = fig1();
        let s = g.node_by_label("s").unwrap();
        let (spt, _) = dijkstra(&g, s);
        let p = classify_edges(&g, &spt);
        (g, p)
    }

    #[test]
    fn fig1_branches() {
        let (g, p) = fig1_partition();
        let branch = |l: &str| {
            g.label(p.branch_of(g.node_by_label(l).unwrap()).unwrap())
                .to_string()
        };
        for l in ["1", "b", "2", "3", "4", "5"] {
            assert_eq!(branch(l), "1");
        }
        for l in ["n", "c", "11", "9", "10", "d"] {
            assert_eq!(branch(l), "n");
        }
        for l in ["6", "7", "8"] {
            assert_eq!(branch(l), "6");
        }
        assert_eq!(p.branch_of(g.node_by_label("s").unwrap()), None);
    }

    #[test]
    fn fig1_transverse_and_internal() {
        let (g, p) = fig1_partition();
        let class = |a: &str, b: &str| {
            p.class_of(&g, g.node_by_label(a).unwrap(), g.node_by_label(b).unwrap())
                .unwrap()
        };
        assert_eq!(class("6", "1"), EdgeClass::Transverse);
        assert_eq!(class("1", "6"), EdgeClass::Transverse);
        assert_eq!(class("b", "c"), EdgeClass::Transverse);
        assert_eq!(class("c", "b"), EdgeClass::Transverse);
        assert_eq!(class("c", "11"), EdgeClass::Internal);
        assert_eq!(class("11", "c"), EdgeClass::Internal);
        // No other transverse or internal edges exist.
        let special = p
            .edges(&g)
            .filter(|(_, _, c)| matches!(c, EdgeClass::Transverse | EdgeClass::Internal))
            .count();
        assert_eq!(special, 6);
    }

    #[test]
    fn fig1_first_hops_and_tree_links() {
        let (g, p) = fig1_partition();
        let s = g.node_by_label("s").unwrap();
        for &(y, _) in g.succ(s) {
            assert_eq!(p.class_of(&g, s, y), Some(EdgeClass::FirstHop));
            assert_eq!(p.class_of(&g, y, s), Some(EdgeClass::RootReverse));
        }
        let class = |a: &str, b: &str| {
            p.class_of(&g, g.node_by_label(a).unwrap(), g.node_by_label(b).unwrap())
                .unwrap()
        };
        assert_eq!(class("1", "b"), EdgeClass::Branch);
        assert_eq!(class("b", "1"), EdgeClass::Branch);
        assert_eq!(class("11", "d"), EdgeClass::Branch);
        assert_eq!(class("d", "11"), EdgeClass::Branch);
    }

    #[test]
    fn star_graph_degenerate() {
        let mut b = GraphBuilder::new();
        b.link("s", "a", 1).link("s", "b", 1).link("s", "c", 1);
        let g = b.build();
        let s = g.node_by_label("s").unwrap();
        let (spt, _) = dijkstra(&g, s);
        let p = classify_edges(&g, &spt);
        for (x, y, class) in p.edges(&g) {
            if x == s {
                assert_eq!(class, EdgeClass::FirstHop);
            } else {
                assert_eq!(y, s);
                assert_eq!(class, EdgeClass::RootReverse);
            }
        }
    }

    #[test]
    fn root_transverse_when_neighbor_reached_indirectly() {
        // Triangle with a heavy direct link: the direct edge to b is not
        // the first hop of b's primary path.
        let mut builder = GraphBuilder::new();
        builder.link("s", "a", 1).link("a", "b", 1).link("s", "b", 5);
        let g = builder.build();
        let s = g.node_by_label("s").unwrap();
        let b = g.node_by_label("b").unwrap();
        let (spt, _) = dijkstra(&g, s);
        let p = classify_edges(&g, &spt);
        assert_eq!(p.class_of(&g, s, b), Some(EdgeClass::Transverse));
        assert_eq!(p.class_of(&g, b, s), Some(EdgeClass::RootReverse));
    }

    #[test]
    fn classes_partition_reachable_edges() {
        for seed in 0..120u64 {
            let g = crate::random::connected(seed, 6..=12, 1..=10);
            for s in g.nodes() {
                let (spt, _) = dijkstra(&g, s);
                let p = classify_edges(&g, &spt);
                let mut counts = [0usize; 5];
                for x in g.nodes() {
                    for &(y, _) in g.succ(x) {
                        let class = p.class_of(&g, x, y);
                        assert!(class.is_some(), "connected graph: every edge classified");
                        match class.unwrap() {
                            EdgeClass::FirstHop => counts[0] += 1,
                            EdgeClass::Branch => counts[1] += 1,
                            EdgeClass::Transverse => counts[2] += 1,
                            EdgeClass::Internal => counts[3] += 1,
                            EdgeClass::RootReverse => counts[4] += 1,
                        }
                    }
                }
                assert_eq!(counts.iter().sum::<usize>(), g.edge_count());
                // Every edge into the root is RootReverse, so the counts match
                // its degree; first hops are the tree neighbors.
                assert_eq!(counts[4], g.out_degree(s));
                let tree_neighbors = g
                    .succ(s)
                    .iter()
                    .filter(|&&(y, _)| spt.father[y.index()] == Some(s))
                    .count();
                assert_eq!(counts[0], tree_neighbors);
                // Both directions of every non-root father link are Branch:
                // one undirected father link per non-root, non-tree-neighbor node.
                let deep_nodes = g
                    .nodes()
                    .filter(|&x| {
                        x != s && spt.reachable(x) && spt.father[x.index()] != Some(s)
                    })
                    .count();
                assert_eq!(counts[1], 2 * deep_nodes);
            }
        }
    }

    #[test]
    fn reversal_symmetry_of_transverse_and_internal() {
        for seed in 0..120u64 {
            let g = crate::random::connected(seed, 6..=12, 1..=10);
            let (spt, _) = dijkstra(&g, NodeId(0));
            let p = classify_edges(&g, &spt);
            for (x, y, class) in p.edges(&g) {
                if y == NodeId(0) || x == NodeId(0) {
                    continue;
                }
                match class {
                    EdgeClass::Transverse => {
                        assert_eq!(p.class_of(&g, y, x), Some(EdgeClass::Transverse));
                    }
                    EdgeClass::Internal => {
                        assert_eq!(p.class_of(&g, y, x), Some(EdgeClass::Internal));
                    }
                    _ => {}
                }
            }
        }
    }
}
