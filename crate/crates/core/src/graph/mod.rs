//! Directed instances and shortest paths.

mod apsp;

pub use apsp::{shortest_path_tree, Apsp, ShortestPathTree, NO_ARC};

use thiserror::Error;

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("arc {arc} has non-positive cost {cost}")]
    NonPositiveCost { arc: usize, cost: f64 },
    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: NodeId, node_count: usize },
    #[error("instance has no terminals")]
    NoTerminals,
    #[error("root {0} is listed as a terminal")]
    RootIsTerminal(NodeId),
    #[error("terminal {0} is listed twice")]
    DuplicateTerminal(NodeId),
    #[error("terminal {0} is unreachable from the root")]
    UnreachableTerminal(NodeId),
}

/// A directed arc `tail -> head` with a strictly positive cost.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphArc {
    pub tail: NodeId,
    pub head: NodeId,
    pub cost: f64,
}

impl GraphArc {
    pub fn new(tail: NodeId, head: NodeId, cost: f64) -> Self {
        GraphArc { tail, head, cost }
    }
}

/// Compressed adjacency: `offsets[v]..offsets[v + 1]` indexes into `arcs`.
#[derive(Clone, Debug)]
struct Adjacency {
    offsets: Vec<usize>,
    arcs: Vec<ArcId>,
}

impl Adjacency {
    fn build(node_count: usize, arcs: &[GraphArc], key: impl Fn(&GraphArc) -> NodeId) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for arc in arcs {
            offsets[key(arc) + 1] += 1;
        }
        for v in 0..node_count {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut out = vec![0; arcs.len()];
        for (id, arc) in arcs.iter().enumerate() {
            let slot = &mut fill[key(arc)];
            out[*slot] = id;
            *slot += 1;
        }
        Adjacency { offsets, arcs: out }
    }

    fn of(&self, v: NodeId) -> &[ArcId] {
        &self.arcs[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// A validated directed Steiner tree instance.
///
/// Commodity `k` (0-based) is routed from the root to `terminals[k]`.
/// Instances are immutable once built.
#[derive(Clone, Debug)]
pub struct Instance {
    node_count: usize,
    arcs: Vec<GraphArc>,
    root: NodeId,
    terminals: Vec<NodeId>,
    commodity_of: Vec<Option<usize>>,
    out_adj: Adjacency,
    in_adj: Adjacency,
}

impl Instance {
    /// Validates and builds an instance.
    ///
    /// Costs must be finite and strictly positive, the root must not be a
    /// terminal, terminals must be distinct and every terminal must be
    /// reachable from the root.
    pub fn new(
        node_count: usize,
        arcs: Vec<GraphArc>,
        root: NodeId,
        terminals: Vec<NodeId>,
    ) -> Result<Self, GraphError> {
        let check = |node: NodeId| {
            if node < node_count {
                Ok(())
            } else {
                Err(GraphError::NodeOutOfRange { node, node_count })
            }
        };
        for (i, arc) in arcs.iter().enumerate() {
            check(arc.tail)?;
            check(arc.head)?;
            if !(arc.cost > 0.0 && arc.cost.is_finite()) {
                return Err(GraphError::NonPositiveCost {
                    arc: i,
                    cost: arc.cost,
                });
            }
        }
        check(root)?;
        if terminals.is_empty() {
            return Err(GraphError::NoTerminals);
        }
        let mut commodity_of = vec![None; node_count];
        for (k, &t) in terminals.iter().enumerate() {
            check(t)?;
            if t == root {
                return Err(GraphError::RootIsTerminal(t));
            }
            if commodity_of[t].is_some() {
                return Err(GraphError::DuplicateTerminal(t));
            }
            commodity_of[t] = Some(k);
        }

        let out_adj = Adjacency::build(node_count, &arcs, |a| a.tail);
        let in_adj = Adjacency::build(node_count, &arcs, |a| a.head);
        let instance = Instance {
            node_count,
            arcs,
            root,
            terminals,
            commodity_of,
            out_adj,
            in_adj,
        };

        let reached = instance.reachable_from(root);
        if let Some(&t) = instance.terminals.iter().find(|&&t| !reached[t]) {
            return Err(GraphError::UnreachableTerminal(t));
        }
        Ok(instance)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[GraphArc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &GraphArc {
        &self.arcs[id]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn terminals(&self) -> &[NodeId] {
        &self.terminals
    }

    /// Number of commodities `b`, one per terminal.
    pub fn commodity_count(&self) -> usize {
        self.terminals.len()
    }

    pub fn terminal(&self, commodity: usize) -> NodeId {
        self.terminals[commodity]
    }

    pub fn commodity_of(&self, node: NodeId) -> Option<usize> {
        self.commodity_of[node]
    }

    pub fn is_terminal(&self, node: NodeId) -> bool {
        self.commodity_of[node].is_some()
    }

    pub fn out_arcs(&self, node: NodeId) -> &[ArcId] {
        self.out_adj.of(node)
    }

    pub fn in_arcs(&self, node: NodeId) -> &[ArcId] {
        self.in_adj.of(node)
    }

    /// Sum of the costs of the given arcs.
    pub fn cost_of(&self, arcs: &[ArcId]) -> f64 {
        arcs.iter().map(|&a| self.arcs[a].cost).sum()
    }

    /// Nodes reachable from `source` along arcs of the instance.
    pub fn reachable_from(&self, source: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.node_count];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(v) = stack.pop() {
            for &a in self.out_arcs(v) {
                let h = self.arcs[a].head;
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        seen
    }
}

/// Replaces every undirected edge `{u, v, c}` by the arcs `(u, v, c)` and
/// `(v, u, c)`, in input order.
pub fn bidirect(edges: &[(NodeId, NodeId, f64)]) -> Result<Vec<GraphArc>, GraphError> {
    let mut arcs = Vec::with_capacity(2 * edges.len());
    for (i, &(u, v, cost)) in edges.iter().enumerate() {
        if !(cost > 0.0 && cost.is_finite()) {
            return Err(GraphError::NonPositiveCost { arc: i, cost });
        }
        arcs.push(GraphArc::new(u, v, cost));
        arcs.push(GraphArc::new(v, u, cost));
    }
    Ok(arcs)
}
