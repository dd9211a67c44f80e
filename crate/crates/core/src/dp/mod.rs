//! The fixed-structure DP, arborescence utilities and solution improvement.
//!
//! For a full-binary family, `z(i, s)` is the cheapest way to serve the
//! commodities of `s` from node `i` when they travel together up to a
//! splitting node `j` and then separate into the two child sets:
//!
//! ```text
//! z(i, {k}) = c(sp(i, t_k))
//! z(i, s)   = min_j  c(sp(i, j)) + z(j, s1) + z(j, s2)
//! ```
//!
//! Only `z(r, K)` is needed for the full set.

mod cache;
mod improve;
mod tree;

pub use cache::DpCache;
pub use improve::{improve_solution, Improvement};
pub use tree::{
    extract_tree, is_r_arborescence, is_steiner_tree, min_cost_arborescence, prune_steiner_leaves,
    SteinerTree,
};

use std::collections::BinaryHeap;
use std::cmp::Ordering;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Apsp, ArcId, Instance, NodeId};
use crate::laminar::{LaminarError, LaminarFamily};
use crate::par::{self, ExecMode};

/// Marks a `z` entry with no finite candidate.
pub const NO_SPLIT: u32 = u32::MAX;

/// Below this many nodes the dense sweep stays on one thread.
const PAR_MIN_NODES: usize = 128;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DpError {
    #[error("structure cannot be realized: z(r, K) is infinite")]
    Infeasible,
    #[error("family is not full-binary")]
    NotFullBinary,
    #[error("family has {found} commodities, instance has {expected}")]
    CommodityMismatch { expected: usize, found: usize },
    #[error("node {0} cannot be reached from the root inside the arc set")]
    Unreachable(NodeId),
    #[error(transparent)]
    Laminar(#[from] LaminarError),
}

/// How each `z(., s)` row is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RowStrategy {
    /// Scan every `(i, j)` pair of the distance table: `O(n^2)` per set.
    Dense,
    /// One reverse label-setting search seeded with `z(j, s1) + z(j, s2)`:
    /// `O(m log n)` per set.
    Sparse,
    /// Sparse when the graph has far fewer than `n^2` arcs.
    #[default]
    Auto,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DpOptions {
    pub strategy: RowStrategy,
    pub exec: ExecMode,
}

/// `z(., s)` and `j*_s(.)` over all nodes for one set.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub z: Vec<f64>,
    pub split: Vec<u32>,
}

impl Row {
    pub fn split_at(&self, i: NodeId) -> Option<NodeId> {
        match self.split[i] {
            NO_SPLIT => None,
            j => Some(j as usize),
        }
    }
}

/// Structure DP bound to one instance and its shortest paths.
#[derive(Debug)]
pub struct Solver<'a> {
    instance: &'a Instance,
    apsp: &'a Apsp,
    options: DpOptions,
    sparse: bool,
    singletons: Vec<Arc<Row>>,
}

/// The optimum for one structure: `z(r, K)`, the path segment of every set
/// and the union of their arcs.
#[derive(Clone, Debug)]
pub struct StructuredSolution {
    pub family: LaminarFamily,
    /// `z(r, K)`. Arcs shared by different sets are paid once per set.
    pub structured_cost: f64,
    /// Per family node: where its segment starts and the arcs of the segment
    /// (ending at the splitting node, or at the terminal for singletons).
    pub segments: Vec<Segment>,
    /// Distinct arcs of all segments, ascending.
    pub support: Vec<ArcId>,
    rows: Vec<Arc<Row>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub start: NodeId,
    pub end: NodeId,
    pub arcs: Vec<ArcId>,
}

/// Read access to `z(i, s)` and `j*_s(i)`, by family node index.
#[derive(Clone, Copy, Debug)]
pub struct DpTables<'s> {
    rows: &'s [Arc<Row>],
}

impl DpTables<'_> {
    /// `z(i, s)`. For `K` only the root entry is computed; every other
    /// entry of that row is `+inf`.
    pub fn z(&self, i: NodeId, node: usize) -> f64 {
        self.rows[node].z[i]
    }

    /// The splitting node `j*_s(i)`; `None` for singletons and infinite
    /// entries.
    pub fn j_star(&self, i: NodeId, node: usize) -> Option<NodeId> {
        self.rows[node].split_at(i)
    }

    pub fn row(&self, node: usize) -> &Row {
        &self.rows[node]
    }
}

impl StructuredSolution {
    pub fn tables(&self) -> DpTables<'_> {
        DpTables { rows: &self.rows }
    }

    pub fn support_cost(&self, instance: &Instance) -> f64 {
        instance.cost_of(&self.support)
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Label {
    value: f64,
    origin: u32,
    node: u32,
}

impl Eq for Label {}

impl Ord for Label {
    // Reversed for the max-heap.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .value
            .total_cmp(&self.value)
            .then_with(|| other.origin.cmp(&self.origin))
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Solver<'a> {
    pub fn new(instance: &'a Instance, apsp: &'a Apsp, options: DpOptions) -> Self {
        let n = instance.node_count();
        let sparse = match options.strategy {
            RowStrategy::Dense => false,
            RowStrategy::Sparse => true,
            RowStrategy::Auto => instance.arc_count().saturating_mul(16) < n.saturating_mul(n),
        };
        let singletons = instance
            .terminals()
            .iter()
            .map(|&t| {
                Arc::new(Row {
                    z: (0..n).map(|i| apsp.dist(i, t)).collect(),
                    split: vec![NO_SPLIT; n],
                })
            })
            .collect();
        Solver {
            instance,
            apsp,
            options,
            sparse,
            singletons,
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn apsp(&self) -> &'a Apsp {
        self.apsp
    }

    pub fn options(&self) -> DpOptions {
        self.options
    }

    /// Solves the structure subproblem for `family`, reusing rows of
    /// identical subtrees from `cache` when one is given.
    pub fn solve(
        &self,
        family: &LaminarFamily,
        mut cache: Option<&mut DpCache>,
    ) -> Result<StructuredSolution, DpError> {
        let b = self.instance.commodity_count();
        if family.commodity_count() != b {
            return Err(DpError::CommodityMismatch {
                expected: b,
                found: family.commodity_count(),
            });
        }
        if !family.is_full_binary() {
            return Err(DpError::NotFullBinary);
        }
        if let Some(c) = cache.as_deref_mut() {
            c.prepare(self.instance.node_count(), b);
        }
        let root_node = family.root();
        let mut ids = vec![0u32; family.len()];
        let mut rows: Vec<Arc<Row>> = Vec::with_capacity(family.len());
        for (v, node) in family.nodes().iter().enumerate() {
            let row = if node.children.is_empty() {
                let k = node.set.iter().next().expect("non-empty set");
                ids[v] = k as u32;
                Arc::clone(&self.singletons[k])
            } else {
                let (c1, c2) = (node.children[0], node.children[1]);
                let compute = || self.combine(&rows[c1], &rows[c2], v == root_node);
                match cache.as_deref_mut() {
                    Some(c) => {
                        let (id, row) = c.get_or_insert(ids[c1], ids[c2], compute);
                        ids[v] = id;
                        row
                    }
                    None => Arc::new(compute()),
                }
            };
            rows.push(row);
        }

        let r = self.instance.root();
        let structured_cost = rows[root_node].z[r];
        if !structured_cost.is_finite() {
            return Err(DpError::Infeasible);
        }
        let segments = self.reconstruct(family, &rows);
        let mut support: Vec<ArcId> = segments.iter().flat_map(|s| s.arcs.iter().copied()).collect();
        support.sort_unstable();
        support.dedup();
        Ok(StructuredSolution {
            family: family.clone(),
            structured_cost,
            segments,
            support,
            rows,
        })
    }

    fn combine(&self, a: &Row, b: &Row, root_only: bool) -> Row {
        let n = self.instance.node_count();
        let g: Vec<f64> = a.z.iter().zip(&b.z).map(|(x, y)| x + y).collect();
        if root_only {
            let r = self.instance.root();
            let mut row = Row {
                z: vec![f64::INFINITY; n],
                split: vec![NO_SPLIT; n],
            };
            let candidates: Vec<u32> = finite_indices(&g);
            let (z, j) = self.dense_entry(r, &g, &candidates);
            row.z[r] = z;
            row.split[r] = j;
            return row;
        }
        if self.sparse {
            self.sparse_row(&g)
        } else {
            self.dense_row(&g)
        }
    }

    fn dense_entry(&self, i: NodeId, g: &[f64], candidates: &[u32]) -> (f64, u32) {
        let dist = self.apsp.row(i);
        let mut best = (f64::INFINITY, NO_SPLIT);
        for &j in candidates {
            let d = dist[j as usize];
            if d.is_finite() {
                let value = d + g[j as usize];
                if value < best.0 {
                    best = (value, j);
                }
            }
        }
        best
    }

    fn dense_row(&self, g: &[f64]) -> Row {
        let n = self.instance.node_count();
        let candidates = finite_indices(g);
        let mode = if n >= PAR_MIN_NODES {
            self.options.exec
        } else {
            ExecMode::Sequential
        };
        let mut z = vec![f64::INFINITY; n];
        let mut split = vec![NO_SPLIT; n];
        par::zip_for_each_mut(mode, &mut z, &mut split, |i, zi, si| {
            let (value, j) = self.dense_entry(i, g, &candidates);
            *zi = value;
            *si = j;
        });
        Row { z, split }
    }

    /// Multi-source search over reversed arcs. Labels are compared as
    /// `(value, origin)` so that equal values resolve to the lowest
    /// splitting node, as in the dense sweep.
    fn sparse_row(&self, g: &[f64]) -> Row {
        let n = self.instance.node_count();
        let mut z = g.to_vec();
        let mut split: Vec<u32> = (0..n as u32)
            .map(|j| if g[j as usize].is_finite() { j } else { NO_SPLIT })
            .collect();
        let mut settled = vec![false; n];
        let mut heap: BinaryHeap<Label> = (0..n)
            .filter(|&j| g[j].is_finite())
            .map(|j| Label {
                value: g[j],
                origin: j as u32,
                node: j as u32,
            })
            .collect();
        while let Some(Label { value, origin, node }) = heap.pop() {
            let v = node as usize;
            if settled[v] || (value, origin) != (z[v], split[v]) {
                continue;
            }
            settled[v] = true;
            for &a in self.instance.in_arcs(v) {
                let arc = self.instance.arc(a);
                let u = arc.tail;
                if settled[u] {
                    continue;
                }
                let cand = value + arc.cost;
                if cand < z[u] || (cand == z[u] && origin < split[u]) {
                    z[u] = cand;
                    split[u] = origin;
                    heap.push(Label {
                        value: cand,
                        origin,
                        node: u as u32,
                    });
                }
            }
        }
        Row { z, split }
    }

    fn reconstruct(&self, family: &LaminarFamily, rows: &[Arc<Row>]) -> Vec<Segment> {
        let mut segments = vec![
            Segment {
                start: 0,
                end: 0,
                arcs: Vec::new(),
            };
            family.len()
        ];
        let mut stack = vec![(family.root(), self.instance.root())];
        while let Some((v, i)) = stack.pop() {
            let node = family.node(v);
            let end = match rows[v].split_at(i) {
                Some(j) => j,
                None => {
                    let k = node.set.iter().next().expect("singleton");
                    self.instance.terminal(k)
                }
            };
            let mut arcs = Vec::new();
            let reached = self.apsp.path_into(self.instance, i, end, &mut arcs);
            debug_assert!(reached);
            segments[v] = Segment { start: i, end, arcs };
            for &c in &node.children {
                stack.push((c, end));
            }
        }
        segments
    }
}

fn finite_indices(g: &[f64]) -> Vec<u32> {
    (0..g.len() as u32).filter(|&j| g[j as usize].is_finite()).collect()
}

/// One-shot solve with default options and no cache.
pub fn solve_structure(
    instance: &Instance,
    apsp: &Apsp,
    family: &LaminarFamily,
) -> Result<StructuredSolution, DpError> {
    Solver::new(instance, apsp, DpOptions::default()).solve(family, None)
}
