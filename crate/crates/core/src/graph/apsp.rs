use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{ArcId, Instance, NodeId};
use crate::par::{self, ExecMode};

/// Predecessor sentinel: no arc enters this node on a shortest path.
pub const NO_ARC: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct HeapEntry {
    dist: f64,
    node: NodeId,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    // Reversed: BinaryHeap is a max-heap.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Single-source shortest path distances and predecessor arcs.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    pub dist: Vec<f64>,
    pub pred: Vec<u32>,
}

/// Label-setting search from `source` using `costs[arc]` as arc lengths.
///
/// Costs must be non-negative. Among equally short paths the predecessor
/// with the lowest tail node wins (then the lowest arc id), so the tree is
/// deterministic.
pub fn shortest_path_tree(instance: &Instance, source: NodeId, costs: &[f64]) -> ShortestPathTree {
    let n = instance.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![NO_ARC; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapEntry {
        dist: 0.0,
        node: source,
    });

    while let Some(HeapEntry { dist: d, node: u }) = heap.pop() {
        if settled[u] || d > dist[u] {
            continue;
        }
        settled[u] = true;
        for &a in instance.out_arcs(u) {
            let arc = instance.arc(a);
            let v = arc.head;
            if settled[v] {
                continue;
            }
            let candidate = d + costs[a];
            if candidate < dist[v] {
                dist[v] = candidate;
                pred[v] = a as u32;
                heap.push(HeapEntry {
                    dist: candidate,
                    node: v,
                });
            } else if candidate == dist[v] && pred[v] != NO_ARC {
                let current = instance.arc(pred[v] as usize);
                if (u, a) < (current.tail, pred[v] as usize) {
                    pred[v] = a as u32;
                }
            }
        }
    }
    ShortestPathTree { dist, pred }
}

/// All-pairs shortest path costs and predecessor arcs, `n x n`, row-major by
/// source.
#[derive(Clone, Debug)]
pub struct Apsp {
    n: usize,
    dist: Vec<f64>,
    pred: Vec<u32>,
}

impl Apsp {
    /// Runs one label-setting search per source node.
    pub fn compute(instance: &Instance, exec: ExecMode) -> Self {
        let n = instance.node_count();
        let costs: Vec<f64> = instance.arcs().iter().map(|a| a.cost).collect();
        let rows = par::map_indexed(exec, n, |s| shortest_path_tree(instance, s, &costs));
        let mut dist = Vec::with_capacity(n * n);
        let mut pred = Vec::with_capacity(n * n);
        for row in rows {
            dist.extend_from_slice(&row.dist);
            pred.extend_from_slice(&row.pred);
        }
        Apsp { n, dist, pred }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// `c(sp(i, j))`, `+inf` when `j` is unreachable from `i`.
    #[inline]
    pub fn dist(&self, i: NodeId, j: NodeId) -> f64 {
        self.dist[i * self.n + j]
    }

    /// Distances from `i` to every node.
    #[inline]
    pub fn row(&self, i: NodeId) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    /// Last arc of the shortest `i -> j` path.
    pub fn pred_arc(&self, i: NodeId, j: NodeId) -> Option<ArcId> {
        match self.pred[i * self.n + j] {
            NO_ARC => None,
            a => Some(a as usize),
        }
    }

    /// The arcs of `sp(i, j)` in order from `i` to `j`. Empty for `i == j`,
    /// `None` when unreachable.
    pub fn path(&self, instance: &Instance, i: NodeId, j: NodeId) -> Option<Vec<ArcId>> {
        let mut arcs = Vec::new();
        self.path_into(instance, i, j, &mut arcs).then_some(arcs)
    }

    /// Appends `sp(i, j)` to `out`; returns `false` when unreachable.
    pub fn path_into(&self, instance: &Instance, i: NodeId, j: NodeId, out: &mut Vec<ArcId>) -> bool {
        if i == j {
            return true;
        }
        if !self.dist(i, j).is_finite() {
            return false;
        }
        let start = out.len();
        let mut v = j;
        while v != i {
            let a = self.pred[i * self.n + v] as usize;
            out.push(a);
            v = instance.arc(a).tail;
        }
        out[start..].reverse();
        true
    }
}
