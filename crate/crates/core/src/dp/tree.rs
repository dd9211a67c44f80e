use crate::graph::{ArcId, Instance, NodeId};

use super::DpError;

/// Arcs of an r-arborescence whose leaves are all terminals.
#[derive(Clone, Debug, PartialEq)]
pub struct SteinerTree {
    /// Ascending arc ids.
    pub arcs: Vec<ArcId>,
    pub cost: f64,
}

impl SteinerTree {
    pub fn new(instance: &Instance, mut arcs: Vec<ArcId>) -> Self {
        arcs.sort_unstable();
        let cost = instance.cost_of(&arcs);
        SteinerTree { arcs, cost }
    }
}

/// In-degree at most one everywhere, none at the root, and every arc tail
/// reachable from the root. Together these rule out cycles.
pub fn is_r_arborescence(arcs: &[ArcId], instance: &Instance) -> bool {
    let n = instance.node_count();
    let root = instance.root();
    let mut in_arc: Vec<Option<ArcId>> = vec![None; n];
    let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for &a in arcs {
        let arc = instance.arc(a);
        if arc.head == root || in_arc[arc.head].is_some() {
            return false;
        }
        in_arc[arc.head] = Some(a);
        out[arc.tail].push(arc.head);
    }
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &h in &out[v] {
            if !seen[h] {
                seen[h] = true;
                stack.push(h);
            }
        }
    }
    arcs.iter().all(|&a| seen[instance.arc(a).tail])
}

/// An r-arborescence containing every terminal whose leaves are all
/// terminals.
pub fn is_steiner_tree(arcs: &[ArcId], instance: &Instance) -> bool {
    if !is_r_arborescence(arcs, instance) {
        return false;
    }
    let n = instance.node_count();
    let mut has_in = vec![false; n];
    let mut has_out = vec![false; n];
    for &a in arcs {
        let arc = instance.arc(a);
        has_in[arc.head] = true;
        has_out[arc.tail] = true;
    }
    instance.terminals().iter().all(|&t| has_in[t])
        && (0..n).all(|v| !has_in[v] || has_out[v] || instance.is_terminal(v))
}

/// Chu-Liu/Edmonds on a local edge list. Returns indices into `edges` of a
/// minimum arborescence rooted at `root` spanning all `n` local nodes, which
/// the caller guarantees are reachable.
fn edmonds(n: usize, root: usize, edges: &[(usize, usize, f64)]) -> Vec<usize> {
    let mut best: Vec<Option<usize>> = vec![None; n];
    for (e, &(u, v, w)) in edges.iter().enumerate() {
        if u == v || v == root {
            continue;
        }
        let better = match best[v] {
            None => true,
            Some(cur) => w < edges[cur].2,
        };
        if better {
            best[v] = Some(e);
        }
    }

    // Label the cycles formed by the cheapest entering edges.
    let mut comp = vec![usize::MAX; n];
    let mut visit = vec![usize::MAX; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        let mut v = start;
        while v != root && visit[v] == usize::MAX && comp[v] == usize::MAX {
            visit[v] = start;
            v = edges[best[v].expect("every node is reachable")].0;
        }
        if v != root && visit[v] == start && comp[v] == usize::MAX {
            let id = cycles.len();
            let mut cycle = vec![v];
            comp[v] = id;
            let mut u = edges[best[v].unwrap()].0;
            while u != v {
                comp[u] = id;
                cycle.push(u);
                u = edges[best[u].unwrap()].0;
            }
            cycles.push(cycle);
        }
    }
    if cycles.is_empty() {
        return (0..n).filter(|&v| v != root).map(|v| best[v].unwrap()).collect();
    }

    // Contract every cycle to one node; the other nodes keep their own.
    let mut next = cycles.len();
    for c in comp.iter_mut() {
        if *c == usize::MAX {
            *c = next;
            next += 1;
        }
    }
    let mut contracted = Vec::new();
    let mut origin = Vec::new();
    for (e, &(u, v, w)) in edges.iter().enumerate() {
        let (cu, cv) = (comp[u], comp[v]);
        if cu == cv || v == root {
            continue;
        }
        let adjusted = if comp[v] < cycles.len() {
            w - edges[best[v].unwrap()].2
        } else {
            w
        };
        contracted.push((cu, cv, adjusted));
        origin.push(e);
    }
    let chosen = edmonds(next, comp[root], &contracted);

    let mut result: Vec<usize> = Vec::new();
    let mut entry = vec![usize::MAX; cycles.len()];
    for c in chosen {
        let e = origin[c];
        let v = edges[e].1;
        if comp[v] < cycles.len() {
            entry[comp[v]] = v;
        }
        result.push(e);
    }
    for (id, cycle) in cycles.iter().enumerate() {
        for &v in cycle {
            if v != entry[id] {
                result.push(best[v].unwrap());
            }
        }
    }
    result
}

/// Minimum-cost arborescence rooted at the instance root, spanning every
/// node reachable from it through `arcs`.
pub fn min_cost_arborescence(arcs: &[ArcId], instance: &Instance) -> Result<Vec<ArcId>, DpError> {
    let n = instance.node_count();
    let root = instance.root();
    let mut out: Vec<Vec<ArcId>> = vec![Vec::new(); n];
    for &a in arcs {
        out[instance.arc(a).tail].push(a);
    }
    let mut local = vec![usize::MAX; n];
    let mut nodes = vec![root];
    local[root] = 0;
    let mut i = 0;
    while i < nodes.len() {
        let v = nodes[i];
        i += 1;
        for &a in &out[v] {
            let h = instance.arc(a).head;
            if local[h] == usize::MAX {
                local[h] = nodes.len();
                nodes.push(h);
            }
        }
    }
    if let Some(&t) = instance.terminals().iter().find(|&&t| local[t] == usize::MAX) {
        return Err(DpError::Unreachable(t));
    }
    let mut ids = Vec::new();
    let mut edges = Vec::new();
    for &a in arcs {
        let arc = instance.arc(a);
        if local[arc.tail] != usize::MAX {
            ids.push(a);
            edges.push((local[arc.tail], local[arc.head], arc.cost));
        }
    }
    let mut chosen: Vec<ArcId> = edmonds(nodes.len(), 0, &edges).into_iter().map(|e| ids[e]).collect();
    chosen.sort_unstable();
    Ok(chosen)
}

/// Repeatedly drops leaves that are neither terminals nor the root.
pub fn prune_steiner_leaves(arcs: &[ArcId], instance: &Instance) -> SteinerTree {
    let n = instance.node_count();
    let mut in_arc: Vec<Option<usize>> = vec![None; n];
    let mut out_degree = vec![0usize; n];
    for (slot, &a) in arcs.iter().enumerate() {
        let arc = instance.arc(a);
        in_arc[arc.head] = Some(slot);
        out_degree[arc.tail] += 1;
    }
    let mut keep = vec![true; arcs.len()];
    let mut stack: Vec<NodeId> = (0..n)
        .filter(|&v| in_arc[v].is_some() && out_degree[v] == 0 && !instance.is_terminal(v))
        .collect();
    while let Some(v) = stack.pop() {
        let slot = in_arc[v].take().expect("leaf has an entering arc");
        keep[slot] = false;
        let tail = instance.arc(arcs[slot]).tail;
        out_degree[tail] -= 1;
        if out_degree[tail] == 0 && in_arc[tail].is_some() && !instance.is_terminal(tail) {
            stack.push(tail);
        }
    }
    let kept = arcs
        .iter()
        .zip(keep)
        .filter_map(|(&a, k)| k.then_some(a))
        .collect();
    SteinerTree::new(instance, kept)
}

/// A Steiner tree inside `support`: the support itself when it already is
/// one, otherwise its pruned minimum arborescence.
pub fn extract_tree(support: &[ArcId], instance: &Instance) -> Result<SteinerTree, DpError> {
    if is_steiner_tree(support, instance) {
        return Ok(SteinerTree::new(instance, support.to_vec()));
    }
    let arb = min_cost_arborescence(support, instance)?;
    Ok(prune_steiner_leaves(&arb, instance))
}
