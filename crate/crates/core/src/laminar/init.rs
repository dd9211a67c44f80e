use crate::dp::is_r_arborescence;
use crate::graph::{Apsp, ArcId, Instance};

use super::{CommoditySet, LaminarError, LaminarFamily};

/// Reads the splitting structure off an r-arborescence: every arc
/// contributes the set of commodities whose root path uses it.
///
/// The result is admissible but need not be full-binary.
pub fn family_from_tree(tree: &[ArcId], instance: &Instance) -> Result<LaminarFamily, LaminarError> {
    if !is_r_arborescence(tree, instance) {
        return Err(LaminarError::NotArborescence);
    }
    let b = instance.commodity_count();
    let mut in_arc = vec![None; instance.node_count()];
    for (slot, &a) in tree.iter().enumerate() {
        in_arc[instance.arc(a).head] = Some(slot);
    }
    let mut arc_sets = vec![CommoditySet::empty(b); tree.len()];
    for (k, &t) in instance.terminals().iter().enumerate() {
        if in_arc[t].is_none() {
            return Err(LaminarError::NotArborescence);
        }
        let mut v = t;
        while let Some(slot) = in_arc[v] {
            arc_sets[slot].insert(k);
            v = instance.arc(tree[slot]).tail;
        }
    }
    let mut sets: Vec<CommoditySet> = arc_sets.into_iter().filter(|s| !s.is_empty()).collect();
    sets.extend((0..b).map(|k| CommoditySet::singleton(b, k)));
    sets.push(CommoditySet::full(b));
    sets.sort();
    sets.dedup();
    Ok(LaminarFamily::from_sorted_unchecked(b, sets))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Single-linkage clustering of the terminals.
///
/// Builds a minimum spanning tree of the terminal metric closure (pair
/// weight `min(d(u, v), d(v, u))`), then walks its edges by increasing
/// weight, each time merging the two clusters the edge joins. Equal weights
/// are taken in lexicographic commodity-pair order.
pub fn initial_single_linkage(instance: &Instance, apsp: &Apsp) -> Result<LaminarFamily, LaminarError> {
    let b = instance.commodity_count();
    let terminals = instance.terminals();
    let mut edges = Vec::with_capacity(b * b.saturating_sub(1) / 2);
    for i in 0..b {
        for j in i + 1..b {
            let (u, v) = (terminals[i], terminals[j]);
            let w = apsp.dist(u, v).min(apsp.dist(v, u));
            if w.is_finite() {
                edges.push((w, i, j));
            }
        }
    }
    edges.sort_by(|x, y| x.0.total_cmp(&y.0).then((x.1, x.2).cmp(&(y.1, y.2))));

    let mut parent: Vec<usize> = (0..b).collect();
    let mut cluster: Vec<CommoditySet> = (0..b).map(|k| CommoditySet::singleton(b, k)).collect();
    let mut sets = cluster.clone();
    let mut merges = 0;
    for &(_, i, j) in &edges {
        if merges + 1 == b {
            break;
        }
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj {
            continue;
        }
        let merged = cluster[ri].union(&cluster[rj]);
        parent[rj] = ri;
        cluster[ri] = merged.clone();
        sets.push(merged);
        merges += 1;
    }
    if merges + 1 < b {
        let r0 = find(&mut parent, 0);
        let other = (1..b)
            .find(|&k| find(&mut parent, k) != r0)
            .expect("an unmerged cluster exists");
        return Err(LaminarError::DisconnectedTerminals(terminals[0], terminals[other]));
    }
    sets.sort();
    Ok(LaminarFamily::from_sorted_unchecked(b, sets))
}
