//! Subtree-prune-and-regraft moves on the tree of a full-binary family.
//!
//! A move prunes the subtree below node `v`, suppresses `v`'s parent (its
//! sibling takes the parent's place) and reattaches the subtree on the edge
//! above some node `u` of what remains, where the edge above the root counts
//! too. The edge created by the suppression is excluded, since regrafting
//! there recreates the input.

use std::collections::HashSet;

use rand::Rng;

use super::family::Topology;
use super::{LaminarError, LaminarFamily};

/// A prune/regraft pair, by node index in the source family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SprMove {
    pub prune: usize,
    pub regraft_above: usize,
}

fn check_full_binary(family: &LaminarFamily) -> Result<(), LaminarError> {
    if family.is_full_binary() {
        Ok(())
    } else {
        Err(LaminarError::NotFullBinary)
    }
}

fn sibling(family: &LaminarFamily, v: usize) -> Option<(usize, usize)> {
    let p = family.node(v).parent?;
    let s = *family.node(p).children.iter().find(|&&c| c != v)?;
    Some((p, s))
}

/// Number of valid regraft edges when pruning `v`: every node outside the
/// pruned subtree except the suppressed parent and the sibling, i.e.
/// `(2b-1) - (2|v|-1) - 2`.
fn regraft_count(family: &LaminarFamily, v: usize) -> usize {
    if v == family.root() {
        return 0;
    }
    let b = family.commodity_count();
    let size = family.node(v).set.len();
    (2 * b).saturating_sub(2 + 2 * size)
}

fn regraft_targets(family: &LaminarFamily, v: usize) -> Vec<usize> {
    let Some((p, s)) = sibling(family, v) else {
        return Vec::new();
    };
    (0..family.len())
        .filter(|&u| u != p && u != s && !family.in_subtree(u, v))
        .collect()
}

/// Every valid move of a full-binary family, in node order.
pub fn spr_moves(family: &LaminarFamily) -> Vec<SprMove> {
    let mut moves = Vec::new();
    for v in 0..family.len() {
        if v == family.root() {
            continue;
        }
        for u in regraft_targets(family, v) {
            moves.push(SprMove {
                prune: v,
                regraft_above: u,
            });
        }
    }
    moves
}

/// Applies one move and returns the resulting family.
pub fn apply_spr(family: &LaminarFamily, mv: SprMove) -> Result<LaminarFamily, LaminarError> {
    check_full_binary(family)?;
    let SprMove {
        prune: v,
        regraft_above: u,
    } = mv;
    let valid = v < family.len()
        && u < family.len()
        && v != family.root()
        && regraft_targets(family, v).contains(&u);
    if !valid {
        return Err(LaminarError::InvalidMove);
    }
    let mut topo = Topology::from_family(family);
    let (freed, _) = topo.prune(v);
    topo.attach_above(u, freed, v);
    Ok(topo.to_family(family.commodity_count()))
}

/// Draws a move uniformly from all valid (prune, regraft) pairs and applies
/// it. The result always differs from the input.
pub fn spr_neighbor<R: Rng + ?Sized>(
    family: &LaminarFamily,
    rng: &mut R,
) -> Result<LaminarFamily, LaminarError> {
    check_full_binary(family)?;
    let weights: Vec<usize> = (0..family.len()).map(|v| regraft_count(family, v)).collect();
    let total: usize = weights.iter().sum();
    if total == 0 {
        return Err(LaminarError::NoNeighbor);
    }
    loop {
        let mut pick = rng.gen_range(0..total);
        let v = weights
            .iter()
            .position(|&w| {
                if pick < w {
                    true
                } else {
                    pick -= w;
                    false
                }
            })
            .expect("pick below total weight");
        let targets = regraft_targets(family, v);
        debug_assert_eq!(targets.len(), weights[v]);
        let u = targets[pick];
        let next = apply_spr(
            family,
            SprMove {
                prune: v,
                regraft_above: u,
            },
        )?;
        if next != *family {
            return Ok(next);
        }
    }
}

/// All distinct families one SPR move away, deduplicated, in move order.
pub fn spr_neighborhood(family: &LaminarFamily) -> Result<Vec<LaminarFamily>, LaminarError> {
    check_full_binary(family)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mv in spr_moves(family) {
        let next = apply_spr(family, mv)?;
        if next != *family && seen.insert(next.clone()) {
            out.push(next);
        }
    }
    Ok(out)
}
