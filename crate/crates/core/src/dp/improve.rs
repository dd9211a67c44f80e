use rand::Rng;

use super::tree::{extract_tree, is_steiner_tree, SteinerTree};
use super::{DpCache, DpError, Solver, StructuredSolution};
use crate::laminar::{family_from_tree, random_binarize};

#[derive(Clone, Debug)]
pub struct Improvement {
    /// A Steiner tree inside the input support.
    pub tree: SteinerTree,
    pub family: crate::laminar::LaminarFamily,
    pub solution: StructuredSolution,
    /// `false` when the support already was a Steiner tree and the input
    /// came back unchanged.
    pub improved: bool,
}

/// Turns the support of a structured solution into a Steiner tree and
/// re-solves the structure that tree actually has.
///
/// When the support is not already an r-arborescence with terminal leaves,
/// its minimum arborescence is pruned to a Steiner tree `T`, the family of
/// `T` is read off (binarized at random if needed) and solved again. The
/// new structured cost is at most `c(T)`, which is at most the old support
/// cost and therefore the old structured cost.
pub fn improve_solution<R: Rng + ?Sized>(
    solution: &StructuredSolution,
    solver: &Solver<'_>,
    rng: &mut R,
    cache: Option<&mut DpCache>,
) -> Result<Improvement, DpError> {
    let instance = solver.instance();
    if is_steiner_tree(&solution.support, instance) {
        return Ok(Improvement {
            tree: SteinerTree::new(instance, solution.support.clone()),
            family: solution.family.clone(),
            solution: solution.clone(),
            improved: false,
        });
    }
    let tree = extract_tree(&solution.support, instance)?;
    let mut family = family_from_tree(&tree.arcs, instance)?;
    if !family.is_full_binary() {
        family = random_binarize(&family, rng);
    }
    let new_solution = solver.solve(&family, cache)?;
    Ok(Improvement {
        tree,
        family,
        solution: new_solution,
        improved: true,
    })
}
