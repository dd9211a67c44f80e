//! Laminar families of commodity sets and their tree representations.

mod family;
mod init;
mod kmeans;
mod set;
mod spr;

pub use family::{enumerate_full_binary, random_binarize, random_full_binary, LaminarFamily, TreeNode};
pub use init::{family_from_tree, initial_single_linkage};
pub use kmeans::{part_kmeans, pick_central_root, TerminalCoordinates};
pub use set::CommoditySet;
pub use spr::{apply_spr, spr_moves, spr_neighbor, spr_neighborhood, SprMove};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaminarError {
    #[error("invalid commodity set {0}")]
    InvalidSet(String),
    #[error("set {0} appears twice")]
    DuplicateSet(String),
    #[error("sets {0} and {1} cross")]
    NotLaminar(String, String),
    #[error("family is missing {0}")]
    NotAdmissible(String),
    #[error("family is not full-binary")]
    NotFullBinary,
    #[error("no SPR neighbor exists for fewer than three commodities")]
    NoNeighbor,
    #[error("invalid SPR move")]
    InvalidMove,
    #[error("arc set is not an r-arborescence spanning the terminals")]
    NotArborescence,
    #[error("terminals {0} and {1} are mutually unreachable")]
    DisconnectedTerminals(usize, usize),
    #[error("no coordinates for commodity {0}")]
    MissingCoordinates(usize),
}
