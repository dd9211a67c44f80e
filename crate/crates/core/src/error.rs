use thiserror::Error;

use crate::anneal::AnnealError;
use crate::dp::DpError;
use crate::graph::GraphError;
use crate::io::{ResultsError, StpError};
use crate::laminar::LaminarError;
use crate::profile::ProfileError;

/// Umbrella error for callers that drive the whole pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Stp(#[from] StpError),
    #[error(transparent)]
    Results(#[from] ResultsError),
    #[error(transparent)]
    Laminar(#[from] LaminarError),
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error(transparent)]
    Anneal(#[from] AnnealError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}
