//! Combinatorial tiling simulator.
//!
//! Grows an actual simply connected patch of a `{p,q}` tiling under tile
//! completion and measures bulk/boundary counts per layer. The
//! representation is pure incidence (tiles, edges, vertices and the oriented
//! perimeter cycle) with no coordinates, so every count is exact and the
//! results are an oracle fully independent of the closed-form algebra in
//! [`crate::inflation`].

mod census;
mod map;

pub use census::{
    empirical_code_rate, run, verify_growth_matrix, verify_isoperimetric, LayerCensus,
    MatrixVerdict,
};
pub use map::{CombinatorialMap, SeedKind};

use crate::geometry::GeometryError;
use crate::schlafli::{Curvature, SchlafliPair};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("{pair} is {curvature}; the simulator grows hyperbolic tilings")]
    NotHyperbolic { pair: SchlafliPair, curvature: Curvature },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("census series has {have} layers, need at least {need}")]
    TooFewLayers { have: usize, need: usize },
    /// A broken structural invariant. This always signals a bug in the
    /// simulator itself, never bad user input.
    #[error("simulator invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl SimError {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        SimError::Internal(msg.into())
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, SimError::Internal(_))
    }
}
