//! Code rates of holographic codes grown on regular hyperbolic tessellations.
//!
//! A `{p,q}` tessellation tiles the hyperbolic plane with regular `p`-gons,
//! `q` of them meeting at every vertex. Growing a patch of such a tiling layer
//! by layer and placing one logical degree of freedom per tile and one
//! physical degree of freedom per perimeter edge yields a holographic code
//! whose rate is the limit of `N_bulk / N_boundary`.
//!
//! The crate computes this rate three independent ways and cross-checks them:
//!
//! * [`geometry`] — the closed-form isoperimetric bound `ℓ/a` from tile side
//!   length and area,
//! * [`inflation`] — the exact growth-matrix algebra of the tile-completion
//!   rule (rates, Perron vectors, summed geometric series),
//! * [`tiling`] — a combinatorial simulator that grows an actual patch and
//!   counts tiles, edges and vertices with no floating-point geometry at all.
//!
//! [`analysis`] layers parameter-space searches on top (optimal `q`, the range
//! of `q` with bound below one, table and figure series), and [`cli`] exposes
//! everything as a command-line tool.

pub mod analysis;
pub mod cli;
pub mod geometry;
pub mod inflation;
pub mod output;
mod precise;
pub mod schlafli;
pub mod tiling;

use num_traits::{Float, FloatConst, FromPrimitive};

pub use schlafli::{Curvature, SchlafliError, SchlafliPair};

/// Scalar type for the closed-form layer. Everything in [`geometry`] and
/// [`inflation`] is generic over this so the same formulas run in `f32`,
/// `f64`, or any other float-like type.
pub trait Real: Float + FloatConst + FromPrimitive {}
impl<T: Float + FloatConst + FromPrimitive> Real for T {}

/// Tile geometry evaluated in double precision, the default everywhere.
pub type TileGeometry64 = geometry::TileGeometry<f64>;
/// Growth system evaluated in double precision.
pub type GrowthSystem64 = inflation::GrowthSystem<f64>;
