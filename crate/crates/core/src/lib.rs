//! Exact minimum-height homotopies on edge-weighted combinatorial surfaces.
//!
//! An instance is a graph embedded on the sphere (a rotation system) with two
//! designated boundary faces (an annulus) or one boundary face split at two
//! anchors (a disk). A discrete homotopy between the two boundary walks is a
//! sequence of closed (or anchored) walks, each obtained from the previous one
//! by a single face flip, edge spike, or edge unspike; its height is the
//! maximum weighted length of any intermediate walk. This crate computes
//! optimal homotopies, verifies and reduces certificates, retracts homotopies
//! through shortest cycles, and carries the two classical problem transfers:
//! homotopic Frechet distance on a disk and minimum-height linear layouts of
//! planar graphs.
//!
//! All search and verification code is generic over the [`Scalar`] weight
//! type; [`Rat`] (arbitrary-precision rationals) is the canonical exact
//! instantiation used by the command line tools, with ordered-float and
//! integer instantiations available for approximate or fixed-scale work.

pub mod gen;
pub mod homotopy;
pub mod reductions;
pub mod scalar;
pub mod solver;
pub mod surface;

pub use homotopy::{Certificate, Curve, Move};
pub use reductions::{approx_solve, solve_frechet, solve_layout};
pub use scalar::Scalar;
pub use solver::{solve_exact, solve_oracle, SolveOutcome, SolverOptions};
pub use surface::{Dart, Dir, EId, Embedding, End, FId, Surface, SurfaceKind, VId};

/// Canonical exact weight type: arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;

/// Total-ordered double-precision weights (lossy; for experiments only).
pub type F64 = ordered_float::OrderedFloat<f64>;

/// Total-ordered single-precision weights (lossy; for experiments only).
pub type F32 = ordered_float::OrderedFloat<f32>;
