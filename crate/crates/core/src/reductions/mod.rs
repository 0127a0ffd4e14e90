//! Problems that transfer into boundary-to-boundary sweeps: leash distance
//! between two arcs of a disk, a factor-two gluing heuristic for annuli,
//! and minimum-width vertex orders of planar graphs.

pub mod approx;
pub mod frechet;
pub mod layout;

pub use approx::{approx_solve, ApproxError, ApproxSolution, DiskSubSolver, ExactSubSolver};
pub use frechet::{
    frechet_to_hh, solve_frechet, FrechetAugmentation, FrechetError, FrechetInstance,
    FrechetSolution,
};
pub use layout::{layout_to_hh, solve_layout, LayoutError, LayoutInstance, LayoutReduction, LayoutResult};

/// `base`, drawn out with underscores until it collides with nothing in
/// `taken`.
pub(crate) fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.iter().any(|t| t == &name) {
        name.push('_');
    }
    name
}
