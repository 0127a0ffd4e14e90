//! Discrete homotopies between the boundary curves of a surface.
//!
//! A homotopy is a sequence of level curves, each one elementary move away
//! from the previous: face flips sweep the curve across an internal face,
//! spikes and unspikes push and retract zero-area spurs. The height of a
//! homotopy is the length of its longest level; certificates record the
//! moves so a claimed height can be replayed and checked.

pub mod curve;
pub mod monotone;
pub mod moves;
pub mod reduce;
pub mod retract;
pub mod regions;
pub mod verify;

pub use curve::{canonical_cycle, canonical_cycle_unoriented, Curve, CurveError, CurveKey, Side};
pub use monotone::{is_monotone, MonotoneError, MonotoneReport};
pub use moves::{apply_move, apply_move_traced, Applied, Move, MoveError};
pub use reduce::{reduce_certificate, ReduceError};
pub use retract::{retract_certificate, RetractError};
pub use regions::{is_simple, swept_faces, RegionError};
pub use verify::{
    certificate_height, empty_certificate, move_bound, verify_certificate, Certificate,
    VerifyError, VerifyOutcome,
};
