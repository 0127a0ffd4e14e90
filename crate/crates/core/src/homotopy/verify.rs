//! Certificate checking: replay a move list from the starting boundary and
//! measure the tallest level on the way.

use thiserror::Error;

use crate::scalar::Scalar;
use crate::surface::{Dart, Surface, SurfaceKind};

use super::curve::{canonical_cycle, canonical_cycle_unoriented, Curve, Side};
use super::moves::{apply_move_traced, Move, MoveError};

/// A claimed homotopy: the realized starting curve and the moves that carry
/// it to the other boundary. Moves address positions on the canonical
/// rotation of the curve they apply to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub initial: Vec<Dart>,
    pub moves: Vec<Move>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("initial curve does not match boundary 0")]
    WrongInitialCurve,
    #[error("invalid move at step {index}: {source}")]
    InvalidMove {
        index: usize,
        #[source]
        source: MoveError,
    },
    #[error("final curve does not match boundary 1")]
    WrongTerminalCurve,
}

/// Everything a successful verification established.
#[derive(Debug)]
pub struct VerifyOutcome<W> {
    /// Length of the longest level, the two boundaries included.
    pub height: W,
    /// All levels, from the realized initial curve to the final one.
    pub levels: Vec<Curve>,
    /// Budget any optimal homotopy fits in; longer certificates are still
    /// verified but flagged.
    pub move_bound: usize,
    pub move_bound_exceeded: bool,
}

/// Number of moves within which an optimal homotopy exists: `8m(n + 1) + n`
/// for `m` edges and `n` internal faces.
pub fn move_bound<W: Scalar>(surface: &Surface<W>) -> usize {
    let m = surface.embedding().edges().len();
    let n = surface.num_internal_faces();
    8 * m * (n + 1) + n
}

/// Realize the certificate's initial walk against boundary 0: the boundary
/// cap must stay on the hugged side, so the side follows the orientation
/// the walk was written in.
fn realize_initial<W: Scalar>(
    surface: &Surface<W>,
    initial: &[Dart],
) -> Result<Curve, VerifyError> {
    let emb = surface.embedding();
    let gamma0 = surface.boundary_curve_darts(0);
    match surface.kind() {
        SurfaceKind::Annulus => {
            if canonical_cycle_unoriented(initial) != canonical_cycle_unoriented(&gamma0) {
                return Err(VerifyError::WrongInitialCurve);
            }
            let side = if canonical_cycle(initial).0 == canonical_cycle(&gamma0).0 {
                Side::Left
            } else {
                Side::Right
            };
            let start = emb.dart_source(initial[0]);
            Curve::hug(emb, true, start, initial.to_vec(), side)
                .map_err(|_| VerifyError::WrongInitialCurve)
        }
        SurfaceKind::Disk => {
            if initial != gamma0.as_slice() {
                return Err(VerifyError::WrongInitialCurve);
            }
            let [s, _] = surface.anchors().expect("disks carry anchors");
            Curve::hug(emb, false, s, initial.to_vec(), Side::Left)
                .map_err(|_| VerifyError::WrongInitialCurve)
        }
    }
}

/// Replay a certificate and measure it. The final curve must land on
/// boundary 1: up to rotation and reversal for annuli, on the nose for
/// anchored disk curves.
pub fn verify_certificate<W: Scalar>(
    surface: &Surface<W>,
    certificate: &Certificate,
) -> Result<VerifyOutcome<W>, VerifyError> {
    let emb = surface.embedding();
    if certificate.initial.is_empty() {
        return Err(VerifyError::WrongInitialCurve);
    }
    let mut curve = realize_initial(surface, &certificate.initial)?;
    curve.canonicalize(emb);

    let mut levels = vec![curve.clone()];
    let mut height = curve.length(emb);
    for (index, &mv) in certificate.moves.iter().enumerate() {
        let applied = apply_move_traced(surface, &curve, mv)
            .map_err(|source| VerifyError::InvalidMove { index, source })?;
        curve = applied.curve;
        height = height.max(curve.length(emb));
        levels.push(curve.clone());
    }

    let gamma1 = surface.boundary_curve_darts(1);
    let arrived = match surface.kind() {
        SurfaceKind::Annulus => {
            canonical_cycle_unoriented(curve.walk()) == canonical_cycle_unoriented(&gamma1)
        }
        SurfaceKind::Disk => curve.walk() == gamma1.as_slice(),
    };
    if !arrived {
        return Err(VerifyError::WrongTerminalCurve);
    }

    let move_bound = move_bound(surface);
    Ok(VerifyOutcome {
        height,
        levels,
        move_bound,
        move_bound_exceeded: certificate.moves.len() > move_bound,
    })
}

/// The certificate of the degenerate homotopy for coinciding boundaries.
pub fn empty_certificate<W: Scalar>(surface: &Surface<W>) -> Certificate {
    Certificate {
        initial: surface.boundary_curve_darts(0),
        moves: Vec::new(),
    }
}

/// Convenience: replay and return only the height.
pub fn certificate_height<W: Scalar>(
    surface: &Surface<W>,
    certificate: &Certificate,
) -> Result<W, VerifyError> {
    verify_certificate(surface, certificate).map(|o| o.height)
}
