//! Certificate cleanup: drop spur traffic that cancels out and reorder the
//! rest so every flip-free stretch retracts spurs before growing new ones.

use thiserror::Error;

use crate::scalar::Scalar;
use crate::surface::{EId, FId, Surface};

use super::curve::Curve;
use super::monotone::{is_monotone, MonotoneError};
use super::moves::{apply_move_traced, Move};
use super::verify::{verify_certificate, Certificate};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error(transparent)]
    Invalid(#[from] MonotoneError),
    #[error("certificate is not a monotone sweep")]
    NotMonotone,
}

/// Rewrite a monotone certificate into an equivalent one that is no taller
/// and no longer. Adjacent move pairs are simplified in a fixed order:
///
/// - a spike followed by the unspike that undoes it (or the reverse) is
///   dropped,
/// - a spike feeding the very next flip is absorbed into that flip,
/// - a spike is delayed past an unrelated unspike or flip, and an unspike is
///   advanced before an unrelated flip.
///
/// Each rewrite must reproduce the same level two steps later and replay to
/// the same terminal curve at no greater height, otherwise it is rejected.
/// The scan restarts after every accepted rewrite, so the result is a fixed
/// point: applying the reduction again returns it unchanged.
pub fn reduce_certificate<W: Scalar>(
    surface: &Surface<W>,
    certificate: &Certificate,
) -> Result<Certificate, ReduceError> {
    let report = is_monotone(surface, certificate)?;
    if !report.monotone {
        return Err(ReduceError::NotMonotone);
    }
    let outcome = verify_certificate(surface, certificate).map_err(MonotoneError::Invalid)?;
    let mut current = certificate.clone();
    let mut height = outcome.height;
    let mut levels = outcome.levels;

    'scan: loop {
        for i in 0..current.moves.len().saturating_sub(1) {
            let pair = (current.moves[i], current.moves[i + 1]);
            for replacement in rewrites(surface, &levels[i], &levels[i + 2], pair) {
                let mut moves = current.moves.clone();
                moves.splice(i..i + 2, replacement);
                let candidate = Certificate {
                    initial: current.initial.clone(),
                    moves,
                };
                let Ok(out) = verify_certificate(surface, &candidate) else {
                    continue;
                };
                if out.height > height {
                    continue;
                }
                match is_monotone(surface, &candidate) {
                    Ok(r) if r.monotone => {}
                    _ => continue,
                }
                height = out.height;
                levels = out.levels;
                current = candidate;
                continue 'scan;
            }
        }
        return Ok(current);
    }
}

/// Same drawing: walks are kept canonical, so slice equality decides.
fn same_level(a: &Curve, b: &Curve) -> bool {
    a.is_closed() == b.is_closed()
        && a.walk() == b.walk()
        && (!a.walk().is_empty() || a.start() == b.start())
}

/// Candidate replacements for the move pair carrying `before` to `after`,
/// most aggressive first. Every candidate already lands on `after`; the
/// caller still replays the whole certificate before accepting one.
fn rewrites<W: Scalar>(
    surface: &Surface<W>,
    before: &Curve,
    after: &Curve,
    pair: (Move, Move),
) -> Vec<Vec<Move>> {
    let mut out = Vec::new();
    match pair {
        (Move::Spike { edge, .. }, Move::Unspike { .. }) => {
            if same_level(before, after) {
                out.push(Vec::new());
            }
            for (unspike, mid) in unspikes(surface, before) {
                for (spike, end) in spikes(surface, &mid, edge) {
                    if same_level(&end, after) {
                        out.push(vec![unspike, spike]);
                    }
                }
            }
        }
        (Move::Unspike { .. }, Move::Spike { .. }) => {
            if same_level(before, after) {
                out.push(Vec::new());
            }
        }
        (Move::Spike { edge, .. }, Move::Flip { face, .. }) => {
            let mut delayed = Vec::new();
            for (flip, mid) in flips(surface, before, face) {
                if same_level(&mid, after) {
                    out.push(vec![flip]);
                    continue;
                }
                for (spike, end) in spikes(surface, &mid, edge) {
                    if same_level(&end, after) {
                        delayed.push(vec![flip, spike]);
                    }
                }
            }
            out.extend(delayed);
        }
        (Move::Flip { face, .. }, Move::Unspike { .. }) => {
            for (unspike, mid) in unspikes(surface, before) {
                for (flip, end) in flips(surface, &mid, face) {
                    if same_level(&end, after) {
                        out.push(vec![unspike, flip]);
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// Every spur retraction the level admits, in position order.
pub(crate) fn unspikes<W: Scalar>(surface: &Surface<W>, level: &Curve) -> Vec<(Move, Curve)> {
    (0..level.len())
        .filter_map(|at| apply_move_traced(surface, level, Move::Unspike { at }).ok())
        .map(|a| (a.resolved, a.curve))
        .collect()
}

/// Every spike of `edge` the level admits, in position order.
fn spikes<W: Scalar>(surface: &Surface<W>, level: &Curve, edge: EId) -> Vec<(Move, Curve)> {
    let mv = |at| Move::Spike {
        at,
        edge,
        dir: None,
        slot: None,
        out_first: None,
    };
    (0..level.num_vertex_positions())
        .filter_map(|at| apply_move_traced(surface, level, mv(at)).ok())
        .map(|a| (a.resolved, a.curve))
        .collect()
}

/// Every flip of `face` the level admits, ordered by subpath length, then
/// position, then the occurrence on the face walk.
pub(crate) fn flips<W: Scalar>(surface: &Surface<W>, level: &Curve, face: FId) -> Vec<(Move, Curve)> {
    let flen = surface.embedding().face(face).darts.len();
    let l = level.len();
    let mut out = Vec::new();
    for len in 0..=l.min(flen) {
        let positions = if len == 0 {
            level.num_vertex_positions()
        } else if level.is_closed() {
            l
        } else {
            l - len + 1
        };
        for at in 0..positions {
            for face_at in 0..flen {
                let mv = Move::Flip {
                    face,
                    at,
                    len,
                    face_at: Some(face_at),
                };
                if let Ok(a) = apply_move_traced(surface, level, mv) {
                    out.push((a.resolved, a.curve));
                }
            }
        }
    }
    out
}
