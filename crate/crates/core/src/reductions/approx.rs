//! A cut-and-glue approximation for annulus sweeps.
//!
//! Cut the annulus along a shortest path between its boundaries, sweep the
//! resulting disk between the two boundary copies, and glue each open leash
//! back into a closed level by returning along the cut path. The return
//! stretch is a subpath of a shortest path between the same two vertices,
//! so it never outweighs the leash it closes: the glued sweep costs at most
//! twice the disk optimum, which is itself a lower bound for the annulus.

use std::collections::HashMap;

use thiserror::Error;

use crate::homotopy::curve::canonical_cycle;
use crate::homotopy::moves::{apply_move_traced, Move};
use crate::homotopy::reduce::{flips, unspikes};
use crate::homotopy::verify::{verify_certificate, Certificate, VerifyError};
use crate::homotopy::{Curve, Side};
use crate::scalar::Scalar;
use crate::solver::{solve_exact, SolveOutcome, SolverOptions};
use crate::surface::cut::{cut_along, CutError};
use crate::surface::path::{shortest_path, PathError};
use crate::surface::{Dart, Dir, EId, Surface, SurfaceKind, VId};

use super::frechet::{frechet_to_hh, leash_of, FrechetAugmentation, FrechetError, FrechetInstance};

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("gluing needs an annulus")]
    NotAnnulus,
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Leash(#[from] FrechetError),
    #[error("the sub-solver's certificate does not replay: {0}")]
    SubCertificate(#[from] VerifyError),
}

/// Strategy for sweeping the cut-open disk.
///
/// Implementations return a certificate on `frechet_to_hh(fi).surface`
/// sweeping one closed boundary to the other. Every level must cross the
/// apex exactly once; any optimal certificate does, because a second
/// crossing costs two more apex edges than the entire disk weighs.
pub trait DiskSubSolver<W: Scalar> {
    fn solve(
        &self,
        fi: &FrechetInstance<W>,
        augmentation: &FrechetAugmentation<W>,
        options: &SolverOptions,
    ) -> Result<Certificate, ApproxError>;
}

/// The default strategy: sweep the pinched annulus optimally.
pub struct ExactSubSolver;

impl<W: Scalar> DiskSubSolver<W> for ExactSubSolver {
    fn solve(
        &self,
        _fi: &FrechetInstance<W>,
        augmentation: &FrechetAugmentation<W>,
        options: &SolverOptions,
    ) -> Result<Certificate, ApproxError> {
        match solve_exact(&augmentation.surface, options) {
            SolveOutcome::Solved(solution) => Ok(solution.certificate),
            SolveOutcome::CapExceeded(_) => Err(ApproxError::Leash(FrechetError::BudgetExceeded)),
        }
    }
}

/// A glued sweep with the disk solution it came from.
#[derive(Clone, Debug)]
pub struct ApproxSolution<W> {
    /// Height of the glued sweep on the annulus: at most `2 * disk_height`.
    pub height: W,
    /// Leash height of the disk solution; a lower bound on the annulus
    /// optimum when the sub-solver is exact.
    pub disk_height: W,
    /// The cut path, as darts from one boundary to the other.
    pub cut: Vec<Dart>,
    pub certificate: Certificate,
}

/// Sweep an annulus within a factor of two of optimal: cut along a shortest
/// boundary-to-boundary path, sweep the disk, glue the leashes closed.
pub fn approx_solve<W: Scalar>(
    surface: &Surface<W>,
    sub: &dyn DiskSubSolver<W>,
    options: &SolverOptions,
) -> Result<ApproxSolution<W>, ApproxError> {
    if surface.kind() != SurfaceKind::Annulus {
        return Err(ApproxError::NotAnnulus);
    }
    let emb = surface.embedding();
    let near = surface.boundary_vertices(0);
    let far = surface.boundary_vertices(1);
    let path = shortest_path(emb, &near, &far)?;

    // Trim to the stretch between the last touch of one boundary and the
    // first touch of the other, so the cut meets each boundary only at an
    // endpoint.
    let until = path
        .vertices
        .iter()
        .position(|v| far.contains(v))
        .expect("the path reaches the far boundary");
    let from = (0..=until)
        .rev()
        .find(|i| near.contains(&path.vertices[*i]))
        .expect("the path starts on the near boundary");
    let vertices = &path.vertices[from..=until];
    let darts = path.darts[from..until].to_vec();
    let cut = cut_along(surface, vertices, &darts)?;

    let fi = FrechetInstance::new(
        cut.disk.embedding().clone(),
        cut.gamma0.clone(),
        cut.gamma1.clone(),
        cut.left.clone(),
        cut.right.clone(),
        cut.disk.vertex_names().to_vec(),
        cut.disk.edge_names().to_vec(),
    )?;
    let augmentation = frechet_to_hh(&fi);
    let disk_certificate = sub.solve(&fi, &augmentation, options)?;
    let replay = verify_certificate(&augmentation.surface, &disk_certificate)?;
    let disk_height = replay.height.clone() - augmentation.k.clone() - augmentation.k.clone();

    // Where each copy of a cut-path vertex sits along the path.
    let demb = cut.disk.embedding();
    let mut station: HashMap<VId, usize> = HashMap::new();
    let [p0, q0, _, _] = fi.corners();
    station.insert(p0, 0);
    station.insert(q0, 0);
    for side in [fi.p(), fi.q()] {
        for (i, d) in side.iter().enumerate() {
            station.insert(demb.dart_target(*d), i + 1);
        }
    }

    // Glue every leash closed: map its darts back to the annulus, then walk
    // the cut path from the leash's end station to its start station.
    let mut targets: Vec<Vec<Dart>> = Vec::new();
    for level in &replay.levels {
        let leash = leash_of(&augmentation, level.walk());
        let head = station[&demb.dart_source(leash[0])];
        let tail = station[&demb.dart_target(*leash.last().unwrap())];
        let mut closed: Vec<Dart> = leash
            .iter()
            .map(|d| Dart::new(cut.map.edge_to_old[d.edge.0], d.dir))
            .collect();
        if tail <= head {
            closed.extend(&darts[tail..head]);
        } else {
            closed.extend(darts[head..tail].iter().rev().map(|d| d.reversed()));
        }
        targets.push(closed);
    }

    let initial = surface.boundary_curve_darts(0);
    let mut cur = Curve::hug(emb, true, emb.dart_source(initial[0]), initial.clone(), Side::Left)
        .expect("boundary walks hug their cap");
    cur.canonicalize(emb);

    // The disk sweep may walk its levels in either orientation; flip the
    // glued walks once if needed so they line up with the hug.
    let level_of = |walk: &[Dart]| canonical_cycle(walk).0;
    if level_of(&targets[0]) != level_of(cur.walk()) {
        for target in &mut targets {
            target.reverse();
            for d in target.iter_mut() {
                *d = d.reversed();
            }
        }
    }
    assert_eq!(
        level_of(&targets[0]),
        level_of(cur.walk()),
        "the first glued level is the near boundary"
    );

    let mut moves = Vec::new();
    for target in &targets[1..] {
        if level_of(target) == level_of(cur.walk()) {
            continue;
        }
        let (mv, next) =
            step_onto(surface, &cur, target).expect("adjacent glued levels differ by one move");
        moves.push(mv);
        cur = next;
    }

    let certificate = Certificate { initial, moves };
    let glued = verify_certificate(surface, &certificate).expect("the glued sweep replays");
    let bound = disk_height.clone() + disk_height.clone();
    assert!(
        glued.height <= bound,
        "the glued sweep stays within twice the disk height"
    );
    Ok(ApproxSolution {
        height: glued.height,
        disk_height,
        cut: darts,
        certificate,
    })
}

/// The first move carrying `cur` onto a level drawing `target`: spur
/// removals, then spurs of each edge and side, then flips of each face.
fn step_onto<W: Scalar>(surface: &Surface<W>, cur: &Curve, target: &[Dart]) -> Option<(Move, Curve)> {
    let want = canonical_cycle(target).0;
    let lands = |(mv, curve): (Move, Curve)| {
        if canonical_cycle(curve.walk()).0 == want {
            Some((mv, curve))
        } else {
            None
        }
    };
    if let Some(found) = unspikes(surface, cur).into_iter().find_map(lands) {
        return Some(found);
    }
    for e in 0..surface.embedding().edges().len() {
        for dir in [Dir::Fwd, Dir::Bwd] {
            for at in 0..cur.num_vertex_positions() {
                let mv = Move::Spike {
                    at,
                    edge: EId(e),
                    dir: Some(dir),
                    slot: None,
                    out_first: None,
                };
                let Ok(applied) = apply_move_traced(surface, cur, mv) else {
                    continue;
                };
                if let Some(found) = lands((applied.resolved, applied.curve)) {
                    return Some(found);
                }
            }
        }
    }
    for face in surface.internal_faces() {
        if let Some(found) = flips(surface, cur, face).into_iter().find_map(lands) {
            return Some(found);
        }
    }
    None
}
