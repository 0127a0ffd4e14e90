//! Shortcutting a monotone sweep through a taut ring: cut the annulus at the
//! ring, sweep each side optimally, and splice the two sweeps back together.
//! The spliced sweep passes through the ring and is never taller than the
//! input, because each side admits the input's retraction onto it.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use thiserror::Error;

use crate::scalar::Scalar;
use crate::solver::{solve_exact, SolveOutcome, SolverOptions};
use crate::surface::cut::{cut_along_cycle, Correspondence, CutError};
use crate::surface::{Dart, Dir, FId, Surface, VId};

use super::curve::{canonical_cycle_unoriented, Curve, Side};
use super::monotone::{is_monotone, MonotoneError};
use super::moves::{apply_move_traced, Move};
use super::regions::{swept_faces, RegionError};
use super::verify::{verify_certificate, Certificate};

#[derive(Debug, Error)]
pub enum RetractError {
    #[error(transparent)]
    Invalid(#[from] MonotoneError),
    #[error("certificate is not a monotone sweep")]
    NotMonotone,
    #[error("ring is not an embedded cycle separating the boundaries: {0}")]
    NotSeparating(#[from] RegionError),
    #[error("ring revisits vertex {vertex:?}")]
    RevisitsVertex { vertex: VId },
    #[error("a homotopic cycle through vertex {vertex:?} is shorter than the ring")]
    NotShortest { vertex: VId },
    #[error("cutting at the ring failed: {0}")]
    Cut(#[from] CutError),
    #[error("side sweep exceeded its search budget")]
    BudgetExceeded,
    #[error("no sweep through the ring stays within the certificate height")]
    HeightExceeded,
}

/// Rewrite a monotone certificate into one of no greater height that passes
/// through `ring` as a level curve.
///
/// The ring must be an embedded cycle separating the two boundaries, visit
/// each vertex at most once, and be taut: no homotopic cycle through any of
/// its vertices may be shorter. A ring equal to either boundary returns the
/// certificate unchanged. Otherwise the annulus is cut at the ring and each
/// side is swept optimally; the input certificate retracts onto either side
/// without growing, so the spliced sweep stays within its height.
pub fn retract_certificate<W: Scalar>(
    surface: &Surface<W>,
    certificate: &Certificate,
    ring: &Curve,
) -> Result<Certificate, RetractError> {
    let outcome = verify_certificate(surface, certificate).map_err(MonotoneError::Invalid)?;
    if !is_monotone(surface, certificate)?.monotone {
        return Err(RetractError::NotMonotone);
    }

    let emb = surface.embedding();
    let cycle = canonical_cycle_unoriented(ring.walk());
    for which in 0..2 {
        if cycle == canonical_cycle_unoriented(&surface.boundary_curve_darts(which)) {
            return Ok(certificate.clone());
        }
    }

    swept_faces(surface, ring)?;

    let vertices = emb.walk_vertices(ring.walk());
    let mut seen = HashSet::new();
    for &v in &vertices {
        if !seen.insert(v) {
            return Err(RetractError::RevisitsVertex { vertex: v });
        }
    }

    let length = emb.walk_weight(ring.walk());
    let signs = crossing_signs(surface);
    for &v in &vertices {
        if shorter_cycle_through(surface, &signs, v, &length) {
            return Err(RetractError::NotShortest { vertex: v });
        }
    }

    let cut = cut_along_cycle(surface, &vertices, ring.walk())?;
    let sweep = |side: &Surface<W>| -> Result<Certificate, RetractError> {
        match solve_exact(side, &SolverOptions::default()) {
            SolveOutcome::Solved(solution) => Ok(solution.certificate),
            SolveOutcome::CapExceeded(_) => Err(RetractError::BudgetExceeded),
        }
    };
    let near = sweep(&cut.side0)?;
    let far = sweep(&cut.side1)?;

    let initial = surface.boundary_curve_darts(0);
    let start = emb.dart_source(initial[0]);
    let mut level = Curve::hug(emb, true, start, initial.clone(), Side::Left)
        .expect("boundary walks hug their cap");
    level.canonicalize(emb);

    let (mut moves, junction) = rebase(surface, &cut.side0, &cut.map0, &near, level);
    let (tail, _) = rebase(surface, &cut.side1, &cut.map1, &far, junction);
    moves.extend(tail);

    let composed = Certificate { initial, moves };
    let spliced = verify_certificate(surface, &composed).expect("spliced sweeps replay");
    if spliced.height > outcome.height {
        return Err(RetractError::HeightExceeded);
    }
    debug_assert!(
        is_monotone(surface, &composed)
            .map(|r| r.monotone)
            .unwrap_or(false),
        "spliced sweeps stay monotone"
    );
    Ok(composed)
}

/// Replay a side certificate on the full surface, translating ids through
/// the cut correspondence and re-anchoring every position on the current
/// level's canonical rotation.
fn rebase<W: Scalar>(
    surface: &Surface<W>,
    side: &Surface<W>,
    map: &Correspondence,
    sub: &Certificate,
    mut level: Curve,
) -> (Vec<Move>, Curve) {
    let levels = verify_certificate(side, sub)
        .expect("side certificates replay on their own annulus")
        .levels;
    let mut moves = Vec::with_capacity(sub.moves.len());
    for (i, mv) in sub.moves.iter().enumerate() {
        let walk: Vec<Dart> = levels[i]
            .walk()
            .iter()
            .map(|d| Dart::new(map.edge_to_old[d.edge.0], d.dir))
            .collect();
        let l = walk.len();
        let cur = level.walk();
        let delta = (0..l)
            .find(|&r| (0..l).all(|j| cur[j] == walk[(j + r) % l]))
            .expect("side sweep level matches the spliced replay");
        let shift = |p: usize| (p + l - delta) % l;
        let mapped = match *mv {
            Move::Flip {
                face,
                at,
                len,
                face_at,
            } => Move::Flip {
                face: map.face_to_old[face.0].expect("flips sweep interior faces"),
                at: shift(at),
                len,
                face_at: remap_face_at(surface, side, map, face, face_at),
            },
            Move::Spike { at, edge, dir, .. } => Move::Spike {
                at: shift(at),
                edge: map.edge_to_old[edge.0],
                dir,
                slot: None,
                out_first: None,
            },
            Move::Unspike { at } => Move::Unspike { at: shift(at) },
        };
        let applied = apply_move_traced(surface, &level, mapped)
            .expect("side sweep moves stay applicable after splicing");
        moves.push(applied.resolved);
        level = applied.curve;
    }
    (moves, level)
}

/// The full-surface occurrence index matching a side face walk occurrence.
fn remap_face_at<W: Scalar>(
    surface: &Surface<W>,
    side: &Surface<W>,
    map: &Correspondence,
    face: FId,
    face_at: Option<usize>,
) -> Option<usize> {
    let o = face_at?;
    let full = map.face_to_old[face.0].expect("flips sweep interior faces");
    let sub_walk: Vec<Dart> = side
        .embedding()
        .face(face)
        .darts
        .iter()
        .map(|d| Dart::new(map.edge_to_old[d.edge.0], d.dir))
        .collect();
    let full_walk = &surface.embedding().face(full).darts;
    let n = full_walk.len();
    let rho = (0..n)
        .find(|&r| (0..n).all(|i| full_walk[(i + r) % n] == sub_walk[i]))
        .expect("interior face walks survive the cut");
    Some((o + rho) % n)
}

/// Signed crossing numbers against a dual arc from the boundary-0 face to
/// the boundary-1 face: `signs[e]` is the contribution of edge `e`'s forward
/// dart to a walk's winding, normalized so boundary 0 winds +1. Walks wind
/// their net crossing count, so a cycle is homotopic to the boundaries
/// exactly when it sums to plus or minus one.
fn crossing_signs<W: Scalar>(surface: &Surface<W>) -> Vec<i8> {
    let emb = surface.embedding();
    let [b0, b1] = surface.boundary_faces();
    let faces = emb.faces().len();
    let mut via: Vec<Option<Dart>> = vec![None; faces];
    let mut seen = vec![false; faces];
    seen[b0.0] = true;
    let mut queue = std::collections::VecDeque::from([b0]);
    while let Some(f) = queue.pop_front() {
        if f == b1 {
            break;
        }
        for &d in &emb.face(f).darts {
            let other = emb.face_left_of(d.reversed());
            if !seen[other.0] {
                seen[other.0] = true;
                via[other.0] = Some(d);
                queue.push_back(other);
            }
        }
    }

    let mut signs = vec![0i8; emb.edges().len()];
    let mut f = b1;
    while f != b0 {
        let d = via[f.0].expect("the dual graph of a sphere embedding is connected");
        // The arc leaves the face right of `d` and enters the face left of
        // its reverse; forward darts crossing it pick up the matching sign.
        signs[d.edge.0] = match d.dir {
            Dir::Fwd => -1,
            Dir::Bwd => 1,
        };
        f = emb.face_left_of(d);
    }

    let winding: i64 = surface
        .boundary_curve_darts(0)
        .iter()
        .map(|d| dart_sign(&signs, *d) as i64)
        .sum();
    debug_assert_eq!(winding.abs(), 1, "boundary walks generate the annulus");
    if winding < 0 {
        for s in &mut signs {
            *s = -*s;
        }
    }
    signs
}

fn dart_sign(signs: &[i8], d: Dart) -> i8 {
    match d.dir {
        Dir::Fwd => signs[d.edge.0],
        Dir::Bwd => -signs[d.edge.0],
    }
}

/// Whether some cycle through `v`, homotopic to the boundaries, is strictly
/// shorter than `cap`. Dijkstra over (vertex, winding) sheets: a path from
/// (v, 0) to (v, 1) is exactly a through-`v` cycle of winding one. Sheets
/// are clamped to a window wide enough for any shortest representative that
/// does not rewind over the same crossings.
fn shorter_cycle_through<W: Scalar>(
    surface: &Surface<W>,
    signs: &[i8],
    v: VId,
    cap: &W,
) -> bool {
    let emb = surface.embedding();
    let window = emb.edges().len() as i64 + 2;

    let mut adjacency: Vec<Vec<(Dart, usize)>> = vec![Vec::new(); emb.num_vertices()];
    for (e, edge) in emb.edges().iter().enumerate() {
        let d = Dart::fwd(crate::surface::EId(e));
        adjacency[edge.tail.0].push((d, edge.head.0));
        adjacency[edge.head.0].push((d.reversed(), edge.tail.0));
    }

    let mut done: HashSet<(usize, i64)> = HashSet::new();
    let mut best: HashMap<(usize, i64), W> = HashMap::new();
    let mut heap = BinaryHeap::new();
    best.insert((v.0, 0), W::zero());
    heap.push(Reverse((W::zero(), v.0, 0i64)));
    while let Some(Reverse((d, u, s))) = heap.pop() {
        if (u, s) == (v.0, 1) {
            return d < *cap;
        }
        if !done.insert((u, s)) {
            continue;
        }
        if d >= *cap {
            return false;
        }
        for &(dart, to) in &adjacency[u] {
            let s2 = s + dart_sign(signs, dart) as i64;
            if s2 < -window || s2 > window + 1 {
                continue;
            }
            let nd = d.clone() + emb.weight(dart.edge).clone();
            if best.get(&(to, s2)).map_or(true, |old| nd < *old) {
                best.insert((to, s2), nd.clone());
                heap.push(Reverse((nd, to, s2)));
            }
        }
    }
    false
}
