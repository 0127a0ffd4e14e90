//! Exhaustive reference solver.
//!
//! Works purely on walks: a state is a closed walk (annulus) or an anchored
//! walk (disk), moves are applied by splicing dart sequences, and no strand
//! bookkeeping is done at all. For every candidate height H (in increasing
//! order of achievable walk lengths) a breadth-first search over all walks
//! of length at most H, capped at the universal move budget, decides
//! feasibility. Slow but independent: the production solver is validated
//! against this.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::homotopy::{canonical_cycle_unoriented, move_bound};
use crate::scalar::Scalar;
use crate::surface::{Dart, Dir, Surface, SurfaceKind, VId};

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Refuse instances with more internal faces than this.
    pub max_faces: usize,
    /// Refuse instances with more edges than this.
    pub max_edges: usize,
    /// Abort after visiting this many walks in one feasibility probe.
    pub max_states: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_faces: 8,
            max_edges: 20,
            max_states: 20_000_000,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for exhaustive search: {faces} internal faces, {edges} edges")]
    TooLarge { faces: usize, edges: usize },
    #[error("state budget exhausted while probing height candidates")]
    StateBudgetExhausted,
    #[error("no homotopy within the requested height cap")]
    InfeasibleUnderCap,
}

struct Walk {
    darts: Vec<Dart>,
    /// Base vertex; only meaningful when `darts` is empty.
    base: VId,
}

fn key(surface: &Surface<impl Scalar>, darts: &[Dart], base: VId) -> Vec<u32> {
    match surface.kind() {
        SurfaceKind::Annulus => {
            if darts.is_empty() {
                return vec![u32::MAX, base.0 as u32];
            }
            canonical_cycle_unoriented(darts)
                .iter()
                .map(|d| d.index() as u32)
                .collect()
        }
        SurfaceKind::Disk => darts.iter().map(|d| d.index() as u32).collect(),
    }
}

/// All walks one move away, with no length filtering.
fn successors<W: Scalar>(surface: &Surface<W>, walk: &Walk) -> Vec<Walk> {
    let emb = surface.embedding();
    let closed = surface.kind() == SurfaceKind::Annulus;
    let darts = &walk.darts;
    let l = darts.len();
    let vertex_positions = if l == 0 {
        1
    } else if closed {
        l
    } else {
        l + 1
    };
    let vertex_at = |pos: usize| {
        if pos == 0 {
            if l == 0 {
                walk.base
            } else {
                emb.dart_source(darts[0])
            }
        } else {
            emb.dart_target(darts[pos - 1])
        }
    };
    let mut out = Vec::new();
    let mut emit = |darts: Vec<Dart>, base: VId| out.push(Walk { darts, base });

    // Spikes: a spur across any incident edge side, at any position.
    for pos in 0..vertex_positions {
        let v = vertex_at(pos);
        for (e, end) in emb.rotation(v) {
            let d = Dart::new(*e, Dir::from_source_end(*end));
            let mut next = Vec::with_capacity(l + 2);
            next.extend_from_slice(&darts[..pos]);
            next.push(d);
            next.push(d.reversed());
            next.extend_from_slice(&darts[pos..]);
            emit(next, walk.base);
        }
    }

    // Unspikes: remove any spur.
    for pos in 0..l {
        let second = if closed {
            (pos + 1) % l
        } else if pos + 1 < l {
            pos + 1
        } else {
            continue;
        };
        if second == pos || darts[second] != darts[pos].reversed() {
            continue;
        }
        if closed && second < pos {
            // Wrapping spur: drop first and last darts.
            emit(darts[1..l - 1].to_vec(), emb.dart_source(darts[1]));
        } else {
            let mut next = Vec::with_capacity(l - 2);
            next.extend_from_slice(&darts[..pos]);
            next.extend_from_slice(&darts[pos + 2..]);
            let base = if next.is_empty() {
                vertex_at(pos)
            } else {
                emb.dart_source(next[0])
            };
            emit(next, base);
        }
    }

    // Flips: replace a subpath lying on an internal face by the complement,
    // in either orientation at every face offset.
    for f in surface.internal_faces() {
        let fd = &emb.face(f).darts;
        let flen = fd.len();
        for pos in 0..vertex_positions {
            let subpath = |i: usize| darts[(pos + i) % l.max(1)];
            for len in 0..=l.min(flen) {
                if !closed && pos + len > l {
                    break;
                }
                for o in 0..flen {
                    if len == 0 {
                        if emb.dart_source(fd[o]) != vertex_at(pos) {
                            continue;
                        }
                        // Both rotational senses of a point flip.
                        let around: Vec<Dart> = (0..flen).map(|i| fd[(o + i) % flen]).collect();
                        emit(splice(darts, closed, pos, len, &around), walk.base);
                        let counter: Vec<Dart> =
                            (0..flen).rev().map(|i| fd[(o + i) % flen].reversed()).collect();
                        emit(splice(darts, closed, pos, len, &counter), walk.base);
                        continue;
                    }
                    if (0..len).all(|i| fd[(o + i) % flen] == subpath(len - 1 - i).reversed()) {
                        let comp: Vec<Dart> = (len..flen).map(|i| fd[(o + i) % flen]).collect();
                        emit(splice(darts, closed, pos, len, &comp), walk.base);
                    }
                    if (0..len).all(|i| fd[(o + i) % flen] == subpath(i)) {
                        let comp: Vec<Dart> = (len..flen)
                            .rev()
                            .map(|i| fd[(o + i) % flen].reversed())
                            .collect();
                        emit(splice(darts, closed, pos, len, &comp), walk.base);
                    }
                }
            }
        }
    }

    out
}

fn splice(darts: &[Dart], closed: bool, pos: usize, removed: usize, inserted: &[Dart]) -> Vec<Dart> {
    let l = darts.len();
    let mut next = Vec::with_capacity(l - removed + inserted.len());
    if closed && l > 0 {
        // Rotate so the replaced stretch leads; closed keys ignore the seam.
        next.extend_from_slice(inserted);
        next.extend((removed..l).map(|i| darts[(pos + i) % l]));
    } else {
        next.extend_from_slice(&darts[..pos]);
        next.extend_from_slice(inserted);
        next.extend_from_slice(&darts[pos + removed..]);
    }
    next
}

enum Probe<W> {
    Feasible,
    Infeasible { next: Option<W> },
}

fn probe<W: Scalar>(
    surface: &Surface<W>,
    height: &W,
    config: &OracleConfig,
) -> Result<Probe<W>, OracleError> {
    let emb = surface.embedding();
    let budget = move_bound(surface);
    let start = surface.boundary_curve_darts(0);
    let goal = key(
        surface,
        &surface.boundary_curve_darts(1),
        VId(usize::MAX),
    );

    let base = emb.dart_source(start[0]);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue: VecDeque<(Walk, usize)> = VecDeque::new();
    let mut overflow: Option<W> = None;

    let start_key = key(surface, &start, base);
    if start_key == goal {
        return Ok(Probe::Feasible);
    }
    seen.insert(start_key);
    queue.push_back((
        Walk {
            darts: start,
            base,
        },
        0,
    ));

    while let Some((walk, depth)) = queue.pop_front() {
        if depth == budget {
            continue;
        }
        for next in successors(surface, &walk) {
            let length = emb.walk_weight(&next.darts);
            if length > *height {
                overflow = Some(match overflow.take() {
                    Some(best) => best.min(length),
                    None => length,
                });
                continue;
            }
            let k = key(surface, &next.darts, next.base);
            if k == goal {
                return Ok(Probe::Feasible);
            }
            if seen.contains(&k) {
                continue;
            }
            if seen.len() >= config.max_states {
                return Err(OracleError::StateBudgetExhausted);
            }
            seen.insert(k);
            queue.push_back((next, depth + 1));
        }
    }
    Ok(Probe::Infeasible { next: overflow })
}

/// Minimum homotopy height by exhaustive search, trying candidate heights in
/// increasing order of achievable level lengths. `height_cap` turns an
/// unbounded search into a bounded feasibility question.
pub fn solve_oracle<W: Scalar>(
    surface: &Surface<W>,
    config: &OracleConfig,
    height_cap: Option<W>,
) -> Result<W, OracleError> {
    let emb = surface.embedding();
    let faces = surface.num_internal_faces();
    let edges = emb.edges().len();
    if faces > config.max_faces || edges > config.max_edges {
        return Err(OracleError::TooLarge { faces, edges });
    }

    let l0 = emb.walk_weight(&surface.boundary_curve_darts(0));
    let l1 = emb.walk_weight(&surface.boundary_curve_darts(1));
    let mut h = l0.max(l1);
    loop {
        if let Some(cap) = &height_cap {
            if h > *cap {
                return Err(OracleError::InfeasibleUnderCap);
            }
        }
        match probe(surface, &h, config)? {
            Probe::Feasible => return Ok(h),
            Probe::Infeasible { next: Some(n) } => h = n,
            Probe::Infeasible { next: None } => {
                // The reachable component is closed under moves yet misses
                // the goal; impossible for homotopic boundaries.
                return Err(OracleError::StateBudgetExhausted);
            }
        }
    }
}
