//! The elementary moves between consecutive level curves.
//!
//! A face flip replaces a fan of consecutive curve steps lying on one
//! internal face by the rest of that face's boundary; a spike pushes a
//! zero-area spur across an edge; an unspike retracts one. Moves name
//! positions on the canonical rotation of the current curve, so replaying a
//! move list is deterministic. Optional realization hints pin down where new
//! strands land when several placements are possible; without hints the
//! first placement that keeps the curve embedded is chosen.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::surface::{Dart, Dir, EId, FId, Surface};

use super::curve::{Curve, Side};
use super::regions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    /// Sweep across `face`: the curve subpath of `len` darts starting at
    /// position `at` (a vertex position when `len` is 0) is replaced by the
    /// rest of the face walk. `face_at` optionally pins which occurrence on
    /// the face walk is meant.
    Flip {
        face: FId,
        at: usize,
        len: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        face_at: Option<usize>,
    },
    /// Insert a spur crossing `edge` at vertex position `at`. `dir` picks
    /// the outgoing side on a loop edge, `slot` the strand interval the spur
    /// lands in, `out_first` whether the outgoing strand takes the lower of
    /// the two new ranks.
    Spike {
        at: usize,
        edge: EId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dir: Option<Dir>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        slot: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out_first: Option<bool>,
    },
    /// Remove the spur occupying dart positions `at` and `at + 1`.
    Unspike { at: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("position {at} is outside the curve")]
    PositionOutOfRange { at: usize },
    #[error("a subpath of {len} darts does not fit a curve of {curve} darts")]
    SubpathTooLong { len: usize, curve: usize },
    #[error("face {face:?} is a boundary face and cannot be swept")]
    BoundaryFace { face: FId },
    #[error("curve subpath at position {at} does not lie on the walk of face {face:?}")]
    SubpathNotOnFace { face: FId, at: usize },
    #[error("vertex at position {at} does not lie on the walk of face {face:?}")]
    VertexNotOnFace { face: FId, at: usize },
    #[error("edge {edge:?} is not incident to the vertex at position {at}")]
    EdgeNotIncident { edge: EId, at: usize },
    #[error("slot {slot} exceeds the {strands} strands on edge {edge:?}")]
    SlotOutOfRange { edge: EId, slot: u32, strands: usize },
    #[error("dart at position {at} and the next do not form a spur")]
    NotASpur { at: usize },
}

/// Result of applying one move.
pub struct Applied {
    pub curve: Curve,
    /// The move with all realization choices filled in; replaying it yields
    /// the same curve.
    pub resolved: Move,
    /// Rotation performed by the final canonicalization, in the frame
    /// `inserted_at` is expressed in: a working position `p` now sits at
    /// `(p + len - offset) % len`.
    pub offset: usize,
    /// Working-frame dart position where new material begins.
    pub inserted_at: usize,
    pub inserted_len: usize,
}

/// How a curve subpath matched the face walk. A monotone sweep always meets
/// the face against its orientation, so reversed matches are tried first.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Match {
    Reversed,
    Forward,
}

fn splice(
    work: &Curve,
    base: usize,
    removed: usize,
    inserted: &[(Dart, Side)],
) -> (Vec<Dart>, Vec<u32>) {
    #[derive(Clone, Copy)]
    enum Item {
        Old(usize),
        New(usize),
    }
    let ins = inserted.len();
    let map = |i: usize| {
        if i < base {
            i
        } else {
            i - removed + ins
        }
    };

    let mut lists: std::collections::HashMap<EId, Vec<Item>> = std::collections::HashMap::new();
    for (edge, list) in work.strand_lists() {
        lists.insert(
            edge,
            list.into_iter()
                .filter(|&i| i < base || i >= base + removed)
                .map(Item::Old)
                .collect(),
        );
    }
    for (ci, &(d, side)) in inserted.iter().enumerate() {
        let list = lists.entry(d.edge).or_default();
        if side.is_low_rank(d.dir) {
            list.insert(0, Item::New(ci));
        } else {
            list.push(Item::New(ci));
        }
    }

    let mut walk: Vec<Dart> = Vec::with_capacity(work.len() - removed + ins);
    walk.extend_from_slice(&work.walk()[..base]);
    walk.extend(inserted.iter().map(|&(d, _)| d));
    walk.extend_from_slice(&work.walk()[base + removed..]);

    let mut ranks = vec![0u32; walk.len()];
    for list in lists.values() {
        for (rank, item) in list.iter().enumerate() {
            let at = match *item {
                Item::Old(i) => map(i),
                Item::New(ci) => base + ci,
            };
            ranks[at] = rank as u32;
        }
    }
    (walk, ranks)
}

fn rebuild<W: Scalar>(
    surface: &Surface<W>,
    work: &Curve,
    walk: Vec<Dart>,
    ranks: Vec<u32>,
) -> (Curve, usize) {
    let emb = surface.embedding();
    let mut curve = if !work.is_closed() {
        Curve::open_curve(emb, work.start(), walk, ranks).expect("spliced walk stays anchored")
    } else if walk.is_empty() {
        Curve::constant(work.start(), true)
    } else {
        Curve::closed_curve(emb, walk, ranks).expect("spliced walk stays closed")
    };
    let offset = curve.canonicalize(emb);
    (curve, offset)
}

fn apply_flip<W: Scalar>(
    surface: &Surface<W>,
    curve: &Curve,
    face: FId,
    at: usize,
    len: usize,
    face_at: Option<usize>,
) -> Result<Applied, MoveError> {
    let emb = surface.embedding();
    if surface.is_boundary_face(face) {
        return Err(MoveError::BoundaryFace { face });
    }
    let l = curve.len();
    if len > l {
        return Err(MoveError::SubpathTooLong { len, curve: l });
    }

    // Bring the subpath (or touched vertex) to the front of closed walks so
    // nothing wraps; open walks keep their frame.
    let mut work = curve.clone();
    let base = if curve.is_closed() {
        let positions = if len == 0 {
            curve.num_vertex_positions()
        } else {
            l
        };
        if at >= positions {
            return Err(MoveError::PositionOutOfRange { at });
        }
        work.rotate(emb, at % l.max(1));
        0
    } else {
        let limit = if len == 0 {
            curve.num_vertex_positions()
        } else {
            l.saturating_sub(len) + 1
        };
        if at >= limit {
            return Err(MoveError::PositionOutOfRange { at });
        }
        at
    };

    let p = &work.walk()[base..base + len];
    let fd = &emb.face(face).darts;
    let flen = fd.len();

    let rev_at = |o: usize| (0..len).all(|i| fd[(o + i) % flen] == p[len - 1 - i].reversed());
    let fwd_at = |o: usize| (0..len).all(|i| fd[(o + i) % flen] == p[i]);
    let vertex_at = |o: usize| {
        let v = work.vertex_at(emb, base);
        emb.dart_source(fd[o]) == v
    };

    let offsets: Vec<usize> = match face_at {
        Some(o) if o < flen => vec![o],
        Some(_) => Vec::new(),
        None => (0..flen).collect(),
    };
    let found = if len == 0 {
        offsets
            .iter()
            .copied()
            .find(|&o| vertex_at(o))
            .map(|o| (o, Match::Reversed))
            .ok_or(MoveError::VertexNotOnFace { face, at })?
    } else {
        offsets
            .iter()
            .copied()
            .find(|&o| rev_at(o))
            .map(|o| (o, Match::Reversed))
            .or_else(|| {
                offsets
                    .iter()
                    .copied()
                    .find(|&o| fwd_at(o))
                    .map(|o| (o, Match::Forward))
            })
            .ok_or(MoveError::SubpathNotOnFace { face, at })?
    };
    let (o, orient) = found;

    // New strands land on the face's side of their corridors: leftmost when
    // the complement runs with the face walk, rightmost when against it.
    let inserted: Vec<(Dart, Side)> = match orient {
        Match::Reversed => (len..flen)
            .map(|i| (fd[(o + i) % flen], Side::Left))
            .collect(),
        Match::Forward => (len..flen)
            .rev()
            .map(|i| (fd[(o + i) % flen].reversed(), Side::Right))
            .collect(),
    };

    let (walk, ranks) = splice(&work, base, len, &inserted);
    let inserted_len = inserted.len();
    let (result, offset) = rebuild(surface, &work, walk, ranks);
    Ok(Applied {
        curve: result,
        resolved: Move::Flip {
            face,
            at,
            len,
            face_at: Some(o),
        },
        offset,
        inserted_at: base,
        inserted_len,
    })
}

/// Candidate realizations of a spike, most constrained hint first. Each is
/// `(outgoing dart, slot, out_first)`.
fn spike_candidates<W: Scalar>(
    surface: &Surface<W>,
    curve: &Curve,
    at: usize,
    edge: EId,
    dir: Option<Dir>,
    slot: Option<u32>,
    out_first: Option<bool>,
) -> Result<Vec<(Dart, u32, bool)>, MoveError> {
    let emb = surface.embedding();
    if at >= curve.num_vertex_positions() {
        return Err(MoveError::PositionOutOfRange { at });
    }
    let v = curve.vertex_at(emb, at);
    if edge.0 >= emb.edges().len() {
        return Err(MoveError::EdgeNotIncident { edge, at });
    }
    let e = emb.edge(edge);
    let mut dirs = Vec::new();
    for d in [Dir::Fwd, Dir::Bwd] {
        if e.vertex_at(d.source_end()) == v && dir.map_or(true, |want| want == d) {
            dirs.push(d);
        }
    }
    if dirs.is_empty() {
        return Err(MoveError::EdgeNotIncident { edge, at });
    }
    let strands = curve.strands_on(edge);
    if let Some(s) = slot {
        if s as usize > strands {
            return Err(MoveError::SlotOutOfRange {
                edge,
                slot: s,
                strands,
            });
        }
    }
    let slots: Vec<u32> = match slot {
        Some(s) => vec![s],
        None => (0..=strands as u32).collect(),
    };
    let outs: Vec<bool> = match out_first {
        Some(b) => vec![b],
        None => vec![true, false],
    };
    let mut candidates = Vec::new();
    for &d in &dirs {
        for &s in &slots {
            for &of in &outs {
                candidates.push((Dart::new(edge, d), s, of));
            }
        }
    }
    Ok(candidates)
}

fn insert_spur<W: Scalar>(
    surface: &Surface<W>,
    curve: &Curve,
    at: usize,
    out: Dart,
    slot: u32,
    out_first: bool,
) -> Curve {
    #[derive(Clone, Copy)]
    enum Item {
        Old(usize),
        Out,
        Back,
    }

    let emb = surface.embedding();
    let base = at.min(curve.len());
    let mut walk: Vec<Dart> = Vec::with_capacity(curve.len() + 2);
    walk.extend_from_slice(&curve.walk()[..base]);
    walk.push(out);
    walk.push(out.reversed());
    walk.extend_from_slice(&curve.walk()[base..]);

    let mut lists = curve.strand_lists();
    let mut list: Vec<Item> = lists
        .remove(&out.edge)
        .unwrap_or_default()
        .into_iter()
        .map(Item::Old)
        .collect();
    let pair = if out_first {
        [Item::Out, Item::Back]
    } else {
        [Item::Back, Item::Out]
    };
    list.splice(slot as usize..slot as usize, pair);

    let shift = |i: usize| if i < base { i } else { i + 2 };
    let mut ranks = vec![0u32; walk.len()];
    for (i, d) in curve.walk().iter().enumerate() {
        if d.edge != out.edge {
            ranks[shift(i)] = curve.ranks()[i];
        }
    }
    for (rank, item) in list.iter().enumerate() {
        let pos = match *item {
            Item::Old(i) => shift(i),
            Item::Out => base,
            Item::Back => base + 1,
        };
        ranks[pos] = rank as u32;
    }

    if curve.is_closed() {
        Curve::closed_curve(emb, walk, ranks).expect("spur keeps the walk closed")
    } else {
        Curve::open_curve(emb, curve.start(), walk, ranks).expect("spur keeps the walk anchored")
    }
}

fn apply_spike<W: Scalar>(
    surface: &Surface<W>,
    curve: &Curve,
    at: usize,
    edge: EId,
    dir: Option<Dir>,
    slot: Option<u32>,
    out_first: Option<bool>,
) -> Result<Applied, MoveError> {
    let candidates = spike_candidates(surface, curve, at, edge, dir, slot, out_first)?;
    let chosen = candidates
        .iter()
        .copied()
        .find(|&(d, s, of)| {
            let cand = insert_spur(surface, curve, at, d, s, of);
            regions::is_simple(surface, &cand).unwrap_or(false)
        })
        .unwrap_or(candidates[0]);
    let (d, s, of) = chosen;
    let mut result = insert_spur(surface, curve, at, d, s, of);
    let offset = result.canonicalize(surface.embedding());
    Ok(Applied {
        curve: result,
        resolved: Move::Spike {
            at,
            edge,
            dir: Some(d.dir),
            slot: Some(s),
            out_first: Some(of),
        },
        offset,
        inserted_at: at,
        inserted_len: 2,
    })
}

fn apply_unspike<W: Scalar>(
    surface: &Surface<W>,
    curve: &Curve,
    at: usize,
) -> Result<Applied, MoveError> {
    let emb = surface.embedding();
    let l = curve.len();
    let mut work = curve.clone();
    let base = if curve.is_closed() {
        if l < 2 || at >= l {
            return Err(MoveError::PositionOutOfRange { at });
        }
        work.rotate(emb, at);
        0
    } else {
        if at + 1 >= l {
            return Err(MoveError::PositionOutOfRange { at });
        }
        at
    };
    if work.walk()[base + 1] != work.walk()[base].reversed() {
        return Err(MoveError::NotASpur { at });
    }
    let (walk, ranks) = splice(&work, base, 2, &[]);
    let (result, offset) = rebuild(surface, &work, walk, ranks);
    Ok(Applied {
        curve: result,
        resolved: Move::Unspike { at },
        offset,
        inserted_at: base,
        inserted_len: 0,
    })
}

/// Apply one move to a canonical curve, returning the canonical result and
/// the realization actually used.
pub fn apply_move_traced<W: Scalar>(
    surface: &Surface<W>,
    curve: &Curve,
    mv: Move,
) -> Result<Applied, MoveError> {
    match mv {
        Move::Flip {
            face,
            at,
            len,
            face_at,
        } => apply_flip(surface, curve, face, at, len, face_at),
        Move::Spike {
            at,
            edge,
            dir,
            slot,
            out_first,
        } => apply_spike(surface, curve, at, edge, dir, slot, out_first),
        Move::Unspike { at } => apply_unspike(surface, curve, at),
    }
}

pub fn apply_move<W: Scalar>(
    surface: &Surface<W>,
    curve: &Curve,
    mv: Move,
) -> Result<Curve, MoveError> {
    apply_move_traced(surface, curve, mv).map(|a| a.curve)
}
