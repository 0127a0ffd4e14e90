//! Level curves: walks in the surface graph together with the transversal
//! order of repeated edge traversals.
//!
//! A curve that runs along an edge several times occupies several parallel
//! strands in a thin neighborhood of that edge. We record, for every
//! traversal, its rank across the edge: rank 0 is the leftmost strand when
//! looking along the edge from tail to head, and ranks stay attached to the
//! traversal when the walk is rotated or reversed. The walk alone cannot
//! decide whether the drawn curve is embedded; the ranks can.

use std::collections::HashMap;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::surface::{Dart, Dir, EId, Embedding, VId};

/// Side of an edge relative to the direction a strand travels it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// The transversal frame is fixed per edge (rank 0 left of forward), so
    /// a backward traversal sees it mirrored.
    pub(crate) fn is_low_rank(self, dir: Dir) -> bool {
        matches!(
            (self, dir),
            (Side::Left, Dir::Fwd) | (Side::Right, Dir::Bwd)
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("walk breaks at step {at}: the dart does not start where the previous one ends")]
    NotAdjacent { at: usize },
    #[error("closed walk does not return to its start")]
    NotClosed,
    #[error("declared start does not match the first dart")]
    StartMismatch,
    #[error("strand ranks on edge {edge:?} are not a permutation")]
    BadRanks { edge: EId },
    #[error("rank list length differs from walk length")]
    RankCountMismatch,
}

/// A level curve: a closed walk (annulus levels) or an endpoint-anchored
/// walk (disk levels), with strand ranks per traversal.
///
/// Closed curves are compared up to cyclic rotation; [`Curve::canonicalize`]
/// rotates the representation to the lexicographically minimal one, and move
/// positions in certificates always refer to that canonical rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    closed: bool,
    start: VId,
    walk: Vec<Dart>,
    ranks: Vec<u32>,
}

/// Canonical comparison key of a curve. `point` is populated only for
/// zero-length walks, where the walk itself cannot name the base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveKey {
    closed: bool,
    point: Option<VId>,
    seq: Vec<(u32, u32)>,
}

fn validate_ranks(walk: &[Dart], ranks: &[u32]) -> Result<(), CurveError> {
    if walk.len() != ranks.len() {
        return Err(CurveError::RankCountMismatch);
    }
    let mut per_edge: HashMap<EId, Vec<u32>> = HashMap::new();
    for (dart, &rank) in walk.iter().zip(ranks) {
        per_edge.entry(dart.edge).or_default().push(rank);
    }
    for (edge, mut rs) in per_edge {
        rs.sort_unstable();
        if rs.iter().enumerate().any(|(i, &r)| r != i as u32) {
            return Err(CurveError::BadRanks { edge });
        }
    }
    Ok(())
}

fn validate_walk<W: Scalar>(
    embedding: &Embedding<W>,
    start: VId,
    walk: &[Dart],
    closed: bool,
) -> Result<(), CurveError> {
    if let Some(first) = walk.first() {
        if embedding.dart_source(*first) != start {
            return Err(CurveError::StartMismatch);
        }
    }
    for (i, pair) in walk.windows(2).enumerate() {
        if embedding.dart_target(pair[0]) != embedding.dart_source(pair[1]) {
            return Err(CurveError::NotAdjacent { at: i + 1 });
        }
    }
    if closed {
        if let Some(last) = walk.last() {
            if embedding.dart_target(*last) != start {
                return Err(CurveError::NotClosed);
            }
        }
    }
    Ok(())
}

impl Curve {
    pub fn closed_curve<W: Scalar>(
        embedding: &Embedding<W>,
        walk: Vec<Dart>,
        ranks: Vec<u32>,
    ) -> Result<Curve, CurveError> {
        let start = walk
            .first()
            .map(|d| embedding.dart_source(*d))
            .unwrap_or(VId(0));
        validate_walk(embedding, start, &walk, true)?;
        validate_ranks(&walk, &ranks)?;
        Ok(Curve {
            closed: true,
            start,
            walk,
            ranks,
        })
    }

    pub fn open_curve<W: Scalar>(
        embedding: &Embedding<W>,
        start: VId,
        walk: Vec<Dart>,
        ranks: Vec<u32>,
    ) -> Result<Curve, CurveError> {
        validate_walk(embedding, start, &walk, false)?;
        validate_ranks(&walk, &ranks)?;
        Ok(Curve {
            closed: false,
            start,
            walk,
            ranks,
        })
    }

    /// The zero-length curve sitting at a single vertex.
    pub fn constant(start: VId, closed: bool) -> Curve {
        Curve {
            closed,
            start,
            walk: Vec::new(),
            ranks: Vec::new(),
        }
    }

    /// Realize a walk so that every strand hugs the given side of its
    /// traversal: each traversal is inserted at the extreme rank on that
    /// side, in walk order. Boundary curves are realized this way, with the
    /// boundary face on the hugged side.
    pub fn hug<W: Scalar>(
        embedding: &Embedding<W>,
        closed: bool,
        start: VId,
        walk: Vec<Dart>,
        side: Side,
    ) -> Result<Curve, CurveError> {
        validate_walk(embedding, start, &walk, closed)?;
        let mut order: HashMap<EId, std::collections::VecDeque<usize>> = HashMap::new();
        for (i, dart) in walk.iter().enumerate() {
            let list = order.entry(dart.edge).or_default();
            if side.is_low_rank(dart.dir) {
                list.push_front(i);
            } else {
                list.push_back(i);
            }
        }
        let mut ranks = vec![0u32; walk.len()];
        for list in order.values() {
            for (rank, &i) in list.iter().enumerate() {
                ranks[i] = rank as u32;
            }
        }
        let start = walk
            .first()
            .map(|d| embedding.dart_source(*d))
            .unwrap_or(start);
        Ok(Curve {
            closed,
            start,
            walk,
            ranks,
        })
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start(&self) -> VId {
        self.start
    }

    pub fn walk(&self) -> &[Dart] {
        &self.walk
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Number of vertex positions: one per dart for closed walks, one more
    /// than the dart count for anchored walks, and a single one for
    /// zero-length curves.
    pub fn num_vertex_positions(&self) -> usize {
        if self.walk.is_empty() {
            1
        } else if self.closed {
            self.walk.len()
        } else {
            self.walk.len() + 1
        }
    }

    pub fn vertex_at<W: Scalar>(&self, embedding: &Embedding<W>, pos: usize) -> VId {
        if pos == 0 {
            self.start
        } else {
            embedding.dart_target(self.walk[pos - 1])
        }
    }

    pub fn length<W: Scalar>(&self, embedding: &Embedding<W>) -> W {
        embedding.walk_weight(&self.walk)
    }

    /// Traversal indices per edge, ordered by rank.
    pub(crate) fn strand_lists(&self) -> HashMap<EId, Vec<usize>> {
        let mut lists: HashMap<EId, Vec<usize>> = HashMap::new();
        for (i, dart) in self.walk.iter().enumerate() {
            let list = lists.entry(dart.edge).or_default();
            let at = list
                .iter()
                .position(|&j| self.ranks[j] > self.ranks[i])
                .unwrap_or(list.len());
            list.insert(at, i);
        }
        lists
    }

    pub(crate) fn strands_on(&self, edge: EId) -> usize {
        self.walk.iter().filter(|d| d.edge == edge).count()
    }

    /// Rotate a closed walk left by `offset` positions.
    pub(crate) fn rotate<W: Scalar>(&mut self, embedding: &Embedding<W>, offset: usize) {
        assert!(self.closed, "only closed curves rotate");
        if self.walk.is_empty() {
            return;
        }
        let offset = offset % self.walk.len();
        if offset == 0 {
            return;
        }
        self.walk.rotate_left(offset);
        self.ranks.rotate_left(offset);
        self.start = embedding.dart_source(self.walk[0]);
    }

    /// Rotate to the canonical representation, returning the offset that was
    /// applied. A former position `p` now sits at `(p + len - offset) % len`.
    pub fn canonicalize<W: Scalar>(&mut self, embedding: &Embedding<W>) -> usize {
        let offset = self.canonical_offset();
        if offset != 0 {
            self.rotate(embedding, offset);
        }
        offset
    }

    /// Offset of the lexicographically minimal rotation (smallest offset on
    /// ties). Zero for open or empty curves.
    ///
    /// Ranks do not participate: curves with the same walk share a frame, so
    /// move positions stay valid across realizations.
    pub fn canonical_offset(&self) -> usize {
        if !self.closed || self.walk.len() < 2 {
            return 0;
        }
        let seq: Vec<u32> = self.walk.iter().map(|d| d.index() as u32).collect();
        let n = seq.len();
        let mut best = 0usize;
        for cand in 1..n {
            for i in 0..n {
                let a = &seq[(cand + i) % n];
                let b = &seq[(best + i) % n];
                match a.cmp(b) {
                    std::cmp::Ordering::Less => {
                        best = cand;
                        break;
                    }
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        best
    }

    pub fn key(&self) -> CurveKey {
        let offset = self.canonical_offset();
        let n = self.walk.len();
        let seq = (0..n)
            .map(|i| {
                let j = (offset + i) % n;
                (self.walk[j].index() as u32, self.ranks[j])
            })
            .collect();
        CurveKey {
            closed: self.closed,
            point: if self.walk.is_empty() {
                Some(self.start)
            } else {
                None
            },
            seq,
        }
    }

    /// Key ignoring the traversal direction; meaningful for closed curves,
    /// where reversal yields the same drawn curve.
    pub fn unoriented_key(&self) -> CurveKey {
        if !self.closed {
            return self.key();
        }
        let forward = self.key();
        let backward = self.reversed_closed().key();
        forward.min(backward)
    }

    fn reversed_closed(&self) -> Curve {
        assert!(self.closed);
        let walk: Vec<Dart> = self.walk.iter().rev().map(|d| d.reversed()).collect();
        let ranks: Vec<u32> = self.ranks.iter().rev().copied().collect();
        Curve {
            closed: true,
            start: self.start,
            walk,
            ranks,
        }
    }

    pub fn reversed<W: Scalar>(&self, embedding: &Embedding<W>) -> Curve {
        if self.closed {
            let mut c = self.reversed_closed();
            if let Some(first) = c.walk.first() {
                c.start = embedding.dart_source(*first);
            }
            c
        } else {
            let start = self
                .walk
                .last()
                .map(|d| embedding.dart_target(*d))
                .unwrap_or(self.start);
            Curve {
                closed: false,
                start,
                walk: self.walk.iter().rev().map(|d| d.reversed()).collect(),
                ranks: self.ranks.iter().rev().copied().collect(),
            }
        }
    }
}

/// Canonical rotation of a closed dart walk, with the offset it was found
/// at. Compares walks regardless of where the seam sits.
pub fn canonical_cycle(walk: &[Dart]) -> (Vec<Dart>, usize) {
    if walk.len() < 2 {
        return (walk.to_vec(), 0);
    }
    let n = walk.len();
    let mut best = 0usize;
    for cand in 1..n {
        for i in 0..n {
            let a = walk[(cand + i) % n].index();
            let b = walk[(best + i) % n].index();
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    best = cand;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    ((0..n).map(|i| walk[(best + i) % n]).collect(), best)
}

/// Canonical form of a closed dart walk up to rotation and reversal.
pub fn canonical_cycle_unoriented(walk: &[Dart]) -> Vec<Dart> {
    let (forward, _) = canonical_cycle(walk);
    let reversed: Vec<Dart> = walk.iter().rev().map(|d| d.reversed()).collect();
    let (backward, _) = canonical_cycle(&reversed);
    let fk: Vec<usize> = forward.iter().map(|d| d.index()).collect();
    let bk: Vec<usize> = backward.iter().map(|d| d.index()).collect();
    if fk <= bk {
        forward
    } else {
        backward
    }
}
