//! Leash distance between two boundary arcs of a disk.
//!
//! The disk boundary splits into four arcs: the start and end positions of
//! the leash, and the two tracks its endpoints slide along. Joining every
//! track vertex to a fresh apex by edges too heavy to use more than twice
//! turns sliding leashes into ordinary level curves of a pinched annulus:
//! each level crosses the apex exactly once, so heights transfer back after
//! subtracting the two apex edges it carries.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::homotopy::verify::{verify_certificate, Certificate};
use crate::scalar::Scalar;
use crate::solver::{solve_exact, SolveOutcome, SolverOptions};
use crate::surface::{Dart, EId, Edge, Embedding, End, Surface, SurfaceError, VId};

use super::fresh_name;

#[derive(Debug, Error)]
pub enum FrechetError {
    #[error("the start and end curves need at least one edge each")]
    CurveEmpty,
    #[error("an arc's darts do not chain end to end")]
    ArcBroken,
    #[error("arc endpoints do not meet at four corners")]
    CornersDontChain,
    #[error("the endpoint tracks pass through vertex {vertex:?} more than once")]
    TracksOverlap { vertex: VId },
    #[error("the four arcs do not trace the boundary of one face")]
    NotTheBoundary,
    #[error("instance assembly failed: {0}")]
    Surface(#[from] SurfaceError),
    #[error("search budget exceeded on the pinched annulus")]
    BudgetExceeded,
}

/// A disk with its boundary split into four arcs: `gamma0` (p0 to q0) and
/// `gamma1` (p1 to q1) are the leash's start and end, `p` (p0 to p1) and
/// `q` (q0 to q1) the tracks the leash endpoints slide along.
#[derive(Clone, Debug)]
pub struct FrechetInstance<W> {
    surface: Surface<W>,
    gamma0: Vec<Dart>,
    gamma1: Vec<Dart>,
    p: Vec<Dart>,
    q: Vec<Dart>,
    corners: [VId; 4],
}

impl<W: Scalar> FrechetInstance<W> {
    /// Validate the four arcs against the embedding. `p` and `q` may be
    /// empty (a track pinched to a point); the curves may not. The arcs,
    /// concatenated as gamma0, q, reverse(gamma1), reverse(p), must trace
    /// the boundary of a single face in one of the two orientations.
    pub fn new(
        embedding: Embedding<W>,
        gamma0: Vec<Dart>,
        gamma1: Vec<Dart>,
        p: Vec<Dart>,
        q: Vec<Dart>,
        vertex_names: Vec<String>,
        edge_names: Vec<String>,
    ) -> Result<FrechetInstance<W>, FrechetError> {
        if gamma0.is_empty() || gamma1.is_empty() {
            return Err(FrechetError::CurveEmpty);
        }
        for arc in [&gamma0, &gamma1, &p, &q] {
            for pair in arc.windows(2) {
                if embedding.dart_target(pair[0]) != embedding.dart_source(pair[1]) {
                    return Err(FrechetError::ArcBroken);
                }
            }
        }
        let p0 = embedding.dart_source(gamma0[0]);
        let q0 = embedding.dart_target(*gamma0.last().unwrap());
        let p1 = embedding.dart_source(gamma1[0]);
        let q1 = embedding.dart_target(*gamma1.last().unwrap());
        if p0 == q0 || p1 == q1 {
            return Err(FrechetError::CornersDontChain);
        }
        let chains = |arc: &[Dart], from: VId, to: VId| match arc {
            [] => from == to,
            [first, .., last] => {
                embedding.dart_source(*first) == from && embedding.dart_target(*last) == to
            }
            [only] => {
                embedding.dart_source(*only) == from && embedding.dart_target(*only) == to
            }
        };
        if !chains(&p, p0, p1) || !chains(&q, q0, q1) {
            return Err(FrechetError::CornersDontChain);
        }

        let reversed =
            |arc: &[Dart]| -> Vec<Dart> { arc.iter().rev().map(|d| d.reversed()).collect() };
        let cycle: Vec<Dart> = gamma0
            .iter()
            .copied()
            .chain(q.iter().copied())
            .chain(reversed(&gamma1))
            .chain(reversed(&p))
            .collect();

        // Every track vertex gets an apex edge later, so it must appear on
        // the boundary cycle exactly once.
        for v in track_vertices(&embedding, &p, p0).chain(track_vertices(&embedding, &q, q0)) {
            let hits = cycle
                .iter()
                .filter(|d| embedding.dart_source(**d) == v)
                .count();
            if hits != 1 {
                return Err(FrechetError::TracksOverlap { vertex: v });
            }
        }

        let traces = |walk: &[Dart]| {
            let face = embedding.face_left_of(walk[0]);
            cyclic_eq(&embedding.face(face).darts, walk)
        };
        let pairs = |walks: &[&[Dart]]| -> Vec<(VId, EId)> {
            walks
                .iter()
                .flat_map(|w| w.iter())
                .map(|d| (embedding.dart_source(*d), d.edge))
                .collect()
        };
        let backward: Vec<Dart> = reversed(&cycle);
        let (arc0, arc1) = if traces(&cycle) {
            (
                pairs(&[&gamma0]),
                pairs(&[&q, &reversed(&gamma1), &reversed(&p)]),
            )
        } else if traces(&backward) {
            (
                pairs(&[&p, &gamma1, &reversed(&q)]),
                pairs(&[&reversed(&gamma0)]),
            )
        } else {
            return Err(FrechetError::NotTheBoundary);
        };
        let surface = Surface::disk(embedding, [&arc0, &arc1], [p0, q0], vertex_names, edge_names)?;

        Ok(FrechetInstance {
            surface,
            gamma0,
            gamma1,
            p,
            q,
            corners: [p0, q0, p1, q1],
        })
    }

    pub fn surface(&self) -> &Surface<W> {
        &self.surface
    }

    pub fn gamma0(&self) -> &[Dart] {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &[Dart] {
        &self.gamma1
    }

    pub fn p(&self) -> &[Dart] {
        &self.p
    }

    pub fn q(&self) -> &[Dart] {
        &self.q
    }

    /// `[p0, q0, p1, q1]`.
    pub fn corners(&self) -> [VId; 4] {
        self.corners
    }
}

/// Vertices along a track, endpoints included; a pinched track is just its
/// anchor.
fn track_vertices<'a, W: Scalar>(
    embedding: &'a Embedding<W>,
    arc: &'a [Dart],
    anchor: VId,
) -> impl Iterator<Item = VId> + 'a {
    let mut tail = arc.last().map(|d| embedding.dart_target(*d));
    if arc.is_empty() {
        tail = Some(anchor);
    }
    arc.iter()
        .map(|d| embedding.dart_source(*d))
        .chain(tail)
}

fn cyclic_eq(a: &[Dart], b: &[Dart]) -> bool {
    let l = a.len();
    l == b.len() && (0..l).any(|r| (0..l).all(|j| a[(j + r) % l] == b[j]))
}

/// The pinched annulus a leash instance solves on.
#[derive(Clone, Debug)]
pub struct FrechetAugmentation<W> {
    pub apex: VId,
    /// Weight of every apex edge: one more than the disk's total weight.
    pub k: W,
    /// Apex edge ids, one per track vertex.
    pub added: Vec<EId>,
    pub surface: Surface<W>,
}

/// Close both curves through a heavy apex joined to every track vertex.
///
/// The apex edges weigh one more than the whole disk, so no level of an
/// optimal sweep can afford more than two of them, and at least two are
/// needed to cross between the tracks; heights rise by exactly twice the
/// apex weight.
pub fn frechet_to_hh<W: Scalar>(fi: &FrechetInstance<W>) -> FrechetAugmentation<W> {
    let embedding = fi.surface().embedding();
    let k = embedding
        .edges()
        .iter()
        .fold(W::one(), |acc, e| acc + e.weight.clone());
    let apex = VId(embedding.num_vertices());
    let [p0, q0, _, _] = fi.corners();

    let p_list: Vec<VId> = track_vertices(embedding, fi.p(), p0).collect();
    let q_list: Vec<VId> = track_vertices(embedding, fi.q(), q0).collect();
    let mut spoke_of: BTreeMap<VId, EId> = BTreeMap::new();
    let mut edges = embedding.edges().to_vec();
    let mut added = Vec::new();
    for &x in p_list.iter().chain(&q_list) {
        let id = EId(edges.len());
        edges.push(Edge {
            tail: apex,
            head: x,
            weight: k.clone(),
        });
        spoke_of.insert(x, id);
        added.push(id);
    }

    // Around the apex the spokes follow the boundary cycle: p0, the q track,
    // then the p track walked backwards.
    let mut around: Vec<VId> = vec![p0];
    around.extend(&q_list);
    around.extend(p_list.iter().rev().take(p_list.len() - 1));

    // Each track vertex hosts its spoke inside the boundary face's corner,
    // right after the slot its outgoing boundary dart leaves through.
    let boundary = fi.surface().boundary_faces()[0];
    let trace = &embedding.face(boundary).darts;
    let mut rotations: Vec<Vec<(EId, End)>> =
        (0..embedding.num_vertices()).map(|v| embedding.rotation(VId(v)).to_vec()).collect();
    for (&x, &spoke) in &spoke_of {
        let out = trace
            .iter()
            .find(|d| embedding.dart_source(**d) == x)
            .expect("track vertices lie on the boundary");
        let (_, slot) = embedding.end_position(out.edge, out.dir.source_end());
        rotations[x.0].insert(slot + 1, (spoke, End::Head));
    }

    let mut vertex_names = fi.surface().vertex_names().to_vec();
    vertex_names.push(fresh_name("apex", &vertex_names));
    let mut edge_names = fi.surface().edge_names().to_vec();
    for i in 0..added.len() {
        edge_names.push(fresh_name(&format!("k{i}"), &edge_names));
    }

    let close = |walk: &[Dart], last: VId, first: VId| -> Vec<(VId, EId)> {
        let mut pairs: Vec<(VId, EId)> = walk
            .iter()
            .map(|d| (embedding.dart_source(*d), d.edge))
            .collect();
        pairs.push((last, spoke_of[&last]));
        pairs.push((apex, spoke_of[&first]));
        pairs
    };
    let [_, _, p1, q1] = fi.corners();
    let walk0 = close(fi.gamma0(), q0, p0);
    let walk1 = close(fi.gamma1(), q1, p1);

    for flip in [false, true] {
        let mut spin: Vec<(EId, End)> = around.iter().map(|x| (spoke_of[x], End::Tail)).collect();
        if flip {
            spin.reverse();
        }
        let mut rotations = rotations.clone();
        rotations.push(spin);
        let Ok(built) = Embedding::build(apex.0 + 1, edges.clone(), rotations) else {
            continue;
        };
        if let Ok(surface) = Surface::annulus(
            built,
            [&walk0, &walk1],
            vertex_names.clone(),
            edge_names.clone(),
        ) {
            return FrechetAugmentation {
                apex,
                k,
                added,
                surface,
            };
        }
    }
    panic!("the pinched annulus embeds for one apex orientation");
}

/// A solved leash instance.
#[derive(Clone, Debug)]
pub struct FrechetSolution<W> {
    /// Leash height: the pinched-annulus optimum minus two apex edges.
    pub height: W,
    pub augmentation: FrechetAugmentation<W>,
    /// Optimal certificate on the augmented annulus.
    pub certificate: Certificate,
    /// The certificate's levels with their apex excursion removed: open
    /// leash walks on the disk, one per level.
    pub leashes: Vec<Vec<Dart>>,
}

/// Minimal leash height between the two curves, with the witness sweep.
pub fn solve_frechet<W: Scalar>(
    fi: &FrechetInstance<W>,
    options: &SolverOptions,
) -> Result<FrechetSolution<W>, FrechetError> {
    let augmentation = frechet_to_hh(fi);
    let solution = match solve_exact(&augmentation.surface, options) {
        SolveOutcome::Solved(solution) => solution,
        SolveOutcome::CapExceeded(_) => return Err(FrechetError::BudgetExceeded),
    };
    let replay = verify_certificate(&augmentation.surface, &solution.certificate)
        .expect("solver certificates replay");
    let leashes: Vec<Vec<Dart>> = replay
        .levels
        .iter()
        .map(|level| leash_of(&augmentation, level.walk()))
        .collect();
    let height = replay.height - augmentation.k.clone() - augmentation.k.clone();
    Ok(FrechetSolution {
        height,
        augmentation,
        certificate: solution.certificate,
        leashes,
    })
}

/// Strip a level's apex excursion, returning the open leash between the
/// tracks. Panics if the level does not cross the apex exactly once; optimal
/// sweeps always do, since a second crossing costs two more apex edges.
pub(crate) fn leash_of<W: Scalar>(augmentation: &FrechetAugmentation<W>, walk: &[Dart]) -> Vec<Dart> {
    let emb = augmentation.surface.embedding();
    let hits: Vec<usize> = walk
        .iter()
        .enumerate()
        .filter(|(_, d)| augmentation.added.contains(&d.edge))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(hits.len(), 2, "levels carry exactly two apex edges");
    let (i, j) = (hits[0], hits[1]);
    if j == i + 1 {
        assert_eq!(emb.dart_target(walk[i]), augmentation.apex);
        walk[j + 1..].iter().chain(&walk[..i]).copied().collect()
    } else {
        assert!(i == 0 && j + 1 == walk.len(), "apex edges are consecutive");
        assert_eq!(emb.dart_target(walk[j]), augmentation.apex);
        walk[1..j].to_vec()
    }
}
