//! Optimal solver: best-first search over monotone sweeps.
//!
//! States are walks tagged with the set of faces already swept and a spur
//! phase; transitions are the moves that keep the sweep monotone (every face
//! flips at most once, and between flips spurs follow the reduced shape:
//! first a retraction path, then a growth path). Ranks play no part in the
//! search; the winning move sequence is realized into an embedded certificate
//! afterwards.
//!
//! States are ordered by a certified lower bound on any completion: the
//! bottleneck so far, the far boundary length, and half the perimeter of the
//! widest unswept face (its flip splits the perimeter across two adjacent
//! levels). The bound never decreases along an edge, so the first goal state
//! popped is optimal, and once any terminal is known the whole frontier at or
//! above its height can be discarded.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use crate::homotopy::{
    apply_move_traced, canonical_cycle, canonical_cycle_unoriented, move_bound, Certificate,
    Curve, Move, Side,
};
use crate::scalar::Scalar;
use crate::surface::{Dart, Dir, EId, FId, Surface, SurfaceKind, VId};

use super::bounds::lower_bounds;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Abort after expanding this many states.
    pub max_states: usize,
    /// Move budget per homotopy; 0 means the universal bound.
    pub max_moves: usize,
    /// Between flips, allow no unspike after the first spike.
    pub reduced_phases: bool,
    /// Grow and retract spur paths one step at a time.
    pub path_contiguity: bool,
    /// Largest number of strands one edge may carry.
    pub strand_cap: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_states: 2_000_000,
            max_moves: 0,
            reduced_phases: true,
            path_contiguity: true,
            strand_cap: 10,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub expanded: usize,
    pub pushed: usize,
    pub pruned: usize,
}

#[derive(Debug)]
pub struct Solution<W> {
    pub height: W,
    pub certificate: Certificate,
    pub stats: SolveStats,
}

/// What is still known when the state budget runs out.
#[derive(Debug)]
pub struct Partial<W> {
    pub lower: W,
    pub upper: Option<(W, Certificate)>,
    pub stats: SolveStats,
}

#[derive(Debug)]
pub enum SolveOutcome<W> {
    Solved(Solution<W>),
    CapExceeded(Partial<W>),
}

impl<W> SolveOutcome<W> {
    pub fn solution(self) -> Option<Solution<W>> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::CapExceeded(_) => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum Phase {
    Unspiking,
    Spiking,
}

/// Spur-path cursor: where the current retraction or growth may continue.
/// `usize::MAX` marks a path that ran off the curve end and is finished.
type Tip = Option<usize>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct StateKey {
    walk: Vec<u32>,
    base: u32,
    swept: Vec<u32>,
    phase: Phase,
    tip: Tip,
}

struct Node<W> {
    walk: Vec<Dart>,
    /// Start vertex; only point curves cannot recover it from the walk.
    base: VId,
    swept: BTreeSet<FId>,
    phase: Phase,
    tip: Tip,
    bottleneck: W,
    moves: usize,
    parent: usize,
    via: Option<Move>,
}

impl<W> Node<W> {
    fn key(&self) -> StateKey {
        StateKey {
            walk: self.walk.iter().map(|d| d.index() as u32).collect(),
            base: self.base.0 as u32,
            swept: self.swept.iter().map(|f| f.0 as u32).collect(),
            phase: self.phase,
            tip: self.tip,
        }
    }
}

struct Goal {
    cycle: Vec<Dart>,
    open: Vec<Dart>,
    closed: bool,
    all_faces: usize,
}

impl Goal {
    fn reached(&self, walk: &[Dart], swept: &BTreeSet<FId>) -> bool {
        if swept.len() != self.all_faces {
            return false;
        }
        if self.closed {
            !walk.is_empty() && canonical_cycle_unoriented(walk) == self.cycle
        } else {
            walk == self.open
        }
    }
}

/// One successor edge of the search graph, already in canonical frame.
struct Step {
    via: Move,
    walk: Vec<Dart>,
    base: VId,
    flip: Option<FId>,
    phase: Phase,
    tip: Tip,
}

fn within_strand_cap(walk: &[Dart], cap: usize) -> bool {
    let mut counts: HashMap<EId, usize> = HashMap::new();
    for d in walk {
        let c = counts.entry(d.edge).or_insert(0);
        *c += 1;
        if *c > cap {
            return false;
        }
    }
    true
}

fn spur_positions(walk: &[Dart], closed: bool) -> Vec<usize> {
    let l = walk.len();
    let mut out = Vec::new();
    for pos in 0..l {
        let second = if closed {
            (pos + 1) % l
        } else if pos + 1 < l {
            pos + 1
        } else {
            continue;
        };
        if second != pos && walk[second] == walk[pos].reversed() {
            out.push(pos);
        }
    }
    out
}

fn canon_closed(walk: Vec<Dart>) -> (Vec<Dart>, usize) {
    if walk.is_empty() {
        (walk, 0)
    } else {
        canonical_cycle(&walk)
    }
}

fn successors<W: Scalar>(
    surface: &Surface<W>,
    node: &Node<W>,
    options: &SolverOptions,
) -> Vec<Step> {
    let emb = surface.embedding();
    let walk = &node.walk;
    let l = walk.len();
    let closed = surface.kind() == SurfaceKind::Annulus;
    let vertex_positions = if l == 0 {
        1
    } else if closed {
        l
    } else {
        l + 1
    };
    let vertex_at = |pos: usize| -> VId {
        if l == 0 {
            node.base
        } else if pos < l {
            emb.dart_source(walk[pos])
        } else {
            emb.dart_target(walk[l - 1])
        }
    };
    // A working position `x` of an `n`-dart closed walk canonicalized with
    // rotation `offset` lands at `(x - offset) mod n`.
    let shift = |x: usize, n: usize, offset: usize| -> usize {
        if !closed || n == 0 {
            x.min(n)
        } else {
            (x + n - offset % n) % n
        }
    };
    let mut steps = Vec::new();

    // Flips into unswept faces; the sweep meets every face against its walk
    // orientation, so only reversed matches arise.
    for f in surface.internal_faces() {
        if node.swept.contains(&f) {
            continue;
        }
        let fd = &emb.face(f).darts;
        let flen = fd.len();
        let find_rev = |d: Dart| fd.iter().position(|&x| x == d.reversed());
        let mut emit = |pos: usize, len: usize, o: usize| {
            let inserted = (len..flen).map(|i| fd[(o + i) % flen]);
            let work: Vec<Dart> = if closed {
                inserted
                    .chain((len..l).map(|i| walk[(pos + i) % l]))
                    .collect()
            } else {
                walk[..pos]
                    .iter()
                    .copied()
                    .chain(inserted)
                    .chain(walk[pos + len..].iter().copied())
                    .collect()
            };
            let (next, base) = if closed {
                if work.is_empty() {
                    (work, vertex_at(pos))
                } else {
                    let (canon, _) = canon_closed(work);
                    let base = emb.dart_source(canon[0]);
                    (canon, base)
                }
            } else {
                (work, node.base)
            };
            steps.push(Step {
                via: Move::Flip {
                    face: f,
                    at: pos,
                    len,
                    face_at: Some(o),
                },
                walk: next,
                base,
                flip: Some(f),
                phase: Phase::Unspiking,
                tip: None,
            });
        };
        for pos in 0..l {
            // The match offset is fixed by the last subpath dart.
            for len in 1..=l.min(flen) {
                if !closed && pos + len > l {
                    break;
                }
                let subpath = |i: usize| walk[(pos + i) % l];
                let Some(o) = find_rev(subpath(len - 1)) else {
                    break;
                };
                if (0..len).all(|i| fd[(o + i) % flen] == subpath(len - 1 - i).reversed()) {
                    emit(pos, len, o);
                }
            }
        }
        for pos in 0..vertex_positions {
            let v = vertex_at(pos);
            for (o, d) in fd.iter().enumerate() {
                if emb.dart_source(*d) == v {
                    emit(pos, 0, o);
                }
            }
        }
    }


    // Unspikes.
    if !(options.reduced_phases && node.phase == Phase::Spiking) {
        for pos in spur_positions(walk, closed) {
            if options.path_contiguity && node.phase == Phase::Unspiking {
                if let Some(t) = node.tip {
                    if pos != t {
                        continue;
                    }
                }
            }
            let (next, base, tip) = if closed {
                let work: Vec<Dart> = (2..l).map(|i| walk[(pos + i) % l]).collect();
                let n = work.len();
                if n == 0 {
                    (work, vertex_at(pos), usize::MAX)
                } else {
                    let (canon, offset) = canon_closed(work);
                    let base = emb.dart_source(canon[0]);
                    (canon, base, shift(n - 1, n, offset))
                }
            } else {
                let mut work = walk.clone();
                work.drain(pos..pos + 2);
                let tip = if pos == 0 { usize::MAX } else { pos - 1 };
                (work, node.base, tip)
            };
            steps.push(Step {
                via: Move::Unspike { at: pos },
                walk: next,
                base,
                flip: None,
                phase: Phase::Unspiking,
                tip: Some(tip),
            });
        }
    }

    // Spikes. The drawing details (strand slot, spur order) are left to the
    // realization; the walk does not depend on them.
    let spike_positions: Vec<usize> = match (options.path_contiguity, node.phase, node.tip) {
        (true, Phase::Spiking, Some(t)) if t != usize::MAX => vec![t],
        (true, Phase::Spiking, _) => Vec::new(),
        _ => (0..vertex_positions).collect(),
    };
    let mut strands: HashMap<EId, usize> = HashMap::new();
    for d in walk {
        *strands.entry(d.edge).or_insert(0) += 1;
    }
    for pos in spike_positions {
        let v = vertex_at(pos);
        for &(e, end) in emb.rotation(v) {
            if strands.get(&e).copied().unwrap_or(0) + 2 > options.strand_cap {
                continue;
            }
            let d = Dart::new(e, Dir::from_source_end(end));
            let mut work = Vec::with_capacity(l + 2);
            work.extend_from_slice(&walk[..pos.min(l)]);
            work.push(d);
            work.push(d.reversed());
            work.extend_from_slice(&walk[pos.min(l)..]);
            let (next, base, tip) = if closed {
                let (canon, offset) = canon_closed(work);
                let base = emb.dart_source(canon[0]);
                (canon, base, shift(pos + 1, l + 2, offset))
            } else {
                (work, node.base, pos + 1)
            };
            steps.push(Step {
                via: Move::Spike {
                    at: pos,
                    edge: e,
                    dir: Some(d.dir),
                    slot: None,
                    out_first: None,
                },
                walk: next,
                base,
                flip: None,
                phase: Phase::Spiking,
                tip: Some(tip),
            });
        }
    }

    steps
}

/// Replay a move sequence on the realized starting curve, resolving each
/// move's drawing choices. The searched frames transfer verbatim: search
/// states and realized curves canonicalize walks the same way.
fn realize<W: Scalar>(surface: &Surface<W>, initial: Vec<Dart>, moves: &[Move]) -> Certificate {
    let emb = surface.embedding();
    let start = emb.dart_source(initial[0]);
    let closed = surface.kind() == SurfaceKind::Annulus;
    let mut curve = Curve::hug(emb, closed, start, initial.clone(), Side::Left)
        .expect("boundary walks realize");
    curve.canonicalize(emb);
    let mut resolved = Vec::with_capacity(moves.len());
    for &mv in moves {
        let applied = apply_move_traced(surface, &curve, mv)
            .expect("searched moves stay applicable when realized");
        resolved.push(applied.resolved);
        curve = applied.curve;
    }
    Certificate {
        initial,
        moves: resolved,
    }
}

fn trace<W>(nodes: &[Node<W>], mut at: usize) -> Vec<Move> {
    let mut moves = Vec::new();
    while let Some(mv) = nodes[at].via {
        moves.push(mv);
        at = nodes[at].parent;
    }
    moves.reverse();
    moves
}

/// Compute a minimum-height homotopy between the two boundary curves.
pub fn solve_exact<W: Scalar>(surface: &Surface<W>, options: &SolverOptions) -> SolveOutcome<W> {
    let emb = surface.embedding();
    let initial_walk = surface.boundary_curve_darts(0);
    let goal_walk = surface.boundary_curve_darts(1);
    let closed = surface.kind() == SurfaceKind::Annulus;
    let goal = match surface.kind() {
        SurfaceKind::Annulus => Goal {
            cycle: canonical_cycle_unoriented(&goal_walk),
            open: Vec::new(),
            closed: true,
            all_faces: surface.num_internal_faces(),
        },
        SurfaceKind::Disk => Goal {
            cycle: Vec::new(),
            open: goal_walk.clone(),
            closed: false,
            all_faces: surface.num_internal_faces(),
        },
    };
    let move_budget = if options.max_moves == 0 {
        move_bound(surface)
    } else {
        options.max_moves
    };

    // Completion bound ingredients: the far boundary, and per face half its
    // perimeter, widest first.
    let goal_len = emb.walk_weight(&goal_walk);
    let mut halves: Vec<(W, FId)> = surface
        .internal_faces()
        .map(|f| (emb.walk_weight(&emb.face(f).darts).half(), f))
        .collect();
    halves.sort_by(|a, b| b.cmp(a));
    let completion_bound = |bottleneck: &W, swept: &BTreeSet<FId>| -> W {
        let mut bound = bottleneck.clone().max(goal_len.clone());
        if let Some((h, _)) = halves.iter().find(|(_, f)| !swept.contains(f)) {
            bound = bound.max(h.clone());
        }
        bound
    };

    let start_walk = if closed {
        canon_closed(initial_walk.clone()).0
    } else {
        initial_walk.clone()
    };
    let start_len = emb.walk_weight(&start_walk);

    let mut stats = SolveStats::default();
    if goal.reached(&start_walk, &BTreeSet::new()) {
        return SolveOutcome::Solved(Solution {
            height: start_len,
            certificate: Certificate {
                initial: initial_walk,
                moves: Vec::new(),
            },
            stats,
        });
    }

    let root = Node {
        base: emb.dart_source(start_walk[0]),
        walk: start_walk,
        swept: BTreeSet::new(),
        phase: Phase::Unspiking,
        tip: None,
        bottleneck: start_len,
        moves: 0,
        parent: usize::MAX,
        via: None,
    };

    let mut nodes: Vec<Node<W>> = Vec::new();
    let mut pushed: HashMap<StateKey, (W, usize)> = HashMap::new();
    let mut popped: HashSet<StateKey> = HashSet::new();
    let mut heap: BinaryHeap<Reverse<(W, usize, StateKey, usize)>> = BinaryHeap::new();
    let mut best_terminal: Option<(W, usize)> = None;

    let root_key = root.key();
    let root_bound = completion_bound(&root.bottleneck, &root.swept);
    heap.push(Reverse((root_bound.clone(), 0, root_key.clone(), 0)));
    pushed.insert(root_key, (root_bound, 0));
    nodes.push(root);
    stats.pushed = 1;

    while let Some(Reverse((bound, _, key, idx))) = heap.pop() {
        if !popped.insert(key) {
            continue;
        }

        if goal.reached(&nodes[idx].walk, &nodes[idx].swept) {
            let height = nodes[idx].bottleneck.clone();
            let certificate = realize(surface, initial_walk, &trace(&nodes, idx));
            return SolveOutcome::Solved(Solution {
                height,
                certificate,
                stats,
            });
        }

        // Nothing on the frontier undercuts the best homotopy found.
        if let Some((height, at)) = &best_terminal {
            if bound >= *height {
                let height = height.clone();
                let certificate = realize(surface, initial_walk, &trace(&nodes, *at));
                return SolveOutcome::Solved(Solution {
                    height,
                    certificate,
                    stats,
                });
            }
        }

        if stats.expanded >= options.max_states {
            let lower = lower_bounds(surface).lower.max(bound);
            let upper = best_terminal
                .map(|(h, at)| (h, realize(surface, initial_walk.clone(), &trace(&nodes, at))));
            return SolveOutcome::CapExceeded(Partial {
                lower,
                upper,
                stats,
            });
        }
        stats.expanded += 1;

        if nodes[idx].moves >= move_budget {
            continue;
        }

        let parent_bottleneck = nodes[idx].bottleneck.clone();
        let parent_moves = nodes[idx].moves;
        for step in successors(surface, &nodes[idx], options) {
            if step.flip.is_some() && !within_strand_cap(&step.walk, options.strand_cap) {
                stats.pruned += 1;
                continue;
            }
            let mut swept = nodes[idx].swept.clone();
            if let Some(f) = step.flip {
                swept.insert(f);
            }
            let length = emb.walk_weight(&step.walk);
            let child = Node {
                walk: step.walk,
                base: step.base,
                swept,
                phase: step.phase,
                tip: step.tip,
                bottleneck: parent_bottleneck.clone().max(length),
                moves: parent_moves + 1,
                parent: idx,
                via: Some(step.via),
            };
            let child_idx = nodes.len();
            if goal.reached(&child.walk, &child.swept) {
                let better = match &best_terminal {
                    Some((h, _)) => child.bottleneck < *h,
                    None => true,
                };
                if !better {
                    stats.pruned += 1;
                    continue;
                }
                best_terminal = Some((child.bottleneck.clone(), child_idx));
                let bound = child.bottleneck.clone();
                heap.push(Reverse((bound, child.moves, child.key(), child_idx)));
                nodes.push(child);
                stats.pushed += 1;
                continue;
            }
            let bound = completion_bound(&child.bottleneck, &child.swept);
            if let Some((h, _)) = &best_terminal {
                if bound >= *h {
                    stats.pruned += 1;
                    continue;
                }
            }
            let key = child.key();
            if popped.contains(&key) {
                stats.pruned += 1;
                continue;
            }
            if let Some((b, m)) = pushed.get(&key) {
                if (b, *m) <= (&bound, child.moves) {
                    stats.pruned += 1;
                    continue;
                }
            }
            pushed.insert(key.clone(), (bound.clone(), child.moves));
            heap.push(Reverse((bound, child.moves, key, child_idx)));
            nodes.push(child);
            stats.pushed += 1;
        }
    }

    // Search space exhausted under the caps without meeting the goal.
    let upper = best_terminal
        .map(|(h, at)| (h, realize(surface, initial_walk.clone(), &trace(&nodes, at))));
    SolveOutcome::CapExceeded(Partial {
        lower: lower_bounds(surface).lower,
        upper,
        stats,
    })
}
