//! Certificate reduction: wasted spur moves disappear, detours straighten
//! out, and the result is a fixed point that never got taller.

use hh_core::gen::{cylinder_grid, random_annulus, WeightSpec};
use hh_core::homotopy::{
    apply_move_traced, is_monotone, reduce_certificate, verify_certificate, Certificate, Curve,
    Move, ReduceError,
};
use hh_core::surface::{EId, Embedding, FId, Surface, VId};
use hh_core::{solve_exact, Rat, SolverOptions};

use num_rational::BigRational;
use num_traits::FromPrimitive;

fn rat(n: i64) -> Rat {
    BigRational::from_i64(n).unwrap()
}

fn edge(tail: usize, head: usize, weight: i64) -> hh_core::surface::Edge<Rat> {
    hh_core::surface::Edge {
        tail: VId(tail),
        head: VId(head),
        weight: rat(weight),
    }
}

/// Two vertices joined by edges a, b, c (weights 1, 2, 3), all tails at u.
/// One internal face (b against c); the optimal sweep is a single flip of
/// height 4.
fn theta() -> Surface<Rat> {
    use hh_core::surface::End::*;
    let embedding = Embedding::build(
        2,
        vec![edge(0, 1, 1), edge(0, 1, 2), edge(0, 1, 3)],
        vec![
            vec![(EId(0), Tail), (EId(1), Tail), (EId(2), Tail)],
            vec![(EId(2), Head), (EId(1), Head), (EId(0), Head)],
        ],
    )
    .unwrap();
    Surface::annulus(
        embedding,
        [
            &[(VId(0), EId(0)), (VId(1), EId(1))],
            &[(VId(1), EId(0)), (VId(0), EId(2))],
        ],
        vec!["u".into(), "v".into()],
        vec!["a".into(), "b".into(), "c".into()],
    )
    .unwrap()
}

/// One vertex, one loop of weight 2; the two boundaries coincide.
fn loop_annulus() -> Surface<Rat> {
    use hh_core::surface::End::*;
    let embedding = Embedding::build(
        1,
        vec![edge(0, 0, 2)],
        vec![vec![(EId(0), Tail), (EId(0), Head)]],
    )
    .unwrap();
    Surface::annulus(
        embedding,
        [&[(VId(0), EId(0))], &[(VId(0), EId(0))]],
        vec!["u".into()],
        vec!["a".into()],
    )
    .unwrap()
}

fn theta_face(surface: &Surface<Rat>) -> FId {
    let mut faces = surface.internal_faces();
    let f = faces.next().unwrap();
    assert!(faces.next().is_none());
    f
}

fn spike(at: usize, edge: EId) -> Move {
    Move::Spike {
        at,
        edge,
        dir: None,
        slot: None,
        out_first: None,
    }
}

/// Replay a move prefix from the hugged starting boundary.
fn replay(surface: &Surface<Rat>, moves: &[Move]) -> Curve {
    let emb = surface.embedding();
    let walk = surface.boundary_curve_darts(0);
    let start = emb.dart_source(walk[0]);
    let mut curve = Curve::hug(emb, true, start, walk, hh_core::homotopy::Side::Left).unwrap();
    curve.canonicalize(emb);
    for &mv in moves {
        curve = apply_move_traced(surface, &curve, mv)
            .expect("test prefix replays")
            .curve;
    }
    curve
}

/// First flip of `face` on `level` whose result has the given walk.
fn flip_onto(
    surface: &Surface<Rat>,
    level: &Curve,
    face: FId,
    target: &Curve,
) -> Option<Move> {
    let flen = surface.embedding().face(face).darts.len();
    for len in 0..=level.len().min(flen) {
        let positions = if len == 0 {
            level.num_vertex_positions()
        } else {
            level.len()
        };
        for at in 0..positions {
            let mv = Move::Flip {
                face,
                at,
                len,
                face_at: None,
            };
            if let Ok(applied) = apply_move_traced(surface, level, mv) {
                if applied.curve.walk() == target.walk() {
                    return Some(applied.resolved);
                }
            }
        }
    }
    None
}

#[test]
fn a_spike_immediately_retracted_disappears() {
    let surface = loop_annulus();
    let initial = surface.boundary_curve_darts(0);
    let spiked = replay(&surface, &[spike(0, EId(0))]);

    // Find the retraction that lands back on the boundary level.
    let unspike_at = (0..spiked.len())
        .find(|&at| {
            apply_move_traced(&surface, &spiked, Move::Unspike { at })
                .map(|a| a.curve.walk() == initial.as_slice())
                .unwrap_or(false)
        })
        .expect("the fresh spur can be retracted");

    let cert = Certificate {
        initial: initial.clone(),
        moves: vec![spike(0, EId(0)), Move::Unspike { at: unspike_at }],
    };
    let tall = verify_certificate(&surface, &cert).unwrap();
    assert_eq!(tall.height, rat(6));

    let reduced = reduce_certificate(&surface, &cert).unwrap();
    assert!(reduced.moves.is_empty());
    assert_eq!(reduced.initial, initial);
    assert_eq!(verify_certificate(&surface, &reduced).unwrap().height, rat(2));
    assert_eq!(reduce_certificate(&surface, &reduced).unwrap(), reduced);
}

#[test]
fn a_spike_feeding_the_next_flip_is_absorbed() {
    let surface = theta();
    let face = theta_face(&surface);
    let initial = surface.boundary_curve_darts(0);
    let gamma0 = replay(&surface, &[]);
    let direct = Move::Flip {
        face,
        at: 1,
        len: 1,
        face_at: None,
    };
    let goal = replay(&surface, &[direct]);

    // Grow a spur over edge c first, then flip across it onto the same
    // terminal level the direct flip reaches.
    let (spike_mv, consuming_flip) = (0..gamma0.num_vertex_positions())
        .find_map(|at| {
            let applied = apply_move_traced(&surface, &gamma0, spike(at, EId(2))).ok()?;
            let flip = flip_onto(&surface, &applied.curve, face, &goal)?;
            Some((applied.resolved, flip))
        })
        .expect("a spiked route onto the goal level exists");

    let cert = Certificate {
        initial: initial.clone(),
        moves: vec![spike_mv, consuming_flip],
    };
    let tall = verify_certificate(&surface, &cert).unwrap();
    assert!(tall.height > rat(4));
    assert!(is_monotone(&surface, &cert).unwrap().monotone);

    let reduced = reduce_certificate(&surface, &cert).unwrap();
    assert_eq!(reduced.moves.len(), 1);
    assert!(matches!(reduced.moves[0], Move::Flip { face: f, .. } if f == face));
    assert_eq!(verify_certificate(&surface, &reduced).unwrap().height, rat(4));
    assert_eq!(reduce_certificate(&surface, &reduced).unwrap(), reduced);
}

#[test]
fn an_idle_spur_is_delayed_past_the_flip_and_cancelled() {
    let surface = theta();
    let face = theta_face(&surface);
    let initial = surface.boundary_curve_darts(0);

    // Spike edge a (the flip never touches it), flip, then retract the spur.
    let spiked = replay(&surface, &[spike(0, EId(0))]);
    let goal = replay(
        &surface,
        &[Move::Flip {
            face,
            at: 1,
            len: 1,
            face_at: None,
        }],
    );
    // The spur survives the flip, so the mid level is the goal plus one
    // spur; search for it by trying every flip realization.
    let flen = surface.embedding().face(face).darts.len();
    let (flip_mv, mid) = (0..=spiked.len().min(flen))
        .find_map(|len| {
            (0..spiked.len()).find_map(|at| {
                let mv = Move::Flip {
                    face,
                    at,
                    len,
                    face_at: None,
                };
                let applied = apply_move_traced(&surface, &spiked, mv).ok()?;
                let done = (0..applied.curve.len()).any(|u| {
                    apply_move_traced(&surface, &applied.curve, Move::Unspike { at: u })
                        .map(|a| a.curve.walk() == goal.walk())
                        .unwrap_or(false)
                });
                done.then(|| (applied.resolved, applied.curve))
            })
        })
        .expect("the flip applies around the idle spur");
    let unspike_at = (0..mid.len())
        .find(|&at| {
            apply_move_traced(&surface, &mid, Move::Unspike { at })
                .map(|a| a.curve.walk() == goal.walk())
                .unwrap_or(false)
        })
        .expect("the spur is still retractable after the flip");

    let cert = Certificate {
        initial: initial.clone(),
        moves: vec![spike(0, EId(0)), flip_mv, Move::Unspike { at: unspike_at }],
    };
    let tall = verify_certificate(&surface, &cert).unwrap();
    assert!(tall.height >= rat(6));
    assert!(is_monotone(&surface, &cert).unwrap().monotone);

    let reduced = reduce_certificate(&surface, &cert).unwrap();
    assert_eq!(reduced.moves.len(), 1);
    assert!(matches!(reduced.moves[0], Move::Flip { face: f, .. } if f == face));
    assert_eq!(verify_certificate(&surface, &reduced).unwrap().height, rat(4));
}

#[test]
fn a_sweep_that_backtracks_is_rejected() {
    let surface = theta();
    let face = theta_face(&surface);
    let forward = Move::Flip {
        face,
        at: 1,
        len: 1,
        face_at: None,
    };
    // Flip across, flip back, flip across again: verifies, but the swept
    // region shrinks in the middle.
    let cert = Certificate {
        initial: surface.boundary_curve_darts(0),
        moves: vec![forward, forward, forward],
    };
    assert!(verify_certificate(&surface, &cert).is_ok());
    assert!(!is_monotone(&surface, &cert).unwrap().monotone);
    assert_eq!(
        reduce_certificate(&surface, &cert),
        Err(ReduceError::NotMonotone)
    );
}

#[test]
fn reduction_never_grows_and_is_idempotent_on_solved_instances() {
    let mut surfaces = vec![cylinder_grid::<Rat>(2, 2, &WeightSpec::Unit)];
    for seed in 0..8 {
        surfaces.push(random_annulus::<Rat>(
            4,
            10,
            seed,
            &WeightSpec::UniformInt {
                lo: 1,
                hi: 5,
                seed,
            },
        ));
    }
    for surface in &surfaces {
        let sol = solve_exact(&surface, &SolverOptions::default())
            .solution()
            .expect("small instances solve");
        let before = verify_certificate(surface, &sol.certificate).unwrap();

        let reduced = reduce_certificate(surface, &sol.certificate).unwrap();
        let after = verify_certificate(surface, &reduced).unwrap();
        assert!(after.height <= before.height);
        assert!(reduced.moves.len() <= sol.certificate.moves.len());
        assert!(is_monotone(surface, &reduced).unwrap().monotone);
        assert_eq!(reduce_certificate(surface, &reduced).unwrap(), reduced);
    }
}
