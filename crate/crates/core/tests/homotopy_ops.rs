//! Level-curve moves, certificate replay, and swept-region bookkeeping on
//! small fixtures.

use std::collections::BTreeSet;

use hh_core::homotopy::{
    apply_move, apply_move_traced, canonical_cycle_unoriented, empty_certificate, is_monotone,
    is_simple, move_bound, swept_faces, verify_certificate, Certificate, Curve, Move, MoveError,
    RegionError, Side, VerifyError,
};
use hh_core::surface::{Dart, EId, Embedding, FId, Surface, VId};
use hh_core::Rat;

use num_rational::BigRational;
use num_traits::FromPrimitive;

fn rat(n: i64) -> Rat {
    BigRational::from_i64(n).unwrap()
}

/// Two vertices joined by edges a, b, c (weights 1, 2, 3), all tails at u.
/// Boundary walks: (u,a,v,b) and (v,a,u,c); the middle face (b against c,
/// perimeter 5) is the only internal one.
fn edge(tail: usize, head: usize, weight: i64) -> hh_core::surface::Edge<Rat> {
    hh_core::surface::Edge {
        tail: VId(tail),
        head: VId(head),
        weight: rat(weight),
    }
}

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

/// One vertex, one loop edge; both faces are boundaries.
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

fn internal_face(surface: &Surface<Rat>) -> FId {
    let mut faces = surface.internal_faces();
    let f = faces.next().unwrap();
    assert!(faces.next().is_none());
    f
}

fn darts(spec: &[(usize, bool)]) -> Vec<Dart> {
    spec.iter()
        .map(|&(e, fwd)| {
            if fwd {
                Dart::fwd(EId(e))
            } else {
                Dart::bwd(EId(e))
            }
        })
        .collect()
}

fn gamma0_curve(surface: &Surface<Rat>) -> Curve {
    let walk = surface.boundary_curve_darts(0);
    let emb = surface.embedding();
    let start = emb.dart_source(walk[0]);
    let mut curve = Curve::hug(emb, true, start, walk, Side::Left).unwrap();
    curve.canonicalize(emb);
    curve
}

#[test]
fn single_flip_carries_theta_across() {
    let surface = theta();
    let emb = surface.embedding();
    let f = internal_face(&surface);
    let curve = gamma0_curve(&surface);
    assert_eq!(curve.walk(), darts(&[(0, true), (1, false)]).as_slice());
    assert_eq!(curve.length(emb), rat(3));

    let flipped = apply_move(
        &surface,
        &curve,
        Move::Flip {
            face: f,
            at: 1,
            len: 1,
            face_at: None,
        },
    )
    .unwrap();
    assert_eq!(flipped.walk(), darts(&[(0, true), (2, false)]).as_slice());
    assert_eq!(flipped.length(emb), rat(4));

    // Both levels together cover the whole flipped face boundary.
    let perimeter = emb.walk_weight(&emb.face(f).darts);
    assert!(curve.length(emb) + flipped.length(emb) >= perimeter);

    assert_eq!(
        canonical_cycle_unoriented(flipped.walk()),
        canonical_cycle_unoriented(&surface.boundary_curve_darts(1)),
    );
}

#[test]
fn flipping_back_restores_the_walk() {
    let surface = theta();
    let f = internal_face(&surface);
    let curve = gamma0_curve(&surface);
    let there = apply_move(
        &surface,
        &curve,
        Move::Flip {
            face: f,
            at: 1,
            len: 1,
            face_at: None,
        },
    )
    .unwrap();
    // The return flip meets the face walk in its own orientation.
    let back = apply_move(
        &surface,
        &there,
        Move::Flip {
            face: f,
            at: 1,
            len: 1,
            face_at: None,
        },
    )
    .unwrap();
    assert_eq!(back.walk(), curve.walk());
}

#[test]
fn spike_then_unspike_is_identity() {
    let surface = theta();
    let point = Curve::constant(VId(0), true);

    let spiked = apply_move(
        &surface,
        &point,
        Move::Spike {
            at: 0,
            edge: EId(0),
            dir: None,
            slot: None,
            out_first: None,
        },
    )
    .unwrap();
    assert_eq!(spiked.walk(), darts(&[(0, true), (0, false)]).as_slice());
    assert_eq!(spiked.length(surface.embedding()), rat(2));

    let back = apply_move(&surface, &spiked, Move::Unspike { at: 0 }).unwrap();
    assert!(back.is_empty());
    assert_eq!(back.start(), VId(0));

    let not_a_spur = apply_move(&surface, &spiked, Move::Spike {
        at: 0,
        edge: EId(1),
        dir: None,
        slot: None,
        out_first: None,
    })
    .and_then(|c| apply_move(&surface, &c, Move::Unspike { at: 1 }));
    assert!(matches!(not_a_spur, Err(MoveError::NotASpur { .. })));
}

#[test]
fn moves_reject_bad_positions() {
    let surface = theta();
    let curve = gamma0_curve(&surface);
    let f = internal_face(&surface);

    let far = apply_move(
        &surface,
        &curve,
        Move::Flip {
            face: f,
            at: 7,
            len: 1,
            face_at: None,
        },
    );
    assert!(matches!(far, Err(MoveError::PositionOutOfRange { at: 7 })));

    let boundary = apply_move(
        &surface,
        &curve,
        Move::Flip {
            face: surface.boundary_faces()[0],
            at: 0,
            len: 1,
            face_at: None,
        },
    );
    assert!(matches!(boundary, Err(MoveError::BoundaryFace { .. })));

    let off_face = apply_move(
        &surface,
        &curve,
        Move::Flip {
            face: f,
            at: 0,
            len: 1,
            face_at: None,
        },
    );
    assert!(matches!(
        off_face,
        Err(MoveError::SubpathNotOnFace { at: 0, .. })
    ));

    let not_incident = apply_move(
        &surface,
        &Curve::constant(VId(0), true),
        Move::Spike {
            at: 0,
            edge: EId(9),
            dir: None,
            slot: None,
            out_first: None,
        },
    );
    assert!(matches!(not_incident, Err(MoveError::EdgeNotIncident { .. })));
}

#[test]
fn one_move_certificate_verifies_at_height_four() {
    let surface = theta();
    let f = internal_face(&surface);
    let certificate = Certificate {
        initial: surface.boundary_curve_darts(0),
        moves: vec![Move::Flip {
            face: f,
            at: 1,
            len: 1,
            face_at: None,
        }],
    };
    let outcome = verify_certificate(&surface, &certificate).unwrap();
    assert_eq!(outcome.height, rat(4));
    assert_eq!(outcome.levels.len(), 2);
    assert!(!outcome.move_bound_exceeded);
    // 3 edges, 1 internal face.
    assert_eq!(outcome.move_bound, 8 * 3 * 2 + 1);
    assert_eq!(move_bound(&surface), 49);

    let report = is_monotone(&surface, &certificate).unwrap();
    assert!(report.monotone);
    assert_eq!(report.flip_order, vec![f]);
    assert_eq!(report.swept[0], BTreeSet::new());
    assert_eq!(report.swept[1], BTreeSet::from([f]));
}

#[test]
fn certificates_must_start_and_end_on_the_boundaries() {
    let surface = theta();
    let f = internal_face(&surface);

    let wrong_start = Certificate {
        initial: darts(&[(0, true), (2, false)]),
        moves: vec![],
    };
    assert_eq!(
        verify_certificate(&surface, &wrong_start).unwrap_err(),
        VerifyError::WrongInitialCurve
    );

    let unfinished = Certificate {
        initial: surface.boundary_curve_darts(0),
        moves: vec![],
    };
    assert_eq!(
        verify_certificate(&surface, &unfinished).unwrap_err(),
        VerifyError::WrongTerminalCurve
    );

    let broken = Certificate {
        initial: surface.boundary_curve_darts(0),
        moves: vec![
            Move::Flip {
                face: f,
                at: 1,
                len: 1,
                face_at: None,
            },
            Move::Unspike { at: 0 },
        ],
    };
    match verify_certificate(&surface, &broken).unwrap_err() {
        VerifyError::InvalidMove { index: 1, source } => {
            assert!(matches!(source, MoveError::NotASpur { .. }))
        }
        other => panic!("expected an invalid move, got {other:?}"),
    }
}

#[test]
fn coinciding_boundaries_accept_the_empty_certificate() {
    let surface = loop_annulus();
    let outcome = verify_certificate(&surface, &empty_certificate(&surface)).unwrap();
    assert_eq!(outcome.height, rat(2));
    assert_eq!(outcome.levels.len(), 1);
}

#[test]
fn swept_region_grows_from_nothing_to_everything() {
    let surface = theta();
    let emb = surface.embedding();
    let f = internal_face(&surface);

    let start = gamma0_curve(&surface);
    assert_eq!(swept_faces(&surface, &start).unwrap(), BTreeSet::new());

    let done = apply_move(
        &surface,
        &start,
        Move::Flip {
            face: f,
            at: 1,
            len: 1,
            face_at: None,
        },
    )
    .unwrap();
    assert_eq!(swept_faces(&surface, &done).unwrap(), BTreeSet::from([f]));

    // A spur across edge a and back bounds no area at all.
    let spur = Curve::closed_curve(emb, darts(&[(0, true), (0, false)]), vec![0, 1]).unwrap();
    assert_eq!(
        swept_faces(&surface, &spur).unwrap_err(),
        RegionError::InessentialLevel
    );

    // The target boundary walk hugged from the far side sweeps everything.
    let walk = surface.boundary_curve_darts(1);
    let s = emb.dart_source(walk[0]);
    let target = Curve::hug(emb, true, s, walk, Side::Right).unwrap();
    assert_eq!(swept_faces(&surface, &target).unwrap(), BTreeSet::from([f]));
}

#[test]
fn parallel_strands_only_cross_when_forced() {
    let surface = theta();
    let emb = surface.embedding();

    // Three strands on edge a: a spur nested inside the through strand.
    // Ranks must climb monotonically from the turn outward.
    let nested = Curve::closed_curve(
        emb,
        darts(&[(0, true), (0, false), (0, true), (1, false)]),
        vec![0, 1, 2, 0],
    )
    .unwrap();
    assert!(is_simple(&surface, &nested).unwrap());

    let mirrored = Curve::closed_curve(
        emb,
        darts(&[(0, true), (0, false), (0, true), (1, false)]),
        vec![2, 1, 0, 0],
    )
    .unwrap();
    assert!(is_simple(&surface, &mirrored).unwrap());

    // Any other placement makes a chord cross the through strand.
    let crossed = Curve::closed_curve(
        emb,
        darts(&[(0, true), (0, false), (0, true), (1, false)]),
        vec![0, 2, 1, 0],
    )
    .unwrap();
    assert!(!is_simple(&surface, &crossed).unwrap());

    let pinched = Curve::closed_curve(
        emb,
        darts(&[(0, true), (0, false), (0, true), (1, false)]),
        vec![1, 2, 0, 0],
    )
    .unwrap();
    assert!(!is_simple(&surface, &pinched).unwrap());
}

#[test]
fn spike_realization_prefers_embedded_results() {
    let surface = theta();
    let curve = gamma0_curve(&surface);
    let applied = apply_move_traced(
        &surface,
        &curve,
        Move::Spike {
            at: 0,
            edge: EId(0),
            dir: None,
            slot: None,
            out_first: None,
        },
    )
    .unwrap();
    match applied.resolved {
        Move::Spike {
            dir: Some(_),
            slot: Some(_),
            out_first: Some(_),
            ..
        } => {}
        other => panic!("hints not resolved: {other:?}"),
    }
    assert!(is_simple(&surface, &applied.curve).unwrap());
    // Replaying the resolved move lands on the identical realization.
    let replay = apply_move(&surface, &curve, applied.resolved).unwrap();
    assert_eq!(replay, applied.curve);
}
