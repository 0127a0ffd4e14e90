//! Retracting a sweep through a taut ring: boundary rings are identities,
//! interior rings become a level of the rewritten sweep without raising its
//! height, and slack or revisiting rings are refused.

use hh_core::gen::{cylinder_grid, WeightSpec};
use hh_core::homotopy::{
    apply_move_traced, canonical_cycle_unoriented, is_monotone, retract_certificate,
    verify_certificate, Certificate, Curve, Move, RetractError, Side,
};
use hh_core::surface::{Dart, EId, Embedding, Surface, VId};
use hh_core::{solve_exact, Rat, SolveOutcome, SolverOptions};

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

/// Two vertices joined by parallel edges of the given weights, all tails at
/// u. The boundaries are the faces on either side of edge 0.
fn theta_with(weights: &[i64]) -> Surface<Rat> {
    use hh_core::surface::End::*;
    let k = weights.len();
    let embedding = Embedding::build(
        2,
        weights.iter().map(|&w| edge(0, 1, w)).collect(),
        vec![
            (0..k).map(|i| (EId(i), Tail)).collect(),
            (0..k).rev().map(|i| (EId(i), Head)).collect(),
        ],
    )
    .unwrap();
    Surface::annulus(
        embedding,
        [
            &[(VId(0), EId(0)), (VId(1), EId(1))],
            &[(VId(0), EId(k - 1)), (VId(1), EId(0))],
        ],
        vec!["u".into(), "v".into()],
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect(),
    )
    .unwrap()
}

fn theta() -> Surface<Rat> {
    theta_with(&[1, 2, 3])
}

fn solved(surface: &Surface<Rat>) -> (Certificate, Rat) {
    match solve_exact(surface, &SolverOptions::default()) {
        SolveOutcome::Solved(solution) => (solution.certificate, solution.height),
        SolveOutcome::CapExceeded(_) => panic!("test instances are solvable"),
    }
}

fn hug_cycle(surface: &Surface<Rat>, walk: Vec<Dart>) -> Curve {
    let emb = surface.embedding();
    let start = emb.dart_source(walk[0]);
    let mut curve = Curve::hug(emb, true, start, walk, Side::Left).unwrap();
    curve.canonicalize(emb);
    curve
}

/// The ring of vertices at distance `r` from the inner boundary, as a curve.
fn grid_ring(surface: &Surface<Rat>, r: usize, columns: usize) -> Curve {
    let walk = (0..columns)
        .map(|c| Dart::fwd(EId(r * columns + c)))
        .collect();
    hug_cycle(surface, walk)
}

#[test]
fn retracting_onto_either_boundary_returns_the_certificate() {
    let surface = cylinder_grid::<Rat>(2, 3, &WeightSpec::Unit);
    let (certificate, _) = solved(&surface);
    for which in 0..2 {
        let ring = hug_cycle(&surface, surface.boundary_curve_darts(which));
        let out = retract_certificate(&surface, &certificate, &ring).unwrap();
        assert_eq!(out.initial, certificate.initial);
        assert_eq!(out.moves, certificate.moves);
    }
}

#[test]
fn retracting_through_a_middle_ring_never_grows() {
    for (rings, columns) in [(3usize, 2usize), (3, 3), (4, 3)] {
        let surface = cylinder_grid::<Rat>(rings, columns, &WeightSpec::Unit);
        let (certificate, height) = solved(&surface);
        for r in 1..rings - 1 {
            let ring = grid_ring(&surface, r, columns);
            let out = retract_certificate(&surface, &certificate, &ring).unwrap();
            let replay = verify_certificate(&surface, &out).unwrap();
            assert!(replay.height <= height);
            assert!(is_monotone(&surface, &out).unwrap().monotone);
            let cycle = canonical_cycle_unoriented(ring.walk());
            assert!(
                replay
                    .levels
                    .iter()
                    .any(|level| canonical_cycle_unoriented(level.walk()) == cycle),
                "the ring never appears as a level"
            );
        }
    }
}

#[test]
fn retraction_is_stable_on_its_own_output() {
    let surface = cylinder_grid::<Rat>(3, 3, &WeightSpec::Unit);
    let (certificate, _) = solved(&surface);
    let ring = grid_ring(&surface, 1, 3);
    let once = retract_certificate(&surface, &certificate, &ring).unwrap();
    let twice = retract_certificate(&surface, &once, &ring).unwrap();
    assert_eq!(twice.initial, once.initial);
    assert_eq!(twice.moves, once.moves);
}

#[test]
fn a_slack_ring_is_rejected() {
    let surface = theta_with(&[1, 1, 5, 1]);
    let (certificate, _) = solved(&surface);
    // The a-c ring weighs 6, but the a-b cycle through either of its
    // vertices weighs only 2.
    let ring = hug_cycle(
        &surface,
        vec![Dart::fwd(EId(0)), Dart::fwd(EId(2)).reversed()],
    );
    let err = retract_certificate(&surface, &certificate, &ring).unwrap_err();
    assert!(matches!(err, RetractError::NotShortest { .. }), "{err}");
}

#[test]
fn a_taut_interior_ring_on_a_theta_becomes_a_level() {
    let surface = theta_with(&[1, 4, 2, 4]);
    let (certificate, height) = solved(&surface);
    // The a-c ring weighs 3; every other homotopic cycle through u or v
    // weighs at least 3, so it is taut without being a boundary.
    let ring = hug_cycle(
        &surface,
        vec![Dart::fwd(EId(0)), Dart::fwd(EId(2)).reversed()],
    );
    let out = retract_certificate(&surface, &certificate, &ring).unwrap();
    let replay = verify_certificate(&surface, &out).unwrap();
    assert!(replay.height <= height);
    let cycle = canonical_cycle_unoriented(ring.walk());
    assert!(replay
        .levels
        .iter()
        .any(|level| canonical_cycle_unoriented(level.walk()) == cycle));
}

#[test]
fn a_ring_that_revisits_a_vertex_is_rejected() {
    let surface = cylinder_grid::<Rat>(3, 3, &WeightSpec::Unit);
    let (certificate, _) = solved(&surface);
    let ring = grid_ring(&surface, 1, 3);
    // Push a spur along a spoke and back; the walk stays embedded but now
    // touches the spur's root twice.
    let spur = ring
        .walk()
        .iter()
        .position(|d| surface.embedding().dart_source(*d) == VId(4))
        .unwrap();
    let spiked = apply_move_traced(
        &surface,
        &ring,
        Move::Spike {
            at: spur,
            edge: EId(10),
            dir: None,
            slot: None,
            out_first: None,
        },
    )
    .unwrap()
    .curve;
    let err = retract_certificate(&surface, &certificate, &spiked).unwrap_err();
    assert!(
        matches!(err, RetractError::RevisitsVertex { vertex } if vertex == VId(4)),
        "{err}"
    );
}

#[test]
fn a_backtracking_sweep_is_rejected() {
    let surface = theta();
    let face = surface.internal_faces().next().unwrap();
    let forward = Move::Flip {
        face,
        at: 1,
        len: 1,
        face_at: None,
    };
    let certificate = Certificate {
        initial: surface.boundary_curve_darts(0),
        moves: vec![forward, forward, forward],
    };
    verify_certificate(&surface, &certificate).unwrap();
    let ring = hug_cycle(&surface, surface.boundary_curve_darts(0));
    let err = retract_certificate(&surface, &certificate, &ring).unwrap_err();
    assert!(matches!(err, RetractError::NotMonotone), "{err}");
}

#[test]
fn an_unfinished_sweep_is_rejected() {
    let surface = theta();
    let certificate = Certificate {
        initial: surface.boundary_curve_darts(0),
        moves: Vec::new(),
    };
    let ring = hug_cycle(&surface, surface.boundary_curve_darts(0));
    let err = retract_certificate(&surface, &certificate, &ring).unwrap_err();
    assert!(matches!(err, RetractError::Invalid(_)), "{err}");
}
