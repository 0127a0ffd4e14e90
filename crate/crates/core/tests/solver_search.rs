//! End-to-end checks of the optimal solver against the exhaustive reference
//! search on instances small enough to inspect by hand.

use hh_core::gen::{cylinder_grid, WeightSpec};
use hh_core::homotopy::{is_monotone, verify_certificate};
use hh_core::solver::{lower_bounds, solve_exact, solve_oracle, OracleConfig, SolverOptions};
use hh_core::surface::{Edge, Embedding, End, Surface};
use hh_core::{EId, FId, Rat, VId};

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn edge(tail: usize, head: usize, weight: i64) -> Edge<Rat> {
    Edge {
        tail: VId(tail),
        head: VId(head),
        weight: rat(weight),
    }
}

/// Two vertices joined by three parallel edges of weights 1, 2, 3; the curves
/// bound the middle face of perimeter 5.
fn theta() -> Surface<Rat> {
    let u = VId(0);
    let v = VId(1);
    let (a, b, c) = (EId(0), EId(1), EId(2));
    let embedding = Embedding::build(
        2,
        vec![edge(0, 1, 1), edge(0, 1, 2), edge(0, 1, 3)],
        vec![
            vec![(a, End::Tail), (b, End::Tail), (c, End::Tail)],
            vec![(c, End::Head), (b, End::Head), (a, End::Head)],
        ],
    )
    .unwrap();
    Surface::annulus(
        embedding,
        [&[(u, a), (v, b)], &[(u, c), (v, a)]],
        vec!["u".into(), "v".into()],
        vec!["a".into(), "b".into(), "c".into()],
    )
    .unwrap()
}

/// One vertex with a loop of weight 2; both boundaries trace the same cycle.
fn loop_annulus() -> Surface<Rat> {
    let u = VId(0);
    let a = EId(0);
    let embedding = Embedding::build(
        1,
        vec![edge(0, 0, 2)],
        vec![vec![(a, End::Tail), (a, End::Head)]],
    )
    .unwrap();
    Surface::annulus(
        embedding,
        [&[(u, a)], &[(u, a)]],
        vec!["u".into()],
        vec!["a".into()],
    )
    .unwrap()
}

/// A triangle drawn as a disk: the heavy side is one boundary arc, the two
/// light sides the other, with the triangle face between them.
fn triangle_disk() -> Surface<Rat> {
    let (u, v, w) = (VId(0), VId(1), VId(2));
    let (a, b, c) = (EId(0), EId(1), EId(2));
    let embedding = Embedding::build(
        3,
        vec![edge(0, 1, 1), edge(1, 2, 1), edge(0, 2, 3)],
        vec![
            vec![(a, End::Tail), (c, End::Tail)],
            vec![(b, End::Tail), (a, End::Head)],
            vec![(c, End::Head), (b, End::Head)],
        ],
    )
    .unwrap();
    Surface::disk(
        embedding,
        [&[(u, c)], &[(w, b), (v, a)]],
        [u, w],
        vec!["u".into(), "v".into(), "w".into()],
        vec!["a".into(), "b".into(), "c".into()],
    )
    .unwrap()
}

#[test]
fn the_search_and_the_reference_agree_on_theta() {
    let surface = theta();
    let solution = solve_exact(&surface, &SolverOptions::default())
        .solution()
        .expect("theta fits any budget");
    assert_eq!(solution.height, rat(4));
    assert_eq!(solution.certificate.moves.len(), 1);

    let outcome = verify_certificate(&surface, &solution.certificate).unwrap();
    assert_eq!(outcome.height, rat(4));
    let report = is_monotone(&surface, &solution.certificate).unwrap();
    assert!(report.monotone);
    assert_eq!(report.flip_order, vec![FId(2)]);

    let oracle = solve_oracle(&surface, &OracleConfig::default(), None).unwrap();
    assert_eq!(oracle, rat(4));
}

#[test]
fn coinciding_boundaries_solve_with_no_moves() {
    let surface = loop_annulus();
    let solution = solve_exact(&surface, &SolverOptions::default())
        .solution()
        .unwrap();
    assert_eq!(solution.height, rat(2));
    assert!(solution.certificate.moves.is_empty());
    assert_eq!(
        solve_oracle(&surface, &OracleConfig::default(), None).unwrap(),
        rat(2)
    );
}

#[test]
fn a_disk_is_swept_between_its_two_arcs() {
    let surface = triangle_disk();
    let solution = solve_exact(&surface, &SolverOptions::default())
        .solution()
        .unwrap();
    assert_eq!(solution.height, rat(3));
    assert_eq!(solution.certificate.moves.len(), 1);

    let outcome = verify_certificate(&surface, &solution.certificate).unwrap();
    assert_eq!(outcome.height, rat(3));
    assert!(is_monotone(&surface, &solution.certificate).unwrap().monotone);

    let oracle = solve_oracle(&surface, &OracleConfig::default(), None).unwrap();
    assert_eq!(oracle, rat(3));
}

#[test]
fn static_bounds_pinch_theta_from_below() {
    let surface = theta();
    let bounds = lower_bounds(&surface);
    assert_eq!(bounds.boundary0, rat(3));
    assert_eq!(bounds.boundary1, rat(4));
    assert_eq!(bounds.half_max_face_perimeter, Rat::new(5.into(), 2.into()));
    assert_eq!(bounds.diameter, rat(1));
    assert_eq!(bounds.lower, rat(4));
}

#[test]
fn a_zero_state_budget_reports_the_static_lower_bound() {
    let surface = theta();
    let options = SolverOptions {
        max_states: 0,
        ..SolverOptions::default()
    };
    match solve_exact(&surface, &options) {
        hh_core::SolveOutcome::Solved(s) => {
            panic!("no expansions allowed, got {:?}", s.height)
        }
        hh_core::SolveOutcome::CapExceeded(partial) => {
            assert_eq!(partial.lower, rat(4));
            assert!(partial.upper.is_none());
            assert_eq!(partial.stats.expanded, 0);
        }
    }
}

#[test]
fn a_heavy_far_boundary_pins_the_height_immediately() {
    let u = VId(0);
    let v = VId(1);
    let (a, b, c) = (EId(0), EId(1), EId(2));
    let embedding = Embedding::build(
        2,
        vec![edge(0, 1, 1), edge(0, 1, 2), edge(0, 1, 30)],
        vec![
            vec![(a, End::Tail), (b, End::Tail), (c, End::Tail)],
            vec![(c, End::Head), (b, End::Head), (a, End::Head)],
        ],
    )
    .unwrap();
    let surface = Surface::annulus(
        embedding,
        [&[(u, a), (v, b)], &[(u, c), (v, a)]],
        vec!["u".into(), "v".into()],
        vec!["a".into(), "b".into(), "c".into()],
    )
    .unwrap();

    // Every completion must reach the weight-31 goal level, so detours never
    // undercut the first homotopy found and one expansion settles it.
    let options = SolverOptions {
        max_states: 2,
        ..SolverOptions::default()
    };
    let solution = solve_exact(&surface, &options)
        .solution()
        .expect("the completion bound prunes every detour");
    assert_eq!(solution.height, rat(31));
    assert_eq!(solution.certificate.moves.len(), 1);
    assert_eq!(solution.stats.expanded, 1);
    let outcome = verify_certificate(&surface, &solution.certificate).unwrap();
    assert_eq!(outcome.height, rat(31));
}

#[test]
fn an_exhausted_budget_reports_the_frontier_lower_bound() {
    // Unit 2x2 cylinder grid: both boundaries and both face bounds sit at 2,
    // but any sweep must drag a level across two spokes and a far ring edge.
    let surface: Surface<Rat> = cylinder_grid(2, 2, &WeightSpec::Unit);
    assert_eq!(lower_bounds(&surface).lower, rat(2));

    let solution = solve_exact(&surface, &SolverOptions::default())
        .solution()
        .expect("a 2x2 grid is well within the default budget");
    assert_eq!(solution.height, rat(4));

    // Two expansions reach the first intermediate levels but no homotopy; the
    // frontier already proves that nothing finishes below 4.
    let options = SolverOptions {
        max_states: 2,
        ..SolverOptions::default()
    };
    match solve_exact(&surface, &options) {
        hh_core::SolveOutcome::Solved(s) => {
            panic!("two expansions cannot finish the sweep, got {:?}", s.height)
        }
        hh_core::SolveOutcome::CapExceeded(partial) => {
            assert_eq!(partial.lower, rat(4));
            assert!(partial.upper.is_none());
            assert_eq!(partial.stats.expanded, 2);
        }
    }
}
