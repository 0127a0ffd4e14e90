//! Minimum-width vertex orders via a disk sweep.
//!
//! Take the dual of the graph's embedding, drill the dual vertex of the
//! outer face into a cycle of zero-weight edges, and sweep the resulting
//! disk. Levels cross a set of dual edges whose total weight is exactly the
//! width of a vertical line through the drawing, and each face flip carries
//! the line past one vertex, so an optimal sweep is an optimal left-to-right
//! order of the vertices.

use thiserror::Error;

use crate::homotopy::verify::Certificate;
use crate::scalar::Scalar;
use crate::solver::{solve_exact, SolveOutcome, SolverOptions};
use crate::surface::dual::dual;
use crate::surface::{Dart, Dir, EId, Edge, Embedding, End, FId, Surface, VId};

use super::fresh_name;

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("the embedding has no face {0:?}")]
    NoSuchFace(FId),
    #[error("search budget exceeded on the drilled disk")]
    BudgetExceeded,
}

/// A connected graph drawn in the plane: a sphere embedding plus the choice
/// of outer face.
#[derive(Clone, Debug)]
pub struct LayoutInstance<W> {
    pub embedding: Embedding<W>,
    pub outer: FId,
    pub vertex_names: Vec<String>,
    pub edge_names: Vec<String>,
}

/// The drilled dual disk together with the face-to-vertex correspondence.
#[derive(Clone, Debug)]
pub struct LayoutReduction<W> {
    pub disk: Surface<W>,
    /// Original vertex behind each disk face; `None` for the boundary.
    pub face_to_vertex: Vec<Option<VId>>,
}

/// Dualize, drill the outer face's dual vertex into a zero-weight boundary
/// cycle, and anchor the sweep at two adjacent boundary vertices.
pub fn layout_to_hh<W: Scalar>(li: &LayoutInstance<W>) -> Result<LayoutReduction<W>, LayoutError> {
    let g = &li.embedding;
    if li.outer.0 >= g.faces().len() {
        return Err(LayoutError::NoSuchFace(li.outer));
    }
    let dg = dual(g);
    let de = &dg.embedding;
    let o = li.outer.0;
    let spin = de.rotation(VId(o)).to_vec();
    let hole = spin.len().max(2);
    let base = de.num_vertices();
    let hole_vertex = |j: usize| if j == 0 { VId(o) } else { VId(base + j - 1) };

    // Reattach each edge end around the hole to its own cycle vertex, in
    // rotation order.
    let mut edges = de.edges().to_vec();
    for (i, (e, end)) in spin.iter().enumerate() {
        match end {
            End::Tail => edges[e.0].tail = hole_vertex(i),
            End::Head => edges[e.0].head = hole_vertex(i),
        }
    }
    let zero_base = edges.len();
    for j in 0..hole {
        edges.push(Edge {
            tail: hole_vertex(j),
            head: hole_vertex((j + 1) % hole),
            weight: W::zero(),
        });
    }

    let rotations: Vec<Vec<(EId, End)>> = (0..base + hole - 1)
        .map(|v| {
            if v < base && v != o {
                de.rotation(VId(v)).to_vec()
            } else {
                Vec::new()
            }
        })
        .collect();
    let ring = |j: usize| -> Vec<(EId, End)> {
        let mut r = vec![
            (EId(zero_base + j), End::Tail),
            (EId(zero_base + (j + hole - 1) % hole), End::Head),
        ];
        if j < spin.len() {
            r.push(spin[j]);
        }
        r
    };

    let mut vertex_names: Vec<String> = (0..base)
        .map(|i| if i == o { "h0".to_string() } else { format!("f{i}") })
        .collect();
    for j in 1..hole {
        vertex_names.push(format!("h{j}"));
    }
    let mut edge_names = li.edge_names.clone();
    for j in 0..hole {
        edge_names.push(fresh_name(&format!("z{j}"), &edge_names));
    }

    for flip in [false, true] {
        let mut rotations = rotations.clone();
        for j in 0..hole {
            let mut r = ring(j);
            if flip {
                r.reverse();
            }
            rotations[hole_vertex(j).0] = r;
        }
        let Ok(built) = Embedding::build(base + hole - 1, edges.clone(), rotations) else {
            continue;
        };
        if let Some(reduction) = assemble(li, built, zero_base, hole, &vertex_names, &edge_names) {
            return Ok(reduction);
        }
    }
    panic!("the drilled dual embeds for one hole orientation");
}

/// Pick out the boundary cycle, assign each remaining face the vertex it
/// pivots around, and cut the disk open at two adjacent boundary vertices.
/// Returns `None` when the zero cycle did not close up into a single face,
/// which means the hole was stitched with the wrong handedness.
fn assemble<W: Scalar>(
    li: &LayoutInstance<W>,
    built: Embedding<W>,
    zero_base: usize,
    hole: usize,
    vertex_names: &[String],
    edge_names: &[String],
) -> Option<LayoutReduction<W>> {
    let g = &li.embedding;
    let all_zero: Vec<FId> = built
        .faces()
        .iter()
        .filter(|f| f.darts.iter().all(|d| d.edge.0 >= zero_base))
        .map(|f| f.id)
        .collect();
    let boundary = if zero_base == 0 {
        // An edgeless graph drills into a bare two-edge cycle whose sides are
        // both zero; the side left of the first zero edge is the boundary.
        built.face_left_of(Dart::fwd(EId(zero_base)))
    } else {
        match all_zero[..] {
            [only] if built.face(only).darts.len() == hole => only,
            _ => return None,
        }
    };

    let mut face_to_vertex: Vec<Option<VId>> = vec![None; built.faces().len()];
    let mut seen = vec![false; g.num_vertices()];
    for face in built.faces() {
        if face.id == boundary {
            continue;
        }
        let mut pivot = None;
        for dart in &face.darts {
            if dart.edge.0 >= zero_base {
                continue;
            }
            // A dual dart keeps the primal vertex at its head corner on its
            // left, so the face pivots around that vertex.
            let at = match dart.dir {
                Dir::Fwd => g.edges()[dart.edge.0].head,
                Dir::Bwd => g.edges()[dart.edge.0].tail,
            };
            debug_assert!(pivot.is_none_or(|p| p == at), "one pivot per face");
            pivot = Some(at);
        }
        let at = pivot.unwrap_or(VId(0));
        assert!(!seen[at.0], "one face per vertex");
        seen[at.0] = true;
        face_to_vertex[face.id.0] = Some(at);
    }
    assert!(seen.iter().all(|s| *s), "one vertex per face");

    let mut trace = built.face(boundary).darts.clone();
    let low = (0..trace.len())
        .min_by_key(|&i| built.dart_source(trace[i]).0)
        .expect("the boundary cycle is nonempty");
    trace.rotate_left(low);
    let pairs: Vec<(VId, EId)> = trace
        .iter()
        .map(|d| (built.dart_source(*d), d.edge))
        .collect();
    let anchors = [pairs[0].0, built.dart_target(trace[0])];
    let disk = Surface::disk(
        built,
        [&pairs[..1], &pairs[1..]],
        anchors,
        vertex_names.to_vec(),
        edge_names.to_vec(),
    )
    .expect("the drilled dual cuts open along its zero cycle");
    Some(LayoutReduction {
        disk,
        face_to_vertex,
    })
}

/// An optimal vertex order with its width and witness sweep.
#[derive(Clone, Debug)]
pub struct LayoutResult<W> {
    pub order: Vec<VId>,
    pub height: W,
    pub certificate: Certificate,
    pub reduction: LayoutReduction<W>,
}

/// Minimum width over all vertex orders: sweep the drilled dual disk and
/// read the order off the face flips.
///
/// The sweep runs with a strand cap of three, whatever the caller's cap: a
/// vertical line through a drawing crosses each edge at most once, plus two
/// transient strands while a face is flipped, so no optimal order is lost,
/// while the zero-weight boundary ring stops spawning unbounded free
/// detours.
pub fn solve_layout<W: Scalar>(
    li: &LayoutInstance<W>,
    options: &SolverOptions,
) -> Result<LayoutResult<W>, LayoutError> {
    let reduction = layout_to_hh(li)?;
    let options = SolverOptions {
        strand_cap: options.strand_cap.min(3),
        ..options.clone()
    };
    let solution = match solve_exact(&reduction.disk, &options) {
        SolveOutcome::Solved(solution) => solution,
        SolveOutcome::CapExceeded(_) => return Err(LayoutError::BudgetExceeded),
    };
    let order: Vec<VId> = solution
        .certificate
        .moves
        .iter()
        .filter_map(|mv| match mv {
            crate::homotopy::Move::Flip { face, .. } => {
                Some(reduction.face_to_vertex[face.0].expect("sweeps flip internal faces"))
            }
            _ => None,
        })
        .collect();
    let mut ranked = vec![false; li.embedding.num_vertices()];
    for v in &order {
        assert!(!ranked[v.0], "the sweep passes each vertex once");
        ranked[v.0] = true;
    }
    assert!(ranked.iter().all(|r| *r), "the sweep passes every vertex");
    Ok(LayoutResult {
        order,
        height: solution.height,
        certificate: solution.certificate,
        reduction,
    })
}
