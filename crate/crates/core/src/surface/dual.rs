//! Dual graphs: one vertex per face, one edge per primal edge, rotations
//! given by face walk order. Weights carry over, so curve lengths measured
//! as edge crossings agree on both sides of the duality.

use super::{Dart, Dir, Edge, EId, Embedding, End, FId};
use crate::scalar::Scalar;

/// The dual of an embedding, bundled with the face correspondence.
#[derive(Clone, Debug)]
pub struct DualGraph<W> {
    /// The dual rotation system; dual vertex `i` is primal face `FId(i)`.
    pub embedding: Embedding<W>,
    /// Primal face behind each dual vertex (identity by construction, kept
    /// explicit for callers that relabel).
    pub face_of_vertex: Vec<FId>,
    /// Primal edge behind each dual edge (again identity by construction).
    pub edge_of_edge: Vec<EId>,
}

/// Build the dual embedding.
///
/// The dual edge of primal edge `e` runs from the face left of `e` (tail) to
/// the face right of `e` (head). Around each dual vertex the rotation lists
/// dual edge ends in the order the face walk crosses them.
pub fn dual<W: Scalar>(primal: &Embedding<W>) -> DualGraph<W> {
    let edges: Vec<Edge<W>> = primal
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| Edge {
            tail: super::VId(primal.face_left_of(Dart::fwd(EId(i))).0),
            head: super::VId(primal.face_left_of(Dart::bwd(EId(i))).0),
            weight: e.weight.clone(),
        })
        .collect();

    let mut rotations = vec![Vec::new(); primal.faces().len()];
    for face in primal.faces() {
        let rotation = &mut rotations[face.id.0];
        for dart in &face.darts {
            // The face is left of `dart`; left-of-forward means the dual edge
            // starts here (tail end), left-of-backward means it ends here.
            let end = match dart.dir {
                Dir::Fwd => End::Tail,
                Dir::Bwd => End::Head,
            };
            rotation.push((dart.edge, end));
        }
    }

    let embedding = Embedding::build(primal.faces().len(), edges, rotations)
        .expect("dual of a validated sphere embedding is a sphere embedding");
    DualGraph {
        face_of_vertex: (0..primal.faces().len()).map(FId).collect(),
        edge_of_edge: (0..primal.edges().len()).map(EId).collect(),
        embedding,
    }
}
