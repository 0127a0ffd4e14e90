//! Combinatorial surfaces: graphs embedded on the sphere via rotation
//! systems, with designated boundary faces that are removed to form an
//! annulus or a disk.
//!
//! Conventions, fixed once and relied on everywhere:
//! - rotations list edge ends counterclockwise around each vertex;
//! - a face walk arriving at a vertex through end `x` departs through the
//!   counterclockwise predecessor of `x` (the next end clockwise);
//! - the traced face lies to the left of every directed edge side it
//!   contains, so `face_left_of(e, Fwd)` is the face left of `e` walked tail
//!   to head.

pub mod cut;
pub mod dual;
pub mod path;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// Vertex index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VId(pub usize);

/// Edge index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EId(pub usize);

/// Face index (assigned by the deterministic face tracing).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FId(pub usize);

impl std::fmt::Debug for VId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl std::fmt::Debug for EId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl std::fmt::Debug for FId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// One of the two ends of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn opposite(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }
}

/// Traversal direction along an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Fwd,
    Bwd,
}

impl Dir {
    pub fn reversed(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Bwd,
            Dir::Bwd => Dir::Fwd,
        }
    }

    /// End the traversal starts from.
    pub fn source_end(self) -> End {
        match self {
            Dir::Fwd => End::Tail,
            Dir::Bwd => End::Head,
        }
    }

    /// End the traversal arrives at.
    pub fn target_end(self) -> End {
        self.source_end().opposite()
    }

    pub fn from_source_end(end: End) -> Dir {
        match end {
            End::Tail => Dir::Fwd,
            End::Head => Dir::Bwd,
        }
    }
}

/// A directed edge side: the unit of face walks and curve steps.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub edge: EId,
    pub dir: Dir,
}

impl Dart {
    pub fn new(edge: EId, dir: Dir) -> Dart {
        Dart { edge, dir }
    }

    pub fn fwd(edge: EId) -> Dart {
        Dart::new(edge, Dir::Fwd)
    }

    pub fn bwd(edge: EId) -> Dart {
        Dart::new(edge, Dir::Bwd)
    }

    pub fn reversed(self) -> Dart {
        Dart::new(self.edge, self.dir.reversed())
    }

    /// Dense index used for per-dart tables: `2 * edge + dir`.
    pub fn index(self) -> usize {
        self.edge.0 * 2 + if self.dir == Dir::Fwd { 0 } else { 1 }
    }

    pub fn from_index(index: usize) -> Dart {
        Dart::new(
            EId(index / 2),
            if index % 2 == 0 { Dir::Fwd } else { Dir::Bwd },
        )
    }
}

impl std::fmt::Debug for Dart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.dir {
            Dir::Fwd => write!(f, "+{:?}", self.edge),
            Dir::Bwd => write!(f, "-{:?}", self.edge),
        }
    }
}

/// An edge with its two endpoints and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge<W> {
    pub tail: VId,
    pub head: VId,
    pub weight: W,
}

impl<W> Edge<W> {
    pub fn vertex_at(&self, end: End) -> VId {
        match end {
            End::Tail => self.tail,
            End::Head => self.head,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// An edge end as it appears in a rotation: which edge, which of its ends.
pub type EdgeEnd = (EId, End);

/// A traced face: the cyclic sequence of directed sides it lies left of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub id: FId,
    pub darts: Vec<Dart>,
}

/// Which surface an instance describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Annulus,
    Disk,
}

/// Validation failures; each check has its own diagnostic.
#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("instance has no vertices")]
    NoVertices,
    #[error("instance has no edges")]
    NoEdges,
    #[error("edge {edge:?} has endpoint out of range")]
    EdgeEndpointOutOfRange { edge: EId },
    #[error("negative weight on edge {edge:?}")]
    NegativeWeight { edge: EId },
    #[error("rotation references unknown edge {edge:?} at vertex {vertex:?}")]
    RotationUnknownEdge { vertex: VId, edge: EId },
    #[error("rotation at vertex {vertex:?} lists end {end:?} of edge {edge:?}, which is attached to {actual:?}")]
    RotationWrongVertex {
        vertex: VId,
        edge: EId,
        end: End,
        actual: VId,
    },
    #[error("rotation repeats end {end:?} of edge {edge:?}")]
    RotationRepeatedEnd { edge: EId, end: End },
    #[error("rotation incomplete: end {end:?} of edge {edge:?} appears in no rotation")]
    RotationIncomplete { edge: EId, end: End },
    #[error("graph not connected")]
    NotConnected,
    #[error("not a sphere embedding: V - E + F = {euler}, expected 2")]
    NotSphere { euler: i64 },
    #[error("boundary walk {which} does not match any traced face up to rotation")]
    BoundaryWalkMismatch { which: usize },
    #[error("boundary walks trace the same face {face:?}; an annulus needs two")]
    BoundaryFacesIdentical { face: FId },
    #[error("disk boundary arcs do not concatenate into a traced face")]
    DiskBoundaryMismatch,
    #[error("disk anchor {vertex:?} is not where the boundary arcs meet")]
    AnchorMismatch { vertex: VId },
    #[error("boundary walk {which} is empty")]
    EmptyBoundaryWalk { which: usize },
}

/// A validated sphere embedding: edges, rotations, traced faces.
///
/// This carries no boundary designation; [`Surface`] adds that. The dual
/// construction also produces one of these.
#[derive(Clone, Debug)]
pub struct Embedding<W> {
    edges: Vec<Edge<W>>,
    rotations: Vec<Vec<EdgeEnd>>,
    faces: Vec<FaceWalk>,
    /// Face left of each dart, indexed by `Dart::index`.
    face_left: Vec<FId>,
    /// Position of each edge end in its vertex rotation: `[edge][end] -> (vertex, index)`.
    end_pos: Vec<[(VId, usize); 2]>,
}

impl<W: Scalar> Embedding<W> {
    /// Validate a rotation system and trace its faces.
    pub fn build(
        num_vertices: usize,
        edges: Vec<Edge<W>>,
        rotations: Vec<Vec<EdgeEnd>>,
    ) -> Result<Embedding<W>, SurfaceError> {
        if num_vertices == 0 {
            return Err(SurfaceError::NoVertices);
        }
        if edges.is_empty() {
            return Err(SurfaceError::NoEdges);
        }
        assert_eq!(rotations.len(), num_vertices, "one rotation per vertex");
        for (i, edge) in edges.iter().enumerate() {
            let id = EId(i);
            if edge.tail.0 >= num_vertices || edge.head.0 >= num_vertices {
                return Err(SurfaceError::EdgeEndpointOutOfRange { edge: id });
            }
            if edge.weight.is_negative() {
                return Err(SurfaceError::NegativeWeight { edge: id });
            }
        }

        let placeholder = (VId(usize::MAX), usize::MAX);
        let mut end_pos = vec![[placeholder; 2]; edges.len()];
        for (v, rotation) in rotations.iter().enumerate() {
            let vertex = VId(v);
            for (slot, &(edge, end)) in rotation.iter().enumerate() {
                let Some(e) = edges.get(edge.0) else {
                    return Err(SurfaceError::RotationUnknownEdge { vertex, edge });
                };
                if e.vertex_at(end) != vertex {
                    return Err(SurfaceError::RotationWrongVertex {
                        vertex,
                        edge,
                        end,
                        actual: e.vertex_at(end),
                    });
                }
                let cell = &mut end_pos[edge.0][end_index(end)];
                if *cell != placeholder {
                    return Err(SurfaceError::RotationRepeatedEnd { edge, end });
                }
                *cell = (vertex, slot);
            }
        }
        for (e, slots) in end_pos.iter().enumerate() {
            for (i, cell) in slots.iter().enumerate() {
                if *cell == placeholder {
                    return Err(SurfaceError::RotationIncomplete {
                        edge: EId(e),
                        end: if i == 0 { End::Tail } else { End::Head },
                    });
                }
            }
        }

        // Connectivity over edges; isolated vertices also fail here.
        let mut seen = vec![false; num_vertices];
        let mut stack = vec![edges[0].tail];
        seen[edges[0].tail.0] = true;
        while let Some(v) = stack.pop() {
            for &(edge, end) in &rotations[v.0] {
                let other = edges[edge.0].vertex_at(end.opposite());
                if !seen[other.0] {
                    seen[other.0] = true;
                    stack.push(other);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(SurfaceError::NotConnected);
        }

        let mut embedding = Embedding {
            edges,
            rotations,
            faces: Vec::new(),
            face_left: Vec::new(),
            end_pos,
        };
        embedding.trace_all_faces();

        let euler = num_vertices as i64 - embedding.edges.len() as i64
            + embedding.faces.len() as i64;
        if euler != 2 {
            return Err(SurfaceError::NotSphere { euler });
        }
        Ok(embedding)
    }

    fn trace_all_faces(&mut self) {
        let num_darts = self.edges.len() * 2;
        self.face_left = vec![FId(usize::MAX); num_darts];
        self.faces.clear();
        for start in 0..num_darts {
            if self.face_left[start] != FId(usize::MAX) {
                continue;
            }
            let id = FId(self.faces.len());
            let mut darts = Vec::new();
            let mut dart = Dart::from_index(start);
            loop {
                self.face_left[dart.index()] = id;
                darts.push(dart);
                dart = self.next_in_face(dart);
                if dart.index() == start {
                    break;
                }
            }
            self.faces.push(FaceWalk { id, darts });
        }
    }

    /// Successor of a dart within its face walk: arrive, then depart through
    /// the counterclockwise predecessor of the arrival end.
    pub fn next_in_face(&self, dart: Dart) -> Dart {
        let arrival_end = dart.dir.target_end();
        let (vertex, slot) = self.end_pos[dart.edge.0][end_index(arrival_end)];
        let rotation = &self.rotations[vertex.0];
        let prev = (slot + rotation.len() - 1) % rotation.len();
        let (edge, end) = rotation[prev];
        Dart::new(edge, Dir::from_source_end(end))
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn edge(&self, edge: EId) -> &Edge<W> {
        &self.edges[edge.0]
    }

    pub fn weight(&self, edge: EId) -> &W {
        &self.edges[edge.0].weight
    }

    pub fn rotations(&self) -> &[Vec<EdgeEnd>] {
        &self.rotations
    }

    pub fn rotation(&self, vertex: VId) -> &[EdgeEnd] {
        &self.rotations[vertex.0]
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn face(&self, face: FId) -> &FaceWalk {
        &self.faces[face.0]
    }

    /// Face to the left of the dart.
    pub fn face_left_of(&self, dart: Dart) -> FId {
        self.face_left[dart.index()]
    }

    /// Where an edge end sits in its rotation.
    pub fn end_position(&self, edge: EId, end: End) -> (VId, usize) {
        self.end_pos[edge.0][end_index(end)]
    }

    /// Source vertex of a dart.
    pub fn dart_source(&self, dart: Dart) -> VId {
        self.edge(dart.edge).vertex_at(dart.dir.source_end())
    }

    /// Target vertex of a dart.
    pub fn dart_target(&self, dart: Dart) -> VId {
        self.edge(dart.edge).vertex_at(dart.dir.target_end())
    }

    /// Face owning the corner between rotation slots `i` and `i + 1` at `v`.
    ///
    /// That is the face whose walk departs through the end at slot `i`.
    pub fn corner_face(&self, vertex: VId, slot: usize) -> FId {
        let (edge, end) = self.rotations[vertex.0][slot];
        self.face_left_of(Dart::new(edge, Dir::from_source_end(end)))
    }

    /// Total weight of a dart sequence, with multiplicity.
    pub fn walk_weight(&self, darts: &[Dart]) -> W {
        let mut total = W::zero();
        for dart in darts {
            total = total + self.weight(dart.edge).clone();
        }
        total
    }

    /// Sum of all edge weights.
    pub fn total_weight(&self) -> W {
        let mut total = W::zero();
        for edge in &self.edges {
            total = total + edge.weight.clone();
        }
        total
    }

    /// Vertices visited by a closed dart walk, aligned with its darts
    /// (`vertices[i]` is the source of `darts[i]`).
    pub fn walk_vertices(&self, darts: &[Dart]) -> Vec<VId> {
        darts.iter().map(|d| self.dart_source(*d)).collect()
    }
}

pub(crate) fn end_index(end: End) -> usize {
    match end {
        End::Tail => 0,
        End::Head => 1,
    }
}

/// A face walk reduced to its cyclic (vertex, edge) pair sequence and
/// normalized to the lexicographically minimal rotation. Boundary walks in
/// instance documents are matched against this form.
pub fn normalized_pair_walk(pairs: &[(VId, EId)]) -> Vec<(VId, EId)> {
    if pairs.is_empty() {
        return Vec::new();
    }
    let n = pairs.len();
    let mut best: Option<Vec<(VId, EId)>> = None;
    for start in 0..n {
        let candidate: Vec<(VId, EId)> =
            (0..n).map(|i| pairs[(start + i) % n]).collect();
        if best.as_ref().map_or(true, |b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best.unwrap()
}

/// The (vertex, edge) pair presentation of a face walk.
pub fn face_pairs<W: Scalar>(embedding: &Embedding<W>, face: &FaceWalk) -> Vec<(VId, EId)> {
    face.darts
        .iter()
        .map(|d| (embedding.dart_source(*d), d.edge))
        .collect()
}

/// A validated instance: an embedding plus boundary designation.
#[derive(Clone, Debug)]
pub struct Surface<W> {
    embedding: Embedding<W>,
    kind: SurfaceKind,
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    boundary: [FId; 2],
    /// Disk anchors (s, t); `None` for annuli.
    anchors: Option<[VId; 2]>,
    /// Disk boundary arcs as dart walks: arc 0 runs s -> t, arc 1 runs t -> s
    /// (both in the orientation of the traced boundary face).
    disk_arcs: Option<[Vec<Dart>; 2]>,
}

impl<W: Scalar> Surface<W> {
    /// Assemble an annulus: the two boundary walks (as (vertex, edge) pairs)
    /// must match distinct traced faces up to rotation. When both walks have
    /// the same pair presentation (two faces can trace identical pairs, as on
    /// a single loop edge), the second walk takes the other matching face.
    pub fn annulus(
        embedding: Embedding<W>,
        boundary_walks: [&[(VId, EId)]; 2],
        vertex_names: Vec<String>,
        edge_names: Vec<String>,
    ) -> Result<Surface<W>, SurfaceError> {
        let mut boundary = [FId(0); 2];
        for which in 0..2 {
            if boundary_walks[which].is_empty() {
                return Err(SurfaceError::EmptyBoundaryWalk { which });
            }
            let exclude = if which == 1 { Some(boundary[0]) } else { None };
            boundary[which] = match_face(&embedding, boundary_walks[which], exclude)
                .ok_or(SurfaceError::BoundaryWalkMismatch { which })?;
        }
        if boundary[0] == boundary[1] {
            return Err(SurfaceError::BoundaryFacesIdentical { face: boundary[0] });
        }
        Ok(Surface {
            embedding,
            kind: SurfaceKind::Annulus,
            vertex_names,
            edge_names,
            boundary,
            anchors: None,
            disk_arcs: None,
        })
    }

    /// Assemble a disk: the two arcs, concatenated at the anchors, must match
    /// a single traced face. Arc 0 runs s to t; arc 1 runs t back to s.
    pub fn disk(
        embedding: Embedding<W>,
        arcs: [&[(VId, EId)]; 2],
        anchors: [VId; 2],
        vertex_names: Vec<String>,
        edge_names: Vec<String>,
    ) -> Result<Surface<W>, SurfaceError> {
        // Zero-length arcs are legal only when both anchors coincide with the
        // lone arc's endpoints; the concatenation below still covers the face.
        let mut concatenated: Vec<(VId, EId)> = Vec::new();
        concatenated.extend_from_slice(arcs[0]);
        concatenated.extend_from_slice(arcs[1]);
        if concatenated.is_empty() {
            return Err(SurfaceError::EmptyBoundaryWalk { which: 0 });
        }
        let face = match_face(&embedding, &concatenated, None)
            .ok_or(SurfaceError::DiskBoundaryMismatch)?;

        // Recover the dart presentation of the two arcs from the face walk so
        // anchors and arc endpoints can be checked.
        let darts = align_face_darts(&embedding, face, &concatenated)
            .ok_or(SurfaceError::DiskBoundaryMismatch)?;
        let (arc0, arc1) = darts.split_at(arcs[0].len());
        let start0 = if arc0.is_empty() {
            anchors[0]
        } else {
            embedding.dart_source(arc0[0])
        };
        let end0 = if arc0.is_empty() {
            anchors[0]
        } else {
            embedding.dart_target(*arc0.last().unwrap())
        };
        if start0 != anchors[0] {
            return Err(SurfaceError::AnchorMismatch { vertex: anchors[0] });
        }
        if end0 != anchors[1] {
            return Err(SurfaceError::AnchorMismatch { vertex: anchors[1] });
        }
        if let (Some(first), Some(last)) = (arc1.first(), arc1.last()) {
            if embedding.dart_source(*first) != anchors[1] {
                return Err(SurfaceError::AnchorMismatch { vertex: anchors[1] });
            }
            if embedding.dart_target(*last) != anchors[0] {
                return Err(SurfaceError::AnchorMismatch { vertex: anchors[0] });
            }
        }
        Ok(Surface {
            embedding,
            kind: SurfaceKind::Disk,
            vertex_names,
            edge_names,
            boundary: [face, face],
            anchors: Some(anchors),
            disk_arcs: Some([arc0.to_vec(), arc1.to_vec()]),
        })
    }

    pub fn embedding(&self) -> &Embedding<W> {
        &self.embedding
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn vertex_name(&self, vertex: VId) -> &str {
        &self.vertex_names[vertex.0]
    }

    pub fn edge_name(&self, edge: EId) -> &str {
        &self.edge_names[edge.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    /// Boundary faces; for a disk both entries are the single boundary face.
    pub fn boundary_faces(&self) -> [FId; 2] {
        self.boundary
    }

    pub fn is_boundary_face(&self, face: FId) -> bool {
        face == self.boundary[0] || face == self.boundary[1]
    }

    pub fn internal_faces(&self) -> impl Iterator<Item = FId> + '_ {
        self.embedding
            .faces()
            .iter()
            .map(|f| f.id)
            .filter(move |f| !self.is_boundary_face(*f))
    }

    pub fn num_internal_faces(&self) -> usize {
        self.internal_faces().count()
    }

    pub fn anchors(&self) -> Option<[VId; 2]> {
        self.anchors
    }

    /// Disk boundary arcs as dart walks (arc 0: s to t, arc 1: t to s).
    pub fn disk_arcs(&self) -> Option<&[Vec<Dart>; 2]> {
        self.disk_arcs.as_ref()
    }

    /// The boundary curve `which` as a dart walk.
    ///
    /// For an annulus this is the traced face walk; for a disk it is the arc,
    /// with arc 1 reversed so both run from anchor s to anchor t.
    pub fn boundary_curve_darts(&self, which: usize) -> Vec<Dart> {
        match self.kind {
            SurfaceKind::Annulus => self.embedding.face(self.boundary[which]).darts.clone(),
            SurfaceKind::Disk => {
                let arcs = self.disk_arcs.as_ref().unwrap();
                if which == 0 {
                    arcs[0].clone()
                } else {
                    arcs[1].iter().rev().map(|d| d.reversed()).collect()
                }
            }
        }
    }

    /// Vertices appearing on boundary curve `which`.
    pub fn boundary_vertices(&self, which: usize) -> Vec<VId> {
        let darts = self.boundary_curve_darts(which);
        let mut vertices: Vec<VId> = Vec::new();
        if darts.is_empty() {
            if let Some(anchors) = self.anchors {
                vertices.push(anchors[which.min(1)]);
            }
        }
        for dart in &darts {
            vertices.push(self.embedding.dart_source(*dart));
        }
        if self.kind == SurfaceKind::Disk {
            if let Some(last) = darts.last() {
                vertices.push(self.embedding.dart_target(*last));
            }
        }
        let mut seen = HashSet::new();
        vertices.retain(|v| seen.insert(*v));
        vertices
    }
}

/// Find the traced face whose (vertex, edge) walk equals `pairs` up to
/// rotation, skipping `exclude`.
fn match_face<W: Scalar>(
    embedding: &Embedding<W>,
    pairs: &[(VId, EId)],
    exclude: Option<FId>,
) -> Option<FId> {
    let target = normalized_pair_walk(pairs);
    embedding
        .faces()
        .iter()
        .find(|f| {
            Some(f.id) != exclude
                && f.darts.len() == pairs.len()
                && normalized_pair_walk(&face_pairs(embedding, f)) == target
        })
        .map(|f| f.id)
}

/// Rotate the face walk of `face` so its (vertex, edge) pairs equal `pairs`
/// exactly, returning the aligned darts.
fn align_face_darts<W: Scalar>(
    embedding: &Embedding<W>,
    face: FId,
    pairs: &[(VId, EId)],
) -> Option<Vec<Dart>> {
    let walk = &embedding.face(face).darts;
    let n = walk.len();
    if n != pairs.len() {
        return None;
    }
    'outer: for start in 0..n {
        for i in 0..n {
            let dart = walk[(start + i) % n];
            if (embedding.dart_source(dart), dart.edge) != pairs[i] {
                continue 'outer;
            }
        }
        return Some((0..n).map(|i| walk[(start + i) % n]).collect());
    }
    None
}
