//! Cutting surfaces open: along a boundary-to-boundary path (annulus to
//! disk) and along an essential cycle (annulus to two annuli).
//!
//! Both cuts duplicate the vertices and edges of the cut walk, split the
//! rotations at the duplicated ends, and rebuild the result through the
//! ordinary validation path, so every cut output is re-checked (Euler count,
//! face tracing, boundary matching) rather than trusted.

use std::collections::HashMap;

use thiserror::Error;

use super::{
    face_pairs, normalized_pair_walk, Dart, Dir, EId, Edge, Embedding, End, FId, Surface,
    SurfaceError, SurfaceKind, VId,
};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum CutError {
    #[error("cut walk is not simple: vertex {vertex:?} repeats")]
    WalkNotSimple { vertex: VId },
    #[error("cut path endpoints are not on the expected boundaries")]
    EndpointsNotOnBoundaries,
    #[error("cut path interior touches a boundary at {vertex:?}")]
    PathTouchesBoundary { vertex: VId },
    #[error("cut walk swallows a whole boundary walk")]
    BoundarySwallowed,
    #[error("cut requires an annulus")]
    NotAnnulus,
    #[error("cut cycle is empty")]
    EmptyCycle,
    #[error("cut cycle coincides with a boundary walk")]
    CycleOnBoundary,
    #[error("cut cycle is not essential: both boundaries end up on one side")]
    CycleNotEssential,
    #[error("cut produced an invalid surface: {0}")]
    InvalidResult(#[from] SurfaceError),
}

/// How pieces of a cut surface map back to the original.
#[derive(Clone, Debug)]
pub struct Correspondence {
    /// Original vertex behind each new vertex.
    pub vertex_to_old: Vec<VId>,
    /// Original edge behind each new edge.
    pub edge_to_old: Vec<EId>,
    /// Original face behind each new face; `None` for faces created by the
    /// cut (the merged disk boundary, or a cycle-side face).
    pub face_to_old: Vec<Option<FId>>,
}

/// Result of cutting an annulus along a boundary-to-boundary path.
///
/// The disk boundary decomposes into four arcs meeting at the corners
/// `[p0, q0, p1, q1]`: `gamma0` is the opened boundary 0 (p0 to q0),
/// `gamma1` the opened boundary 1 (p1 to q1), and `left`/`right` the two
/// copies of the cut path (p0 to p1 and q0 to q1), named for the side they
/// lie on when walking the path from boundary 0 to boundary 1. A zero-length
/// cut has empty `left`/`right` with p1 = p0 and q1 = q0.
#[derive(Clone, Debug)]
pub struct PathCut<W> {
    pub disk: Surface<W>,
    pub map: Correspondence,
    pub corners: [VId; 4],
    pub gamma0: Vec<Dart>,
    pub gamma1: Vec<Dart>,
    pub left: Vec<Dart>,
    pub right: Vec<Dart>,
}

/// Result of cutting an annulus along an essential cycle.
#[derive(Clone, Debug)]
pub struct CycleCut<W> {
    /// Annulus between the original boundary 0 and the cycle.
    pub side0: Surface<W>,
    pub map0: Correspondence,
    /// Annulus between the cycle and the original boundary 1.
    pub side1: Surface<W>,
    pub map1: Correspondence,
}

// Positions on a rotation of length n, counterclockwise: the end in slot i
// sits at position 2i, the gap between slots i and i + 1 at position 2i + 1.

fn gap_after(slot: usize) -> usize {
    2 * slot + 1
}

fn end_at(slot: usize) -> usize {
    2 * slot
}

/// Rotation slots strictly between two positions, walking counterclockwise
/// from `from` to `to`.
fn slots_between(len: usize, from: usize, to: usize) -> Vec<usize> {
    let modulus = 2 * len;
    let mut slots = Vec::new();
    let mut pos = (from + 1) % modulus;
    while pos != to {
        if pos % 2 == 0 {
            slots.push(pos / 2);
        }
        pos = (pos + 1) % modulus;
    }
    slots
}

fn unique_name(base: String, taken: &[String]) -> String {
    let mut name = base;
    while taken.iter().any(|n| n == &name) {
        name.push('\'');
    }
    name
}

/// Working copy of the surface data while the cut rewires it.
struct CutBuilder<W> {
    vertex_to_old: Vec<VId>,
    vertex_names: Vec<String>,
    edges: Vec<Edge<W>>,
    edge_to_old: Vec<EId>,
    edge_names: Vec<String>,
    rotations: Vec<Vec<(EId, End)>>,
    /// Side copies of each cut-walk vertex, `[left, right]` of the walk
    /// direction; the left copy reuses the original id.
    vertex_copies: Vec<[VId; 2]>,
    edge_copies: Vec<[EId; 2]>,
    /// Side assignment for edge ends that sit at a cut vertex without being
    /// part of the cut walk.
    end_side: HashMap<(EId, End), usize>,
}

impl<W: Scalar> CutBuilder<W> {
    fn new(surface: &Surface<W>) -> CutBuilder<W> {
        let embedding = surface.embedding();
        CutBuilder {
            vertex_to_old: (0..embedding.num_vertices()).map(VId).collect(),
            vertex_names: surface.vertex_names().to_vec(),
            edges: embedding.edges().to_vec(),
            edge_to_old: (0..embedding.edges().len()).map(EId).collect(),
            edge_names: surface.edge_names().to_vec(),
            rotations: embedding.rotations().to_vec(),
            vertex_copies: Vec::new(),
            edge_copies: Vec::new(),
            end_side: HashMap::new(),
        }
    }

    /// Duplicate a cut vertex: the original slot becomes the left copy, a
    /// fresh vertex the right copy. Rotations are assigned by the caller.
    fn split_vertex(&mut self, v: VId) {
        let base = self.vertex_names[v.0].clone();
        let right = VId(self.vertex_to_old.len());
        self.vertex_to_old.push(v);
        self.vertex_names[v.0] = unique_name(format!("{base}.a"), &self.vertex_names);
        let right_name = unique_name(format!("{base}.b"), &self.vertex_names);
        self.vertex_names.push(right_name);
        self.rotations.push(Vec::new());
        self.vertex_copies.push([v, right]);
    }

    /// Duplicate a cut edge likewise; endpoints are rewired by the caller.
    fn split_edge(&mut self, e: EId) {
        let base = self.edge_names[e.0].clone();
        let right = EId(self.edges.len());
        self.edges.push(self.edges[e.0].clone());
        self.edge_to_old.push(e);
        self.edge_names[e.0] = unique_name(format!("{base}.a"), &self.edge_names);
        let right_name = unique_name(format!("{base}.b"), &self.edge_names);
        self.edge_names.push(right_name);
        self.edge_copies.push([e, right]);
    }

    /// Split the rotation of cut vertex number `i` at two positions: toward
    /// the next cut element (`out_pos`) and from the previous one (`in_pos`).
    /// `out_end`/`in_end` name the cut edge ends sitting at those positions
    /// (`None` when the cut runs into a boundary corner instead); the values
    /// are (cut walk edge index, end).
    fn split_rotation(
        &mut self,
        original: &[(EId, End)],
        i: usize,
        out_pos: usize,
        in_pos: usize,
        out_end: Option<(usize, End)>,
        in_end: Option<(usize, End)>,
    ) {
        let len = original.len();
        let [left_copy, right_copy] = self.vertex_copies[i];
        let left_slots = slots_between(len, out_pos, in_pos);
        let right_slots = slots_between(len, in_pos, out_pos);
        for &slot in &left_slots {
            self.end_side.insert(original[slot], 0);
        }
        for &slot in &right_slots {
            self.end_side.insert(original[slot], 1);
        }

        // Counterclockwise around each copy: the left side runs from the
        // departing cut end through its surviving ends to the arriving one,
        // the right side the other way around.
        let mut left_rotation = Vec::new();
        if let Some((j, end)) = out_end {
            left_rotation.push((self.edge_copies[j][0], end));
        }
        left_rotation.extend(left_slots.iter().map(|&s| original[s]));
        if let Some((j, end)) = in_end {
            left_rotation.push((self.edge_copies[j][0], end));
        }
        let mut right_rotation = Vec::new();
        if let Some((j, end)) = in_end {
            right_rotation.push((self.edge_copies[j][1], end));
        }
        right_rotation.extend(right_slots.iter().map(|&s| original[s]));
        if let Some((j, end)) = out_end {
            right_rotation.push((self.edge_copies[j][1], end));
        }
        self.rotations[left_copy.0] = left_rotation;
        self.rotations[right_copy.0] = right_rotation;
    }

    /// Rewire endpoints: side-assigned ends of surviving edges move to the
    /// matching vertex copy, and the cut edge copies connect their sides.
    fn rewire(&mut self, cut_vertices: &[VId], cut_darts: &[Dart], closed: bool) {
        for (&(edge, end), &side) in &self.end_side {
            let at = self.edges[edge.0].vertex_at(end);
            let i = cut_vertices
                .iter()
                .position(|v| *v == at)
                .expect("side-assigned end sits at a cut vertex");
            let copy = self.vertex_copies[i][side];
            match end {
                End::Tail => self.edges[edge.0].tail = copy,
                End::Head => self.edges[edge.0].head = copy,
            }
        }
        let n = cut_vertices.len();
        for (j, dart) in cut_darts.iter().enumerate() {
            let target_index = if closed { (j + 1) % n } else { j + 1 };
            for side in 0..2 {
                let edge_id = self.edge_copies[j][side];
                let source_copy = self.vertex_copies[j][side];
                let target_copy = self.vertex_copies[target_index][side];
                let edge = &mut self.edges[edge_id.0];
                match dart.dir {
                    Dir::Fwd => {
                        edge.tail = source_copy;
                        edge.head = target_copy;
                    }
                    Dir::Bwd => {
                        edge.head = source_copy;
                        edge.tail = target_copy;
                    }
                }
            }
        }
    }
}

/// Match every face of a cut embedding back to an original face by its
/// normalized (vertex, edge) walk mapped through the correspondence. Faces
/// listed in `exclude` are never matched.
fn match_faces<W: Scalar>(
    old: &Embedding<W>,
    new: &Embedding<W>,
    vertex_to_old: &[VId],
    edge_to_old: &[EId],
    exclude: &[FId],
) -> Vec<Option<FId>> {
    let mut by_walk: HashMap<Vec<(VId, EId)>, FId> = HashMap::new();
    for face in old.faces() {
        if exclude.contains(&face.id) {
            continue;
        }
        by_walk.insert(normalized_pair_walk(&face_pairs(old, face)), face.id);
    }
    new.faces()
        .iter()
        .map(|face| {
            let mapped: Vec<(VId, EId)> = face
                .darts
                .iter()
                .map(|d| (vertex_to_old[new.dart_source(*d).0], edge_to_old[d.edge.0]))
                .collect();
            by_walk.get(&normalized_pair_walk(&mapped)).copied()
        })
        .collect()
}

fn check_walk_shape<W: Scalar>(
    embedding: &Embedding<W>,
    vertices: &[VId],
    darts: &[Dart],
    closed: bool,
) -> Result<(), CutError> {
    assert_eq!(
        vertices.len(),
        darts.len() + usize::from(!closed),
        "walk shape: vertices align with darts"
    );
    for (i, dart) in darts.iter().enumerate() {
        assert_eq!(embedding.dart_source(*dart), vertices[i]);
        let target = if closed {
            vertices[(i + 1) % vertices.len()]
        } else {
            vertices[i + 1]
        };
        assert_eq!(embedding.dart_target(*dart), target);
    }
    for (i, v) in vertices.iter().enumerate() {
        if vertices[i + 1..].contains(v) {
            return Err(CutError::WalkNotSimple { vertex: *v });
        }
    }
    Ok(())
}

/// Cut an annulus along a vertex-simple path from boundary 0 to boundary 1.
///
/// A zero-length path (a single vertex lying on both boundaries) is allowed;
/// the cut then runs through that vertex from one puncture to the other.
/// When a boundary visits the path's endpoint at several corners, the cut
/// opens the corner with the smallest rotation slot.
pub fn cut_along<W: Scalar>(
    surface: &Surface<W>,
    path_vertices: &[VId],
    path_darts: &[Dart],
) -> Result<PathCut<W>, CutError> {
    if surface.kind() != SurfaceKind::Annulus {
        return Err(CutError::NotAnnulus);
    }
    let embedding = surface.embedding();
    check_walk_shape(embedding, path_vertices, path_darts, false)?;

    let [bd0, bd1] = surface.boundary_faces();
    let on = |face: FId, v: VId| {
        embedding
            .face(face)
            .darts
            .iter()
            .any(|d| embedding.dart_source(*d) == v)
    };
    let first = *path_vertices.first().expect("path has a vertex");
    let last = *path_vertices.last().unwrap();
    if !on(bd0, first) || !on(bd1, last) {
        return Err(CutError::EndpointsNotOnBoundaries);
    }
    let interior = path_vertices.len().saturating_sub(2);
    for &v in path_vertices.iter().skip(1).take(interior) {
        if on(bd0, v) || on(bd1, v) {
            return Err(CutError::PathTouchesBoundary { vertex: v });
        }
    }
    for boundary in [bd0, bd1] {
        let swallowed = embedding
            .face(boundary)
            .darts
            .iter()
            .all(|d| path_darts.iter().any(|p| p.edge == d.edge));
        if swallowed {
            return Err(CutError::BoundarySwallowed);
        }
    }

    let mut builder = CutBuilder::new(surface);
    for &v in path_vertices {
        builder.split_vertex(v);
    }
    for dart in path_darts {
        builder.split_edge(dart.edge);
    }

    let find_corner = |v: VId, face: FId| -> usize {
        let rotation = embedding.rotation(v);
        (0..rotation.len())
            .find(|&slot| embedding.corner_face(v, slot) == face)
            .expect("path endpoint has a corner on its boundary face")
    };
    for (i, &v) in path_vertices.iter().enumerate() {
        let rotation = embedding.rotation(v).to_vec();
        let (out_pos, out_end) = if i < path_darts.len() {
            let dart = path_darts[i];
            let end = dart.dir.source_end();
            let (vertex, slot) = embedding.end_position(dart.edge, end);
            debug_assert_eq!(vertex, v);
            (end_at(slot), Some((i, end)))
        } else {
            (gap_after(find_corner(v, bd1)), None)
        };
        let (in_pos, in_end) = if i > 0 {
            let dart = path_darts[i - 1];
            let end = dart.dir.target_end();
            let (vertex, slot) = embedding.end_position(dart.edge, end);
            debug_assert_eq!(vertex, v);
            (end_at(slot), Some((i - 1, end)))
        } else {
            (gap_after(find_corner(v, bd0)), None)
        };
        builder.split_rotation(&rotation, i, out_pos, in_pos, out_end, in_end);
    }
    builder.rewire(path_vertices, path_darts, false);

    let new_embedding = Embedding::build(
        builder.vertex_to_old.len(),
        builder.edges.clone(),
        builder.rotations.clone(),
    )?;

    // Every old internal face must reappear; the single unmatched face is the
    // merged disk boundary.
    let face_to_old = match_faces(
        embedding,
        &new_embedding,
        &builder.vertex_to_old,
        &builder.edge_to_old,
        &[bd0, bd1],
    );
    let unmatched: Vec<FId> = face_to_old
        .iter()
        .enumerate()
        .filter(|(_, old)| old.is_none())
        .map(|(i, _)| FId(i))
        .collect();
    assert_eq!(
        unmatched.len(),
        1,
        "path cut merges the two punctures into one boundary face"
    );
    let boundary_face = unmatched[0];

    // Classify the boundary walk darts: opened boundary 0 or 1, left or
    // right path copy.
    let classify = |new_dart: Dart| -> usize {
        let old_edge = builder.edge_to_old[new_dart.edge.0];
        if let Some(j) = path_darts.iter().position(|d| d.edge == old_edge) {
            return if new_dart.edge == builder.edge_copies[j][0] {
                2
            } else {
                3
            };
        }
        let old_face = embedding.face_left_of(Dart::new(old_edge, new_dart.dir));
        if old_face == bd0 {
            0
        } else if old_face == bd1 {
            1
        } else {
            panic!("disk boundary dart {new_dart:?} maps to neither old boundary");
        }
    };
    let walk = new_embedding.face(boundary_face).darts.clone();
    let classes: Vec<usize> = walk.iter().map(|d| classify(*d)).collect();
    let n = walk.len();
    let start = (0..n)
        .find(|&i| classes[i] == 0 && classes[(i + n - 1) % n] != 0)
        .ok_or(CutError::BoundarySwallowed)?;
    let mut blocks: Vec<(usize, Vec<Dart>)> = Vec::new();
    for i in 0..n {
        let dart = walk[(start + i) % n];
        let class = classes[(start + i) % n];
        match blocks.last_mut() {
            Some((c, darts)) if *c == class => darts.push(dart),
            _ => blocks.push((class, vec![dart])),
        }
    }
    let shape: Vec<usize> = blocks.iter().map(|(c, _)| *c).collect();
    let ok = match path_darts.len() {
        0 => shape == [0, 1],
        _ => shape.len() == 4 && shape[0] == 0 && shape[2] == 1 && shape[1] != shape[3],
    };
    if !ok {
        return Err(CutError::BoundarySwallowed);
    }

    let gamma0 = blocks[0].1.clone();
    let p0 = new_embedding.dart_source(gamma0[0]);
    let q0 = new_embedding.dart_target(*gamma0.last().unwrap());
    let (gamma1_traced, right, left, p1, q1) = if path_darts.is_empty() {
        (blocks[1].1.clone(), Vec::new(), Vec::new(), p0, q0)
    } else {
        // Traced order: gamma0 (p0 to q0), up one path side, gamma1, down
        // the other. The side leaving q0 runs q0 to q1; the side returning
        // to p0, reversed, runs p0 to p1.
        let up = blocks[1].1.clone();
        let down = blocks[3].1.clone();
        let reversed: Vec<Dart> = down.iter().rev().map(|d| d.reversed()).collect();
        let q1 = new_embedding.dart_target(*up.last().unwrap());
        let p1 = new_embedding.dart_target(*reversed.last().unwrap());
        (blocks[2].1.clone(), up, reversed, p1, q1)
    };
    if !left.is_empty() {
        // Walking the path from boundary 0, the left side is the one the
        // boundary trace returns along.
        assert_eq!(
            blocks[3].0, 2,
            "boundary trace returns along the left path copy"
        );
    }
    let gamma1: Vec<Dart> = if new_embedding.dart_source(gamma1_traced[0]) == p1 {
        gamma1_traced
    } else {
        gamma1_traced.iter().rev().map(|d| d.reversed()).collect()
    };
    assert_eq!(new_embedding.dart_source(gamma1[0]), p1);
    assert_eq!(new_embedding.dart_target(*gamma1.last().unwrap()), q1);

    let to_pairs = |darts: &[Dart]| -> Vec<(VId, EId)> {
        darts
            .iter()
            .map(|d| (new_embedding.dart_source(*d), d.edge))
            .collect()
    };
    let arc0_pairs = to_pairs(&gamma0);
    let mut rest: Vec<Dart> = Vec::new();
    for (_, darts) in &blocks[1..] {
        rest.extend(darts.iter().copied());
    }
    let arc1_pairs = to_pairs(&rest);
    let disk = Surface::disk(
        new_embedding,
        [&arc0_pairs, &arc1_pairs],
        [p0, q0],
        builder.vertex_names.clone(),
        builder.edge_names.clone(),
    )?;

    Ok(PathCut {
        disk,
        map: Correspondence {
            vertex_to_old: builder.vertex_to_old,
            edge_to_old: builder.edge_to_old,
            face_to_old,
        },
        corners: [p0, q0, p1, q1],
        gamma0,
        gamma1,
        left,
        right,
    })
}

/// Cut an annulus along an essential vertex-simple cycle, yielding the two
/// side annuli. The cycle is a closed dart walk: `darts[i]` runs from
/// `vertices[i]` to `vertices[(i + 1) % n]`.
pub fn cut_along_cycle<W: Scalar>(
    surface: &Surface<W>,
    cycle_vertices: &[VId],
    cycle_darts: &[Dart],
) -> Result<CycleCut<W>, CutError> {
    if surface.kind() != SurfaceKind::Annulus {
        return Err(CutError::NotAnnulus);
    }
    if cycle_darts.is_empty() {
        return Err(CutError::EmptyCycle);
    }
    let embedding = surface.embedding();
    check_walk_shape(embedding, cycle_vertices, cycle_darts, true)?;
    let cycle_pairs: Vec<(VId, EId)> = cycle_darts
        .iter()
        .map(|d| (embedding.dart_source(*d), d.edge))
        .collect();
    let reversed_pairs: Vec<(VId, EId)> = cycle_darts
        .iter()
        .rev()
        .map(|d| (embedding.dart_target(*d), d.edge))
        .collect();
    for boundary in surface.boundary_faces() {
        let walk = normalized_pair_walk(&face_pairs(embedding, embedding.face(boundary)));
        if walk == normalized_pair_walk(&cycle_pairs)
            || walk == normalized_pair_walk(&reversed_pairs)
        {
            return Err(CutError::CycleOnBoundary);
        }
    }

    let mut builder = CutBuilder::new(surface);
    for &v in cycle_vertices {
        builder.split_vertex(v);
    }
    for dart in cycle_darts {
        builder.split_edge(dart.edge);
    }
    let n = cycle_darts.len();
    for (i, &v) in cycle_vertices.iter().enumerate() {
        let rotation = embedding.rotation(v).to_vec();
        let out_dart = cycle_darts[i];
        let in_index = (i + n - 1) % n;
        let in_dart = cycle_darts[in_index];
        let out_end = out_dart.dir.source_end();
        let in_end = in_dart.dir.target_end();
        let (_, out_slot) = embedding.end_position(out_dart.edge, out_end);
        let (_, in_slot) = embedding.end_position(in_dart.edge, in_end);
        builder.split_rotation(
            &rotation,
            i,
            end_at(out_slot),
            end_at(in_slot),
            Some((i, out_end)),
            Some((in_index, in_end)),
        );
    }
    builder.rewire(cycle_vertices, cycle_darts, true);

    // The cut graph falls apart into the two sides of the cycle.
    let total_vertices = builder.vertex_to_old.len();
    let mut component = vec![usize::MAX; total_vertices];
    let mut components = 0;
    for start in 0..total_vertices {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = components;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(edge, end) in &builder.rotations[v] {
                let other = builder.edges[edge.0].vertex_at(end.opposite());
                if component[other.0] == usize::MAX {
                    component[other.0] = component[v];
                    stack.push(other.0);
                }
            }
        }
        components += 1;
    }
    if components != 2 {
        return Err(CutError::CycleNotEssential);
    }

    // Which side holds each original boundary: follow any of its walk darts.
    // A dart on the cycle itself tells the side by its direction (faces lie
    // left of their darts, and left copies carry the cycle's direction).
    let side_of_face = |face: FId| -> usize {
        for dart in &embedding.face(face).darts {
            if let Some(j) = cycle_darts.iter().position(|d| d.edge == dart.edge) {
                let side = if *dart == cycle_darts[j] { 0 } else { 1 };
                let copy = builder.edge_copies[j][side];
                return component[builder.edges[copy.0].tail.0];
            }
            return component[builder.edges[dart.edge.0].tail.0];
        }
        unreachable!("face walks are never empty")
    };
    let [bd0, bd1] = surface.boundary_faces();
    let comp0 = side_of_face(bd0);
    let comp1 = side_of_face(bd1);
    if comp0 == comp1 {
        return Err(CutError::CycleNotEssential);
    }

    let mut halves = Vec::new();
    for (comp, old_boundary) in [(comp0, bd0), (comp1, bd1)] {
        let mut vertex_new = vec![usize::MAX; total_vertices];
        let mut vertex_to_old = Vec::new();
        let mut vertex_names = Vec::new();
        for v in 0..total_vertices {
            if component[v] == comp {
                vertex_new[v] = vertex_to_old.len();
                vertex_to_old.push(builder.vertex_to_old[v]);
                vertex_names.push(builder.vertex_names[v].clone());
            }
        }
        let mut edge_new = vec![usize::MAX; builder.edges.len()];
        let mut edges = Vec::new();
        let mut edge_to_old = Vec::new();
        let mut edge_names = Vec::new();
        for (e, edge) in builder.edges.iter().enumerate() {
            if component[edge.tail.0] != comp {
                continue;
            }
            edge_new[e] = edges.len();
            edges.push(Edge {
                tail: VId(vertex_new[edge.tail.0]),
                head: VId(vertex_new[edge.head.0]),
                weight: edge.weight.clone(),
            });
            edge_to_old.push(builder.edge_to_old[e]);
            edge_names.push(builder.edge_names[e].clone());
        }
        let rotations: Vec<Vec<(EId, End)>> = (0..total_vertices)
            .filter(|v| component[*v] == comp)
            .map(|v| {
                builder.rotations[v]
                    .iter()
                    .map(|&(e, end)| (EId(edge_new[e.0]), end))
                    .collect()
            })
            .collect();
        let new_embedding = Embedding::build(vertex_to_old.len(), edges, rotations)?;

        // Keep the far boundary out of the matching: a cycle tracing the
        // same pair walk as that boundary would otherwise shadow the new
        // cycle face.
        let far = if old_boundary == bd0 { bd1 } else { bd0 };
        let face_to_old = match_faces(
            embedding,
            &new_embedding,
            &vertex_to_old,
            &edge_to_old,
            &[far],
        );
        let kept = face_to_old
            .iter()
            .position(|f| *f == Some(old_boundary))
            .map(FId)
            .expect("original boundary survives on its own side");
        let fresh: Vec<FId> = face_to_old
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_none())
            .map(|(i, _)| FId(i))
            .collect();
        assert_eq!(fresh.len(), 1, "cycle cut creates one new face per side");
        let cycle_face = fresh[0];

        let to_pairs = |face: FId| -> Vec<(VId, EId)> {
            new_embedding
                .face(face)
                .darts
                .iter()
                .map(|d| (new_embedding.dart_source(*d), d.edge))
                .collect()
        };
        let walks = if old_boundary == bd0 {
            [to_pairs(kept), to_pairs(cycle_face)]
        } else {
            [to_pairs(cycle_face), to_pairs(kept)]
        };
        let annulus = Surface::annulus(
            new_embedding,
            [&walks[0], &walks[1]],
            vertex_names,
            edge_names,
        )?;
        halves.push((
            annulus,
            Correspondence {
                vertex_to_old,
                edge_to_old,
                face_to_old,
            },
        ));
    }
    let (side1, map1) = halves.pop().unwrap();
    let (side0, map0) = halves.pop().unwrap();
    Ok(CycleCut {
        side0,
        map0,
        side1,
        map1,
    })
}
