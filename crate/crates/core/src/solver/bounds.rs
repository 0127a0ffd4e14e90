//! Cheap certified lower bounds on the height of any homotopy.

use crate::scalar::Scalar;
use crate::surface::{Dart, Surface, VId};

/// Lower bounds with their sources. `lower` combines everything that is
/// valid unconditionally; `diameter` is reported for context but does not
/// bound the height (a homotopy's levels need not pass through any fixed
/// pair of vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds<W> {
    pub lower: W,
    pub boundary0: W,
    pub boundary1: W,
    /// Half the largest face perimeter: when a face is flipped, the two
    /// adjacent levels jointly cover its whole boundary.
    pub half_max_face_perimeter: W,
    pub diameter: W,
}

fn dijkstra_from<W: Scalar>(surface: &Surface<W>, source: VId) -> Vec<Option<W>> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let emb = surface.embedding();
    let mut dist: Vec<Option<W>> = vec![None; emb.num_vertices()];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((W::zero(), source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        match &dist[v.0] {
            Some(best) if *best <= d => continue,
            _ => {}
        }
        dist[v.0] = Some(d.clone());
        for (e, end) in emb.rotation(v) {
            let dart = Dart::new(*e, crate::surface::Dir::from_source_end(*end));
            let to = emb.dart_target(dart);
            let nd = d.clone() + emb.weight(*e).clone();
            if dist[to.0].is_none() {
                heap.push(Reverse((nd, to)));
            }
        }
    }
    dist
}

pub fn lower_bounds<W: Scalar>(surface: &Surface<W>) -> Bounds<W> {
    let emb = surface.embedding();
    let boundary0 = emb.walk_weight(&surface.boundary_curve_darts(0));
    let boundary1 = emb.walk_weight(&surface.boundary_curve_darts(1));

    let mut half = W::zero();
    for face in emb.faces() {
        let h = emb.walk_weight(&face.darts).half();
        half = half.max(h);
    }

    let mut diameter = W::zero();
    for v in 0..emb.num_vertices() {
        for d in dijkstra_from(surface, VId(v)).into_iter().flatten() {
            diameter = diameter.max(d);
        }
    }

    let lower = boundary0
        .clone()
        .max(boundary1.clone())
        .max(half.clone());
    Bounds {
        lower,
        boundary0,
        boundary1,
        half_max_face_perimeter: half,
        diameter,
    }
}
