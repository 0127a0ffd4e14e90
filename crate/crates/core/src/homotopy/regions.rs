//! Where a drawn level curve sits on the surface.
//!
//! A realized curve decomposes the surface into cells: the middle of each
//! face, the slabs an edge corridor is cut into by its strands, and the
//! sectors a vertex disk is cut into by the chords of the visits passing
//! through. Gluing cells back together along the adjacencies the curve does
//! not block recovers the complement regions, which is enough to decide
//! whether a curve is embedded, whether it separates the two boundaries, and
//! which faces lie behind it.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::scalar::Scalar;
use crate::surface::{Dart, EId, End, FId, Surface, SurfaceKind, VId};

use super::curve::Curve;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    #[error("curve is not embedded: strands cross at vertex {vertex:?}")]
    NotSimple { vertex: VId },
    #[error("curve does not separate the two boundaries")]
    InessentialLevel,
    #[error("anchored curve must run from anchor s to anchor t of a disk")]
    NotAnchored,
    #[error("closed curves live on annuli, anchored curves on disks")]
    WrongCurveShape,
    #[error("boundary arc is empty; the anchor has no corner to sit in")]
    DegenerateArc,
}

/// A port on the circle around a vertex: either a strand of the curve
/// entering the adjacent edge corridor, or an endpoint of an anchored curve
/// pinned in a boundary corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Port {
    Strand { traversal: usize, at_source: bool },
    Anchor(usize),
}

struct Circle {
    ports: Vec<Port>,
    /// Rotation slot each port sits in (anchors take the slot whose trailing
    /// gap holds them). Nondecreasing.
    slots: Vec<usize>,
    /// Port index pairs, one chord per visit of the curve to this vertex.
    chords: Vec<(usize, usize)>,
}

impl Circle {
    fn crossing(&self) -> bool {
        let norm = |(a, b): (usize, usize)| if a < b { (a, b) } else { (b, a) };
        for (i, &x) in self.chords.iter().enumerate() {
            let (a, b) = norm(x);
            for &y in &self.chords[i + 1..] {
                let (c, d) = norm(y);
                let inside = |p: usize| a < p && p < b;
                if inside(c) != inside(d) {
                    return true;
                }
            }
        }
        false
    }

    /// Region id of each gap (gap `g` follows port `g`), and the region
    /// count. Chords must be non-crossing, so cutting the circle before port
    /// 0 turns them into nested intervals and a stack scan labels the gaps.
    fn gap_regions(&self) -> (Vec<usize>, usize) {
        let p = self.ports.len();
        if p == 0 {
            return (Vec::new(), 1);
        }
        let mut chord_of = vec![usize::MAX; p];
        for (c, &(a, b)) in self.chords.iter().enumerate() {
            chord_of[a] = c;
            chord_of[b] = c;
        }
        let mut opened = vec![false; self.chords.len()];
        let mut stack = vec![0usize];
        let mut next = 1;
        let mut region = vec![0usize; p];
        for i in 0..p {
            let c = chord_of[i];
            debug_assert_ne!(c, usize::MAX, "port without a chord");
            if !opened[c] {
                opened[c] = true;
                stack.push(next);
                next += 1;
            } else {
                stack.pop();
            }
            region[i] = *stack.last().unwrap();
        }
        (region, next)
    }

    /// Strand ports of edge `edge` in this circle's slot for `end`, in
    /// circle order.
    fn strand_ports(&self, walk: &[Dart], edge: EId, end: End) -> Vec<usize> {
        (0..self.ports.len())
            .filter(|&i| match self.ports[i] {
                Port::Strand {
                    traversal,
                    at_source,
                } => {
                    let d = walk[traversal];
                    let e = if at_source {
                        d.dir.source_end()
                    } else {
                        d.dir.target_end()
                    };
                    d.edge == edge && e == end
                }
                Port::Anchor(_) => false,
            })
            .collect()
    }

    /// Gap holding the face corner that follows rotation slot `b`.
    fn corner_gap(&self, b: usize) -> Option<usize> {
        let p = self.ports.len();
        if p == 0 {
            return None;
        }
        let le = self.slots.partition_point(|&s| s <= b);
        Some((le + p - 1) % p)
    }

    /// Gap holding the corridor mouth of rotation slot `b` itself. Anchor
    /// ports pinned at slot `b` sit in the corner past the mouth, so only
    /// ports of earlier slots count.
    fn mouth_gap(&self, b: usize) -> Option<usize> {
        let p = self.ports.len();
        if p == 0 {
            return None;
        }
        let lt = self.slots.partition_point(|&s| s < b);
        Some((lt + p - 1) % p)
    }
}

fn build_circles<W: Scalar>(
    surface: &Surface<W>,
    curve: &Curve,
) -> Result<Vec<Circle>, RegionError> {
    let emb = surface.embedding();
    let walk = curve.walk();
    let len = walk.len();

    match (curve.is_closed(), surface.kind()) {
        (true, SurfaceKind::Annulus) | (false, SurfaceKind::Disk) => {}
        _ => return Err(RegionError::WrongCurveShape),
    }

    // Anchor corners: each curve endpoint sits in the boundary face's corner
    // at its anchor, the gap after the slot the boundary arc departs through.
    let anchor_slots: [Option<(VId, usize)>; 2] = if curve.is_closed() {
        [None, None]
    } else {
        let arcs = surface.disk_arcs().ok_or(RegionError::NotAnchored)?;
        let [s, t] = surface.anchors().ok_or(RegionError::NotAnchored)?;
        let end = if len == 0 {
            curve.start()
        } else {
            emb.dart_target(walk[len - 1])
        };
        if curve.start() != s || end != t {
            return Err(RegionError::NotAnchored);
        }
        let mut placed = [None, None];
        for (a, anchor) in [(0, s), (1, t)] {
            let d = *arcs[a].first().ok_or(RegionError::DegenerateArc)?;
            let (v, slot) = emb.end_position(d.edge, d.dir.source_end());
            debug_assert_eq!(v, anchor);
            placed[a] = Some((anchor, slot));
        }
        placed
    };

    // Strands per edge end, by rank. Ranks are unique per edge, so the sort
    // orders each end's list consistently with the transversal frame.
    let mut by_end: HashMap<(EId, End), Vec<(u32, usize, bool)>> = HashMap::new();
    for (i, d) in walk.iter().enumerate() {
        let rank = curve.ranks()[i];
        by_end
            .entry((d.edge, d.dir.source_end()))
            .or_default()
            .push((rank, i, true));
        by_end
            .entry((d.edge, d.dir.target_end()))
            .or_default()
            .push((rank, i, false));
    }
    for list in by_end.values_mut() {
        list.sort_unstable();
    }

    let mut circles = Vec::with_capacity(emb.num_vertices());
    for v in 0..emb.num_vertices() {
        let mut ports = Vec::new();
        let mut slots = Vec::new();
        for (slot, &(e, end)) in emb.rotation(VId(v)).iter().enumerate() {
            if emb.end_position(e, end) != (VId(v), slot) {
                // A loop lists both ends here; each slot owns one of them.
                continue;
            }
            if let Some(list) = by_end.get(&(e, end)) {
                // Counterclockwise across the corridor mouth: ranks ascend at
                // the head of the edge and descend at the tail.
                let push = |ports: &mut Vec<Port>, slots: &mut Vec<usize>, i: usize, src: bool| {
                    ports.push(Port::Strand {
                        traversal: i,
                        at_source: src,
                    });
                    slots.push(slot);
                };
                match end {
                    End::Head => {
                        for &(_, i, src) in list.iter() {
                            push(&mut ports, &mut slots, i, src);
                        }
                    }
                    End::Tail => {
                        for &(_, i, src) in list.iter().rev() {
                            push(&mut ports, &mut slots, i, src);
                        }
                    }
                }
            }
            for (a, placed) in anchor_slots.iter().enumerate() {
                if *placed == Some((VId(v), slot)) {
                    ports.push(Port::Anchor(a));
                    slots.push(slot);
                }
            }
        }
        circles.push(Circle {
            ports,
            slots,
            chords: Vec::new(),
        });
    }

    // One chord per visit, joining the incoming and outgoing ports.
    let mut port_index: HashMap<(VId, Port), usize> = HashMap::new();
    for (v, circle) in circles.iter().enumerate() {
        for (i, &p) in circle.ports.iter().enumerate() {
            port_index.insert((VId(v), p), i);
        }
    }
    let positions = if curve.is_closed() && len == 0 {
        0
    } else {
        curve.num_vertex_positions()
    };
    for pos in 0..positions {
        let v = curve.vertex_at(emb, pos);
        let inbound = if curve.is_closed() {
            Port::Strand {
                traversal: (pos + len - 1) % len,
                at_source: false,
            }
        } else if pos == 0 {
            Port::Anchor(0)
        } else {
            Port::Strand {
                traversal: pos - 1,
                at_source: false,
            }
        };
        let outbound = if curve.is_closed() || pos < len {
            Port::Strand {
                traversal: pos,
                at_source: true,
            }
        } else {
            Port::Anchor(1)
        };
        let a = port_index[&(v, inbound)];
        let b = port_index[&(v, outbound)];
        circles[v.0].chords.push((a, b));
    }

    Ok(circles)
}

/// Whether the realized curve is embedded: no two chords cross at any
/// vertex. Strands never cross inside an edge corridor (ranks are an order,
/// not a braid), so the vertices decide.
pub fn is_simple<W: Scalar>(surface: &Surface<W>, curve: &Curve) -> Result<bool, RegionError> {
    let circles = build_circles(surface, curve)?;
    Ok(circles.iter().all(|c| !c.crossing()))
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// The faces behind an embedded separating curve: for annuli the internal
/// faces on the boundary-0 side, for disks the internal faces between
/// boundary arc 0 and the curve.
pub fn swept_faces<W: Scalar>(
    surface: &Surface<W>,
    curve: &Curve,
) -> Result<BTreeSet<FId>, RegionError> {
    let emb = surface.embedding();
    let circles = build_circles(surface, curve)?;
    for (v, circle) in circles.iter().enumerate() {
        if circle.crossing() {
            return Err(RegionError::NotSimple { vertex: VId(v) });
        }
    }

    let regions: Vec<(Vec<usize>, usize)> = circles.iter().map(|c| c.gap_regions()).collect();

    // Cell indices: faces, then slabs per edge, then sectors per vertex.
    let num_faces = emb.faces().len();
    let mut slab_base = vec![0usize; emb.edges().len()];
    let mut at = num_faces;
    for e in 0..emb.edges().len() {
        slab_base[e] = at;
        at += curve.strands_on(EId(e)) + 1;
    }
    let mut sector_base = vec![0usize; emb.num_vertices()];
    for v in 0..emb.num_vertices() {
        sector_base[v] = at;
        at += regions[v].1;
    }
    let mut dsu = Dsu::new(at);

    // A disk's boundary face is not part of the surface; nothing connects
    // through it. Annulus boundary faces are ordinary regions (the caps).
    let wall = |f: FId| surface.kind() == SurfaceKind::Disk && surface.is_boundary_face(f);

    let sector = |v: VId, gap: Option<usize>| -> usize {
        match gap {
            Some(g) => sector_base[v.0] + regions[v.0].0[g],
            None => sector_base[v.0],
        }
    };

    for e in 0..emb.edges().len() {
        let e = EId(e);
        let k = curve.strands_on(e);

        // Extreme slabs lie against the faces flanking the edge.
        let fl = emb.face_left_of(Dart::fwd(e));
        let fr = emb.face_left_of(Dart::bwd(e));
        if !wall(fl) {
            dsu.union(fl.0, slab_base[e.0]);
        }
        if !wall(fr) {
            dsu.union(fr.0, slab_base[e.0] + k);
        }

        // Each slab continues into a vertex sector at either end.
        for end in [End::Tail, End::Head] {
            let (v, slot) = emb.end_position(e, end);
            let circle = &circles[v.0];
            let p = circle.ports.len();
            if k == 0 {
                dsu.union(slab_base[e.0], sector(v, circle.mouth_gap(slot)));
                continue;
            }
            let q = circle.strand_ports(curve.walk(), e, end);
            debug_assert_eq!(q.len(), k);
            for j in 0..=k {
                let gap = match end {
                    End::Head => {
                        if j == 0 {
                            (q[0] + p - 1) % p
                        } else {
                            q[j - 1]
                        }
                    }
                    End::Tail => {
                        if j == k {
                            (q[0] + p - 1) % p
                        } else {
                            q[k - 1 - j]
                        }
                    }
                };
                dsu.union(slab_base[e.0] + j, sector(v, Some(gap)));
            }
        }
    }

    // Every face touches the sector in each of its corners.
    for v in 0..emb.num_vertices() {
        let v = VId(v);
        for slot in 0..emb.rotation(v).len() {
            let f = emb.corner_face(v, slot);
            if wall(f) {
                continue;
            }
            dsu.union(f.0, sector(v, circles[v.0].corner_gap(slot)));
        }
    }

    let (seed0, seed1) = match surface.kind() {
        SurfaceKind::Annulus => {
            let [b0, b1] = surface.boundary_faces();
            (b0.0, b1.0)
        }
        SurfaceKind::Disk => {
            // The cell against the wall along an arc's first edge lies on
            // that arc's side of the curve.
            let arcs = surface.disk_arcs().unwrap();
            let slab_by_wall = |d: Dart| -> Result<usize, RegionError> {
                let k = curve.strands_on(d.edge);
                Ok(match d.dir {
                    crate::surface::Dir::Fwd => slab_base[d.edge.0],
                    crate::surface::Dir::Bwd => slab_base[d.edge.0] + k,
                })
            };
            let d0 = *arcs[0].first().ok_or(RegionError::DegenerateArc)?;
            let d1 = *arcs[1].first().ok_or(RegionError::DegenerateArc)?;
            (slab_by_wall(d0)?, slab_by_wall(d1)?)
        }
    };

    if dsu.find(seed0) == dsu.find(seed1) {
        return Err(RegionError::InessentialLevel);
    }

    let root = dsu.find(seed0);
    let mut swept = BTreeSet::new();
    for f in surface.internal_faces() {
        if dsu.find(f.0) == root {
            swept.insert(f);
        }
    }
    Ok(swept)
}
