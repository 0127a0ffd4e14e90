//! Shortest vertex-simple paths with a deterministic lexicographic tie-break.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use super::{Dart, Dir, EId, Embedding, VId};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("no path between the given vertex sets")]
    NoPath,
    #[error("empty source or target set")]
    EmptySet,
}

/// A shortest path across the embedding's graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortestPath<W> {
    /// Vertices visited, in order; a zero-length path has exactly one.
    pub vertices: Vec<VId>,
    /// Darts traversed; empty for a zero-length path.
    pub darts: Vec<Dart>,
    pub weight: W,
}

/// Per-vertex label: distance plus the edge-id sequence used to get there.
///
/// Order compares weight first and the edge sequence lexicographically
/// second, so ties are broken the same way on every run. Comparing full
/// sequences is affordable at this toolkit's instance sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Label<W> {
    weight: W,
    edge_seq: Vec<EId>,
}

impl<W: Scalar> Label<W> {
    fn key(&self) -> (&W, &Vec<EId>) {
        (&self.weight, &self.edge_seq)
    }
}

struct HeapEntry<W> {
    label: Label<W>,
    vertex: VId,
}

impl<W: Scalar> PartialEq for HeapEntry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Scalar> Eq for HeapEntry<W> {}

impl<W: Scalar> Ord for HeapEntry<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we pop the smallest label.
        other
            .label
            .key()
            .cmp(&self.label.key())
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl<W: Scalar> PartialOrd for HeapEntry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimum-weight walk without repeated vertices from any source to any
/// target, ties broken lexicographically on (weight, edge-id sequence) and
/// then by target vertex id.
pub fn shortest_path<W: Scalar>(
    embedding: &Embedding<W>,
    sources: &[VId],
    targets: &[VId],
) -> Result<ShortestPath<W>, PathError> {
    if sources.is_empty() || targets.is_empty() {
        return Err(PathError::EmptySet);
    }
    let n = embedding.num_vertices();
    let mut best: Vec<Option<Label<W>>> = vec![None; n];
    let mut parent: Vec<Option<(VId, Dart)>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();

    let mut sorted_sources: Vec<VId> = sources.to_vec();
    sorted_sources.sort();
    sorted_sources.dedup();
    for &s in &sorted_sources {
        let label = Label {
            weight: W::zero(),
            edge_seq: Vec::new(),
        };
        best[s.0] = Some(label.clone());
        heap.push(HeapEntry { label, vertex: s });
    }

    while let Some(HeapEntry { label, vertex }) = heap.pop() {
        if settled[vertex.0] {
            continue;
        }
        if best[vertex.0].as_ref().map(|b| b.key()) != Some(label.key()) {
            continue;
        }
        settled[vertex.0] = true;
        for &(edge, end) in embedding.rotation(vertex) {
            // Only consider the traversal leaving through this end, so loops
            // are explored once per direction.
            if embedding.edge(edge).vertex_at(end) != vertex {
                continue;
            }
            let dart = Dart::new(edge, Dir::from_source_end(end));
            let to = embedding.dart_target(dart);
            if settled[to.0] {
                continue;
            }
            let mut edge_seq = label.edge_seq.clone();
            edge_seq.push(edge);
            let candidate = Label {
                weight: label.weight.clone() + embedding.weight(edge).clone(),
                edge_seq,
            };
            let improves = match &best[to.0] {
                None => true,
                Some(current) => candidate.key() < current.key(),
            };
            if improves {
                best[to.0] = Some(candidate.clone());
                parent[to.0] = Some((vertex, dart));
                heap.push(HeapEntry {
                    label: candidate,
                    vertex: to,
                });
            }
        }
    }

    let mut chosen: Option<VId> = None;
    let mut sorted_targets: Vec<VId> = targets.to_vec();
    sorted_targets.sort();
    sorted_targets.dedup();
    for &t in &sorted_targets {
        let Some(label) = &best[t.0] else { continue };
        let better = match chosen {
            None => true,
            Some(current) => {
                let cur = best[current.0].as_ref().unwrap();
                label.key() < cur.key()
            }
        };
        if better {
            chosen = Some(t);
        }
    }
    let target = chosen.ok_or(PathError::NoPath)?;

    let mut vertices = vec![target];
    let mut darts = Vec::new();
    let mut cursor = target;
    while let Some((prev, dart)) = parent[cursor.0] {
        darts.push(dart);
        vertices.push(prev);
        cursor = prev;
    }
    vertices.reverse();
    darts.reverse();
    let weight = best[target.0].as_ref().unwrap().weight.clone();
    Ok(ShortestPath {
        vertices,
        darts,
        weight,
    })
}
