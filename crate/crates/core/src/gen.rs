//! Instance generators: fixed families for goldens and seeded random annuli
//! for fuzzing. All output is deterministic in the parameters and seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::reductions::LayoutInstance;
use crate::scalar::Scalar;
use crate::surface::{EId, Edge, Embedding, End, FId, Surface, VId};

/// How generated edges are weighted.
#[derive(Clone, Debug)]
pub enum WeightSpec {
    Unit,
    /// Independent uniform integers in `lo..=hi`, drawn in edge-id order.
    UniformInt { lo: u32, hi: u32, seed: u64 },
}

impl WeightSpec {
    pub fn assign<W: Scalar>(&self, count: usize) -> Vec<W> {
        match self {
            WeightSpec::Unit => vec![W::one(); count],
            WeightSpec::UniformInt { lo, hi, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..count)
                    .map(|_| W::one().times(rng.gen_range(*lo..=*hi)))
                    .collect()
            }
        }
    }
}

fn edge_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

/// Two vertices joined by `k >= 2` parallel edges. The boundaries are the
/// faces on either side of edge 0, so the sweep crosses the other `k - 2`
/// faces one by one.
pub fn theta<W: Scalar>(k: usize, weights: &WeightSpec) -> Surface<W> {
    assert!(k >= 2, "a theta needs at least two parallel edges");
    let ws = weights.assign::<W>(k);
    let edges = ws
        .into_iter()
        .map(|weight| Edge {
            tail: VId(0),
            head: VId(1),
            weight,
        })
        .collect();
    let rot_u = (0..k).map(|i| (EId(i), End::Tail)).collect();
    let rot_v = (0..k).rev().map(|i| (EId(i), End::Head)).collect();
    let embedding = Embedding::build(2, edges, vec![rot_u, rot_v]).expect("theta embeds");
    let (u, v) = (VId(0), VId(1));
    Surface::annulus(
        embedding,
        [&[(u, EId(0)), (v, EId(1))], &[(u, EId(k - 1)), (v, EId(0))]],
        vec!["u".into(), "v".into()],
        (0..k).map(edge_label).collect(),
    )
    .expect("theta boundaries are faces")
}

/// Concentric rings of `columns` vertices each, consecutive rings joined by
/// spokes. The boundaries are the innermost and outermost ring cycles;
/// `rings - 1` bands of `columns` quads lie between them.
pub fn cylinder_grid<W: Scalar>(rings: usize, columns: usize, weights: &WeightSpec) -> Surface<W> {
    assert!(rings >= 1 && columns >= 1, "grid must have at least one ring");
    let (r_count, c_count) = (rings, columns);
    let num_ring_edges = r_count * c_count;
    let num_spokes = (r_count - 1) * c_count;
    let ws = weights.assign::<W>(num_ring_edges + num_spokes);

    let vid = |r: usize, c: usize| VId(r * c_count + c % c_count);
    let ring = |r: usize, c: usize| EId(r * c_count + c % c_count);
    let spoke = |r: usize, c: usize| EId(num_ring_edges + r * c_count + c);

    let mut edges = Vec::with_capacity(ws.len());
    let mut names = Vec::with_capacity(ws.len());
    for r in 0..r_count {
        for c in 0..c_count {
            edges.push(Edge {
                tail: vid(r, c),
                head: vid(r, c + 1),
                weight: ws[ring(r, c).0].clone(),
            });
            names.push(format!("r{r}c{c}"));
        }
    }
    for r in 0..r_count - 1 {
        for c in 0..c_count {
            edges.push(Edge {
                tail: vid(r, c),
                head: vid(r + 1, c),
                weight: ws[spoke(r, c).0].clone(),
            });
            names.push(format!("s{r}c{c}"));
        }
    }

    // Counterclockwise around a vertex: outward spoke, ring ahead, inward
    // spoke, ring behind.
    let mut rotations = Vec::with_capacity(r_count * c_count);
    for r in 0..r_count {
        for c in 0..c_count {
            let mut rot = Vec::new();
            if r + 1 < r_count {
                rot.push((spoke(r, c), End::Tail));
            }
            rot.push((ring(r, c), End::Tail));
            if r > 0 {
                rot.push((spoke(r - 1, c), End::Head));
            }
            rot.push((ring(r, (c + c_count - 1) % c_count), End::Head));
            rotations.push(rot);
        }
    }

    let embedding =
        Embedding::build(r_count * c_count, edges, rotations).expect("grid embeds");
    let inner: Vec<(VId, EId)> = (0..c_count).map(|c| (vid(0, c), ring(0, c))).collect();
    let outer: Vec<(VId, EId)> = (0..c_count)
        .map(|j| {
            let c = (c_count - 1 - j) % c_count;
            (vid(r_count - 1, c + 1), ring(r_count - 1, c))
        })
        .collect();
    let vertex_names = (0..r_count)
        .flat_map(|r| (0..c_count).map(move |c| format!("v{r}c{c}")))
        .collect();
    Surface::annulus(embedding, [&inner, &outer], vertex_names, names)
        .expect("grid ring cycles are faces")
}

/// A seeded random annulus: two rings of random sizes joined by a random
/// noncrossing set of rungs. Every internal face is a polygon between
/// consecutive rungs, so `faces == rungs` and `edges == p + q + rungs`.
pub fn random_annulus<W: Scalar>(
    max_faces: usize,
    max_edges: usize,
    seed: u64,
    weights: &WeightSpec,
) -> Surface<W> {
    assert!(max_faces >= 1 && max_edges >= 5, "budget too small for a band");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (p, q, r) = loop {
        let p = rng.gen_range(2..=4usize);
        let q = rng.gen_range(2..=4usize);
        let cap = max_faces.min(max_edges.saturating_sub(p + q));
        if cap >= 1 {
            break (p, q, rng.gen_range(1..=cap));
        }
    };

    // Attachment points: sorted stems on each ring, paired after a random
    // cyclic shift. Both sequences stay cyclically monotone, so no two rungs
    // cross.
    let mut inner_at: Vec<usize> = (0..r).map(|_| rng.gen_range(0..p)).collect();
    let mut outer_at: Vec<usize> = (0..r).map(|_| rng.gen_range(0..q)).collect();
    inner_at.sort_unstable();
    outer_at.sort_unstable();
    let shift = rng.gen_range(0..r);
    let outer_of = |j: usize| outer_at[(j + shift) % r];

    let ws = weights.assign::<W>(p + q + r);
    let vin = |i: usize| VId(i % p);
    let vout = |k: usize| VId(p + k % q);
    let ring_in = |i: usize| EId(i % p);
    let ring_out = |k: usize| EId(p + k % q);
    let rung = |j: usize| EId(p + q + j);

    let mut edges = Vec::new();
    let mut names = Vec::new();
    for i in 0..p {
        edges.push(Edge {
            tail: vin(i),
            head: vin(i + 1),
            weight: ws[i].clone(),
        });
        names.push(format!("a{i}"));
    }
    for k in 0..q {
        edges.push(Edge {
            tail: vout(k),
            head: vout(k + 1),
            weight: ws[p + k].clone(),
        });
        names.push(format!("b{k}"));
    }
    for j in 0..r {
        edges.push(Edge {
            tail: vin(inner_at[j]),
            head: vout(outer_of(j)),
            weight: ws[p + q + j].clone(),
        });
        names.push(format!("r{j}"));
    }

    let mut rotations = Vec::new();
    for i in 0..p {
        let mut rot = vec![(ring_in((i + p - 1) % p), End::Head)];
        for j in 0..r {
            if inner_at[j] == i {
                rot.push((rung(j), End::Tail));
            }
        }
        rot.push((ring_in(i), End::Tail));
        rotations.push(rot);
    }
    for k in 0..q {
        let mut rot = vec![(ring_out(k), End::Tail)];
        // Sweep the stems in descending outer order; the rung ids follow the
        // inner order, shifted.
        for m in (0..r).rev() {
            if outer_at[m] == k {
                rot.push((rung((m + r - shift) % r), End::Head));
            }
        }
        rot.push((ring_out((k + q - 1) % q), End::Head));
        rotations.push(rot);
    }

    let embedding = Embedding::build(p + q, edges, rotations).expect("band embeds");
    let inner_walk: Vec<(VId, EId)> = (0..p).map(|i| (vin(i), ring_in(i))).collect();
    let outer_walk: Vec<(VId, EId)> = (0..q)
        .map(|j| {
            let k = (q - 1 - j) % q;
            (vout(k + 1), ring_out(k))
        })
        .collect();
    let vertex_names = (0..p)
        .map(|i| format!("u{i}"))
        .chain((0..q).map(|k| format!("w{k}")))
        .collect();
    Surface::annulus(embedding, [&inner_walk, &outer_walk], vertex_names, names)
        .expect("ring cycles are faces")
}

/// A random connected plane graph for layout work: a tree with random
/// rotations (one face, necessarily the outer one) or, on larger draws, a
/// plain cycle with a random side out. Deterministic in the parameters.
pub fn random_layout<W: Scalar>(
    max_vertices: usize,
    weights: &WeightSpec,
    seed: u64,
) -> LayoutInstance<W> {
    assert!(max_vertices >= 2, "a layout needs an edge");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_vertices);
    let cycle = n >= 3 && rng.gen_bool(0.5);
    let num_edges = if cycle { n } else { n - 1 };
    let ws = weights.assign::<W>(num_edges);

    let mut edges: Vec<Edge<W>> = Vec::new();
    let mut rotations: Vec<Vec<(EId, End)>> = vec![Vec::new(); n];
    let mut outer = FId(0);
    if cycle {
        for (i, weight) in ws.into_iter().enumerate() {
            edges.push(Edge {
                tail: VId(i),
                head: VId((i + 1) % n),
                weight,
            });
        }
        for v in 0..n {
            rotations[v] = vec![(EId(v), End::Tail), (EId((v + n - 1) % n), End::Head)];
        }
        if rng.gen_bool(0.5) {
            outer = FId(1);
        }
    } else {
        for (i, weight) in ws.into_iter().enumerate() {
            let child = i + 1;
            let parent = rng.gen_range(0..child);
            edges.push(Edge {
                tail: VId(parent),
                head: VId(child),
                weight,
            });
            let slot = rng.gen_range(0..=rotations[parent].len());
            rotations[parent].insert(slot, (EId(i), End::Tail));
            rotations[child].push((EId(i), End::Head));
        }
    }

    let embedding = Embedding::build(n, edges, rotations).expect("trees and cycles embed");
    LayoutInstance {
        embedding,
        outer,
        vertex_names: (0..n).map(|v| format!("v{v}")).collect(),
        edge_names: (0..num_edges).map(edge_label).collect(),
    }
}
