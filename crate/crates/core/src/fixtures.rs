//! Named instances and seeded random graphs used by tests, examples and the
//! acceptance suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generators;
use crate::graph::{DirectedGraph, WeightedGraph};

/// The five-node directed graph with seven edges, in the edge order of its
/// printed incidence matrix.
pub fn g1() -> DirectedGraph {
    DirectedGraph::new(
        5,
        vec![(0, 1), (0, 2), (2, 1), (3, 1), (1, 4), (4, 3), (2, 3)],
    )
    .expect("g1 is a simple digraph")
}

/// Undirected version of [`g1`].
pub fn g2() -> WeightedGraph {
    g1().to_undirected()
}

/// The 4-cycle `0-1-3-2-0`, whose Laplacian spectrum is `(0, 2, 2, 4)`.
pub fn square() -> WeightedGraph {
    WeightedGraph::from_unit_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

/// Two unit triangles `{0,1,2}` and `{3,4,5}` joined by the edge `2-3`.
pub fn bridged_triangles(bridge: f64) -> WeightedGraph {
    let mut edges = triangle_edges(0);
    edges.extend(triangle_edges(3));
    edges.push((2, 3, bridge));
    WeightedGraph::from_edges(6, &edges).unwrap()
}

/// Three unit triangles joined in a ring by the edges `2-3`, `5-6`, `8-0`.
pub fn three_triangles(bridge: f64) -> WeightedGraph {
    let mut edges = triangle_edges(0);
    edges.extend(triangle_edges(3));
    edges.extend(triangle_edges(6));
    edges.extend([(2, 3, bridge), (5, 6, bridge), (8, 0, bridge)]);
    WeightedGraph::from_edges(9, &edges).unwrap()
}

fn triangle_edges(base: usize) -> Vec<(usize, usize, f64)> {
    vec![(base, base + 1, 1.0), (base + 1, base + 2, 1.0), (base, base + 2, 1.0)]
}

/// Star with node 0 at the centre.
pub fn star(leaves: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    WeightedGraph::from_unit_edges(leaves + 1, &edges).unwrap()
}

/// Two 4-cliques `{0..3}` and `{4..7}` joined by the edges `2-4` and `3-5`,
/// plus a pendant node 8 hanging off node 0. The minimum cut isolates the
/// pendant; the best normalized cut separates the cliques.
pub fn pendant_cliques() -> WeightedGraph {
    let mut edges = Vec::new();
    for base in [0, 4] {
        for i in base..base + 4 {
            for j in (i + 1)..base + 4 {
                edges.push((i, j));
            }
        }
    }
    edges.extend([(2, 4), (3, 5), (0, 8)]);
    WeightedGraph::from_unit_edges(9, &edges).unwrap()
}

/// Each pair is joined with probability `p`, weight uniform in `[0.1, 1)`.
/// The result may be disconnected.
pub fn random_weighted_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((i, j, rng.random_range(0.1..1.0)));
            }
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

/// Random weighted graph guaranteed connected by a random spanning path.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> WeightedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut w = random_weighted_graph(n, p, rng).weights().clone();
    for pair in order.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        if w[(u, v)] == 0.0 {
            let x = rng.random_range(0.1..1.0);
            w[(u, v)] = x;
            w[(v, u)] = x;
        }
    }
    WeightedGraph::from_matrix(w).unwrap()
}

/// Random 0/1 graph.
pub fn random_binary_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    WeightedGraph::from_unit_edges(n, &edges).unwrap()
}

/// Block-diagonal graph: one random connected block per entry of `sizes`,
/// consecutive blocks joined by an edge of weight `bridge` (none if zero).
pub fn random_block_graph<R: Rng + ?Sized>(sizes: &[usize], bridge: f64, rng: &mut R) -> WeightedGraph {
    let n: usize = sizes.iter().sum();
    let mut w = nalgebra::DMatrix::zeros(n, n);
    let mut offset = 0;
    for &s in sizes {
        if s > 1 {
            let block = random_connected_graph(s, 0.5, rng);
            w.view_mut((offset, offset), (s, s)).copy_from(block.weights());
        }
        offset += s;
    }
    if bridge > 0.0 {
        let mut start = 0;
        for pair in sizes.windows(2) {
            let last = start + pair[0] - 1;
            let next = start + pair[0];
            w[(last, next)] = bridge;
            w[(next, last)] = bridge;
            start += pair[0];
        }
    }
    WeightedGraph::from_matrix(w).unwrap()
}

/// Deterministic collection of connected test graphs with at most `max_n`
/// nodes.
pub fn corpus(max_n: usize) -> Vec<(String, WeightedGraph)> {
    let mut out: Vec<(String, WeightedGraph)> = vec![
        ("k2".into(), generators::path(2).unwrap()),
        ("g2".into(), g2()),
        ("square".into(), square()),
        ("star4".into(), star(4)),
        ("pendant_cliques".into(), pendant_cliques()),
        ("three_triangles_0.01".into(), three_triangles(0.01)),
        ("three_triangles_0.2".into(), three_triangles(0.2)),
    ];
    for b in [0.01, 0.1, 0.5] {
        out.push((format!("bridged_triangles_{b}"), bridged_triangles(b)));
    }
    for n in 3..=10 {
        out.push((format!("path{n}"), generators::path(n).unwrap()));
        out.push((format!("ring{n}"), generators::ring(n).unwrap()));
    }
    for n in 3..=7 {
        out.push((format!("complete{n}"), generators::complete(n).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 4..=10 {
        for k in 0..3 {
            let p = [0.3, 0.5, 0.8][k];
            out.push((format!("random{n}_{k}"), random_connected_graph(n, p, &mut rng)));
        }
    }
    out.retain(|(_, g)| g.node_count() <= max_n);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_graphs_are_connected() {
        for (name, g) in corpus(10) {
            assert!(g.is_connected(), "{name} is disconnected");
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        assert_eq!(corpus(8), corpus(8));
    }
}
