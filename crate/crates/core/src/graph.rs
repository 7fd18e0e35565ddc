//! Weighted and directed graphs, the matrices attached to them, and the
//! volume/cut quantities used throughout the clustering code.
//!
//! Nodes are `0..n`. Undirected edges are enumerated in lexicographic order of
//! `(min endpoint, max endpoint)`; every matrix with one column per edge uses
//! that order. An undirected edge exists iff its weight is strictly positive.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Undirected graph given by a symmetric nonnegative weight matrix with a
/// zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    w: DMatrix<f64>,
}

impl WeightedGraph {
    pub fn from_matrix(w: DMatrix<f64>) -> Result<Self> {
        let n = w.nrows();
        if n == 0 || w.ncols() != n {
            return Err(Error::InvalidGraph(format!(
                "weight matrix must be square and nonempty, got {}x{}",
                w.nrows(),
                w.ncols()
            )));
        }
        for i in 0..n {
            if w[(i, i)] != 0.0 {
                return Err(Error::InvalidGraph(format!("self-loop at node {i}")));
            }
            for j in 0..n {
                let x = w[(i, j)];
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidGraph(format!(
                        "weight ({i}, {j}) = {x} is not a finite nonnegative number"
                    )));
                }
                if x != w[(j, i)] {
                    return Err(Error::InvalidGraph(format!(
                        "weights ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
            }
        }
        Ok(Self { w })
    }

    /// Builds a graph from an undirected edge list. Each unordered pair may
    /// appear at most once.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one node".into()));
        }
        let mut w = DMatrix::zeros(n, n);
        for &(u, v, x) in edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange { index: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            if !(x.is_finite() && x > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has non-positive weight {x}"
                )));
            }
            if w[(u, v)] != 0.0 {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            w[(u, v)] = x;
            w[(v, u)] = x;
        }
        Ok(Self { w })
    }

    pub fn from_unit_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::from_edges(n, &weighted)
    }

    /// Edgeless graph on `n` nodes.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, &[])
    }

    pub fn node_count(&self) -> usize {
        self.w.nrows()
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.w
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.w[(i, j)]
    }

    /// Edges `(i, j, w)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.node_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let x = self.w[(i, j)];
                if x > 0.0 {
                    out.push((i, j, x));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn is_binary(&self) -> bool {
        self.w.iter().all(|&x| x == 0.0 || x == 1.0)
    }

    pub fn degree(&self, i: usize) -> Result<f64> {
        let n = self.node_count();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        Ok(self.w.row(i).sum())
    }

    pub fn degrees(&self) -> DVector<f64> {
        DVector::from_iterator(
            self.node_count(),
            self.w.row_iter().map(|r| r.sum()),
        )
    }

    pub fn degree_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.degrees())
    }

    /// Total volume `vol(V) = 1ᵀ D 1`.
    pub fn total_volume(&self) -> f64 {
        self.w.sum()
    }

    /// First node with zero degree, if any.
    pub fn isolated_vertex(&self) -> Option<usize> {
        self.degrees().iter().position(|&d| d == 0.0)
    }

    /// 0/1 adjacency matrix: `a_ij = 1` iff `w_ij > 0`.
    pub fn adjacency_matrix(&self) -> DMatrix<i64> {
        self.w.map(|x| i64::from(x > 0.0))
    }

    /// Unoriented incidence matrix (`n × |E|`, two `+1` entries per column).
    pub fn unoriented_incidence_matrix(&self) -> Result<DMatrix<i64>> {
        if !self.is_binary() {
            return Err(Error::InvalidGraph(
                "unoriented incidence matrix requires 0/1 weights".into(),
            ));
        }
        let edges = self.edges();
        let mut m = DMatrix::zeros(self.node_count(), edges.len());
        for (e, &(i, j, _)) in edges.iter().enumerate() {
            m[(i, e)] = 1;
            m[(j, e)] = 1;
        }
        Ok(m)
    }

    /// One `(source, target)` pair per edge, in edge order, with directions
    /// drawn from a generator seeded with `seed`.
    pub fn orientation(&self, seed: u64) -> Vec<(usize, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.edges()
            .into_iter()
            .map(|(i, j, _)| if rng.random::<bool>() { (i, j) } else { (j, i) })
            .collect()
    }

    /// Gives every edge of a 0/1 graph a seeded random direction.
    pub fn orient(&self, seed: u64) -> Result<DirectedGraph> {
        if !self.is_binary() {
            return Err(Error::InvalidGraph("orientation requires 0/1 weights".into()));
        }
        DirectedGraph::new(self.node_count(), self.orientation(seed))
    }

    /// Oriented incidence matrix of a seeded orientation; works for any
    /// weights since only the edge set matters.
    pub fn oriented_incidence(&self, seed: u64) -> DMatrix<i64> {
        let dirs = self.orientation(seed);
        let mut m = DMatrix::zeros(self.node_count(), dirs.len());
        for (j, &(s, t)) in dirs.iter().enumerate() {
            m[(s, j)] = 1;
            m[(t, j)] = -1;
        }
        m
    }

    /// Sum of weights `w_ij` over `i ∈ a`, `j ∈ b`.
    pub fn links(&self, a: &[usize], b: &[usize]) -> f64 {
        a.iter()
            .map(|&i| b.iter().map(|&j| self.w[(i, j)]).sum::<f64>())
            .sum()
    }

    pub fn vol(&self, a: &[usize]) -> f64 {
        a.iter().map(|&i| self.w.row(i).sum()).sum()
    }

    pub fn cut(&self, a: &[usize]) -> f64 {
        self.links(a, &complement(self.node_count(), a))
    }

    pub fn assoc(&self, a: &[usize]) -> f64 {
        self.links(a, a)
    }

    /// Normalized cut `Σ cut(A_j) / vol(A_j)`.
    pub fn ncut(&self, p: &Partition) -> Result<f64> {
        if p.node_count() != self.node_count() {
            return Err(Error::Dimension(format!(
                "partition over {} nodes, graph has {}",
                p.node_count(),
                self.node_count()
            )));
        }
        let mut total = 0.0;
        for (j, block) in p.blocks().iter().enumerate() {
            let vol = self.vol(block);
            if vol <= 0.0 {
                return Err(Error::ZeroVolume { block: j });
            }
            total += self.cut(block) / vol;
        }
        Ok(total)
    }

    /// Components of the graph over edges with positive weight, each sorted,
    /// ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if !seen[v] && self.w[(u, v)] > 0.0 {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }
}

/// Sorted complement of `a` in `0..n`.
pub fn complement(n: usize, a: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    for &i in a {
        inside[i] = true;
    }
    (0..n).filter(|&i| !inside[i]).collect()
}

/// Simple directed graph: ordered pairs of distinct nodes, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (k, &(s, t)) in edges.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::IndexOutOfRange { index: s.max(t), n });
            }
            if s == t {
                return Err(Error::InvalidGraph(format!("self-loop at node {s}")));
            }
            if edges[..k].contains(&(s, t)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({s}, {t})")));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of edges leaving or entering `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.n {
            return Err(Error::IndexOutOfRange { index: v, n: self.n });
        }
        Ok(self.edges.iter().filter(|&&(s, t)| s == v || t == v).count())
    }

    pub fn degree_matrix(&self) -> DMatrix<i64> {
        let mut d = DMatrix::zeros(self.n, self.n);
        for &(s, t) in &self.edges {
            d[(s, s)] += 1;
            d[(t, t)] += 1;
        }
        d
    }

    pub fn adjacency_matrix(&self) -> DMatrix<i64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(s, t) in &self.edges {
            a[(s, t)] = 1;
            a[(t, s)] = 1;
        }
        a
    }

    /// Oriented incidence matrix: column `j` has `+1` at the source of edge
    /// `j` and `−1` at its target.
    pub fn incidence_matrix(&self) -> DMatrix<i64> {
        let mut m = DMatrix::zeros(self.n, self.edges.len());
        for (j, &(s, t)) in self.edges.iter().enumerate() {
            m[(s, j)] = 1;
            m[(t, j)] = -1;
        }
        m
    }

    pub fn reversed(&self) -> Self {
        Self {
            n: self.n,
            edges: self.edges.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// Forgets orientation; antiparallel pairs collapse into one unit edge.
    pub fn to_undirected(&self) -> WeightedGraph {
        let a = self.adjacency_matrix().map(|x| x as f64);
        WeightedGraph { w: a }
    }
}

/// Partition of `0..n` into nonempty disjoint blocks. Block order is
/// preserved; use [`Partition::canonical`] to compare partitions as sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput("partition needs at least one block".into()));
        }
        let mut owner = vec![usize::MAX; n];
        for (j, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidInput(format!("block {j} is empty")));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
                if owner[i] != usize::MAX {
                    return Err(Error::InvalidInput(format!("node {i} appears twice")));
                }
                owner[i] = j;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidInput(format!("node {i} is not covered")));
        }
        Ok(Self { n, blocks })
    }

    /// Builds a partition from per-node labels `0..K`; every label must be used.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i);
        }
        Self::new(labels.len(), blocks)
    }

    pub fn bipartition(n: usize, a: &[usize]) -> Result<Self> {
        let mut a = a.to_vec();
        a.sort_unstable();
        Self::new(n, vec![a.clone(), complement(n, &a)])
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (j, block) in self.blocks.iter().enumerate() {
            for &i in block {
                labels[i] = j;
            }
        }
        labels
    }

    /// Blocks sorted internally and ordered by smallest member.
    pub fn canonical(&self) -> Self {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { n: self.n, blocks }
    }

    pub fn same_as(&self, other: &Partition) -> bool {
        self.canonical() == other.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generators;
    use proptest::prelude::*;

    #[test]
    fn g1_degrees_and_matrices() {
        let g1 = fixtures::g1();
        let d: Vec<usize> = (0..5).map(|v| g1.degree(v).unwrap()).collect();
        assert_eq!(d, vec![2, 4, 3, 3, 2]);
        let und = g1.to_undirected();
        let wd: Vec<f64> = (0..5).map(|v| und.degree(v).unwrap()).collect();
        assert_eq!(wd, vec![2.0, 4.0, 3.0, 3.0, 2.0]);
        assert!(g1.degree(5).is_err());
    }

    #[test]
    fn g1_incidence_matches_printed_matrix() {
        let expected = DMatrix::from_row_slice(
            5,
            7,
            &[
                1, 1, 0, 0, 0, 0, 0, //
                -1, 0, -1, -1, 1, 0, 0, //
                0, -1, 1, 0, 0, 0, 1, //
                0, 0, 0, 1, 0, -1, -1, //
                0, 0, 0, 0, -1, 1, 0,
            ],
        );
        let g1 = fixtures::g1();
        assert_eq!(g1.incidence_matrix(), expected);
        assert_eq!(g1.reversed().incidence_matrix(), -expected);
    }

    #[test]
    fn single_edge_incidence() {
        let g = DirectedGraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(g.incidence_matrix(), DMatrix::from_column_slice(2, 1, &[1, -1]));
        let k2 = generators::path(2).unwrap();
        assert_eq!(
            k2.unoriented_incidence_matrix().unwrap(),
            DMatrix::from_column_slice(2, 1, &[1, 1])
        );
    }

    #[test]
    fn path3_unoriented_incidence() {
        let p3 = generators::path(3).unwrap();
        let expected = DMatrix::from_row_slice(3, 2, &[1, 0, 1, 1, 0, 1]);
        assert_eq!(p3.unoriented_incidence_matrix().unwrap(), expected);
    }

    #[test]
    fn unoriented_incidence_rejects_weights() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 0.5)]).unwrap();
        assert!(g.unoriented_incidence_matrix().is_err());
        assert!(g.orient(0).is_err());
    }

    #[test]
    fn adjacency_of_g1_and_g2() {
        let expected = DMatrix::from_row_slice(
            5,
            5,
            &[
                0, 1, 1, 0, 0, //
                1, 0, 1, 1, 1, //
                1, 1, 0, 1, 0, //
                0, 1, 1, 0, 1, //
                0, 1, 0, 1, 0,
            ],
        );
        assert_eq!(fixtures::g1().adjacency_matrix(), expected);
        assert_eq!(fixtures::g2().adjacency_matrix(), expected);
        assert_eq!(WeightedGraph::empty(4).unwrap().adjacency_matrix(), DMatrix::zeros(4, 4));
        let k3 = generators::complete(3).unwrap().adjacency_matrix();
        assert_eq!(k3, DMatrix::from_fn(3, 3, |i, j| i64::from(i != j)));
    }

    #[test]
    fn weighted_triangle_degrees() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)]).unwrap();
        for i in 0..3 {
            assert_eq!(g.degree(i).unwrap(), 1.0);
        }
        let k2 = generators::path(2).unwrap();
        assert_eq!(k2.degree(0).unwrap(), 1.0);
    }

    #[test]
    fn orientation_is_deterministic() {
        let k2 = generators::path(2).unwrap();
        assert_eq!(k2.orient(0).unwrap(), k2.orient(0).unwrap());
        let edgeless = WeightedGraph::empty(3).unwrap();
        assert!(edgeless.orient(7).unwrap().edges().is_empty());
        let g = fixtures::g2();
        let a = g.orient(1).unwrap().incidence_matrix();
        let b = g.orient(2).unwrap().incidence_matrix();
        assert_eq!(&a * a.transpose(), &b * b.transpose());
    }

    #[test]
    fn k2_quantities() {
        let k2 = generators::path(2).unwrap();
        assert_eq!(k2.cut(&[0]), 1.0);
        assert_eq!(k2.vol(&[0]), 1.0);
        assert_eq!(k2.assoc(&[0]), 0.0);
        let p = Partition::new(2, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(k2.ncut(&p).unwrap(), 2.0);
    }

    #[test]
    fn whole_vertex_set_has_no_cut() {
        let g = fixtures::g2();
        let all: Vec<usize> = (0..5).collect();
        assert_eq!(g.cut(&all), 0.0);
        assert_eq!(g.vol(&all), g.degrees().sum());
    }

    #[test]
    fn ncut_of_disconnected_components_is_zero() {
        let g = WeightedGraph::from_unit_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let p = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(g.ncut(&p).unwrap(), 0.0);
        assert_eq!(g.connected_components().len(), 2);
    }

    #[test]
    fn ncut_zero_volume_block_is_an_error() {
        let g = WeightedGraph::from_unit_edges(3, &[(0, 1)]).unwrap();
        let p = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(g.ncut(&p), Err(Error::ZeroVolume { block: 1 }));
    }

    #[test]
    fn components_of_generated_graphs() {
        assert_eq!(generators::ring(12).unwrap().connected_components().len(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = fixtures::random_block_graph(&[3, 4, 2], 0.0, &mut rng);
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2], vec![3, 4, 5, 6], vec![7, 8]]);
    }

    #[test]
    fn invalid_graphs_rejected() {
        let mut w = DMatrix::zeros(2, 2);
        w[(0, 1)] = 1.0;
        assert!(WeightedGraph::from_matrix(w.clone()).is_err());
        w[(1, 0)] = 1.0;
        w[(0, 0)] = 0.1;
        assert!(WeightedGraph::from_matrix(w).is_err());
        assert!(WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 0, 1.0)]).is_err());
        assert!(DirectedGraph::new(2, vec![(0, 0)]).is_err());
        assert!(DirectedGraph::new(2, vec![(0, 1), (0, 1)]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
    }

    fn random_graph_and_sets() -> impl Strategy<Value = (u64, Vec<bool>, Vec<bool>)> {
        (any::<u64>(), prop::collection::vec(any::<bool>(), 6), prop::collection::vec(any::<bool>(), 6))
    }

    fn select(mask: &[bool]) -> Vec<usize> {
        mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    proptest! {
        #[test]
        fn volume_cut_identities((seed, ma, mb) in random_graph_and_sets()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = fixtures::random_weighted_graph(6, 0.6, &mut rng);
            let w = g.weights();
            prop_assert!(w == &w.transpose());
            prop_assert!((0..6).all(|i| w[(i, i)] == 0.0));
            prop_assert!(w.iter().all(|&x| x >= 0.0));
            let a = select(&ma);
            let b = select(&mb);
            let all: Vec<usize> = (0..6).collect();
            let tol = 1e-12 * (1.0 + g.total_volume());
            prop_assert!((g.links(&a, &b) - g.links(&b, &a)).abs() <= tol);
            prop_assert!((g.vol(&a) - g.links(&a, &all)).abs() <= tol);
            prop_assert!((g.cut(&a) + g.assoc(&a) - g.vol(&a)).abs() <= tol);
            prop_assert!((g.cut(&a) - g.cut(&complement(6, &a))).abs() <= tol);
        }
    }
}
