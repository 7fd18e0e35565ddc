//! Unit-weight test graphs.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::io::parse_graph;

const BUCKY: &str = include_str!("../data/bucky.txt");

pub fn ring(n: usize) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("ring needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    WeightedGraph::from_unit_edges(n, &edges)
}

pub fn path(n: usize) -> Result<WeightedGraph> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("path needs n >= 2, got {n}")));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    WeightedGraph::from_unit_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<WeightedGraph> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("complete graph needs n >= 2, got {n}")));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    WeightedGraph::from_unit_edges(n, &edges)
}

/// Skeleton of the truncated icosahedron: 60 nodes, 90 edges, 3-regular.
pub fn bucky() -> WeightedGraph {
    parse_graph(BUCKY).expect("bundled bucky edge list is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring12_shape() {
        let g = ring(12).unwrap();
        assert_eq!(g.node_count(), 12);
        assert_eq!(g.edge_count(), 12);
        assert!(g.degrees().iter().all(|&d| d == 2.0));
    }

    #[test]
    fn path2_is_k2() {
        let k2 = WeightedGraph::from_unit_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(path(2).unwrap(), k2);
        assert_eq!(complete(2).unwrap(), k2);
    }

    #[test]
    fn bucky_is_cubic() {
        let g = bucky();
        assert_eq!(g.node_count(), 60);
        assert_eq!(g.edge_count(), 90);
        assert!(g.degrees().iter().all(|&d| d == 3.0));
        assert!(g.is_connected());
    }

    #[test]
    fn invalid_sizes() {
        assert!(ring(2).is_err());
        assert!(path(1).is_err());
        assert!(complete(1).is_err());
    }
}
