//! Plain-text edge-list format.
//!
//! ```text
//! # comment
//! nodes 5        <- optional, must be the first non-comment line
//! 0 1 1.0        <- u v w, weight defaults to 1.0
//! 1 2
//! ```
//!
//! Without a `nodes` header the node count is `1 + max id` and every id below
//! that must occur in some edge.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut declared: Option<usize> = None;
    let mut seen_content = false;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut max_id: Option<(usize, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "nodes" {
            if seen_content {
                return Err(parse_err(line_no, "`nodes` header must precede all edges"));
            }
            if tokens.len() != 2 {
                return Err(parse_err(line_no, "expected `nodes N`"));
            }
            let n: usize = tokens[1]
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid node count `{}`", tokens[1])))?;
            if n == 0 {
                return Err(parse_err(line_no, "node count must be positive"));
            }
            declared = Some(n);
            seen_content = true;
            continue;
        }
        seen_content = true;
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(parse_err(line_no, "expected `u v [w]`"));
        }
        let node = |t: &str| -> Result<usize> {
            t.parse().map_err(|_| parse_err(line_no, format!("invalid node id `{t}`")))
        };
        let u = node(tokens[0])?;
        let v = node(tokens[1])?;
        let w = match tokens.get(2) {
            None => 1.0,
            Some(t) => {
                let w: f64 = t
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("invalid weight `{t}`")))?;
                if !w.is_finite() {
                    return Err(parse_err(line_no, format!("non-finite weight `{t}`")));
                }
                if w < 0.0 {
                    return Err(parse_err(line_no, format!("negative weight {w}")));
                }
                if w == 0.0 {
                    return Err(parse_err(line_no, "weight must be positive"));
                }
                w
            }
        };
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at node {u}")));
        }
        if let Some(n) = declared {
            if u.max(v) >= n {
                return Err(parse_err(
                    line_no,
                    format!("node id {} exceeds declared count {n}", u.max(v)),
                ));
            }
        }
        let key = (u.min(v), u.max(v));
        if !pairs.insert(key) {
            return Err(parse_err(line_no, format!("duplicate edge {{{}, {}}}", key.0, key.1)));
        }
        if max_id.is_none_or(|(m, _)| u.max(v) > m) {
            max_id = Some((u.max(v), line_no));
        }
        edges.push((u, v, w));
    }

    let n = match declared {
        Some(n) => n,
        None => {
            let Some((m, line_no)) = max_id else {
                return Err(parse_err(0, "no edges and no `nodes` header"));
            };
            let n = m + 1;
            let mut used = vec![false; n];
            for &(u, v, _) in &edges {
                used[u] = true;
                used[v] = true;
            }
            if let Some(gap) = used.iter().position(|&b| !b) {
                return Err(parse_err(
                    line_no,
                    format!("node ids are not contiguous: {gap} never appears (add a `nodes` header)"),
                ));
            }
            n
        }
    };
    WeightedGraph::from_edges(n, &edges).map_err(|e| parse_err(0, e.to_string()))
}

/// Writes a `nodes` header followed by one `u v w` line per edge in
/// lexicographic order. Weights use the shortest round-tripping decimal.
pub fn serialize_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "nodes {}", g.node_count()).unwrap();
    for (u, v, w) in g.edges() {
        writeln!(out, "{u} {v} {w:?}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generators;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn single_edge_is_k2() {
        let g = parse_graph("0 1 1.0").unwrap();
        assert_eq!(g, generators::path(2).unwrap());
        assert_eq!(parse_graph("# k2\n\n0 1\n").unwrap(), g);
    }

    #[test]
    fn g2_file_gives_printed_adjacency() {
        let text = "# G2\n0 1\n0 2\n1 2\n1 3\n1 4\n2 3\n3 4\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.adjacency_matrix(), fixtures::g2().adjacency_matrix());
    }

    #[test]
    fn header_allows_isolated_nodes() {
        let g = parse_graph("nodes 4\n0 1\n").unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.isolated_vertex(), Some(2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(parse_graph("0 1\n1 2 -3\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("0 1\n# c\n2 2\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph("0 1\n1 0 2.0\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("0 1\n0 x\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("0 1 2 3\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("0 1\n3 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("0 1\nnodes 3\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("nodes 2\n0 5\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("0 1 0\n").unwrap_err()), 1);
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn bucky_round_trips() {
        let g = generators::bucky();
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(seed in any::<u64>(), n in 2usize..9, p in 0.1f64..1.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = fixtures::random_weighted_graph(n, p, &mut rng);
            let text = serialize_graph(&g);
            prop_assert_eq!(parse_graph(&text).unwrap(), g);
        }
    }
}
