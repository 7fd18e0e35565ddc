//! Exhaustive reference solvers for small graphs.
//!
//! Set partitions of `{0, …, N−1}` into exactly `K` blocks are enumerated as
//! restricted growth strings (`labels[0] = 0`, `labels[i] ≤ 1 + max(labels[..i])`)
//! in lexicographic order, which is the canonical order used to break ties.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Partition, WeightedGraph};
use crate::linalg;

pub const MAX_NODES: usize = 14;
const PREFIX_LEN: usize = 5;

fn check_guard(n: usize, k: usize) -> Result<()> {
    if n > MAX_NODES {
        return Err(Error::SizeGuard(format!("exhaustive search is limited to {MAX_NODES} nodes, got {n}")));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("need 1 ≤ K ≤ N = {n}, got K = {k}")));
    }
    Ok(())
}

/// Restricted growth strings with exactly `k` distinct labels whose first
/// `fixed` entries are held constant.
#[derive(Debug, Clone)]
pub struct GrowthStrings {
    labels: Vec<usize>,
    k: usize,
    fixed: usize,
    started: bool,
    done: bool,
}

impl GrowthStrings {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_guard(n, k)?;
        Ok(Self::with_prefix(n, k, &[]).expect("empty prefix is always feasible"))
    }

    /// Completions of `prefix`, or `None` when no completion has exactly
    /// `k` blocks.
    fn with_prefix(n: usize, k: usize, prefix: &[usize]) -> Option<Self> {
        let mut labels = prefix.to_vec();
        labels.resize(n, 0);
        let top = prefix.iter().copied().max();
        let used = top.map_or(0, |m| m + 1);
        if used > k || k - used > n - prefix.len() {
            return None;
        }
        fill_tail(&mut labels, prefix.len(), top, k);
        let fixed = prefix.len().max(1).min(n);
        Some(Self { labels, k, fixed, started: false, done: false })
    }

    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        for i in (self.fixed..n).rev() {
            let top = self.labels[..i].iter().copied().max().unwrap_or(0);
            if self.labels[i] + 1 < self.k && self.labels[i] <= top {
                self.labels[i] += 1;
                let new_top = top.max(self.labels[i]);
                fill_tail(&mut self.labels, i + 1, Some(new_top), self.k);
                return true;
            }
        }
        false
    }
}

/// Smallest tail from position `from` that still reaches `k` labels.
fn fill_tail(labels: &mut [usize], from: usize, top: Option<usize>, k: usize) {
    let n = labels.len();
    let used = top.map_or(0, |m| m + 1);
    let missing = k - used;
    for (offset, slot) in labels[from..].iter_mut().enumerate() {
        let pos = from + offset;
        let from_end = n - pos;
        *slot = if from_end <= missing { k - from_end } else { 0 };
    }
}

impl Iterator for GrowthStrings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.labels.clone())
    }
}

/// Every partition of `{0, …, n−1}` into exactly `k` nonempty blocks, once
/// each, in canonical order.
pub fn enumerate_partitions(n: usize, k: usize) -> Result<impl Iterator<Item = Partition>> {
    Ok(GrowthStrings::new(n, k)?.map(|l| Partition::from_labels(&l).expect("growth strings are valid labels")))
}

/// Stirling numbers of the second kind, `S(n, k)`.
pub fn stirling(n: usize, k: usize) -> u64 {
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = j as u64 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_partition: Partition,
    pub best_value: f64,
    /// Partitions enumerated, including infeasible ones.
    pub evaluated_count: u64,
}

struct Evaluator {
    edges: Vec<(usize, usize, f64)>,
    degrees: Vec<f64>,
}

impl Evaluator {
    fn new(g: &WeightedGraph) -> Self {
        Self { edges: g.edges(), degrees: g.degrees().iter().copied().collect() }
    }

    /// Normalized cut of a labelling, `None` if a block has zero volume.
    fn ncut(&self, labels: &[usize], k: usize) -> Option<f64> {
        let mut vol = vec![0.0; k];
        let mut cut = vec![0.0; k];
        for (i, &l) in labels.iter().enumerate() {
            vol[l] += self.degrees[i];
        }
        for &(u, v, w) in &self.edges {
            if labels[u] != labels[v] {
                cut[labels[u]] += w;
                cut[labels[v]] += w;
            }
        }
        if vol.iter().any(|&v| v <= 0.0) {
            return None;
        }
        Some(cut.iter().zip(&vol).map(|(c, v)| c / v).sum())
    }
}

/// Best `(value, labels)` over one stream plus the number enumerated.
fn scan(eval: &Evaluator, strings: GrowthStrings, k: usize) -> (Option<(f64, Vec<usize>)>, u64) {
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut count = 0;
    for labels in strings {
        count += 1;
        if let Some(v) = eval.ncut(&labels, k) {
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, labels));
            }
        }
    }
    (best, count)
}

fn finish(best: Option<(f64, Vec<usize>)>, count: u64) -> Result<OracleResult> {
    let (best_value, labels) = best.ok_or_else(|| Error::InvalidInput("every partition has a zero-volume block".into()))?;
    Ok(OracleResult { best_partition: Partition::from_labels(&labels)?, best_value, evaluated_count: count })
}

/// Minimum normalized cut over all K-partitions, evaluated sequentially.
pub fn brute_ncut_sequential(g: &WeightedGraph, k: usize) -> Result<OracleResult> {
    let n = g.node_count();
    let strings = GrowthStrings::new(n, k)?;
    let (best, count) = scan(&Evaluator::new(g), strings, k);
    finish(best, count)
}

/// Restricted growth prefixes of length `len` using at most `k` labels.
fn prefixes(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for _ in 1..len {
        let mut next = Vec::new();
        for p in &out {
            let top = *p.iter().max().unwrap();
            for v in 0..=(top + 1).min(k - 1) {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Minimum normalized cut over all K-partitions. Work is split by label
/// prefix across threads; the result is independent of the thread count
/// (ties go to the earliest partition in canonical order).
pub fn brute_ncut(g: &WeightedGraph, k: usize) -> Result<OracleResult> {
    let n = g.node_count();
    check_guard(n, k)?;
    let eval = Evaluator::new(g);
    let parts: Vec<(Option<(f64, Vec<usize>)>, u64)> = prefixes(PREFIX_LEN.min(n), k)
        .par_iter()
        .filter_map(|p| GrowthStrings::with_prefix(n, k, p))
        .map(|s| scan(&eval, s, k))
        .collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut count = 0;
    for (cand, c) in parts {
        count += c;
        if let Some((v, l)) = cand {
            let better = match &best {
                None => true,
                Some((bv, bl)) => v < *bv || (v == *bv && l < *bl),
            };
            if better {
                best = Some((v, l));
            }
        }
    }
    finish(best, count)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinCut {
    /// Blocks: the side containing node 0, then the rest.
    pub partition: Partition,
    pub value: f64,
}

/// Minimum of `cut(A)` over proper nonempty subsets `A`.
pub fn brute_mincut(g: &WeightedGraph) -> Result<MinCut> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidInput("need at least two nodes".into()));
    }
    check_guard(n, 2)?;
    let edges = g.edges();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for labels in GrowthStrings::new(n, 2)? {
        let value: f64 = edges.iter().filter(|e| labels[e.0] != labels[e.1]).map(|e| e.2).sum();
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, labels));
        }
    }
    let (value, labels) = best.expect("at least one bipartition");
    Ok(MinCut { partition: Partition::from_labels(&labels)?, value })
}

/// Largest `tr(QA)` over `samples` random orthogonal `Q`.
pub fn sampled_max_trace(a: &DMatrix<f64>, samples: usize, seed: u64) -> Result<f64> {
    if !a.is_square() || a.nrows() == 0 {
        return Err(Error::Dimension(format!("need a nonempty square matrix, got {}×{}", a.nrows(), a.ncols())));
    }
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..samples)
        .map(|_| (linalg::random_orthogonal(a.nrows(), &mut rng) * a).trace())
        .fold(f64::NEG_INFINITY, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generators::path;
    use crate::spectra::svd;
    use std::collections::HashSet;

    /// Independent Stirling oracle: inclusion–exclusion.
    fn stirling_formula(n: usize, k: usize) -> u64 {
        let mut sum: i128 = 0;
        let mut binom: i128 = 1;
        let mut fact: i128 = 1;
        for j in 0..=k {
            let term = binom * (k as i128 - j as i128).pow(n as u32);
            sum += if j % 2 == 0 { term } else { -term };
            binom = binom * (k - j) as i128 / (j + 1) as i128;
        }
        for j in 1..=k {
            fact *= j as i128;
        }
        (sum / fact) as u64
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_partitions(3, 2).unwrap().count(), 3);
        let all: Vec<_> = enumerate_partitions(4, 2).unwrap().map(|p| p.labels()).collect();
        assert_eq!(all.len(), 7);
        assert_eq!(all[0], vec![0, 0, 0, 1]);
        assert_eq!(all[6], vec![0, 1, 1, 1]);
        assert_eq!(enumerate_partitions(5, 5).unwrap().count(), 1);
        assert_eq!(enumerate_partitions(4, 1).unwrap().count(), 1);
        assert!(enumerate_partitions(15, 2).is_err());
        assert!(enumerate_partitions(4, 5).is_err());
        assert!(enumerate_partitions(4, 0).is_err());
    }

    #[test]
    fn counts_match_stirling_and_are_distinct() {
        for n in 1..=10 {
            for k in 1..=n.min(4) {
                let labels: Vec<Vec<usize>> = GrowthStrings::new(n, k).unwrap().collect();
                assert_eq!(labels.len() as u64, stirling(n, k), "S({n},{k})");
                assert_eq!(stirling(n, k), stirling_formula(n, k));
                let set: HashSet<_> = labels.iter().cloned().collect();
                assert_eq!(set.len(), labels.len());
                assert!(labels.windows(2).all(|w| w[0] < w[1]));
                for l in &labels {
                    assert_eq!(l.iter().copied().max().unwrap() + 1, k);
                    assert_eq!(l[0], 0);
                }
            }
        }
    }

    #[test]
    fn ncut_examples() {
        let k2 = path(2).unwrap();
        assert_eq!(brute_ncut(&k2, 2).unwrap().best_value, 2.0);
        let g = fixtures::bridged_triangles(0.1);
        let r = brute_ncut(&g, 2).unwrap();
        assert!(r.best_partition.same_as(&Partition::from_labels(&[0, 0, 0, 1, 1, 1]).unwrap()));
        assert!((r.best_value - 2.0 * 0.1 / 6.1).abs() < 1e-15);
        assert_eq!(r.evaluated_count, 31);
        assert!((g.ncut(&r.best_partition).unwrap() - r.best_value).abs() < 1e-15);
    }

    #[test]
    fn mincut_examples() {
        assert_eq!(brute_mincut(&path(2).unwrap()).unwrap().value, 1.0);
        let g = fixtures::bridged_triangles(0.1);
        let m = brute_mincut(&g).unwrap();
        assert_eq!(m.value, 0.1);
        assert!(m.partition.same_as(&Partition::from_labels(&[0, 0, 0, 1, 1, 1]).unwrap()));
        let star = fixtures::star(5);
        let m = brute_mincut(&star).unwrap();
        assert_eq!(m.value, 1.0);
        assert!(m.partition.blocks().iter().any(|b| b.len() == 1));
    }

    #[test]
    fn mincut_isolates_pendant_but_ncut_balances() {
        let g = fixtures::pendant_cliques();
        let m = brute_mincut(&g).unwrap();
        assert_eq!(m.value, 1.0);
        assert!(m.partition.blocks().iter().any(|b| b == &vec![8]));
        let r = brute_ncut(&g, 2).unwrap();
        let sizes: Vec<usize> = r.best_partition.blocks().iter().map(Vec::len).collect();
        assert!(sizes.iter().all(|&s| s >= 4), "{sizes:?}");
        assert!(g.ncut(&m.partition).unwrap() > r.best_value);
    }

    #[test]
    fn parallel_matches_sequential() {
        for (name, g) in fixtures::corpus(9) {
            for k in 2..=3.min(g.node_count()) {
                let a = brute_ncut(&g, k).unwrap();
                let b = brute_ncut_sequential(&g, k).unwrap();
                assert_eq!(a, b, "{name} K={k}");
                assert_eq!(a.evaluated_count, stirling(g.node_count(), k));
            }
        }
    }

    #[test]
    fn zero_volume_blocks_are_skipped() {
        let g = WeightedGraph::from_unit_edges(3, &[(0, 1)]).unwrap();
        let r = brute_ncut(&g, 2).unwrap();
        // {0,1} | {2} is skipped; both remaining splits cost 2.
        assert_eq!(r.best_value, 2.0);
        assert_eq!(r.best_partition.labels(), vec![0, 1, 0]);
        assert_eq!(r.evaluated_count, 3);
        let g = WeightedGraph::empty(3).unwrap();
        assert!(brute_ncut(&g, 2).is_err());
        assert!(matches!(brute_ncut(&crate::generators::path(15).unwrap(), 2), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn sampled_trace_examples() {
        let i2 = DMatrix::<f64>::identity(2, 2);
        let s = sampled_max_trace(&i2, 2000, 1).unwrap();
        assert!(s <= 2.0 + 1e-12 && s > 1.99);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&[3.0, 2.0]));
        assert!(sampled_max_trace(&d, 2000, 2).unwrap() <= 5.0 + 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = linalg::gaussian_matrix(3, 3, &mut rng);
        let bound = svd(&a).unwrap().singular_values.sum();
        let s = sampled_max_trace(&a, 10_000, 3).unwrap();
        assert!(s <= bound + 1e-8 && s >= 0.95 * bound);
        assert!(sampled_max_trace(&a, 0, 3).is_err());
    }
}
