//! K-way normalized cuts.
//!
//! A K-partition is represented by an `N × K` matrix whose column `j` equals
//! `a_j` on block `j` and `0` elsewhere. With `a_j = 1/√vol(A_j)` the matrix
//! satisfies `XᵀDX = I` and the sum of column Rayleigh ratios is the
//! normalized cut. Relaxing to `YᵀY = I` with `X = D^{−1/2}Y` gives the `K`
//! smallest eigenvectors of `L_sym` as the continuous optimum; any rotation
//! `ZR` of that optimum is equally good. Discretization alternates between
//! snapping `ZR` to the nearest partition matrix (rotation fixed) and
//! solving for the best rotation (partition fixed), which is an orthogonal
//! Procrustes problem.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Partition, WeightedGraph};
use crate::laplacian::{laplacian, normalized_laplacians};
use crate::linalg::{self, normalize_sign};
use crate::spectra::{eigh, svd, SymMatrix};

const VALID_TOL: f64 = 1e-8;

/// Per-column scaling of a partition matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scaling {
    /// `a_j = 1/√vol(A_j)`, so `XᵀDX = I`.
    #[default]
    VolumeNormalized,
    /// `a_j = 1`, so `X1 = 1`.
    Unit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionMatrix {
    x: DMatrix<f64>,
    scales: Vec<f64>,
}

impl PartitionMatrix {
    /// Matrix with `x[i][labels[i]] = scales[labels[i]]` and zeros elsewhere.
    pub fn from_labels(labels: &[usize], scales: Vec<f64>) -> Result<Self> {
        let k = scales.len();
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::IndexOutOfRange { index: bad, n: k });
        }
        if scales.iter().any(|&a| a == 0.0 || !a.is_finite()) {
            return Err(Error::InvalidInput("column scales must be finite and nonzero".into()));
        }
        let mut x = DMatrix::zeros(labels.len(), k);
        for (i, &l) in labels.iter().enumerate() {
            x[(i, l)] = scales[l];
        }
        for j in 0..k {
            if !labels.contains(&j) {
                return Err(Error::InvalidInput(format!("column {j} is empty")));
            }
        }
        Ok(Self { x, scales })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn node_count(&self) -> usize {
        self.x.nrows()
    }

    pub fn block_count(&self) -> usize {
        self.x.ncols()
    }

    /// Column holding the nonzero entry of each row.
    pub fn labels(&self) -> Vec<usize> {
        self.x
            .row_iter()
            .map(|r| r.iter().position(|&v| v != 0.0).expect("every row has an entry"))
            .collect()
    }

    /// Blocks in column order.
    pub fn partition(&self) -> Partition {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, l) in self.labels().into_iter().enumerate() {
            blocks[l].push(i);
        }
        Partition::new(self.node_count(), blocks).expect("columns are nonempty")
    }
}

pub fn partition_matrix(g: &WeightedGraph, p: &Partition, scaling: Scaling) -> Result<PartitionMatrix> {
    if p.node_count() != g.node_count() {
        return Err(Error::Dimension(format!("partition of {} nodes for {} nodes", p.node_count(), g.node_count())));
    }
    let mut scales = Vec::with_capacity(p.block_count());
    for (j, block) in p.blocks().iter().enumerate() {
        let vol = g.vol(block);
        if vol <= 0.0 {
            return Err(Error::ZeroVolume { block: j });
        }
        scales.push(match scaling {
            Scaling::VolumeNormalized => 1.0 / vol.sqrt(),
            Scaling::Unit => 1.0,
        });
    }
    PartitionMatrix::from_labels(&p.labels(), scales)
}

/// Each membership condition checked separately.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionMatrixReport {
    pub columns_nonzero: bool,
    /// Nonzero entries of each column are all equal (hence same sign).
    pub columns_single_valued: bool,
    /// `max_{i≠j} |(X^i)ᵀ X^j|`.
    pub column_overlap: f64,
    /// `max_{i≠j} |(X^i)ᵀ D X^j|`.
    pub d_orthogonality: f64,
    /// No zero row, i.e. `det(diag(XXᵀ)) ≠ 0`.
    pub rows_nonzero: bool,
    /// `‖X1 − 1‖_∞`.
    pub unit_row_sum_residual: f64,
    /// `‖X(XᵀX)^{−1}Xᵀ1 − 1‖_∞`; `None` when `XᵀX` is singular.
    pub projection_residual: Option<f64>,
}

impl PartitionMatrixReport {
    pub fn is_valid(&self) -> bool {
        self.columns_nonzero
            && self.columns_single_valued
            && self.column_overlap <= VALID_TOL
            && self.d_orthogonality <= VALID_TOL
            && self.rows_nonzero
            && self.projection_residual.is_some_and(|r| r <= VALID_TOL)
    }
}

pub fn validate_partition_matrix(x: &DMatrix<f64>, degrees: &DVector<f64>) -> Result<PartitionMatrixReport> {
    let (n, k) = x.shape();
    if degrees.len() != n {
        return Err(Error::Dimension(format!("{} degrees for {n} rows", degrees.len())));
    }
    let columns_nonzero = x.column_iter().all(|c| c.iter().any(|&v| v != 0.0));
    let columns_single_valued = x.column_iter().all(|c| {
        let mut nz = c.iter().copied().filter(|&v| v != 0.0);
        match nz.next() {
            Some(first) => nz.all(|v| v == first),
            None => true,
        }
    });
    let gram = x.transpose() * x;
    let dgram = x.transpose() * DMatrix::from_diagonal(degrees) * x;
    let mut column_overlap = 0.0_f64;
    let mut d_orthogonality = 0.0_f64;
    for i in 0..k {
        for j in 0..k {
            if i != j {
                column_overlap = column_overlap.max(gram[(i, j)].abs());
                d_orthogonality = d_orthogonality.max(dgram[(i, j)].abs());
            }
        }
    }
    let rows_nonzero = x.row_iter().all(|r| r.iter().any(|&v| v != 0.0));
    let ones = DVector::from_element(n, 1.0);
    let unit_row_sum_residual = (x * DVector::from_element(k, 1.0) - &ones).amax();
    let projection_residual = gram
        .clone()
        .try_inverse()
        .filter(|_| gram.determinant().abs() > 1e-300)
        .map(|inv| (x * inv * x.transpose() * &ones - &ones).amax());
    Ok(PartitionMatrixReport {
        columns_nonzero,
        columns_single_valued,
        column_overlap,
        d_orthogonality,
        rows_nonzero,
        unit_row_sum_residual,
        projection_residual,
    })
}

fn column_denominators(g: &WeightedGraph, x: &DMatrix<f64>) -> Result<Vec<f64>> {
    if x.nrows() != g.node_count() {
        return Err(Error::Dimension(format!("{} rows for {} nodes", x.nrows(), g.node_count())));
    }
    let dg = g.degrees();
    x.column_iter()
        .enumerate()
        .map(|(j, c)| {
            let den = c.component_mul(&dg).dot(&c);
            if den > 0.0 {
                Ok(den)
            } else {
                Err(Error::ZeroVolume { block: j })
            }
        })
        .collect()
}

/// `Σ_j (X^j)ᵀ L X^j / (X^j)ᵀ D X^j`.
pub fn mu(g: &WeightedGraph, x: &DMatrix<f64>) -> Result<f64> {
    let dens = column_denominators(g, x)?;
    let l = laplacian(g);
    Ok(x.column_iter().zip(dens).map(|(c, den)| c.dot(&(l.matrix() * c)) / den).sum())
}

/// `Σ_j (X^j)ᵀ W X^j / (X^j)ᵀ D X^j`, which equals `K − μ(X)`.
pub fn epsilon(g: &WeightedGraph, x: &DMatrix<f64>) -> Result<f64> {
    let dens = column_denominators(g, x)?;
    Ok(x.column_iter().zip(dens).map(|(c, den)| c.dot(&(g.weights() * c)) / den).sum())
}

/// `tr(Λ^{−1/2} Xᵀ L X Λ^{−1/2})` with `Λ = diag((X^j)ᵀ D X^j)`.
pub fn mu_trace_form(g: &WeightedGraph, x: &DMatrix<f64>) -> Result<f64> {
    let dens = column_denominators(g, x)?;
    let scale = DMatrix::from_diagonal(&DVector::from_iterator(dens.len(), dens.iter().map(|d| 1.0 / d.sqrt())));
    let l = laplacian(g);
    Ok((&scale * x.transpose() * l.matrix() * x * &scale).trace())
}

/// Continuous K-way optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct KWayRelaxed {
    /// `K` orthonormal eigenvectors of `L_sym`, first column `D^{1/2}1`
    /// normalized.
    pub y: DMatrix<f64>,
    /// `D^{−1/2} Y`, so `Z0ᵀ D Z0 = I`.
    pub z0: DMatrix<f64>,
    /// `Z0 Q diag(λ)` with `λ` the least-squares fit of `Z0 Q λ ≈ 1`, where
    /// `Q` is orthogonal with a uniform first row. Satisfies `Z1 = 1`.
    pub z: DMatrix<f64>,
    pub column_scales: DVector<f64>,
    /// `ν_1 ≤ … ≤ ν_K`.
    pub eigenvalues: Vec<f64>,
    /// `tr(Yᵀ L_sym Y) = ν_1 + … + ν_K`.
    pub trace_value: f64,
}

pub fn relax_k(g: &WeightedGraph, k: usize) -> Result<KWayRelaxed> {
    let bundle = normalized_laplacians(g)?;
    let n = g.node_count();
    if k < 2 || k >= n {
        return Err(Error::InvalidInput(format!("need 2 ≤ K < N = {n}, got K = {k}")));
    }
    let components = g.connected_components().len();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    let eig = eigh(&bundle.l_sym)?;
    let mut y = eig.vectors_range(0, k);
    let sqrt_d = bundle.sqrt_degrees();
    y.set_column(0, &sqrt_d.normalize());
    let inv_sqrt = bundle.inv_sqrt_degrees();
    let mut z0 = y.clone();
    for mut col in z0.column_iter_mut() {
        col.component_mul_assign(&inv_sqrt);
    }
    // In the eigenbasis the constant vector is column 1 alone, so rescaling
    // there zeroes every other column. Rescale a rotated solution whose first
    // row is uniform instead; then every column keeps the same weight.
    let balanced = canonical_rotation(&vec![1.0; k])?.transpose();
    let (z, column_scales) = rescale_columns(&(&z0 * balanced))?;
    let trace_value = (y.transpose() * bundle.l_sym.matrix() * &y).trace();
    let eigenvalues = eig.values.iter().take(k).copied().collect();
    Ok(KWayRelaxed { y, z0, z, column_scales, eigenvalues, trace_value })
}

/// `Z' = ZR` with `R` from the eigendecomposition of `ZᵀZ`, so that the
/// columns of `Z'` are mutually orthogonal. Returns `(Z', R)`.
pub fn orthogonalize_columns(z: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let gram = SymMatrix::new(z.transpose() * z)?;
    let eig = eigh(&gram)?;
    let top = eig.values.iter().copied().fold(0.0, f64::max);
    if eig.values[0] <= 1e-12 * top.max(f64::MIN_POSITIVE) {
        return Err(Error::RankDeficient("columns are linearly dependent".into()));
    }
    Ok((z * &eig.vectors, eig.vectors))
}

/// `Z = Z0 diag(λ)` with `λ = (Z0ᵀZ0)^{−1} Z0ᵀ 1`. Returns `(Z, λ)`.
pub fn rescale_columns(z0: &DMatrix<f64>) -> Result<(DMatrix<f64>, DVector<f64>)> {
    let ones = DVector::from_element(z0.nrows(), 1.0);
    let lambda = linalg::solve_spd(&(z0.transpose() * z0), &(z0.transpose() * ones))?;
    Ok((z0 * DMatrix::from_diagonal(&lambda), lambda))
}

/// Best orthogonal (or column-orthonormal, if `X` has fewer columns)
/// `R` minimizing `‖X − ZR‖_F`: `R = UVᵀ` for `ZᵀX = UΣVᵀ`.
pub fn pod_r(z: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if z.nrows() != x.nrows() || z.ncols() < x.ncols() {
        return Err(Error::Dimension(format!(
            "Z is {}×{}, X is {}×{}",
            z.nrows(),
            z.ncols(),
            x.nrows(),
            x.ncols()
        )));
    }
    let s = svd(&(z.transpose() * x))?;
    Ok(&s.u * s.v.transpose())
}

/// What to do when the row-wise argmax leaves a column empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RepairMode {
    /// Move into each empty column the row that scores highest there among
    /// rows whose column has at least two members.
    #[default]
    Reassign,
    /// Drop empty columns, lowering K.
    Shrink,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PodXOutcome {
    pub x: PartitionMatrix,
    /// Indices (into the input columns) kept in `x`, in order.
    pub kept: Vec<usize>,
    /// Input columns dropped by [`RepairMode::Shrink`].
    pub dropped: Vec<usize>,
}

/// Nearest partition matrix to `Y`: each row goes to its largest column
/// (lowest index on ties), empty columns are repaired, and column `j` is
/// scaled to norm `rho[j]` (or to entries `1` when `normalize` is off).
pub fn pod_x(y: &DMatrix<f64>, rho: &[f64], repair: RepairMode, normalize: bool) -> Result<PodXOutcome> {
    let (n, k) = y.shape();
    if rho.len() != k {
        return Err(Error::Dimension(format!("{} norms for {k} columns", rho.len())));
    }
    if y.iter().any(|v| !v.is_finite()) || rho.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
        return Err(Error::InvalidInput("non-finite scores or non-positive norms".into()));
    }
    let mut labels: Vec<usize> = y
        .row_iter()
        .map(|r| {
            let mut best = 0;
            for j in 1..k {
                if r[j] > r[best] {
                    best = j;
                }
            }
            best
        })
        .collect();
    let count = |labels: &[usize], j: usize| labels.iter().filter(|&&l| l == j).count();

    let mut kept: Vec<usize> = (0..k).collect();
    let mut dropped = Vec::new();
    match repair {
        RepairMode::Reassign => {
            if k > n {
                return Err(Error::InvalidInput(format!("cannot fill {k} columns with {n} rows")));
            }
            while let Some(empty) = (0..k).find(|&j| count(&labels, j) == 0) {
                let mut best: Option<usize> = None;
                for i in 0..n {
                    if count(&labels, labels[i]) < 2 {
                        continue;
                    }
                    if best.is_none_or(|b| y[(i, empty)] > y[(b, empty)]) {
                        best = Some(i);
                    }
                }
                labels[best.expect("some column has two members")] = empty;
            }
        }
        RepairMode::Shrink => {
            kept.retain(|&j| count(&labels, j) > 0);
            dropped = (0..k).filter(|j| !kept.contains(j)).collect();
            for l in labels.iter_mut() {
                *l = kept.iter().position(|&j| j == *l).expect("label is kept");
            }
        }
    }
    let scales: Vec<f64> = kept
        .iter()
        .enumerate()
        .map(|(c, &j)| if normalize { rho[j] / (count(&labels, c) as f64).sqrt() } else { 1.0 })
        .collect();
    Ok(PodXOutcome { x: PartitionMatrix::from_labels(&labels, scales)?, kept, dropped })
}

/// Starting rotation: greedily picks `K` rows of `Z` that are as close to
/// mutually orthogonal as possible, then orthonormalizes them into the
/// columns of `R`.
pub fn init_rotation(z: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (n, k) = z.shape();
    if k == 0 || n < k {
        return Err(Error::RankDeficient(format!("{n}×{k} matrix cannot have rank {k}")));
    }
    let row_norms: Vec<f64> = z.row_iter().map(|r| r.norm()).collect();
    let mut first = 0;
    for i in 1..n {
        if row_norms[i] > row_norms[first] {
            first = i;
        }
    }
    let mut chosen = vec![first];
    let mut score = DVector::<f64>::zeros(n);
    let mut last: DVector<f64> = z.row(first).transpose();
    for _ in 1..k {
        score += (z * &last).abs();
        let mut pick = 0;
        for i in 1..n {
            if score[i] < score[pick] {
                pick = i;
            }
        }
        chosen.push(pick);
        last = z.row(pick).transpose();
    }

    let scale = row_norms[first].max(f64::MIN_POSITIVE);
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(k);
    let residual = |v: &DVector<f64>, basis: &[DVector<f64>]| {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in basis {
                let p = b.dot(&r);
                r.axpy(-p, b, 1.0);
            }
        }
        r
    };
    for &i in &chosen {
        let mut r = residual(&z.row(i).transpose(), &basis);
        if r.norm() <= 1e-10 * scale {
            // Dependent pick: use the row farthest from the current span.
            let (mut best, mut best_norm) = (DVector::zeros(k), 0.0);
            for row in z.row_iter() {
                let c = residual(&row.transpose(), &basis);
                if c.norm() > best_norm {
                    best_norm = c.norm();
                    best = c;
                }
            }
            if best_norm <= 1e-10 * scale {
                return Err(Error::RankDeficient(format!("rows of Z span fewer than {k} dimensions")));
            }
            r = best;
        }
        let norm = r.norm();
        basis.push(r / norm);
    }
    Ok(DMatrix::from_columns(&basis))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Step {
    #[serde(rename = "PODX")]
    PodX,
    #[serde(rename = "PODR")]
    PodR,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEntry {
    pub step: Step,
    /// `‖X − ZR‖_F` after the step.
    pub objective: f64,
    /// Normalized cut of the current partition.
    pub ncut: f64,
}

/// Accepted alternation steps; objectives never increase.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlternationTrace {
    pub entries: Vec<TraceEntry>,
}

impl AlternationTrace {
    pub fn is_monotone(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].objective <= w[0].objective + 1e-12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterOptions {
    /// Use the column-rescaled `Z` instead of `Z0`.
    pub rescale: bool,
    pub repair: RepairMode,
    /// Scale partition-matrix columns to the column norms of `Z`.
    pub normalize_columns: bool,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        Self { rescale: false, repair: RepairMode::Reassign, normalize_columns: true, max_iter: 100, tol: 1e-10 }
    }
}

#[derive(Debug, Clone)]
pub struct ClusterResult {
    pub partition: Partition,
    pub ncut: f64,
    /// Sum of the `k_effective` smallest eigenvalues of `L_sym`.
    pub relaxed_bound: f64,
    /// Completed PODX/PODR rounds.
    pub iterations: usize,
    pub converged: bool,
    pub k_effective: usize,
    pub x: PartitionMatrix,
    pub rotation: DMatrix<f64>,
    pub trace: AlternationTrace,
}

/// Spectral K-way clustering: relax, rotate, and alternate discretization
/// steps until the objective stops improving by more than `tol`.
pub fn cluster(g: &WeightedGraph, k: usize, opts: &ClusterOptions) -> Result<ClusterResult> {
    let relaxed = relax_k(g, k)?;
    let z = if opts.rescale { relaxed.z.clone() } else { relaxed.z0.clone() };
    let all_rho: Vec<f64> = z.column_iter().map(|c| c.norm()).collect();
    let mut rotation = init_rotation(&z)?;
    let mut active: Vec<usize> = (0..k).collect();
    let mut trace = AlternationTrace::default();
    let objective = |x: &PartitionMatrix, r: &DMatrix<f64>| (x.matrix() - &z * r).norm();

    let mut x: Option<PartitionMatrix> = None;
    let mut prev = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        let y = &z * &rotation;
        let rho: Vec<f64> = active.iter().map(|&j| all_rho[j]).collect();
        let out = pod_x(&y, &rho, opts.repair, opts.normalize_columns)?;
        let new_rotation = rotation.select_columns(&out.kept);
        let obj = objective(&out.x, &new_rotation);
        if x.is_some() && obj > prev {
            // Rescaled snapping is not an exact minimizer; keep the better state.
            converged = true;
            break;
        }
        let new_active: Vec<usize> = out.kept.iter().map(|&c| active[c]).collect();
        let ncut = g.ncut(&out.x.partition())?;
        trace.entries.push(TraceEntry { step: Step::PodX, objective: obj, ncut });
        x = Some(out.x);
        active = new_active;

        let xm = x.as_ref().expect("set above");
        rotation = pod_r(&z, xm.matrix())?;
        let obj = objective(xm, &rotation);
        trace.entries.push(TraceEntry { step: Step::PodR, objective: obj, ncut });
        iterations += 1;
        if prev - obj < opts.tol {
            converged = true;
            break;
        }
        prev = obj;
    }
    let x = x.ok_or_else(|| Error::InvalidInput("max_iter must be at least 1".into()))?;
    let partition = x.partition();
    let ncut = g.ncut(&partition)?;
    let k_effective = x.block_count();
    let relaxed_bound = relaxed.eigenvalues.iter().take(k_effective).sum();
    Ok(ClusterResult { partition, ncut, relaxed_bound, iterations, converged, k_effective, x, rotation, trace })
}

/// Rotation whose first column is `(√α_1, …, √α_K)/√d`, completed by
/// Gram–Schmidt on `e_2, …, e_K`.
pub fn canonical_rotation(alphas: &[f64]) -> Result<DMatrix<f64>> {
    let k = alphas.len();
    if k == 0 || alphas.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
        return Err(Error::InvalidInput("volumes must be positive".into()));
    }
    let d: f64 = alphas.iter().sum();
    let mut m = DMatrix::identity(k, k);
    m.set_column(0, &DVector::from_iterator(k, alphas.iter().map(|a| (a / d).sqrt())));
    let mut r = linalg::gram_schmidt(&m)?;
    for j in 1..k {
        let mut col: Vec<f64> = r.column(j).iter().copied().collect();
        normalize_sign(&mut col);
        r.set_column(j, &DVector::from_vec(col));
    }
    Ok(r)
}
