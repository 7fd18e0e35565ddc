//! Dense symmetric eigendecomposition, SVD, Rayleigh quotients, and
//! executable checks of the Rayleigh–Ritz, interlacing and Courant–Fischer
//! characterizations of eigenvalues.
//!
//! Eigenvalues are always reported in ascending order: `values[0]` is the
//! smallest. Classical statements that index eigenvalues in descending order
//! (`λ_1 ≥ … ≥ λ_n`) map to `values[n - i]`.
//!
//! Every eigenvector and singular vector is scaled so that its
//! largest-magnitude entry is positive (ties: lowest index). For repeated
//! eigenvalues the basis of the eigenspace is whatever the solver produced;
//! compare eigenspaces, not individual vectors.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, normalize_sign};

const SYMMETRY_TOL: f64 = 1e-12;
const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;
const ORTHONORMAL_TOL: f64 = 1e-8;

/// Square matrix whose entries satisfy
/// `|a_ij − a_ji| ≤ 1e−12 · max(1, |a_ij|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix(DMatrix<f64>);

impl SymMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::Dimension(format!(
                "symmetric matrix must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let n = m.nrows();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = (m[(i, j)] - m[(j, i)]).abs();
                if !d.is_finite() || d > SYMMETRY_TOL * m[(i, j)].abs().max(1.0) {
                    worst = worst.max(if d.is_finite() { d } else { f64::INFINITY });
                }
            }
        }
        if worst > 0.0 {
            return Err(Error::NotSymmetric { asymmetry: worst });
        }
        Ok(Self(m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }
}

/// Ascending eigenvalues with an orthonormal matrix of eigenvectors
/// (column `k` belongs to `values[k]`).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> DVector<f64> {
        self.vectors.column(k).into_owned()
    }

    /// Columns `from..to` of the eigenvector matrix.
    pub fn vectors_range(&self, from: usize, to: usize) -> DMatrix<f64> {
        self.vectors.columns(from, to - from).into_owned()
    }

    /// `U diag(λ) Uᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.vectors * DMatrix::from_diagonal(&self.values) * self.vectors.transpose()
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius norm is at most `1e−12 · ‖S‖_F`;
/// gives up after 100 sweeps.
pub fn eigh(s: &SymMatrix) -> Result<EigenDecomposition> {
    let n = s.dim();
    let mut a = s.0.clone();
    // Symmetrize exactly so the rotations act on a truly symmetric matrix.
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = m;
            a[(j, i)] = m;
        }
    }
    let scale = a.norm();
    let mut v = DMatrix::<f64>::identity(n, n);
    let off = |a: &DMatrix<f64>| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += a[(i, j)] * a[(i, j)];
                }
            }
        }
        acc.sqrt()
    };

    let mut converged = off(&a) <= JACOBI_TOL * scale;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        converged = off(&a) <= JACOBI_TOL * scale;
    }
    if !converged {
        return Err(Error::NoConvergence { residual: off(&a) });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));
    let values = DVector::from_iterator(n, order.iter().map(|&i| a[(i, i)]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col: Vec<f64> = v.column(src).iter().copied().collect();
        normalize_sign(&mut col);
        vectors.set_column(dst, &DVector::from_vec(col));
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Thin SVD `A = U Σ Vᵀ` with `r = min(m, n)` singular values in descending
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult {
    pub u: DMatrix<f64>,
    pub singular_values: DVector<f64>,
    pub v: DMatrix<f64>,
}

impl SvdResult {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.u * DMatrix::from_diagonal(&self.singular_values) * self.v.transpose()
    }
}

/// Thin SVD by one-sided (Hestenes) Jacobi rotations.
pub fn svd(a: &DMatrix<f64>) -> Result<SvdResult> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    if a.nrows() < a.ncols() {
        let t = svd(&a.transpose())?;
        return Ok(SvdResult { u: t.v, singular_values: t.singular_values, v: t.u });
    }
    let (m, n) = (a.nrows(), a.ncols());
    let mut u = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);

    let mut sweeps = 0;
    loop {
        let mut worst = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = u.column(p).norm_squared();
                let beta = u.column(q).norm_squared();
                let gamma = u.column(p).dot(&u.column(q));
                if gamma == 0.0 || alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let cosine = gamma.abs() / (alpha * beta).sqrt();
                worst = worst.max(cosine);
                if cosine <= 1e-15 {
                    continue;
                }
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_columns(&mut u, p, q, c, s);
                rotate_columns(&mut v, p, q, c, s);
            }
        }
        sweeps += 1;
        if worst <= 1e-15 {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(Error::NoConvergence { residual: worst });
        }
    }

    let norms: Vec<f64> = (0..n).map(|j| u.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let sigma_max = norms.iter().copied().fold(0.0, f64::max);
    let rank_tol = 1e-14 * sigma_max.max(f64::MIN_POSITIVE) * (m.max(n) as f64);

    let mut uo = DMatrix::zeros(m, n);
    let mut vo = DMatrix::zeros(n, n);
    let mut sv = DVector::zeros(n);
    let mut deficient = Vec::new();
    for (dst, &src) in order.iter().enumerate() {
        vo.set_column(dst, &v.column(src));
        if norms[src] > rank_tol {
            sv[dst] = norms[src];
            uo.set_column(dst, &(u.column(src) / norms[src]));
        } else {
            deficient.push(dst);
        }
    }
    // Complete U for zero singular values with standard basis directions.
    for &dst in &deficient {
        let mut placed = false;
        for e in 0..m {
            let mut cand = DVector::<f64>::zeros(m);
            cand[e] = 1.0;
            for _ in 0..2 {
                for k in 0..n {
                    if k == dst || (deficient.contains(&k) && k > dst) {
                        continue;
                    }
                    let proj = uo.column(k).dot(&cand);
                    cand.axpy(-proj, &uo.column(k), 1.0);
                }
            }
            let norm = cand.norm();
            if norm > 1e-8 {
                uo.set_column(dst, &(cand / norm));
                placed = true;
                break;
            }
        }
        debug_assert!(placed);
    }
    for j in 0..n {
        let mut col: Vec<f64> = uo.column(j).iter().copied().collect();
        let before = col.clone();
        normalize_sign(&mut col);
        if col != before {
            uo.set_column(j, &(-uo.column(j)));
            vo.set_column(j, &(-vo.column(j)));
        }
    }
    Ok(SvdResult { u: uo, singular_values: sv, v: vo })
}

fn rotate_columns(m: &mut DMatrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..m.nrows() {
        let mp = m[(k, p)];
        let mq = m[(k, q)];
        m[(k, p)] = c * mp - s * mq;
        m[(k, q)] = s * mp + c * mq;
    }
}

/// Rayleigh quotient `xᵀSx / xᵀx`.
pub fn rayleigh(s: &SymMatrix, x: &DVector<f64>) -> Result<f64> {
    if x.len() != s.dim() {
        return Err(Error::Dimension(format!("vector of length {} for {}x{} matrix", x.len(), s.dim(), s.dim())));
    }
    let xx = x.norm_squared();
    if xx == 0.0 {
        return Err(Error::InvalidInput("Rayleigh quotient of the zero vector".into()));
    }
    Ok(x.dot(&(s.matrix() * x)) / xx)
}

/// Spectrum of `S` compressed to the column span of `basis`, ascending.
pub fn compressed_spectrum(s: &SymMatrix, basis: &DMatrix<f64>) -> Result<DVector<f64>> {
    let q = linalg::gram_schmidt(basis)?;
    let b = SymMatrix::new(q.transpose() * s.matrix() * &q)?;
    Ok(eigh(&b)?.values)
}

/// Minimum of the Rayleigh quotient over the span of `basis`.
pub fn min_ratio_on_subspace(s: &SymMatrix, basis: &DMatrix<f64>) -> Result<f64> {
    Ok(compressed_spectrum(s, basis)?[0])
}

/// Maximum of the Rayleigh quotient over the span of `basis`.
pub fn max_ratio_on_subspace(s: &SymMatrix, basis: &DMatrix<f64>) -> Result<f64> {
    let v = compressed_spectrum(s, basis)?;
    Ok(v[v.len() - 1])
}

#[derive(Debug, Clone)]
pub struct RayleighRitzReport {
    pub seed: u64,
    pub eigenvalues: Vec<f64>,
    /// Smallest quotient observed on `span(u_k, …, u_n)` (including `u_k`).
    pub observed_minima: Vec<f64>,
    pub max_violation: f64,
}

/// Samples unit vectors in each `span(u_k, …, u_n)` and confirms the quotient
/// never drops below `λ_k`, with the minimum attained at `u_k`.
pub fn check_rayleigh_ritz(s: &SymMatrix, samples: usize, seed: u64) -> Result<RayleighRitzReport> {
    let n = s.dim();
    let eig = eigh(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut observed = Vec::with_capacity(n);
    let mut violation = 0.0_f64;
    for k in 0..n {
        let lk = eig.values[k];
        let at_uk = rayleigh(s, &eig.vector(k))?;
        violation = violation.max((at_uk - lk).abs());
        let mut lowest = at_uk;
        let span = eig.vectors_range(k, n);
        for _ in 0..samples {
            let coeffs = linalg::gaussian_matrix(n - k, 1, &mut rng);
            let x: DVector<f64> = (&span * coeffs).column(0).into_owned();
            if x.norm() == 0.0 {
                continue;
            }
            let r = rayleigh(s, &x)?;
            lowest = lowest.min(r);
            violation = violation.max(lk - r);
        }
        observed.push(lowest);
    }
    Ok(RayleighRitzReport {
        seed,
        eigenvalues: eig.values.iter().copied().collect(),
        observed_minima: observed,
        max_violation: violation.max(0.0),
    })
}

#[derive(Debug, Clone)]
pub struct InterlacingReport {
    /// Eigenvalues of `A`, descending.
    pub lambda: Vec<f64>,
    /// Eigenvalues of `RᵀAR`, descending.
    pub mu: Vec<f64>,
    /// `μ_i − λ_{n−m+i}` for each `i`.
    pub lower_margins: Vec<f64>,
    /// `λ_i − μ_i` for each `i`.
    pub upper_margins: Vec<f64>,
    pub holds: bool,
}

/// Checks `λ_{n−m+i} ≤ μ_i ≤ λ_i` (descending indexing) for `B = RᵀAR`,
/// with `1e−8` slack.
pub fn check_interlacing(a: &SymMatrix, r: &DMatrix<f64>) -> Result<InterlacingReport> {
    let n = a.dim();
    if r.nrows() != n || r.ncols() > n {
        return Err(Error::Dimension(format!("R is {}x{}, A is {n}x{n}", r.nrows(), r.ncols())));
    }
    let m = r.ncols();
    let gram = r.transpose() * r - DMatrix::<f64>::identity(m, m);
    let residual = linalg::max_abs(&gram);
    if residual > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { residual });
    }
    let b = SymMatrix::new(r.transpose() * a.matrix() * r)?;
    let lambda: Vec<f64> = eigh(a)?.values.iter().rev().copied().collect();
    let mu: Vec<f64> = eigh(&b)?.values.iter().rev().copied().collect();
    let lower: Vec<f64> = (0..m).map(|i| mu[i] - lambda[n - m + i]).collect();
    let upper: Vec<f64> = (0..m).map(|i| lambda[i] - mu[i]).collect();
    let slack = 1e-8 * (1.0 + a.matrix().norm());
    let holds = lower.iter().chain(&upper).all(|&x| x >= -slack);
    Ok(InterlacingReport { lambda, mu, lower_margins: lower, upper_margins: upper, holds })
}

#[derive(Debug, Clone)]
pub struct CourantFischerReport {
    pub seed: u64,
    /// `k`-th smallest eigenvalue (1-based `k`).
    pub lambda_k: f64,
    /// Minimum quotient on `span(u_k, …, u_n)`; the max–min optimum.
    pub max_min_optimal: f64,
    /// Maximum quotient on `span(u_1, …, u_k)`; the min–max optimum.
    pub min_max_optimal: f64,
    /// Largest min-quotient over the random `(n−k+1)`-dimensional subspaces.
    pub sampled_max_min: f64,
    /// Smallest max-quotient over the random `k`-dimensional subspaces.
    pub sampled_min_max: f64,
    /// `max(|max_min_optimal − λ_k|, |min_max_optimal − λ_k|)`.
    pub optimal_error: f64,
    /// How far random subspaces beat the optimum (≤ 0 when the theorem holds).
    pub sampled_violation: f64,
}

/// Checks both Courant–Fischer characterizations of the `k`-th smallest
/// eigenvalue (`1 ≤ k ≤ n`): exactly on the optimal subspaces and by sampling
/// `trials` random subspaces of each relevant dimension.
pub fn check_courant_fischer(s: &SymMatrix, k: usize, trials: usize, seed: u64) -> Result<CourantFischerReport> {
    let n = s.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("k = {k} outside 1..={n}")));
    }
    let eig = eigh(s)?;
    let lambda_k = eig.values[k - 1];
    let max_min_optimal = min_ratio_on_subspace(s, &eig.vectors_range(k - 1, n))?;
    let min_max_optimal = max_ratio_on_subspace(s, &eig.vectors_range(0, k))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled_max_min = f64::NEG_INFINITY;
    let mut sampled_min_max = f64::INFINITY;
    for _ in 0..trials {
        let w = linalg::random_orthonormal(n, n - k + 1, &mut rng);
        sampled_max_min = sampled_max_min.max(min_ratio_on_subspace(s, &w)?);
        let w = linalg::random_orthonormal(n, k, &mut rng);
        sampled_min_max = sampled_min_max.min(max_ratio_on_subspace(s, &w)?);
    }
    let optimal_error = (max_min_optimal - lambda_k).abs().max((min_max_optimal - lambda_k).abs());
    let sampled_violation = if trials == 0 {
        0.0
    } else {
        (sampled_max_min - lambda_k).max(lambda_k - sampled_min_max)
    };
    Ok(CourantFischerReport {
        seed,
        lambda_k,
        max_min_optimal,
        min_max_optimal,
        sampled_max_min,
        sampled_min_max,
        optimal_error,
        sampled_violation,
    })
}
