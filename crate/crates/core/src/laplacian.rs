//! Unnormalized and normalized graph Laplacians.
//!
//! `L = D − W`, `L_sym = D^{−1/2} L D^{−1/2}`, `L_rw = D^{−1} L`. The spectrum
//! of `L_rw` is never computed directly: it is similar to `L_sym`, and an
//! eigenvector `y` of `L_sym` maps to the eigenvector `D^{−1/2} y` of `L_rw`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::spectra::{eigh, EigenDecomposition, SymMatrix};

pub fn laplacian(g: &WeightedGraph) -> SymMatrix {
    SymMatrix::new(g.degree_matrix() - g.weights()).expect("D − W is symmetric")
}

/// `L` together with both normalized Laplacians. Requires every degree to be
/// positive.
#[derive(Debug, Clone)]
pub struct LaplacianBundle {
    pub l: SymMatrix,
    pub degrees: DVector<f64>,
    pub l_sym: SymMatrix,
    pub l_rw: DMatrix<f64>,
}

impl LaplacianBundle {
    pub fn sqrt_degrees(&self) -> DVector<f64> {
        self.degrees.map(f64::sqrt)
    }

    pub fn inv_sqrt_degrees(&self) -> DVector<f64> {
        self.degrees.map(|d| 1.0 / d.sqrt())
    }
}

pub fn normalized_laplacians(g: &WeightedGraph) -> Result<LaplacianBundle> {
    if let Some(node) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex { node });
    }
    let l = laplacian(g);
    let degrees = g.degrees();
    let inv_sqrt = degrees.map(|d| 1.0 / d.sqrt());
    let n = g.node_count();
    let mut l_sym = DMatrix::zeros(n, n);
    let mut l_rw = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            l_sym[(i, j)] = inv_sqrt[i] * l.matrix()[(i, j)] * inv_sqrt[j];
            l_rw[(i, j)] = l.matrix()[(i, j)] / degrees[i];
        }
    }
    // Exact symmetry: the product above is symmetric up to rounding order.
    let l_sym = (&l_sym + l_sym.transpose()) * 0.5;
    Ok(LaplacianBundle { l, degrees, l_sym: SymMatrix::new(l_sym)?, l_rw })
}

/// `xᵀ L x`.
pub fn quadratic_form(l: &SymMatrix, x: &DVector<f64>) -> Result<f64> {
    if x.len() != l.dim() {
        return Err(Error::Dimension(format!("vector of length {} for {} nodes", x.len(), l.dim())));
    }
    Ok(x.dot(&(l.matrix() * x)))
}

/// `½ Σ_{i,j} w_ij (x_i − x_j)²`.
pub fn pairwise_form(g: &WeightedGraph, x: &DVector<f64>) -> Result<f64> {
    if x.len() != g.node_count() {
        return Err(Error::Dimension(format!("vector of length {} for {} nodes", x.len(), g.node_count())));
    }
    Ok(pairwise_form_of(g.weights(), x))
}

/// Pairwise form for an arbitrary square weight matrix; diagonal entries
/// contribute nothing.
pub fn pairwise_form_of(w: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    let n = w.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = x[i] - x[j];
            acc += w[(i, j)] * d * d;
        }
    }
    0.5 * acc
}

/// Default threshold for counting an eigenvalue as zero: `1e−8 · max(1, λ_max)`.
pub fn zero_tolerance(values: &DVector<f64>) -> f64 {
    let top = values.iter().copied().fold(0.0_f64, f64::max);
    1e-8 * top.max(1.0)
}

/// Dimension of the nullspace of `L`: the number of eigenvalues below `tol`
/// (default [`zero_tolerance`]).
pub fn component_count_spectral(g: &WeightedGraph, tol: Option<f64>) -> Result<usize> {
    let eig = eigh(&laplacian(g))?;
    let tol = tol.unwrap_or_else(|| zero_tolerance(&eig.values));
    Ok(eig.values.iter().filter(|&&v| v < tol).count())
}

/// Orthonormal basis of the nullspace of `L`.
pub fn nullspace(g: &WeightedGraph) -> Result<DMatrix<f64>> {
    let eig = eigh(&laplacian(g))?;
    let tol = zero_tolerance(&eig.values);
    let k = eig.values.iter().filter(|&&v| v < tol).count();
    Ok(eig.vectors_range(0, k))
}

/// Solutions of `L u = λ D u`, computed through `L_sym`: `values` is the
/// spectrum of `L_sym` (equal to that of `L_rw`) and column `k` of `vectors`
/// is `D^{−1/2} y_k`, which is also an eigenvector of `L_rw`.
#[derive(Debug, Clone)]
pub struct GeneralizedEigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
    pub sym: EigenDecomposition,
}

pub fn generalized_eigen(g: &WeightedGraph) -> Result<GeneralizedEigen> {
    let bundle = normalized_laplacians(g)?;
    generalized_eigen_of(&bundle)
}

pub fn generalized_eigen_of(bundle: &LaplacianBundle) -> Result<GeneralizedEigen> {
    let sym = eigh(&bundle.l_sym)?;
    let inv_sqrt = bundle.inv_sqrt_degrees();
    let mut vectors = sym.vectors.clone();
    for mut col in vectors.column_iter_mut() {
        col.component_mul_assign(&inv_sqrt);
    }
    Ok(GeneralizedEigen { values: sym.values.clone(), vectors, sym })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Adjp2Report {
    pub trials: usize,
    /// Orientations whose `D̃ D̃ᵀ` differed from `D − A`.
    pub oriented_failures: usize,
    /// Whether the unoriented incidence matrix satisfies `D̃ D̃ᵀ = D + A`.
    pub unoriented_holds: bool,
}

impl Adjp2Report {
    pub fn holds(&self) -> bool {
        self.oriented_failures == 0 && self.unoriented_holds
    }
}

/// Checks in integer arithmetic that `D̃ D̃ᵀ = D − A` for `trials` seeded
/// orientations (seeds `seed..seed + trials`) and that the unoriented
/// incidence matrix gives `D + A`.
pub fn check_adjp2(g: &WeightedGraph, trials: usize, seed: u64) -> Result<Adjp2Report> {
    if !g.is_binary() {
        return Err(Error::InvalidGraph("orientation check requires 0/1 weights".into()));
    }
    let a = g.adjacency_matrix();
    let n = g.node_count();
    let d = DMatrix::from_fn(n, n, |i, j| if i == j { a.row(i).sum() } else { 0 });
    let combinatorial = &d - &a;
    let mut failures = 0;
    for t in 0..trials {
        let inc = g.orient(seed.wrapping_add(t as u64))?.incidence_matrix();
        if &inc * inc.transpose() != combinatorial {
            failures += 1;
        }
    }
    let un = g.unoriented_incidence_matrix()?;
    let unoriented_holds = &un * un.transpose() == &d + &a;
    Ok(Adjp2Report { trials, oriented_failures: failures, unoriented_holds })
}
