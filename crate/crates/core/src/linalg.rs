//! Small dense helpers shared by the numerical modules.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Relative threshold below which a Gram–Schmidt residual counts as zero.
const GS_RANK_TOL: f64 = 1e-10;

/// Flip `v` so that its largest-magnitude entry is positive (ties: lowest index).
pub fn normalize_sign(v: &mut [f64]) {
    let mut best = 0usize;
    let mut best_abs = -1.0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > best_abs {
            best_abs = x.abs();
            best = i;
        }
    }
    if best_abs > 0.0 && v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Applies [`normalize_sign`] to every column of `m`.
pub fn normalize_column_signs(m: &mut DMatrix<f64>) {
    for mut col in m.column_iter_mut() {
        let mut tmp: Vec<f64> = col.iter().copied().collect();
        normalize_sign(&mut tmp);
        col.copy_from_slice(&tmp);
    }
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Orthonormalizes the columns of `m` in order (modified Gram–Schmidt with one
/// reorthogonalization pass). Fails if a column is numerically dependent on
/// its predecessors.
pub fn gram_schmidt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let scale = m.column_iter().fold(0.0_f64, |acc, c| acc.max(c.norm()));
    if scale == 0.0 {
        return Err(Error::RankDeficient("all columns are zero".into()));
    }
    let mut q = m.clone();
    for j in 0..q.ncols() {
        let mut v: DVector<f64> = q.column(j).into_owned();
        for _ in 0..2 {
            for k in 0..j {
                let qk = q.column(k);
                let proj = qk.dot(&v);
                v.axpy(-proj, &qk, 1.0);
            }
        }
        let norm = v.norm();
        if norm <= GS_RANK_TOL * scale {
            return Err(Error::RankDeficient(format!(
                "column {j} lies in the span of the previous columns"
            )));
        }
        q.set_column(j, &(v / norm));
    }
    Ok(q)
}

/// `‖MᵀM − I‖_F`.
pub fn orthonormality_residual(m: &DMatrix<f64>) -> f64 {
    let gram = m.transpose() * m;
    (gram - DMatrix::identity(m.ncols(), m.ncols())).norm()
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Random `rows × cols` matrix with orthonormal columns, obtained by
/// orthonormalizing a matrix of independent standard normal entries.
pub fn random_orthonormal<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<f64> {
    assert!(cols <= rows, "cannot have {cols} orthonormal columns in R^{rows}");
    loop {
        let g = gaussian_matrix(rows, cols, rng);
        if let Ok(q) = gram_schmidt(&g) {
            return q;
        }
    }
}

pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    random_orthonormal(n, n, rng)
}

pub fn random_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = gaussian_matrix(n, n, rng);
    (&g + g.transpose()) * 0.5
}

/// Solves the small SPD system `a x = b` by Cholesky factorization.
pub fn solve_spd(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    let chol = a
        .clone()
        .cholesky()
        .ok_or_else(|| Error::RankDeficient("Gram matrix is not positive definite".into()))?;
    Ok(chol.solve(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sign_convention_prefers_lowest_index_on_ties() {
        let mut v = vec![-1.0, 1.0, 0.5];
        normalize_sign(&mut v);
        assert_eq!(v, vec![1.0, -1.0, -0.5]);
        let mut w = vec![0.2, -3.0];
        normalize_sign(&mut w);
        assert_eq!(w, vec![-0.2, 3.0]);
    }

    #[test]
    fn gram_schmidt_rejects_dependent_columns() {
        let m = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 1.0, 2.0, 0.0, 0.0]);
        assert!(gram_schmidt(&m).is_err());
    }

    #[test]
    fn random_orthonormal_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (r, c) in [(5, 5), (7, 3), (1, 1)] {
            let q = random_orthonormal(r, c, &mut rng);
            assert!(orthonormality_residual(&q) < 1e-12);
        }
    }
}
