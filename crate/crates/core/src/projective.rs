//! Real projective space: nonzero vectors up to nonzero scaling.
//!
//! The distance between `[x]` and `[y]` is the angle between the lines they
//! span, `arccos(|x·y| / (‖x‖‖y‖))`, which lies in `[0, π/2]`. For a finite
//! set closed under `a ↦ −a`, the nearest class to `[x]` in this metric is the
//! class of the Euclidean-nearest unit vector to `x`, which is why discrete
//! solutions can be found by Euclidean rounding.

use nalgebra::DVector;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    rep: DVector<f64>,
}

impl ProjectivePoint {
    pub fn new(rep: DVector<f64>) -> Result<Self> {
        if !(rep.norm() > 0.0) {
            return Err(Error::InvalidInput("projective point needs a nonzero representative".into()));
        }
        Ok(Self { rep })
    }

    pub fn representative(&self) -> &DVector<f64> {
        &self.rep
    }

    pub fn distance(&self, other: &ProjectivePoint) -> Result<f64> {
        proj_distance(self, other)
    }
}

pub fn proj_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<f64> {
    if p.rep.len() != q.rep.len() {
        return Err(Error::Dimension(format!("points in R^{} and R^{}", p.rep.len(), q.rep.len())));
    }
    let cos = p.rep.dot(&q.rep).abs() / (p.rep.norm() * q.rep.norm());
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// Indices of the nearest element of `set` to `x`, once by projective
/// distance and once by Euclidean distance (first index wins ties).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntipodalArgmins {
    pub projective: usize,
    pub euclidean: usize,
}

impl AntipodalArgmins {
    /// True when both picks represent the same projective class.
    pub fn agree(&self, set: &[DVector<f64>]) -> bool {
        let a = &set[self.projective];
        let b = &set[self.euclidean];
        let cos = a.dot(b).abs() / (a.norm() * b.norm());
        (1.0 - cos).abs() <= 1e-12
    }
}

/// Nearest-point search over a finite antipodally closed set of unit vectors.
pub fn antipodal_min_equivalence(x: &DVector<f64>, set: &[DVector<f64>]) -> Result<AntipodalArgmins> {
    if set.is_empty() {
        return Err(Error::InvalidInput("empty candidate set".into()));
    }
    let px = ProjectivePoint::new(x.clone())?;
    const UNIT_TOL: f64 = 1e-9;
    for (i, a) in set.iter().enumerate() {
        if a.len() != x.len() {
            return Err(Error::Dimension(format!("candidate {i} has length {}", a.len())));
        }
        if (a.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidInput(format!("candidate {i} is not a unit vector")));
        }
        if !set.iter().any(|b| (a + b).norm() <= UNIT_TOL) {
            return Err(Error::InvalidInput(format!("set is not closed under negation (candidate {i})")));
        }
    }
    let mut best_p = (f64::INFINITY, 0);
    let mut best_e = (f64::INFINITY, 0);
    for (i, a) in set.iter().enumerate() {
        let dp = proj_distance(&px, &ProjectivePoint::new(a.clone())?)?;
        let de = (x - a).norm();
        if dp < best_p.0 {
            best_p = (dp, i);
        }
        if de < best_e.0 {
            best_e = (de, i);
        }
    }
    Ok(AntipodalArgmins { projective: best_p.1, euclidean: best_e.1 })
}
