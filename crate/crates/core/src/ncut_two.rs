//! Two-way normalized cuts.
//!
//! A bipartition `{A, Ā}` is encoded by a vector taking the value `a` on `A`
//! and `b` on `Ā`. When `aα + b(d − α) = 0` (with `α = vol(A)`, `d = vol(V)`),
//! equivalently `xᵀD1 = 0`, the Rayleigh ratio `xᵀLx / xᵀDx` equals
//! `Ncut(A, Ā)`. Dropping the two-valued constraint gives an eigenproblem for
//! `L_sym` whose second eigenvalue bounds every normalized cut from below; the
//! rounding step maps the relaxed vector back to a bipartition.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::graph::{Partition, WeightedGraph};
use crate::laplacian::{laplacian, normalized_laplacians};
use crate::spectra::eigh;

/// How the two indicator values are chosen for a given split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndicatorConvention {
    /// `a = √((d−α)/α)`, `b = −√(α/(d−α))`, so that `xᵀDx = d`.
    #[default]
    VonLuxburg,
    /// `a = 1`, `b = −α/(d−α)`.
    ShiMalik,
    /// `a = 1/α`, `b = −1/(d−α)`.
    BelkinNiyogi,
}

/// Two-valued vector: `a` where `membership` is true, `b` elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoWayIndicator {
    pub x: DVector<f64>,
    pub a: f64,
    pub b: f64,
    pub membership: Vec<bool>,
}

impl TwoWayIndicator {
    /// Builds the vector from arbitrary values. Both sides must be nonempty;
    /// (†) is not checked.
    pub fn from_values(membership: Vec<bool>, a: f64, b: f64) -> Result<Self> {
        if !membership.iter().any(|&m| m) || membership.iter().all(|&m| m) {
            return Err(Error::InvalidInput("indicator needs both sides nonempty".into()));
        }
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidInput("indicator values must be finite".into()));
        }
        let x = DVector::from_iterator(membership.len(), membership.iter().map(|&m| if m { a } else { b }));
        Ok(Self { x, a, b, membership })
    }

    pub fn side(&self) -> Vec<usize> {
        (0..self.membership.len()).filter(|&i| self.membership[i]).collect()
    }

    pub fn partition(&self) -> Partition {
        Partition::bipartition(self.membership.len(), &self.side()).expect("both sides nonempty")
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_values(self.membership.clone(), self.a * factor, self.b * factor)
    }
}

fn membership_of(n: usize, a: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &i in a {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        m[i] = true;
    }
    Ok(m)
}

pub fn make_indicator(g: &WeightedGraph, a: &[usize], convention: IndicatorConvention) -> Result<TwoWayIndicator> {
    let n = g.node_count();
    let membership = membership_of(n, a)?;
    let count = membership.iter().filter(|&&m| m).count();
    if count == 0 || count == n {
        return Err(Error::InvalidInput("the split must be a proper nonempty subset".into()));
    }
    let alpha = g.vol(a);
    let d = g.total_volume();
    if alpha <= 0.0 {
        return Err(Error::ZeroVolume { block: 0 });
    }
    if d - alpha <= 0.0 {
        return Err(Error::ZeroVolume { block: 1 });
    }
    let (va, vb) = match convention {
        IndicatorConvention::VonLuxburg => (((d - alpha) / alpha).sqrt(), -(alpha / (d - alpha)).sqrt()),
        IndicatorConvention::ShiMalik => (1.0, -alpha / (d - alpha)),
        IndicatorConvention::BelkinNiyogi => (1.0 / alpha, -1.0 / (d - alpha)),
    };
    TwoWayIndicator::from_values(membership, va, vb)
}

/// Whether `aα + b(d − α) = 0`, i.e. `xᵀD1 = 0`.
pub fn check_dagger(g: &WeightedGraph, ind: &TwoWayIndicator) -> bool {
    let alpha = g.vol(&ind.side());
    let d = g.total_volume();
    let lhs = ind.a * alpha + ind.b * (d - alpha);
    lhs.abs() <= 1e-10 * d * ind.a.abs().max(ind.b.abs())
}

/// `xᵀLx / xᵀDx`, which equals `Ncut(A, Ā)` under (†).
pub fn ncut_rayleigh(g: &WeightedGraph, ind: &TwoWayIndicator) -> Result<f64> {
    if ind.x.len() != g.node_count() {
        return Err(Error::Dimension(format!("indicator of length {} for {} nodes", ind.x.len(), g.node_count())));
    }
    if !check_dagger(g, ind) {
        return Err(Error::InvalidInput("indicator violates aα + b(d − α) = 0".into()));
    }
    let (num, den) = indicator_forms(g, ind);
    Ok(num / den)
}

/// `(xᵀLx, xᵀDx)`.
pub fn indicator_forms(g: &WeightedGraph, ind: &TwoWayIndicator) -> (f64, f64) {
    let l = laplacian(g);
    let num = ind.x.dot(&(l.matrix() * &ind.x));
    let den = ind.x.component_mul(&g.degrees()).dot(&ind.x);
    (num, den)
}

/// Relaxed 2-way solution: `y` is a unit eigenvector of `L_sym` for its
/// second eigenvalue and `z = D^{−1/2} y`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxedSolution {
    pub y: DVector<f64>,
    pub z: DVector<f64>,
    pub nu2: f64,
}

pub fn relax_two(g: &WeightedGraph) -> Result<RelaxedSolution> {
    let bundle = normalized_laplacians(g)?;
    let components = g.connected_components().len();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    if g.node_count() < 2 {
        return Err(Error::InvalidInput("need at least two nodes".into()));
    }
    let eig = eigh(&bundle.l_sym)?;
    let y = eig.vector(1);
    let z = y.component_mul(&bundle.inv_sqrt_degrees());
    Ok(RelaxedSolution { y, z, nu2: eig.values[1] })
}

/// `A = {i : z_i ≥ 0}` (zeros go to `A`), `Ā` the rest; blocks in that order.
pub fn sign_round(z: &DVector<f64>) -> Result<Partition> {
    if !z.iter().any(|&v| v > 0.0) || !z.iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidInput("relaxed vector must have both signs".into()));
    }
    let a: Vec<usize> = (0..z.len()).filter(|&i| z[i] >= 0.0).collect();
    Partition::bipartition(z.len(), &a)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundedTwoWay {
    pub indicator: TwoWayIndicator,
    pub partition: Partition,
    /// Final `‖x − z‖₂`.
    pub distance: f64,
    /// Whether `z` was negated before rounding.
    pub flipped: bool,
    /// `‖x − z‖₂` after the initial fit and after every zero-entry trial.
    pub history: Vec<f64>,
}

/// Spread of `values` around their mean.
fn spread(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| (v - mean).powi(2)).sum::<f64>().sqrt()
}

struct Fit {
    a: f64,
    beta: f64,
    distance: f64,
}

/// Best vector of the form `a` on `side`, `−βa` elsewhere, with
/// `β = vol(side) / (d − vol(side))`, in the least-squares sense.
fn fit(z: &DVector<f64>, side: &[bool], alpha: f64, d: f64) -> Fit {
    let n = z.len();
    let beta = alpha / (d - alpha);
    let n_a = side.iter().filter(|&&s| s).count() as f64;
    let (mut sum_in, mut sum_out) = (0.0, 0.0);
    for i in 0..n {
        if side[i] {
            sum_in += z[i];
        } else {
            sum_out += z[i];
        }
    }
    let a = (sum_in - beta * sum_out) / (n_a + beta * beta * (n as f64 - n_a));
    let distance = (0..n)
        .map(|i| {
            let x = if side[i] { a } else { -beta * a };
            (x - z[i]).powi(2)
        })
        .sum::<f64>()
        .sqrt();
    Fit { a, beta, distance }
}

/// Rounds a relaxed vector to the nearest feasible two-valued indicator:
/// orient `z` so the positive side is the flatter one, fit `a` and `−βa` to
/// the sign pattern, then try moving each zero entry into the positive side
/// (ascending index order, each tried once) and keep the move if it brings
/// the fit closer to `z`.
pub fn round_two(g: &WeightedGraph, z: &DVector<f64>) -> Result<RoundedTwoWay> {
    let n = g.node_count();
    if z.len() != n {
        return Err(Error::Dimension(format!("vector of length {} for {n} nodes", z.len())));
    }
    if let Some(node) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex { node });
    }
    let pos: Vec<f64> = z.iter().copied().filter(|&v| v > 0.0).collect();
    let neg: Vec<f64> = z.iter().copied().filter(|&v| v < 0.0).collect();
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::InvalidInput("relaxed vector must have both signs".into()));
    }
    let flipped = spread(&pos) > spread(&neg);
    let z = if flipped { -z } else { z.clone() };

    let degrees = g.degrees();
    let d = g.total_volume();
    let mut side: Vec<bool> = z.iter().map(|&v| v > 0.0).collect();
    let mut alpha: f64 = (0..n).filter(|&i| side[i]).map(|i| degrees[i]).sum();
    let mut best = fit(&z, &side, alpha, d);
    let mut history = vec![best.distance];

    for i in (0..n).filter(|&i| z[i] == 0.0) {
        side[i] = true;
        let trial_alpha = alpha + degrees[i];
        let trial = fit(&z, &side, trial_alpha, d);
        if trial.distance < best.distance {
            alpha = trial_alpha;
            best = trial;
        } else {
            side[i] = false;
        }
        history.push(best.distance);
    }

    let indicator = TwoWayIndicator::from_values(side, best.a, -best.beta * best.a)?;
    let partition = indicator.partition();
    Ok(RoundedTwoWay { indicator, partition, distance: best.distance, flipped, history })
}
