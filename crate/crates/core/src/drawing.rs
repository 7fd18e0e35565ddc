//! Graph drawings: energy, minimum-energy spectral drawings, and rendering.
//!
//! A drawing of a graph with `m` vertices in `R^n` is an `m × n` matrix whose
//! row `i` holds the coordinates of vertex `i`. Its energy is the weighted sum
//! of squared edge lengths, which equals `tr(Rᵀ L R)`. Among balanced
//! (`1ᵀR = 0`) orthogonal (`RᵀR = I`) drawings the minimum energy is
//! `λ₂ + … + λ_{n+1}`, reached by the eigenvectors `u₂ … u_{n+1}` of `L`.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::jsonfmt::{self, Num};
use crate::laplacian::laplacian;
use crate::linalg;
use crate::spectra::eigh;

const ORTHOGONAL_TOL: f64 = 1e-8;
const COINCIDENT_TOL: f64 = 1e-9;

/// Coordinates of `m` vertices in `R^n`, `n < m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawingMatrix {
    r: DMatrix<f64>,
}

impl DrawingMatrix {
    pub fn new(r: DMatrix<f64>) -> Result<Self> {
        if r.ncols() == 0 || r.ncols() >= r.nrows() {
            return Err(Error::Dimension(format!(
                "a drawing of {} vertices needs 1 ≤ n < {} dimensions, got {}",
                r.nrows(),
                r.nrows(),
                r.ncols()
            )));
        }
        Ok(Self { r })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.r.nrows()
    }

    pub fn dims(&self) -> usize {
        self.r.ncols()
    }

    pub fn position(&self, v: usize) -> DVector<f64> {
        self.r.row(v).transpose()
    }

    /// Largest absolute column sum.
    pub fn balance_residual(&self) -> f64 {
        self.r.column_iter().map(|c| c.sum().abs()).fold(0.0, f64::max)
    }

    pub fn is_balanced(&self) -> bool {
        self.balance_residual() <= 1e-8 * self.vertex_count() as f64
    }

    pub fn orthogonality_residual(&self) -> f64 {
        linalg::orthonormality_residual(&self.r)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.orthogonality_residual() <= ORTHOGONAL_TOL
    }

    /// Pairs of vertices whose positions agree within `1e−9`.
    pub fn coincident_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                if (self.r.row(i) - self.r.row(j)).norm() <= COINCIDENT_TOL {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Edge weights as a diagonal, in edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeightDiagonal {
    entries: Vec<f64>,
}

impl EdgeWeightDiagonal {
    pub fn new(g: &WeightedGraph) -> Self {
        Self { entries: g.edges().into_iter().map(|(_, _, w)| w).collect() }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn edge_count(&self) -> usize {
        self.entries.len()
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(&self.entries))
    }
}

fn check_rows(g: &WeightedGraph, r: &DrawingMatrix) -> Result<()> {
    if r.vertex_count() != g.node_count() {
        return Err(Error::Dimension(format!(
            "drawing has {} rows, graph has {} nodes",
            r.vertex_count(),
            g.node_count()
        )));
    }
    Ok(())
}

/// `Σ_{ij ∈ E} w_ij ‖ρ(i) − ρ(j)‖²`.
pub fn energy(g: &WeightedGraph, r: &DrawingMatrix) -> Result<f64> {
    check_rows(g, r)?;
    let m = r.matrix();
    Ok(g.edges()
        .into_iter()
        .map(|(i, j, w)| w * (m.row(i) - m.row(j)).norm_squared())
        .sum())
}

/// `tr(Rᵀ L R)`.
pub fn energy_trace(g: &WeightedGraph, r: &DrawingMatrix) -> Result<f64> {
    check_rows(g, r)?;
    let m = r.matrix();
    Ok((m.transpose() * laplacian(g).matrix() * m).trace())
}

/// `tr(Rᵀ D̃ Ŵ D̃ᵀ R)` for the orientation drawn from `seed`.
pub fn energy_incidence(g: &WeightedGraph, r: &DrawingMatrix, seed: u64) -> Result<f64> {
    check_rows(g, r)?;
    let inc = g.oriented_incidence(seed).map(|x| x as f64);
    let w = EdgeWeightDiagonal::new(g).to_matrix();
    let m = r.matrix();
    Ok((m.transpose() * &inc * w * inc.transpose() * m).trace())
}

#[derive(Debug, Clone)]
pub struct SpectralDrawing {
    pub drawing: DrawingMatrix,
    /// `λ₂ … λ_{n+1}` of `L`.
    pub eigenvalues: Vec<f64>,
    pub energy: f64,
    /// Vertices drawn on top of each other (reported, not perturbed).
    pub coincident: Vec<(usize, usize)>,
}

/// Minimum-energy balanced orthogonal drawing in `R^n`.
pub fn spectral_drawing(g: &WeightedGraph, n: usize) -> Result<SpectralDrawing> {
    let m = g.node_count();
    if n == 0 || n + 1 > m {
        return Err(Error::Dimension(format!(
            "cannot draw {m} vertices in {n} dimensions (need 1 ≤ n ≤ {})",
            m.saturating_sub(1)
        )));
    }
    let components = g.connected_components().len();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    let eig = eigh(&laplacian(g))?;
    let drawing = DrawingMatrix::new(eig.vectors_range(1, n + 1))?;
    let eigenvalues: Vec<f64> = eig.values.iter().skip(1).take(n).copied().collect();
    let energy = energy(g, &drawing)?;
    let coincident = drawing.coincident_pairs();
    Ok(SpectralDrawing { drawing, eigenvalues, energy, coincident })
}

/// `λ₂ + … + λ_{n+1}`: no balanced orthogonal drawing in `R^n` has less
/// energy.
pub fn minimum_energy_lower_bound(g: &WeightedGraph, n: usize) -> Result<f64> {
    let m = g.node_count();
    if n + 1 > m {
        return Err(Error::Dimension(format!("n + 1 = {} exceeds {m} vertices", n + 1)));
    }
    let eig = eigh(&laplacian(g))?;
    Ok(eig.values.iter().skip(1).take(n).sum())
}

/// `R Q` for an orthogonal `Q`.
pub fn rotate_drawing(r: &DrawingMatrix, q: &DMatrix<f64>) -> Result<DrawingMatrix> {
    if q.nrows() != r.dims() || q.ncols() != r.dims() {
        return Err(Error::Dimension(format!(
            "rotation must be {0}×{0}, got {1}×{2}",
            r.dims(),
            q.nrows(),
            q.ncols()
        )));
    }
    let residual = linalg::orthonormality_residual(q);
    if residual > ORTHOGONAL_TOL {
        return Err(Error::NotOrthonormal { residual });
    }
    DrawingMatrix::new(r.matrix() * q)
}

/// Uniform-ish random balanced orthogonal drawing: Gaussian entries, column
/// means removed, then orthonormalized.
pub fn random_balanced_orthogonal<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Result<DrawingMatrix> {
    let mut x = linalg::gaussian_matrix(m, n, rng);
    for mut col in x.column_iter_mut() {
        let mean = col.mean();
        col.add_scalar_mut(-mean);
    }
    DrawingMatrix::new(linalg::gram_schmidt(&x)?)
}

fn check_planar(g: &WeightedGraph, r: &DrawingMatrix) -> Result<()> {
    check_rows(g, r)?;
    if r.dims() != 2 {
        return Err(Error::Dimension(format!("rendering needs a 2-D drawing, got {} dims", r.dims())));
    }
    Ok(())
}

/// SVG 1.1 rendering of a planar drawing. The `y` axis points up.
pub fn to_svg(g: &WeightedGraph, r: &DrawingMatrix) -> Result<String> {
    check_planar(g, r)?;
    let m = r.matrix();
    let pts: Vec<(f64, f64)> = m.row_iter().map(|row| (row[0], -row[1])).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let mut diag = (x1 - x0).hypot(y1 - y0);
    if diag == 0.0 {
        diag = 1.0;
    }
    let margin = 0.05 * diag;
    let radius = 0.02 * diag;
    let max_w = g.edges().iter().map(|e| e.2).fold(0.0, f64::max);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">",
        x0 - margin,
        y0 - margin,
        x1 - x0 + 2.0 * margin,
        y1 - y0 + 2.0 * margin
    )
    .unwrap();
    s.push_str("<g stroke=\"#1f3a5f\" stroke-linecap=\"round\">\n");
    for (i, j, w) in g.edges() {
        let width = 0.006 * diag * w / max_w;
        writeln!(
            s,
            "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke-width=\"{:.6}\"/>",
            pts[i].0, pts[i].1, pts[j].0, pts[j].1, width
        )
        .unwrap();
    }
    s.push_str("</g>\n<g fill=\"#c0392b\">\n");
    for &(x, y) in &pts {
        writeln!(s, "<circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"{radius:.6}\"/>").unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

#[derive(Debug, Serialize)]
pub struct DrawingJson {
    pub nodes: Vec<Vec<Num>>,
    pub edges: Vec<(usize, usize, Num)>,
}

/// `{"nodes": [[x, y, …], …], "edges": [[u, v, w], …]}`.
pub fn to_json(g: &WeightedGraph, r: &DrawingMatrix) -> Result<DrawingJson> {
    check_rows(g, r)?;
    Ok(DrawingJson {
        nodes: jsonfmt::rows(r.matrix()),
        edges: g.edges().into_iter().map(|(i, j, w)| (i, j, Num(w))).collect(),
    })
}

/// Edge lengths sorted ascending; basis-independent when the drawing spans
/// whole eigenspaces.
pub fn sorted_edge_lengths(g: &WeightedGraph, r: &DrawingMatrix) -> Result<Vec<f64>> {
    check_rows(g, r)?;
    let m = r.matrix();
    let mut out: Vec<f64> = g.edges().into_iter().map(|(i, j, _)| (m.row(i) - m.row(j)).norm()).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generators::{bucky, path, ring};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn trivial_energies() {
        let k2 = path(2).unwrap();
        let r = DrawingMatrix::new(DMatrix::from_row_slice(2, 1, &[0.0, 1.0])).unwrap();
        assert_eq!(energy(&k2, &r).unwrap(), 1.0);
        let g = ring(5).unwrap();
        let zero = DrawingMatrix::new(DMatrix::zeros(5, 2)).unwrap();
        assert_eq!(energy(&g, &zero).unwrap(), 0.0);
        assert!(DrawingMatrix::new(DMatrix::zeros(3, 3)).is_err());
        assert!(energy(&k2, &zero).is_err());
    }

    #[test]
    fn ring_drawing() {
        let g = ring(12).unwrap();
        let d = spectral_drawing(&g, 2).unwrap();
        let expected = 2.0 * (2.0 - 3f64.sqrt());
        assert!((d.energy - expected).abs() < 1e-10);
        assert!(d.drawing.is_orthogonal() && d.drawing.is_balanced());
        assert!(d.coincident.is_empty());
        let lengths = sorted_edge_lengths(&g, &d.drawing).unwrap();
        // Every edge of the regular 12-gon has the same length.
        assert!(lengths[11] - lengths[0] < 1e-10);
        let bound = minimum_energy_lower_bound(&g, 2).unwrap();
        assert!((bound - expected).abs() < 1e-10);
    }

    #[test]
    fn square_drawing() {
        let d = spectral_drawing(&fixtures::square(), 2).unwrap();
        assert!((d.energy - 4.0).abs() < 1e-10);
    }

    #[test]
    fn bucky_drawing() {
        let g = bucky();
        let d = spectral_drawing(&g, 3).unwrap();
        assert!((d.energy - 0.7302).abs() < 3e-3, "{}", d.energy);
        assert!((d.energy - 3.0 * d.eigenvalues[0]).abs() < 1e-8);
        // Pentagon edges and hexagon-hexagon edges: two length classes.
        let lengths = sorted_edge_lengths(&g, &d.drawing).unwrap();
        let gap = (1..lengths.len()).max_by(|&a, &b| {
            (lengths[a] - lengths[a - 1]).total_cmp(&(lengths[b] - lengths[b - 1]))
        });
        let split = gap.unwrap();
        assert!(lengths[split - 1] - lengths[0] < 1e-8);
        assert!(lengths[89] - lengths[split] < 1e-8);
        let mut counts = [split, 90 - split];
        counts.sort();
        assert_eq!(counts, [30, 60]);
    }

    #[test]
    fn full_dimension_bound_is_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = fixtures::random_connected_graph(7, 0.5, &mut rng);
        let bound = minimum_energy_lower_bound(&g, 6).unwrap();
        assert!((bound - laplacian(&g).matrix().trace()).abs() < 1e-9);
    }

    #[test]
    fn drawing_errors() {
        assert!(matches!(spectral_drawing(&path(2).unwrap(), 2), Err(Error::Dimension(_))));
        let two = WeightedGraph::from_unit_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(spectral_drawing(&two, 1), Err(Error::Disconnected { components: 2 })));
        let r = spectral_drawing(&ring(6).unwrap(), 2).unwrap().drawing;
        let skew = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(rotate_drawing(&r, &skew), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn rotations_keep_energy_and_distances() {
        let g = ring(12).unwrap();
        let r = spectral_drawing(&g, 2).unwrap().drawing;
        let ident = rotate_drawing(&r, &DMatrix::identity(2, 2)).unwrap();
        assert_eq!(ident, r);
        let quarter = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let rq = rotate_drawing(&r, &quarter).unwrap();
        assert!(close(energy(&g, &rq).unwrap(), energy(&g, &r).unwrap(), 1e-12));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q = linalg::random_orthogonal(2, &mut rng);
        let rq = rotate_drawing(&r, &q).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let a = (r.matrix().row(i) - r.matrix().row(j)).norm();
                let b = (rq.matrix().row(i) - rq.matrix().row(j)).norm();
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn svg_and_json() {
        let k2 = path(2).unwrap();
        let r = DrawingMatrix::new(DMatrix::from_row_slice(2, 1, &[0.0, 1.0])).unwrap();
        assert!(to_svg(&k2, &r).is_err());
        let g3 = path(3).unwrap();
        let r = DrawingMatrix::new(DMatrix::from_row_slice(3, 2, &[0.0, 0.0, 1.0, 0.0, 1.0, 1.0])).unwrap();
        let svg = to_svg(&g3, &r).unwrap();
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("viewBox=\"-0.070711 -1.070711 1.141421 1.141421\""));
        assert_eq!(svg, to_svg(&g3, &r).unwrap());

        let g = ring(12).unwrap();
        let d = spectral_drawing(&g, 2).unwrap().drawing;
        let svg = to_svg(&g, &d).unwrap();
        assert_eq!(svg.matches("<line").count(), 12);
        assert_eq!(svg.matches("<circle").count(), 12);

        let json = serde_json::to_string(&to_json(&g3, &r).unwrap()).unwrap();
        assert_eq!(json, r#"{"nodes":[[0.0,0.0],[1.0,0.0],[1.0,1.0]],"edges":[[0,1,1.0],[1,2,1.0]]}"#);
    }

    #[test]
    fn edge_weight_diagonal_order() {
        let g = WeightedGraph::from_edges(3, &[(1, 2, 0.5), (0, 2, 2.0)]).unwrap();
        assert_eq!(EdgeWeightDiagonal::new(&g).entries(), &[2.0, 0.5]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn three_energy_forms_agree(seed in any::<u64>(), n in 3usize..10, dims in 1usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = fixtures::random_weighted_graph(n, 0.5, &mut rng);
            let r = DrawingMatrix::new(linalg::gaussian_matrix(n, dims, &mut rng)).unwrap();
            let direct = energy(&g, &r).unwrap();
            prop_assert!(close(direct, energy_trace(&g, &r).unwrap(), 1e-9));
            prop_assert!(close(direct, energy_incidence(&g, &r, seed).unwrap(), 1e-9));
        }

        #[test]
        fn random_drawings_respect_bound(seed in any::<u64>(), n in 4usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = fixtures::random_connected_graph(n, 0.4, &mut rng);
            let dims = 1 + (seed as usize) % (n - 2);
            let bound = minimum_energy_lower_bound(&g, dims).unwrap();
            let best = spectral_drawing(&g, dims).unwrap();
            prop_assert!((best.energy - bound).abs() <= 1e-8);
            for _ in 0..20 {
                let r = random_balanced_orthogonal(n, dims, &mut rng).unwrap();
                prop_assert!(r.is_balanced() && r.is_orthogonal());
                prop_assert!(energy_trace(&g, &r).unwrap() >= bound - 1e-8);
            }
        }
    }
}
