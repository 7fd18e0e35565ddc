//! Projective distance and why Euclidean nearest-point search suffices for
//! rounding onto a set closed under negation.

use nalgebra::DVector;
use specgraph::projective::{antipodal_min_equivalence, proj_distance, ProjectivePoint};

fn main() {
    let p = |v: &[f64]| ProjectivePoint::new(DVector::from_row_slice(v)).unwrap();
    println!("d([1,0],[1,1]) = {:.6} (π/4 = {:.6})", proj_distance(&p(&[1.0, 0.0]), &p(&[1.0, 1.0])).unwrap(), std::f64::consts::FRAC_PI_4);
    println!("d([x],[−x]) = {}", proj_distance(&p(&[0.3, -0.4]), &p(&[-0.3, 0.4])).unwrap());

    let e1 = DVector::from_row_slice(&[1.0, 0.0]);
    let e2 = DVector::from_row_slice(&[0.0, 1.0]);
    let set = vec![e1.clone(), -e1, e2.clone(), -e2];
    let x = DVector::from_row_slice(&[-0.9, 0.1]).normalize();
    let r = antipodal_min_equivalence(&x, &set).unwrap();
    println!("nearest by projective distance: {}, by Euclidean distance: {}, same class: {}", r.projective, r.euclidean, r.agree(&set));
}
