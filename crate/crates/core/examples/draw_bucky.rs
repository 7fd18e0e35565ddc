//! Three-dimensional spectral drawing of the truncated icosahedron. The
//! eigenspace of λ₂ is three-dimensional, and the drawing recovers the
//! polyhedron: edge lengths fall into two classes (pentagon edges and
//! hexagon–hexagon edges).

use specgraph::drawing::{minimum_energy_lower_bound, sorted_edge_lengths, spectral_drawing};
use specgraph::generators::bucky;

fn main() {
    let g = bucky();
    let d = spectral_drawing(&g, 3).unwrap();
    println!("λ₂..λ₄ = {:?}", d.eigenvalues);
    println!("energy = {:.6}, lower bound = {:.6}", d.energy, minimum_energy_lower_bound(&g, 3).unwrap());

    let lengths = sorted_edge_lengths(&g, &d.drawing).unwrap();
    let mut classes: Vec<(f64, usize)> = Vec::new();
    for l in lengths {
        match classes.last_mut() {
            Some((v, c)) if (l - *v).abs() < 1e-8 => *c += 1,
            _ => classes.push((l, 1)),
        }
    }
    for (len, count) in classes {
        println!("{count} edges of length {len:.6}");
    }
}
