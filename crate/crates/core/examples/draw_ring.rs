//! Spectral drawing of a ring, written as SVG.
//!
//! `cargo run --example draw_ring -- ring.svg` (prints to stdout without an
//! argument).

use specgraph::drawing::{spectral_drawing, to_svg};
use specgraph::generators::ring;

fn main() {
    let g = ring(12).unwrap();
    let d = spectral_drawing(&g, 2).expect("ring is connected");
    eprintln!("energy {:.6} (λ₂ + λ₃ = {:.6})", d.energy, d.eigenvalues.iter().sum::<f64>());
    let svg = to_svg(&g, &d.drawing).unwrap();
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, svg).expect("writable path"),
        None => print!("{svg}"),
    }
}
