//! Degree, adjacency, incidence and Laplacian matrices of a small digraph,
//! and the orientation-independence of `D̃ D̃ᵀ`.

use specgraph::fixtures;
use specgraph::laplacian::{check_adjp2, laplacian};

fn main() {
    let g1 = fixtures::g1();
    println!("degree matrix:{}", g1.degree_matrix());
    println!("adjacency matrix:{}", g1.adjacency_matrix());
    println!("incidence matrix:{}", g1.incidence_matrix());

    let inc = g1.incidence_matrix();
    println!("D̃ D̃ᵀ:{}", &inc * inc.transpose());

    let g2 = fixtures::g2();
    println!("L = D − A:{}", laplacian(&g2).matrix());
    let report = check_adjp2(&g2, 100, 7).expect("binary graph");
    println!(
        "{} random orientations, {} disagreed with D − A; unoriented product equals D + A: {}",
        report.trials, report.oriented_failures, report.unoriented_holds
    );
}
