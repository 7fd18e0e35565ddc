//! Spectra of the unnormalized and normalized Laplacians for a few named
//! graphs, plus the component count read off the nullspace.

use specgraph::generators::{bucky, ring};
use specgraph::graph::WeightedGraph;
use specgraph::laplacian::{component_count_spectral, generalized_eigen, laplacian};
use specgraph::{fixtures, spectra::eigh};

fn show(name: &str, g: &WeightedGraph) {
    let values = eigh(&laplacian(g)).expect("symmetric").values;
    let shown: Vec<String> = values.iter().take(6).map(|v| format!("{v:.6}")).collect();
    println!("{name:>10}: L   {}", shown.join(" "));
    if let Ok(ge) = generalized_eigen(g) {
        let shown: Vec<String> = ge.values.iter().take(6).map(|v| format!("{v:.6}")).collect();
        println!("{:>10}  Lsym {}", "", shown.join(" "));
    }
}

fn main() {
    show("square", &fixtures::square());
    show("ring(12)", &ring(12).unwrap());
    show("bucky", &bucky());
    println!("2 − √3 = {:.6}", 2.0 - 3f64.sqrt());

    let split = WeightedGraph::from_unit_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
    println!("components of a two-path graph: {}", component_count_spectral(&split, None).unwrap());
}
