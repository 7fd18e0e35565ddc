//! Exhaustive normalized-cut and minimum-cut search. On two cliques with a
//! pendant vertex the minimum cut just chops off the pendant, while the best
//! normalized cut separates the cliques.

use specgraph::fixtures;
use specgraph::oracle::{brute_mincut, brute_ncut, stirling};

fn main() {
    let g = fixtures::pendant_cliques();
    let m = brute_mincut(&g).unwrap();
    println!("min cut {:.3}: {:?} (ncut {:.4})", m.value, m.partition.canonical().blocks(), g.ncut(&m.partition).unwrap());
    let r = brute_ncut(&g, 2).unwrap();
    println!("best ncut {:.4}: {:?}", r.best_value, r.best_partition.canonical().blocks());

    let g = fixtures::three_triangles(0.2);
    let r = brute_ncut(&g, 3).unwrap();
    println!(
        "three triangles, K=3: {:.4} over {} partitions (S(9,3) = {})",
        r.best_value,
        r.evaluated_count,
        stirling(9, 3)
    );
}
