//! K-way clustering of three loosely joined triangles, showing the
//! alternation trace for each pipeline variant.

use specgraph::fixtures;
use specgraph::ncut_k::{cluster, relax_k, ClusterOptions, RepairMode};
use specgraph::oracle::brute_ncut;

fn main() {
    let g = fixtures::three_triangles(0.01);
    let relaxed = relax_k(&g, 3).unwrap();
    let best = brute_ncut(&g, 3).unwrap();
    println!("relaxed bound {:.6}, exhaustive optimum {:.6}", relaxed.trace_value, best.best_value);

    for rescale in [false, true] {
        for repair in [RepairMode::Reassign, RepairMode::Shrink] {
            let opts = ClusterOptions { rescale, repair, ..Default::default() };
            let r = cluster(&g, 3, &opts).unwrap();
            println!(
                "rescale={rescale:<5} repair={repair:?}: ncut {:.6} after {} rounds, blocks {:?}",
                r.ncut,
                r.iterations,
                r.partition.canonical().blocks()
            );
            for e in &r.trace.entries {
                println!("    {:?} objective {:.3e} ncut {:.6}", e.step, e.objective, e.ncut);
            }
        }
    }
}
