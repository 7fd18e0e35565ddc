//! Two-way normalized cut: relax, round, and compare with the exhaustive
//! optimum.

use specgraph::fixtures;
use specgraph::ncut_two::{make_indicator, ncut_rayleigh, relax_two, round_two, IndicatorConvention};
use specgraph::oracle::brute_ncut;

fn main() {
    for bridge in [0.01, 0.1, 0.5] {
        let g = fixtures::bridged_triangles(bridge);
        let relaxed = relax_two(&g).unwrap();
        let rounded = round_two(&g, &relaxed.z).unwrap();
        let ncut = g.ncut(&rounded.partition).unwrap();
        let best = brute_ncut(&g, 2).unwrap();
        println!(
            "bridge {bridge}: ν₂ = {:.5} ≤ optimum {:.5} ≤ rounded {:.5}  blocks {:?}",
            relaxed.nu2,
            best.best_value,
            ncut,
            rounded.partition.canonical().blocks()
        );
    }

    let g = fixtures::bridged_triangles(0.1);
    for conv in [IndicatorConvention::VonLuxburg, IndicatorConvention::ShiMalik, IndicatorConvention::BelkinNiyogi] {
        let ind = make_indicator(&g, &[0, 1, 2], conv).unwrap();
        println!("{conv:?}: a = {:.4}, b = {:.4}, ratio = {:.6}", ind.a, ind.b, ncut_rayleigh(&g, &ind).unwrap());
    }
}
