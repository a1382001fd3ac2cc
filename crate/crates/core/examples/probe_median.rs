//! Scratch probe: exponential-median BAR rows vs weight-selection strategy.

use seqcal::calib::BarOptions;
use seqcal::dist::DistributionSpec;
use seqcal::estimate::{odd_grid, rmse_report, EstimatorSpec, Method, Quantity, TruthOracle};

fn main() {
    let opts = BarOptions::default();
    let expo = DistributionSpec::exponential(1.0).unwrap();
    let odd = odd_grid();
    for sets in [10usize, 30, 50] {
        let rep = rmse_report(
            &Method::Bar { sets },
            &expo,
            &EstimatorSpec::Median,
            Quantity::Bias,
            &odd,
            &TruthOracle::ExponentialMedian,
            10,
            2024,
            &opts,
        )
        .unwrap();
        println!("BAR-E {sets}S rmse {:.5} per-repeat {:?}", rep.rmse,
            rep.per_repeat.iter().map(|x| (x * 1e4).round() / 1e4).collect::<Vec<_>>());
    }
}
