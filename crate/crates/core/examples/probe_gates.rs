//! Scratch probe: all RMSE-gated rows under the current BAR weight selection.

use seqcal::calib::BarOptions;
use seqcal::dist::DistributionSpec;
use seqcal::estimate::{full_grid, odd_grid, rmse_report, EstimatorSpec, Method, Quantity, TruthOracle};

fn main() {
    let opts = BarOptions::default();
    let gauss = DistributionSpec::gaussian(0.0, 1.0).unwrap();
    let expo = DistributionSpec::exponential(1.0).unwrap();
    let grid = full_grid();
    let odd = odd_grid();
    for (name, method, gate) in [
        ("BAR-G 10S", Method::Bar { sets: 10 }, 0.008),
        ("BAR-G 50S", Method::Bar { sets: 50 }, 0.008),
        ("BAR-5D 50S", Method::BarFiveFamily { base_sets: 20, sets_per_spec: 3 }, 0.004),
    ] {
        let rep = rmse_report(&method, &gauss, &EstimatorSpec::SampleSd, Quantity::Bias,
            &grid, &TruthOracle::GaussianSdExpectation, 10, 2024, &opts).unwrap();
        println!("{name:11} rmse {:.5} (gate <= {gate})", rep.rmse);
    }
    for (name, sets, gate) in [("BAR-E 10S", 10usize, 0.016), ("BAR-E 30S", 30, 0.011)] {
        let rep = rmse_report(&Method::Bar { sets }, &expo, &EstimatorSpec::Median, Quantity::Bias,
            &odd, &TruthOracle::ExponentialMedian, 10, 2024, &opts).unwrap();
        println!("{name:11} rmse {:.5} (gate <= {gate})", rep.rmse);
    }
    let var = rmse_report(&Method::Bar { sets: 10 }, &gauss, &EstimatorSpec::SampleSd, Quantity::Variance,
        &grid, &TruthOracle::GaussianSdVariance, 10, 2024, &opts).unwrap();
    println!("BAR-G 10S variance rmse {:.5}", var.rmse);
}
