//! Scratch probe: full-grid RMSE magnitudes for the comparison table.

use std::time::Instant;

use seqcal::calib::BarOptions;
use seqcal::dist::DistributionSpec;
use seqcal::estimate::{
    full_grid, odd_grid, rmse_report, EstimatorSpec, Method, Quantity, TruthOracle,
};

fn main() {
    let opts = BarOptions::default();
    let gauss = DistributionSpec::gaussian(0.0, 1.0).unwrap();
    let expo = DistributionSpec::exponential(1.0).unwrap();
    let grid = full_grid();
    let odd = odd_grid();
    let repeats = 10;

    let bias_rows: Vec<(&str, Method)> = vec![
        ("Arithmetic", Method::Arithmetic),
        ("Random 10S", Method::MonteCarlo { samples: 120 }),
        ("12 Designed 10S", Method::Designed { sets: 10 }),
        ("BAR-G 10S", Method::Bar { sets: 10 }),
        ("Random 50S", Method::MonteCarlo { samples: 600 }),
        ("BAR-G 50S", Method::Bar { sets: 50 }),
        ("BAR-5D 50S", Method::BarFiveFamily { base_sets: 20, sets_per_spec: 3 }),
    ];
    println!("== Bias-sd-G (paper: Rand10 .0129 Arith .0736 Des .0274 BarG10 .0051 Rand50 .0044 BarG50 .0049 5D .0024) ==");
    for (name, method) in &bias_rows {
        let t0 = Instant::now();
        let rep = rmse_report(
            method,
            &gauss,
            &EstimatorSpec::SampleSd,
            Quantity::Bias,
            &grid,
            &TruthOracle::GaussianSdExpectation,
            repeats,
            2024,
            &opts,
        )
        .unwrap();
        println!("{name:18} rmse {:.5}  ({:?})", rep.rmse, t0.elapsed());
    }

    println!("== Variance-sd-G (paper: Rand10 .0085 Des .1342 BarG10 .0350 Rand50 .0032 BarG50 .0341 5D .0307) ==");
    let var_rows: Vec<(&str, Method)> = vec![
        ("Random 10S", Method::MonteCarlo { samples: 120 }),
        ("12 Designed 10S", Method::Designed { sets: 10 }),
        ("BAR-G 10S", Method::Bar { sets: 10 }),
        ("Random 50S", Method::MonteCarlo { samples: 600 }),
        ("BAR-G 50S", Method::Bar { sets: 50 }),
    ];
    for (name, method) in &var_rows {
        let t0 = Instant::now();
        let rep = rmse_report(
            method,
            &gauss,
            &EstimatorSpec::SampleSd,
            Quantity::Variance,
            &grid,
            &TruthOracle::GaussianSdVariance,
            repeats,
            2024,
            &opts,
        )
        .unwrap();
        println!("{name:18} rmse {:.5}  ({:?})", rep.rmse, t0.elapsed());
    }

    println!("== Bias-median-E (paper: Rand10 .0195 Arith .0213 BarE10 .0112 BarE30 .0073 Rand50 .0074) ==");
    let med_rows: Vec<(&str, Method)> = vec![
        ("Random 10S", Method::MonteCarlo { samples: 120 }),
        ("Arithmetic", Method::Arithmetic),
        ("BAR-E 10S", Method::Bar { sets: 10 }),
        ("BAR-E 30S", Method::Bar { sets: 30 }),
        ("Random 50S", Method::MonteCarlo { samples: 600 }),
    ];
    for (name, method) in &med_rows {
        let t0 = Instant::now();
        let rep = rmse_report(
            method,
            &expo,
            &EstimatorSpec::Median,
            Quantity::Bias,
            &odd,
            &TruthOracle::ExponentialMedian,
            repeats,
            2024,
            &opts,
        )
        .unwrap();
        println!("{name:18} rmse {:.5}  ({:?})", rep.rmse, t0.elapsed());
    }
}
