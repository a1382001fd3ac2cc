//! Scratch probe (not part of the deliverable): acceptance rates, weight
//! structure, and quick RMSE magnitudes.

use seqcal::calib::{bar_search, calibrate_designed, BarOptions};
use seqcal::dist::{gaussian_sd_expectation_factor, DistributionSpec};
use seqcal::estimate::{weighted_expectation, EstimatorSpec};

fn main() {
    let dist = DistributionSpec::gaussian(0.0, 1.0).unwrap();
    let opts = BarOptions::default();

    println!("== BAR acceptance rates (Gaussian) ==");
    for n in [5usize, 7, 10, 20, 50, 100] {
        let t0 = std::time::Instant::now();
        let pool = bar_search(&dist, n, 10, 42, &opts).unwrap();
        let rate = pool.acceptance_rate().unwrap();
        println!(
            "n={n:3}: 10 sets in {} attempts (rate {:.3}) in {:?}",
            pool.attempts, rate, t0.elapsed()
        );
    }

    println!("== BAR acceptance rates (Exponential) ==");
    let expo = DistributionSpec::exponential(1.0).unwrap();
    for n in [5usize, 9, 21, 51, 99] {
        let pool = bar_search(&expo, n, 10, 42, &opts).unwrap();
        println!("n={n:3}: attempts {}", pool.attempts);
    }

    println!("== BAR acceptance rates (hard families) ==");
    for spec in seqcal::dist::five_family_specs() {
        let pool = bar_search(&spec, 10, 3, 42, &opts).unwrap();
        println!("{spec}: attempts {}", pool.attempts);
    }

    println!("== designed-12 weight structure (Gaussian) ==");
    let mut ok_count = 0;
    let mut rc_sum = 0.0;
    let mut worst: (usize, f64) = (0, 1.0);
    for n in 5..=100 {
        let set = calibrate_designed(&dist, n, 42).unwrap();
        let w = &set.weights;
        let anchor = w[0] + w[1];
        let rand_comp = w[10] + w[11];
        rc_sum += rand_comp;
        if anchor > 0.70 {
            ok_count += 1;
        }
        if anchor < worst.1 {
            worst = (n, anchor);
        }
        if n <= 12 || n % 20 == 0 {
            println!(
                "n={n:3}: residual {:.2e} anchor {:.3} rand+comp {:.4} w={:?}",
                set.residual,
                anchor,
                rand_comp,
                w.iter().map(|x| (x * 1000.0).round() / 1000.0).collect::<Vec<_>>()
            );
        }
    }
    println!(
        "anchor>0.7 for {ok_count}/96 n; mean rand+comp {:.4}; worst anchor at n={} ({:.3})",
        rc_sum / 96.0,
        worst.0,
        worst.1
    );

    println!("== quick BAR-G 10S bias probe (subset of n) ==");
    let est = EstimatorSpec::SampleSd;
    let mut sq = 0.0;
    let mut count = 0;
    for n in (5..=100).step_by(5) {
        let pool = bar_search(&dist, n, 10, seqcal::rng::derive_seed(7, n as u64), &opts).unwrap();
        let e = weighted_expectation(&pool, &dist, &est, n).unwrap();
        let t = gaussian_sd_expectation_factor(n).unwrap();
        sq += (e - t) * (e - t);
        count += 1;
        if n <= 15 || n % 25 == 0 {
            println!("n={n:3}: est {e:.6} truth {t:.6} err {:+.5}", e - t);
        }
    }
    println!("subset RMSE ~ {:.4} (paper full-grid value 0.0051)", (sq / count as f64).sqrt());
}
