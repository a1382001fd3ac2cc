//! Estimation of finite-sample bias and variance from calibrated pools,
//! Monte Carlo baselines, RMSE comparisons against exact truths, and scaled
//! standard errors for cross-estimator variance comparison.

use std::io::Write;

use serde::Serialize;

use crate::calib::{self, BarOptions, SetPool};
use crate::dist::{self, DistributionSpec};
use crate::error::{Error, Result};
use crate::exec;
use crate::fileio::{self, FileMeta};
use crate::moments::u_central_moment;
use crate::rng;
use crate::seqlab;

/// A statistic of one sample.
#[derive(Clone, Copy, Debug)]
pub enum EstimatorSpec {
    Mean,
    /// Square root of the Bessel-corrected sample variance.
    SampleSd,
    Median,
    /// Unbiased central moment of order k (2..4).
    UCentralMoment(u32),
    /// A named pure function of a sample; must be deterministic and
    /// permutation-invariant.
    Plugin {
        name: &'static str,
        func: fn(&[f64]) -> f64,
    },
}

impl EstimatorSpec {
    /// Smallest sample size the estimator is defined for.
    pub fn min_n(&self) -> usize {
        match self {
            EstimatorSpec::Mean | EstimatorSpec::Median | EstimatorSpec::Plugin { .. } => 1,
            EstimatorSpec::SampleSd => 2,
            EstimatorSpec::UCentralMoment(k) => (*k as usize).max(2),
        }
    }

    pub fn label(&self) -> String {
        match self {
            EstimatorSpec::Mean => "mean".into(),
            EstimatorSpec::SampleSd => "sd".into(),
            EstimatorSpec::Median => "median".into(),
            EstimatorSpec::UCentralMoment(k) => format!("u{k}"),
            EstimatorSpec::Plugin { name, .. } => (*name).into(),
        }
    }

    /// Evaluates the statistic; the slice may be unsorted.
    pub fn evaluate(&self, xs: &[f64]) -> Result<f64> {
        if xs.len() < self.min_n() {
            return Err(Error::domain(format!(
                "estimator {} needs n >= {}, got {}",
                self.label(),
                self.min_n(),
                xs.len()
            )));
        }
        Ok(match self {
            EstimatorSpec::Mean => xs.iter().sum::<f64>() / xs.len() as f64,
            EstimatorSpec::SampleSd => {
                let n = xs.len() as f64;
                let mean = xs.iter().sum::<f64>() / n;
                let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
                (ss / (n - 1.0)).sqrt()
            }
            EstimatorSpec::Median => {
                let mut v = xs.to_vec();
                v.sort_by(|a, b| a.total_cmp(b));
                let n = v.len();
                if n % 2 == 1 {
                    v[n / 2]
                } else {
                    0.5 * (v[n / 2 - 1] + v[n / 2])
                }
            }
            EstimatorSpec::UCentralMoment(k) => u_central_moment(xs, *k)?,
            EstimatorSpec::Plugin { func, .. } => func(xs),
        })
    }

    /// Parses an estimator token (mean, sd, median, u2..u4).
    pub fn parse(token: &str) -> Result<EstimatorSpec> {
        match token.trim().to_ascii_lowercase().as_str() {
            "mean" => Ok(EstimatorSpec::Mean),
            "sd" => Ok(EstimatorSpec::SampleSd),
            "median" => Ok(EstimatorSpec::Median),
            "u2" => Ok(EstimatorSpec::UCentralMoment(2)),
            "u3" => Ok(EstimatorSpec::UCentralMoment(3)),
            "u4" => Ok(EstimatorSpec::UCentralMoment(4)),
            other => Err(Error::parameter(format!("unknown estimator '{other}'"))),
        }
    }
}

// Per-set weighted estimate: Σ w_i · est(Q(sequence_i)).
fn set_weighted_estimate(
    set: &calib::CalibratedSet,
    dist: &DistributionSpec,
    est: &EstimatorSpec,
) -> Result<f64> {
    let mut acc = 0.0;
    for (recipe, &w) in set.recipes.iter().zip(&set.weights) {
        let transformed = recipe.realize()?.quantile_transform(dist)?;
        acc += w * est.evaluate(&transformed)?;
    }
    Ok(acc)
}

// Per-set weighted variance: Σ w_i (est_i - Ê)² with Ê the set's weighted mean.
fn set_weighted_variance(
    set: &calib::CalibratedSet,
    dist: &DistributionSpec,
    est: &EstimatorSpec,
) -> Result<f64> {
    let mut values = Vec::with_capacity(set.recipes.len());
    for recipe in &set.recipes {
        let transformed = recipe.realize()?.quantile_transform(dist)?;
        values.push(est.evaluate(&transformed)?);
    }
    let mean: f64 = values.iter().zip(&set.weights).map(|(v, w)| v * w).sum();
    Ok(values
        .iter()
        .zip(&set.weights)
        .map(|(v, w)| w * (v - mean) * (v - mean))
        .sum())
}

fn pool_sets_for<'p>(pool: &'p SetPool, n: usize) -> Result<Vec<&'p calib::CalibratedSet>> {
    let sets = pool.sets_at(n);
    if sets.is_empty() {
        return Err(Error::domain(format!(
            "pool '{}' has no sets calibrated at n={n}",
            pool.label
        )));
    }
    Ok(sets)
}

/// Weighted expectation of an estimator: per-set weighted estimates averaged
/// (unweighted) across the pool's sets at this n.
pub fn weighted_expectation(
    pool: &SetPool,
    dist: &DistributionSpec,
    est: &EstimatorSpec,
    n: usize,
) -> Result<f64> {
    let sets = pool_sets_for(pool, n)?;
    let mut acc = 0.0;
    for set in &sets {
        acc += set_weighted_estimate(set, dist, est)?;
    }
    Ok(acc / sets.len() as f64)
}

/// Weighted variance of an estimator: per-set weighted variances averaged
/// across the pool's sets at this n.
pub fn weighted_variance(
    pool: &SetPool,
    dist: &DistributionSpec,
    est: &EstimatorSpec,
    n: usize,
) -> Result<f64> {
    let sets = pool_sets_for(pool, n)?;
    let mut acc = 0.0;
    for set in &sets {
        acc += set_weighted_variance(set, dist, est)?;
    }
    Ok(acc / sets.len() as f64)
}

/// Plain Monte Carlo baseline: `n_samples` independent samples of size n,
/// returning the mean and the unbiased variance of the statistic across
/// samples. Replicate r draws from stream r of `derive_seed(seed, n)`, so
/// results are independent of the parallel schedule.
pub fn mc_baseline(
    dist: &DistributionSpec,
    est: &EstimatorSpec,
    n: usize,
    n_samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if n_samples < 2 {
        return Err(Error::domain("Monte Carlo baseline needs at least 2 samples"));
    }
    if n < est.min_n() {
        return Err(Error::domain(format!(
            "estimator {} undefined at n={n}",
            est.label()
        )));
    }
    let run_seed = rng::derive_seed(seed, n as u64);
    let estimates: Vec<Result<f64>> = exec::par_map_idx(n_samples, |r| {
        let us = rng::unit_open01(run_seed, r as u64, n);
        let xs: Result<Vec<f64>> = us.iter().map(|&u| dist.quantile(u)).collect();
        est.evaluate(&xs?)
    });
    let estimates: Vec<f64> = estimates.into_iter().collect::<Result<_>>()?;
    let m = estimates.iter().sum::<f64>() / n_samples as f64;
    let var = estimates.iter().map(|e| (e - m) * (e - m)).sum::<f64>() / (n_samples as f64 - 1.0);
    Ok((m, var))
}

/// Exact truth curves for the estimators compared in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruthOracle {
    /// E[s_n] = σ·factor(n) for the Gaussian.
    GaussianSdExpectation,
    /// Var(s_n) = σ²(1 - factor(n)²) for the Gaussian.
    GaussianSdVariance,
    /// E[median_n] closed form for the exponential (odd n only).
    ExponentialMedian,
    /// E[median_n] by quadrature (odd n only).
    MedianQuadrature,
    /// E[x̄] = population mean, any family.
    Mean,
}

impl TruthOracle {
    pub fn evaluate(&self, dist: &DistributionSpec, n: usize) -> Result<f64> {
        match self {
            TruthOracle::GaussianSdExpectation => match dist {
                DistributionSpec::Gaussian { sd, .. } => {
                    Ok(sd * dist::gaussian_sd_expectation_factor(n)?)
                }
                _ => Err(Error::unsupported("sd expectation truth is Gaussian-only")),
            },
            TruthOracle::GaussianSdVariance => match dist {
                DistributionSpec::Gaussian { sd, .. } => dist::gaussian_sd_variance(n, *sd),
                _ => Err(Error::unsupported("sd variance truth is Gaussian-only")),
            },
            TruthOracle::ExponentialMedian => match dist {
                DistributionSpec::Exponential { rate } => {
                    dist::exponential_median_closed_form(n, *rate)
                }
                _ => Err(Error::unsupported("median closed form is exponential-only")),
            },
            TruthOracle::MedianQuadrature => dist::expected_median_quadrature(dist, n),
            TruthOracle::Mean => Ok(dist.mean()),
        }
    }

    /// The canonical oracle for (estimator, quantity, distribution), when one
    /// exists.
    pub fn for_estimator(
        est: &EstimatorSpec,
        quantity: Quantity,
        dist: &DistributionSpec,
    ) -> Result<TruthOracle> {
        match (est, quantity, dist) {
            (EstimatorSpec::SampleSd, Quantity::Bias, DistributionSpec::Gaussian { .. }) => {
                Ok(TruthOracle::GaussianSdExpectation)
            }
            (EstimatorSpec::SampleSd, Quantity::Variance, DistributionSpec::Gaussian { .. }) => {
                Ok(TruthOracle::GaussianSdVariance)
            }
            (EstimatorSpec::Median, Quantity::Bias, DistributionSpec::Exponential { .. }) => {
                Ok(TruthOracle::ExponentialMedian)
            }
            (EstimatorSpec::Median, Quantity::Bias, _) => Ok(TruthOracle::MedianQuadrature),
            (EstimatorSpec::Mean, Quantity::Bias, _) => Ok(TruthOracle::Mean),
            _ => Err(Error::unsupported(format!(
                "no exact truth for {} {:?} under {dist}",
                est.label(),
                quantity
            ))),
        }
    }
}

/// Which property of the estimator a curve tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Bias,
    Variance,
}

/// An estimation method whose curve can be compared against a truth oracle.
#[derive(Clone, Debug)]
pub enum Method {
    /// The arithmetic sequence alone with weight one.
    Arithmetic,
    /// `sets` designed-12 calibrations with derived seeds.
    Designed { sets: usize },
    /// `sets` BAR sets searched per sample size.
    Bar { sets: usize },
    /// The five-family pool: 3 sets per non-Gaussian parameterization plus
    /// `base_sets` sets calibrated to the target distribution.
    BarFiveFamily { base_sets: usize, sets_per_spec: usize },
    /// Plain Monte Carlo with `samples` samples per n.
    MonteCarlo { samples: usize },
}

impl Method {
    /// Table-style label, e.g. "BAR-G 10S" or "Random 50S".
    pub fn label(&self, dist: &DistributionSpec) -> String {
        match self {
            Method::Arithmetic => "Arithmetic".into(),
            Method::Designed { sets } => format!("12 Designed {sets}S"),
            Method::Bar { sets } => format!("BAR-{} {sets}S", dist.family_code()),
            Method::BarFiveFamily { base_sets, sets_per_spec } => {
                format!("BAR-5D {}S", base_sets + 10 * sets_per_spec)
            }
            Method::MonteCarlo { samples } => format!("Random {}S", samples / 12),
        }
    }

    /// Pool or baseline estimate of (quantity of estimator) at one n.
    fn estimate_at(
        &self,
        dist: &DistributionSpec,
        est: &EstimatorSpec,
        quantity: Quantity,
        n: usize,
        seed: u64,
        opts: &BarOptions,
    ) -> Result<f64> {
        let n_seed = rng::derive_seed(seed, n as u64);
        let pool = match self {
            Method::MonteCarlo { samples } => {
                let (mean, var) = mc_baseline(dist, est, n, *samples, seed)?;
                return Ok(match quantity {
                    Quantity::Bias => mean,
                    Quantity::Variance => var,
                });
            }
            Method::Arithmetic => {
                let transformed = seqlab::arithmetic(n)?.quantile_transform(dist)?;
                return Ok(match quantity {
                    Quantity::Bias => est.evaluate(&transformed)?,
                    // single atom with weight one
                    Quantity::Variance => 0.0,
                });
            }
            Method::Designed { sets } => {
                let calibrated: Vec<Result<calib::CalibratedSet>> = exec::par_map_idx(*sets, |i| {
                    calib::calibrate_designed(dist, n, rng::derive_seed(n_seed, i as u64))
                });
                SetPool::new("designed", calibrated.into_iter().collect::<Result<_>>()?)
            }
            Method::Bar { sets } => calib::bar_search(dist, n, *sets, n_seed, opts)?,
            Method::BarFiveFamily { base_sets, sets_per_spec } => {
                calib::bar_five_family_pool(dist, *base_sets, *sets_per_spec, n, n_seed, opts)?
            }
        };
        match quantity {
            Quantity::Bias => weighted_expectation(&pool, dist, est, n),
            Quantity::Variance => weighted_variance(&pool, dist, est, n),
        }
    }
}

/// One row of an estimator-vs-truth curve.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CurveRow {
    pub n: usize,
    pub estimate: f64,
    pub truth: f64,
    pub error: f64,
}

/// Estimator-vs-truth curve over a strictly increasing n-range.
#[derive(Clone, Debug)]
pub struct BiasCurve {
    pub label: String,
    pub rows: Vec<CurveRow>,
}

impl BiasCurve {
    /// RMSE of the error column.
    pub fn rmse(&self) -> f64 {
        let ms: f64 =
            self.rows.iter().map(|r| r.error * r.error).sum::<f64>() / self.rows.len() as f64;
        ms.sqrt()
    }

    /// CSV with `n,estimate,truth,error` and a metadata comment block.
    pub fn write_csv<W: Write>(&self, w: &mut W, meta: &FileMeta) -> Result<()> {
        fileio::write_csv_meta(w, meta)?;
        writeln!(w, "n,estimate,truth,error")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{}",
                r.n,
                fileio::fmt_f64(r.estimate),
                fileio::fmt_f64(r.truth),
                fileio::fmt_f64(r.error)
            )?;
        }
        Ok(())
    }
}

/// The default sample-size grid (5..=100) and its odd-only variant used for
/// median comparisons.
pub fn full_grid() -> Vec<usize> {
    (5..=100).collect()
}

pub fn odd_grid() -> Vec<usize> {
    (5..=99).step_by(2).collect()
}

/// Builds a method's estimate curve against a truth oracle.
pub fn bias_curve(
    method: &Method,
    dist: &DistributionSpec,
    est: &EstimatorSpec,
    quantity: Quantity,
    ns: &[usize],
    truth: &TruthOracle,
    seed: u64,
    opts: &BarOptions,
) -> Result<BiasCurve> {
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("curve requires a strictly increasing nonempty n-range"));
    }
    let rows: Vec<Result<CurveRow>> = exec::par_map_idx(ns.len(), |i| {
        let n = ns[i];
        let truth_value = truth.evaluate(dist, n)?;
        let estimate = method.estimate_at(dist, est, quantity, n, seed, opts)?;
        Ok(CurveRow { n, estimate, truth: truth_value, error: estimate - truth_value })
    });
    Ok(BiasCurve {
        label: method.label(dist),
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

/// Curve RMSE summary over stochastic repeats.
#[derive(Clone, Debug, Serialize)]
pub struct RmseReport {
    pub label: String,
    /// Mean of the per-repeat curve RMSEs.
    pub rmse: f64,
    pub repeats: usize,
    pub per_repeat: Vec<f64>,
}

impl RmseReport {
    pub fn to_json(&self, meta: &FileMeta) -> Result<String> {
        #[derive(Serialize)]
        struct WithMeta<'a> {
            #[serde(flatten)]
            report: &'a RmseReport,
            meta: &'a FileMeta,
        }
        fileio::to_json_string(&WithMeta { report: self, meta })
    }
}

/// Runs `repeats` independent curves (derived seeds) and reports the mean
/// RMSE against the truth oracle.
pub fn rmse_report(
    method: &Method,
    dist: &DistributionSpec,
    est: &EstimatorSpec,
    quantity: Quantity,
    ns: &[usize],
    truth: &TruthOracle,
    repeats: usize,
    seed: u64,
    opts: &BarOptions,
) -> Result<RmseReport> {
    if repeats == 0 {
        return Err(Error::domain("rmse report needs at least one repeat"));
    }
    let mut per_repeat = Vec::with_capacity(repeats);
    for r in 0..repeats {
        let curve = bias_curve(
            method,
            dist,
            est,
            quantity,
            ns,
            truth,
            rng::derive_seed(seed, 0x7e9ea7 + r as u64),
            opts,
        )?;
        per_repeat.push(curve.rmse());
    }
    Ok(RmseReport {
        label: method.label(dist),
        rmse: per_repeat.iter().sum::<f64>() / repeats as f64,
        repeats,
        per_repeat,
    })
}

/// Unbiased standard deviation of a replicate column (the standard error of
/// the statistic it holds).
pub fn standard_error(column: &[f64]) -> Result<f64> {
    if column.len() < 2 {
        return Err(Error::domain("standard error needs at least 2 rows"));
    }
    let n = column.len() as f64;
    let mean = column.iter().sum::<f64>() / n;
    let ss: f64 = column.iter().map(|x| (x - mean) * (x - mean)).sum();
    Ok((ss / (n - 1.0)).sqrt())
}

/// Per-statistic standard error and scaled standard error.
#[derive(Clone, Debug, Serialize)]
pub struct SseRow {
    pub stat: String,
    /// Rescale factor applied to the column (reference mean / column mean).
    pub scale: f64,
    pub se: f64,
    pub sse: f64,
    /// se/√rows and sse/√rows, for when the mean of the column is the target.
    pub se_of_mean: f64,
    pub sse_of_mean: f64,
}

/// Scaled standard errors of a samples-by-statistics matrix.
#[derive(Clone, Debug, Serialize)]
pub struct SseReport {
    pub rows: usize,
    pub stats: Vec<SseRow>,
}

/// Computes SE and SSE per statistic column. Column 0 is the reference:
/// every other column is rescaled by (mean of reference)/(mean of column)
/// before taking its unbiased standard deviation, which makes variability
/// comparable across statistics that measure the same attribute at
/// different scales. Columns whose mean is numerically zero are rejected;
/// plain standard errors must be used for those.
pub fn scaled_standard_error(matrix: &[Vec<f64>], names: &[String]) -> Result<SseReport> {
    let rows = matrix.len();
    if rows < 2 {
        return Err(Error::domain("SSE needs at least 2 replicate rows"));
    }
    let cols = matrix[0].len();
    if cols == 0 || names.len() != cols {
        return Err(Error::dimension(format!(
            "matrix has {cols} columns but {} names",
            names.len()
        )));
    }
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::dimension("ragged statistics matrix"));
    }

    let means: Vec<f64> = (0..cols)
        .map(|c| matrix.iter().map(|r| r[c]).sum::<f64>() / rows as f64)
        .collect();
    let spread: Vec<f64> = (0..cols)
        .map(|c| {
            matrix
                .iter()
                .map(|r| (r[c] - means[c]).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    for c in 0..cols {
        if means[c].abs() <= 1e-12 * spread[c].max(1e-300) {
            return Err(Error::domain(format!(
                "column '{}' has a numerically zero mean; use plain standard errors",
                names[c]
            )));
        }
    }

    let sqrt_rows = (rows as f64).sqrt();
    let mut out = Vec::with_capacity(cols);
    for c in 0..cols {
        let column: Vec<f64> = matrix.iter().map(|r| r[c]).collect();
        let se = standard_error(&column)?;
        let scale = means[0] / means[c];
        let rescaled: Vec<f64> = column.iter().map(|x| x * scale).collect();
        let sse = standard_error(&rescaled)?;
        out.push(SseRow {
            stat: names[c].clone(),
            scale,
            se,
            sse,
            se_of_mean: se / sqrt_rows,
            sse_of_mean: sse / sqrt_rows,
        });
    }
    Ok(SseReport { rows, stats: out })
}

/// Draws `reps` samples of size n and evaluates each statistic per sample,
/// returning the samples-by-statistics matrix for [`scaled_standard_error`].
pub fn statistic_matrix(
    dist: &DistributionSpec,
    stats: &[EstimatorSpec],
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    if stats.is_empty() {
        return Err(Error::dimension("statistic matrix needs at least one estimator"));
    }
    let run_seed = rng::derive_seed(seed, n as u64);
    let rows: Vec<Result<Vec<f64>>> = exec::par_map_idx(reps, |r| {
        let us = rng::unit_open01(run_seed, r as u64, n);
        let xs: Result<Vec<f64>> = us.iter().map(|&u| dist.quantile(u)).collect();
        let xs = xs?;
        stats.iter().map(|s| s.evaluate(&xs)).collect()
    });
    rows.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> DistributionSpec {
        DistributionSpec::gaussian(0.0, 1.0).unwrap()
    }

    #[test]
    fn estimator_evaluation() {
        let xs = [3.0, 1.0, 2.0];
        assert_eq!(EstimatorSpec::Mean.evaluate(&xs).unwrap(), 2.0);
        assert_eq!(EstimatorSpec::Median.evaluate(&xs).unwrap(), 2.0);
        assert!((EstimatorSpec::SampleSd.evaluate(&xs).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(EstimatorSpec::Median.evaluate(&[4.0, 1.0, 2.0, 3.0]).unwrap(), 2.5);
        assert!(EstimatorSpec::SampleSd.evaluate(&[1.0]).is_err());
        assert!(EstimatorSpec::UCentralMoment(4).evaluate(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn weighted_expectation_pins_calibrated_moments() {
        let dist = gaussian();
        let n = 10;
        let set = calib::calibrate_designed(&dist, n, 42).unwrap();
        assert!(set.residual < 1e-10);
        let pool = SetPool::new("designed", vec![set]);

        // k=1 row pins the weighted mean to 0
        let mean = weighted_expectation(&pool, &dist, &EstimatorSpec::Mean, n).unwrap();
        assert!(mean.abs() < 1e-9, "weighted mean {mean}");

        // Bessel × pinned E[m2] row gives exactly µ2 = 1
        let u2 = weighted_expectation(&pool, &dist, &EstimatorSpec::UCentralMoment(2), n).unwrap();
        assert!((u2 - 1.0).abs() < 1e-8, "weighted u2 {u2}");
    }

    #[test]
    fn weighted_variance_degenerate_single_sequence() {
        let dist = gaussian();
        let n = 10;
        let set = calib::CalibratedSet {
            dist: dist.to_string(),
            n,
            k_max: 4,
            seed: 0,
            residual: f64::NAN,
            recipes: vec![seqlab::SequenceRecipe::Arithmetic { n }],
            weights: vec![1.0],
            pairs: vec![],
            created_unix: None,
        };
        let pool = SetPool::new("single", vec![set]);
        let var = weighted_variance(&pool, &dist, &EstimatorSpec::SampleSd, n).unwrap();
        assert_eq!(var, 0.0);
    }

    #[test]
    fn mc_baseline_is_deterministic_and_centered() {
        let dist = gaussian();
        let (m1, v1) = mc_baseline(&dist, &EstimatorSpec::Mean, 5, 20_000, 7).unwrap();
        let (m2, v2) = mc_baseline(&dist, &EstimatorSpec::Mean, 5, 20_000, 7).unwrap();
        assert_eq!((m1, v1), (m2, v2));
        // 3σ bound with σ = 1/√(n·samples)
        assert!(m1.abs() < 3.0 / (5.0f64 * 20_000.0).sqrt());
        assert!((v1 - 0.2).abs() < 0.02); // Var(x̄) = 1/5
        assert!(mc_baseline(&dist, &EstimatorSpec::Mean, 5, 1, 7).is_err());
    }

    #[test]
    fn truth_oracles() {
        let g = gaussian();
        let t = TruthOracle::GaussianSdExpectation.evaluate(&g, 2).unwrap();
        assert!((t - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-14);
        let e = DistributionSpec::exponential(1.0).unwrap();
        assert!(TruthOracle::GaussianSdExpectation.evaluate(&e, 5).is_err());
        assert!(TruthOracle::ExponentialMedian.evaluate(&e, 4).is_err());
        assert!((TruthOracle::Mean.evaluate(&e, 5).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn location_equivariance_of_weighted_median() {
        // same pool, shifted distribution: the weighted median shifts by c
        let dist = gaussian();
        let n = 11;
        let pool = SetPool::new(
            "designed",
            vec![calib::calibrate_designed(&dist, n, 3).unwrap()],
        );
        let base = weighted_expectation(&pool, &dist, &EstimatorSpec::Median, n).unwrap();
        let c = 2.75;
        let shifted = DistributionSpec::gaussian(c, 1.0).unwrap();
        let moved = weighted_expectation(&pool, &shifted, &EstimatorSpec::Median, n).unwrap();
        assert!((moved - base - c).abs() < 1e-10);
    }

    #[test]
    fn symmetric_reflection_closed_pool_has_zero_median_bias() {
        // reflection-closed recipes only (no random, no complement): for a
        // symmetric distribution and odd n the weighted median bias is zero
        use seqlab::SequenceRecipe::*;
        let dist = gaussian();
        for n in [11usize, 21, 51] {
            let recipes = vec![
                Arithmetic { n },
                BetaQuantile { alpha: 0.547, beta: 0.547, n },
                BetaQuantile { alpha: 46.761, beta: 20.108, n },
                BetaQuantile { alpha: 20.108, beta: 46.761, n },
                BetaQuantile { alpha: 0.478, beta: 38.53, n },
                BetaQuantile { alpha: 38.53, beta: 0.478, n },
            ];
            let pairs = vec![(2, 3), (4, 5)];
            let problem = calib::CalibrationProblem {
                dist,
                n,
                k_max: 4,
                recipes: recipes.clone(),
                pairs: pairs.clone(),
            };
            let (a, b) = calib::build_system(&problem).unwrap();
            let sol = calib::solve_weights(&a, &b, &pairs, 1e-10).unwrap();
            let set = calib::CalibratedSet {
                dist: dist.to_string(),
                n,
                k_max: 4,
                seed: 0,
                residual: sol.residual,
                recipes,
                weights: sol.weights,
                pairs,
                created_unix: None,
            };
            let pool = SetPool::new("symmetric", vec![set]);
            let bias = weighted_expectation(&pool, &dist, &EstimatorSpec::Median, n).unwrap();
            assert!(bias.abs() < 1e-9, "n={n}: bias {bias}");
        }
    }

    #[test]
    fn standard_error_values() {
        assert!((standard_error(&[0.0, 1.0]).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(standard_error(&[2.0, 2.0, 2.0]).unwrap(), 0.0);
        assert!(standard_error(&[1.0]).is_err());
    }

    #[test]
    fn sse_reference_and_scaling_rules() {
        // column = reference → SSE = SE; column = 2×reference → SSE = SE(ref)
        let matrix: Vec<Vec<f64>> = (0..100)
            .map(|i| {
                let x = 1.0 + (i as f64 * 0.773).sin() * 0.2;
                vec![x, x, 2.0 * x]
            })
            .collect();
        let names = vec!["ref".to_string(), "same".to_string(), "double".to_string()];
        let report = scaled_standard_error(&matrix, &names).unwrap();
        let se_ref = report.stats[0].se;
        assert!((report.stats[0].sse - se_ref).abs() < 1e-14);
        assert!((report.stats[1].sse - se_ref).abs() < 1e-14);
        assert!((report.stats[2].sse - se_ref).abs() < 1e-13);
        assert!((report.stats[2].se - 2.0 * se_ref).abs() < 1e-13);
    }

    #[test]
    fn sse_scale_invariance() {
        let matrix: Vec<Vec<f64>> = (0..64)
            .map(|i| {
                let x = 3.0 + (i as f64).cos();
                let y = 0.5 + 0.1 * (i as f64 * 1.3).sin();
                vec![x, y]
            })
            .collect();
        let names = vec!["a".to_string(), "b".to_string()];
        let base = scaled_standard_error(&matrix, &names).unwrap();
        let scaled: Vec<Vec<f64>> = matrix.iter().map(|r| vec![r[0], 37.5 * r[1]]).collect();
        let rescaled = scaled_standard_error(&scaled, &names).unwrap();
        assert!((base.stats[1].sse - rescaled.stats[1].sse).abs() < 1e-12);
    }

    #[test]
    fn sse_rejects_zero_mean_columns() {
        let matrix: Vec<Vec<f64>> = (0..10)
            .map(|i| vec![1.0 + 0.01 * i as f64, if i % 2 == 0 { 1.0 } else { -1.0 }])
            .collect();
        let names = vec!["ref".to_string(), "signed".to_string()];
        assert!(scaled_standard_error(&matrix, &names).is_err());
    }

    #[test]
    fn curve_and_rmse_shapes() {
        let dist = gaussian();
        let ns: Vec<usize> = (5..=20).collect();
        let curve = bias_curve(
            &Method::Arithmetic,
            &dist,
            &EstimatorSpec::SampleSd,
            Quantity::Bias,
            &ns,
            &TruthOracle::GaussianSdExpectation,
            0,
            &BarOptions::default(),
        )
        .unwrap();
        assert_eq!(curve.rows.len(), ns.len());
        assert!(curve.rmse() > 0.0);
        // deterministic method: identical repeats
        let report = rmse_report(
            &Method::Arithmetic,
            &dist,
            &EstimatorSpec::SampleSd,
            Quantity::Bias,
            &ns,
            &TruthOracle::GaussianSdExpectation,
            3,
            0,
            &BarOptions::default(),
        )
        .unwrap();
        assert_eq!(report.per_repeat.len(), 3);
        assert!((report.per_repeat[0] - report.per_repeat[2]).abs() < 1e-15);
        assert!((report.rmse - curve.rmse()).abs() < 1e-15);
    }
}
