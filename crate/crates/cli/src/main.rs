//! Command-line surface for sequence-set calibration and finite-sample
//! estimation: calibrate pools, estimate bias/variance curves from them,
//! query exact truths, run Monte Carlo baselines, build comparison tables,
//! and compute scaled standard errors.
//!
//! Outputs are CSV/JSON with embedded reproducibility metadata (version,
//! full command line, seed, generator id); identical command lines produce
//! byte-identical files. Exit codes: 0 success, 2 usage, 3 search
//! exhausted, 4 domain/unsupported.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use seqcal::calib::{BarOptions, PoolProvenance, SetPool};
use seqcal::dist::{self, DistributionSpec};
use seqcal::error::Error;
use seqcal::estimate::{
    bias_curve, rmse_report, scaled_standard_error, statistic_matrix, weighted_expectation,
    weighted_variance, BiasCurve, CurveRow, EstimatorSpec, Method, Quantity, RmseReport, TruthOracle,
};
use seqcal::fileio::{self, FileMeta};
use seqcal::rng;

/// Default seed used whenever --seed is not given.
const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "seqcal",
    version,
    about = "Calibrated sequence sets for cheap finite-sample bias/variance estimation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Sample-size selection shared by most subcommands.
#[derive(Args, Clone)]
struct GridArgs {
    /// Single sample size.
    #[arg(long, conflicts_with_all = ["nmin", "nmax"])]
    n: Option<usize>,
    /// Range start (inclusive).
    #[arg(long)]
    nmin: Option<usize>,
    /// Range end (inclusive).
    #[arg(long)]
    nmax: Option<usize>,
    /// Keep only odd sample sizes (median truths exist for odd n only).
    #[arg(long)]
    odd_only: bool,
}

impl GridArgs {
    fn resolve(&self) -> Result<Vec<usize>, Error> {
        let ns: Vec<usize> = if let Some(n) = self.n {
            vec![n]
        } else {
            let lo = self.nmin.ok_or_else(|| Error::Parameter("--n or --nmin/--nmax required".into()))?;
            let hi = self.nmax.ok_or_else(|| Error::Parameter("--n or --nmin/--nmax required".into()))?;
            if lo > hi {
                return Err(Error::Parameter(format!("--nmin {lo} exceeds --nmax {hi}")));
            }
            (lo..=hi).collect()
        };
        let ns: Vec<usize> = if self.odd_only {
            ns.into_iter().filter(|n| n % 2 == 1).collect()
        } else {
            ns
        };
        if ns.is_empty() {
            return Err(Error::Parameter("empty sample-size grid".into()));
        }
        Ok(ns)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Calibrate sequence sets and write a pool file.
    Calibrate {
        /// Distribution token, e.g. 'gaussian(mu=0,sigma=1)'.
        #[arg(long)]
        dist: String,
        /// designed | bar | multi
        #[arg(long)]
        mode: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Sets per sample size (designed/bar) or per spec (multi).
        #[arg(long, default_value_t = 10)]
        sets: usize,
        /// Comma-separated spec tokens for --mode multi; 'default' gives the
        /// ten canonical non-Gaussian parameterizations.
        #[arg(long, default_value = "default")]
        specs: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Qualification threshold on the system residual.
        #[arg(long, default_value_t = 1e-10)]
        threshold: f64,
        #[arg(long, default_value_t = 100_000)]
        max_attempts: usize,
        #[arg(long)]
        out: PathBuf,
    },

    /// Estimate a bias or variance curve from stored pools.
    Estimate {
        /// bias | variance
        #[arg(long, default_value = "bias")]
        quantity: String,
        /// mean | sd | median | u2 | u3 | u4
        #[arg(long)]
        estimator: String,
        #[arg(long)]
        dist: String,
        /// Pool file(s); multiple pools merge (e.g. multi + base for BAR-5D).
        #[arg(long, required = true)]
        pool: Vec<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
        /// Stochastic repeats; values beyond 1 re-run each pool's recorded
        /// search with derived seeds.
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Curve CSV path (n,estimate,truth,error).
        #[arg(long)]
        out_curve: Option<PathBuf>,
        /// RMSE report JSON path.
        #[arg(long)]
        out_report: Option<PathBuf>,
    },

    /// Emit exact truth curves (factor, variance, median, mean).
    Truth {
        #[arg(long)]
        dist: String,
        /// sd-bias | sd-variance | median | mean
        #[arg(long)]
        quantity: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Monte Carlo baseline curve.
    Mc {
        #[arg(long)]
        estimator: String,
        #[arg(long)]
        dist: String,
        /// Samples per sample size.
        #[arg(long)]
        samples: usize,
        /// bias | variance
        #[arg(long, default_value = "bias")]
        quantity: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out_curve: Option<PathBuf>,
        #[arg(long)]
        out_report: Option<PathBuf>,
    },

    /// RMSE comparison table across methods (mirrors the comparison table
    /// layout: a header of method labels and a row of RMSE values).
    Compare {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        estimator: String,
        /// bias | variance
        #[arg(long, default_value = "bias")]
        quantity: String,
        /// Comma-separated method tokens:
        /// arithmetic | random:<sets> | designed:<sets> | bar:<sets> | bar5d:<sets>
        /// (one set = 12 sequences/samples).
        #[arg(long)]
        methods: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Standard errors and scaled standard errors of statistics.
    Sse {
        #[arg(long)]
        dist: String,
        /// Comma-separated statistics; the first is the scaling reference.
        #[arg(long)]
        stats: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Replicates per sample size.
        #[arg(long, default_value_t = 100_000)]
        reps: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parameter(_) => 2,
        Error::SearchExhausted { .. } => 3,
        Error::Domain(_) | Error::Unsupported(_) | Error::Dimension(_) => 4,
        Error::Io(_) | Error::Json(_) => 1,
    }
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn meta(seed: u64) -> FileMeta {
    FileMeta::new(command_line(), seed)
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text)?;
    Ok(())
}

fn parse_quantity(token: &str) -> Result<Quantity, Error> {
    match token {
        "bias" => Ok(Quantity::Bias),
        "variance" => Ok(Quantity::Variance),
        other => Err(Error::Parameter(format!("unknown quantity '{other}'"))),
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Calibrate { dist, mode, grid, sets, specs, seed, threshold, max_attempts, out } => {
            cmd_calibrate(dist, mode, grid, sets, specs, seed, threshold, max_attempts, out)
        }
        Command::Estimate {
            quantity,
            estimator,
            dist,
            pool,
            grid,
            repeats,
            seed,
            out_curve,
            out_report,
        } => cmd_estimate(quantity, estimator, dist, pool, grid, repeats, seed, out_curve, out_report),
        Command::Truth { dist, quantity, grid, out } => cmd_truth(dist, quantity, grid, out),
        Command::Mc { estimator, dist, samples, quantity, grid, repeats, seed, out_curve, out_report } => {
            cmd_mc(estimator, dist, samples, quantity, grid, repeats, seed, out_curve, out_report)
        }
        Command::Compare { dist, estimator, quantity, methods, grid, repeats, seed, out } => {
            cmd_compare(dist, estimator, quantity, methods, grid, repeats, seed, out)
        }
        Command::Sse { dist, stats, grid, reps, seed, out } => cmd_sse(dist, stats, grid, reps, seed, out),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_calibrate(
    dist: String,
    mode: String,
    grid: GridArgs,
    sets: usize,
    specs: String,
    seed: u64,
    threshold: f64,
    max_attempts: usize,
    out: PathBuf,
) -> Result<(), Error> {
    let ns = grid.resolve()?;
    let dists: Vec<String> = match mode.as_str() {
        "designed" | "bar" => vec![dist::parse_token(&dist)?.to_string()],
        "multi" => {
            let tokens: Vec<DistributionSpec> = if specs == "default" {
                dist::five_family_specs()
            } else {
                specs
                    .split(',')
                    .map(dist::parse_token)
                    .collect::<Result<_, _>>()?
            };
            tokens.iter().map(|s| s.to_string()).collect()
        }
        other => return Err(Error::Parameter(format!("unknown mode '{other}'"))),
    };
    let provenance = PoolProvenance { mode, dists, sets, seed, threshold, max_attempts };

    let result = provenance.rerun(&ns, seed);
    let mut pool = match result {
        Ok(pool) => pool,
        Err(Error::SearchExhausted { attempts, requested, partial }) => {
            // keep whatever qualified, then fail with the dedicated code
            let mut partial = *partial;
            partial.meta = Some(meta(seed));
            partial.provenance = Some(provenance);
            partial.save(&out)?;
            eprintln!("partial pool written to {}", out.display());
            return Err(Error::SearchExhausted {
                attempts,
                requested,
                partial: Box::new(partial),
            });
        }
        Err(err) => return Err(err),
    };
    pool.meta = Some(meta(seed));
    pool.save(&out)?;

    // residual summary per n
    for &n in &ns {
        let at_n = pool.sets_at(n);
        let worst = at_n.iter().map(|s| s.residual).fold(0.0, f64::max);
        println!("n={n}: {} sets, max residual {:.3e}", at_n.len(), worst);
    }
    if let Some(rate) = pool.acceptance_rate() {
        println!("acceptance rate {:.4} ({} attempts)", rate, pool.attempts);
    }
    println!("wrote {}", out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_estimate(
    quantity: String,
    estimator: String,
    dist: String,
    pool_paths: Vec<PathBuf>,
    grid: GridArgs,
    repeats: usize,
    seed: u64,
    out_curve: Option<PathBuf>,
    out_report: Option<PathBuf>,
) -> Result<(), Error> {
    let quantity = parse_quantity(&quantity)?;
    let est = EstimatorSpec::parse(&estimator)?;
    let spec = dist::parse_token(&dist)?;
    let ns = grid.resolve()?;
    let truth = TruthOracle::for_estimator(&est, quantity, &spec)?;

    let stored: Vec<SetPool> = pool_paths.iter().map(SetPool::load).collect::<Result<_, _>>()?;
    for pool in &stored {
        for &n in &ns {
            if pool.sets_at(n).is_empty() {
                return Err(Error::Domain(format!(
                    "pool '{}' has no sets at n={n}; re-calibrate over the requested range",
                    pool.label
                )));
            }
        }
    }
    if repeats > 1 && stored.iter().any(|p| p.provenance.is_none()) {
        return Err(Error::Domain(
            "--repeats > 1 needs pools with recorded provenance (written by `seqcal calibrate`)"
                .into(),
        ));
    }

    let label = stored.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join("+");
    let mut per_repeat = Vec::with_capacity(repeats);
    let mut first_curve: Option<BiasCurve> = None;
    for r in 0..repeats {
        let pools: Vec<SetPool> = if r == 0 {
            stored.clone()
        } else {
            stored
                .iter()
                .map(|p| {
                    p.provenance
                        .as_ref()
                        .expect("checked above")
                        .rerun(&ns, rng::derive_seed(seed, 0xe57 + r as u64))
                })
                .collect::<Result<_, _>>()?
        };
        let merged = SetPool::merged(label.clone(), pools);
        let mut rows = Vec::with_capacity(ns.len());
        for &n in &ns {
            let estimate = match quantity {
                Quantity::Bias => weighted_expectation(&merged, &spec, &est, n)?,
                Quantity::Variance => weighted_variance(&merged, &spec, &est, n)?,
            };
            let truth_value = truth.evaluate(&spec, n)?;
            rows.push(CurveRow { n, estimate, truth: truth_value, error: estimate - truth_value });
        }
        let curve = BiasCurve { label: label.clone(), rows };
        per_repeat.push(curve.rmse());
        if first_curve.is_none() {
            first_curve = Some(curve);
        }
    }

    let report = RmseReport {
        label,
        rmse: per_repeat.iter().sum::<f64>() / repeats as f64,
        repeats,
        per_repeat,
    };
    let curve = first_curve.expect("at least one repeat");
    emit_curve_and_report(&curve, &report, seed, out_curve, out_report)
}

fn emit_curve_and_report(
    curve: &BiasCurve,
    report: &RmseReport,
    seed: u64,
    out_curve: Option<PathBuf>,
    out_report: Option<PathBuf>,
) -> Result<(), Error> {
    let meta = meta(seed);
    if let Some(path) = out_curve {
        let mut buf = Vec::new();
        curve.write_csv(&mut buf, &meta)?;
        write_text(&path, std::str::from_utf8(&buf).expect("utf-8"))?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = out_report {
        write_text(&path, &report.to_json(&meta)?)?;
        println!("wrote {}", path.display());
    }
    println!("{}: rmse {:.6} over {} repeats", report.label, report.rmse, report.repeats);
    Ok(())
}

fn cmd_truth(
    dist: String,
    quantity: String,
    grid: GridArgs,
    out: Option<PathBuf>,
) -> Result<(), Error> {
    let spec = dist::parse_token(&dist)?;
    let ns = grid.resolve()?;
    let value = |n: usize| -> Result<f64, Error> {
        match quantity.as_str() {
            "sd-bias" => match spec {
                DistributionSpec::Gaussian { sd, .. } => {
                    Ok(sd * dist::gaussian_sd_expectation_factor(n)?)
                }
                _ => Err(Error::Unsupported("sd-bias truth exists for the Gaussian only".into())),
            },
            "sd-variance" => match spec {
                DistributionSpec::Gaussian { sd, .. } => dist::gaussian_sd_variance(n, sd),
                _ => Err(Error::Unsupported("sd-variance truth exists for the Gaussian only".into())),
            },
            "median" => match spec {
                DistributionSpec::Exponential { rate } => {
                    dist::exponential_median_closed_form(n, rate)
                }
                _ => dist::expected_median_quadrature(&spec, n),
            },
            "mean" => Ok(spec.mean()),
            other => Err(Error::Parameter(format!("unknown truth quantity '{other}'"))),
        }
    };

    let mut text = String::new();
    {
        use std::fmt::Write as _;
        let meta = meta(DEFAULT_SEED);
        let mut head = Vec::new();
        fileio::write_csv_meta(&mut head, &meta)?;
        text.push_str(std::str::from_utf8(&head).expect("utf-8"));
        writeln!(text, "n,value").expect("string write");
        for &n in &ns {
            writeln!(text, "{},{}", n, fileio::fmt_f64(value(n)?)).expect("string write");
        }
    }
    match out {
        Some(path) => {
            write_text(&path, &text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_mc(
    estimator: String,
    dist: String,
    samples: usize,
    quantity: String,
    grid: GridArgs,
    repeats: usize,
    seed: u64,
    out_curve: Option<PathBuf>,
    out_report: Option<PathBuf>,
) -> Result<(), Error> {
    let quantity = parse_quantity(&quantity)?;
    let est = EstimatorSpec::parse(&estimator)?;
    let spec = dist::parse_token(&dist)?;
    let ns = grid.resolve()?;
    let truth = TruthOracle::for_estimator(&est, quantity, &spec)?;
    let method = Method::MonteCarlo { samples };

    let report = rmse_report(&method, &spec, &est, quantity, &ns, &truth, repeats, seed, &BarOptions::default())?;
    let curve = bias_curve(
        &method,
        &spec,
        &est,
        quantity,
        &ns,
        &truth,
        rng::derive_seed(seed, 0x7e9ea7),
        &BarOptions::default(),
    )?;
    emit_curve_and_report(&curve, &report, seed, out_curve, out_report)
}

fn parse_method(token: &str) -> Result<Method, Error> {
    let token = token.trim();
    if token == "arithmetic" {
        return Ok(Method::Arithmetic);
    }
    let (kind, count) = token
        .split_once(':')
        .ok_or_else(|| Error::Parameter(format!("method '{token}' needs the form kind:<sets>")))?;
    let sets: usize = count
        .parse()
        .map_err(|_| Error::Parameter(format!("bad set count in method '{token}'")))?;
    match kind {
        "random" => Ok(Method::MonteCarlo { samples: 12 * sets }),
        "designed" => Ok(Method::Designed { sets }),
        "bar" => Ok(Method::Bar { sets }),
        "bar5d" => {
            if sets <= 30 {
                return Err(Error::Parameter(
                    "bar5d:<sets> needs sets > 30 (3 sets for each of the 10 specs, remainder on the target)".into(),
                ));
            }
            Ok(Method::BarFiveFamily { base_sets: sets - 30, sets_per_spec: 3 })
        }
        other => Err(Error::Parameter(format!("unknown method '{other}'"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    dist: String,
    estimator: String,
    quantity: String,
    methods: String,
    grid: GridArgs,
    repeats: usize,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<(), Error> {
    let quantity = parse_quantity(&quantity)?;
    let est = EstimatorSpec::parse(&estimator)?;
    let spec = dist::parse_token(&dist)?;
    let ns = grid.resolve()?;
    let truth = TruthOracle::for_estimator(&est, quantity, &spec)?;
    let methods: Vec<Method> = methods.split(',').map(parse_method).collect::<Result<_, _>>()?;

    let mut labels = Vec::new();
    let mut values = Vec::new();
    for method in &methods {
        let report = rmse_report(
            method,
            &spec,
            &est,
            quantity,
            &ns,
            &truth,
            repeats,
            seed,
            &BarOptions::default(),
        )?;
        println!("{:20} rmse {:.6}", report.label, report.rmse);
        labels.push(report.label);
        values.push(report.rmse);
    }

    let mut text = String::new();
    {
        let meta = meta(seed);
        let mut head = Vec::new();
        fileio::write_csv_meta(&mut head, &meta)?;
        text.push_str(std::str::from_utf8(&head).expect("utf-8"));
        text.push_str(&labels.join(","));
        text.push('\n');
        text.push_str(&values.iter().map(|v| fileio::fmt_f64(*v)).collect::<Vec<_>>().join(","));
        text.push('\n');
    }
    if let Some(path) = out {
        write_text(&path, &text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_sse(
    dist: String,
    stats: String,
    grid: GridArgs,
    reps: usize,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<(), Error> {
    let spec = dist::parse_token(&dist)?;
    let ns = grid.resolve()?;
    let estimators: Vec<EstimatorSpec> =
        stats.split(',').map(EstimatorSpec::parse).collect::<Result<_, _>>()?;
    let names: Vec<String> = estimators.iter().map(|e| e.label()).collect();

    let mut text = String::new();
    {
        use std::fmt::Write as _;
        let meta = meta(seed);
        let mut head = Vec::new();
        fileio::write_csv_meta(&mut head, &meta)?;
        text.push_str(std::str::from_utf8(&head).expect("utf-8"));
        writeln!(text, "n,stat,se,sse").expect("string write");
        for &n in &ns {
            let matrix = statistic_matrix(&spec, &estimators, n, reps, seed)?;
            let report = scaled_standard_error(&matrix, &names)?;
            for row in &report.stats {
                writeln!(
                    text,
                    "{},{},{},{}",
                    n,
                    row.stat,
                    fileio::fmt_f64(row.se),
                    fileio::fmt_f64(row.sse)
                )
                .expect("string write");
            }
        }
    }
    match out {
        Some(path) => {
            write_text(&path, &text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}
