//! Assembly and solution of the moment-consistency system, the stochastic
//! search for qualified betaU-arith-random (BAR) sets, and pooling of
//! calibrated sets across distributions.
//!
//! A sequence set is *consistent* with a distribution at sample size n when
//! some simplex weighting of the quantile-transformed sequences reproduces
//! the exact expected sample central moments E[m₁..m₄] — the qualification
//! threshold on the system residual is 1e-10.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::dist::DistributionSpec;
use crate::error::{Error, Result};
use crate::exec;
use crate::fileio::{self, FileMeta};
use crate::moments::{expected_sample_central_moment, sample_moments};
use crate::rng;
use crate::seqlab::{self, SequenceRecipe, UnitSequence};
pub use crate::solver::{solve_weights, solve_weights_min_norm, solve_weights_seeded, WeightSolution};

// The arithmetic and U-shape beta columns are seeded into the solver's
// active basis: they carry most of the finite-sample structure, so
// degenerate optima resolve onto them.
const ANCHOR_COLUMNS: [usize; 2] = [0, 1];

/// How degenerate optima of the weight system are resolved.
///
/// The designed set concentrates weight on the arithmetic and U-shape beta
/// anchors; BAR sets take the most uniform weighting of the optimal face,
/// which keeps the solved weights close to the equal-weight Monte Carlo
/// special case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightPolicy {
    #[serde(rename = "anchored-nnls")]
    AnchoredNnls,
    #[serde(rename = "min-norm-nnls")]
    MinNormNnls,
}

impl WeightPolicy {
    fn solve(
        &self,
        a: &[Vec<f64>],
        b: &[f64],
        pairs: &[(usize, usize)],
        threshold: f64,
    ) -> Result<WeightSolution> {
        match self {
            WeightPolicy::AnchoredNnls => {
                solve_weights_seeded(a, b, pairs, threshold, &ANCHOR_COLUMNS)
            }
            WeightPolicy::MinNormNnls => solve_weights_min_norm(a, b, pairs, threshold),
        }
    }
}

/// Default qualification threshold on the system residual.
pub const QUALIFICATION_THRESHOLD: f64 = 1e-10;

/// Moment orders matched by default (k ≤ 4).
pub const DEFAULT_K_MAX: u32 = 4;

/// The moment-matching problem for one distribution, sample size, and
/// ordered list of sequence recipes. `pairs` lists recipe indices
/// constrained to share one weight.
#[derive(Clone, Debug)]
pub struct CalibrationProblem {
    pub dist: DistributionSpec,
    pub n: usize,
    pub k_max: u32,
    pub recipes: Vec<SequenceRecipe>,
    pub pairs: Vec<(usize, usize)>,
}

impl CalibrationProblem {
    pub fn new(dist: DistributionSpec, n: usize, recipes: Vec<SequenceRecipe>) -> Self {
        CalibrationProblem { dist, n, k_max: DEFAULT_K_MAX, recipes, pairs: Vec::new() }
    }
}

// Moment column of one quantile-transformed sequence: (m₁.. m_k, 1).
fn moment_column(transformed: &[f64], k_max: u32) -> Vec<f64> {
    let sm = sample_moments(transformed).expect("sequences are nonempty");
    let mut col: Vec<f64> = (1..=k_max).map(|k| sm.moment(k)).collect();
    col.push(1.0);
    col
}

// Right-hand side: E[m₁..m_k] for the distribution at n, then the unit-sum row.
fn expected_side(dist: &DistributionSpec, n: usize, k_max: u32) -> Result<Vec<f64>> {
    let mv = dist.central_moments();
    let mut b: Vec<f64> = (1..=k_max)
        .map(|k| expected_sample_central_moment(&mv, n, k))
        .collect::<Result<_>>()?;
    b.push(1.0);
    Ok(b)
}

fn columns_to_rows(columns: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let rows = columns[0].len();
    (0..rows)
        .map(|k| columns.iter().map(|c| c[k]).collect())
        .collect()
}

/// Builds the consistency system for a problem: row k holds the k-th sample
/// central moment of each quantile-transformed sequence, the target is the
/// exact E[m_k], and the final all-ones row pins the weight sum to one.
pub fn build_system(problem: &CalibrationProblem) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let n_seq = problem.recipes.len();
    if n_seq < problem.k_max as usize + 1 {
        return Err(Error::dimension(format!(
            "{n_seq} sequences cannot match {} moment rows (need at least k+1)",
            problem.k_max
        )));
    }
    let mut columns = Vec::with_capacity(n_seq);
    for recipe in &problem.recipes {
        if recipe.n() != problem.n {
            return Err(Error::dimension(format!(
                "recipe size {} does not match problem n={}",
                recipe.n(),
                problem.n
            )));
        }
        let seq = recipe.realize()?;
        let transformed = seq.quantile_transform(&problem.dist)?;
        columns.push(moment_column(&transformed, problem.k_max));
    }
    let b = expected_side(&problem.dist, problem.n, problem.k_max)?;
    Ok((columns_to_rows(&columns), b))
}

/// One qualified (or at least solved) sequence set with its weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibratedSet {
    /// Distribution token, e.g. `gaussian(mu=0,sigma=1)`.
    pub dist: String,
    pub n: usize,
    #[serde(rename = "kMax")]
    pub k_max: u32,
    pub seed: u64,
    pub residual: f64,
    pub recipes: Vec<SequenceRecipe>,
    pub weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<(usize, usize)>,
    /// Degeneracy-resolution policy the weights were solved with.
    pub solver: WeightPolicy,
    /// Creation timestamp (unix seconds); in-memory provenance only, never
    /// serialized so files stay byte-stable.
    #[serde(skip)]
    pub created_unix: Option<u64>,
}

impl CalibratedSet {
    fn stamp() -> Option<u64> {
        SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
    }

    /// Re-realizes the recipes and re-solves the weights; the residual must
    /// reproduce the stored one to 1e-12 for an untampered set.
    pub fn resolve(&self) -> Result<WeightSolution> {
        let dist = crate::dist::parse_token(&self.dist)?;
        let problem = CalibrationProblem {
            dist,
            n: self.n,
            k_max: self.k_max,
            recipes: self.recipes.clone(),
            pairs: self.pairs.clone(),
        };
        let (a, b) = build_system(&problem)?;
        self.solver.solve(&a, &b, &problem.pairs, QUALIFICATION_THRESHOLD)
    }

    /// Realizes the stored recipes.
    pub fn sequences(&self) -> Result<Vec<UnitSequence>> {
        self.recipes.iter().map(|r| r.realize()).collect()
    }
}

/// How a pool was produced; stored so consumers can re-run the same
/// search with fresh derived seeds (stochastic repeats) or extend it to
/// other sample sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoolProvenance {
    /// "designed", "bar", or "multi".
    pub mode: String,
    /// Target distribution token ("bar"/"designed"), or the spec tokens ("multi").
    pub dists: Vec<String>,
    /// Sets per sample size ("bar"/"designed") or per spec ("multi").
    pub sets: usize,
    pub seed: u64,
    pub threshold: f64,
    pub max_attempts: usize,
}

/// A pool of calibrated sets, possibly spanning several distributions and
/// sample sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetPool {
    pub label: String,
    /// Pseudo-random generator id behind every stochastic recipe in the pool.
    pub generator: String,
    /// Search attempts consumed to qualify the sets (0 for deterministic pools).
    #[serde(default)]
    pub attempts: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<FileMeta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<PoolProvenance>,
    pub sets: Vec<CalibratedSet>,
}

impl SetPool {
    pub fn new(label: impl Into<String>, sets: Vec<CalibratedSet>) -> Self {
        SetPool {
            label: label.into(),
            generator: rng::GENERATOR_ID.to_string(),
            attempts: 0,
            meta: None,
            provenance: None,
            sets,
        }
    }

    /// Sets calibrated at sample size n.
    pub fn sets_at(&self, n: usize) -> Vec<&CalibratedSet> {
        self.sets.iter().filter(|s| s.n == n).collect()
    }

    /// Fraction of search attempts that qualified (None for deterministic pools).
    pub fn acceptance_rate(&self) -> Option<f64> {
        (self.attempts > 0).then(|| self.sets.len() as f64 / self.attempts as f64)
    }

    /// Concatenates pools under a new label, summing attempt counts.
    pub fn merged(label: impl Into<String>, pools: Vec<SetPool>) -> SetPool {
        let mut sets = Vec::new();
        let mut attempts = 0;
        for p in pools {
            attempts += p.attempts;
            sets.extend(p.sets);
        }
        SetPool { attempts, ..SetPool::new(label, sets) }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, fileio::to_json_string(self)?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<SetPool> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

impl PoolProvenance {
    /// Re-runs the recorded calibration at the given sample sizes. Passing
    /// the provenance's own seed reproduces the original pool; derived seeds
    /// give independent stochastic repeats of the same protocol.
    pub fn rerun(&self, ns: &[usize], seed: u64) -> Result<SetPool> {
        let opts = BarOptions {
            threshold: self.threshold,
            max_attempts: self.max_attempts,
            k_max: DEFAULT_K_MAX,
        };
        let mut pools = Vec::with_capacity(ns.len());
        let label;
        match self.mode.as_str() {
            "designed" => {
                let dist = crate::dist::parse_token(&self.dists[0])?;
                label = "12 Designed".to_string();
                for &n in ns {
                    let n_seed = rng::derive_seed(seed, n as u64);
                    let sets: Result<Vec<CalibratedSet>> = (0..self.sets)
                        .map(|i| calibrate_designed(&dist, n, rng::derive_seed(n_seed, i as u64)))
                        .collect();
                    pools.push(SetPool::new(&label, sets?));
                }
            }
            "bar" => {
                let dist = crate::dist::parse_token(&self.dists[0])?;
                label = format!("BAR-{}", dist.family_code());
                for &n in ns {
                    pools.push(bar_search(
                        &dist,
                        n,
                        self.sets,
                        rng::derive_seed(seed, n as u64),
                        &opts,
                    )?);
                }
            }
            "multi" => {
                let specs: Result<Vec<DistributionSpec>> =
                    self.dists.iter().map(|t| crate::dist::parse_token(t)).collect();
                let specs = specs?;
                label = "BAR-MULTI".to_string();
                for &n in ns {
                    pools.push(multi_dist_pool(
                        &specs,
                        self.sets,
                        n,
                        rng::derive_seed(seed, n as u64),
                        &opts,
                    )?);
                }
            }
            other => {
                return Err(Error::parameter(format!("unknown calibration mode '{other}'")));
            }
        }
        let mut pool = SetPool::merged(label, pools);
        pool.provenance = Some(PoolProvenance { seed, ..self.clone() });
        Ok(pool)
    }
}

/// Calibrates the twelve designed sequences against a distribution at n,
/// with the four reflection pairs constrained to equal weight.
pub fn calibrate_designed(dist: &DistributionSpec, n: usize, seed: u64) -> Result<CalibratedSet> {
    let sequences = seqlab::designed_12(n, seed)?;
    let pairs = seqlab::DESIGNED_PAIRS.to_vec();
    let columns: Result<Vec<Vec<f64>>> = sequences
        .iter()
        .map(|s| Ok(moment_column(&s.quantile_transform(dist)?, DEFAULT_K_MAX)))
        .collect();
    let a = columns_to_rows(&columns?);
    let b = expected_side(dist, n, DEFAULT_K_MAX)?;
    let solution = solve_weights_seeded(&a, &b, &pairs, QUALIFICATION_THRESHOLD, &ANCHOR_COLUMNS)?;
    Ok(CalibratedSet {
        dist: dist.to_string(),
        n,
        k_max: DEFAULT_K_MAX,
        seed,
        residual: solution.residual,
        recipes: sequences.into_iter().map(|s| s.recipe().clone()).collect(),
        weights: solution.weights,
        pairs,
        solver: WeightPolicy::AnchoredNnls,
        created_unix: CalibratedSet::stamp(),
    })
}

/// Knobs of the stochastic BAR search.
#[derive(Clone, Copy, Debug)]
pub struct BarOptions {
    pub threshold: f64,
    pub max_attempts: usize,
    pub k_max: u32,
}

impl Default for BarOptions {
    fn default() -> Self {
        BarOptions {
            threshold: QUALIFICATION_THRESHOLD,
            max_attempts: 100_000,
            k_max: DEFAULT_K_MAX,
        }
    }
}

// Streams 10a+1..10a+10 belong to attempt a; stream 0 stays reserved for the
// designed set's random member.
fn bar_recipes(n: usize, seed: u64, attempt: usize) -> Vec<SequenceRecipe> {
    let mut recipes = vec![
        SequenceRecipe::Arithmetic { n },
        SequenceRecipe::BetaQuantile { alpha: 0.547, beta: 0.547, n },
    ];
    let base = 1 + attempt as u64 * 10;
    recipes.extend((0..10).map(|s| SequenceRecipe::PseudoRandom { seed, stream: base + s, n }));
    recipes
}

/// Stochastic search for `n_sets` qualified BAR sets (arithmetic + U-shape
/// beta + ten fresh pseudo-random sequences, qualified at residual <
/// threshold). Candidates are evaluated in parallel but qualify in attempt
/// order, so the result depends only on (dist, n, n_sets, seed).
pub fn bar_search(
    dist: &DistributionSpec,
    n: usize,
    n_sets: usize,
    seed: u64,
    opts: &BarOptions,
) -> Result<SetPool> {
    if n < 5 {
        return Err(Error::domain(format!("BAR search needs n >= 5, got {n}")));
    }
    if n_sets == 0 {
        return Err(Error::domain("BAR search needs n_sets >= 1"));
    }

    let b = expected_side(dist, n, opts.k_max)?;
    let arith_col = moment_column(
        &seqlab::arithmetic(n)?.quantile_transform(dist)?,
        opts.k_max,
    );
    let beta_u_col = moment_column(
        &seqlab::beta_quantile_seq(n, 0.547, 0.547)?.quantile_transform(dist)?,
        opts.k_max,
    );

    let evaluate = |attempt: usize| -> Result<Option<CalibratedSet>> {
        let base = 1 + attempt as u64 * 10;
        let mut columns = vec![arith_col.clone(), beta_u_col.clone()];
        for s in 0..10 {
            let seq = seqlab::pseudo_random_seq(n, seed, base + s)?;
            columns.push(moment_column(&seq.quantile_transform(dist)?, opts.k_max));
        }
        let a = columns_to_rows(&columns);
        let solution = solve_weights_min_norm(&a, &b, &[], opts.threshold)?;
        if !solution.feasible {
            return Ok(None);
        }
        Ok(Some(CalibratedSet {
            dist: dist.to_string(),
            n,
            k_max: opts.k_max,
            seed,
            residual: solution.residual,
            recipes: bar_recipes(n, seed, attempt),
            weights: solution.weights,
            pairs: Vec::new(),
            solver: WeightPolicy::MinNormNnls,
            created_unix: CalibratedSet::stamp(),
        }))
    };

    let batch = (4 * n_sets).clamp(16, 256);
    let mut qualified: Vec<CalibratedSet> = Vec::with_capacity(n_sets);
    let mut attempts_used = 0u64;
    let mut next = 0usize;
    while next < opts.max_attempts && qualified.len() < n_sets {
        let count = batch.min(opts.max_attempts - next);
        let results = exec::par_map_idx(count, |i| evaluate(next + i));
        for (i, res) in results.into_iter().enumerate() {
            match res? {
                Some(set) if qualified.len() < n_sets => {
                    qualified.push(set);
                    attempts_used = (next + i + 1) as u64;
                }
                _ => {}
            }
            if qualified.len() == n_sets {
                break;
            }
        }
        next += count;
    }

    let label = format!("BAR-{}", dist.family_code());
    if qualified.len() < n_sets {
        let mut partial = SetPool::new(label, qualified);
        partial.attempts = opts.max_attempts as u64;
        return Err(Error::SearchExhausted {
            attempts: opts.max_attempts,
            requested: n_sets,
            partial: Box::new(partial),
        });
    }
    let mut pool = SetPool::new(label, qualified);
    pool.attempts = attempts_used;
    Ok(pool)
}

/// Runs a BAR search per spec and pools the results (`sets_per_spec` each).
pub fn multi_dist_pool(
    specs: &[DistributionSpec],
    sets_per_spec: usize,
    n: usize,
    seed: u64,
    opts: &BarOptions,
) -> Result<SetPool> {
    if specs.is_empty() {
        return Err(Error::dimension("multi-distribution pool needs at least one spec"));
    }
    let mut pools = Vec::with_capacity(specs.len());
    for (i, spec) in specs.iter().enumerate() {
        pools.push(bar_search(
            spec,
            n,
            sets_per_spec,
            rng::derive_seed(seed, 0x5d00 + i as u64),
            opts,
        )?);
    }
    Ok(SetPool::merged("BAR-MULTI", pools))
}

/// The five-family pool: `sets_per_spec` BAR sets for each of the ten
/// canonical non-Gaussian parameterizations, combined with `base_sets`
/// sets calibrated to the target distribution itself (3×10 + 20 = the
/// canonical 50-set pool).
pub fn bar_five_family_pool(
    base: &DistributionSpec,
    base_sets: usize,
    sets_per_spec: usize,
    n: usize,
    seed: u64,
    opts: &BarOptions,
) -> Result<SetPool> {
    let multi = multi_dist_pool(
        &crate::dist::five_family_specs(),
        sets_per_spec,
        n,
        seed,
        opts,
    )?;
    let own = bar_search(base, n, base_sets, rng::derive_seed(seed, 0xba5e), opts)?;
    Ok(SetPool::merged("BAR-5D", vec![multi, own]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::DistributionSpec;

    fn gaussian() -> DistributionSpec {
        DistributionSpec::gaussian(0.0, 1.0).unwrap()
    }

    #[test]
    fn build_system_uniform_single_recipe() {
        let problem = CalibrationProblem {
            dist: DistributionSpec::uniform(0.0, 1.0).unwrap(),
            n: 9,
            k_max: 1,
            recipes: vec![
                SequenceRecipe::Arithmetic { n: 9 },
                SequenceRecipe::BetaQuantile { alpha: 0.547, beta: 0.547, n: 9 },
            ],
            pairs: vec![],
        };
        let (a, b) = build_system(&problem).unwrap();
        assert_eq!(a.len(), 2);
        assert!((a[0][0] - 0.5).abs() < 1e-14); // arithmetic mean
        assert!(a[1].iter().all(|&x| x == 1.0)); // unit-sum row
        assert!((b[0] - 0.5).abs() < 1e-14); // E[m1] = mean
        assert_eq!(b[1], 1.0);
    }

    #[test]
    fn build_system_gaussian_targets() {
        let n = 10;
        let problem = CalibrationProblem::new(
            gaussian(),
            n,
            seqlab::designed_recipes(n, 1),
        );
        let (a, b) = build_system(&problem).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(a[0].len(), 12);
        assert_eq!(b[0], 0.0); // E[m1] = 0
        assert!((b[1] - 0.9).abs() < 1e-14); // (n-1)/n
        assert_eq!(b[2], 0.0);
        assert_eq!(*b.last().unwrap(), 1.0);
    }

    #[test]
    fn build_system_needs_enough_sequences() {
        let problem = CalibrationProblem::new(
            gaussian(),
            10,
            vec![SequenceRecipe::Arithmetic { n: 10 }],
        );
        assert!(matches!(build_system(&problem), Err(Error::Dimension(_))));
    }

    #[test]
    fn theorem_single_sequence_self_consistency() {
        // any sequence is consistent with the discrete distribution it is:
        // targeting its own sample moments yields weight 1, residual 0
        for recipe in [
            SequenceRecipe::BetaQuantile { alpha: 46.761, beta: 20.108, n: 17 },
            SequenceRecipe::PseudoRandom { seed: 9, stream: 2, n: 17 },
        ] {
            let seq = recipe.realize().unwrap();
            let col = moment_column(seq.values(), DEFAULT_K_MAX);
            let a = columns_to_rows(std::slice::from_ref(&col));
            let sol = solve_weights(&a, &col, &[], 1e-10).unwrap();
            assert!((sol.weights[0] - 1.0).abs() < 1e-12);
            assert!(sol.residual < 1e-12);
        }
    }

    #[test]
    fn designed_calibration_qualifies_at_n10() {
        let set = calibrate_designed(&gaussian(), 10, 42).unwrap();
        assert!(set.residual < 1e-10, "residual {}", set.residual);
        assert_eq!(set.recipes.len(), 12);
        let sum: f64 = set.weights.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        for &(i, j) in &set.pairs {
            assert!((set.weights[i] - set.weights[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn designed_calibration_resolves_to_same_residual() {
        let set = calibrate_designed(&gaussian(), 12, 7).unwrap();
        let resolved = set.resolve().unwrap();
        assert!((resolved.residual - set.residual).abs() < 1e-12);
        for (a, b) in resolved.weights.iter().zip(&set.weights) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn bar_search_qualifies_and_is_deterministic() {
        let opts = BarOptions::default();
        let pool = bar_search(&gaussian(), 10, 3, 42, &opts).unwrap();
        assert_eq!(pool.sets.len(), 3);
        assert!(pool.attempts > 0);
        for set in &pool.sets {
            assert!(set.residual < 1e-10);
            assert_eq!(set.recipes.len(), 12);
        }
        let again = bar_search(&gaussian(), 10, 3, 42, &opts).unwrap();
        assert_eq!(pool.attempts, again.attempts);
        for (a, b) in pool.sets.iter().zip(&again.sets) {
            assert_eq!(a.residual, b.residual);
            assert_eq!(a.weights, b.weights);
            assert_eq!(a.recipes, b.recipes);
        }
        assert!(bar_search(&gaussian(), 4, 1, 0, &opts).is_err());
    }

    #[test]
    fn bar_search_exhaustion_carries_partials() {
        let opts = BarOptions { max_attempts: 1, ..BarOptions::default() };
        // threshold impossible to reach
        let opts = BarOptions { threshold: 1e-300, ..opts };
        match bar_search(&gaussian(), 10, 2, 1, &opts) {
            Err(Error::SearchExhausted { attempts, requested, partial }) => {
                assert_eq!(attempts, 1);
                assert_eq!(requested, 2);
                assert!(partial.sets.len() < 2);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn monte_carlo_special_case_residual_shrinks() {
        // equal weights over N pseudo-random sequences: residual decreases as
        // N doubles
        let dist = gaussian();
        let n = 30;
        let b = expected_side(&dist, n, DEFAULT_K_MAX).unwrap();
        let mut previous = f64::INFINITY;
        for (round, n_seq) in [200usize, 400, 800].into_iter().enumerate() {
            let mut columns = Vec::with_capacity(n_seq);
            for s in 0..n_seq {
                let seq = seqlab::pseudo_random_seq(n, 2024, s as u64).unwrap();
                columns.push(moment_column(&seq.quantile_transform(&dist).unwrap(), DEFAULT_K_MAX));
            }
            let w = 1.0 / n_seq as f64;
            let residual = (0..b.len())
                .map(|k| {
                    let fit: f64 = columns.iter().map(|c| w * c[k]).sum();
                    (fit - b[k]).powi(2)
                })
                .sum::<f64>()
                .sqrt();
            assert!(residual < previous, "round {round}: {residual} !< {previous}");
            previous = residual;
        }
    }

    #[test]
    fn multi_pool_shape() {
        let opts = BarOptions::default();
        let specs = [
            DistributionSpec::weibull(2.0, 1.0).unwrap(),
            DistributionSpec::gamma(1.0, 1.0).unwrap(),
        ];
        let pool = multi_dist_pool(&specs, 2, 10, 3, &opts).unwrap();
        assert_eq!(pool.sets.len(), 4);
        assert!(multi_dist_pool(&[], 1, 10, 3, &opts).is_err());
    }

    #[test]
    fn pool_round_trips_through_json() {
        let opts = BarOptions::default();
        let mut pool = bar_search(&gaussian(), 10, 2, 5, &opts).unwrap();
        pool.meta = Some(FileMeta::new("test command", 5));
        let dir = std::env::temp_dir().join(format!("seqcal-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("pool.json");
        pool.save(&path).unwrap();
        let loaded = SetPool::load(&path).unwrap();
        // timestamps are in-memory only
        let mut expect = pool.clone();
        for s in &mut expect.sets {
            s.created_unix = None;
        }
        assert_eq!(loaded, expect);
        // byte stability
        pool.save(dir.join("pool2.json")).unwrap();
        let b1 = std::fs::read(&path).unwrap();
        let b2 = std::fs::read(dir.join("pool2.json")).unwrap();
        assert_eq!(b1, b2);
        std::fs::remove_dir_all(&dir).ok();
    }
}
