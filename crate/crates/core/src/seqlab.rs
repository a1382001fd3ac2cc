//! Designed sequences on (0, 1): the arithmetic grid, beta-quantile
//! transforms, skewed split-grid mixtures, seeded pseudo-random draws, and
//! the complement sequence that flattens a pooled set back toward uniform.
//!
//! Every sequence is a deterministic function of its recipe; values are kept
//! sorted ascending and strictly inside (0, 1).

use serde::{Deserialize, Serialize};

use crate::dist::DistributionSpec;
use crate::error::{Error, Result};
use crate::rng;
use crate::special;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Left,
    Right,
}

/// A deterministic generation rule for one unit sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceRecipe {
    Arithmetic {
        n: usize,
    },
    BetaQuantile {
        alpha: f64,
        beta: f64,
        n: usize,
    },
    SelfMixture {
        a1: f64,
        a2: f64,
        orientation: Orientation,
        n: usize,
    },
    ArithMixture {
        alpha: f64,
        orientation: Orientation,
        n: usize,
    },
    PseudoRandom {
        seed: u64,
        #[serde(rename = "streamIndex")]
        stream: u64,
        n: usize,
    },
    Complement {
        siblings: Vec<SequenceRecipe>,
        n: usize,
    },
}

impl SequenceRecipe {
    pub fn n(&self) -> usize {
        match self {
            SequenceRecipe::Arithmetic { n }
            | SequenceRecipe::BetaQuantile { n, .. }
            | SequenceRecipe::SelfMixture { n, .. }
            | SequenceRecipe::ArithMixture { n, .. }
            | SequenceRecipe::PseudoRandom { n, .. }
            | SequenceRecipe::Complement { n, .. } => *n,
        }
    }

    /// Same recipe kind and parameters at a different sample size.
    pub fn with_n(&self, n: usize) -> SequenceRecipe {
        let mut recipe = self.clone();
        match &mut recipe {
            SequenceRecipe::Arithmetic { n: m }
            | SequenceRecipe::BetaQuantile { n: m, .. }
            | SequenceRecipe::SelfMixture { n: m, .. }
            | SequenceRecipe::ArithMixture { n: m, .. }
            | SequenceRecipe::PseudoRandom { n: m, .. } => *m = n,
            SequenceRecipe::Complement { siblings, n: m } => {
                *m = n;
                *siblings = siblings.iter().map(|r| r.with_n(n)).collect();
            }
        }
        recipe
    }

    /// Regenerates the sequence; bit-identical for identical recipes.
    pub fn realize(&self) -> Result<UnitSequence> {
        match self {
            SequenceRecipe::Arithmetic { n } => arithmetic(*n),
            SequenceRecipe::BetaQuantile { alpha, beta, n } => beta_quantile_seq(*n, *alpha, *beta),
            SequenceRecipe::SelfMixture { a1, a2, orientation, n } => {
                self_mixture_seq(*n, *a1, *a2, *orientation)
            }
            SequenceRecipe::ArithMixture { alpha, orientation, n } => {
                arith_mixture_seq(*n, *alpha, *orientation)
            }
            SequenceRecipe::PseudoRandom { seed, stream, n } => {
                pseudo_random_seq(*n, *seed, *stream)
            }
            SequenceRecipe::Complement { siblings, n } => {
                let realized: Result<Vec<UnitSequence>> =
                    siblings.iter().map(|r| r.realize()).collect();
                complement_seq(*n, &realized?)
            }
        }
    }
}

/// A realized sequence on (0, 1) with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitSequence {
    values: Vec<f64>,
    recipe: SequenceRecipe,
}

impl UnitSequence {
    fn new(mut values: Vec<f64>, recipe: SequenceRecipe) -> Self {
        values.sort_by(|a, b| a.total_cmp(b));
        debug_assert!(values.iter().all(|&v| v > 0.0 && v < 1.0));
        UnitSequence { values, recipe }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn recipe(&self) -> &SequenceRecipe {
        &self.recipe
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Maps the sequence through a distribution quantile; stays sorted.
    pub fn quantile_transform(&self, spec: &DistributionSpec) -> Result<Vec<f64>> {
        self.values.iter().map(|&u| spec.quantile(u)).collect()
    }
}

/// The arithmetic sequence {i/(n+1)}.
pub fn arithmetic(n: usize) -> Result<UnitSequence> {
    if n == 0 {
        return Err(Error::domain("arithmetic sequence requires n >= 1"));
    }
    let step = 1.0 / (n as f64 + 1.0);
    let values = (1..=n).map(|i| i as f64 * step).collect();
    Ok(UnitSequence::new(values, SequenceRecipe::Arithmetic { n }))
}

/// The arithmetic grid pushed through the Beta(alpha, beta) quantile.
pub fn beta_quantile_seq(n: usize, alpha: f64, beta: f64) -> Result<UnitSequence> {
    if n == 0 {
        return Err(Error::domain("beta-quantile sequence requires n >= 1"));
    }
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::parameter(format!(
            "beta-quantile sequence requires positive shapes, got alpha={alpha}, beta={beta}"
        )));
    }
    let step = 1.0 / (n as f64 + 1.0);
    let values = (1..=n)
        .map(|i| special::inv_reg_inc_beta(alpha, beta, i as f64 * step))
        .collect();
    Ok(UnitSequence::new(
        values,
        SequenceRecipe::BetaQuantile { alpha, beta, n },
    ))
}

/// Mirrors a sequence: {1 - x}, re-sorted. Involutive. The recipe is kept as
/// provenance of the source sequence; reflections are a value-level transform
/// used for symmetry checks and are never persisted.
pub fn reflect(seq: &UnitSequence) -> UnitSequence {
    let values = seq.values.iter().map(|&v| 1.0 - v).collect();
    UnitSequence::new(values, seq.recipe.clone())
}

// Split-grid mixture: the lower ⌈n/2⌉ points come from a fresh arithmetic
// grid mapped through `lower` into (0, 1/2), the upper ⌊n/2⌋ points from
// `upper` into (1/2, 1).
fn split_mixture(
    n: usize,
    lower: impl Fn(f64) -> f64,
    upper: impl Fn(f64) -> f64,
) -> Vec<f64> {
    let n_lo = n.div_ceil(2);
    let n_hi = n / 2;
    let mut values = Vec::with_capacity(n);
    for i in 1..=n_lo {
        let u = i as f64 / (n_lo as f64 + 1.0);
        values.push(0.5 * lower(u));
    }
    for i in 1..=n_hi {
        let u = i as f64 / (n_hi as f64 + 1.0);
        values.push(0.5 + 0.5 * upper(u));
    }
    values
}

/// Mixture of two symmetric beta-quantile components on the half-intervals.
/// `orientation = Left` places Beta(a1, a1) on the lower half and
/// Beta(a2, a2) on the upper half; `Right` swaps the component roles, which
/// reflects the sequence exactly when n is even.
pub fn self_mixture_seq(n: usize, a1: f64, a2: f64, orientation: Orientation) -> Result<UnitSequence> {
    if n < 2 {
        return Err(Error::domain("self-mixture sequence requires n >= 2"));
    }
    if !(a1 > 0.0 && a2 > 0.0) {
        return Err(Error::parameter(format!(
            "self-mixture requires positive shapes, got a1={a1}, a2={a2}"
        )));
    }
    let q1 = |u: f64| special::inv_reg_inc_beta(a1, a1, u);
    let q2 = |u: f64| special::inv_reg_inc_beta(a2, a2, u);
    let values = match orientation {
        Orientation::Left => split_mixture(n, q1, q2),
        Orientation::Right => split_mixture(n, q2, q1),
    };
    Ok(UnitSequence::new(
        values,
        SequenceRecipe::SelfMixture { a1, a2, orientation, n },
    ))
}

/// Mixture of a symmetric beta-quantile component with the identity
/// (arithmetic) component, same split construction as [`self_mixture_seq`].
pub fn arith_mixture_seq(n: usize, alpha: f64, orientation: Orientation) -> Result<UnitSequence> {
    if n < 2 {
        return Err(Error::domain("arith-mixture sequence requires n >= 2"));
    }
    if !(alpha > 0.0) {
        return Err(Error::parameter(format!(
            "arith-mixture requires a positive shape, got alpha={alpha}"
        )));
    }
    let q = |u: f64| special::inv_reg_inc_beta(alpha, alpha, u);
    let identity = |u: f64| u;
    let values = match orientation {
        Orientation::Left => split_mixture(n, q, identity),
        Orientation::Right => split_mixture(n, identity, q),
    };
    Ok(UnitSequence::new(
        values,
        SequenceRecipe::ArithMixture { alpha, orientation, n },
    ))
}

/// A sorted pseudo-random sequence from the named generator (see
/// [`crate::rng::GENERATOR_ID`]); identical across runs and platforms for
/// identical (seed, stream, n).
pub fn pseudo_random_seq(n: usize, seed: u64, stream: u64) -> Result<UnitSequence> {
    if n == 0 {
        return Err(Error::domain("pseudo-random sequence requires n >= 1"));
    }
    let values = rng::unit_open01(seed, stream, n);
    Ok(UnitSequence::new(
        values,
        SequenceRecipe::PseudoRandom { seed, stream, n },
    ))
}

const COMPLEMENT_BINS: usize = 1024;

/// The complement sequence: quantiles of the residual density
/// r(x) = max(0, c - ĝ(x)) on a 1024-bin grid, where ĝ is the equal-weight
/// histogram density of the pooled siblings and the level c is chosen so
/// that r integrates to one. Pooling the result with its siblings moves the
/// pool toward uniform.
pub fn complement_seq(n: usize, siblings: &[UnitSequence]) -> Result<UnitSequence> {
    if n == 0 {
        return Err(Error::domain("complement sequence requires n >= 1"));
    }
    if siblings.is_empty() {
        return Err(Error::dimension("complement sequence requires at least one sibling"));
    }
    for s in siblings {
        if s.len() != n {
            return Err(Error::dimension(format!(
                "complement sibling size {} does not match n={n}",
                s.len()
            )));
        }
    }

    // Pooled histogram density on the unit interval.
    let mut counts = vec![0u64; COMPLEMENT_BINS];
    let mut total = 0u64;
    for s in siblings {
        for &v in s.values() {
            let bin = ((v * COMPLEMENT_BINS as f64) as usize).min(COMPLEMENT_BINS - 1);
            counts[bin] += 1;
            total += 1;
        }
    }
    let density: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 * COMPLEMENT_BINS as f64 / total as f64)
        .collect();

    // Water-filling level c with Σ max(0, c - g_j)·Δ = 1.
    let mut sorted = density.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let mut level = f64::NAN;
    let mut prefix = 0.0;
    for m in 1..=COMPLEMENT_BINS {
        let candidate = (COMPLEMENT_BINS as f64 + prefix + sorted[m - 1]) / m as f64;
        let upper = if m == COMPLEMENT_BINS { f64::INFINITY } else { sorted[m] };
        prefix += sorted[m - 1];
        if candidate >= sorted[m - 1] && candidate <= upper {
            level = candidate;
            break;
        }
    }
    debug_assert!(level.is_finite(), "water-filling level not found");

    // Residual CDF over bin edges, renormalized to end exactly at 1.
    let residual: Vec<f64> = density.iter().map(|&g| (level - g).max(0.0)).collect();
    let bin_width = 1.0 / COMPLEMENT_BINS as f64;
    let mut cum = Vec::with_capacity(COMPLEMENT_BINS);
    let mut acc = 0.0;
    for &r in &residual {
        acc += r * bin_width;
        cum.push(acc);
    }
    let norm = acc;
    for c in &mut cum {
        *c /= norm;
    }

    // Quantiles of the residual at the arithmetic grid.
    let mut values = Vec::with_capacity(n);
    for i in 1..=n {
        let q = i as f64 / (n as f64 + 1.0);
        let j = cum.partition_point(|&c| c < q).min(COMPLEMENT_BINS - 1);
        let below = if j == 0 { 0.0 } else { cum[j - 1] };
        let mass = cum[j] - below;
        let frac = if mass > 0.0 { ((q - below) / mass).clamp(0.0, 1.0) } else { 0.5 };
        let x = (j as f64 + frac) * bin_width;
        values.push(x.clamp(f64::MIN_POSITIVE, 1.0 - 1e-12));
    }

    Ok(UnitSequence::new(
        values,
        SequenceRecipe::Complement {
            siblings: siblings.iter().map(|s| s.recipe().clone()).collect(),
            n,
        },
    ))
}

/// Recipes of the twelve designed sequences, in fixed order.
pub fn designed_recipes(n: usize, seed: u64) -> Vec<SequenceRecipe> {
    use SequenceRecipe::*;
    let head = vec![
        Arithmetic { n },
        BetaQuantile { alpha: 0.547, beta: 0.547, n },
        BetaQuantile { alpha: 46.761, beta: 20.108, n },
        BetaQuantile { alpha: 20.108, beta: 46.761, n },
        BetaQuantile { alpha: 0.478, beta: 38.53, n },
        BetaQuantile { alpha: 38.53, beta: 0.478, n },
        SelfMixture { a1: 0.369, a2: 18.933, orientation: Orientation::Left, n },
        SelfMixture { a1: 0.369, a2: 18.933, orientation: Orientation::Right, n },
        ArithMixture { alpha: 0.328, orientation: Orientation::Left, n },
        ArithMixture { alpha: 0.328, orientation: Orientation::Right, n },
        PseudoRandom { seed, stream: 0, n },
    ];
    let mut recipes = head.clone();
    recipes.push(Complement { siblings: head, n });
    recipes
}

/// Index pairs of the designed set constrained to equal weight
/// (the two skewed betas, the two monotonic betas, and the two mixtures).
pub const DESIGNED_PAIRS: [(usize, usize); 4] = [(2, 3), (4, 5), (6, 7), (8, 9)];

/// The twelve designed sequences in fixed order: arithmetic, U-shape beta,
/// skewed beta pair, monotonic beta pair, self-mixture pair, arith-mixture
/// pair, one pseudo-random sequence, and the complement of the other eleven.
pub fn designed_12(n: usize, seed: u64) -> Result<Vec<UnitSequence>> {
    if n < 5 {
        return Err(Error::domain(format!(
            "the designed set needs n >= 5 for nondegenerate moments, got {n}"
        )));
    }
    let recipes = designed_recipes(n, seed);
    let mut sequences: Vec<UnitSequence> = Vec::with_capacity(12);
    for recipe in &recipes[..11] {
        sequences.push(recipe.realize()?);
    }
    let complement = complement_seq(n, &sequences)?;
    sequences.push(complement);
    Ok(sequences)
}

/// Kolmogorov distance between a sorted sample and the uniform CDF on (0,1).
pub fn kolmogorov_to_uniform(sorted: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let upper = (i as f64 + 1.0) / n - x;
            let lower = x - i as f64 / n;
            upper.max(lower)
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov distance between sorted samples.
pub fn kolmogorov_between(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut i = 0;
    let mut j = 0;
    let mut max_gap: f64 = 0.0;
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        max_gap = max_gap.max((i as f64 / na - j as f64 / nb).abs());
    }
    max_gap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::sample_central_moment;

    #[test]
    fn arithmetic_values() {
        assert_eq!(arithmetic(3).unwrap().values(), &[0.25, 0.5, 0.75]);
        assert_eq!(arithmetic(1).unwrap().values(), &[0.5]);
        let a4 = arithmetic(4).unwrap();
        for (v, e) in a4.values().iter().zip([0.2, 0.4, 0.6, 0.8]) {
            assert!((v - e).abs() < 1e-15);
        }
        assert!(arithmetic(0).is_err());
    }

    #[test]
    fn beta_quantile_values() {
        let identity = beta_quantile_seq(3, 1.0, 1.0).unwrap();
        for (v, e) in identity.values().iter().zip([0.25, 0.5, 0.75]) {
            assert!((v - e).abs() < 1e-14);
        }
        // Beta(2,1) quantile is sqrt(u)
        let sq = beta_quantile_seq(3, 2.0, 1.0).unwrap();
        for (v, e) in sq.values().iter().zip([0.5, 0.707106781186547, 0.866025403784438]) {
            assert!((v - e).abs() < 1e-12);
        }
        // symmetric beta keeps the middle point at 1/2
        let u = beta_quantile_seq(7, 0.547, 0.547).unwrap();
        assert!((u.values()[3] - 0.5).abs() < 1e-13);
        assert!(beta_quantile_seq(3, 0.0, 1.0).is_err());
    }

    #[test]
    fn reflect_identities() {
        let seq = UnitSequence::new(vec![0.2, 0.5, 0.9], SequenceRecipe::Arithmetic { n: 3 });
        for (v, e) in reflect(&seq).values().iter().zip([0.1, 0.5, 0.8]) {
            assert!((v - e).abs() < 1e-15);
        }
        let arith = arithmetic(10).unwrap();
        for (a, b) in arith.values().iter().zip(reflect(&arith).values()) {
            assert!((a - b).abs() < 1e-15);
        }
        let skew = beta_quantile_seq(25, 46.761, 20.108).unwrap();
        let mirrored = beta_quantile_seq(25, 20.108, 46.761).unwrap();
        for (a, b) in reflect(&skew).values().iter().zip(mirrored.values()) {
            assert!((a - b).abs() < 1e-12);
        }
        // involution
        for (a, b) in reflect(&reflect(&skew)).values().iter().zip(skew.values()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn self_mixture_hand_example() {
        let seq = self_mixture_seq(4, 1.0, 1.0, Orientation::Left).unwrap();
        let expect = [1.0 / 6.0, 1.0 / 3.0, 2.0 / 3.0, 5.0 / 6.0];
        for (v, e) in seq.values().iter().zip(expect) {
            assert!((v - e).abs() < 1e-14);
        }
        // right orientation reflects the left one when n is even
        let left = self_mixture_seq(8, 0.369, 18.933, Orientation::Left).unwrap();
        let right = self_mixture_seq(8, 0.369, 18.933, Orientation::Right).unwrap();
        for (a, b) in reflect(&left).values().iter().zip(right.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn mixtures_skew_in_the_stated_direction() {
        let left = self_mixture_seq(80, 0.369, 18.933, Orientation::Left).unwrap();
        assert!(sample_central_moment(left.values(), 3).unwrap() < 0.0);
        let right = self_mixture_seq(80, 0.369, 18.933, Orientation::Right).unwrap();
        assert!(sample_central_moment(right.values(), 3).unwrap() > 0.0);

        let am_left = arith_mixture_seq(80, 0.328, Orientation::Left).unwrap();
        assert!(sample_central_moment(am_left.values(), 3).unwrap() < 0.0);
        let am_right = arith_mixture_seq(80, 0.328, Orientation::Right).unwrap();
        assert!(sample_central_moment(am_right.values(), 3).unwrap() > 0.0);
    }

    #[test]
    fn arith_mixture_identity_case() {
        let seq = arith_mixture_seq(4, 1.0, Orientation::Left).unwrap();
        let expect = [1.0 / 6.0, 1.0 / 3.0, 2.0 / 3.0, 5.0 / 6.0];
        for (v, e) in seq.values().iter().zip(expect) {
            assert!((v - e).abs() < 1e-14);
        }
        let left = arith_mixture_seq(10, 0.328, Orientation::Left).unwrap();
        let right = arith_mixture_seq(10, 0.328, Orientation::Right).unwrap();
        for (a, b) in reflect(&left).values().iter().zip(right.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn pseudo_random_contract() {
        let a = pseudo_random_seq(50, 7, 3).unwrap();
        let b = pseudo_random_seq(50, 7, 3).unwrap();
        assert_eq!(a.values(), b.values());
        let c = pseudo_random_seq(50, 7, 4).unwrap();
        assert_ne!(a.values(), c.values());
        assert!(a.values().windows(2).all(|w| w[0] <= w[1]));

        // law of large numbers: mean within 3σ/√n of 1/2
        let big = pseudo_random_seq(100_000, 123, 0).unwrap();
        let mean: f64 = big.values().iter().sum::<f64>() / 100_000.0;
        assert!((mean - 0.5).abs() < 0.005);
    }

    #[test]
    fn complement_of_uniform_pool_is_uniform() {
        let n = 100;
        let arith = arithmetic(n).unwrap();
        let comp = complement_seq(n, std::slice::from_ref(&arith)).unwrap();
        let dist = kolmogorov_between(comp.values(), arith.values());
        assert!(dist < 2.0 / n as f64, "distance {dist}");
    }

    #[test]
    fn complement_fills_the_empty_half() {
        // Siblings densely covering (0, 1/2) only: the residual lives in [1/2, 1).
        let n = 4096;
        let halved: Vec<f64> = arithmetic(n).unwrap().values().iter().map(|v| v * 0.5).collect();
        let sib = UnitSequence::new(halved, SequenceRecipe::Arithmetic { n });
        let comp = complement_seq(n, &[sib.clone(), sib.clone(), sib]).unwrap();
        assert!(comp.values().iter().all(|&v| v >= 0.5), "min {}", comp.values()[0]);
    }

    #[test]
    fn complement_reduces_kolmogorov_distance() {
        for n in [20usize, 50, 80] {
            let set = designed_12(n, 99).unwrap();
            let mut pool11: Vec<f64> = set[..11].iter().flat_map(|s| s.values().iter().copied()).collect();
            pool11.sort_by(|a, b| a.total_cmp(b));
            let mut pool12: Vec<f64> = set.iter().flat_map(|s| s.values().iter().copied()).collect();
            pool12.sort_by(|a, b| a.total_cmp(b));
            let before = kolmogorov_to_uniform(&pool11);
            let after = kolmogorov_to_uniform(&pool12);
            assert!(after <= before, "n={n}: {after} > {before}");
        }
    }

    #[test]
    fn complement_size_mismatch() {
        let a = arithmetic(10).unwrap();
        let b = arithmetic(11).unwrap();
        assert!(matches!(complement_seq(10, &[a, b]), Err(crate::error::Error::Dimension(_))));
    }

    #[test]
    fn designed_12_shape() {
        assert!(designed_12(4, 1).is_err());
        let set = designed_12(10, 42).unwrap();
        assert_eq!(set.len(), 12);
        for s in &set {
            assert_eq!(s.len(), 10);
            assert!(s.values().iter().all(|&v| v > 0.0 && v < 1.0));
        }
        // beta reflection pairs hold at any n; mixture pairs at even n
        for &(i, j) in &DESIGNED_PAIRS {
            for (a, b) in reflect(&set[i]).values().iter().zip(set[j].values()) {
                assert!((a - b).abs() < 1e-12, "pair ({i},{j})");
            }
        }
        // determinism end to end
        let again = designed_12(10, 42).unwrap();
        for (s, t) in set.iter().zip(&again) {
            assert_eq!(s.values(), t.values());
        }
        let other_seed = designed_12(10, 43).unwrap();
        assert_ne!(set[10].values(), other_seed[10].values());
    }

    #[test]
    fn designed_range_stays_inside_unit_interval() {
        for n in (5..=100).step_by(7) {
            let set = designed_12(n, 7).unwrap();
            for s in &set {
                assert!(s.values().iter().all(|&v| v > 0.0 && v < 1.0), "n={n}");
            }
        }
    }

    #[test]
    fn recipes_regenerate_bit_identically() {
        let recipes = designed_recipes(20, 5);
        for r in &recipes {
            let a = r.realize().unwrap();
            let b = r.realize().unwrap();
            assert_eq!(a.values(), b.values());
        }
    }

    #[test]
    fn arithmetic_limit_matches_uniform_moments() {
        let n = 100_000;
        let seq = arithmetic(n).unwrap();
        let uniform = DistributionSpec::uniform(0.0, 1.0).unwrap().central_moments();
        let tol = 10.0 / n as f64;
        let m2 = sample_central_moment(seq.values(), 2).unwrap();
        assert!(((m2 - uniform.mu2) / uniform.mu2).abs() < tol);
        let m3 = sample_central_moment(seq.values(), 3).unwrap();
        assert!(m3.abs() < tol * uniform.mu2);
        let m4 = sample_central_moment(seq.values(), 4).unwrap();
        assert!(((m4 - uniform.mu4) / uniform.mu4).abs() < tol);
    }
}
