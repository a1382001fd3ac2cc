//! Sample central moments, their exact finite-sample expectations, and the
//! unbiased (U-statistic) central moment estimators.
//!
//! All computations are two-pass (mean first, then centered powers); the
//! expectations and unbiased factors are verified against a full enumeration
//! oracle in the test suite, not taken on faith.

use crate::dist::MomentVector;
use crate::error::{Error, Result};

/// Biased sample central moments m₁..m₄ of one sample (1/n normalization;
/// m₁ is the sample mean).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleMoments {
    pub n: usize,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
}

impl SampleMoments {
    pub fn moment(&self, k: u32) -> f64 {
        match k {
            1 => self.m1,
            2 => self.m2,
            3 => self.m3,
            4 => self.m4,
            _ => panic!("moment order {k} out of range"),
        }
    }
}

/// All four sample central moments in one pass over the deviations.
pub fn sample_moments(xs: &[f64]) -> Result<SampleMoments> {
    if xs.is_empty() {
        return Err(Error::domain("sample moments need at least one observation"));
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let (mut s2, mut s3, mut s4) = (0.0, 0.0, 0.0);
    for &x in xs {
        let d = x - mean;
        let d2 = d * d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    Ok(SampleMoments {
        n: xs.len(),
        m1: mean,
        m2: s2 / n,
        m3: s3 / n,
        m4: s4 / n,
    })
}

/// The k-th biased sample central moment; k = 1 returns the sample mean.
pub fn sample_central_moment(xs: &[f64], k: u32) -> Result<f64> {
    if !(1..=4).contains(&k) {
        return Err(Error::unsupported(format!("sample central moment order {k} (supported: 1..4)")));
    }
    Ok(sample_moments(xs)?.moment(k))
}

/// Exact E[m_k] for samples of size n from a population with the given
/// central moments:
///   E[m₁] = µ
///   E[m₂] = (n-1)/n · µ₂
///   E[m₃] = (n-1)(n-2)/n² · µ₃
///   E[m₄] = (n-1)/n³ · [(n²-3n+3)µ₄ + 3(2n-3)µ₂²]
pub fn expected_sample_central_moment(mv: &MomentVector, n: usize, k: u32) -> Result<f64> {
    let min_n: usize = match k {
        1 => 1,
        2 => 2,
        3 => 3,
        4 => 4,
        _ => {
            return Err(Error::unsupported(format!(
                "expected sample central moment order {k} (supported: 1..4)"
            )))
        }
    };
    if n < min_n {
        return Err(Error::domain(format!(
            "expected m_{k} needs n >= {min_n}, got {n}"
        )));
    }
    let nf = n as f64;
    Ok(match k {
        1 => mv.mean,
        2 => (nf - 1.0) / nf * mv.mu2,
        3 => (nf - 1.0) * (nf - 2.0) / (nf * nf) * mv.mu3,
        4 => {
            (nf - 1.0) / (nf * nf * nf)
                * ((nf * nf - 3.0 * nf + 3.0) * mv.mu4 + 3.0 * (2.0 * nf - 3.0) * mv.mu2 * mv.mu2)
        }
        _ => unreachable!(),
    })
}

/// Unbiased (U-statistic) central moment estimator u_k with E[u_k] = µ_k:
/// Bessel's correction for k = 2, the n²/((n-1)(n-2)) factor for k = 3, and
/// for k = 4 the h-statistic obtained by inverting the joint expectations of
/// (m₄, m₂²).
pub fn u_central_moment(xs: &[f64], k: u32) -> Result<f64> {
    let min_n: usize = match k {
        2 => 2,
        3 => 3,
        4 => 4,
        _ => {
            return Err(Error::unsupported(format!(
                "u-central moment order {k} (supported: 2..4)"
            )))
        }
    };
    if xs.len() < min_n {
        return Err(Error::domain(format!(
            "u_{k} needs n >= {min_n}, got {}",
            xs.len()
        )));
    }
    let sm = sample_moments(xs)?;
    let n = sm.n as f64;
    Ok(match k {
        2 => n / (n - 1.0) * sm.m2,
        3 => n * n / ((n - 1.0) * (n - 2.0)) * sm.m3,
        4 => {
            // Solve E[m₄], E[m₂²] for µ₄: the 2x2 moment system has
            // determinant n²(n-2)(n-3), giving
            //   u₄ = n[(n²-2n+3)m₄ - 3(2n-3)m₂²] / ((n-1)(n-2)(n-3))
            n * ((n * n - 2.0 * n + 3.0) * sm.m4 - 3.0 * (2.0 * n - 3.0) * sm.m2 * sm.m2)
                / ((n - 1.0) * (n - 2.0) * (n - 3.0))
        }
        _ => unreachable!(),
    })
}
