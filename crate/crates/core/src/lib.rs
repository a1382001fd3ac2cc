//! Finite-sample calibration of weighted sequence sets.
//!
//! This crate decomposes the finite-sample structure of uniform random
//! variables into a small collection of designed unit sequences with
//! solved simplex weights, such that the weighted sequences reproduce the
//! exact expected sample central moments of a target distribution. The
//! calibrated sets then estimate finite-sample bias and variance of
//! statistics (sample sd, median, unbiased central moments, plugins) at a
//! tiny fraction of the cost of Monte Carlo, with exact analytic oracles
//! available for validation.
//!
//! Modules:
//! - [`dist`] — distribution registry: quantiles, densities, population
//!   moments, and exact finite-sample reference values.
//! - [`seqlab`] — construction of the designed sequences on (0, 1).
//! - [`moments`] — sample central moments, their exact expectations, and
//!   unbiased (U-statistic) estimators.
//! - [`calib`] — the consistency system, the simplex-constrained solver,
//!   the stochastic BAR search, and set pooling.
//! - [`estimate`] — weighted bias/variance estimation, Monte Carlo
//!   baselines, RMSE comparisons, and scaled standard errors.
//!
//! The `parallel` feature (on by default) runs searches, curves, and Monte
//! Carlo loops on rayon; results are identical with it disabled.

pub mod calib;
pub mod dist;
pub mod error;
pub mod estimate;
pub mod fileio;
pub mod moments;
pub mod quad;
pub mod rng;
pub mod seqlab;
pub mod special;

mod exec;
mod solver;

pub use error::{Error, Result};
