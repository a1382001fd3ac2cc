//! Simplex-constrained least squares for the moment-matching system:
//! minimize ‖Aw - b‖₂ subject to w ≥ 0, Σw = 1, and equal weights inside
//! declared pairs.
//!
//! Pairs are eliminated by merging their columns into one shared variable,
//! nonnegativity is handled by a Lawson–Hanson active-set iteration (least
//! squares subproblems via Householder QR), and the unit-sum constraint is
//! restored exactly by a final rescale. The systems here are tiny (a handful
//! of rows, a dozen columns), so robustness and determinism matter more than
//! flop counts.

use crate::error::{Error, Result};

/// Weights for one sequence set together with the residual of the moment
/// system. The constraint invariants (nonnegativity, unit sum, pair
/// equality) hold to 1e-12 whether or not the solution is feasible.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSolution {
    pub weights: Vec<f64>,
    /// Euclidean norm of Aw - b at the returned weights.
    pub residual: f64,
    /// residual < threshold
    pub feasible: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

// Least squares min ‖A z - rhs‖ for the chosen columns via Householder QR.
// Returns None when the selected columns are numerically rank deficient.
fn lstsq(cols: &[Vec<f64>], chosen: &[usize], b: &[f64]) -> Option<Vec<f64>> {
    let m = b.len();
    let p = chosen.len();
    if p == 0 {
        return Some(Vec::new());
    }
    if p > m {
        return None;
    }

    let mut a: Vec<Vec<f64>> = chosen.iter().map(|&j| cols[j].clone()).collect();
    let mut rhs = b.to_vec();
    let max_norm = a.iter().map(|c| norm(c)).fold(0.0, f64::max);
    if max_norm == 0.0 {
        return None;
    }

    for j in 0..p {
        let col_norm = norm(&a[j][j..]);
        if col_norm <= 1e-13 * max_norm {
            return None;
        }
        let head = a[j][j];
        let alpha = if head >= 0.0 { -col_norm } else { col_norm };
        let mut v = a[j][j..].to_vec();
        v[0] -= alpha;
        let vtv = dot(&v, &v);
        if vtv > 0.0 {
            for target in j + 1..p {
                let col = &mut a[target][j..];
                let scale = 2.0 * dot(&v, col) / vtv;
                for (c, vi) in col.iter_mut().zip(&v) {
                    *c -= scale * vi;
                }
            }
            let r = &mut rhs[j..];
            let scale = 2.0 * dot(&v, r) / vtv;
            for (c, vi) in r.iter_mut().zip(&v) {
                *c -= scale * vi;
            }
        }
        a[j][j] = alpha;
        for row in j + 1..m {
            a[j][row] = 0.0;
        }
    }

    let mut z = vec![0.0; p];
    for j in (0..p).rev() {
        let mut acc = rhs[j];
        for k in j + 1..p {
            acc -= a[k][j] * z[k];
        }
        z[j] = acc / a[j][j];
    }
    Some(z)
}

// Lawson–Hanson nonnegative least squares over merged columns.
//
// `preferred` columns are seeded into the passive set before the first dual
// sweep: when the optimum is degenerate they end up carrying the weight, and
// they never block optimality (the active-set iteration still converges to a
// least-squares minimizer from any start).
fn nnls(cols: &[Vec<f64>], b: &[f64], preferred: &[usize]) -> Vec<f64> {
    let n = cols.len();
    let mut w = vec![0.0f64; n];
    let mut passive = vec![false; n];
    let mut banned = vec![false; n];
    let col_norms: Vec<f64> = cols.iter().map(|c| norm(c)).collect();

    let residual = |w: &[f64]| -> Vec<f64> {
        let mut r = b.to_vec();
        for (j, col) in cols.iter().enumerate() {
            if w[j] != 0.0 {
                for (ri, ci) in r.iter_mut().zip(col) {
                    *ri -= w[j] * ci;
                }
            }
        }
        r
    };

    // Feasibility restoration on the passive set (the LH inner loop).
    // `entrant` is unset for the warm start, where nothing gets banned.
    fn restore(
        cols: &[Vec<f64>],
        b: &[f64],
        w: &mut [f64],
        passive: &mut [bool],
        banned: &mut [bool],
        entrant: Option<usize>,
    ) {
        let n = cols.len();
        loop {
            let chosen: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            if chosen.is_empty() {
                break;
            }
            match lstsq(cols, &chosen, b) {
                None => {
                    // rank-deficient basis
                    if let Some(j) = entrant {
                        passive[j] = false;
                        banned[j] = true;
                    } else {
                        // drop the latest preferred column and retry
                        passive[*chosen.last().expect("nonempty")] = false;
                        continue;
                    }
                    break;
                }
                Some(z) => {
                    if z.iter().all(|&zi| zi > 0.0) {
                        for (&i, &zi) in chosen.iter().zip(&z) {
                            w[i] = zi;
                        }
                        for i in 0..n {
                            if !passive[i] {
                                w[i] = 0.0;
                            }
                        }
                        if entrant.is_some() {
                            banned.fill(false);
                        }
                        break;
                    }
                    let mut alpha = f64::INFINITY;
                    for (&i, &zi) in chosen.iter().zip(&z) {
                        if zi <= 0.0 {
                            let t = w[i] / (w[i] - zi);
                            if t < alpha {
                                alpha = t;
                            }
                        }
                    }
                    let mut dropped_entrant = false;
                    for (&i, &zi) in chosen.iter().zip(&z) {
                        w[i] += alpha * (zi - w[i]);
                        if zi <= 0.0 && w[i] <= 1e-14 {
                            w[i] = 0.0;
                            passive[i] = false;
                            if Some(i) == entrant {
                                dropped_entrant = true;
                            }
                        }
                    }
                    if dropped_entrant {
                        banned[entrant.expect("checked")] = true;
                        break;
                    }
                }
            }
        }
    }

    if !preferred.is_empty() {
        for &j in preferred {
            if j < n {
                passive[j] = true;
            }
        }
        restore(cols, b, &mut w, &mut passive, &mut banned, None);
    }

    for _outer in 0..30 * n.max(4) {
        let r = residual(&w);
        let r_norm = norm(&r);

        // Most positive dual among free, unbanned columns; ties to the
        // lowest index for determinism.
        let mut entrant: Option<(usize, f64)> = None;
        for j in 0..n {
            if passive[j] || banned[j] {
                continue;
            }
            let d = dot(&cols[j], &r);
            if d > entrant.map_or(0.0, |(_, best)| best) {
                entrant = Some((j, d));
            }
        }
        let Some((j, dual)) = entrant else { break };
        if dual <= 1e-13 * col_norms[j] * r_norm {
            break;
        }
        passive[j] = true;
        restore(cols, b, &mut w, &mut passive, &mut banned, Some(j));
    }
    w
}

// Minimize ‖v‖² subject to C v = b, v ≥ 0, starting from a feasible vertex
// (primal active set on the bound constraints; the equality-constrained
// subproblem is v_F = C_Fᵀ z with (C_F C_Fᵀ) z = b). Used to pick the
// most uniform weighting on the optimal face of a consistent system.
fn min_norm_refine(cols: &[Vec<f64>], b: &[f64], start: &[f64]) -> Vec<f64> {
    let n = cols.len();
    let m = b.len();
    let mut active: Vec<bool> = start.iter().map(|&x| x <= 0.0).collect();
    let mut v = start.to_vec();

    for _outer in 0..30 * n.max(4) {
        let free: Vec<usize> = (0..n).filter(|&i| !active[i]).collect();
        if free.is_empty() {
            break;
        }
        // Gram system (C_F C_Fᵀ) z = b.
        let mut gram: Vec<Vec<f64>> = vec![vec![0.0; m]; m];
        for &i in &free {
            for r in 0..m {
                for (c, g) in gram.iter_mut().enumerate() {
                    g[r] += cols[i][r] * cols[i][c];
                }
            }
        }
        let idx: Vec<usize> = (0..m).collect();
        let Some(z) = lstsq(&gram, &idx, b) else {
            break; // face too thin to refine; keep the vertex
        };
        let target: Vec<f64> = (0..n)
            .map(|i| if active[i] { 0.0 } else { dot(&cols[i], &z) })
            .collect();

        if target.iter().all(|&t| t >= -1e-14) {
            // Feasible minimizer on this face; release the most violated
            // bound multiplier, if any.
            v = target.iter().map(|&t| t.max(0.0)).collect();
            let mut release: Option<(usize, f64)> = None;
            for i in 0..n {
                if active[i] {
                    let gradient = dot(&cols[i], &z);
                    if gradient > release.map_or(1e-12, |(_, best)| best) {
                        release = Some((i, gradient));
                    }
                }
            }
            match release {
                Some((i, _)) => active[i] = false,
                None => break,
            }
        } else {
            // Step toward the face minimizer until a bound blocks.
            let mut alpha = 1.0f64;
            let mut blocker = None;
            for (i, (&vi, &ti)) in v.iter().zip(&target).enumerate() {
                if ti < 0.0 && vi > ti {
                    let t = vi / (vi - ti);
                    if t < alpha {
                        alpha = t;
                        blocker = Some(i);
                    }
                }
            }
            for (vi, &ti) in v.iter_mut().zip(&target) {
                *vi += alpha * (ti - *vi);
                if *vi < 0.0 {
                    *vi = 0.0;
                }
            }
            match blocker {
                Some(i) => {
                    v[i] = 0.0;
                    active[i] = true;
                }
                None => break,
            }
        }
    }
    v
}

/// Solves the weight system. See the module docs for the formulation; any
/// infeasibility shows up as a large residual, never as an error.
pub fn solve_weights(
    a: &[Vec<f64>],
    b: &[f64],
    pairs: &[(usize, usize)],
    threshold: f64,
) -> Result<WeightSolution> {
    solve_weights_impl(a, b, pairs, threshold, &[], false)
}

/// [`solve_weights`] with `anchors`: column indices seeded into the active
/// basis so that degenerate optima resolve in their favor. The minimized
/// residual is unchanged; only the selection among equally good weightings
/// moves toward the anchors.
pub fn solve_weights_seeded(
    a: &[Vec<f64>],
    b: &[f64],
    pairs: &[(usize, usize)],
    threshold: f64,
    anchors: &[usize],
) -> Result<WeightSolution> {
    solve_weights_impl(a, b, pairs, threshold, anchors, false)
}

/// [`solve_weights`] resolving degenerate optima toward the most uniform
/// weighting: when the system is consistent (residual below threshold), the
/// NNLS vertex is refined to the minimum-norm point of the optimal face.
/// The residual is unchanged; the weights spread across the columns.
pub fn solve_weights_min_norm(
    a: &[Vec<f64>],
    b: &[f64],
    pairs: &[(usize, usize)],
    threshold: f64,
) -> Result<WeightSolution> {
    solve_weights_impl(a, b, pairs, threshold, &[], true)
}

fn solve_weights_impl(
    a: &[Vec<f64>],
    b: &[f64],
    pairs: &[(usize, usize)],
    threshold: f64,
    anchors: &[usize],
    spread: bool,
) -> Result<WeightSolution> {
    let rows = a.len();
    if rows == 0 || b.len() != rows {
        return Err(Error::dimension(format!(
            "system has {rows} rows but {} targets",
            b.len()
        )));
    }
    let n_cols = a[0].len();
    if n_cols == 0 {
        return Err(Error::dimension("system has no columns"));
    }
    if a.iter().any(|row| row.len() != n_cols) {
        return Err(Error::dimension("ragged system matrix"));
    }
    let mut seen = vec![false; n_cols];
    for &(i, j) in pairs {
        if i >= n_cols || j >= n_cols || i == j {
            return Err(Error::dimension(format!("invalid pair ({i},{j}) for {n_cols} columns")));
        }
        if seen[i] || seen[j] {
            return Err(Error::dimension(format!("pair index reused in ({i},{j})")));
        }
        seen[i] = true;
        seen[j] = true;
    }

    // Merge paired columns into shared variables.
    let mut grouped = vec![false; n_cols];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &(i, j) in pairs {
        grouped[i] = true;
        grouped[j] = true;
        groups.push(vec![i.min(j), i.max(j)]);
    }
    for i in 0..n_cols {
        if !grouped[i] {
            groups.push(vec![i]);
        }
    }
    groups.sort_by_key(|g| g[0]);
    let mut group_of = vec![usize::MAX; n_cols];
    for (gi, g) in groups.iter().enumerate() {
        for &i in g {
            group_of[i] = gi;
        }
    }

    let merged: Vec<Vec<f64>> = groups
        .iter()
        .map(|g| {
            (0..rows)
                .map(|k| g.iter().map(|&i| a[k][i]).sum())
                .collect()
        })
        .collect();

    let mut preferred_groups: Vec<usize> = anchors
        .iter()
        .filter(|&&c| c < n_cols)
        .map(|&c| group_of[c])
        .collect();
    preferred_groups.dedup();

    let mut v = nnls(&merged, b, &preferred_groups);
    if spread {
        let mut fit = vec![0.0; rows];
        for (j, col) in merged.iter().enumerate() {
            for (fi, ci) in fit.iter_mut().zip(col) {
                *fi += v[j] * ci;
            }
        }
        let vertex_residual = fit
            .iter()
            .zip(b)
            .map(|(fi, bi)| (fi - bi) * (fi - bi))
            .sum::<f64>()
            .sqrt();
        if vertex_residual < threshold {
            v = min_norm_refine(&merged, b, &v);
        }
    }

    // Exact unit sum; an all-zero outcome falls back to the uniform point.
    let mass: f64 = groups
        .iter()
        .zip(&v)
        .map(|(g, &vi)| g.len() as f64 * vi)
        .sum();
    let mut weights = vec![0.0; n_cols];
    if mass > 1e-12 {
        for (g, &vi) in groups.iter().zip(&v) {
            for &i in g {
                weights[i] = vi / mass;
            }
        }
    } else {
        weights.fill(1.0 / n_cols as f64);
    }

    let mut sq = 0.0;
    for k in 0..rows {
        let fit = dot(&a[k], &weights);
        sq += (fit - b[k]) * (fit - b[k]);
    }
    let residual = sq.sqrt();

    Ok(WeightSolution {
        weights,
        residual,
        feasible: residual < threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_consistent_column() {
        // one recipe whose moments already equal b: weight 1, residual 0
        let a = vec![vec![0.4], vec![1.7], vec![1.0]];
        let b = vec![0.4, 1.7, 1.0];
        let sol = solve_weights(&a, &b, &[], 1e-10).unwrap();
        assert!((sol.weights[0] - 1.0).abs() < 1e-14);
        assert!(sol.residual < 1e-14);
        assert!(sol.feasible);
    }

    #[test]
    fn identical_columns_with_pair() {
        let a = vec![vec![0.4, 0.4], vec![1.0, 1.0]];
        let b = vec![0.4, 1.0];
        let sol = solve_weights(&a, &b, &[(0, 1)], 1e-10).unwrap();
        assert!((sol.weights[0] - 0.5).abs() < 1e-13);
        assert!((sol.weights[1] - 0.5).abs() < 1e-13);
        assert!(sol.residual < 1e-13);
    }

    #[test]
    fn two_by_two_hand_solved() {
        // [[1,0],[1,1]] w = [0.3, 1] → w = [0.3, 0.7]
        let a = vec![vec![1.0, 0.0], vec![1.0, 1.0]];
        let b = vec![0.3, 1.0];
        let sol = solve_weights(&a, &b, &[], 1e-10).unwrap();
        assert!((sol.weights[0] - 0.3).abs() < 1e-13);
        assert!((sol.weights[1] - 0.7).abs() < 1e-13);
        assert!(sol.residual < 1e-13);
    }

    #[test]
    fn infeasible_still_satisfies_constraints() {
        // b far outside the hull of the columns
        let a = vec![vec![0.1, 0.2, 0.15], vec![1.0, 1.0, 1.0]];
        let b = vec![5.0, 1.0];
        let sol = solve_weights(&a, &b, &[], 1e-10).unwrap();
        assert!(!sol.feasible);
        assert!(sol.residual > 1.0);
        let sum: f64 = sol.weights.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!(sol.weights.iter().all(|&w| w >= 0.0));
    }

    #[test]
    fn pair_weights_stay_equal_even_when_infeasible() {
        let a = vec![vec![0.9, 0.1, 0.5], vec![2.0, 0.3, 0.1], vec![1.0, 1.0, 1.0]];
        let b = vec![-3.0, 4.0, 1.0];
        let sol = solve_weights(&a, &b, &[(0, 2)], 1e-10).unwrap();
        assert!((sol.weights[0] - sol.weights[2]).abs() < 1e-14);
        let sum: f64 = sol.weights.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_errors() {
        let a = vec![vec![1.0, 2.0], vec![1.0]];
        assert!(solve_weights(&a, &[1.0, 1.0], &[], 1e-10).is_err());
        let a = vec![vec![1.0, 2.0]];
        assert!(solve_weights(&a, &[1.0, 1.0], &[], 1e-10).is_err());
        let a = vec![vec![1.0, 2.0], vec![1.0, 1.0]];
        assert!(solve_weights(&a, &[1.0, 1.0], &[(0, 0)], 1e-10).is_err());
        assert!(solve_weights(&a, &[1.0, 1.0], &[(0, 2)], 1e-10).is_err());
    }

    #[test]
    fn deterministic_resolution() {
        let a = vec![
            vec![0.3, 0.9, 0.1, 0.55, 0.7],
            vec![0.2, 0.8, 0.05, 0.3, 0.6],
            vec![1.0, 1.0, 1.0, 1.0, 1.0],
        ];
        let b = vec![0.5, 0.4, 1.0];
        let first = solve_weights(&a, &b, &[(1, 3)], 1e-10).unwrap();
        for _ in 0..5 {
            let again = solve_weights(&a, &b, &[(1, 3)], 1e-10).unwrap();
            assert_eq!(first.weights, again.weights);
            assert_eq!(first.residual, again.residual);
        }
    }
}
