use super::{check_system, norm2, residual, DenseMatrix, SolveResult};
use crate::error::Result;

const PIVOT_EPS: f64 = 1e-11;

/// Decides feasibility of `{A g = b, g >= 0}` (plus `sum(g) = 1` when
/// `sum_to_one`) with a phase-one simplex on a dense tableau.
///
/// One artificial variable per equality row; the sum of artificials is
/// minimised with Bland's smallest-index rule. The returned residual is the
/// Euclidean norm of the violated equalities at the final basic solution, so
/// the system is feasible at tolerance `tol` iff `residual_norm <= tol`.
/// `converged = false` signals that the pivot cap was reached.
pub fn affine_nonneg_feasible(a: &DenseMatrix, b: &[f64], sum_to_one: bool) -> Result<SolveResult> {
    check_system(a, b)?;
    let n = a.cols();
    let mut rows: Vec<Vec<f64>> = a.to_rows();
    let mut rhs = b.to_vec();
    if sum_to_one {
        rows.push(vec![1.0; n]);
        rhs.push(1.0);
    }
    let m = rows.len();

    // Equilibrate rows so that pivot thresholds are scale free.
    for (row, r) in rows.iter_mut().zip(rhs.iter_mut()) {
        let s = row.iter().chain(std::iter::once(&*r)).fold(0.0_f64, |acc, v| acc.max(v.abs()));
        if s > 0.0 {
            row.iter_mut().for_each(|v| *v /= s);
            *r /= s;
        }
        if *r < 0.0 {
            row.iter_mut().for_each(|v| *v = -*v);
            *r = -*r;
        }
    }

    // Tableau columns: n structural, m artificial, 1 rhs.
    let width = n + m + 1;
    let mut tab: Vec<Vec<f64>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut t = vec![0.0; width];
            t[..n].copy_from_slice(row);
            t[n + i] = 1.0;
            t[width - 1] = rhs[i];
            t
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs for minimising the sum of artificials.
    let mut cost = vec![0.0; width];
    for t in &tab {
        for j in 0..n {
            cost[j] -= t[j];
        }
        cost[width - 1] -= t[width - 1];
    }

    let max_pivots = 50 * (n + m).max(1);
    let mut converged = false;
    for _ in 0..max_pivots {
        let Some(enter) = (0..n + m).find(|&j| cost[j] < -PIVOT_EPS) else {
            converged = true;
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for (i, t) in tab.iter().enumerate() {
            if t[enter] > PIVOT_EPS {
                let ratio = t[width - 1] / t[enter];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - PIVOT_EPS || (ratio <= lr + PIVOT_EPS && basis[i] < basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        // Phase one is bounded below by zero, so an unbounded column cannot
        // occur; treat it as a numerical breakdown.
        let Some((pr, _)) = leave else { break };

        let p = tab[pr][enter];
        tab[pr].iter_mut().for_each(|v| *v /= p);
        let pivot_row = tab[pr].clone();
        for (i, t) in tab.iter_mut().enumerate() {
            if i != pr && t[enter] != 0.0 {
                let f = t[enter];
                for (v, pv) in t.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        let f = cost[enter];
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
        basis[pr] = enter;
    }

    let mut g = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            g[bv] = tab[i][width - 1].max(0.0);
        }
    }
    let mut r = residual(a, &g, b);
    if sum_to_one {
        r.push(g.iter().sum::<f64>() - 1.0);
    }
    let res = norm2(&r);
    Ok(SolveResult { coefficients: g, residual_norm: res, converged })
}
