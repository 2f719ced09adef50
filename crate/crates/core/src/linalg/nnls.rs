use nalgebra::DVector;

use super::lstsq::min_norm_solve;
use super::{check_system, norm2, residual, DenseMatrix, SolveResult};
use crate::error::Result;

/// Non-negative least squares, `min ||A g - b||` subject to `g >= 0`.
///
/// Lawson-Hanson active-set iteration with an outer iteration cap of
/// `10 * cols`. When the cap is hit the best iterate is returned with
/// `converged = false`.
pub fn nnls(a: &DenseMatrix, b: &[f64], tol: f64) -> Result<SolveResult> {
    check_system(a, b)?;
    let n = a.cols();
    let mut x = vec![0.0; n];
    if n == 0 {
        return Ok(SolveResult { coefficients: x, residual_norm: norm2(b), converged: true });
    }

    let at = a.transpose();
    let kkt_tol = tol.max(1e-12) * (a.frobenius_norm() * norm2(b)).max(1.0);
    let max_outer = 10 * n;
    let mut passive = vec![false; n];
    let mut converged = false;

    let gradient = |x: &[f64]| -> Vec<f64> {
        let r: Vec<f64> = residual(a, x, b).iter().map(|v| -v).collect();
        at.mul_vec(&r).expect("dimensions checked")
    };

    'outer: for _ in 0..max_outer {
        let w = gradient(&x);
        let candidate = (0..n)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| w[i].total_cmp(&w[j]))
            .filter(|&j| w[j] > kkt_tol);
        let Some(enter) = candidate else {
            converged = true;
            break;
        };
        passive[enter] = true;

        for _ in 0..=n {
            let cols: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
            let sub = a.select_columns(&cols).to_nalgebra();
            let z_p = min_norm_solve(&sub, &DVector::from_column_slice(b));
            let mut z = vec![0.0; n];
            for (k, &j) in cols.iter().enumerate() {
                z[j] = z_p[k];
            }

            if cols.iter().all(|&j| z[j] > 0.0) {
                x = z;
                continue 'outer;
            }

            // Step towards z until the first passive coordinate hits zero.
            let alpha = cols
                .iter()
                .filter(|&&j| z[j] <= 0.0)
                .map(|&j| x[j] / (x[j] - z[j]))
                .fold(f64::INFINITY, f64::min);
            let alpha = if alpha.is_finite() { alpha.clamp(0.0, 1.0) } else { 0.0 };
            for j in 0..n {
                x[j] += alpha * (z[j] - x[j]);
            }
            for &j in &cols {
                if x[j] <= f64::EPSILON {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                continue 'outer;
            }
        }
    }

    for v in x.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let res = norm2(&residual(a, &x, b));
    Ok(SolveResult { coefficients: x, residual_norm: res, converged })
}
