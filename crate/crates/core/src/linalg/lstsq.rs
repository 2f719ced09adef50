use nalgebra::{DMatrix, DVector};

use super::{check_system, norm2, residual, DenseMatrix, SolveResult};
use crate::error::Result;

/// Minimum-norm least-squares solve via the SVD. Singular values at or below
/// `max(rows, cols) * eps * sigma_max` are treated as zero.
pub(crate) fn min_norm_solve(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    if a.ncols() == 0 {
        return DVector::zeros(0);
    }
    if a.nrows() == 0 {
        return DVector::zeros(a.ncols());
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let eps = a.nrows().max(a.ncols()) as f64 * f64::EPSILON * smax;
    svd.solve(b, eps).unwrap_or_else(|_| DVector::zeros(a.ncols()))
}

/// Unconstrained least squares, or least squares on the hyperplane
/// `sum(g) = 1` when `sum_to_one` is set. Returns the minimum-norm minimizer.
pub fn least_squares(a: &DenseMatrix, b: &[f64], sum_to_one: bool) -> Result<SolveResult> {
    check_system(a, b)?;
    let n = a.cols();
    let am = a.to_nalgebra();
    let bv = DVector::from_column_slice(b);

    let g: Vec<f64> = if !sum_to_one {
        min_norm_solve(&am, &bv).iter().copied().collect()
    } else if n == 0 {
        Vec::new()
    } else if n == 1 {
        vec![1.0]
    } else {
        // g = 1/n + Z z with Z an orthonormal basis of the complement of 1.
        // Z is taken from the Householder reflector mapping 1/sqrt(n) to e1.
        let c = 1.0 / (n as f64).sqrt();
        let mut v = DVector::from_element(n, c);
        v[0] -= 1.0;
        let vv = v.dot(&v);
        let reflector = DMatrix::<f64>::identity(n, n) - (&v * v.transpose()) * (2.0 / vv);
        let z = reflector.columns(1, n - 1).into_owned();
        let g0 = DVector::from_element(n, 1.0 / n as f64);
        let rhs = &bv - &am * &g0;
        let sol = min_norm_solve(&(&am * &z), &rhs);
        (g0 + z * sol).iter().copied().collect()
    };

    let mut r = residual(a, &g, b);
    if sum_to_one {
        r.push(g.iter().sum::<f64>() - 1.0);
    }
    Ok(SolveResult { residual_norm: norm2(&r), coefficients: g, converged: true })
}
