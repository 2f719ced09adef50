use super::DenseMatrix;
use crate::error::{Error, Result};

/// Magnitudes of the diagonal of `R` from a Householder QR factorization with
/// column pivoting (largest remaining column norm first).
pub fn pivoted_qr_diagonal(m: &DenseMatrix) -> Vec<f64> {
    let (rows, cols) = m.shape();
    let steps = rows.min(cols);
    // Work column-major for cheap column access.
    let mut a: Vec<Vec<f64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut diag = Vec::with_capacity(steps);

    for k in 0..steps {
        let (piv, _) = (k..cols)
            .map(|j| (j, a[j][k..].iter().map(|v| v * v).sum::<f64>()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        a.swap(k, piv);

        let x = &a[k][k..];
        let alpha = super::norm2(x);
        if alpha == 0.0 {
            // Every remaining column is zero below row k.
            diag.extend(std::iter::repeat_n(0.0, steps - k));
            break;
        }
        let sign = if x[0] >= 0.0 { 1.0 } else { -1.0 };
        let mut v: Vec<f64> = x.to_vec();
        v[0] += sign * alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        diag.push(alpha);

        if vnorm2 > 0.0 {
            for col in a.iter_mut().skip(k + 1) {
                let tail = &mut col[k..];
                let s: f64 = v.iter().zip(tail.iter()).map(|(p, q)| p * q).sum();
                let f = 2.0 * s / vnorm2;
                for (t, vi) in tail.iter_mut().zip(&v) {
                    *t -= f * vi;
                }
            }
        }
    }
    diag
}

/// Number of numerically independent columns of `m`.
///
/// A pivot counts when its magnitude exceeds `tol` times the largest pivot;
/// `tol = 0` selects the default relative threshold `max(rows, cols) * eps`.
pub fn numeric_rank(m: &DenseMatrix, tol: f64) -> Result<usize> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::input("rank tolerance must be a finite non-negative number"));
    }
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::input("matrix entries must be finite"));
    }
    if m.is_empty() {
        return Ok(0);
    }
    let rel = if tol == 0.0 { m.rows().max(m.cols()) as f64 * f64::EPSILON } else { tol };
    let diag = pivoted_qr_diagonal(m);
    let largest = diag.iter().fold(0.0_f64, |a, &b| a.max(b));
    if largest == 0.0 {
        return Ok(0);
    }
    Ok(diag.iter().filter(|&&d| d > rel * largest).count())
}
