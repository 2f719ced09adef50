use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{nnls, DenseMatrix};

const MU_EPS: f64 = 1e-300;
const CHECK_EVERY: usize = 50;
const POLISH_SWEEPS: usize = 200;

/// Searches for non-negative `P (rows x r)`, `Q (r x cols)` with
/// `||M - P Q||_F <= tol * max(1, ||M||_F)`.
///
/// Exact constructions are tried first: zero factors, the trivial
/// factorization when `r >= min(rows, cols)`, and factorizations through the
/// extreme rays of the column (or row) cone when there are at most `r` of
/// them. Then `restarts` seeded random starts run multiplicative updates
/// followed by alternating NNLS refinement. Restarts run in parallel; the
/// lowest-index successful restart wins, so the result matches a
/// sequential scan.
pub fn nmf_search(
    m: &DenseMatrix,
    r: usize,
    restarts: usize,
    iters: usize,
    tol: f64,
    seed: u64,
) -> Result<Option<(DenseMatrix, DenseMatrix)>> {
    if r == 0 {
        return Err(Error::input("factorization rank must be at least 1"));
    }
    if !m.is_nonnegative(0.0) {
        return Err(Error::input("matrix is not non-negative"));
    }
    let (rows, cols) = m.shape();
    let target = tol * m.frobenius_norm().max(1.0);
    let accept = |p: &DenseMatrix, q: &DenseMatrix| -> bool { residual(m, p, q) <= target };

    if m.frobenius_norm() <= target {
        return Ok(Some((DenseMatrix::zeros(rows, r), DenseMatrix::zeros(r, cols))));
    }
    if r >= rows.min(cols) {
        let (p, q) = if cols <= rows {
            (pad_cols(m, r), pad_rows(&DenseMatrix::identity(cols), r))
        } else {
            (pad_cols(&DenseMatrix::identity(rows), r), pad_rows(m, r))
        };
        return Ok(Some((p, q)));
    }

    if let Some((p, q)) = through_extreme_columns(m, r)? {
        if accept(&p, &q) {
            return Ok(Some((p, q)));
        }
    }
    if let Some((pt, qt)) = through_extreme_columns(&m.transpose(), r)? {
        let (p, q) = (qt.transpose(), pt.transpose());
        if accept(&p, &q) {
            return Ok(Some((p, q)));
        }
    }

    let found = (0..restarts).into_par_iter().find_map_first(|k| {
        let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(seed, k as u64));
        let (p, q) = run_restart(m, r, iters, target, &mut rng);
        accept(&p, &q).then_some((p, q))
    });
    Ok(found)
}

fn restart_seed(master: u64, k: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = master.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn residual(m: &DenseMatrix, p: &DenseMatrix, q: &DenseMatrix) -> f64 {
    let pq = p.matmul(q).expect("factor shapes");
    m.sub(&pq).expect("factor shapes").frobenius_norm()
}

fn pad_cols(m: &DenseMatrix, r: usize) -> DenseMatrix {
    DenseMatrix::from_fn(m.rows(), r, |i, j| if j < m.cols() { m[(i, j)] } else { 0.0 })
}

fn pad_rows(m: &DenseMatrix, r: usize) -> DenseMatrix {
    DenseMatrix::from_fn(r, m.cols(), |i, j| if i < m.rows() { m[(i, j)] } else { 0.0 })
}

/// Factorization through a minimal generating set of the cone spanned by
/// the columns of `m`, if it has at most `r` elements.
fn through_extreme_columns(m: &DenseMatrix, r: usize) -> Result<Option<(DenseMatrix, DenseMatrix)>> {
    let mut keep: Vec<usize> = (0..m.cols()).filter(|&j| m.column(j).iter().any(|&v| v > 0.0)).collect();
    let mut j = 0;
    while j < keep.len() {
        let col = m.column(keep[j]);
        let others: Vec<usize> = keep.iter().copied().filter(|&c| c != keep[j]).collect();
        if !others.is_empty() {
            let sol = nnls(&m.select_columns(&others), &col, 0.0)?;
            let scale = crate::linalg::norm2(&col).max(1.0);
            if sol.residual_norm <= 1e-11 * scale {
                keep.remove(j);
                continue;
            }
        }
        j += 1;
    }
    if keep.len() > r {
        return Ok(None);
    }
    let basis = m.select_columns(&keep);
    let mut q = DenseMatrix::zeros(r, m.cols());
    for c in 0..m.cols() {
        let sol = nnls(&basis, &m.column(c), 0.0)?;
        for (i, &v) in sol.coefficients.iter().enumerate() {
            q[(i, c)] = v;
        }
    }
    Ok(Some((pad_cols(&basis, r), q)))
}

fn run_restart(
    m: &DenseMatrix,
    r: usize,
    iters: usize,
    target: f64,
    rng: &mut ChaCha8Rng,
) -> (DenseMatrix, DenseMatrix) {
    let (rows, cols) = m.shape();
    let mean = m.as_slice().iter().sum::<f64>() / (rows * cols) as f64;
    let scale = (mean / r as f64).sqrt().max(1e-3);
    let mut p = DenseMatrix::from_fn(rows, r, |_, _| scale * rng.gen_range(0.05..1.0));
    let mut q = DenseMatrix::from_fn(r, cols, |_, _| scale * rng.gen_range(0.05..1.0));

    let mt = m.transpose();
    let mut last = f64::INFINITY;
    for it in 0..iters {
        multiplicative_step(m, &mut p, &mut q);
        if (it + 1) % CHECK_EVERY == 0 {
            let res = residual(m, &p, &q);
            if res <= target {
                return (p, q);
            }
            // Multiplicative updates stall near exact solutions; hand over
            // to the alternating NNLS refinement.
            if res > last * (1.0 - 1e-4) {
                break;
            }
            last = res;
        }
    }
    polish(m, &mt, &mut p, &mut q, target);
    (p, q)
}

fn multiplicative_step(m: &DenseMatrix, p: &mut DenseMatrix, q: &mut DenseMatrix) {
    // Q <- Q .* (P^T M) ./ (P^T P Q)
    let pt = p.transpose();
    let num = pt.matmul(m).expect("shapes");
    let den = pt.matmul(p).and_then(|g| g.matmul(q)).expect("shapes");
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            q[(i, j)] *= num[(i, j)] / (den[(i, j)] + MU_EPS);
        }
    }
    // P <- P .* (M Q^T) ./ (P Q Q^T)
    let qt = q.transpose();
    let num = m.matmul(&qt).expect("shapes");
    let den = p.matmul(q).and_then(|pq| pq.matmul(&qt)).expect("shapes");
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            p[(i, j)] *= num[(i, j)] / (den[(i, j)] + MU_EPS);
        }
    }
}

/// Alternating exact NNLS solves for `Q` (columns) and `P` (rows).
fn polish(m: &DenseMatrix, mt: &DenseMatrix, p: &mut DenseMatrix, q: &mut DenseMatrix, target: f64) {
    let mut last = residual(m, p, q);
    let mut stalled = 0;
    for _ in 0..POLISH_SWEEPS {
        for c in 0..m.cols() {
            if let Ok(sol) = nnls(p, &m.column(c), 0.0) {
                for (i, &v) in sol.coefficients.iter().enumerate() {
                    q[(i, c)] = v;
                }
            }
        }
        let qt = q.transpose();
        for rrow in 0..m.rows() {
            if let Ok(sol) = nnls(&qt, &mt.column(rrow), 0.0) {
                for (j, &v) in sol.coefficients.iter().enumerate() {
                    p[(rrow, j)] = v;
                }
            }
        }
        let res = residual(m, p, q);
        if res <= target {
            return;
        }
        if res > last * (1.0 - 1e-3) {
            stalled += 1;
            if stalled >= 10 {
                return;
            }
        } else {
            stalled = 0;
        }
        last = res;
    }
}
