//! Non-negative rank bounds and monomial submatrix certificates.
//!
//! Computing the non-negative rank exactly is NP-hard, so this module reports
//! a certified interval: the lower end is the larger of the ordinary rank
//! and a maximum fooling set, the upper end is the smallest inner dimension
//! at which an exact non-negative factorization was found.

mod clique;
mod combinatorial;
mod nmf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{numeric_rank, DenseMatrix};

pub use combinatorial::{
    fooling_set_bound, fooling_set_bound_capped, monomial_submatrix, monomial_submatrix_capped,
};
pub use nmf::nmf_search;

/// Master seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_0B5E_55ED;

/// Size limit for the exact combinatorial searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CombinatorialCap {
    pub max_rows: usize,
    pub max_cols: usize,
}

impl Default for CombinatorialCap {
    fn default() -> Self {
        Self { max_rows: 12, max_cols: 12 }
    }
}

impl CombinatorialCap {
    pub fn admits(&self, m: &DenseMatrix) -> bool {
        m.rows() <= self.max_rows && m.cols() <= self.max_cols
    }

    pub(crate) fn check(&self, m: &DenseMatrix, what: &str) -> Result<()> {
        if self.admits(m) {
            Ok(())
        } else {
            Err(Error::Capability(format!(
                "{what} on a {}x{} matrix exceeds the {}x{} cap",
                m.rows(),
                m.cols(),
                self.max_rows,
                self.max_cols
            )))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NnRankConfig {
    pub restarts: usize,
    pub iters: usize,
    /// Relative Frobenius tolerance for accepting a factorization.
    pub nmf_tol: f64,
    pub seed: u64,
    /// Entries at or below this value count as zero in support patterns.
    pub entry_tol: f64,
    /// Tolerance handed to [`numeric_rank`]; zero selects the default.
    pub rank_tol: f64,
    pub cap: CombinatorialCap,
}

impl Default for NnRankConfig {
    fn default() -> Self {
        Self {
            restarts: 50,
            iters: 2000,
            nmf_tol: 1e-9,
            seed: DEFAULT_SEED,
            entry_tol: 0.0,
            rank_tol: 0.0,
            cap: CombinatorialCap::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LowerBoundMethod {
    OrdinaryRank,
    FoolingSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NnRankBounds {
    pub lower: usize,
    pub lower_method: LowerBoundMethod,
    pub upper: Option<usize>,
    pub factor_p: Option<DenseMatrix>,
    pub factor_q: Option<DenseMatrix>,
    /// Frobenius norm of `M - P Q` for the reported factors (0 without factors).
    pub residual_norm: f64,
}

impl NnRankBounds {
    /// True when the bounds determine the non-negative rank exactly.
    pub fn exact(&self) -> Option<usize> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }
}

/// A `k x k` monomial submatrix: `M[rows[t], cols[t]]` are its positive
/// entries and every other entry of the selection is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MonomialCertificate {
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub order: usize,
}

impl MonomialCertificate {
    /// Re-checks the certificate against `m`.
    pub fn validate(&self, m: &DenseMatrix, tol: f64) -> bool {
        if self.row_indices.len() != self.order || self.col_indices.len() != self.order {
            return false;
        }
        let in_range =
            self.row_indices.iter().all(|&i| i < m.rows()) && self.col_indices.iter().all(|&j| j < m.cols());
        if !in_range {
            return false;
        }
        for (a, &i) in self.row_indices.iter().enumerate() {
            for (b, &j) in self.col_indices.iter().enumerate() {
                let positive = m[(i, j)] > tol;
                if positive != (a == b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Boolean support of a non-negative matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPattern {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl SupportPattern {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        self.bits.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }
}

/// `true` where `M[i, j] > tol`. Entries below `-tol` are rejected.
pub fn support_pattern(m: &DenseMatrix, tol: f64) -> Result<SupportPattern> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::input("support tolerance must be non-negative"));
    }
    if let Some(min) = m.min_entry() {
        if min < -tol {
            return Err(Error::input(format!("matrix is not non-negative (entry {min} below -{tol})")));
        }
    }
    Ok(SupportPattern {
        rows: m.rows(),
        cols: m.cols(),
        bits: m.as_slice().iter().map(|&v| v > tol).collect(),
    })
}

/// Certified interval for the non-negative rank of `m`.
pub fn nonneg_rank_bounds(m: &DenseMatrix, config: &NnRankConfig) -> Result<NnRankBounds> {
    let pattern = support_pattern(m, config.entry_tol)?;
    let rank = numeric_rank(m, config.rank_tol)?;

    if pattern.count() == 0 {
        return Ok(NnRankBounds {
            lower: 0,
            lower_method: LowerBoundMethod::OrdinaryRank,
            upper: Some(0),
            factor_p: Some(DenseMatrix::zeros(m.rows(), 0)),
            factor_q: Some(DenseMatrix::zeros(0, m.cols())),
            residual_norm: m.frobenius_norm(),
        });
    }

    let (lower, lower_method) = if config.cap.admits(m) {
        let fooling = fooling_set_bound_capped(m, config.entry_tol, config.cap)?;
        if fooling > rank {
            (fooling, LowerBoundMethod::FoolingSet)
        } else {
            (rank, LowerBoundMethod::OrdinaryRank)
        }
    } else {
        (rank, LowerBoundMethod::OrdinaryRank)
    };

    let max_r = m.rows().min(m.cols());
    for r in lower.max(1)..=max_r {
        if let Some((p, q)) = nmf_search(m, r, config.restarts, config.iters, config.nmf_tol, config.seed)? {
            let residual_norm = m.sub(&p.matmul(&q)?)?.frobenius_norm();
            return Ok(NnRankBounds {
                lower,
                lower_method,
                upper: Some(r),
                factor_p: Some(p),
                factor_q: Some(q),
                residual_norm,
            });
        }
    }
    Ok(NnRankBounds { lower, lower_method, upper: None, factor_p: None, factor_q: None, residual_norm: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    pub(crate) fn leslie_hankel() -> DenseMatrix {
        DenseMatrix::from_rows(&[
            [0.0, 0.0, 1.0, 1.0],
            [0.0, 1.0, 1.0, 0.0],
            [1.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 1.0],
        ])
        .unwrap()
    }

    #[test]
    fn support_of_identity_and_zero() {
        let p = support_pattern(&DenseMatrix::identity(2), 0.0).unwrap();
        assert_eq!(p.to_rows(), vec![vec![true, false], vec![false, true]]);
        let z = support_pattern(&DenseMatrix::zeros(2, 3), 0.0).unwrap();
        assert_eq!(z.count(), 0);
    }

    #[test]
    fn support_of_leslie_hankel_is_the_matrix() {
        let h = leslie_hankel();
        let p = support_pattern(&h, 0.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p.get(i, j), h[(i, j)] == 1.0);
            }
        }
    }

    #[test]
    fn support_rejects_negative_entries() {
        let m = DenseMatrix::from_rows(&[[1.0, -0.5]]).unwrap();
        assert!(matches!(support_pattern(&m, 0.1), Err(Error::Input(_))));
        assert!(support_pattern(&m, 0.5).is_ok());
    }

    #[test]
    fn leslie_hankel_bounds_are_pinned_at_four() {
        let b = nonneg_rank_bounds(&leslie_hankel(), &NnRankConfig::default()).unwrap();
        assert_eq!(b.lower, 4);
        assert_eq!(b.lower_method, LowerBoundMethod::FoolingSet);
        assert_eq!(b.upper, Some(4));
        assert!(b.residual_norm <= 1e-9);
    }

    #[test]
    fn zero_matrix_has_zero_bounds() {
        let b = nonneg_rank_bounds(&DenseMatrix::zeros(3, 3), &NnRankConfig::default()).unwrap();
        assert_eq!((b.lower, b.upper), (0, Some(0)));
    }

    #[test]
    fn rank_two_products_are_pinned_at_two() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let p = DenseMatrix::from_fn(5, 2, |_, _| rng.gen_range(0.0..1.0));
            let q = DenseMatrix::from_fn(2, 5, |_, _| rng.gen_range(0.0..1.0));
            let m = p.matmul(&q).unwrap();
            assert_eq!(numeric_rank(&m, 0.0).unwrap(), 2);
            let b = nonneg_rank_bounds(&m, &NnRankConfig::default()).unwrap();
            assert_eq!((b.lower, b.upper), (2, Some(2)));
            let fp = b.factor_p.unwrap();
            let fq = b.factor_q.unwrap();
            assert!(fp.is_nonnegative(0.0) && fq.is_nonnegative(0.0));
        }
    }

    #[test]
    fn certificate_validation_rejects_tampering() {
        let m = DenseMatrix::identity(3);
        let good = MonomialCertificate { row_indices: vec![0, 1], col_indices: vec![0, 1], order: 2 };
        assert!(good.validate(&m, 0.0));
        let bad = MonomialCertificate { row_indices: vec![0, 1], col_indices: vec![1, 0], order: 2 };
        assert!(!bad.validate(&m, 0.0));
    }
}
