use super::clique::Graph;
use super::{support_pattern, CombinatorialCap, MonomialCertificate, SupportPattern};
use crate::error::Result;
use crate::linalg::DenseMatrix;

fn positive_positions(s: &SupportPattern) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if s.get(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn compatibility_graph(
    positions: &[(usize, usize)],
    compatible: impl Fn((usize, usize), (usize, usize)) -> bool,
) -> Graph {
    let mut g = Graph::new(positions.len());
    for (a, &p) in positions.iter().enumerate() {
        for (b, &q) in positions.iter().enumerate().skip(a + 1) {
            if p.0 != q.0 && p.1 != q.1 && compatible(p, q) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Size of a maximum fooling set of `m` (default 12x12 cap).
///
/// Positions `(i, j)` and `(k, l)` with positive entries fool each other when
/// `M[i, l]` or `M[k, j]` is zero; no rank-one non-negative term can then
/// cover both, so the size of a largest pairwise fooling family bounds the
/// non-negative rank from below. Entries at or below `tol` count as zero.
pub fn fooling_set_bound(m: &DenseMatrix, tol: f64) -> Result<usize> {
    fooling_set_bound_capped(m, tol, CombinatorialCap::default())
}

pub fn fooling_set_bound_capped(m: &DenseMatrix, tol: f64, cap: CombinatorialCap) -> Result<usize> {
    let s = support_pattern(m, tol)?;
    cap.check(m, "fooling set search")?;
    let positions = positive_positions(&s);
    let graph = compatibility_graph(&positions, |(i, j), (k, l)| !s.get(i, l) || !s.get(k, j));
    Ok(graph.max_clique(None).len())
}

/// Searches for a `k x k` monomial submatrix of `m` (default 12x12 cap).
///
/// When `k` equals the number of rows (or columns) the search reduces to
/// finding, for every row, a column whose support is exactly that row, and
/// runs without a size cap.
pub fn monomial_submatrix(m: &DenseMatrix, k: usize, tol: f64) -> Result<Option<MonomialCertificate>> {
    monomial_submatrix_capped(m, k, tol, CombinatorialCap::default())
}

pub fn monomial_submatrix_capped(
    m: &DenseMatrix,
    k: usize,
    tol: f64,
    cap: CombinatorialCap,
) -> Result<Option<MonomialCertificate>> {
    let s = support_pattern(m, tol)?;
    if k == 0 {
        return Ok(Some(MonomialCertificate { row_indices: vec![], col_indices: vec![], order: 0 }));
    }
    if k > s.rows().min(s.cols()) {
        return Ok(None);
    }
    if k == s.rows() {
        return Ok(full_rows(&s));
    }
    if k == s.cols() {
        let t = support_pattern(&m.transpose(), tol)?;
        return Ok(full_rows(&t).map(|c| MonomialCertificate {
            row_indices: c.col_indices,
            col_indices: c.row_indices,
            order: c.order,
        }));
    }

    cap.check(m, "monomial submatrix search")?;
    let positions = positive_positions(&s);
    let graph = compatibility_graph(&positions, |(i, j), (k, l)| !s.get(i, l) && !s.get(k, j));
    let clique = graph.max_clique(Some(k));
    if clique.len() < k {
        return Ok(None);
    }
    let mut chosen: Vec<(usize, usize)> = clique.iter().take(k).map(|&v| positions[v]).collect();
    chosen.sort_unstable();
    Ok(Some(MonomialCertificate {
        row_indices: chosen.iter().map(|p| p.0).collect(),
        col_indices: chosen.iter().map(|p| p.1).collect(),
        order: k,
    }))
}

/// Every row selected: each row needs a column supported on that row alone.
fn full_rows(s: &SupportPattern) -> Option<MonomialCertificate> {
    let mut cols = Vec::with_capacity(s.rows());
    for i in 0..s.rows() {
        let j = (0..s.cols()).find(|&j| s.get(i, j) && (0..s.rows()).all(|r| r == i || !s.get(r, j)))?;
        cols.push(j);
    }
    Some(MonomialCertificate { row_indices: (0..s.rows()).collect(), col_indices: cols, order: s.rows() })
}
