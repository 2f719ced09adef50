//! Trajectories, block-Hankel matrices and finite-horizon behaviors given as
//! hulls of generator columns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, affine_nonneg_feasible, least_squares, nnls, DenseMatrix};

/// Default relative membership tolerance.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-8;

/// A sampled signal `w = (u, y)`. Row `t` of `samples` is `w(t)`: the `m`
/// inputs followed by the `p` outputs.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    m: usize,
    p: usize,
    samples: DenseMatrix,
}

impl Trajectory {
    pub fn new(m: usize, p: usize, samples: DenseMatrix) -> Result<Self> {
        if m + p == 0 {
            return Err(Error::input("trajectory needs at least one signal"));
        }
        if samples.cols() != m + p {
            return Err(Error::input(format!(
                "samples have {} columns, expected m + p = {}",
                samples.cols(),
                m + p
            )));
        }
        if samples.rows() == 0 {
            return Err(Error::input("trajectory needs at least one sample"));
        }
        Ok(Self { m, p, samples })
    }

    /// Autonomous scalar trajectory (`m = 0`, `p = 1`).
    pub fn scalar(values: &[f64]) -> Result<Self> {
        Self::new(0, 1, DenseMatrix::column_vector(values)?)
    }

    /// Scalar input/output pair (`m = p = 1`).
    pub fn input_output(u: &[f64], y: &[f64]) -> Result<Self> {
        if u.len() != y.len() {
            return Err(Error::input("input and output lengths differ"));
        }
        let rows: Vec<[f64; 2]> = u.iter().zip(y).map(|(&a, &b)| [a, b]).collect();
        Self::new(1, 1, DenseMatrix::from_rows(&rows)?)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.m + self.p
    }

    pub fn len(&self) -> usize {
        self.samples.rows()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &DenseMatrix {
        &self.samples
    }

    pub fn sample(&self, t: usize) -> &[f64] {
        self.samples.row(t)
    }

    /// `T x m` input samples.
    pub fn inputs(&self) -> DenseMatrix {
        self.samples.select_columns(&(0..self.m).collect::<Vec<_>>())
    }

    /// `T x p` output samples.
    pub fn outputs(&self) -> DenseMatrix {
        self.samples.select_columns(&(self.m..self.q()).collect::<Vec<_>>())
    }

    /// All samples stacked into one vector `(w(0), w(1), ...)`.
    pub fn stacked(&self) -> Vec<f64> {
        self.samples.as_slice().to_vec()
    }

    /// `(σ^t w)`: drops the first `t` samples.
    pub fn shift(&self, t: usize) -> Result<Self> {
        if t >= self.len() {
            return Err(Error::input(format!("shift {t} leaves no samples of {}", self.len())));
        }
        self.window(t, self.len() - 1)
    }

    /// Samples `w(t1), ..., w(t2)` inclusive.
    pub fn restrict(&self, t1: usize, t2: usize) -> Result<Self> {
        if t1 > t2 || t2 >= self.len() {
            return Err(Error::input(format!(
                "restriction [{t1}, {t2}] is invalid for length {}",
                self.len()
            )));
        }
        self.window(t1, t2)
    }

    fn window(&self, t1: usize, t2: usize) -> Result<Self> {
        let rows: Vec<usize> = (t1..=t2).collect();
        Self::new(self.m, self.p, self.samples.select_rows(&rows))
    }
}

/// Depth-`depth` block-Hankel matrix of a `T x k` sample matrix: column `j` is
/// `(s(j), ..., s(j + depth - 1))` stacked. `k` may be zero.
pub fn hankel_of_samples(samples: &DenseMatrix, depth: usize) -> Result<DenseMatrix> {
    let t = samples.rows();
    if depth == 0 || depth > t {
        return Err(Error::input(format!("Hankel depth {depth} must lie in 1..={t}")));
    }
    let k = samples.cols();
    let cols = t - depth + 1;
    Ok(DenseMatrix::from_fn(k * depth, cols, |r, j| samples[(j + r / k, r % k)]))
}

/// Depth-`L` block-Hankel matrix of a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelMatrix {
    depth: usize,
    q: usize,
    entries: DenseMatrix,
}

impl HankelMatrix {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_cols(&self) -> usize {
        self.entries.cols()
    }

    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> DenseMatrix {
        self.entries
    }
}

pub fn build_hankel(w: &Trajectory, depth: usize) -> Result<HankelMatrix> {
    let entries = hankel_of_samples(w.samples(), depth)?;
    Ok(HankelMatrix { depth, q: w.q(), entries })
}

/// Kind of hull a behavior takes of its generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HullType {
    /// Linear span.
    #[serde(rename = "linear")]
    Linear,
    /// Affine hull.
    #[serde(rename = "affine")]
    Affine,
    /// Convex conical hull.
    #[serde(rename = "ccone")]
    ConvexCone,
    /// Convex hull.
    #[serde(rename = "conv")]
    Convex,
}

impl HullType {
    pub const ALL: [HullType; 4] =
        [HullType::Linear, HullType::Affine, HullType::ConvexCone, HullType::Convex];

    pub fn as_str(self) -> &'static str {
        match self {
            HullType::Linear => "linear",
            HullType::Affine => "affine",
            HullType::ConvexCone => "ccone",
            HullType::Convex => "conv",
        }
    }
}

impl fmt::Display for HullType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HullType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "span" => Ok(HullType::Linear),
            "affine" | "aff" => Ok(HullType::Affine),
            "ccone" | "cone" | "conical" => Ok(HullType::ConvexCone),
            "conv" | "convex" => Ok(HullType::Convex),
            other => Err(Error::Parse(format!("unknown hull type `{other}`"))),
        }
    }
}

/// Evidence returned by a membership query.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MembershipCertificate {
    pub feasible: bool,
    pub coefficients: Option<Vec<f64>>,
    pub residual_norm: f64,
    /// Absolute threshold the residual was compared against.
    pub tol_used: f64,
}

/// Horizon-`L` behavior: the `hull` of the columns of `generators`
/// (`qL x N`, `N >= 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteBehavior {
    horizon: usize,
    q: usize,
    generators: DenseMatrix,
    hull: HullType,
}

impl FiniteBehavior {
    pub fn new(horizon: usize, q: usize, generators: DenseMatrix, hull: HullType) -> Result<Self> {
        if horizon == 0 || q == 0 {
            return Err(Error::input("behavior needs L >= 1 and q >= 1"));
        }
        if generators.rows() != q * horizon {
            return Err(Error::input(format!(
                "generators have {} rows, expected q * L = {}",
                generators.rows(),
                q * horizon
            )));
        }
        if generators.cols() == 0 {
            return Err(Error::input("behavior needs at least one generator"));
        }
        Ok(Self { horizon, q, generators, hull })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.q * self.horizon
    }

    pub fn generators(&self) -> &DenseMatrix {
        &self.generators
    }

    pub fn hull(&self) -> HullType {
        self.hull
    }

    pub fn with_hull(&self, hull: HullType) -> Self {
        Self { hull, ..self.clone() }
    }

    /// Membership of a stacked `qL` vector. Feasible iff the best residual
    /// is at most `tol * max(1, ||w||)`.
    pub fn membership(&self, w: &[f64], tol: f64) -> Result<MembershipCertificate> {
        if w.len() != self.dim() {
            return Err(Error::input(format!(
                "vector of length {} does not match behavior dimension {}",
                w.len(),
                self.dim()
            )));
        }
        if w.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("vector entries must be finite"));
        }
        let g = &self.generators;
        let sol = match self.hull {
            HullType::Linear => least_squares(g, w, false)?,
            HullType::Affine => least_squares(g, w, true)?,
            HullType::ConvexCone => nnls(g, w, tol.min(1e-10))?,
            HullType::Convex => affine_nonneg_feasible(g, w, true)?,
        };
        let tol_used = tol * linalg::norm2(w).max(1.0);
        let feasible = sol.residual_norm <= tol_used;
        Ok(MembershipCertificate {
            feasible,
            coefficients: Some(sol.coefficients),
            residual_norm: sol.residual_norm,
            tol_used,
        })
    }

    pub fn contains(&self, w: &[f64], tol: f64) -> Result<bool> {
        Ok(self.membership(w, tol)?.feasible)
    }

    /// Restriction to the time window `[t1, t2]`: the same hull of the
    /// corresponding block rows of the generators.
    pub fn restrict(&self, t1: usize, t2: usize) -> Result<Self> {
        if t1 > t2 || t2 >= self.horizon {
            return Err(Error::input(format!(
                "restriction [{t1}, {t2}] is invalid for horizon {}",
                self.horizon
            )));
        }
        let rows: Vec<usize> = (t1 * self.q..(t2 + 1) * self.q).collect();
        Self::new(t2 - t1 + 1, self.q, self.generators.select_rows(&rows), self.hull)
    }
}

pub fn behavior_from_hankel(h: &HankelMatrix, hull: HullType) -> FiniteBehavior {
    FiniteBehavior { horizon: h.depth, q: h.q, generators: h.entries.clone(), hull }
}

/// Whether `inner ⊆ outer`.
///
/// Each hull is described by a finite set of points that must lie in
/// `outer`, plus (for unbounded hulls tested against a bounded one) the
/// requirement that the unbounded directions vanish:
///
/// * into `linear`: every generator;
/// * into `affine`: every generator, plus the origin when `inner` is a cone
///   or subspace;
/// * into `ccone`: generators of conv/ccone; `±` directions of a subspace
///   or of an affine hull's differences;
/// * into `conv`: generators of a conv hull; other hulls must degenerate to
///   a single point.
pub fn behavior_included(inner: &FiniteBehavior, outer: &FiniteBehavior, tol: f64) -> Result<bool> {
    if inner.dim() != outer.dim() {
        return Err(Error::input(format!(
            "behaviors live in different spaces ({} vs {})",
            inner.dim(),
            outer.dim()
        )));
    }
    let gens: Vec<Vec<f64>> = (0..inner.generators.cols()).map(|j| inner.generators.column(j)).collect();
    let dim = inner.dim();
    let zero = vec![0.0; dim];
    let is_zero = |v: &[f64]| linalg::norm2(v) <= tol;
    let member = |v: &[f64]| outer.contains(v, tol);
    let all_members = |vs: &mut dyn Iterator<Item = Vec<f64>>| -> Result<bool> {
        for v in vs {
            if !member(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let diffs =
        || gens.iter().skip(1).map(|g| g.iter().zip(&gens[0]).map(|(a, b)| a - b).collect::<Vec<_>>());

    use HullType::*;
    match (outer.hull, inner.hull) {
        (Linear, _) => all_members(&mut gens.iter().cloned()),
        (Affine, Affine | Convex) => all_members(&mut gens.iter().cloned()),
        (Affine, Linear | ConvexCone) => Ok(member(&zero)? && all_members(&mut gens.iter().cloned())?),
        (ConvexCone, ConvexCone | Convex) => all_members(&mut gens.iter().cloned()),
        (ConvexCone, Linear) => {
            all_members(&mut gens.iter().flat_map(|g| [g.clone(), g.iter().map(|v| -v).collect()]))
        }
        (ConvexCone, Affine) => Ok(member(&gens[0])?
            && all_members(&mut diffs().flat_map(|d| {
                let neg = d.iter().map(|v| -v).collect();
                [d, neg]
            }))?),
        (Convex, Convex) => all_members(&mut gens.iter().cloned()),
        (Convex, Linear | ConvexCone) => Ok(gens.iter().all(|g| is_zero(g)) && member(&zero)?),
        (Convex, Affine) => Ok(diffs().all(|d| is_zero(&d)) && member(&gens[0])?),
    }
}

/// Lower/upper sector slopes; infinite values are allowed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sector {
    pub alpha: f64,
    pub beta: f64,
}

/// Checks the sector condition `(y - αu)(y - βu) <= 0` at every sample of a
/// scalar input/output trajectory.
///
/// With `β = +∞` the condition degenerates to `(y - αu)·u >= 0`, with
/// `α = -∞` to `(y - βu)·u <= 0`, and with both infinite it always holds.
pub fn sector_membership(w: &Trajectory, alpha: f64, beta: f64, tol: f64) -> Result<bool> {
    if w.m() != 1 || w.p() != 1 {
        return Err(Error::input(format!(
            "sector condition needs m = p = 1, got m = {}, p = {}",
            w.m(),
            w.p()
        )));
    }
    if alpha.is_nan() || beta.is_nan() || alpha == f64::INFINITY || beta == f64::NEG_INFINITY {
        return Err(Error::input("sector bounds must satisfy -inf <= alpha, beta <= +inf"));
    }
    if alpha > beta {
        return Err(Error::input("sector bounds must satisfy alpha <= beta"));
    }
    let ok = (0..w.len()).all(|t| {
        let (u, y) = (w.sample(t)[0], w.sample(t)[1]);
        match (alpha.is_finite(), beta.is_finite()) {
            (true, true) => (y - alpha * u) * (y - beta * u) <= tol,
            (true, false) => (y - alpha * u) * u >= -tol,
            (false, true) => (y - beta * u) * u <= tol,
            (false, false) => true,
        }
    });
    Ok(ok)
}
