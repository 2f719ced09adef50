//! Generalized persistence-of-excitation checks.
//!
//! | class           | rank condition                        | representation |
//! |-----------------|---------------------------------------|----------------|
//! | linear          | `rank H_L(w) = mL + n`                | `span H_L(w)`  |
//! | affine          | `rank [H_L(w); 1ᵀ] = mL + n + 1`      | `aff H_L(w)`   |
//! | positive linear | `rank₊ H_L(w) = mL + n` + monomial    | `ccone H_L(w)` |
//! | positive affine | `rank₊ [H_L(w); 1ᵀ] = mL + n + 1` + monomial | `conv H_L(w)` |
//!
//! The monomial requirement is that `[H_L(u); H_1(x)]` contains a monomial
//! submatrix of order `mL + n`, which needs the state trajectory `x`.
//! `L > lag` is a hypothesis the caller asserts; it cannot be verified from
//! the data.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::behavior::{
    behavior_from_hankel, build_hankel, hankel_of_samples, FiniteBehavior, HullType, Trajectory,
};
use crate::error::{Error, Result};
use crate::linalg::{numeric_rank, DenseMatrix};
use crate::nnrank::{
    monomial_submatrix_capped, nonneg_rank_bounds, MonomialCertificate, NnRankBounds, NnRankConfig,
};
use crate::statespace::StateTrajectory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ModelClass {
    Linear,
    Affine,
    PositiveLinear,
    PositiveAffine,
}

impl ModelClass {
    pub const ALL: [ModelClass; 4] =
        [ModelClass::Linear, ModelClass::Affine, ModelClass::PositiveLinear, ModelClass::PositiveAffine];

    pub fn hull(self) -> HullType {
        match self {
            ModelClass::Linear => HullType::Linear,
            ModelClass::Affine => HullType::Affine,
            ModelClass::PositiveLinear => HullType::ConvexCone,
            ModelClass::PositiveAffine => HullType::Convex,
        }
    }

    pub fn is_affine(self) -> bool {
        matches!(self, ModelClass::Affine | ModelClass::PositiveAffine)
    }

    pub fn is_positive(self) -> bool {
        matches!(self, ModelClass::PositiveLinear | ModelClass::PositiveAffine)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelClass::Linear => "linear",
            ModelClass::Affine => "affine",
            ModelClass::PositiveLinear => "positiveLinear",
            ModelClass::PositiveAffine => "positiveAffine",
        }
    }

    /// `mL + n`, plus one for affine classes.
    pub fn required_rank(self, m: usize, n: usize, depth: usize) -> usize {
        m * depth + n + usize::from(self.is_affine())
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(ModelClass::Linear),
            "affine" => Ok(ModelClass::Affine),
            "positiveLinear" | "positive-linear" | "positive_linear" => Ok(ModelClass::PositiveLinear),
            "positiveAffine" | "positive-affine" | "positive_affine" => Ok(ModelClass::PositiveAffine),
            other => Err(Error::Parse(format!("unknown model class `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Representative,
    NotRepresentative,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Representative => "REPRESENTATIVE",
            Verdict::NotRepresentative => "NOT_REPRESENTATIVE",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

/// Outcome of the monomial submatrix search.
#[derive(Clone, Debug, PartialEq)]
pub enum MonomialStatus {
    Found(MonomialCertificate),
    NotFound,
    /// The instance exceeded the combinatorial cap.
    NotChecked,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeConfig {
    /// Tolerance for the ordinary rank (0 selects the default threshold).
    pub rank_tol: f64,
    pub nn: NnRankConfig,
}

impl Default for PeConfig {
    fn default() -> Self {
        Self { rank_tol: 0.0, nn: NnRankConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeReport {
    pub class: ModelClass,
    pub depth: usize,
    pub m: usize,
    pub n: usize,
    pub required_rank: usize,
    /// Ordinary rank of the tested matrix (`H_L(w)`, with a ones row for
    /// affine classes).
    pub ordinary_rank: usize,
    pub nn_bounds: Option<NnRankBounds>,
    /// `None` for the linear and affine classes.
    pub monomial: Option<MonomialStatus>,
    pub verdict: Verdict,
    /// Present exactly when the verdict is representative.
    pub representation: Option<FiniteBehavior>,
}

/// `build_hankel(w, L)` under the hull of `class`, without any certification.
pub fn data_driven_representation(w: &Trajectory, class: ModelClass, depth: usize) -> Result<FiniteBehavior> {
    if class.is_positive() && !w.samples().is_nonnegative(0.0) {
        return Err(Error::input("positive model classes need non-negative data"));
    }
    Ok(behavior_from_hankel(&build_hankel(w, depth)?, class.hull()))
}

fn check_common(w: &Trajectory, m: usize, depth: usize) -> Result<()> {
    if w.m() != m {
        return Err(Error::input(format!("trajectory has {} inputs but m = {m}", w.m())));
    }
    if depth == 0 || depth > w.len() {
        return Err(Error::input(format!("depth L = {depth} must lie in 1..={}", w.len())));
    }
    Ok(())
}

fn tested_matrix(w: &Trajectory, depth: usize, affine: bool) -> Result<DenseMatrix> {
    let h = build_hankel(w, depth)?.into_entries();
    Ok(if affine { h.with_ones_row() } else { h })
}

fn rank_check(
    w: &Trajectory,
    class: ModelClass,
    m: usize,
    n: usize,
    depth: usize,
    tol: f64,
) -> Result<PeReport> {
    check_common(w, m, depth)?;
    let required_rank = class.required_rank(m, n, depth);
    let ordinary_rank = numeric_rank(&tested_matrix(w, depth, class.is_affine())?, tol)?;
    let verdict =
        if ordinary_rank == required_rank { Verdict::Representative } else { Verdict::NotRepresentative };
    let representation = (verdict == Verdict::Representative)
        .then(|| data_driven_representation(w, class, depth))
        .transpose()?;
    Ok(PeReport {
        class,
        depth,
        m,
        n,
        required_rank,
        ordinary_rank,
        nn_bounds: None,
        monomial: None,
        verdict,
        representation,
    })
}

/// Linear systems: `span H_L(w)` is the restricted behavior iff
/// `rank H_L(w) = mL + n`.
pub fn pe_check_linear(w: &Trajectory, m: usize, n: usize, depth: usize, tol: f64) -> Result<PeReport> {
    rank_check(w, ModelClass::Linear, m, n, depth, tol)
}

/// Affine systems: `aff H_L(w)` is the restricted behavior iff
/// `rank [H_L(w); 1ᵀ] = mL + n + 1`.
pub fn pe_check_affine(w: &Trajectory, m: usize, n: usize, depth: usize, tol: f64) -> Result<PeReport> {
    rank_check(w, ModelClass::Affine, m, n, depth, tol)
}

fn positive_check(
    w: &Trajectory,
    x: &StateTrajectory,
    class: ModelClass,
    m: usize,
    n: usize,
    depth: usize,
    config: &PeConfig,
) -> Result<PeReport> {
    check_common(w, m, depth)?;
    let entry_tol = config.nn.entry_tol;
    if !w.samples().is_nonnegative(entry_tol) {
        return Err(Error::input("trajectory data must be non-negative"));
    }
    if !x.samples().is_nonnegative(entry_tol) {
        return Err(Error::input("state data must be non-negative"));
    }
    let cols = w.len() - depth + 1;
    if x.len() < cols {
        return Err(Error::input(format!("state trajectory has {} samples, needs at least {cols}", x.len())));
    }

    let required_rank = class.required_rank(m, n, depth);
    let tested = tested_matrix(w, depth, class.is_affine())?;
    let ordinary_rank = numeric_rank(&tested, config.rank_tol)?;
    let bounds =
        nonneg_rank_bounds(&tested, &NnRankConfig { rank_tol: config.rank_tol, ..config.nn.clone() })?;

    let hu = hankel_of_samples(&w.inputs(), depth)?;
    let hx = hankel_of_samples(&x.samples().select_rows(&(0..cols).collect::<Vec<_>>()), 1)?;
    let stacked = hu.vstack(&hx)?;
    let monomial = match monomial_submatrix_capped(&stacked, m * depth + n, entry_tol, config.nn.cap) {
        Ok(Some(cert)) => MonomialStatus::Found(cert),
        Ok(None) => MonomialStatus::NotFound,
        Err(Error::Capability(_)) => MonomialStatus::NotChecked,
        Err(e) => return Err(e),
    };

    let verdict = decide(&bounds, &monomial, required_rank);
    let representation = (verdict == Verdict::Representative)
        .then(|| data_driven_representation(w, class, depth))
        .transpose()?;
    Ok(PeReport {
        class,
        depth,
        m,
        n,
        required_rank,
        ordinary_rank,
        nn_bounds: Some(bounds),
        monomial: Some(monomial),
        verdict,
        representation,
    })
}

/// Sound verdict from the evidence: representative only when the bounds pin
/// the non-negative rank at the required value and a monomial certificate
/// exists.
pub fn decide(bounds: &NnRankBounds, monomial: &MonomialStatus, required: usize) -> Verdict {
    let rank_refuted = bounds.lower > required || bounds.upper.is_some_and(|u| u < required);
    if rank_refuted || *monomial == MonomialStatus::NotFound {
        return Verdict::NotRepresentative;
    }
    match (bounds.exact(), monomial) {
        (Some(r), MonomialStatus::Found(_)) if r == required => Verdict::Representative,
        _ => Verdict::Undecided,
    }
}

/// Positive linear systems: `ccone H_L(w)` is the restricted behavior iff
/// `rank₊ H_L(w) = mL + n` and `[H_L(u); H_1(x)]` has a monomial submatrix
/// of order `mL + n`.
pub fn pe_check_positive(
    w: &Trajectory,
    x: &StateTrajectory,
    m: usize,
    n: usize,
    depth: usize,
    config: &PeConfig,
) -> Result<PeReport> {
    positive_check(w, x, ModelClass::PositiveLinear, m, n, depth, config)
}

/// Positive affine systems: `conv H_L(w)` is the restricted behavior iff
/// `rank₊ [H_L(w); 1ᵀ] = mL + n + 1` and the monomial condition holds.
pub fn pe_check_positive_affine(
    w: &Trajectory,
    x: &StateTrajectory,
    m: usize,
    n: usize,
    depth: usize,
    config: &PeConfig,
) -> Result<PeReport> {
    positive_check(w, x, ModelClass::PositiveAffine, m, n, depth, config)
}

/// Dispatches on `class`; positive classes require `x`.
pub fn pe_check(
    w: &Trajectory,
    x: Option<&StateTrajectory>,
    class: ModelClass,
    m: usize,
    n: usize,
    depth: usize,
    config: &PeConfig,
) -> Result<PeReport> {
    match class {
        ModelClass::Linear => pe_check_linear(w, m, n, depth, config.rank_tol),
        ModelClass::Affine => pe_check_affine(w, m, n, depth, config.rank_tol),
        ModelClass::PositiveLinear | ModelClass::PositiveAffine => {
            let x = x.ok_or_else(|| Error::input("positive model classes need a state trajectory"))?;
            positive_check(w, x, class, m, n, depth, config)
        }
    }
}
