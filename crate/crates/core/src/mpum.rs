//! Most powerful unfalsified models at a finite horizon.
//!
//! The model generated by `w` in a class is the hull (span, affine, conical
//! or convex, per class) of its shifts. Restricted to `[0, L-1]` these are
//! exactly the length-`L` windows of `w`, i.e. the columns of `H_L(w)`.
//! Windows that would run past the end of the data are dropped.

use crate::behavior::{behavior_from_hankel, behavior_included, build_hankel, FiniteBehavior, Trajectory};
use crate::error::{Error, Result};
use crate::pecheck::ModelClass;

#[derive(Clone, Debug, PartialEq)]
pub struct MpumResult {
    pub behavior: FiniteBehavior,
    /// The generators are the windows of the source, in shift order.
    pub generators_are_windows: bool,
    pub source_length: usize,
}

pub fn mpum_finite(w: &Trajectory, depth: usize, class: ModelClass) -> Result<MpumResult> {
    let h = build_hankel(w, depth)?;
    Ok(MpumResult {
        behavior: behavior_from_hankel(&h, class.hull()),
        generators_are_windows: true,
        source_length: w.len(),
    })
}

/// True when every length-`L` window of `w` lies in the model.
pub fn unfalsified_check(result: &MpumResult, w: &Trajectory, tol: f64) -> Result<bool> {
    let b = &result.behavior;
    if w.q() != b.q() {
        return Err(Error::input(format!("trajectory has q = {}, model has q = {}", w.q(), b.q())));
    }
    if w.len() < b.horizon() {
        return Ok(true);
    }
    let h = build_hankel(w, b.horizon())?;
    for j in 0..h.num_cols() {
        if !b.contains(&h.entries().column(j), tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when the model is contained in `other`, which must be of the same
/// hull type.
pub fn minimality_check(result: &MpumResult, other: &FiniteBehavior, tol: f64) -> Result<bool> {
    if other.hull() != result.behavior.hull() {
        return Err(Error::input(format!(
            "hull mismatch: model is {}, other is {}",
            result.behavior.hull(),
            other.hull()
        )));
    }
    behavior_included(&result.behavior, other, tol)
}
