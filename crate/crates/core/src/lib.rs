//! Data-driven behavioral modeling for linear, affine and positive
//! time-invariant systems.
//!
//! Finite-horizon behaviors are represented as hulls (span, affine hull,
//! convex cone, convex hull) of the columns of a depth-`L` Hankel matrix
//! built from one measured trajectory. The crate certifies when such a
//! representation is exact (ordinary rank for linear/affine classes,
//! non-negative rank plus a monomial state condition for positive classes),
//! answers membership and inclusion queries, and builds the finite-horizon
//! most powerful unfalsified model of a trajectory.

pub mod behavior;
pub mod cli;
mod error;
pub mod io;
pub mod linalg;
pub mod mpum;
pub mod nnrank;
pub mod pecheck;
pub mod statespace;

pub use behavior::{build_hankel, FiniteBehavior, HankelMatrix, HullType, MembershipCertificate, Trajectory};
pub use error::{Error, Result};
pub use linalg::{DenseMatrix, SolveResult};
pub use mpum::{mpum_finite, MpumResult};
pub use nnrank::{MonomialCertificate, NnRankBounds, NnRankConfig};
pub use pecheck::{ModelClass, PeConfig, PeReport, Verdict};
pub use statespace::{StateSpaceModel, StateTrajectory};
