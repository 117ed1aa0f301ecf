//! Named tolerances used throughout the crate.
//!
//! Every comparison threshold lives here so that the library, the property
//! tests and the acceptance suite agree on a single set of values. The
//! constants are stated for `f64`; the [`Scalar`](crate::Scalar) impls for
//! narrower types derive looser equivalents.

/// Maximum allowed element of `|M - M†|` for a density matrix.
pub const HERMITIAN: f64 = 1e-12;

/// Maximum allowed deviation of `tr ρ` from 1.
pub const TRACE: f64 = 1e-12;

/// Eigenvalues of a density matrix may undershoot zero by this much.
pub const PSD: f64 = 1e-10;

/// Accuracy contract of the eigensolver (residuals, orthonormality).
pub const EIG: f64 = 1e-9;

/// Hermiticity required of eigensolver *input*.
pub const EIG_INPUT: f64 = 1e-10;

/// Slack on the triangle bounds so that edge states are accepted.
pub const BOUNDARY: f64 = 1e-12;

/// Membership test for the axisymmetric family (state vs. its twirl).
pub const MEMBERSHIP: f64 = 1e-10;

/// Slack subtracted before taking ceilings of dimension counters, so that
/// floating-point overshoot cannot inflate a certified class.
pub const CEILING: f64 = 1e-9;

/// Negativity values below this are reported as exactly zero.
pub const NEGATIVITY_CLAMP: f64 = 1e-12;

/// Residual below which the feasibility solver accepts a point.
pub const SOLVER_FEASIBLE: f64 = 1e-8;

/// Slack used when turning a solver bound into a certified dimension count.
pub const SOLVER_CEILING: f64 = 1e-6;
