//! Numerical tolerances used across the crate.
//!
//! Every threshold that appears in a validity check or an inequality
//! verdict is defined here, not inline.

/// Max absolute deviation from the conjugate transpose for a matrix to
/// count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Max absolute deviation of the trace from one for density matrices.
pub const TRACE_TOL: f64 = 1e-10;

/// Eigenvalues of a density matrix may undershoot zero by at most this
/// much; values in `[-EIG_CLAMP, 0)` are clamped to zero and the spectrum
/// renormalized, anything lower is rejected as genuinely non-positive.
pub const EIG_CLAMP: f64 = 1e-10;

/// Slack allowed in majorization partial-sum comparisons.
pub const MAJORIZATION_SLACK: f64 = 1e-12;

/// Minimum purity `tr(rho^2)` for a state to be treated as pure.
pub const PURITY_TOL: f64 = 1e-8;

/// Frobenius-norm tolerance for an ensemble to reconstruct its target.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;

/// Eigenvalues above this threshold count towards the numerical rank.
pub const RANK_TOL: f64 = 1e-12;

/// Violation tolerance for inequalities evaluated through closed forms.
pub const CLOSED_FORM_TOL: f64 = 1e-9;

/// Violation tolerance when the convex-roof estimator supplies the
/// entanglement term; the estimator is an upper bound on the true
/// infimum, so its error budget is wider.
pub const CONVEX_ROOF_TOL: f64 = 1e-4;

/// Normalization tolerance for state-vector amplitudes.
pub const NORMALIZATION_TOL: f64 = 1e-10;
