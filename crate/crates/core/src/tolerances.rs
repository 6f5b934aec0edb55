//! Numerical tolerances shared across the crate.
//!
//! Each constant is an absolute tolerance for quantities of order one
//! (density matrices have unit trace, tangles live in `[0, 2]`).

/// Maximum deviation from hermiticity accepted for density operators.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Maximum deviation of `tr ρ` from one for density operators.
pub const TRACE_TOL: f64 = 1e-9;

/// Maximum deviation of `‖ψ‖` from one for pure states.
pub const NORM_TOL: f64 = 1e-9;

/// Eigenvalues in `[-PSD_CLAMP_TOL, 0)` are treated as round-off and clamped to zero.
pub const PSD_CLAMP_TOL: f64 = 1e-12;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm falls below this
/// (scaled by `max(1, ‖A‖_F)`).
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps before reporting non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a two-qubit `ρ` at or below this are left out of the Wootters
/// spectrum; square roots would lift their round-off to `~1e-8`.
pub const WOOTTERS_SUPPORT_TOL: f64 = 1e-14;

/// Default threshold for counting an eigenvalue as part of the support.
pub const RANK_TOL: f64 = 1e-10;

/// A convex-roof estimate at or below this is reported as consistent with zero.
pub const ROOF_ZERO: f64 = 1e-3;
