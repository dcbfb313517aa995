//! Centralized numerical tolerances.
//!
//! Every threshold used by the kernels and the verification harness lives
//! here, so no module carries ad-hoc magic numbers.

/// Relative Frobenius residual required of the principal square root:
/// `norm(X*X - M) / norm(M)`.
pub const SQRT_RESIDUAL_REL: f64 = 1e-10;

/// Band around the closed negative real axis inside which an eigenvalue is
/// treated as sitting on the square-root branch cut. An eigenvalue `z` is on
/// the cut when `|Im z| <= BRANCH_CUT_BAND * (1 + |z|)` and
/// `Re z <= BRANCH_CUT_BAND * (1 + |z|)`.
pub const BRANCH_CUT_BAND: f64 = 1e-12;

/// Relative symmetry defect allowed of the per-unit-length constants.
pub const SYMMETRY_REL: f64 = 1e-12;

/// Relative Frobenius commutator norm below which the product `C*L` is
/// treated as normal, enabling the sharper closed-form `kappa` envelope.
pub const CL_NORMALITY_REL: f64 = 1e-10;

/// Relative Frobenius mismatch between the blockwise ABCD assembly and the
/// direct 2n x 2n exponential at which the always-on self check trips.
pub const BLOCKWISE_SELF_CHECK_REL: f64 = 1e-6;

/// Default relative tolerance for equality checks in the verification
/// harness.
pub const EQUALITY_REL: f64 = 1e-10;

/// Default absolute slack allowed on the margin of an inequality check.
/// A theoretical inequality with margin below `-INEQUALITY_SLACK` fails.
pub const INEQUALITY_SLACK: f64 = 1e-9;

/// A determinant with modulus at or below `DET_FLOOR_REL * frob_norm^n` is
/// treated as numerically singular.
pub const DET_FLOOR_REL: f64 = f64::EPSILON;

/// Relative stagnation threshold for the adaptive `kappa` frequency sweep:
/// the grid stops extending once three consecutive decades improve the
/// running maximum by less than this factor.
pub const KAPPA_STAGNATION_REL: f64 = 1e-6;
