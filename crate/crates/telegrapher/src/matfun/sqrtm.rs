//! Principal matrix square root via the complex Schur form.
//!
//! The input is reduced to upper-triangular form `M = Q T Q*`, the square
//! root of `T` is built column by column from the scalar recurrence, and the
//! result is transformed back. Nothing here assumes the input is
//! diagonalizable, so defective matrices (Jordan blocks) are handled exactly
//! like any others.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{ensure_square_finite, schur_triangular, ComplexMatrix, MatFunError};
use crate::tolerances::BRANCH_CUT_BAND;

/// Principal square root: the unique `X` with `X^2 = M` and every eigenvalue
/// of `X` in the open right half-plane. Fails with [`MatFunError::BranchCut`]
/// when an eigenvalue of `M` sits on the closed negative real axis, where no
/// principal root exists.
pub fn sqrtm_principal(m: &ComplexMatrix) -> Result<ComplexMatrix, MatFunError> {
    let n = ensure_square_finite(m)?;
    if n == 0 {
        return Ok(m.clone());
    }

    let (q, t) = schur_triangular(m)?;

    for eig in t.diagonal().iter() {
        if on_branch_cut(*eig) {
            return Err(MatFunError::BranchCut { eigenvalue: *eig });
        }
    }

    let root_t = sqrt_upper_triangular(&t);
    Ok(&q * root_t * q.adjoint())
}

pub(crate) fn on_branch_cut(z: Complex64) -> bool {
    let band = BRANCH_CUT_BAND * (1.0 + z.norm());
    z.im.abs() <= band && z.re <= band
}

/// Square root of an upper-triangular matrix by the column recurrence
/// `U_ii = sqrt(T_ii)`, `U_ij = (T_ij - sum_k U_ik U_kj) / (U_ii + U_jj)`.
/// Diagonal roots take the principal branch, so `Re(U_ii) > 0` and every
/// denominator is bounded away from zero.
fn sqrt_upper_triangular(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.nrows();
    let mut u = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        u[(i, i)] = t[(i, i)].sqrt();
    }
    for offset in 1..n {
        for i in 0..n - offset {
            let j = i + offset;
            let mut sum = Complex64::new(0.0, 0.0);
            for k in i + 1..j {
                sum += u[(i, k)] * u[(k, j)];
            }
            u[(i, j)] = (t[(i, j)] - sum) / (u[(i, i)] + u[(j, j)]);
        }
    }
    u
}
