//! Dense complex matrix-function kernels.
//!
//! These are the primitives everything else is built on: the matrix
//! exponential, the principal square root, hyperbolic functions, spectra,
//! norms, determinants, and the Frobenius/determinant bound on the inverse
//! norm. Every kernel accepts any square matrix with finite entries; none of
//! them requires diagonalizability.
//!
//! All operations are pure functions of their inputs and can be called from
//! any number of threads.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

mod expm;
mod sqrtm;

pub use expm::expm;
pub use sqrtm::sqrtm_principal;

use crate::tolerances::DET_FLOOR_REL;

/// The universal dense value type of this crate: a dynamically sized complex
/// matrix in column-major storage.
pub type ComplexMatrix = DMatrix<Complex64>;

/// Errors reported by the matrix-function kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatFunError {
    /// The operation needs a square matrix.
    #[error("matrix must be square, got {rows}x{cols}")]
    DimensionMismatch { rows: usize, cols: usize },
    /// An entry is NaN or infinite.
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    /// An eigenvalue sits on the closed negative real axis, so no principal
    /// square root exists.
    #[error("eigenvalue {eigenvalue} lies on the closed negative real axis")]
    BranchCut { eigenvalue: Complex64 },
    /// The matrix is numerically singular.
    #[error("matrix is numerically singular (|det| = {det_abs:e})")]
    Singular { det_abs: f64 },
    /// An iterative eigensolver failed to converge.
    #[error("eigenvalue iteration failed to converge")]
    ConvergenceFailure,
}

/// Eigenvalues of a square matrix, with algebraic multiplicity. Order is not
/// meaningful; treat the list as a multiset.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Smallest real part over the spectrum.
    pub fn min_re(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }

    /// True when some eigenvalue sits on the square-root branch cut
    /// (the closed negative real axis, within the configured band).
    pub fn touches_branch_cut(&self) -> bool {
        self.eigenvalues.iter().copied().any(sqrtm::on_branch_cut)
    }
}

pub(crate) fn ensure_square_finite(m: &ComplexMatrix) -> Result<usize, MatFunError> {
    if m.nrows() != m.ncols() {
        return Err(MatFunError::DimensionMismatch {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MatFunError::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(m.nrows())
}

const SCHUR_MAX_ITERATIONS: usize = 100_000;

/// Complex Schur reduction `M = Q T Q*` with `T` upper triangular.
pub(crate) fn schur_triangular(
    m: &ComplexMatrix,
) -> Result<(ComplexMatrix, ComplexMatrix), MatFunError> {
    nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITERATIONS)
        .map(|schur| schur.unpack())
        .ok_or(MatFunError::ConvergenceFailure)
}

/// Matrix hyperbolic cosine, `(e^M + e^{-M}) / 2`.
pub fn coshm(m: &ComplexMatrix) -> Result<ComplexMatrix, MatFunError> {
    let plus = expm(m)?;
    let minus = expm(&(-m))?;
    Ok((plus + minus).map(|z| z * Complex64::from(0.5)))
}

/// Matrix hyperbolic sine, `(e^M - e^{-M}) / 2`.
pub fn sinhm(m: &ComplexMatrix) -> Result<ComplexMatrix, MatFunError> {
    let plus = expm(m)?;
    let minus = expm(&(-m))?;
    Ok((plus - minus).map(|z| z * Complex64::from(0.5)))
}

/// Eigenvalues with multiplicity, read off the complex Schur form.
pub fn spectrum(m: &ComplexMatrix) -> Result<Spectrum, MatFunError> {
    ensure_square_finite(m)?;
    if m.nrows() == 0 {
        return Ok(Spectrum { eigenvalues: vec![] });
    }
    let (_, t) = schur_triangular(m)?;
    Ok(Spectrum {
        eigenvalues: t.diagonal().iter().copied().collect(),
    })
}

/// Smallest eigenvalue of the Hermitian part `(M + M*) / 2`. This equals the
/// minimum real part of the numerical range of `M`, so `M` is accretive
/// exactly when the returned value is positive.
pub fn hermitian_part_min_eig(m: &ComplexMatrix) -> Result<f64, MatFunError> {
    ensure_square_finite(m)?;
    let herm = (m + m.adjoint()).map(|z| z * Complex64::from(0.5));
    let eigen = herm
        .try_symmetric_eigen(f64::EPSILON, SCHUR_MAX_ITERATIONS)
        .ok_or(MatFunError::ConvergenceFailure)?;
    Ok(eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64, MatFunError> {
    ensure_square_finite(m)?;
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    let svd = m
        .clone()
        .try_svd(false, false, f64::EPSILON, SCHUR_MAX_ITERATIONS)
        .ok_or(MatFunError::ConvergenceFailure)?;
    Ok(svd
        .singular_values
        .iter()
        .copied()
        .fold(0.0f64, f64::max))
}

/// Frobenius norm.
pub fn frobenius_norm(m: &ComplexMatrix) -> f64 {
    m.norm()
}

/// Determinant via LU factorization.
pub fn det(m: &ComplexMatrix) -> Result<Complex64, MatFunError> {
    ensure_square_finite(m)?;
    Ok(m.determinant())
}

/// Upper bound on the spectral norm of the inverse:
/// `frob_norm(M)^(n-1) / |det M|`. Always at least the true inverse norm.
pub fn inverse_norm_bound(m: &ComplexMatrix) -> Result<f64, MatFunError> {
    let n = ensure_square_finite(m)?;
    if n == 0 {
        return Ok(0.0);
    }
    let frob = frobenius_norm(m);
    let det_abs = m.determinant().norm();
    let floor = DET_FLOOR_REL * frob.powi(n as i32);
    if det_abs <= floor || det_abs == 0.0 {
        return Err(MatFunError::Singular { det_abs });
    }
    Ok(frob.powi(n as i32 - 1) / det_abs)
}
