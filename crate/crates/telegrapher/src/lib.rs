//! Network parameter matrices of multiconductor transmission lines.
//!
//! Given the per-unit-length constants `L`, `C`, `R`, `G` of a uniform
//! n-conductor line, this crate computes the chain, ABCD, admittance and
//! impedance matrices of a finite line segment in the Laplace domain, together
//! with the scalar parameters that bound their growth over the complex plane.
//! All matrix kernels are valid for defective (non-diagonalizable) inputs:
//! nothing in here diagonalizes a matrix that is not guaranteed diagonalizable.
//!
//! The crate is organised in four layers:
//!
//! - [`matfun`] — dense complex matrix-function kernels (exponential,
//!   principal square root, hyperbolic functions, spectra, norms).
//! - [`line`](mod@line) — the validated physical line model and its derived
//!   bound parameters (accretivity thresholds, norm envelope coefficients,
//!   the lossless-exponential supremum `kappa`, propagation-speed bound
//!   `nu`).
//! - [`netparams`] — the network parameter matrices themselves, built both
//!   directly from the 2n x 2n matrix exponential and blockwise from n x n
//!   hyperbolic functions of principal square roots, plus the causal
//!   lead-factor decomposition.
//! - [`verify`] — a seeded property-verification harness that samples every
//!   testable identity and bound on concrete line constants and reports
//!   worst-case margins.
//!
//! ```
//! use nalgebra::DMatrix;
//! use num_complex::Complex64;
//! use telegrapher::line::LineConstants;
//! use telegrapher::netparams::{abcd_direct, chain_matrix};
//!
//! // A lossless two-conductor line with unit constants.
//! let eye = DMatrix::<f64>::identity(1, 1);
//! let zero = DMatrix::<f64>::zeros(1, 1);
//! let line = LineConstants::new(eye.clone(), eye, zero.clone(), zero).unwrap();
//!
//! let s = Complex64::new(0.0, 1.0);
//! let chain = chain_matrix(&line, s, 2.0).unwrap();
//! let abcd = abcd_direct(&line, s, 2.0).unwrap();
//!
//! // The ABCD matrix is the inverse of the chain matrix.
//! let product = &chain.value * &abcd.value;
//! let eye2 = DMatrix::<Complex64>::identity(2, 2);
//! assert!((product - eye2).norm() < 1e-12);
//! ```

pub mod line;
pub mod matfun;
pub mod netparams;
pub mod tolerances;
pub mod verify;

pub use matfun::ComplexMatrix;
