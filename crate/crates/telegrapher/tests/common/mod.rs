//! Shared oracles and generators for the integration suites.
//!
//! Everything here is deliberately independent of the library's matrix
//! kernels: the scalar two-port oracle uses only complex scalar arithmetic,
//! and the series exponential sums the Taylor series directly.

// Each test target uses its own subset of these helpers.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use telegrapher::line::{LineConstants, RealMatrix};
use telegrapher::ComplexMatrix;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random symmetric positive definite matrix.
pub fn random_spd(n: usize, rng: &mut ChaCha8Rng, scale: f64, shift: f64) -> RealMatrix {
    let raw = RealMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    &raw * raw.transpose() * scale + RealMatrix::identity(n, n) * shift
}

/// Random symmetric matrix with no definiteness constraint.
pub fn random_symmetric(n: usize, rng: &mut ChaCha8Rng, scale: f64) -> RealMatrix {
    let raw = RealMatrix::from_fn(n, n, |_, _| rng.random_range(-scale..scale));
    (&raw + raw.transpose()).map(|v| 0.5 * v)
}

/// Random validated constants: SPD reactances, symmetric (possibly
/// indefinite) losses.
pub fn random_constants(n: usize, rng: &mut ChaCha8Rng) -> LineConstants {
    let l = random_spd(n, rng, 0.4, 0.4);
    let c = random_spd(n, rng, 0.4, 0.4);
    let r = random_symmetric(n, rng, 0.4);
    let g = random_symmetric(n, rng, 0.4);
    LineConstants::new(l, c, r, g).expect("generated constants are valid")
}

/// Random validated constants with strictly positive definite losses.
pub fn random_lossy_constants(n: usize, rng: &mut ChaCha8Rng) -> LineConstants {
    let l = random_spd(n, rng, 0.4, 0.4);
    let c = random_spd(n, rng, 0.4, 0.4);
    let r = random_spd(n, rng, 0.1, 0.05);
    let g = random_spd(n, rng, 0.1, 0.05);
    LineConstants::new(l, c, r, g).expect("generated constants are valid")
}

/// Log-uniform magnitude with random sign.
pub fn sample_signed_log_uniform(rng: &mut ChaCha8Rng, log_min: f64, log_max: f64) -> f64 {
    let magnitude = 10f64.powf(rng.random_range(log_min..log_max));
    if rng.random_range(0.0..1.0) < 0.5 {
        magnitude
    } else {
        -magnitude
    }
}

/// Closed-form two-port quantities of a scalar (n = 1) line, from complex
/// scalar arithmetic only: `gamma = sqrt((L s + R)(C s + G))` and
/// `Z0 = (L s + R) / gamma`.
pub struct ScalarOracle {
    pub z: Complex64,
    pub y: Complex64,
    pub gamma: Complex64,
    pub z0: Complex64,
}

impl ScalarOracle {
    pub fn new(l: f64, cap: f64, r: f64, g: f64, s: Complex64) -> Self {
        let z = c(l, 0.0) * s + c(r, 0.0);
        let y = c(cap, 0.0) * s + c(g, 0.0);
        let gamma = (z * y).sqrt();
        ScalarOracle {
            z,
            y,
            gamma,
            z0: z / gamma,
        }
    }

    /// Chain matrix `Xi(s, -d)`.
    pub fn chain(&self, d: f64) -> ComplexMatrix {
        let gd = self.gamma * c(d, 0.0);
        // sinh(gd)/gamma is even in the branch choice of gamma.
        let sinh_over_gamma = gd.sinh() / self.gamma;
        DMatrix::from_row_slice(
            2,
            2,
            &[
                gd.cosh(),
                -self.z * sinh_over_gamma,
                -self.y * sinh_over_gamma,
                gd.cosh(),
            ],
        )
    }

    /// ABCD matrix `Xi(s, d)`.
    pub fn abcd(&self, d: f64) -> ComplexMatrix {
        let gd = self.gamma * c(d, 0.0);
        let sinh_over_gamma = gd.sinh() / self.gamma;
        DMatrix::from_row_slice(
            2,
            2,
            &[
                gd.cosh(),
                self.z * sinh_over_gamma,
                self.y * sinh_over_gamma,
                gd.cosh(),
            ],
        )
    }

    /// Admittance matrix of a length-`d` segment.
    pub fn admittance(&self, d: f64) -> ComplexMatrix {
        let gd = self.gamma * c(d, 0.0);
        let denom = self.z0 * gd.sinh();
        DMatrix::from_row_slice(
            2,
            2,
            &[
                gd.cosh() / denom,
                -denom.inv(),
                -denom.inv(),
                gd.cosh() / denom,
            ],
        )
    }

    /// Impedance matrix of a length-`d` segment.
    pub fn impedance(&self, d: f64) -> ComplexMatrix {
        let gd = self.gamma * c(d, 0.0);
        let factor = self.z0 / gd.sinh();
        DMatrix::from_row_slice(
            2,
            2,
            &[
                factor * gd.cosh(),
                factor,
                factor,
                factor * gd.cosh(),
            ],
        )
    }
}

/// Relative Frobenius distance.
pub fn rel_err(computed: &ComplexMatrix, reference: &ComplexMatrix) -> f64 {
    (computed - reference).norm() / reference.norm()
}
