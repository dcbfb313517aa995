//! The physical line model: validated per-unit-length constants and the
//! scalar parameters derived from them.
//!
//! A uniform n-conductor line is described by four real symmetric n x n
//! matrices, all in SI units per meter: inductance `L` (H/m), capacitance
//! `C` (F/m), resistance `R` (ohm/m) and conductance `G` (S/m). `L` and `C`
//! must be positive definite; `R` and `G` only symmetric. From these the
//! module derives:
//!
//! - the accretivity thresholds `gamma`, `rho` and their maximum `alpha`:
//!   for `Re(s) > alpha` both `L s + R` and `C s + G` have positive-definite
//!   Hermitian part, which is what makes the blockwise network-parameter
//!   construction well defined;
//! - the affine envelope `(c0, c1)` with
//!   `norm([[0, L t + R], [C t + G, 0]]) <= c1 |t| + c0` for real `t`;
//! - `kappa`, the supremum over real frequencies of the norm of the lossless
//!   exponential, reported as a certified (lower, upper) pair;
//! - `theta = c0 / c1` and the propagation-speed bound `nu = 1 / (kappa c1)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::matfun::{expm, spectral_norm, ComplexMatrix, MatFunError};
use crate::tolerances::{CL_NORMALITY_REL, KAPPA_STAGNATION_REL, SYMMETRY_REL};

/// Real dense matrix used for the per-unit-length constants.
pub type RealMatrix = DMatrix<f64>;

#[derive(Debug, Clone, Error)]
pub enum LineError {
    #[error("constant matrices must all be {expected}x{expected}, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("line constants failed validation: {}", report.failures.join("; "))]
    Invalid { report: ValidationReport },
    #[error(transparent)]
    Kernel(#[from] MatFunError),
}

/// Outcome of validating a candidate set of constants.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    /// Largest relative asymmetry `|M - M^T|_max / |M|_max` per matrix.
    pub asymmetry_l: f64,
    pub asymmetry_c: f64,
    pub asymmetry_r: f64,
    pub asymmetry_g: f64,
    /// Smallest eigenvalue of the symmetrized `L` and `C`.
    pub lambda_min_l: f64,
    pub lambda_min_c: f64,
    pub pass: bool,
    /// Human-readable description of each defect, naming the matrix.
    pub failures: Vec<String>,
}

/// Validated, symmetrized per-unit-length constants of a uniform line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineConstants {
    n: usize,
    l: RealMatrix,
    c: RealMatrix,
    r: RealMatrix,
    g: RealMatrix,
}

/// The half-plane thresholds beyond which `L s + R` and `C s + G` are
/// accretive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AccretivityThresholds {
    /// `C s + G` is accretive for `Re(s) > gamma`.
    pub gamma: f64,
    /// `L s + R` is accretive for `Re(s) > rho`.
    pub rho: f64,
}

impl AccretivityThresholds {
    /// Abscissa past which both factors are accretive simultaneously.
    pub fn alpha(&self) -> f64 {
        self.rho.max(self.gamma)
    }
}

/// Configuration of the adaptive frequency sweep that estimates `kappa`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KappaGrid {
    /// Log-spaced samples per decade of angular frequency.
    pub points_per_decade: usize,
    /// First sampled decade, as an exponent of 10 (rad/s).
    pub start_decade: i32,
    /// The sweep always covers decades up to this exponent.
    pub min_end_decade: i32,
    /// The sweep stops extending once this many consecutive decades fail to
    /// improve the running maximum.
    pub stagnation_decades: usize,
    /// Hard cap on the last sampled decade.
    pub max_decade: i32,
}

impl Default for KappaGrid {
    fn default() -> Self {
        Self {
            points_per_decade: 24,
            start_decade: -3,
            min_end_decade: 9,
            stagnation_decades: 3,
            max_decade: 15,
        }
    }
}

/// Certified two-sided estimate of the lossless-exponential supremum.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KappaEstimate {
    /// Largest sampled norm: a true lower estimate of the supremum.
    pub lower: f64,
    /// Analytic envelope: a true upper bound on the supremum.
    pub upper: f64,
    /// Whether the product `C L` passed the normality test, selecting the
    /// sharper closed-form envelope.
    pub cl_normal: bool,
    /// Angular frequency at which the sampled maximum was attained.
    pub omega_at_max: f64,
    /// Number of frequencies sampled.
    pub samples: usize,
}

/// Scalar parameters controlling the growth of the network matrices.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundParams {
    /// Abscissa `max(rho, gamma)` (1/s).
    pub alpha: f64,
    /// Accretivity threshold of `C s + G` (1/s).
    pub gamma: f64,
    /// Accretivity threshold of `L s + R` (1/s).
    pub rho: f64,
    /// `max(norm R, norm G)` (1/m).
    pub c0: f64,
    /// `max(norm L, norm C)` (s/m).
    pub c1: f64,
    /// Sampled lower estimate of `kappa` (dimensionless, >= 1).
    pub kappa_lower: f64,
    /// Analytic upper bound on `kappa` (dimensionless).
    pub kappa_upper: f64,
    /// Loss-to-reactance ratio `c0 / c1` (1/s).
    pub theta: f64,
    /// Propagation-speed lower bound from `kappa_upper` (m/s). Sound: the
    /// true speed bound `1 / (kappa c1)` is at least this.
    pub nu_lower: f64,
    /// Speed value from `kappa_lower` (m/s); an upper estimate of
    /// `1 / (kappa c1)`.
    pub nu_upper: f64,
    /// `min(lambda_min L, lambda_min C)`: the eigenvalue floor of the
    /// reactance matrices (s/m).
    pub b: f64,
}

fn max_abs(m: &RealMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

fn relative_asymmetry(m: &RealMatrix) -> f64 {
    let scale = max_abs(m);
    if scale == 0.0 {
        return 0.0;
    }
    max_abs(&(m - m.transpose())) / scale
}

fn symmetrize(m: &RealMatrix) -> RealMatrix {
    (m + m.transpose()).map(|v| v * 0.5)
}

/// Eigenvalue range of a real symmetric matrix.
fn symmetric_eig_range(m: &RealMatrix) -> (f64, f64) {
    if m.nrows() == 0 {
        return (0.0, 0.0);
    }
    let eigen = m.clone().symmetric_eigen();
    let min = eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let max = eigen
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    (min, max)
}

/// Spectral norm of a real symmetric matrix: largest eigenvalue modulus.
fn symmetric_spectral_norm(m: &RealMatrix) -> f64 {
    let (min, max) = symmetric_eig_range(m);
    min.abs().max(max.abs())
}

/// Spectral norm of a general real matrix via its singular values.
fn real_spectral_norm(m: &RealMatrix) -> f64 {
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0f64, f64::max)
}

/// Symmetric positive-definite square root via the eigendecomposition.
fn spd_sqrt(m: &RealMatrix) -> RealMatrix {
    let eigen = m.clone().symmetric_eigen();
    let roots = DVector::from_iterator(
        eigen.eigenvalues.len(),
        eigen.eigenvalues.iter().map(|v| v.max(0.0).sqrt()),
    );
    &eigen.eigenvectors * DMatrix::from_diagonal(&roots) * eigen.eigenvectors.transpose()
}

impl LineConstants {
    /// Validates and stores a set of constants. On success the matrices are
    /// symmetrized, so downstream spectral computations see exact symmetry.
    pub fn new(
        l: RealMatrix,
        c: RealMatrix,
        r: RealMatrix,
        g: RealMatrix,
    ) -> Result<Self, LineError> {
        let report = Self::validate(&l, &c, &r, &g)?;
        if !report.pass {
            return Err(LineError::Invalid { report });
        }
        Ok(Self {
            n: l.nrows(),
            l: symmetrize(&l),
            c: symmetrize(&c),
            r: symmetrize(&r),
            g: symmetrize(&g),
        })
    }

    /// Checks symmetry of all four matrices and positive definiteness of `L`
    /// and `C`, without constructing anything. A failed report blocks every
    /// downstream construction.
    pub fn validate(
        l: &RealMatrix,
        c: &RealMatrix,
        r: &RealMatrix,
        g: &RealMatrix,
    ) -> Result<ValidationReport, LineError> {
        let n = l.nrows();
        for m in [l, c, r, g] {
            if m.nrows() != n || m.ncols() != n {
                return Err(LineError::DimensionMismatch {
                    expected: n,
                    rows: m.nrows(),
                    cols: m.ncols(),
                });
            }
        }

        let mut failures = Vec::new();
        let asym = [
            ("L", relative_asymmetry(l)),
            ("C", relative_asymmetry(c)),
            ("R", relative_asymmetry(r)),
            ("G", relative_asymmetry(g)),
        ];
        for (name, defect) in &asym {
            if *defect > SYMMETRY_REL {
                failures.push(format!(
                    "{name} is not symmetric (relative asymmetry {defect:.3e})"
                ));
            }
        }

        let (lambda_min_l, _) = symmetric_eig_range(&symmetrize(l));
        let (lambda_min_c, _) = symmetric_eig_range(&symmetrize(c));
        if lambda_min_l <= 0.0 {
            failures.push(format!(
                "L is not positive definite (lambda_min = {lambda_min_l:.6e})"
            ));
        }
        if lambda_min_c <= 0.0 {
            failures.push(format!(
                "C is not positive definite (lambda_min = {lambda_min_c:.6e})"
            ));
        }

        Ok(ValidationReport {
            n,
            asymmetry_l: asym[0].1,
            asymmetry_c: asym[1].1,
            asymmetry_r: asym[2].1,
            asymmetry_g: asym[3].1,
            lambda_min_l,
            lambda_min_c,
            pass: failures.is_empty(),
            failures,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> &RealMatrix {
        &self.l
    }

    pub fn c(&self) -> &RealMatrix {
        &self.c
    }

    pub fn r(&self) -> &RealMatrix {
        &self.r
    }

    pub fn g(&self) -> &RealMatrix {
        &self.g
    }

    /// The dual line: inductance and capacitance swapped, resistance and
    /// conductance swapped. An involution, and validity is preserved.
    pub fn dual(&self) -> LineConstants {
        LineConstants {
            n: self.n,
            l: self.c.clone(),
            c: self.l.clone(),
            r: self.g.clone(),
            g: self.r.clone(),
        }
    }

    /// Accretivity thresholds:
    /// `gamma = -min(lambda_min G / lambda_max C, lambda_min G / lambda_min C)`
    /// and the analogous `rho` from `R` and `L`.
    pub fn accretivity_thresholds(&self) -> AccretivityThresholds {
        let (g_min, _) = symmetric_eig_range(&self.g);
        let (c_min, c_max) = symmetric_eig_range(&self.c);
        let (r_min, _) = symmetric_eig_range(&self.r);
        let (l_min, l_max) = symmetric_eig_range(&self.l);
        // `+ 0.0` maps a signed -0.0 onto plain 0.0.
        let gamma = -(g_min / c_max).min(g_min / c_min) + 0.0;
        let rho = -(r_min / l_max).min(r_min / l_min) + 0.0;
        AccretivityThresholds { gamma, rho }
    }

    /// Coefficients `(c0, c1)` of the affine norm envelope of the exponent:
    /// `c0 = max(norm R, norm G)`, `c1 = max(norm L, norm C)`, spectral norms.
    pub fn exponent_norm_coeffs(&self) -> (f64, f64) {
        let c0 = symmetric_spectral_norm(&self.r).max(symmetric_spectral_norm(&self.g));
        let c1 = symmetric_spectral_norm(&self.l).max(symmetric_spectral_norm(&self.c));
        (c0, c1)
    }

    /// The lossless exponent `[[0, j w L], [j w C, 0]]` at angular frequency
    /// `omega`.
    fn lossless_exponent(&self, omega: f64) -> ComplexMatrix {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, n + j)] = Complex64::new(0.0, omega * self.l[(i, j)]);
                m[(n + i, j)] = Complex64::new(0.0, omega * self.c[(i, j)]);
            }
        }
        m
    }

    /// Two-sided estimate of the supremum over all real `omega` of the norm
    /// of the lossless exponential.
    ///
    /// The lower estimate is a sampled maximum over a log-spaced grid covering
    /// both signs of `omega`, extended decade by decade past
    /// `grid.min_end_decade` until the running maximum stagnates. The upper
    /// bound is analytic: the closed form `1 + max(norm L, norm C) /
    /// sqrt(lambda_min(C L))` when `C L` is normal, otherwise the spectral
    /// norm of the 2 x 2 matrix of blockwise norm bounds obtained from the
    /// diagonalizing similarity of `L C`.
    pub fn kappa_estimate(&self, grid: &KappaGrid) -> Result<KappaEstimate, LineError> {
        // omega = 0 gives the identity, norm exactly 1.
        let mut lower = 1.0f64;
        let mut omega_at_max = 0.0f64;
        let mut samples = 1usize;
        let (_, c1) = self.exponent_norm_coeffs();

        let mut decade = grid.start_decade;
        let mut stagnant = 0usize;
        while decade < grid.max_decade {
            let mut improved = false;
            for k in 0..grid.points_per_decade {
                let fraction = k as f64 / grid.points_per_decade as f64;
                let omega = 10f64.powf(decade as f64 + fraction);
                for signed in [omega, -omega] {
                    let norm = spectral_norm(&expm(&self.lossless_exponent(signed))?)?;
                    samples += 1;
                    // Deflate by the squaring-phase rounding estimate
                    // (~2^squarings * eps), so the reported maximum stays a
                    // certified lower estimate of the supremum.
                    let squarings = (c1 * omega / 5.37).log2().ceil().max(0.0);
                    let certified = norm * (1.0 - (4.0 * f64::EPSILON * 2f64.powf(squarings)).min(0.5));
                    if certified > lower * (1.0 + KAPPA_STAGNATION_REL) {
                        improved = true;
                    }
                    if certified > lower {
                        lower = certified;
                        omega_at_max = signed;
                    }
                }
            }
            decade += 1;
            if decade <= grid.min_end_decade {
                continue;
            }
            stagnant = if improved { 0 } else { stagnant + 1 };
            if stagnant >= grid.stagnation_decades {
                break;
            }
        }

        let (upper, cl_normal) = self.kappa_upper_bound();
        Ok(KappaEstimate {
            lower,
            upper,
            cl_normal,
            omega_at_max,
            samples,
        })
    }

    /// Analytic upper bound on `kappa`, plus whether the normal-`CL` closed
    /// form was applicable.
    fn kappa_upper_bound(&self) -> (f64, bool) {
        let cl = &self.c * &self.l;
        let commutator = &cl * cl.transpose() - cl.transpose() * &cl;
        let cl_scale = cl.norm();
        let cl_normal = cl_scale == 0.0 || commutator.norm() <= CL_NORMALITY_REL * cl_scale * cl_scale;
        let (_, c1) = self.exponent_norm_coeffs();

        if cl_normal {
            // lambda_min(C L) through the congruent SPD form sqrt(C) L sqrt(C).
            let sqrt_c = spd_sqrt(&self.c);
            let (lambda_min_cl, _) = symmetric_eig_range(&(&sqrt_c * &self.l * &sqrt_c));
            return (1.0 + c1 / lambda_min_cl.max(f64::MIN_POSITIVE).sqrt(), true);
        }

        // General envelope from the diagonalizing similarity of L C:
        // Q = sqrt(L) V with V the orthonormal eigenvectors of
        // sqrt(L) C sqrt(L), so Q^-1 (L C) Q is diagonal.
        let sqrt_l = spd_sqrt(&self.l);
        let inner = &sqrt_l * &self.c * &sqrt_l;
        let eigen = inner.symmetric_eigen();
        let v = eigen.eigenvectors;
        let lambda = eigen.eigenvalues;
        let q = &sqrt_l * &v;
        let sqrt_l_inv = spd_sqrt(&self.l)
            .try_inverse()
            .expect("validated L is positive definite");
        let q_inv = v.transpose() * &sqrt_l_inv;

        let cond_q = real_spectral_norm(&q) * real_spectral_norm(&q_inv);
        let lambda_inv_sqrt = DMatrix::from_diagonal(&DVector::from_iterator(
            lambda.len(),
            lambda.iter().map(|v| 1.0 / v.max(f64::MIN_POSITIVE).sqrt()),
        ));
        // sqrt(L C)^-1 = Q diag(1/sqrt(lambda)) Q^-1 and
        // sqrt(C L)^-1 = Q^-T diag(1/sqrt(lambda)) Q^T.
        let sqrt_lc_inv = &q * &lambda_inv_sqrt * &q_inv;
        let sqrt_cl_inv = q_inv.transpose() * &lambda_inv_sqrt * q.transpose();
        let k_upper_right = real_spectral_norm(&(&self.l * sqrt_cl_inv));
        let k_lower_left = real_spectral_norm(&(&self.c * sqrt_lc_inv));

        let block_bounds = DMatrix::from_row_slice(
            2,
            2,
            &[cond_q, cond_q * k_upper_right, cond_q * k_lower_left, cond_q],
        );
        (real_spectral_norm(&block_bounds), false)
    }

    /// Assembles the full set of growth-bound parameters.
    pub fn bound_params(&self, grid: &KappaGrid) -> Result<BoundParams, LineError> {
        let thresholds = self.accretivity_thresholds();
        let (c0, c1) = self.exponent_norm_coeffs();
        let kappa = self.kappa_estimate(grid)?;
        let (lambda_min_l, _) = symmetric_eig_range(&self.l);
        let (lambda_min_c, _) = symmetric_eig_range(&self.c);
        Ok(BoundParams {
            alpha: thresholds.alpha(),
            gamma: thresholds.gamma,
            rho: thresholds.rho,
            c0,
            c1,
            kappa_lower: kappa.lower,
            kappa_upper: kappa.upper,
            theta: c0 / c1,
            nu_lower: 1.0 / (kappa.upper * c1),
            nu_upper: 1.0 / (kappa.lower * c1),
            b: lambda_min_l.min(lambda_min_c),
        })
    }
}
