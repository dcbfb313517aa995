//! Network parameter matrices of a finite line segment.
//!
//! For a line of length `d` and Laplace variable `s`, the chain matrix
//! `Xi(s, -d)` maps input-port voltages and currents to output-port ones, and
//! the ABCD matrix `Xi(s, d)` is its inverse. Both are matrix exponentials of
//! `+-d` times the block-antidiagonal exponent `[[0, L s + R], [C s + G, 0]]`
//! and are entire in `s`.
//!
//! For `Re(s) > alpha` (the accretivity abscissa of the line) the ABCD matrix
//! also decomposes blockwise into hyperbolic functions of the two principal
//! square roots of `(L s + R)(C s + G)` and `(C s + G)(L s + R)` — a
//! construction that never diagonalizes anything, so it survives defective
//! products. The admittance and impedance matrices are assembled from those
//! blocks; the impedance goes through the dual line (constants swapped), to
//! which it is unitarily similar.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::line::{BoundParams, LineConstants};
use crate::matfun::{coshm, expm, sinhm, sqrtm_principal, ComplexMatrix, MatFunError};
use crate::tolerances::BLOCKWISE_SELF_CHECK_REL;

#[derive(Debug, Clone, Error)]
pub enum NetParamError {
    /// The blockwise construction is only guaranteed for `Re(s) > alpha`.
    #[error("Re(s) = {re_s} is not inside the accretivity half-plane Re(s) > {alpha}")]
    Domain { re_s: f64, alpha: f64 },
    /// Admittance and impedance are undefined at `d <= 0`: a zero-length
    /// line is a short circuit.
    #[error("admittance/impedance undefined for d = {d}: a zero-length line is a short circuit")]
    ShortCircuit { d: f64 },
    /// `B_d(s)` failed to invert numerically. Theory guarantees invertibility
    /// on the domain, so this signals a tolerance breach, not a theory gap.
    #[error("B_d(s) is numerically singular")]
    Singular,
    /// The blockwise assembly disagreed with the direct exponential beyond
    /// the configured tolerance.
    #[error("blockwise ABCD self-check failed: relative error {rel_err:e} > {tol:e}")]
    SelfCheck { rel_err: f64, tol: f64 },
    #[error("argument is not finite")]
    NonFiniteArgument,
    #[error(transparent)]
    Kernel(#[from] MatFunError),
}

/// Which network parameter a [`PortMatrix`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortKind {
    Chain,
    Abcd,
    Admittance,
    Impedance,
    LeadFactor,
}

/// A 2n x 2n network parameter matrix evaluated at one `(s, d)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct PortMatrix {
    pub kind: PortKind,
    pub value: ComplexMatrix,
    pub s: Complex64,
    pub d: f64,
}

/// The four n x n ABCD blocks together with the factors they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct AbcdBlocks {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    pub d: ComplexMatrix,
    /// Characteristic impedance factor `(L s + R) sqrt((C s + G)(L s + R))^-1`.
    pub char_impedance: ComplexMatrix,
    /// Characteristic admittance factor `(C s + G) sqrt((L s + R)(C s + G))^-1`.
    pub char_admittance: ComplexMatrix,
    /// Principal square root of `(L s + R)(C s + G)`.
    pub sqrt_zy: ComplexMatrix,
    /// Principal square root of `(C s + G)(L s + R)`.
    pub sqrt_yz: ComplexMatrix,
    pub s: Complex64,
    pub length: f64,
}

impl AbcdBlocks {
    /// Stacks the four blocks into the full 2n x 2n ABCD matrix.
    pub fn assemble(&self) -> ComplexMatrix {
        let n = self.a.nrows();
        let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(&self.a);
        m.view_mut((0, n), (n, n)).copy_from(&self.b);
        m.view_mut((n, 0), (n, n)).copy_from(&self.c);
        m.view_mut((n, n), (n, n)).copy_from(&self.d);
        m
    }
}

fn ensure_finite_point(s: Complex64, d: f64) -> Result<(), NetParamError> {
    if s.re.is_finite() && s.im.is_finite() && d.is_finite() {
        Ok(())
    } else {
        Err(NetParamError::NonFiniteArgument)
    }
}

/// Series-impedance factor `L s + R` as a complex matrix.
fn series_impedance(line: &LineConstants, s: Complex64) -> ComplexMatrix {
    DMatrix::from_fn(line.n(), line.n(), |i, j| {
        Complex64::from(line.l()[(i, j)]) * s + Complex64::from(line.r()[(i, j)])
    })
}

/// Shunt-admittance factor `C s + G` as a complex matrix.
fn shunt_admittance(line: &LineConstants, s: Complex64) -> ComplexMatrix {
    DMatrix::from_fn(line.n(), line.n(), |i, j| {
        Complex64::from(line.c()[(i, j)]) * s + Complex64::from(line.g()[(i, j)])
    })
}

/// The 2n x 2n exponent `[[0, L s + R], [C s + G, 0]]`.
pub fn exponent_matrix(line: &LineConstants, s: Complex64) -> ComplexMatrix {
    let n = line.n();
    let z = series_impedance(line, s);
    let y = shunt_admittance(line, s);
    let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, n), (n, n)).copy_from(&z);
    m.view_mut((n, 0), (n, n)).copy_from(&y);
    m
}

fn scaled_expm(line: &LineConstants, s: Complex64, factor: f64) -> Result<ComplexMatrix, NetParamError> {
    let exponent = exponent_matrix(line, s).map(|z| z * Complex64::from(factor));
    Ok(expm(&exponent)?)
}

/// Chain matrix `Xi(s, -d)`: the transfer matrix from input-port
/// `[V_in; I_in]` to output-port `[V_out; I_out]`. Entire in `s`.
pub fn chain_matrix(line: &LineConstants, s: Complex64, d: f64) -> Result<PortMatrix, NetParamError> {
    ensure_finite_point(s, d)?;
    Ok(PortMatrix {
        kind: PortKind::Chain,
        value: scaled_expm(line, s, -d)?,
        s,
        d,
    })
}

/// ABCD matrix `Xi(s, d)`, the inverse of the chain matrix, computed as the
/// direct 2n x 2n exponential. Entire in `s`.
pub fn abcd_direct(line: &LineConstants, s: Complex64, d: f64) -> Result<PortMatrix, NetParamError> {
    ensure_finite_point(s, d)?;
    Ok(PortMatrix {
        kind: PortKind::Abcd,
        value: scaled_expm(line, s, d)?,
        s,
        d,
    })
}

/// Blockwise ABCD construction with the default self-check tolerance.
pub fn abcd_blockwise(
    line: &LineConstants,
    s: Complex64,
    d: f64,
) -> Result<AbcdBlocks, NetParamError> {
    abcd_blockwise_with_tolerance(line, s, d, BLOCKWISE_SELF_CHECK_REL)
}

/// Blockwise ABCD construction.
///
/// Requires `Re(s) > alpha`. Computes both principal square roots, the
/// characteristic impedance/admittance factors, and the four hyperbolic
/// blocks, then cross-checks the assembly against the direct exponential:
/// the two routes share only the scalar kernels, so agreement is a strong
/// end-to-end check and a mismatch beyond the tolerance is an error. The
/// effective tolerance is floored at the rounding level both routes can
/// reach, which grows with the exponential's scaling count at large `|s| d`.
pub fn abcd_blockwise_with_tolerance(
    line: &LineConstants,
    s: Complex64,
    d: f64,
    self_check_tol: f64,
) -> Result<AbcdBlocks, NetParamError> {
    ensure_finite_point(s, d)?;
    let alpha = line.accretivity_thresholds().alpha();
    if s.re <= alpha {
        return Err(NetParamError::Domain { re_s: s.re, alpha });
    }

    let z = series_impedance(line, s);
    let y = shunt_admittance(line, s);
    let sqrt_zy = sqrtm_principal(&(&z * &y))?;
    let sqrt_yz = sqrtm_principal(&(&y * &z))?;

    let sqrt_yz_inv = sqrt_yz.clone().try_inverse().ok_or(NetParamError::Singular)?;
    let sqrt_zy_inv = sqrt_zy.clone().try_inverse().ok_or(NetParamError::Singular)?;
    let char_impedance = &z * &sqrt_yz_inv;
    let char_admittance = &y * &sqrt_zy_inv;

    let d_scale = Complex64::from(d);
    let a = coshm(&sqrt_zy.map(|v| v * d_scale))?;
    let b = &char_impedance * sinhm(&sqrt_yz.map(|v| v * d_scale))?;
    let c = &char_admittance * sinhm(&sqrt_zy.map(|v| v * d_scale))?;
    let dd = coshm(&sqrt_yz.map(|v| v * d_scale))?;

    let blocks = AbcdBlocks {
        a,
        b,
        c,
        d: dd,
        char_impedance,
        char_admittance,
        sqrt_zy,
        sqrt_yz,
        s,
        length: d,
    };

    let direct = abcd_direct(line, s, d)?.value;
    let rel_err = (blocks.assemble() - &direct).norm() / direct.norm();
    let squarings = (exponent_matrix(line, s).norm() * d.abs() / 5.37)
        .log2()
        .ceil()
        .max(0.0);
    let tol = self_check_tol.max(32.0 * f64::EPSILON * 2f64.powf(squarings));
    if rel_err > tol {
        return Err(NetParamError::SelfCheck { rel_err, tol });
    }
    Ok(blocks)
}

fn assemble_immittance(
    diag: &ComplexMatrix,
    off: &ComplexMatrix,
    kind: PortKind,
    s: Complex64,
    d: f64,
) -> PortMatrix {
    let n = diag.nrows();
    let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(diag);
    m.view_mut((0, n), (n, n)).copy_from(off);
    m.view_mut((n, 0), (n, n)).copy_from(off);
    m.view_mut((n, n), (n, n)).copy_from(diag);
    PortMatrix { kind, value: m, s, d }
}

/// Admittance matrix `Y(s, d) = [[D B^-1, -B^-1], [-B^-1, D B^-1]]`, mapping
/// port voltages `[V_in; V_out]` to port currents `[I_in; -I_out]`.
/// Requires `Re(s) > alpha` and `d > 0`.
pub fn admittance(line: &LineConstants, s: Complex64, d: f64) -> Result<PortMatrix, NetParamError> {
    ensure_finite_point(s, d)?;
    if d <= 0.0 {
        return Err(NetParamError::ShortCircuit { d });
    }
    let blocks = abcd_blockwise(line, s, d)?;
    let b_inv = blocks.b.clone().try_inverse().ok_or(NetParamError::Singular)?;
    let diag = &blocks.d * &b_inv;
    let off = b_inv.map(|z| -z);
    Ok(assemble_immittance(&diag, &off, PortKind::Admittance, s, d))
}

/// Impedance matrix `Z(s, d) = Y(s, d)^-1`, computed through the dual line:
/// `Z` is unitarily similar to the dual's admittance via `diag(I, -I)`, which
/// flips the sign of the off-diagonal blocks. This route avoids inverting a
/// near-singular 2n x 2n admittance at large `d`; [`impedance_via_inverse`]
/// remains available as an independent cross-check.
pub fn impedance(line: &LineConstants, s: Complex64, d: f64) -> Result<PortMatrix, NetParamError> {
    ensure_finite_point(s, d)?;
    if d <= 0.0 {
        return Err(NetParamError::ShortCircuit { d });
    }
    let dual = line.dual();
    let blocks = abcd_blockwise(&dual, s, d)?;
    let b_inv = blocks.b.clone().try_inverse().ok_or(NetParamError::Singular)?;
    let diag = &blocks.d * &b_inv;
    Ok(assemble_immittance(&diag, &b_inv, PortKind::Impedance, s, d))
}

/// Impedance by direct numerical inversion of the admittance matrix. Kept as
/// the independent route for cross-checks against [`impedance`].
pub fn impedance_via_inverse(
    line: &LineConstants,
    s: Complex64,
    d: f64,
) -> Result<PortMatrix, NetParamError> {
    let y = admittance(line, s, d)?;
    let value = y.value.try_inverse().ok_or(NetParamError::Singular)?;
    Ok(PortMatrix {
        kind: PortKind::Impedance,
        value,
        s,
        d,
    })
}

/// Admittance of the dual line, `Y'(s, d)`, to which the primal impedance is
/// unitarily similar (equal spectral norms).
pub fn dual_admittance(
    line: &LineConstants,
    s: Complex64,
    d: f64,
) -> Result<PortMatrix, NetParamError> {
    admittance(&line.dual(), s, d)
}

/// Causal lead factor `H_d(s) = exp(-|d| s / nu) Xi(s, d)` using the sound
/// speed bound `nu = params.nu_lower`: the removed time advance never exceeds
/// the true one, so `H_d` stays bounded on the closed right half-plane.
pub fn lead_factor(
    line: &LineConstants,
    params: &BoundParams,
    s: Complex64,
    d: f64,
) -> Result<PortMatrix, NetParamError> {
    lead_factor_with_speed(line, params.nu_lower, s, d)
}

/// Lead factor with an explicit propagation-speed bound `nu`. The scalar
/// advance commutes with everything, so the product is evaluated as a single
/// exponential of the shifted exponent `d M(s) - (|d| s / nu) I`, which stays
/// representable even where `Xi(s, d)` alone would overflow.
pub fn lead_factor_with_speed(
    line: &LineConstants,
    nu: f64,
    s: Complex64,
    d: f64,
) -> Result<PortMatrix, NetParamError> {
    ensure_finite_point(s, d)?;
    let n = line.n();
    let shift = s * Complex64::from(d.abs() / nu);
    let mut exponent = exponent_matrix(line, s).map(|z| z * Complex64::from(d));
    for i in 0..2 * n {
        exponent[(i, i)] -= shift;
    }
    Ok(PortMatrix {
        kind: PortKind::LeadFactor,
        value: expm(&exponent)?,
        s,
        d,
    })
}
