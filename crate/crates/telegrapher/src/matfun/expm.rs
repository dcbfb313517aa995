//! Matrix exponential by scaling and squaring with diagonal Pade
//! approximants.
//!
//! The approximant order m in {3, 5, 7, 9, 13} is chosen from the 1-norm of
//! the input against the classical double-precision thresholds; inputs larger
//! than the order-13 threshold are scaled by a power of two, approximated,
//! and repeatedly squared.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{ensure_square_finite, ComplexMatrix, MatFunError};

// Largest 1-norms for which the [m/m] Pade approximant of exp keeps the
// backward error below the f64 unit roundoff.
const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.53939833006323e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const PADE_9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Maximum column sum of entry moduli.
pub(crate) fn one_norm(m: &ComplexMatrix) -> f64 {
    let mut max = 0.0f64;
    for j in 0..m.ncols() {
        let col_sum: f64 = m.column(j).iter().map(|z| z.norm()).sum();
        max = max.max(col_sum);
    }
    max
}

/// Matrix exponential `e^M`.
pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix, MatFunError> {
    let n = ensure_square_finite(m)?;
    if n == 0 {
        return Ok(m.clone());
    }

    let norm = one_norm(m);
    if norm <= THETA_9 {
        let coeffs: &[f64] = if norm <= THETA_3 {
            &PADE_3
        } else if norm <= THETA_5 {
            &PADE_5
        } else if norm <= THETA_7 {
            &PADE_7
        } else {
            &PADE_9
        };
        return pade_low_order(m, coeffs);
    }

    let squarings = if norm <= THETA_13 {
        0
    } else {
        (norm / THETA_13).log2().ceil() as u32
    };
    // Past ~2^1000 the scaled argument underflows to zero and the squaring
    // chain would silently return the identity.
    if squarings > 1000 {
        return Err(MatFunError::ConvergenceFailure);
    }
    let scaled = m.map(|z| z / Complex64::from(2f64.powi(squarings as i32)));
    let mut result = pade_13(&scaled)?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// Evaluates the [m/m] approximant for m <= 9 from explicit even powers:
/// `U = A (b1 I + b3 A^2 + ...)`, `V = b0 I + b2 A^2 + ...`, and solves
/// `(V - U) X = V + U`.
fn pade_low_order(a: &ComplexMatrix, coeffs: &[f64]) -> Result<ComplexMatrix, MatFunError> {
    let n = a.nrows();
    let eye = DMatrix::<Complex64>::identity(n, n);
    let a2 = a * a;

    let mut even_powers = vec![eye]; // A^0, A^2, A^4, ...
    for _ in 0..(coeffs.len() / 2 - 1) {
        let next = even_powers.last().expect("nonempty") * &a2;
        even_powers.push(next);
    }

    let mut u_inner = DMatrix::<Complex64>::zeros(n, n);
    let mut v = DMatrix::<Complex64>::zeros(n, n);
    for (k, power) in even_powers.iter().enumerate() {
        u_inner += power.map(|z| z * Complex64::from(coeffs[2 * k + 1]));
        v += power.map(|z| z * Complex64::from(coeffs[2 * k]));
    }
    let u = a * u_inner;
    solve_pade(u, v)
}

/// Order-13 evaluation with the factored polynomial scheme that needs only
/// A^2, A^4 and A^6.
fn pade_13(a: &ComplexMatrix) -> Result<ComplexMatrix, MatFunError> {
    let n = a.nrows();
    let b = &PADE_13;
    let eye = DMatrix::<Complex64>::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_high = &a6 * (scale(&a6, b[13]) + scale(&a4, b[11]) + scale(&a2, b[9]));
    let u_low = scale(&a6, b[7]) + scale(&a4, b[5]) + scale(&a2, b[3]) + scale(&eye, b[1]);
    let u = a * (u_high + u_low);

    let v_high = &a6 * (scale(&a6, b[12]) + scale(&a4, b[10]) + scale(&a2, b[8]));
    let v = v_high + scale(&a6, b[6]) + scale(&a4, b[4]) + scale(&a2, b[2]) + scale(&eye, b[0]);

    solve_pade(u, v)
}

fn scale(m: &ComplexMatrix, factor: f64) -> ComplexMatrix {
    m.map(|z| z * Complex64::from(factor))
}

/// Solves `(V - U) X = V + U`.
fn solve_pade(u: ComplexMatrix, v: ComplexMatrix) -> Result<ComplexMatrix, MatFunError> {
    let numerator = &v + &u;
    let denominator = v - u;
    denominator
        .lu()
        .solve(&numerator)
        .ok_or(MatFunError::ConvergenceFailure)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Independent oracle: power series of exp(M/2^s) summed to stagnation,
    // then squared s times. The approximation core (truncated Taylor series)
    // shares nothing with the Pade path.
    fn expm_series(m: &ComplexMatrix) -> ComplexMatrix {
        let n = m.nrows();
        let mut squarings = 0u32;
        let mut norm = one_norm(m);
        while norm > 0.5 {
            norm /= 2.0;
            squarings += 1;
        }
        let scaled = m.map(|z| z / Complex64::from(2f64.powi(squarings as i32)));

        let mut sum = DMatrix::<Complex64>::identity(n, n);
        let mut term = DMatrix::<Complex64>::identity(n, n);
        for k in 1..200 {
            term = (&term * &scaled).map(|z| z / Complex64::from(k as f64));
            let before = sum.clone();
            sum += &term;
            if sum == before {
                break;
            }
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }

    #[test]
    fn zero_matrix_maps_to_identity() {
        let m = DMatrix::<Complex64>::zeros(2, 2);
        let e = expm(&m).unwrap();
        assert_eq!(e, DMatrix::<Complex64>::identity(2, 2));
    }

    #[test]
    fn diagonal_matrix_exponentiates_entrywise() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]));
        let e = expm(&m).unwrap();
        assert!((e[(0, 0)] - c(1f64.exp(), 0.0)).norm() < 1e-14);
        assert!((e[(1, 1)] - c(2f64.exp(), 0.0)).norm() < 1e-13);
        assert_eq!(e[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn antidiagonal_imaginary_gives_cos_sin() {
        // exp([[0, j],[j, 0]]) = [[cos 1, j sin 1],[j sin 1, cos 1]]
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let e = expm(&m).unwrap();
        let oracle = expm_series(&m);
        assert!((&e - &oracle).norm() / oracle.norm() < 1e-14);
        assert!((e[(0, 0)] - c(1f64.cos(), 0.0)).norm() < 1e-14);
        assert!((e[(0, 1)] - c(0.0, 1f64.sin())).norm() < 1e-14);
    }

    #[test]
    fn nilpotent_exponential_is_exact_polynomial() {
        // exp of the 3x3 shift matrix: I + N + N^2/2.
        let mut m = DMatrix::<Complex64>::zeros(3, 3);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 2)] = c(1.0, 0.0);
        let e = expm(&m).unwrap();
        assert!((e[(0, 1)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((e[(0, 2)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((e[(2, 0)]).norm() < 1e-15);
    }

    #[test]
    fn matches_series_oracle_across_orders() {
        // Norms chosen to exercise each Pade order and the squaring branch.
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng_state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for target in [0.01, 0.2, 0.8, 1.9, 4.0, 10.0] {
            let raw = DMatrix::from_fn(4, 4, |_, _| c(next(), next()));
            let m = raw.map(|z| z * Complex64::from(target / one_norm(&raw).max(1e-300)));
            let e = expm(&m).unwrap();
            let oracle = expm_series(&m);
            let rel = (&e - &oracle).norm() / oracle.norm();
            assert!(rel < 1e-12, "order target {target}: rel err {rel:e}");
        }
    }

    #[test]
    fn rejects_non_square() {
        let m = DMatrix::<Complex64>::zeros(2, 3);
        assert!(matches!(
            expm(&m),
            Err(MatFunError::DimensionMismatch { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = c(f64::NAN, 0.0);
        assert!(matches!(expm(&m), Err(MatFunError::NonFinite { row: 0, col: 1 })));
    }
}
