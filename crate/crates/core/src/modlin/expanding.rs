use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::matrix::{big_to_f64, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    Expanding,
    NotExpanding,
    /// Some eigenvalue modulus lies within `tol` of 1.
    Marginal,
}

pub const DEFAULT_EXPANSION_TOL: f64 = 1e-9;

/// Characteristic polynomial `det(tI - M)`, coefficients from the constant
/// term up (Faddeev-LeVerrier, exact).
pub fn characteristic_polynomial(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.dim();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = IntMatrix::scalar(n, BigInt::zero());
    for k in 1..=n {
        aux = m.mul(&aux);
        let shift = IntMatrix::scalar(n, coeffs[n - k + 1].clone());
        aux = IntMatrix::new(n, aux.entries().iter().zip(shift.entries()).map(|(a, b)| a + b).collect())
            .expect("square");
        let prod = m.mul(&aux);
        let trace: BigInt = (0..n).map(|i| prod.get(i, i).clone()).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    coeffs
}

/// Complex roots of a monic polynomial (coefficients constant-first) by
/// Durand-Kerner iteration.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
    let radius = 1.0 + coeffs[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let zi = roots[i];
            let denom = (0..deg).filter(|&j| j != i).fold(Complex64::one(), |acc, j| acc * (zi - roots[j]));
            if denom.norm() == 0.0 {
                roots[i] = zi + Complex64::new(1e-6, 1e-6);
                moved = f64::INFINITY;
                continue;
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    roots
}

pub fn eigenvalue_moduli(m: &IntMatrix) -> Vec<f64> {
    let coeffs: Vec<f64> = characteristic_polynomial(m).iter().map(big_to_f64).collect();
    polynomial_roots(&coeffs).into_iter().map(|z| z.norm()).collect()
}

/// Classifies `M` by its smallest eigenvalue modulus against `1 ± tol`.
pub fn is_expanding(m: &IntMatrix, tol: f64) -> Expansion {
    let min = eigenvalue_moduli(m).into_iter().fold(f64::INFINITY, f64::min);
    if min > 1.0 + tol {
        Expansion::Expanding
    } else if min < 1.0 - tol {
        Expansion::NotExpanding
    } else {
        Expansion::Marginal
    }
}
