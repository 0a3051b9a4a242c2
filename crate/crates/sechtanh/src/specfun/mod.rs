//! Complex special functions required by the closed-form solver:
//! log-gamma, the Gauss hypergeometric function `₂F₁`, Pochhammer symbols,
//! and Jacobi polynomials.
//!
//! Everything here is implemented from scratch (Lanczos approximation,
//! power series plus the standard connection formulas) because these values
//! are the quantities under test: the rest of the crate cross-validates
//! closed-form physics against an independent ODE integrator, and that check
//! is only meaningful if the special functions carry no shared code with it.

mod gamma;
mod hyp2f1;
mod jacobi;

pub use gamma::log_gamma;
pub use hyp2f1::{gauss_2f1, gauss_2f1_via, gauss_2f1_with, Route};
pub use jacobi::jacobi_poly;

use num_complex::Complex;

use crate::num_util::fl;
use crate::Scalar;

/// Tunable tolerances and budgets for the hypergeometric evaluator.
#[derive(Debug, Clone, Copy)]
pub struct Precision<F: Scalar> {
    /// Relative term-size threshold at which a power series is declared
    /// converged.
    pub series_tol: F,
    /// Maximum number of series terms before giving up.
    pub max_terms: usize,
    /// Distance within which a value counts as a nonpositive integer
    /// (gamma poles, series termination).
    pub pole_tol: F,
    /// Distance within which two connection exponents count as degenerate
    /// (triggering the `DegenerateConnection` error instead of a 0/0).
    pub degenerate_tol: F,
}

impl<F: Scalar> Default for Precision<F> {
    fn default() -> Self {
        let eps = F::epsilon();
        let four = fl::<F>(4.0);
        Precision {
            series_tol: eps * fl::<F>(0.05),
            max_terms: 50_000,
            pole_tol: eps * fl::<F>(1.0e4),
            degenerate_tol: (fl::<F>(1.0e-8)).max(four * eps),
        }
    }
}

/// Argument bundle for [`gauss_2f1`]: `₂F₁(a, b; c; z)`.
#[derive(Debug, Clone, Copy)]
pub struct HypergeometricArgs<F: Scalar> {
    pub a: Complex<F>,
    pub b: Complex<F>,
    pub c: Complex<F>,
    pub z: Complex<F>,
}

impl<F: Scalar> HypergeometricArgs<F> {
    pub fn new(a: Complex<F>, b: Complex<F>, c: Complex<F>, z: Complex<F>) -> Self {
        Self { a, b, c, z }
    }
}

/// Rising factorial `(a)_n = a (a+1) ⋯ (a+n−1)`, with `(a)_0 = 1`.
pub fn pochhammer<F: Scalar>(a: Complex<F>, n: u32) -> Complex<F> {
    let one = Complex::new(F::one(), F::zero());
    let mut prod = one;
    let mut term = a;
    for _ in 0..n {
        prod = prod * term;
        term = term + one;
    }
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn pochhammer_agrees_with_factorial() {
        // (1)_n = n!
        let one = Complex64::new(1.0, 0.0);
        let mut fact = 1.0;
        for n in 0..10u32 {
            if n > 0 {
                fact *= n as f64;
            }
            let p = pochhammer(one, n);
            assert!((p - Complex64::new(fact, 0.0)).norm() < 1e-12 * fact);
        }
    }

    #[test]
    fn pochhammer_terminates_at_zero_for_nonpositive_integer() {
        // (-3)_4 = (-3)(-2)(-1)(0) = 0
        let p = pochhammer(Complex64::new(-3.0, 0.0), 4);
        assert_eq!(p, Complex64::new(0.0, 0.0));
        // (-3)_3 = -6
        let p = pochhammer(Complex64::new(-3.0, 0.0), 3);
        assert!((p - Complex64::new(-6.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn pochhammer_complex_value() {
        // (i)_2 = i(i+1) = -1 + i
        let p = pochhammer(Complex64::new(0.0, 1.0), 2);
        assert!((p - Complex64::new(-1.0, 1.0)).norm() < 1e-15);
    }
}
