//! Jacobi polynomials `P_n^{(a,b)}(x)` with complex parameters, defined
//! through the terminating hypergeometric representation
//!
//! ```text
//! P_n^{(a,b)}(x) = (a+1)_n / n! · ₂F₁(−n, n+a+b+1; a+1; (1−x)/2)
//! ```
//!
//! which is the form the bound-state eigenfunctions take.

use num_complex::Complex;

use super::{gauss_2f1, HypergeometricArgs, Precision};
use crate::num_util::{fl, near_nonpositive_integer};
use crate::{Error, Result, Scalar};

/// Evaluate `P_n^{(a,b)}(x)`.
///
/// Errors with [`Error::GammaPole`] when `a + 1` is a nonpositive integer
/// `−m` with `m < n`: there the prefactor vanishes against a pole of the
/// hypergeometric factor and this representation cannot resolve the finite
/// limit. (`m ≥ n` is fine — the series stops before the pole.)
pub fn jacobi_poly<F: Scalar>(
    n: u32,
    a: Complex<F>,
    b: Complex<F>,
    x: Complex<F>,
) -> Result<Complex<F>> {
    for (name, v) in [("a", a), ("b", b), ("x", x)] {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::InvalidInput(format!(
                "jacobi_poly: argument {name} is not finite"
            )));
        }
    }
    let one = Complex::new(F::one(), F::zero());
    let prec = Precision::<F>::default();
    if let Some(m) = near_nonpositive_integer(a + one, prec.pole_tol) {
        if m < n as u64 {
            return Err(Error::GammaPole { n: m as i64 });
        }
    }
    // (a+1)_n / n! as a product of ratios to avoid overflow for moderate n.
    let mut pref = one;
    for k in 1..=n {
        let kf = Complex::new(fl::<F>(k as f64), F::zero());
        pref = pref * (a + kf) / kf;
    }
    let nf = Complex::new(fl::<F>(n as f64), F::zero());
    let half = Complex::new(fl::<F>(0.5), F::zero());
    let w = (one - x) * half;
    let f = gauss_2f1(HypergeometricArgs::new(-nf, nf + a + b + one, a + one, w))?;
    Ok(pref * f)
}
