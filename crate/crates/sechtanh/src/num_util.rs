//! Small complex-arithmetic helpers shared across modules.
//!
//! The recurring themes: every multivalued operation uses the principal
//! branch (argument in (−π, π]), and signed zeros are canonicalized first so
//! that values landing exactly on the branch cut resolve deterministically
//! to the upper edge (arg = +π for negative reals).

use num_complex::Complex;

use crate::Scalar;

/// Convert an `f64` literal into the working scalar.
///
/// Panics only if the scalar type cannot represent any `f64` at all, which
/// cannot happen for the supported float types.
#[inline]
pub(crate) fn fl<F: Scalar>(x: f64) -> F {
    F::from_f64(x).expect("f64 literal must convert into the working scalar")
}

/// Build a complex number from `f64` literals.
#[inline]
pub(crate) fn cx<F: Scalar>(re: f64, im: f64) -> Complex<F> {
    Complex::new(fl(re), fl(im))
}

/// Replace `-0.0` components by `+0.0` so that principal-branch functions
/// treat points on the negative real axis as approached from above.
#[inline]
pub(crate) fn canonical_zeros<F: Scalar>(z: Complex<F>) -> Complex<F> {
    let re = if z.re == F::zero() { F::zero() } else { z.re };
    let im = if z.im == F::zero() { F::zero() } else { z.im };
    Complex::new(re, im)
}

/// Principal square root with canonicalized signed zeros.
#[inline]
pub(crate) fn principal_sqrt<F: Scalar>(z: Complex<F>) -> Complex<F> {
    canonical_zeros(z).sqrt()
}

/// Principal power `base^w` that is total at `base = 0`:
/// `0^0 = 1`, `0^w = 0` otherwise. The zero case is only meaningful to
/// callers that have already checked `Re w > 0`.
pub(crate) fn cpow<F: Scalar>(base: Complex<F>, w: Complex<F>) -> Complex<F> {
    let b = canonical_zeros(base);
    if b.re == F::zero() && b.im == F::zero() {
        return if w.re == F::zero() && w.im == F::zero() {
            Complex::new(F::one(), F::zero())
        } else {
            Complex::new(F::zero(), F::zero())
        };
    }
    (w * b.ln()).exp()
}

/// If `z` is within `tol` of a non-positive integer, return that integer
/// (as a non-negative magnitude: `Some(m)` means `z ≈ −m`).
pub(crate) fn near_nonpositive_integer<F: Scalar>(z: Complex<F>, tol: F) -> Option<u64> {
    if z.im.abs() > tol {
        return None;
    }
    let r = z.re.round();
    if (z.re - r).abs() > tol || r > tol {
        return None;
    }
    // r is ~0 or negative; report its magnitude.
    (-r).to_u64()
}

/// Distance from `z` to the nearest integer (of any sign), as a real.
pub(crate) fn distance_to_integer<F: Scalar>(z: Complex<F>) -> F {
    let dr = (z.re - z.re.round()).abs();
    dr.hypot(z.im)
}
