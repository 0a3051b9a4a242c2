//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for complex parameters
//! and argument, on the principal branch (cut along `[1, ∞)`).
//!
//! Strategy: terminating cases are summed exactly; otherwise the argument is
//! mapped into a disc of radius 0.8 by one of the standard connection
//! formulas (Pfaff `z → z/(z−1)`, `z → 1−z`, `z → 1/z`) and the power series
//! is summed there. The `z → 1−z` and `z → 1/z` connections degenerate when
//! `c−a−b` (respectively `a−b`) is an integer; those inputs are rejected
//! with [`Error::DegenerateConnection`] rather than evaluated by a
//! cancellation-prone limit. A thin arc of the unit circle is covered by no
//! absolutely-convergent route; inputs there fail with
//! [`Error::NonConvergent`] after the term budget is spent.

use num_complex::{Complex, Complex64};

use super::{gamma::log_gamma, HypergeometricArgs, Precision};
use crate::num_util::{cpow, distance_to_integer, fl, near_nonpositive_integer};
use crate::{Error, Result, Scalar};

/// The evaluation strategies used by the dispatcher, exposed so tests can
/// force a specific route and compare overlapping regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Direct power series in `z`.
    Series,
    /// Pfaff transformation, series in `z/(z−1)`.
    Pfaff,
    /// Connection formula with series in `1−z`.
    OneMinusZ,
    /// Connection formula with series in `1/z`.
    InverseZ,
}

/// Evaluate `₂F₁(a, b; c; z)` with default [`Precision`].
pub fn gauss_2f1<F: Scalar>(args: HypergeometricArgs<F>) -> Result<Complex<F>> {
    gauss_2f1_with(args, &Precision::default())
}

/// Evaluate `₂F₁(a, b; c; z)` with explicit tolerances.
pub fn gauss_2f1_with<F: Scalar>(
    args: HypergeometricArgs<F>,
    prec: &Precision<F>,
) -> Result<Complex<F>> {
    let HypergeometricArgs { a, b, c, z } = args;
    for (name, v) in [("a", a), ("b", b), ("c", c), ("z", z)] {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::InvalidInput(format!(
                "gauss_2f1: argument {name} is not finite"
            )));
        }
    }
    let zero = Complex::new(F::zero(), F::zero());
    let one = Complex::new(F::one(), F::zero());
    if z == zero {
        return Ok(one);
    }
    if let Some(r) = try_terminating(a, b, c, z, prec) {
        return r;
    }

    let r08 = fl::<F>(0.8);
    let az = z.norm();
    if az <= r08 {
        return route_series(a, b, c, z, prec);
    }
    if (z / (z - one)).norm() <= r08 {
        return route_pfaff(a, b, c, z, prec);
    }
    if (one - z).norm() <= r08 {
        return route_one_minus_z(a, b, c, z, prec);
    }
    if az >= fl::<F>(1.25) {
        return route_inverse_z(a, b, c, z, prec);
    }
    // Remaining ring 0.8 < |z| < 1.25 outside every preferred region: fall
    // back to whichever series still converges, however slowly.
    if az < F::one() {
        return route_series(a, b, c, z, prec);
    }
    if az > F::one() {
        return route_inverse_z(a, b, c, z, prec);
    }
    Err(Error::NonConvergent {
        budget: prec.max_terms,
    })
}

/// Evaluate through one specific [`Route`], bypassing region dispatch.
///
/// Intended for cross-checking routes against each other where their
/// convergence regions overlap. The terminating shortcut still applies to
/// the inner series.
pub fn gauss_2f1_via<F: Scalar>(
    route: Route,
    args: HypergeometricArgs<F>,
    prec: &Precision<F>,
) -> Result<Complex<F>> {
    let HypergeometricArgs { a, b, c, z } = args;
    match route {
        Route::Series => route_series(a, b, c, z, prec),
        Route::Pfaff => route_pfaff(a, b, c, z, prec),
        Route::OneMinusZ => route_one_minus_z(a, b, c, z, prec),
        Route::InverseZ => route_inverse_z(a, b, c, z, prec),
    }
}

/// Detect a terminating series (`a` or `b` within `pole_tol` of a
/// nonpositive integer) and sum it exactly. Returns `None` when the series
/// does not terminate and `c` is pole-free, so the caller may proceed.
fn try_terminating<F: Scalar>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
    z: Complex<F>,
    prec: &Precision<F>,
) -> Option<Result<Complex<F>>> {
    let na = near_nonpositive_integer(a, prec.pole_tol);
    let nb = near_nonpositive_integer(b, prec.pole_tol);
    let nc = near_nonpositive_integer(c, prec.pole_tol);
    let n_eff = match (na, nb) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => {
            // Non-terminating: a lower-parameter pole is fatal.
            if let Some(mc) = nc {
                return Some(Err(Error::GammaPole { n: mc as i64 }));
            }
            return None;
        }
    };
    // A nonpositive-integer c is tolerable only if the series stops before
    // reaching the zero factor `c + m_c`.
    if let Some(mc) = nc {
        if n_eff > mc {
            return Some(Err(Error::GammaPole { n: mc as i64 }));
        }
    }
    if n_eff > prec.max_terms as u64 {
        return Some(Err(Error::NonConvergent {
            budget: prec.max_terms,
        }));
    }
    Some(Ok(terminating_sum(a, b, c, z, n_eff)))
}

/// Exact polynomial sum of the first `n_eff + 1` series terms.
fn terminating_sum<F: Scalar>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
    z: Complex<F>,
    n_eff: u64,
) -> Complex<F> {
    let zero = Complex::new(F::zero(), F::zero());
    let one = Complex::new(F::one(), F::zero());
    let mut sum = one;
    let mut term = one;
    for m in 0..n_eff {
        let mf = Complex::new(fl::<F>(m as f64), F::zero());
        let num = (a + mf) * (b + mf) * z;
        if num == zero {
            // An exactly-zero upper factor kills every later term; breaking
            // here avoids multiplying 0 into a (possibly zero) denominator.
            break;
        }
        let den = (c + mf) * (mf + one);
        term = term * num / den;
        sum = sum + term;
    }
    sum
}

/// Power series inside the unit disc, with a two-consecutive-small-terms
/// stopping rule.
fn power_series<F: Scalar>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
    w: Complex<F>,
    prec: &Precision<F>,
) -> Result<Complex<F>> {
    if w.norm() >= F::one() {
        return Err(Error::NonConvergent {
            budget: prec.max_terms,
        });
    }
    let zero = Complex::new(F::zero(), F::zero());
    let one = Complex::new(F::one(), F::zero());
    let mut sum = one;
    let mut term = one;
    let mut streak = 0u32;
    for m in 0..prec.max_terms {
        let mf = Complex::new(fl::<F>(m as f64), F::zero());
        let num = (a + mf) * (b + mf) * w;
        if num == zero {
            return Ok(sum);
        }
        let den = (c + mf) * (mf + one);
        term = term * num / den;
        sum = sum + term;
        let scale = {
            let s = sum.norm();
            if s > F::zero() {
                s
            } else {
                F::one()
            }
        };
        if term.norm() <= prec.series_tol * scale {
            streak += 1;
            if streak >= 2 {
                return Ok(sum);
            }
        } else {
            streak = 0;
        }
    }
    Err(Error::NonConvergent {
        budget: prec.max_terms,
    })
}

/// Inner evaluation used by every route: terminate, reject a `c` pole, or
/// sum the series in the (already mapped) argument `w`.
fn eval_series_region<F: Scalar>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
    w: Complex<F>,
    prec: &Precision<F>,
) -> Result<Complex<F>> {
    let zero = Complex::new(F::zero(), F::zero());
    let one = Complex::new(F::one(), F::zero());
    if w == zero {
        return Ok(one);
    }
    if let Some(r) = try_terminating(a, b, c, w, prec) {
        return r;
    }
    power_series(a, b, c, w, prec)
}

fn route_series<F: Scalar>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
    z: Complex<F>,
    prec: &Precision<F>,
) -> Result<Complex<F>> {
    eval_series_region(a, b, c, z, prec)
}

fn route_pfaff<F: Scalar>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
    z: Complex<F>,
    prec: &Precision<F>,
) -> Result<Complex<F>> {
    let one = Complex::new(F::one(), F::zero());
    let w = z / (z - one);
    let pf = cpow(one - z, -a);
    Ok(pf * eval_series_region(a, c - b, c, w, prec)?)
}

/// Either a finite connection-term coefficient or an exact zero from a
/// gamma pole in the denominator.
enum Pref<F: Scalar> {
    Finite(Complex<F>),
    Zero,
}

/// `Π Γ(num_i) / Π Γ(den_j)` through log-gamma. A pole in a denominator
/// makes the whole term vanish; a pole in a numerator is a degeneracy the
/// caller should have screened out, so it propagates as an error.
fn gamma_prefactor<F: Scalar>(num: &[Complex<F>], den: &[Complex<F>]) -> Result<Pref<F>> {
    let mut acc = Complex::new(F::zero(), F::zero());
    for &d in den {
        match log_gamma(d) {
            Ok(lg) => acc = acc - lg,
            Err(Error::GammaPole { .. }) => return Ok(Pref::Zero),
            Err(e) => return Err(e),
        }
    }
    for &n in num {
        acc = acc + log_gamma(n)?;
    }
    Ok(Pref::Finite(acc.exp()))
}

fn to_c64<F: Scalar>(z: Complex<F>) -> Complex64 {
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

fn route_one_minus_z<F: Scalar>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
    z: Complex<F>,
    prec: &Precision<F>,
) -> Result<Complex<F>> {
    let zero = Complex::new(F::zero(), F::zero());
    let one = Complex::new(F::one(), F::zero());
    let w = one - z;
    let e = c - a - b;
    if distance_to_integer(e) < prec.degenerate_tol {
        return Err(Error::DegenerateConnection {
            what: "c-a-b",
            value: to_c64(e),
            tol: prec.degenerate_tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    if w == zero && e.re <= F::zero() {
        // At z = 1 the function itself diverges when Re(c−a−b) ≤ 0.
        return Err(Error::NonConvergent {
            budget: prec.max_terms,
        });
    }
    let mut total = zero;
    if let Pref::Finite(p1) = gamma_prefactor(&[c, e], &[c - a, c - b])? {
        total = total + p1 * eval_series_region(a, b, a + b - c + one, w, prec)?;
    }
    let w_pow = cpow(w, e);
    if w_pow != zero {
        if let Pref::Finite(p2) = gamma_prefactor(&[c, -e], &[a, b])? {
            total = total + w_pow * p2 * eval_series_region(c - a, c - b, e + one, w, prec)?;
        }
    }
    Ok(total)
}

fn route_inverse_z<F: Scalar>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
    z: Complex<F>,
    prec: &Precision<F>,
) -> Result<Complex<F>> {
    let zero = Complex::new(F::zero(), F::zero());
    let one = Complex::new(F::one(), F::zero());
    let d = a - b;
    if distance_to_integer(d) < prec.degenerate_tol {
        return Err(Error::DegenerateConnection {
            what: "a-b",
            value: to_c64(d),
            tol: prec.degenerate_tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    let w = one / z;
    let mut total = zero;
    if let Pref::Finite(p1) = gamma_prefactor(&[c, b - a], &[b, c - a])? {
        let f1 = eval_series_region(a, a - c + one, a - b + one, w, prec)?;
        total = total + cpow(-z, -a) * p1 * f1;
    }
    if let Pref::Finite(p2) = gamma_prefactor(&[c, a - b], &[a, c - b])? {
        let f2 = eval_series_region(b, b - c + one, b - a + one, w, prec)?;
        total = total + cpow(-z, -b) * p2 * f2;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f21(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Result<Complex64> {
        gauss_2f1(HypergeometricArgs::new(a, b, cc, z))
    }

    #[test]
    fn value_at_zero_is_one() {
        let v = f21(c(0.3, 1.0), c(-2.5, 0.1), c(0.9, -0.4), c(0.0, 0.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn logarithm_identity_small_and_pfaff_arguments() {
        // F(1,1;2;z) = -ln(1-z)/z
        for z in [c(0.5, 0.0), c(-0.7, 0.2), c(0.0, 0.9), c(-3.0, 0.0)] {
            let got = f21(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), z).unwrap();
            let want = -(c(1.0, 0.0) - z).ln() / z;
            assert!(
                (got - want).norm() < 1e-13 * (1.0 + want.norm()),
                "z = {z}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn binomial_identity_across_all_routes() {
        // F(a,b;b;z) = (1-z)^{-a}, any z off the cut.
        let a = c(0.3, -0.4);
        let b = c(1.3, 0.7);
        for z in [
            c(0.5, 0.0),
            c(0.0, 3.0),
            c(-12.0, 0.0),
            c(1.2, 0.4),
            c(-0.3, 0.71),
        ] {
            let got = f21(a, b, b, z).unwrap();
            let want = cpow(c(1.0, 0.0) - z, -a);
            assert!(
                (got - want).norm() < 1e-11 * (1.0 + want.norm()),
                "z = {z}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn unit_argument_matches_gamma_closed_form() {
        // F(a,b;c;1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)) when Re(c−a−b) > 0.
        let a = c(0.3, 0.2);
        let b = c(0.4, -0.1);
        let cc = c(2.1, 0.0);
        let got = f21(a, b, cc, c(1.0, 0.0)).unwrap();
        let lg = |w: Complex64| log_gamma(w).unwrap();
        let want = (lg(cc) + lg(cc - a - b) - lg(cc - a) - lg(cc - b)).exp();
        assert!(
            (got - want).norm() < 1e-12 * want.norm(),
            "got {got}, want {want}"
        );
    }

    #[test]
    fn degree_two_polynomial_is_exact() {
        let b = c(0.7, 1.1);
        let cc = c(1.9, -0.3);
        let z = c(13.7, -2.0);
        let got = f21(c(-2.0, 0.0), b, cc, z).unwrap();
        let want = c(1.0, 0.0) - 2.0 * b * z / cc + b * (b + 1.0) * z * z / (cc * (cc + 1.0));
        assert!((got - want).norm() < 1e-13 * (1.0 + want.norm()));
    }

    #[test]
    fn termination_respects_lower_parameter_poles() {
        // Terminates at degree 2 before c = -3 bites.
        assert!(f21(c(-2.0, 0.0), c(1.3, 0.0), c(-3.0, 0.0), c(0.7, 0.0)).is_ok());
        // Would need 4 terms, but c = -3 kills the denominator first.
        match f21(c(-4.0, 0.0), c(1.3, 0.0), c(-3.0, 0.0), c(0.7, 0.0)) {
            Err(Error::GammaPole { n }) => assert_eq!(n, 3),
            other => panic!("expected pole, got {other:?}"),
        }
        // Zero upper parameter makes F identically 1, even with c = -3.
        let v = f21(c(-3.0, 0.0), c(0.0, 0.0), c(-3.0, 0.0), c(0.4, 0.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn nonterminating_lower_pole_is_an_error() {
        match f21(c(0.4, 0.1), c(1.3, 0.0), c(-2.0, 0.0), c(0.3, 0.0)) {
            Err(Error::GammaPole { n }) => assert_eq!(n, 2),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn overlapping_routes_agree() {
        let a = c(0.31, 0.42);
        let b = c(0.77, -0.18);
        let cc = c(1.16, 0.05);
        let prec = Precision::<f64>::default();
        let th = 145.0f64.to_radians();
        let pairs: [(Complex64, Route, Route); 4] = [
            (0.7 * c(th.cos(), th.sin()), Route::Series, Route::Pfaff),
            (c(0.5, 0.55), Route::Series, Route::OneMinusZ),
            (c(-4.0, 0.0), Route::Pfaff, Route::InverseZ),
            (c(1.25, 0.45), Route::OneMinusZ, Route::InverseZ),
        ];
        for (z, r1, r2) in pairs {
            let v1 = gauss_2f1_via(r1, HypergeometricArgs::new(a, b, cc, z), &prec).unwrap();
            let v2 = gauss_2f1_via(r2, HypergeometricArgs::new(a, b, cc, z), &prec).unwrap();
            assert!(
                (v1 - v2).norm() < 1e-9 * (1.0 + v1.norm()),
                "z = {z}: {r1:?} gives {v1}, {r2:?} gives {v2}"
            );
        }
    }

    #[test]
    fn integer_exponent_degeneracies_are_rejected() {
        // c - a - b exactly integer near z = 1.
        let a = c(0.4, 0.3);
        let b = c(0.9, -0.3);
        let cc = a + b + 1.0;
        match f21(a, b, cc, c(1.1, 0.3)) {
            Err(Error::DegenerateConnection { what, .. }) => assert_eq!(what, "c-a-b"),
            other => panic!("expected degenerate connection, got {other:?}"),
        }
        // a - b exactly integer at large |z|.
        let a = c(0.5, 0.3);
        let b = a - 2.0;
        match f21(a, b, c(1.7, 0.0), c(-6.0, 0.0)) {
            Err(Error::DegenerateConnection { what, .. }) => assert_eq!(what, "a-b"),
            other => panic!("expected degenerate connection, got {other:?}"),
        }
    }

    #[test]
    fn unit_circle_gap_reports_nonconvergence() {
        let th = 60.0f64.to_radians();
        let z = c(th.cos(), th.sin());
        match f21(c(0.5, 0.2), c(0.7, -0.1), c(0.3, 0.0), z) {
            Err(Error::NonConvergent { .. }) => {}
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn euler_transformation_holds(
            are in -3.0f64..3.0, aim in -3.0f64..3.0,
            bre in -3.0f64..3.0, bim in -3.0f64..3.0,
            cre in -3.0f64..3.0, cim in -3.0f64..3.0,
            zre in -0.49f64..0.49, zim in -0.49f64..0.49,
        ) {
            let a = c(are, aim);
            let b = c(bre, bim);
            let cc = c(cre, cim);
            let z = c(zre, zim);
            for v in [a, b, cc, cc - a, cc - b] {
                prop_assume!(near_nonpositive_integer(v, 1e-6).is_none());
            }
            // F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z)
            let lhs = f21(a, b, cc, z).unwrap();
            let rhs = cpow(c(1.0, 0.0) - z, cc - a - b) * f21(cc - a, cc - b, cc, z).unwrap();
            prop_assert!(
                (lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm().max(rhs.norm())),
                "a={} b={} c={} z={}: lhs={}, rhs={}", a, b, cc, z, lhs, rhs
            );
        }
    }
}
