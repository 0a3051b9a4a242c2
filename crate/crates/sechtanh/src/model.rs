//! The potential, the energy parametrization, and every derived complex
//! parameter used by the closed-form and numerical solvers.
//!
//! Conventions fixed here (and relied on everywhere else):
//!
//! * All complex square roots use the principal branch, with signed zeros
//!   canonicalized so negative reals resolve to the upper edge of the cut.
//! * `p = √(−E − isA)/λ` with the principal root, so `Re p ≥ 0` always.
//! * `q` is the principal `√(isA − E)/λ` on the [`Branch::ConjK`] branch and
//!   its negative on [`Branch::NegConjK`] — the two consistent labelings of
//!   the transmitted-side asymptotics.
//! * `k = √(E + isA)` (principal), `k′ = conj(k)` or `−conj(k)` per branch.
//!   For `A > 0` on `ConjK` this gives `Re k = Re k′ > 0` and
//!   `Im k = −Im k′ > 0`; for `A < 0` the principal root automatically
//!   exchanges the roles of `k` and `k′`.
//! * The imaginary-part sign `s = −1` (potential `A[sech − i·tanh]`) is
//!   realized by flipping `iA → −iA` in every derived quantity, which is the
//!   same as substituting `z = −i·e^{λx}` in the closed forms.

use num_complex::Complex;

use crate::num_util::principal_sqrt;
use crate::{Error, Result, Scalar};

/// The potential `V(x) = A [sech(λx) + i·s·tanh(λx)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec<F: Scalar> {
    /// Real coupling strength `A` (energy units).
    pub a: F,
    /// Inverse length `λ > 0` (dimensionless in code units).
    pub lambda: F,
    /// Sign of the imaginary part: `+1` for `+i·tanh`, `−1` for `−i·tanh`.
    pub im_sign: i8,
}

impl<F: Scalar> PotentialSpec<F> {
    /// Validated constructor.
    pub fn new(a: F, lambda: F, im_sign: i8) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InvalidInput("coupling A must be finite".into()));
        }
        if !(lambda.is_finite() && lambda > F::zero()) {
            return Err(Error::InvalidInput(
                "lambda must be finite and positive".into(),
            ));
        }
        if im_sign != 1 && im_sign != -1 {
            return Err(Error::InvalidInput("im_sign must be +1 or -1".into()));
        }
        Ok(Self { a, lambda, im_sign })
    }

    /// The imaginary-part sign as a scalar.
    #[inline]
    pub(crate) fn sign(&self) -> F {
        if self.im_sign >= 0 {
            F::one()
        } else {
            -F::one()
        }
    }

    /// Sample the potential at `x`. See [`potential`].
    #[inline]
    pub fn potential(&self, x: F) -> Complex<F> {
        potential(x, self)
    }
}

/// The two consistent sign choices relating the asymptotic wavenumbers
/// `k = √(E + isA)` at `x → −∞` and `k′ = √(E − isA)` at `x → +∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `k′ = conj(k)`.
    ConjK,
    /// `k′ = −conj(k)`.
    NegConjK,
}

impl Branch {
    /// The other branch.
    pub fn flipped(self) -> Self {
        match self {
            Branch::ConjK => Branch::NegConjK,
            Branch::NegConjK => Branch::ConjK,
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::ConjK => write!(f, "conj"),
            Branch::NegConjK => write!(f, "neg-conj"),
        }
    }
}

/// Complex parameters derived from `(E, spec, branch)`.
///
/// Defining relations (enforced to ~1e−13 relative and covered by tests):
///
/// * `p²λ² + E + isA = 0`
/// * `q²λ² + E − isA = 0`
/// * `k² = E + isA`, `k′² = E − isA`, `k′ = ±conj(k)` per branch
/// * `α = p − q`, `β = 2p − α = p + q`, `γ = 2p + 1`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams<F: Scalar> {
    /// Real energy.
    pub e: F,
    /// Asymptotic wavenumber at `x → −∞`.
    pub k: Complex<F>,
    /// Asymptotic wavenumber at `x → +∞`.
    pub kprime: Complex<F>,
    /// Exponent of the incoming-side basis, `Re p ≥ 0`.
    pub p: Complex<F>,
    /// Exponent of the transmitted-side basis; sign depends on the branch.
    pub q: Complex<F>,
    /// Hypergeometric parameter `α = p − q`.
    pub alpha: Complex<F>,
    /// Hypergeometric parameter `β = p + q`.
    pub beta: Complex<F>,
    /// Hypergeometric parameter `γ = 2p + 1`.
    pub gamma: Complex<F>,
    /// Which asymptotic labeling produced `q` and `k′`.
    pub branch: Branch,
    /// Copy of the potential's imaginary-part sign.
    pub im_sign: i8,
    /// Copy of the potential's inverse length.
    pub lambda: F,
}

impl<F: Scalar> DerivedParams<F> {
    /// The imaginary-part sign as a scalar.
    #[inline]
    pub(crate) fn sign(&self) -> F {
        if self.im_sign >= 0 {
            F::one()
        } else {
            -F::one()
        }
    }
}

/// Sample `V(x) = A·sech(λx) + i·s·A·tanh(λx)`.
///
/// Overflow-safe for `|λx|` up to (and well beyond) 700: `sech` underflows
/// gracefully to zero and `tanh` saturates at ±1.
pub fn potential<F: Scalar>(x: F, spec: &PotentialSpec<F>) -> Complex<F> {
    let t = spec.lambda * x;
    // sech(t) = 2 e^{-|t|} / (1 + e^{-2|t|}) avoids overflowing cosh.
    let et = (-t.abs()).exp();
    let sech = (et + et) / (F::one() + et * et);
    Complex::new(spec.a * sech, spec.sign() * spec.a * t.tanh())
}

/// Derive `(k, k′, p, q, α, β, γ)` for a real energy on the chosen branch.
///
/// Errors with [`Error::BranchPoint`] when `E = A = 0`, where the
/// asymptotic wavenumber vanishes and the basis degenerates.
pub fn derive_params<F: Scalar>(
    e: F,
    spec: &PotentialSpec<F>,
    branch: Branch,
) -> Result<DerivedParams<F>> {
    if !e.is_finite() {
        return Err(Error::InvalidInput("E must be finite".into()));
    }
    if e == F::zero() && spec.a == F::zero() {
        return Err(Error::BranchPoint);
    }
    let s = spec.sign();
    let isa = Complex::new(F::zero(), s * spec.a);
    let e_c = Complex::new(e, F::zero());

    let k = principal_sqrt(e_c + isa);
    let kprime = match branch {
        Branch::ConjK => k.conj(),
        Branch::NegConjK => -k.conj(),
    };
    let p = principal_sqrt(-e_c - isa) / spec.lambda;
    let q_principal = principal_sqrt(-e_c + isa) / spec.lambda;
    let q = match branch {
        Branch::ConjK => q_principal,
        Branch::NegConjK => -q_principal,
    };

    let alpha = p - q;
    let beta = p + q;
    let gamma = p + p + Complex::new(F::one(), F::zero());

    Ok(DerivedParams {
        e,
        k,
        kprime,
        p,
        q,
        alpha,
        beta,
        gamma,
        branch,
        im_sign: spec.im_sign,
        lambda: spec.lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn spec(a: f64, lambda: f64, s: i8) -> PotentialSpec<f64> {
        PotentialSpec::new(a, lambda, s).unwrap()
    }

    #[test]
    fn potential_at_origin_is_pure_real_coupling() {
        let v = potential(0.0, &spec(1.0, 1.0, 1));
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn potential_far_right_approaches_imaginary_plateau() {
        let v = potential(50.0, &spec(2.0, 1.0, 1));
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-12);
        let v = potential(50.0, &spec(2.0, 1.0, -1));
        assert!((v - Complex64::new(0.0, -2.0)).norm() < 1e-12);
    }

    #[test]
    fn potential_parity_conjugation_symmetry() {
        let sp = spec(3.0, 2.0, 1);
        let v1 = potential(1.0, &sp);
        let v2 = potential(-1.0, &sp);
        assert!((v2 - v1.conj()).norm() < 1e-14 * (1.0 + v1.norm()));
    }

    #[test]
    fn potential_huge_argument_is_overflow_safe() {
        let v = potential(700.0, &spec(1.0, 1.0, 1));
        assert!(v.is_finite());
        assert!((v.im - 1.0).abs() < 1e-15);
        assert!(v.re.abs() < 1e-300);
    }

    #[test]
    fn free_particle_degeneracy() {
        let d = derive_params(1.0, &spec(0.0, 1.0, 1), Branch::ConjK).unwrap();
        assert!((d.k - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((d.kprime - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((d.p - Complex64::new(0.0, 1.0)).norm() < 1e-15, "p = {}", d.p);
        assert!((d.q - Complex64::new(0.0, 1.0)).norm() < 1e-15, "q = {}", d.q);
    }

    #[test]
    fn principal_root_example_at_zero_energy() {
        // E = 0, A = 1: p = sqrt(-i) = (1 - i)/sqrt(2).
        let d = derive_params(0.0, &spec(1.0, 1.0, 1), Branch::ConjK).unwrap();
        let expect = Complex64::new(1.0, -1.0) / 2.0f64.sqrt();
        assert!((d.p - expect).norm() < 1e-15);
    }

    #[test]
    fn defining_residual_example() {
        let d = derive_params(3.75, &spec(2.0, 1.0, 1), Branch::ConjK).unwrap();
        let r = d.p * d.p + Complex64::new(3.75, 2.0);
        assert!(r.norm() < 1e-13);
    }

    #[test]
    fn branch_point_is_rejected() {
        assert!(matches!(
            derive_params(0.0, &spec(0.0, 1.0, 1), Branch::ConjK),
            Err(Error::BranchPoint)
        ));
    }

    #[test]
    fn conjk_sign_conventions_for_positive_coupling() {
        let d = derive_params(2.0, &spec(1.0, 1.0, 1), Branch::ConjK).unwrap();
        assert!(d.k.re > 0.0 && d.k.im > 0.0);
        assert!(d.kprime.re > 0.0 && d.kprime.im < 0.0);
        assert!((d.k.re - d.kprime.re).abs() < 1e-15);
        assert!((d.k.im + d.kprime.im).abs() < 1e-15);
    }

    #[test]
    fn negative_coupling_exchanges_wavenumber_roles() {
        // For A < 0 the principal root puts Im k < 0 and Im k' > 0,
        // which is exactly the exchanged-role convention.
        let d = derive_params(2.0, &spec(-1.0, 1.0, 1), Branch::ConjK).unwrap();
        assert!(d.k.re > 0.0 && d.k.im < 0.0);
        assert!(d.kprime.re > 0.0 && d.kprime.im > 0.0);
    }

    #[test]
    fn mirrored_imaginary_sign_conjugates_parameters() {
        // s = -1 flips iA -> -iA, so p and q conjugate relative to s = +1
        // (for real E) and the potential mirrors in the imaginary part.
        let dp = derive_params(2.0, &spec(1.0, 1.0, 1), Branch::ConjK).unwrap();
        let dm = derive_params(2.0, &spec(1.0, 1.0, -1), Branch::ConjK).unwrap();
        assert!((dm.p - dp.p.conj()).norm() < 1e-14);
        assert!((dm.q - dp.q.conj()).norm() < 1e-14);
        let sp = spec(1.5, 0.7, -1);
        let v = potential(0.3, &sp);
        let direct = Complex64::new(
            1.5 * (1.0 / (0.7 * 0.3f64).cosh()),
            -1.5 * (0.7 * 0.3f64).tanh(),
        );
        assert!((v - direct).norm() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn derived_params_satisfy_defining_relations(
            e in -20.0f64..20.0,
            a in -5.0f64..5.0,
            lambda in 0.3f64..3.0,
            s in prop::sample::select(vec![1i8, -1]),
            flip in proptest::bool::ANY,
        ) {
            prop_assume!(e != 0.0 || a != 0.0);
            let branch = if flip { Branch::NegConjK } else { Branch::ConjK };
            let sp = spec(a, lambda, s);
            let d = derive_params(e, &sp, branch).unwrap();
            let isa = Complex64::new(0.0, (s as f64) * a);
            let ec = Complex64::new(e, 0.0);
            let scale = 1.0 + ec.norm() + a.abs();
            prop_assert!((d.p * d.p * lambda * lambda + ec + isa).norm() < 1e-13 * scale);
            prop_assert!((d.q * d.q * lambda * lambda + ec - isa).norm() < 1e-13 * scale);
            prop_assert!((d.k * d.k - ec - isa).norm() < 1e-13 * scale);
            prop_assert!((d.kprime * d.kprime - ec + isa).norm() < 1e-13 * scale);
            let expected_kp = match branch {
                Branch::ConjK => d.k.conj(),
                Branch::NegConjK => -d.k.conj(),
            };
            prop_assert!((d.kprime - expected_kp).norm() < 1e-13 * scale.sqrt());
            prop_assert_eq!(d.alpha, d.p - d.q);
            prop_assert_eq!(d.beta, (d.p + d.p) - d.alpha);
            prop_assert_eq!(d.gamma, d.p + d.p + Complex64::new(1.0, 0.0));
            prop_assert!(d.p.re >= 0.0, "principal p must have Re p >= 0, got {}", d.p);
        }

        #[test]
        fn branch_swap_negates_q(
            e in -10.0f64..10.0,
            a in -4.0f64..4.0,
            lambda in 0.4f64..2.5,
        ) {
            prop_assume!(e != 0.0 || a != 0.0);
            let sp = spec(a, lambda, 1);
            let dc = derive_params(e, &sp, Branch::ConjK).unwrap();
            let dn = derive_params(e, &sp, Branch::NegConjK).unwrap();
            prop_assert!((dn.q + dc.q).norm() <= 1e-13 * (1.0 + dc.q.norm()));
            prop_assert_eq!(dn.p, dc.p);
        }

        #[test]
        fn sampled_potential_is_parity_conjugation_symmetric(
            x in -40.0f64..40.0,
            a in -5.0f64..5.0,
            lambda in 0.3f64..3.0,
        ) {
            let sp = spec(a, lambda, 1);
            let v = potential(x, &sp);
            let vr = potential(-x, &sp);
            prop_assert!((vr - v.conj()).norm() / (1.0 + v.norm()) < 1e-14);
        }
    }
}
