//! Exact and numerical solvers for the one-dimensional Schrödinger equation
//!
//! ```text
//!     ψ''(x) + [E − V(x)] ψ(x) = 0,      V(x) = A [sech(λx) + i·s·tanh(λx)],
//! ```
//!
//! with real coupling `A`, inverse length `λ > 0`, and imaginary-part sign
//! `s = ±1`. For `s = +1` the potential satisfies `V(−x) = conj(V(x))`
//! (parity–conjugation symmetry). Because the imaginary part does not vanish
//! at infinity, the asymptotic wavenumbers on the two sides differ, and the
//! reflection coefficients depend on the direction of incidence.
//!
//! The crate provides two independent solution paths and the machinery to
//! cross-validate them:
//!
//! * [`model`] — the potential, the energy parametrization, the two
//!   consistent asymptotic branch choices `k′ = ±conj(k)`, and all derived
//!   complex parameters.
//! * [`specfun`] — complex log-Gamma, the Gauss hypergeometric function on
//!   the complex plane with analytic continuation, Pochhammer symbols, and
//!   Jacobi polynomials with complex parameters.
//! * [`analytic`] — closed-form wavefunctions, asymptotic amplitudes, and
//!   transmission/reflection coefficients in both branches.
//! * [`bound`] — closed-form candidate bound levels, their eigenfunction
//!   forms, admissibility on the real line, and the pole scan of `1/T`.
//! * [`oracle`] — an adaptive Runge–Kutta integrator for the complex ODE,
//!   transfer-matrix amplitude extraction, and a shooting-method eigenvalue
//!   search; everything here is independent of the closed forms.
//! * [`cli`] — a thin command-line front end emitting JSON/CSV records.
//!
//! Core numerics are generic over the floating scalar through [`Scalar`];
//! concrete `f64` aliases are exported at the crate root.

pub mod analytic;
pub mod bound;
pub mod cli;
pub mod error;
pub mod model;
pub mod oracle;
pub mod specfun;

pub(crate) mod num_util;

use std::fmt;

use num_complex::Complex;
use num_traits::float::FloatConst;
use num_traits::{Float, FromPrimitive, ToPrimitive};

pub use error::{Error, Result};

/// Floating scalar the numerics are generic over.
///
/// This is a trait alias: any type with the listed capabilities (notably
/// `f32` and `f64`) gets a blanket implementation. Coefficient tables are
/// stored as `f64` constants and converted on use, which is exact for the
/// built-in float types.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + fmt::Debug
        + fmt::Display
        + fmt::LowerExp
        + Send
        + Sync
        + 'static
{
}

/// Complex number over the default `f64` scalar.
pub type Cx64 = Complex<f64>;
/// Potential specification over `f64`.
pub type PotentialSpec64 = model::PotentialSpec<f64>;
/// Derived scattering parameters over `f64`.
pub type DerivedParams64 = model::DerivedParams<f64>;
/// Scattering coefficient set over `f64`.
pub type ScatteringData64 = analytic::ScatteringData<f64>;
/// Asymptotic amplitude set over `f64`.
pub type AsymptoticAmplitudes64 = analytic::AsymptoticAmplitudes<f64>;
/// Bound-state record over `f64`.
// TEMP-STUB pub type BoundState64 = bound::BoundState<f64>;
/// Integration trajectory over `f64`.
pub type Trajectory64 = oracle::Trajectory<f64>;
/// Special-function precision context over `f64`.
pub type Precision64 = specfun::Precision<f64>;
