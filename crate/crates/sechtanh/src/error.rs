//! Error types shared by every module of the crate.
//!
//! All numerical routines return [`Result`]; panics are reserved for
//! internal logic errors (violated invariants), never for user input.

use num_complex::Complex64;
use thiserror::Error;

/// Unified error type for the solver suite.
///
/// Payloads are stored at `f64` precision regardless of the working scalar
/// type: they are diagnostics, not data to compute with.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The Gamma function was evaluated at a non-positive integer.
    /// `n` is the integer that was hit (0, -1, -2, ...).
    #[error("gamma pole: argument is the non-positive integer {n}")]
    GammaPole { n: i64 },

    /// A hypergeometric connection formula degenerates because a parameter
    /// combination is too close to an integer, where the two terms of the
    /// connection collide. Limit formulas are deliberately not implemented;
    /// callers should perturb the parameters instead.
    #[error("degenerate hypergeometric connection: {what} = {value} is within {tol:e} of an integer")]
    DegenerateConnection {
        what: &'static str,
        value: Complex64,
        tol: f64,
    },

    /// A series or iteration failed to reach the requested tolerance
    /// within its term/step budget.
    #[error("failed to converge within {budget} terms/steps")]
    NonConvergent { budget: usize },

    /// The asymptotic wavenumber vanishes (E + iA = 0), so the square-root
    /// parametrization has a branch point and no scattering basis exists.
    #[error("branch point: E and A place the asymptotic wavenumber at zero")]
    BranchPoint,

    /// Level indices start at 1; the closed-form energy divides by n.
    #[error("invalid level index {n}: level indices start at 1")]
    InvalidLevel { n: u32 },

    /// Evaluation requested outside the supported domain (e.g. |λx| too
    /// large for exponential prefactors to be representable).
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition on user-supplied input was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The adaptive integrator's step collapsed, signalling stiffness or
    /// blow-up of the solution.
    #[error("integration step collapsed below {min_step:e} near x = {x}")]
    StepUnderflow { x: f64, min_step: f64 },

    /// The integrated solution exceeded the overflow guard; the caller
    /// must renormalize or shrink the integration window.
    #[error("solution magnitude exceeded {limit:e} near x = {x}")]
    Overflow { x: f64, limit: f64 },

    /// The 2x2 plane-wave decomposition is numerically singular.
    #[error("asymptotic fit ill-conditioned: |det| = {det:e}")]
    IllConditioned { det: f64 },

    /// Matching two numerically integrated solution pairs at the join
    /// point failed (singular system or inconsistent re-match).
    #[error("solution matching failed: {0}")]
    MatchFailure(String),

    /// No exponentially decaying asymptotic mode exists on the named side
    /// at this energy, so no bound state is possible there.
    #[error("no decaying asymptotic mode on the {side} side at E = {energy}")]
    NoDecayingMode { side: &'static str, energy: f64 },

    /// The exponential-tail recurrence for asymptotic initial data hit a
    /// (near-)resonant denominator at the given order.
    #[error("exponential-tail recurrence is resonant at order {order}")]
    TailResonance { order: usize },

    /// An output destination could not be written.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
