//! Adaptive Dormand–Prince 5(4) integration of the second-order equation
//! `ψ″ + (E − V)ψ = 0`, written as a first-order system in `(ψ, ψ′)`.
//!
//! This integrator is the independent numerical oracle the closed-form
//! results are validated against, so it deliberately shares nothing with
//! the special-function code.

use num_complex::Complex;

use crate::model::{potential, PotentialSpec};
use crate::num_util::fl;
use crate::{Error, Result, Scalar};

/// Dense record of one integration: abscissas with `ψ` and `ψ′` at every
/// accepted step (endpoints included).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<F: Scalar> {
    pub x: Vec<F>,
    pub psi: Vec<Complex<F>>,
    pub dpsi: Vec<Complex<F>>,
}

impl<F: Scalar> Trajectory<F> {
    /// Number of stored points.
    pub fn len(&self) -> usize {
        self.x.len()
    }

    /// True when no points are stored.
    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Final `(x, ψ, ψ′)`.
    pub fn last(&self) -> Option<(F, Complex<F>, Complex<F>)> {
        let i = self.x.len().checked_sub(1)?;
        Some((self.x[i], self.psi[i], self.dpsi[i]))
    }
}

/// Nodes of the Dormand–Prince tableau.
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

/// Stage coupling coefficients (row `i` feeds stage `i+2`).
const A: [&[f64]; 6] = [
    &[1.0 / 5.0],
    &[3.0 / 40.0, 9.0 / 40.0],
    &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
    &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
    &[
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
    ],
    &[
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// Fifth-order solution weights.
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

/// Embedded fourth-order weights for the error estimate.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const OVERFLOW_LIMIT: f64 = 1e250;
const MIN_STEP: f64 = 1e-12;
const MAX_STEPS: usize = 4_000_000;

#[inline]
fn axpy<F: Scalar>(y: &[Complex<F>; 2], ks: &[[Complex<F>; 2]], coeffs: &[f64], h: F) -> [Complex<F>; 2] {
    let mut out = *y;
    for (k, &c) in ks.iter().zip(coeffs.iter()) {
        if c == 0.0 {
            continue;
        }
        let ch = fl::<F>(c) * h;
        out[0] = out[0] + k[0] * ch;
        out[1] = out[1] + k[1] * ch;
    }
    out
}

/// Integrate `y′ = rhs(x, y)` from `x0` to `x1` with relative tolerance
/// `rtol`, recording every accepted step.
pub(crate) fn integrate_ode<F, R>(
    rhs: &R,
    x0: F,
    x1: F,
    y0: [Complex<F>; 2],
    rtol: F,
) -> Result<Trajectory<F>>
where
    F: Scalar,
    R: Fn(F, &[Complex<F>; 2]) -> [Complex<F>; 2],
{
    let mut traj = Trajectory {
        x: vec![x0],
        psi: vec![y0[0]],
        dpsi: vec![y0[1]],
    };
    if x0 == x1 {
        return Ok(traj);
    }
    let dir = if x1 > x0 { F::one() } else { -F::one() };
    let span = (x1 - x0).abs();
    let min_step = fl::<F>(MIN_STEP);
    let limit = fl::<F>(OVERFLOW_LIMIT);
    let hundredth = fl::<F>(1e-2);

    let mut x = x0;
    let mut y = y0;
    let mut h = (span * hundredth).min(fl::<F>(0.1)) * dir;

    for _ in 0..MAX_STEPS {
        for c in y {
            if !c.re.is_finite() || !c.im.is_finite() || c.norm() > limit {
                return Err(Error::Overflow {
                    x: x.to_f64().unwrap_or(f64::NAN),
                    limit: OVERFLOW_LIMIT,
                });
            }
        }
        let remaining = x1 - x;
        if remaining.abs() <= min_step {
            return Ok(traj);
        }
        if h.abs() > remaining.abs() {
            h = remaining;
        }
        if h.abs() < min_step {
            return Err(Error::StepUnderflow {
                x: x.to_f64().unwrap_or(f64::NAN),
                min_step: MIN_STEP,
            });
        }

        // The seven stages.
        let mut ks: Vec<[Complex<F>; 2]> = Vec::with_capacity(7);
        ks.push(rhs(x, &y));
        for (i, row) in A.iter().enumerate() {
            let xi = x + fl::<F>(C[i]) * h;
            let yi = axpy(&y, &ks, row, h);
            ks.push(rhs(xi, &yi));
        }
        let y5 = axpy(&y, &ks, &B5, h);
        let y4 = axpy(&y, &ks, &B4, h);

        // Mixed component/vector error scaling.
        let vecnorm =
            y[0].norm() + y[1].norm() + y5[0].norm() + y5[1].norm();
        let mut err = F::zero();
        for i in 0..2 {
            let scale = rtol
                * y[i]
                    .norm()
                    .max(y5[i].norm())
                    .max(hundredth * vecnorm)
                + F::min_positive_value();
            err = err.max((y5[i] - y4[i]).norm() / scale);
        }

        if err <= F::one() {
            x = x + h;
            y = y5;
            traj.x.push(x);
            traj.psi.push(y[0]);
            traj.dpsi.push(y[1]);
        }
        let factor = (fl::<F>(0.9) * err.powf(fl::<F>(-0.2)))
            .max(fl::<F>(0.2))
            .min(fl::<F>(5.0));
        h = h * factor;
    }
    Err(Error::NonConvergent { budget: MAX_STEPS })
}

/// Numerically integrate the wave equation for the potential in `spec` from
/// `(ψ, ψ′) = (psi0, dpsi0)` at `x0` to `x1`.
///
/// `tol` must lie in `[1e-14, 1e-4]` and the span `|x1 − x0|` may not
/// exceed `200/λ`.
pub fn integrate<F: Scalar>(
    spec: &PotentialSpec<F>,
    e: F,
    x0: F,
    x1: F,
    psi0: Complex<F>,
    dpsi0: Complex<F>,
    tol: F,
) -> Result<Trajectory<F>> {
    if !e.is_finite() || !x0.is_finite() || !x1.is_finite() {
        return Err(Error::InvalidInput(
            "integrate: E, x0, x1 must be finite".into(),
        ));
    }
    if tol < fl::<F>(1e-14) || tol > fl::<F>(1e-4) || !tol.is_finite() {
        return Err(Error::InvalidInput(format!(
            "integrate: tol = {tol:e} outside [1e-14, 1e-4]"
        )));
    }
    if (x1 - x0).abs() > fl::<F>(200.0) / spec.lambda {
        return Err(Error::InvalidInput(format!(
            "integrate: span {} exceeds 200/lambda",
            (x1 - x0).abs()
        )));
    }
    let e_c = Complex::new(e, F::zero());
    let rhs = move |x: F, y: &[Complex<F>; 2]| [y[1], (potential(x, spec) - e_c) * y[0]];
    integrate_ode(&rhs, x0, x1, [psi0, dpsi0], tol)
}
