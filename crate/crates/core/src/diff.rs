//! Differentiability checks and derivative computation.
//!
//! A function `f(x1 + x2 eps) = u + v eps` is differentiable at a point
//! exactly when the component partials satisfy
//!
//! ```text
//! du/dx2 = 0        and        du/dx1 = dv/dx2
//! ```
//!
//! there, in which case the derivative is `du/dx1 + (dv/dx1) eps`. For
//! expressions evaluated under the lifting rule both equations hold
//! identically, so the derivative comes from the symbolic pass. For raw
//! component pairs the partials are estimated with central differences.
//!
//! The order-restricted variants constrain the increment `x - c` to the
//! quadrants where it is comparable with zero. Both coordinate axes lie in
//! the closure of every such quadrant, so the partial-derivative stencils
//! are shared; what changes is which approach directions the limit-based
//! verifier may sample.

use rand::Rng;

use crate::algebra::DualReal;
use crate::error::{Error, Result};
use crate::function::DualFunction;
use crate::order::OrderKind;
use crate::sample::deleted_ball;

/// How a derivative value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMethod {
    /// Symbolic differentiation of the expression, evaluated under the
    /// lifting rule.
    ExactLifted,
    /// Central finite differences on the component functions.
    FiniteDifference,
}

impl std::fmt::Display for DerivativeMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DerivativeMethod::ExactLifted => "exact lifted",
            DerivativeMethod::FiniteDifference => "finite difference",
        })
    }
}

/// Outcome of a pointwise differentiability check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeReport {
    pub differentiable: bool,
    /// The derivative, present when the check passed.
    pub derivative: Option<DualReal>,
    /// `(|du/dx2|, |du/dx1 - dv/dx2|)`.
    pub cr_residuals: (f64, f64),
    /// Residual bound below which the equations count as satisfied.
    pub tolerance: f64,
    pub method: DerivativeMethod,
    /// Step used by the finite-difference stencils, `0` for the exact path.
    pub step: f64,
    /// Order restriction the report was computed under, if any.
    pub theta: Option<OrderKind>,
}

/// Residual tolerance scaled to the magnitude of the function value.
pub fn cr_tolerance(value_norm: f64) -> f64 {
    1e-6 * (1.0 + value_norm)
}

/// Checks differentiability of `f` at `c` and computes the derivative.
///
/// Expressions take the exact symbolic path; component pairs use central
/// differences with the given `step`.
pub fn derivative_at(f: &DualFunction, c: DualReal, step: f64) -> Result<DerivativeReport> {
    derivative_report(f, c, step, None)
}

/// Order-restricted differentiability check. The numerical content matches
/// [`derivative_at`]; the restriction matters when verifying the limit
/// definition, where approach directions are filtered by comparability.
pub fn type_theta_derivative_at(
    f: &DualFunction,
    c: DualReal,
    theta: OrderKind,
    step: f64,
) -> Result<DerivativeReport> {
    derivative_report(f, c, step, Some(theta))
}

/// Forces the finite-difference path even for expressions. Useful for
/// validating the exact path against an independent estimate.
pub fn finite_difference_derivative_at(
    f: &DualFunction,
    c: DualReal,
    step: f64,
) -> Result<DerivativeReport> {
    finite_difference_report(f, c, step, None)
}

fn derivative_report(
    f: &DualFunction,
    c: DualReal,
    step: f64,
    theta: Option<OrderKind>,
) -> Result<DerivativeReport> {
    match f {
        DualFunction::Ast(e) => {
            let derivative = e.derivative().eval_lifted(c)?;
            let tolerance = cr_tolerance(e.eval_lifted(c)?.norm());
            Ok(DerivativeReport {
                differentiable: true,
                derivative: Some(derivative),
                cr_residuals: (0.0, 0.0),
                tolerance,
                method: DerivativeMethod::ExactLifted,
                step: 0.0,
                theta,
            })
        }
        DualFunction::Components(_) => finite_difference_report(f, c, step, theta),
    }
}

fn finite_difference_report(
    f: &DualFunction,
    c: DualReal,
    step: f64,
    theta: Option<OrderKind>,
) -> Result<DerivativeReport> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidArgument {
            message: format!("finite-difference step must be positive, got {step}"),
        });
    }
    let px = f.eval(DualReal::new(c.re() + step, c.ze())?)?;
    let mx = f.eval(DualReal::new(c.re() - step, c.ze())?)?;
    let pz = f.eval(DualReal::new(c.re(), c.ze() + step)?)?;
    let mz = f.eval(DualReal::new(c.re(), c.ze() - step)?)?;
    let u_x1 = (px.re() - mx.re()) / (2.0 * step);
    let v_x1 = (px.ze() - mx.ze()) / (2.0 * step);
    let u_x2 = (pz.re() - mz.re()) / (2.0 * step);
    let v_x2 = (pz.ze() - mz.ze()) / (2.0 * step);
    for v in [u_x1, v_x1, u_x2, v_x2] {
        if !v.is_finite() {
            return Err(Error::NonFinite { context: "finite-difference stencil" });
        }
    }
    let cr_residuals = (u_x2.abs(), (u_x1 - v_x2).abs());
    let tolerance = cr_tolerance(f.eval(c)?.norm());
    let differentiable = cr_residuals.0 <= tolerance && cr_residuals.1 <= tolerance;
    Ok(DerivativeReport {
        differentiable,
        derivative: if differentiable {
            Some(DualReal::new(u_x1, v_x1)?)
        } else {
            None
        },
        cr_residuals,
        tolerance,
        method: DerivativeMethod::FiniteDifference,
        step,
        theta,
    })
}

/// Outcome of sampling the limit definition of the derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitCheck {
    /// Worst sampled `|quotient - candidate| / eps`.
    pub worst_ratio: f64,
    /// Whether every sampled quotient stayed within `eps`.
    pub pass: bool,
    /// Quotients actually evaluated.
    pub samples: usize,
    /// Increments discarded for not being invertible.
    pub skipped: usize,
}

/// Samples difference quotients `(f(x) - f(c)) (x - c)^-1` on the deleted
/// ball of radius `delta` around `c` and compares them against `candidate`.
/// With a `theta` only increments comparable with zero in that order are
/// drawn, which is the order-restricted notion of the derivative limit.
#[allow(clippy::too_many_arguments)]
pub fn verify_limit_definition<R: Rng + ?Sized>(
    f: &DualFunction,
    c: DualReal,
    candidate: DualReal,
    eps: f64,
    delta: f64,
    samples: usize,
    theta: Option<OrderKind>,
    rng: &mut R,
) -> Result<LimitCheck> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InvalidArgument {
            message: format!("limit tolerance must be positive, got {eps}"),
        });
    }
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::InvalidArgument {
            message: format!("limit radius must be positive, got {delta}"),
        });
    }
    if samples == 0 {
        return Err(Error::InvalidArgument {
            message: "limit check needs at least one sample".into(),
        });
    }
    let fc = f.eval(c)?;
    let mut worst = 0.0f64;
    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    for _ in 0..samples {
        let x = deleted_ball(rng, c, delta, theta)?;
        let d = x.sub(c)?;
        let inv = match d.inverse() {
            Ok(inv) => inv,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        let quotient = f.eval(x)?.sub(fc)?.mul(inv)?;
        worst = worst.max(quotient.sub(candidate)?.norm());
        evaluated += 1;
    }
    Ok(LimitCheck {
        worst_ratio: worst / eps,
        pass: worst <= eps,
        samples: evaluated,
        skipped,
    })
}
