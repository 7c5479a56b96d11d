//! Calculus over the dual real numbers.
//!
//! The dual reals adjoin to the reals an element `eps` with `eps^2 = 0`.
//! Numbers `x1 + x2 eps` form a commutative ring with a norm but without
//! total order or full division: elements with zero real part square to
//! zero and cannot be inverted. This crate implements the pieces of
//! calculus that survive, and the two order relations that replace the
//! total order:
//!
//! * [`algebra`]: normed arithmetic on [`DualReal`], classification into
//!   zero, zero-divisors, and invertible elements, literal parsing.
//! * [`order`]: the two partial orders, comparability, typed intervals
//!   (order intervals realized as rectangles), and norm neighborhoods.
//! * [`function`]: an expression language in one dual variable, evaluated
//!   under the analytic lifting rule, plus raw component-pair functions.
//! * [`diff`]: differentiability via the component partial-derivative
//!   equations, exact and finite-difference derivatives, and sampled
//!   verification of the limit definition.
//! * [`integrate`]: order-directed Darboux sums over typed intervals,
//!   bracketing integral estimates, integrability checks, and verifiers
//!   for linearity, additivity, monotonicity, and both directions of the
//!   fundamental theorem.
//! * [`bounds`]: certified interval enclosures of expression ranges,
//!   backing the refinement-monotone extrema method.
//!
//! ```
//! use dualcalc::{DualFunction, DualReal, IntegrateOptions, OrderKind, TypedInterval};
//!
//! let f = DualFunction::parse("x^2")?;
//! let x = DualReal::new(1.0, 1.0)?;
//! assert_eq!(f.eval(x)?, DualReal::new(1.0, 2.0)?);
//!
//! let interval = TypedInterval::new(DualReal::ZERO, x, OrderKind::Type1)?;
//! let options = IntegrateOptions { tol: 1e-2, ..IntegrateOptions::default() };
//! let estimate = dualcalc::estimate_integral(&f, &interval, &options)?;
//! let value = estimate.value();
//! assert!((value.re() - 1.0 / 3.0).abs() < 1e-2);
//! assert!((value.ze() - 1.0).abs() < 1e-2);
//! # Ok::<(), dualcalc::Error>(())
//! ```

pub mod algebra;
pub mod bounds;
pub mod diff;
pub mod error;
pub mod function;
pub mod integrate;
pub mod order;
mod sample;

pub use algebra::{AlgebraClass, DualReal};
pub use bounds::{envelope, DualBounds, Interval};
pub use diff::{
    cr_tolerance, derivative_at, finite_difference_derivative_at,
    type_theta_derivative_at, verify_limit_definition, DerivativeMethod,
    DerivativeReport, LimitCheck,
};
pub use error::{Error, Result};
pub use function::{Component, ComponentPair, DualFunction, Expr, Primitive};
pub use integrate::{
    check_integrability, darboux_sums, estimate_integral, refinement_chain_probe,
    verify_additivity, verify_ftc_part1, verify_ftc_part2, verify_linearity,
    verify_monotonicity, AdditivityReport, CellBounds, ChainProbe, DarbouxSums,
    ExtremaMethod, FtcPart1Report, FtcPart2Report, IntegrabilityReport,
    IntegralEstimate, IntegrateOptions, LinearityReport, MonotonicityReport, Partition,
};
pub use order::{Neighborhood, OrderKind, Rect, Relation, TypedInterval};
