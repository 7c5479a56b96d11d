//! Two total-ish order relations on the dual plane, and the intervals and
//! neighborhoods they induce.
//!
//! Neither relation is a total order on its own, but together they compare
//! every pair: for distinct `x`, `y` at least one of `x >1 y`, `x <1 y`,
//! `x >2 y`, `x <2 y` holds. The strict relations are
//!
//! ```text
//! x >1 y  iff  (re x > re y and ze x >= ze y) or (re x = re y and ze x > ze y)
//! x >2 y  iff  (re x > re y and ze y >= ze x) or (re x = re y and ze y > ze x)
//! ```
//!
//! Equivalently, the non-strict `x >=θ y` is the componentwise condition
//! `re x >= re y` together with `ze x >= ze y` for type 1 (or reversed for
//! type 2), which makes a type-θ closed interval a rectangle in the
//! `(re, ze)` plane.
//!
//! Comparisons are exact floating-point comparisons; the `*_slack` variants
//! relax each component by a caller-chosen amount for use in numerical
//! pipelines.

use std::fmt;

use crate::algebra::{norm_parts, DualReal};
use crate::error::{Error, Result};

/// Which of the two order relations to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Type1,
    Type2,
}

impl OrderKind {
    /// Sign applied to zero-divisor parts: type 1 keeps them, type 2
    /// reverses them.
    pub(crate) fn ze_sign(self) -> f64 {
        match self {
            OrderKind::Type1 => 1.0,
            OrderKind::Type2 => -1.0,
        }
    }

    /// Strict comparison `x >θ y`.
    pub fn greater(self, x: DualReal, y: DualReal) -> bool {
        match self {
            OrderKind::Type1 => {
                (x.re() > y.re() && x.ze() >= y.ze())
                    || (x.re() == y.re() && x.ze() > y.ze())
            }
            OrderKind::Type2 => {
                (x.re() > y.re() && y.ze() >= x.ze())
                    || (x.re() == y.re() && y.ze() > x.ze())
            }
        }
    }

    /// Strict comparison `x <θ y`.
    pub fn less(self, x: DualReal, y: DualReal) -> bool {
        self.greater(y, x)
    }

    /// Non-strict comparison `x >=θ y`.
    pub fn ge(self, x: DualReal, y: DualReal) -> bool {
        x == y || self.greater(x, y)
    }

    /// Non-strict comparison `x <=θ y`.
    pub fn le(self, x: DualReal, y: DualReal) -> bool {
        self.ge(y, x)
    }

    /// `x >=θ y` with each component relaxed by `slack`.
    ///
    /// Uses the componentwise characterization of the non-strict order:
    /// `re(x - y) >= -slack` and `±ze(x - y) >= -slack`.
    pub fn ge_slack(self, x: DualReal, y: DualReal, slack: f64) -> bool {
        x.re() - y.re() >= -slack && self.ze_sign() * (x.ze() - y.ze()) >= -slack
    }

    /// Whether `x` and `y` are comparable under this order.
    pub fn comparable(self, x: DualReal, y: DualReal) -> bool {
        self.ge(x, y) || self.le(x, y)
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Type1 => f.write_str("type 1"),
            OrderKind::Type2 => f.write_str("type 2"),
        }
    }
}

/// The set of strict relations (and equality) holding between a pair.
///
/// The flags are not mutually exclusive: a pair with equal real parts and
/// distinct zero-divisor parts is ordered by both relations at once. For
/// distinct values at least one flag is set, and `equal` excludes the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub greater1: bool,
    pub less1: bool,
    pub greater2: bool,
    pub less2: bool,
    pub equal: bool,
}

impl Relation {
    /// Classifies the pair `(x, y)` under both orders.
    pub fn between(x: DualReal, y: DualReal) -> Relation {
        Relation {
            greater1: OrderKind::Type1.greater(x, y),
            less1: OrderKind::Type1.less(x, y),
            greater2: OrderKind::Type2.greater(x, y),
            less2: OrderKind::Type2.less(x, y),
            equal: x == y,
        }
    }

    /// True when no relation at all holds (never happens; see `between`).
    pub fn is_empty(self) -> bool {
        !(self.greater1 || self.less1 || self.greater2 || self.less2 || self.equal)
    }
}

impl fmt::Display for Relation {
    /// Human-readable summary such as `less (type 1); greater (type 2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.equal {
            return f.write_str("equal");
        }
        let mut parts = Vec::new();
        if self.greater1 {
            parts.push("greater (type 1)");
        }
        if self.less1 {
            parts.push("less (type 1)");
        }
        if self.greater2 {
            parts.push("greater (type 2)");
        }
        if self.less2 {
            parts.push("less (type 2)");
        }
        if parts.is_empty() {
            parts.push("incomparable");
        }
        f.write_str(&parts.join("; "))
    }
}

/// The rectangle a typed interval occupies in the `(re, ze)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re_lo: f64,
    pub re_hi: f64,
    pub ze_lo: f64,
    pub ze_hi: f64,
}

impl Rect {
    pub fn contains(&self, x: DualReal) -> bool {
        self.re_lo <= x.re()
            && x.re() <= self.re_hi
            && self.ze_lo <= x.ze()
            && x.ze() <= self.ze_hi
    }
}

/// A closed interval `[a, b]` under one of the two orders, with `a <θ b`.
///
/// As a point set this is the rectangle `[re a, re b] × [min ze, max ze]`;
/// for type 1 the zero-divisor part grows from `a` to `b`, for type 2 it
/// shrinks.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedInterval {
    a: DualReal,
    b: DualReal,
    theta: OrderKind,
}

impl TypedInterval {
    /// Builds `[a, b]` under `theta`, requiring strictly ordered endpoints.
    pub fn new(a: DualReal, b: DualReal, theta: OrderKind) -> Result<TypedInterval> {
        if theta.greater(b, a) {
            Ok(TypedInterval { a, b, theta })
        } else {
            Err(Error::InvalidInterval {
                message: format!("endpoints must satisfy {a} <{} {b}", match theta {
                    OrderKind::Type1 => 1,
                    OrderKind::Type2 => 2,
                }),
            })
        }
    }

    pub fn lower(&self) -> DualReal {
        self.a
    }

    pub fn upper(&self) -> DualReal {
        self.b
    }

    pub fn theta(&self) -> OrderKind {
        self.theta
    }

    /// Membership test `a <=θ x <=θ b`.
    pub fn contains(&self, x: DualReal) -> bool {
        self.theta.ge(x, self.a) && self.theta.ge(self.b, x)
    }

    /// The realized rectangle in the `(re, ze)` plane.
    pub fn rect(&self) -> Rect {
        Rect {
            re_lo: self.a.re(),
            re_hi: self.b.re(),
            ze_lo: self.a.ze().min(self.b.ze()),
            ze_hi: self.a.ze().max(self.b.ze()),
        }
    }

    /// Endpoint difference `b - a`.
    pub fn span(&self) -> Result<DualReal> {
        self.b.sub(self.a)
    }
}

/// A norm ball around a center, optionally restricted to points comparable
/// with the center under one order, optionally with the center removed.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhood {
    center: DualReal,
    radius: f64,
    theta: Option<OrderKind>,
    deleted: bool,
}

impl Neighborhood {
    /// Full ball of positive finite `radius` around `center`.
    pub fn ball(center: DualReal, radius: f64) -> Result<Neighborhood> {
        if radius > 0.0 && radius.is_finite() {
            Ok(Neighborhood { center, radius, theta: None, deleted: false })
        } else {
            Err(Error::InvalidRadius)
        }
    }

    /// Restricts membership to points comparable with the center under
    /// `theta`.
    pub fn typed(mut self, theta: OrderKind) -> Neighborhood {
        self.theta = Some(theta);
        self
    }

    /// Removes the center itself.
    pub fn deleted(mut self) -> Neighborhood {
        self.deleted = true;
        self
    }

    pub fn center(&self) -> DualReal {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, x: DualReal) -> bool {
        if self.deleted && x == self.center {
            return false;
        }
        let inside =
            norm_parts(x.re() - self.center.re(), x.ze() - self.center.ze()) < self.radius;
        match self.theta {
            _ if !inside => false,
            None => true,
            Some(theta) => theta.comparable(x, self.center),
        }
    }
}
