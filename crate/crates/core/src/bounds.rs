//! Certified range enclosures for expressions over rectangles.
//!
//! The natural interval extension of an expression evaluates the tree with
//! interval operands instead of numbers. The result is guaranteed to
//! contain every value the expression takes on the input box, and shrinking
//! the box never widens the enclosure. Both properties are exactly what the
//! refinement-monotone integral bounds need: sampled extrema can miss an
//! interior peak, an enclosure cannot.
//!
//! Transcendental endpoints are widened by one ulp so that the enclosure
//! stays an enclosure under faithful (rather than correctly rounded) libm
//! implementations.

use std::f64::consts::TAU;
use std::fmt;

use crate::error::{Error, Result};
use crate::function::{Expr, Primitive};

/// A closed, bounded, nonempty real interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

// Arithmetic is fallible (overflow reports instead of propagating non-finite
// endpoints), so the std operator traits cannot carry it.
#[allow(clippy::should_implement_trait)]
impl Interval {
    /// Builds the interval with the given endpoints in either order.
    pub fn new(a: f64, b: f64) -> Result<Interval> {
        if a.is_finite() && b.is_finite() {
            Ok(Interval { lo: a.min(b), hi: a.max(b) })
        } else {
            Err(Error::NonFinite { context: "interval endpoints" })
        }
    }

    pub fn point(v: f64) -> Result<Interval> {
        Interval::new(v, v)
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn is_subset(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    fn widened(self) -> Interval {
        Interval { lo: self.lo.next_down(), hi: self.hi.next_up() }
    }

    pub fn add(self, rhs: Interval) -> Result<Interval> {
        Interval::new(self.lo + rhs.lo, self.hi + rhs.hi)
    }

    pub fn sub(self, rhs: Interval) -> Result<Interval> {
        Interval::new(self.lo - rhs.hi, self.hi - rhs.lo)
    }

    pub fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn mul(self, rhs: Interval) -> Result<Interval> {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let mut lo = p[0];
        let mut hi = p[0];
        for v in &p[1..] {
            lo = lo.min(*v);
            hi = hi.max(*v);
        }
        Interval::new(lo, hi)
    }

    pub fn scale(self, k: f64) -> Result<Interval> {
        Interval::new(self.lo * k, self.hi * k)
    }

    /// Reciprocal. Fails when the interval reaches zero, where the true
    /// range is unbounded.
    pub fn recip(self) -> Result<Interval> {
        if self.lo > 0.0 || self.hi < 0.0 {
            Interval::new(1.0 / self.hi, 1.0 / self.lo)
        } else {
            Err(Error::InvalidArgument {
                message: format!("reciprocal of {self} spans zero"),
            })
        }
    }

    pub fn powi(self, n: i32) -> Result<Interval> {
        if n == 0 {
            return Interval::point(1.0);
        }
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        if n % 2 == 1 || self.lo >= 0.0 {
            Interval::new(self.lo.powi(n), self.hi.powi(n))
        } else if self.hi <= 0.0 {
            Interval::new(self.hi.powi(n), self.lo.powi(n))
        } else {
            // Even power of an interval straddling zero.
            Interval::new(0.0, self.lo.powi(n).max(self.hi.powi(n)))
        }
    }

    pub fn exp(self) -> Result<Interval> {
        Ok(Interval::new(self.lo.exp(), self.hi.exp())?.widened())
    }

    pub fn ln(self) -> Result<Interval> {
        if self.lo > 0.0 {
            Ok(Interval::new(self.lo.ln(), self.hi.ln())?.widened())
        } else {
            Err(Error::InvalidArgument {
                message: format!("logarithm of {self} reaches a nonpositive value"),
            })
        }
    }

    pub fn sin(self) -> Result<Interval> {
        self.wave(f64::sin, std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_2)
    }

    pub fn cos(self) -> Result<Interval> {
        self.wave(f64::cos, 0.0, std::f64::consts::PI)
    }

    /// Range of a unit wave given the phases of its maxima and minima.
    fn wave(self, f: fn(f64) -> f64, max_phase: f64, min_phase: f64) -> Result<Interval> {
        if self.width() >= TAU {
            return Interval::new(-1.0, 1.0);
        }
        let (a, b) = (f(self.lo), f(self.hi));
        let mut lo = a.min(b);
        let mut hi = a.max(b);
        if contains_phase(self.lo, self.hi, max_phase) {
            hi = 1.0;
        }
        if contains_phase(self.lo, self.hi, min_phase) {
            lo = -1.0;
        }
        let w = Interval::new(lo, hi)?.widened();
        Interval::new(w.lo.max(-1.0), w.hi.min(1.0))
    }
}

/// Whether some `phase + 2k*pi` lies in `[lo, hi]`.
fn contains_phase(lo: f64, hi: f64, phase: f64) -> bool {
    let k = ((lo - phase) / TAU).ceil();
    let crit = phase + k * TAU;
    lo <= crit && crit <= hi
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Componentwise enclosure of a dual-valued expression over a rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualBounds {
    re: Interval,
    ze: Interval,
}

impl DualBounds {
    pub fn re(self) -> Interval {
        self.re
    }

    pub fn ze(self) -> Interval {
        self.ze
    }
}

fn domain(node: &Expr, err: Error) -> Error {
    match err {
        Error::InvalidArgument { message } => Error::Domain {
            expr: node.to_string(),
            message,
        },
        other => other,
    }
}

/// Encloses the lifted value of `expr` over the box `re x ze` of dual
/// points. The real slot of the result contains every value of the real
/// component on the box, the dual slot every value of the dual component.
pub fn envelope(expr: &Expr, re: Interval, ze: Interval) -> Result<DualBounds> {
    let b = match expr {
        Expr::Const(c) => DualBounds {
            re: Interval::point(c.re())?,
            ze: Interval::point(c.ze())?,
        },
        Expr::Var => DualBounds { re, ze },
        Expr::Neg(e) => {
            let b = envelope(e, re, ze)?;
            DualBounds { re: b.re.neg(), ze: b.ze.neg() }
        }
        Expr::Add(f, g) => {
            let bf = envelope(f, re, ze)?;
            let bg = envelope(g, re, ze)?;
            DualBounds { re: bf.re.add(bg.re)?, ze: bf.ze.add(bg.ze)? }
        }
        Expr::Sub(f, g) => {
            let bf = envelope(f, re, ze)?;
            let bg = envelope(g, re, ze)?;
            DualBounds { re: bf.re.sub(bg.re)?, ze: bf.ze.sub(bg.ze)? }
        }
        Expr::Mul(f, g) => {
            let bf = envelope(f, re, ze)?;
            let bg = envelope(g, re, ze)?;
            DualBounds {
                re: bf.re.mul(bg.re)?,
                ze: bf.re.mul(bg.ze)?.add(bf.ze.mul(bg.re)?)?,
            }
        }
        Expr::Div(f, g) => {
            let bf = envelope(f, re, ze)?;
            let bg = envelope(g, re, ze)?;
            // 1/(a + b eps) = 1/a - (b/a^2) eps
            let inv_re = bg.re.recip().map_err(|e| domain(g, e))?;
            let inv_ze = bg
                .ze
                .mul(bg.re.powi(2).and_then(Interval::recip).map_err(|e| domain(g, e))?)?
                .neg();
            DualBounds {
                re: bf.re.mul(inv_re)?,
                ze: bf.re.mul(inv_ze)?.add(bf.ze.mul(inv_re)?)?,
            }
        }
        Expr::Pow(e, n) => {
            let b = envelope(e, re, ze)?;
            let value = b.re.powi(*n).map_err(|err| domain(e, err))?;
            let slope = if *n == 0 {
                Interval::point(0.0)?
            } else {
                b.re
                    .powi(n - 1)
                    .map_err(|err| domain(e, err))?
                    .scale(f64::from(*n))?
            };
            DualBounds { re: value, ze: b.ze.mul(slope)? }
        }
        Expr::Apply(p, e) => {
            let b = envelope(e, re, ze)?;
            let (value, slope) = match p {
                Primitive::Sin => (b.re.sin()?, b.re.cos()?),
                Primitive::Cos => (b.re.cos()?, b.re.sin()?.neg()),
                Primitive::Exp => {
                    let v = b.re.exp()?;
                    (v, v)
                }
                Primitive::Log => (
                    b.re.ln().map_err(|err| domain(e, err))?,
                    b.re.recip().map_err(|err| domain(e, err))?,
                ),
            };
            DualBounds { re: value, ze: b.ze.mul(slope)? }
        }
    };
    Ok(b)
}
