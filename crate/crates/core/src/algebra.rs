//! The dual real numbers: a two-dimensional commutative algebra in which a
//! basis element squares to zero.
//!
//! A dual real number is written `x = a + b·eps` where `a`, `b` are reals
//! and `eps * eps = 0`. Addition is componentwise and multiplication
//! follows from bilinearity:
//!
//! ```text
//! (a + b·eps)(c + d·eps) = ac + (ad + bc)·eps
//! ```
//!
//! The element `a` is the *real part* and `b` the *zero-divisor part*: any
//! nonzero element with zero real part annihilates `eps`, so the algebra
//! is not a field. An element is invertible exactly when its real part is
//! nonzero, with
//!
//! ```text
//! (a + b·eps)^-1 = 1/a - (b / a^2)·eps
//! ```
//!
//! The algebra carries the norm `‖a + b·eps‖ = sqrt(2a^2 + b^2)`, which is
//! positive definite, absolutely homogeneous, subadditive, and
//! submultiplicative. The factor 2 on the real part makes the norm
//! submultiplicative without any extra constant.
//!
//! [`DualReal`] values always hold finite components: constructors and
//! arithmetic reject NaN and infinities, so equality and ordering helpers
//! never meet exceptional values.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Classification of a dual real number under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraClass {
    /// The zero element.
    Zero,
    /// Nonzero with zero real part; annihilates `eps` and has no inverse.
    ZeroDivisor,
    /// Nonzero real part; has a two-sided inverse.
    Invertible,
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AlgebraClass::Zero => "zero",
            AlgebraClass::ZeroDivisor => "zero-divisor",
            AlgebraClass::Invertible => "invertible",
        };
        f.write_str(name)
    }
}

/// A dual real number `re + ze·eps` with finite components.
///
/// `re` is the real part and `ze` the zero-divisor part. The representation
/// is unique: two values are equal iff both components are equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualReal {
    re: f64,
    ze: f64,
}

// Components are never NaN, so the derived partial equality is total.
impl Eq for DualReal {}

// Arithmetic is fallible (overflow reports instead of propagating non-finite
// values), so the std operator traits cannot carry it.
#[allow(clippy::should_implement_trait)]
impl DualReal {
    pub const ZERO: DualReal = DualReal { re: 0.0, ze: 0.0 };
    pub const ONE: DualReal = DualReal { re: 1.0, ze: 0.0 };
    /// The nilpotent basis element `eps`.
    pub const EPS: DualReal = DualReal { re: 0.0, ze: 1.0 };

    /// Builds `re + ze·eps`, rejecting NaN and infinite components.
    pub fn new(re: f64, ze: f64) -> Result<DualReal> {
        Self::finite(re, ze, "dual number construction")
    }

    fn finite(re: f64, ze: f64, context: &'static str) -> Result<DualReal> {
        if re.is_finite() && ze.is_finite() {
            Ok(DualReal { re, ze })
        } else {
            Err(Error::NonFinite { context })
        }
    }

    /// Real part.
    pub fn re(self) -> f64 {
        self.re
    }

    /// Zero-divisor part.
    pub fn ze(self) -> f64 {
        self.ze
    }

    /// Componentwise sum. Fails only if a component overflows.
    pub fn add(self, rhs: DualReal) -> Result<DualReal> {
        Self::finite(self.re + rhs.re, self.ze + rhs.ze, "addition")
    }

    /// Componentwise difference. Fails only if a component overflows.
    pub fn sub(self, rhs: DualReal) -> Result<DualReal> {
        Self::finite(self.re - rhs.re, self.ze - rhs.ze, "subtraction")
    }

    /// Product `(ac, ad + bc)`; the `bd` term vanishes with `eps^2`.
    pub fn mul(self, rhs: DualReal) -> Result<DualReal> {
        Self::finite(
            self.re * rhs.re,
            self.re * rhs.ze + self.ze * rhs.re,
            "multiplication",
        )
    }

    /// Negation. Always finite.
    pub fn neg(self) -> DualReal {
        DualReal { re: -self.re, ze: -self.ze }
    }

    /// Scalar multiple `a·x`.
    pub fn scale(self, a: f64) -> Result<DualReal> {
        Self::finite(a * self.re, a * self.ze, "scalar multiplication")
    }

    /// Midpoint of two values. Always finite: computed as `x/2 + y/2`.
    pub fn midpoint(self, rhs: DualReal) -> DualReal {
        DualReal {
            re: self.re / 2.0 + rhs.re / 2.0,
            ze: self.ze / 2.0 + rhs.ze / 2.0,
        }
    }

    /// Multiplicative inverse `1/re - (ze/re^2)·eps`.
    ///
    /// Fails with [`Error::ZeroDivisor`] when the real part is zero, and
    /// with [`Error::NonFinite`] when a component overflows.
    pub fn inverse(self) -> Result<DualReal> {
        if self.re == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Self::finite(1.0 / self.re, -self.ze / (self.re * self.re), "inversion")
    }

    /// Quotient `self · rhs^-1`.
    pub fn div(self, rhs: DualReal) -> Result<DualReal> {
        self.mul(rhs.inverse()?)
    }

    /// The norm `sqrt(2·re^2 + ze^2)`.
    pub fn norm(self) -> f64 {
        norm_parts(self.re, self.ze)
    }

    /// Multiplicative classification of the value.
    pub fn classify(self) -> AlgebraClass {
        if self.re != 0.0 {
            AlgebraClass::Invertible
        } else if self.ze != 0.0 {
            AlgebraClass::ZeroDivisor
        } else {
            AlgebraClass::Zero
        }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0.0 && self.ze == 0.0
    }
}

/// Norm of the pair `(re, ze)` without constructing a value.
///
/// Scaled `hypot` keeps intermediate squares from overflowing.
pub(crate) fn norm_parts(re: f64, ze: f64) -> f64 {
    (std::f64::consts::SQRT_2 * re).hypot(ze)
}

/// Scans a decimal literal `digits ("." digits)? (("e"|"E") sign? digits)?`
/// starting at byte `start`. Returns the value, the end offset, and whether
/// the lexeme is a bare integer (digits only).
///
/// An `e` is treated as an exponent marker only when followed by a digit or
/// by a sign and a digit, so `1eps` scans as the number `1` followed by the
/// identifier `eps`.
pub(crate) fn scan_number(src: &str, start: usize) -> Option<(f64, usize, bool)> {
    let b = src.as_bytes();
    let mut i = start;
    if i >= b.len() || !b[i].is_ascii_digit() {
        return None;
    }
    let mut integral = true;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    if i + 1 < b.len() && b[i] == b'.' && b[i + 1].is_ascii_digit() {
        integral = false;
        i += 1;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        if j < b.len() && b[j].is_ascii_digit() {
            integral = false;
            i = j;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
        }
    }
    let value: f64 = src[start..i].parse().ok()?;
    Some((value, i, integral))
}

fn skip_ws(src: &str, mut i: usize) -> usize {
    let b = src.as_bytes();
    while i < b.len() && b[i].is_ascii_whitespace() {
        i += 1;
    }
    i
}

fn scan_eps(src: &str, i: usize) -> Option<usize> {
    src[i..].starts_with("eps").then_some(i + 3)
}

#[derive(Clone, Copy)]
enum Term {
    Real(f64),
    Eps(f64),
}

/// Scans `sign? (number eps? | eps)` starting at `i`.
fn scan_term(src: &str, mut i: usize) -> Result<(Term, usize)> {
    let b = src.as_bytes();
    let mut sign = 1.0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        if b[i] == b'-' {
            sign = -1.0;
        }
        i = skip_ws(src, i + 1);
    }
    if let Some(end) = scan_eps(src, i) {
        return Ok((Term::Eps(sign), end));
    }
    let Some((value, end, _)) = scan_number(src, i) else {
        return Err(Error::Parse {
            offset: i,
            message: "expected a decimal number or `eps`".into(),
        });
    };
    let after = skip_ws(src, end);
    if let Some(end) = scan_eps(src, after) {
        Ok((Term::Eps(sign * value), end))
    } else {
        Ok((Term::Real(sign * value), end))
    }
}

/// Parses a dual literal: `A`, `Beps`, `A+Beps`, or `A-Beps`, where `A` and
/// `B` are decimal literals. A bare `eps` is accepted as `1eps`, and
/// whitespace may appear around the terms and the middle sign.
fn parse_literal(src: &str) -> Result<DualReal> {
    let mut i = skip_ws(src, 0);
    let (first, end) = scan_term(src, i)?;
    i = skip_ws(src, end);
    let value = if i == src.len() {
        match first {
            Term::Real(a) => DualReal::new(a, 0.0)?,
            Term::Eps(b) => DualReal::new(0.0, b)?,
        }
    } else {
        let b = src.as_bytes();
        if b[i] != b'+' && b[i] != b'-' {
            return Err(Error::Parse {
                offset: i,
                message: "expected `+`, `-`, or end of literal".into(),
            });
        }
        let Term::Real(a) = first else {
            return Err(Error::Parse {
                offset: i,
                message: "the zero-divisor term must come last".into(),
            });
        };
        let (second, end) = scan_term(src, i)?;
        let Term::Eps(zb) = second else {
            return Err(Error::Parse {
                offset: i,
                message: "expected a zero-divisor term such as `3eps`".into(),
            });
        };
        i = skip_ws(src, end);
        if i != src.len() {
            return Err(Error::Parse {
                offset: i,
                message: "unexpected trailing input".into(),
            });
        }
        DualReal::new(a, zb)?
    };
    Ok(value)
}

impl FromStr for DualReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<DualReal> {
        parse_literal(s)
    }
}

impl fmt::Display for DualReal {
    /// Renders the shortest literal that parses back to the same value:
    /// `A`, `Beps`, `A+Beps`, or `A-Beps`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ze == 0.0 {
            write!(f, "{}", self.re)
        } else if self.re == 0.0 {
            write!(f, "{}eps", self.ze)
        } else if self.ze < 0.0 {
            write!(f, "{}-{}eps", self.re, -self.ze)
        } else {
            write!(f, "{}+{}eps", self.re, self.ze)
        }
    }
}
