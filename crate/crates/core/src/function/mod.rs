//! Expressions in one dual variable and their component view.
//!
//! An analytic function of a real variable lifts to the dual plane by
//!
//! ```text
//! g(a + b·eps) = g(a) + b·g'(a)·eps
//! ```
//!
//! which is forced by the Taylor expansion and `eps^2 = 0`. Evaluating an
//! expression tree under this rule gives both the value and the chain-rule
//! derivative information in one pass.
//!
//! A function of the dual variable can equivalently be seen as a pair of
//! real component functions `u`, `v` of `(x1, x2)` with
//! `f(x1 + x2·eps) = u + v·eps`. For lifted expressions `u` does not depend
//! on `x2` and `v` is linear in `x2`; general component pairs need not
//! satisfy either property, which is exactly what the differentiability
//! checks probe.

mod parser;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::DualReal;
use crate::error::{Error, Result};

/// Built-in univariate primitives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitive {
    Sin,
    Cos,
    Exp,
    Log,
}

impl Primitive {
    fn name(self) -> &'static str {
        match self {
            Primitive::Sin => "sin",
            Primitive::Cos => "cos",
            Primitive::Exp => "exp",
            Primitive::Log => "log",
        }
    }
}

/// An expression tree over one variable `x`, dual constants, field
/// operations, integer powers, and the primitives `sin`, `cos`, `exp`,
/// `log`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(DualReal),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Apply(Primitive, Box<Expr>),
}

impl Expr {
    /// Parses the grammar
    ///
    /// ```text
    /// expr   := term (("+" | "-") term)*
    /// term   := factor (("*" | "/") factor)*
    /// factor := atom ("^" integer)? | "-" factor
    /// atom   := number | number "eps" | "eps" | "x"
    ///         | func "(" expr ")" | "(" expr ")"
    /// func   := "sin" | "cos" | "exp" | "log"
    /// ```
    ///
    /// Whitespace is insignificant. Errors carry the byte offset of the
    /// offending token.
    pub fn parse(src: &str) -> Result<Expr> {
        parser::parse(src)
    }

    /// Evaluates at a dual point under the analytic lifting rule.
    pub fn eval_lifted(&self, x: DualReal) -> Result<DualReal> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Neg(e) => e.eval_lifted(x)?.neg(),
            Expr::Add(a, b) => a.eval_lifted(x)?.add(b.eval_lifted(x)?)?,
            Expr::Sub(a, b) => a.eval_lifted(x)?.sub(b.eval_lifted(x)?)?,
            Expr::Mul(a, b) => a.eval_lifted(x)?.mul(b.eval_lifted(x)?)?,
            Expr::Div(a, b) => {
                let denom = b.eval_lifted(x)?;
                let inv = denom.inverse().map_err(|_| Error::Domain {
                    expr: b.to_string(),
                    message: format!("division by the zero-divisor {denom}"),
                })?;
                a.eval_lifted(x)?.mul(inv)?
            }
            Expr::Pow(e, n) => dual_powi(e.eval_lifted(x)?, *n, e)?,
            Expr::Apply(p, e) => {
                let inner = e.eval_lifted(x)?;
                let (a, b) = (inner.re(), inner.ze());
                let (re, slope) = match p {
                    Primitive::Sin => (a.sin(), a.cos()),
                    Primitive::Cos => (a.cos(), -a.sin()),
                    Primitive::Exp => {
                        let ea = a.exp();
                        (ea, ea)
                    }
                    Primitive::Log => {
                        if a <= 0.0 {
                            return Err(Error::Domain {
                                expr: e.to_string(),
                                message: format!(
                                    "log requires a positive real part, got {a}"
                                ),
                            });
                        }
                        (a.ln(), 1.0 / a)
                    }
                };
                DualReal::new(re, b * slope)?
            }
        };
        Ok(v)
    }

    /// Evaluates the real shadow of the expression: constants contribute
    /// their real parts and all arithmetic happens in `f64`. For every
    /// expression, `eval_lifted(x).re == eval_real(x.re)` wherever both are
    /// defined, because taking real parts is a ring homomorphism.
    pub fn eval_real(&self, t: f64) -> Result<f64> {
        let v = match self {
            Expr::Const(c) => c.re(),
            Expr::Var => t,
            Expr::Neg(e) => -e.eval_real(t)?,
            Expr::Add(a, b) => a.eval_real(t)? + b.eval_real(t)?,
            Expr::Sub(a, b) => a.eval_real(t)? - b.eval_real(t)?,
            Expr::Mul(a, b) => a.eval_real(t)? * b.eval_real(t)?,
            Expr::Div(a, b) => {
                let denom = b.eval_real(t)?;
                if denom == 0.0 {
                    return Err(Error::Domain {
                        expr: b.to_string(),
                        message: "division by zero".into(),
                    });
                }
                a.eval_real(t)? / denom
            }
            Expr::Pow(e, n) => {
                let base = e.eval_real(t)?;
                if base == 0.0 && *n < 0 {
                    return Err(Error::Domain {
                        expr: e.to_string(),
                        message: "negative power of zero".into(),
                    });
                }
                base.powi(*n)
            }
            Expr::Apply(p, e) => {
                let a = e.eval_real(t)?;
                match p {
                    Primitive::Sin => a.sin(),
                    Primitive::Cos => a.cos(),
                    Primitive::Exp => a.exp(),
                    Primitive::Log => {
                        if a <= 0.0 {
                            return Err(Error::Domain {
                                expr: e.to_string(),
                                message: format!(
                                    "log requires a positive argument, got {a}"
                                ),
                            });
                        }
                        a.ln()
                    }
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { context: "real expression evaluation" })
        }
    }

    /// Symbolic derivative with light constant folding. Used as an exact
    /// oracle against the lifted evaluation path.
    pub fn derivative(&self) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(DualReal::ZERO),
            Expr::Var => Expr::Const(DualReal::ONE),
            Expr::Neg(e) => neg(e.derivative()),
            Expr::Add(a, b) => add(a.derivative(), b.derivative()),
            Expr::Sub(a, b) => sub(a.derivative(), b.derivative()),
            Expr::Mul(a, b) => add(
                mul(a.derivative(), (**b).clone()),
                mul((**a).clone(), b.derivative()),
            ),
            Expr::Div(a, b) => div(
                sub(
                    mul(a.derivative(), (**b).clone()),
                    mul((**a).clone(), b.derivative()),
                ),
                pow((**b).clone(), 2),
            ),
            Expr::Pow(e, n) => {
                if *n == 0 {
                    return Expr::Const(DualReal::ZERO);
                }
                let coeff = Expr::Const(DualReal::new(f64::from(*n), 0.0).unwrap());
                mul(mul(coeff, pow((**e).clone(), n - 1)), e.derivative())
            }
            Expr::Apply(p, e) => {
                let de = e.derivative();
                let inner = (**e).clone();
                match p {
                    Primitive::Sin => mul(apply(Primitive::Cos, inner), de),
                    Primitive::Cos => neg(mul(apply(Primitive::Sin, inner), de)),
                    Primitive::Exp => mul(apply(Primitive::Exp, inner), de),
                    Primitive::Log => div(de, inner),
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            // Constants outside the parser image print as the expression
            // that reads back: mixed ones like sums, negative ones like
            // negations.
            Expr::Const(c) if c.re() != 0.0 && c.ze() != 0.0 => 1,
            Expr::Const(c) if c.re() < 0.0 || c.ze() < 0.0 => 3,
            Expr::Const(_) | Expr::Var | Expr::Apply(..) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Expr::Const(c) => {
                // Spell constants exactly as the parser would rebuild them,
                // so printing is a fixed point of print-then-parse.
                if c.ze() == 0.0 {
                    write!(f, "{}", c.re())?;
                } else if c.re() == 0.0 {
                    write!(f, "{}eps", c.ze())?;
                } else if c.ze() < 0.0 {
                    write!(f, "{} - {}eps", c.re(), -c.ze())?;
                } else {
                    write!(f, "{} + {}eps", c.re(), c.ze())?;
                }
            }
            Expr::Var => write!(f, "x")?,
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.fmt_prec(f, 4)?;
            }
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " / ")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Pow(e, n) => {
                e.fmt_prec(f, 5)?;
                write!(f, "^{n}")?;
            }
            Expr::Apply(p, e) => {
                write!(f, "{}(", p.name())?;
                e.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn is_const(e: &Expr, v: DualReal) -> bool {
    matches!(e, Expr::Const(c) if *c == v)
}

fn add(a: Expr, b: Expr) -> Expr {
    if is_const(&a, DualReal::ZERO) {
        b
    } else if is_const(&b, DualReal::ZERO) {
        a
    } else {
        Expr::Add(Box::new(a), Box::new(b))
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    if is_const(&b, DualReal::ZERO) {
        a
    } else if is_const(&a, DualReal::ZERO) {
        neg(b)
    } else {
        Expr::Sub(Box::new(a), Box::new(b))
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_const(&a, DualReal::ZERO) || is_const(&b, DualReal::ZERO) {
        Expr::Const(DualReal::ZERO)
    } else if is_const(&a, DualReal::ONE) {
        b
    } else if is_const(&b, DualReal::ONE) {
        a
    } else {
        Expr::Mul(Box::new(a), Box::new(b))
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_const(&a, DualReal::ZERO) {
        Expr::Const(DualReal::ZERO)
    } else if is_const(&b, DualReal::ONE) {
        a
    } else {
        Expr::Div(Box::new(a), Box::new(b))
    }
}

fn neg(e: Expr) -> Expr {
    if is_const(&e, DualReal::ZERO) {
        e
    } else {
        Expr::Neg(Box::new(e))
    }
}

fn pow(e: Expr, n: i32) -> Expr {
    match n {
        0 => Expr::Const(DualReal::ONE),
        1 => e,
        _ => Expr::Pow(Box::new(e), n),
    }
}

fn apply(p: Primitive, e: Expr) -> Expr {
    Expr::Apply(p, Box::new(e))
}

/// Integer power under the lifting rule: `(a + b·eps)^n = a^n + n·a^(n-1)·b·eps`.
fn dual_powi(base: DualReal, n: i32, node: &Expr) -> Result<DualReal> {
    if n == 0 {
        return Ok(DualReal::ONE);
    }
    if n < 0 {
        let positive = dual_powi(base, -n, node)?;
        return positive.inverse().map_err(|_| Error::Domain {
            expr: node.to_string(),
            message: "negative power of a zero-divisor".into(),
        });
    }
    let a = base.re();
    DualReal::new(a.powi(n), f64::from(n) * a.powi(n - 1) * base.ze())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        Expr::parse(s)
    }
}

/// A real component function of `(x1, x2)`.
pub type Component = Arc<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>;

/// The component view `f(x1 + x2·eps) = u + v·eps`.
#[derive(Clone)]
pub struct ComponentPair {
    u: Component,
    v: Component,
}

impl ComponentPair {
    pub fn new(u: Component, v: Component) -> ComponentPair {
        ComponentPair { u, v }
    }

    /// Wraps plain closures that cannot fail.
    pub fn from_fns<U, V>(u: U, v: V) -> ComponentPair
    where
        U: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        V: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        ComponentPair {
            u: Arc::new(move |x1, x2| Ok(u(x1, x2))),
            v: Arc::new(move |x1, x2| Ok(v(x1, x2))),
        }
    }

    pub fn u(&self, x1: f64, x2: f64) -> Result<f64> {
        (self.u)(x1, x2)
    }

    pub fn v(&self, x1: f64, x2: f64) -> Result<f64> {
        (self.v)(x1, x2)
    }
}

impl fmt::Debug for ComponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ComponentPair {{ .. }}")
    }
}

/// A function of the dual variable: either an expression evaluated under
/// the lifting rule or an arbitrary pair of component functions.
#[derive(Debug, Clone)]
pub enum DualFunction {
    Ast(Expr),
    Components(ComponentPair),
}

impl DualFunction {
    pub fn parse(src: &str) -> Result<DualFunction> {
        Ok(DualFunction::Ast(Expr::parse(src)?))
    }

    pub fn eval(&self, x: DualReal) -> Result<DualReal> {
        match self {
            DualFunction::Ast(e) => e.eval_lifted(x),
            DualFunction::Components(c) => {
                DualReal::new(c.u(x.re(), x.ze())?, c.v(x.re(), x.ze())?)
            }
        }
    }

    /// The component view. For expressions this evaluates the tree and
    /// projects, so `u` and `v` stay consistent with `eval` by
    /// construction.
    pub fn components(&self) -> ComponentPair {
        match self {
            DualFunction::Ast(e) => {
                let eu = e.clone();
                let ev = e.clone();
                ComponentPair {
                    u: Arc::new(move |x1, x2| {
                        Ok(eu.eval_lifted(DualReal::new(x1, x2)?)?.re())
                    }),
                    v: Arc::new(move |x1, x2| {
                        Ok(ev.eval_lifted(DualReal::new(x1, x2)?)?.ze())
                    }),
                }
            }
            DualFunction::Components(c) => c.clone(),
        }
    }

    /// Pointwise sum. Expression inputs stay expressions.
    pub fn sum(&self, other: &DualFunction) -> DualFunction {
        match (self, other) {
            (DualFunction::Ast(a), DualFunction::Ast(b)) => {
                DualFunction::Ast(Expr::Add(Box::new(a.clone()), Box::new(b.clone())))
            }
            _ => {
                let f = self.clone();
                let g = other.clone();
                let fv = self.clone();
                let gv = other.clone();
                DualFunction::Components(ComponentPair {
                    u: Arc::new(move |x1, x2| {
                        let x = DualReal::new(x1, x2)?;
                        Ok(f.eval(x)?.add(g.eval(x)?)?.re())
                    }),
                    v: Arc::new(move |x1, x2| {
                        let x = DualReal::new(x1, x2)?;
                        Ok(fv.eval(x)?.add(gv.eval(x)?)?.ze())
                    }),
                })
            }
        }
    }

    /// Pointwise left multiple `k·f`.
    pub fn scaled(&self, k: DualReal) -> DualFunction {
        match self {
            DualFunction::Ast(e) => DualFunction::Ast(Expr::Mul(
                Box::new(Expr::Const(k)),
                Box::new(e.clone()),
            )),
            DualFunction::Components(_) => {
                let f = self.clone();
                let fv = self.clone();
                DualFunction::Components(ComponentPair {
                    u: Arc::new(move |x1, x2| {
                        Ok(k.mul(f.eval(DualReal::new(x1, x2)?)?)?.re())
                    }),
                    v: Arc::new(move |x1, x2| {
                        Ok(k.mul(fv.eval(DualReal::new(x1, x2)?)?)?.ze())
                    }),
                })
            }
        }
    }

    /// Whether this function is an expression under the lifting rule.
    pub(crate) fn is_lifted(&self) -> bool {
        matches!(self, DualFunction::Ast(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(re: f64, ze: f64) -> DualReal {
        DualReal::new(re, ze).unwrap()
    }

    #[test]
    fn parse_builds_the_expected_tree() {
        let e = Expr::parse("x^2 + 3eps*x").unwrap();
        assert_eq!(
            e,
            Expr::Add(
                Box::new(Expr::Pow(Box::new(Expr::Var), 2)),
                Box::new(Expr::Mul(
                    Box::new(Expr::Const(d(0.0, 3.0))),
                    Box::new(Expr::Var),
                )),
            )
        );
    }

    #[test]
    fn parse_reports_offsets() {
        match Expr::parse("x^^2") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match Expr::parse("sin(x") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Expr::parse("x^2.5").is_err());
        assert!(Expr::parse("foo(x)").is_err());
        assert!(Expr::parse("2x").is_err());
    }

    #[test]
    fn lifted_evaluation_follows_the_taylor_rule() {
        let sq = Expr::parse("x^2").unwrap();
        assert_eq!(sq.eval_lifted(d(1.0, 1.0)).unwrap(), d(1.0, 2.0));

        let sin = Expr::parse("sin(x)").unwrap();
        assert_eq!(sin.eval_lifted(d(0.0, 1.0)).unwrap(), d(0.0, 1.0));

        let recip = Expr::parse("1/x").unwrap();
        assert_eq!(recip.eval_lifted(d(2.0, 4.0)).unwrap(), d(0.5, -1.0));
    }

    #[test]
    fn lifted_evaluation_rejects_domain_violations() {
        let log = Expr::parse("log(x)").unwrap();
        assert!(matches!(
            log.eval_lifted(d(-1.0, 0.0)),
            Err(Error::Domain { .. })
        ));
        let recip = Expr::parse("1/x").unwrap();
        assert!(matches!(
            recip.eval_lifted(d(0.0, 2.0)),
            Err(Error::Domain { .. })
        ));
        let negpow = Expr::parse("x^-2").unwrap();
        assert!(matches!(
            negpow.eval_lifted(d(0.0, 1.0)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn negative_powers_lift_through_the_inverse() {
        let e = Expr::parse("x^-2").unwrap();
        // (2 + 1eps)^-2 = 1/4 - 2/8 eps
        let got = e.eval_lifted(d(2.0, 1.0)).unwrap();
        assert!((got.re() - 0.25).abs() < 1e-15);
        assert!((got.ze() + 0.25).abs() < 1e-15);
    }

    #[test]
    fn real_shadow_matches_lifted_real_part() {
        let e = Expr::parse("exp(x) * sin(x) + x^3 - 2").unwrap();
        for t in [-1.5, -0.3, 0.0, 0.7, 2.1] {
            let lifted = e.eval_lifted(d(t, 0.8)).unwrap();
            let shadow = e.eval_real(t).unwrap();
            assert!((lifted.re() - shadow).abs() <= 1e-12 * (1.0 + shadow.abs()));
        }
    }

    #[test]
    fn symbolic_derivative_examples() {
        let sq = Expr::parse("x^2").unwrap();
        assert_eq!(sq.derivative().to_string(), "2 * x");

        let prod = Expr::parse("x*exp(x)").unwrap();
        assert_eq!(prod.derivative().to_string(), "exp(x) + x * exp(x)");

        let c = Expr::parse("3eps").unwrap();
        assert_eq!(c.derivative(), Expr::Const(DualReal::ZERO));
    }

    #[test]
    fn symbolic_derivative_matches_central_differences() {
        let cases = ["x^3 - 2*x", "sin(x)*cos(x)", "exp(x)/(x^2 + 1)", "log(x + 3)"];
        let h = 1e-5;
        for src in cases {
            let f = Expr::parse(src).unwrap();
            let df = f.derivative();
            for t in [0.3, 1.0, 1.9] {
                let fd =
                    (f.eval_real(t + h).unwrap() - f.eval_real(t - h).unwrap()) / (2.0 * h);
                let sym = df.eval_real(t).unwrap();
                assert!(
                    (fd - sym).abs() <= 1e-7 * (1.0 + sym.abs()),
                    "{src} at {t}: fd {fd} vs sym {sym}"
                );
            }
        }
    }

    #[test]
    fn printing_reparses_to_the_same_tree() {
        for src in ["x^2 + 3eps*x", "-x^2", "x - (1 + x)", "2 * -3", "x / (x + 1) / 2"] {
            let t = Expr::parse(src).unwrap();
            let printed = t.to_string();
            let back = Expr::parse(&printed).unwrap();
            assert_eq!(back, t, "{src} printed as {printed}");
        }
    }

    #[test]
    fn generated_trees_print_and_reparse_stably() {
        // Trees outside the parser image (negative or mixed constants)
        // still round-trip print -> parse -> print.
        let weird = Expr::Mul(
            Box::new(Expr::Const(d(-2.0, 3.0))),
            Box::new(Expr::Add(Box::new(Expr::Var), Box::new(Expr::Const(d(0.0, 1.0))))),
        );
        let printed = weird.to_string();
        let reparsed = Expr::parse(&printed).unwrap();
        assert_eq!(reparsed.to_string(), printed);
        let x = d(0.7, -0.4);
        assert_eq!(
            weird.eval_lifted(x).unwrap(),
            reparsed.eval_lifted(x).unwrap()
        );
    }

    #[test]
    fn component_view_projects_the_lifted_value() {
        let f = DualFunction::parse("x^2").unwrap();
        let c = f.components();
        assert_eq!(c.u(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(c.v(1.0, 1.0).unwrap(), 2.0);
        // u ignores x2 and v is linear in x2 for lifted functions.
        assert_eq!(c.u(1.0, 5.0).unwrap(), 1.0);
        assert_eq!(c.v(1.0, 5.0).unwrap(), 10.0);
    }

    #[test]
    fn component_functions_can_be_supplied_directly() {
        let f = DualFunction::Components(ComponentPair::from_fns(
            |x1, _| x1 * x1,
            |x1, x2| 2.0 * x1 * x2,
        ));
        assert_eq!(f.eval(d(3.0, 1.0)).unwrap(), d(9.0, 6.0));
    }

    #[test]
    fn shared_functions_evaluate_from_multiple_threads() {
        let f = Arc::new(DualFunction::parse("exp(x) + x^2").unwrap());
        let mut handles = Vec::new();
        for i in 0..4 {
            let f = Arc::clone(&f);
            handles.push(std::thread::spawn(move || {
                f.eval(d(0.1 * f64::from(i), 1.0)).unwrap()
            }));
        }
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn sums_and_scalar_multiples_agree_with_pointwise_arithmetic() {
        let f = DualFunction::parse("x^2").unwrap();
        let g = DualFunction::parse("sin(x)").unwrap();
        let x = d(0.9, 0.4);
        let fg = f.sum(&g);
        assert_eq!(
            fg.eval(x).unwrap(),
            f.eval(x).unwrap().add(g.eval(x).unwrap()).unwrap()
        );
        let k = d(0.0, 1.0);
        let kf = f.scaled(k);
        assert_eq!(kf.eval(x).unwrap(), k.mul(f.eval(x).unwrap()).unwrap());

        // Mixed variants fall back to component closures.
        let h = DualFunction::Components(ComponentPair::from_fns(|x1, _| x1, |_, x2| x2));
        let fh = f.sum(&h);
        assert_eq!(
            fh.eval(x).unwrap(),
            f.eval(x).unwrap().add(h.eval(x).unwrap()).unwrap()
        );
    }
}
