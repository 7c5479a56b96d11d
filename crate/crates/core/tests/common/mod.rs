//! Shared generators for the integration-level test suites.
//!
//! Random expressions are built as source strings and fed through the
//! parser, so every generated case also exercises the front end. Candidates
//! are probed on a lattice over the target box and rejected unless the
//! function and its first two derivatives stay finite and below a magnitude
//! bound; the tolerance arguments of the differentiation and integration
//! checks assume that kind of local regularity.

#![allow(dead_code)]

use dualcalc::{DualFunction, DualReal, Expr, OrderKind, TypedInterval};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dual_in<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> DualReal {
    DualReal::new(rng.gen_range(lo..hi), rng.gen_range(lo..hi)).unwrap()
}

/// Draws a value strictly greater than zero in the given order, covering
/// both branch shapes of the relation. The lower cutoff on the strict
/// component keeps sums of such values from collapsing under rounding.
pub fn theta_positive<R: Rng>(rng: &mut R, theta: OrderKind) -> DualReal {
    let sign = match theta {
        OrderKind::Type1 => 1.0,
        OrderKind::Type2 => -1.0,
    };
    if rng.gen_bool(0.2) {
        DualReal::new(0.0, sign * rng.gen_range(1e-3..10.0)).unwrap()
    } else {
        DualReal::new(rng.gen_range(1e-3..10.0), sign * rng.gen_range(0.0..10.0)).unwrap()
    }
}

/// Fixed corpus of smooth expressions used by the integration checks.
pub const CORPUS: [&str; 6] = ["x", "x^2", "x^3", "sin(x)", "exp(x)", "x * sin(x)"];

pub fn corpus() -> Vec<(&'static str, DualFunction)> {
    CORPUS
        .iter()
        .map(|s| (*s, DualFunction::parse(s).unwrap()))
        .collect()
}

fn coefficient<R: Rng>(rng: &mut R, scale: f64, eps_coeffs: bool) -> String {
    let re = (rng.gen_range(-scale..scale) * 100.0).round() / 100.0;
    if eps_coeffs && rng.gen_bool(0.3) {
        let ze = (rng.gen_range(-scale..scale) * 100.0).round() / 100.0;
        if ze < 0.0 {
            format!("({re} - {}eps)", -ze)
        } else {
            format!("({re} + {ze}eps)")
        }
    } else {
        format!("({re})")
    }
}

/// Emits a random expression source string of the given depth. With
/// `eps_coeffs` some constants carry a zero-divisor part; the classical
/// forward-derivative identity only holds for real-coefficient trees.
pub fn expr_source<R: Rng>(rng: &mut R, depth: usize, eps_coeffs: bool) -> String {
    const SCALE: f64 = 2.0;
    if depth == 0 {
        return if rng.gen_bool(0.6) {
            "x".to_string()
        } else {
            coefficient(rng, SCALE, eps_coeffs)
        };
    }
    match rng.gen_range(0..8) {
        0 => format!(
            "({} + {})",
            expr_source(rng, depth - 1, eps_coeffs),
            expr_source(rng, depth - 1, eps_coeffs)
        ),
        1 => format!(
            "({} - {})",
            expr_source(rng, depth - 1, eps_coeffs),
            expr_source(rng, depth - 1, eps_coeffs)
        ),
        2 => format!(
            "({} * {})",
            expr_source(rng, depth - 1, eps_coeffs),
            expr_source(rng, depth - 1, eps_coeffs)
        ),
        3 => format!("-{}", expr_source(rng, depth - 1, eps_coeffs)),
        4 => format!(
            "({})^{}",
            expr_source(rng, depth - 1, eps_coeffs),
            rng.gen_range(2..4)
        ),
        5 => format!("sin({})", expr_source(rng, depth - 1, eps_coeffs)),
        6 => format!("cos({})", expr_source(rng, depth - 1, eps_coeffs)),
        _ => format!("exp({})", expr_source(rng, depth - 1, eps_coeffs)),
    }
}

fn probe_ok(expr: &Expr, lo_re: f64, hi_re: f64, lo_ze: f64, hi_ze: f64, bound: f64) -> bool {
    let d1 = expr.derivative();
    let d2 = d1.derivative();
    const GRID: usize = 7;
    for i in 0..GRID {
        for j in 0..GRID {
            let re = lo_re + (hi_re - lo_re) * i as f64 / (GRID - 1) as f64;
            let ze = lo_ze + (hi_ze - lo_ze) * j as f64 / (GRID - 1) as f64;
            let x = match DualReal::new(re, ze) {
                Ok(x) => x,
                Err(_) => return false,
            };
            for e in [expr, &d1, &d2] {
                match e.eval_lifted(x) {
                    Ok(v) if v.norm() <= bound => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// Draws a random expression whose value and first two derivatives stay
/// within `bound` on the box `[lo, hi]^2`, widened by ten percent.
pub fn bounded_expr<R: Rng>(
    rng: &mut R,
    depth: usize,
    lo: f64,
    hi: f64,
    bound: f64,
    eps_coeffs: bool,
) -> Expr {
    let margin = 0.1 * (hi - lo);
    for _ in 0..500 {
        let depth = rng.gen_range(1..=depth);
        let src = expr_source(rng, depth, eps_coeffs);
        let expr = Expr::parse(&src).expect("generated source must parse");
        if probe_ok(&expr, lo - margin, hi + margin, lo - margin, hi + margin, bound) {
            return expr;
        }
    }
    Expr::parse("x").unwrap()
}

pub fn bounded_function<R: Rng>(
    rng: &mut R,
    depth: usize,
    lo: f64,
    hi: f64,
    bound: f64,
) -> DualFunction {
    DualFunction::Ast(bounded_expr(rng, depth, lo, hi, bound, true))
}

/// Draws a typed interval with `norm(b - a) <= max_span` whose endpoints
/// stay within `[lo, hi]` per component. Roughly a third of draws lie on
/// the real axis and a few are pure zero-divisor segments.
pub fn random_interval<R: Rng>(
    rng: &mut R,
    theta: OrderKind,
    lo: f64,
    hi: f64,
    max_span: f64,
) -> TypedInterval {
    let span = rng.gen_range(0.2 * max_span..max_span);
    let shape = rng.gen_range(0..6);
    let (dr, dz_mag) = match shape {
        0 | 1 => (span / 2.0_f64.sqrt(), 0.0),
        2 => (0.0, span),
        _ => {
            let dr = rng.gen_range(0.15..0.65) * span / 2.0_f64.sqrt();
            (dr, (span * span - 2.0 * dr * dr).sqrt())
        }
    };
    let dz = match theta {
        OrderKind::Type1 => dz_mag,
        OrderKind::Type2 => -dz_mag,
    };
    let a = DualReal::new(
        rng.gen_range(lo..hi - dr),
        rng.gen_range((lo - dz.min(0.0))..(hi - dz.max(0.0))),
    )
    .unwrap();
    let b = a.add(DualReal::new(dr, dz).unwrap()).unwrap();
    TypedInterval::new(a, b, theta).expect("generated endpoints are ordered")
}
