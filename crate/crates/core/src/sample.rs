//! Random increment sampling for limit and quotient checks.
//!
//! Difference quotients divide by the increment, so increments must stay
//! invertible: the real offset may not vanish. Both samplers additionally
//! keep the real offset above a small fraction of the increment norm.
//! Closer to the zero-divisor axis the quotient multiplies rounding error
//! in the function values by the reciprocal of the squared real offset,
//! which swamps any signal; the excluded sliver of directions is a few
//! percent and contains no invertible-limit information that the kept
//! directions lack.

use rand::Rng;

use crate::algebra::{norm_parts, DualReal};
use crate::error::{Error, Result};
use crate::order::{OrderKind, TypedInterval};

const ATTEMPTS: u32 = 10_000;

/// Fraction of the increment norm the real offset must reach.
const REAL_OFFSET_FLOOR: f64 = 0.05;

fn quadrant_ok(dr: f64, dz: f64, theta: Option<OrderKind>) -> bool {
    match theta {
        None => true,
        Some(t) => {
            let s = t.ze_sign() * dz;
            (dr >= 0.0 && s >= 0.0) || (dr <= 0.0 && s <= 0.0)
        }
    }
}

/// Samples a point of the deleted ball of the given radius around
/// `center`, avoiding ill-conditioned directions. With a `theta` the point
/// is additionally comparable with the center in that order.
pub(crate) fn deleted_ball<R: Rng + ?Sized>(
    rng: &mut R,
    center: DualReal,
    radius: f64,
    theta: Option<OrderKind>,
) -> Result<DualReal> {
    let re_span = radius / std::f64::consts::SQRT_2;
    for _ in 0..ATTEMPTS {
        let dr = rng.gen_range(-re_span..=re_span);
        let dz = rng.gen_range(-radius..=radius);
        let norm = norm_parts(dr, dz);
        if norm <= 0.0 || norm >= radius {
            continue;
        }
        if dr.abs() < REAL_OFFSET_FLOOR * norm {
            continue;
        }
        if !quadrant_ok(dr, dz, theta) {
            continue;
        }
        return DualReal::new(center.re() + dr, center.ze() + dz);
    }
    Err(Error::SamplingExhausted { context: "deleted ball" })
}

/// Samples a point of `interval` whose distance from `center` lies in
/// `[h/2, h)` and which is comparable with the center in the interval's
/// order, again avoiding ill-conditioned directions.
pub(crate) fn interval_annulus<R: Rng + ?Sized>(
    rng: &mut R,
    center: DualReal,
    h: f64,
    interval: &TypedInterval,
) -> Result<DualReal> {
    let lo = 0.5 * h / std::f64::consts::SQRT_2;
    let hi = h / std::f64::consts::SQRT_2;
    let rect = interval.rect();
    for _ in 0..ATTEMPTS {
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let dr = sign * rng.gen_range(lo..hi);
        // Cap the dual offset so the whole increment stays inside the ball
        // and inside the interval's dual extent; the extent may be a single
        // point when both endpoints share a dual part.
        let cap = (h * h - 2.0 * dr * dr).max(0.0).sqrt();
        let z_lo = (rect.ze_lo - center.ze()).max(-cap);
        let z_hi = (rect.ze_hi - center.ze()).min(cap);
        let dz = if z_lo < z_hi {
            rng.gen_range(z_lo..z_hi)
        } else if z_lo == z_hi {
            z_lo
        } else {
            continue;
        };
        let norm = norm_parts(dr, dz);
        if norm < 0.5 * h || norm >= h {
            continue;
        }
        if !quadrant_ok(dr, dz, Some(interval.theta())) {
            continue;
        }
        let x = DualReal::new(center.re() + dr, center.ze() + dz)?;
        if interval.contains(x) {
            return Ok(x);
        }
    }
    Err(Error::SamplingExhausted { context: "annulus inside the interval" })
}
