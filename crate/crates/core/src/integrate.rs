//! Darboux integration over typed intervals.
//!
//! A partition of `[a, b]` under one of the two orders is a finite chain
//! `a = p0 < p1 < ... < pn = b` in that order. Over each cell the two
//! components of the integrand are bracketed by their extrema, and the
//! bracketing pair is combined in an order-dependent way: the first order
//! pairs suprema with suprema, the second order swaps the dual-component
//! extrema. The swap is what keeps the upper sum above the lower sum in the
//! chosen order, because cells of the second order have a falling dual
//! component.
//!
//! Each cell contribution multiplies the bracketing value by the full dual
//! increment `p(i+1) - p(i)`, so the dual part of the increment feeds the
//! dual part of the sums. Sums are accumulated with compensated summation;
//! the refinement-monotonicity checks compare sums at slacks far below
//! plain-summation error.

use rand::Rng;

use crate::algebra::DualReal;
use crate::bounds::{envelope, Interval};
use crate::error::{Error, Result};
use crate::function::DualFunction;
use crate::order::{OrderKind, TypedInterval};
use crate::sample::interval_annulus;

/// How per-cell component extrema are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremaMethod {
    /// Sample a uniform grid over each cell, corners included. Cheap and
    /// method-agnostic, but an interior peak between grid points is missed,
    /// so sums computed this way can regress slightly under refinement.
    Lattice { grid: usize },
    /// Certified interval enclosures of the component ranges. Never misses
    /// a peak and never regresses under refinement; requires an
    /// expression-backed function.
    Certified,
}

/// Compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum
    }
}

/// A finite chain from the lower to the upper endpoint of a typed interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    interval: TypedInterval,
    points: Vec<DualReal>,
}

impl Partition {
    /// Validates that `points` runs from the interval's lower endpoint to
    /// its upper endpoint and is strictly increasing in the interval's
    /// order.
    pub fn new(interval: TypedInterval, points: Vec<DualReal>) -> Result<Partition> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument {
                message: "a partition needs at least two points".into(),
            });
        }
        if points[0] != interval.lower() || *points.last().unwrap() != interval.upper() {
            return Err(Error::InvalidArgument {
                message: "partition must start and end at the interval endpoints".into(),
            });
        }
        let theta = interval.theta();
        for w in points.windows(2) {
            if !theta.greater(w[1], w[0]) {
                return Err(Error::InvalidArgument {
                    message: format!(
                        "partition points must be strictly increasing, got {} then {}",
                        w[0], w[1]
                    ),
                });
            }
        }
        Ok(Partition { interval, points })
    }

    /// Splits the interval into `cells` equal pieces along the segment
    /// between its endpoints.
    pub fn uniform(interval: &TypedInterval, cells: usize) -> Result<Partition> {
        if cells == 0 {
            return Err(Error::InvalidArgument {
                message: "a partition needs at least one cell".into(),
            });
        }
        let (a, b) = (interval.lower(), interval.upper());
        let mut points = Vec::with_capacity(cells + 1);
        points.push(a);
        for i in 1..cells {
            let t = i as f64 / cells as f64;
            points.push(DualReal::new(
                a.re() + t * (b.re() - a.re()),
                a.ze() + t * (b.ze() - a.ze()),
            )?);
        }
        points.push(b);
        Partition::new(interval.clone(), points)
    }

    /// A random staircase chain with the requested number of cells. The
    /// two coordinates of the interior points are drawn independently, so
    /// the chain generally leaves the straight segment between the
    /// endpoints.
    pub fn random<R: Rng + ?Sized>(
        interval: &TypedInterval,
        cells: usize,
        rng: &mut R,
    ) -> Result<Partition> {
        if cells == 0 {
            return Err(Error::InvalidArgument {
                message: "a partition needs at least one cell".into(),
            });
        }
        let (a, b) = (interval.lower(), interval.upper());
        let fr = sorted_fractions(cells - 1, rng);
        let fz = sorted_fractions(cells - 1, rng);
        let mut points = Vec::with_capacity(cells + 1);
        points.push(a);
        for i in 0..cells - 1 {
            points.push(DualReal::new(
                a.re() + fr[i] * (b.re() - a.re()),
                a.ze() + fz[i] * (b.ze() - a.ze()),
            )?);
        }
        points.push(b);
        Partition::new(interval.clone(), points)
    }

    /// Halves every cell at its midpoint.
    pub fn refine(&self) -> Result<Partition> {
        let mut points = Vec::with_capacity(self.points.len() * 2 - 1);
        for w in self.points.windows(2) {
            points.push(w[0]);
            points.push(w[0].midpoint(w[1]));
        }
        points.push(*self.points.last().unwrap());
        Partition::new(self.interval.clone(), points)
    }

    /// Inserts `inserts` random points, each strictly inside some cell.
    /// The result contains every point of `self`.
    pub fn random_refinement<R: Rng + ?Sized>(
        &self,
        inserts: usize,
        rng: &mut R,
    ) -> Result<Partition> {
        let mut points = self.points.clone();
        for _ in 0..inserts {
            let cell = rng.gen_range(0..points.len() - 1);
            let (p, q) = (points[cell], points[cell + 1]);
            let tr = rng.gen_range(0.25..0.75);
            let tz = rng.gen_range(0.25..0.75);
            let m = DualReal::new(
                p.re() + tr * (q.re() - p.re()),
                p.ze() + tz * (q.ze() - p.ze()),
            )?;
            points.insert(cell + 1, m);
        }
        Partition::new(self.interval.clone(), points)
    }

    /// Whether this partition contains every point of `coarse` over the
    /// same interval.
    pub fn refines(&self, coarse: &Partition) -> bool {
        self.interval == coarse.interval
            && coarse.points.iter().all(|p| self.points.contains(p))
    }

    pub fn interval(&self) -> &TypedInterval {
        &self.interval
    }

    pub fn points(&self) -> &[DualReal] {
        &self.points
    }

    pub fn cell_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn cells(&self) -> impl Iterator<Item = (DualReal, DualReal)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }
}

fn sorted_fractions<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<f64> {
    for _ in 0..100 {
        let mut fr: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..1.0)).collect();
        fr.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut prev = 0.0;
        let mut ok = true;
        for &v in &fr {
            if v - prev < 1e-6 {
                ok = false;
                break;
            }
            prev = v;
        }
        if ok && 1.0 - prev >= 1e-6 {
            return fr;
        }
    }
    // Vanishing-probability fallback: evenly spaced interior fractions.
    (1..=count).map(|i| i as f64 / (count + 1) as f64).collect()
}

/// Componentwise extrema of the integrand over one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellBounds {
    pub cell: (DualReal, DualReal),
    /// Extrema of the real component.
    pub re: Interval,
    /// Extrema of the dual component.
    pub ze: Interval,
}

/// Lower and upper Darboux sums for one partition.
#[derive(Debug, Clone, PartialEq)]
pub struct DarbouxSums {
    pub lower: DualReal,
    pub upper: DualReal,
    pub cells: Vec<CellBounds>,
}

fn validate_method(f: &DualFunction, method: ExtremaMethod) -> Result<()> {
    match method {
        ExtremaMethod::Lattice { grid } if grid < 2 => Err(Error::InvalidArgument {
            message: format!("lattice grid must be at least 2, got {grid}"),
        }),
        ExtremaMethod::Certified if !f.is_lifted() => Err(Error::Unsupported {
            message: "certified extrema need an expression-backed function".into(),
        }),
        _ => Ok(()),
    }
}

fn fill_positions(lo: f64, hi: f64, grid: usize, out: &mut Vec<f64>) {
    out.clear();
    if lo == hi {
        out.push(lo);
        return;
    }
    out.push(lo);
    for k in 1..grid - 1 {
        out.push(lo + (hi - lo) * (k as f64 / (grid - 1) as f64));
    }
    out.push(hi);
}

fn bounds_for_cell(
    f: &DualFunction,
    p: DualReal,
    q: DualReal,
    method: ExtremaMethod,
    cols: &mut Vec<f64>,
    rows: &mut Vec<f64>,
) -> Result<CellBounds> {
    let ze_lo = p.ze().min(q.ze());
    let ze_hi = p.ze().max(q.ze());
    match method {
        ExtremaMethod::Certified => {
            let expr = match f {
                DualFunction::Ast(e) => e,
                DualFunction::Components(_) => unreachable!("validated before dispatch"),
            };
            let b = envelope(
                expr,
                Interval::new(p.re(), q.re())?,
                Interval::new(ze_lo, ze_hi)?,
            )?;
            Ok(CellBounds { cell: (p, q), re: b.re(), ze: b.ze() })
        }
        ExtremaMethod::Lattice { grid } => {
            fill_positions(p.re(), q.re(), grid, cols);
            if f.is_lifted() {
                // The real component of a lifted value ignores the dual
                // coordinate and the dual component is affine in it, so the
                // two extreme rows carry all the extrema.
                rows.clear();
                rows.push(ze_lo);
                if ze_hi != ze_lo {
                    rows.push(ze_hi);
                }
            } else {
                fill_positions(ze_lo, ze_hi, grid, rows);
            }
            let mut re_min = f64::INFINITY;
            let mut re_max = f64::NEG_INFINITY;
            let mut ze_min = f64::INFINITY;
            let mut ze_max = f64::NEG_INFINITY;
            for &x1 in cols.iter() {
                for &x2 in rows.iter() {
                    let v = f.eval(DualReal::new(x1, x2)?)?;
                    re_min = re_min.min(v.re());
                    re_max = re_max.max(v.re());
                    ze_min = ze_min.min(v.ze());
                    ze_max = ze_max.max(v.ze());
                }
            }
            Ok(CellBounds {
                cell: (p, q),
                re: Interval::new(re_min, re_max)?,
                ze: Interval::new(ze_min, ze_max)?,
            })
        }
    }
}

/// Computes the order-dependent lower and upper Darboux sums of `f` over
/// `partition`.
pub fn darboux_sums(
    f: &DualFunction,
    partition: &Partition,
    method: ExtremaMethod,
) -> Result<DarbouxSums> {
    validate_method(f, method)?;
    let theta = partition.interval().theta();
    let mut cells = Vec::with_capacity(partition.cell_count());
    let mut lre = Kahan::default();
    let mut lze = Kahan::default();
    let mut ure = Kahan::default();
    let mut uze = Kahan::default();
    let mut cols = Vec::new();
    let mut rows = Vec::new();
    for (p, q) in partition.cells() {
        let b = bounds_for_cell(f, p, q, method, &mut cols, &mut rows)?;
        let dx = q.sub(p)?;
        let (lo_v, hi_v) = match theta {
            OrderKind::Type1 => (b.ze.lo(), b.ze.hi()),
            OrderKind::Type2 => (b.ze.hi(), b.ze.lo()),
        };
        lre.add(b.re.lo() * dx.re());
        lze.add(b.re.lo() * dx.ze());
        lze.add(lo_v * dx.re());
        ure.add(b.re.hi() * dx.re());
        uze.add(b.re.hi() * dx.ze());
        uze.add(hi_v * dx.re());
        cells.push(b);
    }
    let lower = DualReal::new(lre.value(), lze.value())?;
    let upper = DualReal::new(ure.value(), uze.value())?;
    Ok(DarbouxSums { lower, upper, cells })
}

/// A bracketing pair of Darboux sums and derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub lower: DualReal,
    pub upper: DualReal,
    /// Norm of `upper - lower`.
    pub gap_norm: f64,
    /// Refinement levels performed to reach this estimate.
    pub depth: usize,
    /// Cells in the final partition.
    pub cells: usize,
}

impl IntegralEstimate {
    /// Midpoint of the bracketing pair, the reported integral value.
    pub fn value(&self) -> DualReal {
        self.lower.midpoint(self.upper)
    }
}

/// Options for the refining estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    /// Stop once the norm of the Darboux gap falls below this.
    pub tol: f64,
    /// Give up after this many halving levels (the final partition has
    /// `2^max_depth` cells).
    pub max_depth: usize,
    pub extrema: ExtremaMethod,
}

impl Default for IntegrateOptions {
    fn default() -> IntegrateOptions {
        IntegrateOptions {
            tol: 1e-4,
            max_depth: 16,
            extrema: ExtremaMethod::Lattice { grid: 8 },
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument {
            message: format!("tolerance must be positive, got {tol}"),
        })
    }
}

fn chain_slack(a: &IntegralEstimate, b: &IntegralEstimate) -> f64 {
    let scale = a
        .lower
        .norm()
        .max(a.upper.norm())
        .max(b.lower.norm())
        .max(b.upper.norm());
    1e-12 * (1.0 + scale)
}

/// Brackets the integral of `f` over `interval` by repeatedly halving a
/// uniform partition until the Darboux gap is within tolerance.
///
/// With certified extrema every halving step is checked to tighten the
/// bracket; a regression is reported as an internal error. Lattice extrema
/// skip that check because sampled extrema may legitimately move either way.
pub fn estimate_integral(
    f: &DualFunction,
    interval: &TypedInterval,
    options: &IntegrateOptions,
) -> Result<IntegralEstimate> {
    check_tol(options.tol)?;
    validate_method(f, options.extrema)?;
    let certified = options.extrema == ExtremaMethod::Certified;
    let theta = interval.theta();
    let mut partition = Partition::uniform(interval, 1)?;
    let mut last: Option<IntegralEstimate> = None;
    for depth in 0..=options.max_depth {
        let sums = darboux_sums(f, &partition, options.extrema)?;
        let est = IntegralEstimate {
            lower: sums.lower,
            upper: sums.upper,
            gap_norm: sums.upper.sub(sums.lower)?.norm(),
            depth,
            cells: partition.cell_count(),
        };
        if certified {
            if let Some(prev) = &last {
                let slack = chain_slack(prev, &est);
                let tightens = theta.ge_slack(est.lower, prev.lower, slack)
                    && theta.ge_slack(prev.upper, est.upper, slack)
                    && theta.ge_slack(est.upper, est.lower, slack);
                if !tightens {
                    return Err(Error::RefinementRegression { depth });
                }
            }
        }
        if est.gap_norm <= options.tol {
            return Ok(est);
        }
        last = Some(est);
        if depth < options.max_depth {
            partition = partition.refine()?;
        }
    }
    Err(Error::MaxDepthExceeded { estimate: Box::new(last.unwrap()) })
}

/// Outcome of an integrability check against a specific order-positive
/// tolerance.
#[derive(Debug, Clone)]
pub struct IntegrabilityReport {
    /// Whether a partition with Darboux gap strictly below the tolerance
    /// was found within the depth limit. `false` means "not demonstrated",
    /// not a proof of non-integrability.
    pub integrable: bool,
    /// The demonstrating partition.
    pub witness: Option<Partition>,
    /// Final Darboux gap `upper - lower`.
    pub gap: DualReal,
    /// Refinement levels performed.
    pub depth: usize,
}

/// Searches for a partition whose Darboux gap is strictly below `eps` in
/// the interval's order. `eps` must be strictly positive in that order with
/// both components nonzero; gaps shrink toward zero along both components,
/// so a tolerance on the order's boundary could never be met robustly.
pub fn check_integrability(
    f: &DualFunction,
    interval: &TypedInterval,
    eps: DualReal,
    options: &IntegrateOptions,
) -> Result<IntegrabilityReport> {
    let theta = interval.theta();
    if !theta.greater(eps, DualReal::ZERO) || eps.re() * eps.ze() == 0.0 {
        return Err(Error::InvalidEpsilon);
    }
    validate_method(f, options.extrema)?;
    let mut partition = Partition::uniform(interval, 1)?;
    let mut gap = DualReal::ZERO;
    for depth in 0..=options.max_depth {
        let sums = darboux_sums(f, &partition, options.extrema)?;
        gap = sums.upper.sub(sums.lower)?;
        if theta.greater(eps, gap) {
            return Ok(IntegrabilityReport {
                integrable: true,
                witness: Some(partition),
                gap,
                depth,
            });
        }
        if depth < options.max_depth {
            partition = partition.refine()?;
        }
    }
    Ok(IntegrabilityReport {
        integrable: false,
        witness: None,
        gap,
        depth: options.max_depth,
    })
}

/// Outcome of a linearity verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearityReport {
    pub pass: bool,
    /// Estimated integral of `alpha f + beta g`.
    pub combined: DualReal,
    /// `alpha` times the integral of `f` plus `beta` times the integral of `g`.
    pub split: DualReal,
    pub error: f64,
    pub tolerance: f64,
}

/// Verifies that integration commutes with dual-linear combinations within
/// `tol`. The inner estimates run at a tolerance derived from `tol` and the
/// coefficient norms; `options` contributes the extrema method and depth
/// limit.
pub fn verify_linearity(
    f: &DualFunction,
    g: &DualFunction,
    alpha: DualReal,
    beta: DualReal,
    interval: &TypedInterval,
    tol: f64,
    options: &IntegrateOptions,
) -> Result<LinearityReport> {
    check_tol(tol)?;
    let inner = IntegrateOptions {
        tol: tol / (4.0 * (1.0 + alpha.norm() + beta.norm())),
        ..*options
    };
    let combo = f.scaled(alpha).sum(&g.scaled(beta));
    let combined = estimate_integral(&combo, interval, &inner)?.value();
    let fi = estimate_integral(f, interval, &inner)?.value();
    let gi = estimate_integral(g, interval, &inner)?.value();
    let split = alpha.mul(fi)?.add(beta.mul(gi)?)?;
    let error = combined.sub(split)?.norm();
    Ok(LinearityReport { pass: error <= tol, combined, split, error, tolerance: tol })
}

/// Outcome of an interval-additivity verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdditivityReport {
    pub pass: bool,
    /// Estimated integral over the whole interval.
    pub whole: DualReal,
    /// Sum of the estimates over the two pieces.
    pub parts: DualReal,
    pub error: f64,
    pub tolerance: f64,
}

/// Verifies that splitting the interval at `mid` preserves the integral
/// within `tol`. `mid` must lie strictly between the endpoints in the
/// interval's order. Inner estimates run at `tol / 4`.
pub fn verify_additivity(
    f: &DualFunction,
    interval: &TypedInterval,
    mid: DualReal,
    tol: f64,
    options: &IntegrateOptions,
) -> Result<AdditivityReport> {
    check_tol(tol)?;
    let theta = interval.theta();
    let left = TypedInterval::new(interval.lower(), mid, theta)?;
    let right = TypedInterval::new(mid, interval.upper(), theta)?;
    let inner = IntegrateOptions { tol: tol / 4.0, ..*options };
    let whole = estimate_integral(f, interval, &inner)?.value();
    let parts = estimate_integral(f, &left, &inner)?
        .value()
        .add(estimate_integral(f, &right, &inner)?.value())?;
    let error = whole.sub(parts)?.norm();
    Ok(AdditivityReport { pass: error <= tol, whole, parts, error, tolerance: tol })
}

/// Outcome of a monotonicity verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityReport {
    pub pass: bool,
    pub f_value: DualReal,
    pub g_value: DualReal,
    pub slack: f64,
}

/// Verifies that `f <= g` pointwise (checked on a coarse lattice over the
/// interval's rectangle; a violation is a precondition failure) implies the
/// same ordering of the estimated integrals, up to `slack`. A slack at
/// least as large as the estimator tolerance absorbs bracketing error.
pub fn verify_monotonicity(
    f: &DualFunction,
    g: &DualFunction,
    interval: &TypedInterval,
    slack: f64,
    options: &IntegrateOptions,
) -> Result<MonotonicityReport> {
    if !slack.is_finite() || slack < 0.0 {
        return Err(Error::InvalidArgument {
            message: format!("slack must be nonnegative, got {slack}"),
        });
    }
    let theta = interval.theta();
    let rect = interval.rect();
    const GRID: usize = 17;
    for i in 0..GRID {
        for j in 0..GRID {
            let ti = i as f64 / (GRID - 1) as f64;
            let tj = j as f64 / (GRID - 1) as f64;
            let x = DualReal::new(
                rect.re_lo + ti * (rect.re_hi - rect.re_lo),
                rect.ze_lo + tj * (rect.ze_hi - rect.ze_lo),
            )?;
            let fv = f.eval(x)?;
            let gv = g.eval(x)?;
            let pointwise_slack = 1e-9 * (1.0 + fv.norm() + gv.norm());
            if !theta.ge_slack(gv, fv, pointwise_slack) {
                return Err(Error::PreconditionFailed {
                    message: format!(
                        "pointwise dominance fails at {x}: f = {fv}, g = {gv}"
                    ),
                });
            }
        }
    }
    let f_value = estimate_integral(f, interval, options)?.value();
    let g_value = estimate_integral(g, interval, options)?.value();
    let pass = theta.ge_slack(g_value, f_value, slack);
    Ok(MonotonicityReport { pass, f_value, g_value, slack })
}

/// Outcome of sampling difference quotients of the running integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtcPart1Report {
    pub pass: bool,
    /// Worst `|quotient - f(c)|` over the evaluated samples.
    pub worst_error: f64,
    pub tolerance: f64,
    /// Quotients actually evaluated.
    pub quotients: usize,
    /// Samples discarded for non-invertible increments.
    pub skipped: usize,
}

/// Verifies the derivative side of the fundamental theorem: for the
/// running integral `G(x)` of `f` from the interval's lower endpoint,
/// difference quotients `(G(x) - G(c)) (x - c)^-1` at increments of size
/// about `h` should approach `f(c)`.
///
/// Increments are sampled comparable with `c` in the interval's order, so
/// each numerator reduces to a short integral between `c` and `x`, which is
/// estimated with a gap tolerance derived from `tol` and `h`. A short
/// estimate that runs out of depth contributes its midpoint rather than
/// failing the whole verification.
#[allow(clippy::too_many_arguments)]
pub fn verify_ftc_part1<R: Rng + ?Sized>(
    f: &DualFunction,
    interval: &TypedInterval,
    c: DualReal,
    h: f64,
    samples: usize,
    tol: f64,
    options: &IntegrateOptions,
    rng: &mut R,
) -> Result<FtcPart1Report> {
    check_tol(tol)?;
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidArgument {
            message: format!("increment size must be positive, got {h}"),
        });
    }
    if samples == 0 {
        return Err(Error::InvalidArgument {
            message: "quotient check needs at least one sample".into(),
        });
    }
    if !interval.contains(c) {
        return Err(Error::PreconditionFailed {
            message: format!("base point {c} is outside the interval"),
        });
    }
    let theta = interval.theta();
    let fc = f.eval(c)?;
    // The increment inverse has norm up to 8/h, so the short-integral gap
    // must stay well below tol * h / 8 for its error to be negligible.
    let inner = IntegrateOptions { tol: tol * h / 32.0, ..*options };
    let mut worst = 0.0f64;
    let mut quotients = 0usize;
    let mut skipped = 0usize;
    for _ in 0..samples {
        let x = interval_annulus(rng, c, h, interval)?;
        let d = x.sub(c)?;
        let inv = match d.inverse() {
            Ok(inv) => inv,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        let (segment, sign) = if theta.greater(x, c) {
            (TypedInterval::new(c, x, theta)?, 1.0)
        } else if theta.greater(c, x) {
            (TypedInterval::new(x, c, theta)?, -1.0)
        } else {
            skipped += 1;
            continue;
        };
        let est = match estimate_integral(f, &segment, &inner) {
            Ok(est) => est,
            Err(Error::MaxDepthExceeded { estimate }) => *estimate,
            Err(e) => return Err(e),
        };
        let quotient = est.value().scale(sign)?.mul(inv)?;
        worst = worst.max(quotient.sub(fc)?.norm());
        quotients += 1;
    }
    Ok(FtcPart1Report {
        pass: quotients > 0 && worst <= tol,
        worst_error: worst,
        tolerance: tol,
        quotients,
        skipped,
    })
}

/// Outcome of the endpoint form of the fundamental theorem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtcPart2Report {
    pub pass: bool,
    pub integral_of_derivative: DualReal,
    pub endpoint_difference: DualReal,
    pub error: f64,
    pub tolerance: f64,
}

/// Verifies that the integral of `f'` over the interval matches
/// `f(b) - f(a)` within `tol`. Needs an expression-backed function to
/// differentiate; the inner estimate runs at `tol / 2` and a depth overrun
/// is an error.
pub fn verify_ftc_part2(
    f: &DualFunction,
    interval: &TypedInterval,
    tol: f64,
    options: &IntegrateOptions,
) -> Result<FtcPart2Report> {
    check_tol(tol)?;
    let expr = match f {
        DualFunction::Ast(e) => e,
        DualFunction::Components(_) => {
            return Err(Error::Unsupported {
                message: "endpoint verification needs an expression to differentiate"
                    .into(),
            })
        }
    };
    let derivative = DualFunction::Ast(expr.derivative());
    let inner = IntegrateOptions { tol: tol / 2.0, ..*options };
    let integral = estimate_integral(&derivative, interval, &inner)?.value();
    let difference = f.eval(interval.upper())?.sub(f.eval(interval.lower())?)?;
    let error = integral.sub(difference)?.norm();
    Ok(FtcPart2Report {
        pass: error <= tol,
        integral_of_derivative: integral,
        endpoint_difference: difference,
        error,
        tolerance: tol,
    })
}

/// Darboux sums of one partition and one of its refinements, with the
/// verdict on the four-term bracketing chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainProbe {
    pub coarse_lower: DualReal,
    pub coarse_upper: DualReal,
    pub fine_lower: DualReal,
    pub fine_upper: DualReal,
    /// Whether lower(coarse) <= lower(fine) <= upper(fine) <= upper(coarse)
    /// holds in the interval's order, up to `slack` per comparison.
    pub holds: bool,
}

/// Evaluates the refinement chain
/// `lower(P) <= lower(P') <= upper(P') <= upper(P)` for a partition and a
/// refinement of it.
pub fn refinement_chain_probe(
    f: &DualFunction,
    coarse: &Partition,
    fine: &Partition,
    method: ExtremaMethod,
    slack: f64,
) -> Result<ChainProbe> {
    if !fine.refines(coarse) {
        return Err(Error::PreconditionFailed {
            message: "second partition must contain every point of the first".into(),
        });
    }
    let a = darboux_sums(f, coarse, method)?;
    let b = darboux_sums(f, fine, method)?;
    let theta = coarse.interval().theta();
    let holds = theta.ge_slack(b.lower, a.lower, slack)
        && theta.ge_slack(b.upper, b.lower, slack)
        && theta.ge_slack(a.upper, b.upper, slack);
    Ok(ChainProbe {
        coarse_lower: a.lower,
        coarse_upper: a.upper,
        fine_lower: b.lower,
        fine_upper: b.upper,
        holds,
    })
}
