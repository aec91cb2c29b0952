//! Brute-force evaluation of the defining integral
//!
//! ```text
//! Q_{η,μ}(x,y) = x^{(1-μ)/2} ∫_y^∞ t^{η+(μ-1)/2} e^{-t-x} I_{μ-1}(2√(xt)) dt,
//! ```
//!
//! independent of the series and the recurrences. The integrand behaves like
//! `t^γ e^{-(√t-√x)²}` with `γ = η + (μ-1)/2`, a bump peaking at
//! `t* = (√x + √(x+4γ))²/4`. The integral is truncated to an interval around
//! the bump, mapped linearly to `[-1, 1]`, substituted with `s = tanh(u)` and
//! summed with the trapezoidal rule on a uniform `u` grid, halving the step
//! until successive sums agree.

use crate::bessel::{bessel_i_scaled_log, BesselArgument};
use crate::error::{domain, Error, Result};
use crate::incgamma::{ln_gamma, LogScaled};
use crate::nuttall::MomentQuery;

/// Smallest node count accepted for the first level.
pub const MIN_NODES: usize = 16;
/// Node count at which refinement gives up.
pub const MAX_NODES: usize = 1 << 20;
/// Relative change between levels accepted as convergence.
pub const REFINE_TOL: f64 = 1e-13;
/// Default endpoint threshold relative to the peak of the integrand.
pub const DEFAULT_EPS: f64 = 1e-16;

/// `|tanh(u)|` stays below `1 - CLIP` on the grid.
const CLIP: f64 = 1e-15;
const SCAN_POINTS: usize = 64;
const MAX_WIDENINGS: usize = 200;

/// Truncation interval and grid for one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// `γ = η + (μ-1)/2`.
    pub gamma_exp: f64,
    /// Maximum of `t^γ e^{-(√t-√x)²}`.
    pub peak: f64,
    pub lower: f64,
    pub upper: f64,
    /// Node count of the first trapezoidal level.
    pub nodes: usize,
}

/// Result of [`tanh_rule_integrate_detailed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOutcome {
    pub value: f64,
    /// Nodes in the final level.
    pub nodes: usize,
    /// Relative change over the last refinement.
    pub est_error: f64,
}

fn check_order(q: &MomentQuery) -> Result<()> {
    if q.mu < 1.0 {
        return domain(format!(
            "quadrature needs mu >= 1 (Bessel order mu-1 >= 0), got {}",
            q.mu
        ));
    }
    Ok(())
}

fn integrand_log(q: &MomentQuery, t: f64) -> LogScaled {
    let gamma = q.eta + 0.5 * (q.mu - 1.0);
    if q.x == 0.0 {
        // x^{(1-μ)/2} I_{μ-1}(2√(xt)) → t^{(μ-1)/2} / Γ(μ)
        let power = LogScaled::from_f64(t).powf(q.eta + q.mu - 1.0);
        return power * LogScaled::from_log(1, -t - ln_gamma(q.mu));
    }
    let z = 2.0 * (q.x * t).sqrt();
    let bessel = bessel_i_scaled_log(
        BesselArgument::new(q.mu - 1.0, z).expect("order and argument are non-negative"),
    );
    let gap = t.sqrt() - q.x.sqrt();
    LogScaled::from_f64(q.x).powf(0.5 * (1.0 - q.mu))
        * LogScaled::from_f64(t).powf(gamma)
        * LogScaled::from_log(1, -gap * gap)
        * bessel
}

/// The integrand `x^{(1-μ)/2} t^γ e^{-(√t-√x)²} e^{-z} I_{μ-1}(z)`,
/// `z = 2√(xt)`, identical to the original one through
/// `e^{-t-x} I(z) = e^{-(√t-√x)²} e^{-z} I(z)`.
pub fn integrand_scaled(q: &MomentQuery, t: f64) -> Result<f64> {
    check_order(q)?;
    if !(t >= q.y) {
        return domain(format!("integrand evaluated at t = {t} below the cut y = {}", q.y));
    }
    Ok(integrand_log(q, t).to_f64())
}

/// Log of the profile `t^γ e^{-(√t-√x)²}`.
fn profile_log(gamma: f64, x: f64, t: f64) -> f64 {
    let gap = t.sqrt() - x.sqrt();
    let power = if gamma == 0.0 { 0.0 } else { gamma * t.ln() };
    power - gap * gap
}

/// Chooses `[lower, upper]` so that the integrand at each free endpoint is
/// below `eps` times its maximum.
///
/// The half-width starts from the profile estimate and is widened until the
/// true integrand also satisfies the endpoint rule; the two can peak at
/// different places when `xt` is small.
pub fn truncation_bounds(q: &MomentQuery, eps: f64) -> Result<QuadratureSpec> {
    check_order(q)?;
    if !(1e-18..=1e-8).contains(&eps) {
        return domain(format!("endpoint threshold must lie in [1e-18, 1e-8], got {eps}"));
    }
    let gamma = q.eta + 0.5 * (q.mu - 1.0);
    let root = q.x.sqrt() + (q.x + 4.0 * gamma).sqrt();
    let peak = 0.25 * root * root;
    let floor = q.y.max(0.0);
    let center = peak.max(floor);
    let ln_eps = eps.ln();

    let mut half = (2.0 * center.sqrt()).max(1.0);
    let bounds = |half: f64| ((center - half).max(floor), center + half);

    let profile_top = profile_log(gamma, q.x, center);
    for _ in 0..MAX_WIDENINGS {
        let (a, b) = bounds(half);
        let left_ok = a <= floor || profile_log(gamma, q.x, a) - profile_top < ln_eps;
        let right_ok = profile_log(gamma, q.x, b) - profile_top < ln_eps;
        if left_ok && right_ok {
            break;
        }
        half *= 1.5;
    }

    for _ in 0..MAX_WIDENINGS {
        let (a, b) = bounds(half);
        let top = (0..=SCAN_POINTS)
            .map(|k| integrand_log(q, a + (b - a) * k as f64 / SCAN_POINTS as f64))
            .fold(LogScaled::ZERO, |m, v| if v > m { v } else { m });
        if top.is_zero() {
            break;
        }
        let below = |t: f64| (integrand_log(q, t) / top).log_magnitude() < ln_eps;
        if (a <= floor || below(a)) && below(b) {
            break;
        }
        half *= 1.5;
    }

    let (lower, upper) = bounds(half);
    Ok(QuadratureSpec {
        gamma_exp: gamma,
        peak,
        lower,
        upper,
        nodes: 64,
    })
}

/// Integral over `[spec.lower, spec.upper]`, see [`tanh_rule_integrate_detailed`].
pub fn tanh_rule_integrate(q: &MomentQuery, spec: &QuadratureSpec) -> Result<f64> {
    tanh_rule_integrate_detailed(q, spec).map(|o| o.value)
}

/// Tanh-mapped trapezoidal rule with nested step halving.
///
/// Each level reuses the previous nodes and adds the midpoints; the
/// refinement stops when the relative change falls below [`REFINE_TOL`] and
/// fails with [`Error::NotConverged`] past [`MAX_NODES`].
pub fn tanh_rule_integrate_detailed(
    q: &MomentQuery,
    spec: &QuadratureSpec,
) -> Result<QuadratureOutcome> {
    check_order(q)?;
    if spec.nodes < MIN_NODES {
        return domain(format!("at least {MIN_NODES} nodes required, got {}", spec.nodes));
    }
    if spec.lower < q.y {
        return domain(format!(
            "lower limit {} lies below the cut y = {}",
            spec.lower, q.y
        ));
    }
    let (a, b) = (spec.lower, spec.upper);
    if !(b > a) {
        return Ok(QuadratureOutcome {
            value: 0.0,
            nodes: 0,
            est_error: 0.0,
        });
    }

    let reference = {
        let at = spec.peak.clamp(a, b);
        let v = integrand_log(q, at);
        if v.is_zero() {
            LogScaled::ONE
        } else {
            v
        }
    };
    let u_max = (2.0 / CLIP - 1.0).ln() * 0.5;
    let width = b - a;

    // integrand times dt/du at grid point u, relative to `reference`
    let node = |u: f64| -> f64 {
        let e = (-2.0 * u.abs()).exp();
        let frac = e / (1.0 + e);
        let t = if u < 0.0 { a + width * frac } else { b - width * frac };
        let jac = 2.0 * width * e / ((1.0 + e) * (1.0 + e));
        (integrand_log(q, t) / reference).to_f64() * jac
    };

    let mut intervals = spec.nodes - 1;
    let mut h = 2.0 * u_max / intervals as f64;
    let mut sum = Neumaier::default();
    for k in 0..=intervals {
        let w = if k == 0 || k == intervals { 0.5 } else { 1.0 };
        sum.add(w * node(-u_max + k as f64 * h));
    }
    let mut estimate = h * sum.total();

    loop {
        if 2 * intervals + 1 > MAX_NODES {
            return Err(Error::NotConverged {
                method: "tanh-rule quadrature",
                iterations: intervals + 1,
                est_error: f64::NAN,
            });
        }
        for k in 0..intervals {
            sum.add(node(-u_max + (k as f64 + 0.5) * h));
        }
        intervals *= 2;
        h *= 0.5;
        let refined = h * sum.total();
        let change = if refined == 0.0 {
            0.0
        } else {
            ((refined - estimate) / refined).abs()
        };
        estimate = refined;
        if change <= REFINE_TOL {
            return Ok(QuadratureOutcome {
                value: (reference * estimate).to_f64(),
                nodes: intervals + 1,
                est_error: change,
            });
        }
    }
}

/// `Q_{η,μ}(x,y)` by quadrature with default truncation.
pub fn quadrature_q(q: &MomentQuery) -> Result<QuadratureOutcome> {
    let spec = truncation_bounds(q, DEFAULT_EPS)?;
    tanh_rule_integrate_detailed(q, &spec)
}

/// Compensated (Neumaier) running sum; fixed summation order keeps results
/// reproducible.
#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
