//! Evaluation of `Q_{η,μ}(x,y)`, the η-th moment of the partial non-central
//! chi-squared distribution, and of the generalized Marcum Q-function
//! `Q_μ(x,y) = Q_{0,μ}(x,y)`.

mod consistency;
mod recurrence;
mod series;

pub use consistency::consistency_deviation;
pub use recurrence::{
    homogeneous_table, nuttall_q_homogeneous, nuttall_q_ladder, RecurrenceTable, SeedMethod,
};
pub use series::{marcum_p, marcum_q, nuttall_q, nuttall_q_series, SeriesOutcome};

use crate::bessel::{bessel_i_scaled_log, BesselArgument};
use crate::error::{domain, Result};
use crate::incgamma::{ln_gamma, LogScaled};

/// Default relative tolerance of the series.
pub const DEFAULT_TOL: f64 = 1e-15;
/// Default cap on the series index.
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Parameters `(η, μ, x, y)` of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuery {
    pub eta: f64,
    pub mu: f64,
    pub x: f64,
    pub y: f64,
}

impl MomentQuery {
    pub fn new(eta: f64, mu: f64, x: f64, y: f64) -> Result<Self> {
        if !(eta >= 0.0 && eta.is_finite()) {
            return domain(format!("moment order eta must be >= 0, got {eta}"));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return domain(format!("mu must be > 0, got {mu}"));
        }
        if !(x >= 0.0 && x.is_finite()) {
            return domain(format!("x must be >= 0, got {x}"));
        }
        if !(y >= 0.0 && y.is_finite()) {
            return domain(format!("y must be >= 0, got {y}"));
        }
        Ok(MomentQuery { eta, mu, x, y })
    }

    /// `η` as a count; the recurrences couple η to η-1 and need an integer.
    pub fn integer_eta(&self) -> Result<usize> {
        integer_order(self.eta)
    }
}

pub(crate) fn integer_order(eta: f64) -> Result<usize> {
    if eta.fract() != 0.0 || eta < 0.0 {
        return domain(format!("recurrence methods need a non-negative integer eta, got {eta}"));
    }
    Ok(eta as usize)
}

/// The forcing term of the μ-recurrence,
/// `(y/x)^{μ/2} y^η e^{-x-y} I_μ(2√(xy))`, written as
/// `(y/x)^{μ/2} y^η e^{-(√x-√y)²} e^{-z} I_μ(z)` so no raw exponential is
/// formed. At `x = 0` the limit `y^{μ+η} e^{-y} / Γ(μ+1)` is returned.
pub fn inhomogeneous_term(eta: f64, mu: f64, x: f64, y: f64) -> LogScaled {
    if y == 0.0 {
        return LogScaled::ZERO;
    }
    if x == 0.0 {
        let ln = (mu + eta) * y.ln() - y - ln_gamma(mu + 1.0);
        return LogScaled::from_log(1, ln);
    }
    let z = 2.0 * (x * y).sqrt();
    let gap = x.sqrt() - y.sqrt();
    let bessel = bessel_i_scaled_log(
        BesselArgument::new(mu, z).expect("order and argument are non-negative"),
    );
    let powers =
        LogScaled::from_f64(y).powf(0.5 * mu + eta) / LogScaled::from_f64(x).powf(0.5 * mu);
    powers * LogScaled::from_log(1, -gap * gap) * bessel
}
