//! Moments of the partial non-central chi-squared distribution function,
//! also known as Nuttall Q-functions,
//!
//! ```text
//! Q_{η,μ}(x,y) = x^{(1-μ)/2} ∫_y^∞ t^{η+(μ-1)/2} e^{-t-x} I_{μ-1}(2√(xt)) dt.
//! ```
//!
//! Three independent evaluation routes are provided:
//!
//! * [`nuttall::nuttall_q_series`]: the Neumann-type series in normalized
//!   incomplete gamma ratios, accumulated in extended range;
//! * [`nuttall::nuttall_q_ladder`] and [`nuttall::nuttall_q_homogeneous`]:
//!   forward recurrences in μ seeded from the series;
//! * [`quadrature::tanh_rule_integrate`]: a truncated, tanh-mapped
//!   trapezoidal rule on the defining integral.
//!
//! The generalized Marcum Q-function is the `η = 0` case, see
//! [`nuttall::marcum_q`].

pub mod bessel;
pub mod cli;
mod error;
pub mod incgamma;
pub mod nuttall;
pub mod quadrature;

pub use error::{Error, Result};
pub use incgamma::LogScaled;
pub use nuttall::{MomentQuery, RecurrenceTable, SeriesOutcome};
