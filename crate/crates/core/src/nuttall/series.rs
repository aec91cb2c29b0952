use super::{MomentQuery, DEFAULT_MAX_TERMS, DEFAULT_TOL};
use crate::error::{domain, Error, Result};
use crate::incgamma::{gamma_ratio_q, gamma_shape_ratio, q_forward_step, GammaRatioQuery, LogScaled};

/// Consecutive small terms required before the series may stop.
const QUIET_TERMS: usize = 3;

/// Value of a series evaluation together with its convergence record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOutcome {
    pub value: f64,
    /// Final series index reached.
    pub terms_used: usize,
    /// Bound on the relative truncation error.
    pub est_error: f64,
    pub converged: bool,
}

impl SeriesOutcome {
    fn exact(value: f64) -> Self {
        SeriesOutcome {
            value,
            terms_used: 0,
            est_error: 0.0,
            converged: true,
        }
    }

    /// The value, or [`Error::NotConverged`] when the cap was hit.
    pub fn into_result(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NotConverged {
                method: "series",
                iterations: self.terms_used,
                est_error: self.est_error,
            })
        }
    }
}

/// `Q_{η,μ}(x,y) = e^{-x} Σ_n x^n/n! · Γ(η+μ+n)/Γ(μ+n) · Q_{η+μ+n}(y)`.
///
/// The weights `e^{-x} x^n/n! · Γ(η+μ+n)/Γ(μ+n)` are advanced by one
/// multiplication per term in extended range; the incomplete gamma ratios
/// are evaluated once at `n = 0` and then stepped forward in the shape.
///
/// The sum stops once the index has passed `x`, the last three terms were
/// each below `tol` relative to the running sum, and the geometric tail bound
/// (using `Q ≤ 1`) is below `tol`. Hitting `max_terms` first yields an
/// outcome with `converged == false`.
pub fn nuttall_q_series(q: MomentQuery, tol: f64, max_terms: usize) -> Result<SeriesOutcome> {
    if !(1e-15..=1e-6).contains(&tol) {
        return domain(format!("series tolerance must lie in [1e-15, 1e-6], got {tol}"));
    }
    if max_terms == 0 {
        return domain("max_terms must be at least 1");
    }
    let MomentQuery { eta, mu, x, y } = q;
    let shape = eta + mu;

    if eta == 0.0 && y == 0.0 {
        return Ok(SeriesOutcome::exact(1.0));
    }
    let ratio0 = gamma_shape_ratio(eta, mu)?;
    let q0 = if y == 0.0 {
        1.0
    } else {
        gamma_ratio_q(GammaRatioQuery::new(shape, y)?)
    };
    if x == 0.0 {
        return Ok(SeriesOutcome::exact(finish(eta, ratio0 * q0)));
    }

    let mut weight = LogScaled::from_log(1, -x) * ratio0;
    let mut q_n = q0;
    let mut sum = weight * q_n;
    let mut quiet = 0;
    let mut est_error = f64::INFINITY;

    for n in 0..max_terms {
        let nf = n as f64;
        weight = weight * (x / (nf + 1.0) * ((shape + nf) / (mu + nf)));
        if y != 0.0 {
            q_n = q_forward_step(q_n, shape + nf, y);
        }
        let term = weight * q_n;
        sum = sum + term;

        let rel_term = (term / sum).to_f64();
        quiet = if rel_term < tol { quiet + 1 } else { 0 };
        let next = x / (nf + 2.0) * ((shape + nf + 1.0) / (mu + nf + 1.0));
        est_error = if next < 1.0 {
            (weight / sum).to_f64() * next / (1.0 - next)
        } else {
            f64::INFINITY
        };
        let index = n + 1;
        if index as f64 > x && quiet >= QUIET_TERMS && est_error <= tol {
            return Ok(SeriesOutcome {
                value: finish(eta, sum),
                terms_used: index,
                est_error,
                converged: true,
            });
        }
    }
    Ok(SeriesOutcome {
        value: finish(eta, sum),
        terms_used: max_terms,
        est_error,
        converged: false,
    })
}

fn finish(eta: f64, sum: LogScaled) -> f64 {
    let v = sum.to_f64();
    if eta == 0.0 {
        v.clamp(0.0, 1.0)
    } else {
        v
    }
}

/// `Q_{η,μ}(x,y)` by the series at the default tolerance.
pub fn nuttall_q(eta: f64, mu: f64, x: f64, y: f64) -> Result<f64> {
    let q = MomentQuery::new(eta, mu, x, y)?;
    nuttall_q_series(q, DEFAULT_TOL, DEFAULT_MAX_TERMS)?.into_result()
}

/// Generalized Marcum Q-function `Q_μ(x,y)`, the `η = 0` moment.
pub fn marcum_q(mu: f64, x: f64, y: f64) -> Result<f64> {
    nuttall_q(0.0, mu, x, y)
}

/// Complementary Marcum function `P_μ(x,y) = 1 - Q_μ(x,y)`.
pub fn marcum_p(mu: f64, x: f64, y: f64) -> Result<f64> {
    Ok(1.0 - marcum_q(mu, x, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn series(eta: f64, mu: f64, x: f64, y: f64) -> SeriesOutcome {
        nuttall_q_series(MomentQuery::new(eta, mu, x, y).unwrap(), DEFAULT_TOL, DEFAULT_MAX_TERMS)
            .unwrap()
    }

    #[test]
    fn first_table_row() {
        let out = series(1.0, 1.0, 0.1, 1.5);
        assert!(out.converged);
        assert!(rel(out.value, 0.664_409_142_768_356_6) < 5e-15, "{out:?}");
    }

    #[test]
    fn large_moment_beyond_f64_products() {
        let out = series(50.0, 30.0, 5.0, 10.0);
        assert!(out.converged);
        assert!(rel(out.value, 1.173_465_761_333_881_849e89) < 5e-14, "{out:?}");
    }

    #[test]
    fn analytic_reductions() {
        assert_eq!(series(0.0, 2.0, 3.0, 0.0).value, 1.0);
        // x = 0: Γ(3,1)/Γ(1) = 5/e
        let v = series(2.0, 1.0, 0.0, 1.0).value;
        assert!(rel(v, 1.839_397_205_857_211_7) < 1e-15);
        assert_eq!(marcum_q(4.0, 7.0, 0.0).unwrap(), 1.0);
        assert!(rel(marcum_q(1.0, 0.0, 2.0).unwrap(), 0.135_335_283_236_612_7) < 1e-15);
    }

    #[test]
    fn marcum_complement() {
        let q = marcum_q(3.0, 2.0, 4.5).unwrap();
        let p = marcum_p(3.0, 2.0, 4.5).unwrap();
        assert_eq!(p + q, 1.0);
        assert!(q > 0.0 && q < 1.0);
    }

    #[test]
    fn stops_past_the_peak() {
        let out = series(1.0, 1.0, 40.0, 2.0);
        assert!(out.converged && out.terms_used as f64 > 40.0);
        assert!(out.est_error <= DEFAULT_TOL);
    }

    #[test]
    fn reports_non_convergence() {
        let q = MomentQuery::new(1.0, 1.0, 30.0, 2.0).unwrap();
        let out = nuttall_q_series(q, 1e-12, 5).unwrap();
        assert!(!out.converged);
        assert_eq!(out.terms_used, 5);
        assert!(matches!(out.into_result(), Err(Error::NotConverged { .. })));
    }

    #[test]
    fn rejects_bad_controls() {
        let q = MomentQuery::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(nuttall_q_series(q, 1e-3, 10).is_err());
        assert!(nuttall_q_series(q, 1e-18, 10).is_err());
        assert!(nuttall_q_series(q, 1e-12, 0).is_err());
    }
}
