use super::series::nuttall_q_series;
use super::{inhomogeneous_term, integer_order, MomentQuery, DEFAULT_MAX_TERMS, DEFAULT_TOL};
use crate::error::{domain, Result};
use crate::incgamma::LogScaled;

/// Deviation from 1 of
///
/// ```text
/// Q_{η,μ+1} / (Q_{η,μ} + η Q_{η-1,μ+1} + (y/x)^{μ/2} y^η e^{-x-y} I_μ(2√(xy)))
/// ```
///
/// with every moment taken from the series. This is the accuracy metric of
/// the library. At `x = 0` the forcing term is replaced by its limit
/// `y^{μ+η} e^{-y}/Γ(μ+1)`, so the check stays on the series path.
pub fn consistency_deviation(q: MomentQuery) -> Result<f64> {
    let eta = integer_order(q.eta)?;
    if eta == 0 {
        return domain("consistency check needs eta >= 1");
    }
    let eval = |eta: f64, mu: f64| -> Result<LogScaled> {
        let q = MomentQuery::new(eta, mu, q.x, q.y)?;
        let out = nuttall_q_series(q, DEFAULT_TOL, DEFAULT_MAX_TERMS)?;
        out.into_result()?;
        Ok(LogScaled::from_f64(out.value))
    };
    let ef = eta as f64;
    let lhs = eval(ef, q.mu + 1.0)?;
    let same = eval(ef, q.mu)?;
    let lower = eval(ef - 1.0, q.mu + 1.0)?;
    let forcing = inhomogeneous_term(ef, q.mu, q.x, q.y);
    let rhs = same + lower * ef + forcing;
    Ok((1.0 - (lhs / rhs).to_f64()).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dev(eta: f64, mu: f64, x: f64, y: f64) -> f64 {
        consistency_deviation(MomentQuery::new(eta, mu, x, y).unwrap()).unwrap()
    }

    #[test]
    fn table_points() {
        assert!(dev(1.0, 1.0, 0.1, 1.5) <= 1e-12);
        assert!(dev(5.0, 10.0, 5.0, 10.0) <= 1e-12);
    }

    #[test]
    fn zero_cut_is_rounding_level() {
        assert!(dev(1.0, 2.0, 2.0, 0.0) <= 1e-14);
    }

    #[test]
    fn zero_x_uses_limit() {
        assert!(dev(2.0, 3.0, 0.0, 4.0) <= 1e-13);
    }

    #[test]
    fn needs_integer_eta() {
        let q = MomentQuery::new(1.5, 1.0, 1.0, 1.0).unwrap();
        assert!(consistency_deviation(q).is_err());
        let q = MomentQuery::new(0.0, 1.0, 1.0, 1.0).unwrap();
        assert!(consistency_deviation(q).is_err());
    }
}
