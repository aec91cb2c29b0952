//! Modified Bessel function of the first kind, `I_ν(z)`, for real `ν >= 0`
//! and `z >= 0`.
//!
//! Values come from the Maclaurin series
//!
//! ```text
//! I_ν(z) = (z/2)^ν Σ_n (z²/4)^n / (n! Γ(ν+n+1))
//! ```
//!
//! summed outward from its largest term with the factor `e^{-z}` folded
//! in, so the scaled function `e^{-z} I_ν(z)` never overflows. The ratio
//! `I_{ν+1}(z)/I_ν(z)` is evaluated independently by continued fraction.

use crate::error::{domain, Result};
use std::f64::consts::PI;

use crate::incgamma::{gamma_shape_ratio, log1pmx, stirling_correction, LogScaled};

const CF_TINY: f64 = 1e-30;
const CF_TOL: f64 = 1e-15;
const CF_MAX_ITER: usize = 10_000;
const SERIES_MAX_TERMS: usize = 1_000_000;

/// Order and argument of a Bessel evaluation, both non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselArgument {
    order: f64,
    arg: f64,
}

impl BesselArgument {
    pub fn new(order: f64, arg: f64) -> Result<Self> {
        if !(order >= 0.0 && order.is_finite()) {
            return domain(format!("Bessel order must be non-negative, got {order}"));
        }
        if !(arg >= 0.0 && arg.is_finite()) {
            return domain(format!("Bessel argument must be non-negative, got {arg}"));
        }
        Ok(BesselArgument { order, arg })
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn arg(&self) -> f64 {
        self.arg
    }
}

/// `e^{-z} I_ν(z)` in extended range.
pub fn bessel_i_scaled_log(b: BesselArgument) -> LogScaled {
    let (nu, z) = (b.order, b.arg);
    if z == 0.0 {
        return if nu == 0.0 {
            LogScaled::ONE
        } else {
            LogScaled::ZERO
        };
    }
    let half = 0.5 * z;
    let h2 = half * half;
    // Terms peak where h²/((n+1)(n+ν+1)) crosses 1. Summing outward from
    // there keeps every quantity O(1); the log of the peak term is a sum of
    // two small, well-conditioned gamma prefixes.
    let root = 0.5 * ((nu * nu + 4.0 * h2).sqrt() - (nu + 2.0));
    let m = if root > 0.0 { root.ceil() } else { 0.0 };
    // e^{-z} (z/2)^{2m+ν} / (m! Γ(m+ν+1))
    let peak = lead_factor(m, 0.0, half) * lead_factor(m, nu, half);

    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut n = m;
    for _ in 0..SERIES_MAX_TERMS {
        term *= h2 / ((n + 1.0) * (n + nu + 1.0));
        sum += term;
        n += 1.0;
        if term <= 1e-17 * sum {
            break;
        }
    }
    term = 1.0;
    n = m;
    while n > 0.0 {
        term *= n * (n + nu) / h2;
        sum += term;
        n -= 1.0;
        if term <= 1e-17 * sum {
            break;
        }
    }
    peak * sum
}

/// `h^{m+ν} e^{-h} / Γ(m+ν+1)` for integer `m >= 0`.
///
/// Exponentiating a logarithm of size `L` costs `L` ulps, so the log form is
/// used only near `h = m+ν+1`, where it is small; elsewhere the powers, the
/// exponential and the rising-product gammas are multiplied directly. `m`
/// and `ν` are never added, since a rounded exponent would be amplified.
fn lead_factor(m: f64, nu: f64, h: f64) -> LogScaled {
    let a = m + nu + 1.0;
    let gap = ((h - m) - 1.0) - nu;
    if a >= 10.0 && gap.abs() <= 0.5 * a {
        let ln = a * log1pmx(gap / a) + 0.5 * (a / (2.0 * PI)).ln() - stirling_correction(a) - h.ln();
        return LogScaled::from_log(1, ln);
    }
    let base = LogScaled::from_f64(h);
    let gamma = gamma_shape_ratio(nu, 1.0).and_then(|g| Ok(g * gamma_shape_ratio(m, nu + 1.0)?));
    base.powf(nu) * base.powf(m) * LogScaled::from_log(1, -h) / gamma.expect("positive base")
}

/// `e^{-z} I_ν(z)`, in `[0, 1]`.
pub fn bessel_i_scaled(b: BesselArgument) -> f64 {
    bessel_i_scaled_log(b).to_f64()
}

/// `I_ν(z)` in extended range.
pub fn bessel_i(b: BesselArgument) -> LogScaled {
    bessel_i_scaled_log(b) * LogScaled::from_log(1, b.arg)
}

/// `I_{ν+1}(z) / I_ν(z)` by the continued fraction
///
/// ```text
/// z / (2(ν+1) + z² / (2(ν+2) + z² / (2(ν+3) + …)))
/// ```
///
/// evaluated with the modified Lentz algorithm. Returns `NaN` for negative
/// arguments.
pub fn bessel_ratio(order: f64, arg: f64) -> f64 {
    if !(order >= 0.0 && arg >= 0.0) {
        return f64::NAN;
    }
    if arg == 0.0 {
        return 0.0;
    }
    let z2 = arg * arg;
    let mut f = 2.0 * (order + 1.0);
    let mut c = f;
    let mut d = 0.0;
    for k in 1..CF_MAX_ITER {
        let bk = 2.0 * (order + 1.0 + k as f64);
        d = bk + z2 * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = bk + z2 / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < CF_TOL {
            break;
        }
    }
    arg / f
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn arg(order: f64, z: f64) -> BesselArgument {
        BesselArgument::new(order, z).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_i_scaled(arg(0.0, 0.0)), 1.0);
        assert_eq!(bessel_i_scaled(arg(3.0, 0.0)), 0.0);
        assert_eq!(bessel_i(arg(0.0, 0.0)).to_f64(), 1.0);
    }

    #[test]
    fn scaled_i1_at_two() {
        // 40-digit reference
        let got = bessel_i_scaled(arg(1.0, 2.0));
        assert!(rel(got, 0.215_269_289_248_937_659_16) < 1e-15, "{got}");
    }

    #[test]
    fn half_order_closed_form() {
        for &z in &[0.3, 1.0, 7.5, 30.0] {
            let expect = (2.0 / (PI * z)).sqrt() * f64::sinh(z);
            assert!(rel(bessel_i(arg(0.5, z)).to_f64(), expect) < 1e-14, "z={z}");
        }
    }

    #[test]
    fn large_argument_stays_finite() {
        let v = bessel_i_scaled(arg(2.0, 5000.0));
        // e^{-z} I_ν(z) ~ 1/√(2πz)
        assert!(rel(v, 1.0 / (2.0 * PI * 5000.0).sqrt()) < 1e-3);
        let big = bessel_i(arg(2.0, 5000.0));
        assert!(big.to_f64().is_infinite() && big.log_magnitude() > 4990.0);
    }

    #[test]
    fn negative_inputs_rejected() {
        assert!(BesselArgument::new(-1.0, 1.0).is_err());
        assert!(BesselArgument::new(1.0, -1e-3).is_err());
        assert!(bessel_ratio(1.0, -2.0).is_nan());
    }

    #[test]
    fn ratio_small_argument() {
        assert_eq!(bessel_ratio(0.0, 0.0), 0.0);
        assert!((bessel_ratio(0.0, 1e-8) - 5e-9).abs() < 1e-20);
        assert!((bessel_ratio(4.0, 1e-6) - 1e-6 / 10.0).abs() < 1e-18);
    }

    #[test]
    fn ratio_at_table_point() {
        // x = 2, y = 3: z = 2√6; 40-digit reference
        let got = bessel_ratio(2.0, 2.0 * 6f64.sqrt());
        assert!(rel(got, 0.583_861_280_387_402_358_9) < 1e-15, "{got}");
    }

    #[test]
    fn hard_regions() {
        // 40-digit references at the exact binary inputs
        let cases = [
            (2.255_696_335_922_176_7, 48.156_600_543_044_604, 0.054_643_513_837_207_561_891),
            (29.0, 0.01, 2.085_685_023_410_181_550_6e-98),
            (127.296_810_514_693_23, 0.477_467_724_438_433_4, 3.156_696_238_969_453_022_2e-294),
            (191.433_211_859_363_38, 87.070_208_637_690_65, 6.818_402_141_189_225_782_5e-76),
        ];
        for (nu, z, want) in cases {
            let got = bessel_i_scaled(arg(nu, z));
            assert!(rel(got, want) < 5e-15, "({nu}, {z}): {got:e} vs {want:e}");
        }
    }
}
