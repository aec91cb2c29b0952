//! Log-gamma and the related scaled quantities used by the incomplete gamma
//! ratio and the Bessel series.

use std::f64::consts::PI;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_78;

/// The Stirling sum is used from this argument up.
const STIRLING_MIN: f64 = 10.0;

/// Taylor coefficients of `1/Γ(1+a)` about `a = 0`, from index 1.
const RGAMMA1P_COEFFS: [f64; 30] = [
    0.577_215_664_901_532_860_606_5,
    -0.655_878_071_520_253_881_077,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_501_7,
    -0.042_197_734_555_544_336_748_21,
    -0.009_621_971_527_876_973_562_115,
    0.007_218_943_246_663_099_542_395,
    -0.001_165_167_591_859_065_112_114,
    -0.000_215_241_674_114_950_972_815_7,
    0.000_128_050_282_388_116_186_153_2,
    -0.000_020_134_854_780_788_238_655_69,
    -0.000_001_250_493_482_142_670_657_345,
    0.000_001_133_027_231_981_695_882_374,
    -2.056_338_416_977_607_103_45e-7,
    6.116_095_104_481_415_817_862e-9,
    5.002_007_644_469_222_930_056e-9,
    -1.181_274_570_487_020_144_588e-9,
    1.043_426_711_691_100_510_492e-10,
    7.782_263_439_905_071_254_05e-12,
    -3.696_805_618_642_205_708_188e-12,
    5.100_370_287_454_475_979_015e-13,
    -2.058_326_053_566_506_783_222e-14,
    -5.348_122_539_423_017_982_37e-15,
    1.226_778_628_238_260_790_159e-15,
    -1.181_259_301_697_458_769_514e-16,
    1.186_692_254_751_600_332_58e-18,
    1.412_380_655_318_031_781_556e-18,
    -2.298_745_684_435_370_206_592e-19,
    1.714_406_321_927_337_433_384e-20,
    1.337_351_730_493_693_114_865e-22,
];

/// Tail of the Stirling series, `ln Γ(z) - [(z-½)ln z - z + ½ln 2π]`, for
/// `z >= 10`.
pub fn stirling_correction(z: f64) -> f64 {
    // B_{2k} / (2k (2k-1)), k = 1..8
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let r = 1.0 / z;
    let r2 = r * r;
    let mut acc = 0.0;
    for c in C.iter().rev() {
        acc = acc * r2 + c;
    }
    acc * r
}

/// `ln Γ(z)` for `z > 0`.
pub fn ln_gamma(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    if z >= STIRLING_MIN {
        return (z - 0.5) * z.ln() - z + HALF_LN_2PI + stirling_correction(z);
    }
    if z < 0.5 {
        return -rgamma1pm1(z).ln_1p() - z.ln();
    }
    if z <= 1.5 {
        return -rgamma1pm1(z - 1.0).ln_1p();
    }
    if z < 2.5 {
        let a = z - 2.0;
        return a.ln_1p() - rgamma1pm1(a).ln_1p();
    }
    // Γ(z) = (z-1)(z-2)…(z-k) Γ(z-k) with z-k in [1.5, 2.5)
    let mut shifted = z;
    let mut prod = 1.0;
    while shifted >= 2.5 {
        shifted -= 1.0;
        prod *= shifted;
    }
    prod.ln() + ln_gamma(shifted)
}

/// `ln(1+t) - t`, accurate for small `|t|`.
pub fn log1pmx(t: f64) -> f64 {
    if t.abs() > 0.5 {
        return t.ln_1p() - t;
    }
    // ln(1+t) = 2 atanh(r), r = t/(2+t), and t - 2r = 2r²/(1-r)
    let r = t / (2.0 + t);
    let r2 = r * r;
    let mut pow = r * r2;
    let mut odd = 0.0;
    let mut k = 3.0;
    loop {
        let term = pow / k;
        odd += term;
        if term.abs() <= 1e-17 * odd.abs() {
            break;
        }
        pow *= r2;
        k += 2.0;
    }
    2.0 * odd - 2.0 * r2 / (1.0 - r)
}

/// `ln(x^a e^{-x} / Γ(a))`, the prefactor shared by both incomplete gamma
/// ratios. For large `a` the logarithm is formed without cancelling the
/// individually large `a ln x` and `ln Γ(a)`.
pub fn ln_gamma_prefix(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    if a < STIRLING_MIN {
        return a * x.ln() - x - ln_gamma(a);
    }
    let t = (x - a) / a;
    // far from x = a, 1 + t would lose the digits of x/a
    let core = if t.abs() > 0.5 {
        a * (x / a).ln() - (x - a)
    } else {
        a * log1pmx(t)
    };
    core + 0.5 * (a / (2.0 * PI)).ln() - stirling_correction(a)
}

/// `1/Γ(1+a) - 1` for `|a| <= 0.5`, without cancellation near zero.
pub fn rgamma1pm1(a: f64) -> f64 {
    debug_assert!(a.abs() <= 0.5);
    let mut acc = 0.0;
    for c in RGAMMA1P_COEFFS.iter().rev() {
        acc = acc * a + c;
    }
    acc * a
}

/// `ln(Γ(base + eta) / Γ(base))` for `0 <= eta < 1`, free of the cancellation
/// between two large log-gamma values.
pub(crate) fn ln_gamma_ratio_frac(eta: f64, base: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&eta) && base > 0.0);
    if eta == 0.0 {
        return 0.0;
    }
    if base < STIRLING_MIN {
        // Γ(b+η)/Γ(b) = Γ(b+m+η)/Γ(b+m) · Π (b+j)/(b+j+η)
        let mut shifted = base;
        let mut log_adj = 0.0;
        while shifted < STIRLING_MIN {
            log_adj += (-eta / (shifted + eta)).ln_1p();
            shifted += 1.0;
        }
        return ln_gamma_ratio_frac(eta, shifted) + log_adj;
    }
    // (b+η-½)ln(b+η) - (b-½)ln b - η = (b-½)ln(1+η/b) + η ln(b+η) - η
    (base - 0.5) * (eta / base).ln_1p() + eta * (base + eta).ln() - eta
        + stirling_correction(base + eta)
        - stirling_correction(base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ln_gamma_at_integers() {
        let mut fact = 1.0f64;
        for n in 1..60 {
            // Γ(n+1) = n!
            fact *= n as f64;
            let got = ln_gamma(n as f64 + 1.0);
            assert!((got - fact.ln()).abs() < 4e-15 * fact.ln().max(1.0), "n={n}");
        }
    }

    #[test]
    fn ln_gamma_half_integers() {
        // Γ(1/2) = √π, Γ(3/2) = √π/2
        assert!((ln_gamma(0.5) - 0.5 * PI.ln()).abs() < 5e-16);
        assert!((ln_gamma(1.5) - (0.5 * PI.ln() - 2f64.ln())).abs() < 5e-16);
    }

    #[test]
    fn ln_gamma_relative_accuracy_near_zeros() {
        // 30-digit references
        let cases = [
            (0.1, 2.252_712_651_734_205_902),
            (0.9, 0.066_376_239_734_742_954_43),
            (1.1, -0.049_872_441_259_839_761_79),
            (1.9, -0.038_984_275_923_083_361_67),
            (2.5, 0.284_682_870_472_919_159_6),
            (3.7, 1.428_072_326_665_388_129),
            (9.99, 12.779_315_214_350_193_36),
        ];
        for (z, expect) in cases {
            assert!(rel(ln_gamma(z), expect) < 1e-14, "z={z}: {}", ln_gamma(z));
        }
    }

    #[test]
    fn prefix_agrees_with_direct_form() {
        for &(a, x) in &[(12.0, 3.0), (30.0, 31.5), (80.0, 10.0), (11.5, 40.0)] {
            let direct: f64 = a * f64::ln(x) - x - ln_gamma(a);
            let stable = ln_gamma_prefix(a, x);
            assert!((direct - stable).abs() < 1e-12 * direct.abs().max(1.0), "{a} {x}");
        }
    }

    #[test]
    fn log1pmx_small_and_large() {
        for &t in &[1e-10, -1e-6, 0.3, -0.45, 0.49, 0.7, 3.0, -0.9] {
            let naive: f64 = f64::ln_1p(t) - t;
            let got = log1pmx(t);
            let tol = if t.abs() < 1e-3 { 1e-6 } else { 1e-14 };
            assert!(rel(got, naive) < tol, "t={t}: {got} vs {naive}");
        }
        assert!(rel(log1pmx(1e-10), -5e-21) < 1e-9);
    }

    #[test]
    fn rgamma1pm1_matches_gamma() {
        // Γ(1.5) = √π/2
        let g = 0.5 * PI.sqrt();
        assert!(rel(rgamma1pm1(0.5), 1.0 / g - 1.0) < 1e-15);
        assert!(rel(rgamma1pm1(-0.5), 1.0 / PI.sqrt() - 1.0) < 1e-15);
        // leading behaviour γ·a
        assert!(rel(rgamma1pm1(1e-12), 0.577_215_664_901_532_9e-12) < 1e-11);
    }

    #[test]
    fn fractional_ratio() {
        // Γ(b+½)/Γ(b) at b = 1: Γ(3/2)/Γ(1) = √π/2
        let got = ln_gamma_ratio_frac(0.5, 1.0);
        assert!((got - (0.5 * PI.sqrt()).ln()).abs() < 1e-15);
        let direct = ln_gamma(40.25) - ln_gamma(40.0);
        assert!((ln_gamma_ratio_frac(0.25, 40.0) - direct).abs() < 1e-13);
    }
}
