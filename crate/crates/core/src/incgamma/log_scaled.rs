use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

const LN2_HI: f64 = 6.931_471_803_691_238_164_90e-1;
const LN2_LO: f64 = 1.908_214_929_270_587_700_02e-10;

/// A real number carried as `sign · exp(log_magnitude)` so that products and
/// ratios of huge or tiny factors never leave the working range.
///
/// Internally the value is stored as a binary mantissa in `[0.5, 1)` and an
/// unbounded power of two. Multiplication and division are therefore exact up
/// to one rounding of the mantissa, which a plain `(sign, ln|v|)` pair cannot
/// offer once `|ln|v||` grows past a few hundred.
#[derive(Clone, Copy, PartialEq)]
pub struct LogScaled {
    mant: f64,
    exp2: i64,
}

impl LogScaled {
    pub const ZERO: LogScaled = LogScaled { mant: 0.0, exp2: 0 };
    pub const ONE: LogScaled = LogScaled { mant: 0.5, exp2: 1 };

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            return Self::ZERO;
        }
        debug_assert!(v.is_finite(), "LogScaled::from_f64 on {v}");
        let (mant, e) = libm::frexp(v);
        LogScaled {
            mant,
            exp2: e as i64,
        }
    }

    /// Builds `sign · exp(log_magnitude)`. `sign == 0` or a log of `-inf`
    /// gives zero.
    pub fn from_log(sign: i8, log_magnitude: f64) -> Self {
        if sign == 0 || log_magnitude == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        debug_assert!(log_magnitude.is_finite());
        let k = (log_magnitude / std::f64::consts::LN_2).round();
        let r = (log_magnitude - k * LN2_HI) - k * LN2_LO;
        let m = r.exp() * f64::from(sign.signum());
        let mut out = Self::from_f64(m);
        out.exp2 += k as i64;
        out
    }

    /// Natural logarithm of `x`, exact to the rounding of `ln`.
    pub fn ln_of(x: f64) -> f64 {
        Self::from_f64(x).log_magnitude()
    }

    pub fn sign(&self) -> i8 {
        if self.mant > 0.0 {
            1
        } else if self.mant < 0.0 {
            -1
        } else {
            0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0.0
    }

    /// `ln|v|`, or `-inf` for zero.
    pub fn log_magnitude(&self) -> f64 {
        if self.mant == 0.0 {
            return f64::NEG_INFINITY;
        }
        self.mant.abs().ln() + self.exp2 as f64 * std::f64::consts::LN_2
    }

    /// Materializes the value; saturates to `±inf` or flushes to zero outside
    /// the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.mant == 0.0 {
            return 0.0;
        }
        let e = self.exp2.clamp(-2200, 2200) as i32;
        libm::ldexp(self.mant, e)
    }

    pub fn abs(self) -> Self {
        LogScaled {
            mant: self.mant.abs(),
            exp2: self.exp2,
        }
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    /// `self^p` for a non-negative base.
    pub fn powf(self, p: f64) -> Self {
        debug_assert!(self.mant >= 0.0);
        if p == 0.0 {
            return Self::ONE;
        }
        if self.is_zero() {
            return if p > 0.0 { Self::ZERO } else { Self::from_f64(f64::INFINITY) };
        }
        let x = self.to_f64();
        let direct = x.powf(p);
        if direct.is_normal() && x.is_normal() {
            return Self::from_f64(direct);
        }
        if x.is_normal() {
            // x^p = (x^{p/2^k})^{2^k}; halving p is exact and each squaring
            // only doubles a one-ulp error
            let log = p * x.ln();
            let k = (log.abs() / 700.0).log2().ceil().max(1.0);
            if k <= 30.0 {
                let root = x.powf(libm::ldexp(p, -(k as i32)));
                if root.is_normal() {
                    let mut out = Self::from_f64(root);
                    for _ in 0..k as i32 {
                        out = out * out;
                    }
                    return out;
                }
            }
        }
        Self::from_log(1, p * self.log_magnitude())
    }

    fn normalize(mant: f64, exp2: i64) -> Self {
        if mant == 0.0 {
            return Self::ZERO;
        }
        let (m, e) = libm::frexp(mant);
        LogScaled {
            mant: m,
            exp2: exp2 + e as i64,
        }
    }
}

impl Default for LogScaled {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for LogScaled {
    fn from(v: f64) -> Self {
        Self::from_f64(v)
    }
}

impl fmt::Debug for LogScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LogScaled {{ sign: {}, log_magnitude: {:e} }}",
            self.sign(),
            self.log_magnitude()
        )
    }
}

impl fmt::Display for LogScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_f64();
        if v.is_finite() && (v != 0.0 || self.is_zero()) {
            write!(f, "{v:e}")
        } else {
            // base-10 rendering of an out-of-range value
            let l10 = self.log_magnitude() / std::f64::consts::LN_10;
            let e = l10.floor();
            let m = 10f64.powf(l10 - e) * f64::from(self.sign());
            write!(f, "{m}e{e}")
        }
    }
}

impl Mul for LogScaled {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::normalize(self.mant * rhs.mant, self.exp2 + rhs.exp2)
    }
}

impl Mul<f64> for LogScaled {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self * Self::from_f64(rhs)
    }
}

impl Div for LogScaled {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "LogScaled division by zero");
        Self::normalize(self.mant / rhs.mant, self.exp2 - rhs.exp2)
    }
}

impl Div<f64> for LogScaled {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        self / Self::from_f64(rhs)
    }
}

impl Neg for LogScaled {
    type Output = Self;
    fn neg(self) -> Self {
        LogScaled {
            mant: -self.mant,
            exp2: self.exp2,
        }
    }
}

impl Add for LogScaled {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exp2 >= rhs.exp2 {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let shift = big.exp2 - small.exp2;
        if shift > 60 {
            return big;
        }
        let aligned = libm::ldexp(small.mant, -(shift as i32));
        Self::normalize(big.mant + aligned, big.exp2)
    }
}

impl Sub for LogScaled {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl PartialOrd for LogScaled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (sa, sb) = (self.sign(), other.sign());
        if sa != sb {
            return sa.partial_cmp(&sb);
        }
        if sa == 0 {
            return Some(Ordering::Equal);
        }
        let mag = match self.exp2.cmp(&other.exp2) {
            Ordering::Equal => self.mant.abs().partial_cmp(&other.mant.abs())?,
            o => o,
        };
        Some(if sa > 0 { mag } else { mag.reverse() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_beyond_f64_range() {
        let big = LogScaled::from_f64(1e300);
        let p = big * big * big;
        assert!((p.log_magnitude() - 900.0 * std::f64::consts::LN_10).abs() < 1e-12);
        let back = p / big / big;
        assert_eq!(back.to_f64(), 1e300);
        assert_eq!(p.to_f64(), f64::INFINITY);
    }

    #[test]
    fn from_log_round_trip() {
        for &l in &[-700.5, -3.25, 0.0, 1e-12, 2.0, 205.3, 1234.5] {
            let v = LogScaled::from_log(1, l);
            let back = v.log_magnitude();
            assert!((back - l).abs() <= 1e-15 * l.abs().max(1.0), "{l} -> {back}");
        }
        assert!(LogScaled::from_log(0, 3.0).is_zero());
        assert!(LogScaled::from_log(1, f64::NEG_INFINITY).is_zero());
        assert_eq!(LogScaled::from_log(-1, 0.0).to_f64(), -1.0);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = LogScaled::from_f64(3.0);
        let b = LogScaled::from_f64(0.125);
        assert_eq!((a + b).to_f64(), 3.125);
        assert_eq!((a - a).to_f64(), 0.0);
        assert_eq!((b - a).to_f64(), -2.875);
        let huge = LogScaled::from_log(1, 2000.0);
        assert_eq!(huge + a, huge);
    }

    #[test]
    fn ordering_and_sign() {
        let a = LogScaled::from_f64(-2.0);
        let b = LogScaled::from_f64(-0.5);
        let c = LogScaled::from_log(1, 900.0);
        assert!(a < b && b < LogScaled::ZERO && LogScaled::ZERO < c);
        assert_eq!(a.sign(), -1);
        assert_eq!(LogScaled::ZERO.sign(), 0);
        assert_eq!(LogScaled::ZERO.log_magnitude(), f64::NEG_INFINITY);
    }

    #[test]
    fn powf_matches_std_in_range() {
        let v = LogScaled::from_f64(7.5).powf(3.3);
        assert_eq!(v.to_f64(), 7.5f64.powf(3.3));
        let w = LogScaled::from_f64(20.0).powf(300.0);
        let expect = 300.0 * 20f64.ln();
        assert!((w.log_magnitude() - expect).abs() < 1e-12);
        // 43.5^191.43... = e^722.23..., past f64 range
        let big = LogScaled::from_f64(43.5).powf(191.433_211_859_363_38) / LogScaled::from_log(1, 722.0);
        assert!((big.to_f64() / 0.231_743_957_001_452_714_9f64.exp() - 1.0).abs() < 2e-15);
    }
}
