//! Numeric carriers: plain `f64` and a sign + base-2 logarithm scalar for
//! instances whose lengths overflow any fixed-width float.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// A real number stored as `sign * 2^log2mag`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScalar {
    pub sign: i8,
    pub log2mag: f64,
}

impl LogScalar {
    pub const ZERO: LogScalar = LogScalar { sign: 0, log2mag: f64::NEG_INFINITY };
    pub const ONE: LogScalar = LogScalar { sign: 1, log2mag: 0.0 };

    /// Positive value `2^log2`.
    pub fn from_log2(log2: f64) -> Self {
        if log2 == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self { sign: 1, log2mag: log2 }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self { sign: if x > 0.0 { 1 } else { -1 }, log2mag: x.abs().log2() }
        }
    }

    /// Saturating conversion: overflow gives `±inf`, underflow gives `0`.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            self.sign as f64 * self.log2mag.exp2()
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// Compensated sum after aligning every term to the largest exponent.
    pub fn sum<I: IntoIterator<Item = LogScalar>>(terms: I) -> LogScalar {
        let terms: Vec<LogScalar> = terms.into_iter().filter(|t| t.sign != 0).collect();
        let Some(top) = terms.iter().map(|t| t.log2mag).reduce(f64::max) else {
            return Self::ZERO;
        };
        if top == f64::INFINITY {
            let s: i32 = terms.iter().filter(|t| t.log2mag == top).map(|t| t.sign as i32).sum();
            return LogScalar { sign: s.signum() as i8, log2mag: top };
        }
        // Neumaier summation in linear space relative to 2^top
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for t in &terms {
            let x = t.sign as f64 * (t.log2mag - top).exp2();
            let s = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - s) + x;
            } else {
                comp += (x - s) + sum;
            }
            sum = s;
        }
        let total = sum + comp;
        if total == 0.0 {
            Self::ZERO
        } else {
            LogScalar { sign: if total > 0.0 { 1 } else { -1 }, log2mag: top + total.abs().log2() }
        }
    }
}

impl Add for LogScalar {
    type Output = LogScalar;
    fn add(self, rhs: LogScalar) -> LogScalar {
        LogScalar::sum([self, rhs])
    }
}

impl Mul for LogScalar {
    type Output = LogScalar;
    fn mul(self, rhs: LogScalar) -> LogScalar {
        if self.sign == 0 || rhs.sign == 0 {
            return LogScalar::ZERO;
        }
        LogScalar { sign: self.sign * rhs.sign, log2mag: self.log2mag + rhs.log2mag }
    }
}

impl Div for LogScalar {
    type Output = LogScalar;
    fn div(self, rhs: LogScalar) -> LogScalar {
        if self.sign == 0 {
            return LogScalar::ZERO;
        }
        if rhs.sign == 0 {
            return LogScalar { sign: self.sign, log2mag: f64::INFINITY };
        }
        LogScalar { sign: self.sign * rhs.sign, log2mag: self.log2mag - rhs.log2mag }
    }
}

impl PartialOrd for LogScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.log2mag.partial_cmp(&other.log2mag),
                _ => other.log2mag.partial_cmp(&self.log2mag),
            },
            ord => Some(ord),
        }
    }
}

/// A length or distance: an `f64` for float instances, an exact integer for
/// log-precision instances.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Float(f64),
    Exact(BigUint),
}

impl Measure {
    pub fn is_zero(&self) -> bool {
        match self {
            Measure::Float(x) => *x == 0.0,
            Measure::Exact(n) => n.is_zero(),
        }
    }

    pub fn log2(&self) -> f64 {
        match self {
            Measure::Float(x) => x.log2(),
            Measure::Exact(n) => biguint_log2(n),
        }
    }

    /// Saturates to `inf` past the float range.
    pub fn to_f64(&self) -> f64 {
        match self {
            Measure::Float(x) => *x,
            Measure::Exact(n) => {
                if n.bits() > 1024 {
                    f64::INFINITY
                } else {
                    n.to_f64().unwrap_or(f64::INFINITY)
                }
            }
        }
    }

    /// `ceil(lg x)` computed exactly for integer magnitudes.
    pub fn ceil_lg(&self) -> i64 {
        match self {
            Measure::Float(x) => x.log2().ceil() as i64,
            Measure::Exact(n) => {
                if n.is_zero() {
                    i64::MIN
                } else {
                    (n - 1u32).bits() as i64
                }
            }
        }
    }

    pub fn min_of(a: Measure, b: Measure) -> Measure {
        match (&a, &b) {
            (Measure::Float(x), Measure::Float(y)) => Measure::Float(x.min(*y)),
            (Measure::Exact(x), Measure::Exact(y)) => {
                if x <= y {
                    a
                } else {
                    b
                }
            }
            _ => {
                if a.log2() <= b.log2() {
                    a
                } else {
                    b
                }
            }
        }
    }
}

pub(crate) fn biguint_log2(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return (n.to_u64().expect("fits in u64") as f64).log2();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("fits in u64");
    (top as f64).log2() + shift as f64
}

/// Arithmetic shared by the float and log-domain evaluation paths.
pub(crate) trait Scalar:
    Copy + PartialOrd + Add<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn from_measure(m: &Measure) -> Self;
    fn powf(self, e: f64) -> Self;
    /// Base-2 logarithm of a positive value.
    fn lg(self) -> Self;
    fn sum<I: IntoIterator<Item = Self>>(it: I) -> Self;
    fn to_f64(self) -> f64;
    fn to_log(self) -> LogScalar;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_measure(m: &Measure) -> Self {
        m.to_f64()
    }
    fn powf(self, e: f64) -> Self {
        f64::powf(self, e)
    }
    fn lg(self) -> Self {
        self.log2()
    }
    fn sum<I: IntoIterator<Item = Self>>(it: I) -> Self {
        it.into_iter().sum()
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn to_log(self) -> LogScalar {
        LogScalar::from_f64(self)
    }
}

impl Scalar for LogScalar {
    fn from_f64(x: f64) -> Self {
        LogScalar::from_f64(x)
    }
    fn from_measure(m: &Measure) -> Self {
        LogScalar::from_log2(m.log2())
    }
    fn powf(self, e: f64) -> Self {
        match self.sign {
            0 if e > 0.0 => LogScalar::ZERO,
            0 if e == 0.0 => LogScalar::ONE,
            0 => LogScalar { sign: 1, log2mag: f64::INFINITY },
            1 => LogScalar { sign: 1, log2mag: self.log2mag * e },
            _ => LogScalar { sign: 1, log2mag: f64::NAN },
        }
    }
    fn lg(self) -> Self {
        LogScalar::from_f64(self.log2mag)
    }
    fn sum<I: IntoIterator<Item = Self>>(it: I) -> Self {
        LogScalar::sum(it)
    }
    fn to_f64(self) -> f64 {
        LogScalar::to_f64(self)
    }
    fn to_log(self) -> LogScalar {
        self
    }
}
