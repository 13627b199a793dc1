//! Dual-path scalar: exact rationals when every input is an integer,
//! IEEE doubles otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Relative tolerance used by every comparison on the float path.
pub const FLOAT_REL_TOL: f64 = 1e-9;

/// A scalar result: exact when computed from integer inputs.
#[derive(Clone, Copy, Debug)]
pub enum Number {
    Exact(Ratio<i128>),
    Float(f64),
}

impl Number {
    pub fn exact(numer: i128, denom: i128) -> Self {
        Number::Exact(Ratio::new(numer, denom))
    }

    pub fn int(value: i128) -> Self {
        Number::Exact(Ratio::from_integer(value))
    }

    pub fn zero_like(&self) -> Self {
        match self {
            Number::Exact(_) => Number::int(0),
            Number::Float(_) => Number::Float(0.0),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact(_))
    }

    pub fn as_ratio(&self) -> Option<Ratio<i128>> {
        match self {
            Number::Exact(r) => Some(*r),
            Number::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => {
                r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
            }
            Number::Float(x) => *x,
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Number::Exact(r) => Number::Exact(r.abs()),
            Number::Float(x) => Number::Float(x.abs()),
        }
    }

    /// Compares two values. Exact pairs compare exactly; anything involving a
    /// float compares with relative tolerance against `scale` (or the larger
    /// magnitude of the operands when that is bigger).
    pub fn compare_with_scale(&self, other: &Number, scale: f64) -> Ordering {
        match (self, other) {
            (Number::Exact(a), Number::Exact(b)) => a.cmp(b),
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                let tol = FLOAT_REL_TOL * scale.abs().max(a.abs()).max(b.abs());
                if (a - b).abs() <= tol {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn compare(&self, other: &Number) -> Ordering {
        self.compare_with_scale(other, 0.0)
    }

    /// Sign relative to `scale`: on the float path values within
    /// `FLOAT_REL_TOL * scale` of zero count as zero.
    pub fn signum_with_scale(&self, scale: f64) -> Ordering {
        self.compare_with_scale(&self.zero_like(), scale)
    }

    pub fn is_positive_with_scale(&self, scale: f64) -> bool {
        self.signum_with_scale(scale) == Ordering::Greater
    }

    pub fn approx_eq(&self, other: &Number) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

fn combine(
    a: Number,
    b: Number,
    exact: impl Fn(Ratio<i128>, Ratio<i128>) -> Ratio<i128>,
    float: impl Fn(f64, f64) -> f64,
) -> Number {
    match (a, b) {
        (Number::Exact(x), Number::Exact(y)) => Number::Exact(exact(x, y)),
        _ => Number::Float(float(a.to_f64(), b.to_f64())),
    }
}

impl Add for Number {
    type Output = Number;
    fn add(self, rhs: Number) -> Number {
        combine(self, rhs, |x, y| x + y, |x, y| x + y)
    }
}

impl Sub for Number {
    type Output = Number;
    fn sub(self, rhs: Number) -> Number {
        combine(self, rhs, |x, y| x - y, |x, y| x - y)
    }
}

impl Mul for Number {
    type Output = Number;
    fn mul(self, rhs: Number) -> Number {
        combine(self, rhs, |x, y| x * y, |x, y| x * y)
    }
}

impl Neg for Number {
    type Output = Number;
    fn neg(self) -> Number {
        match self {
            Number::Exact(r) => Number::Exact(-r),
            Number::Float(x) => Number::Float(-x),
        }
    }
}

impl std::iter::Sum for Number {
    fn sum<I: Iterator<Item = Number>>(mut iter: I) -> Number {
        match iter.next() {
            None => Number::int(0),
            Some(first) => iter.fold(first, |acc, x| acc + x),
        }
    }
}

/// Exact values compare exactly; mixed or float pairs use the relative
/// tolerance, so this is not transitive on the float path.
impl PartialEq for Number {
    fn eq(&self, other: &Number) -> bool {
        self.approx_eq(other)
    }
}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Number) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Number::Exact(r) => {
                // Terminating decimals print in full; others fall back to a/b.
                match terminating_decimal(r) {
                    Some(s) => f.write_str(&s),
                    None => write!(f, "{}/{}", r.numer(), r.denom()),
                }
            }
            Number::Float(x) => write!(f, "{x}"),
        }
    }
}

fn terminating_decimal(r: &Ratio<i128>) -> Option<String> {
    let mut denom = *r.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while denom % 2 == 0 {
        denom /= 2;
        twos += 1;
    }
    while denom % 5 == 0 {
        denom /= 5;
        fives += 1;
    }
    if denom != 1 {
        return None;
    }
    let digits = twos.max(fives);
    let scale = 10i128.checked_pow(digits)?;
    let scaled = r.numer().checked_mul(scale)? / r.denom();
    let negative = scaled < 0;
    let magnitude = scaled.unsigned_abs().to_string();
    let digits = digits as usize;
    let padded = format!("{:0>width$}", magnitude, width = digits + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - digits);
    Some(format!(
        "{}{}.{}",
        if negative { "-" } else { "" },
        int_part,
        frac_part
    ))
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Number::Exact(r) => {
                let mut s = serializer.serialize_struct("Exact", 2)?;
                s.serialize_field("numerator", r.numer())?;
                s.serialize_field("denominator", r.denom())?;
                s.end()
            }
            Number::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

impl Zero for Number {
    fn zero() -> Self {
        Number::int(0)
    }
    fn is_zero(&self) -> bool {
        match self {
            Number::Exact(r) => r.is_zero(),
            Number::Float(x) => *x == 0.0,
        }
    }
}
