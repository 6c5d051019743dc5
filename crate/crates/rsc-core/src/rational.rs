//! Exact rationals and the extended rationals `Q ∪ {+∞}` used for exponents.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Q = BigRational;

/// Shorthand for the rational `num/den`.
///
/// Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Nearest binary64 value of an exact rational.
pub fn to_f64(x: &Q) -> f64 {
    if x.denom().is_one() {
        return x.numer().to_f64().unwrap_or(f64::NAN);
    }
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division when numerator and denominator overflow separately.
        let n = x.numer();
        let d = x.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(900) as usize;
        let nf = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
        nf / df
    })
}

/// Exact rational value of a finite binary64 number.
pub fn from_f64(x: f64) -> Option<Q> {
    Q::from_float(x)
}

/// Parse a rational literal: integers, `a/b`, decimals (`1.25`) and scientific notation
/// (`1e4`, `2.5e-3`). Parsing is exact.
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError(s.to_string()));
    }
    if let Some((a, b)) = s.split_once('/') {
        let n = parse_q(a)?;
        let d = parse_q(b)?;
        if d.is_zero() {
            return Err(ParseRationalError(s.to_string()));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseRationalError(s.to_string()));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(ParseRationalError(s.to_string()));
    }
    let mut all = String::from(int_part);
    all.push_str(frac_part);
    let num: BigInt = all.parse().map_err(|_| ParseRationalError(s.to_string()))?;
    let mut value = Q::new(num, num_traits::pow(BigInt::from(10), frac_part.len()));
    if let Some(e) = exponent {
        let e: i32 = e.parse().map_err(|_| ParseRationalError(s.to_string()))?;
        let scale = Q::from_integer(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
        value = if e >= 0 { value * scale } else { value / scale };
    }
    Ok(if neg { -value } else { value })
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

/// True when `x` is an integer.
pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Integer `n` as an `i64` when `x` is an integer in range.
pub fn as_i64(x: &Q) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational literal `{0}`")]
pub struct ParseRationalError(pub String);

/// A rational number or `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Q),
    Infinite,
}

impl ExtRational {
    pub fn int(n: i64) -> Self {
        ExtRational::Finite(qi(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ExtRational::Finite(q(n, d))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            ExtRational::Finite(x) => Some(x),
            ExtRational::Infinite => None,
        }
    }

    /// `1/x` with `1/∞ = 0` and `1/0 = ∞`.
    pub fn recip(&self) -> ExtRational {
        match self {
            ExtRational::Infinite => ExtRational::Finite(Q::zero()),
            ExtRational::Finite(x) if x.is_zero() => ExtRational::Infinite,
            ExtRational::Finite(x) => ExtRational::Finite(x.recip()),
        }
    }

    /// `1/x` as a finite rational; `1/∞ = 0`. Panics on zero.
    pub fn recip_q(&self) -> Q {
        match self.recip() {
            ExtRational::Finite(x) => x,
            ExtRational::Infinite => panic!("reciprocal of zero"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::Finite(x) => to_f64(x),
            ExtRational::Infinite => f64::INFINITY,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExtRational::Finite(x) if x.is_one())
    }
}

impl From<Q> for ExtRational {
    fn from(x: Q) -> Self {
        ExtRational::Finite(x)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
            (ExtRational::Infinite, _) => Ordering::Greater,
            (_, ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Infinite => f.write_str("inf"),
            ExtRational::Finite(x) => f.write_str(&fmt_q(x)),
        }
    }
}

impl FromStr for ExtRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "Inf" | "infinity" | "∞" | "+inf" => Ok(ExtRational::Infinite),
            other => parse_q(other).map(ExtRational::Finite),
        }
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn signum(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
