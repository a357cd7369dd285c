//! Exact rational parameters.
//!
//! Every density, threshold and probability accepted by the library is a
//! [`Ratio`]. Inputs may be written as `p/q`, as an integer, or as a finite
//! decimal (`0.75` parses to `3/4`). Output always uses the `p/q` form.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(pub BigRational);

impl Ratio {
    pub fn new(numer: i64, denom: i64) -> Ratio {
        Ratio(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(v: i64) -> Ratio {
        Ratio(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Ratio {
        Ratio(BigRational::new(numer, denom))
    }

    pub fn zero() -> Ratio {
        Ratio(BigRational::zero())
    }

    pub fn one() -> Ratio {
        Ratio(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }

    /// `⌈self · m⌉` for a non-negative ratio.
    pub fn ceil_mul(&self, m: usize) -> usize {
        let v = &self.0 * BigRational::from_integer(BigInt::from(m));
        let c = v.ceil().to_integer();
        c.to_usize().unwrap_or(if c.is_negative() { 0 } else { usize::MAX })
    }

    /// `⌊self · m⌋` for a non-negative ratio.
    pub fn floor_mul(&self, m: usize) -> usize {
        let v = &self.0 * BigRational::from_integer(BigInt::from(m));
        let c = v.floor().to_integer();
        c.to_usize().unwrap_or(if c.is_negative() { 0 } else { usize::MAX })
    }

    pub fn pow(&self, e: u32) -> Ratio {
        Ratio(Pow::pow(&self.0, e))
    }

    /// Numerator and denominator as `i64`, when both fit.
    pub fn as_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.numer().to_i64()?, self.denom().to_i64()?))
    }

    pub fn in_unit_interval(&self) -> bool {
        !self.0.is_negative() && self.0 <= BigRational::one()
    }

    /// Approximate base-2 logarithm, valid for huge numerators or denominators.
    pub fn log2(&self) -> f64 {
        log2_big(self.numer().magnitude()) - log2_big(self.denom().magnitude())
    }
}

pub(crate) fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (n, d) = (r.numer(), r.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            let l = log2_big(n.magnitude()) - log2_big(d.magnitude());
            let v = l.exp2();
            if n.sign() == Sign::Minus {
                -v
            } else {
                v
            }
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ratio> {
        let s = s.trim();
        let bad = || Error::Input(format!("cannot parse {s:?} as a rational number"));
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            return Ok(Ratio(BigRational::new(p, q)));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        if neg {
            numer = -numer;
        }
        let denom = Pow::pow(BigInt::from(10u32), frac_part.len());
        Ok(Ratio(BigRational::new(numer, denom)))
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Ratio, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<BigRational> for Ratio {
    fn from(r: BigRational) -> Ratio {
        Ratio(r)
    }
}

/// `n choose 2`.
pub(crate) fn choose2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

pub(crate) fn factorial(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}
