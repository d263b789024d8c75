use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quad::Rational;

/// Parses `"31/1000"`, `"0.031"`, `"-2"` into an exact rational. Decimal
/// strings are read digit by digit, never through a float.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(input.to_string());
    let s = input.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let digits = |t: &str| -> Result<BigInt> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(t).map_err(|_| bad())
    };
    let value = if let Some((p, q)) = body.split_once('/') {
        let q = digits(q)?;
        if q.is_zero() {
            return Err(bad());
        }
        Rational::new(digits(p)?, q)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if whole.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let whole = if whole.is_empty() { BigInt::zero() } else { digits(whole)? };
        let (frac_num, scale) = if frac.is_empty() {
            (BigInt::zero(), BigInt::one())
        } else {
            (digits(frac)?, num_traits::pow(BigInt::from(10), frac.len()))
        };
        Rational::new(whole * &scale + frac_num, scale)
    } else {
        Rational::from_integer(digits(body)?)
    };
    Ok(if neg { -value } else { value })
}

/// `"p/q"` in lowest terms, also for integers.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A rational that serializes as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactRational(pub Rational);

impl From<Rational> for ExactRational {
    fn from(q: Rational) -> Self {
        Self(q)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl FromStr for ExactRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Self)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::rat;

    #[test]
    fn parses_exactly() {
        assert_eq!(parse_rational("0.031").unwrap(), rat(31, 1000));
        assert_eq!(parse_rational("31/1000").unwrap(), rat(31, 1000));
        assert_eq!(parse_rational("0.010").unwrap(), rat(1, 100));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", ".", "abc", "1/0", "1/", "/2", "0.0.1", "1e-3", "--1", "1/-2", "0x10"] {
            assert_eq!(parse_rational(s), Err(Error::MalformedRational(s.to_string())), "{s}");
        }
    }

    #[test]
    fn serde_as_string() {
        let q = ExactRational(rat(31, 1000));
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, "\"31/1000\"");
        assert_eq!(serde_json::from_str::<ExactRational>(&json).unwrap(), q);
        assert_eq!(ExactRational(rat(2, 1)).to_string(), "2/1");
    }
}
