//! Exact rational scalars and their text form.
//!
//! Every rational that crosses a file boundary is written as a `"num/den"`
//! string; input additionally accepts bare decimal integers.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;
use thiserror::Error;

/// Rational scalar used throughout the crate.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational {text:?}")]
pub struct ParseRationalError {
    pub text: String,
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"7"`, `"-3"` or `"p/q"` with a nonzero denominator.
pub fn parse_rational(text: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError {
        text: text.to_string(),
    };
    let t = text.trim();
    let parse_int = |s: &str| -> Option<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse::<BigInt>().ok()
    };
    match t.split_once('/') {
        None => parse_int(t).map(Q::from_integer).ok_or_else(err),
        Some((n, d)) => {
            let n = parse_int(n).ok_or_else(err)?;
            let d = parse_int(d).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
    }
}

/// Canonical `"num/den"` text (denominator always written, always positive).
pub fn format_rational(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Compact display form: integers without the denominator.
pub fn display_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format_rational(x)
    }
}

/// Reduces a rational into `[0, 1)`.
pub fn frac_part(x: &Q) -> Q {
    x - x.floor()
}

/// Divides a vector by its first nonzero entry. Returns `None` for the zero vector.
pub fn normalize_projective(v: &[Q]) -> Option<Vec<Q>> {
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    Some(v.iter().map(|c| c / &lead).collect())
}

/// Least common multiple of the denominators, used to clear fractions.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// serde adapter for a single rational as `"num/den"`.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        d.deserialize_any(RationalVisitor)
    }

    struct RationalVisitor;

    impl Visitor<'_> for RationalVisitor {
        type Value = Q;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational as an integer or a \"p/q\" string")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
            Ok(q(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
            Ok(Q::from_integer(BigInt::from(v)))
        }
    }
}

/// serde adapter for `Vec<Q>`.
pub mod serde_q_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Deserialize;

    #[derive(Deserialize)]
    struct Wrapped(#[serde(with = "serde_q")] Q);

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v: Vec<Wrapped> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("5").unwrap(), q(5));
        assert_eq!(parse_rational("-3").unwrap(), q(-3));
        assert_eq!(parse_rational("6/4").unwrap(), q_frac(3, 2));
        assert_eq!(parse_rational("-1/-2").unwrap(), q_frac(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "a", "1.5", "1/", "/2", "--1", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn format_round_trips() {
        for x in [q(0), q(-7), q_frac(-5, 3), q_frac(22, 7)] {
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
        assert_eq!(format_rational(&q(0)), "0/1");
    }

    #[test]
    fn frac_part_of_negative() {
        assert_eq!(frac_part(&q_frac(-1, 3)), q_frac(2, 3));
        assert_eq!(frac_part(&q(2)), q(0));
    }
}
