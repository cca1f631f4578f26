use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse { pos: 0, msg: format!("not a rational: `{s}`") };
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse { pos: 0, msg: "zero denominator".into() });
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| num::integer::lcm(acc, r.denom().clone()))
}

/// A rational degree, or infinity (the valuation of zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DegreeQ {
    Finite(Rational),
    Infinity,
}

impl DegreeQ {
    pub fn finite(r: Rational) -> Self {
        DegreeQ::Finite(r)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, DegreeQ::Infinity)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            DegreeQ::Finite(r) => Some(r),
            DegreeQ::Infinity => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            DegreeQ::Finite(r) => r.is_positive(),
            DegreeQ::Infinity => true,
        }
    }
}

impl std::ops::Add for &DegreeQ {
    type Output = DegreeQ;
    fn add(self, rhs: &DegreeQ) -> DegreeQ {
        match (self, rhs) {
            (DegreeQ::Finite(a), DegreeQ::Finite(b)) => DegreeQ::Finite(a + b),
            _ => DegreeQ::Infinity,
        }
    }
}

impl PartialOrd for DegreeQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DegreeQ {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (DegreeQ::Finite(a), DegreeQ::Finite(b)) => a.cmp(b),
            (DegreeQ::Finite(_), DegreeQ::Infinity) => Ordering::Less,
            (DegreeQ::Infinity, DegreeQ::Finite(_)) => Ordering::Greater,
            (DegreeQ::Infinity, DegreeQ::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for DegreeQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeQ::Finite(r) => write!(f, "{r}"),
            DegreeQ::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for DegreeQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<Rational> for DegreeQ {
    fn from(r: Rational) -> Self {
        DegreeQ::Finite(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn infinity_is_top() {
        assert!(DegreeQ::Infinity > DegreeQ::Finite(int(1_000_000)));
        assert_eq!(&DegreeQ::Finite(rat(1, 2)) + &DegreeQ::Infinity, DegreeQ::Infinity);
        assert_eq!(DegreeQ::Finite(rat(1, 4)).to_string(), "1/4");
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [rat(1, 2), rat(1, 3), int(2)];
        assert_eq!(denominator_lcm(v.iter()), BigInt::from(6));
    }
}
