//! Exact rational helpers and the integer trait used by the scaled evaluation kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"n/d"` or `"n"` with optional surrounding whitespace and a leading sign.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Formats as `"num/den"` in lowest terms, always with an explicit denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod qstr {
    use super::{fmt_q, parse_q, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))
    }
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

pub fn bits(x: &BigInt) -> u64 {
    x.bits()
}

/// Integer carrier for the hot evaluation paths: `i128` when magnitudes are known to be
/// small, `BigInt` otherwise. Both share one generic implementation.
pub trait Int: Clone + Debug + Signed + Integer + From<i64> + Send + Sync {
    fn from_big(x: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
    /// Clamps into `i64`, saturating at a quarter of the range so later sums cannot wrap.
    fn saturating_i64(&self) -> i64;
}

const SAT: i64 = i64::MAX / 4;

impl Int for i128 {
    fn from_big(x: &BigInt) -> Self {
        i128::try_from(x).expect("value exceeds i128; caller must select the BigInt path")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn saturating_i64(&self) -> i64 {
        (*self).clamp(-SAT as i128, SAT as i128) as i64
    }
}

impl Int for BigInt {
    fn from_big(x: &BigInt) -> Self {
        x.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn saturating_i64(&self) -> i64 {
        i64::try_from(self).map(|v| v.clamp(-SAT, SAT)).unwrap_or(if self.is_negative() { -SAT } else { SAT })
    }
}

pub fn sign_of<T: Signed>(x: &T) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn abs_max_bits<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> u64 {
    xs.into_iter().map(|x| x.abs().bits()).max().unwrap_or(0)
}
