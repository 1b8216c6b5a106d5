//! Exact rational scalars and the integer combinatorics shared by every module.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; zero is `0/1`. On the wire it is always the string
//! `"p/q"`, or `"p"` when `q = 1`.

use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Factorials are cached up to this bound; larger arguments are computed on demand.
pub const DEFAULT_FACTORIAL_CACHE: usize = 128;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` in lowest terms. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(p, q))
    } else {
        let p = BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        Ok(Rational::from_integer(p))
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// A table of `0!, 1!, ..., bound!`.
#[derive(Debug, Clone)]
pub struct FactorialCache {
    table: Vec<BigInt>,
}

impl FactorialCache {
    pub fn new(bound: usize) -> Self {
        let mut table = Vec::with_capacity(bound + 1);
        table.push(BigInt::one());
        for k in 1..=bound {
            let next = &table[k - 1] * BigInt::from(k);
            table.push(next);
        }
        FactorialCache { table }
    }

    pub fn bound(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, n: usize) -> BigInt {
        match self.table.get(n) {
            Some(v) => v.clone(),
            None => {
                let mut acc = self.table.last().cloned().unwrap_or_else(BigInt::one);
                for k in self.table.len()..=n {
                    acc *= BigInt::from(k);
                }
                acc
            }
        }
    }
}

fn default_cache() -> &'static FactorialCache {
    static CACHE: OnceLock<FactorialCache> = OnceLock::new();
    CACHE.get_or_init(|| FactorialCache::new(DEFAULT_FACTORIAL_CACHE))
}

pub fn factorial(n: usize) -> BigInt {
    default_cache().get(n)
}

/// `C(n, k)` over the integers; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `C(r, k) = r(r-1)...(r-k+1)/k!` for rational `r`.
pub fn binomial_rational(r: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (r - rat(i as i64)) / rat(i as i64 + 1);
    }
    acc
}

/// Rising factorial `(a)_m = a(a+1)...(a+m-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, m: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..m {
        acc *= a + rat(i as i64);
    }
    acc
}

/// Serde adapter writing a [`Rational`] as its `"p/q"` string.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
