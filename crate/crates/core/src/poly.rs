//! Dense univariate polynomials over [`Rational`].
//!
//! Coefficients are stored in ascending order: `coeffs[i]` is the coefficient
//! of `x^i`. The vector is empty for the zero polynomial and otherwise ends in
//! a nonzero entry, so structural equality is polynomial equality.
//! [`Poly::degree`] returns `None` for zero, which orders below every `Some(d)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, rat, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `c0 + c1*x`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Poly::new(vec![c0, c1])
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::linear(-r.clone(), Rational::one()))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Positive leading coefficient.
    pub fn is_standard(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_positive())
    }

    pub fn eval(&self, x0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x0 + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Keep only the terms of degree `<= max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    pub fn derivative(&self) -> Poly {
        self.nth_derivative(1)
    }

    /// The `k`-th formal derivative.
    pub fn nth_derivative(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Poly::zero();
        }
        let coeffs = (k..self.coeffs.len())
            .map(|i| {
                // i (i-1) ... (i-k+1)
                let falling: BigInt = ((i - k + 1)..=i).map(BigInt::from).product();
                &self.coeffs[i] * Rational::from_integer(falling)
            })
            .collect();
        Poly::new(coeffs)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if sd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] / lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// `q` with `self = q * divisor`, or [`Error::NotDivisible`].
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Rational content: positive `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Rational::new(num, den)
    }

    /// Divide by the (positive) content. Signs are preserved everywhere.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        Poly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `self = c * prod s_i^i` with each
    /// `s_i` monic, square-free and pairwise coprime. Returns `(s_i, i)` for
    /// the non-constant factors only.
    pub fn square_free_decomposition(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0)?;
        let mut c = df.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a)?;
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// Monic product of the distinct irreducible factors.
    pub fn square_free_part(&self) -> Result<Poly> {
        Ok(self
            .square_free_decomposition()?
            .into_iter()
            .fold(Poly::one(), |acc, (s, _)| &acc * &s))
    }

    /// `self(a*x + b)`.
    pub fn affine_compose(&self, a: &Rational, b: &Rational) -> Poly {
        let lin = Poly::linear(b.clone(), a.clone());
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `(1+x)^deg * self(x/(1+x))`.
    pub fn mobius_unitize(&self) -> Poly {
        match self.degree() {
            None => Poly::zero(),
            Some(d) => self.mobius_unitize_with_degree(d),
        }
    }

    /// `(1+x)^d * self(x/(1+x))` for an explicit `d >= deg self`.
    pub fn mobius_unitize_with_degree(&self, d: usize) -> Poly {
        self.homogenize(d, &Poly::from_ints(&[1, 1]))
    }

    /// `(1-x)^deg * self(x/(1-x))`, the inverse direction of [`Poly::mobius_unitize`].
    pub fn mobius_deunitize(&self) -> Poly {
        match self.degree() {
            None => Poly::zero(),
            Some(d) => self.mobius_deunitize_with_degree(d),
        }
    }

    pub fn mobius_deunitize_with_degree(&self, d: usize) -> Poly {
        self.homogenize(d, &Poly::from_ints(&[1, -1]))
    }

    /// `sum a_i x^i w^(d-i)`.
    fn homogenize(&self, d: usize, w: &Poly) -> Poly {
        assert!(
            self.degree().is_none_or(|deg| deg <= d),
            "homogenizing degree {d} is below the polynomial degree"
        );
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(Poly::one());
        for j in 1..=d {
            let next = &powers[j - 1] * w;
            powers.push(next);
        }
        let mut acc = Poly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &powers[d - i].shift(i).scale(c);
        }
        acc
    }
}

/// Integer-coefficient copy of a polynomial, used where many sign evaluations
/// of the same polynomial are needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// The primitive integer multiple of `f`; signs and roots are those of `f`.
    pub fn from_poly(f: &Poly) -> IntPoly {
        let coeffs = f.primitive().coeffs.into_iter().map(|c| c.to_integer()).collect();
        IntPoly { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_sign(&self) -> i8 {
        match self.coeffs.last() {
            None => 0,
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }

    /// Sign of the value at `x = a/b`, by homogeneous Horner over the integers.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        let (a, b) = (x.numer(), x.denom());
        let mut acc = self.coeffs[d].clone();
        let mut bpow = BigInt::one();
        for i in (0..d).rev() {
            bpow *= b;
            acc = acc * a + &self.coeffs[i] * &bpow;
        }
        if acc.is_zero() {
            0
        } else if acc.is_negative() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let shown = format_rational(&mag);
            let coef = if i > 0 && mag.is_one() {
                String::new()
            } else if i > 0 && !mag.denom().is_one() {
                format!("({shown})")
            } else {
                shown
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    coeffs: Vec<String>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire {
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PolyWire::deserialize(deserializer)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Poly::new(coeffs))
    }
}

impl Poly {
    /// Compact JSON in the `{"coeffs":["c0","c1",...]}` wire format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Poly> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        let f = p(&[3, -1, 4, 1]);
        assert!((&f + &(-&f)).is_zero());
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), Err(Error::NotDivisible));
        assert_eq!(f.exact_div(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn trimming_and_degree() {
        let z = Poly::new(vec![rat(0), rat(0)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert!(z.degree() < Some(0));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0, 3]).valuation(), Some(2));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert_eq!(p(&[1, 2, 1]).nth_derivative(2), p(&[2]));
        assert!(p(&[7]).derivative().is_zero());
        assert!(p(&[1, 2, 1]).nth_derivative(3).is_zero());
    }

    #[test]
    fn affine_compose_examples() {
        assert_eq!(p(&[0, 0, 1]).affine_compose(&rat(1), &rat(1)), p(&[1, 2, 1]));
        assert_eq!(p(&[0, 1]).affine_compose(&rat(-1), &rat(-1)), p(&[-1, -1]));
        assert_eq!(p(&[-1, 0, 1]).affine_compose(&rat(2), &rat(0)), p(&[-1, 0, 4]));
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(p(&[0, 1]).mobius_unitize(), p(&[0, 1]));
        assert_eq!(p(&[0, 0, 1]).mobius_unitize(), p(&[0, 0, 1]));
        assert_eq!(p(&[0, 1, 4, 1]).mobius_unitize(), p(&[0, 1, 6, 6]));
        assert_eq!(p(&[0, 1, 6, 6]).mobius_deunitize(), p(&[0, 1, 4, 1]));
        // degree drops when f(1) = 0, so the explicit-degree inverse is needed
        let f = p(&[1, -1]);
        let u = f.mobius_unitize();
        assert_eq!(u, p(&[1]));
        assert_eq!(u.mobius_deunitize_with_degree(1), f);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-1, 0, 1]).eval(&rat(2)), rat(3));
        assert_eq!(p(&[5, 3, 1]).eval(&rat(0)), rat(5));
        assert_eq!(p(&[1, 4, 1]).eval(&rat(-1)), rat(-2));
        assert_eq!(p(&[0, 2]).eval(&ratio(1, 3)), ratio(2, 3));
    }

    #[test]
    fn gcd_and_square_free() {
        let f = &p(&[1, 1]).pow(3) * &p(&[0, 1]).pow(2);
        let g = &p(&[1, 1]) * &p(&[-2, 1]);
        assert_eq!(f.gcd(&g), p(&[1, 1]));
        let dec = f.square_free_decomposition().unwrap();
        assert_eq!(dec, vec![(p(&[0, 1]), 2), (p(&[1, 1]), 3)]);
        assert_eq!(f.square_free_part().unwrap(), p(&[0, 1, 1]));
        assert!(p(&[3]).square_free_decomposition().unwrap().is_empty());
        assert_eq!(Poly::zero().square_free_decomposition(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn content_and_primitive() {
        let f = Poly::new(vec![ratio(1, 2), ratio(-3, 4)]);
        assert_eq!(f.content(), ratio(1, 4));
        assert_eq!(f.primitive(), p(&[2, -3]));
    }

    #[test]
    fn json_wire_format() {
        let f = Poly::new(vec![rat(0), ratio(-1, 2), rat(3)]);
        let s = f.to_json();
        assert_eq!(s, r#"{"coeffs":["0","-1/2","3"]}"#);
        assert_eq!(Poly::from_json(&s).unwrap(), f);
        assert_eq!(Poly::from_json(r#"{"coeffs":["1","0"]}"#).unwrap(), p(&[1]));
        assert_eq!(Poly::from_json(r#"{"coeffs":[]}"#).unwrap(), Poly::zero());
        assert!(Poly::from_json(r#"{"coeffs":["1/0"]}"#).is_err());
        assert!(Poly::from_json(r#"{"coeffs":[1]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -4, 0, 1]).to_string(), "1 - 4x + x^3");
        assert_eq!(Poly::new(vec![rat(0), ratio(-1, 2)]).to_string(), "-(1/2)x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (-20i64..=20, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
        }

        fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
            prop::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(Poly::new)
        }

        proptest! {
            #[test]
            fn ring_ops_commute_with_eval(f in poly(8), g in poly(8), x0 in small_rational()) {
                prop_assert_eq!((&f + &g).eval(&x0), f.eval(&x0) + g.eval(&x0));
                prop_assert_eq!((&f - &g).eval(&x0), f.eval(&x0) - g.eval(&x0));
                prop_assert_eq!((&f * &g).eval(&x0), f.eval(&x0) * g.eval(&x0));
            }

            #[test]
            fn div_rem_reconstructs(f in poly(10), g in poly(5)) {
                prop_assume!(!g.is_zero());
                let (q, r) = f.div_rem(&g).unwrap();
                prop_assert_eq!(&(&q * &g) + &r, f);
                prop_assert!(r.degree() < g.degree());
            }

            #[test]
            fn affine_compose_inverts(f in poly(10), a in small_rational(), b in small_rational()) {
                prop_assume!(!a.is_zero());
                let g = f.affine_compose(&a, &b);
                let back = g.affine_compose(&a.recip(), &(-&b / &a));
                prop_assert_eq!(back, f);
            }

            #[test]
            fn mobius_round_trip(f in poly(12)) {
                // the round trip is exact whenever the degree survives, i.e. f(1) != 0
                prop_assume!(!f.is_zero() && !f.eval(&rat(1)).is_zero());
                let u = f.mobius_unitize();
                prop_assert_eq!(u.degree(), f.degree());
                prop_assert_eq!(u.mobius_deunitize(), f.clone());
                let d = f.degree().unwrap() + 2;
                prop_assert_eq!(f.mobius_unitize_with_degree(d).mobius_deunitize_with_degree(d), f);
            }

            #[test]
            fn square_free_factors_multiply_back(roots in prop::collection::vec(-4i64..=4, 1..8), lead in 1i64..5) {
                let f = Poly::from_roots(&roots.iter().map(|&r| rat(r)).collect::<Vec<_>>()).scale(&rat(lead));
                let dec = f.square_free_decomposition().unwrap();
                let rebuilt = dec.iter().fold(Poly::constant(rat(lead)), |acc, (s, i)| &acc * &s.pow(*i));
                prop_assert_eq!(rebuilt, f);
            }
        }
    }
}
