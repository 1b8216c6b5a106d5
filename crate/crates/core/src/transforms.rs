//! Basis transforms and coefficient multipliers.
//!
//! `E` sends the binomial basis `C(x, k)` to the monomials `x^k`. `W` is its
//! conjugate under `x -> x/(1+x)`: the numerator of `sum f(i) x^i` over
//! `(1-x)^(deg f + 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{binomial_rational, factorial, int, pochhammer, rat, Rational};
use crate::roots::{is_real_rooted, sturm_count_ext, ExtRational};

/// `a_k` with `f = sum a_k C(x, k)`, read off the forward-difference table at 0.
pub fn to_binomial_basis(f: &Poly) -> Vec<Rational> {
    let Some(d) = f.degree() else { return Vec::new() };
    let mut row: Vec<Rational> = (0..=d).map(|i| f.eval(&rat(i as i64))).collect();
    let mut out = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// `C(x, k)` as a polynomial in `x`.
pub fn binomial_poly(k: usize) -> Poly {
    let mut acc = Poly::one();
    for i in 0..k {
        let step = Poly::linear(rat(-(i as i64)) / rat(i as i64 + 1), rat(1) / rat(i as i64 + 1));
        acc = &acc * &step;
    }
    acc
}

pub fn e_transform(f: &Poly) -> Poly {
    Poly::new(to_binomial_basis(f))
}

pub fn e_inverse(g: &Poly) -> Poly {
    let mut acc = Poly::zero();
    let mut basis = Poly::one();
    for (k, c) in g.coeffs().iter().enumerate() {
        if k > 0 {
            let step = Poly::linear(rat(-(k as i64 - 1)) / rat(k as i64), rat(1) / rat(k as i64));
            basis = &basis * &step;
        }
        if !c.is_zero() {
            acc = &acc + &basis.scale(c);
        }
    }
    acc
}

/// `f(-1-x)`.
pub fn reflect_r(f: &Poly) -> Poly {
    f.affine_compose(&rat(-1), &rat(-1))
}

/// Multiplicity of `-1` as a root of `f`.
pub fn mult_at_minus_one(f: &Poly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let x1 = Poly::from_ints(&[1, 1]);
    let mut g = f.clone();
    let mut k = 0;
    while let Ok(q) = g.exact_div(&x1) {
        g = q;
        k += 1;
    }
    Ok(k)
}

/// Largest `k` such that `(x+1)(x+2)...(x+k)` divides `f`.
pub fn rising_divisibility(f: &Poly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut k = 0;
    let mut g = f.clone();
    loop {
        let next = Poly::from_ints(&[k as i64 + 1, 1]);
        match g.exact_div(&next) {
            Ok(q) => {
                g = q;
                k += 1;
            }
            Err(_) => return Ok(k),
        }
    }
}

/// `mult(-1, E(f))`, cross-checked against the largest `k` with
/// `(x+1)...(x+k) | f`. Disagreement is reported as a defect.
pub fn mult_minus_one_of_e(f: &Poly) -> Result<usize> {
    let via_e = mult_at_minus_one(&e_transform(f))?;
    let via_div = rising_divisibility(f)?;
    if via_e != via_div {
        return Err(Error::Defect(format!(
            "mult(-1, E(f)) = {via_e} but rising-factorial divisibility gives {via_div} for f = {f}"
        )));
    }
    Ok(via_e)
}

/// `W(f) = (1-x)^d E(f)(x/(1-x))` with `d = deg f`.
///
/// The degree of the result is checked against `deg f - mult(-1, E(f))`.
pub fn w_transform(f: &Poly) -> Result<Poly> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let e = e_transform(f);
    let w = e.mobius_deunitize_with_degree(d);
    let m = mult_minus_one_of_e(f)?;
    if w.degree() != Some(d - m) {
        return Err(Error::Defect(format!(
            "deg W(f) = {:?}, expected {} for f = {f}",
            w.degree(),
            d - m
        )));
    }
    Ok(w)
}

/// A coefficient sequence `gamma_0, gamma_1, ...` acting by `sum a_k x^k -> sum gamma_k a_k x^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MultiplierSeq {
    Explicit {
        #[serde(with = "rational_vec")]
        terms: Vec<Rational>,
    },
    /// `1/k!`
    FactorialInverse,
    /// `q + k`
    GammaShift {
        #[serde(with = "crate::rational::serde_str")]
        q: Rational,
    },
    /// `C(-n-r, k)`
    BinomNegative {
        n: usize,
        #[serde(with = "crate::rational::serde_str")]
        r: Rational,
    },
    /// `1, 1, 1, ...`
    Ones,
}

mod rational_vec {
    use crate::rational::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl MultiplierSeq {
    /// The `k`-th term, or `None` past the end of an explicit list.
    pub fn term(&self, k: usize) -> Option<Rational> {
        match self {
            MultiplierSeq::Explicit { terms } => terms.get(k).cloned(),
            MultiplierSeq::FactorialInverse => Some(Rational::new(BigInt::one(), factorial(k))),
            MultiplierSeq::GammaShift { q } => Some(q + rat(k as i64)),
            MultiplierSeq::BinomNegative { n, r } => Some(binomial_rational(&(-rat(*n as i64) - r), k)),
            MultiplierSeq::Ones => Some(Rational::one()),
        }
    }
}

/// Coefficientwise product `sum gamma_k a_k x^k`.
pub fn apply_multiplier(g: &MultiplierSeq, f: &Poly) -> Result<Poly> {
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            g.term(k)
                .map(|t| t * a)
                .ok_or_else(|| Error::InvalidArgument(format!("multiplier sequence has no term {k}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

/// Algebraic test: `G[(x+1)^n]` is real-rooted with all roots of one sign.
/// A zero root is compatible with either sign, and an identically zero
/// image is accepted.
pub fn is_multiplier_n_sequence(g: &MultiplierSeq, n: usize) -> Result<bool> {
    let image = apply_multiplier(g, &Poly::from_ints(&[1, 1]).pow(n))?;
    if image.is_zero() {
        return Ok(true);
    }
    if !is_real_rooted(&image)? {
        return Ok(false);
    }
    let zero = ExtRational::Finite(Rational::zero());
    let at_zero = usize::from(image.eval(&Rational::zero()).is_zero());
    let negative = sturm_count_ext(&image, &ExtRational::NegInf, &zero)? - at_zero;
    let positive = sturm_count_ext(&image, &zero, &ExtRational::PosInf)?;
    Ok(negative == 0 || positive == 0)
}

/// The terminating series `2F1(a, b; c; x)` for an integer `a <= 0`.
pub fn hypergeom_2f1_poly(a: i64, b: &Rational, c: &Rational) -> Result<Poly> {
    if a > 0 {
        return Err(Error::InvalidArgument(format!("2F1 needs a <= 0 to terminate, got {a}")));
    }
    let n = (-a) as usize;
    let a = rat(a);
    let mut coeffs = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let den = pochhammer(c, m) * int(factorial(m));
        if den.is_zero() {
            return Err(Error::InvalidArgument(format!("2F1 has a pole: (c)_{m} = 0 for c = {c}")));
        }
        coeffs.push(pochhammer(&a, m) * pochhammer(b, m) / den);
    }
    Ok(Poly::new(coeffs))
}

/// The Jacobi polynomial `P_n^(alpha, beta)(x)`, from
/// `sum_s C(n+alpha, n-s) C(n+beta, s) ((x-1)/2)^s ((x+1)/2)^(n-s)`.
pub fn jacobi_poly(n: usize, alpha: &Rational, beta: &Rational) -> Poly {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let xm = Poly::linear(-half.clone(), half.clone());
    let xp = Poly::linear(half.clone(), half);
    let na = alpha + rat(n as i64);
    let nb = beta + rat(n as i64);
    let mut acc = Poly::zero();
    for s in 0..=n {
        let c = binomial_rational(&na, n - s) * binomial_rational(&nb, s);
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(&xm.pow(s) * &xp.pow(n - s)).scale(&c);
    }
    acc
}

/// The same Jacobi polynomial through the hypergeometric representation
/// `((1+alpha)_n / n!) 2F1(-n, 1+alpha+beta+n; 1+alpha; (1-x)/2)`.
pub fn jacobi_via_2f1(n: usize, alpha: &Rational, beta: &Rational) -> Result<Poly> {
    let one = Rational::one();
    let h = hypergeom_2f1_poly(-(n as i64), &(&one + alpha + beta + rat(n as i64)), &(&one + alpha))?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let pre = pochhammer(&(&one + alpha), n) / int(factorial(n));
    Ok(h.affine_compose(&-half.clone(), &half).scale(&pre))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::roots::{interlace_relation, is_simple_rooted, root_dominance, roots_within};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn unit_interval() -> (ExtRational, ExtRational) {
        (ExtRational::Finite(rat(-1)), ExtRational::Finite(rat(0)))
    }

    #[test]
    fn binomial_basis_examples() {
        assert_eq!(to_binomial_basis(&p(&[0, 0, 1])), vec![rat(0), rat(1), rat(2)]);
        assert_eq!(to_binomial_basis(&binomial_poly(3)), vec![rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(to_binomial_basis(&p(&[2, 3, 1])), vec![rat(2), rat(4), rat(2)]);
        assert!(to_binomial_basis(&Poly::zero()).is_empty());
    }

    #[test]
    fn e_examples() {
        assert_eq!(e_transform(&p(&[0, 0, 1])), p(&[0, 1, 2]));
        assert_eq!(e_transform(&binomial_poly(5)), p(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(e_transform(&p(&[2, 3, 1])), p(&[2, 4, 2]));
        assert_eq!(e_inverse(&p(&[0, 1, 2])), p(&[0, 0, 1]));
        assert_eq!(e_transform(&p(&[0, 0, 0, 1])), p(&[0, 1, 6, 6]));
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(reflect_r(&p(&[0, 1])), p(&[-1, -1]));
        assert_eq!(reflect_r(&p(&[0, 1, 1])), p(&[0, 1, 1]));
        assert_eq!(reflect_r(&p(&[0, 0, 1])), p(&[1, 2, 1]));
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_transform(&p(&[0, 1])).unwrap(), p(&[0, 1]));
        assert_eq!(w_transform(&p(&[2, 3, 1])).unwrap(), p(&[2]));
        assert_eq!(w_transform(&p(&[1, 2])).unwrap(), p(&[1, 1]));
        assert_eq!(w_transform(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn w_matches_series_numerator() {
        // sum_{i<N} f(i) x^i (1-x)^(d+1) agrees with W(f) below degree N
        let f = p(&[3, -1, 0, 2]);
        let d = 3;
        let n = 30;
        let series = Poly::new((0..n).map(|i| f.eval(&rat(i as i64))).collect());
        let prod = &series * &p(&[1, -1]).pow(d + 1);
        let w = w_transform(&f).unwrap();
        assert_eq!(prod.truncate(n - 1), w);
    }

    #[test]
    fn mult_minus_one_examples() {
        assert_eq!(mult_minus_one_of_e(&p(&[2, 3, 1])).unwrap(), 2);
        for n in 1..8 {
            assert_eq!(mult_minus_one_of_e(&p(&[0, 1]).pow(n)).unwrap(), 0);
        }
        assert_eq!(mult_minus_one_of_e(&p(&[1, 1])).unwrap(), 1);
    }

    #[test]
    fn multiplier_examples() {
        let q = ratio(3, 2);
        let g = MultiplierSeq::GammaShift { q: q.clone() };
        for n in 1..6 {
            let got = apply_multiplier(&g, &p(&[1, 1]).pow(n)).unwrap();
            let want = &p(&[1, 1]).pow(n - 1) * &Poly::linear(q.clone(), &q + rat(n as i64));
            assert_eq!(got, want);
        }
        let f = p(&[3, 1, 4, 1, 5]);
        let scaled = Poly::new(f.coeffs().iter().enumerate().map(|(k, c)| c * int(factorial(k))).collect());
        assert_eq!(apply_multiplier(&MultiplierSeq::FactorialInverse, &scaled).unwrap(), f);
        let bn = MultiplierSeq::BinomNegative { n: 2, r: rat(1) };
        assert_eq!(apply_multiplier(&bn, &p(&[1, 1]).pow(2)).unwrap(), p(&[1, -6, 6]));
        let short = MultiplierSeq::Explicit { terms: vec![rat(1)] };
        assert!(apply_multiplier(&short, &p(&[1, 1])).is_err());
    }

    #[test]
    fn multiplier_n_sequence_examples() {
        assert!(!is_multiplier_n_sequence(&MultiplierSeq::GammaShift { q: rat(-1) }, 3).unwrap());
        assert!(is_multiplier_n_sequence(&MultiplierSeq::GammaShift { q: rat(1) }, 5).unwrap());
        assert!(is_multiplier_n_sequence(&MultiplierSeq::BinomNegative { n: 2, r: rat(1) }, 2).unwrap());
        for n in 2..7i64 {
            for q in -8..=3 {
                let want = !(-n < q && q < 0);
                let got = is_multiplier_n_sequence(&MultiplierSeq::GammaShift { q: rat(q) }, n as usize).unwrap();
                assert_eq!(got, want, "q = {q}, n = {n}");
            }
        }
    }

    #[test]
    fn binom_negative_sequences_are_n_sequences() {
        for n in 1..8usize {
            for r in [rat(0), ratio(1, 3), rat(1), rat(5)] {
                let g = MultiplierSeq::BinomNegative { n, r: r.clone() };
                assert!(is_multiplier_n_sequence(&g, n).unwrap());
                let image = apply_multiplier(&g, &p(&[1, 1]).pow(n)).unwrap();
                let (lo, hi) = (ExtRational::Finite(rat(0)), ExtRational::Finite(rat(1)));
                assert!(roots_within(&image, &lo, &hi).unwrap());
            }
        }
    }

    #[test]
    fn hypergeometric_examples() {
        assert_eq!(hypergeom_2f1_poly(-2, &rat(3), &rat(1)).unwrap(), p(&[1, -6, 6]));
        for n in 0..6 {
            let h = hypergeom_2f1_poly(-n, &ratio(2, 7), &ratio(5, 3)).unwrap();
            assert_eq!(h.eval(&rat(0)), rat(1));
        }
        assert!(hypergeom_2f1_poly(-3, &rat(1), &rat(-1)).is_err());
        assert!(hypergeom_2f1_poly(-1, &rat(1), &rat(-1)).is_ok());
        assert!(hypergeom_2f1_poly(2, &rat(1), &rat(1)).is_err());
    }

    #[test]
    fn jacobi_matches_hypergeometric_form() {
        let p2 = jacobi_poly(2, &rat(0), &rat(0));
        assert_eq!(p2, Poly::new(vec![ratio(-1, 2), rat(0), ratio(3, 2)]));
        assert_eq!(p2.affine_compose(&rat(-2), &rat(1)), p(&[1, -6, 6]));
        for n in 0..7 {
            for (a, b) in [
                (rat(0), rat(0)),
                (ratio(1, 2), ratio(-1, 3)),
                (rat(2), rat(5)),
                (rat(0), ratio(-1, 2)),
            ] {
                assert_eq!(jacobi_via_2f1(n, &a, &b).unwrap(), jacobi_poly(n, &a, &b));
            }
        }
        // the binomial multiplier image is a shifted Jacobi polynomial
        for n in 1..7usize {
            let r = ratio(3, 2);
            let image = apply_multiplier(&MultiplierSeq::BinomNegative { n, r: r.clone() }, &p(&[1, 1]).pow(n)).unwrap();
            let h = hypergeom_2f1_poly(-(n as i64), &(rat(n as i64) + &r), &rat(1)).unwrap();
            assert_eq!(image, h);
            let jac = jacobi_poly(n, &rat(0), &(&r - rat(1))).affine_compose(&rat(-2), &rat(1));
            assert_eq!(image, jac);
        }
    }

    #[test]
    fn reflection_commutes_with_e() {
        for d in 0..=20 {
            let f = Poly::new((0..=d).map(|i| ratio((i * 7 % 11) as i64 - 5, (i % 3 + 1) as i64)).collect());
            assert_eq!(reflect_r(&e_transform(&f)), e_transform(&reflect_r(&f)));
        }
    }

    #[test]
    fn e_of_powers_identity() {
        for n in 1..=20 {
            let lhs = &p(&[1, 1]) * &e_transform(&p(&[0, 1]).pow(n));
            let rhs = &p(&[0, 1]) * &e_transform(&p(&[1, 1]).pow(n));
            assert_eq!(lhs, rhs);
        }
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

        /// Roots drawn from `[-1, 0]`.
        fn unit_rooted(max_deg: usize) -> impl Strategy<Value = Poly> {
            prop::collection::vec(0i64..=12, 1..=max_deg)
                .prop_map(|rs| Poly::from_roots(&rs.into_iter().map(|r| ratio(-r, 12)).collect::<Vec<_>>()))
        }

        proptest! {
            #[test]
            fn e_is_invertible(f in poly(30)) {
                prop_assert_eq!(e_inverse(&e_transform(&f)), f.clone());
                prop_assert_eq!(e_transform(&e_inverse(&f)), f);
            }

            #[test]
            fn reflection_commutes(f in poly(20)) {
                prop_assert_eq!(reflect_r(&e_transform(&f)), e_transform(&reflect_r(&f)));
            }

            #[test]
            fn w_degree_law(f in poly(15), k in 0usize..4) {
                // force some rising-factorial divisibility
                let mut g = f;
                for i in 1..=k {
                    g = &g * &Poly::from_ints(&[i as i64, 1]);
                }
                prop_assume!(!g.is_zero());
                let w = w_transform(&g).unwrap();
                prop_assert_eq!(w.degree(), Some(g.degree().unwrap() - mult_minus_one_of_e(&g).unwrap()));
            }

            #[test]
            fn e_step_identity(f in unit_rooted(6), a in 0i64..=6) {
                let alpha = ratio(-a, 6);
                let g = e_transform(&f);
                let lhs = e_transform(&(&Poly::linear(-alpha.clone(), rat(1)) * &f));
                let rhs = &(&Poly::linear(-alpha, rat(1)) * &g) + &(&p(&[0, 1, 1]) * &g.derivative());
                prop_assert_eq!(&lhs, &rhs);
                let (lo, hi) = unit_interval();
                prop_assert!(roots_within(&g, &lo, &hi).unwrap());
                prop_assert!(roots_within(&lhs, &lo, &hi).unwrap());
                prop_assert!(interlace_relation(&g, &lhs).unwrap().is_interlacing());
            }

            #[test]
            fn dominance_transfers_through_e(
                rs in prop::collection::vec((0i64..=12, 0i64..=12), 1..7)
            ) {
                let (a, b): (Vec<Rational>, Vec<Rational>) = rs
                    .into_iter()
                    .map(|(x, y)| (ratio(-x.max(y), 12), ratio(-x.min(y), 12)))
                    .unzip();
                let f = Poly::from_roots(&a);
                let g = Poly::from_roots(&b);
                prop_assert!(root_dominance(&f, &g).unwrap());
                let (ef, eg) = (e_transform(&f), e_transform(&g));
                let (lo, hi) = unit_interval();
                prop_assert!(roots_within(&ef, &lo, &hi).unwrap());
                prop_assert!(is_simple_rooted(&ef).unwrap());
                prop_assert!(is_simple_rooted(&eg).unwrap());
                prop_assert!(interlace_relation(&ef, &eg).unwrap().is_alternating_left());
            }
        }
    }
}
