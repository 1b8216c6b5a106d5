//! Differential operators `phi_F = sum Q_k(x) D^k`, their hypothesis checks,
//! and the bilinear products built from derivatives.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{factorial, int, rat, sign, Rational};
use crate::roots::{check_nonneg_on_reals, interlace_relation, is_real_rooted, negative_witness, InterlaceRelation};
use crate::transforms::{e_inverse, e_transform, MultiplierSeq};
use crate::witness::Witness;

/// `F(x, z) = sum Q_k(x) z^k`, stored as `[Q_0, Q_1, ...]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BivarOp {
    q_list: Vec<Poly>,
}

impl BivarOp {
    /// Trailing zero entries are dropped.
    pub fn new(mut q_list: Vec<Poly>) -> Self {
        while q_list.last().is_some_and(Poly::is_zero) {
            q_list.pop();
        }
        BivarOp { q_list }
    }

    pub fn q(&self, k: usize) -> Poly {
        self.q_list.get(k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn q_list(&self) -> &[Poly] {
        &self.q_list
    }

    /// Degree in `z`; `None` for the zero operator.
    pub fn degree_z(&self) -> Option<usize> {
        self.q_list.len().checked_sub(1)
    }

    /// `F(xi, z)` as a polynomial in `z`.
    pub fn at(&self, xi: &Rational) -> Poly {
        Poly::new(self.q_list.iter().map(|q| q.eval(xi)).collect())
    }
}

/// The operator taking `G_{n-2}` to `G_n(t, x)`:
/// `Q_0 = 1 + (6+t)x + (6+t)x^2`, `Q_1 = 3x(1+2x)(1+x)`, `Q_2 = x^2(1+x)^2`.
pub fn eulerian_t_operator(t: &Rational) -> BivarOp {
    let c = rat(6) + t;
    let q0 = Poly::new(vec![rat(1), c.clone(), c]);
    let q1 = Poly::from_ints(&[0, 3, 9, 6]);
    let q2 = Poly::from_ints(&[0, 0, 1, 2, 1]);
    BivarOp::new(vec![q0, q1, q2])
}

/// `sum Q_k f^(k)`.
pub fn apply_phi(op: &BivarOp, f: &Poly) -> Poly {
    let mut acc = Poly::zero();
    let mut deriv = f.clone();
    for q in op.q_list() {
        if deriv.is_zero() {
            break;
        }
        acc = &acc + &(q * &deriv);
        deriv = deriv.derivative();
    }
    acc
}

/// `f(D) g = sum a_k g^(k)`.
pub fn hermite_poulain(f: &Poly, g: &Poly) -> Poly {
    let mut acc = Poly::zero();
    let mut deriv = g.clone();
    for a in f.coeffs() {
        if deriv.is_zero() {
            break;
        }
        acc = &acc + &deriv.scale(a);
        deriv = deriv.derivative();
    }
    acc
}

/// `sum_k Q_k(xi) f^(k)(xi + z)` as a polynomial in `z`.
pub fn l_phi(op: &BivarOp, f: &Poly, xi: &Rational) -> Poly {
    let shifted = f.affine_compose(&Rational::one(), xi);
    let coeffs: Vec<Rational> = op.q_list().iter().map(|q| q.eval(xi)).collect();
    hermite_poulain(&Poly::new(coeffs), &shifted)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Proved,
    Refuted,
    /// No counterexample on the sample grid; not a proof.
    SampledOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub cond_i: Verdict,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub witnesses: Vec<Witness>,
}

impl HypothesisReport {
    /// All three conditions established, with (i) proved rather than sampled.
    pub fn proved(&self) -> bool {
        self.cond_i == Verdict::Proved && self.cond_ii && self.cond_iii
    }
}

/// Sample points for condition (i) when it cannot be decided exactly.
pub fn sample_grid() -> Vec<Rational> {
    let mut pts: Vec<Rational> = (-32..32).map(|k| Rational::new(k.into(), 4.into())).collect();
    for big in [1i64 << 10, 1 << 20] {
        pts.push(rat(big));
        pts.push(rat(-big));
    }
    pts
}

/// Checks the three sufficient conditions for `phi_F` to preserve
/// real-rootedness on polynomials of degree at most `d`:
///
/// 1. `F(xi, z)` is real-rooted in `z` for every real `xi`;
/// 2. `Q_0` strictly interlaces or strictly alternates left of `Q_1`, and
///    `deg Q_0 = 0` or their leading coefficients share a sign;
/// 3. `phi_F(x^k)` for `0 <= k <= d` have leading coefficients of one sign and
///    `deg phi_F(x^k) = deg Q_0 + k`.
///
/// Condition 1 is decided exactly for `z`-degree at most 2, through the
/// discriminant `Q_1^2 - 4 Q_0 Q_2`. Higher degrees are sampled.
pub fn check_maincor(op: &BivarOp, d: usize) -> Result<HypothesisReport> {
    let q0 = op.q(0);
    let d0 = q0.degree().ok_or(Error::InvalidArgument("Q_0 must be nonzero".into()))?;
    let mut witnesses = Vec::new();

    let cond_i = match op.degree_z() {
        Some(0) | Some(1) => Verdict::Proved,
        Some(2) => {
            let disc = &(&op.q(1) * &op.q(1)) - (&(&q0 * &op.q(2)).scale(&rat(4)));
            witnesses.push(Witness::poly("discriminant Q1^2 - 4 Q0 Q2", disc.clone()));
            if disc.is_zero() || check_nonneg_on_reals(&disc)? {
                Verdict::Proved
            } else {
                if let Some(xi) = negative_witness(&disc)? {
                    witnesses.push(Witness::poly("F(xi, z) not real-rooted", op.at(&xi)));
                    witnesses.push(Witness::rational("xi", xi));
                }
                Verdict::Refuted
            }
        }
        _ => {
            let bad = sample_grid().into_iter().find(|xi| {
                let fz = op.at(xi);
                !fz.is_zero() && !is_real_rooted(&fz).unwrap_or(false)
            });
            match bad {
                Some(xi) => {
                    witnesses.push(Witness::poly("F(xi, z) not real-rooted", op.at(&xi)));
                    witnesses.push(Witness::rational("xi", xi));
                    Verdict::Refuted
                }
                None => Verdict::SampledOnly,
            }
        }
    };

    let q1 = op.q(1);
    let cond_ii = if q1.is_zero() || !is_real_rooted(&q0)? || !is_real_rooted(&q1)? {
        false
    } else {
        let rel = interlace_relation(&q0, &q1)?;
        let strict = matches!(rel, InterlaceRelation::InterlacesStrict | InterlaceRelation::AlternatesLeftStrict);
        let signs = d0 == 0 || sign(q0.leading_coeff().expect("nonzero")) == sign(q1.leading_coeff().expect("nonzero"));
        strict && signs
    };
    if !cond_ii {
        witnesses.push(Witness::poly("Q0", q0.clone()));
        witnesses.push(Witness::poly("Q1", q1));
    }

    let lead_sign = sign(q0.leading_coeff().expect("nonzero"));
    let mut cond_iii = true;
    for k in 0..=d {
        let img = apply_phi(op, &Poly::monomial(Rational::one(), k));
        let ok = img.degree() == Some(d0 + k) && sign(img.leading_coeff().expect("nonzero")) == lead_sign;
        if !ok {
            witnesses.push(Witness::poly(format!("phi_F(x^{k})"), img));
            cond_iii = false;
            break;
        }
    }

    Ok(HypothesisReport {
        cond_i,
        cond_ii,
        cond_iii,
        witnesses,
    })
}

/// Counts the intersections of `G(x, y) = sum_k b_k x^k f^(k)(y) = 0` with
/// the line `s x - t y + u = 0` and reports whether there are `n = deg f`
/// real ones, counted with multiplicity.
pub fn polya_line_check(f: &Poly, b: &Poly, s: &Rational, t: &Rational, u: &Rational) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !is_real_rooted(f)? {
        return Err(Error::NotRealRooted);
    }
    if b.is_zero() || !is_real_rooted(b)? {
        return Err(Error::InvalidArgument("b must be a nonzero real-rooted polynomial".into()));
    }
    if (0..=n).any(|i| !b.coeff(i).is_positive()) {
        return Err(Error::InvalidArgument(format!("b_i must be positive for 0 <= i <= {n}")));
    }
    if s.is_negative() || t.is_negative() || (s + t).is_zero() {
        return Err(Error::InvalidArgument("need s, t >= 0 and s + t > 0".into()));
    }
    let curve = if t.is_zero() {
        // vertical line x = -u/s; G restricted to it is a polynomial in y
        let x0 = -u / s;
        let coeffs: Vec<Rational> = (0..=n).map(|k| b.coeff(k) * num_traits::pow(x0.clone(), k)).collect();
        hermite_poulain(&Poly::new(coeffs), f)
    } else {
        // y = (s x + u)/t
        let mut acc = Poly::zero();
        let mut deriv = f.clone();
        for k in 0..=n {
            let along = deriv.affine_compose(&(s / t), &(u / t));
            acc = &acc + &along.shift(k).scale(&b.coeff(k));
            deriv = deriv.derivative();
        }
        acc
    };
    if curve.degree() != Some(n) {
        return Ok(false);
    }
    is_real_rooted(&curve)
}

/// `sum_{k <= min deg} k! a_k b_k x^k`.
pub fn schur_product(f: &Poly, g: &Poly) -> Poly {
    let m = f.coeffs().len().min(g.coeffs().len());
    Poly::new((0..m).map(|k| int(factorial(k)) * f.coeff(k) * g.coeff(k)).collect())
}

/// Coefficientwise product, checked against `Gamma[f S g]` with `Gamma = 1/k!`.
pub fn hadamard_product(f: &Poly, g: &Poly) -> Result<Poly> {
    let m = f.coeffs().len().min(g.coeffs().len());
    let direct = Poly::new((0..m).map(|k| f.coeff(k) * g.coeff(k)).collect());
    let via_schur = crate::transforms::apply_multiplier(&MultiplierSeq::FactorialInverse, &schur_product(f, g))?;
    if direct != via_schur {
        return Err(Error::Defect(format!("Hadamard routes disagree: {direct} vs {via_schur}")));
    }
    Ok(direct)
}

/// `sum_k f^(k) g^(k) w_k(x)` for the given per-`k` weights.
fn derivative_pairing(f: &Poly, g: &Poly, mut weight: impl FnMut(usize) -> Result<Poly>) -> Result<Poly> {
    let mut acc = Poly::zero();
    let mut fd = f.clone();
    let mut gd = g.clone();
    let mut k = 0;
    while !fd.is_zero() && !gd.is_zero() {
        acc = &acc + &(&(&fd * &gd) * &weight(k)?);
        fd = fd.derivative();
        gd = gd.derivative();
        k += 1;
    }
    Ok(acc)
}

/// `sum_k f^(k) g^(k) x^k / k!`.
pub fn sharp_product(f: &Poly, g: &Poly) -> Poly {
    derivative_pairing(f, g, |k| Ok(Poly::monomial(Rational::new(1.into(), factorial(k)), k))).expect("weights are infallible")
}

/// `sum_k (f^(k)/k!) (g^(k)/k!) x^k (x+1)^k`, checked against `E(E^-1(f) E^-1(g))`.
pub fn diamond_product(f: &Poly, g: &Poly) -> Result<Poly> {
    let x_x1 = Poly::from_ints(&[0, 1, 1]);
    let direct = derivative_pairing(f, g, |k| {
        let kf = int(factorial(k));
        Ok(x_x1.pow(k).scale(&(&kf * &kf).recip()))
    })?;
    let via_e = e_transform(&(&e_inverse(f) * &e_inverse(g)));
    if direct != via_e {
        return Err(Error::Defect(format!("diamond routes disagree: {direct} vs {via_e}")));
    }
    Ok(direct)
}

fn lambda_over_k_factorial(l: &MultiplierSeq, k: usize) -> Result<Rational> {
    let lk = l
        .term(k)
        .ok_or_else(|| Error::InvalidArgument(format!("multiplier sequence has no term {k}")))?;
    Ok(lk / int(factorial(k)))
}

/// `sum_k (lambda_k / k!) f^(k) g^(k) (x - alpha)^k (x - beta)^k`, for `alpha < beta`.
pub fn dot_form(f: &Poly, g: &Poly, l: &MultiplierSeq, alpha: &Rational, beta: &Rational) -> Result<Poly> {
    if alpha >= beta {
        return Err(Error::InvalidArgument(format!(
            "dot form needs alpha < beta, got {alpha} >= {beta}"
        )));
    }
    let base = &Poly::linear(-alpha.clone(), Rational::one()) * &Poly::linear(-beta.clone(), Rational::one());
    derivative_pairing(f, g, |k| Ok(base.pow(k).scale(&lambda_over_k_factorial(l, k)?)))
}

/// `sum_k (lambda_k / k!) f^(k) g^(k) (x - alpha)^k`.
pub fn circ_form(f: &Poly, g: &Poly, l: &MultiplierSeq, alpha: &Rational) -> Result<Poly> {
    let base = Poly::linear(-alpha.clone(), Rational::one());
    derivative_pairing(f, g, |k| Ok(base.pow(k).scale(&lambda_over_k_factorial(l, k)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::roots::{is_simple_rooted, ExtRational};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn phi_examples() {
        assert_eq!(apply_phi(&BivarOp::new(vec![p(&[1]), p(&[1])]), &p(&[0, 0, 1])), p(&[0, 2, 1]));
        let f = p(&[3, 1, 4, 1]);
        assert_eq!(apply_phi(&BivarOp::new(vec![p(&[1])]), &f), f);
    }

    #[test]
    fn phi_reproduces_second_step_recursion() {
        // G_n = D(x(1+x) G_{n-1}), G_0 = 1
        let step = |g: &Poly| (&p(&[0, 1, 1]) * g).derivative();
        let mut gs = vec![p(&[1])];
        for n in 1..10 {
            let next = step(&gs[n - 1]);
            gs.push(next);
        }
        for t in [rat(0), rat(-1), ratio(3, 2)] {
            let op = eulerian_t_operator(&t);
            for n in 2..10 {
                let want = &gs[n] + &(&p(&[0, 1, 1]) * &gs[n - 2]).scale(&t);
                assert_eq!(apply_phi(&op, &gs[n - 2]), want);
            }
        }
    }

    #[test]
    fn hermite_poulain_examples() {
        assert_eq!(hermite_poulain(&p(&[0, 1]), &p(&[0, 0, 0, 1])), p(&[0, 0, 3]));
        let h = hermite_poulain(&p(&[1, 1]), &p(&[1, 2, 1]));
        assert_eq!(h, p(&[3, 4, 1]));
        assert!(is_real_rooted(&h).unwrap());
        let h = hermite_poulain(&p(&[1, 1]).pow(3), &p(&[0, 0, 1]));
        assert_eq!(h, p(&[6, 6, 1]));
        assert!(is_real_rooted(&h).unwrap());
    }

    #[test]
    fn l_phi_examples() {
        let f = p(&[2, -1, 5]);
        assert_eq!(l_phi(&BivarOp::new(vec![p(&[1])]), &f, &rat(0)), f);
        assert_eq!(l_phi(&BivarOp::new(vec![p(&[1]), p(&[1])]), &p(&[0, 0, 1]), &rat(1)), p(&[3, 4, 1]));
        let g1 = p(&[1, 2]);
        let z = l_phi(&eulerian_t_operator(&rat(0)), &g1, &rat(1));
        assert!(is_real_rooted(&z).unwrap());
    }

    #[test]
    fn maincor_examples() {
        let r = check_maincor(&eulerian_t_operator(&rat(-1)), 8).unwrap();
        assert_eq!(r.cond_i, Verdict::Proved);
        assert!(r.cond_ii && r.cond_iii);

        let r = check_maincor(&eulerian_t_operator(&rat(-3)), 8).unwrap();
        assert_eq!(r.cond_i, Verdict::Refuted);
        let xi = r
            .witnesses
            .iter()
            .find_map(|w| match &w.value {
                crate::witness::WitnessValue::Rational(x) if w.description == "xi" => Some(x.clone()),
                _ => None,
            })
            .expect("refutation carries xi");
        assert!(!is_real_rooted(&eulerian_t_operator(&rat(-3)).at(&xi)).unwrap());

        let r = check_maincor(&BivarOp::new(vec![p(&[1]), p(&[1])]), 10).unwrap();
        assert!(r.proved());

        assert!(check_maincor(&BivarOp::new(vec![Poly::zero(), p(&[1])]), 3).is_err());
    }

    #[test]
    fn maincor_samples_high_degree() {
        // F = (1 + z)^3 is real-rooted in z everywhere but only sampled
        let op = BivarOp::new(vec![p(&[1]), p(&[3]), p(&[3]), p(&[1])]);
        let r = check_maincor(&op, 5).unwrap();
        assert_eq!(r.cond_i, Verdict::SampledOnly);
        // F = 1 + x^2 z^3 + z^2 ... refuted at some grid point
        let op = BivarOp::new(vec![p(&[1]), p(&[0]), p(&[1]), p(&[0, 0, 1])]);
        assert_eq!(check_maincor(&op, 2).unwrap().cond_i, Verdict::Refuted);
    }

    #[test]
    fn polya_line_examples() {
        let b = p(&[1, 1]).pow(4);
        assert!(polya_line_check(&p(&[1, 2, 1]), &b, &rat(1), &rat(1), &rat(0)).unwrap());
        assert!(polya_line_check(&p(&[1, 2, 1]), &b, &rat(0), &rat(1), &rat(0)).unwrap());
        assert!(polya_line_check(&p(&[-2, 1, 1]), &b, &rat(1), &rat(0), &rat(3)).unwrap());
        assert!(polya_line_check(&p(&[1, 0, 1]), &b, &rat(1), &rat(1), &rat(0)).is_err());
        assert!(polya_line_check(&p(&[1, 2, 1]), &b, &rat(-1), &rat(1), &rat(0)).is_err());
        assert!(polya_line_check(&p(&[1, 2, 1]), &p(&[1, 1]), &rat(1), &rat(1), &rat(0)).is_err());
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_product(&p(&[1, 2, 1]), &p(&[1, 2, 1])), p(&[1, 4, 2]));
        assert_eq!(schur_product(&p(&[5, 2, 1]), &p(&[1])), p(&[5]));
        assert_eq!(schur_product(&p(&[0, 1]), &p(&[0, 1])), p(&[0, 1]));
    }

    #[test]
    fn hadamard_examples() {
        assert_eq!(hadamard_product(&p(&[1, 2, 1]), &p(&[1, 2, 1])).unwrap(), p(&[1, 4, 1]));
        let f = p(&[3, -1, 4, 1]);
        assert_eq!(hadamard_product(&f, &p(&[1, 1, 1, 1])).unwrap(), f);
        let g = &p(&[0, 1]) * &p(&[1, 1]).pow(2);
        assert_eq!(hadamard_product(&p(&[1, 1]).pow(3), &g).unwrap(), p(&[0, 3, 6, 1]));
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(sharp_product(&p(&[0, 1]), &p(&[0, 1])), p(&[0, 1, 1]));
        let f = p(&[2, 7, 1]);
        assert_eq!(sharp_product(&f, &p(&[3])), f.scale(&rat(3)));
        let h = sharp_product(&p(&[1, 2, 1]), &p(&[0, 0, 1]));
        assert_eq!(h, p(&[0, 0, 7, 6, 1]));
        assert!(is_real_rooted(&h).unwrap());
    }

    #[test]
    fn diamond_examples() {
        assert_eq!(diamond_product(&p(&[0, 1]), &p(&[0, 1])).unwrap(), p(&[0, 1, 2]));
        let f = p(&[4, -3, 2]);
        assert_eq!(diamond_product(&f, &p(&[1])).unwrap(), f);
        assert_eq!(diamond_product(&p(&[1, 1]), &p(&[0, 1])).unwrap(), p(&[0, 2, 2]));
    }

    #[test]
    fn special_cases_of_the_bilinear_forms() {
        let pairs = [
            (p(&[1, 2, 1]), p(&[0, 0, 1])),
            (p(&[-4, 0, 1]), p(&[0, 1, 1])),
            (p(&[3, 1, 4, 1, 5]), p(&[2, 7])),
        ];
        for (f, g) in &pairs {
            let dot = dot_form(f, g, &MultiplierSeq::FactorialInverse, &rat(-1), &rat(0)).unwrap();
            assert_eq!(dot, diamond_product(f, g).unwrap());
            let circ = circ_form(f, g, &MultiplierSeq::Ones, &rat(0)).unwrap();
            assert_eq!(circ, sharp_product(f, g));
        }
    }

    #[test]
    fn dot_examples() {
        let f = p(&[-4, 0, 1]);
        let g = p(&[0, 1, 1]);
        let h = dot_form(&f, &g, &MultiplierSeq::FactorialInverse, &rat(-1), &rat(0)).unwrap();
        assert!(is_real_rooted(&h).unwrap());
        let c = p(&[5]);
        let h = dot_form(&f, &c, &MultiplierSeq::GammaShift { q: rat(2) }, &rat(0), &rat(1)).unwrap();
        assert_eq!(h, f.scale(&rat(10)));
        assert!(dot_form(&f, &g, &MultiplierSeq::Ones, &rat(0), &rat(-1)).is_err());
        assert!(dot_form(&f, &g, &MultiplierSeq::Ones, &rat(0), &rat(0)).is_err());
    }

    #[test]
    fn maincor_holds_for_products_with_interval_rooted_factor() {
        // phi(f) = f . g with g simple and (alpha, beta)-rooted meets all three conditions
        let g = Poly::from_roots(&[ratio(-1, 3), ratio(-2, 3)]);
        let base = p(&[0, 1, 1]);
        let ops: Vec<Poly> = (0..=2)
            .map(|k| (&g.nth_derivative(k) * &base.pow(k)).scale(&Rational::new(1.into(), factorial(k) * factorial(k))))
            .collect();
        let r = check_maincor(&BivarOp::new(ops), 6).unwrap();
        assert!(r.proved(), "{r:?}");
        let (lo, hi) = (ExtRational::Finite(rat(-1)), ExtRational::Finite(rat(0)));
        assert!(crate::roots::roots_within(&g, &lo, &hi).unwrap());
        assert!(is_simple_rooted(&g).unwrap());
    }
}
