//! Polynomial families from permutation statistics, each produced by an exact
//! formula and, where the group is small enough, checked against enumeration.

pub mod perms;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::hadamard_product;
use crate::poly::Poly;
use crate::rational::{binomial, factorial, int, rat, Rational};
use crate::transforms::{e_transform, w_transform};

pub use perms::{perm_stats, signed_perm_stats, stack_sort, t_stack_poly, PermRow, SignedPerm, SignedRow, StatTable};

/// Largest `n` for which generators cross-check themselves against enumeration.
const INLINE_ORACLE_MAX: usize = 7;

fn defect(what: &str, n: usize) -> Error {
    Error::Defect(format!("{what} disagrees with its enumeration oracle at n = {n}"))
}

fn one_plus_x() -> Poly {
    Poly::from_ints(&[1, 1])
}

/// `E_n(x)`, the surjection polynomial: `E_0 = 1`, `E_n = x d/dx ((1+x) E_{n-1})`.
pub fn surjection_poly(n: usize) -> Result<Poly> {
    let mut e = Poly::one();
    for _ in 0..n {
        e = (&one_plus_x() * &e).derivative().shift(1);
    }
    if e != e_transform(&Poly::monomial(Rational::one(), n)) {
        return Err(Error::Defect(format!("E_{n} differs from E(x^{n})")));
    }
    Ok(e)
}

/// `G_0 = 1`, `G_n = d/dx (x (1+x) G_{n-1})`.
pub fn g_poly(n: usize) -> Result<Poly> {
    let x1x = Poly::from_ints(&[0, 1, 1]);
    let mut g = Poly::one();
    for _ in 0..n {
        g = (&x1x * &g).derivative();
    }
    if surjection_poly(n + 1)? != g.shift(1) {
        return Err(Error::Defect(format!("E_{} differs from x G_{n}", n + 1)));
    }
    Ok(g)
}

/// `A_n(x) = sum x^{des + 1}` for `n >= 1`.
pub fn eulerian_poly(n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidArgument("the Eulerian polynomial A_n needs n >= 1".into()));
    }
    let a = surjection_poly(n)?.mobius_deunitize_with_degree(n);
    if n <= INLINE_ORACLE_MAX && perm_stats(n)?.descent_poly().shift(1) != a {
        return Err(defect("A_n", n));
    }
    Ok(a)
}

/// `A_n(t, x) = A_n(x) + t x A_{n-2}(x)` for `n > 2`.
pub fn eulerian_t_poly(n: usize, t: &Rational) -> Result<Poly> {
    if n <= 2 {
        return Err(Error::InvalidArgument(format!("A_n(t, x) needs n > 2, got {n}")));
    }
    Ok(&eulerian_poly(n)? + &eulerian_poly(n - 2)?.scale(t).shift(1))
}

/// `W_2(n, k) = (n+k)! (2n-k-1)! / ((k+1)! (n-k)! (2k+1)! (2n-2k-1)!)`.
pub fn w2_closed(n: usize, k: usize) -> Result<Rational> {
    if n == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("W_2(n, k) needs 0 <= k < n, got n = {n}, k = {k}")));
    }
    let num = factorial(n + k) * factorial(2 * n - k - 1);
    let den = factorial(k + 1) * factorial(n - k) * factorial(2 * k + 1) * factorial(2 * n - 2 * k - 1);
    Ok(Rational::new(num, den))
}

pub fn w2_poly(n: usize) -> Result<Poly> {
    Ok(Poly::new((0..n).map(|k| w2_closed(n, k)).collect::<Result<_>>()?))
}

/// `A_{n+1}(x; q) = (n x + q) A_n − x (x − 1) A_n'`, `A_0 = 1`.
pub fn q_eulerian_poly(n: usize, q: &Rational) -> Result<Poly> {
    let xx1 = Poly::from_ints(&[0, -1, 1]);
    let mut a = Poly::one();
    for m in 0..n {
        let lin = Poly::linear(q.clone(), rat(m as i64));
        a = &(&lin * &a) - &(&xx1 * &a.derivative());
    }
    if (1..=INLINE_ORACLE_MAX).contains(&n) && perm_stats(n)?.exc_cycle_poly(q) != a {
        return Err(defect("A_n(x; q)", n));
    }
    Ok(a)
}

/// `E_{n+1}(x; q) = (1 + x)(q E_n + x E_n')`, `E_0 = 1`.
pub fn e_q_poly(n: usize, q: &Rational) -> Result<Poly> {
    let mut e = Poly::one();
    for _ in 0..n {
        e = &one_plus_x() * &(&e.scale(q) + &e.derivative().shift(1));
    }
    if e != q_eulerian_poly(n, q)?.mobius_unitize_with_degree(n) {
        return Err(Error::Defect(format!("E_{n}(x; q) differs from the unitized A_{n}(x; q)")));
    }
    Ok(e)
}

/// `B_n(x; q)` defined by `sum ((1+q) i + 1)^n x^i = B_n(x; q) / (1 − x)^{n+1}`.
pub fn b_euler_q(n: usize, q: &Rational) -> Result<Poly> {
    b_euler_multi(n, &vec![q.clone(); n])
}

/// Multi-parameter form, the W-transform of `prod ((1 + q_i) x + 1)` taken
/// with denominator `(1 − x)^{n+1}` even when the product drops degree.
pub fn b_euler_multi(n: usize, qs: &[Rational]) -> Result<Poly> {
    if qs.len() != n {
        return Err(Error::DegreeMismatch(qs.len(), n));
    }
    let f = qs
        .iter()
        .fold(Poly::one(), |acc, q| &acc * &Poly::linear(Rational::one(), q + Rational::one()));
    let b = e_transform(&f).mobius_deunitize_with_degree(n);
    if f.degree() == Some(n) && w_transform(&f)? != b {
        return Err(Error::Defect(format!("B_{n} disagrees with the W-transform")));
    }
    Ok(b)
}

/// `P(B_n, S; x) = W(sum_{s in S} C(n, s) x^s (x + 1)^{n−s})`.
pub fn p_bn_subset(n: usize, set: &[usize]) -> Result<Poly> {
    if let Some(&s) = set.iter().find(|&&s| s > n) {
        return Err(Error::InvalidArgument(format!("{s} lies outside [0, {n}]")));
    }
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    let f = set.iter().fold(Poly::zero(), |acc, &s| {
        let term = &Poly::monomial(int(binomial(n, s)), s) * &one_plus_x().pow(n - s);
        &acc + &term
    });
    if f.is_zero() {
        return Ok(f);
    }
    let p = w_transform(&f)?;
    if n <= 6 && n <= perms::signed_guard() && signed_perm_stats(n)?.b_subset_poly(&set) != p {
        return Err(defect("P(B_n, S)", n));
    }
    Ok(p)
}

/// Root-system family for the cluster-complex h-polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FzFamily {
    A,
    B,
    D,
}

impl std::str::FromStr for FzFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(FzFamily::A),
            "B" | "b" => Ok(FzFamily::B),
            "D" | "d" => Ok(FzFamily::D),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// `(1/n) sum C(n, k) C(n, k+1) x^k`.
pub fn narayana(n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    Poly::new(
        (0..n)
            .map(|k| Rational::new(binomial(n, k) * binomial(n, k + 1), BigInt::from(n)))
            .collect(),
    )
}

/// h-polynomial of the cluster complex of type `A_n`, `B_n` or `D_n`.
pub fn fz_h_poly(family: FzFamily, n: usize) -> Result<Poly> {
    match family {
        FzFamily::A => Ok(narayana(n + 1)),
        FzFamily::B => {
            let h = Poly::new((0..=n).map(|k| int(binomial(n, k).pow(2))).collect());
            let p = one_plus_x().pow(n);
            if hadamard_product(&p, &p)? != h {
                return Err(Error::Defect(format!("h(B_{n}) differs from its Hadamard square")));
            }
            Ok(h)
        }
        FzFamily::D => {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("type D needs n >= 2, got {n}")));
            }
            let b = fz_h_poly(FzFamily::B, n)?;
            let a = fz_h_poly(FzFamily::A, n - 2)?;
            Ok(&b - &a.scale(&rat(n as i64)).shift(1))
        }
    }
}

/// `alpha h(B_n) + beta n x h(A_{n-2})`.
pub fn weyl_combination(n: usize, alpha: &Rational, beta: &Rational) -> Result<Poly> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("the combination needs n >= 2, got {n}")));
    }
    let b = fz_h_poly(FzFamily::B, n)?.scale(alpha);
    let a = fz_h_poly(FzFamily::A, n - 2)?.scale(&(beta * rat(n as i64))).shift(1);
    Ok(&b + &a)
}

/// `P(D_n, x) = P(B_n, x) − n 2^{n−1} x P(A_{n−1}, x)`.
pub fn p_dn_poly(n: usize) -> Result<Poly> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("P(D_n) needs n >= 2, got {n}")));
    }
    let pb = b_euler_q(n, &Rational::one())?;
    let pa = b_euler_q(n - 1, &Rational::zero())?;
    let c = int(BigInt::from(n) << (n - 1));
    Ok(&pb - &pa.scale(&c).shift(1))
}

/// `sum_j a_{step j + offset} x^j`.
pub fn multisect(f: &Poly, step: usize, offset: usize) -> Result<Poly> {
    if step == 0 || offset >= step {
        return Err(Error::InvalidArgument(format!(
            "multisection needs 0 <= offset < step, got {offset}, {step}"
        )));
    }
    Ok(Poly::new(f.coeffs().iter().skip(offset).step_by(step).cloned().collect()))
}
