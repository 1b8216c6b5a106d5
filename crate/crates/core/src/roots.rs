//! Exact real-root analysis: Sturm counting, isolation, interlacing and
//! root-vector dominance.
//!
//! Root counts use the half-open interval `(lo, hi]`. Multiplicities come from
//! the square-free decomposition, never from numeric deflation.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, Poly};
use crate::rational::{binomial, int, rat, Rational};

/// A rational number or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

/// Sign of `f` at a point, reading the leading term at the infinities.
fn sign_at(f: &IntPoly, x: &ExtRational) -> i8 {
    let Some(d) = f.degree() else { return 0 };
    let lead = f.leading_sign();
    match x {
        ExtRational::Finite(r) => f.sign_at(r),
        ExtRational::PosInf => lead,
        ExtRational::NegInf => {
            if d % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
    }
}

/// The Sturm chain of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain for `f`, which should already be square-free.
    pub fn new(f: &Poly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![f.primitive()];
        if !f.is_constant() {
            chain.push(f.derivative().primitive());
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
                if r.is_zero() {
                    break;
                }
                chain.push((-&r).primitive());
            }
        }
        Ok(SturmChain {
            chain: chain.iter().map(IntPoly::from_poly).collect(),
        })
    }

    pub fn sign_changes(&self, x: &ExtRational) -> usize {
        let mut changes = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = sign_at(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: &ExtRational, hi: &ExtRational) -> usize {
        self.sign_changes(lo).saturating_sub(self.sign_changes(hi))
    }

    /// Sign of the chain's first polynomial at `x`.
    pub fn subject_sign(&self, x: &Rational) -> i8 {
        self.chain[0].sign_at(x)
    }
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
pub fn sturm_count(f: &Poly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::InvalidArgument("sturm_count needs lo < hi".into()));
    }
    sturm_count_ext(f, &lo.clone().into(), &hi.clone().into())
}

/// As [`sturm_count`], allowing infinite endpoints.
pub fn sturm_count_ext(f: &Poly, lo: &ExtRational, hi: &ExtRational) -> Result<usize> {
    let chain = SturmChain::new(&f.square_free_part()?)?;
    Ok(chain.count(lo, hi))
}

/// Number of distinct real roots.
pub fn distinct_real_roots(f: &Poly) -> Result<usize> {
    sturm_count_ext(f, &ExtRational::NegInf, &ExtRational::PosInf)
}

/// Number of real roots counted with multiplicity.
pub fn real_roots_with_multiplicity(f: &Poly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut total = 0;
    for (s, i) in f.square_free_decomposition()? {
        total += i * SturmChain::new(&s)?.count(&ExtRational::NegInf, &ExtRational::PosInf);
    }
    Ok(total)
}

pub fn is_real_rooted(f: &Poly) -> Result<bool> {
    Ok(real_roots_with_multiplicity(f)? == f.degree().ok_or(Error::ZeroPolynomial)?)
}

/// Real-rooted with pairwise distinct roots.
pub fn is_simple_rooted(f: &Poly) -> Result<bool> {
    if !is_real_rooted(f)? {
        return Ok(false);
    }
    Ok(f.gcd(&f.derivative()).is_constant())
}

/// True iff `f` is real-rooted with every root in the closed interval `[lo, hi]`.
pub fn roots_within(f: &Poly, lo: &ExtRational, hi: &ExtRational) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo > hi {
        return Err(Error::InvalidArgument("roots_within needs lo <= hi".into()));
    }
    if !is_real_rooted(f)? {
        return Ok(false);
    }
    let p = f.square_free_part()?;
    let chain = SturmChain::new(&p)?;
    let total = chain.count(&ExtRational::NegInf, &ExtRational::PosInf);
    let mut inside = chain.count(lo, hi);
    if let ExtRational::Finite(l) = lo {
        if chain.subject_sign(l) == 0 {
            inside += 1;
        }
    }
    Ok(inside == total)
}

/// An isolating interval for one distinct real root.
///
/// When `lo == hi` the root is exactly `lo`. Otherwise the root lies in the
/// open interval `(lo, hi)` and the square-free part of the subject polynomial
/// is nonzero at both endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBox {
    #[serde(with = "crate::rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub hi: Rational,
    pub multiplicity: usize,
}

impl RootBox {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Bisects until the box is at most `width` wide. `sqfree` must be the
    /// square-free part of the polynomial this box was isolated from.
    pub fn refine(&self, sqfree: &Poly, width: &Rational) -> RootBox {
        let p = IntPoly::from_poly(sqfree);
        let mut b = self.clone();
        while !b.is_point() && b.width() > *width {
            b = b.bisect(&p);
        }
        b
    }

    fn bisect(&self, sqfree: &IntPoly) -> RootBox {
        let mid = (&self.lo + &self.hi) / rat(2);
        let fm = sqfree.sign_at(&mid);
        if fm == 0 {
            return RootBox {
                lo: mid.clone(),
                hi: mid,
                multiplicity: self.multiplicity,
            };
        }
        if sqfree.sign_at(&self.lo) != fm {
            RootBox {
                lo: self.lo.clone(),
                hi: mid,
                multiplicity: self.multiplicity,
            }
        } else {
            RootBox {
                lo: mid,
                hi: self.hi.clone(),
                multiplicity: self.multiplicity,
            }
        }
    }
}

/// `1 + max |a_i / a_n|`, an upper bound on the absolute value of every root.
pub fn cauchy_bound(f: &Poly) -> Result<Rational> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let lead = f.coeff(d).abs();
    let mut m = Rational::zero();
    for c in &f.coeffs()[..d] {
        let q = c.abs() / &lead;
        if q > m {
            m = q;
        }
    }
    Ok(m + Rational::one())
}

/// A power of two bounding the absolute value of every root, from
/// `|z| <= 2 max |a_{d-i} / a_d|^(1/i)`.
pub fn root_bound_pow2(f: &Poly) -> Result<Rational> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let lead = f.coeff(d);
    let mut k: i64 = i64::MIN;
    for i in 1..=d {
        let c = f.coeff(d - i);
        if c.is_zero() {
            continue;
        }
        let r = (c / &lead).abs();
        // r < 2^e
        let e = r.numer().bits() as i64 - r.denom().bits() as i64 + 1;
        k = k.max(e.div_euclid(i as i64) + i64::from(e.rem_euclid(i as i64) != 0));
    }
    if k == i64::MIN {
        return Ok(Rational::one());
    }
    let two = rat(2);
    Ok(if k + 1 >= 0 {
        num_traits::pow(two, (k + 1) as usize)
    } else {
        num_traits::pow(two.recip(), (-k - 1) as usize)
    })
}

/// Distinct real roots of the square-free `p` as boxes of multiplicity 1.
fn isolate_square_free(p: &Poly) -> Result<Vec<RootBox>> {
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let chain = SturmChain::new(p)?;
    let b = root_bound_pow2(p)?;
    let mut stack = vec![(-b.clone(), b)];
    // (lo, hi] intervals; processed right to left and reversed at the end
    while let Some((lo, hi)) = stack.pop() {
        let c = chain.count(&lo.clone().into(), &hi.clone().into());
        match c {
            0 => {}
            1 => out.push(shrink_single(&chain, lo, hi)),
            _ => {
                let mid = (&lo + &hi) / rat(2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.reverse();
    Ok(out)
}

/// `(lo, hi]` holds exactly one root of `p`; return a box for it.
fn shrink_single(chain: &SturmChain, mut lo: Rational, mut hi: Rational) -> RootBox {
    loop {
        if chain.subject_sign(&hi) == 0 {
            return RootBox {
                lo: hi.clone(),
                hi,
                multiplicity: 1,
            };
        }
        if chain.subject_sign(&lo) != 0 {
            return RootBox { lo, hi, multiplicity: 1 };
        }
        let mid = (&lo + &hi) / rat(2);
        if chain.count(&lo.clone().into(), &mid.clone().into()) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Does the square-free `s` vanish inside `b`? `b` must isolate a root of a
/// square-free multiple of `s`.
fn factor_vanishes_in(s: &IntPoly, b: &RootBox) -> bool {
    if b.is_point() {
        s.sign_at(&b.lo) == 0
    } else {
        s.sign_at(&b.lo) * s.sign_at(&b.hi) < 0
    }
}

fn int_factors(dec: Vec<(Poly, usize)>) -> Vec<(IntPoly, usize)> {
    dec.into_iter().map(|(s, i)| (IntPoly::from_poly(&s), i)).collect()
}

fn multiplicity_in(dec: &[(IntPoly, usize)], b: &RootBox) -> usize {
    dec.iter().find(|(s, _)| factor_vanishes_in(s, b)).map_or(0, |(_, i)| *i)
}

/// Disjoint ascending boxes, one per distinct real root, with multiplicities.
pub fn isolate_roots(f: &Poly) -> Result<Vec<RootBox>> {
    if !is_real_rooted(f)? {
        return Err(Error::NotRealRooted);
    }
    isolate_real_roots(f)
}

/// As [`isolate_roots`] but without requiring every root to be real.
pub fn isolate_real_roots(f: &Poly) -> Result<Vec<RootBox>> {
    let dec = f.square_free_decomposition()?;
    let p = dec.iter().fold(Poly::one(), |acc, (s, _)| &acc * s);
    let mut boxes = isolate_square_free(&p)?;
    let dec = int_factors(dec);
    for b in &mut boxes {
        b.multiplicity = multiplicity_in(&dec, b);
    }
    Ok(boxes)
}

/// Roots of two polynomials placed on one common ordered list of distinct reals.
struct Merged {
    /// For each root of f (with multiplicity, ascending), its index in the union.
    f_idx: Vec<usize>,
    g_idx: Vec<usize>,
    shared: bool,
}

fn merge_roots(f: &Poly, g: &Poly) -> Result<Merged> {
    let df = int_factors(f.square_free_decomposition()?);
    let dg = int_factors(g.square_free_decomposition()?);
    let union = (f * g).square_free_part()?;
    let boxes = isolate_square_free(&union)?;
    let mut f_idx = Vec::new();
    let mut g_idx = Vec::new();
    let mut shared = false;
    for (k, b) in boxes.iter().enumerate() {
        let mf = multiplicity_in(&df, b);
        let mg = multiplicity_in(&dg, b);
        shared |= mf > 0 && mg > 0;
        f_idx.extend(std::iter::repeat_n(k, mf));
        g_idx.extend(std::iter::repeat_n(k, mg));
    }
    Ok(Merged { f_idx, g_idx, shared })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterlaceRelation {
    Interlaces,
    InterlacesStrict,
    AlternatesLeft,
    AlternatesLeftStrict,
    EqualDegreeNone,
    None,
}

impl InterlaceRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            InterlaceRelation::Interlaces => "interlaces",
            InterlaceRelation::InterlacesStrict => "interlaces_strict",
            InterlaceRelation::AlternatesLeft => "alternates_left",
            InterlaceRelation::AlternatesLeftStrict => "alternates_left_strict",
            InterlaceRelation::EqualDegreeNone => "equal_degree_none",
            InterlaceRelation::None => "none",
        }
    }

    /// `f ⪯ g`, strict or not.
    pub fn is_interlacing(self) -> bool {
        matches!(self, InterlaceRelation::Interlaces | InterlaceRelation::InterlacesStrict)
    }

    /// `f ≪ g`, strict or not.
    pub fn is_alternating_left(self) -> bool {
        matches!(self, InterlaceRelation::AlternatesLeft | InterlaceRelation::AlternatesLeftStrict)
    }

    pub fn is_strict(self) -> bool {
        matches!(self, InterlaceRelation::InterlacesStrict | InterlaceRelation::AlternatesLeftStrict)
    }
}

impl fmt::Display for InterlaceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies the ordered pair `(f, g)` of real-rooted polynomials.
pub fn interlace_relation(f: &Poly, g: &Poly) -> Result<InterlaceRelation> {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    if !is_real_rooted(f)? || !is_real_rooted(g)? {
        return Err(Error::NotRealRooted);
    }
    if dg == df + 1 {
        let m = merge_roots(f, g)?;
        // beta_k <= alpha_k <= beta_{k+1}
        let ok = (0..df).all(|k| m.g_idx[k] <= m.f_idx[k] && m.f_idx[k] <= m.g_idx[k + 1]);
        return Ok(match (ok, m.shared) {
            (false, _) => InterlaceRelation::None,
            (true, false) => InterlaceRelation::InterlacesStrict,
            (true, true) => InterlaceRelation::Interlaces,
        });
    }
    if df == dg {
        let m = merge_roots(f, g)?;
        // alpha_k <= beta_k <= alpha_{k+1}
        let ok = (0..df).all(|k| m.f_idx[k] <= m.g_idx[k] && (k + 1 == df || m.g_idx[k] <= m.f_idx[k + 1]));
        return Ok(match (ok, m.shared) {
            (false, _) => InterlaceRelation::EqualDegreeNone,
            (true, false) => InterlaceRelation::AlternatesLeftStrict,
            (true, true) => InterlaceRelation::AlternatesLeft,
        });
    }
    Ok(InterlaceRelation::None)
}

/// `f ≤ g` in the sense that the i-th smallest root of `f` is at most the
/// i-th smallest root of `g`, counting multiplicity.
pub fn root_dominance(f: &Poly, g: &Poly) -> Result<bool> {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    if df != dg {
        return Err(Error::DegreeMismatch(df, dg));
    }
    if !f.is_standard() || !g.is_standard() {
        return Err(Error::NotStandard);
    }
    if !is_real_rooted(f)? || !is_real_rooted(g)? {
        return Err(Error::NotRealRooted);
    }
    let m = merge_roots(f, g)?;
    Ok(m.f_idx.iter().zip(&m.g_idx).all(|(a, b)| a <= b))
}

/// True iff `p(x) >= 0` for every real `x`.
pub fn check_nonneg_on_reals(p: &Poly) -> Result<bool> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d % 2 == 1 || !p.is_standard() {
        return Ok(false);
    }
    for (s, i) in p.square_free_decomposition()? {
        if i % 2 == 1 && distinct_real_roots(&s)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A rational where `p` is negative, if there is one.
pub fn negative_witness(p: &Poly) -> Result<Option<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let boxes = isolate_real_roots(p)?;
    let mut probes = Vec::new();
    match (boxes.first(), boxes.last()) {
        (Some(first), Some(last)) => {
            probes.push(&first.lo - rat(1));
            probes.push(&last.hi + rat(1));
            for w in boxes.windows(2) {
                probes.push((&w[0].hi + &w[1].lo) / rat(2));
            }
            for b in &boxes {
                if !b.is_point() {
                    probes.push((&b.lo + &b.hi) / rat(2));
                }
            }
        }
        _ => probes.push(Rational::zero()),
    }
    // midpoints of open boxes may land on the root itself; those evaluate to zero and are skipped
    Ok(probes.into_iter().find(|x| p.eval(x).is_negative()))
}

/// Strict Newton inequalities
/// `(a_i / C(n,i))^2 > (a_{i-1} / C(n,i-1)) (a_{i+1} / C(n,i+1))` for `m < i < n`,
/// where `m` and `n` are the lowest and highest exponents present.
///
/// For `(x+1)^n` these hold with equality, so the strict form reports false.
pub fn newton_inequalities(f: &Poly) -> bool {
    let (Some(m), Some(n)) = (f.valuation(), f.degree()) else {
        return true;
    };
    let norm = |i: usize| f.coeff(i) / int(binomial(n, i));
    ((m + 1)..n).all(|i| {
        let c = norm(i);
        &c * &c > norm(i - 1) * norm(i + 1)
    })
}
