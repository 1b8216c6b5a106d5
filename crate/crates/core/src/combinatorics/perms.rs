//! Permutation and signed-permutation enumeration with the statistics used
//! by the generating-function oracles.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{int, Rational};

/// Default largest `n` for which `S_n` is enumerated.
pub const DEFAULT_SYM_GUARD: usize = 9;
/// Default largest `n` for which the signed group `B_n` is enumerated.
pub const DEFAULT_SIGNED_GUARD: usize = 8;
/// Overrides both guards when set to a natural number.
pub const GUARD_ENV: &str = "POLYAFREQ_MAX_ENUM";

fn env_guard() -> Option<usize> {
    std::env::var(GUARD_ENV).ok().and_then(|v| v.trim().parse().ok())
}

pub fn sym_guard() -> usize {
    env_guard().unwrap_or(DEFAULT_SYM_GUARD)
}

pub fn signed_guard() -> usize {
    env_guard().unwrap_or(DEFAULT_SIGNED_GUARD)
}

fn check_guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::ResourceLimit { size: n, limit })
    } else {
        Ok(())
    }
}

/// Rearranges `p` into the next permutation in lexicographic order; false at the last one.
pub fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Folds over every permutation of `1..=n` (one-line notation), splitting the
/// work by first entry across the rayon pool.
pub fn fold_permutations<T, I, F, R>(n: usize, init: I, fold: F, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[usize]) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    if n == 0 {
        let mut acc = init();
        fold(&mut acc, &[]);
        return acc;
    }
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut p: Vec<usize> = std::iter::once(first).chain((1..=n).filter(|&v| v != first)).collect();
            loop {
                fold(&mut acc, &p);
                if !next_permutation(&mut p[1..]) {
                    break;
                }
            }
            acc
        })
        .reduce(&init, &reduce)
}

pub fn descents(p: &[usize]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Positions `i` with `p(i) > i` (1-based values).
pub fn excedances(p: &[usize]) -> usize {
    p.iter().enumerate().filter(|&(i, &v)| v > i + 1).count()
}

pub fn cycles(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut c = 0;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        c += 1;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i] - 1;
        }
    }
    c
}

/// West's stack sort, `s(L n R) = s(L) s(R) n`.
pub fn stack_sort(p: &[usize]) -> Vec<usize> {
    let Some((pos, &max)) = p.iter().enumerate().max_by_key(|&(_, v)| *v) else {
        return Vec::new();
    };
    let mut out = stack_sort(&p[..pos]);
    out.extend(stack_sort(&p[pos + 1..]));
    out.push(max);
    out
}

pub fn is_t_stack_sortable(p: &[usize], t: usize) -> bool {
    let mut q = p.to_vec();
    for _ in 0..t {
        if q.windows(2).all(|w| w[0] < w[1]) {
            return true;
        }
        q = stack_sort(&q);
    }
    q.windows(2).all(|w| w[0] < w[1])
}

/// Statistics of one permutation of `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PermRow {
    pub des: usize,
    pub exc: usize,
    pub cyc: usize,
}

/// Statistics of one signed permutation of `B_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedRow {
    /// Type-B descents with `w(0) = 0`.
    pub d_b: usize,
    /// Number of negative entries.
    pub neg: usize,
    /// Bit `i-1` set iff the value `i` appears negated.
    pub chi: u32,
    /// Type-D descents; meaningful for the even-`neg` rows only.
    pub d_d: usize,
}

/// Per-element statistics over a whole group, in enumeration order.
#[derive(Clone, Debug)]
pub struct StatTable<R> {
    pub n: usize,
    pub rows: Vec<R>,
}

/// A signed permutation in window notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    window: Vec<i64>,
}

impl SignedPerm {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &w in &window {
            let a = w.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidArgument(format!("{window:?} is not a signed permutation")));
            }
            seen[a] = true;
        }
        Ok(SignedPerm { window })
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `#{ i in [0, n-1] : w(i) > w(i+1) }` with `w(0) = 0`.
    pub fn d_b(&self) -> usize {
        let mut prev = 0i64;
        let mut d = 0;
        for &w in &self.window {
            if prev > w {
                d += 1;
            }
            prev = w;
        }
        d
    }

    pub fn neg(&self) -> usize {
        self.window.iter().filter(|&&w| w < 0).count()
    }

    pub fn chi(&self) -> u32 {
        self.window
            .iter()
            .filter(|&&w| w < 0)
            .fold(0, |acc, &w| acc | 1 << (w.unsigned_abs() - 1))
    }

    /// Type-D descents: ordinary descents of the window plus one when `w(1) + w(2) < 0`.
    pub fn d_d(&self) -> usize {
        let plain = self.window.windows(2).filter(|w| w[0] > w[1]).count();
        let extra = self.window.len() >= 2 && self.window[0] + self.window[1] < 0;
        plain + usize::from(extra)
    }
}

fn compute_perm_table(n: usize) -> StatTable<PermRow> {
    let rows = fold_permutations(
        n,
        Vec::new,
        |acc: &mut Vec<PermRow>, p| {
            acc.push(PermRow {
                des: descents(p),
                exc: excedances(p),
                cyc: cycles(p),
            })
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    StatTable { n, rows }
}

fn compute_signed_table(n: usize) -> StatTable<SignedRow> {
    let rows = fold_permutations(
        n,
        Vec::new,
        |acc: &mut Vec<SignedRow>, p| {
            for mask in 0u32..(1 << n) {
                let window: Vec<i64> = p
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if mask >> i & 1 == 1 { -(v as i64) } else { v as i64 })
                    .collect();
                let s = SignedPerm { window };
                acc.push(SignedRow {
                    d_b: s.d_b(),
                    neg: s.neg(),
                    chi: s.chi(),
                    d_d: s.d_d(),
                });
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    StatTable { n, rows }
}

type Cache<R> = OnceLock<Mutex<HashMap<usize, Arc<StatTable<R>>>>>;

fn cached<R: Send + Sync + 'static>(cache: &'static Cache<R>, n: usize, make: impl FnOnce(usize) -> StatTable<R>) -> Arc<StatTable<R>> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = map.lock().expect("cache lock").get(&n) {
        return t.clone();
    }
    let table = Arc::new(make(n));
    map.lock().expect("cache lock").entry(n).or_insert(table).clone()
}

/// Descents, excedances and cycles of every permutation of `S_n`.
pub fn perm_stats(n: usize) -> Result<Arc<StatTable<PermRow>>> {
    check_guard(n, sym_guard())?;
    static CACHE: Cache<PermRow> = OnceLock::new();
    Ok(cached(&CACHE, n, compute_perm_table))
}

/// `d_B`, `N`, the `chi` vector and type-D descents of every element of `B_n`.
pub fn signed_perm_stats(n: usize) -> Result<Arc<StatTable<SignedRow>>> {
    check_guard(n, signed_guard())?;
    if n > 30 {
        return Err(Error::ResourceLimit { size: n, limit: 30 });
    }
    static CACHE: Cache<SignedRow> = OnceLock::new();
    Ok(cached(&CACHE, n, compute_signed_table))
}

fn counts_to_poly(counts: &HashMap<usize, BigInt>) -> Poly {
    let d = counts.keys().copied().max().unwrap_or(0);
    Poly::new((0..=d).map(|k| int(counts.get(&k).cloned().unwrap_or_else(BigInt::zero))).collect())
}

impl StatTable<PermRow> {
    /// `sum x^des`.
    pub fn descent_poly(&self) -> Poly {
        let mut c: HashMap<usize, BigInt> = HashMap::new();
        for r in &self.rows {
            *c.entry(r.des).or_default() += 1;
        }
        counts_to_poly(&c)
    }

    /// `sum x^exc q^cyc` at a given `q`.
    pub fn exc_cycle_poly(&self, q: &Rational) -> Poly {
        let mut coeffs = vec![Rational::zero(); self.n.max(1)];
        for r in &self.rows {
            coeffs[r.exc] += num_traits::pow(q.clone(), r.cyc);
        }
        Poly::new(coeffs)
    }

    /// `(#exc, #cycles) -> count`.
    pub fn exc_cycle_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut c = HashMap::new();
        for r in &self.rows {
            *c.entry((r.exc, r.cyc)).or_insert(0) += 1;
        }
        c
    }
}

impl StatTable<SignedRow> {
    /// `sum q^N x^{d_B}` at a given `q`.
    pub fn b_poly(&self, q: &Rational) -> Poly {
        let mut coeffs = vec![Rational::zero(); self.n + 1];
        for r in &self.rows {
            coeffs[r.d_b] += num_traits::pow(q.clone(), r.neg);
        }
        Poly::new(coeffs)
    }

    /// `sum prod q_i^{chi_i} x^{d_B}`.
    pub fn b_multi_poly(&self, qs: &[Rational]) -> Result<Poly> {
        if qs.len() != self.n {
            return Err(Error::DegreeMismatch(qs.len(), self.n));
        }
        let mut coeffs = vec![Rational::zero(); self.n + 1];
        for r in &self.rows {
            let mut w = Rational::one();
            for (i, q) in qs.iter().enumerate() {
                if r.chi >> i & 1 == 1 {
                    w *= q;
                }
            }
            coeffs[r.d_b] += w;
        }
        Ok(Poly::new(coeffs))
    }

    /// `sum x^{d_B}` over elements with `N` in `set`.
    pub fn b_subset_poly(&self, set: &[usize]) -> Poly {
        let mut c: HashMap<usize, BigInt> = HashMap::new();
        for r in self.rows.iter().filter(|r| set.contains(&r.neg)) {
            *c.entry(r.d_b).or_default() += 1;
        }
        if c.is_empty() {
            return Poly::zero();
        }
        counts_to_poly(&c)
    }

    /// `sum x^{d_D}` over the even-`N` subgroup.
    pub fn d_poly(&self) -> Poly {
        let mut c: HashMap<usize, BigInt> = HashMap::new();
        for r in self.rows.iter().filter(|r| r.neg % 2 == 0) {
            *c.entry(r.d_d).or_default() += 1;
        }
        counts_to_poly(&c)
    }
}

/// `sum W_t(n, k) x^k`: `t`-stack-sortable permutations of `S_n` by descents.
pub fn t_stack_poly(n: usize, t: usize) -> Result<Poly> {
    check_guard(n, sym_guard())?;
    let counts = fold_permutations(
        n,
        || vec![0u64; n.max(1)],
        |acc: &mut Vec<u64>, p| {
            if is_t_stack_sortable(p, t) {
                acc[descents(p)] += 1;
            }
        },
        |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
    );
    Ok(Poly::new(
        counts.into_iter().map(|c| Rational::from_integer(BigInt::from(c))).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn next_permutation_visits_all() {
        let mut p = vec![1, 2, 3, 4];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, vec![4, 3, 2, 1]);
    }

    #[test]
    fn stack_sort_examples() {
        assert_eq!(stack_sort(&[2, 3, 1]), vec![2, 1, 3]);
        assert_eq!(stack_sort(&[2, 1, 3]), vec![1, 2, 3]);
        assert!(!is_t_stack_sortable(&[2, 3, 1], 1));
        assert!(is_t_stack_sortable(&[2, 3, 1], 2));
        assert!(is_t_stack_sortable(&[1, 2, 3], 0));
    }

    #[test]
    fn t_stack_examples() {
        assert_eq!(t_stack_poly(3, 1).unwrap(), Poly::from_ints(&[1, 3, 1]));
        assert_eq!(t_stack_poly(4, 2).unwrap(), Poly::from_ints(&[1, 10, 10, 1]));
        assert_eq!(t_stack_poly(4, 3).unwrap(), Poly::from_ints(&[1, 11, 11, 1]));
    }

    #[test]
    fn statistics() {
        assert_eq!(cycles(&[1, 2, 3]), 3);
        assert_eq!(cycles(&[2, 3, 1]), 1);
        assert_eq!(excedances(&[2, 3, 1]), 2);
        assert_eq!(descents(&[3, 1, 2]), 1);
        let t = perm_stats(4).unwrap();
        assert_eq!(t.rows.len(), 24);
        assert_eq!(t.descent_poly(), Poly::from_ints(&[1, 11, 11, 1]));
        assert_eq!(t.exc_cycle_poly(&rat(1)), Poly::from_ints(&[1, 11, 11, 1]));
    }

    #[test]
    fn signed_examples() {
        let t = signed_perm_stats(1).unwrap();
        let q = rat(5);
        assert_eq!(t.b_poly(&q), Poly::from_ints(&[1, 5]));
        let t = signed_perm_stats(2).unwrap();
        assert_eq!(t.rows.len(), 8);
        assert_eq!(t.b_poly(&rat(1)), Poly::from_ints(&[1, 6, 1]));
        assert_eq!(t.d_poly(), Poly::from_ints(&[1, 2, 1]));
        let s = SignedPerm::new(vec![-2, 1]).unwrap();
        assert_eq!((s.d_b(), s.neg(), s.chi()), (1, 1, 0b10));
        assert!(SignedPerm::new(vec![1, -1]).is_err());
    }

    #[test]
    fn guards() {
        assert_eq!(
            perm_stats(50).unwrap_err(),
            Error::ResourceLimit {
                size: 50,
                limit: sym_guard()
            }
        );
    }
}
