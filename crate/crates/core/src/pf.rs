//! Pólya frequency verdicts: exact Toeplitz minors and the finite-sequence
//! criteria (real non-positive zeros, log-concavity, unimodality).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::roots::{roots_within, ExtRational};

/// A finite sequence `a_0..a_N`, zero outside that range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqWindow {
    pub terms: Vec<Rational>,
}

impl SeqWindow {
    pub fn new(terms: Vec<Rational>) -> Self {
        SeqWindow { terms }
    }

    pub fn from_poly(f: &Poly) -> Self {
        SeqWindow {
            terms: f.coeffs().to_vec(),
        }
    }

    /// `a_i`, zero for out-of-range (including negative) indices.
    pub fn get(&self, i: i64) -> Rational {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.terms.get(i).cloned())
            .unwrap_or_else(Rational::zero)
    }
}

/// A square submatrix by row and column indices together with its determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(with = "crate::rational::serde_str")]
    pub det: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorReport {
    pub verdict: bool,
    pub witness: Option<MinorWitness>,
}

/// `M[i][j] = a_{i-j}`, an `n x n` window of the infinite Toeplitz matrix.
pub fn toeplitz_window(s: &SeqWindow, n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| s.get(i as i64 - j as i64)).collect()).collect()
}

/// k-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Fraction-free elimination on a `k x k` row-major matrix; `None` on overflow.
fn bareiss_i128(mut a: Vec<i128>, k: usize) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..k {
        if a[p * k + p] == 0 {
            let Some(r) = (p + 1..k).find(|&r| a[r * k + p] != 0) else {
                return Some(0);
            };
            for c in 0..k {
                a.swap(p * k + c, r * k + c);
            }
            sign = -sign;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = a[i * k + j]
                    .checked_mul(a[p * k + p])?
                    .checked_sub(a[i * k + p].checked_mul(a[p * k + j])?)?;
                a[i * k + j] = v / prev;
            }
        }
        prev = a[p * k + p];
    }
    Some(sign * a[k * k - 1])
}

fn bareiss_big(mut a: Vec<BigInt>, k: usize) -> BigInt {
    let mut negate = false;
    let mut prev = BigInt::one();
    for p in 0..k {
        if a[p * k + p].is_zero() {
            let Some(r) = (p + 1..k).find(|&r| !a[r * k + p].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..k {
                a.swap(p * k + c, r * k + c);
            }
            negate = !negate;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = &a[i * k + j] * &a[p * k + p] - &a[i * k + p] * &a[p * k + j];
                a[i * k + j] = v / &prev;
            }
        }
        prev = a[p * k + p].clone();
    }
    let d = a[k * k - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Integer determinant of the selected minor; small entries stay on the i128 path.
fn minor_det(int_rows: &[Vec<BigInt>], small: Option<&[Vec<i128>]>, rows: &[usize], cols: &[usize]) -> BigInt {
    let k = rows.len();
    if let Some(small) = small {
        let a: Vec<i128> = rows.iter().flat_map(|&r| cols.iter().map(move |&c| small[r][c])).collect();
        if let Some(d) = bareiss_i128(a, k) {
            return BigInt::from(d);
        }
    }
    let a: Vec<BigInt> = rows
        .iter()
        .flat_map(|&r| cols.iter().map(move |&c| int_rows[r][c].clone()))
        .collect();
    bareiss_big(a, k)
}

/// Checks every `k x k` minor, `1 <= k <= r`, for nonnegativity. Rows are
/// scaled by positive integers to clear denominators; the reported
/// determinant is the exact one of the original matrix. The witness is the
/// first negative minor ordered by size, then rows, then columns.
pub fn minors_nonneg(m: &[Vec<Rational>], r: usize) -> Result<MinorReport> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("minor check needs a square matrix".into()));
    }
    if r > n {
        return Err(Error::InvalidArgument(format!("minor order {r} exceeds dimension {n}")));
    }
    let scales: Vec<BigInt> = m
        .iter()
        .map(|row| row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
        .collect();
    let int_rows: Vec<Vec<BigInt>> = m
        .iter()
        .zip(&scales)
        .map(|(row, s)| row.iter().map(|x| (x * Rational::from_integer(s.clone())).to_integer()).collect())
        .collect();
    let small: Option<Vec<Vec<i128>>> = int_rows
        .iter()
        .map(|row| row.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>())
        .collect();
    // Checked i128 elimination for small entries; overflow falls back to BigInt.
    let small = small.filter(|rows| rows.iter().flatten().all(|v| v.abs() < (1i128 << 31)));

    for k in 1..=r {
        let row_sets = subsets(n, k);
        let col_sets = subsets(n, k);
        let found = row_sets.par_iter().find_map_first(|rows| {
            col_sets.iter().find_map(|cols| {
                let d = minor_det(&int_rows, small.as_deref(), rows, cols);
                d.is_negative().then(|| (rows.clone(), cols.clone(), d))
            })
        });
        if let Some((rows, cols, d)) = found {
            let scale: BigInt = rows.iter().map(|&i| scales[i].clone()).product();
            let det = Rational::new(d, scale);
            return Ok(MinorReport {
                verdict: false,
                witness: Some(MinorWitness { rows, cols, det }),
            });
        }
    }
    Ok(MinorReport {
        verdict: true,
        witness: None,
    })
}

/// A finite sequence is PF iff its generating polynomial has nonnegative
/// coefficients and only real non-positive zeros. The zero sequence counts as PF.
pub fn is_pf_finite(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    if f.coeffs().iter().any(|c| c.is_negative()) {
        return Ok(false);
    }
    roots_within(f, &ExtRational::NegInf, &ExtRational::Finite(Rational::zero()))
}

/// `a_i^2 >= a_{i-1} a_{i+1}` for every `i > 0`.
pub fn is_log_concave(s: &SeqWindow) -> bool {
    s.terms.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// `a_0 <= ... <= a_p >= a_{p+1} >= ...` for some `p`.
pub fn is_unimodal(s: &SeqWindow) -> bool {
    let t = &s.terms;
    let mut i = 0;
    while i + 1 < t.len() && t[i] <= t[i + 1] {
        i += 1;
    }
    while i + 1 < t.len() && t[i] >= t[i + 1] {
        i += 1;
    }
    i + 1 >= t.len()
}

/// A zero term strictly between two nonzero terms.
pub fn has_internal_zeros(s: &SeqWindow) -> bool {
    let nz: Vec<usize> = s.terms.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, _)| i).collect();
    nz.windows(2).any(|w| w[1] > w[0] + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{eulerian_poly, w2_poly};
    use crate::rational::{rat, ratio};
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> SeqWindow {
        SeqWindow::new(v.iter().map(|&a| rat(a)).collect())
    }

    fn mat(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&a| rat(a)).collect()).collect()
    }

    #[test]
    fn toeplitz_examples() {
        assert_eq!(toeplitz_window(&seq(&[1, 2, 1]), 3), mat(&[&[1, 0, 0], &[2, 1, 0], &[1, 2, 1]]));
        assert_eq!(toeplitz_window(&seq(&[1]), 3), mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let m = toeplitz_window(&seq(&[1, 1, 0, 1]), 4);
        assert_eq!(
            (m[2][0].clone(), m[2][2].clone(), m[3][0].clone(), m[3][2].clone()),
            (rat(0), rat(1), rat(1), rat(1))
        );
    }

    #[test]
    fn minor_examples() {
        let rep = minors_nonneg(&toeplitz_window(&seq(&[1, 2, 1]), 4), 4).unwrap();
        assert!(rep.verdict && rep.witness.is_none());
        let rep = minors_nonneg(&toeplitz_window(&seq(&[1, 1, 0, 1]), 4), 2).unwrap();
        assert!(!rep.verdict);
        assert_eq!(rep.witness.unwrap().det, rat(-1));
        assert!(minors_nonneg(&toeplitz_window(&seq(&[1]), 5), 5).unwrap().verdict);
        assert!(minors_nonneg(&mat(&[&[1]]), 2).is_err());
    }

    #[test]
    fn rational_entries_report_exact_det() {
        let m = vec![vec![ratio(1, 2), ratio(1, 3)], vec![rat(1), rat(1)]];
        let rep = minors_nonneg(&m, 2).unwrap();
        assert!(rep.verdict);
        let m = vec![vec![ratio(1, 3), ratio(1, 2)], vec![rat(1), rat(1)]];
        let w = minors_nonneg(&m, 2).unwrap().witness.unwrap();
        assert_eq!(w.det, ratio(-1, 6));
        assert_eq!((w.rows, w.cols), (vec![0, 1], vec![0, 1]));
    }

    #[test]
    fn big_entries_use_bigint_path() {
        let b = 1i64 << 40;
        let m = mat(&[&[b, b + 1], &[b - 1, b]]);
        assert!(minors_nonneg(&m, 2).unwrap().verdict);
        let m = mat(&[&[b - 1, b], &[b, b]]);
        assert_eq!(minors_nonneg(&m, 2).unwrap().witness.unwrap().det, -rat(b));
    }

    #[test]
    fn pf_examples() {
        assert!(is_pf_finite(&Poly::from_ints(&[1, 2, 1])).unwrap());
        assert!(!is_pf_finite(&Poly::from_ints(&[1, 1, 1])).unwrap());
        assert!(is_pf_finite(&w2_poly(5).unwrap()).unwrap());
        assert!(!is_pf_finite(&Poly::from_ints(&[1, -2, 1])).unwrap());
    }

    #[test]
    fn sequence_shape_examples() {
        let s = seq(&[1, 4, 1]);
        assert!(is_log_concave(&s) && is_unimodal(&s) && !has_internal_zeros(&s));
        let s = seq(&[1, 1, 0, 1]);
        assert!(has_internal_zeros(&s) && !is_log_concave(&s) && !is_unimodal(&s));
        let a6 = SeqWindow::from_poly(&eulerian_poly(6).unwrap());
        assert!(is_log_concave(&a6) && is_unimodal(&a6));
        assert!(is_unimodal(&seq(&[3, 2, 1])) && is_unimodal(&seq(&[1, 1, 1])));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn real_rooted_nonneg_is_tp_window(roots in proptest::collection::vec(0i64..6, 1..7)) {
            let f = roots.iter().fold(Poly::one(), |acc, &r| &acc * &Poly::from_ints(&[r, 1]));
            let d = f.degree().unwrap();
            prop_assert!(is_pf_finite(&f).unwrap());
            let rep = minors_nonneg(&toeplitz_window(&SeqWindow::from_poly(&f), d + 3), 3).unwrap();
            prop_assert!(rep.verdict);
            let s = SeqWindow::from_poly(&f);
            prop_assert!(is_log_concave(&s) && is_unimodal(&s));
            for k in 1..=3 {
                for j in 0..k {
                    let g = crate::combinatorics::multisect(&f, k, j).unwrap();
                    prop_assert!(is_pf_finite(&g).unwrap());
                }
            }
        }
    }
}
