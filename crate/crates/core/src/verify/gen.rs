//! Seeded random instances for the property suites.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::poly::Poly;
use crate::rational::{rat, Rational};

/// `k / den` for a random denominator in `1..=max_den` and `lo <= k/den <= hi`.
pub fn rational_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let k = rng.gen_range(lo * den..=hi * den);
    Rational::new(BigInt::from(k), BigInt::from(den))
}

/// A rational strictly between `lo` and `hi`.
pub fn rational_open(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let steps = 24i64;
    let k = rng.gen_range(1..steps);
    lo + (hi - lo) * Rational::new(BigInt::from(k), BigInt::from(steps))
}

/// A rational in the closed interval `[lo, hi]`.
pub fn rational_closed(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let steps = 12i64;
    let k = rng.gen_range(0..=steps);
    lo + (hi - lo) * Rational::new(BigInt::from(k), BigInt::from(steps))
}

fn nonzero_lead(rng: &mut ChaCha8Rng) -> Rational {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        rat(c)
    } else {
        rat(-c)
    }
}

pub fn with_roots(roots: &[Rational], lead: &Rational) -> Poly {
    Poly::from_roots(roots).scale(lead)
}

/// Real-rooted of the given degree with roots in `[-8, 8]`, occasionally repeated.
pub fn real_rooted(rng: &mut ChaCha8Rng, degree: usize) -> Poly {
    let mut roots: Vec<Rational> = Vec::with_capacity(degree);
    while roots.len() < degree {
        if !roots.is_empty() && rng.gen_ratio(1, 8) {
            let r = roots[rng.gen_range(0..roots.len())].clone();
            roots.push(r);
        } else {
            roots.push(rational_in(rng, -8, 8, 4));
        }
    }
    let lead = nonzero_lead(rng);
    with_roots(&roots, &lead)
}

/// Real-rooted with every root in `[lo, hi]`.
pub fn rooted_in(rng: &mut ChaCha8Rng, degree: usize, lo: &Rational, hi: &Rational) -> Poly {
    let roots: Vec<Rational> = (0..degree).map(|_| rational_closed(rng, lo, hi)).collect();
    let lead = nonzero_lead(rng);
    with_roots(&roots, &lead)
}

/// Real-rooted with every root nonzero.
pub fn real_rooted_nonzero_roots(rng: &mut ChaCha8Rng, degree: usize) -> Poly {
    let roots: Vec<Rational> = (0..degree)
        .map(|_| loop {
            let r = rational_in(rng, -8, 8, 4);
            if r != rat(0) {
                break r;
            }
        })
        .collect();
    let lead = nonzero_lead(rng);
    with_roots(&roots, &lead)
}

/// Positive leading coefficient and all roots in `[-range, 0]`: nonnegative coefficients.
pub fn pf_poly(rng: &mut ChaCha8Rng, degree: usize, range: i64) -> Poly {
    let roots: Vec<Rational> = (0..degree).map(|_| -rational_in(rng, 0, range, 3)).collect();
    with_roots(&roots, &rat(rng.gen_range(1..=3)))
}

/// Equal-degree pair with strictly interleaved roots `a_1 < b_1 < a_2 < b_2 < ...`.
pub fn alternating_pair(rng: &mut ChaCha8Rng, degree: usize) -> (Poly, Poly) {
    let mut pts: Vec<Rational> = Vec::new();
    let mut cur = rational_in(rng, -6, -4, 3);
    for _ in 0..2 * degree {
        pts.push(cur.clone());
        cur += rational_in(rng, 1, 3, 4);
    }
    let a: Vec<Rational> = pts.iter().step_by(2).cloned().collect();
    let b: Vec<Rational> = pts.iter().skip(1).step_by(2).cloned().collect();
    (Poly::from_roots(&a), Poly::from_roots(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{interlace_relation, is_real_rooted, InterlaceRelation};
    use rand::SeedableRng;

    #[test]
    fn generators_respect_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..8 {
            assert!(is_real_rooted(&real_rooted(&mut rng, d)).unwrap());
            let f = pf_poly(&mut rng, d, 5);
            assert!(f.coeffs().iter().all(|c| *c >= rat(0)));
            let (f, g) = alternating_pair(&mut rng, d);
            assert_eq!(interlace_relation(&f, &g).unwrap(), InterlaceRelation::AlternatesLeftStrict);
        }
    }
}
