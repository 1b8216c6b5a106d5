use rand::Rng;
use serde_json::json;

use super::gen;
use super::{poly_value, repro_check, repro_gen, Case, Ctx, Outcome};
use crate::combinatorics::{
    b_euler_multi, b_euler_q, e_q_poly, eulerian_poly, eulerian_t_poly, fz_h_poly, g_poly, multisect, p_bn_subset, p_dn_poly, perm_stats,
    perms, q_eulerian_poly, signed_perm_stats, t_stack_poly, w2_poly, weyl_combination, FzFamily,
};
use crate::error::Result;
use crate::operators::{
    apply_phi, check_maincor, circ_form, diamond_product, dot_form, eulerian_t_operator, hadamard_product, hermite_poulain,
    polya_line_check, schur_product, sharp_product, BivarOp, Verdict,
};
use crate::pf::{has_internal_zeros, is_log_concave, is_pf_finite, is_unimodal, minors_nonneg, toeplitz_window, SeqWindow};
use crate::poly::Poly;
use crate::rational::{binomial, format_rational as fr, int, rat, ratio, Rational};
use crate::roots::{interlace_relation, is_real_rooted, is_simple_rooted, root_dominance, roots_within, ExtRational, InterlaceRelation};
use crate::transforms::{
    apply_multiplier, e_inverse, e_transform, is_multiplier_n_sequence, mult_at_minus_one, mult_minus_one_of_e, reflect_r,
    rising_divisibility, w_transform, MultiplierSeq,
};

fn unit_interval() -> (ExtRational, ExtRational) {
    (ExtRational::Finite(rat(-1)), ExtRational::Finite(rat(0)))
}

fn nonpositive() -> (ExtRational, ExtRational) {
    (ExtRational::NegInf, ExtRational::Finite(rat(0)))
}

fn fail_poly(kind: &str, what: &str, p: &Poly) -> Outcome {
    Outcome::fail(json!({ "check": what, "poly": poly_value(p) }), Some(repro_check(kind, &[p], "")))
}

fn fail_pair(what: &str, f: &Poly, g: &Poly, rel: Option<InterlaceRelation>) -> Outcome {
    let rel = rel.map(|r| r.as_str());
    Outcome::fail(
        json!({ "check": what, "f": poly_value(f), "g": poly_value(g), "relation": rel }),
        Some(repro_check("interlace", &[f, g], "")),
    )
}

fn relation(f: &Poly, g: &Poly) -> Option<InterlaceRelation> {
    interlace_relation(f, g).ok()
}

/// `f` real-rooted (zero counts as vacuously real-rooted).
fn real(f: &Poly) -> Result<bool> {
    Ok(f.is_zero() || is_real_rooted(f)?)
}

fn simple(f: &Poly) -> Result<bool> {
    Ok(!f.is_zero() && is_simple_rooted(f)?)
}

fn expect_relation(what: &str, f: &Poly, g: &Poly, ok: impl Fn(InterlaceRelation) -> bool) -> Outcome {
    let rel = relation(f, g);
    if rel.is_some_and(ok) {
        Outcome::pass()
    } else {
        fail_pair(what, f, g, rel)
    }
}

/// Runs the checks in order, stopping at the first failure.
fn first_failure(checks: Vec<Outcome>) -> Outcome {
    checks.into_iter().find(|o| !o.pass).unwrap_or_else(Outcome::pass)
}

pub(super) fn e_sandwich(ctx: &Ctx) -> Vec<Case> {
    let max_d = ctx.n(12).max(1);
    (0..100u64)
        .map(|i| {
            let mut rng = ctx.rng("e-sandwich", i);
            let d = rng.gen_range(1..=max_d);
            let mut coeffs: Vec<i64> = (0..=d)
                .map(|_| if rng.gen_ratio(1, 3) { 0 } else { rng.gen_range(1..=9) })
                .collect();
            if coeffs.iter().all(|&c| c == 0) {
                coeffs[rng.gen_range(0..=d)] = 1;
            }
            let f = coeffs.iter().enumerate().fold(Poly::zero(), |acc, (k, &a)| {
                let basis = &Poly::x().pow(k) * &Poly::from_ints(&[1, 1]).pow(d - k);
                &acc + &basis.scale(&rat(a))
            });
            Case::new(format!("i={i:03}"), json!({ "d": d, "a": coeffs }), move || {
                let ef = e_transform(&f);
                let lo_poly = e_transform(&Poly::from_ints(&[1, 1]).pow(d));
                let hi_poly = e_transform(&Poly::x().pow(d));
                let (lo, hi) = unit_interval();
                Ok(first_failure(vec![
                    Outcome::check(simple(&ef)?, || {
                        (
                            json!({ "check": "simple", "poly": poly_value(&ef) }),
                            Some(repro_check("simple", &[&ef], "")),
                        )
                    }),
                    Outcome::check(roots_within(&ef, &lo, &hi)?, || {
                        (
                            json!({ "check": "[-1,0]-rooted", "poly": poly_value(&ef) }),
                            Some(repro_check("interval", &[&ef], "--lo -1 --hi 0")),
                        )
                    }),
                    expect_relation("E((x+1)^d) << E(f)", &lo_poly, &ef, InterlaceRelation::is_alternating_left),
                    expect_relation("E(f) << E(x^d)", &ef, &hi_poly, InterlaceRelation::is_alternating_left),
                ]))
            })
        })
        .collect()
}

pub(super) fn e_dominance(ctx: &Ctx) -> Vec<Case> {
    let max_d = ctx.n(10).max(1);
    (0..60u64)
        .map(|i| {
            let mut rng = ctx.rng("e-dominance", i);
            let d = rng.gen_range(1..=max_d);
            let mut a: Vec<Rational> = (0..d).map(|_| gen::rational_closed(&mut rng, &rat(-1), &rat(0))).collect();
            let mut b: Vec<Rational> = a.iter().map(|x| gen::rational_closed(&mut rng, x, &rat(0))).collect();
            a.sort();
            b.sort();
            let f = Poly::from_roots(&a);
            let g = Poly::from_roots(&b);
            Case::new(
                format!("i={i:03}"),
                json!({ "f": poly_value(&f), "g": poly_value(&g) }),
                move || {
                    if !root_dominance(&f, &g)? {
                        return Ok(Outcome::fail(
                            json!({ "check": "generator dominance" }),
                            Some(repro_check("dominance", &[&f, &g], "")),
                        ));
                    }
                    let (ef, eg) = (e_transform(&f), e_transform(&g));
                    let (lo, hi) = unit_interval();
                    let mut checks = Vec::new();
                    for p in [&ef, &eg] {
                        checks.push(Outcome::check(simple(p)? && roots_within(p, &lo, &hi)?, || {
                            (
                                json!({ "check": "simple and [-1,0]-rooted", "poly": poly_value(p) }),
                                Some(repro_check("interval", &[p], "--lo -1 --hi 0")),
                            )
                        }));
                    }
                    checks.push(expect_relation("E(f) << E(g)", &ef, &eg, InterlaceRelation::is_alternating_left));
                    Ok(first_failure(checks))
                },
            )
        })
        .collect()
}

pub(super) fn e_identities(ctx: &Ctx) -> Vec<Case> {
    let max_n = ctx.n(20);
    let mut cases = Vec::new();
    for d in 0..=max_n {
        let mut rng = ctx.rng("reflection", d as u64);
        let f = Poly::new((0..=d).map(|_| gen::rational_in(&mut rng, -9, 9, 5)).collect());
        cases.push(Case::new(format!("re-er/d={d:02}"), json!({ "f": poly_value(&f) }), move || {
            let lhs = reflect_r(&e_transform(&f));
            let rhs = e_transform(&reflect_r(&f));
            Ok(Outcome::check(lhs == rhs, || {
                (
                    json!({ "lhs": poly_value(&lhs), "rhs": poly_value(&rhs) }),
                    Some(format!("polyafreq transform e {}", super::shell_poly(&f))),
                )
            }))
        }));
    }
    for n in 1..=max_n {
        cases.push(Case::new(format!("powers/n={n:02}"), json!({ "n": n }), move || {
            let x1 = Poly::from_ints(&[1, 1]);
            let lhs = &x1 * &e_transform(&Poly::x().pow(n));
            let rhs = &Poly::x() * &e_transform(&x1.pow(n));
            Ok(Outcome::check(lhs == rhs, || {
                (json!({ "lhs": poly_value(&lhs), "rhs": poly_value(&rhs) }), None)
            }))
        }));
    }
    let max_deg = max_n.clamp(1, 15);
    for i in 0..40u64 {
        let mut rng = ctx.rng("degree-law", i);
        let k = rng.gen_range(0..=3usize);
        let base_deg = rng.gen_range(0..=max_deg.saturating_sub(k));
        let mut f = Poly::new((0..=base_deg).map(|_| gen::rational_in(&mut rng, -9, 9, 3)).collect());
        if f.is_zero() {
            f = Poly::one();
        }
        for j in 1..=k {
            f = &f * &Poly::from_ints(&[j as i64, 1]);
        }
        cases.push(Case::new(
            format!("degree-law/i={i:03}"),
            json!({ "f": poly_value(&f) }),
            move || {
                let w = w_transform(&f)?;
                let m = mult_at_minus_one(&e_transform(&f))?;
                let r = rising_divisibility(&f)?;
                let m2 = mult_minus_one_of_e(&f)?;
                let deg = f.degree().expect("nonzero");
                Ok(Outcome::check(m == r && m2 == m && w.degree() == Some(deg - m), || {
                    (
                        json!({ "mult": m, "rising": r, "deg_w": w.degree(), "deg_f": deg }),
                        Some(format!("polyafreq transform w {}", super::shell_poly(&f))),
                    )
                }))
            },
        ));
    }
    for i in 0..40u64 {
        let mut rng = ctx.rng("e-step", i);
        let d = rng.gen_range(1..=6usize);
        let g = gen::rooted_in(&mut rng, d, &rat(-1), &rat(0));
        let alpha = gen::rational_closed(&mut rng, &rat(-1), &rat(0));
        cases.push(Case::new(
            format!("e-step/i={i:03}"),
            json!({ "E(f)": poly_value(&g), "alpha": fr(&alpha) }),
            move || {
                let f = e_inverse(&g);
                let lin = Poly::linear(-alpha.clone(), rat(1));
                let lhs = e_transform(&(&lin * &f));
                let rhs = &(&lin * &g) + &(&Poly::from_ints(&[0, 1, 1]) * &g.derivative());
                let (lo, hi) = unit_interval();
                Ok(first_failure(vec![
                    Outcome::check(lhs == rhs, || (json!({ "lhs": poly_value(&lhs), "rhs": poly_value(&rhs) }), None)),
                    Outcome::check(roots_within(&lhs, &lo, &hi)?, || {
                        (
                            json!({ "check": "[-1,0]-rooted", "poly": poly_value(&lhs) }),
                            Some(repro_check("interval", &[&lhs], "--lo -1 --hi 0")),
                        )
                    }),
                    expect_relation("E(f) interlaces E((x-alpha)f)", &g, &lhs, InterlaceRelation::is_interlacing),
                ]))
            },
        ));
    }
    cases
}

pub(super) fn two_stack(ctx: &Ctx) -> Vec<Case> {
    let max_n = ctx.n(12).max(1);
    let mut cases = Vec::new();
    for n in 1..=max_n {
        cases.push(Case::new(format!("pf/n={n:02}"), json!({ "n": n }), move || {
            let w = w2_poly(n)?;
            Ok(Outcome::check(is_pf_finite(&w)?, || {
                (json!({ "poly": poly_value(&w) }), Some(repro_check("pf", &[&w], "")))
            }))
        }));
        cases.push(Case::new(format!("pipeline/n={n:02}"), json!({ "n": n }), move || {
            let base = multisect(&Poly::from_ints(&[1, 1]).pow(2 * n), 2, 1)?;
            let gamma = MultiplierSeq::Explicit {
                terms: (0..=n).map(|k| int(binomial(2 * n - k - 1, n - 1))).collect(),
            };
            if !is_multiplier_n_sequence(&gamma, n)? {
                return Ok(Outcome::fail(json!({ "check": "C(2n-k-1, n-1) is an n-sequence" }), None));
            }
            let reversed = apply_multiplier(&gamma, &base)?;
            let direct = Poly::new((0..n).map(|k| int(binomial(n + k, n - 1) * binomial(2 * n, 2 * k + 1))).collect());
            let rev_direct = Poly::new(direct.coeffs().iter().rev().cloned().collect());
            if rev_direct != reversed {
                return Ok(Outcome::fail(json!({ "check": "reversal", "got": poly_value(&reversed) }), None));
            }
            if !is_real_rooted(&direct)? {
                return Ok(fail_poly("real-rooted", "sum C(n+k,n-1) C(2n,2k+1) x^k real-rooted", &direct));
            }
            let w = apply_multiplier(&gamma, &direct)?;
            let norm = int(num_bigint::BigInt::from(n * n) * binomial(2 * n, n));
            let w = w.scale(&(rat(1) / norm));
            let expected = w2_poly(n)?;
            Ok(first_failure(vec![
                Outcome::check(w == expected, || {
                    (
                        json!({ "pipeline": poly_value(&w), "closed": poly_value(&expected) }),
                        Some(repro_gen("w2", &format!("--n {n}"))),
                    )
                }),
                Outcome::check(is_real_rooted(&w)?, || {
                    (json!({ "poly": poly_value(&w) }), Some(repro_check("real-rooted", &[&w], "")))
                }),
            ]))
        }));
        if n <= 8 && n <= perms::sym_guard() {
            cases.push(Case::new(format!("oracle/n={n:02}"), json!({ "n": n }), move || {
                let w = w2_poly(n)?;
                let o = t_stack_poly(n, 2)?;
                Ok(Outcome::check(w == o, || {
                    (
                        json!({ "closed": poly_value(&w), "oracle": poly_value(&o) }),
                        Some(repro_gen("t_stack", &format!("--n {n} --t 2"))),
                    )
                }))
            }));
        }
    }
    cases
}

pub(super) fn eulerian_t_values() -> Vec<Rational> {
    vec![ratio(-3, 2), rat(-1), ratio(-1, 2), rat(0), rat(1), rat(3)]
}

/// `x^2 (1+x)^2 ((3-t)(1+2x)^2 + (2+t))`.
fn eulerian_t_discriminant(t: &Rational) -> Poly {
    let x1x = Poly::from_ints(&[0, 1, 1]);
    let sq = Poly::from_ints(&[1, 2]).pow(2).scale(&(rat(3) - t));
    let inner = &sq + &Poly::constant(rat(2) + t);
    &x1x.pow(2) * &inner
}

pub(super) fn eulerian_t(ctx: &Ctx) -> Vec<Case> {
    let max_n = ctx.n(10).max(3);
    let mut cases = Vec::new();
    for t in eulerian_t_values() {
        let ts = fr(&t);
        for n in 3..=max_n {
            let t1 = t.clone();
            cases.push(Case::new(
                format!("t={ts}/simple/n={n:02}"),
                json!({ "t": ts, "n": n }),
                move || {
                    let a = eulerian_t_poly(n, &t1)?;
                    Ok(Outcome::check(simple(&a)?, || {
                        (json!({ "poly": poly_value(&a) }), Some(repro_check("simple", &[&a], "")))
                    }))
                },
            ));
            if n < max_n {
                let t2 = t.clone();
                cases.push(Case::new(
                    format!("t={ts}/interlace/n={n:02}"),
                    json!({ "t": ts, "n": n }),
                    move || {
                        let a = eulerian_t_poly(n, &t2)?.exact_div(&Poly::x())?;
                        let b = eulerian_t_poly(n + 1, &t2)?.exact_div(&Poly::x())?;
                        Ok(expect_relation("A_n(t,x)/x strictly interlaces A_{n+1}(t,x)/x", &a, &b, |r| {
                            r == InterlaceRelation::InterlacesStrict
                        }))
                    },
                ));
            }
            let t3 = t.clone();
            cases.push(Case::new(format!("t={ts}/phi/n={n:02}"), json!({ "t": ts, "n": n }), move || {
                let gn = apply_phi(&eulerian_t_operator(&t3), &g_poly(n - 2)?);
                let via_phi = gn.shift(1).mobius_deunitize_with_degree(n + 1);
                let direct = eulerian_t_poly(n + 1, &t3)?;
                Ok(Outcome::check(via_phi == direct, || {
                    (json!({ "phi": poly_value(&via_phi), "direct": poly_value(&direct) }), None)
                }))
            }));
        }
        let t4 = t.clone();
        cases.push(Case::new(format!("t={ts}/hypotheses"), json!({ "t": ts, "d": max_n }), move || {
            let op = eulerian_t_operator(&t4);
            let report = check_maincor(&op, max_n)?;
            let disc = &(&op.q(1) * &op.q(1)) - &(&op.q(0) * &op.q(2)).scale(&rat(4));
            let expected = eulerian_t_discriminant(&t4);
            Ok(Outcome::check(report.proved() && disc == expected, || {
                (
                    json!({ "report": report, "discriminant": poly_value(&disc), "expected": poly_value(&expected) }),
                    None,
                )
            }))
        }));
    }
    cases
}

pub(super) fn negative_q(ctx: &Ctx) -> Vec<Case> {
    let max_n = ctx.n(10).max(1);
    let mut cases = Vec::new();
    for m in 0..=5usize {
        for n in 1..=max_n {
            let q = rat(-(m as i64));
            cases.push(Case::new(format!("m={m}/n={n:02}"), json!({ "m": m, "n": n }), move || {
                let a = q_eulerian_poly(n, &q)?;
                if !real(&a)? {
                    return Ok(Outcome::fail(
                        json!({ "check": "real-rooted", "poly": poly_value(&a) }),
                        Some(repro_check("real-rooted", &[&a], "")),
                    ));
                }
                if m == 0 {
                    return Ok(Outcome::check(a.is_zero() || n == 0, || (json!({ "poly": poly_value(&a) }), None)));
                }
                let e = e_q_poly(n, &q)?;
                Ok(Outcome::check(e.degree() == Some(n.min(m)), || {
                    (
                        json!({ "check": "deg E_n(x;-m) = min(n,m)", "degree": e.degree() }),
                        Some(repro_gen("e_q", &format!("--n {n} --q {}", fr(&q)))),
                    )
                }))
            }));
        }
    }
    cases
}

pub(super) fn chain_pairs() -> Vec<(Rational, Rational)> {
    vec![(ratio(1, 2), rat(2)), (rat(1), rat(3)), (ratio(1, 4), ratio(1, 2))]
}

fn coprime(a: &Poly, b: &Poly) -> bool {
    a.gcd(b).degree() == Some(0)
}

pub(super) fn b_chain(ctx: &Ctx) -> Vec<Case> {
    let max_n = ctx.n(8).max(1);
    let mut cases = Vec::new();
    for (q, t) in chain_pairs() {
        let label = format!("q={},t={}", fr(&q), fr(&t));
        for n in 1..=max_n {
            let (q1, t1) = (q.clone(), t.clone());
            cases.push(Case::new(
                format!("{label}/stated/n={n}"),
                json!({ "q": fr(&q), "t": fr(&t), "n": n }),
                move || {
                    let b0 = b_euler_q(n, &rat(0))?;
                    let bt = b_euler_q(n, &t1)?;
                    let bq = b_euler_q(n, &q1)?;
                    let xb0 = b0.shift(1);
                    Ok(first_failure(vec![
                        expect_relation("B_n(x;0) interlaces B_n(x;t)", &b0, &bt, InterlaceRelation::is_interlacing),
                        expect_relation("B_n(x;t) << B_n(x;q)", &bt, &bq, InterlaceRelation::is_alternating_left),
                        expect_relation("B_n(x;q) << x B_n(x;0)", &bq, &xb0, InterlaceRelation::is_alternating_left),
                        Outcome::check(coprime(&b0, &bt) && coprime(&b0, &bq) && coprime(&bt, &bq), || {
                            (
                                json!({ "check": "pairwise coprime", "B0": poly_value(&b0), "Bt": poly_value(&bt), "Bq": poly_value(&bq) }),
                                None,
                            )
                        }),
                    ]))
                },
            ));
            let (q2, t2) = (q.clone(), t.clone());
            cases.push(Case::new(
                format!("{label}/swapped/n={n}"),
                json!({ "q": fr(&q), "t": fr(&t), "n": n }),
                move || {
                    let b0 = b_euler_q(n, &rat(0))?;
                    let bt = b_euler_q(n, &t2)?;
                    let bq = b_euler_q(n, &q2)?;
                    Ok(first_failure(vec![
                        expect_relation("B_n(x;0) interlaces B_n(x;q)", &b0, &bq, InterlaceRelation::is_interlacing),
                        expect_relation("B_n(x;q) << B_n(x;t)", &bq, &bt, |r| r == InterlaceRelation::AlternatesLeftStrict),
                        expect_relation("B_n(x;t) << x B_n(x;0)", &bt, &b0.shift(1), InterlaceRelation::is_alternating_left),
                    ]))
                },
            ));
        }
    }
    for n in 1..=max_n {
        cases.push(Case::new(format!("a-vs-b/n={n}"), json!({ "n": n }), move || {
            let pa = b_euler_q(n, &rat(0))?;
            let pb = b_euler_q(n, &rat(1))?;
            Ok(expect_relation("P(A_n) strictly interlaces P(B_n)", &pa, &pb, |r| {
                r == InterlaceRelation::InterlacesStrict
            }))
        }));
    }
    cases
}

pub(super) fn b_subsets(ctx: &Ctx) -> Vec<Case> {
    let max_n = ctx.n(6).max(1);
    let mut cases = Vec::new();
    for n in 1..=max_n {
        if n > 12 {
            break;
        }
        for mask in 1u32..(1 << (n + 1)) {
            let set: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
            let label = set.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
            cases.push(Case::new(format!("n={n}/S={{{label}}}"), json!({ "n": n, "S": set }), move || {
                let p = p_bn_subset(n, &set)?;
                let mut checks = vec![Outcome::check(simple(&p)?, || {
                    (
                        json!({ "check": "real and simple", "poly": poly_value(&p) }),
                        Some(repro_check("simple", &[&p], "")),
                    )
                })];
                if n <= 5 && n <= perms::signed_guard() {
                    let o = signed_perm_stats(n)?.b_subset_poly(&set);
                    checks.push(Outcome::check(o == p, || {
                        (
                            json!({ "formula": poly_value(&p), "oracle": poly_value(&o) }),
                            Some(repro_gen("p_bn_subset", &format!("--n {n} --set {label}"))),
                        )
                    }));
                }
                Ok(first_failure(checks))
            }));
        }
    }
    cases
}

pub(super) fn b_multivariate(ctx: &Ctx) -> Vec<Case> {
    let max_n = ctx.n(5).min(perms::signed_guard());
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for j in 0..3u64 {
            let mut rng = ctx.rng("b-multivariate", (n as u64) * 16 + j);
            let qs: Vec<Rational> = (0..n).map(|_| gen::rational_in(&mut rng, -2, 3, 5)).collect();
            let qs_s: Vec<String> = qs.iter().map(fr).collect();
            cases.push(Case::new(format!("n={n}/j={j}"), json!({ "n": n, "qs": qs_s }), move || {
                let formula = b_euler_multi(n, &qs)?;
                let oracle = signed_perm_stats(n)?.b_multi_poly(&qs)?;
                Ok(Outcome::check(formula == oracle, || {
                    (
                        json!({ "formula": poly_value(&formula), "oracle": poly_value(&oracle) }),
                        Some(repro_gen("b_euler_multi", &format!("--n {n} --qs {}", qs_s.join(",")))),
                    )
                }))
            }));
        }
    }
    cases
}

pub(super) fn weyl_pairs() -> Vec<(Rational, Rational)> {
    vec![(rat(1), rat(-1)), (rat(1), rat(0)), (rat(0), rat(1)), (rat(2), rat(-3))]
}

pub(super) fn cluster_h(ctx: &Ctx) -> Vec<Case> {
    let max_n = ctx.n(10).max(2);
    let mut cases = Vec::new();
    for (alpha, beta) in weyl_pairs() {
        let label = format!("a={},b={}", fr(&alpha), fr(&beta));
        for n in 2..=max_n {
            let (a, b) = (alpha.clone(), beta.clone());
            cases.push(Case::new(
                format!("{label}/n={n:02}"),
                json!({ "alpha": fr(&alpha), "beta": fr(&beta), "n": n }),
                move || {
                    let f = weyl_combination(n, &a, &b)?;
                    if !simple(&f)? {
                        return Ok(fail_poly("simple", "real and simple", &f));
                    }
                    let hb = fz_h_poly(FzFamily::B, n - 1)?;
                    let positive = a > rat(0);
                    Ok(expect_relation("h(B_{n-1}) vs combination", &hb, &f, |r| {
                        if positive {
                            r == InterlaceRelation::InterlacesStrict
                        } else {
                            r == InterlaceRelation::AlternatesLeftStrict
                        }
                    }))
                },
            ));
        }
    }
    for n in 2..=max_n + 2 {
        cases.push(Case::new(format!("h-d/n={n:02}"), json!({ "n": n }), move || {
            let h = fz_h_poly(FzFamily::D, n)?;
            Ok(Outcome::check(simple(&h)?, || {
                (json!({ "poly": poly_value(&h) }), Some(repro_check("simple", &[&h], "")))
            }))
        }));
    }
    for n in 0..=max_n + 2 {
        cases.push(Case::new(format!("h-b/n={n:02}"), json!({ "n": n }), move || {
            let h = fz_h_poly(FzFamily::B, n)?;
            let p = Poly::from_ints(&[1, 1]).pow(n);
            let via = hadamard_product(&p, &p)?;
            Ok(Outcome::check(h == via, || {
                (json!({ "closed": poly_value(&h), "hadamard": poly_value(&via) }), None)
            }))
        }));
    }
    cases
}

fn product_case(
    kind: &'static str,
    i: u64,
    f: Poly,
    g: Poly,
    extra: serde_json::Value,
    run: impl Fn(&Poly, &Poly) -> Result<Outcome> + Send + Sync + 'static,
) -> Case {
    let mut params = json!({ "f": poly_value(&f), "g": poly_value(&g) });
    if let (Some(p), Some(e)) = (params.as_object_mut(), extra.as_object()) {
        p.extend(e.clone());
    }
    Case::new(format!("{kind}/i={i:03}"), params, move || run(&f, &g))
}

fn op_fail(op: &str, f: &Poly, g: &Poly, out: &Poly, extra: &str) -> Outcome {
    let repro = format!("polyafreq op {op} {} {}{extra}", super::shell_poly(f), super::shell_poly(g));
    Outcome::fail(json!({ "check": "real-rooted", "result": poly_value(out) }), Some(repro))
}

pub(super) fn products(ctx: &Ctx) -> Vec<Case> {
    let max_d = ctx.n(10).max(1);
    let count = 200u64;
    let mut cases = Vec::new();
    let (np_lo, np_hi) = (rat(-8), rat(0));
    for i in 0..count {
        let mut rng = ctx.rng("hermite-poulain", i);
        let f = {
            let deg = rng.gen_range(1..=max_d);
            gen::real_rooted_nonzero_roots(&mut rng, deg)
        };
        let g = {
            let deg = rng.gen_range(1..=max_d);
            gen::real_rooted(&mut rng, deg)
        };
        cases.push(product_case("hermite-poulain", i, f, g, json!({}), |f, g| {
            let h = hermite_poulain(f, g);
            if !real(&h)? {
                return Ok(op_fail("hermite-poulain", f, g, &h, ""));
            }
            // multiple zeros of f(D)g are multiple zeros of g
            let mh = h.gcd(&h.derivative());
            if mh.degree().unwrap_or(0) > 0 {
                let mg = g.gcd(&g.derivative());
                let (_, rem) = mg.div_rem(&mh.square_free_part()?)?;
                if !rem.is_zero() {
                    return Ok(Outcome::fail(
                        json!({ "check": "multiple zeros come from g", "result": poly_value(&h) }),
                        None,
                    ));
                }
            }
            Ok(Outcome::pass())
        }));
    }
    for i in 0..count {
        let mut rng = ctx.rng("schur", i);
        let f = {
            let deg = rng.gen_range(1..=max_d);
            gen::real_rooted(&mut rng, deg)
        };
        let g = {
            let deg = rng.gen_range(1..=max_d);
            gen::rooted_in(&mut rng, deg, &np_lo, &np_hi)
        };
        cases.push(product_case("schur", i, f, g, json!({}), |f, g| {
            let h = schur_product(f, g);
            Ok(if real(&h)? {
                Outcome::pass()
            } else {
                op_fail("schur", f, g, &h, "")
            })
        }));
    }
    for i in 0..count {
        let mut rng = ctx.rng("hadamard", i);
        let f = {
            let deg = rng.gen_range(1..=max_d);
            gen::real_rooted(&mut rng, deg)
        };
        let g = {
            let deg = rng.gen_range(1..=max_d);
            gen::rooted_in(&mut rng, deg, &np_lo, &np_hi)
        };
        cases.push(product_case("hadamard", i, f, g, json!({}), |f, g| {
            let h = hadamard_product(f, g)?;
            if !real(&h)? {
                return Ok(op_fail("hadamard", f, g, &h, ""));
            }
            if h.is_zero() {
                return Ok(Outcome::pass());
            }
            let v = h.valuation().unwrap_or(0);
            let core = Poly::new(h.coeffs()[v..].to_vec());
            Ok(Outcome::check(simple(&core)?, || {
                (
                    json!({ "check": "nonzero roots simple", "result": poly_value(&h) }),
                    Some(format!("polyafreq op hadamard {} {}", super::shell_poly(f), super::shell_poly(g))),
                )
            }))
        }));
    }
    for i in 0..count {
        let mut rng = ctx.rng("sharp", i);
        let f = {
            let deg = rng.gen_range(1..=max_d);
            gen::real_rooted(&mut rng, deg)
        };
        let g = {
            let deg = rng.gen_range(1..=max_d);
            gen::rooted_in(&mut rng, deg, &np_lo, &np_hi)
        };
        cases.push(product_case("sharp", i, f, g, json!({}), |f, g| {
            let h = sharp_product(f, g);
            Ok(if real(&h)? {
                Outcome::pass()
            } else {
                op_fail("sharp", f, g, &h, "")
            })
        }));
    }
    for i in 0..count {
        let mut rng = ctx.rng("diamond", i);
        let f = {
            let deg = rng.gen_range(1..=max_d);
            gen::real_rooted(&mut rng, deg)
        };
        let g = {
            let deg = rng.gen_range(1..=max_d);
            gen::rooted_in(&mut rng, deg, &rat(-1), &rat(0))
        };
        cases.push(product_case("diamond", i, f, g, json!({}), |f, g| {
            let h = diamond_product(f, g)?;
            Ok(if real(&h)? {
                Outcome::pass()
            } else {
                op_fail("diamond", f, g, &h, "")
            })
        }));
    }
    for i in 0..count {
        let mut rng = ctx.rng("dot", i);
        let alpha = gen::rational_in(&mut rng, -4, 3, 3);
        let beta = &alpha + gen::rational_in(&mut rng, 1, 4, 3);
        let f = {
            let deg = rng.gen_range(1..=max_d);
            gen::real_rooted(&mut rng, deg)
        };
        let g = {
            let deg = rng.gen_range(1..=max_d);
            gen::rooted_in(&mut rng, deg, &alpha, &beta)
        };
        let ones = i % 2 == 0;
        let extra = json!({ "alpha": fr(&alpha), "beta": fr(&beta), "lambda": if ones { "ones" } else { "factorial_inverse" } });
        cases.push(product_case("dot", i, f, g, extra, move |f, g| {
            let l = if ones {
                MultiplierSeq::Ones
            } else {
                MultiplierSeq::FactorialInverse
            };
            let h = dot_form(f, g, &l, &alpha, &beta)?;
            let flags = format!(
                " --alpha {} --beta {} --lambda {}",
                fr(&alpha),
                fr(&beta),
                if ones { "ones" } else { "factorial_inverse" }
            );
            Ok(if real(&h)? {
                Outcome::pass()
            } else {
                op_fail("dot", f, g, &h, &flags)
            })
        }));
    }
    for i in 0..count {
        let mut rng = ctx.rng("circ", i);
        let alpha = gen::rational_in(&mut rng, -4, 4, 3);
        let f = {
            let deg = rng.gen_range(1..=max_d);
            gen::real_rooted(&mut rng, deg)
        };
        let g = {
            let deg = rng.gen_range(1..=max_d);
            gen::rooted_in(&mut rng, deg, &(&alpha - rat(8)), &alpha)
        };
        let ones = i % 2 == 0;
        let extra = json!({ "alpha": fr(&alpha), "lambda": if ones { "ones" } else { "factorial_inverse" } });
        cases.push(product_case("circ", i, f, g, extra, move |f, g| {
            let l = if ones {
                MultiplierSeq::Ones
            } else {
                MultiplierSeq::FactorialInverse
            };
            let h = circ_form(f, g, &l, &alpha)?;
            let flags = format!(
                " --alpha {} --lambda {}",
                fr(&alpha),
                if ones { "ones" } else { "factorial_inverse" }
            );
            Ok(if real(&h)? {
                Outcome::pass()
            } else {
                op_fail("circ", f, g, &h, &flags)
            })
        }));
    }
    cases
}

/// Operators with their expected condition-(i) verdicts.
fn maincor_operators() -> Vec<(&'static str, BivarOp, Verdict)> {
    let cubic = vec![
        Poly::from_ints(&[1]),
        Poly::from_ints(&[0, 3]),
        Poly::from_ints(&[0, 0, 3]),
        Poly::from_ints(&[0, 0, 0, 1]),
    ];
    vec![
        ("eulerian-t=-1", eulerian_t_operator(&rat(-1)), Verdict::Proved),
        ("eulerian-t=0", eulerian_t_operator(&rat(0)), Verdict::Proved),
        ("eulerian-t=3", eulerian_t_operator(&rat(3)), Verdict::Proved),
        ("eulerian-t=-3", eulerian_t_operator(&rat(-3)), Verdict::Refuted),
        (
            "gamma-q=2",
            BivarOp::new(vec![Poly::from_ints(&[2]), Poly::from_ints(&[0, 1])]),
            Verdict::Proved,
        ),
        (
            "g-recursion",
            BivarOp::new(vec![Poly::from_ints(&[1, 2]), Poly::from_ints(&[0, 1, 1])]),
            Verdict::Proved,
        ),
        ("cube-of-1+xz", BivarOp::new(cubic), Verdict::SampledOnly),
    ]
}

pub(super) fn operator_hypotheses(ctx: &Ctx) -> Vec<Case> {
    let d = ctx.n(8).max(1);
    let mut cases = Vec::new();
    for (name, op, expected) in maincor_operators() {
        let op_json = serde_json::to_value(&op).expect("operator serializes");
        let op1 = op.clone();
        cases.push(Case::new(
            format!("{name}/hypotheses"),
            json!({ "F": op_json, "d": d }),
            move || {
                let report = check_maincor(&op1, d)?;
                let ok = report.cond_i == expected && (expected == Verdict::Refuted || (report.cond_ii && report.cond_iii));
                Ok(Outcome::check(ok, || (json!({ "report": report }), None)))
            },
        ));
        if expected == Verdict::Refuted {
            continue;
        }
        for i in 0..100u64 {
            let mut rng = ctx.rng(name, i);
            let f = {
                let deg = rng.gen_range(1..=d);
                gen::real_rooted(&mut rng, deg)
            };
            let op2 = op.clone();
            cases.push(Case::new(
                format!("{name}/real/i={i:03}"),
                json!({ "f": poly_value(&f) }),
                move || {
                    let h = apply_phi(&op2, &f);
                    Ok(Outcome::check(real(&h)?, || {
                        (json!({ "result": poly_value(&h) }), Some(repro_check("real-rooted", &[&h], "")))
                    }))
                },
            ));
        }
        for i in 0..25u64 {
            let mut rng = ctx.rng(name, 1000 + i);
            let deg = rng.gen_range(1..=d);
            let (f, g) = gen::alternating_pair(&mut rng, deg);
            let op3 = op.clone();
            cases.push(Case::new(
                format!("{name}/alternating/i={i:03}"),
                json!({ "f": poly_value(&f), "g": poly_value(&g) }),
                move || {
                    let (pf, pg) = (apply_phi(&op3, &f), apply_phi(&op3, &g));
                    Ok(expect_relation("phi(f) << phi(g) strictly", &pf, &pg, |r| {
                        r == InterlaceRelation::AlternatesLeftStrict
                    }))
                },
            ));
        }
    }
    cases
}

pub(super) fn polya_line(ctx: &Ctx) -> Vec<Case> {
    let max_d = ctx.n(8).max(1);
    (0..100u64)
        .map(|i| {
            let mut rng = ctx.rng("polya-line", i);
            let n = rng.gen_range(1..=max_d);
            let f = gen::real_rooted(&mut rng, n);
            let m = rng.gen_range(0..=2);
            let b = gen::pf_poly(&mut rng, n + m, 6);
            let b = if b.coeff(0) == rat(0) { &b + &Poly::one() } else { b };
            let b = if is_real_rooted(&b).unwrap_or(false) && (0..=n).all(|k| b.coeff(k) > rat(0)) {
                b
            } else {
                Poly::from_ints(&[1, 1]).pow(n + m)
            };
            let (s, t) = match i % 5 {
                0 => (rat(0), gen::rational_in(&mut rng, 1, 3, 3)),
                1 => (gen::rational_in(&mut rng, 1, 3, 3), rat(0)),
                _ => (gen::rational_in(&mut rng, 1, 3, 3), gen::rational_in(&mut rng, 1, 3, 3)),
            };
            let u = gen::rational_in(&mut rng, -3, 3, 3);
            let params = json!({ "f": poly_value(&f), "b": poly_value(&b), "s": fr(&s), "t": fr(&t), "u": fr(&u) });
            Case::new(format!("i={i:03}"), params, move || {
                let ok = polya_line_check(&f, &b, &s, &t, &u)?;
                Ok(Outcome::check(ok, || (json!({ "check": "n real intersections" }), None)))
            })
        })
        .collect()
}

pub(super) fn pf_coherence(ctx: &Ctx) -> Vec<Case> {
    let max_d = ctx.n(10).max(1);
    let mut cases: Vec<Case> = (0..100u64)
        .map(|i| {
            let mut rng = ctx.rng("pf-coherence", i);
            let d = rng.gen_range(1..=max_d);
            let f = gen::pf_poly(&mut rng, d, 5);
            Case::new(format!("i={i:03}"), json!({ "f": poly_value(&f) }), move || {
                let d = f.degree().expect("nonzero");
                if !is_pf_finite(&f)? {
                    return Ok(fail_poly("pf", "PF verdict", &f));
                }
                let s = SeqWindow::from_poly(&f);
                let rep = minors_nonneg(&toeplitz_window(&s, d + 3), 4)?;
                if !rep.verdict {
                    return Ok(Outcome::fail(
                        json!({ "check": "Toeplitz minors", "witness": rep.witness }),
                        Some(repro_check("pf-minors", &[&f], "--r 4")),
                    ));
                }
                if !(is_log_concave(&s) && is_unimodal(&s) && !has_internal_zeros(&s)) {
                    return Ok(fail_poly("log-concave", "log-concave, unimodal, no internal zeros", &f));
                }
                for k in 1..=3 {
                    for j in 0..k {
                        let g = multisect(&f, k, j)?;
                        if !is_pf_finite(&g)? {
                            return Ok(fail_poly("pf", "multisection stays PF", &g));
                        }
                    }
                }
                Ok(Outcome::pass())
            })
        })
        .collect();
    cases.push(Case::new("counterexample", json!({ "seq": ["1", "1", "0", "1"] }), || {
        let s = SeqWindow::new(vec![rat(1), rat(1), rat(0), rat(1)]);
        let rep = minors_nonneg(&toeplitz_window(&s, 4), 2)?;
        let ok = !rep.verdict && rep.witness.as_ref().is_some_and(|w| w.det == rat(-1));
        Ok(Outcome::check(ok, || (json!({ "report": rep }), None)))
    }));
    cases
}

pub(super) fn oracle_coherence(ctx: &Ctx) -> Vec<Case> {
    let sym = ctx.n(9).min(perms::sym_guard());
    let signed = ctx.n(8).min(perms::signed_guard());
    let mut cases = Vec::new();
    for n in 1..=sym {
        cases.push(Case::new(format!("eulerian/n={n}"), json!({ "n": n }), move || {
            let a = eulerian_poly(n)?;
            let o = perm_stats(n)?.descent_poly().shift(1);
            Ok(Outcome::check(a == o, || {
                (
                    json!({ "formula": poly_value(&a), "oracle": poly_value(&o) }),
                    Some(repro_gen("eulerian", &format!("--n {n}"))),
                )
            }))
        }));
        cases.push(Case::new(format!("t-stack-eulerian/n={n}"), json!({ "n": n }), move || {
            let a = eulerian_poly(n)?;
            let o = t_stack_poly(n, n - 1)?.shift(1);
            Ok(Outcome::check(a == o, || {
                (json!({ "formula": poly_value(&a), "oracle": poly_value(&o) }), None)
            }))
        }));
        for q in [rat(2), ratio(-1, 3)] {
            let qs = fr(&q);
            cases.push(Case::new(
                format!("q-eulerian/q={qs}/n={n}"),
                json!({ "n": n, "q": qs }),
                move || {
                    let a = q_eulerian_poly(n, &q)?;
                    let o = perm_stats(n)?.exc_cycle_poly(&q);
                    Ok(Outcome::check(a == o, || {
                        (
                            json!({ "formula": poly_value(&a), "oracle": poly_value(&o) }),
                            Some(repro_gen("q_eulerian", &format!("--n {n} --q {}", fr(&q)))),
                        )
                    }))
                },
            ));
        }
        if (3..=8).contains(&n) {
            cases.push(Case::new(format!("w-n-n-2/n={n}"), json!({ "n": n }), move || {
                let a = eulerian_t_poly(n, &rat(-1))?;
                let o = t_stack_poly(n, n - 2)?.shift(1);
                Ok(Outcome::check(a == o, || {
                    (json!({ "formula": poly_value(&a), "oracle": poly_value(&o) }), None)
                }))
            }));
        }
    }
    for n in 1..=signed {
        for q in [rat(0), rat(1), rat(2)] {
            let qs = fr(&q);
            cases.push(Case::new(format!("b-euler/q={qs}/n={n}"), json!({ "n": n, "q": qs }), move || {
                let b = b_euler_q(n, &q)?;
                let o = signed_perm_stats(n)?.b_poly(&q);
                Ok(Outcome::check(b == o, || {
                    (
                        json!({ "formula": poly_value(&b), "oracle": poly_value(&o) }),
                        Some(repro_gen("b_euler", &format!("--n {n} --q {}", fr(&q)))),
                    )
                }))
            }));
        }
        if n >= 2 {
            cases.push(Case::new(format!("p-dn/n={n}"), json!({ "n": n }), move || {
                let d = p_dn_poly(n)?;
                let o = signed_perm_stats(n)?.d_poly();
                Ok(Outcome::check(d == o, || {
                    (
                        json!({ "formula": poly_value(&d), "oracle": poly_value(&o) }),
                        Some(repro_gen("p_dn", &format!("--n {n}"))),
                    )
                }))
            }));
        }
    }
    cases
}

pub(super) fn brenti_omega(ctx: &Ctx) -> Vec<Case> {
    let max_extra = ctx.n(3);
    (0..100u64)
        .map(|i| {
            let mut rng = ctx.rng("brenti-omega", i);
            let a = rng.gen_range(0..=3i64);
            let b = rng.gen_range(if a == 0 { 1 } else { 0 }..=3i64);
            let mut roots: Vec<Rational> = (1..=a).map(|k| rat(-k)).chain((0..b).map(rat)).collect();
            let extra = rng.gen_range(0..=max_extra);
            let (lo, hi) = (rat(-a - 1), rat(b));
            for _ in 0..extra {
                roots.push(gen::rational_open(&mut rng, &lo, &hi));
            }
            let f = Poly::from_roots(&roots);
            Case::new(
                format!("i={i:03}"),
                json!({ "f": poly_value(&f), "negative_block": a, "nonnegative_block": b }),
                move || {
                    let ef = e_transform(&f);
                    let (lo, hi) = nonpositive();
                    Ok(Outcome::check(roots_within(&ef, &lo, &hi)?, || {
                        (
                            json!({ "check": "real non-positive zeros", "E(f)": poly_value(&ef) }),
                            Some(repro_check("interval", &[&ef], "--hi 0")),
                        )
                    }))
                },
            )
        })
        .collect()
}
