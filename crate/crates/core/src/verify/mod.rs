//! Named verification suites: deterministic case lists run on a worker pool
//! and collected into a canonical report.

pub mod gen;
mod suites;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Every suite name accepted by [`run_suite`], `all` last.
pub const SUITES: &[&str] = &[
    "thm-4-2",
    "thm-4-7",
    "lemmas-4-3-4-5",
    "thm-5-2",
    "thm-5-3",
    "thm-6-4",
    "chain-6",
    "cor-6-10",
    "thm-6-5",
    "thm-7-1",
    "products-3",
    "maincor-3-6",
    "polya-line",
    "pf-coherence",
    "oracle-coherence",
    "brenti-omega",
    "all",
];

#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    /// Caps the size parameter of every suite; each suite has its own default.
    pub max_n: Option<usize>,
    pub seed: u64,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub params: Value,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// A single CLI invocation reproducing the failing check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduce: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub max_n: Option<usize>,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseResult>,
    pub elapsed_ms: u128,
    pub exit_code: i32,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.verdict)
    }
}

/// Result of one check: pass, or fail with a machine-readable witness.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub witness: Option<Value>,
    pub reproduce: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome {
            pass: true,
            witness: None,
            reproduce: None,
        }
    }

    pub fn fail(witness: Value, reproduce: Option<String>) -> Self {
        Outcome {
            pass: false,
            witness: Some(witness),
            reproduce,
        }
    }

    /// Pass iff `ok`; the witness is built lazily.
    pub fn check(ok: bool, witness: impl FnOnce() -> (Value, Option<String>)) -> Self {
        if ok {
            Outcome::pass()
        } else {
            let (w, r) = witness();
            Outcome::fail(w, r)
        }
    }
}

type Check = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub(crate) struct Case {
    id: String,
    params: Value,
    check: Check,
}

impl Case {
    pub(crate) fn new(id: impl Into<String>, params: Value, check: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Self {
        Case {
            id: id.into(),
            params,
            check: Box::new(check),
        }
    }
}

/// Case-building context shared by the suites.
pub(crate) struct Ctx {
    pub seed: u64,
    pub max_n: Option<usize>,
}

impl Ctx {
    pub fn n(&self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }

    /// Independent stream per (suite, case index) so instances do not depend on scheduling.
    pub fn rng(&self, suite: &str, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let tag = suite
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
        rng.set_stream(tag ^ index.rotate_left(32));
        rng
    }
}

/// Polynomial JSON quoted for a shell command line.
pub fn shell_poly(p: &Poly) -> String {
    format!("'{}'", p.to_json())
}

pub fn repro_check(kind: &str, polys: &[&Poly], extra: &str) -> String {
    let args: Vec<String> = polys.iter().map(|p| shell_poly(p)).collect();
    let mut s = format!("polyafreq check {kind} {}", args.join(" "));
    if !extra.is_empty() {
        s.push(' ');
        s.push_str(extra);
    }
    s
}

pub fn repro_gen(family: &str, flags: &str) -> String {
    format!("polyafreq gen {family} {flags}")
}

pub fn poly_value(p: &Poly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn run_cases(cases: Vec<Case>, prefix: &str) -> Vec<CaseResult> {
    let mut results: Vec<CaseResult> = cases
        .into_par_iter()
        .map(|c| {
            let outcome = match (c.check)() {
                Ok(o) => o,
                Err(e) => Outcome::fail(json!({ "error": e.to_string() }), None),
            };
            CaseResult {
                id: format!("{prefix}{}", c.id),
                params: c.params,
                verdict: outcome.pass,
                witness: outcome.witness,
                reproduce: outcome.reproduce,
            }
        })
        .collect();
    results.sort_by(|a, b| a.id.cmp(&b.id));
    results
}

fn build(name: &str, ctx: &Ctx) -> Result<Vec<Case>> {
    Ok(match name {
        "thm-4-2" => suites::e_sandwich(ctx),
        "thm-4-7" => suites::e_dominance(ctx),
        "lemmas-4-3-4-5" => suites::e_identities(ctx),
        "thm-5-2" => suites::two_stack(ctx),
        "thm-5-3" => suites::eulerian_t(ctx),
        "thm-6-4" => suites::negative_q(ctx),
        "chain-6" => suites::b_chain(ctx),
        "cor-6-10" => suites::b_subsets(ctx),
        "thm-6-5" => suites::b_multivariate(ctx),
        "thm-7-1" => suites::cluster_h(ctx),
        "products-3" => suites::products(ctx),
        "maincor-3-6" => suites::operator_hypotheses(ctx),
        "polya-line" => suites::polya_line(ctx),
        "pf-coherence" => suites::pf_coherence(ctx),
        "oracle-coherence" => suites::oracle_coherence(ctx),
        "brenti-omega" => suites::brenti_omega(ctx),
        _ => return Err(Error::InvalidArgument(format!("unknown suite {name:?}"))),
    })
}

/// Runs a suite (or `all`) deterministically for the given seed.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::InvalidArgument(format!("unknown suite {name:?}")));
    }
    let start = Instant::now();
    let ctx = Ctx {
        seed: cfg.seed,
        max_n: cfg.max_n,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let cases = pool.install(|| -> Result<Vec<CaseResult>> {
        if name == "all" {
            let mut all = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "all") {
                all.extend(run_cases(build(s, &ctx)?, &format!("{s}/")));
            }
            Ok(all)
        } else {
            Ok(run_cases(build(name, &ctx)?, ""))
        }
    })?;
    let failed = cases.iter().filter(|c| !c.verdict).count();
    Ok(SuiteReport {
        suite: name.to_string(),
        seed: cfg.seed,
        max_n: cfg.max_n,
        passed: cases.len() - failed,
        failed,
        cases,
        elapsed_ms: start.elapsed().as_millis(),
        exit_code: i32::from(failed > 0),
    })
}
