use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use polyafreq::combinatorics::{self, FzFamily};
use polyafreq::operators::{self, BivarOp};
use polyafreq::pf::{self, SeqWindow};
use polyafreq::rational::{format_rational, parse_rational};
use polyafreq::roots::{self, ExtRational};
use polyafreq::transforms::{self, MultiplierSeq};
use polyafreq::verify::{self, VerifyConfig};
use polyafreq::{Error, Poly, Rational};

#[derive(Parser)]
#[command(name = "polyafreq", version, about = "Exact real-rootedness and Polya frequency toolkit")]
struct Cli {
    /// Largest n for permutation enumeration (overrides both guards).
    #[arg(long, global = true)]
    max_enum: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a polynomial family.
    Gen(GenArgs),
    /// Decide a property of one or two polynomials.
    Check(CheckArgs),
    /// Apply a transform or product.
    Transform(OpArgs),
    /// Same as `transform`.
    Op(OpArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    qs: Option<String>,
    /// Comma-separated subset of 0..=n.
    #[arg(long)]
    set: Option<String>,
    #[arg(long = "type")]
    kind: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    kind: String,
    /// Polynomials as inline JSON or file paths.
    polys: Vec<String>,
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<String>,
    /// Minor order for `pf-minors`.
    #[arg(long, default_value_t = 4)]
    r: usize,
    /// Toeplitz window size for `pf-minors` (default deg + 3).
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    multiplier: MultiplierArgs,
}

#[derive(Args)]
struct MultiplierArgs {
    #[arg(long, allow_hyphen_values = true)]
    gamma_shift: Option<String>,
    #[arg(long)]
    factorial_inverse: bool,
    #[arg(long)]
    ones: bool,
    /// `C(-n-r, k)`; pair with `--binom-r`.
    #[arg(long)]
    binom_negative: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    binom_r: Option<String>,
    /// Comma-separated explicit terms.
    #[arg(long, allow_hyphen_values = true)]
    explicit: Option<String>,
}

#[derive(Args)]
struct OpArgs {
    name: String,
    polys: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// `ones` or `factorial_inverse`.
    #[arg(long, default_value = "ones")]
    lambda: String,
    #[arg(long)]
    step: Option<usize>,
    #[arg(long, default_value_t = 0)]
    offset: usize,
    /// JSON list of polynomials `[Q_0, Q_1, ...]` for `phi`.
    #[arg(long = "F")]
    f_op: Option<String>,
    #[command(flatten)]
    multiplier: MultiplierArgs,
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    /// Emit a flat CSV table instead of JSON.
    #[arg(long)]
    csv: bool,
}

/// Bad input, reported with exit code 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, Usage>;

fn rational(s: &str) -> CliResult<Rational> {
    Ok(parse_rational(s.trim())?)
}

fn opt_rational(s: &Option<String>, name: &str) -> CliResult<Rational> {
    s.as_deref()
        .map(rational)
        .unwrap_or_else(|| Err(Usage(format!("missing --{name}"))))
}

fn rational_list(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(rational).collect()
}

fn need_n(n: Option<usize>) -> CliResult<usize> {
    n.ok_or_else(|| Usage("missing --n".into()))
}

/// Inline JSON (`{"coeffs": [...]}` or a bare list) or a path to a file holding it.
fn load_poly(arg: &str) -> CliResult<Poly> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Usage(format!("cannot read {arg}: {e}")))?
    };
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let terms: Vec<String> = serde_json::from_str(trimmed).map_err(|e| Usage(e.to_string()))?;
        return Ok(Poly::new(terms.iter().map(|t| rational(t)).collect::<CliResult<_>>()?));
    }
    Ok(Poly::from_json(trimmed)?)
}

fn ext(s: &Option<String>, default: ExtRational) -> CliResult<ExtRational> {
    match s.as_deref() {
        None => Ok(default),
        Some("-inf") => Ok(ExtRational::NegInf),
        Some("inf") | Some("+inf") => Ok(ExtRational::PosInf),
        Some(v) => Ok(ExtRational::Finite(rational(v)?)),
    }
}

fn multiplier(m: &MultiplierArgs) -> CliResult<MultiplierSeq> {
    let mut picked = Vec::new();
    if let Some(q) = &m.gamma_shift {
        picked.push(MultiplierSeq::GammaShift { q: rational(q)? });
    }
    if m.factorial_inverse {
        picked.push(MultiplierSeq::FactorialInverse);
    }
    if m.ones {
        picked.push(MultiplierSeq::Ones);
    }
    if let Some(n) = m.binom_negative {
        let r = m.binom_r.as_deref().map(rational).transpose()?.unwrap_or_default();
        picked.push(MultiplierSeq::BinomNegative { n, r });
    }
    if let Some(list) = &m.explicit {
        picked.push(MultiplierSeq::Explicit {
            terms: rational_list(list)?,
        });
    }
    match picked.len() {
        1 => Ok(picked.pop().expect("one element")),
        0 => Err(Usage(
            "choose a multiplier sequence (--gamma-shift, --factorial-inverse, --ones, --binom-negative, --explicit)".into(),
        )),
        _ => Err(Usage("choose exactly one multiplier sequence".into())),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("JSON values serialize"));
}

fn print_poly(p: &Poly) {
    println!("{}", p.to_json());
}

fn run_gen(a: &GenArgs) -> CliResult<ExitCode> {
    let p = match a.family.as_str() {
        "eulerian" => combinatorics::eulerian_poly(need_n(a.n)?)?,
        "surjection" => combinatorics::surjection_poly(need_n(a.n)?)?,
        "g" => combinatorics::g_poly(need_n(a.n)?)?,
        "eulerian_t" => combinatorics::eulerian_t_poly(need_n(a.n)?, &opt_rational(&a.t, "t")?)?,
        "q_eulerian" => combinatorics::q_eulerian_poly(need_n(a.n)?, &opt_rational(&a.q, "q")?)?,
        "e_q" => combinatorics::e_q_poly(need_n(a.n)?, &opt_rational(&a.q, "q")?)?,
        "b_euler" => combinatorics::b_euler_q(need_n(a.n)?, &opt_rational(&a.q, "q")?)?,
        "b_euler_multi" => {
            let qs = rational_list(a.qs.as_deref().ok_or_else(|| Usage("missing --qs".into()))?)?;
            combinatorics::b_euler_multi(a.n.unwrap_or(qs.len()), &qs)?
        }
        "p_bn_subset" => {
            let set: Vec<usize> = a
                .set
                .as_deref()
                .unwrap_or("")
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse().map_err(|_| Usage(format!("bad set element {s:?}"))))
                .collect::<CliResult<_>>()?;
            combinatorics::p_bn_subset(need_n(a.n)?, &set)?
        }
        "p_dn" => combinatorics::p_dn_poly(need_n(a.n)?)?,
        "fz_h" => {
            let family: FzFamily = a.kind.as_deref().ok_or_else(|| Usage("missing --type".into()))?.parse()?;
            combinatorics::fz_h_poly(family, need_n(a.n)?)?
        }
        "weyl" => combinatorics::weyl_combination(need_n(a.n)?, &opt_rational(&a.alpha, "alpha")?, &opt_rational(&a.beta, "beta")?)?,
        "w2" => combinatorics::w2_poly(need_n(a.n)?)?,
        "t_stack" => {
            let t = opt_rational(&a.t, "t")?;
            let t = t
                .to_integer()
                .try_into()
                .ok()
                .filter(|_| t.is_integer())
                .ok_or_else(|| Usage("--t must be a natural number".into()))?;
            combinatorics::t_stack_poly(need_n(a.n)?, t)?
        }
        "narayana" => combinatorics::narayana(need_n(a.n)?),
        other => return Err(Usage(format!("unknown family {other:?}"))),
    };
    print_poly(&p);
    Ok(ExitCode::SUCCESS)
}

fn collect_polys(positional: &[String], flag: &Option<String>) -> CliResult<Vec<Poly>> {
    let mut out: Vec<Poly> = positional.iter().map(|s| load_poly(s)).collect::<CliResult<_>>()?;
    if let Some(p) = flag {
        out.push(load_poly(p)?);
    }
    Ok(out)
}

fn one(polys: &[Poly]) -> CliResult<&Poly> {
    match polys {
        [p] => Ok(p),
        _ => Err(Usage(format!("expected one polynomial, got {}", polys.len()))),
    }
}

fn two(polys: &[Poly]) -> CliResult<(&Poly, &Poly)> {
    match polys {
        [f, g] => Ok((f, g)),
        _ => Err(Usage(format!("expected two polynomials, got {}", polys.len()))),
    }
}

fn verdict(v: Value, ok: bool) -> CliResult<ExitCode> {
    print_json(&v);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_check(a: &CheckArgs) -> CliResult<ExitCode> {
    if a.kind == "multiplier-n" {
        let g = multiplier(&a.multiplier)?;
        let ok = transforms::is_multiplier_n_sequence(&g, need_n(a.n)?)?;
        return verdict(json!({ "multiplier_n_sequence": ok }), ok);
    }
    let polys = collect_polys(&a.polys, &a.poly)?;
    match a.kind.as_str() {
        "real-rooted" => {
            let f = one(&polys)?;
            let ok = roots::is_real_rooted(f)?;
            let real = roots::real_roots_with_multiplicity(f)?;
            verdict(json!({ "real_rooted": ok, "degree": f.degree(), "real_roots": real }), ok)
        }
        "simple" => {
            let f = one(&polys)?;
            let ok = roots::is_simple_rooted(f)?;
            verdict(json!({ "simple": ok, "distinct_real_roots": roots::distinct_real_roots(f)? }), ok)
        }
        "interval" => {
            let f = one(&polys)?;
            let lo = ext(&a.lo, ExtRational::NegInf)?;
            let hi = ext(&a.hi, ExtRational::PosInf)?;
            let ok = roots::roots_within(f, &lo, &hi)?;
            verdict(json!({ "within": ok }), ok)
        }
        "interlace" => {
            let (f, g) = two(&polys)?;
            let rel = roots::interlace_relation(f, g)?;
            verdict(
                json!({ "relation": rel.as_str() }),
                rel.is_interlacing() || rel.is_alternating_left(),
            )
        }
        "dominance" => {
            let (f, g) = two(&polys)?;
            let ok = roots::root_dominance(f, g)?;
            verdict(json!({ "dominance": ok }), ok)
        }
        "pf" => {
            let ok = pf::is_pf_finite(one(&polys)?)?;
            verdict(json!({ "pf": ok }), ok)
        }
        "pf-minors" => {
            let f = one(&polys)?;
            let n = a.window.unwrap_or(f.degree().unwrap_or(0) + 3);
            let report = pf::minors_nonneg(&pf::toeplitz_window(&SeqWindow::from_poly(f), n), a.r.min(n))?;
            let ok = report.verdict;
            verdict(serde_json::to_value(&report).expect("report serializes"), ok)
        }
        "log-concave" => {
            let s = SeqWindow::from_poly(one(&polys)?);
            let ok = pf::is_log_concave(&s);
            verdict(json!({ "log_concave": ok, "internal_zeros": pf::has_internal_zeros(&s) }), ok)
        }
        "unimodal" => {
            let s = SeqWindow::from_poly(one(&polys)?);
            let ok = pf::is_unimodal(&s);
            verdict(json!({ "unimodal": ok }), ok)
        }
        "nonneg-on-reals" => {
            let f = one(&polys)?;
            let ok = roots::check_nonneg_on_reals(f)?;
            let witness = if ok {
                None
            } else {
                roots::negative_witness(f)?.map(|x| format_rational(&x))
            };
            verdict(json!({ "nonneg": ok, "witness": witness }), ok)
        }
        other => Err(Usage(format!("unknown check {other:?}"))),
    }
}

fn lambda(name: &str) -> CliResult<MultiplierSeq> {
    match name {
        "ones" => Ok(MultiplierSeq::Ones),
        "factorial_inverse" | "factorial-inverse" => Ok(MultiplierSeq::FactorialInverse),
        other => Err(Usage(format!("unknown --lambda {other:?}"))),
    }
}

fn run_op(a: &OpArgs) -> CliResult<ExitCode> {
    let polys = collect_polys(&a.polys, &None)?;
    let p = match a.name.as_str() {
        "e" => transforms::e_transform(one(&polys)?),
        "e-inv" => transforms::e_inverse(one(&polys)?),
        "w" => transforms::w_transform(one(&polys)?)?,
        "reflect" => transforms::reflect_r(one(&polys)?),
        "multisect" => {
            let step = a.step.ok_or_else(|| Usage("missing --step".into()))?;
            combinatorics::multisect(one(&polys)?, step, a.offset)?
        }
        "phi" => {
            let spec = a.f_op.as_deref().ok_or_else(|| Usage("missing --F".into()))?;
            let list: Vec<Value> = serde_json::from_str(spec).map_err(|e| Usage(e.to_string()))?;
            let qs = list.iter().map(|v| load_poly(&v.to_string())).collect::<CliResult<Vec<_>>>()?;
            operators::apply_phi(&BivarOp::new(qs), one(&polys)?)
        }
        "diamond" => {
            let (f, g) = two(&polys)?;
            operators::diamond_product(f, g)?
        }
        "sharp" => {
            let (f, g) = two(&polys)?;
            operators::sharp_product(f, g)
        }
        "hadamard" => {
            let (f, g) = two(&polys)?;
            operators::hadamard_product(f, g)?
        }
        "schur" => {
            let (f, g) = two(&polys)?;
            operators::schur_product(f, g)
        }
        "dot" => {
            let (f, g) = two(&polys)?;
            operators::dot_form(
                f,
                g,
                &lambda(&a.lambda)?,
                &opt_rational(&a.alpha, "alpha")?,
                &opt_rational(&a.beta, "beta")?,
            )?
        }
        "circ" => {
            let (f, g) = two(&polys)?;
            operators::circ_form(f, g, &lambda(&a.lambda)?, &opt_rational(&a.alpha, "alpha")?)?
        }
        "hermite-poulain" => {
            let (f, g) = two(&polys)?;
            operators::hermite_poulain(f, g)
        }
        "multiplier-apply" => transforms::apply_multiplier(&multiplier(&a.multiplier)?, one(&polys)?)?,
        other => return Err(Usage(format!("unknown operation {other:?}"))),
    };
    print_poly(&p);
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: &VerifyArgs) -> CliResult<ExitCode> {
    let cfg = VerifyConfig {
        max_n: a.max_n,
        seed: a.seed,
        jobs: a.jobs,
    };
    let report = verify::run_suite(&a.suite, &cfg)?;
    if a.csv {
        let mut w = csv::Writer::from_writer(std::io::stdout());
        let io = |e: csv::Error| Usage(e.to_string());
        w.write_record(["family", "n", "params", "verdict"]).map_err(io)?;
        for c in &report.cases {
            let (family, _) = c.id.split_once('/').unwrap_or((&report.suite, ""));
            let family = if report.suite == "all" { family } else { report.suite.as_str() };
            let n = c.params.get("n").map(|v| v.to_string()).unwrap_or_default();
            let verdict = if c.verdict { "pass" } else { "fail" };
            w.write_record([family, &n, &c.params.to_string(), verdict]).map_err(io)?;
        }
        w.flush().map_err(|e| Usage(e.to_string()))?;
    } else {
        let mut out = std::io::stdout().lock();
        serde_json::to_writer(&mut out, &report).map_err(|e| Usage(e.to_string()))?;
        writeln!(out).map_err(|e| Usage(e.to_string()))?;
    }
    Ok(ExitCode::from(report.exit_code as u8))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(limit) = cli.max_enum {
        std::env::set_var(combinatorics::perms::GUARD_ENV, limit.to_string());
    }
    let result = match &cli.command {
        Command::Gen(a) => run_gen(a),
        Command::Check(a) => run_check(a),
        Command::Transform(a) | Command::Op(a) => run_op(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `polyafreq --help` for usage");
            ExitCode::from(2)
        }
    }
}
