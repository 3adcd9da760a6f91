//! `kolberg`: JSON (or LaTeX) front end for kolberg-core.
//!
//! Every invocation prints one envelope
//! `{schema_version, command, result, status, error_message}` on stdout.
//! Usage errors exit with 2, domain errors with 1.

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use kolberg_core::association::{backward_transform, forward_transform, CoeffSeq};
use kolberg_core::identities;
use kolberg_core::latex;
use kolberg_core::numeric::residual_check;
use kolberg_core::quatuor::{taylor_oracle_report, FamilySpec, Ladder};
use kolberg_core::rational::{parse_rational, parse_rational_list};
use kolberg_core::serial::{rationals_to_json, JsonCodec};
use kolberg_core::transcendence::{
    kolberg_pipeline, rational_value_at_one, witness_polynomial, ExceptionalSet, PipelineResult,
};
use kolberg_core::{Error, QtElem, RatFn, Rational, UniPoly};
use num_traits::Signed;
use serde_json::{json, Value};

const SCHEMA_VERSION: &str = "1";
const DEFAULT_MAX_DEGREE: usize = 512;

#[derive(Parser, Debug)]
#[command(name = "kolberg", version, about = "Exact tree-function series, quatuor ladders and certified residuals")]
struct Cli {
    /// Render rational functions as LaTeX instead of JSON.
    #[arg(long, global = true)]
    latex: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternating binomial identities.
    #[command(subcommand)]
    Identities(IdentitiesCmd),
    /// Coefficient transform under x = t e^{-t}.
    #[command(subcommand)]
    Assoc(AssocCmd),
    /// Ladder closed forms and their Taylor oracle.
    #[command(subcommand)]
    Quatuor(QuatuorCmd),
    /// Pipeline, witness polynomials and values at t = 1.
    #[command(subcommand)]
    Kolberg(KolbergCmd),
    /// Certified interval checks.
    #[command(subcommand)]
    Eval(EvalCmd),
    #[command(flatten)]
    TopLevel(KolbergCmd),
}

#[derive(Subcommand, Debug)]
enum IdentitiesCmd {
    /// Check P(x, s) = 0 and the b recurrence for s <= max-s.
    Verify {
        #[arg(long, default_value_t = 40)]
        max_s: u64,
    },
}

#[derive(Subcommand, Debug)]
enum AssocCmd {
    /// u -> v.
    Forward(CoeffsArg),
    /// v -> u.
    Backward(CoeffsArg),
}

#[derive(Args, Debug)]
struct CoeffsArg {
    /// Comma separated rationals "p/q".
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
    coeffs: RatList,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FamilyName {
    Kolberg,
    Opus2,
    Seeded,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    /// Value substituted for y (kolberg family).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    y: Option<Rational>,
    /// Seed coefficients v_n of G = Σ v_n tⁿ/n! (seeded family).
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
    seed: Option<RatList>,
    /// Index of the seed in the ladder (seeded family).
    #[arg(long = "seed-level", alias = "level", default_value_t = 0, allow_hyphen_values = true)]
    level: i64,
}

#[derive(Subcommand, Debug)]
enum QuatuorCmd {
    /// F_k as a twisted form, or in Q(t) when --y is given.
    ClosedForm(FamilyArgs),
    /// Compare Taylor coefficients of F_k with the transformed series.
    Oracle {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
}

#[derive(Args, Debug)]
struct PipelineArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    r: Rational,
    /// Coefficients of P in ascending degree.
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
    poly: RatList,
}

#[derive(Subcommand, Debug)]
enum KolbergCmd {
    /// g(t) and its data for S = Σ (n+r)^{n-a} P(n) xⁿ/n!.
    Pipeline(PipelineArgs),
    /// Polynomial with root t when t^r g(t) = d.
    Witness {
        #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
        g_num: RatList,
        #[arg(long, value_parser = rational_list, allow_hyphen_values = true, default_value = "1")]
        g_den: RatList,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        r: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        d: Rational,
    },
    /// Σ n^{n-k} e^{-n}/n! as an exact rational.
    #[command(name = "rational-at-1")]
    RationalAtOne {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
}

#[derive(Subcommand, Debug)]
enum EvalCmd {
    /// Enclosure of t^r g(t) - x^r (S(x) + offset) at x = t e^{-t}.
    Residual {
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[arg(long = "t", value_parser = rational)]
        t0: Rational,
        /// Tolerance, "p/q" or "2^-K".
        #[arg(long, value_parser = tolerance, default_value = "2^-30")]
        eps: Rational,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// A comma separated list given as one argument.
#[derive(Clone, Debug)]
struct RatList(Vec<Rational>);

fn rational_list(s: &str) -> Result<RatList, String> {
    parse_rational_list(s).map(RatList).map_err(|e| e.to_string())
}

fn tolerance(s: &str) -> Result<Rational, String> {
    let eps = match s.trim().strip_prefix("2^") {
        Some(exp) => {
            let k: i64 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            kolberg_core::rational::pow_int(&kolberg_core::rational::rat(2), k).map_err(|e| e.to_string())?
        }
        None => rational(s)?,
    };
    if !eps.is_positive() {
        return Err(format!("tolerance must be positive, got {s:?}"));
    }
    Ok(eps)
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

struct Guard {
    max_degree: usize,
}

impl Guard {
    fn from_env() -> Result<Self, Failure> {
        let max_degree = match std::env::var("QUATUOR_MAX_DEGREE") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("QUATUOR_MAX_DEGREE must be a natural number, got {v:?}")))?,
            Err(_) => DEFAULT_MAX_DEGREE,
        };
        Ok(Guard { max_degree })
    }

    fn check(&self, what: &str, degree: u64) -> Result<(), Failure> {
        if degree > self.max_degree as u64 {
            return Err(Failure::Domain(format!(
                "{what} needs degree {degree}, above QUATUOR_MAX_DEGREE = {}",
                self.max_degree
            )));
        }
        Ok(())
    }
}

fn qt_json(g: &QtElem, as_latex: bool) -> Value {
    if as_latex {
        Value::String(latex::ratfn("t", g))
    } else {
        g.to_json()
    }
}

fn exceptional_json(e: &ExceptionalSet) -> Value {
    match e {
        ExceptionalSet::Empty => json!({ "kind": "empty" }),
        ExceptionalSet::Singleton(n) => json!({ "kind": "singleton", "value": n }),
        ExceptionalSet::AllIntegers => json!({ "kind": "all_integers" }),
    }
}

fn pipeline_json(res: &PipelineResult, as_latex: bool) -> Value {
    let coeffs: serde_json::Map<String, Value> = res
        .coeffs
        .iter()
        .map(|(k, a)| (k.to_string(), a.to_json()))
        .collect();
    json!({
        "case": res.case.as_str(),
        "a": res.a,
        "r": res.r.to_json(),
        "poly": res.poly.to_json(),
        "g": qt_json(&res.g, as_latex),
        "b": res.b,
        "c": res.c,
        "coefficients": coeffs,
        "offset": res.offset.to_json(),
        "exceptional_set": exceptional_json(&res.exceptional),
        "criterion_ok": res.criterion_ok,
    })
}

fn ladder(args: &FamilyArgs) -> Result<Ladder, Failure> {
    let family = match args.family {
        FamilyName::Kolberg => FamilySpec::Kolberg,
        FamilyName::Opus2 => FamilySpec::Opus2,
        FamilyName::Seeded => {
            let seed = args
                .seed
                .as_ref()
                .ok_or_else(|| Failure::Usage("--family seeded needs --seed".into()))?;
            FamilySpec::seeded(args.level, &seed.0)?
        }
    };
    Ok(Ladder::new(family))
}

fn ladder_degree(args: &FamilyArgs) -> u64 {
    let seed_len = args.seed.as_ref().map_or(0, |s| s.0.len()) as u64;
    (args.k - args.level).unsigned_abs() + 1 + seed_len
}

fn pipeline_degree(p: &PipelineArgs) -> u64 {
    p.poly.0.len() as u64 + p.a.unsigned_abs() + 1
}

fn run_pipeline(p: &PipelineArgs, guard: &Guard) -> Result<PipelineResult, Failure> {
    guard.check("pipeline", pipeline_degree(p))?;
    Ok(kolberg_pipeline(p.a, &p.r, &UniPoly::new(p.poly.0.clone()))?)
}

fn kolberg_cmd(cmd: &KolbergCmd, as_latex: bool, guard: &Guard) -> Outcome {
    match cmd {
        KolbergCmd::Pipeline(p) => Ok(pipeline_json(&run_pipeline(p, guard)?, as_latex)),
        KolbergCmd::Witness { g_num, g_den, r, d } => {
            let q = u64::try_from(r.denom().clone()).unwrap_or(u64::MAX);
            let deg = (g_num.0.len().max(g_den.0.len()) as u64)
                .saturating_mul(q)
                .saturating_add(r.numer().magnitude().try_into().unwrap_or(u64::MAX));
            guard.check("witness", deg)?;
            let g = RatFn::reduce(UniPoly::new(g_num.0.clone()), UniPoly::new(g_den.0.clone()))?;
            let w = witness_polynomial(&g, r, d)?;
            Ok(if as_latex {
                Value::String(latex::poly("t", &w))
            } else {
                w.to_json()
            })
        }
        KolbergCmd::RationalAtOne { k } => {
            guard.check("rational-at-1", k.unsigned_abs() + 1)?;
            Ok(rational_value_at_one(*k)?.to_json())
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    let kolberg = |k: &KolbergCmd| match k {
        KolbergCmd::Pipeline(_) => "kolberg pipeline",
        KolbergCmd::Witness { .. } => "kolberg witness",
        KolbergCmd::RationalAtOne { .. } => "kolberg rational-at-1",
    };
    match cmd {
        Command::Identities(IdentitiesCmd::Verify { .. }) => "identities verify",
        Command::Assoc(AssocCmd::Forward(_)) => "assoc forward",
        Command::Assoc(AssocCmd::Backward(_)) => "assoc backward",
        Command::Quatuor(QuatuorCmd::ClosedForm(_)) => "quatuor closed-form",
        Command::Quatuor(QuatuorCmd::Oracle { .. }) => "quatuor oracle",
        Command::Kolberg(k) | Command::TopLevel(k) => kolberg(k),
        Command::Eval(EvalCmd::Residual { .. }) => "eval residual",
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let guard = Guard::from_env()?;
    match &cli.command {
        Command::Identities(IdentitiesCmd::Verify { max_s }) => {
            guard.check("identities verify", *max_s)?;
            identities::verify(*max_s).map_err(|v| Failure::Domain(v.to_string()))?;
            Ok(json!({ "max_s": max_s, "verified": true }))
        }
        Command::Assoc(cmd) => {
            let (coeffs, forward) = match cmd {
                AssocCmd::Forward(c) => (&c.coeffs.0, true),
                AssocCmd::Backward(c) => (&c.coeffs.0, false),
            };
            guard.check("assoc", coeffs.len().saturating_sub(1) as u64)?;
            let seq = CoeffSeq(coeffs.clone());
            let out = if forward {
                forward_transform(&seq)
            } else {
                backward_transform(&seq)
            };
            Ok(rationals_to_json(&out.0))
        }
        Command::Quatuor(QuatuorCmd::ClosedForm(args)) => {
            guard.check("closed-form", ladder_degree(args))?;
            let l = ladder(args)?;
            match &args.y {
                Some(y0) => Ok(qt_json(&l.specialize(args.k, Some(y0))?, cli.latex)),
                None => {
                    let form = l.closed_form(args.k)?;
                    Ok(if cli.latex {
                        Value::String(form.latex())
                    } else {
                        form.to_json()
                    })
                }
            }
        }
        Command::Quatuor(QuatuorCmd::Oracle { family, order }) => {
            guard.check("oracle", ladder_degree(family).max(*order as u64))?;
            let l = ladder(family)?;
            let report = taylor_oracle_report(&l, family.k, family.y.as_ref(), *order)?;
            Ok(json!({
                "ok": report.is_none(),
                "order": order,
                "mismatch": report.map(|m| json!({
                    "n": m.n,
                    "expected": m.expected.to_json(),
                    "actual": m.actual.to_json(),
                })),
            }))
        }
        Command::Kolberg(k) | Command::TopLevel(k) => kolberg_cmd(k, cli.latex, &guard),
        Command::Eval(EvalCmd::Residual { pipeline, t0, eps }) => {
            let res = run_pipeline(pipeline, &guard)?;
            let enc = residual_check(&res, t0, eps)?;
            Ok(json!({
                "lo": enc.lo().to_json(),
                "hi": enc.hi().to_json(),
                "width": enc.width().to_json(),
                "contains_zero": enc.contains_zero(),
            }))
        }
    }
}

fn emit(command: &str, outcome: Outcome) -> ExitCode {
    let (result, status, message, code) = match outcome {
        Ok(v) => (v, "ok", Value::Null, 0),
        Err(Failure::Usage(m)) => (Value::Null, "error", Value::String(m), 2),
        Err(Failure::Domain(m)) => (Value::Null, "error", Value::String(m), 1),
    };
    let envelope = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "result": result,
        "status": status,
        "error_message": message,
    });
    // a closed pipe (e.g. `| head`) is not worth a panic
    let _ = writeln!(std::io::stdout(), "{envelope}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            return emit("usage", Err(Failure::Usage(first.to_string())));
        }
    };
    emit(command_name(&cli.command), dispatch(&cli))
}
