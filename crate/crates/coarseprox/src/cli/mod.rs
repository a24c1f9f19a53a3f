//! Command-line front end. Every command prints one JSON document on stdout.

pub mod expr;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::backends::windowed::DEFAULT_WINDOW;
use crate::backends::{self, AnySet, BackendKind, EntourageSpec, WindowedEntourage};
use crate::error::{Error, Result};
use crate::harness::{self, SeedPlan, Suite};
use crate::normality::{self, Certificate, TRACE_FLOOR};
use crate::rat::{self, Rat};
use crate::relations::{self, BMode, PrecMode, RelationResult};

pub use expr::{elaborate, parse_expr, SetExpr};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Parser)]
#[command(
    name = "coarseprox",
    version,
    about = "Decide coarse proximity relations on exactly representable sets"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a relation between sets.
    Decide(DecideArgs),
    /// Construct a normality witness on the integers.
    Witness(WitnessArgs),
    /// Certify that a candidate cannot interpolate on the half-line.
    Certify(CertifyArgs),
    /// Replay a certificate.
    Validate {
        /// Certificate JSON, or `-` for stdin.
        path: PathBuf,
    },
    /// Run seeded property suites.
    Check(CheckArgs),
    /// Image of a set under a generating entourage.
    Image(ImageArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Relation {
    B,
    Lambda,
    Prec,
    Nbhd,
    Bounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Image,
    Disjoint,
    Pairs,
    Resemblance,
}

#[derive(Debug, Args)]
struct DecideArgs {
    relation: Relation,
    #[arg(long, value_enum, default_value = "z-metric")]
    backend: BackendKind,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Probe bound for the windowed backend.
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: u64,
    #[arg(required = true, num_args = 1..=2)]
    exprs: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WitnessKind {
    Normal,
    Star,
    Split,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    kind: WitnessKind,
    #[arg(long, value_enum, default_value = "z-metric")]
    backend: BackendKind,
    a: String,
    b: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CertifyKind {
    Nonnormal,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    kind: CertifyKind,
    #[arg(long)]
    candidate: String,
    /// Number of trace points to record.
    #[arg(long, default_value_t = TRACE_FLOOR)]
    trace: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Bornology,
    Proximity,
    Nbhd,
    Resemblance,
    Crosscheck,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, value_enum, default_value = "z-metric")]
    backend: BackendKind,
    #[arg(long, env = "COARSEPROX_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',')]
    windows: Option<Vec<u64>>,
    /// Pairs and triples per suite.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ImageArgs {
    #[arg(long, value_enum, default_value = "z-metric")]
    backend: BackendKind,
    #[arg(long, conflicts_with = "offsets")]
    radius: Option<u64>,
    /// Comma-separated rational offsets.
    #[arg(long)]
    offsets: Option<String>,
    expr: String,
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub code: i32,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn set_of(text: &str, kind: BackendKind) -> Result<AnySet> {
    elaborate(&parse_expr(text)?, kind)
}

fn envelope(command: &str, backend: BackendKind, inputs: &[&AnySet], result: Value) -> Value {
    json!({
        "command": command,
        "backend": backend,
        "inputs": inputs.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        "result": result,
        "version": SCHEMA_VERSION,
    })
}

fn with(mut v: Value, key: &str, extra: Value) -> Value {
    v[key] = extra;
    v
}

fn decide(args: &DecideArgs) -> Result<Outcome> {
    let kind = args.backend;
    let sets = args
        .exprs
        .iter()
        .map(|e| set_of(e, kind))
        .collect::<Result<Vec<_>>>()?;
    let name = format!(
        "decide {}",
        Relation::to_possible_value(&args.relation)
            .expect("named")
            .get_name()
    );
    let pair = || match sets.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(usage(format!("`{name}` takes two set expressions"))),
    };
    let no_mode = |r: Result<RelationResult>| match args.mode {
        Some(m) => Err(usage(format!("`{name}` takes no --mode, got {m:?}"))),
        None => r,
    };
    let r = match args.relation {
        Relation::Bounded => {
            let [a] = sets.as_slice() else {
                return Err(usage("`decide bounded` takes one set expression"));
            };
            if args.mode.is_some() {
                return Err(usage("`decide bounded` takes no --mode"));
            }
            let verdict = backends::bounded(a);
            let result =
                json!({ "verdict": verdict, "asymptotically_bounded": relations::asym_bounded(a) });
            return Ok(Outcome {
                json: envelope(&name, kind, &[a], result),
                code: 0,
            });
        }
        Relation::Lambda => {
            let (a, b) = pair()?;
            no_mode(relations::lambda_rel(a, b, args.window))?
        }
        Relation::Nbhd => {
            let (a, b) = pair()?;
            no_mode(relations::nbhd(a, b, args.window))?
        }
        Relation::Prec => {
            let (a, b) = pair()?;
            let mode = match args.mode.unwrap_or(ModeArg::Image) {
                ModeArg::Image => PrecMode::Image,
                ModeArg::Disjoint => PrecMode::Disjoint,
                ModeArg::Pairs => PrecMode::Pairs,
                ModeArg::Resemblance => {
                    return Err(usage("`decide prec` modes are image, disjoint and pairs"))
                }
            };
            relations::prec(a, b, mode, args.window)?
        }
        Relation::B => {
            let (a, b) = pair()?;
            let mode = match args.mode.unwrap_or(ModeArg::Image) {
                ModeArg::Image => BMode::Image,
                ModeArg::Resemblance => BMode::Resemblance,
                ModeArg::Pairs => BMode::Pairs,
                ModeArg::Disjoint => {
                    return Err(usage("`decide b` modes are image, resemblance and pairs"))
                }
            };
            relations::b_rel(a, b, mode, args.window)?
        }
    };
    let result = json!({ "verdict": r.verdict, "mode": r.mode, "backend": kind });
    let inputs: Vec<&AnySet> = sets.iter().collect();
    let witness = r
        .witness
        .as_ref()
        .map_or(Value::Null, relations::Witness::to_json);
    Ok(Outcome {
        json: with(envelope(&name, kind, &inputs, result), "witness", witness),
        code: 0,
    })
}

/// Failures of a demanded construction exit with 1 and say why.
fn refused(v: Value, e: Error) -> Result<Outcome> {
    match e {
        Error::PrecFails | Error::NotNested | Error::NotDisjoint | Error::NotNormal(_) => {
            Ok(Outcome {
                json: with(
                    v,
                    "result",
                    json!({ "exists": false, "reason": e.to_string() }),
                ),
                code: 1,
            })
        }
        other => Err(other),
    }
}

fn witness(args: &WitnessArgs) -> Result<Outcome> {
    let kind = args.backend;
    let (a, b) = (set_of(&args.a, kind)?, set_of(&args.b, kind)?);
    let name = format!(
        "witness {}",
        WitnessKind::to_possible_value(&args.kind)
            .expect("named")
            .get_name()
    );
    let base = envelope(&name, kind, &[&a, &b], Value::Null);
    if kind == BackendKind::QHalfline {
        if !matches!(args.kind, WitnessKind::Normal) {
            return Err(usage(format!("`{name}` runs on the z-metric backend")));
        }
        return match normality::halfline_interpolant(a.as_q()?, b.as_q()?) {
            Ok(Some(c)) => Ok(Outcome {
                json: with(
                    with(base, "result", json!({ "exists": true })),
                    "witness",
                    json!({ "c": c }),
                ),
                code: 0,
            }),
            Ok(None) => refused(
                base,
                Error::NotNormal("the half-line admits no interpolant for this pair".into()),
            ),
            Err(e) => refused(base, e),
        };
    }
    let (za, zb) = (
        a.as_z()
            .map_err(|_| usage(format!("`{name}` runs on the z-metric backend")))?,
        b.as_z()?,
    );
    let cert = match args.kind {
        WitnessKind::Normal => normality::interpolate(za, zb).map(|w| Certificate::Normal {
            a: za.clone(),
            b: zb.clone(),
            witness: w,
        }),
        WitnessKind::Star => normality::interpolate_star(za, zb).map(|c| Certificate::Star {
            a: za.clone(),
            b: zb.clone(),
            c,
        }),
        WitnessKind::Split => {
            normality::split_asymptotic(za, zb).map(|(x1, x2)| Certificate::Split {
                a1: za.clone(),
                a2: zb.clone(),
                x1,
                x2,
            })
        }
    };
    match cert {
        Ok(cert) => {
            cert.validate()?;
            let v = with(base, "result", json!({ "exists": true }));
            Ok(Outcome {
                json: with(
                    v,
                    "certificate",
                    serde_json::to_value(&cert).expect("serializes"),
                ),
                code: 0,
            })
        }
        Err(e) => refused(base, e),
    }
}

fn certify(args: &CertifyArgs) -> Result<Outcome> {
    let CertifyKind::Nonnormal = args.kind;
    let kind = BackendKind::QHalfline;
    let c = set_of(&args.candidate, kind)?;
    let (a, b) = (
        AnySet::Q(normality::unit_interval()),
        AnySet::Q(normality::off_naturals()),
    );
    let base = envelope("certify nonnormal", kind, &[&a, &b, &c], Value::Null);
    if args.trace < TRACE_FLOOR {
        return Err(usage(format!(
            "trace length must be at least {TRACE_FLOOR}"
        )));
    }
    match normality::nonnormality_certificate(c.as_q()?, args.trace) {
        Ok(cert) => {
            let cert = Certificate::Nonnormal(cert);
            cert.validate()?;
            let result = json!({ "prec_a_c": true, "prec_c_b": false });
            let v = with(base, "result", result);
            Ok(Outcome {
                json: with(
                    v,
                    "certificate",
                    serde_json::to_value(&cert).expect("serializes"),
                ),
                code: 0,
            })
        }
        Err(e) => refused(base, e),
    }
}

fn validate(path: &PathBuf) -> Result<Outcome> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("malformed JSON: {e}")))?;
    let body = doc.get("certificate").cloned().unwrap_or(doc);
    let cert: Certificate = serde_json::from_value(body)
        .map_err(|e| Error::InvalidCertificate(format!("unreadable certificate: {e}")))?;
    let (result, code) = match cert.validate() {
        Ok(()) => (json!({ "valid": true }), 0),
        Err(e) => (json!({ "valid": false, "reason": e.to_string() }), 1),
    };
    let kind = if matches!(cert, Certificate::Nonnormal(_)) {
        BackendKind::QHalfline
    } else {
        BackendKind::ZMetric
    };
    Ok(Outcome {
        json: envelope("validate", kind, &[], result),
        code,
    })
}

fn check(args: &CheckArgs) -> Result<Outcome> {
    let mut plan = SeedPlan::with_seed(args.seed);
    if let Some(w) = &args.windows {
        plan.windows.clone_from(w);
    }
    if let Some(n) = args.pairs {
        plan.pairs = n;
        plan.triples = n;
    }
    let suites: Vec<Suite> = match args.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Bornology => vec![Suite::Bornology],
        SuiteArg::Proximity => vec![Suite::Proximity],
        SuiteArg::Nbhd => vec![Suite::Nbhd],
        SuiteArg::Resemblance => vec![Suite::Resemblance],
        SuiteArg::Crosscheck => vec![Suite::Crosscheck],
    };
    let reports = suites
        .iter()
        .map(|&s| harness::run_suite(s, args.backend, &plan))
        .collect::<Result<Vec<_>>>()?;
    let matches = reports.iter().all(harness::matches_expected);
    let result = json!({
        "matches_expected": matches,
        "plan": plan,
        "reports": reports.iter().map(harness::CheckReport::to_json).collect::<Vec<_>>(),
    });
    let json = envelope("check", args.backend, &[], result);
    if let Some(out) = &args.out {
        std::fs::write(out, render(&json))
            .map_err(|e| usage(format!("cannot write {}: {e}", out.display())))?;
    }
    Ok(Outcome {
        json,
        code: if matches { 0 } else { 1 },
    })
}

fn parse_offsets(text: &str) -> Result<Vec<Rat>> {
    text.split(',').map(|s| rat::parse_rat(s.trim())).collect()
}

fn image(args: &ImageArgs) -> Result<Outcome> {
    let kind = args.backend;
    let a = set_of(&args.expr, kind)?;
    let e = match (kind, args.radius, &args.offsets) {
        (BackendKind::ZMetric, Some(r), None) => EntourageSpec::metric(r),
        (BackendKind::Windowed, Some(r), None) => {
            EntourageSpec::Windowed(WindowedEntourage::ball(r))
        }
        (BackendKind::QHalfline, None, Some(o)) => EntourageSpec::halfline(parse_offsets(o)?),
        (BackendKind::QHalfline, _, _) => {
            return Err(usage("the q-halfline backend takes --offsets"))
        }
        _ => return Err(usage(format!("the {kind} backend takes --radius"))),
    };
    let img = backends::image(&e, &a)?;
    let v = envelope("image", kind, &[&a], img.to_json());
    Ok(Outcome {
        json: with(v, "entourage", e.to_json()),
        code: 0,
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Decide(a) => decide(a),
        Command::Witness(a) => witness(a),
        Command::Certify(a) => certify(a),
        Command::Validate { path } => validate(path),
        Command::Check(a) => check(a),
        Command::Image(a) => image(a),
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON renders");
    s.push('\n');
    s
}

/// Runs the tool on `argv` and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", render(&out.json));
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
