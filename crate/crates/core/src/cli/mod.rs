//! Command-line front end. [`run`] is the whole program minus process I/O.

mod tables;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::exactlin::{parse_matrix, parse_vector_text, IntMatrix, IntVector, ParseError};
use crate::groups::{label_classes, reidemeister_number, witness, AutomorphismSpec, GroupFamily, WitnessId};
use crate::spectra::{classify_family, decide_system2, decide_z3_eight, default_bound, EightOutcome, System2Outcome};

pub use tables::{table_rows, TableRow};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// The serialized result of every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputEnvelope {
    pub result: Value,
    pub trace: Vec<String>,
    pub version: String,
    pub bound: u64,
}

#[derive(Parser, Debug)]
#[command(name = "reidemeister", version, about = "Reidemeister numbers and spectra of low-dimensional solvmanifold groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reidemeister number of an automorphism.
    Rnumber(AutoArgs),
    /// Reidemeister spectrum of a group.
    Spectrum(GroupArgs),
    /// Run a decision procedure on a matrix.
    Decide(DecideArgs),
    /// Regenerate the conclusion tables.
    Tables(TablesArgs),
    /// Count twisted-conjugacy classes by brute force.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Search bound (default: TWISTED_BOUND or 10000).
    #[arg(long)]
    bound: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// free-abelian, heisenberg, heisenberg-times-z, zn-semidirect,
    /// z2-semidirect, z3-semidirect, z2-ext, hn-semidirect.
    #[arg(long)]
    family: String,
    /// Action matrix, `a,b;c,d` or `[[a,b],[c,d]]`.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Rank for free-abelian, the Heisenberg parameter otherwise.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    n0: Option<String>,
    /// Action of the inner generator in z2-ext (default -I).
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct AutoArgs {
    /// Automorphism as JSON, or `@path` to read it from a file.
    #[arg(long, conflicts_with_all = ["family", "witness"])]
    automorphism: Option<String>,
    #[arg(long, requires = "witness")]
    family: Option<String>,
    /// phi_m, M_m, phi_alpha or psi_r.
    #[arg(long, requires = "family")]
    witness: Option<String>,
    #[arg(long, default_value_t = 1)]
    param: u64,
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    n0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct DecideArgs {
    /// `A` for the conjugate-to-inverse system, `A'` with `--c`.
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    /// Row `C` of `[[1, C], [0, A']]`; switches to the order-8 criterion.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct TablesArgs {
    /// Restrict to one table: 4, 5.1, 5.2 or 5.3.
    #[arg(long)]
    section: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    #[command(flatten)]
    auto: AutoArgs,
    #[arg(long, default_value_t = 4)]
    radius: u32,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn fail<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure(msg.into()))
}

fn matrix_arg(flag: &str, text: &str) -> Res<IntMatrix> {
    parse_matrix(text).map_err(|e: ParseError| Failure(format!("--{}: {}", flag, e)))
}

fn vector_arg(flag: &str, text: &str) -> Res<IntVector> {
    parse_vector_text(text).map_err(|e| Failure(format!("--{}: {}", flag, e)))
}

fn need<'a, T>(flag: &str, v: &'a Option<T>, family: &str) -> Res<&'a T> {
    v.as_ref().ok_or_else(|| Failure(format!("--{} is required for family {}", flag, family)))
}

fn square(flag: &str, m: IntMatrix, dims: &[usize]) -> Res<IntMatrix> {
    if m.rows() != m.cols() || !dims.contains(&m.rows()) {
        let want: Vec<String> = dims.iter().map(|d| format!("{d}x{d}")).collect();
        return fail(format!("--{}: expected a {} matrix, found {}x{}", flag, want.join(" or "), m.rows(), m.cols()));
    }
    Ok(m)
}

struct FamilyInput<'a> {
    family: &'a str,
    matrix: &'a Option<String>,
    n: Option<u64>,
    n0: &'a Option<String>,
    b: &'a Option<String>,
    k: Option<i64>,
    l: Option<i64>,
}

fn build_family(f: FamilyInput<'_>) -> Res<GroupFamily> {
    let tag = f.family;
    let mat = |dims: &[usize]| -> Res<IntMatrix> { square("matrix", matrix_arg("matrix", need("matrix", f.matrix, tag)?)?, dims) };
    let family = match tag {
        "free-abelian" => GroupFamily::FreeAbelian { n: *need("n", &f.n, tag)? as usize },
        "heisenberg" => GroupFamily::heisenberg(*need("n", &f.n, tag)?),
        "heisenberg-times-z" => GroupFamily::heisenberg_times_z(*need("n", &f.n, tag)?),
        "zn-semidirect" => GroupFamily::zn_semidirect_z(mat(&[1, 2, 3])?),
        "z2-semidirect" => GroupFamily::zn_semidirect_z(mat(&[2])?),
        "z3-semidirect" => GroupFamily::zn_semidirect_z(mat(&[3])?),
        "z2-ext" => {
            let n0 = match f.n0 {
                Some(s) => vector_arg("n0", s)?,
                None => vec![BigInt::from(0); 2],
            };
            if n0.len() != 2 {
                return fail(format!("--n0: expected 2 components, found {}", n0.len()));
            }
            let b = match f.b {
                Some(s) => Some(square("b", matrix_arg("b", s)?, &[2])?),
                None => None,
            };
            GroupFamily::Z2MinusIExt { a: mat(&[2])?, n0, b }
        }
        "hn-semidirect" => {
            let a = match f.matrix {
                Some(_) => mat(&[2])?,
                None => IntMatrix::scalar(2, -1),
            };
            GroupFamily::HnSemidirectZ { n: *need("n", &f.n, tag)?, a, k: f.k.unwrap_or(0), l: f.l.unwrap_or(0) }
        }
        other => return fail(format!("--family: unknown family {:?}", other)),
    };
    family.validate()?;
    Ok(family)
}

fn bound_of(c: &Common) -> Res<u64> {
    match c.bound {
        Some(0) => fail("--bound must be at least 1"),
        Some(b) => Ok(b),
        None => Ok(default_bound()),
    }
}

/// Parsed arguments resolve to one of these; `undecided` selects exit code 2.
struct Report {
    env: OutputEnvelope,
    text: String,
    undecided: bool,
}

fn envelope(result: Value, trace: Vec<String>, bound: u64) -> OutputEnvelope {
    OutputEnvelope { result, trace, version: VERSION.to_string(), bound }
}

fn spectrum_cmd(a: &GroupArgs) -> Res<Report> {
    let bound = bound_of(&a.common)?;
    let family = build_family(FamilyInput {
        family: &a.family,
        matrix: &a.matrix,
        n: a.n,
        n0: &a.n0,
        b: &a.b,
        k: a.k,
        l: a.l,
    })?;
    let c = classify_family(&family, bound)?;
    let text = format!("{}\ntrace: {}\n", c.spectrum, c.trace.join(" > "));
    Ok(Report {
        undecided: c.spectrum.is_undecided(),
        env: envelope(serde_json::to_value(&c.spectrum)?, c.trace, bound),
        text,
    })
}

fn load_automorphism(a: &AutoArgs) -> Res<(AutomorphismSpec, Vec<String>)> {
    if let Some(src) = &a.automorphism {
        let text = match src.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {}", path, e)))?,
            None => src.clone(),
        };
        let spec = AutomorphismSpec::from_json_str(&text)?;
        let report = spec.verify_automorphism();
        if !report.ok {
            return fail(format!("not an automorphism: {}", report.failure.unwrap_or_default()));
        }
        return Ok((spec.into_verified()?, vec!["automorphism-verified".into()]));
    }
    let (Some(fam), Some(w)) = (&a.family, &a.witness) else {
        return fail("give --automorphism, or --family with --witness");
    };
    let family = build_family(FamilyInput { family: fam, matrix: &a.matrix, n: a.n, n0: &a.n0, b: &a.b, k: a.k, l: a.l })?;
    let id: WitnessId = w.parse().map_err(|e: String| Failure(format!("--witness: {}", e)))?;
    Ok((witness(&family, id, a.param)?, vec![format!("witness-{}", id)]))
}

fn formula_step(f: &GroupFamily) -> &'static str {
    match f {
        GroupFamily::FreeAbelian { .. } => "abelian-formula",
        GroupFamily::ZnSemidirectZ { a } if crate::exactlin::finite_order(a).is_some() => "averaging-formula",
        _ => "addition-formula",
    }
}

fn rnumber_cmd(a: &AutoArgs) -> Res<Report> {
    let bound = bound_of(&a.common)?;
    let (spec, mut trace) = load_automorphism(a)?;
    let r = reidemeister_number(&spec)?;
    trace.push(formula_step(spec.family()).into());
    Ok(Report { text: format!("{}\n", r), env: envelope(serde_json::to_value(&r)?, trace, bound), undecided: false })
}

fn oracle_cmd(a: &OracleArgs) -> Res<Report> {
    let bound = bound_of(&a.auto.common)?;
    if a.radius == 0 {
        return fail("--radius must be at least 1");
    }
    let (spec, mut trace) = load_automorphism(&a.auto)?;
    let labels = label_classes(&spec, a.radius)?;
    trace.push("label-classes".into());
    let formula = reidemeister_number(&spec).ok();
    let result = json!({
        "class_count": labels.class_count,
        "complete": labels.complete,
        "ball_radius": labels.ball_radius,
        "formula": formula,
    });
    let text = format!(
        "{} classes on radius {} ({})\nformula: {}\n",
        labels.class_count,
        labels.ball_radius,
        if labels.complete { "stable" } else { "not stable" },
        formula.map(|r| r.to_string()).unwrap_or_else(|| "-".into())
    );
    Ok(Report { env: envelope(result, trace, bound), text, undecided: false })
}

fn decide_cmd(a: &DecideArgs) -> Res<Report> {
    let bound = bound_of(&a.common)?;
    let m = square("matrix", matrix_arg("matrix", &a.matrix)?, &[2])?;
    match &a.c {
        None => {
            let out = decide_system2(&m, bound)?;
            let (text, step, undecided) = match &out {
                System2Outcome::Witness(w) => (format!("witness M = {}\n", w.matrix()), "system2-witness", false),
                System2Outcome::NoneUpToBound { bound } => (format!("no witness with |m| <= {}\n", bound), "system2-bounded-search", true),
                System2Outcome::ProvenEmpty => ("no witness exists\n".to_string(), "system2-empty", false),
            };
            Ok(Report { env: envelope(serde_json::to_value(&out)?, vec![step.into()], bound), text, undecided })
        }
        Some(c) => {
            let c = vector_arg("c", c)?;
            if c.len() != 2 {
                return fail(format!("--c: expected 2 components, found {}", c.len()));
            }
            let out = decide_z3_eight(&m, &c, bound)?;
            let (text, step, undecided) = match &out {
                EightOutcome::Eight { q, .. } => (format!("Q = {}\n", q), "eight-witness".to_string(), false),
                EightOutcome::RInfinity { reason } => (format!("no Q exists ({})\n", reason), reason.clone(), false),
                EightOutcome::Undecided { bound } => (format!("no Q found with |m| <= {}\n", bound), "eight-bounded-search".into(), true),
            };
            Ok(Report { env: envelope(serde_json::to_value(&out)?, vec![step], bound), text, undecided })
        }
    }
}

fn tables_cmd(a: &TablesArgs) -> Res<Report> {
    let bound = bound_of(&a.common)?;
    let rows = table_rows(a.section.as_deref(), bound)?;
    let text = tables::render_text(&rows);
    let undecided = rows.iter().any(|r| r.computed.is_undecided());
    Ok(Report { env: envelope(serde_json::to_value(&rows)?, vec!["conclusion-tables".into()], bound), text, undecided })
}

/// Runs the program on `argv` (without the program name).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = std::iter::once("reidemeister".to_string()).chain(argv.into_iter().map(Into::into)).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: shown, stderr: String::new() },
                _ => Outcome { code: 1, stdout: String::new(), stderr: shown },
            };
        }
    };
    let (format, report) = match &cli.command {
        Command::Rnumber(a) => (a.common.format, rnumber_cmd(a)),
        Command::Spectrum(a) => (a.common.format, spectrum_cmd(a)),
        Command::Decide(a) => (a.common.format, decide_cmd(a)),
        Command::Tables(a) => (a.common.format, tables_cmd(a)),
        Command::Oracle(a) => (a.auto.common.format, oracle_cmd(a)),
    };
    match report {
        Err(Failure(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {}\n", msg) },
        Ok(r) => {
            let stdout = match format {
                Format::Json => serde_json::to_string_pretty(&r.env).expect("serializable envelope") + "\n",
                Format::Text => r.text,
            };
            Outcome { code: if r.undecided { 2 } else { 0 }, stdout, stderr: String::new() }
        }
    }
}
