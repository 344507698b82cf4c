//! The `spectra` command line.
//!
//! [`run`] is a pure function of its arguments; `main` only forwards the
//! process arguments and prints the [`Outcome`].
//!
//! Exit codes: 0 success or `true`, 1 `false` or no result, 2 input error,
//! 3 failed check.

pub mod chain_text;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spectra_core::algebra::IdempotentSpec;
use spectra_core::axioms::{check_saturation_axioms, LiteralSet};
use spectra_core::oracle::{self, check_density_sandwich, check_inequality_suite, divisor_pairs, saturation_fuzz};
use spectra_core::saturated::Form;
use spectra_core::text::{eval_steinitz, parse_steinitz};
use spectra_core::{
    embeds_as_approximative_corner, isomorphic, realize, spectrum_of_chain, AlgebraDescriptor, Error,
    PositiveRational, Report, SaturatedSet, Steinitz,
};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "spectra", version, about = "Steinitz numbers, saturated sets and spectra of locally matrix algebras")]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Steinitz numbers
    #[command(subcommand)]
    Num(NumCommand),
    /// Saturated sets
    #[command(subcommand)]
    Set(SetCommand),
    /// Algebra descriptors and chains
    #[command(subcommand)]
    Alg(AlgCommand),
    /// Verification suites over the reference corpus
    Check(CheckArgs),
}

#[derive(Subcommand, Debug)]
enum NumCommand {
    /// Evaluate an expression with rational coefficients, e.g. `(1/2)*P^1`
    Eval { expr: String },
    /// Reprint a Steinitz number in canonical form
    Format { expr: String },
}

#[derive(Subcommand, Debug)]
enum SetCommand {
    /// Is ELEMENT a member of SET?
    Member { set: String, element: String },
    /// Are the canonical forms equal?
    Eq { left: String, right: String },
    /// Is LEFT a subset of RIGHT?
    Subset { left: String, right: String },
    /// Disjoint, Equal, LeftInRight or RightInLeft
    Compare { left: String, right: String },
    /// r_t(b) = max { i : i*t/b in SET }
    Rsub { set: String, element: String, b: u64 },
    /// Density of SET measured at ELEMENT
    Density { set: String, element: String },
    /// Largest element, if any
    Max { set: String },
    /// Kind and canonical form
    Classify { set: String },
}

#[derive(Subcommand, Debug)]
enum AlgCommand {
    /// Is the algebra unital?
    Unital { alg: String },
    /// Are the two algebras isomorphic?
    Iso { left: String, right: String },
    /// Does B embed in A as an approximative corner?
    Embed { b: String, a: String },
    /// Spectrum of a descriptor or of a chain given as JSON
    Spectrum { input: String },
    /// Chain of matrix algebras realizing a set or descriptor
    Realize {
        input: String,
        /// Number of stages for the default divisor chain
        #[arg(long, default_value_t = spectra_core::chain::DEFAULT_STAGES)]
        stages: usize,
        /// Explicit divisor chain, comma separated
        #[arg(long, value_delimiter = ',')]
        divisors: Option<Vec<u64>>,
    },
    /// M_inf(A)
    Minf { alg: String },
    /// M_n(A)
    Matover { alg: String, n: u64 },
    /// Corner eAe for an idempotent of relative range E (`a/b`)
    Corner { alg: String, e: String },
}

#[derive(Args, Debug)]
struct CheckArgs {
    suite: Suite,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Divisor bound for the inequality suites
    #[arg(long, default_value_t = 210)]
    bound: u64,
    /// Sampled members per set for the saturation suite
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Check the axioms on this literal finite set instead of the corpus
    #[arg(long = "member", value_name = "EXPR")]
    members: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    All,
    Saturation,
    Inequalities,
    Roundtrip,
}

/// A command result: its plain and JSON renderings plus the exit code.
struct Reply {
    text: String,
    json: Value,
    code: i32,
}

impl Reply {
    fn decision(v: bool) -> Self {
        Self {
            text: v.to_string(),
            json: json!({ "result": v }),
            code: if v { EXIT_TRUE } else { EXIT_FALSE },
        }
    }

    fn value(v: impl ToString) -> Self {
        let v = v.to_string();
        Self {
            json: json!({ "result": v }),
            text: v,
            code: EXIT_TRUE,
        }
    }

    fn report(r: &Report) -> Self {
        let lines: Vec<Value> = r
            .lines
            .iter()
            .map(|l| json!({ "check": l.check, "passed": l.passed, "witness": l.witness }))
            .collect();
        Self {
            text: r.to_string().trim_end().to_string(),
            json: json!({ "passed": r.passed(), "lines": lines }),
            code: if r.passed() { EXIT_TRUE } else { EXIT_CHECK },
        }
    }
}

struct InputError {
    message: String,
    position: Option<usize>,
    expected: Vec<&'static str>,
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        let (position, expected) = match &e {
            Error::Parse(p) => (Some(p.position), p.expected.clone()),
            _ => (None, Vec::new()),
        };
        Self {
            message: e.to_string(),
            position,
            expected,
        }
    }
}

impl From<String> for InputError {
    fn from(message: String) -> Self {
        Self {
            message,
            position: None,
            expected: Vec::new(),
        }
    }
}

type CmdResult = Result<Reply, InputError>;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_TRUE,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.command {
        Command::Num(c) => num(c),
        Command::Set(c) => set(c),
        Command::Alg(c) => alg(c),
        Command::Check(c) => check(c),
    };
    match (result, cli.json) {
        (Ok(r), false) => Outcome {
            code: r.code,
            stdout: format!("{}\n", r.text),
            stderr: String::new(),
        },
        (Ok(r), true) => Outcome {
            code: r.code,
            stdout: format!("{}\n", r.json),
            stderr: String::new(),
        },
        (Err(e), false) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message),
        },
        (Err(e), true) => Outcome {
            code: EXIT_INPUT,
            stdout: format!(
                "{}\n",
                json!({ "error": { "message": e.message, "position": e.position, "expected": e.expected } })
            ),
            stderr: String::new(),
        },
    }
}

fn parse_set(text: &str) -> Result<SaturatedSet, InputError> {
    Ok(text.parse()?)
}

fn parse_alg(text: &str) -> Result<AlgebraDescriptor, InputError> {
    Ok(text.parse()?)
}

fn num(c: NumCommand) -> CmdResult {
    match c {
        NumCommand::Eval { expr } => Ok(Reply::value(eval_steinitz(&expr)?)),
        NumCommand::Format { expr } => Ok(Reply::value(parse_steinitz(&expr)?)),
    }
}

fn element(text: &str) -> Result<Steinitz, InputError> {
    Ok(eval_steinitz(text)?)
}

fn kind(set: &SaturatedSet) -> &'static str {
    match set.form() {
        Form::Segment(_) => "segment",
        Form::AllNaturals => "naturals",
        Form::InfType(_) => "infinite-type",
        Form::FiniteType { strict: false, .. } => "finite-type",
        Form::FiniteType { strict: true, .. } => "finite-type-strict",
    }
}

fn set(c: SetCommand) -> CmdResult {
    match c {
        SetCommand::Member { set, element: t } => {
            let (set, t) = (parse_set(&set)?, element(&t)?);
            Ok(Reply::decision(set.contains(&t)))
        }
        SetCommand::Eq { left, right } => Ok(Reply::decision(parse_set(&left)?.equals_formal(&parse_set(&right)?))),
        SetCommand::Subset { left, right } => Ok(Reply::decision(
            parse_set(&left)?.compare_inclusion(&parse_set(&right)?).left_subset(),
        )),
        SetCommand::Compare { left, right } => {
            Ok(Reply::value(parse_set(&left)?.compare_inclusion(&parse_set(&right)?)))
        }
        SetCommand::Rsub { set, element: t, b } => Ok(Reply::value(parse_set(&set)?.r_sub(&element(&t)?, b)?)),
        SetCommand::Density { set, element: t } => Ok(Reply::value(parse_set(&set)?.density(&element(&t)?)?)),
        SetCommand::Max { set } => Ok(match parse_set(&set)?.max_element() {
            Some(m) => Reply::value(m),
            None => Reply {
                text: "none".into(),
                json: json!({ "result": null }),
                code: EXIT_FALSE,
            },
        }),
        SetCommand::Classify { set } => {
            let set = parse_set(&set)?;
            Ok(Reply {
                text: format!("{} {set}", kind(&set)),
                json: json!({ "kind": kind(&set), "set": set.to_string() }),
                code: EXIT_TRUE,
            })
        }
    }
}

fn looks_like_algebra(text: &str) -> bool {
    let t = text.trim_start();
    ["alg", "unital", "mat"].iter().any(|p| t.starts_with(p))
}

fn parse_relative_rank(text: &str) -> Result<IdempotentSpec, InputError> {
    let bad = || InputError::from(format!("idempotent must be a/b with 0 < a <= b, got `{text}`"));
    let (a, b) = match text.split_once('/') {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    Ok(IdempotentSpec::from_rational(PositiveRational::new(a, b).map_err(|_| bad())?)?)
}

fn alg(c: AlgCommand) -> CmdResult {
    match c {
        AlgCommand::Unital { alg } => Ok(Reply::decision(parse_alg(&alg)?.is_unital())),
        AlgCommand::Iso { left, right } => Ok(Reply::decision(isomorphic(&parse_alg(&left)?, &parse_alg(&right)?))),
        AlgCommand::Embed { b, a } => Ok(Reply::decision(embeds_as_approximative_corner(
            &parse_alg(&b)?,
            &parse_alg(&a)?,
        ))),
        AlgCommand::Spectrum { input } => {
            let spectrum = if input.trim_start().starts_with('{') {
                spectrum_of_chain(&chain_text::parse(&input)?)?
            } else {
                parse_alg(&input)?.spectrum().clone()
            };
            Ok(Reply::value(spectrum))
        }
        AlgCommand::Realize {
            input,
            stages,
            divisors,
        } => {
            let set = if looks_like_algebra(&input) {
                parse_alg(&input)?.spectrum().clone()
            } else {
                parse_set(&input)?
            };
            let chain = realize(&set, divisors.as_deref(), stages)?;
            Ok(Reply {
                text: chain_text::format(&chain),
                json: chain_text::to_value(&chain),
                code: EXIT_TRUE,
            })
        }
        AlgCommand::Minf { alg } => Ok(Reply::value(parse_alg(&alg)?.m_infinity()?)),
        AlgCommand::Matover { alg, n } => Ok(Reply::value(parse_alg(&alg)?.matrix_over(n)?)),
        AlgCommand::Corner { alg, e } => Ok(Reply::value(parse_alg(&alg)?.corner(&parse_relative_rank(&e)?)?)),
    }
}

/// Folds a sub-report into one line per corpus set.
fn summarize(into: &mut Report, suite: &str, label: &str, sub: Report) {
    match sub.first_failure() {
        Some(f) => into.push(suite, false, format!("set={label} {}: {}", f.check, f.witness)),
        None => into.push(suite, true, format!("set={label}")),
    }
}

fn check(args: CheckArgs) -> CmdResult {
    if args.bound == 0 || args.trials == 0 {
        return Err("--bound and --trials must be positive".to_string().into());
    }
    if !args.members.is_empty() {
        if !matches!(args.suite, Suite::All | Suite::Saturation) {
            return Err("--member only applies to the saturation suite".to_string().into());
        }
        let members = args.members.iter().map(|m| element(m)).collect::<Result<Vec<_>, _>>()?;
        let literal = LiteralSet(members.clone());
        return Ok(Reply::report(&check_saturation_axioms(&literal, &members)));
    }
    let corpus = oracle::corpus();
    let mut report = Report::new();
    let wants = |s: Suite| args.suite == Suite::All || args.suite == s;
    for (label, set) in &corpus {
        let label = label.replace(' ', "");
        if wants(Suite::Saturation) {
            let sub = saturation_fuzz(set, args.trials, args.seed)?;
            summarize(&mut report, "saturation", &label, sub);
        }
        if wants(Suite::Inequalities) && set.base().is_some() {
            let t = set.witness_member();
            let mut sub = check_inequality_suite(set, &t, &divisor_pairs(&t, args.bound), 4)?;
            if !set.is_infinite_type() {
                sub.extend(check_density_sandwich(set, &t, &t.enumerate_omega(args.bound), 4)?);
            }
            summarize(&mut report, "inequalities", &label, sub);
        }
        if wants(Suite::Roundtrip) {
            summarize(&mut report, "roundtrip", &label, roundtrip(set)?);
        }
    }
    Ok(Reply::report(&report))
}

fn roundtrip(set: &SaturatedSet) -> Result<Report, InputError> {
    let mut r = Report::new();
    let printed = set.to_string();
    let reparsed = parse_set(&printed)?;
    r.push("set-text", reparsed == *set && reparsed.to_string() == printed, printed.clone());
    let alg = AlgebraDescriptor::from_spectrum(set.clone());
    let alg_text = alg.to_string();
    r.push("alg-text", parse_alg(&alg_text)?.to_string() == alg_text, alg_text);
    let chain = realize(set, None, spectra_core::chain::DEFAULT_STAGES)?;
    let chain_json = chain_text::format(&chain);
    let back = chain_text::parse(&chain_json)?;
    r.push("chain-text", back == chain, chain_json);
    let spectrum = spectrum_of_chain(&back)?;
    r.push("realize", spectrum.equals_formal(set), spectrum.to_string());
    Ok(r)
}
