//! Command-line front end: argument parsing, dispatch and reports.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::calculus::{self, InvolutionSpec};
use crate::contraction;
use crate::error::{Error, Result};
use crate::presentations::{self, enumerate_basis, Presentation};
use crate::report::CheckReport;
use crate::rewrite::{set_step_limit, DEFAULT_STEP_LIMIT};
use crate::supermatrix::{self, GradedOperator, SignVariant, PINNED_RTT_VARIANT};

/// Environment variable holding the default rewrite step limit.
pub const STEPS_ENV: &str = "SUPERALG_STEPS";

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "superalg", version, about = "Exact computations in graded quantum superspaces")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Rewrite step limit per normalization.
    #[arg(long, global = true)]
    steps: Option<usize>,

    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of an expression.
    Normalize {
        expr: String,
        /// Built-in presentation id or presentation file.
        #[arg(long, default_value = "superspace_h")]
        algebra: String,
    },
    /// Exterior differential in the de Rham complex.
    Diff { expr: String },
    /// Partial derivative with respect to x, th1 or th2.
    Partial { var: String, expr: String },
    /// Star involution.
    Star {
        expr: String,
        #[arg(long, default_value = "derham_h")]
        algebra: String,
    },
    /// Irreducible words by degree.
    Basis {
        #[arg(long, default_value = "superspace_h")]
        algebra: String,
        #[arg(long, default_value_t = 5)]
        degree: usize,
    },
    /// Contraction of the q-deformed relations.
    Contract {
        /// Targets; all of them when omitted.
        targets: Vec<String>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a machine check.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(value_enum)]
    which: CheckKind,
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    variant: Option<SignVariant>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Ybe,
    Rtt,
    Rhat,
    Coaction,
    Confluence,
    Dsquare,
    Leibniz,
    Duality,
    Derivatives,
    Star,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisLevel {
    pub degree: usize,
    pub count: usize,
    pub words: Vec<String>,
}

/// Machine-readable outcome of one invocation.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub step_limit: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<BasisLevel>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    fn new(command: Vec<String>, step_limit: usize) -> Self {
        Report {
            schema: SCHEMA,
            command,
            algebra: None,
            sign_variant: None,
            seed: None,
            step_limit,
            passed: true,
            result: None,
            basis: Vec::new(),
            checks: Vec::new(),
            timing_ms: None,
        }
    }

    fn push(&mut self, check: CheckReport) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(r) = &self.result {
            out.push_str(r);
            out.push('\n');
        }
        for level in &self.basis {
            out.push_str(&format!("degree {}: {} words\n", level.degree, level.count));
            for w in &level.words {
                out.push_str(&format!("  {w}\n"));
            }
        }
        for c in &self.checks {
            if c.passed {
                out.push_str(&format!("{}: PASS ({} checked)\n", c.check, c.checked));
            } else {
                out.push_str(&format!("{}: FAIL ({} of {} failed)\n", c.check, c.failed, c.checked));
            }
            for w in &c.witnesses {
                out.push_str(&format!("  {}: {}\n", w.label, w.residue));
            }
            for n in &c.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time: {ms} ms\n"));
        }
        out
    }
}

/// Captured result of [`run`].
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::UnknownGenerator(_)
        | Error::UnknownPresentation(_)
        | Error::Presentation(_)
        | Error::Rule { .. }
        | Error::Domain(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn resolve_steps(flag: Option<usize>) -> std::result::Result<usize, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(STEPS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{STEPS_ENV} must be a positive integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_STEP_LIMIT),
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code: 2 }
            };
        }
    };
    let steps = match resolve_steps(cli.steps) {
        Ok(s) => s,
        Err(msg) => {
            return Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: 2 }
        }
    };
    set_step_limit(steps);
    let echo = args
        .iter()
        .skip(1)
        .filter(|a| *a != "--timing")
        .cloned()
        .collect();
    let start = Instant::now();
    let mut report = Report::new(echo, steps);
    if let Err(e) = execute(cli.command, &mut report) {
        return Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        };
    }
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let stdout = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.passed { 0 } else { 1 },
    }
}

fn execute(command: Command, report: &mut Report) -> Result<()> {
    match command {
        Command::Normalize { expr, algebra } => {
            let p = presentations::resolve(&algebra)?;
            report.algebra = Some(p.name.clone());
            report.result = Some(p.normalize(&p.parse(&expr)?)?.to_string());
        }
        Command::Diff { expr } => {
            let p = presentations::build("derham_h")?;
            report.algebra = Some(p.name.clone());
            report.result = Some(calculus::differentiate(&p.parse(&expr)?)?.to_string());
        }
        Command::Partial { var, expr } => {
            let p = presentations::build("weyl_h")?;
            report.algebra = Some(p.name.clone());
            report.result = Some(calculus::partial(&var, &p.parse(&expr)?)?.to_string());
        }
        Command::Star { expr, algebra } => {
            let p = presentations::build(&algebra)?;
            let spec = InvolutionSpec::star(&algebra)?;
            report.algebra = Some(p.name.clone());
            report.result = Some(calculus::star_apply(&p.parse(&expr)?, &p, &spec)?.to_string());
        }
        Command::Basis { algebra, degree } => {
            let p = presentations::resolve(&algebra)?;
            report.algebra = Some(p.name.clone());
            for d in 0..=degree {
                let words: Vec<String> = enumerate_basis(&p, d)
                    .iter()
                    .map(|w| w.display(p.table()).to_string())
                    .collect();
                report.basis.push(BasisLevel { degree: d, count: words.len(), words });
            }
        }
        Command::Contract { targets, trials, seed } => {
            report.seed = Some(seed);
            let all = targets.is_empty();
            let targets: Vec<String> = if all {
                contraction::TARGETS.iter().map(|t| t.to_string()).collect()
            } else {
                targets
            };
            for t in &targets {
                report.push(contraction::contraction_check(t)?);
            }
            if all {
                report.push(contraction::duality_transport_check(trials, seed, 3)?);
            }
        }
        Command::Check(args) => check(args, report)?,
    }
    Ok(())
}

/// The R-matrix: from a presentation file's `[matrix]` section when one is
/// given, otherwise the built-in one.
fn r_matrix_for(algebra: Option<&Presentation>) -> Result<GradedOperator> {
    match algebra.and_then(|p| p.matrix.clone().map(|m| (p, m))) {
        Some((p, rows)) => GradedOperator::from_rows(p.table(), rows),
        None => supermatrix::r_matrix(&supermatrix::parameter_table()),
    }
}

fn confluence_report(p: &Presentation, max_len: usize) -> Result<CheckReport> {
    let c = presentations::confluence(p, max_len)?;
    let mut report = CheckReport::new(format!("confluence ({})", p.name));
    for _ in 0..c.checked.saturating_sub(c.failures.len()) {
        report.pass();
    }
    for f in &c.failures {
        report.fail(f.word.display(p.table()).to_string(), f.describe(&p.rules));
    }
    Ok(report)
}

/// Presentations covered by the default confluence check.
pub const CONFLUENCE_DEFAULT: &[&str] = &[
    "superspace_h",
    "exterior_hp",
    "derham_h",
    "weyl_h",
    "matrix_bialgebra",
    "derham_q",
    "weyl_q",
];

fn check(args: CheckArgs, report: &mut Report) -> Result<()> {
    let file = match &args.algebra {
        Some(a) => Some(presentations::resolve(a)?),
        None => None,
    };
    report.algebra = args.algebra.clone();
    report.sign_variant = Some(PINNED_RTT_VARIANT.to_string());
    match args.which {
        CheckKind::Ybe => {
            report.push(supermatrix::check_ybe(&r_matrix_for(file.as_deref())?)?);
        }
        CheckKind::Rtt => {
            let variant = args.variant.unwrap_or(PINNED_RTT_VARIANT);
            report.sign_variant = Some(variant.to_string());
            let bialg = presentations::build("matrix_bialgebra")?;
            let r = r_matrix_for(file.as_deref())?;
            report.push(supermatrix::check_rtt(&r, &bialg, variant)?);
        }
        CheckKind::Rhat => {
            let r = r_matrix_for(file.as_deref())?;
            let space = presentations::build("superspace_h")?;
            report.push(supermatrix::check_rhat_superspace(&r, &space)?);
            let derham = presentations::build("derham_h")?;
            report.push(supermatrix::check_rhat_calculus(&r, &derham)?);
        }
        CheckKind::Coaction => {
            let targets = match &args.algebra {
                Some(a) => vec![a.as_str()],
                None => vec!["superspace_h", "exterior_hp", "derham_h"],
            };
            for t in targets {
                report.push(supermatrix::check_coaction(t)?);
            }
        }
        CheckKind::Confluence => {
            let max_len = args.degree.unwrap_or(3);
            match file {
                Some(p) => report.push(confluence_report(&p, max_len)?),
                None => {
                    for id in CONFLUENCE_DEFAULT {
                        report.push(confluence_report(&*presentations::build(id)?, max_len)?);
                    }
                }
            }
        }
        CheckKind::Dsquare => {
            require_algebra(&args, "derham_h")?;
            report.push(calculus::dsquare_check(args.degree.unwrap_or(6))?);
        }
        CheckKind::Leibniz => {
            require_algebra(&args, "derham_h")?;
            report.seed = Some(args.seed);
            let trials = args.trials.unwrap_or(200);
            report.push(calculus::leibniz_check(trials, args.seed, args.degree.unwrap_or(4))?);
        }
        CheckKind::Duality => {
            require_algebra(&args, "derham_h")?;
            report.push(calculus::duality_check(args.degree.unwrap_or(5))?);
        }
        CheckKind::Derivatives => {
            require_algebra(&args, "weyl_h")?;
            report.push(calculus::derivative_algebra_check(args.degree.unwrap_or(5))?);
        }
        CheckKind::Star => {
            let targets = match &args.algebra {
                Some(a) => vec![a.as_str()],
                None => vec!["superspace_h", "derham_h", "weyl_h"],
            };
            for t in targets {
                let p = presentations::build(t)?;
                report.push(calculus::star_relation_check(&p, &InvolutionSpec::star(t)?)?);
            }
        }
    }
    Ok(())
}

fn require_algebra(args: &CheckArgs, expected: &str) -> Result<()> {
    match &args.algebra {
        Some(a) if a != expected => Err(Error::Domain(format!(
            "this check runs on {expected}, not `{a}`"
        ))),
        _ => Ok(()),
    }
}
