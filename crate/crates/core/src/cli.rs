//! Command-line front end: `check`, `prove`, `export-dot` and `show`.
//!
//! Exit codes for `check`: 0 refuted, 1 verified without goal, 2 step
//! failure, 3 parse, type or I/O error. `prove` exits 0 on a refutation,
//! 1 when none is found within the limits and 3 on bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::checker::{
    builtin_script, check_script, locate_problem, parse_script, print_script, CheckReport,
    ProblemSource, ProofScript, Verdict,
};
use crate::dot::DerivationGraph;
use crate::problem::Problem;
use crate::prover::{parse_hints, prove, Mode, ModeConfig, SearchLimits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_GOAL: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_STEP_FAILED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "erue",
    version,
    about = "Proof checker and bounded prover for higher-order RUE-resolution"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Replay a proof script against its problem.
    Check(CheckArgs),
    /// Search for a refutation of a problem file.
    Prove(ProveArgs),
    /// Write the derivation graph of a verified script in DOT syntax.
    ExportDot(ExportArgs),
    /// Print a problem, script or hint file in normal form.
    Show(ShowArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Ref1,
    Ref2,
}

impl Builtin {
    fn name(self) -> &'static str {
        match self {
            Builtin::Ref1 => "ref1",
            Builtin::Ref2 => "ref2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Args, Debug)]
pub struct ScriptSource {
    /// Script file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub script: Option<PathBuf>,
    /// One of the bundled reference scripts.
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: ScriptSource,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ProveArgs {
    /// Problem file.
    pub problem: PathBuf,
    /// First-order restricted mode.
    #[arg(long)]
    pub fo: bool,
    /// Binding templates, one `bind X := t` per line.
    #[arg(long)]
    pub hints: Option<PathBuf>,
    /// Let enumerated helpers take the literal's free variables.
    #[arg(long)]
    pub wide_bindings: bool,
    #[arg(long, default_value_t = 100_000)]
    pub max_clauses: usize,
    #[arg(long, default_value_t = 40)]
    pub max_weight: usize,
    /// Maximum derivation depth.
    #[arg(long, default_value_t = 64)]
    pub depth: usize,
    #[arg(long, default_value_t = 1)]
    pub helper_depth: usize,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub time: f64,
    /// Where to write the proof script; defaults to `<problem>.proof.ers`
    /// next to the problem.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub source: ScriptSource,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ShowArgs {
    /// `.erp` problem, `.ers` script or `.hints` file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Check(a) => cmd_check(&a, out),
        Command::Prove(a) => cmd_prove(&a, out),
        Command::ExportDot(a) => cmd_export_dot(&a, out),
        Command::Show(a) => cmd_show(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

pub struct Failure(i32, String);

fn input_error(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, msg.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_problem(name: &str, script_dir: Option<&Path>) -> Result<Problem, Failure> {
    let text = match locate_problem(name, script_dir) {
        Some(ProblemSource::File(p)) => read(&p)?,
        Some(ProblemSource::Bundled(t)) => t.to_string(),
        None => return Err(input_error(format!("problem `{name}` not found"))),
    };
    Problem::parse(&text).map_err(|e| input_error(format!("{name}: {e}")))
}

fn load_script(src: &ScriptSource) -> Result<(ProofScript, Problem), Failure> {
    let (text, dir, origin) = match (&src.builtin, &src.script) {
        (Some(b), _) => (
            builtin_script(b.name()).expect("bundled").to_string(),
            None,
            b.name().to_string(),
        ),
        (None, Some(p)) => (
            read(p)?,
            p.parent().map(Path::to_path_buf),
            p.display().to_string(),
        ),
        (None, None) => return Err(input_error("no script given")),
    };
    let script = parse_script(&text).map_err(|e| input_error(format!("{origin}: {e}")))?;
    let problem = load_problem(&script.problem, dir.as_deref())?;
    Ok((script, problem))
}

fn run_check(src: &ScriptSource) -> Result<CheckReport, Failure> {
    let (script, problem) = load_script(src)?;
    check_script(&script, &problem).map_err(input_error)
}

fn verdict_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Refuted => EXIT_OK,
        Verdict::NoGoal => EXIT_NO_GOAL,
        Verdict::Failed { .. } => EXIT_STEP_FAILED,
    }
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = run_check(&a.source)?;
    let text = match a.format {
        Format::Human => format!("{}{}", report.render_summary(), report.render_table()),
        Format::Machine => report.render_machine(),
    };
    let _ = out.write_all(text.as_bytes());
    Ok(verdict_code(&report.verdict))
}

pub fn cmd_prove(a: &ProveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let name = a.problem.to_string_lossy().to_string();
    let problem = load_problem(&name, None)?;
    let hints = match &a.hints {
        Some(p) => {
            parse_hints(&read(p)?).map_err(|e| input_error(format!("{}: {e}", p.display())))?
        }
        None => Vec::new(),
    };
    if !(a.time.is_finite() && a.time > 0.0) {
        return Err(input_error("limit `time` must be strictly positive"));
    }
    let limits = SearchLimits {
        max_generated: a.max_clauses,
        max_weight: a.max_weight,
        max_helper_depth: a.helper_depth,
        max_depth: a.depth,
        time: Duration::from_secs_f64(a.time),
    };
    let config = ModeConfig {
        mode: if a.fo {
            Mode::FirstOrder
        } else {
            Mode::HigherOrder
        },
        hints,
        free_var_args: a.wide_bindings,
    };
    let report = prove(&problem, &config, &limits).map_err(input_error)?;
    let _ = write!(out, "{report}");
    if !report.outcome.is_refutation() {
        return Ok(EXIT_NOT_FOUND);
    }
    let problem_ref = if a.problem.is_file() {
        fs::canonicalize(&a.problem)
            .unwrap_or_else(|_| a.problem.clone())
            .display()
            .to_string()
    } else {
        name.clone()
    };
    let script = report
        .script_for(&problem_ref)
        .expect("refutation has a script");
    let target = a
        .out
        .clone()
        .unwrap_or_else(|| default_script_path(&a.problem));
    write_file(&target, &print_script(&script))?;
    let _ = writeln!(out, "script: {}", target.display());
    Ok(EXIT_OK)
}

fn default_script_path(problem: &Path) -> PathBuf {
    let stem = problem
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "problem".into());
    problem.with_file_name(format!("{stem}.proof.ers"))
}

pub fn cmd_export_dot(a: &ExportArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = run_check(&a.source)?;
    if report.verdict != Verdict::Refuted {
        let code = verdict_code(&report.verdict).max(EXIT_STEP_FAILED);
        return Err(Failure(
            code,
            format!("script does not verify\n{}", report.render_summary()),
        ));
    }
    let dot = DerivationGraph::from_report(&report).to_dot();
    match &a.out {
        Some(p) => write_file(p, &dot)?,
        None => {
            let _ = out.write_all(dot.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_show(a: &ShowArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = match (&a.builtin, &a.file) {
        (Some(b), _) => {
            let s = parse_script(builtin_script(b.name()).expect("bundled"))
                .expect("bundled script parses");
            print_script(&s)
        }
        (None, Some(p)) => {
            let raw = read(p)?;
            let origin = p.display();
            match p.extension().and_then(|e| e.to_str()) {
                Some("erp") => Problem::parse(&raw)
                    .map_err(|e| input_error(format!("{origin}: {e}")))?
                    .to_text(),
                Some("ers") => print_script(
                    &parse_script(&raw).map_err(|e| input_error(format!("{origin}: {e}")))?,
                ),
                Some("hints") => {
                    let hs =
                        parse_hints(&raw).map_err(|e| input_error(format!("{origin}: {e}")))?;
                    hs.iter()
                        .map(|h| {
                            format!(
                                "bind {} := {}\n",
                                h.var,
                                crate::syntax::print_expr(&h.template)
                            )
                        })
                        .collect()
                }
                _ => {
                    return Err(input_error(format!(
                        "{origin}: unknown file kind (expected .erp, .ers or .hints)"
                    )))
                }
            }
        }
        (None, None) => return Err(input_error("no file given")),
    };
    let _ = out.write_all(text.as_bytes());
    Ok(EXIT_OK)
}
