//! Proof-script checking.
//!
//! A script names a problem file and lists steps `Cn = Rule(premises)`
//! together with the clause(s) each step is expected to produce. Replay
//! fails at the first step whose expectation no rule instance meets.

mod check;
mod script;

use std::path::{Path, PathBuf};

pub use check::{
    check_script, check_step, expected_clauses, CheckReport, ProofState, ScriptError, StepFailure,
    StepReport, StepStatus, Verdict, Witness, MAX_ITERATIONS,
};
pub use script::{parse_script, print_script, print_step, ProofScript, ProofStep};

use crate::problem::{Problem, COUNTEREXAMPLE, GROUND_INSTANCE, PROP_PAIR};

pub const REF1: &str = include_str!("../../data/ref1.ers");
pub const REF2: &str = include_str!("../../data/ref2.ers");

/// The bundled golden scripts, by name.
pub fn builtin_scripts() -> [(&'static str, &'static str); 2] {
    [("ref1", REF1), ("ref2", REF2)]
}

pub fn builtin_script(name: &str) -> Option<&'static str> {
    builtin_scripts()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t)
}

/// Text of a problem shipped with the crate, by file name.
pub fn bundled_problem(name: &str) -> Option<&'static str> {
    let file = Path::new(name).file_name()?.to_str()?;
    match file {
        "counterexample.erp" => Some(COUNTEREXAMPLE),
        "ground_instance.erp" => Some(GROUND_INSTANCE),
        "prop_pair.erp" => Some(PROP_PAIR),
        _ => None,
    }
}

/// Where the problem named by a script lives: relative to the script's
/// directory, else a bundled problem of the same file name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemSource {
    File(PathBuf),
    Bundled(&'static str),
}

pub fn locate_problem(name: &str, script_dir: Option<&Path>) -> Option<ProblemSource> {
    let direct = Path::new(name);
    let candidate = match script_dir {
        Some(d) if direct.is_relative() => d.join(direct),
        _ => direct.to_path_buf(),
    };
    if candidate.is_file() {
        return Some(ProblemSource::File(candidate));
    }
    bundled_problem(name).map(ProblemSource::Bundled)
}

/// Parses and checks one of the bundled scripts.
pub fn check_builtin(name: &str) -> Option<CheckReport> {
    let text = builtin_script(name)?;
    let script = parse_script(text).expect("bundled script parses");
    let problem =
        Problem::parse(bundled_problem(&script.problem)?).expect("bundled problem parses");
    Some(check_script(&script, &problem).expect("bundled script elaborates"))
}
