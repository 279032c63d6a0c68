//! The `ramsum` command line: argument parsing, dispatch and output
//! formatting. [`run`] is the whole program minus process plumbing.

pub mod args;
mod exec;
mod output;

use clap::Parser;
use serde_json::json;

use args::{Cli, Format};

/// Exit status classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Success = 0,
    Usage = 1,
    Domain = 2,
    Scale = 3,
    Verification = 4,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn label(self) -> &'static str {
        match self {
            ExitKind::Success => "ok",
            ExitKind::Usage => "usage",
            ExitKind::Domain => "domain",
            ExitKind::Scale => "scale",
            ExitKind::Verification => "verification",
        }
    }
}

/// A failed command: its exit class and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: ExitKind,
    pub message: String,
}

impl Failure {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        Failure {
            kind: ExitKind::Usage,
            message: message.into(),
        }
    }
}

impl From<ramsum::Error> for Failure {
    fn from(err: ramsum::Error) -> Self {
        use ramsum::Error as E;
        let kind = match &err {
            E::Parse { .. } => ExitKind::Usage,
            E::Domain(_) => ExitKind::Domain,
            E::Scale(_) | E::Overflow(_) => ExitKind::Scale,
            E::Inconsistent(_) => ExitKind::Verification,
        };
        Failure {
            kind,
            message: err.to_string(),
        }
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Caps the global rayon pool at `RAMSUM_THREADS` workers when set.
pub fn configure_threads(value: Option<&str>) -> Result<(), Failure> {
    let Some(value) = value else { return Ok(()) };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("RAMSUM_THREADS must be a positive integer, got '{value}'")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn wants_json(argv: &[String]) -> bool {
    argv.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
        || argv.iter().any(|a| a == "--format=json")
}

fn failure_outcome(failure: Failure, json_mode: bool) -> Outcome {
    let code = failure.kind.code();
    if json_mode {
        let body = json!({ "error": { "kind": failure.kind.label(), "message": failure.message } });
        Outcome {
            code,
            stdout: format!("{body}\n"),
            stderr: String::new(),
        }
    } else {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {}\n", failure.message),
        }
    }
}

/// Parses `argv` (program name first), executes, and formats the result.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let json_mode = wants_json(&argv);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: err.to_string(),
                    stderr: String::new(),
                };
            }
            if json_mode {
                let message = err.render().to_string();
                let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
                return failure_outcome(Failure::usage(first), true);
            }
            return Outcome {
                code: ExitKind::Usage.code(),
                stdout: String::new(),
                stderr: err.render().to_string(),
            };
        }
    };
    let format = cli.format;
    match exec::execute(cli.command) {
        Ok(result) => {
            let code = if result.passed() {
                ExitKind::Success.code()
            } else {
                ExitKind::Verification.code()
            };
            match output::render(&result, format) {
                Ok(stdout) => Outcome {
                    code,
                    stdout,
                    stderr: String::new(),
                },
                Err(failure) => failure_outcome(failure, format == Format::Json),
            }
        }
        Err(failure) => failure_outcome(failure, format == Format::Json),
    }
}
