use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let threads = std::env::var("RAMSUM_THREADS").ok();
    let outcome = match ramsum_cli::configure_threads(threads.as_deref()) {
        Ok(()) => ramsum_cli::run(std::env::args()),
        Err(failure) => ramsum_cli::Outcome {
            code: failure.kind.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", failure.message),
        },
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
