use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = msforms_cli::run(std::env::args_os());
    // Nothing useful remains to do if stdout or stderr is closed.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
