use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = computable_chaos_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = stdout.write_all(result.render().as_bytes());
    let _ = stdout.flush();
    ExitCode::from(result.exit_code() as u8)
}
