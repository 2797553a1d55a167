use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let code = ddf_cli::run(std::env::args_os(), &mut out, &mut stderr.lock());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
