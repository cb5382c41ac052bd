use std::io::{stderr, stdin, stdout, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = stdout().lock();
    let code = smig::cli::run(std::env::args_os(), &mut stdin().lock(), &mut out, &mut stderr().lock());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
