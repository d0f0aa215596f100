use std::io;
use std::process::ExitCode;

use qlogic::cli::{run, TOL_ENV};

fn main() -> ExitCode {
    let tol = std::env::var(TOL_ENV).ok();
    let code = run(
        std::env::args_os(),
        tol.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
