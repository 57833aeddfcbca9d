use std::io::Write;
use std::process::ExitCode;

use conley_cli::{run_with_stdin, Status};

fn main() -> ExitCode {
    let (result, output, mut code) = run_with_stdin(std::env::args_os(), &mut std::io::stdin());
    for d in &result.diagnostics {
        eprintln!("{d}");
    }
    let text = result.render();
    match output.filter(|_| result.status == Status::Ok) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
                eprintln!("cannot write {}: {e}", path.display());
                code = 2;
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{text}");
        }
    }
    ExitCode::from(code as u8)
}
