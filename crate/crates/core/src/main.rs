mod cli;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
  let args = match cli::Cli::try_parse() {
    Ok(a) => a,
    Err(e) => {
      let code = if e.use_stderr() { cli::EXIT_CONFIG } else { 0 };
      let _ = e.print();
      return ExitCode::from(code);
    }
  };
  match cli::run(args) {
    Ok(code) => ExitCode::from(code),
    Err(e) => {
      eprintln!("error: {e}");
      ExitCode::from(cli::exit_code(&e))
    }
  }
}
