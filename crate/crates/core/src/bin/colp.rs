use std::io::{self, Write};

use clap::Parser;
use colp::cli::{run, Cli, EXIT_ANSWERS, EXIT_ERROR};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_ERROR } else { EXIT_ANSWERS });
        }
    };
    let stdin = io::stdin();
    let mut stdout = io::stdout().lock();
    let code = run(cli, &mut stdin.lock(), &mut stdout, &mut io::stderr());
    let _ = stdout.flush();
    std::process::exit(code);
}
