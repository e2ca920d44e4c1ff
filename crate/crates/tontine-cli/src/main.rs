use std::process::exit;

use clap::Parser;

use tontine_cli::{configure_thread_pool, run, Cli, EXIT_IO};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successes; anything else is a usage
            // error, which counts as a parse failure
            let code = if e.use_stderr() { EXIT_IO } else { 0 };
            let _ = e.print();
            exit(code);
        }
    };
    configure_thread_pool();
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    let code = run(cli, &mut stdout, &mut stderr);
    exit(code);
}
