use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kakeya_cli::{exit_code, run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    if let Some(threads) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot start {threads} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cfg) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
