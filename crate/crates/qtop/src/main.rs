use std::process::ExitCode;

use clap::Parser;

use qtop::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: --threads ignored: {e}");
        }
    }
    let result = run(&cli).and_then(|out| {
        match &cli.output {
            Some(path) => std::fs::write(path, &out.json)?,
            None => print!("{}", out.json),
        }
        Ok::<_, CliError>(out)
    });
    match result {
        Ok(out) => {
            for n in &out.notes {
                eprintln!("{n}");
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
