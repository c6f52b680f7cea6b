use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use klstab_cli::{run, thread_cap, Cli};

fn execute(cli: &Cli) -> anyhow::Result<()> {
    let mut stdout = io::stdout().lock();
    run(cli, &mut stdout)?;
    stdout.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thread_cap().and_then(|cap| match cap {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(|| execute(&cli)),
        None => execute(&cli),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
