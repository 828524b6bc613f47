use std::process::ExitCode;

use clap::Parser;
use moore_l::bernoulli::BernoulliCache;
use moore_l_cli::{cache, execute, Cli, Format, Status};

fn run(cli: &Cli) -> anyhow::Result<Status> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    if let Some(path) = &cli.cache_path {
        cache::load_into(path, BernoulliCache::global())?;
    }
    let outcome = execute(&cli.command)?;
    if let Some(path) = &cli.cache_path {
        cache::save_from(path, BernoulliCache::global())?;
    }
    match cli.format {
        Format::Table => {
            print!("{}", outcome.table);
            println!("status: {}", if outcome.document.status == Status::Pass { "pass" } else { "fail" });
        }
        Format::Json => println!("{}", outcome.document.to_json()),
    }
    Ok(outcome.document.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
