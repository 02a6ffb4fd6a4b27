mod args;
mod commands;
mod render;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, ModeArg};
use commands::EXIT_ERROR;

fn run(cli: &Cli) -> orbitc_core::Result<commands::Outcome> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Classify { elements } => commands::classify(elements),
        Command::Decide { elements, verify, wright } => commands::decide(elements, *verify, *wright, cfg),
        Command::Sweep { system, len, verify } => commands::sweep(system, *len, *verify, cfg),
        Command::ExploreOpen { n, variant } => commands::explore(*n, *variant, cfg),
        Command::Wright { elements } => commands::wright(elements, cfg),
        Command::GroupDecide { elements } => commands::group(elements),
        Command::MinPower { element } => commands::power(element),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    orbitc_core::par::set_parallel(true);
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = render::emit(&out.rendered, cli.config.format, cli.config.mode == ModeArg::Exact) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_ERROR);
                }
            }
            for d in &out.diagnostics {
                eprintln!("orbitc: {d}");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
