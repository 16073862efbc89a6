mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::CliResult;
use output::OutputRecord;

fn emit(rec: &OutputRecord, format: Format) {
    match format {
        Format::Text => print!("{}", rec.to_text()),
        Format::Machine => println!("{}", rec.to_machine()),
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    let (rec, ok) = match &cli.command {
        Command::Zeta(a) => (Some(commands::cmd_zeta(a)?), true),
        Command::Divergence(a) => (Some(commands::cmd_divergence(a)?), true),
        Command::Fit(a) => (Some(commands::cmd_fit(a)?), true),
        Command::PlotCumulant(a) => {
            let rec = commands::cmd_plot_cumulant(a)?;
            (a.out.is_some().then_some(rec), true)
        }
        Command::Table(a) => (Some(commands::cmd_table(a)?), true),
        Command::Verify(a) => {
            let (rec, ok) = commands::cmd_verify(a)?;
            (Some(rec), ok)
        }
        Command::Sample(a) => {
            let rec = commands::cmd_sample(a)?;
            (a.out.is_some().then_some(rec), true)
        }
    };
    if let Some(rec) = rec {
        emit(&rec, cli.format);
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("zetadiv: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
