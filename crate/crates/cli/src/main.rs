//! `omc`: build, inspect, export and render order-of-magnitude colormaps.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{
    BuildArgs, ExportArgs, ImportArgs, LookupArgs, ProfileArgs, RangesizeArgs, RenderArgs,
};
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "omc",
    version,
    about = "Order-of-magnitude colormaps for data spanning many decades"
)]
struct Cli {
    /// TOML file with one table per subcommand; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Print the effective settings and exit without doing anything.
    #[arg(long, global = true)]
    dry_run: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an OMC or OMC_sl colormap and write it as a structured file.
    #[command(allow_negative_numbers = true)]
    Build(BuildArgs),
    /// Render a time-height CSV as a log-colored scatterplot PNG.
    #[command(allow_negative_numbers = true)]
    Render(RenderArgs),
    /// Write a DeltaE, HSV, boundary or monotonicity profile as CSV.
    #[command(allow_negative_numbers = true)]
    Profile(ProfileArgs),
    /// Print the color of one value.
    #[command(allow_negative_numbers = true)]
    Lookup(LookupArgs),
    /// Print the range size of a low/high answer pair.
    #[command(allow_negative_numbers = true)]
    Rangesize(RangesizeArgs),
    /// Write a colormap as a native RGB list or structured JSON.
    #[command(allow_negative_numbers = true)]
    Export(ExportArgs),
    /// Read and validate a colormap file, optionally converting it.
    Import(ImportArgs),
}

fn run(cli: Cli) -> Result<String, CliError> {
    let config = cli.config.as_deref().map(config::load).transpose()?;
    let cfg = config.as_ref();
    let dry = cli.dry_run;
    match &cli.command {
        Command::Build(a) => commands::build(&config::merge(a, cfg, "build")?, dry),
        Command::Render(a) => commands::render(&config::merge(a, cfg, "render")?, dry),
        Command::Profile(a) => commands::profile(&config::merge(a, cfg, "profile")?, dry),
        Command::Lookup(a) => commands::lookup(&config::merge(a, cfg, "lookup")?, dry),
        Command::Rangesize(a) => commands::rangesize(&config::merge(a, cfg, "rangesize")?, dry),
        Command::Export(a) => commands::export(&config::merge(a, cfg, "export")?, dry),
        Command::Import(a) => commands::import(&config::merge(a, cfg, "import")?, dry),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
