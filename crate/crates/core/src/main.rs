use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nilzeta::cli::{self, RunConfig};

/// Exact Lefschetz/Nielsen numbers and dynamical zeta functions for
/// affine self-maps of infra-nilmanifolds, from matrix-level data.
#[derive(Parser)]
#[command(name = "nilzeta", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate input data (group tables, lattice, torsion).
    Validate {
        /// "catalog:<name>" or a JSON file path.
        input: String,
        /// Promote warn-level checks (torsion) to failures.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
    /// Table of L(f^k), N(f^k) and L(f+^k) for k = 1..kmax.
    Numbers {
        input: String,
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
        /// Also run the sign diagnostics and include them in the report.
        #[arg(long)]
        checks: bool,
        /// Evaluate holonomy sums concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Eigenvalue census, character table and positive part.
    Split {
        input: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
    },
    /// Certified Lefschetz and Nielsen zeta functions.
    Zeta {
        input: String,
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        checks: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Published example data.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List catalog entries.
    List,
    /// Print one entry in the input JSON format.
    Show { name: String },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut out = std::io::stdout();
    let result = match &args.command {
        Command::Validate {
            input,
            strict,
            json,
        } => {
            let mut config = RunConfig::new(input);
            config.strict = *strict;
            config.json = *json;
            cli::cmd_validate(&config, &mut out)
        }
        Command::Numbers {
            input,
            map,
            kmax,
            json,
            strict,
            checks,
            parallel,
        } => {
            let mut config = RunConfig::new(input);
            config.map_name = Some(map.clone());
            config.kmax = (*kmax).max(1);
            config.json = *json;
            config.strict = *strict;
            config.checks = *checks;
            config.parallel = *parallel;
            cli::cmd_numbers(&config, &mut out)
        }
        Command::Split {
            input,
            map,
            json,
            strict,
        } => {
            let mut config = RunConfig::new(input);
            config.map_name = Some(map.clone());
            config.json = *json;
            config.strict = *strict;
            cli::cmd_split(&config, &mut out)
        }
        Command::Zeta {
            input,
            map,
            kmax,
            json,
            strict,
            checks,
            parallel,
        } => {
            let mut config = RunConfig::new(input);
            config.map_name = Some(map.clone());
            config.kmax = (*kmax).max(1);
            config.json = *json;
            config.strict = *strict;
            config.checks = *checks;
            config.parallel = *parallel;
            cli::cmd_zeta(&config, &mut out)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => cli::cmd_catalog_list(&mut out),
            CatalogAction::Show { name } => cli::cmd_catalog_show(name, &mut out),
        },
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            let _ = writeln!(std::io::stderr(), "error: {err}");
            ExitCode::from(cli::exit_code_for(&err) as u8)
        }
    }
}
