use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::commands::{
    cmd_andk, cmd_export, cmd_protocol, cmd_verify, AndkSource, Builtin, InputSelection,
    ProtocolRequest,
};
use super::config::{CampaignConfig, KRange, OutputFormat};
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "hnof", version, about = "Hellinger-volume and NOF protocol verifier")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Master seed for all random campaigns.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Trials per campaign.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub trials: usize,
    /// Player count `K` or range `MIN-MAX`.
    #[arg(long, global = true)]
    pub k: Option<KRange>,
    /// Depth cap for random protocols.
    #[arg(long, global = true, default_value_t = 8)]
    pub depth: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, global = true, default_value = "json")]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every inequality campaign.
    Verify,
    /// Lower-bound chain for an AND_k protocol (built-in unless --protocol).
    Andk {
        #[arg(long)]
        protocol: Option<PathBuf>,
    },
    /// Inspect a protocol file.
    Protocol {
        path: PathBuf,
        /// Comma-separated input tuple, e.g. `0,1`.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        input: Option<String>,
        /// Every input.
        #[arg(long)]
        all: bool,
        /// `and`, or one bit per input in lexicographic order.
        #[arg(long)]
        truth_table: Option<String>,
        /// JSON prior over inputs for the information cost.
        #[arg(long)]
        zeta: Option<PathBuf>,
    },
    /// Print a built-in protocol in the file format.
    Export {
        #[arg(value_parser = ["trivial", "forehead"])]
        which: String,
    },
}

/// Rendered command output and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

fn single_k(k: Option<KRange>, command: &str) -> Result<usize> {
    match k {
        Some(r) if r.min == r.max => Ok(r.min),
        Some(r) => Err(Error::Config(format!("{command} takes a single k, got {}-{}", r.min, r.max))),
        None => Err(Error::Config(format!("{command} needs --k"))),
    }
}

/// Runs a parsed command line. Errors map to exit status 2 in the binary.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let config = CampaignConfig {
        seed: g.seed,
        trials: g.trials,
        k: g.k.unwrap_or(CampaignConfig::default().k),
        depth: g.depth,
        tolerance: g.tolerance,
        format: g.format,
    };
    let doc = match &cli.command {
        Command::Verify => cmd_verify(&config)?,
        Command::Andk { protocol } => {
            let source = match protocol {
                Some(path) => AndkSource::File(path.clone()),
                None => AndkSource::Trivial(single_k(g.k, "andk")?),
            };
            cmd_andk(&source, &config)?
        }
        Command::Protocol { path, input, all: _, truth_table, zeta } => {
            let request = ProtocolRequest {
                path: path.clone(),
                inputs: match input {
                    Some(t) => InputSelection::Tuple(t.clone()),
                    None => InputSelection::All,
                },
                truth_table: truth_table.clone(),
                zeta: zeta.clone(),
            };
            cmd_protocol(&request, &config)?
        }
        Command::Export { which } => {
            let builtin = match which.as_str() {
                "trivial" => Builtin::Trivial(single_k(g.k, "export trivial")?),
                _ => Builtin::Forehead,
            };
            return Ok(Outcome { output: cmd_export(builtin)?, exit_code: 0 });
        }
    };
    Ok(Outcome {
        output: doc.render(config.format)?,
        exit_code: doc.exit_code(),
    })
}
