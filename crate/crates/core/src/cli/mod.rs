//! Command-line harness: verification campaigns, the `AND_k` pipeline, and
//! protocol-file inspection, all emitting [`ReportDocument`]s.

mod args;
pub mod campaign;
pub mod commands;
pub mod config;
pub mod report;

pub use args::{run, Cli, Command, Outcome};
pub use campaign::{protocol_reports, run_campaign, CampaignKind, CampaignOutcome, FamilySummary};
pub use commands::{
    cmd_andk, cmd_export, cmd_protocol, cmd_verify, AndkSource, Builtin, InputSelection,
    ProtocolRequest,
};
pub use config::{CampaignConfig, KRange, OutputFormat};
pub use report::{Entry, ReportDocument, Summary};
