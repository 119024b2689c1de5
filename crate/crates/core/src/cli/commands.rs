use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde_json::{json, Map, Value};

use super::campaign::{run_campaign, CampaignKind, FACTORIZATION_TOLERANCE};
use super::config::{CampaignConfig, KRange};
use super::report::ReportDocument;
use crate::andk::{
    eta_collection, lower_bound_value, trivial_and_protocol, upper_bound_value,
    verify_lower_bound_chain, xor_forehead_protocol, zero_information_check,
};
use crate::error::{Error, Result};
use crate::hellinger::InequalityReport;
use crate::prob::FiniteDistribution;
use crate::protocol::{
    communication_cost, error_probability, factorize, information_cost, parse_input_distribution,
    parse_protocol, protocol_to_json, transcript_distribution, ProtocolTree, TranscriptDistribution,
    TruthTable,
};
use crate::sampling::{random_masses, random_subset, trial_rng};

/// Largest `k` accepted for the built-in `AND_k` protocol.
pub const MAX_ANDK: usize = 5;

/// Random zero-supported priors tried against the forehead protocol.
pub const ZERO_INFORMATION_SWEEP: usize = 100;

const SWEEP_STREAM: u32 = 100;

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_protocol(path: &Path) -> Result<ProtocolTree> {
    let text = read_file(path)?;
    parse_protocol(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Runs every campaign with `config.trials` trials each.
pub fn cmd_verify(config: &CampaignConfig) -> Result<ReportDocument> {
    config.validate()?;
    let mut doc = ReportDocument::new("verify", config.clone());
    for kind in CampaignKind::ALL {
        doc.push_campaign(run_campaign(kind, config, config.trials)?);
    }
    Ok(doc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AndkSource {
    Trivial(usize),
    File(PathBuf),
}

/// Lower-bound chain and bound values for one `AND_k` protocol; for `k = 3`
/// also the forehead-randomness suite.
pub fn cmd_andk(source: &AndkSource, config: &CampaignConfig) -> Result<ReportDocument> {
    config.validate()?;
    let tree = match source {
        AndkSource::Trivial(k) => {
            if !(2..=MAX_ANDK).contains(k) {
                return Err(Error::Config(format!(
                    "built-in AND_k protocol needs k in [2, {MAX_ANDK}], got {k}"
                )));
            }
            trivial_and_protocol(*k)?
        }
        AndkSource::File(path) => load_protocol(path)?,
    };
    let k = tree.space().players();
    let command = match source {
        AndkSource::Trivial(_) => "andk trivial".to_string(),
        AndkSource::File(path) => format!("andk {}", path.display()),
    };
    let mut doc = ReportDocument::new(command, CampaignConfig { k: KRange::single(k), ..config.clone() });

    let chain = verify_lower_bound_chain(&tree, config.tolerance)?;
    let upper = upper_bound_value(k)?;
    doc.set_value("k", k);
    doc.set_value("delta", chain.delta);
    doc.set_value("information_cost_eta", chain.information_cost_eta);
    doc.set_value("communication_cost", communication_cost(&tree));
    doc.set_value("upper_bound", upper);
    doc.set_value("lower_bound", lower_bound_value(k, chain.delta)?);
    if matches!(source, AndkSource::Trivial(_)) {
        doc.push(InequalityReport::equal("trivial/error", chain.delta, 0.0, 0.0));
        doc.push(InequalityReport::equal(
            "trivial/achieves_upper_bound",
            chain.information_cost_eta,
            upper,
            config.tolerance,
        ));
    }
    doc.push_chain(chain);
    if k == 3 {
        forehead_suite(&mut doc, config.seed)?;
    }
    Ok(doc)
}

/// Exact checks of the three-player forehead-randomness protocol.
fn forehead_suite(doc: &mut ReportDocument, seed: u64) -> Result<()> {
    let fp = xor_forehead_protocol()?;
    let inputs = fp.model().inputs().clone();
    let and = TruthTable::and(&inputs);
    let zeros: Vec<usize> = (0..inputs.len()).filter(|&i| !and.value(i)).collect();

    for i in 0..inputs.len() {
        let z = inputs.tuple(i);
        let p = fp.accept_probability(&z)?;
        let expect = if and.value(i) { 1.0 } else { 0.5 };
        doc.push(InequalityReport::equal(format!("forehead/accept/{}", inputs.label(i)), p, expect, 0.0));
    }

    // Every zero-input marginal must be the uniform distribution on the
    // same transcripts.
    let transcripts = fp.tree().leaf_count();
    let uniform = 1.0 / transcripts as f64;
    let mut deviation: f64 = 0.0;
    for &i in &zeros {
        let t = fp.marginal_transcript(&inputs.tuple(i))?;
        for &m in t.distribution().masses() {
            deviation = deviation.max((m - uniform).abs());
        }
    }
    doc.push(InequalityReport::equal("forehead/uniform_zero_marginals", deviation, 0.0, 0.0));
    doc.set_value("forehead_transcripts", transcripts);
    doc.set_value("forehead_error", fp.error_probability(&and)?);

    for (j, zeta) in eta_collection(3)?.iter().enumerate() {
        let r = zero_information_check(&fp, zeta)?;
        doc.push(r.renamed(format!("zero_information/eta_{}", j + 1)));
    }
    for trial in 0..ZERO_INFORMATION_SWEEP {
        let mut rng = trial_rng(seed, SWEEP_STREAM, trial as u64);
        let size = rng.random_range(1..=zeros.len());
        let support = random_subset(&mut rng, zeros.len(), size);
        let w = random_masses(&mut rng, size);
        let mut mass = vec![0.0; inputs.len()];
        for (&s, x) in support.iter().zip(w) {
            mass[zeros[s]] = x;
        }
        let zeta = FiniteDistribution::new(inputs.outcome_set(), mass)?;
        doc.push(zero_information_check(&fp, &zeta)?.renamed(format!("zero_information/sweep_{trial}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSelection {
    All,
    Tuple(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolRequest {
    pub path: PathBuf,
    pub inputs: InputSelection,
    /// `and`, or one bit per input in lexicographic order.
    pub truth_table: Option<String>,
    /// Prior for the information cost; uniform when absent.
    pub zeta: Option<PathBuf>,
}

fn transcript_json(t: &TranscriptDistribution) -> Value {
    let d = t.distribution();
    let masses: Map<String, Value> = (0..d.len())
        .map(|i| (d.outcomes().label(i).into_owned(), json!(d.mass(i))))
        .collect();
    json!({ "accept_probability": t.accept_probability(), "transcripts": masses })
}

/// Transcript distributions, factorization, error, and costs of one
/// protocol file.
pub fn cmd_protocol(request: &ProtocolRequest, config: &CampaignConfig) -> Result<ReportDocument> {
    config.validate()?;
    let tree = load_protocol(&request.path)?;
    let space = tree.space().clone();
    let mut doc = ReportDocument::new(format!("protocol {}", request.path.display()), config.clone());

    let selected: Vec<usize> = match &request.inputs {
        InputSelection::All => (0..space.len()).collect(),
        InputSelection::Tuple(text) => vec![space.index_of(&space.parse_tuple(text)?)?],
    };
    let mut per_input = Map::new();
    for &i in &selected {
        let z = space.tuple(i);
        let t = transcript_distribution(&tree, &z)?;
        let dev = factorize(&tree, &z)?.max_deviation(&t);
        per_input.insert(space.label(i).to_string(), transcript_json(&t));
        doc.push(InequalityReport::at_most(
            format!("factorization/{}", space.label(i)),
            dev,
            0.0,
            FACTORIZATION_TOLERANCE,
        ));
    }
    doc.set_value("inputs", per_input);

    if let Some(bits) = &request.truth_table {
        let table = if bits == "and" {
            TruthTable::and(&space)
        } else {
            TruthTable::parse(&space, bits)?
        };
        doc.set_value("error_probability", error_probability(&tree, &table)?);
    }

    let zeta = match &request.zeta {
        Some(path) => parse_input_distribution(&read_file(path)?, &space)?,
        None => FiniteDistribution::uniform_over(space.outcome_set())?,
    };
    let ic = information_cost(&tree, &zeta)?;
    let cc = communication_cost(&tree);
    doc.set_value("communication_cost", cc);
    doc.set_value("information_cost", ic);
    doc.push(InequalityReport::at_most(
        "information_vs_communication",
        ic,
        cc as f64,
        config.tolerance,
    ));
    Ok(doc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Trivial(usize),
    /// The forehead-randomness protocol over its extended inputs.
    Forehead,
}

/// A built-in protocol in the protocol file format.
pub fn cmd_export(which: Builtin) -> Result<String> {
    let tree = match which {
        Builtin::Trivial(k) => trivial_and_protocol(k)?,
        Builtin::Forehead => xor_forehead_protocol()?.tree().clone(),
    };
    let mut text = protocol_to_json(&tree);
    text.push('\n');
    Ok(text)
}
