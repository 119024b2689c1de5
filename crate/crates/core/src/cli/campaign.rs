//! Seeded random campaigns over the inequality checks.
//!
//! A campaign runs `trials` independent trials; each trial draws one random
//! instance from its own stream (see [`crate::sampling`]) and yields one or
//! more reports. Trials run on the rayon pool and are aggregated in trial
//! order, so results do not depend on scheduling.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{CampaignConfig, KRange};
use crate::error::Result;
use crate::hellinger::{
    check_am_gm_bound, check_am_gm_sequence, check_mutual_info_lower_bound,
    check_psi_lower_bound, check_subset_lemma, check_symmetric_difference, hellinger_volume,
    DistributionFamily, InequalityReport,
};
use crate::prob::FiniteDistribution;
use crate::protocol::{
    communication_cost, factorize, information_cost, transcript_distribution, transcript_family,
    InputSpace, ProtocolTree,
};
use crate::sampling::{
    random_distribution, random_distribution_over, random_family, random_masses, random_protocol,
    random_subset, trial_rng, TrialRng,
};

/// Tolerance for the per-(z, ω) factorization identity.
pub const FACTORIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    HellingerNonnegativity,
    AmGmBound,
    AmGmSequence,
    MutualInfoLowerBound,
    SymmetricDifference,
    PsiLowerBound,
    ProtocolCorpus,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 7] = [
        CampaignKind::HellingerNonnegativity,
        CampaignKind::AmGmBound,
        CampaignKind::AmGmSequence,
        CampaignKind::MutualInfoLowerBound,
        CampaignKind::SymmetricDifference,
        CampaignKind::PsiLowerBound,
        CampaignKind::ProtocolCorpus,
    ];

    fn stream(self) -> u32 {
        self as u32 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            CampaignKind::HellingerNonnegativity => "hellinger_nonnegativity",
            CampaignKind::AmGmBound => "am_gm_bound",
            CampaignKind::AmGmSequence => "am_gm_sequence",
            CampaignKind::MutualInfoLowerBound => "mutual_info_lower_bound",
            CampaignKind::SymmetricDifference => "symmetric_difference",
            CampaignKind::PsiLowerBound => "psi_lower_bound",
            CampaignKind::ProtocolCorpus => "protocol_corpus",
        }
    }
}

/// Aggregate over every report of one name within a campaign.
#[derive(Debug, Clone, Serialize)]
pub struct FamilySummary {
    pub family: String,
    pub count: usize,
    pub passed: usize,
    pub failed: usize,
    pub min_margin: f64,
    /// Trial that produced `worst`.
    pub worst_trial: usize,
    pub worst: InequalityReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignOutcome {
    pub campaign: CampaignKind,
    pub trials: usize,
    pub families: Vec<FamilySummary>,
    /// Failing reports, keyed by trial index.
    pub failures: Vec<(usize, InequalityReport)>,
}

impl CampaignOutcome {
    pub fn failed(&self) -> usize {
        self.families.iter().map(|f| f.failed).sum()
    }

    pub fn family(&self, name: &str) -> Option<&FamilySummary> {
        self.families.iter().find(|f| f.family == name)
    }
}

/// Failing reports kept verbatim per campaign; the counts stay exact.
const MAX_LISTED_FAILURES: usize = 100;

pub fn run_campaign(kind: CampaignKind, cfg: &CampaignConfig, trials: usize) -> Result<CampaignOutcome> {
    let per_trial: Vec<Vec<InequalityReport>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, kind.stream(), i as u64);
            run_trial(kind, &mut rng, cfg)
        })
        .collect::<Result<_>>()?;

    let mut families: BTreeMap<String, FamilySummary> = BTreeMap::new();
    let mut failures = Vec::new();
    for (trial, reports) in per_trial.into_iter().enumerate() {
        for report in reports {
            if !report.holds && failures.len() < MAX_LISTED_FAILURES {
                failures.push((trial, report.clone()));
            }
            let entry = families
                .entry(report.name.clone())
                .or_insert_with(|| FamilySummary {
                    family: report.name.clone(),
                    count: 0,
                    passed: 0,
                    failed: 0,
                    min_margin: f64::INFINITY,
                    worst_trial: trial,
                    worst: report.clone(),
                });
            entry.count += 1;
            if report.holds {
                entry.passed += 1;
            } else {
                entry.failed += 1;
            }
            // NaN margins are failures and always become the worst.
            if report.margin < entry.min_margin || report.margin.is_nan() {
                entry.min_margin = report.margin;
                entry.worst_trial = trial;
                entry.worst = report;
            }
        }
    }
    Ok(CampaignOutcome {
        campaign: kind,
        trials,
        families: families.into_values().collect(),
        failures,
    })
}

fn run_trial(kind: CampaignKind, rng: &mut TrialRng, cfg: &CampaignConfig) -> Result<Vec<InequalityReport>> {
    let tol = cfg.tolerance;
    match kind {
        CampaignKind::HellingerNonnegativity => {
            let m = rng.random_range(2..=8);
            let n = rng.random_range(1..=16);
            let fam = random_family(rng, m, n);
            let refs: Vec<&FiniteDistribution> = fam.iter().collect();
            let h = hellinger_volume(&refs)?;
            Ok(vec![InequalityReport::at_least("hellinger_nonnegativity", h, 0.0, tol)])
        }
        CampaignKind::AmGmBound => {
            let m = rng.random_range(1..=32);
            Ok(vec![check_am_gm_bound(&random_distribution(rng, m), tol)])
        }
        CampaignKind::AmGmSequence => {
            let m = rng.random_range(1..=32);
            let scale = 100.0 * rng.random::<f64>() + 1e-3;
            let alpha: Vec<f64> = random_masses(rng, m).iter().map(|x| x * scale).collect();
            Ok(vec![check_am_gm_sequence(&alpha, tol)?])
        }
        CampaignKind::MutualInfoLowerBound => {
            let m = rng.random_range(2..=8);
            let n = rng.random_range(1..=16);
            let fam = DistributionFamily::indexed(random_family(rng, m, n))?;
            Ok(vec![check_mutual_info_lower_bound(&fam, tol)?])
        }
        CampaignKind::SymmetricDifference => {
            let size = [2, 4, 8][rng.random_range(0..3)];
            let half = size / 2;
            let members = 3 * half + rng.random_range(0..=2);
            let n = rng.random_range(1..=16);
            let fam = DistributionFamily::indexed(random_family(rng, members, n))?;
            let order = random_subset(rng, members, 3 * half);
            let (common, rest) = order.split_at(half);
            let (only_a, only_b) = rest.split_at(half);
            let a: Vec<usize> = common.iter().chain(only_a).copied().collect();
            let b: Vec<usize> = common.iter().chain(only_b).copied().collect();
            Ok(vec![check_symmetric_difference(&fam, &a, &b, tol)?])
        }
        CampaignKind::PsiLowerBound => psi_lower_bound_trial(rng, tol),
        CampaignKind::ProtocolCorpus => protocol_trial(rng, cfg.k, cfg.depth, tol),
    }
}

/// Splits `total` mass over the outcomes in `part` with random weights.
fn spread<R: Rng>(rng: &mut R, mass: &mut [f64], part: &[usize], total: f64) {
    let w = random_masses(rng, part.len());
    for (&i, x) in part.iter().zip(w) {
        mass[i] = total * x;
    }
}

fn psi_lower_bound_trial(rng: &mut TrialRng, tol: f64) -> Result<Vec<InequalityReport>> {
    let t = rng.random_range(2..=8);
    let n = rng.random_range(2..=16);
    let delta = 0.5 * rng.random::<f64>();
    let t_size = rng.random_range(1..n);
    let order = random_subset(rng, n, n);
    let (event, complement) = order.split_at(t_size);
    let v = rng.random_range(0..t);
    let members = (0..t)
        .map(|u| {
            // P_v(T) in [1-δ, 1]; P_u(T) in [0, δ] for u != v.
            let on_event = if u == v {
                1.0 - delta * rng.random::<f64>()
            } else {
                delta * rng.random::<f64>()
            };
            let mut mass = vec![0.0; n];
            spread(rng, &mut mass, event, on_event);
            spread(rng, &mut mass, complement, 1.0 - on_event);
            FiniteDistribution::from_masses(mass)
        })
        .collect::<Result<Vec<_>>>()?;
    let fam = DistributionFamily::indexed(members)?;
    let a: Vec<usize> = (0..t).collect();
    Ok(vec![check_psi_lower_bound(&fam, &a, event, v, delta, tol)?])
}

/// One random protocol, checked against every protocol-level property.
fn protocol_trial(rng: &mut TrialRng, k: KRange, max_depth: usize, tol: f64) -> Result<Vec<InequalityReport>> {
    let k = rng.random_range(k.iter());
    let depth = rng.random_range(1..=max_depth);
    let space = InputSpace::cube(k)?;
    let tree = random_protocol(rng, &space, depth);
    let mut reports = protocol_reports(&tree, tol)?;

    let s_size = rng.random_range(1..=k);
    let s = random_subset(rng, k, s_size);
    let family = transcript_family(&tree);
    reports.push(check_subset_lemma(&family, k, &s, tol)?.renamed("subset_lemma/random_s"));

    let zeta = random_distribution_over(rng, space.outcome_set());
    let ic = information_cost(&tree, &zeta)?;
    let cc = communication_cost(&tree) as f64;
    reports.push(InequalityReport::at_most("information_vs_communication/random", ic, cc, tol));
    Ok(reports)
}

/// Seed-independent properties of one cube protocol: factorization,
/// cut-and-paste, the tree form of the subset lemma, the mutual-information
/// bound on its transcript family, and information vs communication cost
/// under the uniform prior.
pub fn protocol_reports(tree: &ProtocolTree, tol: f64) -> Result<Vec<InequalityReport>> {
    let space = tree.space();
    let k = space.players();
    let family = transcript_family(tree);

    let mut worst_dev: f64 = 0.0;
    for i in 0..space.len() {
        let z = space.tuple(i);
        let t = transcript_distribution(tree, &z)?;
        worst_dev = worst_dev.max(factorize(tree, &z)?.max_deviation(&t));
    }
    let all: Vec<usize> = (0..k).collect();
    let uniform = FiniteDistribution::uniform_over(space.outcome_set())?;
    let ic = information_cost(tree, &uniform)?;
    let cc = communication_cost(tree) as f64;
    Ok(vec![
        InequalityReport::at_most("factorization", worst_dev, 0.0, FACTORIZATION_TOLERANCE),
        crate::protocol::cut_and_paste_on(tree, &family, tol)?,
        check_subset_lemma(&family, k, &all, tol)?.renamed("subset_lemma/full"),
        check_mutual_info_lower_bound(&family, tol)?.renamed("mutual_info_lower_bound/transcripts"),
        InequalityReport::at_most("information_vs_communication/uniform", ic, cc, tol),
    ])
}
