//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hellinger_nof::andk::{lower_bound_value, trivial_and_protocol, upper_bound_value, xor_forehead_protocol};
use hellinger_nof::cli::{
    cmd_andk, protocol_reports, run_campaign, AndkSource, CampaignConfig, CampaignKind,
    CampaignOutcome, Entry, KRange, ReportDocument,
};
use hellinger_nof::hellinger::{check_am_gm_bound, InequalityReport};
use hellinger_nof::prob::FiniteDistribution;
use hellinger_nof::protocol::communication_cost;

const SEED: u64 = 20_240_601;
const TOL: f64 = 1e-9;

struct Verdict {
    id: usize,
    pass: bool,
    detail: String,
}

fn campaign(kind: CampaignKind, trials: usize, doc: &mut ReportDocument) -> (CampaignOutcome, Duration) {
    let cfg = CampaignConfig {
        seed: SEED,
        trials,
        k: KRange { min: 2, max: 4 },
        depth: 8,
        tolerance: TOL,
        ..Default::default()
    };
    let start = Instant::now();
    let outcome = run_campaign(kind, &cfg, trials).expect("campaign runs");
    let elapsed = start.elapsed();
    doc.push_campaign(outcome.clone());
    (outcome, elapsed)
}

fn family_line(o: &CampaignOutcome, name: &str) -> (bool, String) {
    match o.family(name) {
        Some(f) => (
            f.failed == 0 && f.count > 0,
            format!("{name}: {}/{} hold, min margin {:.3e}", f.passed, f.count, f.min_margin),
        ),
        None => (false, format!("{name}: no reports")),
    }
}

fn campaign_verdict(id: usize, o: &CampaignOutcome, names: &[&str], limit: Option<(Duration, Duration)>) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in names {
        let (ok, line) = family_line(o, name);
        pass &= ok;
        parts.push(line);
    }
    if let Some((elapsed, max)) = limit {
        pass &= elapsed <= max;
        parts.push(format!("{:.2}s (limit {}s)", elapsed.as_secs_f64(), max.as_secs()));
    }
    Verdict { id, pass, detail: parts.join("; ") }
}

fn run_suite() -> (Vec<Verdict>, String) {
    let mut doc = ReportDocument::new("acceptance", CampaignConfig { seed: SEED, ..Default::default() });
    let mut verdicts = Vec::new();
    let secs = Duration::from_secs;

    let (o, t) = campaign(CampaignKind::HellingerNonnegativity, 100_000, &mut doc);
    verdicts.push(campaign_verdict(1, &o, &["hellinger_nonnegativity"], Some((t, secs(10)))));

    let (o, t) = campaign(CampaignKind::AmGmBound, 100_000, &mut doc);
    let mut v = campaign_verdict(2, &o, &["am_gm_bound"], Some((t, secs(10))));
    let mut worst_uniform: f64 = 0.0;
    for m in 1..=32 {
        let r = check_am_gm_bound(&FiniteDistribution::uniform(m).unwrap(), TOL);
        worst_uniform = worst_uniform.max(r.lhs.abs()).max(r.rhs.abs());
        doc.push(r.renamed(format!("am_gm_uniform/m={m}")));
    }
    v.pass &= worst_uniform <= 1e-12;
    v.detail.push_str(&format!("; uniform sides max {worst_uniform:.1e}"));
    verdicts.push(v);

    let (o, _) = campaign(CampaignKind::MutualInfoLowerBound, 10_000, &mut doc);
    verdicts.push(campaign_verdict(3, &o, &["mutual_info_lower_bound"], None));

    let (o, _) = campaign(CampaignKind::SymmetricDifference, 10_000, &mut doc);
    verdicts.push(campaign_verdict(4, &o, &["symmetric_difference"], None));

    let (corpus, t) = campaign(CampaignKind::ProtocolCorpus, 1_000, &mut doc);
    verdicts.push(campaign_verdict(5, &corpus, &["cut_and_paste", "factorization"], Some((t, secs(30)))));

    let (o, _) = campaign(CampaignKind::PsiLowerBound, 10_000, &mut doc);
    verdicts.push(campaign_verdict(6, &o, &["psi_lower_bound"], None));

    // Built-in AND_k protocols, chain and exact values.
    let mut pass = true;
    let mut parts = Vec::new();
    let mut forehead: Vec<InequalityReport> = Vec::new();
    for k in 2..=5 {
        let cfg = CampaignConfig { seed: SEED, ..Default::default() };
        let d = cmd_andk(&AndkSource::Trivial(k), &cfg).expect("andk runs");
        let ic = d.values["information_cost_eta"].as_f64().unwrap();
        let delta = d.values["delta"].as_f64().unwrap();
        let upper = upper_bound_value(k).unwrap();
        let mut ok = delta == 0.0 && (ic - upper).abs() <= TOL;
        for e in &d.entries {
            match e {
                Entry::Chain(c) => ok &= c.all_hold(),
                Entry::Inequality(r) if r.name.starts_with("trivial/") => ok &= r.holds,
                Entry::Inequality(r) => forehead.push(r.clone()),
            }
        }
        if k == 3 {
            let lb = lower_bound_value(3, 0.0).unwrap();
            ok &= (ic - 0.270426).abs() < 5e-7 && (lb - 0.010019).abs() < 5e-7 && ic >= lb;
            parts.push(format!("k=3 IC {ic:.6} >= {lb:.6}"));
        }
        pass &= ok;
        for e in d.entries {
            match e {
                Entry::Chain(c) => doc.push_chain(*c),
                Entry::Inequality(r) => {
                    let name = format!("andk_k{k}/{}", r.name);
                    doc.push(r.renamed(name));
                }
            }
        }
    }
    parts.insert(0, "k=2..5 error 0, IC = upper bound, chains hold".into());
    verdicts.push(Verdict { id: 7, pass, detail: parts.join("; ") });

    let accepts = forehead.iter().filter(|r| r.name.starts_with("forehead/accept/")).count();
    let marginals = forehead.iter().filter(|r| r.name == "forehead/uniform_zero_marginals").count();
    let zero_info = forehead.iter().filter(|r| r.name.starts_with("zero_information/")).count();
    let all_hold = forehead.iter().all(|r| r.holds);
    verdicts.push(Verdict {
        id: 8,
        pass: all_hold && accepts == 8 && marginals == 1 && zero_info == 103,
        detail: format!(
            "{accepts} exact acceptance checks, {marginals} marginal check, {zero_info} zero-information priors; all hold: {all_hold}"
        ),
    });

    // Information vs communication over the random corpus and the built-ins.
    let mut builtin_ok = true;
    for k in 2..=5 {
        let tree = trivial_and_protocol(k).unwrap();
        for r in protocol_reports(&tree, TOL).unwrap() {
            if r.name.starts_with("information_vs_communication") {
                builtin_ok &= r.holds;
                let name = format!("builtin_k{k}/{}", r.name);
                doc.push(r.renamed(name));
            }
        }
    }
    let fp = xor_forehead_protocol().unwrap();
    let uniform = FiniteDistribution::uniform_over(fp.model().inputs().outcome_set()).unwrap();
    let r = InequalityReport::at_most(
        "builtin_forehead/information_vs_communication",
        fp.information_cost(&uniform).unwrap(),
        communication_cost(fp.tree()) as f64,
        TOL,
    );
    builtin_ok &= r.holds;
    doc.push(r);
    let mut v = campaign_verdict(
        9,
        &corpus,
        &["information_vs_communication/uniform", "information_vs_communication/random"],
        None,
    );
    v.pass &= builtin_ok;
    v.detail.push_str(&format!("; built-ins hold: {builtin_ok}"));
    verdicts.push(v);

    (verdicts, doc.to_json())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let (mut verdicts, first) = run_suite();
    let elapsed = start.elapsed();
    let (_, second) = run_suite();
    let earlier_pass = verdicts.iter().all(|v| v.pass);
    let identical = first == second;
    verdicts.push(Verdict {
        id: 10,
        pass: earlier_pass && identical && elapsed < Duration::from_secs(60),
        detail: format!(
            "suite {:.2}s, report {} bytes, byte-identical rerun: {identical}",
            elapsed.as_secs_f64(),
            first.len()
        ),
    });
    for v in &verdicts {
        println!("criterion {:>2}: {} ({})", v.id, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    if verdicts.iter().all(|v| v.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
