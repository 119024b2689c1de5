//! The `AND_k` case study: the `η` input collection, closed-form upper and
//! lower bounds on its information cost, the "announce whether you see a
//! zero" protocol, the end-to-end lower-bound chain on concrete protocols,
//! and the three-player XOR protocol with forehead randomness.

use std::f64::consts::{LN_2, LOG2_E};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hellinger::{
    check_psi_lower_bound, check_subset_lemma, CubeIndex, InequalityReport,
};
use crate::prob::{binary_entropy, FiniteDistribution};
use crate::protocol::{
    cut_and_paste_on, error_probability, information_cost, transcript_family, ForeheadModel,
    ForeheadProtocol, InputSpace, Node, ProtocolTree, TruthTable,
};

/// `ζ_1..ζ_k`, where `ζ_j` is uniform over the inputs whose coordinate `j`
/// is zero. Distributions are over `InputSpace::cube(k)`.
pub fn eta_collection(k: usize) -> Result<Vec<FiniteDistribution>> {
    let cube = CubeIndex::new(k)?;
    let outcomes = InputSpace::cube(k)?.outcome_set();
    let share = 1.0 / (1u64 << (k - 1)) as f64;
    (0..k)
        .map(|j| {
            let mut mass = vec![0.0; cube.len()];
            for p in cube.zero_at(j) {
                mass[p] = share;
            }
            FiniteDistribution::new(outcomes.clone(), mass)
        })
        .collect()
}

/// `log₂e · (1 - 2√(δ(1-δ))) / (k² 4^{k-1})`.
pub fn lower_bound_value(k: usize, delta: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} < 2")));
    }
    if !(0.0..0.5).contains(&delta) {
        return Err(Error::ErrorTooLarge { delta });
    }
    let k = k as f64;
    let scale = k * k * 4f64.powf(k - 1.0);
    Ok(LOG2_E * (1.0 - 2.0 * (delta * (1.0 - delta)).sqrt()) / scale)
}

/// `H(1/2^{k-1}) / k`, the cost of [`trivial_and_protocol`] under `η`.
pub fn upper_bound_value(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} < 2")));
    }
    let p = 0.5f64.powi(k as i32 - 1);
    Ok(binary_entropy(p) / k as f64)
}

/// Players 1..k in turn broadcast 1 iff they see a zero; the first 1 ends
/// the protocol with output 0, and k silent players mean the input is all
/// ones.
pub fn trivial_and_protocol(k: usize) -> Result<ProtocolTree> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} < 2")));
    }
    let space = InputSpace::cube(k)?;
    let mut node = Node::leaf(true);
    for j in (0..k).rev() {
        node = Node::decide(&space, j, |view| view.contains(&0), node, Node::leaf(false));
    }
    ProtocolTree::new(space, &node)
}

/// [`trivial_and_protocol`] with every broadcast bit flipped independently
/// with probability `epsilon`.
pub fn noisy_and_protocol(k: usize, epsilon: f64) -> Result<ProtocolTree> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Precondition(format!("noise {epsilon} outside [0, 1]")));
    }
    fn perturb(node: Node, eps: f64) -> Node {
        match node {
            Node::Leaf { .. } => node,
            Node::Internal {
                speaker,
                p_one,
                zero,
                one,
            } => Node::speak(
                speaker,
                p_one.iter().map(|p| p * (1.0 - eps) + (1.0 - p) * eps).collect(),
                perturb(*zero, eps),
                perturb(*one, eps),
            ),
        }
    }
    let base = trivial_and_protocol(k)?;
    ProtocolTree::new(base.space().clone(), &perturb(base.to_node(), epsilon))
}

/// Every link of the `AND_k` lower-bound chain evaluated on one protocol.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub k: usize,
    /// Exact worst-case error of the protocol against `AND_k`.
    pub delta: f64,
    /// `IC_η(Π)`.
    pub information_cost_eta: f64,
    /// `I(Z; Π(Z)) >= ψ(I_j) / (2^{k-1} ln 2)` with `Z ~ ζ_j`, per `j`.
    pub link1: Vec<InequalityReport>,
    /// `Σ_j ψ(I_j) >= ψ(I_OZ) / 2^{⌈log₂ k⌉}`.
    pub link2: InequalityReport,
    /// `ψ(I_OZ) = ψ(I_EZ)`.
    pub link3: InequalityReport,
    /// `ψ(I_EZ) >= (2 - 4√(δ(1-δ))) / 2^{k-1}`.
    pub link4: InequalityReport,
    /// `IC_η(Π) >= log₂e (1 - 2√(δ(1-δ))) / (k² 4^{k-1})`.
    pub final_bound: InequalityReport,
}

impl ChainReport {
    pub fn links(&self) -> impl Iterator<Item = &InequalityReport> {
        self.link1
            .iter()
            .chain([&self.link2, &self.link3, &self.link4])
    }

    pub fn reports(&self) -> impl Iterator<Item = &InequalityReport> {
        self.links().chain(std::iter::once(&self.final_bound))
    }

    pub fn all_hold(&self) -> bool {
        self.reports().all(|r| r.holds)
    }

    /// Links holding must imply the final bound.
    pub fn consistent(&self) -> bool {
        !self.links().all(|r| r.holds) || self.final_bound.holds
    }
}

/// Evaluates the whole lower-bound chain on a protocol for `AND_k`, with `δ`
/// taken as the protocol's exact worst-case error.
pub fn verify_lower_bound_chain(tree: &ProtocolTree, tolerance: f64) -> Result<ChainReport> {
    let space = tree.space();
    if !space.is_cube() {
        return Err(Error::Precondition("AND_k protocols take binary inputs".into()));
    }
    let k = space.players();
    let cube = CubeIndex::new(k)?;
    let delta = error_probability(tree, &TruthTable::and(space))?;
    if delta >= 0.5 {
        return Err(Error::ErrorTooLarge { delta });
    }
    let family = transcript_family(tree);
    let half = (1u64 << (k - 1)) as f64;

    let mut link1 = Vec::with_capacity(k);
    let mut total_ic = 0.0;
    for (j, zeta) in eta_collection(k)?.iter().enumerate() {
        let ic = information_cost(tree, zeta)?;
        total_ic += ic;
        let bound = family.psi(&cube.zero_at(j))? / (half * LN_2);
        link1.push(InequalityReport::at_least(
            format!("link1/j={}", j + 1),
            ic,
            bound,
            tolerance,
        ));
    }
    let information_cost_eta = total_ic / k as f64;

    let all: Vec<usize> = (0..k).collect();
    let link2 = check_subset_lemma(&family, k, &all, tolerance)?.renamed("link2");
    let link3 = cut_and_paste_on(tree, &family, tolerance)?.renamed("link3");
    let link4 = check_psi_lower_bound(
        &family,
        &cube.even_zeros(),
        &tree.accepting_leaves(),
        cube.all_ones(),
        delta,
        tolerance,
    )?
    .renamed("link4");
    let lower = lower_bound_value(k, delta)?;
    let final_bound = InequalityReport::at_least("final", information_cost_eta, lower, tolerance);

    Ok(ChainReport {
        k,
        delta,
        information_cost_eta,
        link1,
        link2,
        link3,
        link4,
        final_bound,
    })
}

const XOR_PLAYERS: usize = 3;

/// Player `j`'s broadcast bit given the full extended input `z` (only
/// `z^{-j}` is read). Each symbol is `x * 4 + a * 2 + b`.
///
/// Player 1 sends `a_2 ⊕ a_3` if `x_2 = x_3 = 1` and `a_2 ⊕ b_3` otherwise;
/// players 2 and 3 apply the same rule to the cyclic shifts
/// `(x_3, x_1; a_3, a_1; b_1)` and `(x_1, x_2; a_1, a_2; b_2)`.
fn xor_message(j: usize, z: &[usize]) -> bool {
    let next = (j + 1) % XOR_PLAYERS;
    let after = (j + 2) % XOR_PLAYERS;
    let x = |p: usize| z[p] >> 2;
    let a = |p: usize| (z[p] >> 1) & 1;
    let b = |p: usize| z[p] & 1;
    let bit = if x(next) == 1 && x(after) == 1 {
        a(next) ^ a(after)
    } else {
        a(next) ^ b(after)
    };
    bit == 1
}

/// Three-player `AND_3` protocol with two random bits `(a_j, b_j)` on each
/// forehead: each player broadcasts one masked bit, and the output is 1 iff
/// the three bits XOR to 0.
pub fn xor_forehead_protocol() -> Result<ForeheadProtocol> {
    let model = ForeheadModel::uniform(InputSpace::cube(XOR_PLAYERS)?, &[4; XOR_PLAYERS])?;
    let space = model.extended_space().clone();
    let rule = |j: usize| {
        move |view: &[usize]| {
            let mut z = vec![0; XOR_PLAYERS];
            let others = (0..XOR_PLAYERS).filter(|&p| p != j);
            for (p, &s) in others.zip(view) {
                z[p] = s;
            }
            xor_message(j, &z)
        }
    };
    let leaf = |parity: bool| Node::leaf(!parity);
    let third = |parity: bool| Node::decide(&space, 2, rule(2), leaf(parity), leaf(!parity));
    let second = |parity: bool| Node::decide(&space, 1, rule(1), third(parity), third(!parity));
    let root = Node::decide(&space, 0, rule(0), second(false), second(true));
    ForeheadProtocol::new(ProtocolTree::new(space, &root)?, model)
}

/// `I(Z; Π(Z)) <= 1e-12` for `Z ~ zeta` supported on zeroes of `AND_k`,
/// transcripts marginalized over forehead randomness.
pub fn zero_information_check(
    protocol: &ForeheadProtocol,
    zeta: &FiniteDistribution,
) -> Result<InequalityReport> {
    let inputs = protocol.model().inputs();
    let and = TruthTable::and(inputs);
    if zeta.len() == inputs.len() {
        if let Some(i) = (0..inputs.len()).find(|&i| and.value(i) && zeta.mass(i) > 0.0) {
            return Err(Error::Precondition(format!(
                "ζ puts mass on the accepting input {}",
                inputs.label(i)
            )));
        }
    }
    let ic = protocol.information_cost(zeta)?;
    Ok(InequalityReport::at_most("zero_information", ic, 0.0, ZERO_INFORMATION_TOLERANCE))
}

pub const ZERO_INFORMATION_TOLERANCE: f64 = 1e-12;
