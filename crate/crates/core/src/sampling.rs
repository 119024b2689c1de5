//! Seeded random instances for verification campaigns.
//!
//! Every trial draws from its own ChaCha8 stream: the generator is seeded
//! with the master seed and switched to stream `campaign << 40 | trial`, so
//! a trial's instance does not depend on how trials are scheduled.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::prob::FiniteDistribution;
use crate::protocol::{InputSpace, Node, ProtocolTree};

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(master_seed: u64, campaign: u32, trial: u64) -> TrialRng {
    assert!(trial < 1 << 40, "trial index too large");
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream((u64::from(campaign) << 40) | trial);
    rng
}

/// Normalized independent uniform(0,1) draws. With probability 1/4 a random
/// subset of outcomes is zeroed (at least one survives) to exercise
/// boundary cases.
pub fn random_masses<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    if n > 1 && rng.random_bool(0.25) {
        let keep = rng.random_range(0..n);
        for (i, x) in w.iter_mut().enumerate() {
            if i != keep && rng.random_bool(0.5) {
                *x = 0.0;
            }
        }
    }
    if w.iter().all(|&x| x == 0.0) {
        w[0] = 1.0;
    }
    let total: f64 = w.iter().sum();
    w.iter().map(|x| x / total).collect()
}

pub fn random_distribution<R: Rng>(rng: &mut R, n: usize) -> FiniteDistribution {
    FiniteDistribution::from_masses(random_masses(rng, n)).expect("normalized weights")
}

pub fn random_distribution_over<R: Rng>(
    rng: &mut R,
    outcomes: crate::prob::OutcomeSet,
) -> FiniteDistribution {
    let masses = random_masses(rng, outcomes.len());
    FiniteDistribution::new(outcomes, masses).expect("normalized weights")
}

pub fn random_family<R: Rng>(rng: &mut R, members: usize, outcomes: usize) -> Vec<FiniteDistribution> {
    (0..members).map(|_| random_distribution(rng, outcomes)).collect()
}

/// Random subset of `0..n` of the given size, in random order.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, size: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(size);
    all
}

fn random_rule<R: Rng>(rng: &mut R, views: usize) -> Vec<f64> {
    (0..views)
        .map(|_| match rng.random_range(0..10) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.random::<f64>(),
        })
        .collect()
}

fn random_node<R: Rng>(rng: &mut R, space: &InputSpace, depth_left: usize, is_root: bool) -> Node {
    if depth_left == 0 || (!is_root && rng.random_bool(0.2)) {
        return Node::leaf(rng.random_bool(0.5));
    }
    let speaker = rng.random_range(0..space.players());
    let p_one = random_rule(rng, space.visible_len(speaker));
    let zero = random_node(rng, space, depth_left - 1, false);
    let one = random_node(rng, space, depth_left - 1, false);
    Node::speak(speaker, p_one, zero, one)
}

/// Random private-coin protocol of depth at most `max_depth` (and at least 1
/// when `max_depth >= 1`); about a fifth of the message rules are
/// deterministic on each view.
pub fn random_protocol<R: Rng>(rng: &mut R, space: &InputSpace, max_depth: usize) -> ProtocolTree {
    let root = random_node(rng, space, max_depth, true);
    ProtocolTree::new(space.clone(), &root).expect("generated protocols are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::communication_cost;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| trial_rng(7, 1, 3).random()).collect();
        let b: Vec<u64> = (0..4).map(|_| trial_rng(7, 1, 3).random()).collect();
        assert_eq!(a, b);
        let x: u64 = trial_rng(7, 1, 3).random();
        let y: u64 = trial_rng(7, 1, 4).random();
        let z: u64 = trial_rng(7, 2, 3).random();
        let w: u64 = trial_rng(8, 1, 3).random();
        assert!(x != y && x != z && x != w);
    }

    #[test]
    fn masses_are_distributions() {
        let mut rng = trial_rng(1, 0, 0);
        for n in 1..40 {
            let m = random_masses(&mut rng, n);
            assert!((m.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(m.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn protocols_respect_depth_cap() {
        let mut rng = trial_rng(3, 0, 0);
        for k in 2..=4 {
            let space = InputSpace::cube(k).unwrap();
            for depth in 1..=8 {
                let tree = random_protocol(&mut rng, &space, depth);
                let cost = communication_cost(&tree);
                assert!((1..=depth).contains(&cost));
            }
        }
    }
}
