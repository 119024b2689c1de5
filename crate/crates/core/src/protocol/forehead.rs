//! Randomness on the forehead.
//!
//! Player `j`'s extended symbol is the pair `(x_j, r_j)` of an input symbol
//! and a random symbol, encoded as `x_j * R_j + r_j` where `R_j` is the size
//! of the random alphabet. The random coordinates carry a product prior, and
//! every quantity over original inputs is the exact marginal over it.

use super::sim::{ensure_input_distribution, error_on, information_of, leaf_masses, to_transcript, TranscriptDistribution, TruthTable};
use super::space::InputSpace;
use super::tree::ProtocolTree;
use crate::error::{Error, Result};
use crate::hellinger::DistributionFamily;
use crate::prob::FiniteDistribution;

#[derive(Debug, Clone)]
pub struct ForeheadModel {
    inputs: InputSpace,
    randomness: Vec<FiniteDistribution>,
    extended: InputSpace,
}

impl ForeheadModel {
    pub fn new(inputs: InputSpace, randomness: Vec<FiniteDistribution>) -> Result<Self> {
        if randomness.len() != inputs.players() {
            return Err(Error::InvalidSpace(format!(
                "{} randomness priors for {} players",
                randomness.len(),
                inputs.players()
            )));
        }
        let alphabets = inputs
            .alphabets()
            .iter()
            .zip(&randomness)
            .map(|(n, r)| n * r.len())
            .collect();
        let extended = InputSpace::new(alphabets)?;
        Ok(Self {
            inputs,
            randomness,
            extended,
        })
    }

    /// Uniform priors over `random_alphabets[j]` symbols for player `j`.
    pub fn uniform(inputs: InputSpace, random_alphabets: &[usize]) -> Result<Self> {
        let randomness = random_alphabets
            .iter()
            .map(|&n| FiniteDistribution::uniform(n))
            .collect::<Result<_>>()?;
        Self::new(inputs, randomness)
    }

    pub fn inputs(&self) -> &InputSpace {
        &self.inputs
    }

    pub fn extended_space(&self) -> &InputSpace {
        &self.extended
    }

    pub fn randomness(&self) -> &[FiniteDistribution] {
        &self.randomness
    }

    pub fn encode(&self, player: usize, input: usize, random: usize) -> usize {
        input * self.randomness[player].len() + random
    }

    /// `(input, random)` for an extended symbol.
    pub fn decode(&self, player: usize, symbol: usize) -> (usize, usize) {
        let r = self.randomness[player].len();
        (symbol / r, symbol % r)
    }

    /// Every random assignment with positive prior mass and its probability.
    fn assignments(&self) -> Vec<(Vec<usize>, f64)> {
        let mut out = vec![(Vec::new(), 1.0)];
        for prior in &self.randomness {
            out = out
                .into_iter()
                .flat_map(|(prefix, p)| {
                    (0..prior.len())
                        .filter(|&r| prior.mass(r) > 0.0)
                        .map(move |r| {
                            let mut next = prefix.clone();
                            next.push(r);
                            (next, p * prior.mass(r))
                        })
                })
                .collect();
        }
        out
    }
}

/// A protocol over the extended space together with its randomness model.
#[derive(Debug, Clone)]
pub struct ForeheadProtocol {
    tree: ProtocolTree,
    model: ForeheadModel,
}

impl ForeheadProtocol {
    pub fn new(tree: ProtocolTree, model: ForeheadModel) -> Result<Self> {
        if tree.space() != model.extended_space() {
            return Err(Error::InvalidSpace(format!(
                "protocol alphabets {:?} differ from extended alphabets {:?}",
                tree.space().alphabets(),
                model.extended_space().alphabets()
            )));
        }
        Ok(Self { tree, model })
    }

    pub fn tree(&self) -> &ProtocolTree {
        &self.tree
    }

    pub fn model(&self) -> &ForeheadModel {
        &self.model
    }

    /// `Pr[Π(x, R) = ω]` marginalized over the forehead randomness `R`.
    pub fn marginal_transcript(&self, x: &[usize]) -> Result<TranscriptDistribution> {
        self.model.inputs.index_of(x)?;
        Ok(to_transcript(&self.tree, self.marginal_masses(x)))
    }

    fn marginal_masses(&self, x: &[usize]) -> Vec<f64> {
        let space = self.tree.space();
        let mut total = vec![0.0; self.tree.leaf_count()];
        for (r, weight) in self.model.assignments() {
            let z: Vec<usize> = (0..x.len()).map(|j| self.model.encode(j, x[j], r[j])).collect();
            let views: Vec<usize> = (0..z.len()).map(|j| space.visible_index(j, &z)).collect();
            for (t, m) in total.iter_mut().zip(leaf_masses(&self.tree, &views)) {
                *t += weight * m;
            }
        }
        total
    }

    /// Marginal transcript family indexed by the original inputs.
    pub fn marginal_family(&self) -> DistributionFamily {
        let inputs = &self.model.inputs;
        let members = (0..inputs.len())
            .map(|i| {
                to_transcript(&self.tree, self.marginal_masses(&inputs.tuple(i))).into_distribution()
            })
            .collect();
        let labels = (0..inputs.len()).map(|i| inputs.label(i).to_string()).collect();
        DistributionFamily::new(labels, members).expect("common leaf set")
    }

    pub fn accept_probability(&self, x: &[usize]) -> Result<f64> {
        Ok(self.marginal_transcript(x)?.accept_probability())
    }

    /// Worst-case error over original inputs, randomness marginalized.
    pub fn error_probability(&self, f: &TruthTable) -> Result<f64> {
        let inputs = &self.model.inputs;
        if f.len() != inputs.len() {
            return Err(Error::Precondition(format!(
                "truth table over {} inputs, protocol over {}",
                f.len(),
                inputs.len()
            )));
        }
        let mut worst: f64 = 0.0;
        for i in 0..inputs.len() {
            let accept = self.accept_probability(&inputs.tuple(i))?;
            worst = worst.max(error_on(accept, f.value(i)));
        }
        Ok(worst)
    }

    /// `I(X; Π(X))` for `X ~ zeta` over the original inputs.
    pub fn information_cost(&self, zeta: &FiniteDistribution) -> Result<f64> {
        let inputs = &self.model.inputs;
        ensure_input_distribution(inputs, zeta)?;
        Ok(information_of(zeta, self.tree.leaf_count(), |i| {
            self.marginal_masses(&inputs.tuple(i))
        }))
    }
}
