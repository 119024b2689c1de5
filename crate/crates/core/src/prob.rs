//! Finite probability distributions and the classical information measures.
//!
//! All information quantities are in bits. The conventions `0 log 0 = 0` and
//! `0 log (0/q) = 0` hold everywhere; a divergence with `p(x) > 0 = q(x)` is
//! reported as `f64::INFINITY`.

use std::borrow::Cow;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Raw mass vectors whose sum is within this distance of 1 are renormalized.
pub const RENORMALIZE_WINDOW: f64 = 1e-6;

/// Absolute tolerance used for "equal within float error" comparisons.
pub const EQ_TOLERANCE: f64 = 1e-9;

/// The labels of a finite outcome set.
///
/// `Indexed(n)` is the anonymous set `{0, .., n-1}`; `Labeled` carries names.
/// Two sets are the same only if they have the same variant and content.
#[derive(Debug, Clone)]
pub enum OutcomeSet {
    Indexed(usize),
    Labeled(Arc<[String]>),
}

impl OutcomeSet {
    pub fn labeled<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        OutcomeSet::Labeled(labels.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        match self {
            OutcomeSet::Indexed(n) => *n,
            OutcomeSet::Labeled(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, i: usize) -> Cow<'_, str> {
        match self {
            OutcomeSet::Indexed(_) => Cow::Owned(i.to_string()),
            OutcomeSet::Labeled(l) => Cow::Borrowed(&l[i]),
        }
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        match self {
            OutcomeSet::Indexed(n) => label.parse::<usize>().ok().filter(|i| i < n),
            OutcomeSet::Labeled(l) => l.iter().position(|x| x == label),
        }
    }
}

impl PartialEq for OutcomeSet {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (OutcomeSet::Indexed(a), OutcomeSet::Indexed(b)) => a == b,
            (OutcomeSet::Labeled(a), OutcomeSet::Labeled(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

fn validated_masses(mut mass: Vec<f64>) -> Result<Vec<f64>> {
    if mass.is_empty() {
        return Err(Error::InvalidDistribution("empty outcome set".into()));
    }
    for (i, &m) in mass.iter().enumerate() {
        if !m.is_finite() || m < 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "mass {m} at outcome {i} is not a nonnegative real"
            )));
        }
    }
    let total: f64 = mass.iter().sum();
    let drift = (total - 1.0).abs();
    if drift > RENORMALIZE_WINDOW {
        return Err(Error::InvalidDistribution(format!(
            "masses sum to {total}, not 1"
        )));
    }
    if drift > 0.0 {
        mass.iter_mut().for_each(|m| *m /= total);
    }
    Ok(mass)
}

/// A probability mass function over a finite ordered outcome set.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    outcomes: OutcomeSet,
    mass: Vec<f64>,
}

impl FiniteDistribution {
    pub fn new(outcomes: OutcomeSet, mass: Vec<f64>) -> Result<Self> {
        if outcomes.len() != mass.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} outcomes but {} masses",
                outcomes.len(),
                mass.len()
            )));
        }
        let mass = validated_masses(mass)?;
        Ok(Self { outcomes, mass })
    }

    /// Distribution over the anonymous outcome set `{0, .., n-1}`.
    pub fn from_masses(mass: Vec<f64>) -> Result<Self> {
        Self::new(OutcomeSet::Indexed(mass.len()), mass)
    }

    /// Normalizes a nonnegative weight vector with positive total.
    pub fn from_weights(outcomes: OutcomeSet, weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if total.is_nan() || total <= 0.0 || total.is_infinite() || weights.iter().any(|w| *w < 0.0) {
            return Err(Error::InvalidDistribution(
                "weights must be nonnegative with positive finite total".into(),
            ));
        }
        Self::new(outcomes, weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_over(OutcomeSet::Indexed(n))
    }

    pub fn uniform_over(outcomes: OutcomeSet) -> Result<Self> {
        let n = outcomes.len();
        Self::new(outcomes, vec![1.0 / n as f64; n])
    }

    pub fn point_mass(n: usize, at: usize) -> Result<Self> {
        Self::point_mass_over(OutcomeSet::Indexed(n), at)
    }

    pub fn point_mass_over(outcomes: OutcomeSet, at: usize) -> Result<Self> {
        if at >= outcomes.len() {
            return Err(Error::InvalidDistribution(format!(
                "point mass at {at} outside {} outcomes",
                outcomes.len()
            )));
        }
        let mut mass = vec![0.0; outcomes.len()];
        mass[at] = 1.0;
        Self::new(outcomes, mass)
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    pub fn mass(&self, i: usize) -> f64 {
        self.mass[i]
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    /// Total mass of the outcomes in `event`.
    pub fn probability_of(&self, event: &[usize]) -> f64 {
        event.iter().map(|&i| self.mass[i]).sum()
    }

    pub(crate) fn ensure_same_outcomes(&self, other: &Self) -> Result<()> {
        if self.outcomes == other.outcomes {
            Ok(())
        } else {
            Err(Error::OutcomeMismatch(format!(
                "{} outcomes vs {} outcomes with different labels",
                self.len(),
                other.len()
            )))
        }
    }
}

/// A joint distribution of `(X, Y)`: rows index `X`, columns index `Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    rows: OutcomeSet,
    cols: OutcomeSet,
    // row-major
    mass: Vec<f64>,
}

impl JointDistribution {
    pub fn new(rows: OutcomeSet, cols: OutcomeSet, mass: Vec<f64>) -> Result<Self> {
        if rows.len() * cols.len() != mass.len() {
            return Err(Error::InvalidDistribution(format!(
                "{}x{} table but {} masses",
                rows.len(),
                cols.len(),
                mass.len()
            )));
        }
        let mass = validated_masses(mass)?;
        Ok(Self { rows, cols, mass })
    }

    pub fn from_table(table: &[Vec<f64>]) -> Result<Self> {
        let n_rows = table.len();
        let n_cols = table.first().map_or(0, Vec::len);
        if table.iter().any(|r| r.len() != n_cols) {
            return Err(Error::InvalidDistribution("ragged table".into()));
        }
        Self::new(
            OutcomeSet::Indexed(n_rows),
            OutcomeSet::Indexed(n_cols),
            table.concat(),
        )
    }

    /// Joint of `X ~ prior` and `Y | X=x ~ channel[x]`.
    pub fn from_channel(prior: &FiniteDistribution, channel: &[FiniteDistribution]) -> Result<Self> {
        if channel.len() != prior.len() {
            return Err(Error::InvalidDistribution(format!(
                "prior over {} values but {} channel rows",
                prior.len(),
                channel.len()
            )));
        }
        let cols = channel[0].outcomes().clone();
        for row in &channel[1..] {
            channel[0].ensure_same_outcomes(row)?;
        }
        let mut mass = Vec::with_capacity(prior.len() * cols.len());
        for (x, row) in channel.iter().enumerate() {
            let px = prior.mass(x);
            mass.extend(row.masses().iter().map(|m| px * m));
        }
        Self::new(prior.outcomes().clone(), cols, mass)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.mass[x * self.cols.len() + y]
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    fn row_sums(&self) -> Vec<f64> {
        self.mass.chunks(self.cols.len()).map(|r| r.iter().sum()).collect()
    }

    fn col_sums(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.cols.len()];
        for row in self.mass.chunks(self.cols.len()) {
            for (o, m) in out.iter_mut().zip(row) {
                *o += m;
            }
        }
        out
    }

    /// Marginal of `X`.
    pub fn row_marginal(&self) -> FiniteDistribution {
        FiniteDistribution::new(self.rows.clone(), self.row_sums())
            .expect("marginal of a valid joint is valid")
    }

    /// Marginal of `Y`.
    pub fn col_marginal(&self) -> FiniteDistribution {
        FiniteDistribution::new(self.cols.clone(), self.col_sums())
            .expect("marginal of a valid joint is valid")
    }

    /// The joint viewed as one distribution over `(x, y)` pairs.
    pub fn flattened(&self) -> FiniteDistribution {
        FiniteDistribution::new(OutcomeSet::Indexed(self.mass.len()), self.mass.clone())
            .expect("valid joint")
    }

    pub fn transposed(&self) -> Self {
        let (r, c) = (self.rows.len(), self.cols.len());
        let mut mass = vec![0.0; r * c];
        for x in 0..r {
            for y in 0..c {
                mass[y * r + x] = self.mass[x * c + y];
            }
        }
        Self {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            mass,
        }
    }
}

fn plogp_sum(masses: impl IntoIterator<Item = f64>) -> f64 {
    -masses
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| p * p.log2())
        .sum::<f64>()
}

/// Shannon entropy in bits.
pub fn entropy(p: &FiniteDistribution) -> f64 {
    plogp_sum(p.masses().iter().copied())
}

/// Entropy of a Bernoulli(`p`) variable.
pub fn binary_entropy(p: f64) -> f64 {
    plogp_sum([p, 1.0 - p])
}

/// `H(X | Y)` where `X` indexes the rows of `j`.
pub fn conditional_entropy(j: &JointDistribution) -> f64 {
    let cols = j.n_cols();
    j.col_sums()
        .iter()
        .enumerate()
        .filter(|(_, &py)| py > 0.0)
        .map(|(y, &py)| {
            let conditional = (0..j.n_rows()).map(|x| j.mass[x * cols + y] / py);
            py * plogp_sum(conditional)
        })
        .sum()
}

/// `I(X; Y) = H(X) - H(X | Y)`.
pub fn mutual_information(j: &JointDistribution) -> f64 {
    plogp_sum(j.row_sums()) - conditional_entropy(j)
}

/// Relative entropy `D(p || q)` in bits; `f64::INFINITY` when `p` is not
/// absolutely continuous with respect to `q`.
pub fn kl_divergence(p: &FiniteDistribution, q: &FiniteDistribution) -> Result<f64> {
    p.ensure_same_outcomes(q)?;
    let mut total = 0.0;
    for (&a, &b) in p.masses().iter().zip(q.masses()) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += a * (a / b).log2();
    }
    Ok(total)
}

/// Product distribution over the Cartesian product, first factor most
/// significant. Labels are the comma-joined factor labels.
pub fn product_space(factors: &[&FiniteDistribution]) -> Result<FiniteDistribution> {
    let Some((first, rest)) = factors.split_first() else {
        return Err(Error::InvalidDistribution("product of zero factors".into()));
    };
    let mut labels: Vec<String> = (0..first.len())
        .map(|i| first.outcomes().label(i).into_owned())
        .collect();
    let mut mass = first.masses().to_vec();
    for f in rest {
        let mut next_labels = Vec::with_capacity(labels.len() * f.len());
        let mut next_mass = Vec::with_capacity(mass.len() * f.len());
        for (l, m) in labels.iter().zip(&mass) {
            for i in 0..f.len() {
                next_labels.push(format!("{l},{}", f.outcomes().label(i)));
                next_mass.push(m * f.mass(i));
            }
        }
        labels = next_labels;
        mass = next_mass;
    }
    FiniteDistribution::new(OutcomeSet::labeled(labels), mass)
}
