use crate::error::{Error, Result};
use crate::prob::{FiniteDistribution, OutcomeSet};

/// `Σ_ω (Π_j p_j(ω))^{1/m}` with the geometric mean taken in log domain.
/// A zero factor makes the term exactly zero.
pub(crate) fn geometric_overlap<'a, I>(members: I, n_outcomes: usize) -> f64
where
    I: Iterator<Item = &'a [f64]> + Clone,
{
    let m = members.clone().count() as f64;
    (0..n_outcomes)
        .map(|w| {
            let mut log_sum = 0.0;
            for p in members.clone() {
                let x = p[w];
                if x == 0.0 {
                    return 0.0;
                }
                log_sum += x.ln();
            }
            (log_sum / m).exp()
        })
        .sum()
}

/// The `m`-dimensional Hellinger volume `1 - Σ_ω (Π_j p_j(ω))^{1/m}`.
pub fn hellinger_volume(dists: &[&FiniteDistribution]) -> Result<f64> {
    if dists.len() < 2 {
        return Err(Error::Precondition(format!(
            "Hellinger volume needs at least 2 distributions, got {}",
            dists.len()
        )));
    }
    for d in &dists[1..] {
        dists[0].ensure_same_outcomes(d)?;
    }
    Ok(1.0 - geometric_overlap(dists.iter().map(|d| d.masses()), dists[0].len()))
}

/// Squared Hellinger distance `1 - Σ √(p q)`.
pub fn squared_hellinger_distance(p: &FiniteDistribution, q: &FiniteDistribution) -> Result<f64> {
    p.ensure_same_outcomes(q)?;
    let bc: f64 = p
        .masses()
        .iter()
        .zip(q.masses())
        .map(|(a, b)| (a * b).sqrt())
        .sum();
    Ok(1.0 - bc)
}

/// A family `{P_z}` of distributions over one common outcome set.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionFamily {
    labels: Vec<String>,
    members: Vec<FiniteDistribution>,
}

impl DistributionFamily {
    pub fn new(labels: Vec<String>, members: Vec<FiniteDistribution>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Precondition("empty distribution family".into()));
        }
        if labels.len() != members.len() {
            return Err(Error::Precondition(format!(
                "{} labels for {} members",
                labels.len(),
                members.len()
            )));
        }
        for m in &members[1..] {
            members[0].ensure_same_outcomes(m)?;
        }
        Ok(Self { labels, members })
    }

    /// Family indexed by `0..n`.
    pub fn indexed(members: Vec<FiniteDistribution>) -> Result<Self> {
        let labels = (0..members.len()).map(|i| i.to_string()).collect();
        Self::new(labels, members)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn members(&self) -> &[FiniteDistribution] {
        &self.members
    }

    pub fn member(&self, z: usize) -> &FiniteDistribution {
        &self.members[z]
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        self.members[0].outcomes()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub(crate) fn check_subset(&self, subset: &[usize], what: &str) -> Result<()> {
        for (i, &z) in subset.iter().enumerate() {
            if z >= self.len() {
                return Err(Error::InvalidSubset(format!(
                    "{what}: index {z} not in a family of {}",
                    self.len()
                )));
            }
            if subset[..i].contains(&z) {
                return Err(Error::InvalidSubset(format!("{what}: index {z} repeated")));
            }
        }
        Ok(())
    }

    /// `ψ(A; P)`, the Hellinger volume of the sub-family indexed by `subset`.
    pub fn psi(&self, subset: &[usize]) -> Result<f64> {
        if subset.len() < 2 {
            return Err(Error::InvalidSubset(format!(
                "ψ needs |A| >= 2, got {}",
                subset.len()
            )));
        }
        self.check_subset(subset, "A")?;
        Ok(self.psi_unchecked(subset))
    }

    pub(crate) fn psi_unchecked(&self, subset: &[usize]) -> f64 {
        let members = subset.iter().map(|&z| self.members[z].masses());
        1.0 - geometric_overlap(members, self.outcomes().len())
    }
}

pub fn psi(family: &DistributionFamily, subset: &[usize]) -> Result<f64> {
    family.psi(subset)
}
