use std::sync::Arc;

use crate::error::{Error, Result};
use crate::prob::OutcomeSet;

/// The input set `Z = Z_1 × ... × Z_k`, each `Z_j = {0, .., n_j - 1}`.
///
/// Inputs are enumerated lexicographically with player 1 most significant.
/// Player indices in this API are 0-based. An input's label is its symbols
/// joined by commas, e.g. `"0,1,1"`.
#[derive(Debug, Clone)]
pub struct InputSpace {
    alphabets: Vec<usize>,
    labels: Arc<[String]>,
}

impl PartialEq for InputSpace {
    fn eq(&self, other: &Self) -> bool {
        self.alphabets == other.alphabets
    }
}

impl Eq for InputSpace {}

/// Hard cap on the number of inputs a space may enumerate.
pub const MAX_INPUTS: usize = 1 << 24;

fn join(symbols: impl IntoIterator<Item = usize>) -> String {
    symbols
        .into_iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl InputSpace {
    pub fn new(alphabets: Vec<usize>) -> Result<Self> {
        if alphabets.len() < 2 {
            return Err(Error::InvalidSpace(format!(
                "need at least 2 players, got {}",
                alphabets.len()
            )));
        }
        if let Some(j) = alphabets.iter().position(|&n| n == 0) {
            return Err(Error::InvalidSpace(format!("player {} has an empty alphabet", j + 1)));
        }
        let total = alphabets
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n).filter(|&t| t <= MAX_INPUTS))
            .ok_or_else(|| Error::InvalidSpace("input space exceeds 2^24 inputs".into()))?;
        let mut space = Self {
            alphabets,
            labels: Arc::from(Vec::new()),
        };
        space.labels = (0..total).map(|i| join(space.tuple(i))).collect();
        Ok(space)
    }

    /// `{0,1}^k`.
    pub fn cube(k: usize) -> Result<Self> {
        Self::new(vec![2; k])
    }

    pub fn players(&self) -> usize {
        self.alphabets.len()
    }

    pub fn alphabets(&self) -> &[usize] {
        &self.alphabets
    }

    pub fn is_cube(&self) -> bool {
        self.alphabets.iter().all(|&n| n == 2)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    /// The inputs as an outcome set, for distributions `ζ` over inputs.
    pub fn outcome_set(&self) -> OutcomeSet {
        OutcomeSet::Labeled(self.labels.clone())
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.players()];
        for (slot, &n) in out.iter_mut().zip(&self.alphabets).rev() {
            *slot = index % n;
            index /= n;
        }
        out
    }

    pub fn index_of(&self, z: &[usize]) -> Result<usize> {
        if z.len() != self.players() {
            return Err(Error::InvalidInput(format!(
                "expected {} symbols, got {}",
                self.players(),
                z.len()
            )));
        }
        let mut index = 0;
        for (j, (&s, &n)) in z.iter().zip(&self.alphabets).enumerate() {
            if s >= n {
                return Err(Error::InvalidInput(format!(
                    "symbol {s} for player {} outside alphabet of size {n}",
                    j + 1
                )));
            }
            index = index * n + s;
        }
        Ok(index)
    }

    /// Parses a comma-joined tuple such as `"0,1,1"`.
    pub fn parse_tuple(&self, text: &str) -> Result<Vec<usize>> {
        let z = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad symbol {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.index_of(&z)?;
        Ok(z)
    }

    /// Number of distinct views `z^{-j}` for player `j`.
    pub fn visible_len(&self, j: usize) -> usize {
        self.len() / self.alphabets[j]
    }

    /// Mixed-radix index of `z^{-j}` over the other players in order.
    pub fn visible_index(&self, j: usize, z: &[usize]) -> usize {
        z.iter()
            .zip(&self.alphabets)
            .enumerate()
            .filter(|(i, _)| *i != j)
            .fold(0, |acc, (_, (&s, &n))| acc * n + s)
    }

    /// Symbols of the view with the given index for player `j`.
    pub fn visible_tuple(&self, j: usize, mut index: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.players() - 1);
        for (i, &n) in self.alphabets.iter().enumerate().rev() {
            if i == j {
                continue;
            }
            out.push(index % n);
            index /= n;
        }
        out.reverse();
        out
    }

    pub fn visible_label(&self, j: usize, index: usize) -> String {
        join(self.visible_tuple(j, index))
    }

    pub fn parse_visible(&self, j: usize, text: &str) -> Option<usize> {
        let symbols: Vec<usize> = text
            .split(',')
            .map(|s| s.trim().parse::<usize>().ok())
            .collect::<Option<_>>()?;
        if symbols.len() != self.players() - 1 {
            return None;
        }
        let mut index = 0;
        let others = self.alphabets.iter().enumerate().filter(|(i, _)| *i != j);
        for (&s, (_, &n)) in symbols.iter().zip(others) {
            if s >= n {
                return None;
            }
            index = index * n + s;
        }
        Some(index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_lexicographic() {
        let s = InputSpace::new(vec![2, 3]).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.tuple(4), vec![1, 1]);
        assert_eq!(s.label(5), "1,2");
        for i in 0..s.len() {
            assert_eq!(s.index_of(&s.tuple(i)).unwrap(), i);
        }
    }

    #[test]
    fn visible_views_skip_the_speaker() {
        let s = InputSpace::new(vec![2, 3, 4]).unwrap();
        let z = [1, 2, 3];
        assert_eq!(s.visible_len(1), 8);
        let v = s.visible_index(1, &z);
        assert_eq!(s.visible_tuple(1, v), vec![1, 3]);
        assert_eq!(s.visible_label(1, v), "1,3");
        assert_eq!(s.parse_visible(1, "1,3"), Some(v));
        assert_eq!(s.parse_visible(1, "2,3"), None);
        assert_eq!(s.parse_visible(1, "1"), None);
    }

    #[test]
    fn rejects_bad_spaces_and_inputs() {
        assert!(InputSpace::new(vec![2]).is_err());
        assert!(InputSpace::new(vec![2, 0]).is_err());
        assert!(InputSpace::new(vec![1 << 13, 1 << 13]).is_err());
        let s = InputSpace::cube(3).unwrap();
        assert!(s.index_of(&[0, 1]).is_err());
        assert!(s.index_of(&[0, 1, 2]).is_err());
        assert!(s.parse_tuple("0,1,x").is_err());
        assert_eq!(s.parse_tuple("0, 1, 1").unwrap(), vec![0, 1, 1]);
    }
}
