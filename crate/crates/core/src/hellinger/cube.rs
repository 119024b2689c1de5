//! Index combinatorics of the Boolean cube `{0,1}^k`.
//!
//! Points are numbered lexicographically with coordinate 0 (player 1) most
//! significant, so index `i` has bit `(i >> (k - 1 - j)) & 1` at coordinate
//! `j`. This matches the input enumeration of a binary `InputSpace`.

use crate::error::{Error, Result};

pub const MAX_CUBE_DIM: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeIndex {
    k: usize,
}

impl CubeIndex {
    pub fn new(k: usize) -> Result<Self> {
        if !(2..=MAX_CUBE_DIM).contains(&k) {
            return Err(Error::Precondition(format!(
                "cube dimension {k} outside [2, {MAX_CUBE_DIM}]"
            )));
        }
        Ok(Self { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        1 << self.k
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bit(&self, point: usize, coord: usize) -> u8 {
        ((point >> (self.k - 1 - coord)) & 1) as u8
    }

    pub fn bits(&self, point: usize) -> Vec<u8> {
        (0..self.k).map(|j| self.bit(point, j)).collect()
    }

    /// Comma-joined coordinates, e.g. `"0,1,1"`.
    pub fn label(&self, point: usize) -> String {
        self.bits(point)
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn all_ones(&self) -> usize {
        self.len() - 1
    }

    fn zeros_in(&self, point: usize, coords: &[usize]) -> usize {
        coords.iter().filter(|&&j| self.bit(point, j) == 0).count()
    }

    /// `I_j`: points whose coordinate `j` (0-based) is zero.
    pub fn zero_at(&self, j: usize) -> Vec<usize> {
        assert!(j < self.k, "coordinate {j} out of range");
        (0..self.len()).filter(|&p| self.bit(p, j) == 0).collect()
    }

    /// `I_s`: points with an odd number of zeros among the coordinates in `s`.
    pub fn odd_zeros_in(&self, s: &[usize]) -> Vec<usize> {
        assert!(s.iter().all(|&j| j < self.k), "coordinate out of range");
        (0..self.len())
            .filter(|&p| self.zeros_in(p, s) % 2 == 1)
            .collect()
    }

    /// `I_OZ`.
    pub fn odd_zeros(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.k).collect();
        self.odd_zeros_in(&all)
    }

    /// `I_EZ`.
    pub fn even_zeros(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.k).collect();
        (0..self.len())
            .filter(|&p| self.zeros_in(p, &all).is_multiple_of(2))
            .collect()
    }
}

/// `(A \ B) ∪ (B \ A)`, sorted.
pub fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a
        .iter()
        .filter(|x| !b.contains(x))
        .chain(b.iter().filter(|x| !a.contains(x)))
        .copied()
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `⌈log₂ n⌉` for `n >= 1`, computed over integers.
pub fn ceil_log2(n: usize) -> u32 {
    assert!(n >= 1);
    n.next_power_of_two().trailing_zeros()
}
