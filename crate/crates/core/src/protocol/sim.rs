//! Exact evaluation of protocol trees: transcript distributions, the
//! per-player factorization, error, and communication/information cost.

use super::space::InputSpace;
use super::tree::{ProtocolTree, Slot};
use crate::error::{Error, Result};
use crate::hellinger::{CubeIndex, DistributionFamily, InequalityReport};
use crate::prob::{mutual_information, FiniteDistribution, JointDistribution, OutcomeSet};

/// Distribution of `Π(z)` over the leaves of a protocol, plus leaf outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptDistribution {
    dist: FiniteDistribution,
    outputs: Vec<bool>,
}

impl TranscriptDistribution {
    pub(crate) fn from_parts(dist: FiniteDistribution, outputs: Vec<bool>) -> Self {
        Self { dist, outputs }
    }

    pub fn distribution(&self) -> &FiniteDistribution {
        &self.dist
    }

    pub fn into_distribution(self) -> FiniteDistribution {
        self.dist
    }

    /// `Pr[Π_out(z) = 1]`.
    pub fn accept_probability(&self) -> f64 {
        self.dist
            .masses()
            .iter()
            .zip(&self.outputs)
            .filter(|(_, &o)| o)
            .map(|(m, _)| m)
            .sum()
    }
}

fn views(space: &InputSpace, z: &[usize]) -> Vec<usize> {
    (0..space.players()).map(|j| space.visible_index(j, z)).collect()
}

/// Leaf masses by path products, given each player's visible index.
pub(crate) fn leaf_masses(tree: &ProtocolTree, views: &[usize]) -> Vec<f64> {
    let mut mass = vec![0.0; tree.leaf_count()];
    let mut stack = vec![(0usize, 1.0f64)];
    while let Some((slot, p)) = stack.pop() {
        match &tree.slots[slot] {
            Slot::Leaf { leaf } => mass[*leaf] = p,
            Slot::Internal {
                speaker,
                p_one,
                children,
            } => {
                let one = p_one[views[*speaker]];
                stack.push((children[1], p * one));
                stack.push((children[0], p * (1.0 - one)));
            }
        }
    }
    mass
}

pub(crate) fn to_transcript(tree: &ProtocolTree, mass: Vec<f64>) -> TranscriptDistribution {
    let dist = FiniteDistribution::new(tree.transcripts().clone(), mass)
        .expect("path products of a valid protocol form a distribution");
    let outputs = tree.leaves().iter().map(|l| l.output).collect();
    TranscriptDistribution::from_parts(dist, outputs)
}

/// Exact distribution of the transcript on input `z`.
pub fn transcript_distribution(tree: &ProtocolTree, z: &[usize]) -> Result<TranscriptDistribution> {
    tree.space().index_of(z)?;
    Ok(to_transcript(tree, leaf_masses(tree, &views(tree.space(), z))))
}

fn transcript_at(tree: &ProtocolTree, index: usize) -> TranscriptDistribution {
    let z = tree.space().tuple(index);
    to_transcript(tree, leaf_masses(tree, &views(tree.space(), &z)))
}

/// `{P_z}` for every input, indexed and labeled in input enumeration order.
pub fn transcript_family(tree: &ProtocolTree) -> DistributionFamily {
    let space = tree.space();
    let members = (0..space.len())
        .map(|i| transcript_at(tree, i).into_distribution())
        .collect();
    let labels = (0..space.len()).map(|i| space.label(i).to_string()).collect();
    DistributionFamily::new(labels, members).expect("all members share the leaf set")
}

/// `q_j(ω; z^{-j})` for each player `j` and leaf `ω` on a fixed input.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    q: Vec<Vec<f64>>,
}

impl Factorization {
    pub fn players(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self, player: usize, leaf: usize) -> f64 {
        self.q[player][leaf]
    }

    /// `Π_j q_j(ω; z^{-j})`.
    pub fn product(&self, leaf: usize) -> f64 {
        self.q.iter().map(|row| row[leaf]).product()
    }

    /// Largest `|Π_j q_j(ω) - Pr[Π(z) = ω]|` over leaves.
    pub fn max_deviation(&self, transcript: &TranscriptDistribution) -> f64 {
        transcript
            .distribution()
            .masses()
            .iter()
            .enumerate()
            .map(|(w, m)| (self.product(w) - m).abs())
            .fold(0.0, f64::max)
    }
}

/// Splits each leaf's path product by speaker.
pub fn factorize(tree: &ProtocolTree, z: &[usize]) -> Result<Factorization> {
    let space = tree.space();
    space.index_of(z)?;
    let views = views(space, z);
    let k = space.players();
    let mut q = vec![vec![0.0; tree.leaf_count()]; k];
    let mut stack = vec![(0usize, vec![1.0f64; k])];
    while let Some((slot, acc)) = stack.pop() {
        match &tree.slots[slot] {
            Slot::Leaf { leaf } => {
                for (j, v) in acc.into_iter().enumerate() {
                    q[j][*leaf] = v;
                }
            }
            Slot::Internal {
                speaker,
                p_one,
                children,
            } => {
                let one = p_one[views[*speaker]];
                let mut zero_acc = acc.clone();
                zero_acc[*speaker] *= 1.0 - one;
                let mut one_acc = acc;
                one_acc[*speaker] *= one;
                stack.push((children[1], one_acc));
                stack.push((children[0], zero_acc));
            }
        }
    }
    Ok(Factorization { q })
}

/// `ψ(I_OZ) = ψ(I_EZ)` on the transcript family of a protocol over `{0,1}^k`.
pub fn check_cut_and_paste(tree: &ProtocolTree, tolerance: f64) -> Result<InequalityReport> {
    cut_and_paste_on(tree, &transcript_family(tree), tolerance)
}

pub(crate) fn cut_and_paste_on(
    tree: &ProtocolTree,
    family: &DistributionFamily,
    tolerance: f64,
) -> Result<InequalityReport> {
    if !tree.space().is_cube() {
        return Err(Error::Precondition(
            "cut-and-paste needs a binary input cube".into(),
        ));
    }
    let cube = CubeIndex::new(tree.players())?;
    let odd = family.psi(&cube.odd_zeros())?;
    let even = family.psi(&cube.even_zeros())?;
    Ok(InequalityReport::equal("cut_and_paste", odd, even, tolerance))
}

/// A Boolean function on an input space, stored in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    values: Vec<bool>,
}

impl TruthTable {
    pub fn from_fn<F: Fn(&[usize]) -> bool>(space: &InputSpace, f: F) -> Self {
        Self {
            values: (0..space.len()).map(|i| f(&space.tuple(i))).collect(),
        }
    }

    /// `AND_k` on the cube; on larger alphabets, true iff every symbol is 1.
    pub fn and(space: &InputSpace) -> Self {
        Self::from_fn(space, |z| z.iter().all(|&s| s == 1))
    }

    /// Parses a `0`/`1` string, one character per input in enumeration order.
    pub fn parse(space: &InputSpace, bits: &str) -> Result<Self> {
        let values = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("truth table has non-bit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != space.len() {
            return Err(Error::Parse(format!(
                "truth table has {} entries, space has {} inputs",
                values.len(),
                space.len()
            )));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, index: usize) -> bool {
        self.values[index]
    }
}

/// `max_z Pr[Π_out(z) != f(z)]`.
pub fn error_probability(tree: &ProtocolTree, f: &TruthTable) -> Result<f64> {
    let space = tree.space();
    if f.len() != space.len() {
        return Err(Error::Precondition(format!(
            "truth table over {} inputs, protocol over {}",
            f.len(),
            space.len()
        )));
    }
    Ok((0..space.len())
        .map(|i| error_on(transcript_at(tree, i).accept_probability(), f.value(i)))
        .fold(0.0, f64::max))
}

pub(crate) fn error_on(accept: f64, truth: bool) -> f64 {
    if truth {
        1.0 - accept
    } else {
        accept
    }
}

/// Maximum transcript length in bits.
pub fn communication_cost(tree: &ProtocolTree) -> usize {
    tree.leaves().iter().map(|l| l.path.len()).max().unwrap_or(0)
}

pub(crate) fn ensure_input_distribution(space: &InputSpace, zeta: &FiniteDistribution) -> Result<()> {
    let ok = match zeta.outcomes() {
        OutcomeSet::Indexed(n) => *n == space.len(),
        labeled => *labeled == space.outcome_set(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutcomeMismatch(format!(
            "ζ over {} outcomes is not a distribution over the {} protocol inputs",
            zeta.len(),
            space.len()
        )))
    }
}

/// `I(Z; C)` for `Z ~ zeta` and `C | Z=z ~ channel(z)`; inputs with zero
/// prior mass are never evaluated.
pub(crate) fn information_of<F>(zeta: &FiniteDistribution, n_transcripts: usize, channel: F) -> f64
where
    F: Fn(usize) -> Vec<f64>,
{
    let support: Vec<usize> = (0..zeta.len()).filter(|&i| zeta.mass(i) > 0.0).collect();
    let mut mass = Vec::with_capacity(support.len() * n_transcripts);
    for &i in &support {
        let pz = zeta.mass(i);
        mass.extend(channel(i).into_iter().map(|m| pz * m));
    }
    let joint = JointDistribution::new(
        OutcomeSet::Indexed(support.len()),
        OutcomeSet::Indexed(n_transcripts),
        mass,
    )
    .expect("prior times channel is a joint distribution");
    mutual_information(&joint)
}

/// `I(Z; Π(Z))` with `Z ~ zeta`.
pub fn information_cost(tree: &ProtocolTree, zeta: &FiniteDistribution) -> Result<f64> {
    let space = tree.space();
    ensure_input_distribution(space, zeta)?;
    Ok(information_of(zeta, tree.leaf_count(), |i| {
        leaf_masses(tree, &views(space, &space.tuple(i)))
    }))
}

/// Average of [`information_cost`] over the collection.
pub fn information_cost_eta(tree: &ProtocolTree, eta: &[FiniteDistribution]) -> Result<f64> {
    if eta.is_empty() {
        return Err(Error::Precondition("empty distribution collection".into()));
    }
    let total = eta
        .iter()
        .map(|zeta| information_cost(tree, zeta))
        .sum::<Result<f64>>()?;
    Ok(total / eta.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::tree::Node;
    use approx::assert_abs_diff_eq;

    fn two_level(space: &InputSpace) -> ProtocolTree {
        // 0.3 then 0.6 / 0.2 by branch, independent of inputs.
        let vis = space.visible_len(0);
        let root = Node::speak(
            0,
            vec![0.3; vis],
            Node::speak(1, vec![0.6; space.visible_len(1)], Node::leaf(false), Node::leaf(true)),
            Node::speak(1, vec![0.2; space.visible_len(1)], Node::leaf(false), Node::leaf(true)),
        );
        ProtocolTree::new(space.clone(), &root).unwrap()
    }

    #[test]
    fn fair_coin_and_path_products() {
        let space = InputSpace::cube(2).unwrap();
        let coin = Node::speak(0, vec![0.5, 0.5], Node::leaf(false), Node::leaf(true));
        let tree = ProtocolTree::new(space.clone(), &coin).unwrap();
        let t = transcript_distribution(&tree, &[1, 0]).unwrap();
        assert_eq!(t.distribution().masses(), &[0.5, 0.5]);

        let tree = two_level(&space);
        let t = transcript_distribution(&tree, &[0, 1]).unwrap();
        let want = [0.7 * 0.4, 0.7 * 0.6, 0.3 * 0.8, 0.3 * 0.2];
        for (got, want) in t.distribution().masses().iter().zip(want) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn path_products_in_leaf_order() {
        // Zero branch taken with 0.3 at the root and 0.6 below:
        // (0.3·0.6, 0.3·0.4, 0.7·0.6, 0.7·0.4).
        let space = InputSpace::cube(2).unwrap();
        let root = Node::speak(
            0,
            vec![0.7; 2],
            Node::speak(1, vec![0.4; 2], Node::leaf(false), Node::leaf(true)),
            Node::speak(1, vec![0.4; 2], Node::leaf(false), Node::leaf(true)),
        );
        let tree = ProtocolTree::new(space, &root).unwrap();
        let t = transcript_distribution(&tree, &[0, 0]).unwrap();
        for (got, want) in t.distribution().masses().iter().zip([0.18, 0.12, 0.42, 0.28]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn deterministic_protocol_gives_point_masses() {
        let space = InputSpace::cube(2).unwrap();
        // player 1 announces z_2
        let root = Node::decide(&space, 0, |v| v[0] == 1, Node::leaf(false), Node::leaf(true));
        let tree = ProtocolTree::new(space, &root).unwrap();
        let fam = transcript_family(&tree);
        assert_eq!(fam.member(0).masses(), &[1.0, 0.0]);
        assert_eq!(fam.member(1).masses(), &[0.0, 1.0]);
        assert_eq!(fam.member(2), fam.member(0));
        assert_eq!(fam.member(3), fam.member(1));
        let f = factorize(&tree, &[1, 1]).unwrap();
        for j in 0..2 {
            for w in 0..2 {
                assert!(f.q(j, w) == 0.0 || f.q(j, w) == 1.0);
            }
        }
    }

    #[test]
    fn single_speaker_factorization() {
        let space = InputSpace::cube(3).unwrap();
        let root = Node::speak(
            0,
            vec![0.1, 0.4, 0.5, 0.9],
            Node::leaf(false),
            Node::speak(0, vec![0.3, 0.3, 0.2, 0.7], Node::leaf(false), Node::leaf(true)),
        );
        let tree = ProtocolTree::new(space, &root).unwrap();
        let z = [1, 0, 1];
        let f = factorize(&tree, &z).unwrap();
        let t = transcript_distribution(&tree, &z).unwrap();
        for w in 0..tree.leaf_count() {
            assert_eq!(f.q(1, w), 1.0);
            assert_eq!(f.q(2, w), 1.0);
        }
        assert!(f.max_deviation(&t) <= 1e-15);
    }

    #[test]
    fn costs_and_error() {
        let space = InputSpace::cube(2).unwrap();
        let constant = ProtocolTree::new(space.clone(), &Node::leaf(false)).unwrap();
        assert_eq!(communication_cost(&constant), 0);
        let and = TruthTable::and(&space);
        assert_eq!(error_probability(&constant, &and).unwrap(), 1.0);
        let u = FiniteDistribution::uniform_over(space.outcome_set()).unwrap();
        assert_eq!(information_cost(&constant, &u).unwrap(), 0.0);

        // player 1 announces z_2, player 2 announces z_1: transcript = z
        let leaf_out = |a: bool, b: bool| Node::leaf(a && b);
        let reveal_z1 = |first: bool| {
            Node::decide(&space, 1, |v| v[0] == 1, leaf_out(false, first), leaf_out(true, first))
        };
        let root = Node::decide(&space, 0, |v| v[0] == 1, reveal_z1(false), reveal_z1(true));
        let tree = ProtocolTree::new(space.clone(), &root).unwrap();
        assert_eq!(communication_cost(&tree), 2);
        assert_abs_diff_eq!(information_cost(&tree, &u).unwrap(), 2.0, epsilon = 1e-12);
        assert_eq!(error_probability(&tree, &and).unwrap(), 0.0);
    }

    #[test]
    fn information_cost_rejects_foreign_prior() {
        let space = InputSpace::cube(2).unwrap();
        let tree = ProtocolTree::new(space, &Node::leaf(false)).unwrap();
        let wrong = FiniteDistribution::uniform(3).unwrap();
        assert!(information_cost(&tree, &wrong).is_err());
        assert!(information_cost_eta(&tree, &[]).is_err());
        let indexed = FiniteDistribution::uniform(4).unwrap();
        assert!(information_cost(&tree, &indexed).is_ok());
    }

    #[test]
    fn cut_and_paste_needs_a_cube() {
        let space = InputSpace::new(vec![2, 3]).unwrap();
        let tree = ProtocolTree::new(space, &Node::leaf(true)).unwrap();
        assert!(check_cut_and_paste(&tree, 1e-9).is_err());
        let cube = ProtocolTree::new(InputSpace::cube(3).unwrap(), &Node::leaf(true)).unwrap();
        let r = check_cut_and_paste(&cube, 1e-9).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
    }

    #[test]
    fn truth_table_parsing() {
        let space = InputSpace::cube(2).unwrap();
        assert_eq!(TruthTable::parse(&space, "0001").unwrap(), TruthTable::and(&space));
        assert!(TruthTable::parse(&space, "001").is_err());
        assert!(TruthTable::parse(&space, "00x1").is_err());
    }
}
