use std::sync::Arc;

use super::space::InputSpace;
use crate::error::{Error, Result};
use crate::prob::OutcomeSet;

/// Leaf count times input count may not exceed this.
pub const MAX_ENUMERATION: usize = 1 << 24;

/// Builder form of a protocol tree.
///
/// An internal node's `p_one[v]` is the probability that `speaker` (0-based)
/// broadcasts bit 1 when its view `z^{-speaker}` has visible index `v` (see
/// [`InputSpace::visible_index`]). Because the node is fixed, the rule also
/// depends on the transcript prefix that leads to it.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Leaf {
        output: bool,
    },
    Internal {
        speaker: usize,
        p_one: Vec<f64>,
        zero: Box<Node>,
        one: Box<Node>,
    },
}

impl Node {
    pub fn leaf(output: bool) -> Self {
        Node::Leaf { output }
    }

    pub fn speak(speaker: usize, p_one: Vec<f64>, zero: Node, one: Node) -> Self {
        Node::Internal {
            speaker,
            p_one,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    /// A node whose rule is a deterministic function of the speaker's view.
    pub fn decide<F>(space: &InputSpace, speaker: usize, rule: F, zero: Node, one: Node) -> Self
    where
        F: Fn(&[usize]) -> bool,
    {
        let p_one = (0..space.visible_len(speaker))
            .map(|v| f64::from(u8::from(rule(&space.visible_tuple(speaker, v)))))
            .collect();
        Self::speak(speaker, p_one, zero, one)
    }
}

fn path_name(path: &[bool]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Checks every structural invariant of a protocol over `space`, naming the
/// offending node (by its transcript prefix) and view on failure.
pub fn validate_protocol(root: &Node, space: &InputSpace) -> Result<()> {
    fn walk(node: &Node, space: &InputSpace, path: &mut Vec<bool>) -> Result<()> {
        let Node::Internal {
            speaker,
            p_one,
            zero,
            one,
        } = node
        else {
            return Ok(());
        };
        let fail = |reason: String| Error::InvalidProtocol {
            node: path_name(path),
            reason,
        };
        if *speaker >= space.players() {
            return Err(fail(format!(
                "speaker {} outside players 1..={}",
                speaker + 1,
                space.players()
            )));
        }
        let expected = space.visible_len(*speaker);
        if p_one.len() != expected {
            return Err(fail(format!(
                "rule covers {} views, player {} has {expected}",
                p_one.len(),
                speaker + 1
            )));
        }
        for (v, &p) in p_one.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return Err(fail(format!(
                    "probability {p} for view \"{}\" outside [0, 1]",
                    space.visible_label(*speaker, v)
                )));
            }
        }
        path.push(false);
        walk(zero, space, path)?;
        path.pop();
        path.push(true);
        walk(one, space, path)?;
        path.pop();
        Ok(())
    }
    walk(root, space, &mut Vec::new())
}

#[derive(Debug, Clone)]
pub(crate) enum Slot {
    Leaf {
        leaf: usize,
    },
    Internal {
        speaker: usize,
        p_one: Vec<f64>,
        children: [usize; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    pub path: Vec<bool>,
    pub output: bool,
}

/// A validated, immutable k-player NOF protocol.
///
/// Leaves are numbered in depth-first order, zero branch first; a leaf's
/// label is its transcript bit string (the empty string for a root leaf).
#[derive(Debug, Clone)]
pub struct ProtocolTree {
    space: InputSpace,
    pub(crate) slots: Vec<Slot>,
    leaves: Vec<Leaf>,
    transcripts: OutcomeSet,
}

impl ProtocolTree {
    pub fn new(space: InputSpace, root: &Node) -> Result<Self> {
        validate_protocol(root, &space)?;
        let mut slots = Vec::new();
        let mut leaves = Vec::new();
        flatten(root, &mut slots, &mut leaves, &mut Vec::new());
        if leaves.len().saturating_mul(space.len()) > MAX_ENUMERATION {
            return Err(Error::TooLarge {
                leaves: leaves.len(),
                inputs: space.len(),
            });
        }
        let labels: Arc<[String]> = leaves
            .iter()
            .map(|l| l.path.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect();
        Ok(Self {
            space,
            slots,
            leaves,
            transcripts: OutcomeSet::Labeled(labels),
        })
    }

    pub fn space(&self) -> &InputSpace {
        &self.space
    }

    pub fn players(&self) -> usize {
        self.space.players()
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Outcome set of every transcript distribution of this protocol.
    pub fn transcripts(&self) -> &OutcomeSet {
        &self.transcripts
    }

    /// Leaves whose output is 1.
    pub fn accepting_leaves(&self) -> Vec<usize> {
        (0..self.leaves.len()).filter(|&i| self.leaves[i].output).collect()
    }

    /// Rebuilds the builder form.
    pub fn to_node(&self) -> Node {
        fn build(tree: &ProtocolTree, slot: usize) -> Node {
            match &tree.slots[slot] {
                Slot::Leaf { leaf } => Node::leaf(tree.leaves[*leaf].output),
                Slot::Internal {
                    speaker,
                    p_one,
                    children,
                } => Node::speak(
                    *speaker,
                    p_one.clone(),
                    build(tree, children[0]),
                    build(tree, children[1]),
                ),
            }
        }
        build(self, 0)
    }
}

fn flatten(node: &Node, slots: &mut Vec<Slot>, leaves: &mut Vec<Leaf>, path: &mut Vec<bool>) -> usize {
    let at = slots.len();
    match node {
        Node::Leaf { output } => {
            slots.push(Slot::Leaf { leaf: leaves.len() });
            leaves.push(Leaf {
                path: path.clone(),
                output: *output,
            });
        }
        Node::Internal {
            speaker,
            p_one,
            zero,
            one,
        } => {
            slots.push(Slot::Internal {
                speaker: *speaker,
                p_one: p_one.clone(),
                children: [0, 0],
            });
            path.push(false);
            let z = flatten(zero, slots, leaves, path);
            path.pop();
            path.push(true);
            let o = flatten(one, slots, leaves, path);
            path.pop();
            if let Slot::Internal { children, .. } = &mut slots[at] {
                *children = [z, o];
            }
        }
    }
    at
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_leaf_is_valid() {
        let space = InputSpace::cube(3).unwrap();
        let tree = ProtocolTree::new(space, &Node::leaf(true)).unwrap();
        assert_eq!(tree.leaf_count(), 1);
        assert_eq!(tree.transcripts().label(0), "");
    }

    #[test]
    fn out_of_range_probability_names_node_and_view() {
        let space = InputSpace::cube(2).unwrap();
        let inner = Node::speak(1, vec![0.5, 1.3], Node::leaf(false), Node::leaf(true));
        let root = Node::speak(0, vec![0.5, 0.5], inner, Node::leaf(true));
        let err = ProtocolTree::new(space, &root).unwrap_err();
        match err {
            Error::InvalidProtocol { node, reason } => {
                assert_eq!(node, "0");
                assert!(reason.contains("1.3"), "{reason}");
                assert!(reason.contains("\"1\""), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rule_must_cover_every_view() {
        let space = InputSpace::cube(3).unwrap();
        let root = Node::speak(0, vec![0.5; 3], Node::leaf(false), Node::leaf(true));
        assert!(ProtocolTree::new(space.clone(), &root).is_err());
        let root = Node::speak(3, vec![0.5; 4], Node::leaf(false), Node::leaf(true));
        assert!(ProtocolTree::new(space, &root).is_err());
    }

    #[test]
    fn leaves_are_numbered_depth_first() {
        let space = InputSpace::cube(2).unwrap();
        let root = Node::speak(
            0,
            vec![0.5; 2],
            Node::speak(1, vec![0.5; 2], Node::leaf(false), Node::leaf(true)),
            Node::leaf(true),
        );
        let tree = ProtocolTree::new(space, &root).unwrap();
        let labels: Vec<_> = (0..3).map(|i| tree.transcripts().label(i).into_owned()).collect();
        assert_eq!(labels, ["00", "01", "1"]);
        assert_eq!(tree.accepting_leaves(), vec![1, 2]);
        assert_eq!(tree.to_node(), root);
    }

    #[test]
    fn guardrail_rejects_huge_enumerations() {
        let space = InputSpace::new(vec![64, 64, 64]).unwrap();
        fn full(depth: usize, space: &InputSpace) -> Node {
            if depth == 0 {
                return Node::leaf(false);
            }
            let p = vec![0.5; space.visible_len(0)];
            Node::speak(0, p, full(depth - 1, space), full(depth - 1, space))
        }
        let root = full(7, &space);
        assert!(matches!(
            ProtocolTree::new(space, &root),
            Err(Error::TooLarge { .. })
        ));
    }
}
