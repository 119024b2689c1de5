//! Exact simulation of k-player private-coin number-on-the-forehead
//! protocols.
//!
//! A protocol is a binary tree whose internal nodes name a speaker and give,
//! for each view `z^{-j}` of that speaker, the probability of broadcasting 1.
//! Everything here is computed by enumeration; nothing is sampled.

mod forehead;
mod format;
mod sim;
mod space;
mod tree;

pub use forehead::{ForeheadModel, ForeheadProtocol};
pub use format::{
    input_distribution_to_json, parse_input_distribution, parse_protocol, protocol_to_json,
};
pub use sim::{
    check_cut_and_paste, communication_cost, error_probability, factorize, information_cost,
    information_cost_eta, transcript_distribution, transcript_family, Factorization,
    TranscriptDistribution, TruthTable,
};
pub(crate) use sim::cut_and_paste_on;
pub use space::{InputSpace, MAX_INPUTS};
pub use tree::{validate_protocol, Leaf, Node, ProtocolTree, MAX_ENUMERATION};
