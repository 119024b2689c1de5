//! Hellinger volume, the subset volume `ψ(A; P)`, and checkable forms of the
//! inequalities relating them to divergence and mutual information.

mod cube;
mod lemmas;
mod report;
mod volume;

pub use cube::{ceil_log2, symmetric_difference, CubeIndex};
pub use lemmas::{
    arithmetic_mean, check_am_gm_bound, check_am_gm_sequence, check_mutual_info_lower_bound,
    check_psi_lower_bound, check_subset_lemma, check_symmetric_difference, geometric_mean,
    psi_lower_bound_value, HYPOTHESIS_TOLERANCE,
};
pub use report::{InequalityReport, Relation};
pub use volume::{hellinger_volume, psi, squared_hellinger_distance, DistributionFamily};
