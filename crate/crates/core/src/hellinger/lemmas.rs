//! Checkable forms of the Hellinger-volume inequalities.
//!
//! Every check evaluates both sides exactly (up to binary64 rounding) and
//! returns an [`InequalityReport`]; none of them panics on a failed
//! inequality. Errors are reserved for inputs outside a lemma's hypotheses.

use std::f64::consts::LN_2;

use super::cube::{ceil_log2, symmetric_difference, CubeIndex};
use super::report::InequalityReport;
use super::volume::{geometric_overlap, DistributionFamily};
use crate::error::{Error, Result};
use crate::prob::{kl_divergence, mutual_information, FiniteDistribution, JointDistribution};

/// Slack allowed when validating event-probability hypotheses.
pub const HYPOTHESIS_TOLERANCE: f64 = 1e-9;

pub fn arithmetic_mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn geometric_mean(xs: &[f64]) -> f64 {
    geometric_overlap(xs.iter().map(std::slice::from_ref), 1)
}

/// `A(p) - G(p) <= ln 2 · D(p || u)` for a distribution `p` over `[m]`.
///
/// The report's `lhs` is `ln 2 · D(p || u)` and its `rhs` is `A(p) - G(p)`.
pub fn check_am_gm_bound(p: &FiniteDistribution, tolerance: f64) -> InequalityReport {
    let u = FiniteDistribution::uniform_over(p.outcomes().clone()).expect("nonempty outcome set");
    let divergence = kl_divergence(p, &u).expect("same outcome set");
    let gap = arithmetic_mean(p.masses()) - geometric_mean(p.masses());
    InequalityReport::at_least("am_gm_bound", LN_2 * divergence, gap, tolerance)
}

/// `A(α) - G(α) <= Σ α_j ln(α_j / A(α))` for a nonnegative sequence, by
/// normalizing and scaling the distribution form back up by `Σ α`.
pub fn check_am_gm_sequence(alpha: &[f64], tolerance: f64) -> Result<InequalityReport> {
    if alpha.iter().any(|a| !a.is_finite() || *a < 0.0) {
        return Err(Error::Precondition("sequence must be nonnegative and finite".into()));
    }
    let total: f64 = alpha.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::Precondition("sequence must have a positive entry".into()));
    }
    let normalized = FiniteDistribution::from_weights(
        crate::prob::OutcomeSet::Indexed(alpha.len()),
        alpha,
    )?;
    let base = check_am_gm_bound(&normalized, tolerance);
    Ok(InequalityReport::at_most(
        "am_gm_sequence",
        total * base.rhs,
        total * base.lhs,
        tolerance,
    ))
}

/// `I(Z; Φ(Z)) >= h_m(Φ_1..Φ_m) / (m ln 2)` for `Z` uniform over the family.
pub fn check_mutual_info_lower_bound(
    channels: &DistributionFamily,
    tolerance: f64,
) -> Result<InequalityReport> {
    let m = channels.len();
    if m < 2 {
        return Err(Error::Precondition(format!("need m >= 2 channels, got {m}")));
    }
    let prior = FiniteDistribution::uniform(m)?;
    let joint = JointDistribution::from_channel(&prior, channels.members())?;
    let all: Vec<usize> = (0..m).collect();
    let volume = channels.psi_unchecked(&all);
    Ok(InequalityReport::at_least(
        "mutual_info_lower_bound",
        mutual_information(&joint),
        volume / (m as f64 * LN_2),
        tolerance,
    ))
}

/// `ψ(A) + ψ(B) >= ψ(AΔB) / 2` when `|A| = |B| = |AΔB|`.
pub fn check_symmetric_difference(
    family: &DistributionFamily,
    a: &[usize],
    b: &[usize],
    tolerance: f64,
) -> Result<InequalityReport> {
    family.check_subset(a, "A")?;
    family.check_subset(b, "B")?;
    let delta = symmetric_difference(a, b);
    if a.len() != b.len() || a.len() != delta.len() {
        return Err(Error::Precondition(format!(
            "need |A| = |B| = |AΔB|, got {}, {}, {}",
            a.len(),
            b.len(),
            delta.len()
        )));
    }
    if a.len() < 2 || !a.len().is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "|A| must be even and at least 2, got {}",
            a.len()
        )));
    }
    let lhs = family.psi_unchecked(a) + family.psi_unchecked(b);
    let rhs = family.psi_unchecked(&delta) / 2.0;
    Ok(InequalityReport::at_least("symmetric_difference", lhs, rhs, tolerance))
}

fn ensure_cube_family(family: &DistributionFamily, k: usize) -> Result<CubeIndex> {
    let cube = CubeIndex::new(k)?;
    let labels_match = family.len() == cube.len()
        && family
            .labels()
            .iter()
            .enumerate()
            .all(|(i, l)| *l == cube.label(i));
    if labels_match {
        Ok(cube)
    } else {
        Err(Error::Precondition(format!(
            "family is not indexed by {{0,1}}^{k} in lexicographic order"
        )))
    }
}

/// `Σ_{j∈s} ψ(I_j) >= ψ(I_s) / 2^{⌈log₂|s|⌉}` for a family indexed by the
/// cube `{0,1}^k`. Coordinates in `s` are 0-based. With `s = [k]` this is
/// the tree form `Σ_j ψ(I_j) >= ψ(I_OZ) / 2^{⌈log₂ k⌉}`.
pub fn check_subset_lemma(
    family: &DistributionFamily,
    k: usize,
    s: &[usize],
    tolerance: f64,
) -> Result<InequalityReport> {
    let cube = ensure_cube_family(family, k)?;
    if s.is_empty() {
        return Err(Error::InvalidSubset("coordinate set s is empty".into()));
    }
    for (i, &j) in s.iter().enumerate() {
        if j >= k || s[..i].contains(&j) {
            return Err(Error::InvalidSubset(format!("bad coordinate {j} in s")));
        }
    }
    let lhs: f64 = s.iter().map(|&j| family.psi_unchecked(&cube.zero_at(j))).sum();
    let scale = (1u64 << ceil_log2(s.len())) as f64;
    let rhs = family.psi_unchecked(&cube.odd_zeros_in(s)) / scale;
    Ok(InequalityReport::at_least("subset_lemma", lhs, rhs, tolerance))
}

/// `(2 - 4√(δ(1-δ))) / t`, the Hölder lower bound on `ψ(A)` for `|A| = t`.
pub fn psi_lower_bound_value(t: usize, delta: f64) -> f64 {
    (2.0 - 4.0 * (delta * (1.0 - delta)).sqrt()) / t as f64
}

/// `ψ(A) >= (2 - 4√(δ(1-δ))) / t`, given an event `T` (outcome indices) with
/// `P_v(T) >= 1 - δ` and `P_u(T) <= δ` for every other `u ∈ A`.
///
/// The hypothesis is verified against the family; a violation is reported as
/// [`Error::Hypothesis`].
pub fn check_psi_lower_bound(
    family: &DistributionFamily,
    a: &[usize],
    event: &[usize],
    v: usize,
    delta: f64,
    tolerance: f64,
) -> Result<InequalityReport> {
    family.check_subset(a, "A")?;
    let t = a.len();
    if t < 2 {
        return Err(Error::InvalidSubset(format!("need |A| >= 2, got {t}")));
    }
    if !a.contains(&v) {
        return Err(Error::InvalidSubset(format!("v = {v} is not in A")));
    }
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::Precondition(format!("δ = {delta} outside [0, 1/2]")));
    }
    let n_outcomes = family.outcomes().len();
    for (i, &w) in event.iter().enumerate() {
        if w >= n_outcomes || event[..i].contains(&w) {
            return Err(Error::InvalidSubset(format!("bad outcome {w} in event T")));
        }
    }
    let pv = family.member(v).probability_of(event);
    if pv < 1.0 - delta - HYPOTHESIS_TOLERANCE {
        return Err(Error::Hypothesis(format!(
            "P_v(T) = {pv} is below 1 - δ = {}",
            1.0 - delta
        )));
    }
    for &u in a.iter().filter(|&&u| u != v) {
        let pu = family.member(u).probability_of(event);
        if pu > delta + HYPOTHESIS_TOLERANCE {
            return Err(Error::Hypothesis(format!(
                "P_u(T) = {pu} exceeds δ = {delta} for u = {}",
                family.labels()[u]
            )));
        }
    }
    Ok(InequalityReport::at_least(
        "psi_lower_bound",
        family.psi_unchecked(a),
        psi_lower_bound_value(t, delta),
        tolerance,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const TOL: f64 = 1e-9;

    fn d(m: &[f64]) -> FiniteDistribution {
        FiniteDistribution::from_masses(m.to_vec()).unwrap()
    }

    fn cube_family(k: usize, members: Vec<FiniteDistribution>) -> DistributionFamily {
        DistributionFamily::new(CubeIndex::new(k).unwrap().labels(), members).unwrap()
    }

    #[test]
    fn am_gm_uniform_is_tight() {
        for m in 1..=32 {
            let r = check_am_gm_bound(&FiniteDistribution::uniform(m).unwrap(), TOL);
            assert!(r.holds);
            assert_abs_diff_eq!(r.lhs, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(r.rhs, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn am_gm_point_mass() {
        let r = check_am_gm_bound(&d(&[1.0, 0.0, 0.0, 0.0]), TOL);
        assert_abs_diff_eq!(r.rhs, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(r.lhs, 1.386_294_361_119_890_6, epsilon = 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn am_gm_sequence_examples() {
        let c = check_am_gm_sequence(&[3.0; 5], TOL).unwrap();
        assert_abs_diff_eq!(c.lhs, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.rhs, 0.0, epsilon = 1e-12);
        let r = check_am_gm_sequence(&[2.0, 0.0, 0.0, 0.0], TOL).unwrap();
        assert_abs_diff_eq!(r.lhs, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.rhs, 2.772_588_722_239_781, epsilon = 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn am_gm_sequence_matches_direct_form() {
        let alpha = [0.3, 2.0, 0.0, 7.5, 1.25];
        let r = check_am_gm_sequence(&alpha, TOL).unwrap();
        let a = arithmetic_mean(&alpha);
        let direct: f64 = alpha
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| x * (x / a).ln())
            .sum();
        assert_abs_diff_eq!(r.rhs, direct, epsilon = 1e-12);
        assert_abs_diff_eq!(r.lhs, a, epsilon = 1e-12);
    }

    #[test]
    fn am_gm_sequence_rejects_zero_and_negative() {
        assert!(check_am_gm_sequence(&[0.0, 0.0], TOL).is_err());
        assert!(check_am_gm_sequence(&[1.0, -1.0, 2.0], TOL).is_err());
    }

    #[test]
    fn mutual_info_examples() {
        let p = d(&[0.2, 0.8]);
        let same = DistributionFamily::indexed(vec![p.clone(), p.clone(), p]).unwrap();
        let r = check_mutual_info_lower_bound(&same, TOL).unwrap();
        assert_abs_diff_eq!(r.lhs, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.rhs, 0.0, epsilon = 1e-12);

        let split = DistributionFamily::indexed(vec![d(&[1.0, 0.0]), d(&[0.0, 1.0])]).unwrap();
        let r = check_mutual_info_lower_bound(&split, TOL).unwrap();
        assert_abs_diff_eq!(r.lhs, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.rhs, 0.721_347_520_444_481_7, epsilon = 1e-12);
        assert!(r.holds);

        let one = DistributionFamily::indexed(vec![d(&[1.0])]).unwrap();
        assert!(check_mutual_info_lower_bound(&one, TOL).is_err());
    }

    #[test]
    fn symmetric_difference_examples() {
        let p = d(&[0.4, 0.6]);
        let same = cube_family(2, vec![p.clone(), p.clone(), p.clone(), p]);
        // A = {00, 01}, B = {01, 11}
        let r = check_symmetric_difference(&same, &[0, 1], &[1, 3], TOL).unwrap();
        assert_abs_diff_eq!(r.lhs, 0.0, epsilon = 1e-12);
        assert!(r.holds);

        let fam = cube_family(
            2,
            vec![d(&[0.7, 0.2, 0.1]), d(&[0.1, 0.1, 0.8]), d(&[0.3, 0.3, 0.4]), d(&[0.05, 0.9, 0.05])],
        );
        let r = check_symmetric_difference(&fam, &[0, 1], &[1, 3], TOL).unwrap();
        let direct = fam.psi(&[0, 1]).unwrap() + fam.psi(&[1, 3]).unwrap();
        assert_abs_diff_eq!(r.lhs, direct, epsilon = 1e-15);
        assert_abs_diff_eq!(r.rhs, fam.psi(&[0, 3]).unwrap() / 2.0, epsilon = 1e-15);
        assert!(r.holds);
    }

    #[test]
    fn symmetric_difference_preconditions() {
        let p = d(&[0.4, 0.6]);
        let fam = DistributionFamily::indexed(vec![p; 6]).unwrap();
        // |AΔB| = 4 != 2
        assert!(check_symmetric_difference(&fam, &[0, 1], &[2, 3], TOL).is_err());
        // |A| odd
        assert!(check_symmetric_difference(&fam, &[0, 1, 2], &[1, 3, 4], TOL).is_err());
        // index outside family
        assert!(check_symmetric_difference(&fam, &[0, 9], &[9, 3], TOL).is_err());
    }

    #[test]
    fn subset_lemma_examples() {
        let members = vec![
            d(&[0.5, 0.5]),
            d(&[0.9, 0.1]),
            d(&[0.2, 0.8]),
            d(&[0.6, 0.4]),
            d(&[0.3, 0.7]),
            d(&[1.0, 0.0]),
            d(&[0.45, 0.55]),
            d(&[0.05, 0.95]),
        ];
        let fam = cube_family(3, members);
        for j in 0..3 {
            let r = check_subset_lemma(&fam, 3, &[j], TOL).unwrap();
            assert_eq!(r.lhs, r.rhs);
        }
        let full = check_subset_lemma(&fam, 3, &[0, 1, 2], TOL).unwrap();
        assert!(full.holds);
        let cube = CubeIndex::new(3).unwrap();
        assert_abs_diff_eq!(full.rhs, fam.psi(&cube.odd_zeros()).unwrap() / 4.0, epsilon = 1e-15);

        let p = d(&[0.25, 0.75]);
        let same = cube_family(3, vec![p; 8]);
        let r = check_subset_lemma(&same, 3, &[0, 2], TOL).unwrap();
        assert_abs_diff_eq!(r.lhs, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.rhs, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn subset_lemma_errors() {
        let p = d(&[0.25, 0.75]);
        let fam = cube_family(2, vec![p.clone(); 4]);
        assert!(check_subset_lemma(&fam, 2, &[], TOL).is_err());
        assert!(check_subset_lemma(&fam, 2, &[2], TOL).is_err());
        assert!(check_subset_lemma(&fam, 3, &[0], TOL).is_err());
        let plain = DistributionFamily::indexed(vec![p; 4]).unwrap();
        assert!(check_subset_lemma(&plain, 2, &[0], TOL).is_err());
    }

    #[test]
    fn psi_lower_bound_saturates_at_zero_error() {
        let fam = DistributionFamily::indexed(vec![d(&[1.0, 0.0]), d(&[0.0, 1.0])]).unwrap();
        let r = check_psi_lower_bound(&fam, &[0, 1], &[0], 0, 0.0, TOL).unwrap();
        assert_eq!(r.lhs, 1.0);
        assert_eq!(r.rhs, 1.0);
        assert!(r.holds);
    }

    #[test]
    fn psi_lower_bound_vacuous_at_half() {
        let fam = DistributionFamily::indexed(vec![d(&[0.5, 0.5]), d(&[0.5, 0.5])]).unwrap();
        let r = check_psi_lower_bound(&fam, &[0, 1], &[0], 1, 0.5, TOL).unwrap();
        assert_abs_diff_eq!(r.rhs, 0.0, epsilon = 1e-15);
        assert!(r.holds);
    }

    #[test]
    fn psi_lower_bound_constructed_family() {
        let v = d(&[0.9, 0.1]);
        let u = d(&[0.1, 0.9]);
        let fam = DistributionFamily::indexed(vec![v, u.clone(), u.clone(), u]).unwrap();
        let r = check_psi_lower_bound(&fam, &[0, 1, 2, 3], &[0], 0, 0.1, TOL).unwrap();
        // ψ = 1 - (0.9 · 0.1^3)^{1/4} - (0.1 · 0.9^3)^{1/4}; bound = (2 - 4 · 0.3) / 4 = 0.2
        let expected_psi = 1.0 - (0.9f64 * 0.001).powf(0.25) - (0.1f64 * 0.729).powf(0.25);
        assert_abs_diff_eq!(r.lhs, expected_psi, epsilon = 1e-12);
        assert_abs_diff_eq!(r.rhs, 0.2, epsilon = 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn psi_lower_bound_rejects_violated_hypothesis() {
        let fam = DistributionFamily::indexed(vec![d(&[0.9, 0.1]), d(&[0.3, 0.7])]).unwrap();
        assert!(matches!(
            check_psi_lower_bound(&fam, &[0, 1], &[0], 0, 0.1, TOL),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            check_psi_lower_bound(&fam, &[0, 1], &[0], 0, 0.6, TOL),
            Err(Error::Precondition(_))
        ));
        assert!(check_psi_lower_bound(&fam, &[0, 1], &[0], 5, 0.1, TOL).is_err());
    }
}
