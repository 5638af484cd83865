//! Comparing decompositions and planning moves toward a target line.
//!
//! Four single-parameter levers can move an observed action line: raise the
//! utility slope (I), steepen the norm slope (II), raise the utility
//! intercept (III), or lower the norm intercept (IV). [`compare`] classifies
//! an observed before/after change against those levers; [`plan_target`]
//! computes the parameter change each lever needs to reach a target line.
//!
//! Classification works on the slope and intercept deltas themselves, not on
//! the direction the thresholds moved: the two can disagree (a utility slope
//! can rise while its threshold falls), and the deltas are what the levers
//! are defined by. Threshold movements are reported in the narrative for
//! reference.

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::model::xpoint;
use crate::scalar::{real, Real};
use crate::tol;

/// The four levers, labelled I-IV by convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Approach {
    /// I: raise the utility slope (sensitivity of benefit to the action).
    UtilitySlope,
    /// II: steepen the norm slope in the negative direction.
    NormSlope,
    /// III: raise the utility intercept (base level of benefit).
    UtilityIntercept,
    /// IV: lower the norm intercept (base level of the constraint).
    NormIntercept,
}

impl Approach {
    pub const ALL: [Approach; 4] = [
        Approach::UtilitySlope,
        Approach::NormSlope,
        Approach::UtilityIntercept,
        Approach::NormIntercept,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Approach::UtilitySlope => "I",
            Approach::NormSlope => "II",
            Approach::UtilityIntercept => "III",
            Approach::NormIntercept => "IV",
        }
    }

    /// Name of the parameter a plan entry for this lever carries.
    pub fn parameter_name(self) -> &'static str {
        match self {
            Approach::UtilitySlope => "eps_u0",
            Approach::NormSlope => "eps_n0",
            Approach::UtilityIntercept => "delta_b_u",
            Approach::NormIntercept => "delta_b_n",
        }
    }

    fn index(self) -> usize {
        match self {
            Approach::UtilitySlope => 0,
            Approach::NormSlope => 1,
            Approach::UtilityIntercept => 2,
            Approach::NormIntercept => 3,
        }
    }
}

impl std::fmt::Display for Approach {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// How an observed change relates to a lever's direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Consistent,
    Opposite,
    Unchanged,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Consistent => "consistent",
            Direction::Opposite => "opposite",
            Direction::Unchanged => "unchanged",
        })
    }
}

/// Before-to-after differences of the line parameters at the reference
/// environment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterDeltas<T> {
    pub utility_slope: T,
    pub norm_slope: T,
    pub utility_intercept: T,
    pub norm_intercept: T,
}

/// Classified comparison of two decompositions at one environment.
#[derive(Debug, Clone, PartialEq)]
pub struct InterventionReport<T> {
    pub eps_ref: T,
    pub deltas: ParameterDeltas<T>,
    flags: [Direction; 4],
    pub narrative: String,
}

impl<T: Real> InterventionReport<T> {
    pub fn flag(&self, approach: Approach) -> Direction {
        self.flags[approach.index()]
    }

    pub fn delta(&self, approach: Approach) -> T {
        match approach {
            Approach::UtilitySlope => self.deltas.utility_slope,
            Approach::NormSlope => self.deltas.norm_slope,
            Approach::UtilityIntercept => self.deltas.utility_intercept,
            Approach::NormIntercept => self.deltas.norm_intercept,
        }
    }
}

/// Compact number rendering for narrative text: 9 decimals, zeros trimmed.
fn fmt_short<T: Real>(v: T) -> String {
    let s = format!("{v:.9}");
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    if trimmed.is_empty() || trimmed == "-" {
        "0".to_string()
    } else {
        trimmed.to_string()
    }
}

fn classify<T: Real>(
    delta: T,
    before: T,
    after: T,
    lever_is_negative: bool,
    rel_tol: T,
) -> Direction {
    let scale = T::one().max(before.abs()).max(after.abs());
    if delta.abs() <= rel_tol * scale {
        return Direction::Unchanged;
    }
    let along_lever = if lever_is_negative {
        delta < T::zero()
    } else {
        delta > T::zero()
    };
    if along_lever {
        Direction::Consistent
    } else {
        Direction::Opposite
    }
}

/// Compares two decompositions at `eps_ref` with the default relative
/// tolerance for the unchanged classification.
pub fn compare<T: Real>(
    before: &Decomposition<T>,
    after: &Decomposition<T>,
    eps_ref: T,
) -> InterventionReport<T> {
    compare_with_tolerance(before, after, eps_ref, real(tol::DEFAULT_REL))
}

/// Compares two decompositions at `eps_ref`.
///
/// Deltas come from the evaluated line pairs. A delta within `rel_tol`
/// (relative to the larger parameter magnitude, absolute near zero) counts as
/// unchanged; otherwise its sign decides consistent vs. opposite per lever.
pub fn compare_with_tolerance<T: Real>(
    before: &Decomposition<T>,
    after: &Decomposition<T>,
    eps_ref: T,
    rel_tol: T,
) -> InterventionReport<T> {
    let (u_b, n_b) = before.affine_at(eps_ref);
    let (u_a, n_a) = after.affine_at(eps_ref);
    let deltas = ParameterDeltas {
        utility_slope: u_a.slope - u_b.slope,
        norm_slope: n_a.slope - n_b.slope,
        utility_intercept: u_a.intercept - u_b.intercept,
        norm_intercept: n_a.intercept - n_b.intercept,
    };
    let flags = [
        classify(deltas.utility_slope, u_b.slope, u_a.slope, false, rel_tol),
        classify(deltas.norm_slope, n_b.slope, n_a.slope, true, rel_tol),
        classify(
            deltas.utility_intercept,
            u_b.intercept,
            u_a.intercept,
            false,
            rel_tol,
        ),
        classify(
            deltas.norm_intercept,
            n_b.intercept,
            n_a.intercept,
            true,
            rel_tol,
        ),
    ];

    let lines = [
        format!(
            "utility slope {} -> {} (approach I {})",
            fmt_short(u_b.slope),
            fmt_short(u_a.slope),
            flags[0]
        ),
        format!(
            "norm slope {} -> {} (approach II {})",
            fmt_short(n_b.slope),
            fmt_short(n_a.slope),
            flags[1]
        ),
        format!(
            "utility intercept {} -> {} (approach III {})",
            fmt_short(u_b.intercept),
            fmt_short(u_a.intercept),
            flags[2]
        ),
        format!(
            "norm intercept {} -> {} (approach IV {})",
            fmt_short(n_b.intercept),
            fmt_short(n_a.intercept),
            flags[3]
        ),
        format!(
            "thresholds eps_u0 {} -> {}, eps_n0 {} -> {} (for reference; flags follow the deltas)",
            fmt_short(before.constraints.eps_u0()),
            fmt_short(after.constraints.eps_u0()),
            fmt_short(before.constraints.eps_n0()),
            fmt_short(after.constraints.eps_n0())
        ),
    ];
    let narrative = lines.join("; ");

    InterventionReport {
        eps_ref,
        deltas,
        flags,
        narrative,
    }
}

/// One lever's entry in a plan: the parameter value that realises it, or
/// `None` when the lever cannot reach the goal.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanEntry<T> {
    pub approach: Approach,
    pub value: Option<T>,
    pub note: String,
}

impl<T> PlanEntry<T> {
    pub fn feasible(&self) -> bool {
        self.value.is_some()
    }
}

/// Parameter changes that move the current line to a target line.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetPlan<T> {
    pub eps_ref: T,
    pub alpha_target: T,
    pub beta_target: T,
    pub current_action: T,
    pub target_action: T,
    pub entries: Vec<PlanEntry<T>>,
}

impl<T> TargetPlan<T> {
    pub fn entry(&self, approach: Approach) -> Option<&PlanEntry<T>> {
        self.entries.iter().find(|e| e.approach == approach)
    }
}

/// Plans single-lever moves from the current decomposition to the target
/// line `alpha_target * eps + beta_target`, evaluated at `eps_ref`.
///
/// The intercept levers (III, IV) always get entries: shifting the utility
/// intercept by `-lambda * (target - current)` or the norm intercept by
/// `+lambda * (target - current)` puts the crossing at `eps_ref` exactly on
/// the target. The slope levers (I, II) get entries only when a goal slope is
/// supplied; they solve for the threshold that realises the goal at
/// `eps_ref`, and carry the caveat that with the intercepts held fixed a
/// slope change leaves the crossing where it was (the slope gap is pinned to
/// `lambda`). A goal slope no threshold can reach yields an infeasible entry
/// rather than an error.
pub fn plan_target<T: Real>(
    current: &Decomposition<T>,
    alpha_target: T,
    beta_target: T,
    eps_ref: T,
    utility_slope_goal: Option<T>,
    norm_slope_goal: Option<T>,
) -> TargetPlan<T> {
    let lambda = current.constraints.lambda();
    let current_action = current.predicted_action(eps_ref);
    let target_action = alpha_target * eps_ref + beta_target;
    let shift = lambda * (target_action - current_action);

    const SLOPE_NOTE: &str = "slope-only change: with intercepts fixed the crossing at eps_ref stays at the current action";

    let mut entries = Vec::new();
    if let Some(goal) = utility_slope_goal {
        let denom = goal - lambda;
        let value = if denom == T::zero() {
            None
        } else {
            let new_eps_u0 = (goal * current.constraints.eps_n0() - lambda * eps_ref) / denom;
            (new_eps_u0.is_finite() && new_eps_u0 != current.constraints.eps_n0())
                .then_some(new_eps_u0)
        };
        let note = match value {
            Some(_) => format!(
                "utility threshold realising slope {} at eps_ref; {SLOPE_NOTE}",
                fmt_short(goal)
            ),
            None => format!(
                "utility slope {} is unreachable at eps_ref (would need the thresholds to coincide)",
                fmt_short(goal)
            ),
        };
        entries.push(PlanEntry {
            approach: Approach::UtilitySlope,
            value,
            note,
        });
    }
    if let Some(goal) = norm_slope_goal {
        let denom = goal + lambda;
        let value = if denom == T::zero() {
            None
        } else {
            let new_eps_n0 = (lambda * eps_ref + goal * current.constraints.eps_u0()) / denom;
            (new_eps_n0.is_finite() && new_eps_n0 != current.constraints.eps_u0())
                .then_some(new_eps_n0)
        };
        let note = match value {
            Some(_) => format!(
                "norm threshold realising slope {} at eps_ref; {SLOPE_NOTE}",
                fmt_short(goal)
            ),
            None => format!(
                "norm slope {} is unreachable at eps_ref (would need the thresholds to coincide)",
                fmt_short(goal)
            ),
        };
        entries.push(PlanEntry {
            approach: Approach::NormSlope,
            value,
            note,
        });
    }
    entries.push(PlanEntry {
        approach: Approach::UtilityIntercept,
        value: Some(-shift),
        note: "add to the utility intercept; moves the crossing at eps_ref onto the target".into(),
    });
    entries.push(PlanEntry {
        approach: Approach::NormIntercept,
        value: Some(shift),
        note: "add to the norm intercept; moves the crossing at eps_ref onto the target".into(),
    });

    TargetPlan {
        eps_ref,
        alpha_target,
        beta_target,
        current_action,
        target_action,
        entries,
    }
}

/// Crossing point after applying one plan entry to the current pair at
/// `eps_ref`. Slope entries rebuild the pair from the new threshold;
/// intercept entries shift the matching line.
pub fn apply_entry<T: Real>(
    current: &Decomposition<T>,
    entry: &PlanEntry<T>,
    eps_ref: T,
) -> Result<T> {
    let value = entry.value.ok_or_else(|| Error::InvalidChoiceModel {
        reason: format!("plan entry for approach {} is infeasible", entry.approach),
    })?;
    let (mut u, mut n) = current.affine_at(eps_ref);
    let lambda = current.constraints.lambda();
    match entry.approach {
        Approach::UtilitySlope => {
            let new_span = current.constraints.eps_n0() - value;
            u.slope = lambda * (eps_ref - value) / new_span;
            n.slope = lambda * (eps_ref - current.constraints.eps_n0()) / new_span;
        }
        Approach::NormSlope => {
            let new_span = value - current.constraints.eps_u0();
            u.slope = lambda * (eps_ref - current.constraints.eps_u0()) / new_span;
            n.slope = lambda * (eps_ref - value) / new_span;
        }
        Approach::UtilityIntercept => u.intercept = u.intercept + value,
        Approach::NormIntercept => n.intercept = n.intercept + value,
    }
    xpoint(&u, &n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{decompose, Constraints, LinearFit};

    fn power_before() -> Decomposition<f64> {
        decompose(
            &LinearFit::exact(183.2, -461.2),
            &Constraints::new(27.0, 30.0).unwrap(),
        )
        .unwrap()
    }

    fn power_after() -> Decomposition<f64> {
        decompose(
            &LinearFit::exact(138.9, 8.703),
            &Constraints::new(22.0, 30.0).unwrap(),
        )
        .unwrap()
    }

    fn co2(alpha: f64) -> Decomposition<f64> {
        decompose(
            &LinearFit::exact(alpha, 0.0),
            &Constraints::new(30000.0, 0.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn power_change_raises_utility_slope_and_relaxes_norm() {
        let report = compare(&power_before(), &power_after(), 28.0);
        assert!((report.deltas.utility_slope - 5.0 / 12.0).abs() < 1e-12);
        assert_eq!(report.flag(Approach::UtilitySlope), Direction::Consistent);
        // norm slope moved toward zero: against lever II
        assert_eq!(report.flag(Approach::NormSlope), Direction::Opposite);
    }

    #[test]
    fn emissions_gap_is_a_norm_intercept_change() {
        let report = compare(&co2(0.00063), &co2(0.00017), 20000.0);
        assert_eq!(report.flag(Approach::UtilitySlope), Direction::Unchanged);
        assert_eq!(report.flag(Approach::NormSlope), Direction::Unchanged);
        assert_eq!(
            report.flag(Approach::UtilityIntercept),
            Direction::Unchanged
        );
        assert_eq!(report.flag(Approach::NormIntercept), Direction::Consistent);
        assert!((report.deltas.norm_intercept + 9.2).abs() < 1e-9);
    }

    #[test]
    fn self_comparison_is_unchanged_everywhere() {
        let dec = power_before();
        let report = compare(&dec, &dec, 28.0);
        for approach in Approach::ALL {
            assert_eq!(report.flag(approach), Direction::Unchanged);
            assert_eq!(report.delta(approach), 0.0);
        }
    }

    #[test]
    fn swapping_sides_negates_every_delta() {
        let fwd = compare(&power_before(), &power_after(), 28.0);
        let rev = compare(&power_after(), &power_before(), 28.0);
        for approach in Approach::ALL {
            assert_eq!(fwd.delta(approach), -rev.delta(approach));
        }
    }

    #[test]
    fn norm_intercept_entry_reaches_the_target() {
        // target action 4000 at eps 28, current 4668.4
        let plan = plan_target(&power_before(), 0.0, 4000.0, 28.0, None, None);
        let entry = plan.entry(Approach::NormIntercept).unwrap();
        assert!((entry.value.unwrap() + 668.4).abs() < 1e-9 * 668.4);
        let reached = apply_entry(&power_before(), entry, 28.0).unwrap();
        assert!((reached - 4000.0).abs() < 1e-9 * 4000.0);
    }

    #[test]
    fn utility_intercept_entry_reaches_the_target() {
        let plan = plan_target(&power_before(), 0.0, 4000.0, 28.0, None, None);
        let entry = plan.entry(Approach::UtilityIntercept).unwrap();
        assert!((entry.value.unwrap() - 668.4).abs() < 1e-9 * 668.4);
        let reached = apply_entry(&power_before(), entry, 28.0).unwrap();
        assert!((reached - 4000.0).abs() < 1e-9 * 4000.0);
    }

    #[test]
    fn matching_target_needs_no_shift() {
        let plan = plan_target(&power_before(), 183.2, -461.2, 28.0, None, None);
        for approach in [Approach::UtilityIntercept, Approach::NormIntercept] {
            let v = plan.entry(approach).unwrap().value.unwrap();
            assert!(v.abs() < 1e-9 * 4668.4, "approach {approach}: {v}");
        }
    }

    #[test]
    fn utility_slope_goal_solves_the_threshold() {
        // slope 0.75 at eps 28 under threshold pair (eps_u0, 30): eps_u0 = 22
        let plan = plan_target(&power_before(), 183.2, -461.2, 28.0, Some(0.75), None);
        let entry = plan.entry(Approach::UtilitySlope).unwrap();
        assert!((entry.value.unwrap() - 22.0).abs() < 1e-9);
        // the crossing stays put under a slope-only change
        let reached = apply_entry(&power_before(), entry, 28.0).unwrap();
        assert!((reached - 4668.4).abs() < 1e-9 * 4668.4);
    }

    #[test]
    fn norm_slope_goal_solves_the_threshold() {
        // want a_n = -0.25 at eps 28 with eps_u0 = 27: eps_n0 = (28 - 0.25*27)/0.75 = 28.333...
        let plan = plan_target(&power_before(), 183.2, -461.2, 28.0, None, Some(-0.25));
        let entry = plan.entry(Approach::NormSlope).unwrap();
        let new_eps_n0 = entry.value.unwrap();
        assert!((new_eps_n0 - (28.0 - 0.25 * 27.0) / 0.75).abs() < 1e-9);
        let dec = decompose(
            &LinearFit::exact(183.2, -461.2),
            &Constraints::new(27.0, new_eps_n0).unwrap(),
        )
        .unwrap();
        let (_, n) = dec.affine_at(28.0);
        assert!((n.slope + 0.25).abs() < 1e-9);
    }

    #[test]
    fn unreachable_slope_goal_is_flagged_not_failed() {
        // utility slope equal to lambda is the unreachable limit
        let plan = plan_target(&power_before(), 183.2, -461.2, 28.0, Some(1.0), None);
        let entry = plan.entry(Approach::UtilitySlope).unwrap();
        assert!(!entry.feasible());
    }
}
