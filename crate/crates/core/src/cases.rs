//! Built-in parameter sets for the two bundled studies.
//!
//! The power pair describes aggregate electricity demand against outdoor
//! temperature in one utility's service area, in the summers before and after
//! a major 2011 supply disruption. Its utility threshold is the temperature
//! at which residents start drawing power (27 before, 22 after), and the
//! norm threshold sits at 30 degrees, past which health concerns override
//! restraint. The emissions pair describes per-capita CO2 output against
//! per-capita GDP for low- and high-emitting country groups; restraint is
//! meaningless at zero GDP (norm threshold 0) and the benefit of further
//! output saturates around 30,000 USD (utility threshold).
//!
//! Only the fitted coefficients are bundled, not raw scatter data; analyses
//! of raw measurements go through [`crate::dataset`] with user files.

use std::fmt;
use std::str::FromStr;

use crate::decomposition::{decompose, Constraints, Decomposition, LinearFit};
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Identifier of a bundled case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    PowerBefore,
    PowerAfter,
    Co2Low,
    Co2High,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [
        CaseId::PowerBefore,
        CaseId::PowerAfter,
        CaseId::Co2Low,
        CaseId::Co2High,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::PowerBefore => "power-before",
            CaseId::PowerAfter => "power-after",
            CaseId::Co2Low => "co2-low",
            CaseId::Co2High => "co2-high",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownCase { id: s.to_string() })
    }
}

/// Fitted line, thresholds, units, and a conventional reference environment
/// for one case.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseStudyParams<T> {
    pub id: CaseId,
    pub alpha: T,
    pub beta: T,
    pub eps_u0: T,
    pub eps_n0: T,
    pub env_unit: &'static str,
    pub action_unit: &'static str,
    pub eps_ref_default: T,
}

/// Parameter set of a bundled case.
pub fn builtin_case<T: Real>(id: CaseId) -> CaseStudyParams<T> {
    match id {
        CaseId::PowerBefore => CaseStudyParams {
            id,
            alpha: real(183.2),
            beta: real(-461.2),
            eps_u0: real(27.0),
            eps_n0: real(30.0),
            env_unit: "degC",
            action_unit: "power units",
            eps_ref_default: real(28.0),
        },
        CaseId::PowerAfter => CaseStudyParams {
            id,
            alpha: real(138.9),
            beta: real(8.703),
            eps_u0: real(22.0),
            eps_n0: real(30.0),
            env_unit: "degC",
            action_unit: "power units",
            eps_ref_default: real(28.0),
        },
        CaseId::Co2Low => CaseStudyParams {
            id,
            alpha: real(0.00017),
            beta: real(0.0),
            eps_u0: real(30000.0),
            eps_n0: real(0.0),
            env_unit: "USD per capita",
            action_unit: "t CO2 per capita",
            eps_ref_default: real(20000.0),
        },
        CaseId::Co2High => CaseStudyParams {
            id,
            alpha: real(0.00063),
            beta: real(0.0),
            eps_u0: real(30000.0),
            eps_n0: real(0.0),
            env_unit: "USD per capita",
            action_unit: "t CO2 per capita",
            eps_ref_default: real(20000.0),
        },
    }
}

impl<T: Real> CaseStudyParams<T> {
    /// The case's line and thresholds as a ready decomposition (scale 1).
    pub fn decomposition(&self) -> Decomposition<T> {
        let fit = LinearFit::exact(self.alpha, self.beta);
        let constraints =
            Constraints::new(self.eps_u0, self.eps_n0).expect("built-in thresholds differ");
        decompose(&fit, &constraints).expect("built-in coefficients are finite")
    }

    /// Key/value document form, one `key = value` line per field.
    pub fn to_doc(&self) -> String {
        format!(
            "id = {}\nalpha = {}\nbeta = {}\neps_u0 = {}\neps_n0 = {}\nenv_unit = {}\naction_unit = {}\n",
            self.id, self.alpha, self.beta, self.eps_u0, self.eps_n0, self.env_unit, self.action_unit
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_before_parameters_are_exact() {
        let p: CaseStudyParams<f64> = builtin_case(CaseId::PowerBefore);
        assert_eq!(p.alpha, 183.2);
        assert_eq!(p.beta, -461.2);
        assert_eq!(p.eps_u0, 27.0);
        assert_eq!(p.eps_n0, 30.0);
        assert_eq!(p.eps_ref_default, 28.0);
    }

    #[test]
    fn co2_high_parameters_are_exact() {
        let p: CaseStudyParams<f64> = builtin_case(CaseId::Co2High);
        assert_eq!(p.alpha, 0.00063);
        assert_eq!(p.beta, 0.0);
        assert_eq!(p.eps_u0, 30000.0);
        assert_eq!(p.eps_n0, 0.0);
    }

    #[test]
    fn unknown_id_is_an_error() {
        let err = "power-2020".parse::<CaseId>().unwrap_err();
        assert!(matches!(err, Error::UnknownCase { id } if id == "power-2020"));
    }

    #[test]
    fn ids_round_trip_through_strings() {
        for id in CaseId::ALL {
            assert_eq!(id.as_str().parse::<CaseId>().unwrap(), id);
        }
    }

    #[test]
    fn doc_form_prints_exact_decimals() {
        let doc = builtin_case::<f64>(CaseId::Co2Low).to_doc();
        assert!(doc.contains("id = co2-low\n"));
        assert!(doc.contains("alpha = 0.00017\n"));
        assert!(doc.contains("beta = 0\n"));
        assert!(doc.contains("eps_u0 = 30000\n"));
        assert!(doc.contains("eps_n0 = 0\n"));
        assert!(doc.contains("env_unit = USD per capita\n"));
    }

    #[test]
    fn decomposition_matches_the_case_line() {
        let p: CaseStudyParams<f64> = builtin_case(CaseId::PowerBefore);
        let dec = p.decomposition();
        let eps = p.eps_ref_default;
        assert!((dec.predicted_action(eps) - 4668.4).abs() < 1e-9 * 4668.4);
    }
}
