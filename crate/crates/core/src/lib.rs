//! Isolates utility and norm functions from measured behaviour.
//!
//! Given measurements of a chosen action against an environment variable
//! (power drawn vs. outdoor temperature, emissions vs. income), this crate
//! fits the action-on-environment line, splits it into an affine utility
//! function and an affine norm function whose crossing point reproduces every
//! measurement, classifies before/after changes against the four levers that
//! can move the line, and plans single-lever interventions toward a target.
//! A nonlinear value-maximisation model and a seeded synthetic generator
//! round out the toolkit, along with two bundled case-study parameter sets.
//!
//! The math is generic over the scalar type via [`Real`] (`f32` or `f64`);
//! `*F64` aliases at the crate root cover the common case.

pub mod cases;
pub mod dataset;
pub mod decomposition;
pub mod error;
pub mod intervention;
pub mod model;
pub mod scalar;
pub mod synth;
pub mod tol;

pub use cases::{builtin_case, CaseId, CaseStudyParams};
pub use dataset::{load_dataset, read_dataset, write_dataset, Dataset, Sample, TableSchema};
pub use decomposition::{
    decompose, fit_linear, solve_coefficients, CoefficientSet, Constraints, Decomposition,
    InterceptCoefficients, LinearFit,
};
pub use error::{Error, Result};
pub use intervention::{
    apply_entry, compare, compare_with_tolerance, plan_target, Approach, Direction,
    InterventionReport, ParameterDeltas, PlanEntry, TargetPlan,
};
pub use model::{
    value_sum, xpoint, AffineFunction, Argmax, Lottery, NonlinearChoiceModel, Outcome, ValueParts,
};
pub use scalar::Real;
pub use synth::{generate_synthetic, GroundTruth, SyntheticSpec};

pub type AffineFunctionF64 = AffineFunction<f64>;
pub type LotteryF64 = Lottery<f64>;
pub type NonlinearChoiceModelF64 = NonlinearChoiceModel<f64>;
pub type DatasetF64 = Dataset<f64>;
pub type LinearFitF64 = LinearFit<f64>;
pub type ConstraintsF64 = Constraints<f64>;
pub type DecompositionF64 = Decomposition<f64>;
pub type InterventionReportF64 = InterventionReport<f64>;
pub type TargetPlanF64 = TargetPlan<f64>;
pub type SyntheticSpecF64 = SyntheticSpec<f64>;
