//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lottery probabilities sum to {sum}, expected 1 within {tolerance}")]
    InvalidLottery { sum: f64, tolerance: f64 },
    #[error("lottery probability {probability} lies outside [0, 1]")]
    ProbabilityOutOfRange { probability: f64 },
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("invalid choice model: {reason}")]
    InvalidChoiceModel { reason: String },
    #[error("action {x} outside the model domain [{lower}, {upper}]")]
    OutsideDomain { x: f64, lower: f64, upper: f64 },
    #[error("utility and norm lines share slope {slope}; no unique crossing")]
    ParallelLines { slope: f64 },
    #[error(
        "first-order condition keeps one sign on [{lower}, {upper}]; no interior maximum bracketed"
    )]
    NoInteriorMaximum { lower: f64, upper: f64 },
    #[error("need at least 2 samples to fit a line, got {n}")]
    InsufficientData { n: usize },
    #[error("all {n} samples share one environment value; the slope is unidentifiable")]
    DegenerateDesign { n: usize },
    #[error("both zero-slope thresholds equal {eps}; utility and norm cannot be told apart")]
    IndistinguishableConstraints { eps: f64 },
    #[error("scale lambda must be positive, got {lambda}")]
    NonPositiveScale { lambda: f64 },
    #[error("unknown case id {id:?} (known: power-before, power-after, co2-low, co2-high)")]
    UnknownCase { id: String },
    #[error("column {column:?} missing from header")]
    MissingColumn { column: String },
    #[error("row {row}: cell {cell:?} in column {column:?} is not a finite number")]
    InvalidCell {
        row: u64,
        column: String,
        cell: String,
    },
    #[error("no data rows")]
    EmptyDataset,
    #[error("invalid synthetic spec: {reason}")]
    InvalidSyntheticSpec { reason: String },
    #[error("smoothing weights must be finite, non-negative, and sum to a positive value")]
    InvalidSmoothingWeights,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
