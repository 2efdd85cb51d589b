//! Entropy vectors of jointly distributed variables: coordinate systems,
//! Shannon / non-Shannon / linear-rank inequality generators, exact
//! distributions and the deterministic strategy language that produces them.

pub mod coord;
pub mod dist;
pub mod fritz;
pub mod nonshannon;
pub mod shannon;
pub mod strategy;

pub use coord::{CoordSystem, EntropyVector};
pub use dist::{entropy_vector, ingleton_quantity, interaction_information, JointDistribution};
pub use fritz::{chsh_value, fritz_distribution, FritzVariant};
pub use nonshannon::{
    ingleton_cone, ingleton_row, ingleton_rows_on_subsets, matus_marginal_row, matus_row,
    zhang_yeung_row, MatusFamily, MatusMarginalFamily,
};
pub use shannon::shannon_elemental;
pub use strategy::{parse_strategy, Expr, Strategy};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EntError {
    #[error("need at least two variables, got {0}")]
    TooFewVariables(usize),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("coordinate {0} missing from the coordinate system")]
    MissingCoordinate(String),
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(String),
    #[error("cyclic or forward reference involving {0}")]
    CyclicDefinition(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, EntError>;
