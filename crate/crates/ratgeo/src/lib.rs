//! Exact-arithmetic polyhedral cones: representation conversion, projection,
//! redundancy removal and membership tests.
//!
//! All cone algebra runs over arbitrary-precision rationals. Rows and rays are
//! kept in canonical form (primitive integer vectors, sorted lexicographically)
//! so that cones can be compared bit-exactly.

pub mod dd;
pub mod exec;
pub mod fm;
pub mod hcone;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod membership;
pub mod rational;
pub mod redundancy;
pub mod vcone;

pub use exec::Exec;
pub use fm::{fm_eliminate, FmOpts};
pub use hcone::HCone;
pub use membership::{contains_point, contains_point_exact, in_conic_hull, MembershipReport};
pub use rational::{rat_to_f64, BigInt, Rat};
pub use redundancy::{intersect, remove_redundant};
pub use vcone::VCone;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeoError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("elimination would leave an empty coordinate system")]
    EmptyResult,
    #[error("cone is not pointed and lineality handling was not requested")]
    NotPointed,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, GeoError>;
