//! Smooth-majorization calculus on eigenvalue spectra: epsilon-order
//! relations, smooth entropies with exact witnesses, probabilistic
//! transformations, embezzling constructions and asymptotic equipartition
//! on run-length-encoded tensor powers.

pub mod aep;
pub mod embezzle;
pub mod entropies;
pub mod majorize;
pub mod spectrum;
pub mod transform;

pub use aep::{aep_rates, flat_sandwich, prob_equilibrium_gap};
pub use embezzle::embezzling_spectrum;
pub use entropies::{
    h_hyp_eps, h_hyp_eps_lp, h_min, h_min_eps, h_zero, h_zero_eps, s_minus, s_plus,
    SmoothEntropyReport, Theory, Witness,
};
pub use majorize::{eps_majorizes, gen_trace_distance, majorizes, smoothing_witness};
pub use spectrum::{parse_spectrum, MeterState, Spectrum};
pub use transform::prob_transform_possible;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RtError {
    #[error("epsilon must lie in {0}")]
    EpsilonRange(&'static str),
    #[error("spectrum must be normalized (mass {0})")]
    NotNormalized(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("spectrum too large for this operation (rank {0})")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, RtError>;
