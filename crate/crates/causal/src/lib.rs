//! Causal structures over observed, latent-classical and latent-quantum
//! nodes: d-separation, conditional-independence extraction, post-selection
//! and the coexisting-set calculus for quantum structures.

pub mod ci;
pub mod dsep;
pub mod postselect;
pub mod quantum;
pub mod structure;

pub use ci::{ci_rows, parental_ci, product_decomposition_eqs, CiStatement};
pub use dsep::d_separated;
pub use postselect::postselect;
pub use quantum::{
    coexisting_sets, dpi_rows, purity_rows, quantum_basic_rows, quantum_ci_rows,
    quantum_coord_system, quantum_postselect_coex, quantum_product_eqs, CoexistingSet, Member,
    QuantumView,
};
pub use structure::{parse_structure, CausalStructure, NodeKind};

use thiserror::Error;


#[derive(Debug, Error)]
pub enum CausalError {
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("graph has a cycle through {0}")]
    Cyclic(String),
    #[error("node sets must be disjoint")]
    Overlap,
    #[error("{0} is not a parentless observed node")]
    NotParentlessObserved(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CausalError>;
