//! Half-space representation of a polyhedral cone.

use crate::linalg;
use crate::rational::{primitive, BigInt};
use crate::{GeoError, Result};

/// Cone {v : eq . v = 0 for all equalities, row . v >= 0 for all inequalities}.
///
/// Canonical form: rows scaled to primitive integer vectors, equalities in
/// reduced row echelon basis, inequalities reduced modulo the equality span,
/// both parts sorted lexicographically with duplicates removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCone {
    pub dim: usize,
    pub eqs: Vec<Vec<BigInt>>,
    pub ineqs: Vec<Vec<BigInt>>,
    /// Optional coordinate labels (one per dimension).
    pub coords: Option<Vec<String>>,
}

impl HCone {
    pub fn new(dim: usize, eqs: Vec<Vec<BigInt>>, ineqs: Vec<Vec<BigInt>>) -> Result<Self> {
        for row in eqs.iter().chain(ineqs.iter()) {
            if row.len() != dim {
                return Err(GeoError::DimMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        Ok(HCone {
            dim,
            eqs,
            ineqs,
            coords: None,
        })
    }

    pub fn with_coords(mut self, coords: Vec<String>) -> Self {
        debug_assert_eq!(coords.len(), self.dim);
        self.coords = Some(coords);
        self
    }

    pub fn full_space(dim: usize) -> Self {
        HCone {
            dim,
            eqs: Vec::new(),
            ineqs: Vec::new(),
            coords: None,
        }
    }

    /// Syntactic canonicalization: primitive rows, inequalities reduced modulo
    /// the equality span, duplicates and zero rows dropped, both parts sorted.
    /// Does not remove redundant rows; see [`crate::remove_redundant`] for that.
    pub fn canonicalize(&mut self) {
        use num_traits::Zero;
        self.eqs = linalg::row_basis_int(&self.eqs);
        let rats: Vec<Vec<crate::Rat>> = self
            .eqs
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| crate::Rat::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let (rr, pivots) = linalg::rref(&rats);
        let mut ineqs: Vec<Vec<BigInt>> = self
            .ineqs
            .iter()
            .map(|row| {
                if pivots.is_empty() {
                    primitive(row)
                } else {
                    linalg::reduce_mod_span(row, &rr, &pivots)
                }
            })
            .filter(|row| !row.iter().all(|x| x.is_zero()))
            .collect();
        ineqs.sort();
        ineqs.dedup();
        self.ineqs = ineqs;
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    /// Append rows of `other` (same dimension). No reduction is performed.
    pub fn stack(&self, other: &HCone) -> Result<HCone> {
        if self.dim != other.dim {
            return Err(GeoError::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().cloned());
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        let mut out = HCone {
            dim: self.dim,
            eqs,
            ineqs,
            coords: self.coords.clone(),
        };
        if out.coords.is_none() {
            out.coords = other.coords.clone();
        }
        Ok(out)
    }

    pub fn n_rows(&self) -> usize {
        self.eqs.len() + self.ineqs.len()
    }
}
