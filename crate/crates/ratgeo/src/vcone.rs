//! Ray representation of a pointed polyhedral cone.

use crate::rational::{primitive, BigInt};
use crate::{GeoError, Result};
use num_traits::Zero;

/// Conic hull of `rays` (the zero vector, the tip, is implicit). A non-pointed
/// cone additionally carries a basis of its lineality space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCone {
    pub dim: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
    pub coords: Option<Vec<String>>,
}

impl VCone {
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>) -> Result<Self> {
        for r in &rays {
            if r.len() != dim {
                return Err(GeoError::DimMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
            if r.iter().all(|x| x.is_zero()) {
                return Err(GeoError::Invalid("zero ray".into()));
            }
        }
        Ok(VCone {
            dim,
            rays,
            lineality: Vec::new(),
            coords: None,
        })
    }

    pub fn with_coords(mut self, coords: Vec<String>) -> Self {
        debug_assert_eq!(coords.len(), self.dim);
        self.coords = Some(coords);
        self
    }

    pub fn canonicalize(&mut self) {
        let mut rays: Vec<Vec<BigInt>> = self.rays.iter().map(|r| primitive(r)).collect();
        rays.sort();
        rays.dedup();
        self.rays = rays;
        self.lineality = crate::linalg::row_basis_int(&self.lineality);
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Delete the given coordinates from every ray (projection in V-form).
    pub fn delete_coords(&self, drop: &std::collections::BTreeSet<usize>) -> VCone {
        let keep: Vec<usize> = (0..self.dim).filter(|i| !drop.contains(i)).collect();
        let proj = |r: &Vec<BigInt>| -> Vec<BigInt> { keep.iter().map(|&i| r[i].clone()).collect() };
        let rays: Vec<Vec<BigInt>> = self
            .rays
            .iter()
            .map(proj)
            .filter(|r| !r.iter().all(|x| x.is_zero()))
            .collect();
        let lineality: Vec<Vec<BigInt>> = self
            .lineality
            .iter()
            .map(proj)
            .filter(|r| !r.iter().all(|x| x.is_zero()))
            .collect();
        VCone {
            dim: keep.len(),
            rays,
            lineality,
            coords: self
                .coords
                .as_ref()
                .map(|c| keep.iter().map(|&i| c[i].clone()).collect()),
        }
    }
}
