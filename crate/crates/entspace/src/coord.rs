//! Coordinate systems indexing entropy-vector components by variable subsets.

use crate::{EntError, Result};
use std::collections::HashMap;

/// Ordered family of nonempty variable subsets (bitmask form).
///
/// The default full system lists all 2^n - 1 subsets ordered by cardinality,
/// then lexicographically on the sorted member indices; every vector listing
/// in the literature this toolkit reproduces follows that order. Restricted
/// systems (coexisting families, marginal families) are sub-families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordSystem {
    pub names: Vec<String>,
    pub subsets: Vec<u64>,
    index: HashMap<u64, usize>,
}

pub fn subset_order_key(mask: u64) -> (u32, Vec<u32>) {
    let members: Vec<u32> = (0..64).filter(|i| mask >> i & 1 == 1).collect();
    (mask.count_ones(), members)
}

impl CoordSystem {
    pub fn full(names: &[&str]) -> Self {
        let n = names.len();
        assert!(n >= 1 && n < 64);
        let mut subsets: Vec<u64> = (1..(1u64 << n)).collect();
        subsets.sort_by_key(|&m| subset_order_key(m));
        Self::from_subsets(names, subsets)
    }

    pub fn from_subsets(names: &[&str], subsets: Vec<u64>) -> Self {
        let index = subsets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        CoordSystem {
            names: names.iter().map(|s| s.to_string()).collect(),
            subsets,
            index,
        }
    }

    /// Sort subsets into the canonical (cardinality, lex) order and reindex.
    pub fn sorted(mut self) -> Self {
        self.subsets.sort_by_key(|&m| subset_order_key(m));
        self.subsets.dedup();
        self.index = self
            .subsets
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        self
    }

    pub fn n_vars(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| EntError::UnknownVariable(name.to_string()))
    }

    pub fn mask_of(&self, vars: &[&str]) -> Result<u64> {
        let mut m = 0u64;
        for v in vars {
            m |= 1 << self.var_index(v)?;
        }
        Ok(m)
    }

    pub fn label(&self, mask: u64) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            if mask >> i & 1 == 1 {
                parts.push(name.clone());
            }
        }
        parts.join(",")
    }

    pub fn labels(&self) -> Vec<String> {
        self.subsets.iter().map(|&m| self.label(m)).collect()
    }

    /// Build an integer row from (subset, coefficient) terms; zero masks are
    /// skipped (H of the empty set is 0).
    pub fn row(&self, terms: &[(u64, i64)]) -> Result<Vec<ratgeo::BigInt>> {
        let mut row = vec![ratgeo::BigInt::from(0); self.dim()];
        for &(mask, c) in terms {
            if mask == 0 || c == 0 {
                continue;
            }
            let idx = self
                .index_of(mask)
                .ok_or_else(|| EntError::MissingCoordinate(self.label(mask)))?;
            row[idx] += ratgeo::BigInt::from(c);
        }
        Ok(row)
    }
}

/// Conditional mutual information I(A:B|C) as (subset, coefficient) terms.
pub fn cmi_terms(a: u64, b: u64, c: u64) -> Vec<(u64, i64)> {
    debug_assert_eq!(a & b, 0);
    debug_assert_eq!(a & c, 0);
    debug_assert_eq!(b & c, 0);
    vec![(a | c, 1), (b | c, 1), (c, -1), (a | b | c, -1)]
}

/// Real-valued entropy vector aligned to a coordinate system, bits as unit.
#[derive(Clone, Debug)]
pub struct EntropyVector {
    pub system: CoordSystem,
    pub values: Vec<f64>,
}

impl EntropyVector {
    pub fn get(&self, mask: u64) -> Result<f64> {
        if mask == 0 {
            return Ok(0.0);
        }
        self.system
            .index_of(mask)
            .map(|i| self.values[i])
            .ok_or_else(|| EntError::MissingCoordinate(self.system.label(mask)))
    }

    pub fn eval_terms(&self, terms: &[(u64, i64)]) -> Result<f64> {
        let mut acc = 0.0;
        for &(m, c) in terms {
            if m != 0 && c != 0 {
                acc += c as f64 * self.get(m)?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_order_is_cardinality_then_lex() {
        let cs = CoordSystem::full(&["A", "B", "C"]);
        let labels = cs.labels();
        assert_eq!(
            labels,
            vec!["A", "B", "C", "A,B", "A,C", "B,C", "A,B,C"]
        );
    }

    #[test]
    fn lex_beats_numeric_mask_order() {
        let cs = CoordSystem::full(&["A", "B", "C", "D"]);
        // {A,D} (mask 9) precedes {B,C} (mask 6) in the paper's order.
        let ad = cs.index_of(0b1001).unwrap();
        let bc = cs.index_of(0b0110).unwrap();
        assert!(ad < bc);
    }
}
