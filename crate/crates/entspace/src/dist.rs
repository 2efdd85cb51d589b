//! Exact joint distributions and the entropies they induce.

use crate::coord::{CoordSystem, EntropyVector};
use crate::{EntError, Result};
use num_traits::{One, Zero};
use ratgeo::rational::{log2_rat, rat_to_f64, Rat};
use std::collections::BTreeMap;

/// Dense pmf over tuples of finite-alphabet variables with exact rational
/// probabilities.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    pub names: Vec<String>,
    /// Alphabet size per variable.
    pub sizes: Vec<u32>,
    pub pmf: BTreeMap<Vec<u32>, Rat>,
}

impl JointDistribution {
    pub fn new(names: Vec<String>, sizes: Vec<u32>, pmf: BTreeMap<Vec<u32>, Rat>) -> Result<Self> {
        let mut total = Rat::zero();
        for (k, p) in &pmf {
            if k.len() != names.len() {
                return Err(EntError::Invalid("outcome arity mismatch".into()));
            }
            if p < &Rat::zero() {
                return Err(EntError::Invalid("negative probability".into()));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(EntError::NotNormalized(format!("{total}")));
        }
        Ok(JointDistribution { names, sizes, pmf })
    }

    /// Shannon entropy (base 2) of the marginal on the variable subset `mask`.
    pub fn marginal_entropy(&self, mask: u64) -> f64 {
        if mask == 0 {
            return 0.0;
        }
        let keep: Vec<usize> = (0..self.names.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mut marg: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (k, p) in &self.pmf {
            if p.is_zero() {
                continue;
            }
            let key: Vec<u32> = keep.iter().map(|&i| k[i]).collect();
            *marg.entry(key).or_insert_with(Rat::zero) += p;
        }
        let mut h = 0.0;
        for p in marg.values() {
            if !p.is_zero() {
                h -= rat_to_f64(p) * log2_rat(p);
            }
        }
        h
    }
}

/// Entropy vector of `dist` on the given coordinate system. Coordinate-system
/// variable names must all exist in the distribution (by name).
pub fn entropy_vector(dist: &JointDistribution, coords: &CoordSystem) -> Result<EntropyVector> {
    let var_map: Vec<usize> = coords
        .names
        .iter()
        .map(|n| {
            dist.names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| EntError::UnknownVariable(n.clone()))
        })
        .collect::<Result<_>>()?;
    let values = coords
        .subsets
        .iter()
        .map(|&mask| {
            let mut dist_mask = 0u64;
            for (i, &vi) in var_map.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    dist_mask |= 1 << vi;
                }
            }
            dist.marginal_entropy(dist_mask)
        })
        .collect();
    Ok(EntropyVector {
        system: coords.clone(),
        values,
    })
}

/// Interaction information I(X:Y:Z) = I(X:Y) - I(X:Y|Z) on a full 3-variable
/// system: H(X)+H(Y)+H(Z)-H(XY)-H(XZ)-H(YZ)+H(XYZ).
pub fn interaction_information(v: &EntropyVector) -> Result<f64> {
    if v.system.n_vars() != 3 || v.system.dim() != 7 {
        return Err(EntError::Invalid(
            "interaction information needs the full 3-variable system".into(),
        ));
    }
    v.eval_terms(&[
        (0b001, 1),
        (0b010, 1),
        (0b100, 1),
        (0b011, -1),
        (0b101, -1),
        (0b110, -1),
        (0b111, 1),
    ])
}

/// Ingleton quantity I(W:X|Y) + I(W:X|Z) + I(Y:Z) - I(W:X) for the variable
/// tuple (w, x; y, z) given by index into the coordinate system's variables.
pub fn ingleton_quantity(v: &EntropyVector, tuple: (usize, usize, usize, usize)) -> Result<f64> {
    let (w, x, y, z) = tuple;
    let m = |i: usize| 1u64 << i;
    let mut terms = Vec::new();
    terms.extend(crate::coord::cmi_terms(m(w), m(x), m(y)));
    terms.extend(crate::coord::cmi_terms(m(w), m(x), m(z)));
    terms.extend(crate::coord::cmi_terms(m(y), m(z), 0));
    for (mask, c) in crate::coord::cmi_terms(m(w), m(x), 0) {
        terms.push((mask, -c));
    }
    v.eval_terms(&terms)
}

/// Parse a distribution file: one line per outcome, `x y z p/q`, variables
/// named by the header `vars X Y Z` (or positional names V1.. if absent).
pub fn parse_distribution(text: &str) -> Result<JointDistribution> {
    let mut names: Option<Vec<String>> = None;
    let mut rows: Vec<(Vec<u32>, Rat)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| EntError::Parse {
            line: ln + 1,
            msg: msg.into(),
        };
        if let Some(rest) = line.strip_prefix("vars ") {
            names = Some(rest.split_whitespace().map(|s| s.to_string()).collect());
            continue;
        }
        let mut parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() < 2 {
            return Err(err("expected outcomes and a probability"));
        }
        let p = ratgeo::rational::parse_rat(parts.pop().unwrap()).ok_or_else(|| err("bad probability"))?;
        let outcome: Vec<u32> = parts
            .iter()
            .map(|s| s.parse::<u32>().map_err(|_| err("bad outcome")))
            .collect::<Result<_>>()?;
        rows.push((outcome, p));
    }
    let arity = rows.first().map(|(o, _)| o.len()).unwrap_or(0);
    if arity == 0 {
        return Err(EntError::Invalid("empty distribution".into()));
    }
    let names =
        names.unwrap_or_else(|| (0..arity).map(|i| format!("V{}", i + 1)).collect::<Vec<_>>());
    if names.len() != arity {
        return Err(EntError::Invalid("vars header arity mismatch".into()));
    }
    let mut sizes = vec![0u32; arity];
    let mut pmf = BTreeMap::new();
    for (o, p) in rows {
        if o.len() != arity {
            return Err(EntError::Invalid("ragged outcome rows".into()));
        }
        for (i, &x) in o.iter().enumerate() {
            sizes[i] = sizes[i].max(x + 1);
        }
        let entry = pmf.entry(o).or_insert_with(Rat::zero);
        *entry += p;
    }
    JointDistribution::new(names, sizes, pmf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratgeo::rational::rat;

    fn bits_dist(f: impl Fn(u32, u32, u32) -> (u32, u32, u32)) -> JointDistribution {
        // Three observed variables computed from three uniform bits.
        let mut pmf: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let (x, y, z) = f(a, b, c);
                    *pmf.entry(vec![x, y, z]).or_insert_with(Rat::zero) += rat(1, 8);
                }
            }
        }
        JointDistribution::new(
            vec!["X".into(), "Y".into(), "Z".into()],
            vec![2, 2, 2],
            pmf,
        )
        .unwrap()
    }

    #[test]
    fn perfectly_correlated_bits() {
        let d = bits_dist(|a, _, _| (a, a, a));
        let cs = CoordSystem::full(&["X", "Y", "Z"]);
        let v = entropy_vector(&d, &cs).unwrap();
        for x in &v.values {
            assert!((x - 1.0).abs() < 1e-12);
        }
        assert!((interaction_information(&v).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn independent_bits() {
        let d = bits_dist(|a, b, c| (a, b, c));
        let cs = CoordSystem::full(&["X", "Y", "Z"]);
        let v = entropy_vector(&d, &cs).unwrap();
        let expect = [1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0];
        for (x, e) in v.values.iter().zip(expect) {
            assert!((x - e).abs() < 1e-12);
        }
        assert!(interaction_information(&v).unwrap().abs() < 1e-12);
    }

    #[test]
    fn and_or_vector_matches_published_values() {
        let d = bits_dist(|a, b, c| (b & c, a & c, a | b));
        let cs = CoordSystem::full(&["X", "Y", "Z"]);
        let v = entropy_vector(&d, &cs).unwrap();
        let expect = [0.81, 0.81, 0.81, 1.55, 1.5, 1.5, 2.16];
        for (x, e) in v.values.iter().zip(expect) {
            assert!((x - e).abs() < 0.005, "{x} vs {e}");
        }
        let ii = interaction_information(&v).unwrap();
        assert!(ii > 0.03 && ii < 0.05);
    }

    #[test]
    fn rank_violation_distribution() {
        // X1 = AND(!X3, !X4), X2 = AND(X3, X4) on uniform X3, X4.
        let mut pmf: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for x3 in 0..2u32 {
            for x4 in 0..2u32 {
                let x1 = (1 - x3) & (1 - x4);
                let x2 = x3 & x4;
                *pmf.entry(vec![x1, x2, x3, x4]).or_insert_with(Rat::zero) += rat(1, 4);
            }
        }
        let d = JointDistribution::new(
            vec!["X1".into(), "X2".into(), "X3".into(), "X4".into()],
            vec![2, 2, 2, 2],
            pmf,
        )
        .unwrap();
        let cs = CoordSystem::full(&["X1", "X2", "X3", "X4"]);
        let v = entropy_vector(&d, &cs).unwrap();
        let ing = ingleton_quantity(&v, (0, 1, 2, 3)).unwrap();
        assert!((ing - (-0.12)).abs() < 0.005, "{ing}");
    }

    #[test]
    fn four_independent_vars_have_zero_ingleton() {
        let mut pmf: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for k in 0..16u32 {
            pmf.insert(
                vec![k & 1, (k >> 1) & 1, (k >> 2) & 1, (k >> 3) & 1],
                rat(1, 16),
            );
        }
        let d = JointDistribution::new(
            vec!["W".into(), "X".into(), "Y".into(), "Z".into()],
            vec![2, 2, 2, 2],
            pmf,
        )
        .unwrap();
        let cs = CoordSystem::full(&["W", "X", "Y", "Z"]);
        let v = entropy_vector(&d, &cs).unwrap();
        assert!(ingleton_quantity(&v, (0, 1, 2, 3)).unwrap().abs() < 1e-12);
    }
}
