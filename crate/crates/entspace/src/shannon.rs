//! Yeung's minimal generating set of Shannon inequalities.

use crate::coord::{cmi_terms, CoordSystem};
use crate::{EntError, Result};
use ratgeo::HCone;

/// The n + n(n-1)2^(n-3) elemental inequalities on the given coordinate
/// system: n monotonicity rows H(full) - H(full minus Xi) >= 0 and the
/// submodularity rows I(Xi:Xj|XS) >= 0 with S ranging over subsets of the
/// remaining variables.
pub fn shannon_elemental(n: usize, coords: &CoordSystem) -> Result<HCone> {
    if n < 2 {
        return Err(EntError::TooFewVariables(n));
    }
    debug_assert_eq!(coords.n_vars(), n);
    let full: u64 = (1u64 << n) - 1;
    let mut rows = Vec::new();
    for i in 0..n {
        let rest = full & !(1 << i);
        rows.push(coords.row(&[(full, 1), (rest, -1)])?);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let rest = full & !(1 << i) & !(1 << j);
            let mut s = rest;
            loop {
                rows.push(coords.row(&cmi_terms(1 << i, 1 << j, s))?);
                if s == 0 {
                    break;
                }
                s = (s - 1) & rest;
            }
        }
    }
    let mut cone = HCone::new(coords.dim(), vec![], rows).map_err(geo)?;
    cone.coords = Some(coords.labels());
    Ok(cone)
}

fn geo(e: ratgeo::GeoError) -> EntError {
    EntError::Invalid(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_yeung_formula() {
        for n in 2..=5 {
            let names: Vec<String> = (0..n).map(|i| format!("X{}", i + 1)).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let cs = CoordSystem::full(&refs);
            let cone = shannon_elemental(n, &cs).unwrap();
            let expect = n + n * (n - 1) * (1usize << n) / 8;
            assert_eq!(cone.ineqs.len(), expect);
        }
    }

    #[test]
    fn rejects_single_variable() {
        let cs = CoordSystem::full(&["X"]);
        assert!(shannon_elemental(1, &cs).is_err());
    }
}
