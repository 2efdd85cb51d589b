//! Non-Shannon inequality rows (Zhang-Yeung, the two Matus families) and the
//! Ingleton linear-rank rows delimiting inner approximations.

use crate::coord::{cmi_terms, CoordSystem};
use crate::shannon::shannon_elemental;
use crate::{EntError, Result};
use ratgeo::{BigInt, HCone};

fn acc(terms: &mut Vec<(u64, i64)>, part: Vec<(u64, i64)>, scale: i64) {
    for (m, c) in part {
        terms.push((m, c * scale));
    }
}

/// The Zhang-Yeung inequality on the ordered tuple (X1,X2,X3,X4), scaled by
/// two to integer coefficients:
///   2*I(X1:X2|X3) + I(X1:X2|X4) + I(X3:X4) - I(X1:X2)
///   + I(X1:X3|X2) + I(X2:X3|X1)  >= 0.
pub fn zhang_yeung_row(perm: (usize, usize, usize, usize), coords: &CoordSystem) -> Result<Vec<BigInt>> {
    let (a, b, c, d) = perm;
    let m = |i: usize| 1u64 << i;
    let mut terms = Vec::new();
    acc(&mut terms, cmi_terms(m(a), m(b), m(c)), 2);
    acc(&mut terms, cmi_terms(m(a), m(b), m(d)), 1);
    acc(&mut terms, cmi_terms(m(c), m(d), 0), 1);
    acc(&mut terms, cmi_terms(m(a), m(b), 0), -1);
    acc(&mut terms, cmi_terms(m(a), m(c), m(b)), 1);
    acc(&mut terms, cmi_terms(m(b), m(c), m(a)), 1);
    coords.row(&terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatusFamily {
    One,
    Two,
}

/// Matus's infinite families on four variables; s >= 1. For s = 1 both
/// coincide with the Zhang-Yeung row.
pub fn matus_row(
    family: MatusFamily,
    s: u64,
    perm: (usize, usize, usize, usize),
    coords: &CoordSystem,
) -> Result<Vec<BigInt>> {
    if s == 0 {
        return Err(EntError::Invalid("matus family needs s >= 1".into()));
    }
    let s = s as i64;
    let (x1, x2, x3, x4) = perm;
    let m = |i: usize| 1u64 << i;
    let mut terms = Vec::new();
    match family {
        MatusFamily::One => {
            // s[I(1:2|3)+I(1:2|4)+I(3:4)-I(1:2)] + I(1:3|2)
            //   + s(s+1)/2 [I(2:3|1)+I(1:2|3)]
            acc(&mut terms, cmi_terms(m(x1), m(x2), m(x3)), s);
            acc(&mut terms, cmi_terms(m(x1), m(x2), m(x4)), s);
            acc(&mut terms, cmi_terms(m(x3), m(x4), 0), s);
            acc(&mut terms, cmi_terms(m(x1), m(x2), 0), -s);
            acc(&mut terms, cmi_terms(m(x1), m(x3), m(x2)), 1);
            let w = s * (s + 1) / 2;
            acc(&mut terms, cmi_terms(m(x2), m(x3), m(x1)), w);
            acc(&mut terms, cmi_terms(m(x1), m(x2), m(x3)), w);
        }
        MatusFamily::Two => {
            // s[I(2:3|1)+2I(1:2|3)+I(1:2|4)+I(3:4)-I(1:2)] + I(1:3|2)
            //   + s(s-1)/2 [I(2:4|1)+I(1:2|4)]
            acc(&mut terms, cmi_terms(m(x2), m(x3), m(x1)), s);
            acc(&mut terms, cmi_terms(m(x1), m(x2), m(x3)), 2 * s);
            acc(&mut terms, cmi_terms(m(x1), m(x2), m(x4)), s);
            acc(&mut terms, cmi_terms(m(x3), m(x4), 0), s);
            acc(&mut terms, cmi_terms(m(x1), m(x2), 0), -s);
            acc(&mut terms, cmi_terms(m(x1), m(x3), m(x2)), 1);
            let w = s * (s - 1) / 2;
            acc(&mut terms, cmi_terms(m(x2), m(x4), m(x1)), w);
            acc(&mut terms, cmi_terms(m(x1), m(x2), m(x4)), w);
        }
    }
    coords.row(&terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatusMarginalFamily {
    /// (-s^2/2-3s/2)(H(X)+H(Z)) + (-s-1)H(Y)
    ///   + (s^2/2+3s/2+1)(H(XY)+H(YZ)) + (s^2+2s)H(XZ) + (-s^2-2s-1)H(XYZ)
    M1,
    /// (-s^2/2-3s/2-2)(H(X)+H(Y)+H(Z)-H(XY))
    ///   + (s^2/2+3s/2+1)H(XZ) + (s+2)H(YZ) + (-s-1)H(XYZ)
    M1F2,
    /// (-s^2/2-3s/2-2)(H(X)+H(Z)-H(XY)) + (-2s-2)H(Y)
    ///   + (s^2+2)H(XZ) + (s^2/2+3s/2+1)H(YZ) + (-s^2-1)H(XYZ)
    M2,
}

/// The marginalized infinite families valid on the triangle scenario, as
/// integer rows over a full 3-variable system (coefficients doubled to clear
/// halves, then made primitive). `perm` maps the roles (X,Y,Z) to variables.
pub fn matus_marginal_row(
    family: MatusMarginalFamily,
    s: u64,
    perm: (usize, usize, usize),
    coords: &CoordSystem,
) -> Result<Vec<BigInt>> {
    if s == 0 {
        return Err(EntError::Invalid("matus family needs s >= 1".into()));
    }
    let s = s as i64;
    let (x, y, z) = perm;
    let mx = 1u64 << x;
    let my = 1u64 << y;
    let mz = 1u64 << z;
    let (cx, cy, cz, cxy, cxz, cyz, cxyz) = match family {
        MatusMarginalFamily::M1 => (
            -s * s - 3 * s,
            -2 * s - 2,
            -s * s - 3 * s,
            s * s + 3 * s + 2,
            2 * s * s + 4 * s,
            s * s + 3 * s + 2,
            -2 * s * s - 4 * s - 2,
        ),
        MatusMarginalFamily::M1F2 => (
            -s * s - 3 * s - 4,
            -s * s - 3 * s - 4,
            -s * s - 3 * s - 4,
            s * s + 3 * s + 4,
            s * s + 3 * s + 2,
            2 * s + 4,
            -2 * s - 2,
        ),
        MatusMarginalFamily::M2 => (
            -s * s - 3 * s - 4,
            -4 * s - 4,
            -s * s - 3 * s - 4,
            s * s + 3 * s + 4,
            2 * s * s + 4,
            s * s + 3 * s + 2,
            -2 * s * s - 2,
        ),
    };
    let row = coords.row(&[
        (mx, cx),
        (my, cy),
        (mz, cz),
        (mx | my, cxy),
        (mx | mz, cxz),
        (my | mz, cyz),
        (mx | my | mz, cxyz),
    ])?;
    Ok(ratgeo::rational::primitive(&row))
}

/// Ingleton row I(W:X|Y) + I(W:X|Z) + I(Y:Z) - I(W:X) >= 0.
pub fn ingleton_row(tuple: (usize, usize, usize, usize), coords: &CoordSystem) -> Result<Vec<BigInt>> {
    let (w, x, y, z) = tuple;
    let m = |i: usize| 1u64 << i;
    let mut terms = Vec::new();
    acc(&mut terms, cmi_terms(m(w), m(x), m(y)), 1);
    acc(&mut terms, cmi_terms(m(w), m(x), m(z)), 1);
    acc(&mut terms, cmi_terms(m(y), m(z), 0), 1);
    acc(&mut terms, cmi_terms(m(w), m(x), 0), -1);
    coords.row(&terms)
}

/// The six inequivalent Ingleton permutations of a 4-variable tuple
/// (the quantity is symmetric under W<->X and Y<->Z).
pub fn ingleton_tuples(vars: [usize; 4]) -> Vec<(usize, usize, usize, usize)> {
    let [a, b, c, d] = vars;
    vec![
        (a, b, c, d),
        (a, c, b, d),
        (a, d, b, c),
        (c, d, a, b),
        (b, d, a, c),
        (b, c, a, d),
    ]
}

/// Shannon rows plus all inequivalent Ingleton permutations for n = 4
/// (the Ingleton cone), as an H-representation.
pub fn ingleton_cone(coords: &CoordSystem) -> Result<HCone> {
    let n = coords.n_vars();
    if n != 4 {
        return Err(EntError::Invalid(format!(
            "ingleton_cone expects 4 variables, got {n}"
        )));
    }
    let mut cone = shannon_elemental(4, coords)?;
    for t in ingleton_tuples([0, 1, 2, 3]) {
        cone.ineqs.push(ingleton_row(t, coords)?);
    }
    Ok(cone)
}

/// Ingleton rows applied to every 4-subset of the n variables (all six
/// permutations per subset, before de-duplication).
pub fn ingleton_rows_on_subsets(n: usize, coords: &CoordSystem) -> Result<Vec<Vec<BigInt>>> {
    let mut rows = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    for t in ingleton_tuples([a, b, c, d]) {
                        rows.push(ingleton_row(t, coords)?);
                    }
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs4() -> CoordSystem {
        CoordSystem::full(&["X1", "X2", "X3", "X4"])
    }

    #[test]
    fn zhang_yeung_published_coefficients() {
        let cs = cs4();
        let row = zhang_yeung_row((0, 1, 2, 3), &cs).unwrap();
        let expect: Vec<i64> = vec![-2, -2, -1, 0, 3, 3, 1, 3, 1, -1, -4, -1, 0, 0, 0];
        let expect: Vec<BigInt> = expect.into_iter().map(BigInt::from).collect();
        assert_eq!(row, expect);
    }

    #[test]
    fn matus_s1_equals_zhang_yeung() {
        let cs = cs4();
        let zy = zhang_yeung_row((0, 1, 2, 3), &cs).unwrap();
        for fam in [MatusFamily::One, MatusFamily::Two] {
            let row = matus_row(fam, 1, (0, 1, 2, 3), &cs).unwrap();
            assert_eq!(row, zy);
        }
    }

    #[test]
    fn matus_marginal_s1_pattern() {
        let cs = CoordSystem::full(&["X", "Y", "Z"]);
        let row = matus_marginal_row(MatusMarginalFamily::M1, 1, (0, 1, 2), &cs).unwrap();
        let expect: Vec<BigInt> = vec![-2, -2, -2, 3, 3, 3, -4]
            .into_iter()
            .map(BigInt::from)
            .collect();
        assert_eq!(row, expect);
    }

    #[test]
    fn ingleton_counts() {
        let cs = cs4();
        let cone = ingleton_cone(&cs).unwrap();
        assert_eq!(cone.ineqs.len(), 28 + 6);
        let names: Vec<String> = (0..5).map(|i| format!("X{}", i + 1)).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let cs5 = CoordSystem::full(&refs);
        let rows = ingleton_rows_on_subsets(5, &cs5).unwrap();
        assert_eq!(rows.len(), 5 * 6);
    }

    #[test]
    fn zero_s_rejected() {
        let cs = cs4();
        assert!(matus_row(MatusFamily::One, 0, (0, 1, 2, 3), &cs).is_err());
    }
}
