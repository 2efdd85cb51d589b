//! Point membership tests for both representations.

use crate::hcone::HCone;
use crate::lp;
use crate::rational::{dot_int_f64, dot_int_rat, BigInt, Rat};
use crate::vcone::VCone;
use crate::{GeoError, Result};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub inside: bool,
    /// (row index into eqs then ineqs, slack) for every violated row.
    pub violations: Vec<(RowRef, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowRef {
    Eq(usize),
    Ineq(usize),
}

/// Tolerance-based membership: inside iff |eq.v| <= tol and ineq.v >= -tol.
pub fn contains_point(cone: &HCone, v: &[f64], tol: f64) -> Result<MembershipReport> {
    if v.len() != cone.dim {
        return Err(GeoError::DimMismatch {
            expected: cone.dim,
            got: v.len(),
        });
    }
    if tol < 0.0 {
        return Err(GeoError::Invalid("negative tolerance".into()));
    }
    let mut violations = Vec::new();
    for (i, row) in cone.eqs.iter().enumerate() {
        let s = dot_int_f64(row, v);
        if s.abs() > tol {
            violations.push((RowRef::Eq(i), s));
        }
    }
    for (i, row) in cone.ineqs.iter().enumerate() {
        let s = dot_int_f64(row, v);
        if s < -tol {
            violations.push((RowRef::Ineq(i), s));
        }
    }
    Ok(MembershipReport {
        inside: violations.is_empty(),
        violations,
    })
}

/// Exact membership for rational points (agrees with tol = 0 evaluation).
pub fn contains_point_exact(cone: &HCone, v: &[Rat]) -> Result<bool> {
    if v.len() != cone.dim {
        return Err(GeoError::DimMismatch {
            expected: cone.dim,
            got: v.len(),
        });
    }
    for row in &cone.eqs {
        if !dot_int_rat(row, v).is_zero() {
            return Ok(false);
        }
    }
    for row in &cone.ineqs {
        if dot_int_rat(row, v) < Rat::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact conic-hull membership with a nonnegative combination witness.
pub fn in_conic_hull(cone: &VCone, v: &[Rat]) -> Result<Option<Vec<Rat>>> {
    if v.len() != cone.dim {
        return Err(GeoError::DimMismatch {
            expected: cone.dim,
            got: v.len(),
        });
    }
    if v.iter().all(|x| x.is_zero()) {
        return Ok(Some(vec![Rat::zero(); cone.rays.len()]));
    }
    // sum(theta_j ray_j) = v with theta >= 0, coordinates as equations.
    // Scale v to an integer vector first; rescale the witness afterwards.
    let vint = crate::rational::primitive_from_rats(v);
    let rays: Vec<&[BigInt]> = cone.rays.iter().map(|r| r.as_slice()).collect();
    let lins: Vec<&[BigInt]> = cone.lineality.iter().map(|r| r.as_slice()).collect();
    match lp::conic_combination(&rays, &lins, &vint) {
        Some(coeffs) => {
            let scale = scale_factor(v, &vint);
            Ok(Some(coeffs.into_iter().map(|c| c * &scale).collect()))
        }
        None => Ok(None),
    }
}

fn scale_factor(v: &[Rat], vint: &[BigInt]) -> Rat {
    for (a, b) in v.iter().zip(vint) {
        if !a.is_zero() {
            return a / Rat::from_integer(b.clone());
        }
    }
    Rat::zero()
}
