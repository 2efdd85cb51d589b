//! Majorization and its epsilon-smoothed relaxation on step functions.

use crate::spectrum::{gen_trace_distance_impl, Spectrum};
use crate::{Result, RtError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use ratgeo::rational::Rat;

/// a majorizes b: the partial sums of a dominate those of b. Checked only at
/// the merged breakpoints of the two step functions (both sides are
/// piecewise linear in between).
pub fn majorizes(a: &Spectrum, b: &Spectrum) -> bool {
    dominates_with_slack(a, b, &Rat::zero())
}

/// Definition (4) of the smooth order: integrals of f_a dominate those of
/// f_b up to an additive epsilon.
pub fn eps_majorizes(a: &Spectrum, b: &Spectrum, eps: &Rat) -> Result<bool> {
    if eps.is_negative() || eps > &Rat::one() {
        return Err(RtError::EpsilonRange("[0,1]"));
    }
    if !a.is_normalized() || !b.is_normalized() {
        return Err(RtError::NotNormalized(format!("{} / {}", a.mass(), b.mass())));
    }
    Ok(dominates_with_slack(a, b, eps))
}

fn dominates_with_slack(a: &Spectrum, b: &Spectrum, eps: &Rat) -> bool {
    let mut points: Vec<BigInt> = Vec::new();
    for (n, _) in a.breakpoints() {
        points.push(n);
    }
    for (n, _) in b.breakpoints() {
        points.push(n);
    }
    points.sort();
    points.dedup();
    for x in &points {
        if a.cdf(x) < b.cdf(x) - eps {
            return false;
        }
    }
    true
}

/// Trace distance on aligned spectra (generalized form, handles
/// subnormalized inputs).
pub fn gen_trace_distance(a: &Spectrum, b: &Spectrum) -> Rat {
    gen_trace_distance_impl(a, b)
}

/// The (4) => (1) construction: given eps_majorizes(a, b, eps), produce a'
/// within generalized trace distance eps of a with a' majorizing b. The top
/// eigenvalue is raised by eps (capped at one) and the same mass is drained
/// from the tail upwards.
pub fn smoothing_witness(a: &Spectrum, b: &Spectrum, eps: &Rat) -> Result<Spectrum> {
    if !eps_majorizes(a, b, eps)? {
        return Err(RtError::Precondition(format!(
            "no smooth transformation at eps = {eps}"
        )));
    }
    if eps.is_zero() {
        return Ok(a.clone());
    }
    let top = a.max_value().clone();
    let raised = (&top + eps).min(Rat::one());
    let budget = &raised - &top;
    if budget.is_zero() {
        return Ok(a.clone());
    }
    // Entries after removing one index from the top block.
    let mut body: Vec<(Rat, BigInt)> = Vec::new();
    for (i, (v, m)) in a.entries.iter().enumerate() {
        let m = if i == 0 { m - BigInt::one() } else { m.clone() };
        if m.is_positive() {
            body.push((v.clone(), m));
        }
    }
    // Drain `budget` from the smallest values upwards.
    let mut remaining = budget.clone();
    let mut out: Vec<(Rat, BigInt)> = Vec::new();
    for (v, m) in body.into_iter().rev() {
        if remaining.is_zero() {
            out.push((v, m));
            continue;
        }
        // Zero out whole indices while the budget allows.
        let full = (&remaining / &v).floor().to_integer().min(m.clone());
        let mut kept = &m - &full;
        remaining -= &v * Rat::from_integer(full);
        if remaining.is_positive() && kept.is_positive() {
            // One index is partially reduced.
            let reduced = &v - &remaining;
            remaining = Rat::zero();
            kept -= 1;
            if reduced.is_positive() {
                out.push((reduced, BigInt::one()));
            }
        }
        if kept.is_positive() {
            out.push((v, kept));
        }
    }
    out.push((raised, BigInt::one()));
    let witness = Spectrum::new(out)?;
    debug_assert!(gen_trace_distance_impl(&witness, a) <= *eps);
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::parse_spectrum;
    use ratgeo::rational::rat;

    #[test]
    fn meter_erasure_example() {
        // chi_log4 smooth-majorizes chi_log2 at eps = 1/2, with equality at x=2.
        let chi4 = Spectrum::flat(&BigInt::from(4));
        let chi2 = Spectrum::flat(&BigInt::from(2));
        assert!(!majorizes(&chi4, &chi2));
        assert!(eps_majorizes(&chi4, &chi2, &rat(1, 2)).unwrap());
        assert!(!eps_majorizes(&chi4, &chi2, &rat(2, 5)).unwrap());
        let x = BigInt::from(2);
        assert_eq!(chi4.cdf(&x), chi2.cdf(&x) - rat(1, 2));
    }

    #[test]
    fn smooth_adiabatic_example() {
        let a = parse_spectrum("1/2,1/2").unwrap();
        let b = parse_spectrum("3/4,1/4").unwrap();
        assert!(eps_majorizes(&a, &b, &rat(1, 4)).unwrap());
        let w = smoothing_witness(&a, &b, &rat(1, 4)).unwrap();
        assert_eq!(w, b);
        assert!(majorizes(&w, &b));
    }

    #[test]
    fn witness_identity_cases() {
        let a = parse_spectrum("1/2,1/4,1/4").unwrap();
        assert_eq!(smoothing_witness(&a, &a, &rat(0, 1)).unwrap(), a);
        let w = smoothing_witness(&a, &a, &rat(1, 8)).unwrap();
        assert!(majorizes(&w, &a));
        assert!(gen_trace_distance(&w, &a) <= rat(1, 8));
    }

    #[test]
    fn epsilon_zero_reduces_to_majorization() {
        let a = parse_spectrum("1/2,1/2").unwrap();
        let b = parse_spectrum("3/4,1/4").unwrap();
        assert!(!eps_majorizes(&a, &b, &rat(0, 1)).unwrap());
        assert!(eps_majorizes(&b, &a, &rat(0, 1)).unwrap());
        assert!(majorizes(&b, &a));
    }
}
