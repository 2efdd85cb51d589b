//! Flat-state sandwiching of tensor powers and the asymptotic equipartition
//! property.

use crate::entropies::{s_minus, s_plus, Theory};
use crate::majorize::eps_majorizes;
use crate::spectrum::Spectrum;
use crate::{Result, RtError};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use ratgeo::exec::{map_slice, Exec};
use ratgeo::rational::{log2_bigint, log2_rat, Rat};

/// Tightest flat-state sandwich of a spectrum: the largest integer rank k
/// with flat(k) eps-majorizing s, and the smallest m with s eps-majorizing
/// flat(m). Found by binary search over integer ranks (both predicates are
/// monotone in the rank).
pub fn flat_sandwich(s: &Spectrum, eps: &Rat) -> Result<(f64, f64)> {
    if !eps.is_positive() || eps >= &Rat::one() {
        return Err(RtError::EpsilonRange("(0,1)"));
    }
    if !s.is_normalized() {
        return Err(RtError::NotNormalized(format!("{}", s.mass())));
    }
    let rank = s.rank();
    // lambda-: flat(k) gets harder as k grows; k = 1 always works.
    let upper = {
        // F_flat(rank) = rank / k >= 1 - eps is necessary.
        let bound = Rat::from_integer(rank.clone()) / (Rat::one() - eps);
        bound.ceil().to_integer() + BigInt::one()
    };
    let pred_minus =
        |k: &BigInt| -> bool { eps_majorizes(&Spectrum::flat(k), s, eps).unwrap_or(false) };
    if !pred_minus(&BigInt::one()) {
        return Err(RtError::Invalid("no feasible flat lower bound".into()));
    }
    let k = binary_search_max(BigInt::one(), upper, pred_minus);
    // lambda+: s -> flat(m) gets easier as m grows; m = rank always works.
    let pred_plus =
        |m: &BigInt| -> bool { eps_majorizes(s, &Spectrum::flat(m), eps).unwrap_or(false) };
    let m = binary_search_min(BigInt::one(), rank.clone(), pred_plus);
    Ok((log2_bigint(&k), log2_bigint(&m)))
}

/// Largest value in [lo, hi] satisfying the monotone-decreasing predicate.
fn binary_search_max(lo: BigInt, hi: BigInt, pred: impl Fn(&BigInt) -> bool) -> BigInt {
    let mut lo = lo; // pred(lo) holds
    let mut hi = hi; // pred(hi) fails
    while &hi - &lo > BigInt::one() {
        let mid = (&lo + &hi) / 2;
        if pred(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Smallest value in [lo, hi] satisfying the monotone-increasing predicate
/// (pred(hi) must hold).
fn binary_search_min(lo: BigInt, hi: BigInt, pred: impl Fn(&BigInt) -> bool) -> BigInt {
    let mut lo = lo - BigInt::one(); // pred(lo) fails (rank 0 is not a state)
    let mut hi = hi; // pred(hi) holds
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if mid.is_positive() && pred(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Per-copy smooth entropy rates (S_- / n, S_+ / n) of tensor powers, for
/// each requested n. Powers are built once in RLE form; the list is
/// processed in parallel under the given execution mode.
pub fn aep_rates(base: &Spectrum, eps: &Rat, ns: &[u64], exec: Exec) -> Result<Vec<(u64, f64, f64)>> {
    if !base.is_normalized() {
        return Err(RtError::NotNormalized(format!("{}", base.mass())));
    }
    let results = map_slice(exec, ns, |&n| -> Result<(u64, f64, f64)> {
        let sn = base.tensor_power(n);
        let lo = s_minus(&sn, eps, Theory::Adiabatic)?;
        let hi = s_plus(&sn, eps, Theory::Adiabatic)?;
        Ok((n, lo / n as f64, hi / n as f64))
    });
    results.into_iter().collect()
}

/// Necessary-condition bounds for probabilistic flat sandwiching of a
/// two-level state (p, 1-p)^{(x) n}: lambda- <= n log2(1/p) - log2(1-eps)
/// and lambda+ >= n. Their gap grows linearly unless the state is flat.
pub fn prob_equilibrium_gap(p: &Rat, n: u64, eps: &Rat) -> Result<(f64, f64)> {
    if !p.is_positive() || p > &Rat::one() {
        return Err(RtError::Invalid("p must lie in (0,1]".into()));
    }
    if eps.is_negative() || eps >= &Rat::one() {
        return Err(RtError::EpsilonRange("[0,1)"));
    }
    let lam_minus_upper = -(n as f64) * log2_rat(p) - log2_rat(&(Rat::one() - eps));
    let lam_plus_lower = n as f64;
    Ok((lam_minus_upper, lam_plus_lower))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::parse_spectrum;
    use ratgeo::rational::rat;

    #[test]
    fn flat_input_is_tight() {
        let chi = Spectrum::flat(&BigInt::from(16));
        let (lo, hi) = flat_sandwich(&chi, &rat(1, 10)).unwrap();
        // lambda- >= lambda = 4 and lambda+ <= lambda.
        assert!(lo >= 4.0 - 1e-12);
        assert!(hi <= 4.0 + 1e-12);
        // Sandwich ordering with the work-error correction.
        assert!(lo <= hi - (0.9f64).log2().ceil() + 1.0);
    }

    #[test]
    fn rates_converge_to_von_neumann() {
        let base = parse_spectrum("3/4,1/4").unwrap();
        let h = 0.8112781244591328f64;
        let eps = rat(1, 10);
        let rates = aep_rates(&base, &eps, &[200, 1000], Exec::Sequential).unwrap();
        let err200 = (rates[0].1 - h).abs().max((rates[0].2 - h).abs());
        let err1000 = (rates[1].1 - h).abs().max((rates[1].2 - h).abs());
        assert!(err1000 < err200);
        assert!(err1000 < 0.05);
    }

    #[test]
    fn sandwich_on_tensor_power() {
        let base = parse_spectrum("3/4,1/4").unwrap();
        let sn = base.tensor_power(300);
        let (lo, hi) = flat_sandwich(&sn, &rat(1, 10)).unwrap();
        let h = 0.8112781244591328f64 * 300.0;
        assert!((lo - h).abs() < 0.1 * 300.0);
        assert!((hi - h).abs() < 0.1 * 300.0);
        assert!(lo <= hi + -(0.9f64).log2() + 1.0);
    }

    #[test]
    fn gap_formula() {
        let (upper_minus, lower_plus) = prob_equilibrium_gap(&rat(3, 4), 100, &rat(1, 4)).unwrap();
        let expect_gap = 100.0 * (1.5f64).log2() + (0.75f64).log2();
        assert!(((lower_plus - upper_minus) - expect_gap).abs() < 1e-9);
        assert!(lower_plus - upper_minus > 2.0 * 100.0 * 0.01);
        // Flat base: no linear gap growth.
        let (um, lp) = prob_equilibrium_gap(&rat(1, 2), 100, &rat(1, 4)).unwrap();
        assert!((um - (100.0 - (0.75f64).log2())).abs() < 1e-9);
        assert!((lp - 100.0).abs() < 1e-9);
    }
}
