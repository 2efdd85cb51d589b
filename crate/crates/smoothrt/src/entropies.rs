//! Single-shot and smooth entropies with exact witnesses.
//!
//! Conventions, applied consistently and never mixed: the smooth min-entropy
//! optimizes over the subnormalized ball (water-level cut); the S_+ route
//! uses the hypothesis-testing entropy whose defining LP is solved in closed
//! form by the fractional-knapsack greedy. H_0^eps is the minimal rank
//! reachable in the ball, the reading consistent with the max-entropies
//! relation (the literal max over the ball would be unbounded in rank).

use crate::spectrum::Spectrum;
use crate::{Result, RtError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use ratgeo::lp::{solve, LpOutcome, StandardLp};
use ratgeo::rational::{log2_bigint, log2_rat, Rat};

#[derive(Clone, Debug)]
pub enum Witness {
    /// Eigenvalue witnessing H_min.
    TopValue(Rat),
    /// Rank witnessing H_0 / H_0^eps.
    Rank(BigInt),
    /// Water level m of the min-entropy cut, solving sum (lambda - m)+ = eps.
    CutLevel(Rat),
    /// Fractional knapsack optimum k + phi with top mass exactly 1 - eps.
    KnapsackCount(Rat),
    None,
}

#[derive(Clone, Debug)]
pub struct SmoothEntropyReport {
    /// Value in bits.
    pub value: f64,
    pub witness: Witness,
}

fn check_normalized(s: &Spectrum) -> Result<()> {
    if !s.is_normalized() {
        return Err(RtError::NotNormalized(format!("{}", s.mass())));
    }
    Ok(())
}

fn check_eps(eps: &Rat, allow_one: bool) -> Result<()> {
    if eps.is_negative() || (allow_one && eps > &Rat::one()) || (!allow_one && eps >= &Rat::one()) {
        return Err(RtError::EpsilonRange(if allow_one { "[0,1]" } else { "[0,1)" }));
    }
    Ok(())
}

/// H_min = -log2 of the largest eigenvalue.
pub fn h_min(s: &Spectrum) -> SmoothEntropyReport {
    let top = s.max_value().clone();
    SmoothEntropyReport {
        value: -log2_rat(&top),
        witness: Witness::TopValue(top),
    }
}

/// H_0 = log2 of the rank.
pub fn h_zero(s: &Spectrum) -> SmoothEntropyReport {
    let r = s.rank();
    SmoothEntropyReport {
        value: log2_bigint(&r),
        witness: Witness::Rank(r),
    }
}

/// Water level for the subnormalized-ball smoothing: the unique m with
/// sum_i (lambda_i - m)+ = eps (m = lambda_max at eps = 0).
pub fn water_level(s: &Spectrum, eps: &Rat) -> Rat {
    if eps.is_zero() {
        return s.max_value().clone();
    }
    // With k indices above the cut: m = (TopMass(k) - eps) / k, valid while
    // m lies between adjacent eigenvalues.
    let mut count = BigInt::zero();
    let mut mass = Rat::zero();
    let n = s.entries.len();
    for (i, (v, m)) in s.entries.iter().enumerate() {
        count += m;
        mass += v * Rat::from_integer(m.clone());
        let level = (&mass - eps) / Rat::from_integer(count.clone());
        let lower = if i + 1 < n {
            s.entries[i + 1].0.clone()
        } else {
            Rat::zero()
        };
        if level >= lower && level <= *v {
            return level.max(Rat::zero());
        }
    }
    Rat::zero()
}

/// Smooth min-entropy: -log2 of the water-cut level.
pub fn h_min_eps(s: &Spectrum, eps: &Rat) -> Result<SmoothEntropyReport> {
    check_normalized(s)?;
    check_eps(eps, false)?;
    let m = water_level(s, eps);
    if m.is_zero() {
        return Err(RtError::EpsilonRange("cut level degenerates at this eps"));
    }
    Ok(SmoothEntropyReport {
        value: -log2_rat(&m),
        witness: Witness::CutLevel(m),
    })
}

/// Smooth max-entropy H_0^eps: log2 of the minimal rank j with top-j mass
/// at least 1 - eps.
pub fn h_zero_eps(s: &Spectrum, eps: &Rat) -> Result<SmoothEntropyReport> {
    check_normalized(s)?;
    check_eps(eps, false)?;
    let target = Rat::one() - eps;
    let j = minimal_rank_reaching(s, &target);
    Ok(SmoothEntropyReport {
        value: log2_bigint(&j),
        witness: Witness::Rank(j),
    })
}

fn minimal_rank_reaching(s: &Spectrum, target: &Rat) -> BigInt {
    if !target.is_positive() {
        return BigInt::one();
    }
    let mut count = BigInt::zero();
    let mut mass = Rat::zero();
    for (v, m) in &s.entries {
        let block = v * Rat::from_integer(m.clone());
        if &mass + &block >= *target {
            let need = target - &mass;
            let k = (need / v).ceil().to_integer();
            return count + k.max(BigInt::one());
        }
        mass += block;
        count += m;
    }
    s.rank()
}

/// Hypothesis-testing entropy H_H^{1-eps}: the defining LP's optimum is the
/// fractional-knapsack greedy, 2^{H} (1-eps) = k + phi where the top mass of
/// k eigenvalues plus a phi-fraction of the next reaches exactly 1 - eps.
pub fn h_hyp_eps(s: &Spectrum, eps: &Rat) -> Result<SmoothEntropyReport> {
    check_normalized(s)?;
    check_eps(eps, false)?;
    let target = Rat::one() - eps;
    let mut count = BigInt::zero();
    let mut mass = Rat::zero();
    let mut kphi: Option<Rat> = None;
    for (v, m) in &s.entries {
        let block = v * Rat::from_integer(m.clone());
        if &mass + &block >= target {
            let need = &target - &mass;
            let frac = need / v; // counts fractional indices inside the block
            kphi = Some(Rat::from_integer(count.clone()) + frac);
            break;
        }
        mass += block;
        count += m;
    }
    let kphi = kphi.unwrap_or_else(|| Rat::from_integer(s.rank()));
    let value = log2_rat(&kphi) - log2_rat(&target);
    Ok(SmoothEntropyReport {
        value,
        witness: Witness::KnapsackCount(kphi),
    })
}

/// Exact LP oracle for the hypothesis-testing entropy on dense spectra:
/// minimize tr Q / (1-eps) subject to tr(Q rho) >= 1-eps, 0 <= Q <= 1.
pub fn h_hyp_eps_lp(s: &Spectrum, eps: &Rat) -> Result<f64> {
    check_normalized(s)?;
    check_eps(eps, false)?;
    let values = s.dense(64)?;
    let d = values.len();
    let target = Rat::one() - eps;
    // Variables: q (d), u (d) with q + u = 1, t >= 0 with sum q v - t = target.
    let nv = 2 * d + 1;
    let mut a = Vec::with_capacity(d + 1);
    let mut b = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut row = vec![Rat::zero(); nv];
        row[i] = Rat::one();
        row[d + i] = Rat::one();
        a.push(row);
        b.push(Rat::one());
    }
    let mut row = vec![Rat::zero(); nv];
    for (i, v) in values.iter().enumerate() {
        row[i] = v.clone();
    }
    row[2 * d] = -Rat::one();
    a.push(row);
    b.push(target.clone());
    let mut c = vec![Rat::zero(); nv];
    for ci in c.iter_mut().take(d) {
        *ci = Rat::one();
    }
    match solve(&StandardLp { a, b, c }) {
        LpOutcome::Optimal { value, .. } => Ok(log2_rat(&value) - log2_rat(&target)),
        other => Err(RtError::Invalid(format!("LP did not solve: {other:?}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    /// Smooth adiabatic operations (trace-distance balls).
    Adiabatic,
    /// Probabilistic adiabatic transformations.
    Probabilistic,
}

/// S_-: the largest meter-entropy drop extractable when forming the state.
pub fn s_minus(s: &Spectrum, eps: &Rat, theory: Theory) -> Result<f64> {
    match theory {
        Theory::Adiabatic => Ok(h_min_eps(s, eps)?.value),
        Theory::Probabilistic => {
            check_normalized(s)?;
            check_eps(eps, false)?;
            Ok(h_min(s).value + log2_one_minus(eps))
        }
    }
}

/// S_+: the smallest meter-entropy cost of reaching the reference state.
pub fn s_plus(s: &Spectrum, eps: &Rat, theory: Theory) -> Result<f64> {
    match theory {
        Theory::Adiabatic => Ok(h_hyp_eps(s, eps)?.value + log2_one_minus(eps)),
        Theory::Probabilistic => {
            check_normalized(s)?;
            check_eps(eps, false)?;
            Ok(h_zero(s).value)
        }
    }
}

fn log2_one_minus(eps: &Rat) -> f64 {
    let rest = Rat::one() - eps;
    log2_rat(&rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::parse_spectrum;
    use ratgeo::rational::rat;

    #[test]
    fn unsmoothed_values() {
        let s = parse_spectrum("3/4,1/4").unwrap();
        assert!((h_min(&s).value - (4f64 / 3f64).log2()).abs() < 1e-12);
        assert!((h_zero(&s).value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn water_cut_example() {
        let s = parse_spectrum("3/4,1/4").unwrap();
        let r = h_min_eps(&s, &rat(1, 4)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        match r.witness {
            Witness::CutLevel(m) => assert_eq!(m, rat(1, 2)),
            _ => panic!("expected cut level"),
        }
    }

    #[test]
    fn flat_closed_forms() {
        // chi_lambda: S_- = lambda - log2(1-eps), S_+ = lambda + log2(1-eps).
        let chi = Spectrum::flat(&BigInt::from(8));
        let eps = rat(1, 4);
        let lam = 3.0;
        let minus = s_minus(&chi, &eps, Theory::Adiabatic).unwrap();
        let plus = s_plus(&chi, &eps, Theory::Adiabatic).unwrap();
        let corr = (0.75f64).log2();
        assert!((minus - (lam - corr)).abs() < 1e-12);
        assert!((plus - (lam + corr)).abs() < 1e-12);
        // Probabilistic: (lambda + log2(1-eps), lambda).
        let pm = s_minus(&chi, &eps, Theory::Probabilistic).unwrap();
        let pp = s_plus(&chi, &eps, Theory::Probabilistic).unwrap();
        assert!((pm - (lam + corr)).abs() < 1e-12);
        assert!((pp - lam).abs() < 1e-12);
    }

    #[test]
    fn eps_zero_degenerations() {
        let s = parse_spectrum("1/2,1/4,1/8,1/8").unwrap();
        let z = rat(0, 1);
        assert!((h_min_eps(&s, &z).unwrap().value - h_min(&s).value).abs() < 1e-12);
        assert!((h_hyp_eps(&s, &z).unwrap().value - h_zero(&s).value).abs() < 1e-12);
        assert!((h_zero_eps(&s, &z).unwrap().value - h_zero(&s).value).abs() < 1e-12);
    }

    #[test]
    fn lp_oracle_agrees_on_small_spectra() {
        let s = parse_spectrum("1/2,1/4,1/8,1/16,1/16").unwrap();
        for eps in [rat(1, 20), rat(1, 4), rat(1, 2)] {
            let greedy = h_hyp_eps(&s, &eps).unwrap().value;
            let lp = h_hyp_eps_lp(&s, &eps).unwrap();
            assert!((greedy - lp).abs() < 1e-12, "eps {eps}: {greedy} vs {lp}");
        }
    }

    #[test]
    fn max_entropies_chain() {
        // log2(2^H0eps - 1) <= H_H + log2(1-eps) <= H0eps.
        let s = parse_spectrum("2/5,3/10,1/5,1/10").unwrap();
        for eps in [rat(1, 10), rat(1, 4), rat(2, 5)] {
            let h0e = h_zero_eps(&s, &eps).unwrap().value;
            let mid = h_hyp_eps(&s, &eps).unwrap().value + log2_one_minus(&eps);
            let lower = (2f64.powf(h0e) - 1.0).log2();
            assert!(lower <= mid + 1e-9, "eps {eps}");
            assert!(mid <= h0e + 1e-9, "eps {eps}");
        }
    }
}
