//! Embezzling-type spectra: states that catalytically erase a meter at
//! arbitrarily small error.

use crate::spectrum::Spectrum;
use crate::{Result, RtError};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use ratgeo::rational::Rat;

/// Geometric construction with c = m eps / (m - 1): eigenvalues c, then
/// blocks of c/m^k with multiplicities m^k - m^{k-1}, truncated and the last
/// value shrunk so the spectrum is exactly normalized. The result satisfies
/// rho (x) chi_{log2 m}  eps-majorizes  rho (x) pure.
pub fn embezzling_spectrum(m: u64, eps: &Rat) -> Result<Spectrum> {
    if m < 2 {
        return Err(RtError::Invalid("m must be at least 2".into()));
    }
    if !eps.is_positive() || eps >= &Rat::one() {
        return Err(RtError::EpsilonRange("(0,1)"));
    }
    let m_rat = Rat::from_integer(BigInt::from(m));
    let c = eps * &m_rat / (&m_rat - Rat::one());
    if c >= Rat::one() {
        return Ok(Spectrum::pure());
    }
    let mut entries: Vec<(Rat, BigInt)> = vec![(c.clone(), BigInt::one())];
    let mut total = c.clone();
    let mut value = c.clone();
    let mut prev_rank = BigInt::one();
    while total < Rat::one() {
        value = &value / &m_rat;
        let rank = &prev_rank * BigInt::from(m);
        let mult = &rank - &prev_rank;
        let block = &value * Rat::from_integer(mult.clone());
        if &total + &block >= Rat::one() {
            // Truncate: keep as many full entries as fit, then one shrunken
            // entry to reach mass one exactly.
            let need = Rat::one() - &total;
            let full = (&need / &value).floor().to_integer();
            if full.is_positive() {
                entries.push((value.clone(), full.clone()));
            }
            let rest = &need - &value * Rat::from_integer(full);
            if rest.is_positive() {
                entries.push((rest, BigInt::one()));
            }
            total = Rat::one();
        } else {
            entries.push((value.clone(), mult));
            total += block;
            prev_rank = rank;
        }
    }
    Spectrum::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorize::eps_majorizes;
    use ratgeo::rational::rat;

    #[test]
    fn published_instances() {
        // m=2, eps=1/2: c = 1, the pure state.
        let s = embezzling_spectrum(2, &rat(1, 2)).unwrap();
        assert_eq!(s, Spectrum::pure());
        // m=2, eps=1/4 -> (1/2, 1/4, 1/8, 1/8).
        let s = embezzling_spectrum(2, &rat(1, 4)).unwrap();
        assert_eq!(
            s.dense(8).unwrap(),
            vec![rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 8)]
        );
    }

    #[test]
    fn erasure_property() {
        for m in [2u64, 3, 4] {
            for (n, d) in [(1i64, 4i64), (1, 10), (1, 100)] {
                let eps = rat(n, d);
                let rho = embezzling_spectrum(m, &eps).unwrap();
                let with_meter = rho.tensor(&Spectrum::flat(&BigInt::from(m)));
                assert!(
                    eps_majorizes(&with_meter, &rho, &eps).unwrap(),
                    "m={m} eps={eps}"
                );
            }
        }
    }
}
