//! Run-length-encoded decreasing eigenvalue lists.

use crate::{Result, RtError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use ratgeo::rational::{parse_rat, Rat};

/// Decreasing list of (value, multiplicity) with strictly decreasing positive
/// values and total mass in (0, 1]. The diagonal suffices for every
/// computation in this theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub entries: Vec<(Rat, BigInt)>,
}

impl Spectrum {
    pub fn new(entries: Vec<(Rat, BigInt)>) -> Result<Self> {
        let mut list: Vec<(Rat, BigInt)> = entries
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .collect();
        for (v, m) in &list {
            if !v.is_positive() || m.is_negative() {
                return Err(RtError::Invalid("values must be positive".into()));
            }
        }
        list.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Rat, BigInt)> = Vec::with_capacity(list.len());
        for (v, m) in list {
            match merged.last_mut() {
                Some((lv, lm)) if *lv == v => *lm += m,
                _ => merged.push((v, m)),
            }
        }
        let s = Spectrum { entries: merged };
        let mass = s.mass();
        if !mass.is_positive() || mass > Rat::one() {
            return Err(RtError::NotNormalized(format!("{mass}")));
        }
        Ok(s)
    }

    pub fn from_values(values: &[Rat]) -> Result<Self> {
        Self::new(values.iter().map(|v| (v.clone(), BigInt::one())).collect())
    }

    /// Flat spectrum of rank m: the meter state chi_{log2 m}.
    pub fn flat(m: &BigInt) -> Spectrum {
        assert!(m.is_positive());
        Spectrum {
            entries: vec![(Rat::new(BigInt::one(), m.clone()), m.clone())],
        }
    }

    pub fn pure() -> Spectrum {
        Spectrum {
            entries: vec![(Rat::one(), BigInt::one())],
        }
    }

    pub fn mass(&self) -> Rat {
        let mut acc = Rat::zero();
        for (v, m) in &self.entries {
            acc += v * Rat::from_integer(m.clone());
        }
        acc
    }

    pub fn rank(&self) -> BigInt {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.mass().is_one()
    }

    pub fn max_value(&self) -> &Rat {
        &self.entries[0].0
    }

    /// Cumulative (count, mass) after each RLE entry.
    pub fn breakpoints(&self) -> Vec<(BigInt, Rat)> {
        let mut out = Vec::with_capacity(self.entries.len());
        let mut n = BigInt::zero();
        let mut mass = Rat::zero();
        for (v, m) in &self.entries {
            n += m;
            mass += v * Rat::from_integer(m.clone());
            out.push((n.clone(), mass.clone()));
        }
        out
    }

    /// Integral of the step function from 0 to x (x may exceed the rank).
    pub fn cdf(&self, x: &BigInt) -> Rat {
        let mut n = BigInt::zero();
        let mut mass = Rat::zero();
        for (v, m) in &self.entries {
            let next = &n + m;
            if *x <= next {
                let inside = x - &n;
                if inside.is_positive() {
                    mass += v * Rat::from_integer(inside);
                }
                return mass;
            }
            mass += v * Rat::from_integer(m.clone());
            n = next;
        }
        mass
    }

    /// Mass of the k largest eigenvalues.
    pub fn top_mass(&self, k: &BigInt) -> Rat {
        self.cdf(k)
    }

    /// Tensor product: pairwise value products with multiplicity products.
    pub fn tensor(&self, other: &Spectrum) -> Spectrum {
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (va, ma) in &self.entries {
            for (vb, mb) in &other.entries {
                entries.push((va * vb, ma * mb));
            }
        }
        Spectrum::new(entries).expect("tensor of valid spectra is valid")
    }

    /// n-fold tensor power by binary exponentiation with RLE merging; the
    /// d^n individual eigenvalues are never materialized.
    pub fn tensor_power(&self, n: u64) -> Spectrum {
        assert!(n >= 1);
        let mut base = self.clone();
        let mut acc: Option<Spectrum> = None;
        let mut rem = n;
        while rem > 0 {
            if rem & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.tensor(&base),
                });
            }
            rem >>= 1;
            if rem > 0 {
                base = base.tensor(&base);
            }
        }
        acc.unwrap()
    }

    /// Dense eigenvalue list; errors above `limit` entries.
    pub fn dense(&self, limit: usize) -> Result<Vec<Rat>> {
        let rank = self.rank();
        if rank > BigInt::from(limit) {
            return Err(RtError::TooLarge(format!("{rank}")));
        }
        let mut out = Vec::new();
        for (v, m) in &self.entries {
            let mut left = m.clone();
            while left.is_positive() {
                out.push(v.clone());
                left -= 1;
            }
        }
        Ok(out)
    }
}

/// Generalized trace distance on index-aligned spectra:
/// half the l1 distance of the padded eigenvalue lists plus half the mass gap.
pub fn gen_trace_distance_impl(a: &Spectrum, b: &Spectrum) -> Rat {
    let mut dist = Rat::zero();
    let mut ia = 0usize;
    let mut ib = 0usize;
    let mut used_a = BigInt::zero();
    let mut used_b = BigInt::zero();
    loop {
        let va = a.entries.get(ia).map(|(v, _)| v.clone()).unwrap_or_else(Rat::zero);
        let vb = b.entries.get(ib).map(|(v, _)| v.clone()).unwrap_or_else(Rat::zero);
        if ia >= a.entries.len() && ib >= b.entries.len() {
            break;
        }
        let left_a = a
            .entries
            .get(ia)
            .map(|(_, m)| m - &used_a)
            .unwrap_or_else(|| BigInt::from(i64::MAX));
        let left_b = b
            .entries
            .get(ib)
            .map(|(_, m)| m - &used_b)
            .unwrap_or_else(|| BigInt::from(i64::MAX));
        let step = left_a.clone().min(left_b.clone());
        let diff = if va >= vb { &va - &vb } else { &vb - &va };
        dist += diff * Rat::from_integer(step.clone());
        used_a += &step;
        used_b += &step;
        if ia < a.entries.len() && used_a == a.entries[ia].1 {
            ia += 1;
            used_a = BigInt::zero();
        }
        if ib < b.entries.len() && used_b == b.entries[ib].1 {
            ib += 1;
            used_b = BigInt::zero();
        }
    }
    let mass_gap = (a.mass() - b.mass()).abs();
    (dist + mass_gap) / Rat::from_integer(BigInt::from(2))
}

/// Flat meter state chi_lambda with lambda = log2 m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeterState {
    pub rank: BigInt,
}

impl MeterState {
    pub fn new(rank: BigInt) -> Result<Self> {
        if !rank.is_positive() {
            return Err(RtError::Invalid("meter rank must be positive".into()));
        }
        Ok(MeterState { rank })
    }

    pub fn lambda(&self) -> f64 {
        ratgeo::rational::log2_bigint(&self.rank)
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::flat(&self.rank)
    }
}

/// Parse `3/4,1/4` or RLE `1/8x8` (mixed entries allowed).
pub fn parse_spectrum(s: &str) -> Result<Spectrum> {
    let mut entries = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (val_str, mult) = match part.split_once('x') {
            Some((v, m)) => {
                let mult: BigInt = m
                    .trim()
                    .parse()
                    .map_err(|_| RtError::Parse(format!("bad multiplicity in {part}")))?;
                (v.trim(), mult)
            }
            None => (part, BigInt::one()),
        };
        let v = parse_rat(val_str).ok_or_else(|| RtError::Parse(format!("bad value {val_str}")))?;
        entries.push((v, mult));
    }
    if entries.is_empty() {
        return Err(RtError::Parse("empty spectrum".into()));
    }
    Spectrum::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratgeo::rational::rat;

    #[test]
    fn parse_forms() {
        let a = parse_spectrum("3/4,1/4").unwrap();
        assert_eq!(a.entries.len(), 2);
        let b = parse_spectrum("1/8x8").unwrap();
        assert_eq!(b.entries, vec![(rat(1, 8), BigInt::from(8))]);
        assert!(b.is_normalized());
    }

    #[test]
    fn tensor_square_binomial() {
        let a = parse_spectrum("3/4,1/4").unwrap();
        let sq = a.tensor_power(2);
        assert_eq!(
            sq.entries,
            vec![
                (rat(9, 16), BigInt::from(1)),
                (rat(3, 16), BigInt::from(2)),
                (rat(1, 16), BigInt::from(1)),
            ]
        );
    }

    #[test]
    fn large_power_stays_rle() {
        let a = parse_spectrum("3/4,1/4").unwrap();
        let big = a.tensor_power(1000);
        assert_eq!(big.entries.len(), 1001);
        assert!(big.is_normalized());
    }

    #[test]
    fn trace_distance_examples() {
        let chi2 = Spectrum::flat(&BigInt::from(2));
        let chi3 = Spectrum::flat(&BigInt::from(3));
        let chi4 = Spectrum::flat(&BigInt::from(4));
        assert_eq!(gen_trace_distance_impl(&chi3, &chi2), rat(1, 3));
        assert_eq!(gen_trace_distance_impl(&chi4, &chi2), rat(1, 2));
        assert_eq!(gen_trace_distance_impl(&chi4, &chi4), rat(0, 1));
    }
}
