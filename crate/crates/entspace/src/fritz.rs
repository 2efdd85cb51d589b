//! The CHSH-optimal quantum distribution on the triangle scenario and its
//! one-bit AND variant.

use crate::dist::JointDistribution;
use crate::Result;
use num_traits::Zero;
use ratgeo::rational::{rat, Rat};
use ratgeo::BigInt;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FritzVariant {
    /// X = (x~, b), Y = (y~, a), Z = (a, b).
    Pair,
    /// X = (x~, b), Y = (y~, a), Z = AND(a, b).
    And,
}

/// P(x~ xor y~ = a.b | a, b) = cos^2(pi/8) with uniform a, b. Probabilities
/// are irrational; they are stored as dyadic rationals at 2^-48 precision,
/// paired so the pmf sums to one exactly.
pub fn fritz_distribution(variant: FritzVariant) -> Result<JointDistribution> {
    // (1 + 1/sqrt(2)) / 16 rounded to 48 fractional bits; its partner is
    // 2/16 - p so that each (match, mismatch) pair keeps exact mass 1/8.
    let scale: i64 = 1 << 48;
    let good = (1.0 + 1.0 / std::f64::consts::SQRT_2) / 16.0;
    let p_good = Rat::new(BigInt::from((good * scale as f64).round() as i64), BigInt::from(scale));
    let p_bad = rat(1, 8) - &p_good;

    let mut pmf: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    for a in 0..2u32 {
        for b in 0..2u32 {
            for xt in 0..2u32 {
                for yt in 0..2u32 {
                    let win = (xt ^ yt) == (a & b);
                    let p = if win { p_good.clone() } else { p_bad.clone() };
                    let x = xt | (b << 1);
                    let y = yt | (a << 1);
                    let z = match variant {
                        FritzVariant::Pair => a | (b << 1),
                        FritzVariant::And => a & b,
                    };
                    *pmf.entry(vec![x, y, z]).or_insert_with(Rat::zero) += p;
                }
            }
        }
    }
    let z_size = match variant {
        FritzVariant::Pair => 4,
        FritzVariant::And => 2,
    };
    JointDistribution::new(
        vec!["X".into(), "Y".into(), "Z".into()],
        vec![4, 4, z_size],
        pmf,
    )
}

/// CHSH value of the conditional P(x~, y~ | a, b) embedded in the
/// distribution: E00 + E01 + E10 - E11 with +/-1-valued outcomes.
pub fn chsh_value(dist: &JointDistribution) -> f64 {
    // Recover the conditional from the observed encoding: x~ = X & 1,
    // b = X >> 1, y~ = Y & 1, a = Y >> 1, P(a,b) = 1/4.
    let mut corr = [[0.0f64; 2]; 2];
    for (k, p) in &dist.pmf {
        let (x, y) = (k[0], k[1]);
        let (xt, b) = (x & 1, x >> 1);
        let (yt, a) = (y & 1, y >> 1);
        let sign = if xt == yt { 1.0 } else { -1.0 };
        corr[a as usize][b as usize] += sign * 4.0 * ratgeo::rat_to_f64(p);
    }
    corr[0][0] + corr[0][1] + corr[1][0] - corr[1][1]
}
