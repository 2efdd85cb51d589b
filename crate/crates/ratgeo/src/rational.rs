//! Arbitrary-precision rational scalars and primitive integer rows.

pub use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Always reduced, denominator positive.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse "p/q" or "p" (also accepts decimal literals like "0.25").
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let frac_digits = frac_part.len() as u32;
        if frac_part.chars().any(|c| !c.is_ascii_digit()) {
            return None;
        }
        let neg = int_part.trim().starts_with('-');
        let i: BigInt = if int_part.trim() == "-" || int_part.trim().is_empty() {
            BigInt::zero()
        } else {
            int_part.trim().parse().ok()?
        };
        let f: BigInt = if frac_part.is_empty() {
            BigInt::zero()
        } else {
            frac_part.parse().ok()?
        };
        let scale = BigInt::from(10u32).pow(frac_digits);
        let mag = i.abs() * &scale + f;
        let signed = if neg { -mag } else { mag };
        return Some(Rat::new(signed, scale));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Direct conversion overflows for very large numerator/denominator;
    // fall back to a bit-length-aware path.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    if nb < 900 && db < 900 {
        let nf = bigint_to_f64(n);
        let df = bigint_to_f64(d);
        return nf / df;
    }
    let shift = (nb.max(db) - 64).max(0) as u64;
    let nf = bigint_to_f64(&(n >> shift));
    let df = bigint_to_f64(&(d >> shift));
    nf / df
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    let (sign, digits) = x.to_u64_digits();
    let mut acc = 0.0f64;
    for d in digits.iter().rev() {
        acc = acc * 1.8446744073709552e19 + *d as f64;
    }
    match sign {
        num_bigint::Sign::Minus => -acc,
        _ => acc,
    }
}

/// log2 of a positive rational, computed without overflow.
pub fn log2_rat(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    assert!(n.is_positive(), "log2 of non-positive rational");
    log2_bigint(n) - log2_bigint(d)
}

pub fn log2_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 52 {
        return (bigint_to_f64(x)).log2();
    }
    let shift = bits - 52;
    let top = bigint_to_f64(&(x >> shift));
    top.log2() + shift as f64
}

/// Scale a rational row to a primitive integer vector (gcd 1), preserving direction.
pub fn primitive_from_rats(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in row {
        lcm = lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    primitive(&ints)
}

/// Divide an integer row by the gcd of its entries. Zero rows stay zero.
pub fn primitive(row: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in row {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return row.to_vec();
    }
    row.iter().map(|x| x / &g).collect()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn dot_int_rat(a: &[BigInt], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += Rat::from_integer(x.clone()) * y;
        }
    }
    acc
}

pub fn dot_int_f64(a: &[BigInt], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            acc += bigint_to_f64(x) * y;
        }
    }
    acc
}
