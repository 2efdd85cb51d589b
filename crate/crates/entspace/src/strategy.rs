//! Deterministic-function strategies over independent uniform bits, and the
//! exact distributions they induce.
//!
//! File syntax:
//! ```text
//! source C1 bit
//! source C2_1 bit
//! var X = xor(A,C2_1) , C2_2    # tuple of bits, comma separated
//! var Z = and(A,B)
//! ```
//! Expressions: `0`, `1`, source or variable names (single-bit), `name:k`
//! (k-th bit of a tuple variable, 1-based), `xor(..)`, `and(a,b)`, `or(a,b)`,
//! `not(a)`.

use crate::dist::JointDistribution;
use crate::{EntError, Result};
use num_traits::Zero;
use ratgeo::rational::{rat, Rat};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Source(usize),
    /// (variable index, bit index)
    VarBit(usize, usize),
    Xor(Vec<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
}

#[derive(Clone, Debug)]
pub struct Strategy {
    pub sources: Vec<String>,
    /// Observed variables in definition order: (name, tuple of bit expressions).
    pub defs: Vec<(String, Vec<Expr>)>,
}

impl Strategy {
    /// Exact pmf over the observed tuples: dyadic probabilities with
    /// denominator 2^{#sources}.
    pub fn eval(&self) -> Result<JointDistribution> {
        let k = self.sources.len();
        if k > 24 {
            return Err(EntError::Invalid("too many sources".into()));
        }
        let mut pmf: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        let p = rat(1, 1i64 << k);
        for assignment in 0u32..(1u32 << k) {
            let mut values: Vec<u32> = Vec::with_capacity(self.defs.len());
            for (vi, (_, bits)) in self.defs.iter().enumerate() {
                let mut val = 0u32;
                for (bi, e) in bits.iter().enumerate() {
                    if eval_expr(e, assignment, &values, vi)? {
                        val |= 1 << bi;
                    }
                }
                values.push(val);
            }
            *pmf.entry(values).or_insert_with(Rat::zero) += &p;
        }
        let names = self.defs.iter().map(|(n, _)| n.clone()).collect();
        let sizes = self
            .defs
            .iter()
            .map(|(_, bits)| 1u32 << bits.len())
            .collect();
        JointDistribution::new(names, sizes, pmf)
    }
}

fn eval_expr(e: &Expr, assignment: u32, values: &[u32], current: usize) -> Result<bool> {
    Ok(match e {
        Expr::Const(b) => *b,
        Expr::Source(i) => assignment >> i & 1 == 1,
        Expr::VarBit(v, b) => {
            if *v >= current {
                return Err(EntError::CyclicDefinition(format!("variable #{v}")));
            }
            values[*v] >> b & 1 == 1
        }
        Expr::Xor(es) => {
            let mut acc = false;
            for e in es {
                acc ^= eval_expr(e, assignment, values, current)?;
            }
            acc
        }
        Expr::And(a, b) => {
            eval_expr(a, assignment, values, current)? && eval_expr(b, assignment, values, current)?
        }
        Expr::Or(a, b) => {
            eval_expr(a, assignment, values, current)? || eval_expr(b, assignment, values, current)?
        }
        Expr::Not(a) => !eval_expr(a, assignment, values, current)?,
    })
}

pub fn parse_strategy(text: &str) -> Result<Strategy> {
    let mut sources: Vec<String> = Vec::new();
    let mut defs: Vec<(String, Vec<Expr>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| EntError::Parse {
            line: ln + 1,
            msg,
        };
        if let Some(rest) = line.strip_prefix("source ") {
            let mut parts = rest.split_whitespace();
            let name = parts
                .next()
                .ok_or_else(|| err("missing source name".into()))?;
            match parts.next() {
                Some("bit") | None => {}
                Some(other) => return Err(err(format!("unknown source kind {other}"))),
            }
            if sources.iter().any(|s| s == name) {
                return Err(err(format!("duplicate source {name}")));
            }
            sources.push(name.to_string());
        } else if let Some(rest) = line.strip_prefix("var ") {
            let (name, body) = rest
                .split_once('=')
                .ok_or_else(|| err("missing '=' in var definition".into()))?;
            let name = name.trim().to_string();
            if defs.iter().any(|(n, _)| *n == name) || sources.iter().any(|s| *s == name) {
                return Err(err(format!("duplicate name {name}")));
            }
            let bits = split_top_level(body.trim())
                .into_iter()
                .map(|part| parse_expr(&part, &sources, &defs))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| err(e.to_string()))?;
            if bits.is_empty() {
                return Err(err("empty tuple".into()));
            }
            defs.push((name, bits));
        } else {
            return Err(err(format!("unrecognized line: {line}")));
        }
    }
    Ok(Strategy { sources, defs })
}

/// Split on commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn parse_expr(s: &str, sources: &[String], defs: &[(String, Vec<Expr>)]) -> Result<Expr> {
    let s = s.trim();
    let bad = |msg: String| EntError::Parse { line: 0, msg };
    if s == "0" {
        return Ok(Expr::Const(false));
    }
    if s == "1" {
        return Ok(Expr::Const(true));
    }
    if let Some(inner) = call_body(s, "xor") {
        let args = split_top_level(inner)
            .into_iter()
            .map(|a| parse_expr(&a, sources, defs))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Expr::Xor(args));
    }
    for (fname, two) in [("and", true), ("or", true), ("not", false)] {
        if let Some(inner) = call_body(s, fname) {
            let args = split_top_level(inner)
                .into_iter()
                .map(|a| parse_expr(&a, sources, defs))
                .collect::<Result<Vec<_>>>()?;
            return match (fname, two, args.len()) {
                ("and", _, 2) => Ok(Expr::And(
                    Box::new(args[0].clone()),
                    Box::new(args[1].clone()),
                )),
                ("or", _, 2) => Ok(Expr::Or(
                    Box::new(args[0].clone()),
                    Box::new(args[1].clone()),
                )),
                ("not", _, 1) => Ok(Expr::Not(Box::new(args[0].clone()))),
                _ => Err(bad(format!("wrong arity for {fname}"))),
            };
        }
    }
    // name or name:k
    let (name, bit) = match s.split_once(':') {
        Some((n, k)) => {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad bit index in {s}")))?;
            if k == 0 {
                return Err(bad("bit indices are 1-based".into()));
            }
            (n.trim(), Some(k - 1))
        }
        None => (s, None),
    };
    if let Some(i) = sources.iter().position(|x| x == name) {
        if bit.is_some() {
            return Err(bad(format!("source {name} has no bits to index")));
        }
        return Ok(Expr::Source(i));
    }
    if let Some(vi) = defs.iter().position(|(n, _)| n == name) {
        let width = defs[vi].1.len();
        let b = bit.unwrap_or(0);
        if b >= width {
            return Err(bad(format!("{name} has only {width} bits")));
        }
        if bit.is_none() && width != 1 {
            return Err(bad(format!("{name} is a tuple; use {name}:k")));
        }
        return Ok(Expr::VarBit(vi, b));
    }
    Err(EntError::UnknownVariable(name.to_string()))
}

fn call_body<'a>(s: &'a str, fname: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(fname)?;
    let rest = rest.trim_start();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::CoordSystem;
    use crate::dist::entropy_vector;

    #[test]
    fn triangle_inner_ray_one() {
        // X = C, Z = A, Y = A xor C gives (1,1,1,2,2,2,2).
        let s = parse_strategy(
            "source A bit\nsource C bit\nvar X = C\nvar Y = xor(A,C)\nvar Z = A\n",
        )
        .unwrap();
        let d = s.eval().unwrap();
        let cs = CoordSystem::full(&["X", "Y", "Z"]);
        let v = entropy_vector(&d, &cs).unwrap();
        let expect = [1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0];
        for (x, e) in v.values.iter().zip(expect) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn all_constant_strategy_is_zero_vector() {
        let s = parse_strategy("source A bit\nvar X = 1\nvar Y = 0\n").unwrap();
        let d = s.eval().unwrap();
        let cs = CoordSystem::full(&["X", "Y"]);
        let v = entropy_vector(&d, &cs).unwrap();
        assert!(v.values.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn dyadic_probabilities() {
        let s = parse_strategy(
            "source A bit\nsource B bit\nsource C bit\nvar X = and(A,B) , C\nvar Y = or(A,not(B))\n",
        )
        .unwrap();
        let d = s.eval().unwrap();
        use num_traits::One;
        let mut total = Rat::zero();
        for p in d.pmf.values() {
            // Denominator divides 2^3.
            let denom = p.denom();
            assert_eq!(
                denom & (denom - ratgeo::BigInt::from(1)),
                ratgeo::BigInt::from(0) & denom
            );
            total += p;
        }
        assert!(total.is_one());
    }

    #[test]
    fn tuple_bit_references() {
        let s = parse_strategy(
            "source C1 bit\nsource C2 bit\nvar Z = C1 , C2\nvar Y = xor(Z:1,Z:2)\n",
        )
        .unwrap();
        let d = s.eval().unwrap();
        let cs = CoordSystem::full(&["Z", "Y"]);
        let v = entropy_vector(&d, &cs).unwrap();
        // Z two fair bits, Y their xor: H(Z)=2, H(Y)=1, H(ZY)=2.
        assert!((v.get(0b01).unwrap() - 2.0).abs() < 1e-12);
        assert!((v.get(0b10).unwrap() - 1.0).abs() < 1e-12);
        assert!((v.get(0b11).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn forward_reference_rejected() {
        let err = parse_strategy("source A bit\nvar X = Y\nvar Y = A\n");
        assert!(err.is_err());
    }
}
