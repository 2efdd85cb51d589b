//! Dense exact-rational row reduction helpers.

use crate::rational::{primitive, primitive_from_rats, BigInt, Rat};
use num_traits::{One, Zero};

/// Reduced row echelon form over the rationals. Returns (rref rows, pivot columns).
/// Zero rows are dropped.
pub fn rref(rows: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let mut sel = None;
        for i in r..m.len() {
            if !m[i][c].is_zero() {
                sel = Some(i);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(r, sel);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let rats: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    rref(&rats).1.len()
}

/// Basis of the right nullspace {x : rows . x = 0}, as primitive integer vectors.
pub fn nullspace_int(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let rats: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let (rr, pivots) = rref(&rats);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); dim];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rr[i][free].clone();
        }
        basis.push(primitive_from_rats(&v));
    }
    basis
}

/// Canonical integer form of the row span: primitive RREF rows, lex sorted.
pub fn row_basis_int(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rats: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let (rr, _) = rref(&rats);
    let mut out: Vec<Vec<BigInt>> = rr.iter().map(|r| primitive_from_rats(r)).collect();
    out.sort();
    out
}

/// Reduce `row` modulo the span of RREF equality rows (integer, primitive output).
pub fn reduce_mod_span(row: &[BigInt], rref_rows: &[Vec<Rat>], pivots: &[usize]) -> Vec<BigInt> {
    let mut v: Vec<Rat> = row.iter().map(|x| Rat::from_integer(x.clone())).collect();
    for (i, &p) in pivots.iter().enumerate() {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for j in 0..v.len() {
                let t = &rref_rows[i][j] * &f;
                v[j] -= t;
            }
        }
    }
    primitive_from_rats(&v)
}

/// Solve the square system M x = b exactly. Returns None if singular.
pub fn solve_square(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let sel = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, sel);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=n {
                    let t = &a[c][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Columns of the inverse of a square integer matrix, as primitive integer vectors.
pub fn inverse_columns_int(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let n = m.len();
    let rat_m: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let x = solve_square(&rat_m, &e)?;
        cols.push(primitive_from_rats(&x));
    }
    Some(cols)
}

/// Matrix-vector product with integer matrix columns (basis) applied to integer coords.
pub fn combine_basis(basis: &[Vec<BigInt>], coeffs: &[BigInt]) -> Vec<BigInt> {
    let dim = basis[0].len();
    let mut out = vec![BigInt::zero(); dim];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += x * c;
        }
    }
    primitive(&out)
}
