//! Representation conversion by the incremental double description method.
//!
//! Constraints are inserted one at a time; adjacency of rays is decided
//! combinatorially from their zero sets.

use crate::exec::{map_indices, Exec};
use crate::hcone::HCone;
use crate::linalg;
use crate::rational::{dot_int, primitive, BigInt};
use crate::vcone::VCone;
use crate::{GeoError, Result};
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug)]
pub struct DdOpts {
    pub exec: Exec,
    /// Return lineality generators instead of failing on non-pointed cones.
    pub allow_lineality: bool,
}

impl Default for DdOpts {
    fn default() -> Self {
        DdOpts {
            exec: Exec::default(),
            allow_lineality: false,
        }
    }
}

type BitSet = Vec<u64>;

fn bs_new(words: usize) -> BitSet {
    vec![0u64; words]
}

fn bs_set(b: &mut BitSet, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bs_subset(a: &BitSet, b: &BitSet) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

struct Ray {
    v: Vec<BigInt>,
    zero: BitSet,
}

/// Vertex enumeration: extremal rays of {v : eqs.v = 0, ineqs.v >= 0}.
pub fn h_to_v(cone: &HCone) -> Result<VCone> {
    h_to_v_with(cone, &DdOpts::default())
}

pub fn h_to_v_with(cone: &HCone, opts: &DdOpts) -> Result<VCone> {
    let c = cone.clone().canonical();
    let dim = c.dim;

    // Reduce by the equality span: work in nullspace coordinates.
    let basis = if c.eqs.is_empty() {
        identity_basis(dim)
    } else {
        linalg::nullspace_int(&c.eqs, dim)
    };
    let k = basis.len();
    if k == 0 {
        return Ok(VCone {
            dim,
            rays: vec![],
            lineality: vec![],
            coords: c.coords.clone(),
        });
    }
    // Inequality rows expressed in the reduced space.
    let mut rows: Vec<Vec<BigInt>> = c
        .ineqs
        .iter()
        .map(|row| {
            primitive(
                &basis
                    .iter()
                    .map(|b| dot_int(row, b))
                    .collect::<Vec<BigInt>>(),
            )
        })
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .collect();
    rows.sort();
    rows.dedup();

    let rank = linalg::rank_int(&rows);
    let mut lineality: Vec<Vec<BigInt>> = Vec::new();
    let mut work_basis = basis.clone();
    if rank < k {
        if !opts.allow_lineality {
            return Err(GeoError::NotPointed);
        }
        // Lineality space of the reduced cone, mapped back to the original space.
        let lin_reduced = linalg::nullspace_int(&rows, k);
        for l in &lin_reduced {
            lineality.push(linalg::combine_basis(&basis, l));
        }
        // Re-reduce modulo the lineality: rays live in the quotient. We realize
        // the quotient as the nullspace of the lineality rows within the span.
        let mut eqs2 = c.eqs.clone();
        eqs2.extend(lineality.iter().cloned());
        work_basis = linalg::nullspace_int(&eqs2, dim);
        rows = c
            .ineqs
            .iter()
            .map(|row| {
                primitive(
                    &work_basis
                        .iter()
                        .map(|b| dot_int(row, b))
                        .collect::<Vec<BigInt>>(),
                )
            })
            .filter(|r| !r.iter().all(|x| x.is_zero()))
            .collect();
        rows.sort();
        rows.dedup();
    }
    let k = work_basis.len();
    let rays_reduced = dd_pointed(&rows, k, opts.exec);
    let mut rays: Vec<Vec<BigInt>> = rays_reduced
        .iter()
        .map(|r| linalg::combine_basis(&work_basis, r))
        .collect();
    rays.sort();
    rays.dedup();
    Ok(VCone {
        dim,
        rays,
        lineality: linalg::row_basis_int(&lineality),
        coords: c.coords.clone(),
    })
}

fn identity_basis(dim: usize) -> Vec<Vec<BigInt>> {
    (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::from(1);
            v
        })
        .collect()
}

/// Double description on a pointed full-rank cone {y in R^k : rows.y >= 0}.
fn dd_pointed(rows: &[Vec<BigInt>], k: usize, exec: Exec) -> Vec<Vec<BigInt>> {
    if k == 0 {
        return vec![];
    }
    if rows.is_empty() {
        // Not pointed unless k == 0; callers prevent this.
        return vec![];
    }
    // Initial simplicial cone from k independent rows.
    let (binit, rest): (Vec<usize>, Vec<usize>) = independent_subset(rows, k);
    debug_assert_eq!(binit.len(), k);
    let bmat: Vec<Vec<BigInt>> = binit.iter().map(|&i| rows[i].clone()).collect();
    let cols = linalg::inverse_columns_int(&bmat).expect("independent rows invert");

    let words = rows.len().div_ceil(64);
    let mut processed: Vec<usize> = binit.clone();
    let mut rays: Vec<Ray> = Vec::with_capacity(k);
    for (j, col) in cols.iter().enumerate() {
        let mut zero = bs_new(words);
        for (t, &ri) in binit.iter().enumerate() {
            if t != j {
                bs_set(&mut zero, ri);
            }
        }
        rays.push(Ray {
            v: col.clone(),
            zero,
        });
    }

    for &ri in &rest {
        let row = &rows[ri];
        let vals: Vec<BigInt> = map_indices(exec, rays.len(), |i| dot_int(row, &rays[i].v));
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zer = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            if v.is_zero() {
                zer.push(i);
            } else if v.is_positive() {
                pos.push(i);
            } else {
                neg.push(i);
            }
        }
        if neg.is_empty() {
            for &i in &zer {
                bs_set(&mut rays[i].zero, ri);
            }
            processed.push(ri);
            continue;
        }
        // New rays from adjacent (positive, negative) pairs.
        let pairs: Vec<(usize, usize)> = pos
            .iter()
            .flat_map(|&p| neg.iter().map(move |&n| (p, n)))
            .collect();
        let adjacent = map_indices(exec, pairs.len(), |t| {
            let (p, n) = pairs[t];
            let meet: BitSet = rays[p]
                .zero
                .iter()
                .zip(&rays[n].zero)
                .map(|(a, b)| a & b)
                .collect();
            // p, n adjacent iff no other ray's zero set contains their meet.
            !rays
                .iter()
                .enumerate()
                .any(|(i, r)| i != p && i != n && bs_subset(&meet, &r.zero))
        });
        let mut new_rays: Vec<Ray> = Vec::new();
        for (t, &(p, n)) in pairs.iter().enumerate() {
            if !adjacent[t] {
                continue;
            }
            let a = &vals[p];
            let b = &vals[n];
            // a > 0, b < 0: combination a * neg - b * pos is tight on `row`.
            let v: Vec<BigInt> = rays[n]
                .v
                .iter()
                .zip(&rays[p].v)
                .map(|(nv, pv)| a * nv - b * pv)
                .collect();
            let v = primitive(&v);
            let mut zero: BitSet = rays[p]
                .zero
                .iter()
                .zip(&rays[n].zero)
                .map(|(x, y)| x & y)
                .collect();
            bs_set(&mut zero, ri);
            new_rays.push(Ray { v, zero });
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(pos.len() + zer.len() + new_rays.len());
        for (i, r) in rays.into_iter().enumerate() {
            if vals[i].is_positive() {
                kept.push(r);
            } else if vals[i].is_zero() {
                let mut r = r;
                bs_set(&mut r.zero, ri);
                kept.push(r);
            }
        }
        kept.extend(new_rays);
        rays = kept;
        processed.push(ri);
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// Pick k linearly independent row indices (greedy Gaussian elimination);
/// returns (basis indices, remaining indices in original order).
fn independent_subset(rows: &[Vec<BigInt>], k: usize) -> (Vec<usize>, Vec<usize>) {
    use crate::rational::Rat;
    let mut chosen: Vec<usize> = Vec::new();
    let mut elim: Vec<Vec<Rat>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if chosen.len() == k {
            break;
        }
        let mut v: Vec<Rat> = row.iter().map(|x| Rat::from_integer(x.clone())).collect();
        for e in &elim {
            let pivot = e.iter().position(|x| !x.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let f = &v[pivot] / &e[pivot];
                for (a, b) in v.iter_mut().zip(e) {
                    let t = b * &f;
                    *a -= t;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            elim.push(v);
            chosen.push(i);
        }
    }
    let rest: Vec<usize> = (0..rows.len()).filter(|i| !chosen.contains(i)).collect();
    (chosen, rest)
}

/// Facet enumeration: irredundant H-representation of the conic hull of rays.
pub fn v_to_h(v: &VCone) -> Result<HCone> {
    v_to_h_with(v, &DdOpts::default())
}

pub fn v_to_h_with(v: &VCone, opts: &DdOpts) -> Result<HCone> {
    let vc = v.clone().canonical();
    let dim = vc.dim;
    let mut span_rows: Vec<Vec<BigInt>> = vc.rays.clone();
    span_rows.extend(vc.lineality.iter().cloned());
    if span_rows.is_empty() {
        // Just the origin: v = 0.
        let eqs = identity_basis(dim);
        return HCone::new(dim, eqs, vec![]).map(|mut h| {
            h.coords = vc.coords.clone();
            h.canonical()
        });
    }
    // Equalities: orthogonal complement of the span.
    let eqs = linalg::nullspace_int(&span_rows, dim);
    // Facets: extremal rays of the dual cone {a : rays.a >= 0, lineality.a = 0},
    // computed by the same DD machinery.
    let dual = HCone::new(dim, vc.lineality.clone(), vc.rays.clone())?;
    let dual_v = h_to_v_with(
        &dual,
        &DdOpts {
            exec: opts.exec,
            allow_lineality: true,
        },
    )?;
    // Dual lineality directions a with rays.a = 0 everywhere correspond to the
    // equalities already captured above.
    let ineqs = dual_v.rays;
    let mut h = HCone::new(dim, eqs, ineqs)?;
    h.coords = vc.coords.clone();
    Ok(h.canonical())
}
