//! Fourier-Motzkin elimination with Cernikov ancestor pruning and periodic
//! LP redundancy sweeps.

use crate::exec::{map_indices, Exec};
use crate::hcone::HCone;
use crate::lp;
use crate::rational::{primitive, BigInt};
use crate::redundancy;
use crate::{GeoError, Result};
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug)]
pub struct FmOpts {
    pub exec: Exec,
    /// Discard a derived row whose ancestor index set exceeds step + 1.
    pub chernikov: bool,
    /// Run an LP redundancy sweep after every `lp_stride` eliminated
    /// coordinates (0 disables intermediate sweeps).
    pub lp_stride: usize,
    /// Skip the sweep while the system stays below this many inequalities.
    pub lp_threshold: usize,
}

impl Default for FmOpts {
    fn default() -> Self {
        FmOpts {
            exec: Exec::default(),
            chernikov: true,
            lp_stride: 1,
            lp_threshold: 24,
        }
    }
}

struct TrackedRow {
    v: Vec<BigInt>,
    ancestors: BTreeSet<u32>,
}

/// Orthogonal projection of `cone` onto the coordinates outside `elim`.
/// Equalities containing an eliminated coordinate are used for substitution
/// first; the remaining coordinates go through pairwise combination.
pub fn fm_eliminate(cone: &HCone, elim: &BTreeSet<usize>, opts: &FmOpts) -> Result<HCone> {
    for &c in elim {
        if c >= cone.dim {
            return Err(GeoError::DimMismatch {
                expected: cone.dim,
                got: c,
            });
        }
    }
    if elim.len() == cone.dim {
        return Err(GeoError::EmptyResult);
    }
    let mut eqs: Vec<Vec<BigInt>> = cone.eqs.iter().map(|r| primitive(r)).collect();
    let mut rows: Vec<Vec<BigInt>> = cone.ineqs.iter().map(|r| primitive(r)).collect();
    rows.sort();
    rows.dedup();
    let mut remaining: BTreeSet<usize> = elim.clone();

    // Substitute eliminated coordinates away via equalities where possible.
    loop {
        let mut used = None;
        'outer: for (ei, eq) in eqs.iter().enumerate() {
            for &c in &remaining {
                if !eq[c].is_zero() {
                    used = Some((ei, c));
                    break 'outer;
                }
            }
        }
        let Some((ei, c)) = used else { break };
        let pivot = eqs.remove(ei);
        for row in rows.iter_mut() {
            substitute(row, &pivot, c);
        }
        for eq in eqs.iter_mut() {
            substitute(eq, &pivot, c);
        }
        rows.retain(|r| !r.iter().all(|x| x.is_zero()));
        eqs.retain(|r| !r.iter().all(|x| x.is_zero()));
        remaining.remove(&c);
    }

    let mut tracked: Vec<TrackedRow> = rows
        .into_iter()
        .enumerate()
        .map(|(i, v)| TrackedRow {
            v,
            ancestors: BTreeSet::from([i as u32]),
        })
        .collect();

    let mut step = 0usize;
    while let Some(c) = pick_coordinate(&tracked, &remaining) {
        step += 1;
        tracked = eliminate_one(tracked, c, step, opts);
        remaining.remove(&c);
        let sweep_due = opts.lp_stride > 0
            && (step % opts.lp_stride == 0 || remaining.is_empty())
            && tracked.len() > opts.lp_threshold;
        if sweep_due {
            tracked = lp_sweep(tracked, &eqs, opts.exec);
        }
    }

    // Drop the eliminated columns.
    let keep: Vec<usize> = (0..cone.dim).filter(|i| !elim.contains(i)).collect();
    let shrink = |r: &Vec<BigInt>| -> Vec<BigInt> { keep.iter().map(|&i| r[i].clone()).collect() };
    let mut out = HCone {
        dim: keep.len(),
        eqs: eqs.iter().map(shrink).collect(),
        ineqs: tracked.iter().map(|t| shrink(&t.v)).collect(),
        coords: cone
            .coords
            .as_ref()
            .map(|cs| keep.iter().map(|&i| cs[i].clone()).collect()),
    };
    out.canonicalize();
    Ok(out)
}

/// Fully reduced projection: redundancy removal applied to the FM output.
pub fn fm_eliminate_reduced(cone: &HCone, elim: &BTreeSet<usize>, opts: &FmOpts) -> Result<HCone> {
    let out = fm_eliminate(cone, elim, opts)?;
    let ropts = redundancy::RedundancyOpts {
        exec: opts.exec,
        implicit_equalities: true,
    };
    Ok(redundancy::remove_redundant_with(&out, &ropts))
}

fn substitute(row: &mut Vec<BigInt>, pivot: &[BigInt], c: usize) {
    if row[c].is_zero() {
        return;
    }
    // row := pivot[c] * row - row[c] * pivot, scaled to keep inequality sense.
    let (a, b) = if pivot[c].is_positive() {
        (pivot[c].clone(), row[c].clone())
    } else {
        (-pivot[c].clone(), -row[c].clone())
    };
    for (x, p) in row.iter_mut().zip(pivot) {
        *x = &*x * &a - p * &b;
    }
    debug_assert!(row[c].is_zero());
    *row = primitive(row);
}

/// Heuristic: eliminate the coordinate minimizing |H+| * |H-|.
fn pick_coordinate(rows: &[TrackedRow], remaining: &BTreeSet<usize>) -> Option<usize> {
    remaining
        .iter()
        .map(|&c| {
            let mut pos = 0usize;
            let mut neg = 0usize;
            for r in rows {
                if r.v[c].is_positive() {
                    pos += 1;
                } else if r.v[c].is_negative() {
                    neg += 1;
                }
            }
            (pos * neg, c)
        })
        .min()
        .map(|(_, c)| c)
}

fn eliminate_one(rows: Vec<TrackedRow>, c: usize, step: usize, opts: &FmOpts) -> Vec<TrackedRow> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut zero = Vec::new();
    for r in rows {
        if r.v[c].is_positive() {
            pos.push(r);
        } else if r.v[c].is_negative() {
            neg.push(r);
        } else {
            zero.push(r);
        }
    }
    if pos.is_empty() || neg.is_empty() {
        return zero;
    }
    let pairs: Vec<(usize, usize)> = (0..pos.len())
        .flat_map(|p| (0..neg.len()).map(move |n| (p, n)))
        .collect();
    let limit = step + 1;
    let combined: Vec<Option<TrackedRow>> = map_indices(opts.exec, pairs.len(), |t| {
        let (p, n) = pairs[t];
        let rp = &pos[p];
        let rn = &neg[n];
        let ancestors: BTreeSet<u32> = rp.ancestors.union(&rn.ancestors).copied().collect();
        if opts.chernikov && ancestors.len() > limit {
            return None;
        }
        let a = rp.v[c].clone();
        let b = -rn.v[c].clone();
        let v: Vec<BigInt> = rp
            .v
            .iter()
            .zip(&rn.v)
            .map(|(x, y)| x * &b + y * &a)
            .collect();
        if v.iter().all(|x| x.is_zero()) {
            return None;
        }
        Some(TrackedRow {
            v: primitive(&v),
            ancestors,
        })
    });
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut out = zero;
    for r in combined.into_iter().flatten() {
        match seen.entry(r.v.clone()) {
            std::collections::hash_map::Entry::Occupied(e) => {
                let i = *e.get();
                // Keep the smaller ancestor set; it prunes more later.
                if r.ancestors.len() < out[i].ancestors.len() {
                    out[i].ancestors = r.ancestors;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(out.len());
                out.push(r);
            }
        }
    }
    out
}

fn lp_sweep(rows: Vec<TrackedRow>, eqs: &[Vec<BigInt>], exec: Exec) -> Vec<TrackedRow> {
    let n = rows.len();
    let eq_refs: Vec<&[BigInt]> = eqs.iter().map(|r| r.as_slice()).collect();
    let flagged = map_indices(exec, n, |i| {
        let others: Vec<&[BigInt]> = (0..n)
            .filter(|&j| j != i)
            .map(|j| rows[j].v.as_slice())
            .collect();
        lp::conic_combination(&others, &eq_refs, &rows[i].v).is_some()
    });
    if !flagged.iter().any(|&f| f) {
        return rows;
    }
    let mut keep = vec![true; n];
    for i in 0..n {
        if !flagged[i] {
            continue;
        }
        let others: Vec<&[BigInt]> = (0..n)
            .filter(|&j| j != i && keep[j])
            .map(|j| rows[j].v.as_slice())
            .collect();
        if lp::conic_combination(&others, &eq_refs, &rows[i].v).is_some() {
            keep[i] = false;
        }
    }
    rows.into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cone3() -> HCone {
        HCone::new(
            3,
            vec![],
            vec![row(&[2, 0, -1]), row(&[0, 2, -1]), row(&[0, 0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn eliminate_z_gives_orthant() {
        let out = fm_eliminate(&cone3(), &BTreeSet::from([2]), &FmOpts::default()).unwrap();
        assert_eq!(out.ineqs, vec![row(&[0, 1]), row(&[1, 0])]);
    }

    #[test]
    fn eliminate_x_drops_one_sided_rows() {
        // Over (y, z): {-2y + z <= 0, -z <= 0}.
        let out = fm_eliminate(&cone3(), &BTreeSet::from([0]), &FmOpts::default()).unwrap();
        assert_eq!(out.ineqs, vec![row(&[0, 1]), row(&[2, -1])]);
    }

    #[test]
    fn absent_coordinate_keeps_rows() {
        let cone = HCone::new(3, vec![], vec![row(&[1, 0, 0]), row(&[1, 2, 0])]).unwrap();
        let out = fm_eliminate(&cone, &BTreeSet::from([2]), &FmOpts::default()).unwrap();
        assert_eq!(out.ineqs, vec![row(&[1, 0]), row(&[1, 2])]);
    }

    #[test]
    fn equality_substitution() {
        // x = y, x >= 0, eliminate x -> y >= 0.
        let cone = HCone::new(2, vec![row(&[1, -1])], vec![row(&[1, 0])]).unwrap();
        let out = fm_eliminate(&cone, &BTreeSet::from([0]), &FmOpts::default()).unwrap();
        assert!(out.eqs.is_empty());
        assert_eq!(out.ineqs, vec![row(&[1])]);
    }
}
