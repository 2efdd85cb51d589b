//! LP-certified redundancy removal and cone intersection.

use crate::exec::{map_indices, Exec};
use crate::hcone::HCone;
use crate::lp;
use crate::rational::BigInt;
use crate::Result;

#[derive(Clone, Copy, Debug)]
pub struct RedundancyOpts {
    pub exec: Exec,
    /// Detect inequalities that hold with equality on the whole cone and move
    /// them to the equality part.
    pub implicit_equalities: bool,
}

impl Default for RedundancyOpts {
    fn default() -> Self {
        RedundancyOpts {
            exec: Exec::default(),
            implicit_equalities: true,
        }
    }
}

/// Remove redundant inequalities (each survivor is certified irredundant by an
/// exact LP witness) and reduce equalities to a row basis.
pub fn remove_redundant(cone: &HCone) -> HCone {
    remove_redundant_with(cone, &RedundancyOpts::default())
}

pub fn remove_redundant_with(cone: &HCone, opts: &RedundancyOpts) -> HCone {
    let mut c = cone.clone().canonical();
    if opts.implicit_equalities {
        promote_implicit_equalities(&mut c, opts.exec);
    }
    strip_redundant_ineqs(&mut c, opts.exec);
    c.canonical()
}

/// An inequality r is an implicit equality iff -r is also implied, i.e. -r is
/// a conic combination of all inequalities plus the equality span.
fn promote_implicit_equalities(c: &mut HCone, exec: Exec) {
    loop {
        let rows: Vec<&[BigInt]> = c.ineqs.iter().map(|r| r.as_slice()).collect();
        let eqs: Vec<&[BigInt]> = c.eqs.iter().map(|r| r.as_slice()).collect();
        let flags = map_indices(exec, c.ineqs.len(), |i| {
            let neg: Vec<BigInt> = c.ineqs[i].iter().map(|x| -x.clone()).collect();
            lp::conic_combination(&rows, &eqs, &neg).is_some()
        });
        if !flags.iter().any(|&f| f) {
            return;
        }
        let mut new_eqs = c.eqs.clone();
        let mut new_ineqs = Vec::new();
        for (i, row) in c.ineqs.iter().enumerate() {
            if flags[i] {
                new_eqs.push(row.clone());
            } else {
                new_ineqs.push(row.clone());
            }
        }
        c.eqs = new_eqs;
        c.ineqs = new_ineqs;
        c.canonicalize();
    }
}

/// Drop inequalities implied by the others. Candidates are found in parallel
/// and re-verified sequentially before committal, which keeps the result
/// deterministic and correct even in degenerate configurations.
pub(crate) fn strip_redundant_ineqs(c: &mut HCone, exec: Exec) {
    let eqs: Vec<&[BigInt]> = c.eqs.iter().map(|r| r.as_slice()).collect();
    let n = c.ineqs.len();
    if n <= 1 {
        return;
    }
    let flagged = map_indices(exec, n, |i| {
        let others: Vec<&[BigInt]> = (0..n)
            .filter(|&j| j != i)
            .map(|j| c.ineqs[j].as_slice())
            .collect();
        lp::conic_combination(&others, &eqs, &c.ineqs[i]).is_some()
    });
    if !flagged.iter().any(|&f| f) {
        return;
    }
    let mut keep: Vec<bool> = vec![true; n];
    for i in 0..n {
        if !flagged[i] {
            continue;
        }
        let others: Vec<&[BigInt]> = (0..n)
            .filter(|&j| j != i && keep[j])
            .map(|j| c.ineqs[j].as_slice())
            .collect();
        if lp::conic_combination(&others, &eqs, &c.ineqs[i]).is_some() {
            keep[i] = false;
        }
    }
    c.ineqs = c
        .ineqs
        .iter()
        .enumerate()
        .filter(|(i, _)| keep[*i])
        .map(|(_, r)| r.clone())
        .collect();
}

/// Intersection: concatenate rows, then remove redundancy.
pub fn intersect(a: &HCone, b: &HCone) -> Result<HCone> {
    let stacked = a.stack(b)?;
    Ok(remove_redundant(&stacked))
}

/// Does `row . v >= 0` hold on all of `cone`?
pub fn row_implied(cone: &HCone, row: &[BigInt]) -> bool {
    let rows: Vec<&[BigInt]> = cone.ineqs.iter().map(|r| r.as_slice()).collect();
    let eqs: Vec<&[BigInt]> = cone.eqs.iter().map(|r| r.as_slice()).collect();
    lp::conic_combination(&rows, &eqs, row).is_some()
}

/// Solution-set equality of two H-cones via mutual row implication.
pub fn same_solution_set(a: &HCone, b: &HCone) -> bool {
    let implies_all = |from: &HCone, to: &HCone| -> bool {
        to.ineqs.iter().all(|r| row_implied(from, r))
            && to.eqs.iter().all(|r| {
                let neg: Vec<BigInt> = r.iter().map(|x| -x.clone()).collect();
                row_implied(from, r) && row_implied(from, &neg)
            })
    };
    implies_all(a, b) && implies_all(b, a)
}
