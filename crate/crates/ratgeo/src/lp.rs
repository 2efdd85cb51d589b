//! Exact rational linear programming (dense two-phase simplex, Bland's rule).

use crate::rational::{BigInt, Rat};
use num_traits::{One, Signed, Zero};

/// min c.x  subject to  A x = b, x >= 0.
pub struct StandardLp {
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
    pub c: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rat>, value: Rat },
}

struct Tableau {
    /// m x (n+1); last column is the rhs.
    rows: Vec<Vec<Rat>>,
    /// objective row, length n+1 (reduced costs; last entry = -objective value).
    obj: Vec<Rat>,
    basis: Vec<usize>,
    n: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule: entering = lowest-index negative reduced cost,
    /// leaving = min ratio, ties broken by lowest basis variable index.
    fn run(&mut self) -> bool {
        loop {
            let mut enter = None;
            for j in 0..self.n {
                if self.obj[j].is_negative() {
                    enter = Some(j);
                    break;
                }
            }
            let Some(c) = enter else { return true };
            let mut leave: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rows[i][self.n] / &self.rows[i][c];
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b
                                    && self.basis[i] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            let Some(r) = leave else { return false };
            self.pivot(r, c);
        }
    }
}

pub fn solve(lp: &StandardLp) -> LpOutcome {
    let m = lp.a.len();
    let n = lp.c.len();
    debug_assert!(lp.a.iter().all(|r| r.len() == n));

    // Phase 1: artificial variables, rhs made nonnegative.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, arow) in lp.a.iter().enumerate() {
        let flip = lp.b[i].is_negative();
        let mut row: Vec<Rat> = arow
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        for j in 0..m {
            row.push(if j == i { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -lp.b[i].clone() } else { lp.b[i].clone() });
        rows.push(row);
    }
    let total = n + m;
    let mut obj = vec![Rat::zero(); total + 1];
    for row in &rows {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[total] -= &row[total];
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (n..n + m).collect(),
        n: total,
    };
    t.run();
    let phase1 = -t.obj[total].clone();
    if !phase1.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive artificials out of the basis where possible; rows where we cannot
    // are linearly dependent constraints and get dropped.
    let mut drop_rows = Vec::new();
    for i in 0..t.rows.len() {
        if t.basis[i] >= n {
            let mut pivoted = false;
            for j in 0..n {
                if !t.rows[i][j].is_zero() {
                    t.pivot(i, j);
                    pivoted = true;
                    break;
                }
            }
            if !pivoted {
                drop_rows.push(i);
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        t.rows.remove(i);
        t.basis.remove(i);
    }
    // Phase 2: restrict to original columns, rebuild the objective row.
    let keep = |row: &Vec<Rat>| -> Vec<Rat> {
        let mut r: Vec<Rat> = row[..n].to_vec();
        r.push(row[total].clone());
        r
    };
    let rows2: Vec<Vec<Rat>> = t.rows.iter().map(keep).collect();
    let mut obj2: Vec<Rat> = lp.c.clone();
    obj2.push(Rat::zero());
    for (i, &b) in t.basis.iter().enumerate() {
        if !obj2[b].is_zero() {
            let f = obj2[b].clone();
            for (x, p) in obj2.iter_mut().zip(&rows2[i]) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
    }
    let mut t2 = Tableau {
        rows: rows2,
        obj: obj2,
        basis: t.basis,
        n,
    };
    if !t2.run() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &b) in t2.basis.iter().enumerate() {
        x[b] = t2.rows[i][n].clone();
    }
    let value = -t2.obj[n].clone();
    LpOutcome::Optimal { x, value }
}

/// Farkas test: is `target` a nonnegative combination of `rows` plus an
/// arbitrary combination of `eqs`? Returns the `rows` coefficients on success.
///
/// For the cone {v : rows.v >= 0, eqs.v = 0} this decides whether
/// `target . v >= 0` is implied.
pub fn conic_combination(
    rows: &[&[BigInt]],
    eqs: &[&[BigInt]],
    target: &[BigInt],
) -> Option<Vec<Rat>> {
    let dim = target.len();
    let nr = rows.len();
    let ne = eqs.len();
    // Columns: y (nr) | z+ (ne) | z- (ne). Equations indexed by coordinate.
    let mut a = vec![vec![Rat::zero(); nr + 2 * ne]; dim];
    for (j, row) in rows.iter().enumerate() {
        for (i, x) in row.iter().enumerate() {
            if !x.is_zero() {
                a[i][j] = Rat::from_integer(x.clone());
            }
        }
    }
    for (j, row) in eqs.iter().enumerate() {
        for (i, x) in row.iter().enumerate() {
            if !x.is_zero() {
                a[i][nr + j] = Rat::from_integer(x.clone());
                a[i][nr + ne + j] = Rat::from_integer(-x.clone());
            }
        }
    }
    let b: Vec<Rat> = target.iter().map(|x| Rat::from_integer(x.clone())).collect();
    let lp = StandardLp {
        a,
        b,
        c: vec![Rat::zero(); nr + 2 * ne],
    };
    match solve(&lp) {
        LpOutcome::Optimal { x, .. } => Some(x[..nr].to_vec()),
        _ => None,
    }
}

/// Does the cone {rows.v >= 0, eqs.v = 0} contain a point with obj.v >= 1?
/// (By homogeneity this decides whether obj is bounded above by 0 on the cone.)
pub fn cone_attains_positive(rows: &[&[BigInt]], eqs: &[&[BigInt]], obj: &[BigInt]) -> bool {
    // Feasibility of rows.v - s = 0 (s >= 0), eqs.v = 0, obj.v = 1 with v free.
    let dim = obj.len();
    let nr = rows.len();
    let ne = eqs.len();
    let ncols = 2 * dim + nr;
    let mut a = Vec::with_capacity(nr + ne + 1);
    let mut b = Vec::with_capacity(nr + ne + 1);
    for (i, row) in rows.iter().enumerate() {
        let mut r = vec![Rat::zero(); ncols];
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                r[j] = Rat::from_integer(x.clone());
                r[dim + j] = Rat::from_integer(-x.clone());
            }
        }
        r[2 * dim + i] = -Rat::one();
        a.push(r);
        b.push(Rat::zero());
    }
    for row in eqs {
        let mut r = vec![Rat::zero(); ncols];
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                r[j] = Rat::from_integer(x.clone());
                r[dim + j] = Rat::from_integer(-x.clone());
            }
        }
        a.push(r);
        b.push(Rat::zero());
    }
    let mut r = vec![Rat::zero(); ncols];
    for (j, x) in obj.iter().enumerate() {
        if !x.is_zero() {
            r[j] = Rat::from_integer(x.clone());
            r[dim + j] = Rat::from_integer(-x.clone());
        }
    }
    a.push(r);
    b.push(Rat::one());
    let lp = StandardLp {
        a,
        b,
        c: vec![Rat::zero(); ncols],
    };
    matches!(solve(&lp), LpOutcome::Optimal { .. })
}
