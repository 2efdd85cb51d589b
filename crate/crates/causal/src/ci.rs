//! Conditional-independence extraction and its entropic equality rows.

use crate::dsep::{d_separated, reachable};
use crate::structure::{CausalStructure, NodeKind};
use crate::Result;
use entspace::coord::{cmi_terms, CoordSystem};
use ratgeo::BigInt;
use std::collections::BTreeSet;

/// I(left : right | cond) = 0, node-index masks relative to a structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiStatement {
    pub left: BTreeSet<usize>,
    pub right: BTreeSet<usize>,
    pub cond: BTreeSet<usize>,
}

/// Local-Markov statements: each variable is independent of its
/// non-descendants given its parents. Vacuous statements are dropped and
/// symmetric duplicates removed.
///
/// With `observed_only`, statements are taken among the observed variables:
/// for each observed node, the maximal set of observed non-descendants
/// d-separated from it given its observed parents.
pub fn parental_ci(g: &CausalStructure, observed_only: bool) -> Result<Vec<CiStatement>> {
    let mut out: Vec<CiStatement> = Vec::new();
    let candidates: Vec<usize> = if observed_only {
        g.observed()
    } else {
        (0..g.n()).collect()
    };
    for &v in &candidates {
        let (parents, right): (BTreeSet<usize>, BTreeSet<usize>) = if observed_only {
            let parents: BTreeSet<usize> = g.parents[v]
                .iter()
                .copied()
                .filter(|&p| g.kind(p) == NodeKind::Observed)
                .collect();
            let desc: BTreeSet<usize> = g.descendants(v).into_iter().collect();
            let mut right = BTreeSet::new();
            for &w in &g.observed() {
                if w == v || desc.contains(&w) || parents.contains(&w) {
                    continue;
                }
                let lone = BTreeSet::from([w]);
                if d_separated(g, &BTreeSet::from([v]), &lone, &parents)? {
                    right.insert(w);
                }
            }
            (parents, right)
        } else {
            let parents: BTreeSet<usize> = g.parents[v].iter().copied().collect();
            let desc: BTreeSet<usize> = g.descendants(v).into_iter().collect();
            let right: BTreeSet<usize> = (0..g.n())
                .filter(|&w| w != v && !desc.contains(&w) && !parents.contains(&w))
                .collect();
            (parents, right)
        };
        if right.is_empty() {
            continue;
        }
        let stmt = CiStatement {
            left: BTreeSet::from([v]),
            right,
            cond: parents,
        };
        if !out.iter().any(|s| symmetric_same(s, &stmt)) {
            out.push(stmt);
        }
    }
    Ok(out)
}

fn symmetric_same(a: &CiStatement, b: &CiStatement) -> bool {
    a.cond == b.cond
        && ((a.left == b.left && a.right == b.right) || (a.left == b.right && a.right == b.left))
}

/// Expand CI statements into equality rows I(L:R|C) = 0 on the coordinate
/// system (variable names must match node names).
pub fn ci_rows(
    g: &CausalStructure,
    stmts: &[CiStatement],
    coords: &CoordSystem,
) -> Result<Vec<Vec<BigInt>>> {
    let mut rows = Vec::new();
    for s in stmts {
        let mask = |set: &BTreeSet<usize>| -> crate::Result<u64> {
            let mut m = 0u64;
            for &i in set {
                let vi = coords
                    .var_index(&g.nodes[i].name)
                    .map_err(|e| crate::CausalError::Invalid(e.to_string()))?;
                m |= 1 << vi;
            }
            Ok(m)
        };
        let row = coords
            .row(&cmi_terms(mask(&s.left)?, mask(&s.right)?, mask(&s.cond)?))
            .map_err(|e| crate::CausalError::Invalid(e.to_string()))?;
        rows.push(row);
    }
    rows.sort();
    rows.dedup();
    Ok(rows)
}

/// Product-decomposition equalities H(T) = sum_i H(T_i) over the
/// shared-ancestor components of every coordinate subset. These are linear
/// consequences of the local Markov conditions and the Shannon inequalities;
/// they are emitted so the elimination stage can substitute coordinates away.
pub fn product_decomposition_eqs(
    g: &CausalStructure,
    coords: &CoordSystem,
) -> Result<Vec<Vec<BigInt>>> {
    let var_nodes: Vec<usize> = coords
        .names
        .iter()
        .map(|n| g.index(n))
        .collect::<Result<_>>()?;
    // u ~ v iff they share an ancestor (equivalently: d-connected given {}).
    let nvars = var_nodes.len();
    let mut related = vec![vec![false; nvars]; nvars];
    for i in 0..nvars {
        let reach = reachable(g, &BTreeSet::from([var_nodes[i]]), &BTreeSet::new());
        for j in 0..nvars {
            related[i][j] = i == j || reach.contains(&var_nodes[j]);
        }
    }
    let mut rows = Vec::new();
    for &subset in &coords.subsets {
        let members: Vec<usize> = (0..nvars).filter(|i| subset >> i & 1 == 1).collect();
        if members.len() < 2 {
            continue;
        }
        let comps = components(&members, |a, b| related[a][b]);
        if comps.len() < 2 {
            continue;
        }
        // All component masks must be coordinates too; skip otherwise.
        let mut terms: Vec<(u64, i64)> = vec![(subset, 1)];
        let mut ok = true;
        for comp in &comps {
            let mask: u64 = comp.iter().map(|&i| 1u64 << i).sum();
            if coords.index_of(mask).is_none() {
                ok = false;
                break;
            }
            terms.push((mask, -1));
        }
        if !ok {
            continue;
        }
        rows.push(
            coords
                .row(&terms)
                .map_err(|e| crate::CausalError::Invalid(e.to_string()))?,
        );
    }
    rows.sort();
    rows.dedup();
    Ok(rows)
}

pub(crate) fn components(items: &[usize], related: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut comp_of: Vec<Option<usize>> = vec![None; items.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for (i, &a) in items.iter().enumerate() {
        if comp_of[i].is_some() {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![i];
        comp_of[i] = Some(id);
        let mut comp = vec![a];
        while let Some(x) = stack.pop() {
            for (j, &b) in items.iter().enumerate() {
                if comp_of[j].is_none() && related(items[x], b) {
                    comp_of[j] = Some(id);
                    comp.push(b);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}
