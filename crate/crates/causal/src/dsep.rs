//! Directional separation via the reachable-by-active-trail algorithm.

use crate::structure::CausalStructure;
use crate::{CausalError, Result};
use std::collections::BTreeSet;

/// True iff every path between `x` and `y` is blocked by `z` under the
/// chain/fork/collider rules.
pub fn d_separated(
    g: &CausalStructure,
    x: &BTreeSet<usize>,
    y: &BTreeSet<usize>,
    z: &BTreeSet<usize>,
) -> Result<bool> {
    if !x.is_disjoint(y) || !x.is_disjoint(z) || !y.is_disjoint(z) {
        return Err(CausalError::Overlap);
    }
    let reach = reachable(g, x, z);
    Ok(y.iter().all(|v| !reach.contains(v)))
}

/// Nodes reachable from `x` along trails active given `z`.
pub fn reachable(g: &CausalStructure, x: &BTreeSet<usize>, z: &BTreeSet<usize>) -> BTreeSet<usize> {
    let n = g.n();
    // Ancestors of z (inclusive), for the collider rule.
    let mut anc_z = vec![false; n];
    let mut stack: Vec<usize> = z.iter().copied().collect();
    while let Some(v) = stack.pop() {
        if !anc_z[v] {
            anc_z[v] = true;
            stack.extend(g.parents[v].iter().copied());
        }
    }
    // (node, arrived-from-child?) breadth-first search.
    const UP: usize = 0; // trail arrives at the node from one of its children
    const DOWN: usize = 1; // trail arrives from one of its parents
    let mut visited = vec![[false; 2]; n];
    let mut reach: BTreeSet<usize> = BTreeSet::new();
    let mut queue: Vec<(usize, usize)> = x.iter().map(|&v| (v, UP)).collect();
    while let Some((v, dir)) = queue.pop() {
        if visited[v][dir] {
            continue;
        }
        visited[v][dir] = true;
        let in_z = z.contains(&v);
        if !in_z {
            reach.insert(v);
        }
        if dir == UP && !in_z {
            for &p in &g.parents[v] {
                queue.push((p, UP));
            }
            for c in g.children(v) {
                queue.push((c, DOWN));
            }
        } else if dir == DOWN {
            if !in_z {
                for c in g.children(v) {
                    queue.push((c, DOWN));
                }
            }
            if anc_z[v] {
                for &p in &g.parents[v] {
                    queue.push((p, UP));
                }
            }
        }
    }
    reach
}

pub fn set_of(ids: &[usize]) -> BTreeSet<usize> {
    ids.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::NodeKind::*;

    #[test]
    fn collider_rules() {
        // X -> Z <- Y
        let g = CausalStructure::build(
            vec![("X", Observed), ("Y", Observed), ("Z", Observed)],
            &[("X", "Z"), ("Y", "Z")],
        )
        .unwrap();
        let x = set_of(&[0]);
        let y = set_of(&[1]);
        assert!(d_separated(&g, &x, &y, &BTreeSet::new()).unwrap());
        assert!(!d_separated(&g, &x, &y, &set_of(&[2])).unwrap());
    }

    #[test]
    fn bell_independences() {
        // A -> X <- C -> Y <- B
        let g = CausalStructure::build(
            vec![
                ("A", Observed),
                ("X", Observed),
                ("Y", Observed),
                ("B", Observed),
                ("C", LatentClassical),
            ],
            &[("A", "X"), ("C", "X"), ("C", "Y"), ("B", "Y")],
        )
        .unwrap();
        let a = set_of(&[g.index("A").unwrap()]);
        let by = set_of(&[g.index("B").unwrap(), g.index("Y").unwrap()]);
        assert!(d_separated(&g, &a, &by, &BTreeSet::new()).unwrap());
        // X and Y are connected through C.
        let x = set_of(&[g.index("X").unwrap()]);
        let y = set_of(&[g.index("Y").unwrap()]);
        assert!(!d_separated(&g, &x, &y, &a).unwrap());
    }

    #[test]
    fn triangle_has_no_observed_independence() {
        let g = crate::test_fixtures::triangle();
        let x = set_of(&[g.index("X").unwrap()]);
        let y = set_of(&[g.index("Y").unwrap()]);
        assert!(!d_separated(&g, &x, &y, &BTreeSet::new()).unwrap());
    }

    #[test]
    fn overlapping_sets_rejected() {
        let g = crate::test_fixtures::triangle();
        let s = set_of(&[0]);
        assert!(matches!(
            d_separated(&g, &s, &s, &BTreeSet::new()),
            Err(CausalError::Overlap)
        ));
    }
}
