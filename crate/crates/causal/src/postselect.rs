//! Post-selection on the values of a parentless observed node.

use crate::structure::{CausalStructure, Node, NodeKind};
use crate::{CausalError, Result};

/// Remove `node` and replicate each of its descendants once per value
/// 0..k, with per-copy wiring; non-descendants are shared:
///  (1) edges among non-descendants are inherited,
///  (2) a non-descendant parent feeds every copy of its child,
///  (3) copies are wired to copies with the same value, never across values.
pub fn postselect(g: &CausalStructure, node: &str, k: u32) -> Result<CausalStructure> {
    let v = g.index(node)?;
    if g.kind(v) != NodeKind::Observed || !g.parents[v].is_empty() {
        return Err(CausalError::NotParentlessObserved(node.to_string()));
    }
    let desc: Vec<usize> = g.descendants(v);
    let nondesc: Vec<usize> = (0..g.n()).filter(|&i| i != v && !desc.contains(&i)).collect();

    let mut nodes: Vec<Node> = Vec::new();
    let mut origin: Vec<(usize, Option<u32>)> = Vec::new(); // (old index, copy value)
    for &i in &nondesc {
        nodes.push(g.nodes[i].clone());
        origin.push((i, None));
    }
    for &i in &desc {
        for val in 0..k {
            let mut n = g.nodes[i].clone();
            n.tags.push((g.nodes[v].name.clone(), val));
            nodes.push(n);
            origin.push((i, Some(val)));
        }
    }
    let find_new = |old: usize, val: Option<u32>| -> usize {
        origin
            .iter()
            .position(|&(o, c)| o == old && c == val)
            .expect("node accounted for")
    };
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (new_idx, &(old, copy)) in origin.iter().enumerate() {
        for &p in &g.parents[old] {
            if p == v {
                continue; // the post-selected node disappears
            }
            let p_new = if desc.contains(&p) {
                find_new(p, copy)
            } else {
                find_new(p, None)
            };
            parents[new_idx].push(p_new);
        }
        parents[new_idx].sort_unstable();
    }
    let out = CausalStructure { nodes, parents };
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{tagged_name, NodeKind::*};

    #[test]
    fn instrumental_on_binary_x() {
        let g = crate::test_fixtures::instrumental();
        let post = postselect(&g, "X", 2).unwrap();
        // Z|X=0, Z|X=1, Y|X=0, Y|X=1 and shared A.
        assert_eq!(post.n(), 5);
        let names: Vec<String> = post
            .nodes
            .iter()
            .map(|n| tagged_name(&n.name, &n.tags))
            .collect();
        assert!(names.contains(&"A".to_string()));
        assert!(names.contains(&"Z|X=0".to_string()));
        assert!(names.contains(&"Y|X=1".to_string()));
        // Per-copy wiring: Z|X=0 -> Y|X=0 but not Y|X=1.
        let z0 = names.iter().position(|n| n == "Z|X=0").unwrap();
        let y0 = names.iter().position(|n| n == "Y|X=0").unwrap();
        let y1 = names.iter().position(|n| n == "Y|X=1").unwrap();
        assert!(post.parents[y0].contains(&z0));
        assert!(!post.parents[y1].contains(&z0));
        // Observed count: k * |descendants| + |non-descendants|.
        assert_eq!(post.observed().len(), 2 * 2 + 0 + 1 - 1);
    }

    #[test]
    fn bell_double_postselect() {
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
        let once = postselect(&g, "A", 2).unwrap();
        let twice = postselect(&once, "B", 2).unwrap();
        let names: Vec<String> = twice
            .nodes
            .iter()
            .map(|n| tagged_name(&n.name, &n.tags))
            .collect();
        assert_eq!(
            names,
            vec!["C", "X|A=0", "X|A=1", "Y|B=0", "Y|B=1"]
        );
        // All four copies share only C as parent.
        for i in 1..5 {
            assert_eq!(twice.parents[i], vec![0]);
        }
    }

    #[test]
    fn node_without_descendants_is_simply_removed() {
        let g = CausalStructure::build(vec![("X", Observed), ("Y", Observed)], &[]).unwrap();
        let post = postselect(&g, "X", 3).unwrap();
        assert_eq!(post.n(), 1);
        assert_eq!(post.nodes[0].name, "Y");
    }

    #[test]
    fn rejects_nodes_with_parents() {
        let g = crate::test_fixtures::instrumental();
        assert!(postselect(&g, "Z", 2).is_err());
    }
}
