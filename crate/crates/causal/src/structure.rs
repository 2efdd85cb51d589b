//! DAG model with per-node kinds and post-selection tags.

use crate::{CausalError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Observed,
    LatentClassical,
    LatentQuantum,
}

impl NodeKind {
    pub fn is_latent(self) -> bool {
        !matches!(self, NodeKind::Observed)
    }
    pub fn is_classical(self) -> bool {
        !matches!(self, NodeKind::LatentQuantum)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub kind: NodeKind,
    /// Post-selection conditionings accumulated on this copy, e.g. [("S", 1)].
    pub tags: Vec<(String, u32)>,
}

#[derive(Clone, Debug)]
pub struct CausalStructure {
    pub nodes: Vec<Node>,
    /// Parent lists, sorted ascending.
    pub parents: Vec<Vec<usize>>,
}

impl CausalStructure {
    pub fn build(nodes: Vec<(&str, NodeKind)>, edges: &[(&str, &str)]) -> Result<Self> {
        let node_list: Vec<Node> = nodes
            .iter()
            .map(|(n, k)| Node {
                name: n.to_string(),
                kind: *k,
                tags: Vec::new(),
            })
            .collect();
        let mut s = CausalStructure {
            parents: vec![Vec::new(); node_list.len()],
            nodes: node_list,
        };
        for (p, c) in edges {
            let pi = s.index(p)?;
            let ci = s.index(c)?;
            if !s.parents[ci].contains(&pi) {
                s.parents[ci].push(pi);
            }
        }
        for p in s.parents.iter_mut() {
            p.sort_unstable();
        }
        s.check_acyclic()?;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.nodes
            .iter()
            .position(|n| n.name == name)
            .ok_or_else(|| CausalError::UnknownNode(name.to_string()))
    }

    pub fn kind(&self, i: usize) -> NodeKind {
        self.nodes[i].kind
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&c| self.parents[c].contains(&i))
            .collect()
    }

    pub fn observed(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.nodes[i].kind == NodeKind::Observed)
            .collect()
    }

    pub fn latent(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.nodes[i].kind.is_latent())
            .collect()
    }

    /// Ancestors of `i`, not including `i`.
    pub fn ancestors(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut stack = self.parents[i].clone();
        while let Some(p) = stack.pop() {
            if !seen[p] {
                seen[p] = true;
                stack.extend(self.parents[p].iter().copied());
            }
        }
        (0..self.n()).filter(|&j| seen[j]).collect()
    }

    /// Descendants of `i`, not including `i`.
    pub fn descendants(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut stack = self.children(i);
        while let Some(c) = stack.pop() {
            if !seen[c] {
                seen[c] = true;
                stack.extend(self.children(c));
            }
        }
        (0..self.n()).filter(|&j| seen[j]).collect()
    }

    pub fn topological_order(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = self.parents.iter().map(|p| p.len()).collect();
        let mut queue: Vec<usize> = (0..self.n()).filter(|&i| indeg[i] == 0).collect();
        let mut out = Vec::with_capacity(self.n());
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            out.push(v);
            for c in self.children(v) {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    queue.push(c);
                }
            }
        }
        out
    }

    fn check_acyclic(&self) -> Result<()> {
        if self.topological_order().len() != self.n() {
            let stuck = (0..self.n())
                .find(|&i| !self.topological_order().contains(&i))
                .unwrap_or(0);
            return Err(CausalError::Cyclic(self.nodes[stuck].name.clone()));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.check_acyclic()
    }
}

/// Parse the structure file format:
/// ```text
/// node A latent-q
/// node X observed
/// edge A X
/// ```
pub fn parse_structure(text: &str) -> Result<CausalStructure> {
    let mut nodes: Vec<(String, NodeKind)> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CausalError::Parse { line: ln + 1, msg };
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("node") => {
                let name = parts
                    .next()
                    .ok_or_else(|| err("missing node name".into()))?;
                let kind = match parts.next() {
                    Some("observed") => NodeKind::Observed,
                    Some("latent-c") | Some("latent-classical") => NodeKind::LatentClassical,
                    Some("latent-q") | Some("latent-quantum") => NodeKind::LatentQuantum,
                    other => {
                        return Err(err(format!(
                            "expected observed|latent-c|latent-q, got {other:?}"
                        )))
                    }
                };
                if nodes.iter().any(|(n, _)| n == name) {
                    return Err(err(format!("duplicate node {name}")));
                }
                nodes.push((name.to_string(), kind));
            }
            Some("edge") => {
                let p = parts
                    .next()
                    .ok_or_else(|| err("missing edge endpoints".into()))?;
                let c = parts
                    .next()
                    .ok_or_else(|| err("missing edge child".into()))?;
                edges.push((p.to_string(), c.to_string()));
            }
            Some(other) => return Err(err(format!("unknown directive {other}"))),
            None => {}
        }
    }
    let node_refs: Vec<(&str, NodeKind)> = nodes.iter().map(|(n, k)| (n.as_str(), *k)).collect();
    let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(p, c)| (p.as_str(), c.as_str())).collect();
    CausalStructure::build(node_refs, &edge_refs)
}

/// Render a node name with its post-selection tags, e.g. `Y|S=1`.
pub fn tagged_name(base: &str, tags: &[(String, u32)]) -> String {
    let mut s = base.to_string();
    for (var, val) in tags {
        s.push_str(&format!("|{var}={val}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_query() {
        let g = parse_structure(
            "# instrumental scenario\nnode X observed\nnode Y observed\nnode Z observed\nnode A latent-c\nedge X Z\nedge A Z\nedge Z Y\nedge A Y\n",
        )
        .unwrap();
        assert_eq!(g.n(), 4);
        let a = g.index("A").unwrap();
        let y = g.index("Y").unwrap();
        assert_eq!(g.descendants(a), vec![g.index("Y").unwrap(), g.index("Z").unwrap()]);
        assert!(g.ancestors(y).contains(&a));
    }

    #[test]
    fn cycle_rejected() {
        let err = parse_structure("node A observed\nnode B observed\nedge A B\nedge B A\n");
        assert!(err.is_err());
    }

    #[test]
    fn line_numbers_in_errors() {
        let err = parse_structure("node A observed\nedge A Missing\n").unwrap_err();
        assert!(err.to_string().contains("Missing"));
    }
}
