//! Coexisting sets, basic (in)equalities, independence rows and data
//! processing inequalities for quantum and hybrid causal structures.
//!
//! Supported class: latent-quantum nodes are parentless (after the purity
//! reduction); observed nodes measure any mix of classical parents and
//! quantum subsystems; measurement order follows the topological order.

use crate::ci::components;
use crate::dsep::reachable;
use crate::postselect::postselect;
use crate::structure::{tagged_name, CausalStructure, Node, NodeKind};
use crate::{CausalError, Result};
use entspace::coord::{cmi_terms, CoordSystem};
use ratgeo::redundancy::{remove_redundant_with, row_implied, RedundancyOpts};
use ratgeo::{BigInt, HCone};
use std::collections::BTreeSet;

/// One subsystem per outgoing edge of a quantum node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    pub owner: usize,
    pub child: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Member {
    /// Observed or latent-classical node (by structure index).
    Node(usize),
    /// Quantum subsystem (by index into `QuantumView::subs`).
    Sub(usize),
}

/// Set of members admitting a joint state, as a bitmask over
/// `QuantumView::members`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoexistingSet {
    pub mask: u64,
}

/// A causal structure together with its quantum subsystems, the member list
/// (classical variables + subsystems, name-sorted) and the expanded graph
/// used for separation queries (subsystem nodes inserted on quantum edges).
#[derive(Clone, Debug)]
pub struct QuantumView {
    pub g: CausalStructure,
    pub subs: Vec<Subsystem>,
    pub members: Vec<Member>,
    pub member_names: Vec<String>,
    pub expanded: CausalStructure,
    /// members -> node index in `expanded`.
    pub member_expanded: Vec<usize>,
}

impl QuantumView {
    pub fn new(g: &CausalStructure) -> Result<Self> {
        for i in 0..g.n() {
            if g.kind(i) == NodeKind::LatentQuantum && !g.parents[i].is_empty() {
                return Err(CausalError::Invalid(format!(
                    "quantum node {} has parents; apply the purity reduction first",
                    g.nodes[i].name
                )));
            }
        }
        let mut subs = Vec::new();
        for i in 0..g.n() {
            if g.kind(i) == NodeKind::LatentQuantum {
                let children = g.children(i);
                for &c in &children {
                    subs.push(Subsystem { owner: i, child: c });
                }
            }
        }
        let sub_name = |s: &Subsystem| -> String {
            let owner_children = g.children(s.owner);
            if owner_children.len() == 1 {
                g.nodes[s.owner].name.clone()
            } else {
                format!("{}_{}", g.nodes[s.owner].name, g.nodes[s.child].name)
            }
        };
        let mut members: Vec<Member> = Vec::new();
        for i in 0..g.n() {
            if g.kind(i) != NodeKind::LatentQuantum {
                members.push(Member::Node(i));
            }
        }
        for si in 0..subs.len() {
            members.push(Member::Sub(si));
        }
        let name_of = |m: &Member| -> String {
            match m {
                Member::Node(i) => tagged_name(&g.nodes[*i].name, &g.nodes[*i].tags),
                Member::Sub(si) => sub_name(&subs[*si]),
            }
        };
        members.sort_by_key(|m| name_of(m));
        let member_names: Vec<String> = members.iter().map(|m| name_of(m)).collect();
        if members.len() > 60 {
            return Err(CausalError::Invalid("too many members".into()));
        }

        // Expanded graph: replace each edge Q -> c of a quantum node by
        // Q -> Q_c -> c.
        let mut exp_nodes: Vec<Node> = g.nodes.clone();
        let mut exp_parents: Vec<Vec<usize>> = g.parents.clone();
        let mut sub_expanded = Vec::with_capacity(subs.len());
        for s in &subs {
            let idx = exp_nodes.len();
            exp_nodes.push(Node {
                name: sub_name(s),
                kind: NodeKind::LatentQuantum,
                tags: Vec::new(),
            });
            exp_parents.push(vec![s.owner]);
            let cp = &mut exp_parents[s.child];
            cp.retain(|&p| p != s.owner);
            cp.push(idx);
            cp.sort_unstable();
            sub_expanded.push(idx);
        }
        let expanded = CausalStructure {
            nodes: exp_nodes,
            parents: exp_parents,
        };
        expanded.validate()?;
        let member_expanded: Vec<usize> = members
            .iter()
            .map(|m| match m {
                Member::Node(i) => *i,
                Member::Sub(si) => sub_expanded[*si],
            })
            .collect();
        Ok(QuantumView {
            g: g.clone(),
            subs,
            members,
            member_names,
            expanded,
            member_expanded,
        })
    }

    pub fn n_members(&self) -> usize {
        self.members.len()
    }

    pub fn member_is_classical(&self, m: usize) -> bool {
        matches!(self.members[m], Member::Node(_))
    }

    /// Subsystems that are quantum ancestors of observed node `v`: consumed
    /// in the production of `v`.
    fn qanc_of_node(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (si, s) in self.subs.iter().enumerate() {
            if s.child == v || self.g.descendants(s.child).contains(&v) {
                out.insert(si);
            }
        }
        out
    }

    /// Conflict relation: members that cannot coexist.
    fn conflicts(&self) -> Vec<u64> {
        let n = self.n_members();
        let qanc: Vec<BTreeSet<usize>> = self
            .members
            .iter()
            .map(|m| match m {
                Member::Node(i) => self.qanc_of_node(*i),
                Member::Sub(_) => BTreeSet::new(),
            })
            .collect();
        let mut adj = vec![0u64; n];
        for a in 0..n {
            for b in (a + 1)..n {
                let conflict = match (&self.members[a], &self.members[b]) {
                    (Member::Sub(sa), Member::Node(_)) => qanc[b].contains(sa),
                    (Member::Node(_), Member::Sub(sb)) => qanc[a].contains(sb),
                    (Member::Sub(sa), Member::Sub(sb)) => {
                        let (sa, sb) = (&self.subs[*sa], &self.subs[*sb]);
                        sa.child == sb.owner
                            || sb.child == sa.owner
                            || self.g.descendants(sa.child).contains(&sb.owner)
                            || self.g.descendants(sb.child).contains(&sa.owner)
                    }
                    (Member::Node(na), Member::Node(nb)) => {
                        // Post-selected instances measuring a shared quantum
                        // system under different conditioning values never
                        // coexist.
                        let ta = &self.g.nodes[*na].tags;
                        let tb = &self.g.nodes[*nb].tags;
                        let differing = ta.iter().any(|(var, val)| {
                            tb.iter().any(|(w, x)| w == var && x != val)
                        });
                        differing && !qanc[a].is_disjoint(&qanc[b])
                    }
                };
                if conflict {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
        }
        adj
    }
}

/// Maximal coexisting sets: maximal antichains under quantum ancestry
/// (maximal independent sets of the conflict relation). A structure with no
/// quantum nodes yields the single all-node set.
pub fn coexisting_sets(view: &QuantumView) -> Vec<CoexistingSet> {
    let n = view.n_members();
    let conflicts = view.conflicts();
    // Maximal cliques of the complement graph via Bron-Kerbosch.
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let compl: Vec<u64> = (0..n).map(|i| full & !conflicts[i] & !(1 << i)).collect();
    let mut out: Vec<u64> = Vec::new();
    bron_kerbosch(0, full, 0, &compl, &mut out);
    out.sort();
    out.into_iter().map(|mask| CoexistingSet { mask }).collect()
}

fn bron_kerbosch(r: u64, mut p: u64, mut x: u64, adj: &[u64], out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // Pivot on the candidate with most neighbours in p.
    let pivot = {
        let mut best = None;
        let mut best_count = 0;
        let mut scan = p | x;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let count = (adj[v] & p).count_ones();
            if best.is_none() || count > best_count {
                best = Some(v);
                best_count = count;
            }
        }
        best.unwrap()
    };
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        let bit = 1u64 << v;
        bron_kerbosch(r | bit, p & adj[v], x & adj[v], adj, out);
        p &= !bit;
        x |= bit;
    }
}

/// Coordinate system over all subsets of the maximal coexisting sets.
pub fn quantum_coord_system(view: &QuantumView, sets: &[CoexistingSet]) -> CoordSystem {
    let mut subsets: BTreeSet<u64> = BTreeSet::new();
    for cs in sets {
        let mut sub = cs.mask;
        loop {
            if sub != 0 {
                subsets.insert(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & cs.mask;
        }
    }
    let names: Vec<&str> = view.member_names.iter().map(|s| s.as_str()).collect();
    CoordSystem::from_subsets(&names, subsets.into_iter().collect()).sorted()
}

pub struct QuantumRowOpts {
    pub exec: ratgeo::Exec,
    /// Reduce the emitted families to irredundant sets via exact LPs.
    pub reduce: bool,
}

impl Default for QuantumRowOpts {
    fn default() -> Self {
        QuantumRowOpts {
            exec: ratgeo::Exec::default(),
            reduce: true,
        }
    }
}

/// Basic rows: within each coexisting set, elemental submodularity;
/// monotonicity exactly where the dropped part or the remaining part is
/// classical (the cq-state rule); elemental weak monotonicity for quantum
/// members whose drop-one monotonicity is not available.
pub fn quantum_basic_rows(
    view: &QuantumView,
    sets: &[CoexistingSet],
    coords: &CoordSystem,
    opts: &QuantumRowOpts,
) -> Result<Vec<Vec<BigInt>>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut push = |terms: Vec<(u64, i64)>| -> Result<()> {
        let row = coords
            .row(&terms)
            .map_err(|e| CausalError::Invalid(e.to_string()))?;
        if row.iter().any(|x| *x != BigInt::from(0)) {
            rows.push(row);
        }
        Ok(())
    };
    for cs in sets {
        let members: Vec<usize> = bits(cs.mask);
        let classical: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&m| view.member_is_classical(m))
            .collect();
        let quantum: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&m| !view.member_is_classical(m))
            .collect();
        let cmask: u64 = classical.iter().map(|&m| 1u64 << m).sum();
        // Submodularity I(i:j|S).
        for (ai, &a) in members.iter().enumerate() {
            for &b in members.iter().skip(ai + 1) {
                let rest = cs.mask & !(1 << a) & !(1 << b);
                let mut s = rest;
                loop {
                    push(cmi_terms(1 << a, 1 << b, s))?;
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & rest;
                }
            }
        }
        // Monotonicity: drop-one where valid.
        for &m in &members {
            let rest = cs.mask & !(1 << m);
            if rest == 0 {
                continue;
            }
            let rest_all_classical = rest & !cmask == 0;
            if view.member_is_classical(m) || rest_all_classical {
                push(vec![(cs.mask, 1), (rest, -1)])?;
            } else {
                // Elemental weak monotonicity H(m|K) + H(m|rest minus K) >= 0.
                let mut k = rest;
                loop {
                    let other = rest & !k;
                    if k <= other {
                        let mb = 1u64 << m;
                        push(vec![
                            (mb | k, 1),
                            (k, -1),
                            (mb | other, 1),
                            (other, -1),
                        ])?;
                    }
                    if k == 0 {
                        break;
                    }
                    k = (k - 1) & rest;
                }
            }
        }
        // Monotonicity for quantum parts over the full classical context:
        // H(Q' | C) >= 0 for nonempty Q' of quantum members.
        if !quantum.is_empty() {
            let qmask: u64 = quantum.iter().map(|&m| 1u64 << m).sum();
            let mut q = qmask;
            loop {
                if q != 0 {
                    push(vec![(q | cmask, 1), (cmask, -1)])?;
                }
                if q == 0 {
                    break;
                }
                q = (q - 1) & qmask;
            }
        }
    }
    rows.sort();
    rows.dedup();
    if opts.reduce {
        let cone = HCone::new(coords.dim(), vec![], rows).map_err(geo)?;
        let reduced = remove_redundant_with(
            &cone,
            &RedundancyOpts {
                exec: opts.exec,
                implicit_equalities: false,
            },
        );
        Ok(reduced.ineqs)
    } else {
        Ok(rows)
    }
}

/// Independence equalities: for each coexisting set, each classical
/// conditioning subset T and each subset W of remaining members, the
/// separation classes of W given T (in the expanded graph) are mutually
/// independent. With `reduce`, the list is pruned to a minimal set relative
/// to the basic rows.
pub fn quantum_ci_rows(
    view: &QuantumView,
    sets: &[CoexistingSet],
    coords: &CoordSystem,
    basic: &[Vec<BigInt>],
    opts: &QuantumRowOpts,
) -> Result<Vec<Vec<BigInt>>> {
    let n = view.n_members();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut seen: BTreeSet<(u64, u64, u64)> = BTreeSet::new();
    for cs in sets {
        let members = bits(cs.mask);
        let cmask: u64 = members
            .iter()
            .filter(|&&m| view.member_is_classical(m))
            .map(|&m| 1u64 << m)
            .sum();
        let mut t = cmask;
        loop {
            let t_nodes: BTreeSet<usize> =
                bits(t).into_iter().map(|m| view.member_expanded[m]).collect();
            // Pairwise connectivity of members given T.
            let rest: Vec<usize> = members.iter().copied().filter(|m| t >> m & 1 == 0).collect();
            let mut related = vec![vec![false; n]; n];
            for &a in &rest {
                let src = BTreeSet::from([view.member_expanded[a]]);
                if t_nodes.contains(&view.member_expanded[a]) {
                    continue;
                }
                let reach = reachable(&view.expanded, &src, &t_nodes);
                for &b in &rest {
                    related[a][b] = a == b || reach.contains(&view.member_expanded[b]);
                }
            }
            let restmask: u64 = rest.iter().map(|&m| 1u64 << m).sum();
            let mut w = restmask;
            loop {
                let wm = bits(w);
                if wm.len() >= 2 {
                    let comps = components(&wm, |a, b| related[a][b] || related[b][a]);
                    if comps.len() >= 2 {
                        for comp in &comps {
                            let u: u64 = comp.iter().map(|&m| 1u64 << m).sum();
                            let v = w & !u;
                            let key = (u.min(v), u.max(v), t);
                            if u != 0 && v != 0 && seen.insert(key) {
                                let row = coords
                                    .row(&cmi_terms(u, v, t))
                                    .map_err(|e| CausalError::Invalid(e.to_string()))?;
                                if row.iter().any(|x| *x != BigInt::from(0)) {
                                    rows.push(row);
                                }
                            }
                        }
                    }
                }
                if w == 0 {
                    break;
                }
                w = (w - 1) & restmask;
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & cmask;
        }
    }
    rows.sort();
    rows.dedup();
    if !opts.reduce {
        return Ok(rows);
    }
    // Greedy minimality relative to the basic inequalities: drop an equality
    // implied (in both directions) by basics plus the remaining equalities.
    let mut kept = rows;
    let mut i = 0;
    while i < kept.len() {
        let mut ineqs: Vec<Vec<BigInt>> = basic.to_vec();
        for (j, e) in kept.iter().enumerate() {
            if j != i {
                ineqs.push(e.clone());
                ineqs.push(e.iter().map(|x| -x.clone()).collect());
            }
        }
        let cone = HCone::new(coords.dim(), vec![], ineqs).map_err(geo)?;
        let neg: Vec<BigInt> = kept[i].iter().map(|x| -x.clone()).collect();
        if row_implied(&cone, &kept[i]) && row_implied(&cone, &neg) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// One data processing inequality per (measurement node, compatible
/// coexisting set): I(inputs : R) >= I(output + retained classical inputs : R)
/// with R the rest of the pre-measurement set. Composed maps are never
/// emitted separately.
pub fn dpi_rows(
    view: &QuantumView,
    sets: &[CoexistingSet],
    coords: &CoordSystem,
) -> Result<Vec<Vec<BigInt>>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (mi, member) in view.members.iter().enumerate() {
        let Member::Node(v) = member else { continue };
        if view.g.kind(*v) != NodeKind::Observed {
            continue;
        }
        // Quantum inputs: subsystems feeding v directly.
        let q_in: Vec<usize> = view
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| match m {
                Member::Sub(si) => view.subs[*si].child == *v,
                _ => false,
            })
            .map(|(i, _)| i)
            .collect();
        if q_in.is_empty() {
            continue;
        }
        // Classical parents as members.
        let c_in: Vec<usize> = view
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| match m {
                Member::Node(p) => view.g.parents[*v].contains(p),
                _ => false,
            })
            .map(|(i, _)| i)
            .collect();
        let inputs: u64 = q_in.iter().chain(c_in.iter()).map(|&i| 1u64 << i).sum();
        let cmask: u64 = c_in.iter().map(|&i| 1u64 << i).sum();
        let out_mask = (1u64 << mi) | cmask;
        for cs in sets {
            if cs.mask & inputs != inputs {
                continue;
            }
            let r = cs.mask & !inputs;
            if r == 0 {
                continue;
            }
            let mut terms = cmi_terms(inputs, r, 0);
            for (m, c) in cmi_terms(out_mask, r, 0) {
                terms.push((m, -c));
            }
            let row = coords
                .row(&terms)
                .map_err(|e| CausalError::Invalid(e.to_string()))?;
            if row.iter().any(|x| *x != BigInt::from(0)) {
                rows.push(row);
            }
        }
    }
    rows.sort();
    rows.dedup();
    Ok(rows)
}

/// Purity of parentless quantum sources with at least two subsystems:
/// H(all subsystems) = 0 and the Schmidt equalities H(S') = H(S minus S').
pub fn purity_rows(view: &QuantumView, coords: &CoordSystem) -> Result<Vec<Vec<BigInt>>> {
    let mut rows = Vec::new();
    for q in 0..view.g.n() {
        if view.g.kind(q) != NodeKind::LatentQuantum {
            continue;
        }
        let subs: Vec<usize> = view
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| matches!(m, Member::Sub(si) if view.subs[*si].owner == q))
            .map(|(i, _)| i)
            .collect();
        if subs.len() < 2 {
            continue;
        }
        let all: u64 = subs.iter().map(|&i| 1u64 << i).sum();
        rows.push(coords.row(&[(all, 1)]).map_err(inv)?);
        let mut s = all;
        loop {
            s = (s - 1) & all;
            if s == 0 {
                break;
            }
            let other = all & !s;
            if s < other {
                rows.push(coords.row(&[(s, 1), (other, -1)]).map_err(inv)?);
            }
        }
    }
    rows.sort();
    rows.dedup();
    Ok(rows)
}

/// Product-decomposition equalities over shared-ancestor components of every
/// coordinate, for elimination-stage substitution (implied rows).
pub fn quantum_product_eqs(view: &QuantumView, coords: &CoordSystem) -> Result<Vec<Vec<BigInt>>> {
    let n = view.n_members();
    let mut related = vec![vec![false; n]; n];
    for a in 0..n {
        let reach = reachable(
            &view.expanded,
            &BTreeSet::from([view.member_expanded[a]]),
            &BTreeSet::new(),
        );
        for b in 0..n {
            related[a][b] = a == b || reach.contains(&view.member_expanded[b]);
        }
    }
    let mut rows = Vec::new();
    for &subset in &coords.subsets {
        let ms = bits(subset);
        if ms.len() < 2 {
            continue;
        }
        let comps = components(&ms, |a, b| related[a][b] || related[b][a]);
        if comps.len() < 2 {
            continue;
        }
        let mut terms: Vec<(u64, i64)> = vec![(subset, 1)];
        for comp in &comps {
            let mask: u64 = comp.iter().map(|&i| 1u64 << i).sum();
            terms.push((mask, -1));
        }
        rows.push(coords.row(&terms).map_err(inv)?);
    }
    rows.sort();
    rows.dedup();
    Ok(rows)
}

/// Post-selection in the quantum case: copies of quantum-descended variables
/// for different values of the selected node never coexist.
pub fn quantum_postselect_coex(
    g: &CausalStructure,
    node: &str,
    k: u32,
) -> Result<(CausalStructure, QuantumView, Vec<CoexistingSet>)> {
    let post = postselect(g, node, k)?;
    let view = QuantumView::new(&post)?;
    let sets = coexisting_sets(&view);
    Ok((post, view, sets))
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn inv(e: entspace::EntError) -> CausalError {
    CausalError::Invalid(e.to_string())
}

fn geo(e: ratgeo::GeoError) -> CausalError {
    CausalError::Invalid(e.to_string())
}
