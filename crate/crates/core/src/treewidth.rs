//! Tree decompositions: validation, the exact oracle, and construction from
//! balanced separators.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cutsets::{clique_cutset_atoms, SplitTree};
use crate::detect::{class_membership, Variant};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separator::{main_separator, ramsey_t4, SeparatorCertificate};
use crate::set::VertexSet;
use crate::weight::WeightFn;

/// Exact treewidth is computed only up to this many vertices.
pub const EXACT_MAX_N: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub bags: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    pub fn new() -> Self {
        TreeDecomposition { nodes: Vec::new(), edges: Vec::new(), bags: Vec::new() }
    }

    pub fn add_node(&mut self, mut bag: Vec<usize>) -> usize {
        bag.sort_unstable();
        bag.dedup();
        let id = self.bags.len();
        self.nodes.push(id);
        self.bags.push(bag);
        id
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a.min(b), a.max(b)));
    }

    /// Copies `other` in, returning the offset of its node ids.
    pub fn absorb(&mut self, other: &TreeDecomposition) -> usize {
        let off = self.bags.len();
        for b in &other.bags {
            self.add_node(b.clone());
        }
        for &(a, b) in &other.edges {
            self.add_edge(a + off, b + off);
        }
        off
    }

    /// Largest bag size minus one; an empty decomposition has width 0.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }
}

impl Default for TreeDecomposition {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdCheck {
    pub pass: bool,
    /// `vertex-cover`, `edge-cover`, `connectivity`, `tree` or `bag-vertex`.
    pub condition: Option<&'static str>,
    pub witness: Vec<usize>,
}

impl TdCheck {
    fn fail(condition: &'static str, witness: Vec<usize>) -> Self {
        TdCheck { pass: false, condition: Some(condition), witness }
    }
}

/// Checks that `td` is a tree whose bags cover every vertex and edge and
/// whose occurrence sets are connected.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> TdCheck {
    let k = td.bags.len();
    if td.nodes.len() != k || td.nodes.iter().enumerate().any(|(i, &n)| i != n) {
        return TdCheck::fail("tree", vec![]);
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.edges {
        if a >= k || b >= k || a == b {
            return TdCheck::fail("tree", vec![a, b]);
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if k > 0 && (td.edges.len() != k - 1 || connected_nodes(&adj, &vec![true; k]) != k) {
        return TdCheck::fail("tree", vec![]);
    }
    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| !g.has_vertex(v)) {
            return TdCheck::fail("bag-vertex", vec![i, v]);
        }
    }
    for v in g.vertices() {
        let holds: Vec<bool> = td.bags.iter().map(|b| b.contains(&v)).collect();
        let count = holds.iter().filter(|&&h| h).count();
        if count == 0 {
            return TdCheck::fail("vertex-cover", vec![v]);
        }
        if connected_nodes(&adj, &holds) != count {
            return TdCheck::fail("connectivity", vec![v]);
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return TdCheck::fail("edge-cover", vec![u, v]);
        }
    }
    TdCheck { pass: true, condition: None, witness: vec![] }
}

/// Size of the connected piece of the marked nodes containing the first marked node.
fn connected_nodes(adj: &[Vec<usize>], mark: &[bool]) -> usize {
    let Some(start) = mark.iter().position(|&m| m) else { return 0 };
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut n = 0;
    while let Some(a) = stack.pop() {
        n += 1;
        for &b in &adj[a] {
            if mark[b] && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    n
}

/// Exact treewidth by dynamic programming over vertex subsets:
/// `TW(S) = min_{v ∈ S} max(TW(S \ v), |Q(S \ v, v)|)`, where `Q(S, v)` is
/// the set of vertices outside `S ∪ {v}` reachable from `v` through `S`.
pub fn exact_treewidth(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n > EXACT_MAX_N {
        return Err(Error::Capacity { what: "exact treewidth input", got: n, limit: EXACT_MAX_N });
    }
    if n == 0 {
        return Ok(0);
    }
    let (h, _) = g.compact();
    let adj: Vec<u32> = (0..n).map(|v| h.nbrs(v).iter().fold(0u32, |m, u| m | 1 << u)).collect();
    let nb = |set: u32| {
        let mut out = 0;
        let mut s = set;
        while s != 0 {
            out |= adj[s.trailing_zeros() as usize];
            s &= s - 1;
        }
        out
    };
    let q_size = |s: u32, v: usize| {
        let mut comp = 1u32 << v;
        loop {
            let grown = comp | (nb(comp) & s);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        (nb(comp) & !s & !comp).count_ones() as i8
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![i8::MAX; 1 << n];
    tw[0] = -1;
    for s in 1..=full {
        let mut best = i8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            let prev = tw[without as usize];
            if prev >= best {
                continue;
            }
            best = best.min(prev.max(q_size(without, v)));
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize].max(0) as usize)
}

/// `tw(g) ≤ 2`, by deleting vertices of degree at most one and suppressing
/// vertices of degree two until nothing is left.
pub fn treewidth_at_most_two(g: &Graph) -> bool {
    let n = g.universe();
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| if g.has_vertex(v) { g.nbrs(v).iter().collect() } else { Default::default() }).collect();
    let mut alive: Vec<bool> = (0..n).map(|v| g.has_vertex(v)).collect();
    loop {
        let Some(v) = (0..n).find(|&v| alive[v] && adj[v].len() <= 2) else {
            return !alive.iter().any(|&a| a);
        };
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &u in &nbrs {
            adj[u].remove(&v);
        }
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[v].clear();
        alive[v] = false;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuiltTd {
    pub td: TreeDecomposition,
    pub max_separator: usize,
    pub oracle_calls: usize,
}

struct Builder<'a, F> {
    g: &'a Graph,
    oracle: F,
    cache: HashMap<Vec<usize>, VertexSet>,
    td: TreeDecomposition,
    max_sep: usize,
    calls: usize,
}

impl<F: FnMut(&WeightFn) -> Result<VertexSet>> Builder<'_, F> {
    fn separator(&mut self, support: &VertexSet) -> Result<VertexSet> {
        let key = support.to_vec();
        if let Some(x) = self.cache.get(&key) {
            return Ok(x.clone());
        }
        let w = WeightFn::uniform_on(self.g, support)?;
        self.calls += 1;
        let x = (self.oracle)(&w)?;
        if !x.is_subset(self.g.vertices()) {
            return Err(Error::Internal("oracle returned vertices outside the graph".into()));
        }
        self.max_sep = self.max_sep.max(x.len());
        self.cache.insert(key, x.clone());
        Ok(x)
    }

    /// Decomposes `G[R ∪ W]` below `parent`, where `N(R) ⊆ W` and `W` is
    /// already in the parent bag.
    fn solve(&mut self, r: VertexSet, w: VertexSet, parent: Option<usize>) -> Result<()> {
        let g = self.g;
        let all = &r | &w;
        if all.len() <= 2 * self.max_sep.max(1) + 1 {
            let id = self.td.add_node(all.to_vec());
            if let Some(p) = parent {
                self.td.add_edge(p, id);
            }
            return Ok(());
        }
        let mut supports = Vec::new();
        if !w.is_empty() {
            supports.push(w.clone());
        }
        supports.push(all.clone());
        let mut best: Option<((usize, usize), VertexSet, Vec<VertexSet>)> = None;
        for s in supports {
            let x = self.separator(&s)?;
            let bag = &w | &(&x & &r);
            let children = g.comps(&(&r - &x));
            if bag == w && children.len() == 1 {
                continue;
            }
            let iface = children.iter().map(|d| (&g.open_nbhd(d) & &bag).len()).max().unwrap_or(0);
            let score = (iface.max(bag.len()), bag.len());
            if best.as_ref().is_none_or(|(bs, _, _)| score < *bs) {
                best = Some((score, bag, children));
            }
        }
        let (bag, children) = match best {
            Some((_, bag, children)) => (bag, children),
            None => {
                // no separator makes progress here; move one vertex into the bag
                let mut bag = w.clone();
                bag.insert(r.min().unwrap());
                let children = g.comps(&(&r - &bag));
                (bag, children)
            }
        };
        let id = self.td.add_node(bag.to_vec());
        if let Some(p) = parent {
            self.td.add_edge(p, id);
        }
        for d in children {
            let iface = &g.open_nbhd(&d) & &bag;
            self.solve(d, iface, Some(id))?;
        }
        Ok(())
    }
}

/// Tree decomposition of `g` from a balanced-separator oracle. The oracle
/// receives weight functions uniform on a vertex subset of `g` and returns a
/// `(w, 1/2)`-balanced separator of `g`. Leaves are emitted once a piece has
/// at most `2s + 1` vertices, `s` the largest separator seen so far.
pub fn build_td<F>(g: &Graph, oracle: F) -> Result<BuiltTd>
where
    F: FnMut(&WeightFn) -> Result<VertexSet>,
{
    let mut b = Builder { g, oracle, cache: HashMap::new(), td: TreeDecomposition::new(), max_sep: 0, calls: 0 };
    if g.order() > 0 {
        b.solve(g.vertices().clone(), g.empty_set(), None)?;
    }
    Ok(BuiltTd { td: b.td, max_separator: b.max_sep, oracle_calls: b.calls })
}

/// Joins per-atom decompositions along the split tree: each cutset becomes
/// a bag adjacent to a bag containing it on every side.
pub fn glue_atoms(tree: &SplitTree, atom_tds: &[TreeDecomposition]) -> TreeDecomposition {
    match tree {
        SplitTree::Atom(i) => atom_tds[*i].clone(),
        SplitTree::Split { cutset, parts } => {
            let mut td = TreeDecomposition::new();
            let hub = td.add_node(cutset.to_vec());
            let cut = cutset.to_vec();
            for part in parts {
                let sub = glue_atoms(part, atom_tds);
                let at = sub.bags.iter().position(|b| cut.iter().all(|v| b.contains(v)));
                let off = td.absorb(&sub);
                if let Some(at) = at {
                    td.add_edge(hub, off + at);
                }
            }
            td
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certification {
    pub t: usize,
    pub td: TreeDecomposition,
    pub width: usize,
    pub validation: TdCheck,
    pub atoms: Vec<Vec<usize>>,
    pub separators: Vec<SeparatorCertificate>,
    pub max_separator: usize,
    pub oracle_calls: usize,
    /// `2 · max(1, max_separator)`: leaves hold at most `2s + 1` vertices.
    pub width_bound: usize,
    pub within_width_bound: bool,
    /// `(4t + 2b̂) · max(R(t,4) + 1, 6ω + b̂)` with measured `ω` and `b̂`.
    pub structural_bound: usize,
    pub exact_treewidth: Option<usize>,
}

/// Certified tree decomposition of a class member: clique-cutset atoms,
/// per-atom construction with the separator pipeline as oracle, gluing and
/// validation.
pub fn certify(g: &Graph, t: usize, variant: Variant) -> Result<Certification> {
    let report = class_membership(g, t, variant)?;
    if let Some(o) = report.obstruction {
        return Err(Error::Precondition(format!("graph contains {:?} on {:?}", o.kind, o.vertices)));
    }
    let atoms = clique_cutset_atoms(g);
    let mut separators = Vec::new();
    let mut tds = Vec::new();
    let (mut max_sep, mut calls) = (0, 0);
    for atom in &atoms.atoms {
        let ag = g.sub(atom);
        let built = build_td(&ag, |w| {
            let cert = main_separator(&ag, w, t)?;
            let x = ag.set(cert.separator.iter().copied());
            separators.push(cert);
            Ok(x)
        })?;
        max_sep = max_sep.max(built.max_separator);
        calls += built.oracle_calls;
        tds.push(built.td);
    }
    let td = glue_atoms(&atoms.tree, &tds);
    let validation = validate_td(g, &td);
    if !validation.pass {
        return Err(Error::Internal(format!("constructed decomposition is invalid: {validation:?}")));
    }
    let b_hat = separators
        .iter()
        .flat_map(|c| c.entries("v_m-hub-neighbors"))
        .map(|e| e.bound)
        .max()
        .unwrap_or(0);
    let omega = g.clique_number();
    let structural_bound = (4 * t + 2 * b_hat) * (ramsey_t4(t) + 1).max(6 * omega + b_hat);
    let exact = if g.order() <= EXACT_MAX_N { Some(exact_treewidth(g)?) } else { None };
    let width = td.width();
    Ok(Certification {
        t,
        width,
        validation,
        atoms: atoms.atoms.iter().map(VertexSet::to_vec).collect(),
        separators,
        max_separator: max_sep,
        oracle_calls: calls,
        width_bound: 2 * max_sep.max(1),
        within_width_bound: width <= 2 * max_sep.max(1),
        structural_bound,
        exact_treewidth: exact,
        td,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, NamedGraph};

    fn path_td(n: usize) -> TreeDecomposition {
        let mut td = TreeDecomposition::new();
        for i in 0..n - 1 {
            td.add_node(vec![i, i + 1]);
            if i > 0 {
                td.add_edge(i - 1, i);
            }
        }
        td
    }

    #[test]
    fn validate_examples() {
        let p9 = make(&NamedGraph::Path(9)).unwrap();
        let td = path_td(9);
        assert!(validate_td(&p9, &td).pass);
        assert_eq!(td.width(), 1);
        let mut broken = td.clone();
        broken.bags[3] = vec![3];
        assert_eq!(validate_td(&p9, &broken).condition, Some("edge-cover"));

        let c6 = make(&NamedGraph::Cycle(6)).unwrap();
        let mut td = TreeDecomposition::new();
        for (i, b) in [[0, 1, 5], [1, 2, 5], [2, 3, 5], [3, 4, 5]].iter().enumerate() {
            td.add_node(b.to_vec());
            if i > 0 {
                td.add_edge(i - 1, i);
            }
        }
        assert!(validate_td(&c6, &td).pass);
        assert_eq!(td.width(), 2);
        td.edges.pop();
        assert_eq!(validate_td(&c6, &td).condition, Some("tree"));
    }

    #[test]
    fn exact_examples() {
        let tw = |id| exact_treewidth(&make(&id).unwrap()).unwrap();
        assert_eq!(tw(NamedGraph::Path(9)), 1);
        assert_eq!(tw(NamedGraph::Cycle(6)), 2);
        assert_eq!(tw(NamedGraph::Complete(5)), 4);
        assert_eq!(tw(NamedGraph::Prism(1, 1, 1)), 3);
        let k = make(&NamedGraph::Complete(15)).unwrap();
        assert!(matches!(exact_treewidth(&k), Err(Error::Capacity { .. })));
    }

    #[test]
    fn certify_examples() {
        for (id, exact) in [(NamedGraph::Path(9), 1), (NamedGraph::Cycle(6), 2), (NamedGraph::W93, 3)] {
            let g = make(&id).unwrap();
            let c = certify(&g, 4, Variant::Ct).unwrap();
            assert!(c.validation.pass, "{id}");
            assert_eq!(c.exact_treewidth, Some(exact), "{id}");
            assert!(c.width >= exact, "{id}");
            assert!(c.within_width_bound, "{id}: width {} sep {}", c.width, c.max_separator);
        }
        let w5 = make(&NamedGraph::wheel_full(5)).unwrap();
        assert!(matches!(certify(&w5, 4, Variant::Ct), Err(Error::Precondition(_))));
    }

    #[test]
    fn glue_bowtie() {
        let g = make(&NamedGraph::Bowtie).unwrap();
        let c = certify(&g, 4, Variant::Ct).unwrap();
        assert_eq!(c.atoms, vec![vec![0, 1, 2], vec![0, 3, 4]]);
        assert_eq!(c.width, 2);
    }

    #[test]
    fn at_most_two() {
        for id in [NamedGraph::Path(9), NamedGraph::Cycle(6), NamedGraph::Theta(2, 3, 3), NamedGraph::Complete(3)] {
            assert!(treewidth_at_most_two(&make(&id).unwrap()), "{id}");
        }
        for id in [NamedGraph::Complete(4), NamedGraph::W93, NamedGraph::Prism(1, 1, 1)] {
            assert!(!treewidth_at_most_two(&make(&id).unwrap()), "{id}");
        }
    }
}
