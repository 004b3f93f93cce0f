//! Clique-cutset atoms, the star cutset forced by a proper wheel, and the
//! three-vertex attachment trichotomy.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::detect::{is_hole, kinds_of, Sector, WheelWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

/// How a vertex set was split. Leaves index into [`AtomDecomposition::atoms`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitTree {
    Atom(usize),
    /// `cutset` is a clique (possibly empty) of the stage graph; every part
    /// contains it.
    Split { cutset: VertexSet, parts: Vec<SplitTree> },
}

#[derive(Debug, Clone, Serialize)]
pub struct AtomDecomposition {
    pub atoms: Vec<VertexSet>,
    pub cutsets: Vec<VertexSet>,
    pub tree: SplitTree,
}

/// Minimal separators of `g`, generated by neighborhood closure, stopping at
/// the first one accepted by `stop`.
fn scan_minimal_separators(g: &Graph, mut stop: impl FnMut(&VertexSet) -> bool) -> Option<VertexSet> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<VertexSet> = VecDeque::new();
    let mut push = |s: VertexSet, queue: &mut VecDeque<VertexSet>| -> Option<VertexSet> {
        if s.is_empty() || !seen.insert(s.to_vec()) {
            return None;
        }
        if stop(&s) {
            return Some(s);
        }
        queue.push_back(s);
        None
    };
    for v in g.vertices() {
        let rest = g.vertices() - &g.closed_nbrs(v);
        for c in g.comps(&rest) {
            if let Some(s) = push(g.open_nbhd(&c), &mut queue) {
                return Some(s);
            }
        }
    }
    while let Some(s) = queue.pop_front() {
        for x in &s {
            let rest = &(g.vertices() - &s) - g.nbrs(x);
            for c in g.comps(&rest) {
                if let Some(found) = push(g.open_nbhd(&c), &mut queue) {
                    return Some(found);
                }
            }
        }
    }
    None
}

/// First clique minimal separator of a connected graph, if any.
pub fn find_clique_cutset(g: &Graph) -> Option<VertexSet> {
    scan_minimal_separators(g, |s| g.is_clique(s))
}

/// Whether `g` (taken as is) has a clique cutset; disconnected graphs have
/// the empty one.
pub fn has_clique_cutset(g: &Graph) -> bool {
    !g.is_connected() || find_clique_cutset(g).is_some()
}

/// Decomposes along clique cutsets until every piece is an atom.
pub fn clique_cutset_atoms(g: &Graph) -> AtomDecomposition {
    let mut atoms = Vec::new();
    let mut cutsets = Vec::new();
    let tree = split(g, g.vertices().clone(), &mut atoms, &mut cutsets);
    AtomDecomposition { atoms, cutsets, tree }
}

fn split(g: &Graph, x: VertexSet, atoms: &mut Vec<VertexSet>, cutsets: &mut Vec<VertexSet>) -> SplitTree {
    let comps = g.comps(&x);
    if comps.len() > 1 {
        let empty = g.empty_set();
        cutsets.push(empty.clone());
        let parts = comps.into_iter().map(|c| split(g, c, atoms, cutsets)).collect();
        return SplitTree::Split { cutset: empty, parts };
    }
    let sub = g.sub(&x);
    let Some(s) = find_clique_cutset(&sub) else {
        atoms.push(x);
        return SplitTree::Atom(atoms.len() - 1);
    };
    let rest = &x - &s;
    let comps = sub.comps(&rest);
    let full = comps
        .iter()
        .find(|c| sub.open_nbhd(c) == s)
        .cloned()
        .unwrap_or_else(|| comps[0].clone());
    let first = &full | &s;
    let second = &x - &full;
    cutsets.push(s.clone());
    let parts = vec![split(g, first, atoms, cutsets), split(g, second, atoms, cutsets)];
    SplitTree::Split { cutset: s, parts }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcerCutset {
    pub center: usize,
    pub hole: Vec<usize>,
    /// Sector path from `x1` to `x2`.
    pub sector: Vec<usize>,
    pub w: Vec<usize>,
    pub z: Vec<usize>,
    /// N' ∪ {x}.
    pub cutset: Vec<usize>,
    /// Component of `G ∖ cutset` containing the sector interior.
    pub sector_side: Vec<usize>,
}

/// Lexicographically least long sector of a wheel witness.
pub fn default_sector(w: &WheelWitness) -> Option<&Sector> {
    w.sectors.iter().filter(|s| s.long).min_by(|a, b| a.path.cmp(&b.path))
}

/// The cutset `N' ∪ {x}` separating the sector interior from `W ∪ Z`.
/// `sector` runs from `x1` to `x2`; pass `None` for the default sector.
pub fn forcer_cutset(g: &Graph, witness: &WheelWitness, sector: Option<&[usize]>) -> Result<ForcerCutset> {
    let x = witness.center;
    let hole = &witness.hole;
    if !is_hole(g, hole) || !g.has_vertex(x) {
        return Err(Error::Precondition("wheel witness does not re-verify".into()));
    }
    let kinds = kinds_of(g, hole, x);
    if !kinds.wheel || !kinds.proper {
        return Err(Error::Precondition("forcer cutset needs a proper wheel".into()));
    }
    if kinds.universal {
        return Err(Error::Precondition("forcer cutset excludes universal wheels".into()));
    }
    let q: Vec<usize> = match sector {
        Some(q) => q.to_vec(),
        None => default_sector(witness).map(|s| s.path.clone()).ok_or_else(|| Error::Internal("no long sector".into()))?,
    };
    let is_sector = witness.sectors.iter().any(|s| {
        s.long && (s.path == q || s.path.iter().rev().copied().collect::<Vec<_>>() == q)
    });
    if !is_sector {
        return Err(Error::Precondition(format!("{q:?} is not a long sector of the wheel")));
    }
    let (x1, x2) = (q[0], *q.last().unwrap());
    let n = hole.len();
    let p1 = hole.iter().position(|&h| h == x1).unwrap();
    let p2 = hole.iter().position(|&h| h == x2).unwrap();
    // walk from x2 away from x1 (the sector side dead-ends at x1)
    let step = if hole[(p2 + 1) % n] == q[q.len() - 2] { n - 1 } else { 1 };
    let mut w_set = Vec::new();
    let mut count = 0;
    let mut i = p2;
    while i != p1 {
        if g.adjacent(x, hole[i]) {
            count += 1;
            if count % 2 == 0 {
                w_set.push(hole[i]);
            }
        }
        i = (i + step) % n;
    }
    let on_q = g.set(q.iter().copied());
    let wv = g.set(w_set.iter().copied());
    let z = g.set(hole.iter().copied().filter(|&h| !on_q.contains(h) && !g.adjacent(x, h)));
    let mut cut = g.nbrs(x) - &wv;
    cut.insert(x);
    let q_int = g.set(q[1..q.len() - 1].iter().copied());
    let targets = &wv | &z;
    let rest = g.vertices() - &cut;
    let side = g.reach(q_int.min().unwrap(), &rest);
    if side.intersects(&targets) || !q_int.is_subset(&side) {
        let path = bfs_path(g, &rest, &q_int, &targets).unwrap_or_default();
        return Err(Error::violation("forcer-cutset", "sector interior reaches W ∪ Z", path));
    }
    Ok(ForcerCutset {
        center: x,
        hole: hole.clone(),
        sector: q,
        w: wv.to_vec(),
        z: z.to_vec(),
        cutset: cut.to_vec(),
        sector_side: side.to_vec(),
    })
}

/// Shortest path inside `within` from any vertex of `from` to any of `to`.
pub fn bfs_path(g: &Graph, within: &VertexSet, from: &VertexSet, to: &VertexSet) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.universe()];
    let mut queue = VecDeque::new();
    let mut seen = g.empty_set();
    for s in from & within {
        seen.insert(s);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if to.contains(u) {
            let mut path = vec![u];
            let mut cur = u;
            while prev[cur] != usize::MAX {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for v in &(g.nbrs(u) & within) {
            if seen.insert(v) {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Attachment {
    /// `path` runs from `x_i` to `x_j` (closing into a hole when `hole`).
    I { i: usize, j: usize, k: usize, path: Vec<usize>, hole: bool },
    /// Paths from the branch vertex `a` to `x_1, x_2, x_3`.
    Ii { a: usize, paths: [Vec<usize>; 3] },
    /// Paths from `triangle[i]` to `x_i`.
    Iii { triangle: [usize; 3], paths: [Vec<usize>; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trichotomy {
    pub h: Vec<usize>,
    pub attachment: Attachment,
}

impl Trichotomy {
    pub fn case(&self) -> &'static str {
        match self.attachment {
            Attachment::I { .. } => "i",
            Attachment::Ii { .. } => "ii",
            Attachment::Iii { .. } => "iii",
        }
    }
}

fn attaches(g: &Graph, h: &VertexSet, xs: &[usize; 3]) -> bool {
    xs.iter().all(|&x| g.nbrs(x).intersects(h))
}

/// Greedy deletion in increasing id order, repeated to a fixed point.
pub fn minimal_attachment(g: &Graph, xs: &[usize; 3], d: &VertexSet) -> VertexSet {
    let mut h = d.clone();
    loop {
        let mut changed = false;
        for v in h.to_vec() {
            let mut smaller = h.clone();
            smaller.remove(v);
            if !smaller.is_empty() && g.is_connected_set(&smaller) && attaches(g, &smaller, xs) {
                h = smaller;
                changed = true;
            }
        }
        if !changed {
            return h;
        }
    }
}

pub fn attachment_trichotomy(g: &Graph, xs: [usize; 3], d: &VertexSet) -> Result<Trichotomy> {
    for &x in &xs {
        g.check_vertex(x)?;
    }
    g.check_subset(d)?;
    if xs[0] == xs[1] || xs[0] == xs[2] || xs[1] == xs[2] {
        return Err(Error::Precondition("attachment vertices must be distinct".into()));
    }
    if xs.iter().any(|&x| d.contains(x)) || d.is_empty() || !g.is_connected_set(d) || !attaches(g, d, &xs) {
        return Err(Error::Precondition(
            "D must be connected, avoid x1,x2,x3 and contain a neighbor of each".into(),
        ));
    }
    let h = minimal_attachment(g, &xs, d);
    let attachment = case_one(g, &xs, &h)
        .or_else(|| case_two(g, &xs, &h))
        .or_else(|| case_three(g, &xs, &h))
        .ok_or_else(|| Error::Internal(format!("attachment of {xs:?} to {h:?} matches no case")))?;
    Ok(Trichotomy { h: h.to_vec(), attachment })
}

/// Orders `set` as a path from `start` to `end`, if it induces one.
fn as_path(g: &Graph, set: &VertexSet, start: usize, end: usize) -> Option<Vec<usize>> {
    let mut seq = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while cur != end {
        let next: Vec<usize> = (g.nbrs(cur) & set).iter().filter(|&v| v != prev).collect();
        if next.len() != 1 {
            return None;
        }
        prev = cur;
        cur = next[0];
        seq.push(cur);
    }
    let edges: usize = set.iter().map(|v| g.nbrs(v).intersection_len(set)).sum::<usize>() / 2;
    (seq.len() == set.len() && edges + 1 == seq.len()).then_some(seq)
}

fn case_one(g: &Graph, xs: &[usize; 3], h: &VertexSet) -> Option<Attachment> {
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let (xi, xj, xk) = (xs[i], xs[j], xs[k]);
        let mut span = h.clone();
        span.insert(xi);
        span.insert(xj);
        let hole = g.adjacent(xi, xj);
        let seq = if hole {
            // drop the xi-xj edge and read the rest as a path
            let g2 = g.without_edge(xi, xj);
            as_path(&g2, &span, xi, xj).filter(|s| s.len() >= 4 && is_hole(g, s))
        } else {
            as_path(g, &span, xi, xj)
        };
        let Some(path) = seq else { continue };
        // two non-adjacent neighbors, or exactly two adjacent ones
        let nv = (g.nbrs(xk) & h).to_vec();
        let has_nonadj = nv.iter().enumerate().any(|(a, &u)| nv[a + 1..].iter().any(|&v| !g.adjacent(u, v)));
        if has_nonadj || nv.len() == 2 {
            return Some(Attachment::I { i: i + 1, j: j + 1, k: k + 1, path, hole });
        }
    }
    None
}

fn shortest(g: &Graph, within: &VertexSet, s: usize, t: usize) -> Option<Vec<usize>> {
    bfs_path(g, within, &g.set([s]), &g.set([t]))
}

/// No edges between `p` and `q` except the listed ones.
fn clean(g: &Graph, p: &[usize], q: &[usize], allowed: &[(usize, usize)]) -> bool {
    p.iter().all(|&u| {
        q.iter().all(|&v| {
            u != v && (!g.adjacent(u, v) || allowed.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v)))
        })
    })
}

fn covers(g: &Graph, h: &VertexSet, xs: &[usize; 3], paths: &[Vec<usize>; 3]) -> bool {
    let mut all = h.clone();
    for &x in xs {
        all.insert(x);
    }
    g.set(paths.iter().flatten().copied()) == all
}

fn case_two(g: &Graph, xs: &[usize; 3], h: &VertexSet) -> Option<Attachment> {
    for a in h {
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for i in 0..3 {
            let mut within = h.clone();
            within.insert(xs[i]);
            paths.push(shortest(g, &within, a, xs[i])?);
        }
        let paths: [Vec<usize>; 3] = paths.try_into().unwrap();
        if !covers(g, h, xs, &paths) {
            continue;
        }
        let ok = (0..3).all(|i| {
            (i + 1..3).all(|j| clean(g, &paths[i][1..], &paths[j][1..], &[(xs[i], xs[j])]))
        });
        if ok {
            return Some(Attachment::Ii { a, paths });
        }
    }
    None
}

fn case_three(g: &Graph, xs: &[usize; 3], h: &VertexSet) -> Option<Attachment> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let hv = h.to_vec();
    for (ai, &a) in hv.iter().enumerate() {
        for (bi, &b) in hv.iter().enumerate().skip(ai + 1) {
            if !g.adjacent(a, b) {
                continue;
            }
            for &c in hv.iter().skip(bi + 1) {
                if !(g.adjacent(a, c) && g.adjacent(b, c)) {
                    continue;
                }
                let tri = [a, b, c];
                'perm: for perm in PERMS {
                    let t = [tri[perm[0]], tri[perm[1]], tri[perm[2]]];
                    let mut paths: Vec<Vec<usize>> = Vec::new();
                    for i in 0..3 {
                        let mut within = h.clone();
                        within.remove(t[(i + 1) % 3]);
                        within.remove(t[(i + 2) % 3]);
                        within.insert(xs[i]);
                        match shortest(g, &within, t[i], xs[i]) {
                            Some(p) => paths.push(p),
                            None => continue 'perm,
                        }
                    }
                    let paths: [Vec<usize>; 3] = paths.try_into().unwrap();
                    if !covers(g, h, xs, &paths) {
                        continue;
                    }
                    let ok = (0..3).all(|i| {
                        (i + 1..3).all(|j| clean(g, &paths[i], &paths[j], &[(t[i], t[j]), (xs[i], xs[j])]))
                    });
                    if ok {
                        return Some(Attachment::Iii { triangle: t, paths });
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::classify_wheels;
    use crate::generators::{make, NamedGraph};

    fn sets(v: &[VertexSet]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = v.iter().map(|s| s.to_vec()).collect();
        out.sort();
        out
    }

    #[test]
    fn atoms_of_named_graphs() {
        let p9 = make(&NamedGraph::Path(9)).unwrap();
        let d = clique_cutset_atoms(&p9);
        assert_eq!(sets(&d.atoms), (0..8).map(|i| vec![i, i + 1]).collect::<Vec<_>>());
        let c6 = make(&NamedGraph::Cycle(6)).unwrap();
        assert_eq!(clique_cutset_atoms(&c6).atoms.len(), 1);
        let bow = make(&NamedGraph::Bowtie).unwrap();
        let d = clique_cutset_atoms(&bow);
        assert_eq!(sets(&d.atoms), vec![vec![0, 1, 2], vec![0, 3, 4]]);
        assert_eq!(d.cutsets, vec![bow.set([0])]);
    }

    #[test]
    fn w93_forcer() {
        let g = make(&NamedGraph::W93).unwrap();
        let w = classify_wheels(&g).remove(0);
        let f = forcer_cutset(&g, &w, Some(&[0, 1, 2, 3])).unwrap();
        assert_eq!(f.w, vec![6]);
        assert_eq!(f.z, vec![4, 5, 7, 8]);
        assert_eq!(f.cutset, vec![0, 3, 9]);
        assert_eq!(f.sector_side, vec![1, 2]);
        let f = forcer_cutset(&g, &w, Some(&[3, 4, 5, 6])).unwrap();
        assert_eq!(f.cutset, vec![3, 6, 9]);
        assert_eq!(f.sector_side, vec![4, 5]);
    }

    #[test]
    fn forcer_rejects_universal() {
        let g = make(&NamedGraph::wheel_full(6)).unwrap();
        let w = crate::detect::analyze(&g, &[0, 1, 2, 3, 4, 5], 6).unwrap();
        assert!(matches!(forcer_cutset(&g, &w, None), Err(Error::Precondition(_))));
    }

    #[test]
    fn trichotomy_examples() {
        // star: center 0, leaves 1,2,3
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = attachment_trichotomy(&g, [1, 2, 3], &g.set([0])).unwrap();
        assert_eq!(t.case(), "ii");
        // triangle 0,1,2 with pendants 3,4,5
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let t = attachment_trichotomy(&g, [3, 4, 5], &g.set([0, 1, 2])).unwrap();
        assert_eq!(t.case(), "iii");
        // path d1-d2-d3 = 0-1-2, x1=3 on d1, x2=4 on d3, x3=5 on d1 and d3
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 0), (4, 2), (5, 0), (5, 2)]).unwrap();
        let t = attachment_trichotomy(&g, [3, 4, 5], &g.set([0, 1, 2])).unwrap();
        assert_eq!(t.case(), "i");
        // x3 on d2 only: the minimal H is a subdivided claw around d2
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 0), (4, 2), (5, 1)]).unwrap();
        let t = attachment_trichotomy(&g, [3, 4, 5], &g.set([0, 1, 2])).unwrap();
        assert_eq!(t.case(), "ii");
    }
}
