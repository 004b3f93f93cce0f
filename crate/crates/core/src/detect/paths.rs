//! Theta, pyramid and prism detection by enumerating induced paths.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaWitness {
    pub a: usize,
    pub b: usize,
    /// Each path runs from `a` to `b`.
    pub paths: [Vec<usize>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidWitness {
    pub apex: usize,
    pub triangle: [usize; 3],
    /// Path `i` runs from the apex to `triangle[i]`.
    pub paths: [Vec<usize>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrismWitness {
    pub triangle_a: [usize; 3],
    pub triangle_b: [usize; 3],
    /// Path `i` runs from `triangle_a[i]` to `triangle_b[i]`.
    pub paths: [Vec<usize>; 3],
}

#[derive(Clone)]
struct IPath {
    seq: Vec<usize>,
    interior: VertexSet,
    // closed neighborhood of the interior
    reach: VertexSet,
}

impl IPath {
    fn end(&self) -> usize {
        *self.seq.last().unwrap()
    }
    fn len(&self) -> usize {
        self.seq.len() - 1
    }
}

/// Every induced path of `G[within]` starting at `a` with at least one edge,
/// in DFS order (neighbors ascending).
fn induced_paths_from(g: &Graph, a: usize, within: &VertexSet) -> Vec<IPath> {
    fn dfs(g: &Graph, within: &VertexSet, seq: &mut Vec<usize>, blocked: &VertexSet, out: &mut Vec<IPath>) {
        let tip = *seq.last().unwrap();
        let cands = &(g.nbrs(tip) & within) - blocked;
        let mut next_blocked = blocked.clone();
        next_blocked.union_with(&g.closed_nbrs(tip));
        for v in &cands {
            seq.push(v);
            let interior = g.set(seq[1..seq.len() - 1].iter().copied());
            let reach = g.closed_nbhd(&interior);
            out.push(IPath { seq: seq.clone(), interior, reach });
            dfs(g, within, seq, &next_blocked, out);
            seq.pop();
        }
    }
    let mut out = Vec::new();
    let mut seq = vec![a];
    let blocked = g.set([a]);
    dfs(g, within, &mut seq, &blocked, &mut out);
    out
}

fn compatible(p: &IPath, q: &IPath) -> bool {
    !p.reach.intersects(&q.interior)
}

/// First theta in (a, b, path-order) order, if any.
pub fn detect_theta(g: &Graph) -> Option<ThetaWitness> {
    detect_theta_in(g, g.vertices())
}

pub fn detect_theta_in(g: &Graph, within: &VertexSet) -> Option<ThetaWitness> {
    for a in within {
        if g.nbrs(a).intersection_len(within) < 3 {
            continue;
        }
        let paths = induced_paths_from(g, a, within);
        for b in within.iter().filter(|&b| b > a && !g.adjacent(a, b)) {
            if g.nbrs(b).intersection_len(within) < 3 {
                continue;
            }
            let to_b: Vec<&IPath> = paths.iter().filter(|p| p.end() == b && p.len() >= 2).collect();
            if let Some([p, q, r]) = triple(&to_b, |_| true) {
                return Some(ThetaWitness { a, b, paths: [p.seq.clone(), q.seq.clone(), r.seq.clone()] });
            }
        }
    }
    None
}

fn triple<'a>(cands: &[&'a IPath], accept: impl Fn(&[&IPath; 3]) -> bool) -> Option<[&'a IPath; 3]> {
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            if !compatible(cands[i], cands[j]) {
                continue;
            }
            for k in j + 1..cands.len() {
                let t = [cands[i], cands[j], cands[k]];
                if compatible(cands[i], cands[k]) && compatible(cands[j], cands[k]) && accept(&t) {
                    return Some(t);
                }
            }
        }
    }
    None
}

fn triangles(g: &Graph, within: &VertexSet) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in within {
        for b in (g.nbrs(a) & within).iter().filter(|&b| b > a) {
            for c in (&(g.nbrs(a) & g.nbrs(b)) & within).iter().filter(|&c| c > b) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub fn detect_pyramid(g: &Graph) -> Option<PyramidWitness> {
    detect_pyramid_in(g, g.vertices(), None)
}

/// Pyramids of `G[within]`, optionally restricted to a single apex.
pub fn detect_pyramid_in(g: &Graph, within: &VertexSet, apex: Option<usize>) -> Option<PyramidWitness> {
    let tris = triangles(g, within);
    if tris.is_empty() {
        return None;
    }
    let apexes: Vec<usize> = match apex {
        Some(a) if within.contains(a) => vec![a],
        Some(_) => vec![],
        None => within.to_vec(),
    };
    for a in apexes {
        if g.nbrs(a).intersection_len(within) < 3 {
            continue;
        }
        let paths = induced_paths_from(g, a, within);
        for tri in &tris {
            if tri.contains(&a) {
                continue;
            }
            let per: Vec<Vec<&IPath>> = (0..3)
                .map(|i| {
                    let others = g.closed_nbrs(tri[(i + 1) % 3]) | &g.closed_nbrs(tri[(i + 2) % 3]);
                    paths.iter().filter(|p| p.end() == tri[i] && !p.interior.intersects(&others)).collect()
                })
                .collect();
            if per.iter().any(|c| c.is_empty()) {
                continue;
            }
            for p in &per[0] {
                for q in per[1].iter().filter(|q| compatible(p, q)) {
                    for r in per[2].iter().filter(|r| compatible(p, r) && compatible(q, r)) {
                        let long = [p, q, r].iter().filter(|x| x.len() >= 2).count();
                        if long >= 2 {
                            return Some(PyramidWitness {
                                apex: a,
                                triangle: *tri,
                                paths: [p.seq.clone(), q.seq.clone(), r.seq.clone()],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

pub fn detect_prism(g: &Graph) -> Option<PrismWitness> {
    detect_prism_in(g, g.vertices())
}

pub fn detect_prism_in(g: &Graph, within: &VertexSet) -> Option<PrismWitness> {
    let tris = triangles(g, within);
    let mut cache: Vec<Option<Vec<IPath>>> = vec![None; g.universe()];
    for (i, ta) in tris.iter().enumerate() {
        for tb in &tris[i + 1..] {
            if ta.iter().any(|x| tb.contains(x)) {
                continue;
            }
            for perm in PERMS {
                let tb2 = [tb[perm[0]], tb[perm[1]], tb[perm[2]]];
                // a_i adjacent to b_j (i != j) is forbidden
                let cross = (0..3).any(|x| (0..3).any(|y| x != y && g.adjacent(ta[x], tb2[y])));
                if cross {
                    continue;
                }
                for &a in ta {
                    if cache[a].is_none() {
                        cache[a] = Some(induced_paths_from(g, a, within));
                    }
                }
                let per: Vec<Vec<&IPath>> = (0..3)
                    .map(|x| {
                        let mut others = g.empty_set();
                        for y in (0..3).filter(|&y| y != x) {
                            others.union_with(&g.closed_nbrs(ta[y]));
                            others.union_with(&g.closed_nbrs(tb2[y]));
                        }
                        cache[ta[x]]
                            .as_ref()
                            .unwrap()
                            .iter()
                            .filter(|p| p.end() == tb2[x] && !p.interior.intersects(&others))
                            .collect()
                    })
                    .collect();
                if per.iter().any(|c| c.is_empty()) {
                    continue;
                }
                for p in &per[0] {
                    for q in per[1].iter().filter(|q| compatible(p, q)) {
                        if let Some(r) = per[2].iter().find(|r| compatible(p, r) && compatible(q, r)) {
                            return Some(PrismWitness {
                                triangle_a: *ta,
                                triangle_b: tb2,
                                paths: [p.seq.clone(), q.seq.clone(), r.seq.clone()],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

fn is_induced_path(g: &Graph, p: &[usize]) -> bool {
    if p.is_empty() || !p.iter().all(|&v| g.has_vertex(v)) {
        return false;
    }
    let n = p.len();
    (0..n).all(|i| (i + 1..n).all(|j| g.adjacent(p[i], p[j]) == (j == i + 1)))
}

fn distinct(vs: impl IntoIterator<Item = usize>) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    vs.into_iter().all(|v| seen.insert(v))
}

/// Edges allowed between two sets; every other pair must be non-adjacent.
fn only_edges(g: &Graph, x: &[usize], y: &[usize], allowed: &[(usize, usize)]) -> bool {
    x.iter().all(|&u| {
        y.iter().all(|&v| {
            let ok = allowed.iter().any(|&(p, q)| (p, q) == (u, v) || (q, p) == (u, v));
            ok || !g.adjacent(u, v)
        })
    })
}

pub fn verify_theta(g: &Graph, w: &ThetaWitness) -> bool {
    let (a, b) = (w.a, w.b);
    if a == b || !g.has_vertex(a) || !g.has_vertex(b) || g.adjacent(a, b) {
        return false;
    }
    let ok_paths = w.paths.iter().all(|p| {
        p.len() >= 3 && p[0] == a && *p.last().unwrap() == b && is_induced_path(g, p)
    });
    if !ok_paths {
        return false;
    }
    let inner: Vec<&[usize]> = w.paths.iter().map(|p| &p[1..p.len() - 1]).collect();
    distinct(inner.iter().flat_map(|s| s.iter().copied()))
        && (0..3).all(|i| (i + 1..3).all(|j| only_edges(g, inner[i], inner[j], &[])))
}

pub fn verify_pyramid(g: &Graph, w: &PyramidWitness) -> bool {
    let [b1, b2, b3] = w.triangle;
    let a = w.apex;
    if !distinct([a, b1, b2, b3]) || !g.has_vertex(a) {
        return false;
    }
    if !(g.adjacent(b1, b2) && g.adjacent(b1, b3) && g.adjacent(b2, b3)) {
        return false;
    }
    let ok_paths = (0..3).all(|i| {
        let p = &w.paths[i];
        p.len() >= 2 && p[0] == a && *p.last().unwrap() == w.triangle[i] && is_induced_path(g, p)
    });
    if !ok_paths || w.paths.iter().filter(|p| p.len() >= 3).count() < 2 {
        return false;
    }
    let tails: Vec<&[usize]> = w.paths.iter().map(|p| &p[1..]).collect();
    distinct(tails.iter().flat_map(|s| s.iter().copied()))
        && (0..3).all(|i| {
            (i + 1..3).all(|j| only_edges(g, tails[i], tails[j], &[(w.triangle[i], w.triangle[j])]))
        })
}

pub fn verify_prism(g: &Graph, w: &PrismWitness) -> bool {
    let (ta, tb) = (w.triangle_a, w.triangle_b);
    if !distinct(ta.iter().chain(tb.iter()).copied()) {
        return false;
    }
    let tri = |t: [usize; 3]| g.adjacent(t[0], t[1]) && g.adjacent(t[0], t[2]) && g.adjacent(t[1], t[2]);
    if !tri(ta) || !tri(tb) {
        return false;
    }
    let ok_paths = (0..3).all(|i| {
        let p = &w.paths[i];
        p.len() >= 2 && p[0] == ta[i] && *p.last().unwrap() == tb[i] && is_induced_path(g, p)
    });
    ok_paths
        && distinct(w.paths.iter().flat_map(|p| p.iter().copied()))
        && (0..3).all(|i| {
            (i + 1..3).all(|j| only_edges(g, &w.paths[i], &w.paths[j], &[(ta[i], ta[j]), (tb[i], tb[j])]))
        })
}
