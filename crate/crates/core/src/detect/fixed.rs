use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedPattern {
    C4,
    Diamond,
    Clique(usize),
}

/// Lexicographically least induced copy of a small fixed pattern.
///
/// Embedding order: `C4` is returned in cyclic order starting from its
/// smallest vertex; `Diamond` as `[a, b, c, d]` with `bc` the middle edge
/// and `ad` the missing one; `Clique(t)` ascending.
pub fn detect_fixed(g: &Graph, pattern: FixedPattern) -> Option<Vec<usize>> {
    match pattern {
        FixedPattern::C4 => find_c4(g),
        FixedPattern::Diamond => find_diamond(g),
        FixedPattern::Clique(t) => find_clique(g, t),
    }
}

fn sorted4(mut v: [usize; 4]) -> [usize; 4] {
    v.sort_unstable();
    v
}

fn find_c4(g: &Graph) -> Option<Vec<usize>> {
    let mut best: Option<([usize; 4], Vec<usize>)> = None;
    for a in g.vertices() {
        for c in g.vertices().iter().filter(|&c| c > a && !g.adjacent(a, c)) {
            let common = g.nbrs(a) & g.nbrs(c);
            let cs = common.to_vec();
            for (i, &b) in cs.iter().enumerate() {
                for &d in &cs[i + 1..] {
                    if g.adjacent(b, d) {
                        continue;
                    }
                    let key = sorted4([a, b, c, d]);
                    if best.as_ref().is_none_or(|(k, _)| key < *k) {
                        best = Some((key, cyclic_from_min(vec![a, b, c, d])));
                    }
                }
            }
        }
    }
    best.map(|(_, e)| e)
}

fn cyclic_from_min(cycle: Vec<usize>) -> Vec<usize> {
    let n = cycle.len();
    let i = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let fwd: Vec<usize> = (0..n).map(|k| cycle[(i + k) % n]).collect();
    let bwd: Vec<usize> = (0..n).map(|k| cycle[(i + n - k) % n]).collect();
    fwd.min(bwd)
}

fn find_diamond(g: &Graph) -> Option<Vec<usize>> {
    let mut best: Option<([usize; 4], Vec<usize>)> = None;
    for (b, c) in g.edges() {
        let cs = (g.nbrs(b) & g.nbrs(c)).to_vec();
        for (i, &a) in cs.iter().enumerate() {
            for &d in &cs[i + 1..] {
                if g.adjacent(a, d) {
                    continue;
                }
                let key = sorted4([a, b, c, d]);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, vec![a, b, c, d]));
                }
            }
        }
    }
    best.map(|(_, e)| e)
}

/// Lexicographically least clique of size `t` (ascending), if any.
pub fn find_clique(g: &Graph, t: usize) -> Option<Vec<usize>> {
    fn grow(g: &Graph, cand: crate::set::VertexSet, t: usize, acc: &mut Vec<usize>) -> bool {
        if acc.len() == t {
            return true;
        }
        if acc.len() + cand.len() < t {
            return false;
        }
        for v in &cand {
            acc.push(v);
            let mut next = &cand & g.nbrs(v);
            // only larger ids, so the first clique found is lexicographically least
            for u in cand.iter().take_while(|&u| u <= v) {
                next.remove(u);
            }
            if grow(g, next, t, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::with_capacity(t);
    if grow(g, g.vertices().clone(), t, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

/// Re-checks an embedding against the pattern by direct adjacency tests.
pub fn verify_fixed(g: &Graph, pattern: FixedPattern, emb: &[usize]) -> bool {
    let distinct = {
        let mut s = emb.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == emb.len()
    };
    if !distinct || !emb.iter().all(|&v| g.has_vertex(v)) {
        return false;
    }
    match pattern {
        FixedPattern::C4 => {
            emb.len() == 4
                && (0..4).all(|i| g.adjacent(emb[i], emb[(i + 1) % 4]))
                && !g.adjacent(emb[0], emb[2])
                && !g.adjacent(emb[1], emb[3])
        }
        FixedPattern::Diamond => {
            let [a, b, c, d] = match emb {
                &[a, b, c, d] => [a, b, c, d],
                _ => return false,
            };
            g.adjacent(b, c)
                && g.adjacent(a, b)
                && g.adjacent(a, c)
                && g.adjacent(d, b)
                && g.adjacent(d, c)
                && !g.adjacent(a, d)
        }
        FixedPattern::Clique(t) => {
            emb.len() == t && emb.iter().enumerate().all(|(i, &u)| emb[i + 1..].iter().all(|&v| g.adjacent(u, v)))
        }
    }
}
