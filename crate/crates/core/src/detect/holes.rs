use std::ops::ControlFlow;

use crate::graph::Graph;
use crate::set::VertexSet;

/// Calls `f` on every hole of `G[within]`, by increasing length and, within a
/// length, in lexicographic order of the canonical sequence (smallest vertex
/// first, second vertex smaller than the last).
pub fn for_each_hole<F>(g: &Graph, within: &VertexSet, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let within = within & g.vertices();
    let n = within.len();
    for len in 4..=n {
        for s in &within {
            let mut blocked = g.empty_set();
            for u in (0..=s).filter(|&u| u < g.universe()) {
                blocked.insert(u);
            }
            blocked.union_with(&(g.vertices() - &within));
            let mut search = Search { g, target: len, path: vec![s], f: &mut f };
            search.extend(&blocked)?;
        }
    }
    ControlFlow::Continue(())
}

struct Search<'a, F> {
    g: &'a Graph,
    target: usize,
    path: Vec<usize>,
    f: &'a mut F,
}

impl<F> Search<'_, F>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    // `blocked` = ids <= start, vertices outside `within`, and N[p_i] for
    // every interior path vertex except the tip.
    fn extend(&mut self, blocked: &VertexSet) -> ControlFlow<()> {
        let k = self.path.len();
        let s = self.path[0];
        let tip = self.path[k - 1];
        let cands = self.g.nbrs(tip) - blocked;
        for v in &cands {
            if k >= 2 && self.g.adjacent(v, s) {
                if k >= 3 && k + 1 == self.target && v > self.path[1] {
                    self.path.push(v);
                    let r = (self.f)(&self.path);
                    self.path.pop();
                    r?;
                }
                continue;
            }
            if k + 1 >= self.target {
                continue;
            }
            let mut next = blocked.clone();
            if k >= 2 {
                next.union_with(&self.g.closed_nbrs(tip));
            }
            self.path.push(v);
            let r = self.extend(&next);
            self.path.pop();
            r?;
        }
        ControlFlow::Continue(())
    }
}

pub fn all_holes(g: &Graph, within: &VertexSet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_hole(g, within, |h| {
        out.push(h.to_vec());
        ControlFlow::Continue(())
    });
    out
}

pub fn first_hole(g: &Graph, within: &VertexSet) -> Option<Vec<usize>> {
    let mut out = None;
    let _ = for_each_hole(g, within, |h| {
        out = Some(h.to_vec());
        ControlFlow::Break(())
    });
    out
}

/// Whether `cycle` is an induced cycle of length at least four.
pub fn is_hole(g: &Graph, cycle: &[usize]) -> bool {
    let n = cycle.len();
    if n < 4 || !cycle.iter().all(|&v| g.has_vertex(v)) {
        return false;
    }
    let mut seen = g.empty_set();
    for &v in cycle {
        if !seen.insert(v) {
            return false;
        }
    }
    (0..n).all(|i| {
        (0..n).filter(|&j| j != i).all(|j| {
            let d = (i + n - j) % n;
            g.adjacent(cycle[i], cycle[j]) == (d == 1 || d == n - 1)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, NamedGraph};

    #[test]
    fn cycle_has_one_hole() {
        let g = make(&NamedGraph::Cycle(7)).unwrap();
        let holes = all_holes(&g, g.vertices());
        assert_eq!(holes, vec![vec![0, 1, 2, 3, 4, 5, 6]]);
        assert!(is_hole(&g, &holes[0]));
    }

    #[test]
    fn w93_holes_by_length() {
        let g = make(&NamedGraph::W93).unwrap();
        let holes = all_holes(&g, g.vertices());
        // three 5-holes through the hub plus the rim
        assert_eq!(holes.len(), 4);
        assert_eq!(holes[0].len(), 5);
        assert_eq!(holes[3].len(), 9);
        assert!(holes.iter().all(|h| is_hole(&g, h)));
    }

    #[test]
    fn trees_and_cliques_have_none() {
        let p = make(&NamedGraph::Path(9)).unwrap();
        assert!(first_hole(&p, p.vertices()).is_none());
        let k = make(&NamedGraph::Complete(5)).unwrap();
        assert!(first_hole(&k, k.vertices()).is_none());
    }
}
