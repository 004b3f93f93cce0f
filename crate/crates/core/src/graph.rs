//! Immutable simple graphs over a fixed vertex universe.
//!
//! A [`Graph`] lives on universe `0..universe` and has a vertex set that may be
//! a proper subset of it. Induced subgraphs keep the same universe, so vertex
//! identities and [`VertexSet`]s are shared between a graph and all of its
//! induced subgraphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::VertexSet;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: VertexSet,
    // adj[v] is always a subset of `vertices`; empty for non-vertices.
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `0..n`.
    pub fn empty(n: usize) -> Self {
        Graph { vertices: VertexSet::full(n), adj: vec![VertexSet::empty(n); n] }
    }

    /// Graph on `0..n` with the given edges. Rejects loops and out-of-range
    /// endpoints; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!("edge ({u},{v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Input(format!("loop at vertex {u}")));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.adj.len()
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    #[inline]
    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices.contains(v)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].contains(v)
    }

    /// Open neighborhood of a single vertex.
    #[inline]
    pub fn nbrs(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn closed_nbrs(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.iter().flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.iter().map(|v| self.adj[v].len()).sum::<usize>() / 2
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.universe())
    }

    pub fn set<I: IntoIterator<Item = usize>>(&self, members: I) -> VertexSet {
        VertexSet::from_iter_in(self.universe(), members)
    }

    pub fn check_subset(&self, x: &VertexSet) -> Result<()> {
        if x.universe() != self.universe() {
            return Err(Error::Input(format!(
                "vertex set over universe {} used with a graph over universe {}",
                x.universe(),
                self.universe()
            )));
        }
        let stray = x - &self.vertices;
        if let Some(v) = stray.min() {
            return Err(Error::Input(format!("{v} is not a vertex of the graph")));
        }
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::Input(format!("{v} is not a vertex of the graph")))
        }
    }

    /// N(X) (open) or N[X] (closed), validated.
    pub fn neighborhood(&self, x: &VertexSet, closed: bool) -> Result<VertexSet> {
        self.check_subset(x)?;
        Ok(if closed { self.closed_nbhd(x) } else { self.open_nbhd(x) })
    }

    /// Vertices outside `x` with a neighbor in `x`.
    pub fn open_nbhd(&self, x: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in x {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(x);
        out
    }

    pub fn closed_nbhd(&self, x: &VertexSet) -> VertexSet {
        let mut out = x.clone();
        for v in x {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// Validated connected components of G[X], ordered by smallest member.
    pub fn components(&self, x: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_subset(x)?;
        Ok(self.comps(x))
    }

    /// Components of G[X] without input validation.
    pub fn comps(&self, x: &VertexSet) -> Vec<VertexSet> {
        let mut rest = x.clone();
        let mut out = Vec::new();
        while let Some(s) = rest.min() {
            let c = self.reach(s, &rest);
            rest.difference_with(&c);
            out.push(c);
        }
        out
    }

    /// The component of G[within] containing `s` (`s` must lie in `within`).
    pub fn reach(&self, s: usize, within: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(self.universe(), s);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = self.empty_set();
            for v in &frontier {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(within);
            next.difference_with(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        comp
    }

    pub fn is_connected_set(&self, x: &VertexSet) -> bool {
        match x.min() {
            None => true,
            Some(s) => self.reach(s, x).len() == x.len(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_set(&self.vertices)
    }

    pub fn is_clique(&self, x: &VertexSet) -> bool {
        x.iter().all(|v| {
            let mut rest = x.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_independent(&self, x: &VertexSet) -> bool {
        x.iter().all(|v| !self.adj[v].intersects(x))
    }

    /// True when no edge joins `x` and `y`.
    pub fn anticomplete(&self, x: &VertexSet, y: &VertexSet) -> bool {
        x.iter().all(|v| !self.adj[v].intersects(y))
    }

    /// Validated induced subgraph; identities are preserved.
    pub fn induced(&self, x: &VertexSet) -> Result<Graph> {
        self.check_subset(x)?;
        Ok(self.sub(x))
    }

    /// Induced subgraph without validation (`x` is clipped to the vertex set).
    pub fn sub(&self, x: &VertexSet) -> Graph {
        let vertices = x & &self.vertices;
        let adj = (0..self.universe())
            .map(|v| if vertices.contains(v) { &self.adj[v] & &vertices } else { VertexSet::empty(self.universe()) })
            .collect();
        Graph { vertices, adj }
    }

    /// Copy of the graph with the edge `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.adj[u].remove(v);
        g.adj[v].remove(u);
        g
    }

    /// Copy of the graph with the edge `uv` added (both must be vertices, distinct).
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        assert!(u != v && self.has_vertex(u) && self.has_vertex(v));
        let mut g = self.clone();
        g.adj[u].insert(v);
        g.adj[v].insert(u);
        g
    }

    /// Relabels the vertices to `0..order()` in increasing id order. Returns
    /// the compact graph and the map from new ids back to old ones.
    pub fn compact(&self) -> (Graph, Vec<usize>) {
        let back: Vec<usize> = self.vertices.to_vec();
        let mut fwd = vec![usize::MAX; self.universe()];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let edges: Vec<(usize, usize)> = self.edges().map(|(u, v)| (fwd[u], fwd[v])).collect();
        let g = Graph::from_edges(back.len(), &edges).expect("relabelled edges are valid");
        (g, back)
    }

    /// Size of a largest clique, by growing `t` until no `K_t` remains.
    pub fn clique_number(&self) -> usize {
        let mut t = 0;
        while crate::detect::find_clique(self, t + 1).is_some() {
            t += 1;
        }
        t
    }
}

/// Plain edge-list view used by the JSON writers.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList { n: g.universe(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, NamedGraph};

    fn p9() -> Graph {
        make(&NamedGraph::Path(9)).unwrap()
    }

    #[test]
    fn neighborhood_examples() {
        let g = p9();
        let x = g.set([4]);
        assert_eq!(g.neighborhood(&x, false).unwrap().to_vec(), vec![3, 5]);

        let c6 = make(&NamedGraph::Cycle(6)).unwrap();
        assert_eq!(c6.neighborhood(&c6.set([0]), true).unwrap().to_vec(), vec![0, 1, 5]);

        let w = make(&NamedGraph::W93).unwrap();
        assert_eq!(w.neighborhood(&w.set([9]), false).unwrap().to_vec(), vec![0, 3, 6]);
    }

    #[test]
    fn neighborhood_rejects_non_vertex() {
        let g = p9();
        let bad = VertexSet::from_iter_in(9, [4]);
        let sub = g.sub(&g.set([0, 1, 2]));
        assert!(matches!(sub.neighborhood(&bad, false), Err(Error::Input(_))));
        let wrong_universe = VertexSet::from_iter_in(20, [1]);
        assert!(g.neighborhood(&wrong_universe, true).is_err());
    }

    #[test]
    fn components_examples() {
        let g = p9();
        let x = g.vertices() - &g.closed_nbrs(4);
        let comps: Vec<_> = g.components(&x).unwrap().iter().map(|c| c.to_vec()).collect();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![6, 7, 8]]);

        let w = make(&NamedGraph::W93).unwrap();
        let x = w.vertices() - &w.closed_nbrs(9);
        let comps: Vec<_> = w.components(&x).unwrap().iter().map(|c| c.to_vec()).collect();
        assert_eq!(comps, vec![vec![1, 2], vec![4, 5], vec![7, 8]]);

        let c6 = make(&NamedGraph::Cycle(6)).unwrap();
        assert_eq!(c6.components(c6.vertices()).unwrap().len(), 1);
    }

    #[test]
    fn induced_examples() {
        let c6 = make(&NamedGraph::Cycle(6)).unwrap();
        let p = c6.induced(&c6.set([0, 1, 2])).unwrap();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);

        let d = make(&NamedGraph::Diamond).unwrap();
        // 1 and 2 are the degree-3 vertices
        let tri = d.induced(&d.set([0, 1, 2])).unwrap();
        assert!(tri.is_clique(tri.vertices()));

        let w = make(&NamedGraph::W93).unwrap();
        let c9 = w.induced(&w.set(0..9)).unwrap();
        assert_eq!(c9.edge_count(), 9);
        assert!(c9.vertices().iter().all(|v| c9.degree(v) == 2));
        assert_eq!(w.induced(w.vertices()).unwrap(), w);
    }

    #[test]
    fn from_edges_rejects_loops_and_range() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        let g = Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn compact_roundtrip() {
        let w = make(&NamedGraph::W93).unwrap();
        let sub = w.sub(&w.set([1, 2, 3, 9]));
        let (c, back) = sub.compact();
        assert_eq!(back, vec![1, 2, 3, 9]);
        assert_eq!(c.order(), 4);
        assert_eq!(c.edge_count(), sub.edge_count());
    }
}
