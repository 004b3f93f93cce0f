//! Star separations, balanced vertices, canonical separations and the
//! partial order on unbalanced vertices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;
use crate::weight::{half, Weight, WeightFn};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub a: VertexSet,
    pub c: VertexSet,
    pub b: VertexSet,
    pub center: Option<usize>,
}

impl Separation {
    /// Partition, disjointness, `A` anticomplete to `B`, and `v ∈ C ⊆ N[v]`
    /// when a center is present.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let all = &(&self.a | &self.b) | &self.c;
        if all != *g.vertices() {
            return Err(Error::Input("separation sides do not cover V(G)".into()));
        }
        if self.a.len() + self.b.len() + self.c.len() != g.order() {
            return Err(Error::Input("separation sides overlap".into()));
        }
        if !g.anticomplete(&self.a, &self.b) {
            return Err(Error::Input("A is not anticomplete to B".into()));
        }
        if let Some(v) = self.center {
            if !self.c.contains(v) || !self.c.is_subset(&g.closed_nbrs(v)) {
                return Err(Error::Input(format!("C is not a star around {v}")));
            }
        }
        Ok(())
    }

    pub fn bc(&self) -> VertexSet {
        &self.b | &self.c
    }
}

/// Every component of `G \ N[v]` weighs at most 1/2.
pub fn is_balanced_vertex(g: &Graph, w: &WeightFn, v: usize) -> bool {
    let rest = g.vertices() - &g.closed_nbrs(v);
    g.comps(&rest).iter().all(|d| w.sum(d).le(half()))
}

/// `(balanced, unbalanced)` vertex sets.
pub fn classify_balanced(g: &Graph, w: &WeightFn) -> (VertexSet, VertexSet) {
    let mut bal = g.empty_set();
    for v in g.vertices() {
        if is_balanced_vertex(g, w, v) {
            bal.insert(v);
        }
    }
    let unbal = g.vertices() - &bal;
    (bal, unbal)
}

/// Heaviest component of `G[within]`; ties go to the lexicographically least
/// vertex sequence.
pub fn heaviest_component(g: &Graph, w: &WeightFn, within: &VertexSet) -> Option<(VertexSet, Weight)> {
    let mut best: Option<(VertexSet, Weight)> = None;
    for d in g.comps(within) {
        let wd = w.sum(&d);
        let better = match &best {
            None => true,
            Some((bd, bw)) => match wd.cmp_tol(*bw) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => d.lex_cmp(bd).is_lt(),
                std::cmp::Ordering::Less => false,
            },
        };
        if better {
            best = Some((d, wd));
        }
    }
    best
}

/// `S_v = (A_v, C_v, B_v)` for an unbalanced vertex `v`.
pub fn canonical_separation(g: &Graph, w: &WeightFn, v: usize) -> Result<Separation> {
    g.check_vertex(v)?;
    if is_balanced_vertex(g, w, v) {
        return Err(Error::Precondition(format!("vertex {v} is balanced")));
    }
    Ok(star_separation(g, w, v, &g.empty_set()))
}

/// Star separation at `v` whose `C` also absorbs `N(v) ∩ N(x)` for every
/// `x ∈ N(v) ∩ extra`. With `extra = ∅` this is the canonical separation.
pub(crate) fn star_separation(g: &Graph, w: &WeightFn, v: usize, extra: &VertexSet) -> Separation {
    let nv = g.nbrs(v);
    let rest = g.vertices() - &g.closed_nbrs(v);
    let (b, _) = heaviest_component(g, w, &rest).unwrap_or_else(|| (g.empty_set(), w.zero()));
    let mut c = nv & &g.open_nbhd(&b);
    c.insert(v);
    for x in nv & extra {
        c.union_with(&(nv & g.nbrs(x)));
    }
    let a = &(g.vertices() - &c) - &b;
    Separation { a, c, b, center: Some(v) }
}

/// `B1 ∪ C1 ⊆ B2 ∪ C2`.
pub fn shield_check(s1: &Separation, s2: &Separation) -> bool {
    s1.bc().is_subset(&s2.bc())
}

/// Every component of `A1 ∪ A2` is a component of `A1` or of `A2`.
pub fn nearly_noncrossing(g: &Graph, s1: &Separation, s2: &Separation) -> bool {
    crossing_component(g, s1, s2).is_none()
}

/// A component of `A1 ∪ A2` that is a component of neither side.
pub fn crossing_component(g: &Graph, s1: &Separation, s2: &Separation) -> Option<VertexSet> {
    let c1 = g.comps(&s1.a);
    let c2 = g.comps(&s2.a);
    g.comps(&(&s1.a | &s2.a)).into_iter().find(|d| !c1.contains(d) && !c2.contains(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderDigest {
    pub unbalanced: Vec<usize>,
    /// Pairs `(x, y)` with `x ≤_A y`, including the reflexive ones.
    pub pairs: Vec<(usize, usize)>,
    pub minimal: Vec<usize>,
}

/// Canonical separations for every vertex of `u`.
pub fn canonical_separations(g: &Graph, w: &WeightFn, u: &VertexSet) -> Result<Vec<Separation>> {
    u.iter().map(|v| canonical_separation(g, w, v)).collect()
}

/// Minimal elements of `among` under `x ≤_A y ⇔ x = y or y ∈ A_x`.
pub fn minimal_under(seps: &[(usize, &Separation)], among: &VertexSet) -> Vec<usize> {
    among
        .iter()
        .filter(|&x| !seps.iter().any(|(y, s)| *y != x && among.contains(*y) && s.a.contains(x)))
        .collect()
}

/// Materializes `≤_A` on the unbalanced vertices and checks that it is a
/// partial order.
pub fn leq_a(g: &Graph, w: &WeightFn) -> Result<OrderDigest> {
    w.validate(g)?;
    let (_, u) = classify_balanced(g, w);
    let seps = canonical_separations(g, w, &u)?;
    let idx: Vec<usize> = u.to_vec();
    let n = idx.len();
    let rel = |i: usize, j: usize| i == j || seps[i].a.contains(idx[j]);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rel(i, j) {
                pairs.push((idx[i], idx[j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rel(i, j) && rel(j, i) {
                return Err(Error::violation("leqA-partial-order", "antisymmetry fails", vec![idx[i], idx[j]]));
            }
            if i == j || !rel(i, j) {
                continue;
            }
            for k in 0..n {
                if rel(j, k) && !rel(i, k) {
                    return Err(Error::violation(
                        "leqA-partial-order",
                        "transitivity fails",
                        vec![idx[i], idx[j], idx[k]],
                    ));
                }
            }
        }
    }
    let labelled: Vec<(usize, &Separation)> = idx.iter().copied().zip(seps.iter()).collect();
    let minimal = minimal_under(&labelled, &u);
    Ok(OrderDigest { unbalanced: idx, pairs, minimal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, NamedGraph};

    fn p9() -> (Graph, WeightFn) {
        let g = make(&NamedGraph::Path(9)).unwrap();
        let w = WeightFn::uniform(&g);
        (g, w)
    }

    #[test]
    fn classify_examples() {
        let (g, w) = p9();
        let (b, u) = classify_balanced(&g, &w);
        assert_eq!(b.to_vec(), vec![3, 4, 5]);
        assert_eq!(u.to_vec(), vec![0, 1, 2, 6, 7, 8]);
        let c6 = make(&NamedGraph::Cycle(6)).unwrap();
        let (b, _) = classify_balanced(&c6, &WeightFn::uniform(&c6));
        assert_eq!(b.len(), 6);
        let w93 = make(&NamedGraph::W93).unwrap();
        assert!(is_balanced_vertex(&w93, &WeightFn::uniform(&w93), 9));
    }

    #[test]
    fn canonical_on_path() {
        let (g, w) = p9();
        let s = canonical_separation(&g, &w, 1).unwrap();
        assert_eq!((s.a.to_vec(), s.c.to_vec(), s.b.to_vec()), (vec![0], vec![1, 2], (3..9).collect()));
        let s = canonical_separation(&g, &w, 0).unwrap();
        assert!(s.a.is_empty());
        assert_eq!(s.c.to_vec(), vec![0, 1]);
        let s = canonical_separation(&g, &w, 2).unwrap();
        assert_eq!((s.a.to_vec(), s.c.to_vec()), (vec![0, 1], vec![2, 3]));
        s.validate(&g).unwrap();
        assert!(matches!(canonical_separation(&g, &w, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn shields_and_crossing() {
        let (g, w) = p9();
        let s1 = canonical_separation(&g, &w, 0).unwrap();
        let s2 = canonical_separation(&g, &w, 1).unwrap();
        assert!(!shield_check(&s1, &s2));
        assert!(shield_check(&s2, &s1));
        assert!(shield_check(&s1, &s1));
        let s3 = canonical_separation(&g, &w, 2).unwrap();
        let s7 = canonical_separation(&g, &w, 6).unwrap();
        assert!(nearly_noncrossing(&g, &s3, &s7));
        assert!(nearly_noncrossing(&g, &s1, &s7));

        let c6 = make(&NamedGraph::Cycle(6)).unwrap();
        let mk = |a: &[usize]| Separation { a: c6.set(a.iter().copied()), c: c6.empty_set(), b: c6.empty_set(), center: None };
        assert!(!nearly_noncrossing(&c6, &mk(&[0, 1]), &mk(&[1, 2])));
    }

    #[test]
    fn order_on_path() {
        let (g, w) = p9();
        let d = leq_a(&g, &w).unwrap();
        assert!(d.pairs.contains(&(1, 0)) && d.pairs.contains(&(2, 0)) && d.pairs.contains(&(2, 1)));
        assert_eq!(d.minimal, vec![2, 6]);
        let c6 = make(&NamedGraph::Cycle(6)).unwrap();
        let d = leq_a(&c6, &WeightFn::uniform(&c6)).unwrap();
        assert!(d.unbalanced.is_empty() && d.pairs.is_empty() && d.minimal.is_empty());
    }
}
