//! Smooth collections, revised separations, central bags and inherited
//! weights.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separations::{canonical_separation, crossing_component, is_balanced_vertex, star_separation, Separation};
use crate::set::VertexSet;
use crate::weight::{half, is_balanced_separator, Rational, WeightFn};

/// `X`-revised separations, one per vertex of `base`, in increasing center order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RevisedCollection {
    pub base: VertexSet,
    pub seps: Vec<Separation>,
}

impl RevisedCollection {
    pub fn get(&self, u: usize) -> Option<&Separation> {
        self.seps.iter().find(|s| s.center == Some(u))
    }
}

/// Builds `S̃_u` for every `u ∈ X`. The revised `C` contains `u` itself.
pub fn revised_collection(g: &Graph, w: &WeightFn, x: &VertexSet) -> Result<RevisedCollection> {
    g.check_subset(x)?;
    let mut seps = Vec::with_capacity(x.len());
    for u in x {
        if is_balanced_vertex(g, w, u) {
            return Err(Error::Precondition(format!("vertex {u} is balanced")));
        }
        let s = star_separation(g, w, u, x);
        let base = canonical_separation(g, w, u)?;
        let nu = g.nbrs(u);
        let ok = s.b == base.b
            && base.c.is_subset(&s.c)
            && s.c.is_subset(&g.closed_nbrs(u))
            && s.a.is_subset(&base.a)
            && (&base.a - nu).is_subset(&s.a);
        if !ok {
            return Err(Error::Internal(format!("revised separation at {u} breaks containment with the canonical one")));
        }
        seps.push(s);
    }
    Ok(RevisedCollection { base: x.clone(), seps })
}

/// A validated smooth collection; `seps[i]` belongs to `order[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothCollection {
    pub order: Vec<usize>,
    pub seps: Vec<Separation>,
}

impl SmoothCollection {
    pub fn empty() -> Self {
        SmoothCollection { order: Vec::new(), seps: Vec::new() }
    }

    pub fn centers(&self, g: &Graph) -> VertexSet {
        g.set(self.order.iter().copied())
    }
}

/// Checks pairwise near-non-crossing, `v ∈ C(f(v)) ⊆ N[v]`, and that no
/// center lies in any `A`-side.
pub fn validate_smooth(g: &Graph, seps: Vec<Separation>, order: Vec<usize>) -> Result<SmoothCollection> {
    const NAME: &str = "smooth-collection";
    if seps.len() != order.len() {
        return Err(Error::Input("one separation per ordered center is required".into()));
    }
    let mut seen = g.empty_set();
    for (s, &v) in seps.iter().zip(&order) {
        g.check_vertex(v)?;
        if !seen.insert(v) {
            return Err(Error::Input(format!("center {v} repeated")));
        }
        s.validate(g)?;
        if !s.c.contains(v) || !s.c.is_subset(&g.closed_nbrs(v)) {
            return Err(Error::violation(NAME, "C(f(v)) is not inside N[v] or misses v", vec![v]));
        }
    }
    for i in 0..seps.len() {
        for j in i + 1..seps.len() {
            if let Some(d) = crossing_component(g, &seps[i], &seps[j]) {
                let mut wit = vec![order[i], order[j]];
                wit.extend(d.iter());
                return Err(Error::violation(NAME, "separations cross", wit));
            }
        }
    }
    for (s, &u) in seps.iter().zip(&order) {
        if let Some(&v) = order.iter().find(|&&v| s.a.contains(v)) {
            return Err(Error::violation(NAME, "a center lies in an A-side", vec![u, v]));
        }
    }
    Ok(SmoothCollection { order, seps })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralBag {
    pub beta: VertexSet,
    /// `(v_i, A*(f(v_i)))` in collection order.
    pub a_star: Vec<(usize, VertexSet)>,
    #[serde(skip)]
    pub weights: WeightFn,
}

impl CentralBag {
    pub fn graph(&self, g: &Graph) -> Graph {
        g.sub(&self.beta)
    }
}

/// Intersection of the `B ∪ C` sides, the `A*`-partition and the inherited
/// weight function.
pub fn central_bag(g: &Graph, w: &WeightFn, coll: &SmoothCollection) -> Result<CentralBag> {
    let mut beta = g.vertices().clone();
    let mut all_a = g.empty_set();
    for s in &coll.seps {
        beta.intersect_with(&s.bc());
        all_a.union_with(&s.a);
    }
    let mut a_star: Vec<(usize, VertexSet)> = coll.order.iter().map(|&v| (v, g.empty_set())).collect();
    for d in g.comps(&all_a) {
        let Some(i) = coll.seps.iter().position(|s| d.is_subset(&s.a)) else {
            return Err(Error::violation(
                "smooth-collection",
                "component of the union of A-sides lies in no single A-side",
                d.to_vec(),
            ));
        };
        a_star[i].1.union_with(&d);
    }
    let lift: Vec<Option<usize>> = (0..g.universe()).map(|v| coll.order.iter().position(|&c| c == v)).collect();
    let weights = w.derive(&beta, |v| match lift[v] {
        Some(i) => w.get(v) + w.sum(&a_star[i].1),
        None => w.get(v),
    });
    let bag_graph = g.sub(&beta);
    weights.validate(&bag_graph).map_err(|e| Error::Internal(format!("inherited weights: {e}")))?;
    Ok(CentralBag { beta, a_star, weights })
}

/// Lifts a `(w_S, c)`-balanced separator `X` of the central bag to
/// `Y = X ∪ (N[X ∩ v(S)] ∩ β)`, verified to be `(w, c)`-balanced in `G`.
pub fn grow_separator(
    g: &Graph,
    w: &WeightFn,
    coll: &SmoothCollection,
    bag: &CentralBag,
    x: &VertexSet,
    c: Rational,
) -> Result<VertexSet> {
    const NAME: &str = "grow-a-separator";
    if !x.is_subset(&bag.beta) {
        return Err(Error::Precondition("separator must lie in the central bag".into()));
    }
    if !is_balanced_separator(&bag.graph(g), &bag.weights, x, c) {
        return Err(Error::Precondition("X is not balanced for the inherited weights".into()));
    }
    for (s, &v) in coll.seps.iter().zip(&coll.order) {
        if !w.sum(&s.a).le(half()) {
            return Err(Error::violation(NAME, "an A-side weighs more than 1/2", vec![v]));
        }
    }
    let centers = coll.centers(g);
    let mut y = x.clone();
    y.union_with(&(&g.closed_nbhd(&(x & &centers)) & &bag.beta));
    if !is_balanced_separator(g, w, &y, c) {
        return Err(Error::violation(NAME, "lifted separator is not balanced", y.to_vec()));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, NamedGraph};

    fn p9_bag() -> (Graph, WeightFn, SmoothCollection, CentralBag) {
        let g = make(&NamedGraph::Path(9)).unwrap();
        let w = WeightFn::uniform(&g);
        let rc = revised_collection(&g, &w, &g.set([2, 6])).unwrap();
        let coll = validate_smooth(&g, rc.seps, vec![2, 6]).unwrap();
        let bag = central_bag(&g, &w, &coll).unwrap();
        (g, w, coll, bag)
    }

    #[test]
    fn path_bag() {
        let (g, w, coll, bag) = p9_bag();
        assert_eq!(bag.beta.to_vec(), vec![2, 3, 4, 5, 6]);
        assert_eq!(bag.a_star[0].1.to_vec(), vec![0, 1]);
        assert_eq!(bag.a_star[1].1.to_vec(), vec![7, 8]);
        let r = |p, q| crate::weight::Weight::Exact(Rational::new(p, q));
        assert_eq!(bag.weights.get(2), r(3, 9));
        assert_eq!(bag.weights.get(6), r(3, 9));
        assert_eq!(bag.weights.get(4), r(1, 9));
        let y = grow_separator(&g, &w, &coll, &bag, &g.set([4]), half()).unwrap();
        assert_eq!(y.to_vec(), vec![4]);
        let y = grow_separator(&g, &w, &coll, &bag, &g.set([2, 5]), half()).unwrap();
        assert_eq!(y.to_vec(), vec![2, 3, 5]);
    }

    #[test]
    fn revised_singleton_is_canonical() {
        let g = make(&NamedGraph::Path(9)).unwrap();
        let w = WeightFn::uniform(&g);
        let rc = revised_collection(&g, &w, &g.set([2])).unwrap();
        assert_eq!(rc.seps[0], canonical_separation(&g, &w, 2).unwrap());
        assert!(revised_collection(&g, &w, &g.empty_set()).unwrap().seps.is_empty());
    }

    #[test]
    fn empty_collection_is_whole_graph() {
        let g = make(&NamedGraph::W93).unwrap();
        let w = WeightFn::uniform(&g);
        let bag = central_bag(&g, &w, &SmoothCollection::empty()).unwrap();
        assert_eq!(&bag.beta, g.vertices());
        assert_eq!(bag.weights, w);
    }

    #[test]
    fn smoothness_failures() {
        let g = make(&NamedGraph::Cycle(6)).unwrap();
        let sep = |a: &[usize], c: &[usize], v| {
            let a = g.set(a.iter().copied());
            let c = g.set(c.iter().copied());
            let b = &(g.vertices() - &a) - &c;
            Separation { a, c, b, center: Some(v) }
        };
        // A-sides {0,1,5} and {2,3,4} form a single component
        let s1 = sep(&[0, 1, 5], &[2, 3, 4], 3);
        let s2 = sep(&[2, 3, 4], &[5, 0, 1], 0);
        let e = validate_smooth(&g, vec![s1, s2], vec![3, 0]).unwrap_err();
        assert!(matches!(e, Error::HypothesisViolation { detail, .. } if detail.contains("cross")));
        let s1 = sep(&[0, 1, 5], &[2, 3, 4], 3);
        let s2 = sep(&[], &[5, 0, 1], 0);
        assert!(validate_smooth(&g, vec![s1, s2], vec![3, 0]).is_err());
    }
}
