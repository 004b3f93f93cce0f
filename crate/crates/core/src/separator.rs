//! Balanced separators: the auxiliary graph at a balanced vertex, the
//! wheel-free search, the central-bag separator and the lift to `G`.

use serde::Serialize;

use crate::central_bag::grow_separator;
use crate::detect::{detect_pyramid_in, hub_set};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hub_division::{check_division, hub_division, HubDivision};
use crate::set::VertexSet;
use crate::treewidth::{exact_treewidth, treewidth_at_most_two, EXACT_MAX_N};
use crate::weight::{component_weights, format_rational, half, max_component_weight, Weight, WeightFn};

/// `R(t, 4)`: exact for `t ≤ 5`, best known upper bounds up to `t = 10`,
/// and the binomial bound `C(t + 2, 3)` beyond. Used only as a search budget.
pub fn ramsey_t4(t: usize) -> usize {
    const TABLE: [usize; 11] = [1, 1, 4, 9, 18, 25, 40, 58, 79, 106, 136];
    match TABLE.get(t) {
        Some(&r) => r,
        None => (t + 2) * (t + 1) * t / 6,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    pub value: usize,
    pub bound: usize,
    pub holds: bool,
    /// Asserted entries abort the pipeline when they fail; others are recorded only.
    pub asserted: bool,
}

impl LedgerEntry {
    fn new(name: &'static str, value: usize, bound: usize) -> Self {
        LedgerEntry { name, vertex: None, value, bound, holds: value <= bound, asserted: true }
    }

    fn at(mut self, v: usize) -> Self {
        self.vertex = Some(v);
        self
    }

    fn recorded(mut self) -> Self {
        self.asserted = false;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Branch {
    WheelFree { budget: usize },
    BalancedVertex { v: usize },
}

/// The auxiliary graph at `v`: nodes `k_i` (cliques of `N(v) \ Hub`) come
/// first, then nodes `d_j` (components of `β \ N[v]`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuxGraph {
    pub center: usize,
    pub cliques: Vec<VertexSet>,
    pub components: Vec<VertexSet>,
    /// `(i, j)` for each edge `k_i d_j`.
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<Weight>,
    pub bipartite: bool,
    pub max_d_degree: usize,
    /// Exact treewidth when the graph is small enough for the oracle.
    pub treewidth: Option<usize>,
    pub treewidth_at_most_two: bool,
    #[serde(skip)]
    pub graph: Graph,
}

impl AuxGraph {
    pub fn k_count(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_six_cycle(&self) -> bool {
        let h = &self.graph;
        h.order() == 6 && h.edge_count() == 6 && h.is_connected() && h.vertices().iter().all(|v| h.degree(v) == 2)
    }

    pub fn structure_ok(&self) -> bool {
        self.bipartite && self.max_d_degree <= 2 && self.treewidth_at_most_two
    }
}

fn two_colorable(h: &Graph) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; h.universe()];
    for s in h.vertices() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            let ca = color[a].unwrap();
            for b in h.nbrs(a) {
                match color[b] {
                    None => {
                        color[b] = Some(!ca);
                        stack.push(b);
                    }
                    Some(cb) if cb == ca => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Builds the auxiliary graph for `v` in the bag graph `beta` with bag
/// weights `ws`. Fails when `N(v) \ Hub(β)` is not a disjoint union of
/// anticomplete cliques or a component meets three of the cliques.
pub fn aux_graph(beta: &Graph, ws: &WeightFn, v: usize) -> Result<AuxGraph> {
    let hub = hub_set(beta, beta.vertices());
    aux_graph_with_hub(beta, ws, v, &hub)
}

fn aux_graph_with_hub(beta: &Graph, ws: &WeightFn, v: usize, hub: &VertexSet) -> Result<AuxGraph> {
    beta.check_vertex(v)?;
    let nv = beta.nbrs(v) - hub;
    let cliques = beta.comps(&nv);
    if let Some(k) = cliques.iter().find(|k| !beta.is_clique(k)) {
        return Err(Error::violation("clique-nbrs", "neighborhood piece is not a clique", k.to_vec()));
    }
    let components = beta.comps(&(beta.vertices() - &beta.closed_nbrs(v)));
    let p = cliques.len();
    let mut edges = Vec::new();
    for (i, k) in cliques.iter().enumerate() {
        let nk = beta.open_nbhd(k);
        for (j, d) in components.iter().enumerate() {
            if nk.intersects(d) {
                edges.push((i, j));
            }
        }
    }
    let hedges: Vec<(usize, usize)> = edges.iter().map(|&(i, j)| (i, p + j)).collect();
    let graph = Graph::from_edges(p + components.len(), &hedges)?;
    let max_d_degree = (p..graph.universe()).map(|d| graph.degree(d)).max().unwrap_or(0);
    if max_d_degree > 2 {
        let j = (p..graph.universe()).find(|&d| graph.degree(d) > 2).unwrap();
        let mut wit: Vec<usize> = graph.nbrs(j).iter().take(3).filter_map(|i| cliques[i].min()).collect();
        wit.extend(components[j - p].iter());
        return Err(Error::violation("bounding-nbrhood-helper", "a component meets three neighborhood cliques", wit));
    }
    let weights: Vec<Weight> = cliques.iter().chain(components.iter()).map(|s| ws.sum(s)).collect();
    let treewidth = if graph.order() <= EXACT_MAX_N { Some(exact_treewidth(&graph)?) } else { None };
    Ok(AuxGraph {
        center: v,
        bipartite: two_colorable(&graph),
        max_d_degree,
        treewidth_at_most_two: treewidth.map_or_else(|| treewidth_at_most_two(&graph), |tw| tw <= 2),
        treewidth,
        cliques,
        components,
        edges,
        weights,
        graph,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparatorCertificate {
    pub separator: Vec<usize>,
    pub c: String,
    /// Weights of the components left after removing the separator from the host.
    pub component_weights: Vec<Weight>,
    pub branch: Option<Branch>,
    pub ledger: Vec<LedgerEntry>,
    pub provenance: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxGraph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux_separator: Option<Vec<usize>>,
    /// Separator of the central bag before lifting.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bag_separator: Option<Vec<usize>>,
}

impl SeparatorCertificate {
    fn new(host: &Graph, w: &WeightFn, sep: &VertexSet, provenance: Vec<&'static str>) -> Self {
        SeparatorCertificate {
            separator: sep.to_vec(),
            c: format_rational(&half()),
            component_weights: component_weights(host, w, sep).into_iter().map(|(_, x)| x).collect(),
            branch: None,
            ledger: Vec::new(),
            provenance,
            aux: None,
            aux_separator: None,
            bag_separator: None,
        }
    }

    pub fn size(&self) -> usize {
        self.separator.len()
    }

    pub fn entries(&self, name: &str) -> impl Iterator<Item = &LedgerEntry> + '_ {
        let name = name.to_string();
        self.ledger.iter().filter(move |e| e.name == name)
    }

    /// Recomputes the balance and every ledger inequality from the data.
    pub fn check(&self, host: &Graph, w: &WeightFn) -> bool {
        let sep = host.set(self.separator.iter().copied());
        let weights: Vec<Weight> = component_weights(host, w, &sep).into_iter().map(|(_, x)| x).collect();
        weights == self.component_weights
            && weights.iter().all(|x| x.le(half()))
            && self.ledger.iter().all(|e| e.holds == (e.value <= e.bound) && (e.holds || !e.asserted))
    }

    fn require(&self, name: &'static str) -> Result<()> {
        match self.ledger.iter().find(|e| e.asserted && !e.holds) {
            Some(e) => Err(Error::violation(
                name,
                format!("ledger entry {} has {} > {}", e.name, e.value, e.bound),
                e.vertex.into_iter().chain(self.separator.iter().copied()).collect(),
            )),
            None => Ok(()),
        }
    }
}

fn subsets_of_size(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

/// Separator at a balanced vertex `v` of the central bag, built from a
/// separator of the auxiliary graph of size at most three.
pub fn balanced_vertex_separator(
    beta: &Graph,
    ws: &WeightFn,
    v: usize,
    hub_nbrs: &VertexSet,
) -> Result<SeparatorCertificate> {
    beta.check_vertex(v)?;
    if let Some(p) = detect_pyramid_in(beta, beta.vertices(), Some(v)) {
        return Err(Error::Precondition(format!("vertex {v} is a pyramid apex (triangle {:?})", p.triangle)));
    }
    let hub = hub_set(beta, beta.vertices());
    let aux = aux_graph_with_hub(beta, ws, v, &hub)?;
    let h = &aux.graph;
    let p = aux.k_count();
    let lift = |x: &[usize]| {
        let mut y = hub_nbrs & beta.nbrs(v);
        y.insert(v);
        for (i, k) in aux.cliques.iter().enumerate() {
            if x.iter().any(|&a| a == i || (a >= p && h.adjacent(a, i))) {
                y.union_with(k);
            }
        }
        y
    };
    let chosen: Vec<usize> = match WeightFn::normalized_on(h, &aux.weights, ws.is_exact()) {
        None => Vec::new(),
        Some(wbar) => {
            let nodes: Vec<usize> = h.vertices().to_vec();
            let mut best: Option<(usize, Weight, Vec<usize>)> = None;
            for k in 0..=3.min(nodes.len()) {
                subsets_of_size(&nodes, k, &mut |x| {
                    let xs = h.set(x.iter().copied());
                    let mw = max_component_weight(h, &wbar, &xs);
                    if !mw.le(half()) {
                        return;
                    }
                    let ylen = lift(x).len();
                    let better = match &best {
                        None => true,
                        Some((bl, bw, _)) => ylen < *bl || (ylen == *bl && mw.cmp_tol(*bw).is_lt()),
                    };
                    if better {
                        best = Some((ylen, mw, x.to_vec()));
                    }
                });
                if best.is_some() {
                    break;
                }
            }
            match best {
                Some((_, _, x)) => x,
                None => {
                    return Err(Error::violation(
                        "balanced-vertex",
                        "auxiliary graph has no balanced separator of size at most 3",
                        vec![v],
                    ))
                }
            }
        }
    };
    let y = lift(&chosen);
    if !max_component_weight(beta, ws, &y).le(half()) {
        return Err(Error::violation("balanced-vertex", "separator is not balanced in the bag", y.to_vec()));
    }
    let omega = beta.clique_number();
    let mut cert = SeparatorCertificate::new(beta, ws, &y, vec!["aux-graph", "balanced-vertex"]);
    cert.branch = Some(Branch::BalancedVertex { v });
    cert.ledger.push(LedgerEntry::new("aux-separator-size", chosen.len(), 3));
    cert.ledger.push(LedgerEntry::new("balanced-vertex-size", y.len(), 6 * omega + hub_nbrs.len()));
    cert.aux_separator = Some(chosen);
    cert.aux = Some(aux);
    cert.require("balanced-vertex")?;
    Ok(cert)
}

/// Smallest `(w, 1/2)`-balanced separator of a wheel-free bag, by exhaustive
/// search in order of size; ties go to the smaller largest component, then
/// the lexicographically least set.
pub fn wheelfree_separator(beta: &Graph, w: &WeightFn, budget: usize) -> Result<SeparatorCertificate> {
    let hub = hub_set(beta, beta.vertices());
    if !hub.is_empty() {
        return Err(Error::Precondition(format!("graph has wheel centers {:?}", hub.to_vec())));
    }
    let x = min_balanced_separator(beta, w, budget).ok_or_else(|| {
        Error::violation("wheel-free", format!("no balanced separator within budget {budget}"), vec![])
    })?;
    let mut cert = SeparatorCertificate::new(beta, w, &x, vec!["wheel-free-search"]);
    cert.branch = Some(Branch::WheelFree { budget });
    cert.ledger.push(LedgerEntry::new("wheel-free-budget", x.len(), budget));
    Ok(cert)
}

/// Exhaustive minimum `(w, 1/2)`-balanced separator of size at most `limit`.
pub fn min_balanced_separator(g: &Graph, w: &WeightFn, limit: usize) -> Option<VertexSet> {
    let nodes = g.vertices().to_vec();
    for k in 0..=limit.min(nodes.len()) {
        let mut best: Option<(Weight, VertexSet)> = None;
        subsets_of_size(&nodes, k, &mut |x| {
            let xs = g.set(x.iter().copied());
            let mw = max_component_weight(g, w, &xs);
            if mw.le(half()) && best.as_ref().is_none_or(|(bw, _)| mw.cmp_tol(*bw).is_lt()) {
                best = Some((mw, xs));
            }
        });
        if let Some((_, x)) = best {
            return Some(x);
        }
    }
    None
}

/// Separator of the central bag `β_M` for its inherited weights.
pub fn central_bag_separator(g: &Graph, div: &HubDivision, t: usize) -> Result<SeparatorCertificate> {
    let beta = div.bag.graph(g);
    let ws = &div.bag.weights;
    if let Some(p) = detect_pyramid_in(g, &div.bag.beta, None) {
        return Err(Error::Precondition(format!("central bag contains a pyramid with apex {}", p.apex)));
    }
    let budget = ramsey_t4(t) + 1;
    let omega = beta.clique_number();
    let bound = budget.max(6 * omega + div.partition.back_degree);
    let mut cert = match div.v_m() {
        None => wheelfree_separator(&beta, ws, budget)?,
        Some(v) => {
            if !div.bag.beta.contains(v) {
                return Err(Error::violation("hub-division", "v_m is outside the central bag", vec![v]));
            }
            let hub = hub_set(g, &div.bag.beta);
            balanced_vertex_separator(&beta, ws, v, &(g.nbrs(v) & &hub))?
        }
    };
    cert.ledger.push(LedgerEntry::new("central-bag-bound", cert.size(), bound));
    cert.require("central-bag-separator")?;
    Ok(cert)
}

/// Full pipeline for one weight function: hub division, central-bag
/// separator, and the lift to a `(w, 1/2)`-balanced separator of `G`.
pub fn main_separator(g: &Graph, w: &WeightFn, t: usize) -> Result<SeparatorCertificate> {
    let div = hub_division(g, w, t)?;
    separator_from_division(g, w, t, &div)
}

pub fn separator_from_division(g: &Graph, w: &WeightFn, t: usize, div: &HubDivision) -> Result<SeparatorCertificate> {
    let checks = check_division(g, div);
    if let Some(wit) = &checks.no_wheels.witness {
        let mut vs = vec![wit.center];
        vs.extend(&wit.hole);
        return Err(Error::violation("no-wheels-in-beta", "an early hub centers a wheel in the central bag", vs));
    }
    if !checks.bag_hubs_late {
        return Err(Error::violation("no-wheels-in-beta", "central bag has an early hub", checks.bag_hubs.clone()));
    }
    if checks.v_m_in_bag == Some(false) {
        return Err(Error::violation("hub-division", "v_m is outside the central bag", div.v_m().into_iter().collect()));
    }
    let inner = central_bag_separator(g, div, t)?;
    let x = g.set(inner.separator.iter().copied());
    let y = grow_separator(g, w, &div.collection, &div.bag, &x, half())?;
    let beta = div.bag.graph(g);
    let bag_hubs = g.set(checks.bag_hubs.iter().copied());
    let mut cert = SeparatorCertificate::new(g, w, &y, inner.provenance.clone());
    cert.provenance.insert(0, "hub-division");
    cert.provenance.extend(["grow-separator", "extension"]);
    cert.branch = inner.branch;
    cert.ledger = inner.ledger.clone();
    cert.ledger.push(LedgerEntry::new("v_m-hub-neighbors", checks.v_m_hub_nbrs, div.partition.back_degree));
    for &u in &div.minimal {
        if detect_pyramid_in(g, &div.bag.beta, Some(u)).is_some() {
            continue;
        }
        let e = LedgerEntry::new("small-nbrs", (beta.nbrs(u) - &bag_hubs).len(), 2 * t).at(u);
        cert.ledger.push(if x.contains(u) { e } else { e.recorded() });
    }
    cert.ledger.push(LedgerEntry::new("extension-size", y.len(), (2 * t + div.partition.back_degree) * x.len()));
    cert.aux = inner.aux;
    cert.aux_separator = inner.aux_separator;
    cert.bag_separator = Some(inner.separator);
    cert.require("extending-bs")?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, NamedGraph};
    use crate::weight::Rational;

    #[test]
    fn ramsey_table() {
        assert_eq!((ramsey_t4(3), ramsey_t4(4), ramsey_t4(5)), (9, 18, 25));
        assert_eq!(ramsey_t4(11), 13 * 12 * 11 / 6);
    }

    #[test]
    fn aux_on_c5_and_w93() {
        let c5 = make(&NamedGraph::Cycle(5)).unwrap();
        let w = WeightFn::uniform(&c5);
        let a = aux_graph(&c5, &w, 0).unwrap();
        assert_eq!(a.cliques.iter().map(|k| k.to_vec()).collect::<Vec<_>>(), vec![vec![1], vec![4]]);
        assert_eq!(a.components[0].to_vec(), vec![2, 3]);
        assert_eq!(a.edges, vec![(0, 0), (1, 0)]);
        let cert = balanced_vertex_separator(&c5, &w, 0, &c5.empty_set()).unwrap();
        assert_eq!(cert.separator, vec![0, 1, 4]);
        assert_eq!(cert.component_weights, vec![Weight::Exact(Rational::new(2, 5))]);

        let g = make(&NamedGraph::W93).unwrap();
        let w = WeightFn::uniform(&g);
        let a = aux_graph(&g, &w, 9).unwrap();
        assert!(a.is_six_cycle() && a.structure_ok());
        assert_eq!(a.treewidth, Some(2));
        let cert = balanced_vertex_separator(&g, &w, 9, &g.empty_set()).unwrap();
        assert_eq!(cert.separator, vec![0, 3, 6, 9]);
        assert!(cert.check(&g, &w));
    }

    #[test]
    fn wheelfree_examples() {
        let sep = |id| {
            let g = make(&id).unwrap();
            let w = WeightFn::uniform(&g);
            wheelfree_separator(&g, &w, 19).unwrap().separator
        };
        assert_eq!(sep(NamedGraph::Cycle(6)), vec![0, 3]);
        assert_eq!(sep(NamedGraph::Path(9)), vec![4]);
        assert_eq!(sep(NamedGraph::Path(1)), vec![0]);
        let w93 = make(&NamedGraph::W93).unwrap();
        assert!(matches!(wheelfree_separator(&w93, &WeightFn::uniform(&w93), 19), Err(Error::Precondition(_))));
    }

    #[test]
    fn pipeline_fixtures() {
        for (id, want) in [(NamedGraph::Path(9), vec![4]), (NamedGraph::W93, vec![0, 3, 6, 9]), (NamedGraph::Cycle(6), vec![0, 3])] {
            let g = make(&id).unwrap();
            let w = WeightFn::uniform(&g);
            let cert = main_separator(&g, &w, 4).unwrap();
            assert_eq!(cert.separator, want, "{id}");
            assert!(cert.check(&g, &w), "{id}");
        }
    }

    #[test]
    fn reweighted_w93_lifts() {
        let g = make(&NamedGraph::W93).unwrap();
        let vals: Vec<Rational> =
            (0..10).map(|v| if v == 1 || v == 2 { Rational::new(3, 10) } else { Rational::new(1, 20) }).collect();
        let w = WeightFn::from_rationals(&g, vals).unwrap();
        let div = hub_division(&g, &w, 4).unwrap();
        let cert = separator_from_division(&g, &w, 4, &div).unwrap();
        let x = g.set(cert.bag_separator.clone().unwrap());
        let mut want = x.clone();
        if x.contains(9) {
            want.union_with(&(&g.closed_nbrs(9) & &div.bag.beta));
        }
        assert_eq!(cert.separator, want.to_vec());
        assert!(cert.check(&g, &w));
    }
}
