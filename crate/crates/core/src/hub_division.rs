//! Degeneracy partition of the hubs, hub ordering, and the hub division
//! with its central bag.

use serde::Serialize;

use crate::central_bag::{central_bag, revised_collection, validate_smooth, CentralBag, RevisedCollection, SmoothCollection};
use crate::detect::{find_wheel_centered, hub_set, WheelWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separations::{canonical_separation, classify_balanced, minimal_under, Separation};
use crate::set::VertexSet;
use crate::weight::WeightFn;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegeneracyPartition {
    pub parts: Vec<Vec<usize>>,
    pub degeneracy: usize,
    pub back_degree: usize,
    /// `max(1, ceil(log2 n))` for the partitioned vertex count.
    pub log_bound: usize,
    pub within_log_bound: bool,
}

impl DegeneracyPartition {
    /// Index of the part containing `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&v))
    }
}

/// Degeneracy of `g` by repeated minimum-degree deletion.
pub fn degeneracy(g: &Graph) -> usize {
    let mut rest = g.vertices().clone();
    let mut best = 0;
    while let Some(v) = rest.iter().min_by_key(|&v| g.nbrs(v).intersection_len(&rest)) {
        best = best.max(g.nbrs(v).intersection_len(&rest));
        rest.remove(v);
    }
    best
}

/// Greedy partition into independent sets: each round takes a maximal
/// independent set (by increasing id) among the remaining vertices of
/// remaining degree at most twice the degeneracy.
pub fn degeneracy_partition(g: &Graph) -> DegeneracyPartition {
    let d = degeneracy(g);
    let mut rest = g.vertices().clone();
    let mut parts = Vec::new();
    let mut back = 0;
    while !rest.is_empty() {
        let mut part = g.empty_set();
        let mut blocked = g.empty_set();
        for v in &rest {
            if g.nbrs(v).intersection_len(&rest) <= 2 * d && !blocked.contains(v) {
                part.insert(v);
                blocked.union_with(g.nbrs(v));
            }
        }
        for v in &part {
            back = back.max(g.nbrs(v).intersection_len(&rest));
        }
        rest.difference_with(&part);
        parts.push(part.to_vec());
    }
    let n = g.order();
    let log_bound = if n <= 2 { 1 } else { (usize::BITS - (n - 1).leading_zeros()) as usize };
    DegeneracyPartition { within_log_bound: parts.len() <= log_bound, parts, degeneracy: d, back_degree: back, log_bound }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HubDivision {
    /// `v_1..v_k`, ordered by part index then id.
    pub hubs: Vec<usize>,
    pub partition: DegeneracyPartition,
    /// 1-based; `k + 1` when every hub is unbalanced.
    pub m: usize,
    pub minimal: Vec<usize>,
    pub revised: RevisedCollection,
    #[serde(skip)]
    pub collection: SmoothCollection,
    pub bag: CentralBag,
}

impl HubDivision {
    pub fn v_m(&self) -> Option<usize> {
        self.hubs.get(self.m - 1).copied()
    }

    pub fn unbalanced_prefix(&self) -> &[usize] {
        &self.hubs[..self.m - 1]
    }
}

/// Builds the hub division. The input is expected to be a class member
/// without clique cutsets; smoothness of the revised collection is checked.
pub fn hub_division(g: &Graph, w: &WeightFn, t: usize) -> Result<HubDivision> {
    if t < 4 {
        return Err(Error::Precondition(format!("hub division needs t >= 4, got {t}")));
    }
    w.validate(g)?;
    let hub = hub_set(g, g.vertices());
    let partition = degeneracy_partition(&g.sub(&hub));
    let hubs: Vec<usize> = partition.parts.iter().flatten().copied().collect();
    let (_, unbalanced) = classify_balanced(g, w);
    let m = hubs.iter().position(|&v| !unbalanced.contains(v)).map_or(hubs.len() + 1, |i| i + 1);
    let prefix = g.set(hubs[..m - 1].iter().copied());
    let seps: Vec<(usize, Separation)> =
        prefix.iter().map(|v| canonical_separation(g, w, v).map(|s| (v, s))).collect::<Result<_>>()?;
    let labelled: Vec<(usize, &Separation)> = seps.iter().map(|(v, s)| (*v, s)).collect();
    let minimal = minimal_under(&labelled, &prefix);
    let mset = g.set(minimal.iter().copied());
    let revised = revised_collection(g, w, &mset)?;
    let order: Vec<usize> = hubs.iter().copied().filter(|&v| mset.contains(v)).collect();
    let ordered: Vec<Separation> = order.iter().map(|&v| revised.get(v).unwrap().clone()).collect();
    let collection = validate_smooth(g, ordered, order)?;
    let bag = central_bag(g, w, &collection)?;
    let minimal = collection.order.clone();
    Ok(HubDivision { hubs, partition, m, minimal, revised, collection, bag })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoWheelsReport {
    pub pass: bool,
    pub witness: Option<WheelWitness>,
}

/// No `v_i` with `i < m` centers a wheel inside the central bag.
pub fn check_no_wheels_in_bag(g: &Graph, div: &HubDivision) -> NoWheelsReport {
    for &v in div.unbalanced_prefix() {
        if !div.bag.beta.contains(v) {
            continue;
        }
        if let Some(wit) = find_wheel_centered(g, &div.bag.beta, v) {
            return NoWheelsReport { pass: false, witness: Some(wit) };
        }
    }
    NoWheelsReport { pass: true, witness: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisionChecks {
    pub no_wheels: NoWheelsReport,
    pub bag_hubs: Vec<usize>,
    /// `Hub(β_M) ⊆ {v_m, ..., v_k}`.
    pub bag_hubs_late: bool,
    /// `v_m ∈ β_M`, when `m ≤ k`.
    pub v_m_in_bag: Option<bool>,
    pub v_m_hub_nbrs: usize,
    /// `|N(v_m) ∩ Hub(β_M)| ≤ b̂`.
    pub v_m_hub_nbrs_ok: bool,
}

impl DivisionChecks {
    pub fn pass(&self) -> bool {
        self.no_wheels.pass && self.bag_hubs_late && self.v_m_in_bag != Some(false) && self.v_m_hub_nbrs_ok
    }
}

pub fn check_division(g: &Graph, div: &HubDivision) -> DivisionChecks {
    let bag_hubs = hub_set(g, &div.bag.beta);
    let late: VertexSet = g.set(div.hubs[div.m - 1..].iter().copied());
    let v_m = div.v_m();
    let v_m_hub_nbrs = v_m.map_or(0, |v| g.nbrs(v).intersection_len(&bag_hubs));
    DivisionChecks {
        no_wheels: check_no_wheels_in_bag(g, div),
        bag_hubs_late: bag_hubs.is_subset(&late),
        bag_hubs: bag_hubs.to_vec(),
        v_m_in_bag: v_m.map(|v| div.bag.beta.contains(v)),
        v_m_hub_nbrs,
        v_m_hub_nbrs_ok: v_m_hub_nbrs <= div.partition.back_degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, NamedGraph};
    use crate::weight::Rational;

    #[test]
    fn partitions() {
        let e = degeneracy_partition(&Graph::empty(0));
        assert!(e.parts.is_empty() && e.degeneracy == 0 && e.back_degree == 0);
        let c5 = make(&NamedGraph::Cycle(5)).unwrap();
        let p = degeneracy_partition(&c5);
        assert_eq!(p.degeneracy, 2);
        assert!(p.back_degree <= 2);
        for part in &p.parts {
            assert!(c5.is_independent(&c5.set(part.iter().copied())));
        }
        assert_eq!(p.parts.iter().map(Vec::len).sum::<usize>(), 5);
        assert_eq!(p.parts[0], vec![0, 2]);
    }

    #[test]
    fn path_and_w93() {
        let g = make(&NamedGraph::Path(9)).unwrap();
        let d = hub_division(&g, &WeightFn::uniform(&g), 4).unwrap();
        assert!(d.hubs.is_empty() && d.m == 1 && d.minimal.is_empty());
        assert_eq!(&d.bag.beta, g.vertices());
        let g = make(&NamedGraph::W93).unwrap();
        let d = hub_division(&g, &WeightFn::uniform(&g), 4).unwrap();
        assert_eq!(d.hubs, vec![9]);
        assert_eq!((d.m, d.partition.degeneracy, d.partition.back_degree), (1, 0, 0));
        assert_eq!(d.partition.parts, vec![vec![9]]);
        assert!(check_division(&g, &d).pass());
    }

    #[test]
    fn unbalanced_hub() {
        let g = make(&NamedGraph::W93).unwrap();
        let vals: Vec<Rational> =
            (0..10).map(|v| if v == 1 || v == 2 { Rational::new(3, 10) } else { Rational::new(1, 20) }).collect();
        let w = WeightFn::from_rationals(&g, vals).unwrap();
        let d = hub_division(&g, &w, 4).unwrap();
        assert_eq!((d.m, d.minimal.clone()), (2, vec![9]));
        assert_eq!(d.bag.beta.to_vec(), vec![0, 1, 2, 3, 9]);
        let checks = check_division(&g, &d);
        assert!(checks.no_wheels.pass && checks.pass());
        assert_eq!(checks.v_m_in_bag, None);
    }
}
