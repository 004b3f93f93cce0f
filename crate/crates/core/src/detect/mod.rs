//! Detection of the forbidden induced structures and class membership.

mod fixed;
mod holes;
mod paths;
mod wheels;

use serde::{Deserialize, Serialize};

pub use fixed::{detect_fixed, find_clique, verify_fixed, FixedPattern};
pub use holes::{all_holes, first_hole, for_each_hole, is_hole};
pub use paths::{
    detect_prism, detect_prism_in, detect_pyramid, detect_pyramid_in, detect_theta, detect_theta_in, verify_prism,
    verify_pyramid, verify_theta, PrismWitness, PyramidWitness, ThetaWitness,
};
pub use wheels::{
    analyze, classify_wheels, find_even_wheel, find_kind, find_wheel_centered, hub_set, kinds_of, verify_wheel, Sector,
    WheelKind, WheelKinds, WheelWitness,
};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// All seven obstructions.
    #[default]
    Ct,
    /// Pyramids allowed.
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    C4,
    Diamond,
    Kt,
    Theta,
    Pyramid,
    Prism,
    EvenWheel,
    Wheel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Embedding {
    Fixed { vertices: Vec<usize> },
    Theta(ThetaWitness),
    Pyramid(PyramidWitness),
    Prism(PrismWitness),
    Wheel(WheelWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    /// Sorted vertex set of the obstruction.
    pub vertices: Vec<usize>,
    pub embedding: Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub t: usize,
    pub variant: Variant,
    pub member: bool,
    pub obstruction: Option<Obstruction>,
}

fn sorted(vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = vs.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl Obstruction {
    fn fixed(kind: ObstructionKind, vertices: Vec<usize>) -> Self {
        Obstruction { kind, vertices: sorted(vertices.iter().copied()), embedding: Embedding::Fixed { vertices } }
    }
}

/// Tests C4, diamond, K_t, theta, pyramid (skipped for `Star`), prism and
/// even wheel in that order and reports the first obstruction found.
pub fn class_membership(g: &Graph, t: usize, variant: Variant) -> Result<ObstructionReport> {
    if t < 4 {
        return Err(Error::Precondition(format!("class membership needs t >= 4, got {t}")));
    }
    let obstruction = find_obstruction(g, t, variant);
    Ok(ObstructionReport { t, variant, member: obstruction.is_none(), obstruction })
}

fn find_obstruction(g: &Graph, t: usize, variant: Variant) -> Option<Obstruction> {
    if let Some(e) = detect_fixed(g, FixedPattern::C4) {
        return Some(Obstruction::fixed(ObstructionKind::C4, e));
    }
    if let Some(e) = detect_fixed(g, FixedPattern::Diamond) {
        return Some(Obstruction::fixed(ObstructionKind::Diamond, e));
    }
    if let Some(e) = detect_fixed(g, FixedPattern::Clique(t)) {
        return Some(Obstruction::fixed(ObstructionKind::Kt, e));
    }
    if let Some(w) = detect_theta(g) {
        let vs = sorted(w.paths.iter().flatten().copied());
        return Some(Obstruction { kind: ObstructionKind::Theta, vertices: vs, embedding: Embedding::Theta(w) });
    }
    if variant == Variant::Ct {
        if let Some(w) = detect_pyramid(g) {
            let vs = sorted(w.paths.iter().flatten().copied());
            return Some(Obstruction { kind: ObstructionKind::Pyramid, vertices: vs, embedding: Embedding::Pyramid(w) });
        }
    }
    if let Some(w) = detect_prism(g) {
        let vs = sorted(w.paths.iter().flatten().copied());
        return Some(Obstruction { kind: ObstructionKind::Prism, vertices: vs, embedding: Embedding::Prism(w) });
    }
    if let Some(w) = find_even_wheel(g) {
        let vs = sorted(w.hole.iter().copied().chain([w.center]));
        return Some(Obstruction { kind: ObstructionKind::EvenWheel, vertices: vs, embedding: Embedding::Wheel(w) });
    }
    None
}

/// Re-checks a reported obstruction by direct adjacency tests.
pub fn verify_obstruction(g: &Graph, t: usize, o: &Obstruction) -> bool {
    match (&o.kind, &o.embedding) {
        (ObstructionKind::C4, Embedding::Fixed { vertices }) => verify_fixed(g, FixedPattern::C4, vertices),
        (ObstructionKind::Diamond, Embedding::Fixed { vertices }) => verify_fixed(g, FixedPattern::Diamond, vertices),
        (ObstructionKind::Kt, Embedding::Fixed { vertices }) => verify_fixed(g, FixedPattern::Clique(t), vertices),
        (ObstructionKind::Theta, Embedding::Theta(w)) => verify_theta(g, w),
        (ObstructionKind::Pyramid, Embedding::Pyramid(w)) => verify_pyramid(g, w),
        (ObstructionKind::Prism, Embedding::Prism(w)) => verify_prism(g, w),
        (ObstructionKind::EvenWheel, Embedding::Wheel(w)) => verify_wheel(g, w) && w.kinds.even_wheel,
        (ObstructionKind::Wheel, Embedding::Wheel(w)) => verify_wheel(g, w) && w.kinds.wheel,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, NamedGraph};

    #[test]
    fn c6_and_w93_are_members() {
        for id in [NamedGraph::Cycle(6), NamedGraph::W93] {
            let g = make(&id).unwrap();
            let r = class_membership(&g, 4, Variant::Ct).unwrap();
            assert!(r.member, "{id:?}: {:?}", r.obstruction);
        }
    }

    #[test]
    fn w5_has_diamond() {
        let g = make(&NamedGraph::wheel_full(5)).unwrap();
        let r = class_membership(&g, 4, Variant::Ct).unwrap();
        assert!(!r.member);
        let o = r.obstruction.unwrap();
        assert_eq!(o.kind, ObstructionKind::Diamond);
        assert_eq!(o.vertices, vec![0, 1, 2, 5]);
        assert!(verify_obstruction(&g, 4, &o));
    }

    #[test]
    fn fixed_patterns() {
        let d = make(&NamedGraph::Diamond).unwrap();
        assert_eq!(detect_fixed(&d, FixedPattern::Diamond).map(|e| sorted(e)), Some(vec![0, 1, 2, 3]));
        let c6 = make(&NamedGraph::Cycle(6)).unwrap();
        assert!(detect_fixed(&c6, FixedPattern::C4).is_none());
        assert!(detect_fixed(&c6, FixedPattern::Diamond).is_none());
        assert!(detect_fixed(&c6, FixedPattern::Clique(3)).is_none());
        let c4 = make(&NamedGraph::Cycle(4)).unwrap();
        assert_eq!(detect_fixed(&c4, FixedPattern::C4), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn star_variant_skips_pyramid() {
        // PYRAMID(1,2,2) also contains a C4, so use a pyramid with longer paths
        let g = make(&NamedGraph::Pyramid(2, 2, 2)).unwrap();
        let r = class_membership(&g, 4, Variant::Ct).unwrap();
        assert_eq!(r.obstruction.unwrap().kind, ObstructionKind::Pyramid);
        assert!(class_membership(&g, 4, Variant::Star).unwrap().member);
    }

    #[test]
    fn t_below_four_rejected() {
        let g = make(&NamedGraph::Cycle(6)).unwrap();
        assert!(class_membership(&g, 3, Variant::Ct).is_err());
    }
}
