#![allow(dead_code)]

pub mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starsep::detect::{
    detect_fixed, detect_prism, detect_pyramid, detect_theta, find_clique, find_kind, hub_set, verify_prism,
    verify_pyramid, verify_theta, verify_wheel, FixedPattern, WheelKind,
};
use starsep::Graph;

use oracle::Small;

/// G(n, p) with `p` drawn per graph so that both sparse and dense inputs show up.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.gen_range(0.15..0.65);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Compares every detector with the brute-force oracle; the first
/// disagreement is returned as text.
pub fn detector_mismatch(g: &Graph) -> Option<String> {
    let o = Small::new(g);
    let mut bad = Vec::new();
    let mut check = |name: &str, lib: bool, orc: bool| {
        if lib != orc {
            bad.push(format!("{name}: detector {lib}, oracle {orc}"));
        }
    };
    check("C4", detect_fixed(g, FixedPattern::C4).is_some(), o.has_c4());
    check("diamond", detect_fixed(g, FixedPattern::Diamond).is_some(), o.has_diamond());
    for t in 3..=5 {
        check(&format!("K{t}"), find_clique(g, t).is_some(), o.has_clique(t));
    }
    let theta = detect_theta(g);
    check("theta", theta.is_some(), o.has_theta());
    check("theta witness", theta.as_ref().is_none_or(|w| verify_theta(g, w)), true);
    let pyr = detect_pyramid(g);
    check("pyramid", pyr.is_some(), o.has_pyramid());
    check("pyramid witness", pyr.as_ref().is_none_or(|w| verify_pyramid(g, w)), true);
    let prism = detect_prism(g);
    check("prism", prism.is_some(), o.has_prism());
    check("prism witness", prism.as_ref().is_none_or(|w| verify_prism(g, w)), true);
    let k = o.all_kinds();
    let want = [k.wheel, k.line_wheel, k.even_wheel, k.twin_wheel, k.short_pyramid, k.proper, k.universal];
    for (kind, orc) in WheelKind::ALL.into_iter().zip(want) {
        let found = find_kind(g, kind);
        check(&format!("{kind:?}"), found.is_some(), orc);
        check(&format!("{kind:?} witness"), found.as_ref().is_none_or(|w| verify_wheel(g, w) && w.kinds.has(kind)), true);
    }
    check("hubs", hub_set(g, g.vertices()).to_vec() == o.hubs(o.full()), true);
    (!bad.is_empty()).then(|| bad.join("; "))
}
