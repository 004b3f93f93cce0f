//! Wheel taxonomy on (hole, vertex) pairs, Hub sets, and wheel search.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::holes::{for_each_hole, is_hole};
use crate::graph::Graph;
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WheelKind {
    Wheel,
    LineWheel,
    EvenWheel,
    TwinWheel,
    ShortPyramid,
    Proper,
    Universal,
}

impl WheelKind {
    pub const ALL: [WheelKind; 7] = [
        WheelKind::Wheel,
        WheelKind::LineWheel,
        WheelKind::EvenWheel,
        WheelKind::TwinWheel,
        WheelKind::ShortPyramid,
        WheelKind::Proper,
        WheelKind::Universal,
    ];
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelKinds {
    pub wheel: bool,
    pub line_wheel: bool,
    pub even_wheel: bool,
    pub twin_wheel: bool,
    pub short_pyramid: bool,
    pub proper: bool,
    pub universal: bool,
}

impl WheelKinds {
    pub fn has(&self, k: WheelKind) -> bool {
        match k {
            WheelKind::Wheel => self.wheel,
            WheelKind::LineWheel => self.line_wheel,
            WheelKind::EvenWheel => self.even_wheel,
            WheelKind::TwinWheel => self.twin_wheel,
            WheelKind::ShortPyramid => self.short_pyramid,
            WheelKind::Proper => self.proper,
            WheelKind::Universal => self.universal,
        }
    }

    pub fn any(&self) -> bool {
        WheelKind::ALL.iter().any(|&k| self.has(k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sector {
    pub path: Vec<usize>,
    pub long: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelWitness {
    pub hole: Vec<usize>,
    pub center: usize,
    pub center_nbrs: Vec<usize>,
    pub kinds: WheelKinds,
    pub sectors: Vec<Sector>,
}

/// Run lengths of the neighbor pattern around the hole; `None` when every
/// hole vertex is a neighbor.
fn runs(mark: &[bool]) -> Option<Vec<usize>> {
    let n = mark.len();
    let start = (0..n).find(|&i| !mark[i])?;
    let mut out = Vec::new();
    let mut cur = 0;
    for k in 1..=n {
        if mark[(start + k) % n] {
            cur += 1;
        } else if cur > 0 {
            out.push(cur);
            cur = 0;
        }
    }
    Some(out)
}

/// Classifies `(hole, x)`. The kind flags are computed independently:
/// `wheel` needs three pairwise non-adjacent neighbors, while twin wheel,
/// short pyramid and proper are applied to any vertex with at least three
/// neighbors on the hole.
pub fn kinds_of(g: &Graph, hole: &[usize], x: usize) -> WheelKinds {
    let n = hole.len();
    if hole.contains(&x) {
        return WheelKinds::default();
    }
    let mark: Vec<bool> = hole.iter().map(|&h| g.adjacent(x, h)).collect();
    let count = mark.iter().filter(|&&m| m).count();
    let (indep, rs) = match runs(&mark) {
        None => (n / 2, vec![n]),
        Some(rs) => (rs.iter().map(|r| r.div_ceil(2)).sum(), rs),
    };
    let wheel = indep >= 3;
    let line_wheel = rs.len() == 2 && rs.iter().all(|&r| r == 2) && count == 4;
    let twin_wheel = count == 3 && rs == [3];
    let short_pyramid = count == 3 && rs.len() == 2;
    WheelKinds {
        wheel,
        line_wheel,
        even_wheel: line_wheel || (wheel && count % 2 == 0),
        twin_wheel,
        short_pyramid,
        proper: count >= 3 && !twin_wheel && !short_pyramid,
        universal: count == n,
    }
}

fn sectors(hole: &[usize], mark: &[bool]) -> Vec<Sector> {
    let n = hole.len();
    let pos: Vec<usize> = (0..n).filter(|&i| mark[i]).collect();
    if pos.len() < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (k, &i) in pos.iter().enumerate() {
        let j = pos[(k + 1) % pos.len()];
        let steps = (j + n - i) % n;
        let steps = if steps == 0 { n } else { steps };
        let path: Vec<usize> = (0..=steps).map(|s| hole[(i + s) % n]).collect();
        out.push(Sector { long: steps > 1, path });
    }
    out
}

/// Full witness for `(hole, x)` if any kind flag applies.
pub fn analyze(g: &Graph, hole: &[usize], x: usize) -> Option<WheelWitness> {
    let kinds = kinds_of(g, hole, x);
    if !kinds.any() {
        return None;
    }
    let mark: Vec<bool> = hole.iter().map(|&h| g.adjacent(x, h)).collect();
    Some(WheelWitness {
        hole: hole.to_vec(),
        center: x,
        center_nbrs: g.set(hole.iter().copied().filter(|&h| g.adjacent(x, h))).to_vec(),
        kinds,
        sectors: sectors(hole, &mark),
    })
}

/// One witness per (center, kind), taken from the first hole in
/// (length, lexicographic) order. Output sorted by center, then discovery.
pub fn classify_wheels(g: &Graph) -> Vec<WheelWitness> {
    let mut seen: Vec<[bool; 7]> = vec![[false; 7]; g.universe()];
    let mut out: Vec<WheelWitness> = Vec::new();
    let _ = for_each_hole(g, g.vertices(), |h| {
        let on = g.set(h.iter().copied());
        for x in g.vertices() - &on {
            if g.nbrs(x).intersection_len(&on) < 3 {
                continue;
            }
            let kinds = kinds_of(g, h, x);
            let fresh: Vec<usize> =
                (0..7).filter(|&i| kinds.has(WheelKind::ALL[i]) && !seen[x][i]).collect();
            if fresh.is_empty() {
                continue;
            }
            for i in fresh {
                seen[x][i] = true;
            }
            out.push(analyze(g, h, x).unwrap());
        }
        ControlFlow::Continue(())
    });
    out.sort_by_key(|w| w.center);
    out
}

/// Hub(X): vertices of X centering a wheel whose hole lies inside X.
pub fn hub_set(g: &Graph, x: &VertexSet) -> VertexSet {
    let x = x & g.vertices();
    // a wheel center needs three neighbors inside X
    let possible = g.set(x.iter().filter(|&v| g.nbrs(v).intersection_len(&x) >= 3));
    let mut hubs = g.empty_set();
    if possible.is_empty() {
        return hubs;
    }
    let _ = for_each_hole(g, &x, |h| {
        let on = g.set(h.iter().copied());
        for v in &(&possible - &hubs) - &on {
            if g.nbrs(v).intersection_len(&on) >= 3 && kinds_of(g, h, v).wheel {
                hubs.insert(v);
            }
        }
        if hubs.len() == possible.len() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    hubs
}

/// First wheel (in hole order) centered at `x` with hole inside `within`.
pub fn find_wheel_centered(g: &Graph, within: &VertexSet, x: usize) -> Option<WheelWitness> {
    let mut region = within & g.vertices();
    region.remove(x);
    let mut found = None;
    let _ = for_each_hole(g, &region, |h| {
        if let Some(w) = analyze(g, h, x).filter(|w| w.kinds.wheel) {
            found = Some(w);
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found
}

/// First (hole, vertex) pair of the given kind, holes in canonical order and
/// centers ascending.
pub fn find_kind(g: &Graph, kind: WheelKind) -> Option<WheelWitness> {
    let mut found = None;
    let _ = for_each_hole(g, g.vertices(), |h| {
        let on = g.set(h.iter().copied());
        for x in g.vertices() - &on {
            if g.nbrs(x).intersection_len(&on) >= 3 && kinds_of(g, h, x).has(kind) {
                found = analyze(g, h, x);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    found
}

pub fn find_even_wheel(g: &Graph) -> Option<WheelWitness> {
    find_kind(g, WheelKind::EvenWheel)
}

pub fn verify_wheel(g: &Graph, w: &WheelWitness) -> bool {
    is_hole(g, &w.hole) && g.has_vertex(w.center) && kinds_of(g, &w.hole, w.center) == w.kinds && w.kinds.any()
}
