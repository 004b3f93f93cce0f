//! Named witness graphs and seeded random samplers.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detect::{class_membership, ObstructionReport, Variant};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;
use crate::weight::{Rational, WeightFn};

/// Graph identifiers. Vertex layouts:
/// `Path`/`Cycle` use `0..n`; `Theta` puts `a = 0`, `b = 1`, then the path
/// interiors in order; `Pyramid` has apex 0 and triangle 1,2,3; `Prism` has
/// triangles 0,1,2 and 3,4,5 with `i` matched to `i + 3`; `Wheel` is the
/// cycle `0..n` plus hub `n` adjacent to the 1-based `spokes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedGraph {
    Path(usize),
    Cycle(usize),
    Theta(usize, usize, usize),
    Prism(usize, usize, usize),
    Pyramid(usize, usize, usize),
    Wheel { n: usize, spokes: Vec<usize> },
    W93,
    Bowtie,
    Diamond,
    Complete(usize),
}

impl NamedGraph {
    /// Cycle plus a hub adjacent to every rim vertex.
    pub fn wheel_full(n: usize) -> Self {
        NamedGraph::Wheel { n, spokes: (1..=n).collect() }
    }

    pub fn catalog() -> Vec<NamedGraph> {
        vec![
            NamedGraph::Path(9),
            NamedGraph::Cycle(6),
            NamedGraph::Cycle(7),
            NamedGraph::Theta(2, 3, 3),
            NamedGraph::Prism(1, 1, 1),
            NamedGraph::Pyramid(1, 2, 2),
            NamedGraph::W93,
            NamedGraph::wheel_full(5),
            NamedGraph::Wheel { n: 8, spokes: vec![1, 3, 5, 7] },
            NamedGraph::Bowtie,
            NamedGraph::Diamond,
            NamedGraph::Complete(4),
        ]
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Path(n) => write!(f, "P{n}"),
            NamedGraph::Cycle(n) => write!(f, "C{n}"),
            NamedGraph::Theta(a, b, c) => write!(f, "THETA({a},{b},{c})"),
            NamedGraph::Prism(a, b, c) => write!(f, "PRISM({a},{b},{c})"),
            NamedGraph::Pyramid(a, b, c) => write!(f, "PYRAMID({a},{b},{c})"),
            NamedGraph::Wheel { n, spokes } => {
                let s: Vec<String> = spokes.iter().map(|x| x.to_string()).collect();
                write!(f, "WHEEL({n},{{{}}})", s.join(","))
            }
            NamedGraph::W93 => write!(f, "W93"),
            NamedGraph::Bowtie => write!(f, "bowtie"),
            NamedGraph::Diamond => write!(f, "diamond"),
            NamedGraph::Complete(t) => write!(f, "K{t}"),
        }
    }
}

fn nums(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c == '{' || c == '}' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| Error::Input(format!("bad number '{p}'"))))
        .collect()
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts `P9`, `C6`, `K5`, `W93`, `W5`, `bowtie`, `diamond`,
    /// `THETA(2,3,3)`, `PRISM(1,1,1)`, `PYRAMID(1,2,2)`, `PYR6`, `PRISM3`,
    /// `THETA233` and `WHEEL(9,{1,4,7})`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let up = s.to_ascii_uppercase();
        let bad = || Error::Input(format!("unknown graph id '{s}'"));
        match up.as_str() {
            "W93" => return Ok(NamedGraph::W93),
            "BOWTIE" => return Ok(NamedGraph::Bowtie),
            "DIAMOND" => return Ok(NamedGraph::Diamond),
            "PYR6" => return Ok(NamedGraph::Pyramid(1, 2, 2)),
            "PRISM3" => return Ok(NamedGraph::Prism(1, 1, 1)),
            "THETA233" => return Ok(NamedGraph::Theta(2, 3, 3)),
            _ => {}
        }
        if let Some(open) = up.find('(') {
            let name = &up[..open];
            let body = up[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            let v = nums(body)?;
            let three = |f: fn(usize, usize, usize) -> NamedGraph| match v[..] {
                [a, b, c] => Ok(f(a, b, c)),
                _ => Err(bad()),
            };
            return match name {
                "THETA" => three(NamedGraph::Theta),
                "PRISM" => three(NamedGraph::Prism),
                "PYRAMID" => three(NamedGraph::Pyramid),
                "WHEEL" if !v.is_empty() => Ok(NamedGraph::Wheel { n: v[0], spokes: v[1..].to_vec() }),
                _ => Err(bad()),
            };
        }
        let (head, tail) = up.split_at(1.min(up.len()));
        let k: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "P" => Ok(NamedGraph::Path(k)),
            "C" => Ok(NamedGraph::Cycle(k)),
            "K" => Ok(NamedGraph::Complete(k)),
            "W" => Ok(NamedGraph::wheel_full(k)),
            _ => Err(bad()),
        }
    }
}

struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { n, edges: Vec::new() }
    }
    fn fresh(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }
    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }
    /// Path of `len` edges from `a` to `b` through new interior vertices.
    fn path(&mut self, a: usize, b: usize, len: usize) {
        let mut prev = a;
        for _ in 1..len {
            let x = self.fresh();
            self.edge(prev, x);
            prev = x;
        }
        self.edge(prev, b);
    }
    fn build(self) -> Result<Graph> {
        Graph::from_edges(self.n, &self.edges)
    }
}

pub fn make(id: &NamedGraph) -> Result<Graph> {
    let input = |msg: String| Err(Error::Input(msg));
    match *id {
        NamedGraph::Path(n) => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edges(n, &edges)
        }
        NamedGraph::Cycle(n) => {
            if n < 3 {
                return input(format!("cycle needs n >= 3, got {n}"));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        NamedGraph::Complete(t) => {
            let edges: Vec<_> = (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).collect();
            Graph::from_edges(t, &edges)
        }
        NamedGraph::Theta(l1, l2, l3) => {
            if [l1, l2, l3].iter().any(|&l| l < 2) {
                return input(format!("theta paths need length >= 2, got ({l1},{l2},{l3})"));
            }
            let mut b = Builder::new(2);
            for l in [l1, l2, l3] {
                b.path(0, 1, l);
            }
            b.build()
        }
        NamedGraph::Pyramid(l1, l2, l3) => {
            let ls = [l1, l2, l3];
            if ls.contains(&0) || ls.iter().filter(|&&l| l >= 2).count() < 2 {
                return input(format!("pyramid needs lengths >= 1 with two >= 2, got ({l1},{l2},{l3})"));
            }
            let mut b = Builder::new(4);
            b.edge(1, 2);
            b.edge(1, 3);
            b.edge(2, 3);
            for (i, l) in ls.into_iter().enumerate() {
                b.path(0, i + 1, l);
            }
            b.build()
        }
        NamedGraph::Prism(l1, l2, l3) => {
            let ls = [l1, l2, l3];
            if ls.contains(&0) {
                return input(format!("prism paths need length >= 1, got ({l1},{l2},{l3})"));
            }
            let mut b = Builder::new(6);
            for (u, v) in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)] {
                b.edge(u, v);
            }
            for (i, l) in ls.into_iter().enumerate() {
                b.path(i, i + 3, l);
            }
            b.build()
        }
        NamedGraph::Wheel { n, ref spokes } => {
            if n < 3 {
                return input(format!("wheel rim needs n >= 3, got {n}"));
            }
            let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            for &s in spokes {
                if s == 0 || s > n {
                    return input(format!("spoke {s} outside 1..={n}"));
                }
                edges.push((n, s - 1));
            }
            edges.sort_unstable();
            edges.dedup();
            Graph::from_edges(n + 1, &edges)
        }
        NamedGraph::W93 => make(&NamedGraph::Wheel { n: 9, spokes: vec![1, 4, 7] }),
        NamedGraph::Bowtie => Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]),
        NamedGraph::Diamond => Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    }
}

/// Default cap on sampled instance size.
pub const MAX_SAMPLE_N: usize = 32;
const ATTEMPTS: usize = 50;

#[derive(Debug, Clone)]
pub struct Sample {
    pub graph: Graph,
    pub report: ObstructionReport,
    pub attempts: usize,
    pub repairs: usize,
}

/// Knobs for [`sample_filtered`].
#[derive(Debug, Clone, Copy)]
pub struct SampleShape {
    /// Expected degree of the random base graph.
    pub degree: f64,
    /// Odd wheels (three spokes) planted before repairs.
    pub planted_wheels: usize,
}

impl Default for SampleShape {
    fn default() -> Self {
        SampleShape { degree: 2.5, planted_wheels: 1 }
    }
}

fn base_graph(n: usize, shape: SampleShape, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let p = if n > 1 { (shape.degree / (n - 1) as f64).min(1.0) } else { 0.0 };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    for _ in 0..shape.planted_wheels {
        // rim of length >= 9 so that three spokes can sit three apart
        if n < 10 {
            break;
        }
        let len = rng.gen_range(9..=(n - 1).min(13));
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        let (rim, hub) = (&vs[..len], vs[len]);
        for i in 0..len {
            edges.push((rim[i], rim[(i + 1) % len]));
        }
        let a = rng.gen_range(3..=len - 6);
        let b = rng.gen_range(a + 3..=len - 3);
        for pos in [0, a, b] {
            edges.push((hub, rim[pos]));
        }
    }
    edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Random graph on `n` vertices repaired until `obstruction` returns `None`.
/// Each repair deletes one random edge spanned by the reported vertices.
pub fn sample_filtered<F>(n: usize, seed: u64, shape: SampleShape, mut obstruction: F) -> Result<(Graph, usize, usize)>
where
    F: FnMut(&Graph) -> Option<Vec<usize>>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut repairs = 0;
    for attempt in 1..=ATTEMPTS {
        let edges = base_graph(n, shape, &mut rng);
        let mut g = Graph::from_edges(n, &edges)?;
        for _ in 0..=edges.len() {
            let Some(vs) = obstruction(&g) else {
                return Ok((g, attempt, repairs));
            };
            let inside: Vec<(usize, usize)> =
                g.edges().filter(|&(u, v)| vs.contains(&u) && vs.contains(&v)).collect();
            let Some(&(u, v)) = inside.choose(&mut rng) else { break };
            g = g.without_edge(u, v);
            repairs += 1;
        }
    }
    Err(Error::Sampling { attempts: ATTEMPTS, repairs })
}

/// Seeded member of the class for `t` and `variant`.
pub fn sample_class(n: usize, t: usize, seed: u64, variant: Variant) -> Result<Sample> {
    sample_class_shaped(n, t, seed, variant, SampleShape::default())
}

pub fn sample_class_shaped(n: usize, t: usize, seed: u64, variant: Variant, shape: SampleShape) -> Result<Sample> {
    let cap = max_n();
    if n > cap {
        return Err(Error::Capacity { what: "sample size", got: n, limit: cap });
    }
    if t < 4 {
        return Err(Error::Precondition(format!("class sampling needs t >= 4, got {t}")));
    }
    let (graph, attempts, repairs) = sample_filtered(n, seed, shape, |g| {
        let r = class_membership(g, t, variant).expect("t checked");
        r.obstruction.map(|o| o.vertices)
    })?;
    let report = class_membership(&graph, t, variant)?;
    Ok(Sample { graph, report, attempts, repairs })
}

/// Class member grown from a three-spoke odd wheel (or, for `n ≥ 15`, half
/// the time from two such wheels sharing a rim): each further vertex
/// gets a random neighborhood of size three (falling back to two, then one)
/// and is kept only if the graph stays in the class. Produces hubs far more
/// often than repairing random graphs does.
pub fn sample_grown(n: usize, t: usize, seed: u64, variant: Variant) -> Result<Sample> {
    let cap = max_n();
    if n > cap {
        return Err(Error::Capacity { what: "sample size", got: n, limit: cap });
    }
    if t < 4 {
        return Err(Error::Precondition(format!("class sampling needs t >= 4, got {t}")));
    }
    if n < 10 {
        return sample_class(n, t, seed, variant);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x67_7277);
    let (mut edges, first) = if n >= 15 && rng.gen_bool(0.5) {
        // two odd wheels on one 13-rim sharing the spoke 6; the smallest
        // such configuration that stays in the class
        let mut e: Vec<(usize, usize)> = (0..13).map(|i| (i, (i + 1) % 13)).collect();
        e.extend([0, 3, 6].map(|p| (p, 13)));
        e.extend([6, 9, 12].map(|p| (p, 14)));
        (e, 15)
    } else {
        let len = rng.gen_range(9..=(n - 1).min(13));
        let a = rng.gen_range(3..=len - 6);
        let b = rng.gen_range(a + 3..=len - 3);
        let mut e: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        e.extend([0, a, b].map(|p| (p, len)));
        (e, len + 1)
    };
    let mut present = VertexSet::from_iter_in(n, 0..first);
    let mut g = Graph::from_edges(n, &edges)?.sub(&present);
    let mut attempts = 1;
    for x in first..n {
        let pool = present.to_vec();
        present.insert(x);
        let mut placed = false;
        for tries in 0..60 {
            attempts += 1;
            let k = match tries {
                0..=39 => 3,
                40..=54 => 2,
                _ => 1,
            };
            let mut trial = edges.clone();
            trial.extend(pool.choose_multiple(&mut rng, k).map(|&u| (u, x)));
            let h = Graph::from_edges(n, &trial)?.sub(&present);
            if class_membership(&h, t, variant)?.member {
                edges = trial;
                g = h;
                placed = true;
                break;
            }
        }
        if !placed {
            edges.push((pool[0], x));
            g = Graph::from_edges(n, &edges)?.sub(&present);
        }
    }
    let report = class_membership(&g, t, variant)?;
    Ok(Sample { graph: g, report, attempts, repairs: 0 })
}

/// Size cap for samplers and the pipeline, overridable by `STARSEP_MAX_N`.
pub fn max_n() -> usize {
    std::env::var("STARSEP_MAX_N").ok().and_then(|s| s.parse().ok()).unwrap_or(MAX_SAMPLE_N)
}

/// Random exact weights. Each vertex gets an integer in `1..=10`; with
/// `skew`, one random vertex gets `skew * n` instead so that unbalanced
/// vertices appear.
pub fn random_weights(g: &Graph, seed: u64, skew: u32) -> WeightFn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_3e19);
    let vs = g.vertices().to_vec();
    let mut raw = vec![0i128; g.universe()];
    for &v in &vs {
        raw[v] = rng.gen_range(1..=10);
    }
    if skew > 0 && !vs.is_empty() {
        let v = *vs.choose(&mut rng).unwrap();
        raw[v] = i128::from(skew) * vs.len() as i128;
    }
    let total: i128 = raw.iter().sum();
    let vals = raw.into_iter().map(|x| Rational::new(x, total.max(1))).collect();
    WeightFn::from_rationals(g, vals).expect("normalized by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{detect_prism, detect_pyramid, detect_theta, hub_set};

    #[test]
    fn named_shapes() {
        let g = make(&NamedGraph::Theta(2, 3, 3)).unwrap();
        assert_eq!(g.order(), 7);
        assert!(detect_theta(&g).is_some());
        let g = make(&NamedGraph::Prism(1, 1, 1)).unwrap();
        assert_eq!((g.order(), g.edge_count()), (6, 9));
        assert!(detect_prism(&g).is_some());
        assert!(detect_pyramid(&make(&NamedGraph::Pyramid(1, 2, 2)).unwrap()).is_some());
        let w = make(&"WHEEL(9,{1,4,7})".parse().unwrap()).unwrap();
        assert_eq!(w.edges().collect::<Vec<_>>(), make(&NamedGraph::W93).unwrap().edges().collect::<Vec<_>>());
        assert_eq!(hub_set(&w, w.vertices()).to_vec(), vec![9]);
    }

    #[test]
    fn invalid_parameters() {
        assert!(make(&NamedGraph::Theta(1, 2, 2)).is_err());
        assert!(make(&NamedGraph::Pyramid(1, 1, 2)).is_err());
        assert!(make(&NamedGraph::Wheel { n: 5, spokes: vec![6] }).is_err());
        assert!("HEX(3)".parse::<NamedGraph>().is_err());
    }

    #[test]
    fn ids_round_trip_through_display() {
        for id in NamedGraph::catalog() {
            let back: NamedGraph = id.to_string().parse().unwrap();
            assert_eq!(make(&back).unwrap().edges().count(), make(&id).unwrap().edges().count());
        }
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let a = sample_class(9, 4, 1, Variant::Ct).unwrap();
        let b = sample_class(9, 4, 1, Variant::Ct).unwrap();
        assert!(a.report.member);
        assert_eq!(a.graph.edges().collect::<Vec<_>>(), b.graph.edges().collect::<Vec<_>>());
        let one = sample_class(1, 4, 7, Variant::Ct).unwrap();
        assert_eq!(one.graph.order(), 1);
    }

    #[test]
    fn grown_samples_keep_a_hub() {
        let s = sample_grown(14, 4, 2, Variant::Ct).unwrap();
        assert!(s.report.member);
        assert_eq!(s.graph.order(), 14);
        assert!(!hub_set(&s.graph, s.graph.vertices()).is_empty());
        let again = sample_grown(14, 4, 2, Variant::Ct).unwrap();
        assert_eq!(s.graph.edges().collect::<Vec<_>>(), again.graph.edges().collect::<Vec<_>>());
    }

    #[test]
    fn random_weights_normalized() {
        let g = make(&NamedGraph::W93).unwrap();
        let w = random_weights(&g, 3, 2);
        w.validate(&g).unwrap();
    }
}
