//! Normalized vertex weight functions.
//!
//! Weights are either exact rationals or floats. Exact weights compare
//! exactly, so a component of weight exactly 1/2 is never misclassified;
//! float weights compare with an absolute tolerance of [`TOLERANCE`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

pub type Rational = Ratio<i128>;

pub const TOLERANCE: f64 = 1e-9;

pub fn half() -> Rational {
    Rational::new(1, 2)
}

/// Parses `"3/7"`, `"0.25"` or `"1"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("cannot parse {s:?} as a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int: i128 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let scale = 10i128.pow(frac.len() as u32);
        let f: i128 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int.abs() * scale + f;
        return Ok(Rational::new(if neg { -num } else { num }, scale));
    }
    s.parse::<i128>().map(Rational::from_integer).map_err(|_| bad())
}

pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Copy, PartialEq)]
pub enum Weight {
    Exact(Rational),
    Float(f64),
}

impl Weight {
    pub fn to_f64(self) -> f64 {
        match self {
            Weight::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Weight::Float(f) => f,
        }
    }

    fn zero(exact: bool) -> Weight {
        if exact {
            Weight::Exact(Rational::zero())
        } else {
            Weight::Float(0.0)
        }
    }

    /// `self <= c`, exactly for rationals and within [`TOLERANCE`] for floats.
    pub fn le(self, c: Rational) -> bool {
        match self {
            Weight::Exact(r) => r <= c,
            Weight::Float(f) => f <= c.to_f64().unwrap_or(f64::NAN) + TOLERANCE,
        }
    }

    /// Comparison that treats floats within [`TOLERANCE`] as equal.
    pub fn cmp_tol(self, other: Weight) -> Ordering {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => a.cmp(&b),
            (a, b) => {
                let (a, b) = (a.to_f64(), b.to_f64());
                if (a - b).abs() <= TOLERANCE {
                    Ordering::Equal
                } else {
                    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
                }
            }
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Weight::Exact(r) => r.is_zero(),
            Weight::Float(f) => f.abs() <= TOLERANCE,
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        match (self, rhs) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a + b),
            (a, b) => Weight::Float(a.to_f64() + b.to_f64()),
        }
    }
}

impl Div for Weight {
    type Output = Weight;
    fn div(self, rhs: Weight) -> Weight {
        match (self, rhs) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a / b),
            (a, b) => Weight::Float(a.to_f64() / b.to_f64()),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exact(r) => write!(f, "{}", format_rational(r)),
            Weight::Float(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Exact weights serialize as `"p/q"` strings, floats as numbers.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Weight::Exact(r) => s.serialize_str(&format_rational(r)),
            Weight::Float(f) => s.serialize_f64(*f),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Values {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

/// A weight function `w: V(G) -> [0,1]` with `w(G) = 1`, bound to the vertex
/// set of its host graph. Non-vertices of the host carry weight 0.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightFn {
    domain: VertexSet,
    values: Values,
}

impl WeightFn {
    /// Exact uniform weights `1/|V(G)|`.
    pub fn uniform(g: &Graph) -> Self {
        Self::uniform_on(g, g.vertices()).expect("a nonempty graph has uniform weights")
    }

    /// Exact weights `1/|S|` on `S` and zero elsewhere.
    pub fn uniform_on(g: &Graph, s: &VertexSet) -> Result<Self> {
        g.check_subset(s)?;
        if s.is_empty() {
            return Err(Error::Input("uniform weights need a nonempty support".into()));
        }
        let share = Rational::new(1, s.len() as i128);
        let values = (0..g.universe()).map(|v| if s.contains(v) { share } else { Rational::zero() }).collect();
        Ok(WeightFn { domain: g.vertices().clone(), values: Values::Exact(values) })
    }

    /// Exact weights, one entry per universe vertex.
    pub fn from_rationals(g: &Graph, values: Vec<Rational>) -> Result<Self> {
        let w = WeightFn { domain: g.vertices().clone(), values: Values::Exact(values) };
        w.validate(g)?;
        Ok(w)
    }

    /// Float weights, one entry per universe vertex; validated with tolerance 1e-9.
    pub fn from_floats(g: &Graph, values: Vec<f64>) -> Result<Self> {
        let w = WeightFn { domain: g.vertices().clone(), values: Values::Float(values) };
        w.validate(g)?;
        Ok(w)
    }

    /// Checks range, normalization and that the function is bound to `g`'s vertex set.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.domain != *g.vertices() {
            return Err(Error::Input("weight function is bound to a different vertex set".into()));
        }
        let n = g.universe();
        let len = match &self.values {
            Values::Exact(v) => v.len(),
            Values::Float(v) => v.len(),
        };
        if len != n {
            return Err(Error::Input(format!("expected {n} weights, got {len}")));
        }
        let one = Rational::from_integer(1);
        for v in 0..n {
            let ok = match &self.values {
                Values::Exact(x) => {
                    let r = x[v];
                    r >= Rational::zero() && r <= one && (self.domain.contains(v) || r.is_zero())
                }
                Values::Float(x) => {
                    let f = x[v];
                    f.is_finite() && (0.0..=1.0).contains(&f) && (self.domain.contains(v) || f == 0.0)
                }
            };
            if !ok {
                return Err(Error::Input(format!("weight of vertex {v} is out of range")));
            }
        }
        let total = self.sum(&self.domain);
        let normalized = match total {
            Weight::Exact(r) => r == one,
            Weight::Float(f) => (f - 1.0).abs() <= TOLERANCE,
        };
        if !normalized {
            return Err(Error::Input(format!("weights sum to {total}, not 1")));
        }
        Ok(())
    }

    pub fn domain(&self) -> &VertexSet {
        &self.domain
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, Values::Exact(_))
    }

    pub fn get(&self, v: usize) -> Weight {
        match &self.values {
            Values::Exact(x) => Weight::Exact(x[v]),
            Values::Float(x) => Weight::Float(x[v]),
        }
    }

    pub fn sum(&self, s: &VertexSet) -> Weight {
        match &self.values {
            Values::Exact(x) => Weight::Exact(s.iter().map(|v| x[v]).sum()),
            Values::Float(x) => Weight::Float(s.iter().map(|v| x[v]).sum()),
        }
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.is_exact())
    }

    /// A weight function on `domain` (a subset of the current domain) whose
    /// value at `v` is `f(v)`. The result is not validated.
    pub(crate) fn derive(&self, domain: &VertexSet, f: impl Fn(usize) -> Weight) -> WeightFn {
        let n = self.domain.universe();
        let values = match &self.values {
            Values::Exact(_) => Values::Exact(
                (0..n)
                    .map(|v| match (domain.contains(v), f(v)) {
                        (true, Weight::Exact(r)) => r,
                        (true, Weight::Float(_)) => unreachable!("mixed exact and float weights"),
                        (false, _) => Rational::zero(),
                    })
                    .collect(),
            ),
            Values::Float(_) => {
                Values::Float((0..n).map(|v| if domain.contains(v) { f(v).to_f64() } else { 0.0 }).collect())
            }
        };
        WeightFn { domain: domain.clone(), values }
    }

    /// Builds a weight function on an arbitrary graph from per-vertex weights
    /// that are normalized by their total. Used for auxiliary graphs.
    pub(crate) fn normalized_on(g: &Graph, raw: &[Weight], exact: bool) -> Option<WeightFn> {
        let total = raw.iter().copied().fold(Weight::zero(exact), |a, b| a + b);
        if total.is_zero() {
            return None;
        }
        let values = if exact {
            Values::Exact(
                raw.iter()
                    .map(|&w| match w / total {
                        Weight::Exact(r) => r,
                        Weight::Float(_) => unreachable!(),
                    })
                    .collect(),
            )
        } else {
            Values::Float(raw.iter().map(|&w| (w / total).to_f64()).collect())
        };
        Some(WeightFn { domain: g.vertices().clone(), values })
    }

    pub fn to_weights(&self) -> Vec<Weight> {
        (0..self.domain.universe()).map(|v| self.get(v)).collect()
    }
}

/// Weights of the components of `G \ removed`, in component order.
pub fn component_weights(g: &Graph, w: &WeightFn, removed: &VertexSet) -> Vec<(VertexSet, Weight)> {
    let rest = g.vertices() - removed;
    g.comps(&rest).into_iter().map(|c| {
        let wt = w.sum(&c);
        (c, wt)
    }).collect()
}

/// Whether every component of `G \ x` has weight at most `c`.
pub fn is_balanced_separator(g: &Graph, w: &WeightFn, x: &VertexSet, c: Rational) -> bool {
    component_weights(g, w, x).iter().all(|(_, wt)| wt.le(c))
}

/// Largest component weight of `G \ x` (zero when nothing is left).
pub fn max_component_weight(g: &Graph, w: &WeightFn, x: &VertexSet) -> Weight {
    component_weights(g, w, x)
        .into_iter()
        .map(|(_, wt)| wt)
        .max_by(|a, b| a.cmp_tol(*b))
        .unwrap_or_else(|| w.zero())
}
