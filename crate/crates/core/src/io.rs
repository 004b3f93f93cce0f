//! Graph and weight readers/writers: JSON edge lists, graph6 and DIMACS.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph};
use crate::weight::{parse_rational, Rational, WeightFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Graph6,
    Dimacs,
}

/// Guesses the format from the first non-blank character(s).
pub fn sniff(text: &str) -> Format {
    let t = text.trim_start();
    if t.starts_with('{') {
        Format::Json
    } else if t.lines().next().is_some_and(|l| l == "c" || l.starts_with("c ") || l.starts_with("p ")) {
        Format::Dimacs
    } else {
        Format::Graph6
    }
}

/// Reads a graph, plus weights when the JSON input carries them.
pub fn read_graph(text: &str) -> Result<(Graph, Option<WeightFn>)> {
    match sniff(text) {
        Format::Json => read_json(text),
        Format::Graph6 => Ok((from_graph6(text)?, None)),
        Format::Dimacs => Ok((from_dimacs(text)?, None)),
    }
}

/// `{"n": 5, "edges": [[0, 1], ...], "weights": [...]}`; `weights` is optional.
pub fn read_json(text: &str) -> Result<(Graph, Option<WeightFn>)> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Input("missing integer field \"n\"".into()))?;
    let edges = v.get("edges").and_then(Value::as_array).ok_or_else(|| Error::Input("missing array \"edges\"".into()))?;
    let mut list = Vec::with_capacity(edges.len());
    for e in edges {
        let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Input(format!("bad edge {e}")))?;
        let a = pair[0].as_u64().ok_or_else(|| Error::Input(format!("bad edge {e}")))?;
        let b = pair[1].as_u64().ok_or_else(|| Error::Input(format!("bad edge {e}")))?;
        list.push((a as usize, b as usize));
    }
    let g = Graph::from_edges(n as usize, &list)?;
    let w = match v.get("weights") {
        None | Some(Value::Null) => None,
        Some(ws) => Some(parse_weights_value(&g, ws)?),
    };
    Ok((g, w))
}

/// A weight list given either as a bare array or as `{"weights": [...]}`.
pub fn read_weights(g: &Graph, text: &str) -> Result<WeightFn> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
    let arr = v.get("weights").unwrap_or(&v);
    parse_weights_value(g, arr)
}

/// Integers and `"p/q"` strings give exact weights; any float makes the
/// whole function a float one.
fn parse_weights_value(g: &Graph, v: &Value) -> Result<WeightFn> {
    let arr = v.as_array().ok_or_else(|| Error::Input("weights must be an array".into()))?;
    let exact = arr.iter().all(|x| x.is_string() || x.is_i64() || x.is_u64());
    if exact {
        let vals = arr
            .iter()
            .map(|x| match x {
                Value::String(s) => parse_rational(s),
                _ => Ok(Rational::from_integer(x.as_i64().unwrap() as i128)),
            })
            .collect::<Result<Vec<_>>>()?;
        WeightFn::from_rationals(g, vals)
    } else {
        let vals = arr
            .iter()
            .map(|x| match x {
                Value::String(s) => parse_rational(s).map(|r| *r.numer() as f64 / *r.denom() as f64),
                _ => x.as_f64().ok_or_else(|| Error::Input(format!("bad weight {x}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        WeightFn::from_floats(g, vals)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeList::from(g)).expect("edge lists serialize")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let line = text.trim().trim_start_matches(">>graph6<<");
    let bytes: Vec<u8> = line.bytes().collect();
    if bytes.is_empty() || bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Input("invalid graph6 string".into()));
    }
    let (n, rest) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        return Err(Error::Input("graph6 inputs above 258047 vertices are not supported".into()));
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != need {
        return Err(Error::Input(format!("graph6 body has {} bytes, expected {need}", rest.len())));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// graph6 of the compacted graph (vertices renumbered in increasing order).
pub fn to_graph6(g: &Graph) -> String {
    let (h, _) = g.compact();
    let n = h.universe();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut cur = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            cur = cur << 1 | h.adjacent(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(cur + 63);
                cur = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((cur << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// DIMACS `p edge n m` / `e u v` with 1-based vertices; `c` lines are comments.
pub fn from_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Input(format!("DIMACS line {}: {line:?}", no + 1));
        match parts.first() {
            None | Some(&"c") => {}
            Some(&"p") => {
                let v = parts.get(2).and_then(|s| s.parse::<usize>().ok()).ok_or_else(bad)?;
                n = Some(v);
            }
            Some(&"e") => {
                let a = parts.get(1).and_then(|s| s.parse::<usize>().ok()).ok_or_else(bad)?;
                let b = parts.get(2).and_then(|s| s.parse::<usize>().ok()).ok_or_else(bad)?;
                if a == 0 || b == 0 {
                    return Err(bad());
                }
                edges.push((a - 1, b - 1));
            }
            _ => return Err(bad()),
        }
    }
    let n = n.ok_or_else(|| Error::Input("DIMACS input has no problem line".into()))?;
    Graph::from_edges(n, &edges)
}

pub fn to_dimacs(g: &Graph) -> String {
    let (h, _) = g.compact();
    let mut s = format!("p edge {} {}\n", h.universe(), h.edge_count());
    for (u, v) in h.edges() {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, NamedGraph};
    use crate::weight::Weight;

    #[test]
    fn graph6_known_strings() {
        // K3 is "Bw", P3 (0-1-2) is "Bg"
        assert_eq!(to_graph6(&make(&NamedGraph::Complete(3)).unwrap()), "Bw");
        assert_eq!(to_graph6(&make(&NamedGraph::Path(3)).unwrap()), "Bg");
        let g = from_graph6("Bg").unwrap();
        assert!(g.adjacent(0, 1) && g.adjacent(1, 2) && !g.adjacent(0, 2));
        assert_eq!(from_graph6(">>graph6<<Bw\n").unwrap().edge_count(), 3);
        assert!(from_graph6("B").is_err());
    }

    #[test]
    fn json_with_weights() {
        let (g, w) = read_graph(r#"{"n": 3, "edges": [[0,1],[1,2]], "weights": ["1/2", "1/4", "1/4"]}"#).unwrap();
        let w = w.unwrap();
        assert!(w.is_exact());
        assert_eq!(w.get(0), Weight::Exact(Rational::new(1, 2)));
        assert_eq!(g.edge_count(), 2);
        let (_, w) = read_graph(r#"{"n": 2, "edges": [], "weights": [0.5, 0.5]}"#).unwrap();
        assert!(!w.unwrap().is_exact());
        assert!(read_graph(r#"{"n": 2, "edges": [[0,2]]}"#).is_err());
        assert!(read_graph(r#"{"n": 2, "edges": [], "weights": [1, 1]}"#).is_err());
    }

    #[test]
    fn dimacs() {
        let g = read_graph("c test\np edge 3 2\ne 1 2\ne 2 3\n").unwrap().0;
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(to_dimacs(&g), "p edge 3 2\ne 1 2\ne 2 3\n");
        assert!(from_dimacs("e 1 2\n").is_err());
    }
}
