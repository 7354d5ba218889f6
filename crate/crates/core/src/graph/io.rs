//! Text, JSON and DOT formats.
//!
//! Graph text: `digraph <n> <m>` or `graph <n> <m>`, then `m` lines
//! `<tail> <head> [<weight>]`. Bidirected weights: `bigraph <n> <m> [<den>]`,
//! then `m` lines `<u> <v> <x_uv> <x_vu>`. Mixed graphs: `mixed <n> <|A|> <|E|>`,
//! then `a <t> <h>` and `e <u> <v>` lines. Blank lines and `#` comments are
//! skipped.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ArcWeightVector, BidirectedGraph, Digraph, UndirGraph, VertexId};
use crate::cuts::mixed::MixedGraph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFile {
    Digraph {
        graph: Digraph,
        weights: Option<Vec<i64>>,
    },
    Graph {
        graph: UndirGraph,
        weights: Option<Vec<i64>>,
    },
}

impl GraphFile {
    pub fn kind(&self) -> &'static str {
        match self {
            GraphFile::Digraph { .. } => "digraph",
            GraphFile::Graph { .. } => "graph",
        }
    }

    #[allow(clippy::type_complexity)]
    fn parts(&self) -> (usize, &[(VertexId, VertexId)], Option<&Vec<i64>>) {
        match self {
            GraphFile::Digraph { graph, weights } => (graph.n(), graph.arcs(), weights.as_ref()),
            GraphFile::Graph { graph, weights } => (graph.n(), graph.edges(), weights.as_ref()),
        }
    }

    /// Weights as a vector on the digraph, for digraph files.
    pub fn arc_weights(&self) -> Result<Option<ArcWeightVector>> {
        match self {
            GraphFile::Digraph {
                graph,
                weights: Some(w),
            } => Ok(Some(ArcWeightVector::new(graph, w.clone())?)),
            _ => Ok(None),
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next non-blank, non-comment line as (1-based number, fields).
    fn next_fields(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((i + 1, line.split_whitespace().collect()));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next_fields().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }

    fn finish(&mut self) -> Result<()> {
        match self.next_fields() {
            Some((line, _)) => Err(Error::Parse {
                line,
                msg: "trailing content after the declared lines".into(),
            }),
            None => Ok(()),
        }
    }
}

fn num<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected {what}, found {s:?}"),
    })
}

fn wrap(line: usize, r: Result<()>) -> Result<()> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            msg: other.to_string(),
        },
    })
}

fn check_pair(line: usize, n: usize, u: usize, v: usize) -> Result<()> {
    wrap(
        line,
        if u >= n || v >= n {
            Err(Error::VertexOutOfRange { vertex: u.max(v), n })
        } else if u == v {
            Err(Error::SelfLoop(u))
        } else {
            Ok(())
        },
    )
}

/// Parses the graph text format, or its JSON mirror when the input starts with `{`.
pub fn parse_graph(text: &str) -> Result<GraphFile> {
    if text.trim_start().starts_with('{') {
        return parse_graph_json(text);
    }
    let mut lines = Lines::new(text);
    let (hl, header) = lines.expect("a header")?;
    if header.len() != 3 || !(header[0] == "digraph" || header[0] == "graph") {
        return Err(Error::Parse {
            line: hl,
            msg: "header must be `digraph <n> <m>` or `graph <n> <m>`".into(),
        });
    }
    let n: usize = num(hl, header[1], "vertex count")?;
    let m: usize = num(hl, header[2], "arc count")?;
    if n > super::MAX_SIZE || m > super::MAX_SIZE {
        return Err(Error::TooLarge(format!("n = {n}, m = {m}")));
    }
    let mut pairs = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut any_weight = false;
    for _ in 0..m {
        let (ln, f) = lines.expect("an arc line")?;
        if f.len() != 2 && f.len() != 3 {
            return Err(Error::Parse {
                line: ln,
                msg: "arc line must be `<tail> <head> [<weight>]`".into(),
            });
        }
        let u: usize = num(ln, f[0], "vertex")?;
        let v: usize = num(ln, f[1], "vertex")?;
        check_pair(ln, n, u, v)?;
        let w: i64 = match f.get(2) {
            Some(s) => {
                any_weight = true;
                let w: i64 = num(ln, s, "weight")?;
                if !(0..=i32::MAX as i64).contains(&w) {
                    return Err(Error::Parse {
                        line: ln,
                        msg: format!("weight {w} outside 0..=2^31-1"),
                    });
                }
                w
            }
            None => 1,
        };
        pairs.push((u, v));
        weights.push(w);
    }
    lines.finish()?;
    let weights = any_weight.then_some(weights);
    Ok(if header[0] == "digraph" {
        GraphFile::Digraph {
            graph: Digraph::new(n, pairs)?,
            weights,
        }
    } else {
        GraphFile::Graph {
            graph: UndirGraph::new(n, pairs)?,
            weights,
        }
    })
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    kind: String,
    n: usize,
    arcs: Vec<Vec<i64>>,
}

fn parse_graph_json(text: &str) -> Result<GraphFile> {
    let j: JsonGraph = serde_json::from_str(text)?;
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let mut pairs = Vec::new();
    let mut weights = Vec::new();
    let mut any_weight = false;
    for (i, a) in j.arcs.iter().enumerate() {
        if a.len() != 2 && a.len() != 3 {
            return Err(bad(format!("arc {i} must be [t, h] or [t, h, w]")));
        }
        if a.iter().any(|&x| x < 0) {
            return Err(bad(format!("arc {i} has a negative entry")));
        }
        let (u, v) = (a[0] as usize, a[1] as usize);
        check_pair(1, j.n, u, v)?;
        if let Some(&w) = a.get(2) {
            any_weight = true;
            if w > i32::MAX as i64 {
                return Err(bad(format!("arc {i} weight too large")));
            }
        }
        pairs.push((u, v));
        weights.push(a.get(2).copied().unwrap_or(1));
    }
    let weights = any_weight.then_some(weights);
    match j.kind.as_str() {
        "digraph" => Ok(GraphFile::Digraph {
            graph: Digraph::new(j.n, pairs)?,
            weights,
        }),
        "graph" => Ok(GraphFile::Graph {
            graph: UndirGraph::new(j.n, pairs)?,
            weights,
        }),
        other => Err(bad(format!("unknown kind {other:?}"))),
    }
}

pub fn write_graph(file: &GraphFile) -> String {
    let (n, pairs, weights) = file.parts();
    let mut s = format!("{} {} {}\n", file.kind(), n, pairs.len());
    for (i, &(u, v)) in pairs.iter().enumerate() {
        match weights {
            Some(w) => writeln!(s, "{u} {v} {}", w[i]),
            None => writeln!(s, "{u} {v}"),
        }
        .expect("writing to a String");
    }
    s
}

pub fn graph_json(file: &GraphFile) -> serde_json::Value {
    let (n, pairs, weights) = file.parts();
    let arcs = pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            let mut a = vec![u as i64, v as i64];
            if let Some(w) = weights {
                a.push(w[i]);
            }
            a
        })
        .collect();
    serde_json::to_value(JsonGraph {
        kind: file.kind().into(),
        n,
        arcs,
    })
    .expect("plain data serializes")
}

pub fn write_dot(file: &GraphFile) -> String {
    let (n, pairs, weights) = file.parts();
    let (kw, op) = match file {
        GraphFile::Digraph { .. } => ("digraph", "->"),
        GraphFile::Graph { .. } => ("graph", "--"),
    };
    let mut s = format!("{kw} G {{\n");
    for v in 0..n {
        writeln!(s, "  {v};").expect("writing to a String");
    }
    for (i, &(u, v)) in pairs.iter().enumerate() {
        match weights {
            Some(w) => writeln!(s, "  {u} {op} {v} [label=\"{}\", id=\"{i}\"];", w[i]),
            None => writeln!(s, "  {u} {op} {v} [id=\"{i}\"];"),
        }
        .expect("writing to a String");
    }
    s.push_str("}\n");
    s
}

/// Weights on both directions of every edge, as `numerators / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiWeights {
    pub graph: BidirectedGraph,
    /// Indexed by bidirected arc id (2e is e+, 2e + 1 is e-).
    pub numerators: Vec<i64>,
    pub den: i64,
}

impl BiWeights {
    pub fn integral(&self) -> Result<ArcWeightVector> {
        if self.den != 1 {
            return Err(Error::InvalidParams("weights are not integral".into()));
        }
        ArcWeightVector::new(self.graph.digraph(), self.numerators.clone())
    }
}

pub fn parse_biweights(text: &str) -> Result<BiWeights> {
    let mut lines = Lines::new(text);
    let (hl, header) = lines.expect("a header")?;
    if !(header.len() == 3 || header.len() == 4) || header[0] != "bigraph" {
        return Err(Error::Parse {
            line: hl,
            msg: "header must be `bigraph <n> <m> [<den>]`".into(),
        });
    }
    let n: usize = num(hl, header[1], "vertex count")?;
    let m: usize = num(hl, header[2], "edge count")?;
    let den: i64 = match header.get(3) {
        Some(s) => num(hl, s, "denominator")?,
        None => 1,
    };
    if den < 1 {
        return Err(Error::Parse {
            line: hl,
            msg: "denominator must be positive".into(),
        });
    }
    if n > super::MAX_SIZE || m > super::MAX_SIZE {
        return Err(Error::TooLarge(format!("n = {n}, m = {m}")));
    }
    let mut edges = Vec::with_capacity(m);
    let mut raw = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, f) = lines.expect("an edge line")?;
        if f.len() != 4 {
            return Err(Error::Parse {
                line: ln,
                msg: "edge line must be `<u> <v> <x_uv> <x_vu>`".into(),
            });
        }
        let u: usize = num(ln, f[0], "vertex")?;
        let v: usize = num(ln, f[1], "vertex")?;
        check_pair(ln, n, u, v)?;
        let a: i64 = num(ln, f[2], "weight")?;
        let b: i64 = num(ln, f[3], "weight")?;
        if a < 0 || b < 0 || a > i32::MAX as i64 || b > i32::MAX as i64 {
            return Err(Error::Parse {
                line: ln,
                msg: "weights must lie in 0..=2^31-1".into(),
            });
        }
        edges.push((u, v));
        raw.push((u, a, b));
    }
    lines.finish()?;
    let graph = UndirGraph::new(n, edges)?.bidirect();
    let mut numerators = vec![0; 2 * m];
    for (e, &(u, a, b)) in raw.iter().enumerate() {
        // x_uv belongs to the arc leaving u.
        let uv = graph.arc_from(e, u);
        numerators[uv] = a;
        numerators[graph.reverse(uv)] = b;
    }
    Ok(BiWeights {
        graph,
        numerators,
        den,
    })
}

pub fn write_biweights(w: &BiWeights) -> String {
    let g = w.graph.base();
    let mut s = if w.den == 1 {
        format!("bigraph {} {}\n", g.n(), g.m())
    } else {
        format!("bigraph {} {} {}\n", g.n(), g.m(), w.den)
    };
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let uv = w.graph.arc_from(e, u);
        writeln!(s, "{u} {v} {} {}", w.numerators[uv], w.numerators[w.graph.reverse(uv)])
            .expect("writing to a String");
    }
    s
}

pub fn parse_mixed(text: &str) -> Result<MixedGraph> {
    let mut lines = Lines::new(text);
    let (hl, header) = lines.expect("a header")?;
    if header.len() != 4 || header[0] != "mixed" {
        return Err(Error::Parse {
            line: hl,
            msg: "header must be `mixed <n> <|A|> <|E|>`".into(),
        });
    }
    let n: usize = num(hl, header[1], "vertex count")?;
    let na: usize = num(hl, header[2], "arc count")?;
    let ne: usize = num(hl, header[3], "edge count")?;
    if n > super::MAX_SIZE || na > super::MAX_SIZE || ne > super::MAX_SIZE {
        return Err(Error::TooLarge(format!("n = {n}")));
    }
    let mut arcs = Vec::new();
    let mut edges = Vec::new();
    for _ in 0..na + ne {
        let (ln, f) = lines.expect("an `a` or `e` line")?;
        if f.len() != 3 || !(f[0] == "a" || f[0] == "e") {
            return Err(Error::Parse {
                line: ln,
                msg: "line must be `a <t> <h>` or `e <u> <v>`".into(),
            });
        }
        let u: usize = num(ln, f[1], "vertex")?;
        let v: usize = num(ln, f[2], "vertex")?;
        check_pair(ln, n, u, v)?;
        if f[0] == "a" {
            arcs.push((u, v));
        } else {
            edges.push((u, v));
        }
    }
    lines.finish()?;
    if arcs.len() != na || edges.len() != ne {
        return Err(Error::Parse {
            line: hl,
            msg: format!("header declares {na} arcs and {ne} edges, found {} and {}", arcs.len(), edges.len()),
        });
    }
    MixedGraph::new(n, arcs, edges)
}

pub fn write_mixed(mg: &MixedGraph) -> String {
    let mut s = format!("mixed {} {} {}\n", mg.n(), mg.arcs().len(), mg.edges().len());
    for &(t, h) in mg.arcs() {
        writeln!(s, "a {t} {h}").expect("writing to a String");
    }
    for &(u, v) in mg.edges() {
        writeln!(s, "e {u} {v}").expect("writing to a String");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let text = "digraph 3 2\n0 1 4\n1 2 0\n";
        let f = parse_graph(text).unwrap();
        assert_eq!(write_graph(&f), text);
        let json = graph_json(&f).to_string();
        assert_eq!(parse_graph(&json).unwrap(), f);
    }

    #[test]
    fn unweighted_graph() {
        let f = parse_graph("graph 2 1\n# comment\n\n0 1\n").unwrap();
        assert!(matches!(f, GraphFile::Graph { weights: None, .. }));
        assert!(write_dot(&f).contains("0 -- 1"));
    }

    #[test]
    fn parse_errors_carry_lines() {
        match parse_graph("digraph 2 1\n1 1\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_graph("digraph 2 2\n0 1\n").is_err());
        assert!(parse_graph("digraph 2 1\n0 1\n0 1\n").is_err());
        assert!(parse_graph("digraph 2 1\n0 5\n").is_err());
        assert!(parse_graph("digraph 2 1\n0 1 -3\n").is_err());
    }

    #[test]
    fn biweights_round_trip() {
        let text = "bigraph 3 2 2\n1 0 1 0\n1 2 0 1\n";
        let w = parse_biweights(text).unwrap();
        // Edge 0 is {1, 0}: e+ runs 0 -> 1 and gets x_01 = 0.
        assert_eq!(w.numerators, vec![0, 1, 0, 1]);
        assert_eq!(write_biweights(&w), text);
    }

    #[test]
    fn mixed_round_trip() {
        let text = "mixed 3 1 2\na 0 1\ne 1 2\ne 2 0\n";
        let mg = parse_mixed(text).unwrap();
        assert_eq!(write_mixed(&mg), text);
        assert!(parse_mixed("mixed 3 2 0\na 0 1\n").is_err());
    }
}
