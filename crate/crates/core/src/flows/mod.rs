//! Integral circulations, circular k-flows given an orientation, and the
//! nowhere-zero 6-flow construction.

mod six;

pub use six::{six_flow, six_flow_group, GroupFlow};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cuts::CutCertificate;
use crate::error::{Error, Result};
use crate::graph::{ArcSet, BidirectedGraph, Digraph, EdgeId, VertexId};
use crate::limits::limits;
use crate::maxflow::FlowNetwork;
use crate::ratio::FlowRatio;

/// An orientation of the base graph of a bidirected graph with one integer
/// value per edge, meant to lie in `p..=q` and be conserved at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    /// One of e+ / e- per edge.
    pub orientation: ArcSet,
    /// Indexed by edge id.
    pub values: Vec<i64>,
    pub bounds: FlowRatio,
}

impl FlowAssignment {
    /// `true` where the flow runs along e+.
    pub fn plus_bits(&self, b: &BidirectedGraph) -> Result<Vec<bool>> {
        b.orientation_bits(&self.orientation)
    }

    pub fn to_file(&self, b: &BidirectedGraph) -> Result<FlowFile> {
        let bits = self.plus_bits(b)?;
        Ok(FlowFile {
            orient: bits.iter().map(|&p| if p { "+" } else { "-" }.to_string()).collect(),
            values: self.values.clone(),
            p: self.bounds.p(),
            q: self.bounds.q(),
        })
    }

    /// Multiplies every value and both bounds by `c >= 1`.
    pub fn scaled(&self, c: i64) -> Result<Self> {
        Ok(FlowAssignment {
            orientation: self.orientation.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
            bounds: FlowRatio::from_bounds(self.bounds.p() * c, self.bounds.q() * c)?,
        })
    }

    /// Same values on the opposite orientation.
    pub fn reversed(&self, b: &BidirectedGraph) -> Result<Self> {
        let bits: Vec<bool> = self.plus_bits(b)?.iter().map(|x| !x).collect();
        Ok(FlowAssignment {
            orientation: b.orientation_from_bits(&bits),
            values: self.values.clone(),
            bounds: self.bounds,
        })
    }
}

/// JSON form of a [`FlowAssignment`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowFile {
    pub orient: Vec<String>,
    pub values: Vec<i64>,
    pub p: i64,
    pub q: i64,
}

impl FlowFile {
    pub fn into_assignment(self, b: &BidirectedGraph) -> Result<FlowAssignment> {
        if self.orient.len() != b.edge_count() || self.values.len() != b.edge_count() {
            return Err(Error::InvalidFlow(format!(
                "flow file lists {} orientations and {} values for {} edges",
                self.orient.len(),
                self.values.len(),
                b.edge_count()
            )));
        }
        let bits = self
            .orient
            .iter()
            .enumerate()
            .map(|(e, s)| match s.as_str() {
                "+" => Ok(true),
                "-" => Ok(false),
                _ => Err(Error::InvalidFlow(format!("edge {e}: orientation {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FlowAssignment {
            orientation: b.orientation_from_bits(&bits),
            values: self.values,
            bounds: FlowRatio::from_bounds(self.p, self.q)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FlowViolation {
    HostMismatch,
    NotOrientation { edge: EdgeId },
    Length { expected: usize, found: usize },
    OutOfBounds { edge: EdgeId, value: i64 },
    Conservation { vertex: VertexId, excess: i64 },
}

impl std::fmt::Display for FlowViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FlowViolation::HostMismatch => write!(f, "orientation belongs to another graph"),
            FlowViolation::NotOrientation { edge } => write!(f, "edge {edge} is not oriented exactly once"),
            FlowViolation::Length { expected, found } => {
                write!(f, "{found} values for {expected} edges")
            }
            FlowViolation::OutOfBounds { edge, value } => {
                write!(f, "edge {edge} carries {value}, outside the bounds")
            }
            FlowViolation::Conservation { vertex, excess } => {
                write!(f, "vertex {vertex} has net outflow {excess}")
            }
        }
    }
}

/// Checks orientation, bounds and exact conservation; reports the first failure.
pub fn verify_flow(b: &BidirectedGraph, fa: &FlowAssignment) -> std::result::Result<(), FlowViolation> {
    if fa.orientation.host() != b.host() {
        return Err(FlowViolation::HostMismatch);
    }
    if fa.values.len() != b.edge_count() {
        return Err(FlowViolation::Length {
            expected: b.edge_count(),
            found: fa.values.len(),
        });
    }
    let (p, q) = (fa.bounds.p(), fa.bounds.q());
    let mut net = vec![0i64; b.n()];
    for e in 0..b.edge_count() {
        let arc = match (fa.orientation.contains(b.plus(e)), fa.orientation.contains(b.minus(e))) {
            (true, false) => b.plus(e),
            (false, true) => b.minus(e),
            _ => return Err(FlowViolation::NotOrientation { edge: e }),
        };
        let value = fa.values[e];
        if value < p || value > q {
            return Err(FlowViolation::OutOfBounds { edge: e, value });
        }
        let (t, h) = b.digraph().arcs()[arc];
        net[t] += value;
        net[h] -= value;
    }
    match net.iter().position(|&x| x != 0) {
        Some(vertex) => Err(FlowViolation::Conservation {
            vertex,
            excess: net[vertex],
        }),
        None => Ok(()),
    }
}

pub(crate) fn require_flow(b: &BidirectedGraph, fa: &FlowAssignment) -> Result<()> {
    verify_flow(b, fa).map_err(|v| Error::InvalidFlow(v.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Circulation {
    /// Value per arc.
    Feasible(Vec<i64>),
    /// `U` with `lower(in(U)) > upper(out(U))`.
    Infeasible(CutCertificate),
}

/// Integral circulation with `lower <= f <= upper`, or a violated cut.
pub fn circulation_feasible(d: &Digraph, lower: &[i64], upper: &[i64]) -> Result<Circulation> {
    if lower.len() != d.m() || upper.len() != d.m() {
        return Err(Error::InvalidParams("bound vectors must have one entry per arc".into()));
    }
    for a in 0..d.m() {
        if lower[a] < 0 || lower[a] > upper[a] {
            return Err(Error::InvalidParams(format!(
                "arc {a}: bounds {}..={} are not 0 <= lower <= upper",
                lower[a], upper[a]
            )));
        }
    }
    let n = d.n();
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    let mut excess = vec![0i64; n];
    let mut ids = Vec::with_capacity(d.m());
    for (a, &(u, v)) in d.arcs().iter().enumerate() {
        ids.push(net.add_edge(u, v, upper[a] - lower[a]));
        excess[v] = excess[v]
            .checked_add(lower[a])
            .ok_or_else(|| Error::InvalidParams("bounds overflow".into()))?;
        excess[u] -= lower[a];
    }
    let mut need = 0i64;
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            net.add_edge(s, v, x);
            need += x;
        } else if x < 0 {
            net.add_edge(v, t, -x);
        }
    }
    if net.max_flow(s, t, need) == need {
        let f = (0..d.m()).map(|a| lower[a] + net.flow(ids[a])).collect();
        return Ok(Circulation::Feasible(f));
    }
    let reach = net.source_side(s);
    let side = reach[..n].to_vec();
    Ok(Circulation::Infeasible(CutCertificate::from_side(d, side, None, None)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JaegerOutcome {
    Flow(FlowAssignment),
    Unbalanced(CutCertificate),
}

/// A circular k-flow on `orient` with values in `p..=q` (k = 1 + q/p in
/// lowest terms), or a cut proving `orient` is not k-cut-balanced.
pub fn jaeger_flow_from_orientation(
    b: &BidirectedGraph,
    orient: &ArcSet,
    k: FlowRatio,
) -> Result<JaegerOutcome> {
    let plus = b.orientation_bits(orient)?;
    let k = k.reduced();
    let od = b.oriented_digraph(&plus);
    let lower = vec![k.p(); od.m()];
    let upper = vec![k.q(); od.m()];
    Ok(match circulation_feasible(&od, &lower, &upper)? {
        Circulation::Feasible(values) => {
            let fa = FlowAssignment {
                orientation: orient.clone(),
                values,
                bounds: k,
            };
            require_flow(b, &fa)?;
            JaegerOutcome::Flow(fa)
        }
        Circulation::Infeasible(cut) => JaegerOutcome::Unbalanced(CutCertificate::from_side(
            b.digraph(),
            cut.side,
            None,
            Some(orient),
        )),
    })
}

/// Lowest-index k-cut-balanced orientation over all 2^m, where bit `e` of the
/// index set means e+.
pub fn balanced_orientation_search(b: &BidirectedGraph, k: FlowRatio) -> Result<Option<ArcSet>> {
    let m = b.edge_count();
    let limit = limits().orientation_edges;
    if m > limit {
        return Err(Error::Guard(format!(
            "orientation search is limited to {limit} edges, got {m}"
        )));
    }
    let k = k.reduced();
    let (p, q) = (k.p(), k.q());
    let arcs = b.digraph().arcs();
    let found = (0u64..1u64 << m).into_par_iter().find_first(|&mask| {
        let mut out = vec![0i64; b.n()];
        let mut inn = vec![0i64; b.n()];
        let bits: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
        for (e, &pl) in bits.iter().enumerate() {
            let (t, h) = arcs[if pl { 2 * e } else { 2 * e + 1 }];
            out[t] += 1;
            inn[h] += 1;
        }
        if (0..b.n()).any(|v| p * inn[v] > q * out[v] || p * out[v] > q * inn[v]) {
            return false;
        }
        let od = b.oriented_digraph(&bits);
        matches!(
            circulation_feasible(&od, &vec![p; m], &vec![q; m]),
            Ok(Circulation::Feasible(_))
        )
    });
    Ok(found.map(|mask| {
        let bits: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
        b.orientation_from_bits(&bits)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UndirGraph;

    fn cycle(n: usize) -> BidirectedGraph {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        UndirGraph::new(n, edges).unwrap().bidirect()
    }

    #[test]
    fn cycle_circulation() {
        let d = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        match circulation_feasible(&d, &[1; 3], &[5; 3]).unwrap() {
            Circulation::Feasible(f) => assert_eq!(f, vec![1, 1, 1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_arc_infeasible() {
        let d = Digraph::new(2, vec![(0, 1)]).unwrap();
        match circulation_feasible(&d, &[1], &[1]).unwrap() {
            Circulation::Infeasible(c) => assert_eq!(c.vertices(), vec![1]),
            other => panic!("{other:?}"),
        }
        assert!(circulation_feasible(&d, &[2], &[1]).is_err());
    }

    #[test]
    fn c4_two_flow() {
        let b = cycle(4);
        // Edge 3 is {3, 0}; its e+ runs 0 -> 3, so the cycle 0->1->2->3->0 uses e-.
        let o = b.orientation_from_bits(&[true, true, true, false]);
        match jaeger_flow_from_orientation(&b, &o, FlowRatio::from_k(2, 1).unwrap()).unwrap() {
            JaegerOutcome::Flow(fa) => assert_eq!(fa.values, vec![1; 4]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sink_vertex_certificate() {
        let b = cycle(3);
        // 0->1, 1->2, 0->2: vertex 2 has out-degree 0.
        let o = b.orientation_from_bits(&[true, true, true]);
        match jaeger_flow_from_orientation(&b, &o, FlowRatio::six()).unwrap() {
            JaegerOutcome::Unbalanced(c) => assert_eq!(c.vertices(), vec![2]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verify_reports_vertex() {
        let b = cycle(3);
        let o = b.orientation_from_bits(&[true, true, false]);
        let mut fa = FlowAssignment {
            orientation: o,
            values: vec![2, 2, 2],
            bounds: FlowRatio::six(),
        };
        assert_eq!(verify_flow(&b, &fa), Ok(()));
        fa.values[1] = 3;
        assert_eq!(
            verify_flow(&b, &fa),
            Err(FlowViolation::Conservation { vertex: 1, excess: 1 })
        );
        fa.values[1] = 6;
        assert_eq!(verify_flow(&b, &fa), Err(FlowViolation::OutOfBounds { edge: 1, value: 6 }));
    }

    #[test]
    fn search_examples() {
        let two = FlowRatio::from_k(2, 1).unwrap();
        assert!(balanced_orientation_search(&cycle(4), two).unwrap().is_some());
        let mut k4 = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                k4.push((u, v));
            }
        }
        let k4 = UndirGraph::new(4, k4).unwrap().bidirect();
        assert!(balanced_orientation_search(&k4, two).unwrap().is_none());
    }

    #[test]
    fn flow_file_round_trip() {
        let b = cycle(3);
        let fa = FlowAssignment {
            orientation: b.orientation_from_bits(&[true, true, false]),
            values: vec![1, 1, 1],
            bounds: FlowRatio::six(),
        };
        let file = fa.to_file(&b).unwrap();
        assert_eq!(file.orient, vec!["+", "+", "-"]);
        let json = serde_json::to_string(&file).unwrap();
        let back: FlowFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_assignment(&b).unwrap(), fa);
    }
}
