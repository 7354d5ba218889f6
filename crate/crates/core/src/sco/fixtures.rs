//! Named small instances with known answers, each gated by checks before use.

use serde::Serialize;

use super::decompose::{decompose_scd, decompose_sco, Budget, DecompositionStatus};
use super::{member, member_rational, PolytopeFamily, PolytopeSpec};
use crate::cuts::mixed::MixedGraph;
use crate::error::{Error, Result};
use crate::graph::io::BiWeights;
use crate::graph::{UndirGraph, VertexId};

pub const NAMES: [&str; 4] = ["schrijver", "k4_all_ones", "k4_half", "schrijver_mixed"];

const K4: [(VertexId, VertexId); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Outer hexagon 0..5, inner hexagon 6..11. These arcs carry both copies
/// of their edge in the listed direction.
const SCHRIJVER_DASHED: [(VertexId, VertexId); 12] = [
    (0, 1),
    (2, 3),
    (4, 5),
    (7, 8),
    (9, 10),
    (11, 6),
    (1, 6),
    (3, 8),
    (5, 10),
    (2, 7),
    (4, 9),
    (0, 11),
];

/// Three paths 5-0-6-7, 1-2-8-9, 3-4-10-11; one copy each way.
const SCHRIJVER_SOLID: [(VertexId, VertexId); 9] = [
    (0, 6),
    (2, 8),
    (4, 10),
    (1, 2),
    (3, 4),
    (5, 0),
    (6, 7),
    (8, 9),
    (10, 11),
];

/// Half on these arcs of bidirected K4 (edges in [`K4`] order), 0 elsewhere.
const K4_HALF_SUPPORT: [usize; 8] = [0, 1, 2, 5, 7, 8, 10, 11];

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub weights: BiWeights,
    pub family: PolytopeFamily,
    pub tau: i64,
    /// What the fixture is known to do.
    pub expect: &'static str,
}

fn bi(edges: &[(VertexId, VertexId)], n: usize, pairs: &[(i64, i64)], den: i64) -> Result<BiWeights> {
    let g = UndirGraph::new(n, edges.to_vec())?.bidirect();
    let mut numerators = vec![0; g.digraph().m()];
    for (e, &(fw, bw)) in pairs.iter().enumerate() {
        // Pairs are given along the edge as listed, tail first.
        let f = g.arc_from(e, edges[e].0);
        numerators[f] = fw;
        numerators[g.reverse(f)] = bw;
    }
    Ok(BiWeights {
        graph: g,
        numerators,
        den,
    })
}

pub fn schrijver() -> Result<Fixture> {
    let edges: Vec<_> = SCHRIJVER_DASHED.iter().chain(&SCHRIJVER_SOLID).copied().collect();
    let pairs: Vec<_> = std::iter::repeat_n((2, 0), 12).chain(std::iter::repeat_n((1, 1), 9)).collect();
    Ok(Fixture {
        name: "schrijver",
        weights: bi(&edges, 12, &pairs, 1)?,
        family: PolytopeFamily::P0,
        tau: 2,
        expect: "a 2-SCO with no decomposition into 2 SCOs",
    })
}

pub fn k4_all_ones() -> Result<Fixture> {
    Ok(Fixture {
        name: "k4_all_ones",
        weights: bi(&K4, 4, &[(1, 1); 6], 1)?,
        family: PolytopeFamily::Q1,
        tau: 3,
        expect: "a nowhere-zero 3-SCD with no packing of 3 SCDs",
    })
}

pub fn k4_half() -> Result<Fixture> {
    let mut w = bi(&K4, 4, &[(0, 0); 6], 2)?;
    for a in K4_HALF_SUPPORT {
        w.numerators[a] = 1;
    }
    Ok(Fixture {
        name: "k4_half",
        weights: w,
        family: PolytopeFamily::Q0,
        tau: 1,
        expect: "a half-integral point of Q0^1 on bidirected K4",
    })
}

/// The Schrijver layout as a mixed graph: dashed edges become arcs, solid
/// edges stay undirected.
pub fn schrijver_mixed() -> Result<MixedGraph> {
    MixedGraph::new(12, SCHRIJVER_DASHED.to_vec(), SCHRIJVER_SOLID.to_vec())
}

pub fn fixture(name: &str) -> Result<Fixture> {
    match name {
        "schrijver" => schrijver(),
        "k4_all_ones" => k4_all_ones(),
        "k4_half" => k4_half(),
        _ => Err(Error::InvalidParams(format!(
            "unknown fixture {name:?}; known: {}",
            NAMES.join(", ")
        ))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Gate {
    pub check: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub valid: bool,
    pub gates: Vec<Gate>,
}

/// Runs the fixture's gates: membership, and for the integral ones the
/// exhaustive decomposition search that must come back absent.
pub fn check_fixture(f: &Fixture, budget: &Budget) -> Result<FixtureCheck> {
    let b = &f.weights.graph;
    let spec = PolytopeSpec::new(f.family, f.tau, b.clone())?;
    let mut gates = Vec::new();
    let label = format!("member {}^{}", f.family, f.tau);
    if f.weights.den == 1 {
        let w = f.weights.integral()?;
        gates.push(Gate {
            check: label,
            passed: member(&spec, &w)?.is_member(),
        });
        if gates[0].passed {
            let r = match f.family {
                PolytopeFamily::P0 | PolytopeFamily::P1 => decompose_sco(b, &w, f.tau, budget)?,
                PolytopeFamily::Q0 | PolytopeFamily::Q1 => decompose_scd(b, &w, f.tau, budget)?,
            };
            gates.push(Gate {
                check: format!("decomposition into {} parts is proven absent", f.tau),
                passed: r.status == DecompositionStatus::ProvenAbsent,
            });
        }
    } else {
        gates.push(Gate {
            check: label,
            passed: member_rational(&spec, &f.weights)?.is_member(),
        });
        let den = f.weights.den;
        gates.push(Gate {
            check: format!("entries in {{0, 1/{den}}}"),
            passed: f.weights.numerators.iter().all(|&v| v == 0 || v == 1),
        });
    }
    Ok(FixtureCheck {
        name: f.name.to_string(),
        valid: gates.iter().all(|g| g.passed),
        gates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::mixed::{explore_mixed, MixedMode};
    use crate::ratio::FlowRatio;

    #[test]
    fn all_fixtures_pass_gates() {
        for name in ["schrijver", "k4_all_ones", "k4_half"] {
            let f = fixture(name).unwrap();
            let c = check_fixture(&f, &Budget::unlimited()).unwrap();
            assert!(c.valid, "{name}: {:?}", c.gates);
        }
    }

    #[test]
    fn schrijver_mixed_has_no_orientation() {
        let mg = schrijver_mixed().unwrap();
        let two = FlowRatio::from_k(2, 1).unwrap();
        assert_eq!(explore_mixed(&mg, MixedMode::StrongRatio(two)).unwrap(), None);
        assert_eq!(explore_mixed(&mg, MixedMode::WeakCover).unwrap(), None);
    }

    #[test]
    fn unknown_name() {
        assert!(fixture("nope").is_err());
    }
}
