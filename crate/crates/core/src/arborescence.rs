//! Disjoint spanning arborescences rooted at a common vertex.

use serde::{Deserialize, Serialize};

use crate::cuts::CutCertificate;
use crate::error::{Error, Result};
use crate::graph::{ArcId, ArcSet, ArcWeightVector, Digraph, VertexId};
use crate::maxflow::FlowNetwork;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Paths run from the root to every vertex.
    Out,
    /// Paths run from every vertex to the root.
    In,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArborescencePacking {
    pub root: VertexId,
    pub direction: Direction,
    pub trees: Vec<ArcSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedConnectivity {
    pub root: VertexId,
    /// Minimum weight leaving a vertex set that contains the root; `i64::MAX`
    /// on a single vertex.
    pub value: i64,
    pub witness: Option<CutCertificate>,
}

fn capacities(d: &Digraph, weights: Option<&ArcWeightVector>) -> Result<Vec<i64>> {
    match weights {
        Some(w) => {
            w.check_host(d.host())?;
            Ok(w.values())
        }
        None => Ok(vec![1; d.m()]),
    }
}

fn check_root(d: &Digraph, r: VertexId) -> Result<()> {
    if r >= d.n() {
        return Err(Error::VertexOutOfRange { vertex: r, n: d.n() });
    }
    Ok(())
}

/// Minimum over `t != r` of the max-flow from `r` to `t`, with a minimum cut.
pub fn rooted_connectivity(
    d: &Digraph,
    r: VertexId,
    weights: Option<&ArcWeightVector>,
) -> Result<RootedConnectivity> {
    check_root(d, r)?;
    let cap = capacities(d, weights)?;
    let mut net = FlowNetwork::new(d.n());
    for (a, &(t, h)) in d.arcs().iter().enumerate() {
        net.add_edge(t, h, cap[a]);
    }
    let mut best: Option<(i64, Vec<bool>)> = None;
    for t in (0..d.n()).filter(|&t| t != r) {
        net.reset();
        let limit = best.as_ref().map_or(i64::MAX, |b| b.0);
        let f = net.max_flow(r, t, limit);
        if f < limit {
            best = Some((f, net.source_side(r)));
        }
    }
    Ok(match best {
        None => RootedConnectivity {
            root: r,
            value: i64::MAX,
            witness: None,
        },
        Some((value, side)) => RootedConnectivity {
            root: r,
            value,
            witness: Some(CutCertificate::from_side(d, side, weights, None)),
        },
    })
}

/// Max-flow into `v` from `r` and `u` together, stopping at `limit`.
fn flow_into(d: &Digraph, cap: &[i64], r: VertexId, u: VertexId, v: VertexId, limit: i64) -> i64 {
    let mut net = FlowNetwork::new(d.n());
    for (a, &(t, h)) in d.arcs().iter().enumerate() {
        if cap[a] > 0 {
            net.add_edge(t, h, cap[a]);
        }
    }
    if u != r {
        net.add_edge(r, u, limit);
    }
    net.max_flow(r, v, limit)
}

/// `k` arc-disjoint spanning out-arborescences rooted at `r`, using each arc
/// at most its weight (default 1) times.
///
/// Each tree is grown from `r` by admitting the lowest-id arc leaving the
/// spanned set whose removal keeps every set avoiding `r` entered at least
/// `k - i - 1` times, which leaves room for the remaining trees.
pub fn pack_out_arborescences(
    d: &Digraph,
    r: VertexId,
    k: i64,
    weights: Option<&ArcWeightVector>,
) -> Result<ArborescencePacking> {
    check_root(d, r)?;
    if k < 0 {
        return Err(Error::InvalidParams(format!("k = {k} is negative")));
    }
    let mut cap = capacities(d, weights)?;
    let rc = rooted_connectivity(d, r, weights)?;
    if rc.value < k {
        return Err(Error::InsufficientConnectivity {
            root: r,
            requested: k,
            value: rc.value,
            witness: Box::new(rc.witness.expect("finite value has a witness")),
        });
    }
    let n = d.n();
    let mut trees = Vec::with_capacity(k as usize);
    for i in 0..k {
        let keep = k - i - 1;
        let mut spanned = vec![false; n];
        spanned[r] = true;
        let mut tree = d.empty_set();
        for _ in 1..n {
            let admitted = (0..d.m()).find(|&a| {
                let (u, v) = d.arcs()[a];
                if !spanned[u] || spanned[v] || cap[a] == 0 {
                    return false;
                }
                if keep == 0 {
                    return true;
                }
                cap[a] -= 1;
                let ok = flow_into(d, &cap, r, u, v, keep) >= keep;
                cap[a] += 1;
                ok
            });
            let a: ArcId = admitted.ok_or_else(|| {
                Error::Internal(format!("no safe arc while growing arborescence {i}"))
            })?;
            cap[a] -= 1;
            spanned[d.head(a)] = true;
            tree.insert(a);
        }
        trees.push(tree);
    }
    Ok(ArborescencePacking {
        root: r,
        direction: Direction::Out,
        trees,
    })
}

/// In-arborescence version: packs out-arborescences of the reversed digraph,
/// which keeps arc ids.
pub fn pack_in_arborescences(
    d: &Digraph,
    r: VertexId,
    k: i64,
    weights: Option<&ArcWeightVector>,
) -> Result<ArborescencePacking> {
    let rev = d.reverse();
    let w = match weights {
        Some(w) => {
            w.check_host(d.host())?;
            Some(ArcWeightVector::new(&rev, w.values())?)
        }
        None => None,
    };
    let packed = pack_out_arborescences(&rev, r, k, w.as_ref()).map_err(|e| match e {
        Error::InsufficientConnectivity {
            root,
            requested,
            value,
            witness,
        } => {
            // Arcs leaving the root side of the reversal leave its complement here.
            let side = witness.side.iter().map(|&b| !b).collect();
            Error::InsufficientConnectivity {
                root,
                requested,
                value,
                witness: Box::new(CutCertificate::from_side(d, side, weights, None)),
            }
        }
        other => other,
    })?;
    let trees = packed
        .trees
        .iter()
        .map(|t| ArcSet::from_ids(d, t.iter()))
        .collect::<Result<_>>()?;
    Ok(ArborescencePacking {
        root: r,
        direction: Direction::In,
        trees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArborescenceViolation {
    HostMismatch,
    BadRoot,
    Unreached { vertex: VertexId },
    Degree { vertex: VertexId, degree: usize },
    ArcCount { expected: usize, found: usize },
}

/// Checks reachability, then degrees, then the arc count.
pub fn validate_arborescence(
    d: &Digraph,
    t: &ArcSet,
    r: VertexId,
    direction: Direction,
) -> std::result::Result<(), ArborescenceViolation> {
    if t.host() != d.host() {
        return Err(ArborescenceViolation::HostMismatch);
    }
    if r >= d.n() {
        return Err(ArborescenceViolation::BadRoot);
    }
    let n = d.n();
    // Orient every arc away from the root.
    let oriented = |a: ArcId| {
        let (x, y) = d.arcs()[a];
        match direction {
            Direction::Out => (x, y),
            Direction::In => (y, x),
        }
    };
    let mut adj = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for a in t.iter() {
        let (x, y) = oriented(a);
        adj[x].push(y);
        indeg[y] += 1;
    }
    let mut seen = vec![false; n];
    seen[r] = true;
    let mut stack = vec![r];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if let Some(vertex) = (0..n).find(|&v| !seen[v]) {
        return Err(ArborescenceViolation::Unreached { vertex });
    }
    for (v, &degree) in indeg.iter().enumerate() {
        if degree != usize::from(v != r) {
            return Err(ArborescenceViolation::Degree { vertex: v, degree });
        }
    }
    if t.count() != n - 1 {
        return Err(ArborescenceViolation::ArcCount {
            expected: n - 1,
            found: t.count(),
        });
    }
    Ok(())
}
