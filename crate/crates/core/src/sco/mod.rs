//! Strongly connected orientations (SCOs) and strongly connected spanning
//! subdigraphs (SCDs) of a bidirected graph, as integer vectors.
//!
//! A `tau`-SCO picks `tau` copies of every edge split between its two
//! directions with every cut crossed outward at least `tau` times; a
//! `tau`-SCD drops the per-edge equality. The `P` families are the SCO
//! polytopes and the `Q` families the SCD ones; the subscript 1 adds the
//! nowhere-zero bounds.

pub mod decompose;
pub mod fixtures;

use serde::{Deserialize, Serialize};

use crate::arborescence::{pack_in_arborescences, pack_out_arborescences};
use crate::cuts::{min_dicut, min_directed_cut, CutCertificate};
use crate::dijoin::{verify_packing, DijoinPacking};
use crate::error::{Error, Result};
use crate::flows::{require_flow, FlowAssignment};
use crate::graph::connectivity::{check_two_edge_connected, strongly_connected};
use crate::graph::io::BiWeights;
use crate::graph::{ArcId, ArcSet, ArcWeightVector, BidirectedGraph, Digraph, EdgeId, UndirGraph, VertexId};
use crate::limits::limits;

pub use decompose::{decompose_scd, decompose_sco, Budget, DecompositionResult, DecompositionStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolytopeFamily {
    P0,
    P1,
    Q0,
    Q1,
}

impl PolytopeFamily {
    /// Whether `x_{e+} + x_{e-} = tau` is required.
    pub fn paired(self) -> bool {
        matches!(self, PolytopeFamily::P0 | PolytopeFamily::P1)
    }

    pub fn lower_bound(self) -> i64 {
        match self {
            PolytopeFamily::P0 | PolytopeFamily::Q0 => 0,
            PolytopeFamily::P1 | PolytopeFamily::Q1 => 1,
        }
    }
}

impl std::fmt::Display for PolytopeFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for PolytopeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "P0" => Ok(PolytopeFamily::P0),
            "P1" => Ok(PolytopeFamily::P1),
            "Q0" => Ok(PolytopeFamily::Q0),
            "Q1" => Ok(PolytopeFamily::Q1),
            _ => Err(Error::InvalidParams(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PolytopeSpec {
    pub family: PolytopeFamily,
    pub tau: i64,
    pub host: BidirectedGraph,
}

impl PolytopeSpec {
    pub fn new(family: PolytopeFamily, tau: i64, host: BidirectedGraph) -> Result<Self> {
        if tau < 1 {
            return Err(Error::InvalidParams(format!("tau = {tau} must be positive")));
        }
        Ok(PolytopeSpec { family, tau, host })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum PolytopeViolation {
    /// `x_{e+} + x_{e-}` differs from `tau` (scaled by the denominator).
    PairSum { edge: EdgeId, sum: i64 },
    LowerBound { arc: ArcId, value: i64 },
    /// A cut whose outgoing weight is below `tau`.
    Cut { cut: CutCertificate },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "violation", rename_all = "snake_case")]
pub enum Membership {
    Member,
    Violation(PolytopeViolation),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// Scans every proper nonempty `U` in increasing bitmask order for a cut
/// with outgoing weight below `bound`.
fn first_light_cut(d: &Digraph, x: &[i64], bound: i64) -> Option<Vec<bool>> {
    let n = d.n();
    let arcs: Vec<(u32, u32, i64)> = d
        .arcs()
        .iter()
        .zip(x)
        .filter(|&(_, &w)| w != 0)
        .map(|(&(t, h), &w)| (t as u32, h as u32, w))
        .collect();
    (1u64..(1u64 << n) - 1).find_map(|u| {
        let mut out = 0;
        for &(t, h, w) in &arcs {
            if u >> t & 1 == 1 && u >> h & 1 == 0 {
                out += w;
                if out >= bound {
                    return None;
                }
            }
        }
        Some((0..n).map(|v| u >> v & 1 == 1).collect())
    })
}

fn check_member(spec: &PolytopeSpec, x: &[i64], den: i64) -> Result<Membership> {
    let b = &spec.host;
    let d = b.digraph();
    if x.len() != d.m() {
        return Err(Error::HostMismatch);
    }
    let tau = spec.tau * den;
    if spec.family.paired() {
        for e in 0..b.edge_count() {
            let sum = x[b.plus(e)] + x[b.minus(e)];
            if sum != tau {
                return Ok(Membership::Violation(PolytopeViolation::PairSum { edge: e, sum }));
            }
        }
    }
    let lower = spec.family.lower_bound() * den;
    if let Some(arc) = (0..d.m()).find(|&a| x[a] < lower) {
        return Ok(Membership::Violation(PolytopeViolation::LowerBound { arc, value: x[arc] }));
    }
    let w = ArcWeightVector::new(d, x.to_vec())?;
    let side = if d.n() <= limits().cut_scan_vertices {
        first_light_cut(d, x, tau)
    } else {
        min_directed_cut(d, Some(&w))?.filter(|c| c.value < tau).map(|c| c.side)
    };
    Ok(match side {
        None => Membership::Member,
        Some(side) => Membership::Violation(PolytopeViolation::Cut {
            cut: CutCertificate::from_side(d, side, Some(&w), None),
        }),
    })
}

/// Checks the pairing equalities, then the lower bounds, then every cut.
/// Cuts are scanned exhaustively up to the cut-scan vertex limit and found by
/// min-cut beyond it.
pub fn member(spec: &PolytopeSpec, w: &ArcWeightVector) -> Result<Membership> {
    w.check_host(spec.host.host())?;
    check_member(spec, &w.values(), 1)
}

/// [`member`] for `numerators / den`, with every constraint scaled by `den`.
pub fn member_rational(spec: &PolytopeSpec, w: &BiWeights) -> Result<Membership> {
    if w.graph.host() != spec.host.host() {
        return Err(Error::HostMismatch);
    }
    if w.den < 1 {
        return Err(Error::InvalidParams(format!("denominator {} must be positive", w.den)));
    }
    check_member(spec, &w.numerators, w.den)
}

pub(crate) fn require_member(spec: &PolytopeSpec, w: &ArcWeightVector) -> Result<()> {
    match member(spec, w)? {
        Membership::Member => Ok(()),
        Membership::Violation(v) => Err(Error::NonMember {
            family: format!("{}^{}", spec.family, spec.tau),
            reason: serde_json::to_string(&v)?,
        }),
    }
}

/// Strongly connected orientation of a 2-edge-connected graph: depth-first
/// tree edges point away from the root, all other edges toward the ancestor.
pub fn robbins_orientation(g: &UndirGraph) -> Result<ArcSet> {
    check_two_edge_connected(g)?;
    let b = g.bidirect();
    let adj = g.adjacency();
    let n = g.n();
    let mut seen = vec![false; n];
    let mut tail = vec![None; g.m()];
    let mut stack: Vec<(VertexId, usize)> = Vec::new();
    if n > 0 {
        seen[0] = true;
        stack.push((0, 0));
    }
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        if i == adj[v].len() {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let (e, w) = adj[v][i];
        if tail[e].is_some() {
            continue;
        }
        // Tree edges go down; an edge first met from below goes up to an ancestor.
        tail[e] = Some(v);
        if !seen[w] {
            seen[w] = true;
            stack.push((w, 0));
        }
    }
    let bits: Vec<bool> = (0..g.m())
        .map(|e| {
            let t = tail[e].expect("connected graph visits every edge");
            b.is_plus(b.arc_from(e, t))
        })
        .collect();
    let o = b.orientation_from_bits(&bits);
    debug_assert!(strongly_connected(b.digraph(), Some(&ArcWeightVector::indicator(b.digraph(), &o)?))?);
    Ok(o)
}

/// The nowhere-zero `tau`-SCO built from `d`: `tau - 1` on the arcs of `d`,
/// 1 on their reverses, over the doubled underlying graph.
pub fn digraph_to_nz_tau_sco(d: &Digraph) -> Result<(BidirectedGraph, ArcWeightVector, i64)> {
    let tau = min_dicut(d, None)?.ok_or(Error::NoDicut)?.value;
    if tau < 2 {
        return Err(Error::TauTooSmall(tau));
    }
    let b = d.underlying().bidirect();
    let mut x = vec![1; b.digraph().m()];
    for a in 0..d.m() {
        x[b.arc_from(a, d.tail(a))] = tau - 1;
    }
    let x = ArcWeightVector::new(b.digraph(), x)?;
    let spec = PolytopeSpec::new(PolytopeFamily::P1, tau, b.clone())?;
    require_member(&spec, &x).map_err(|e| Error::Internal(format!("built vector left P1: {e}")))?;
    Ok((b, x, tau))
}

/// Weighted version for 0/1 arc weights: weight-0 arcs get `tau` forward and
/// 0 backward. Arcs removable by [`near_dicut_reduce`] are zeroed first.
pub fn weighted_digraph_to_tau_sco(
    d: &Digraph,
    w: &ArcWeightVector,
) -> Result<(BidirectedGraph, ArcWeightVector, ArcWeightVector, i64)> {
    let w = near_dicut_reduce(d, w)?;
    let tau = min_dicut(d, Some(&w))?.ok_or(Error::NoDicut)?.value;
    let b = d.underlying().bidirect();
    let mut x = vec![0; b.digraph().m()];
    for a in 0..d.m() {
        let f = b.arc_from(a, d.tail(a));
        let (fw, bw) = if w.get(a) == 1 { (tau - 1, 1) } else { (tau, 0) };
        x[f] = fw;
        x[b.reverse(f)] = bw;
    }
    let x = ArcWeightVector::new(b.digraph(), x)?;
    let spec = PolytopeSpec::new(PolytopeFamily::P0, tau, b.clone())?;
    require_member(&spec, &x).map_err(|e| Error::Internal(format!("built vector left P0: {e}")))?;
    Ok((b, x, w, tau))
}

/// Dijoins `J_i` = arcs of `d` that the orientation `O_i` reverses.
pub fn sco_parts_to_dijoins(d: &Digraph, b: &BidirectedGraph, parts: &[ArcSet]) -> Result<Vec<ArcSet>> {
    parts
        .iter()
        .map(|o| {
            o.check_host(b.host())?;
            ArcSet::from_ids(d, (0..d.m()).filter(|&a| !o.contains(b.arc_from(a, d.tail(a)))))
        })
        .collect()
}

/// The orientation `(A \ J) ∪ J^{-1}` of the underlying graph.
pub fn strengthening_to_sco(d: &Digraph, j: &ArcSet) -> Result<(BidirectedGraph, ArcSet)> {
    j.check_host(d.host())?;
    let b = d.underlying().bidirect();
    let mut o = b.digraph().empty_set();
    for a in 0..d.m() {
        let f = b.arc_from(a, d.tail(a));
        o.insert(if j.contains(a) { b.reverse(f) } else { f });
    }
    Ok((b, o))
}

/// Inverse of [`strengthening_to_sco`]: the arcs of `d` the orientation reverses.
pub fn sco_to_strengthening(d: &Digraph, o: &ArcSet) -> Result<ArcSet> {
    let b = d.underlying().bidirect();
    b.orientation_bits(o)?;
    Ok(sco_parts_to_dijoins(d, &b, std::slice::from_ref(o))?.remove(0))
}

/// The digraph of one SCO part, for strong-connectivity checks.
pub fn is_strong_orientation(b: &BidirectedGraph, o: &ArcSet) -> Result<bool> {
    b.orientation_bits(o)?;
    strongly_connected(b.digraph(), Some(&ArcWeightVector::indicator(b.digraph(), o)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct Gadget {
    pub digraph: Digraph,
    pub weights: ArcWeightVector,
    /// Vertex `w_e` replacing edge `e`.
    pub edge_node: Vec<VertexId>,
    /// Bidirected arc each gadget arc stands for.
    pub origin: Vec<ArcId>,
    pub tau: i64,
}

/// Replaces each edge `e = {u, v}` by a new vertex `w_e` with `x_{e+}`
/// parallel arcs from the tail of `e+` and `x_{e-}` from the tail of `e-`.
/// A zero count becomes one arc of weight 0, so it still blocks the dicut
/// it would otherwise open. The minimum weighted dicut is asserted to be `tau`.
pub fn sco_to_gadget_digraph(b: &BidirectedGraph, x: &ArcWeightVector, tau: i64) -> Result<Gadget> {
    let family = if x.values().iter().all(|&v| v >= 1) {
        PolytopeFamily::P1
    } else {
        PolytopeFamily::P0
    };
    require_member(&PolytopeSpec::new(family, tau, b.clone())?, x)?;
    let n = b.n();
    let mut arcs = Vec::new();
    let mut weights = Vec::new();
    let mut origin = Vec::new();
    let mut edge_node = Vec::with_capacity(b.edge_count());
    for e in 0..b.edge_count() {
        let we = n + e;
        edge_node.push(we);
        for a in [b.plus(e), b.minus(e)] {
            let tail = b.digraph().tail(a);
            let count = x.get(a);
            if count == 0 {
                arcs.push((tail, we));
                weights.push(0);
                origin.push(a);
            }
            for _ in 0..count {
                arcs.push((tail, we));
                weights.push(1);
                origin.push(a);
            }
        }
    }
    let digraph = Digraph::new(n + b.edge_count(), arcs)?;
    let weights = ArcWeightVector::new(&digraph, weights)?;
    let got = min_dicut(&digraph, Some(&weights))?.map(|c| c.value);
    if got != Some(tau) {
        return Err(Error::Internal(format!("gadget minimum dicut is {got:?}, expected {tau}")));
    }
    Ok(Gadget {
        digraph,
        weights,
        edge_node,
        origin,
        tau,
    })
}

/// Smallest `U` containing the tail of `e` with `δ⁺(U) ⊆ {e}` and no weight
/// on `δ⁻(U)`; `None` when every such set would contain the head of `e`.
fn near_dicut_side(d: &Digraph, w: &[i64], e: ArcId) -> Option<Vec<bool>> {
    let out = d.out_adjacency();
    let inn = d.in_adjacency();
    let mut side = vec![false; d.n()];
    side[d.tail(e)] = true;
    let mut stack = vec![d.tail(e)];
    while let Some(v) = stack.pop() {
        let forward = out[v].iter().filter(|&&a| a != e).map(|&a| d.head(a));
        let backward = inn[v].iter().filter(|&&a| w[a] != 0).map(|&a| d.tail(a));
        for u in forward.chain(backward).collect::<Vec<_>>() {
            if !side[u] {
                side[u] = true;
                stack.push(u);
            }
        }
    }
    (!side[d.head(e)]).then_some(side)
}

/// Repeatedly zeroes the lowest weight-1 arc `e` admitting a cut with
/// `δ⁺(U) = {e}` and `w(δ⁻(U)) = 0`. Such arcs lie in no minimum dicut, so
/// the minimum weighted dicut is unchanged; this is checked.
pub fn near_dicut_reduce(d: &Digraph, w: &ArcWeightVector) -> Result<ArcWeightVector> {
    w.check_host(d.host())?;
    if let Some(a) = (0..d.m()).find(|&a| w.get(a) > 1) {
        return Err(Error::BadWeight { arc: a, value: w.get(a) });
    }
    let tau = min_dicut(d, Some(w))?.ok_or(Error::NoDicut)?.value;
    if tau < 2 {
        return Err(Error::TauTooSmall(tau));
    }
    let mut x = w.values();
    while let Some(e) = (0..d.m()).find(|&e| x[e] == 1 && near_dicut_side(d, &x, e).is_some()) {
        x[e] = 0;
    }
    let reduced = ArcWeightVector::new(d, x)?;
    let after = min_dicut(d, Some(&reduced))?.map(|c| c.value);
    if after != Some(tau) {
        return Err(Error::Internal(format!(
            "reduction moved the minimum dicut from {tau} to {after:?}"
        )));
    }
    Ok(reduced)
}

/// `floor(tau / (k + 1))`, what each half of [`split_nz_scd`] guarantees.
pub fn scd_split_guarantee(fa: &FlowAssignment, tau: i64) -> i64 {
    fa.bounds.floor_div_plus_one(tau)
}

/// Splits a nowhere-zero `tau`-SCD `w` into `x + y`: `x` takes `ceil(w/2)` on
/// the arcs of the flow orientation and `floor(w/2)` on the others. Both
/// halves are checked to cover every cut `floor(tau / (k + 1))` times.
pub fn split_nz_scd(
    b: &BidirectedGraph,
    w: &ArcWeightVector,
    tau: i64,
    fa: &FlowAssignment,
) -> Result<(ArcWeightVector, ArcWeightVector)> {
    require_member(&PolytopeSpec::new(PolytopeFamily::Q1, tau, b.clone())?, w)?;
    require_flow(b, fa)?;
    let d = b.digraph();
    let x: Vec<i64> = (0..d.m())
        .map(|a| {
            let v = w.get(a);
            if fa.orientation.contains(a) {
                (v + 1) / 2
            } else {
                v / 2
            }
        })
        .collect();
    let y: Vec<i64> = (0..d.m()).map(|a| w.get(a) - x[a]).collect();
    let x = ArcWeightVector::new(d, x)?;
    let y = ArcWeightVector::new(d, y)?;
    let t = scd_split_guarantee(fa, tau);
    for (name, half) in [("x", &x), ("y", &y)] {
        if let Some(c) = min_directed_cut(d, Some(half))? {
            if c.value < t {
                return Err(Error::Internal(format!(
                    "half {name} leaves {:?} only {} times, below {t}",
                    c.vertices(),
                    c.value
                )));
            }
        }
    }
    Ok((x, y))
}

#[derive(Clone, Debug, Serialize)]
pub struct ScdPacking {
    pub sets: Vec<ArcSet>,
    pub guarantee: i64,
    pub advisory: Option<String>,
}

/// Packs `floor(tau / (k + 1))` SCDs into `w`: out-arborescences from the
/// `x` half paired with in-arborescences from the `y` half, rooted at 0.
pub fn pack_nz_scd(
    b: &BidirectedGraph,
    w: &ArcWeightVector,
    tau: i64,
    fa: &FlowAssignment,
) -> Result<ScdPacking> {
    let (x, y) = split_nz_scd(b, w, tau, fa)?;
    let t = scd_split_guarantee(fa, tau);
    if t == 0 {
        return Ok(ScdPacking {
            sets: Vec::new(),
            guarantee: 0,
            advisory: Some(format!("floor({tau} / ({} + 1)) is 0; nothing is guaranteed", fa.bounds)),
        });
    }
    let d = b.digraph();
    let (outs, ins) = rayon::join(
        || pack_out_arborescences(d, 0, t, Some(&x)),
        || pack_in_arborescences(d, 0, t, Some(&y)),
    );
    let (outs, ins) = (outs?, ins?);
    let sets = outs
        .trees
        .iter()
        .zip(&ins.trees)
        .map(|(s, t)| s.union(t))
        .collect::<Result<Vec<_>>>()?;
    verify_scd_packing(d, w, &sets)?;
    Ok(ScdPacking {
        sets,
        guarantee: t,
        advisory: None,
    })
}

/// Each set spans a strongly connected subdigraph and no arc is used more
/// than `w` times.
pub fn verify_scd_packing(d: &Digraph, w: &ArcWeightVector, sets: &[ArcSet]) -> Result<()> {
    w.check_host(d.host())?;
    let mut used = vec![0i64; d.m()];
    for (i, s) in sets.iter().enumerate() {
        if !strongly_connected(d, Some(&ArcWeightVector::indicator(d, s)?))? {
            return Err(Error::Internal(format!("set {i} is not strongly connected")));
        }
        for a in s.iter() {
            used[a] += 1;
        }
    }
    match (0..d.m()).find(|&a| used[a] > w.get(a)) {
        Some(a) => Err(Error::Internal(format!("arc {a} used {} times, weight {}", used[a], w.get(a)))),
        None => Ok(()),
    }
}

/// Checks that SCO parts translate to disjoint dijoins of `d`.
pub fn verify_sco_dijoins(d: &Digraph, b: &BidirectedGraph, parts: &[ArcSet]) -> Result<DijoinPacking> {
    let p = DijoinPacking::unit(d, sco_parts_to_dijoins(d, b, parts)?)?;
    verify_packing(&p).map_err(|v| Error::Internal(v.to_string()))?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::six_flow;

    fn k4() -> UndirGraph {
        UndirGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn c3() -> UndirGraph {
        UndirGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn all_ones_memberships() {
        let b = k4().bidirect();
        let ones = ArcWeightVector::constant(b.digraph(), 1).unwrap();
        let q1 = PolytopeSpec::new(PolytopeFamily::Q1, 3, b.clone()).unwrap();
        assert!(member(&q1, &ones).unwrap().is_member());
        let q1 = PolytopeSpec::new(PolytopeFamily::Q1, 4, b.clone()).unwrap();
        assert!(matches!(
            member(&q1, &ones).unwrap(),
            Membership::Violation(PolytopeViolation::Cut { .. })
        ));
        let p1 = PolytopeSpec::new(PolytopeFamily::P1, 2, b.clone()).unwrap();
        assert!(member(&p1, &ones).unwrap().is_member());
        let mut v = ones.values();
        v[5] = 0;
        let z = ArcWeightVector::new(b.digraph(), v).unwrap();
        let p0 = PolytopeSpec::new(PolytopeFamily::Q1, 1, b).unwrap();
        assert_eq!(
            member(&p0, &z).unwrap(),
            Membership::Violation(PolytopeViolation::LowerBound { arc: 5, value: 0 })
        );
    }

    #[test]
    fn robbins_on_c3_and_path() {
        let o = robbins_orientation(&c3()).unwrap();
        assert!(is_strong_orientation(&c3().bidirect(), &o).unwrap());
        let path = UndirGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            robbins_orientation(&path),
            Err(Error::NotBridgeless { edge: Some(0), .. })
        ));
    }

    #[test]
    fn bundle_sco() {
        let d = Digraph::new(2, vec![(0, 1); 4]).unwrap();
        let (b, x, tau) = digraph_to_nz_tau_sco(&d).unwrap();
        assert_eq!(tau, 4);
        for a in 0..4 {
            assert_eq!(x.get(b.plus(a)), 3);
            assert_eq!(x.get(b.minus(a)), 1);
        }
    }

    #[test]
    fn gadgets() {
        let digon = UndirGraph::new(2, vec![(0, 1), (0, 1)]).unwrap().bidirect();
        let ones = ArcWeightVector::constant(digon.digraph(), 1).unwrap();
        let g = sco_to_gadget_digraph(&digon, &ones, 2).unwrap();
        assert_eq!(g.digraph.n(), 4);
        let b = c3().bidirect();
        let ones = ArcWeightVector::constant(b.digraph(), 1).unwrap();
        let g = sco_to_gadget_digraph(&b, &ones, 2).unwrap();
        assert_eq!(g.digraph.n(), 6);
        assert!(sco_to_gadget_digraph(&b, &ones, 3).is_err());
    }

    #[test]
    fn strengthening_round_trip() {
        let d = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
        let j = ArcSet::from_ids(&d, [3]).unwrap();
        let (b, o) = strengthening_to_sco(&d, &j).unwrap();
        assert!(is_strong_orientation(&b, &o).unwrap());
        assert_eq!(sco_to_strengthening(&d, &o).unwrap(), j);
        let (b, o) = strengthening_to_sco(&d, &d.empty_set()).unwrap();
        assert!(is_strong_orientation(&b, &o).unwrap());
    }

    #[test]
    fn near_dicut() {
        // Arc 2 is the only arc leaving {0, 1}; the arc back in has weight 0.
        let d = Digraph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 1)]).unwrap();
        let w = ArcWeightVector::new(&d, vec![1, 1, 1, 0]).unwrap();
        let r = near_dicut_reduce(&d, &w).unwrap();
        assert_eq!(r.values(), vec![1, 1, 0, 0]);
        assert_eq!(min_dicut(&d, Some(&r)).unwrap().unwrap().value, 2);
        assert_eq!(near_dicut_reduce(&d, &r).unwrap(), r);
    }

    #[test]
    fn split_ones_and_twos() {
        let g = k4();
        let b = g.bidirect();
        let fa = six_flow(&g).unwrap();
        let ones = ArcWeightVector::constant(b.digraph(), 1).unwrap();
        let (x, y) = split_nz_scd(&b, &ones, 3, &fa).unwrap();
        for a in 0..b.digraph().m() {
            assert_eq!(x.get(a), i64::from(fa.orientation.contains(a)));
            assert_eq!(x.get(a) + y.get(a), 1);
        }
        let twos = ArcWeightVector::constant(b.digraph(), 2).unwrap();
        let (x, y) = split_nz_scd(&b, &twos, 6, &fa).unwrap();
        assert!(x.values().iter().chain(&y.values()).all(|&v| v == 1));
    }

    #[test]
    fn pack_sevens() {
        let g = k4();
        let b = g.bidirect();
        let fa = six_flow(&g).unwrap();
        let w = ArcWeightVector::constant(b.digraph(), 7).unwrap();
        let p = pack_nz_scd(&b, &w, 21, &fa).unwrap();
        assert_eq!(p.guarantee, 3);
        assert_eq!(p.sets.len(), 3);
    }
}
