//! Exact cut machinery: dicuts, minimum dicuts, dijoin tests, edge
//! connectivity and cut balance.

pub mod mixed;

use serde::{Serialize, Serializer};

use crate::arborescence::rooted_connectivity;
use crate::error::{Error, Result};
use crate::flows::{self, Circulation};
use crate::graph::connectivity::{condensation, strongly_connected_arcs};
use crate::graph::{ArcSet, ArcWeightVector, BidirectedGraph, Digraph, UndirGraph, VertexId};
use crate::limits::limits;
use crate::maxflow::FlowNetwork;
use crate::ratio::FlowRatio;

/// A vertex set `U` with the arcs crossing it. `value` is the weight of the
/// arcs leaving `U` under the weights it was built with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutCertificate {
    #[serde(rename = "U", serialize_with = "ser_side")]
    pub side: Vec<bool>,
    pub out_arcs: ArcSet,
    pub in_arcs: ArcSet,
    pub value: i64,
}

fn ser_side<S: Serializer>(side: &[bool], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq((0..side.len()).filter(|&v| side[v]))
}

impl CutCertificate {
    /// Builds the certificate for `side`, counting only arcs in `within` when given.
    pub fn from_side(
        d: &Digraph,
        side: Vec<bool>,
        weights: Option<&ArcWeightVector>,
        within: Option<&ArcSet>,
    ) -> Self {
        let mut out_arcs = d.empty_set();
        let mut in_arcs = d.empty_set();
        let mut value = 0;
        for (a, &(t, h)) in d.arcs().iter().enumerate() {
            if within.is_some_and(|s| !s.contains(a)) {
                continue;
            }
            if side[t] && !side[h] {
                out_arcs.insert(a);
                value += weights.map_or(1, |w| w.get(a));
            } else if !side[t] && side[h] {
                in_arcs.insert(a);
            }
        }
        CutCertificate {
            side,
            out_arcs,
            in_arcs,
            value,
        }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }

    pub fn is_dicut(&self) -> bool {
        self.in_arcs.is_empty()
    }

    /// Recomputes the crossing arcs from `U` and compares.
    pub fn validate(&self, d: &Digraph, weights: Option<&ArcWeightVector>, within: Option<&ArcSet>) -> bool {
        let inside = self.side.iter().filter(|&&b| b).count();
        self.side.len() == d.n()
            && inside > 0
            && inside < d.n()
            && *self == CutCertificate::from_side(d, self.side.clone(), weights, within)
    }
}

fn check_weights(d: &Digraph, weights: Option<&ArcWeightVector>) -> Result<()> {
    match weights {
        Some(w) => w.check_host(d.host()),
        None => Ok(()),
    }
}

/// Calls `f` with the vertex side of every dicut of `d`, each once.
pub fn for_each_dicut_side(d: &Digraph, mut f: impl FnMut(&[bool])) -> Result<()> {
    let limit = limits().dicut_vertices;
    if d.n() > limit {
        return Err(Error::Guard(format!(
            "dicut enumeration is limited to {limit} vertices, got {}",
            d.n()
        )));
    }
    let c = condensation(d);
    let k = c.count();
    let preds = c.dag.in_adjacency();
    let mut chosen = vec![false; k];

    fn rec(
        i: usize,
        k: usize,
        chosen: &mut Vec<bool>,
        preds: &[Vec<usize>],
        dag: &Digraph,
        lift: &dyn Fn(&[bool]) -> Vec<bool>,
        f: &mut dyn FnMut(&[bool]),
    ) {
        if i == k {
            let size = chosen.iter().filter(|&&b| b).count();
            if size > 0 && size < k {
                f(&lift(chosen));
            }
            return;
        }
        chosen[i] = false;
        rec(i + 1, k, chosen, preds, dag, lift, f);
        if preds[i].iter().all(|&a| chosen[dag.tail(a)]) {
            chosen[i] = true;
            rec(i + 1, k, chosen, preds, dag, lift, f);
            chosen[i] = false;
        }
    }

    let lift = |ch: &[bool]| c.lift(ch);
    rec(0, k, &mut chosen, &preds, &c.dag, &lift, &mut f);
    Ok(())
}

/// Every dicut of `d`, as certificates weighted by `weights`.
pub fn enumerate_dicuts(
    d: &Digraph,
    weights: Option<&ArcWeightVector>,
) -> Result<Vec<CutCertificate>> {
    check_weights(d, weights)?;
    let mut out = Vec::new();
    for_each_dicut_side(d, |side| {
        out.push(CutCertificate::from_side(d, side.to_vec(), weights, None))
    })?;
    Ok(out)
}

/// A minimum-weight dicut, or `None` when `d` is strongly connected.
///
/// Runs one min-cut per (source, sink) pair of the condensation: every ideal
/// contains a source component and misses a sink component. Ties go to the
/// lexicographically smallest sorted vertex list of `U`.
pub fn min_dicut(d: &Digraph, weights: Option<&ArcWeightVector>) -> Result<Option<CutCertificate>> {
    check_weights(d, weights)?;
    let c = condensation(d);
    let k = c.count();
    if k <= 1 {
        return Ok(None);
    }
    let w = |a: usize| weights.map_or(1, |w| w.get(a));
    let total: i64 = (0..d.m()).map(w).sum();
    let inf = total + 1;
    let mut net = FlowNetwork::new(k);
    for (i, &(t, h)) in c.dag.arcs().iter().enumerate() {
        net.add_edge(t, h, w(c.origin[i]));
        net.add_edge(h, t, inf);
    }
    let out_deg = c.dag.out_adjacency();
    let in_deg = c.dag.in_adjacency();
    let sources: Vec<_> = (0..k).filter(|&v| in_deg[v].is_empty()).collect();
    let sinks: Vec<_> = (0..k).filter(|&v| out_deg[v].is_empty()).collect();

    let mut best: Option<(i64, Vec<VertexId>, Vec<bool>)> = None;
    for &s in &sources {
        for &t in &sinks {
            if s == t {
                continue;
            }
            net.reset();
            let cap = best.as_ref().map_or(inf, |b| b.0 + 1);
            let value = net.max_flow(s, t, cap);
            if value >= cap {
                continue;
            }
            let side = c.lift(&net.source_side(s));
            let verts: Vec<_> = (0..d.n()).filter(|&v| side[v]).collect();
            let better = match &best {
                None => true,
                Some((bv, bverts, _)) => value < *bv || (value == *bv && verts < *bverts),
            };
            if better {
                best = Some((value, verts, side));
            }
        }
    }
    let (_, _, side) = best.ok_or_else(|| Error::Internal("no finite dicut found".into()))?;
    let cert = CutCertificate::from_side(d, side, weights, None);
    debug_assert!(cert.is_dicut());
    Ok(Some(cert))
}

fn check_arcs(d: &Digraph, j: &ArcSet) -> Result<()> {
    j.check_host(d.host())
}

/// `j` meets every dicut of `d`, i.e. `d` plus the reversed arcs of `j` is
/// strongly connected.
pub fn is_dijoin(d: &Digraph, j: &ArcSet) -> Result<bool> {
    check_arcs(d, j)?;
    let rev = j.iter().map(|a| (d.head(a), d.tail(a)));
    Ok(strongly_connected_arcs(
        d.n(),
        d.arcs().iter().copied().chain(rev),
    ))
}

/// A dicut of `d` disjoint from `j`, if any.
pub fn dicut_missed(d: &Digraph, j: &ArcSet) -> Result<Option<CutCertificate>> {
    let w = ArcWeightVector::indicator(d, j)?;
    Ok(min_dicut(d, Some(&w))?.filter(|c| c.value == 0))
}

/// `j` meets every dicut of `d` at least `t` times.
pub fn is_tau_dijoin(d: &Digraph, j: &ArcSet, t: i64) -> Result<bool> {
    check_arcs(d, j)?;
    if t < 0 {
        return Err(Error::InvalidParams(format!("t = {t} is negative")));
    }
    if t == 0 {
        return Ok(true);
    }
    let w = ArcWeightVector::indicator(d, j)?;
    Ok(min_dicut(d, Some(&w))?.is_none_or(|c| c.value >= t))
}

/// A cut of minimum outgoing weight over all proper nonempty vertex sets,
/// found from vertex 0 in both directions; `None` on a single vertex.
pub fn min_directed_cut(
    d: &Digraph,
    weights: Option<&ArcWeightVector>,
) -> Result<Option<CutCertificate>> {
    check_weights(d, weights)?;
    if d.n() < 2 {
        return Ok(None);
    }
    let out = rooted_connectivity(d, 0, weights)?;
    let rev = d.reverse();
    let rw = weights.map(|w| ArcWeightVector::new(&rev, w.values())).transpose()?;
    let inn = rooted_connectivity(&rev, 0, rw.as_ref())?;
    let side = if inn.value < out.value {
        let s = inn.witness.expect("n >= 2 gives a witness").side;
        s.iter().map(|&b| !b).collect()
    } else {
        out.witness.expect("n >= 2 gives a witness").side
    };
    Ok(Some(CutCertificate::from_side(d, side, weights, None)))
}

/// Global edge connectivity; 0 when disconnected.
pub fn edge_connectivity(g: &UndirGraph) -> Result<i64> {
    if g.n() < 2 {
        return Err(Error::InvalidParams("edge connectivity needs n >= 2".into()));
    }
    let mut net = FlowNetwork::new(g.n());
    for &(u, v) in g.edges() {
        net.add_edge(u, v, 1);
        net.add_edge(v, u, 1);
    }
    let mut best = g.m() as i64;
    for t in 1..g.n() {
        net.reset();
        best = best.min(net.max_flow(0, t, best));
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "cut", rename_all = "snake_case")]
pub enum Balance {
    Balanced,
    /// `U` with `p * |in| > q * |out|` among the oriented arcs.
    Violated(CutCertificate),
}

/// Decides whether `orient` is k-cut-balanced for `k = 1 + q/p`, through
/// circulation feasibility with bounds `p..=q`.
pub fn is_k_cut_balanced(b: &BidirectedGraph, orient: &ArcSet, k: FlowRatio) -> Result<Balance> {
    let plus = b.orientation_bits(orient)?;
    let od = b.oriented_digraph(&plus);
    let k = k.reduced();
    let lower = vec![k.p(); od.m()];
    let upper = vec![k.q(); od.m()];
    Ok(match flows::circulation_feasible(&od, &lower, &upper)? {
        Circulation::Feasible(_) => Balance::Balanced,
        Circulation::Infeasible(cut) => {
            Balance::Violated(CutCertificate::from_side(b.digraph(), cut.side, None, Some(orient)))
        }
    })
}

/// Same decision by scanning all 2^n vertex sets; for small graphs only.
pub fn is_k_cut_balanced_exhaustive(
    b: &BidirectedGraph,
    orient: &ArcSet,
    k: FlowRatio,
) -> Result<Balance> {
    let plus = b.orientation_bits(orient)?;
    let n = b.n();
    let limit = limits().cut_scan_vertices;
    if n > limit {
        return Err(Error::Guard(format!("cut scan is limited to {limit} vertices")));
    }
    let arcs: Vec<_> = (0..b.edge_count())
        .map(|e| b.digraph().arcs()[if plus[e] { b.plus(e) } else { b.minus(e) }])
        .collect();
    let (p, q) = (k.p(), k.q());
    for mask in 1u64..(1u64 << n) - 1 {
        let inside = |v: usize| mask >> v & 1 == 1;
        let (mut out, mut inn) = (0i64, 0i64);
        for &(t, h) in &arcs {
            match (inside(t), inside(h)) {
                (true, false) => out += 1,
                (false, true) => inn += 1,
                _ => {}
            }
        }
        if p * inn > q * out {
            let side = (0..n).map(inside).collect();
            return Ok(Balance::Violated(CutCertificate::from_side(
                b.digraph(),
                side,
                None,
                Some(orient),
            )));
        }
    }
    Ok(Balance::Balanced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundle(mult: usize) -> Digraph {
        Digraph::new(2, vec![(0, 1); mult]).unwrap()
    }

    #[test]
    fn cycle_has_no_dicut() {
        let d = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(enumerate_dicuts(&d, None).unwrap().is_empty());
        assert!(min_dicut(&d, None).unwrap().is_none());
    }

    #[test]
    fn single_arc() {
        let d = Digraph::new(2, vec![(0, 1)]).unwrap();
        let all = enumerate_dicuts(&d, None).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].vertices(), vec![0]);
        assert_eq!(all[0].value, 1);
    }

    #[test]
    fn bundle_twelve() {
        let d = bundle(12);
        assert_eq!(enumerate_dicuts(&d, None).unwrap().len(), 1);
        let c = min_dicut(&d, None).unwrap().unwrap();
        assert_eq!(c.value, 12);
        assert!(c.validate(&d, None, None));
        let j = ArcSet::from_ids(&d, 0..7).unwrap();
        assert!(is_tau_dijoin(&d, &j, 7).unwrap());
        assert!(!is_tau_dijoin(&d, &j, 8).unwrap());
        assert!(is_tau_dijoin(&d, &d.empty_set(), 0).unwrap());
    }

    #[test]
    fn dijoin_basics() {
        let d = Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(is_dijoin(&d, &d.full_set()).unwrap());
        assert!(!is_dijoin(&d, &d.empty_set()).unwrap());
        let missed = dicut_missed(&d, &ArcSet::from_ids(&d, [0]).unwrap()).unwrap().unwrap();
        assert!(missed.out_arcs.contains(1));
    }

    #[test]
    fn connectivity() {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((u, v));
            }
        }
        assert_eq!(edge_connectivity(&UndirGraph::new(4, edges).unwrap()).unwrap(), 3);
        let path = UndirGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(edge_connectivity(&path).unwrap(), 1);
        assert!(edge_connectivity(&UndirGraph::new(1, vec![]).unwrap()).is_err());
    }

    #[test]
    fn balance_examples() {
        let c4 = UndirGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap().bidirect();
        let cyc = c4.orientation_from_bits(&[true, true, true, false]);
        let two = FlowRatio::from_k(2, 1).unwrap();
        assert_eq!(is_k_cut_balanced(&c4, &cyc, two).unwrap(), Balance::Balanced);

        let e = UndirGraph::new(2, vec![(0, 1)]).unwrap().bidirect();
        let o = e.orientation_from_bits(&[true]);
        match is_k_cut_balanced(&e, &o, two).unwrap() {
            Balance::Violated(c) => {
                assert_eq!(c.vertices(), vec![1]);
                assert!(c.validate(e.digraph(), None, Some(&o)));
            }
            Balance::Balanced => panic!("single edge cannot be balanced"),
        }
    }
}
