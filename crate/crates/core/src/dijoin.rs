//! Disjoint dijoins from a nowhere-zero flow of the underlying graph.
//!
//! The digraph `D` is doubled into `G` (both directions of every arc) with
//! weight `tau` on the original directions and 1 on the reversed ones. A
//! flow orientation rounds these weights into two halves `x + y`, each still
//! large on every cut; out-arborescences in `x` paired with in-arborescences
//! in `y` give disjoint strongly connected subdigraphs of `G`, and the
//! reversed arcs each one uses form a dijoin of `D`.

use serde::{Serialize, Serializer};

use crate::arborescence::{pack_in_arborescences, pack_out_arborescences};
use crate::cuts::{dicut_missed, is_dijoin, min_dicut, min_directed_cut, CutCertificate};
use crate::error::{Error, Result};
use crate::flows::{require_flow, six_flow, FlowAssignment};
use crate::graph::connectivity::strongly_connected;
use crate::graph::{ArcId, ArcSet, ArcWeightVector, BidirectedGraph, Digraph};
use crate::ratio::FlowRatio;

/// `D` with its doubled underlying graph and the weights `w^D`.
#[derive(Clone, Debug)]
pub struct AugmentedInstance {
    pub d: Digraph,
    pub g_arrow: BidirectedGraph,
    /// The arc of `g_arrow` running like arc `a` of `d`.
    pub forward: Vec<ArcId>,
    /// `tau` on forward arcs, 1 on their reverses.
    pub wd: ArcWeightVector,
    pub tau: i64,
}

impl AugmentedInstance {
    pub fn reverse_of(&self, a: ArcId) -> ArcId {
        self.g_arrow.reverse(self.forward[a])
    }
}

fn forward_arcs(d: &Digraph, b: &BidirectedGraph) -> Vec<ArcId> {
    (0..d.m()).map(|a| b.arc_from(a, d.tail(a))).collect()
}

/// Minimum dicut size of `d`; `NoDicut` when strongly connected.
pub fn tau(d: &Digraph) -> Result<i64> {
    Ok(min_dicut(d, None)?.ok_or(Error::NoDicut)?.value)
}

pub fn build_augmented(d: &Digraph) -> Result<AugmentedInstance> {
    let tau = tau(d)?;
    if tau < 2 {
        return Err(Error::TauTooSmall(tau));
    }
    let g_arrow = d.underlying().bidirect();
    let forward = forward_arcs(d, &g_arrow);
    let mut wd = vec![1; g_arrow.digraph().m()];
    for &f in &forward {
        wd[f] = tau;
    }
    let wd = ArcWeightVector::new(g_arrow.digraph(), wd)?;
    Ok(AugmentedInstance {
        d: d.clone(),
        g_arrow,
        forward,
        wd,
        tau,
    })
}

/// Smallest outgoing weight over all cuts of `d`; `i64::MAX` on one vertex.
pub fn min_cut_weight(d: &Digraph, w: &ArcWeightVector) -> Result<i64> {
    Ok(min_directed_cut(d, Some(w))?.map_or(i64::MAX, |c| c.value))
}

/// Arcs of `d` that agree with the flow orientation, and the rest.
pub fn split_dijoins_by_flow(d: &Digraph, fa: &FlowAssignment) -> Result<(ArcSet, ArcSet)> {
    let b = d.underlying().bidirect();
    require_flow(&b, fa)?;
    let forward = forward_arcs(d, &b);
    let mut j1 = d.empty_set();
    let mut j2 = d.empty_set();
    for (a, &f) in forward.iter().enumerate() {
        if fa.orientation.contains(f) {
            j1.insert(a);
        } else {
            j2.insert(a);
        }
    }
    Ok((j1, j2))
}

/// Rounds `w^D` into `x + y` along the flow orientation: a forward arc gets
/// `ceil(tau/2)` in `x` when it agrees with the flow and `floor(tau/2)`
/// otherwise; a reverse arc gets 1 in `x` when it agrees and 0 otherwise.
pub fn round_split(
    ai: &AugmentedInstance,
    fa: &FlowAssignment,
) -> Result<(ArcWeightVector, ArcWeightVector)> {
    require_flow(&ai.g_arrow, fa)?;
    let m2 = ai.g_arrow.digraph().m();
    let mut x = vec![0; m2];
    for (a, &f) in ai.forward.iter().enumerate() {
        let r = ai.reverse_of(a);
        x[f] = if fa.orientation.contains(f) {
            (ai.tau + 1) / 2
        } else {
            ai.tau / 2
        };
        x[r] = i64::from(fa.orientation.contains(r));
    }
    let y: Vec<i64> = (0..m2).map(|a| ai.wd.get(a) - x[a]).collect();
    let dg = ai.g_arrow.digraph();
    Ok((ArcWeightVector::new(dg, x)?, ArcWeightVector::new(dg, y)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DijoinPacking {
    pub host: Digraph,
    pub dijoins: Vec<ArcSet>,
    pub capacity: ArcWeightVector,
}

impl DijoinPacking {
    pub fn unit(host: &Digraph, dijoins: Vec<ArcSet>) -> Result<Self> {
        Ok(DijoinPacking {
            host: host.clone(),
            capacity: ArcWeightVector::constant(host, 1)?,
            dijoins,
        })
    }
}

impl Serialize for DijoinPacking {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(&self.dijoins)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PackingViolation {
    HostMismatch { index: usize },
    Capacity { arc: ArcId, used: i64, capacity: i64 },
    NotDijoin { index: usize, witness: CutCertificate },
}

impl std::fmt::Display for PackingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PackingViolation::HostMismatch { index } => write!(f, "set {index} belongs to another graph"),
            PackingViolation::Capacity { arc, used, capacity } => {
                write!(f, "arc {arc} used {used} times, capacity {capacity}")
            }
            PackingViolation::NotDijoin { index, witness } => {
                write!(f, "set {index} misses the dicut leaving {:?}", witness.vertices())
            }
        }
    }
}

/// Checks capacities, then that every member meets every dicut.
pub fn verify_packing(p: &DijoinPacking) -> std::result::Result<(), PackingViolation> {
    let d = &p.host;
    let mut used = vec![0i64; d.m()];
    for (index, j) in p.dijoins.iter().enumerate() {
        if j.host() != d.host() {
            return Err(PackingViolation::HostMismatch { index });
        }
        for a in j.iter() {
            used[a] += 1;
        }
    }
    if p.capacity.host() != d.host() {
        return Err(PackingViolation::HostMismatch { index: usize::MAX });
    }
    for (arc, &u) in used.iter().enumerate() {
        if u > p.capacity.get(arc) {
            return Err(PackingViolation::Capacity {
                arc,
                used: u,
                capacity: p.capacity.get(arc),
            });
        }
    }
    for (index, j) in p.dijoins.iter().enumerate() {
        if let Ok(Some(witness)) = dicut_missed(d, j) {
            return Err(PackingViolation::NotDijoin { index, witness });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct PackingOutcome {
    pub dijoins: DijoinPacking,
    pub tau: i64,
    /// `k` of the flow used.
    pub k: String,
    /// `floor(tau / k)`.
    pub guarantee: i64,
    pub advisory: Option<String>,
}

/// Packs at least `floor(tau / k)` disjoint dijoins of `d`, where `k` comes
/// from `flow` on the underlying graph when given and is 6 otherwise.
pub fn pack_dijoins(d: &Digraph, flow: Option<&FlowAssignment>) -> Result<PackingOutcome> {
    let tau = tau(d)?;
    let bounds = flow.map_or(FlowRatio::six(), |f| f.bounds);
    let empty = |advisory: String| -> Result<PackingOutcome> {
        Ok(PackingOutcome {
            dijoins: DijoinPacking::unit(d, Vec::new())?,
            tau,
            k: bounds.to_string(),
            guarantee: 0,
            advisory: Some(advisory),
        })
    };
    if tau < 2 {
        return empty(format!("minimum dicut is {tau}; nothing is guaranteed"));
    }
    let ai = build_augmented(d)?;
    let owned;
    let fa = match flow {
        Some(f) => {
            require_flow(&ai.g_arrow, f)?;
            f
        }
        None => {
            owned = six_flow(ai.g_arrow.base())?;
            &owned
        }
    };
    let guarantee = fa.bounds.floor_div(tau);
    if guarantee == 0 {
        return empty(format!("floor({tau} / {}) is 0; nothing is guaranteed", fa.bounds));
    }
    let (x, y) = round_split(&ai, fa)?;
    let dg = ai.g_arrow.digraph();
    let (outs, ins) = rayon::join(
        || pack_out_arborescences(dg, 0, guarantee, Some(&x)),
        || pack_in_arborescences(dg, 0, guarantee, Some(&y)),
    );
    let (outs, ins) = (outs?, ins?);
    let mut dijoins = Vec::with_capacity(guarantee as usize);
    for (s, t) in outs.trees.iter().zip(&ins.trees) {
        let f = s.union(t)?;
        let j = ArcSet::from_ids(d, (0..d.m()).filter(|&a| f.contains(ai.reverse_of(a))))?;
        dijoins.push(j);
    }
    let packing = DijoinPacking::unit(d, dijoins)?;
    verify_packing(&packing).map_err(|v| Error::Internal(format!("packing check: {v}")))?;
    Ok(PackingOutcome {
        dijoins: packing,
        tau,
        k: fa.bounds.to_string(),
        guarantee,
        advisory: None,
    })
}

fn spanning_strong(b: &Digraph, f: &ArcSet) -> Result<bool> {
    strongly_connected(b, Some(&ArcWeightVector::indicator(b, f)?))
}

fn packing_error(msg: String) -> Error {
    Error::InvalidParams(msg)
}

/// Dijoins `{a : reverse(a) in F_i}` from disjoint strongly connected
/// spanning subdigraphs `F_i` of `g_arrow` that fit under `w^D`.
pub fn scd_packing_to_dijoins(ai: &AugmentedInstance, scds: &[ArcSet]) -> Result<Vec<ArcSet>> {
    let dg = ai.g_arrow.digraph();
    let mut used = vec![0i64; dg.m()];
    for (i, f) in scds.iter().enumerate() {
        f.check_host(dg.host())?;
        if !spanning_strong(dg, f)? {
            let w = ArcWeightVector::indicator(dg, f)?;
            let cut = min_directed_cut(dg, Some(&w))?;
            return Err(packing_error(format!(
                "subdigraph {i} is not strongly connected: nothing leaves {:?}",
                cut.map(|c| c.vertices()).unwrap_or_default()
            )));
        }
        for a in f.iter() {
            used[a] += 1;
        }
    }
    if let Some(a) = (0..dg.m()).find(|&a| used[a] > ai.wd.get(a)) {
        return Err(packing_error(format!(
            "arc {a} used {} times, capacity {}",
            used[a],
            ai.wd.get(a)
        )));
    }
    scds.iter()
        .map(|f| ArcSet::from_ids(&ai.d, (0..ai.d.m()).filter(|&a| f.contains(ai.reverse_of(a)))))
        .collect()
}

/// `F_i = A ∪ J_i^{-1}` for disjoint dijoins `J_i`.
pub fn dijoins_to_scd_packing(ai: &AugmentedInstance, dijoins: &[ArcSet]) -> Result<Vec<ArcSet>> {
    let packing = DijoinPacking::unit(&ai.d, dijoins.to_vec())?;
    verify_packing(&packing).map_err(|v| packing_error(v.to_string()))?;
    let dg = ai.g_arrow.digraph();
    dijoins
        .iter()
        .map(|j| {
            ArcSet::from_ids(
                dg,
                ai.forward.iter().copied().chain(j.iter().map(|a| ai.reverse_of(a))),
            )
        })
        .collect()
}

/// Whether `j` meets every dicut; re-exported for callers of this module.
pub fn check_dijoin(d: &Digraph, j: &ArcSet) -> Result<bool> {
    is_dijoin(d, j)
}
