//! Exhaustive search for decompositions of a `tau`-SCO into `tau` SCOs and
//! of a `tau`-SCD into `tau` SCDs.
//!
//! "Absent" is only ever reported after the whole space was searched; a
//! guard or an expired budget gives `Timeout`.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{require_member, PolytopeFamily, PolytopeSpec};
use crate::error::{Error, Result};
use crate::graph::connectivity::strongly_connected_arcs;
use crate::graph::{ArcId, ArcSet, ArcWeightVector, BidirectedGraph};
use crate::limits::limits;

#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(s: f64) -> Self {
        Budget {
            deadline: Instant::now().checked_add(Duration::from_secs_f64(s.max(0.0))),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionStatus {
    Found,
    ProvenAbsent,
    Timeout,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionResult {
    pub status: DecompositionStatus,
    /// Sums to the input exactly when found.
    pub parts: Vec<ArcWeightVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl DecompositionResult {
    fn timeout(note: String) -> Self {
        DecompositionResult {
            status: DecompositionStatus::Timeout,
            parts: Vec::new(),
            note: Some(note),
        }
    }
}

const CHECK_EVERY: u64 = 1 << 12;

/// Shared state of one search: budget polling and the timeout flag.
struct Search<'a> {
    budget: &'a Budget,
    nodes: AtomicU64,
    timed_out: AtomicBool,
}

impl<'a> Search<'a> {
    fn new(budget: &'a Budget) -> Self {
        Search {
            budget,
            nodes: AtomicU64::new(0),
            timed_out: AtomicBool::new(false),
        }
    }

    /// Counts a node; true when the search must stop.
    fn tick(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        let k = self.nodes.fetch_add(1, Ordering::Relaxed);
        if k.is_multiple_of(CHECK_EVERY) && self.budget.expired() {
            self.timed_out.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn finish(&self, found: Option<Vec<usize>>) -> Option<Option<Vec<usize>>> {
        match found {
            Some(f) => Some(Some(f)),
            None if self.timed_out.load(Ordering::Relaxed) => None,
            None => Some(None),
        }
    }
}

fn strong(b: &BidirectedGraph, arcs: impl Iterator<Item = ArcId>) -> bool {
    let d = b.digraph();
    strongly_connected_arcs(d.n(), arcs.map(|a| d.arcs()[a]))
}

/// Picks `r` masks with nondecreasing indices from `start`, each step taking
/// one unit of every set bit from `rem` and never exceeding what is left.
fn pick(
    s: &Search,
    masks: &[u32],
    start: usize,
    r: i64,
    rem: &mut [i64],
    exact: bool,
    out: &mut Vec<usize>,
) -> bool {
    if r == 0 {
        return !exact || rem.iter().all(|&v| v == 0);
    }
    for j in start..masks.len() {
        if s.tick() {
            return false;
        }
        let m = masks[j];
        let fits = rem.iter().enumerate().all(|(i, &v)| {
            let v = v - i64::from(m >> i & 1 == 1);
            // An exact decomposition leaves at most one unit per remaining pick.
            v >= 0 && (!exact || v < r)
        });
        if !fits {
            continue;
        }
        for (i, v) in rem.iter_mut().enumerate() {
            *v -= i64::from(m >> i & 1 == 1);
        }
        out.push(j);
        if pick(s, masks, j, r - 1, rem, exact, out) {
            return true;
        }
        out.pop();
        for (i, v) in rem.iter_mut().enumerate() {
            *v += i64::from(m >> i & 1 == 1);
        }
    }
    false
}

/// Splits the search over the first choice across workers and keeps the
/// lowest first choice that succeeds.
fn search(
    s: &Search,
    masks: &[u32],
    tau: i64,
    rem: &[i64],
    exact: bool,
) -> Option<Option<Vec<usize>>> {
    let found = (0..masks.len()).into_par_iter().find_map_first(|j| {
        let m = masks[j];
        let mut rem = rem.to_vec();
        for (i, v) in rem.iter_mut().enumerate() {
            *v -= i64::from(m >> i & 1 == 1);
            if *v < 0 || (exact && *v > tau - 1) {
                return None;
            }
        }
        let mut out = vec![j];
        pick(s, masks, j, tau - 1, &mut rem, exact, &mut out).then_some(out)
    });
    s.finish(found)
}

/// Decomposes an integral `tau`-SCO `w` into `tau` strongly connected
/// orientations, or proves that none exists.
///
/// Edges with all `tau` copies on one side are forced in every part; the
/// others ("free") are enumerated, and more free edges than the guard allows
/// give `Timeout`.
pub fn decompose_sco(
    b: &BidirectedGraph,
    w: &ArcWeightVector,
    tau: i64,
    budget: &Budget,
) -> Result<DecompositionResult> {
    require_member(&PolytopeSpec::new(PolytopeFamily::P0, tau, b.clone())?, w)?;
    let m = b.edge_count();
    let free: Vec<usize> = (0..m)
        .filter(|&e| {
            let plus = w.get(b.plus(e));
            plus != 0 && plus != tau
        })
        .collect();
    let guard = limits().sco_free_edges.min(31);
    if free.len() > guard {
        return Ok(DecompositionResult::timeout(format!(
            "{} edges carry both directions; the exhaustive guard is {guard}",
            free.len()
        )));
    }
    let forced: Vec<ArcId> = (0..m)
        .filter(|e| !free.contains(e))
        .map(|e| if w.get(b.plus(e)) == tau { b.plus(e) } else { b.minus(e) })
        .collect();
    let orientation = |mask: u32| {
        forced.iter().copied().chain(
            free.iter()
                .enumerate()
                .map(move |(i, &e)| if mask >> i & 1 == 1 { b.plus(e) } else { b.minus(e) }),
        )
    };
    let s = Search::new(budget);
    let masks: Vec<u32> = (0..1u32 << free.len())
        .into_par_iter()
        .filter(|&mask| !s.tick() && strong(b, orientation(mask)))
        .collect();
    if s.timed_out.load(Ordering::Relaxed) {
        return Ok(DecompositionResult::timeout("budget expired while listing orientations".into()));
    }
    let rem: Vec<i64> = free.iter().map(|&e| w.get(b.plus(e))).collect();
    let Some(found) = search(&s, &masks, tau, &rem, true) else {
        return Ok(DecompositionResult::timeout("budget expired during the search".into()));
    };
    let Some(choice) = found else {
        return Ok(DecompositionResult {
            status: DecompositionStatus::ProvenAbsent,
            parts: Vec::new(),
            note: Some(format!("{} strongly connected orientations searched", masks.len())),
        });
    };
    let d = b.digraph();
    let parts = choice
        .iter()
        .map(|&j| ArcWeightVector::indicator(d, &ArcSet::from_ids(d, orientation(masks[j]))?))
        .collect::<Result<Vec<_>>>()?;
    verify_decomposition(b, w, &parts, true)?;
    Ok(DecompositionResult {
        status: DecompositionStatus::Found,
        parts,
        note: None,
    })
}

/// Packs `tau` strongly connected spanning subdigraphs into an integral
/// `tau`-SCD `w`, or proves that none exists. Only inclusion-minimal ones
/// are tried, which loses nothing. Weight left over after the packing is
/// added to the first part so the parts sum to `w`.
pub fn decompose_scd(
    b: &BidirectedGraph,
    w: &ArcWeightVector,
    tau: i64,
    budget: &Budget,
) -> Result<DecompositionResult> {
    require_member(&PolytopeSpec::new(PolytopeFamily::Q0, tau, b.clone())?, w)?;
    let d = b.digraph();
    let support: Vec<ArcId> = (0..d.m()).filter(|&a| w.get(a) > 0).collect();
    let guard = limits().scd_support.min(31);
    if support.len() > guard {
        return Ok(DecompositionResult::timeout(format!(
            "support has {} arcs; the exhaustive guard is {guard}",
            support.len()
        )));
    }
    let arcs_of = |mask: u32| {
        support
            .iter()
            .enumerate()
            .filter(move |&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
    };
    let s = Search::new(budget);
    let strong_masks: Vec<u32> = (0..1u32 << support.len())
        .into_par_iter()
        .filter(|&mask| !s.tick() && strong(b, arcs_of(mask)))
        .collect();
    if s.timed_out.load(Ordering::Relaxed) {
        return Ok(DecompositionResult::timeout("budget expired while listing subdigraphs".into()));
    }
    let lookup: HashSet<u32> = strong_masks.iter().copied().collect();
    let minimal: Vec<u32> = strong_masks
        .into_iter()
        .filter(|&mask| (0..32).all(|i| mask >> i & 1 == 0 || !lookup.contains(&(mask ^ 1 << i))))
        .collect();
    let cap: Vec<i64> = support.iter().map(|&a| w.get(a).min(tau)).collect();
    let Some(found) = search(&s, &minimal, tau, &cap, false) else {
        return Ok(DecompositionResult::timeout("budget expired during the search".into()));
    };
    let Some(choice) = found else {
        return Ok(DecompositionResult {
            status: DecompositionStatus::ProvenAbsent,
            parts: Vec::new(),
            note: Some(format!("{} minimal strongly connected subdigraphs searched", minimal.len())),
        });
    };
    let mut parts: Vec<Vec<i64>> = choice
        .iter()
        .map(|&j| {
            let mut v = vec![0; d.m()];
            for a in arcs_of(minimal[j]) {
                v[a] = 1;
            }
            v
        })
        .collect();
    for a in 0..d.m() {
        let used: i64 = parts.iter().map(|p| p[a]).sum();
        parts[0][a] += w.get(a) - used;
    }
    let parts = parts
        .into_iter()
        .map(|p| ArcWeightVector::new(d, p))
        .collect::<Result<Vec<_>>>()?;
    verify_decomposition(b, w, &parts, false)?;
    Ok(DecompositionResult {
        status: DecompositionStatus::Found,
        parts,
        note: None,
    })
}

/// The parts sum to `w` and each is an orientation (`sco`) or has a
/// spanning strongly connected support.
pub fn verify_decomposition(
    b: &BidirectedGraph,
    w: &ArcWeightVector,
    parts: &[ArcWeightVector],
    sco: bool,
) -> Result<()> {
    let d = b.digraph();
    w.check_host(d.host())?;
    for (i, p) in parts.iter().enumerate() {
        p.check_host(d.host())?;
        let support = p.support(d)?;
        if sco {
            if p.values().iter().any(|&v| v > 1) {
                return Err(Error::Internal(format!("part {i} is not 0/1")));
            }
            b.orientation_bits(&support)?;
        }
        if !strong(b, support.iter()) {
            return Err(Error::Internal(format!("part {i} is not strongly connected")));
        }
    }
    if let Some(a) = (0..d.m()).find(|&a| parts.iter().map(|p| p.get(a)).sum::<i64>() != w.get(a)) {
        return Err(Error::Internal(format!("parts do not sum to the input at arc {a}")));
    }
    Ok(())
}
