//! Exhaustive orientation search on mixed graphs against pseudo-dicuts: edge
//! cuts `δ_E(U)` of vertex sets `U` that no directed arc enters.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::limits::limits;
use crate::ratio::FlowRatio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedGraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
    edges: Vec<(VertexId, VertexId)>,
}

impl MixedGraph {
    pub fn new(
        n: usize,
        arcs: Vec<(VertexId, VertexId)>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        for &(u, v) in arcs.iter().chain(&edges) {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        Ok(MixedGraph { n, arcs, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "k", rename_all = "snake_case")]
pub enum MixedMode {
    /// Both directions carry at least `floor(|δ_E(U)| / k)` edges.
    StrongRatio(FlowRatio),
    /// Both directions carry at least one edge. An empty pseudo-dicut
    /// cannot be covered, so its presence makes the search fail.
    WeakCover,
}

/// Distinct pseudo-dicuts as (crossing-edge mask, mask of crossing edges
/// whose lower-to-higher direction leaves `U`).
pub fn pseudo_dicuts(mg: &MixedGraph) -> Result<Vec<(u64, u64)>> {
    let lim = limits();
    if mg.n > lim.mixed_vertices || mg.edges.len() > lim.orientation_edges.min(63) {
        return Err(Error::Guard(format!(
            "mixed explorer is limited to {} vertices and {} edges",
            lim.mixed_vertices,
            lim.orientation_edges.min(63)
        )));
    }
    let mut found = BTreeSet::new();
    for u in 1u64..(1u64 << mg.n) - 1 {
        let inside = |v: usize| u >> v & 1 == 1;
        if mg.arcs.iter().any(|&(t, h)| inside(h) && !inside(t)) {
            continue;
        }
        let (mut c, mut l) = (0u64, 0u64);
        for (e, &(a, b)) in mg.edges.iter().enumerate() {
            if inside(a) != inside(b) {
                c |= 1 << e;
                if inside(a.min(b)) {
                    l |= 1 << e;
                }
            }
        }
        found.insert((c, l));
    }
    Ok(found.into_iter().collect())
}

/// Lowest-index orientation satisfying `mode` on every pseudo-dicut; bit `e`
/// set means edge `e` runs from its lower to its higher endpoint.
pub fn explore_mixed(mg: &MixedGraph, mode: MixedMode) -> Result<Option<Vec<bool>>> {
    let cuts = pseudo_dicuts(mg)?;
    let m = mg.edges.len();
    let need: Vec<u32> = cuts
        .iter()
        .map(|&(c, _)| match mode {
            MixedMode::StrongRatio(k) => k.floor_div(c.count_ones() as i64) as u32,
            MixedMode::WeakCover => 1,
        })
        .collect();
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let ok = |o: u64| {
        cuts.iter().zip(&need).all(|(&(c, l), &k)| {
            let out = (c & !(o ^ l) & full).count_ones();
            out >= k && c.count_ones() - out >= k
        })
    };
    let hit = (0u64..=full).into_par_iter().find_first(|&o| ok(o));
    Ok(hit.map(|o| (0..m).map(|e| o >> e & 1 == 1).collect()))
}

/// Direct check of an orientation against every pseudo-dicut, one vertex set
/// at a time. Returns the first failing set.
pub fn check_mixed_orientation(mg: &MixedGraph, mode: MixedMode, plus: &[bool]) -> Result<Option<Vec<VertexId>>> {
    if plus.len() != mg.edges.len() {
        return Err(Error::InvalidParams(format!(
            "{} orientation bits for {} edges",
            plus.len(),
            mg.edges.len()
        )));
    }
    if mg.n > limits().mixed_vertices {
        return Err(Error::Guard(format!("mixed check is limited to {} vertices", limits().mixed_vertices)));
    }
    for u in 1u64..(1u64 << mg.n) - 1 {
        let side: Vec<bool> = (0..mg.n).map(|v| u >> v & 1 == 1).collect();
        if mg.arcs.iter().any(|&(t, h)| side[h] && !side[t]) {
            continue;
        }
        let (mut out, mut inn) = (0i64, 0i64);
        for (e, &(a, b)) in mg.edges.iter().enumerate() {
            let (t, h) = if plus[e] { (a.min(b), a.max(b)) } else { (a.max(b), a.min(b)) };
            match (side[t], side[h]) {
                (true, false) => out += 1,
                (false, true) => inn += 1,
                _ => {}
            }
        }
        let need = match mode {
            MixedMode::StrongRatio(k) => k.floor_div(out + inn),
            MixedMode::WeakCover => 1,
        };
        if out < need || inn < need {
            return Ok(Some((0..mg.n).filter(|&v| side[v]).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_pseudo_dicut_accepts_anything() {
        let mg = MixedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)], vec![(0, 2)]).unwrap();
        assert!(pseudo_dicuts(&mg).unwrap().is_empty());
        assert_eq!(explore_mixed(&mg, MixedMode::WeakCover).unwrap(), Some(vec![false]));
    }

    #[test]
    fn explorer_hits_pass_the_direct_check() {
        let mg = MixedGraph::new(4, vec![(0, 1)], vec![(1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        for mode in [MixedMode::WeakCover, MixedMode::StrongRatio(FlowRatio::from_k(4, 1).unwrap())] {
            if let Some(o) = explore_mixed(&mg, mode).unwrap() {
                assert_eq!(check_mixed_orientation(&mg, mode, &o).unwrap(), None);
            }
        }
        let bad = vec![false; 5];
        let ok = check_mixed_orientation(&mg, MixedMode::WeakCover, &bad).unwrap().is_none();
        let scan_ok = pseudo_dicuts(&mg)
            .unwrap()
            .iter()
            .all(|&(c, l)| (c & !l) != 0 && (c & l) != 0);
        assert_eq!(ok, scan_ok);
    }

    #[test]
    fn single_edge_cannot_cover() {
        let mg = MixedGraph::new(2, vec![], vec![(0, 1)]).unwrap();
        assert_eq!(explore_mixed(&mg, MixedMode::WeakCover).unwrap(), None);
    }

    #[test]
    fn cycle_covers() {
        let mg = MixedGraph::new(3, vec![], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let o = explore_mixed(&mg, MixedMode::WeakCover).unwrap().unwrap();
        // 0 -> 1 -> 2 -> 0; edge (2, 0) runs against its lower-to-higher direction.
        assert_eq!(o, vec![true, true, false]);
        let two = FlowRatio::from_k(2, 1).unwrap();
        assert!(explore_mixed(&mg, MixedMode::StrongRatio(two)).unwrap().is_some());
    }
}
