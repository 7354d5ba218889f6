//! Multigraph types with stable arc ids, the bidirected double cover, and
//! id-keyed arc sets and weight vectors.

mod arcset;
pub mod connectivity;
pub mod generate;
pub mod io;

pub use arcset::{ArcSet, ArcWeightVector};

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArcId = usize;
pub type EdgeId = usize;

/// Validation cap on vertex and arc counts.
pub const MAX_SIZE: usize = 1 << 20;

/// Content hash of a graph. Arc sets and weight vectors carry the id of the
/// graph they were built for and refuse to mix with another one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HostId(u64);

impl HostId {
    fn of(kind: u8, n: usize, pairs: &[(VertexId, VertexId)]) -> Self {
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        eat(kind as u64);
        eat(n as u64);
        for &(a, b) in pairs {
            eat(a as u64);
            eat(b as u64);
        }
        HostId(h)
    }
}

fn check_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<()> {
    if n > MAX_SIZE || pairs.len() > MAX_SIZE {
        return Err(Error::TooLarge(format!("n = {n}, m = {}", pairs.len())));
    }
    for &(u, v) in pairs {
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
    }
    Ok(())
}

/// Directed multigraph. Arc `i` is `arcs()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
    host: HostId,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(VertexId, VertexId)>) -> Result<Self> {
        check_pairs(n, &arcs)?;
        let host = HostId::of(b'd', n, &arcs);
        Ok(Digraph { n, arcs, host })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn tail(&self, a: ArcId) -> VertexId {
        self.arcs[a].0
    }

    pub fn head(&self, a: ArcId) -> VertexId {
        self.arcs[a].1
    }

    pub fn host(&self) -> HostId {
        self.host
    }

    /// Same arc ids, every arc flipped.
    pub fn reverse(&self) -> Digraph {
        let arcs = self.arcs.iter().map(|&(t, h)| (h, t)).collect();
        Digraph::new(self.n, arcs).expect("reversal of a valid digraph")
    }

    /// Out-arc lists per vertex, in arc id order.
    pub fn out_adjacency(&self) -> Vec<Vec<ArcId>> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, &(t, _)) in self.arcs.iter().enumerate() {
            adj[t].push(a);
        }
        adj
    }

    pub fn in_adjacency(&self) -> Vec<Vec<ArcId>> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, &(_, h)) in self.arcs.iter().enumerate() {
            adj[h].push(a);
        }
        adj
    }

    pub fn empty_set(&self) -> ArcSet {
        ArcSet::new(self)
    }

    pub fn full_set(&self) -> ArcSet {
        let mut s = ArcSet::new(self);
        for a in 0..self.m() {
            s.insert(a);
        }
        s
    }

    pub fn underlying(&self) -> UndirGraph {
        UndirGraph::new(self.n, self.arcs.clone()).expect("same pairs as a valid digraph")
    }

    /// Sum of `w` over arcs leaving `side`.
    pub fn out_weight(&self, side: &[bool], w: Option<&ArcWeightVector>) -> i64 {
        self.arcs
            .iter()
            .enumerate()
            .filter(|(_, &(t, h))| side[t] && !side[h])
            .map(|(a, _)| w.map_or(1, |w| w.get(a)))
            .sum()
    }
}

/// Undirected multigraph. Edge `i` is `edges()[i]`, endpoints as given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    host: HostId,
}

impl UndirGraph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        check_pairs(n, &edges)?;
        let host = HostId::of(b'g', n, &edges);
        Ok(UndirGraph { n, edges, host })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn host(&self) -> HostId {
        self.host
    }

    /// Incident (edge, other endpoint) lists per vertex.
    pub fn adjacency(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((e, v));
            adj[v].push((e, u));
        }
        adj
    }

    pub fn degree(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn bidirect(&self) -> BidirectedGraph {
        BidirectedGraph::new(self.clone())
    }
}

/// Both orientations of every edge of `base`: arc `2e` is e+ (lower endpoint
/// to higher), arc `2e + 1` is e-.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidirectedGraph {
    base: UndirGraph,
    digraph: Digraph,
}

impl BidirectedGraph {
    pub fn new(base: UndirGraph) -> Self {
        let mut arcs = Vec::with_capacity(2 * base.m());
        for &(u, v) in base.edges() {
            let (lo, hi) = (u.min(v), u.max(v));
            arcs.push((lo, hi));
            arcs.push((hi, lo));
        }
        let digraph = Digraph::new(base.n(), arcs).expect("doubling a valid graph");
        BidirectedGraph { base, digraph }
    }

    pub fn base(&self) -> &UndirGraph {
        &self.base
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn edge_count(&self) -> usize {
        self.base.m()
    }

    pub fn host(&self) -> HostId {
        self.digraph.host()
    }

    pub fn plus(&self, e: EdgeId) -> ArcId {
        2 * e
    }

    pub fn minus(&self, e: EdgeId) -> ArcId {
        2 * e + 1
    }

    pub fn edge_of(&self, a: ArcId) -> EdgeId {
        a / 2
    }

    pub fn is_plus(&self, a: ArcId) -> bool {
        a.is_multiple_of(2)
    }

    pub fn reverse(&self, a: ArcId) -> ArcId {
        a ^ 1
    }

    /// The arc of edge `e` that runs from `tail`.
    pub fn arc_from(&self, e: EdgeId, tail: VertexId) -> ArcId {
        if self.digraph.tail(2 * e) == tail {
            2 * e
        } else {
            2 * e + 1
        }
    }

    /// Orientation set from one bit per edge (`true` picks e+).
    pub fn orientation_from_bits(&self, plus: &[bool]) -> ArcSet {
        let mut s = self.digraph.empty_set();
        for (e, &p) in plus.iter().enumerate() {
            s.insert(if p { self.plus(e) } else { self.minus(e) });
        }
        s
    }

    /// Inverse of [`orientation_from_bits`](Self::orientation_from_bits);
    /// fails unless exactly one arc per edge is present.
    pub fn orientation_bits(&self, orient: &ArcSet) -> Result<Vec<bool>> {
        orient.check_host(self.host())?;
        (0..self.edge_count())
            .map(|e| match (orient.contains(2 * e), orient.contains(2 * e + 1)) {
                (true, false) => Ok(true),
                (false, true) => Ok(false),
                _ => Err(Error::NotOrientation(e)),
            })
            .collect()
    }

    /// The digraph formed by the arcs of an orientation, indexed by edge id.
    pub fn oriented_digraph(&self, plus: &[bool]) -> Digraph {
        let arcs = (0..self.edge_count())
            .map(|e| {
                let a = if plus[e] { self.plus(e) } else { self.minus(e) };
                self.digraph.arcs()[a]
            })
            .collect();
        Digraph::new(self.n(), arcs).expect("orientation of a valid graph")
    }
}

impl Serialize for Digraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Digraph", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("arcs", self.arcs())?;
        st.end()
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn underlying_keeps_ids() {
        let d = Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        let g = d.underlying();
        assert_eq!(g.edges(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            Digraph::new(2, vec![(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
    }

    #[test]
    fn bidirect_single_edge() {
        let g = UndirGraph::new(2, vec![(1, 0)]).unwrap();
        let b = g.bidirect();
        assert_eq!(b.digraph().arcs(), &[(0, 1), (1, 0)]);
        assert_eq!(b.reverse(b.plus(0)), b.minus(0));
        assert_eq!(b.arc_from(0, 1), 1);
    }

    #[test]
    fn bidirect_k4_out_degree() {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((u, v));
            }
        }
        let b = UndirGraph::new(4, edges).unwrap().bidirect();
        assert_eq!(b.digraph().m(), 12);
        assert!(b.digraph().out_adjacency().iter().all(|l| l.len() == 3));
    }

    #[test]
    fn host_ids_differ() {
        let a = Digraph::new(3, vec![(0, 1)]).unwrap();
        let b = Digraph::new(3, vec![(1, 0)]).unwrap();
        assert_ne!(a.host(), b.host());
        assert_eq!(a.host(), Digraph::new(3, vec![(0, 1)]).unwrap().host());
    }
}
