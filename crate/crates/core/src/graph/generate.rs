//! Deterministic instance generators. Every output is a pure function of the
//! spec and the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Digraph, UndirGraph, VertexId};
use crate::arborescence::rooted_connectivity;
use crate::cuts::min_dicut;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceSpec {
    /// `m` arcs with uniformly random distinct endpoints.
    RandomDigraph { n: usize, m: usize },
    /// 2-edge-connected multigraph with `m` edges, grown by ears.
    Random2ecGraph { n: usize, m: usize },
    /// Path 0 -> 1 -> ... -> n-1 with `mult` parallel arcs per step.
    ParallelBundle { n: usize, mult: usize },
    /// Transitive tournament on 4 vertices, every arc `mult` times.
    K4Family { mult: usize },
    /// Digraph with a dicut whose minimum is at least `tau`: a random acyclic
    /// digraph plus up to `back` backward arcs that keep some dicut, then arcs
    /// added across the current minimum dicut until it reaches `tau`.
    DicutDigraph {
        n: usize,
        m: usize,
        back: usize,
        tau: usize,
    },
    /// Random digraph with arcs added across minimum rooted cuts until every
    /// cut containing vertex 0 has at least `k` leaving arcs.
    RootedDigraph { n: usize, m: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Digraph(Digraph),
    Graph(UndirGraph),
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn pair(rng: &mut ChaCha8Rng, n: usize) -> (VertexId, VertexId) {
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

pub fn gen_instance(spec: &InstanceSpec, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *spec {
        InstanceSpec::RandomDigraph { n, m } => {
            if n < 2 && m > 0 {
                return Err(bad("arcs need at least 2 vertices"));
            }
            let arcs = (0..m).map(|_| pair(&mut rng, n)).collect();
            Ok(Instance::Digraph(Digraph::new(n, arcs)?))
        }
        InstanceSpec::Random2ecGraph { n, m } => {
            Ok(Instance::Graph(random_2ec_graph(n, m, &mut rng)?))
        }
        InstanceSpec::ParallelBundle { n, mult } => {
            if n < 2 {
                return Err(bad("a bundle needs at least 2 vertices"));
            }
            let arcs = (0..n - 1)
                .flat_map(|i| std::iter::repeat_n((i, i + 1), mult))
                .collect();
            Ok(Instance::Digraph(Digraph::new(n, arcs)?))
        }
        InstanceSpec::K4Family { mult } => {
            let mut arcs = Vec::new();
            for u in 0..4 {
                for v in u + 1..4 {
                    arcs.extend(std::iter::repeat_n((u, v), mult));
                }
            }
            Ok(Instance::Digraph(Digraph::new(4, arcs)?))
        }
        InstanceSpec::DicutDigraph { n, m, back, tau } => {
            Ok(Instance::Digraph(dicut_digraph(n, m, back, tau, &mut rng)?))
        }
        InstanceSpec::RootedDigraph { n, m, k } => {
            Ok(Instance::Digraph(rooted_digraph(n, m, k, &mut rng)?))
        }
    }
}

fn random_2ec_graph(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<UndirGraph> {
    if n < 2 || m < n.max(2) {
        return Err(bad(format!(
            "a 2-edge-connected graph on {n} vertices needs n >= 2 and m >= max(n, 2), got m = {m}"
        )));
    }
    let extra = m - n;
    let c = if n == 2 {
        2
    } else if extra == 0 {
        n
    } else {
        rng.gen_range(3..=n)
    };
    let mut edges: Vec<(VertexId, VertexId)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
    let mut next = c;
    let mut ears_left = extra;
    while next < n {
        let remaining = n - next;
        let j = if ears_left <= 1 {
            remaining
        } else {
            rng.gen_range(1..=remaining.min(4))
        };
        let a = rng.gen_range(0..next);
        let b = rng.gen_range(0..next);
        let mut prev = a;
        for x in next..next + j {
            edges.push((prev, x));
            prev = x;
        }
        edges.push((prev, b));
        next += j;
        ears_left -= 1;
    }
    while edges.len() < m {
        edges.push(pair(rng, n));
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let edges = edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    UndirGraph::new(n, edges)
}

fn dicut_digraph(
    n: usize,
    m: usize,
    back: usize,
    tau: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Digraph> {
    if n < 2 {
        return Err(bad("a dicut needs at least 2 vertices"));
    }
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    let forward = |rng: &mut ChaCha8Rng| {
        let (i, j) = pair(rng, n);
        (order[i.min(j)], order[i.max(j)])
    };
    let mut arcs: Vec<(VertexId, VertexId)> = (0..m).map(|_| forward(rng)).collect();
    for _ in 0..back {
        let (u, v) = forward(rng);
        arcs.push((v, u));
        if min_dicut(&Digraph::new(n, arcs.clone())?, None)?.is_none() {
            arcs.pop();
        }
    }
    loop {
        let d = Digraph::new(n, arcs.clone())?;
        let cut = min_dicut(&d, None)?.ok_or_else(|| Error::Internal("dicut lost".into()))?;
        if cut.value >= tau as i64 {
            return Ok(d);
        }
        let inside: Vec<VertexId> = cut.vertices();
        let outside: Vec<VertexId> = (0..n).filter(|&v| !cut.side[v]).collect();
        let u = inside[rng.gen_range(0..inside.len())];
        let v = outside[rng.gen_range(0..outside.len())];
        arcs.push((u, v));
    }
}

fn rooted_digraph(n: usize, m: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Digraph> {
    if n < 2 {
        return Err(bad("rooted connectivity needs at least 2 vertices"));
    }
    let mut arcs: Vec<(VertexId, VertexId)> = (0..m).map(|_| pair(rng, n)).collect();
    loop {
        let d = Digraph::new(n, arcs.clone())?;
        let rc = rooted_connectivity(&d, 0, None)?;
        if rc.value >= k as i64 {
            return Ok(d);
        }
        let cut = rc
            .witness
            .ok_or_else(|| Error::Internal("missing rooted cut".into()))?;
        let inside: Vec<VertexId> = cut.vertices();
        let outside: Vec<VertexId> = (0..n).filter(|&v| !cut.side[v]).collect();
        let u = inside[rng.gen_range(0..inside.len())];
        let v = outside[rng.gen_range(0..outside.len())];
        arcs.push((u, v));
    }
}
