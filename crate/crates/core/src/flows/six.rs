//! Nowhere-zero 6-flows in bridgeless graphs.
//!
//! Stages, each checked before the next:
//! 1. Contract edges lying in 2-edge cuts until the graph is 3-edge-connected.
//! 2. On the contracted graph grow a vertex set `S` from one vertex. Each step
//!    adds one or two new edges closing a walk through the spanning tree of
//!    `S`; later a Z3 multiple of every walk is chosen so each new edge is
//!    nonzero. When no step applies, a connected even subgraph is taken from a
//!    leaf 2-edge-connected block outside `S` and carries the Z2 part.
//! 3. Lift the Z2 x Z3 flow back through the contractions by conservation.
//! 4. Turn the Z6 flow into an integer flow with values in 1..=5 by
//!    subtracting 6 on a 0/1 correction found with one max-flow.

use std::collections::VecDeque;

use super::{require_flow, FlowAssignment};
use crate::error::{Error, Result};
use crate::graph::connectivity::{bridges, check_two_edge_connected, connected_components};
use crate::graph::{UndirGraph, VertexId};
use crate::maxflow::FlowNetwork;
use crate::ratio::FlowRatio;

/// Z2 x Z3 values on every edge, relative to e+ (lower endpoint to higher).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFlow {
    pub z2: Vec<u8>,
    pub z3: Vec<u8>,
}

impl GroupFlow {
    /// Nonzero on every edge and conserved mod 2 and mod 3 at every vertex.
    pub fn verify(&self, g: &UndirGraph) -> std::result::Result<(), String> {
        if self.z2.len() != g.m() || self.z3.len() != g.m() {
            return Err("length mismatch".into());
        }
        let mut net2 = vec![0i64; g.n()];
        let mut net3 = vec![0i64; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if self.z2[e] == 0 && self.z3[e] == 0 {
                return Err(format!("edge {e} is zero"));
            }
            let (t, h) = (u.min(v), u.max(v));
            net2[t] += self.z2[e] as i64;
            net2[h] -= self.z2[e] as i64;
            net3[t] += self.z3[e] as i64;
            net3[h] -= self.z3[e] as i64;
        }
        for v in 0..g.n() {
            if net2[v].rem_euclid(2) != 0 || net3[v].rem_euclid(3) != 0 {
                return Err(format!("not conserved at vertex {v}"));
            }
        }
        Ok(())
    }

    /// The Z6 value `3 * z2 + 4 * z3 mod 6` per edge.
    pub fn z6(&self) -> Vec<i64> {
        self.z2
            .iter()
            .zip(&self.z3)
            .map(|(&a, &b)| (3 * a as i64 + 4 * b as i64) % 6)
            .collect()
    }
}

/// A nowhere-zero Z2 x Z3 flow of a 2-edge-connected graph.
pub fn six_flow_group(g: &UndirGraph) -> Result<GroupFlow> {
    check_two_edge_connected(g)?;
    let m = g.m();
    let refd: Vec<(VertexId, VertexId)> =
        g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();

    // Stage 1: contraction. `class[v]` is the current class of vertex v.
    let mut class: Vec<usize> = (0..g.n()).collect();
    let mut members: Vec<Vec<VertexId>> = (0..g.n()).map(|v| vec![v]).collect();
    let mut contracted: Vec<(usize, Vec<VertexId>)> = Vec::new();
    let (compact, h_edges) = loop {
        let mut compact = vec![usize::MAX; g.n()];
        let mut h = 0;
        for &c in &class {
            if compact[c] == usize::MAX {
                compact[c] = h;
                h += 1;
            }
        }
        let h_edges: Vec<(usize, usize)> = refd
            .iter()
            .map(|&(t, hd)| (compact[class[t]], compact[class[hd]]))
            .collect();
        let mut live: Vec<bool> = vec![true; m];
        for &(e, _) in &contracted {
            live[e] = false;
        }
        let target = (0..m).find(|&e| {
            live[e] && h_edges[e].0 != h_edges[e].1 && {
                // Contracted edges are loops already, so they never count.
                !bridges(h, &h_edges, Some(e)).is_empty()
            }
        });
        let Some(e) = target else {
            let compact_of: Vec<usize> = (0..g.n()).map(|v| compact[class[v]]).collect();
            break (compact_of, h_edges);
        };
        let (a, b) = (class[refd[e].0], class[refd[e].1]);
        contracted.push((e, members[a].clone()));
        let (keep, gone) = if members[a].len() >= members[b].len() { (a, b) } else { (b, a) };
        let moved = std::mem::take(&mut members[gone]);
        for &v in &moved {
            class[v] = keep;
        }
        members[keep].extend(moved);
    };
    let h = compact.iter().copied().max().map_or(0, |x| x + 1);

    // Stage 2: group flow on the contracted graph. Contracted edges are loops
    // there and are skipped; they get values when lifted.
    let mut skip = vec![false; m];
    for &(e, _) in &contracted {
        skip[e] = true;
    }
    let (z2h, z3h) = closure_flow(h, &h_edges, &skip)?;
    let mut z6: Vec<i64> = (0..m).map(|e| (3 * z2h[e] + 4 * z3h[e]) % 6).collect();

    // Stage 3: lift contracted edges, last contraction first.
    for (e, side) in contracted.iter().rev() {
        let mut inside = vec![false; g.n()];
        for &v in side {
            inside[v] = true;
        }
        let mut s = 0i64;
        let mut own = 0i64;
        for (f, &(t, hd)) in refd.iter().enumerate() {
            let sign = match (inside[t], inside[hd]) {
                (true, false) => 1,
                (false, true) => -1,
                _ => continue,
            };
            if f == *e {
                own = sign;
            } else {
                s += sign * z6[f];
            }
        }
        if own == 0 {
            return Err(Error::Internal(format!("contracted edge {e} does not cross its class")));
        }
        z6[*e] = (-s * own).rem_euclid(6);
    }

    let flow = GroupFlow {
        z2: z6.iter().map(|&x| (x % 2) as u8).collect(),
        z3: z6.iter().map(|&x| (x % 3) as u8).collect(),
    };
    flow.verify(g).map_err(|msg| Error::Internal(format!("group flow: {msg}")))?;
    Ok(flow)
}

struct Tree {
    parent: Vec<Option<(VertexId, usize)>>,
    depth: Vec<usize>,
}

fn dir(edges: &[(usize, usize)], e: usize, from: usize) -> i64 {
    if edges[e].0 == from {
        1
    } else {
        -1
    }
}

impl Tree {
    /// Edges with traversal signs on the tree path from `a` to `b`.
    fn path(&self, edges: &[(usize, usize)], a: usize, b: usize) -> Vec<(usize, i64)> {
        let (mut x, mut y) = (a, b);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while x != y {
            if self.depth[x] >= self.depth[y] {
                let (p, e) = self.parent[x].expect("climb below root");
                front.push((e, dir(edges, e, x)));
                x = p;
            } else {
                let (p, e) = self.parent[y].expect("climb below root");
                back.push((e, dir(edges, e, p)));
                y = p;
            }
        }
        back.reverse();
        front.extend(back);
        front
    }
}

/// Z2 and Z3 values (as 0..2 / 0..3) on a 3-edge-connected multigraph whose
/// edges may include loops; edges marked `skip` are ignored and get 0.
fn closure_flow(
    h: usize,
    edges: &[(usize, usize)],
    skip: &[bool],
) -> Result<(Vec<i64>, Vec<i64>)> {
    let m = edges.len();
    let mut z2 = vec![0i64; m];
    let mut z3 = vec![0i64; m];
    if h == 0 {
        return Ok((z2, z3));
    }
    let mut done = skip.to_vec();
    let mut in_s = vec![false; h];
    let mut tree = Tree {
        parent: vec![None; h],
        depth: vec![0; h],
    };
    let mut adj = vec![Vec::new(); h];
    for (e, &(u, v)) in edges.iter().enumerate() {
        if skip[e] || u == v {
            continue;
        }
        adj[u].push((e, v));
        adj[v].push((e, u));
    }
    in_s[0] = true;
    let mut size = 1;
    // (new edges, closed walk)
    #[allow(clippy::type_complexity)]
    let mut steps: Vec<(Vec<usize>, Vec<(usize, i64)>)> = Vec::new();

    loop {
        let mut progress = true;
        while progress {
            progress = false;
            for e in 0..m {
                let (t, hd) = edges[e];
                if !done[e] && in_s[t] && in_s[hd] {
                    let mut walk = vec![(e, 1)];
                    walk.extend(tree.path(edges, hd, t));
                    steps.push((vec![e], walk));
                    done[e] = true;
                    progress = true;
                }
            }
            for x in 0..h {
                if in_s[x] {
                    continue;
                }
                let links: Vec<(usize, usize)> = adj[x]
                    .iter()
                    .filter(|&&(e, s)| !done[e] && in_s[s])
                    .take(2)
                    .copied()
                    .collect();
                if links.len() < 2 {
                    continue;
                }
                let ((e1, s1), (e2, s2)) = (links[0], links[1]);
                let mut walk = vec![(e1, dir(edges, e1, s1)), (e2, dir(edges, e2, x))];
                walk.extend(tree.path(edges, s2, s1));
                steps.push((vec![e1, e2], walk));
                done[e1] = true;
                done[e2] = true;
                in_s[x] = true;
                size += 1;
                tree.parent[x] = Some((s1, e1));
                tree.depth[x] = tree.depth[s1] + 1;
                progress = true;
            }
        }
        if size == h {
            break;
        }
        let piece = even_piece(h, edges, &adj, &in_s, &done)?;
        let EvenPiece {
            u,
            v,
            link_u: (e1, s1),
            link_v: (e2, s2),
            edges: z_edges,
        } = piece;

        // Spanning tree of the piece from u, hung below s1 through e1.
        let mut z_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); h];
        for &e in &z_edges {
            let (a, b) = edges[e];
            z_adj[a].push((e, b));
            z_adj[b].push((e, a));
        }
        let mut seen = vec![false; h];
        seen[u] = true;
        tree.parent[u] = Some((s1, e1));
        tree.depth[u] = tree.depth[s1] + 1;
        let old_path = tree.path(edges, s2, s1);
        let mut queue = VecDeque::from([u]);
        let mut z_vertices = vec![u];
        while let Some(a) = queue.pop_front() {
            for &(e, b) in &z_adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    tree.parent[b] = Some((a, e));
                    tree.depth[b] = tree.depth[a] + 1;
                    z_vertices.push(b);
                    queue.push_back(b);
                }
            }
        }
        let mut walk = vec![(e1, dir(edges, e1, s1))];
        walk.extend(tree.path(edges, u, v));
        walk.push((e2, dir(edges, e2, v)));
        walk.extend(old_path);
        steps.push((vec![e1, e2], walk));
        done[e1] = true;
        done[e2] = true;
        for &e in &z_edges {
            done[e] = true;
            z2[e] = 1;
        }
        for &x in &z_vertices {
            in_s[x] = true;
        }
        size += z_vertices.len();
    }

    for (new, walk) in steps.iter().rev() {
        let mut forbidden = [false; 3];
        for &e in new {
            let sign = walk
                .iter()
                .find(|&&(f, _)| f == e)
                .map(|&(_, s)| s)
                .ok_or_else(|| Error::Internal("new edge missing from its walk".into()))?;
            forbidden[(-z3[e] * sign).rem_euclid(3) as usize] = true;
        }
        let alpha = [1i64, 2, 0]
            .into_iter()
            .find(|&a| !forbidden[a as usize])
            .ok_or_else(|| Error::Internal("no free Z3 coefficient".into()))?;
        for &(e, s) in walk {
            z3[e] = (z3[e] + s * alpha).rem_euclid(3);
        }
    }
    Ok((z2, z3))
}

struct EvenPiece {
    u: usize,
    v: usize,
    link_u: (usize, usize),
    link_v: (usize, usize),
    edges: Vec<usize>,
}

/// When every outside vertex has at most one edge into `S`: a connected even
/// subgraph outside `S` with two of its vertices `u`, `v` linked into `S`.
fn even_piece(
    h: usize,
    edges: &[(usize, usize)],
    adj: &[Vec<(usize, usize)>],
    in_s: &[bool],
    done: &[bool],
) -> Result<EvenPiece> {
    let stuck = || Error::Internal("contracted graph is not 3-edge-connected".into());
    let r0 = (0..h).find(|&x| !in_s[x]).ok_or_else(stuck)?;
    // Component of the outside graph containing r0.
    let mut local = vec![usize::MAX; h];
    let mut verts = vec![r0];
    local[r0] = 0;
    let mut i = 0;
    while i < verts.len() {
        let a = verts[i];
        i += 1;
        for &(_, b) in &adj[a] {
            if !in_s[b] && local[b] == usize::MAX {
                local[b] = verts.len();
                verts.push(b);
            }
        }
    }
    let mut inner: Vec<usize> = Vec::new();
    for (e, &(a, b)) in edges.iter().enumerate() {
        if !done[e] && a != b && local[a] != usize::MAX && local[b] != usize::MAX {
            inner.push(e);
        }
    }
    let local_pairs: Vec<(usize, usize)> =
        inner.iter().map(|&e| (local[edges[e].0], local[edges[e].1])).collect();
    let bridge_idx = bridges(verts.len(), &local_pairs, None);
    let mut is_bridge = vec![false; local_pairs.len()];
    for &b in &bridge_idx {
        is_bridge[b] = true;
    }
    let kept: Vec<(usize, usize)> = local_pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| !is_bridge[i])
        .map(|(_, &p)| p)
        .collect();
    let (blocks, block) = connected_components(verts.len(), &kept);
    let mut bridge_count = vec![0usize; blocks];
    for &b in &bridge_idx {
        let (x, y) = local_pairs[b];
        bridge_count[block[x]] += 1;
        bridge_count[block[y]] += 1;
    }
    let leaf = (0..blocks).find(|&c| bridge_count[c] <= 1).ok_or_else(stuck)?;

    let mut linked: Vec<(usize, (usize, usize))> = Vec::new();
    for (li, &x) in verts.iter().enumerate() {
        if block[li] != leaf {
            continue;
        }
        if let Some(&(e, s)) = adj[x].iter().find(|&&(e, s)| !done[e] && in_s[s]) {
            linked.push((x, (e, s)));
        }
    }
    if linked.len() < 2 {
        return Err(stuck());
    }
    let (u, link_u) = linked[0];
    let (v, link_v) = linked[1];

    // Two edge-disjoint u-v paths inside the leaf block.
    let mut net = FlowNetwork::new(verts.len());
    let mut arcs = Vec::new();
    for (i, &(a, b)) in local_pairs.iter().enumerate() {
        if is_bridge[i] || block[a] != leaf {
            continue;
        }
        let fwd = net.add_edge(a, b, 1);
        let bwd = net.add_edge(b, a, 1);
        arcs.push((inner[i], fwd, bwd));
    }
    if net.max_flow(local[u], local[v], 2) < 2 {
        return Err(stuck());
    }
    let support: Vec<usize> = arcs
        .iter()
        .filter(|&&(_, f, b)| net.flow(f) != net.flow(b))
        .map(|&(e, _, _)| e)
        .collect();
    // Keep the connected part through u; stray cycles are dropped.
    let mut reach = vec![false; h];
    reach[u] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &e in &support {
            let (a, b) = edges[e];
            if reach[a] != reach[b] {
                reach[a] = true;
                reach[b] = true;
                changed = true;
            }
        }
    }
    let piece: Vec<usize> = support.into_iter().filter(|&e| reach[edges[e].0]).collect();
    Ok(EvenPiece {
        u,
        v,
        link_u,
        link_v,
        edges: piece,
    })
}

/// A nowhere-zero 6-flow: an orientation with values in 1..=5, conserved
/// exactly at every vertex.
pub fn six_flow(g: &UndirGraph) -> Result<FlowAssignment> {
    let group = six_flow_group(g)?;
    let z6 = group.z6();
    let refd: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut excess = vec![0i64; g.n()];
    for (e, &(t, h)) in refd.iter().enumerate() {
        excess[t] += z6[e];
        excess[h] -= z6[e];
    }
    // Subtract 6 on a 0/1 flow y whose net outflow at v is excess(v) / 6.
    let (s, t) = (g.n(), g.n() + 1);
    let mut net = FlowNetwork::new(g.n() + 2);
    let ids: Vec<usize> = refd.iter().map(|&(a, b)| net.add_edge(a, b, 1)).collect();
    let mut need = 0;
    for (v, &x) in excess.iter().enumerate() {
        if x % 6 != 0 {
            return Err(Error::Internal(format!("Z6 flow not conserved at {v}")));
        }
        if x > 0 {
            net.add_edge(s, v, x / 6);
            need += x / 6;
        } else if x < 0 {
            net.add_edge(v, t, -x / 6);
        }
    }
    if g.n() > 0 && net.max_flow(s, t, need) != need {
        return Err(Error::Internal("integer lift of the Z6 flow failed".into()));
    }
    let f: Vec<i64> = (0..g.m()).map(|e| z6[e] - 6 * net.flow(ids[e])).collect();
    let b = g.bidirect();
    let plus: Vec<bool> = f.iter().map(|&x| x > 0).collect();
    let fa = FlowAssignment {
        orientation: b.orientation_from_bits(&plus),
        values: f.iter().map(|x| x.abs()).collect(),
        bounds: FlowRatio::six(),
    };
    require_flow(&b, &fa)?;
    Ok(fa)
}
