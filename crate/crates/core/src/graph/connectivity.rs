//! Strong components, condensation, reachability and bridges.

use std::collections::VecDeque;

use super::{ArcId, ArcWeightVector, Digraph, EdgeId, UndirGraph, VertexId};
use crate::error::{Error, Result};

/// Strongly connected components of the digraph on `n` vertices with the
/// given successor lists. Components are numbered in topological order: every
/// arc goes from a component to one with an equal or larger number.
pub fn strong_components(n: usize, succ: &[Vec<VertexId>]) -> (usize, Vec<usize>) {
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![NONE; n];
    let mut next = 0;
    let mut count = 0;
    let mut calls: Vec<(VertexId, usize)> = Vec::new();
    for s in 0..n {
        if index[s] != NONE {
            continue;
        }
        index[s] = next;
        low[s] = next;
        next += 1;
        stack.push(s);
        on_stack[s] = true;
        calls.push((s, 0));
        while let Some(&mut (v, ref mut i)) = calls.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i];
                *i += 1;
                if index[w] == NONE {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(p, _)) = calls.last() {
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    // Tarjan finishes sink components first.
    for c in comp.iter_mut() {
        *c = count - 1 - *c;
    }
    (count, comp)
}

fn reaches_all(n: usize, adj: &[Vec<VertexId>]) -> bool {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Strong connectivity of the digraph formed by the given arcs.
pub fn strongly_connected_arcs(
    n: usize,
    arcs: impl IntoIterator<Item = (VertexId, VertexId)>,
) -> bool {
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for (t, h) in arcs {
        fwd[t].push(h);
        bwd[h].push(t);
    }
    reaches_all(n, &fwd) && reaches_all(n, &bwd)
}

/// Strong connectivity using only arcs of positive weight when `support` is given.
pub fn strongly_connected(d: &Digraph, support: Option<&ArcWeightVector>) -> Result<bool> {
    if let Some(w) = support {
        w.check_host(d.host())?;
    }
    Ok(strongly_connected_arcs(
        d.n(),
        d.arcs()
            .iter()
            .enumerate()
            .filter(|(a, _)| support.is_none_or(|w| w.get(*a) > 0))
            .map(|(_, &p)| p),
    ))
}

#[derive(Clone, Debug)]
pub struct Condensation {
    /// One vertex per strong component, in topological order; one arc per
    /// arc of the input that joins two different components.
    pub dag: Digraph,
    pub component: Vec<usize>,
    /// Input arc id of each dag arc.
    pub origin: Vec<ArcId>,
}

impl Condensation {
    pub fn count(&self) -> usize {
        self.dag.n()
    }

    /// Input vertices lying in the chosen components.
    pub fn lift(&self, chosen: &[bool]) -> Vec<bool> {
        self.component.iter().map(|&c| chosen[c]).collect()
    }
}

pub fn condensation(d: &Digraph) -> Condensation {
    let mut succ = vec![Vec::new(); d.n()];
    for &(t, h) in d.arcs() {
        succ[t].push(h);
    }
    let (count, component) = strong_components(d.n(), &succ);
    let mut arcs = Vec::new();
    let mut origin = Vec::new();
    for (a, &(t, h)) in d.arcs().iter().enumerate() {
        if component[t] != component[h] {
            arcs.push((component[t], component[h]));
            origin.push(a);
        }
    }
    let dag = Digraph::new(count, arcs).expect("components are distinct");
    Condensation {
        dag,
        component,
        origin,
    }
}

/// Component label per vertex of the undirected graph on `edges`.
pub fn connected_components(n: usize, edges: &[(VertexId, VertexId)]) -> (usize, Vec<usize>) {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (count, comp)
}

/// Bridges of the multigraph on `edges`, ignoring `skip` and loops.
pub fn bridges(n: usize, edges: &[(VertexId, VertexId)], skip: Option<EdgeId>) -> Vec<EdgeId> {
    const NONE: usize = usize::MAX;
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        if Some(e) == skip || u == v {
            continue;
        }
        adj[u].push((e, v));
        adj[v].push((e, u));
    }
    let mut disc = vec![NONE; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut time = 0;
    // (vertex, edge used to enter it, next adjacency position)
    let mut calls: Vec<(VertexId, EdgeId, usize)> = Vec::new();
    for s in 0..n {
        if disc[s] != NONE {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        calls.push((s, NONE, 0));
        while let Some(&mut (v, pe, ref mut i)) = calls.last_mut() {
            if *i < adj[v].len() {
                let (e, w) = adj[v][*i];
                *i += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == NONE {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    calls.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(p, _, _)) = calls.last() {
                low[p] = low[p].min(low[v]);
                if low[v] > disc[p] {
                    out.push(pe);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Ok when `g` is connected and bridgeless; otherwise the lowest bridge (or
/// the disconnection) with one side of the separating cut.
pub fn check_two_edge_connected(g: &UndirGraph) -> Result<()> {
    let (count, comp) = connected_components(g.n(), g.edges());
    if count > 1 {
        let side = (0..g.n()).filter(|&v| comp[v] == comp[0]).collect();
        return Err(Error::NotBridgeless { edge: None, side });
    }
    if let Some(&e) = bridges(g.n(), g.edges(), None).first() {
        let rest: Vec<_> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(f, _)| f != e)
            .map(|(_, &p)| p)
            .collect();
        let (_, comp) = connected_components(g.n(), &rest);
        let anchor = comp[g.edges()[e].0];
        let side = (0..g.n()).filter(|&v| comp[v] == anchor).collect();
        return Err(Error::NotBridgeless {
            edge: Some(e),
            side,
        });
    }
    Ok(())
}
