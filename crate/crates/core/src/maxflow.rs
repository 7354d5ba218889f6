//! Exact integral max-flow (Dinic) shared by every cut and flow routine.

use std::collections::VecDeque;

/// Residual network. Edge `i` and `i ^ 1` are a forward/backward pair.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    n: usize,
    to: Vec<usize>,
    cap: Vec<i64>,
    initial: Vec<i64>,
    adj: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
}

const UNSEEN: usize = usize::MAX;

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            n,
            to: Vec::new(),
            cap: Vec::new(),
            initial: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![UNSEEN; n],
            next: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds arc `u -> v` and returns its id.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        debug_assert!(cap >= 0);
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(cap);
        self.initial.push(cap);
        self.adj[u].push(id);
        self.to.push(u);
        self.cap.push(0);
        self.initial.push(0);
        self.adj[v].push(id + 1);
        id
    }

    /// Flow currently carried by arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.initial[id] - self.cap[id]
    }

    pub fn residual(&self, id: usize) -> i64 {
        self.cap[id]
    }

    /// Changes the capacity of arc `id`; only valid before any flow is pushed.
    pub fn set_capacity(&mut self, id: usize, cap: i64) {
        self.cap[id] = cap;
        self.initial[id] = cap;
    }

    /// Restores every arc to its initial capacity.
    pub fn reset(&mut self) {
        self.cap.copy_from_slice(&self.initial);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(UNSEEN);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let w = self.to[e];
                if self.cap[e] > 0 && self.level[w] == UNSEEN {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] != UNSEEN
    }

    /// One augmenting path in the level graph, pushing at most `limit`.
    fn augment(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut path: Vec<usize> = Vec::new();
        let mut v = s;
        loop {
            if v == t {
                let push = path.iter().map(|&e| self.cap[e]).fold(limit, i64::min);
                for &e in &path {
                    self.cap[e] -= push;
                    self.cap[e ^ 1] += push;
                }
                return push;
            }
            let mut advanced = false;
            while self.next[v] < self.adj[v].len() {
                let e = self.adj[v][self.next[v]];
                let w = self.to[e];
                if self.cap[e] > 0 && self.level[w] == self.level[v] + 1 {
                    path.push(e);
                    v = w;
                    advanced = true;
                    break;
                }
                self.next[v] += 1;
            }
            if !advanced {
                if v == s {
                    return 0;
                }
                self.level[v] = UNSEEN;
                let e = path.pop().expect("non-root vertex has an entry arc");
                v = self.to[e ^ 1];
                self.next[v] += 1;
            }
        }
    }

    /// Pushes flow from `s` to `t` until the maximum or `limit` is reached and
    /// returns the amount pushed by this call.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        assert_ne!(s, t, "source equals sink");
        let mut total = 0;
        while total < limit && self.bfs(s, t) {
            self.next.fill(0);
            loop {
                let pushed = self.augment(s, t, limit - total);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    /// Vertices reachable from `s` in the residual network. After a maximum
    /// flow this is the source side of a minimum cut.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &e in &self.adj[v] {
                let w = self.to[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}
