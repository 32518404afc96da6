//! Dinic's algorithm on integer capacities.

use std::collections::VecDeque;

pub const INF: u32 = u32::MAX / 4;

#[derive(Clone, Debug)]
struct Arc {
    to: u32,
    cap: u32,
}

/// Flow network whose arcs are stored in pairs: arc `i ^ 1` is the residual twin of `i`.
#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    head: Vec<Vec<u32>>,
    arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { head: vec![Vec::new(); nodes], arcs: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        self.head.len()
    }

    /// Directed arc `u -> v` with capacity `cap`; returns its index.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: u32) -> usize {
        self.push_pair(u, v, cap, 0)
    }

    /// Undirected edge of capacity `cap` in each direction.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u32) -> usize {
        self.push_pair(u, v, cap, cap)
    }

    fn push_pair(&mut self, u: usize, v: usize, fwd: u32, bwd: u32) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to: v as u32, cap: fwd });
        self.arcs.push(Arc { to: u as u32, cap: bwd });
        self.head[u].push(id as u32);
        self.head[v].push(id as u32 + 1);
        id
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<u32>> {
        let mut level = vec![u32::MAX; self.head.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.head[u] {
                let arc = &self.arcs[a as usize];
                if arc.cap > 0 && level[arc.to as usize] == u32::MAX {
                    level[arc.to as usize] = level[u] + 1;
                    q.push_back(arc.to as usize);
                }
            }
        }
        (level[t] != u32::MAX).then_some(level)
    }

    fn augment(&mut self, u: usize, t: usize, pushed: u32, level: &[u32], next: &mut [usize]) -> u32 {
        if u == t {
            return pushed;
        }
        while next[u] < self.head[u].len() {
            let a = self.head[u][next[u]] as usize;
            let (to, cap) = (self.arcs[a].to as usize, self.arcs[a].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let got = self.augment(to, t, pushed.min(cap), level, next);
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0
    }

    /// Maximum `s`-`t` flow. Residual capacities are left in place for [`Self::source_side`].
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0u64;
        while let Some(level) = self.levels(s, t) {
            let mut next = vec![0usize; self.head.len()];
            loop {
                let f = self.augment(s, t, INF, &level, &mut next);
                if f == 0 {
                    break;
                }
                total += u64::from(f);
                assert!(total < u64::from(INF), "flow reached the infinite-capacity guard");
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.head[u] {
                let arc = &self.arcs[a as usize];
                if arc.cap > 0 && !seen[arc.to as usize] {
                    seen[arc.to as usize] = true;
                    stack.push(arc.to as usize);
                }
            }
        }
        seen
    }
}
