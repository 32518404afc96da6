//! Union-find cluster labelling and a reusable graph-search scratchpad.

use crate::graph::FiniteGraph;
use crate::sets::{EdgeId, EdgeSet, VertexId, VertexSet};

/// Disjoint sets with union by size and path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    #[inline]
    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    /// Root lookup without path compression.
    #[inline]
    pub fn find_const(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns the surviving root.
    pub fn union(&mut self, a: u32, b: u32) -> u32 {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] { (ra, rb) } else { (rb, ra) };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        big
    }

    pub fn set_size(&mut self, x: u32) -> usize {
        let r = self.find(x);
        self.size[r as usize] as usize
    }
}

/// Components of `(V, open ∩ restriction)`.
#[derive(Clone, Debug)]
pub struct ClusterIndex {
    uf: UnionFind,
}

impl ClusterIndex {
    /// Labels components using the edges in `edges`.
    pub fn build(g: &FiniteGraph, edges: &EdgeSet) -> Self {
        let mut uf = UnionFind::new(g.vertex_count());
        for e in edges.iter() {
            let (a, b) = g.endpoints(e);
            uf.union(a.0, b.0);
        }
        ClusterIndex { uf }
    }

    /// Labels components using every edge for which `open` returns true.
    pub fn build_with(g: &FiniteGraph, mut open: impl FnMut(EdgeId) -> bool) -> Self {
        let mut uf = UnionFind::new(g.vertex_count());
        for (e, a, b) in g.edges() {
            if open(e) {
                uf.union(a.0, b.0);
            }
        }
        ClusterIndex { uf }
    }

    pub fn find(&self, v: VertexId) -> u32 {
        self.uf.find_const(v.0)
    }

    pub fn same(&self, u: VertexId, v: VertexId) -> bool {
        self.find(u) == self.find(v)
    }

    pub fn component_size(&self, v: VertexId) -> usize {
        let r = self.find(v);
        self.uf.size[r as usize] as usize
    }

    pub fn component_count(&self) -> usize {
        (0..self.uf.len() as u32).filter(|&v| self.uf.parent[v as usize] == v).count()
    }

    /// Sizes of all components, as a sorted vector.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.uf.len() as u32)
            .filter(|&v| self.uf.parent[v as usize] == v)
            .map(|v| self.uf.size[v as usize] as usize)
            .collect();
        s.sort_unstable();
        s
    }

    /// Union of the components meeting `s` (contains `s`).
    pub fn cluster_of(&self, s: &VertexSet) -> VertexSet {
        let mut roots: Vec<u32> = s.iter().map(|v| self.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut out = VertexSet::new(self.uf.len());
        for v in 0..self.uf.len() as u32 {
            if roots.binary_search(&self.find(VertexId(v))).is_ok() {
                out.insert(VertexId(v));
            }
        }
        out
    }

    /// Whether some vertex of `l` shares a component with some vertex of `r`.
    pub fn joins(&self, l: &VertexSet, r: &VertexSet) -> bool {
        let mut roots: Vec<u32> = l.iter().map(|v| self.find(v)).collect();
        roots.sort_unstable();
        r.iter().any(|v| roots.binary_search(&self.find(v)).is_ok())
    }
}

/// Scratch state for repeated searches on one graph. Marks are epoch stamped, so a
/// reset is O(1).
#[derive(Clone, Debug)]
pub struct Explorer {
    mark: Vec<u32>,
    epoch: u32,
    stack: Vec<u32>,
    visited: Vec<u32>,
}

impl Explorer {
    pub fn new(vertex_count: usize) -> Self {
        Explorer { mark: vec![0; vertex_count], epoch: 0, stack: Vec::new(), visited: Vec::new() }
    }

    pub fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        self.stack.clear();
        self.visited.clear();
    }

    #[inline]
    pub fn is_marked(&self, v: VertexId) -> bool {
        self.mark[v.index()] == self.epoch
    }

    /// Vertices reached by the last search, in discovery order.
    pub fn visited(&self) -> &[u32] {
        &self.visited
    }

    /// Depth-first search from `sources` through edges `e = vw` with `pass(v, w, e)`.
    /// Stops as soon as `stop(w)` holds for a reached vertex and returns `true` in that
    /// case. Sources are reached by definition. Call [`Self::reset`] first unless the
    /// search should continue the previous one.
    pub fn search(
        &mut self,
        g: &FiniteGraph,
        sources: impl IntoIterator<Item = VertexId>,
        mut pass: impl FnMut(VertexId, VertexId, EdgeId) -> bool,
        mut stop: impl FnMut(VertexId) -> bool,
    ) -> bool {
        for s in sources {
            if self.mark[s.index()] != self.epoch {
                self.mark[s.index()] = self.epoch;
                self.visited.push(s.0);
                self.stack.push(s.0);
                if stop(s) {
                    return true;
                }
            }
        }
        while let Some(v) = self.stack.pop() {
            let vid = VertexId(v);
            for (w, e) in g.adjacency(vid) {
                if self.mark[w.index()] != self.epoch && pass(vid, w, e) {
                    self.mark[w.index()] = self.epoch;
                    self.visited.push(w.0);
                    self.stack.push(w.0);
                    if stop(w) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Visited vertices as a set.
    pub fn visited_set(&self, g: &FiniteGraph) -> VertexSet {
        g.vertex_set(self.visited.iter().map(|&v| VertexId(v)))
    }
}
