//! Finite graph substrates: lattice boxes, slabs, regular trees and edge-list files,
//! together with metric balls and the boundary operators every other module uses.

mod io;

pub use io::{parse_edge_list, read_edge_list, write_edge_list};

use std::collections::VecDeque;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{EdgeId, EdgeSet, VertexId, VertexSet};

pub const UNREACHABLE: u32 = u32::MAX;

/// What to build. Boundaries are always free.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    /// Hypercubic box `{0..side}^dim`, centred so that the origin has coordinates zero.
    ZdBox { dim: usize, side: usize },
    /// `window[0] x window[1] x {-thickness..thickness}^(dim-2)`.
    Slab { dim: usize, thickness: usize, window: [usize; 2] },
    /// Rooted tree where every internal vertex has `degree` neighbours.
    Tree { degree: usize, depth: usize },
    /// Edge-list file, see [`read_edge_list`].
    File { path: PathBuf },
}

/// Rectangular piece of `Z^d`. Vertex indices are mixed-radix in the coordinates,
/// first axis most significant, so index order is lexicographic coordinate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    lo: Vec<i32>,
    extent: Vec<u32>,
    strides: Vec<usize>,
}

impl Lattice {
    fn new(lo: Vec<i32>, extent: Vec<u32>) -> Self {
        let dim = extent.len();
        let mut strides = vec![1usize; dim];
        for axis in (0..dim.saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * extent[axis + 1] as usize;
        }
        Lattice { lo, extent, strides }
    }

    pub fn dim(&self) -> usize {
        self.extent.len()
    }

    pub fn lo(&self) -> &[i32] {
        &self.lo
    }

    pub fn extent(&self) -> &[u32] {
        &self.extent
    }

    pub fn volume(&self) -> usize {
        self.extent.iter().map(|&e| e as usize).product()
    }

    #[inline]
    pub fn coord(&self, v: VertexId, axis: usize) -> i32 {
        let rel = (v.index() / self.strides[axis]) % self.extent[axis] as usize;
        self.lo[axis] + rel as i32
    }

    pub fn coords(&self, v: VertexId) -> Vec<i32> {
        (0..self.dim()).map(|a| self.coord(v, a)).collect()
    }

    pub fn vertex_at(&self, x: &[i32]) -> Option<VertexId> {
        if x.len() != self.dim() {
            return None;
        }
        let mut idx = 0usize;
        for axis in 0..self.dim() {
            let rel = x[axis] - self.lo[axis];
            if rel < 0 || rel as u32 >= self.extent[axis] {
                return None;
            }
            idx += rel as usize * self.strides[axis];
        }
        Some(VertexId(idx as u32))
    }

    /// L1 distance between two lattice vertices (equals graph distance inside a box).
    pub fn l1(&self, a: VertexId, b: VertexId) -> u32 {
        (0..self.dim()).map(|ax| (self.coord(a, ax) - self.coord(b, ax)).unsigned_abs()).sum()
    }
}

/// Immutable simple undirected graph in compressed adjacency form.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; edge ids are
/// positions in that order, so identical construction input gives identical ids.
#[derive(Clone, Debug)]
pub struct FiniteGraph {
    offsets: Vec<usize>,
    nbrs: Vec<u32>,
    nbr_edges: Vec<u32>,
    edges: Vec<(u32, u32)>,
    degree_bound: usize,
    origin: VertexId,
    lattice: Option<Lattice>,
}

impl FiniteGraph {
    /// Builds a graph from an edge list, rejecting loops, parallel edges, out-of-range
    /// endpoints and vertices whose degree exceeds `degree_bound`.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(u32, u32)],
        degree_bound: usize,
        origin: VertexId,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        if vertex_count > u32::MAX as usize - 1 {
            return Err(Error::invalid("too many vertices"));
        }
        if origin.index() >= vertex_count {
            return Err(Error::invalid("origin out of range"));
        }
        let mut canon: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a as usize >= vertex_count || b as usize >= vertex_count {
                return Err(Error::invalid(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at {a}")));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("parallel edge ({},{})", w[0].0, w[0].1)));
        }
        let g = Self::from_sorted_edges(vertex_count, canon, degree_bound, origin, None);
        if let Some(v) = (0..vertex_count).find(|&v| g.degree(VertexId(v as u32)) > degree_bound) {
            return Err(Error::invalid(format!("vertex {v} exceeds degree bound {degree_bound}")));
        }
        Ok(g)
    }

    /// `edges` must already be canonical, sorted and duplicate free.
    fn from_sorted_edges(
        n: usize,
        edges: Vec<(u32, u32)>,
        degree_bound: usize,
        origin: VertexId,
        lattice: Option<Lattice>,
    ) -> Self {
        let mut deg = vec![0usize; n];
        for &(a, b) in &edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut fill = offsets.clone();
        let mut nbrs = vec![0u32; offsets[n]];
        let mut nbr_edges = vec![0u32; offsets[n]];
        // Pass 1: lower neighbours (edges where v is the larger endpoint) arrive in
        // increasing order of the smaller endpoint.
        for (id, &(a, b)) in edges.iter().enumerate() {
            let slot = fill[b as usize];
            nbrs[slot] = a;
            nbr_edges[slot] = id as u32;
            fill[b as usize] += 1;
        }
        // Pass 2: higher neighbours, already sorted within each `a`.
        for (id, &(a, b)) in edges.iter().enumerate() {
            let slot = fill[a as usize];
            nbrs[slot] = b;
            nbr_edges[slot] = id as u32;
            fill[a as usize] += 1;
        }
        FiniteGraph { offsets, nbrs, nbr_edges, edges, degree_bound, origin, lattice }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.lattice.as_ref()
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    /// Sorted neighbour list.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[u32] {
        &self.nbrs[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    /// Edge ids parallel to [`Self::neighbors`].
    #[inline]
    pub fn incident_edges(&self, v: VertexId) -> &[u32] {
        &self.nbr_edges[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    /// `(neighbour, edge)` pairs.
    #[inline]
    pub fn adjacency(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.neighbors(v)
            .iter()
            .zip(self.incident_edges(v))
            .map(|(&w, &e)| (VertexId(w), EdgeId(e)))
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (a, b) = self.edges[e.index()];
        (VertexId(a), VertexId(b))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| (EdgeId(i as u32), VertexId(a), VertexId(b)))
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let nb = self.neighbors(u);
        nb.binary_search(&v.0).ok().map(|i| EdgeId(self.incident_edges(u)[i]))
    }

    pub fn empty_vertex_set(&self) -> VertexSet {
        VertexSet::new(self.vertex_count())
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::new(self.edge_count())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    pub fn vertex_set<I: IntoIterator<Item = VertexId>>(&self, ids: I) -> VertexSet {
        VertexSet::from_ids(self.vertex_count(), ids)
    }

    /// Lattice coordinates, when the graph came from a lattice generator.
    pub fn coords(&self, v: VertexId) -> Option<Vec<i32>> {
        self.lattice.as_ref().map(|l| l.coords(v))
    }

    pub fn vertex_at(&self, x: &[i32]) -> Option<VertexId> {
        self.lattice.as_ref().and_then(|l| l.vertex_at(x))
    }

    /// Edges with both endpoints in `a` (the interior `A°`).
    pub fn interior_edges(&self, a: &VertexSet) -> EdgeSet {
        let mut out = self.empty_edge_set();
        for v in a.iter() {
            for (w, e) in self.adjacency(v) {
                if w > v && a.contains(w) {
                    out.insert(e);
                }
            }
        }
        out
    }
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &GraphSpec) -> Result<FiniteGraph> {
    match spec {
        GraphSpec::ZdBox { dim, side } => {
            if *dim == 0 || *side == 0 {
                return Err(Error::invalid("zd_box needs positive dim and side"));
            }
            Ok(lattice_box(&vec![*side; *dim]))
        }
        GraphSpec::Slab { dim, thickness, window } => {
            if *dim < 2 || *thickness == 0 || window[0] == 0 || window[1] == 0 {
                return Err(Error::invalid("slab needs dim >= 2, thickness >= 1 and a positive window"));
            }
            let mut sides = vec![window[0], window[1]];
            sides.extend(std::iter::repeat_n(2 * thickness + 1, dim - 2));
            Ok(lattice_box(&sides))
        }
        GraphSpec::Tree { degree, depth } => {
            if *degree < 2 {
                return Err(Error::invalid("tree degree must be at least 2"));
            }
            regular_tree(*degree, *depth)
        }
        GraphSpec::File { path } => read_edge_list(path),
    }
}

/// Box with the given side lengths, centred at the coordinate origin
/// (axis `i` runs over `-(side/2) ..= side - 1 - side/2`).
pub fn lattice_box(sides: &[usize]) -> FiniteGraph {
    let lo: Vec<i32> = sides.iter().map(|&s| -((s / 2) as i32)).collect();
    lattice_rect(&lo, sides)
}

/// Box `prod [lo_i, lo_i + side_i)`. Origin is the vertex at coordinate zero when the box
/// contains it, otherwise the vertex closest to the centre.
pub fn lattice_rect(lo: &[i32], sides: &[usize]) -> FiniteGraph {
    assert_eq!(lo.len(), sides.len());
    assert!(sides.iter().all(|&s| s > 0), "lattice sides must be positive");
    let lat = Lattice::new(lo.to_vec(), sides.iter().map(|&s| s as u32).collect());
    let n = lat.volume();
    let dim = sides.len();
    let mut edges = Vec::with_capacity(n * dim);
    for v in 0..n {
        let vid = VertexId(v as u32);
        // Neighbours with larger index are +e_axis steps; iterate axes from least
        // significant (smallest stride) so targets come out sorted.
        for axis in (0..dim).rev() {
            let rel = lat.coord(vid, axis) - lat.lo[axis];
            if (rel as u32) + 1 < lat.extent[axis] {
                edges.push((v as u32, (v + lat.strides[axis]) as u32));
            }
        }
    }
    let centre: Vec<i32> = (0..dim)
        .map(|a| {
            let hi = lo[a] + sides[a] as i32 - 1;
            if lo[a] <= 0 && 0 <= hi {
                0
            } else {
                lo[a] + (sides[a] as i32 - 1) / 2
            }
        })
        .collect();
    let origin = lat.vertex_at(&centre).expect("centre lies in the box");
    FiniteGraph::from_sorted_edges(n, edges, 2 * dim, origin, Some(lat))
}

fn regular_tree(degree: usize, depth: usize) -> Result<FiniteGraph> {
    let mut edges = Vec::new();
    let mut frontier = vec![0u32];
    let mut next_id = 1u32;
    for level in 0..depth {
        let kids = if level == 0 { degree } else { degree - 1 };
        let mut next = Vec::with_capacity(frontier.len() * kids);
        for &parent in &frontier {
            for _ in 0..kids {
                edges.push((parent, next_id));
                next.push(next_id);
                next_id = next_id
                    .checked_add(1)
                    .ok_or_else(|| Error::invalid("tree too large"))?;
            }
        }
        frontier = next;
    }
    edges.sort_unstable();
    Ok(FiniteGraph::from_sorted_edges(next_id as usize, edges, degree, VertexId(0), None))
}

/// Multi-source BFS distances, truncated at `max_dist` (inclusive). Unreached vertices
/// get [`UNREACHABLE`].
pub fn distances_from(g: &FiniteGraph, sources: &VertexSet, max_dist: Option<u32>) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    for s in sources.iter() {
        dist[s.index()] = 0;
        queue.push_back(s);
    }
    let cap = max_dist.unwrap_or(UNREACHABLE - 1);
    while let Some(v) = queue.pop_front() {
        let d = dist[v.index()];
        if d >= cap {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w as usize] == UNREACHABLE {
                dist[w as usize] = d + 1;
                queue.push_back(VertexId(w));
            }
        }
    }
    dist
}

/// Vertices within graph distance `r` of `a`.
pub fn ball(g: &FiniteGraph, a: &VertexSet, r: u32) -> Result<VertexSet> {
    if a.is_empty() {
        return Err(Error::invalid("ball around an empty set"));
    }
    let dist = distances_from(g, a, Some(r));
    Ok(g.vertex_set(
        dist.iter()
            .enumerate()
            .filter(|(_, &d)| d <= r)
            .map(|(v, _)| VertexId(v as u32)),
    ))
}

/// Ball of radius `r` around the single vertex `v`.
pub fn ball_around(g: &FiniteGraph, v: VertexId, r: u32) -> VertexSet {
    ball(g, &g.vertex_set([v]), r).expect("singleton is nonempty")
}

/// Vertices at exact distance `r` from `v`.
pub fn sphere(g: &FiniteGraph, v: VertexId, r: u32) -> VertexSet {
    let dist = distances_from(g, &g.vertex_set([v]), Some(r));
    g.vertex_set(
        dist.iter()
            .enumerate()
            .filter(|(_, &d)| d == r)
            .map(|(v, _)| VertexId(v as u32)),
    )
}

/// The five boundary sets of a vertex set.
#[derive(Clone, Debug)]
pub struct Boundaries {
    /// `∂A`: edges with exactly one endpoint in `A`.
    pub edge_boundary: EdgeSet,
    /// `Ā`: edges with at least one endpoint in `A`.
    pub closure: EdgeSet,
    /// `A°`: edges with both endpoints in `A`.
    pub interior: EdgeSet,
    /// `∂⁻A`: vertices of `A` incident to `∂A`.
    pub inner: VertexSet,
    /// `∂⁺A`: vertices outside `A` incident to `∂A`.
    pub outer: VertexSet,
}

pub fn boundaries(g: &FiniteGraph, a: &VertexSet) -> Boundaries {
    let mut b = Boundaries {
        edge_boundary: g.empty_edge_set(),
        closure: g.empty_edge_set(),
        interior: g.empty_edge_set(),
        inner: g.empty_vertex_set(),
        outer: g.empty_vertex_set(),
    };
    for v in a.iter() {
        for (w, e) in g.adjacency(v) {
            b.closure.insert(e);
            if a.contains(w) {
                b.interior.insert(e);
            } else {
                b.edge_boundary.insert(e);
                b.inner.insert(v);
                b.outer.insert(w);
            }
        }
    }
    b
}

/// `|∂A|` without materialising the sets.
pub fn edge_boundary_size(g: &FiniteGraph, a: &VertexSet) -> usize {
    a.iter()
        .map(|v| g.neighbors(v).iter().filter(|&&w| !a.contains(VertexId(w))).count())
        .sum()
}

/// Inner vertex boundary `∂⁻A`.
pub fn inner_boundary(g: &FiniteGraph, a: &VertexSet) -> VertexSet {
    g.vertex_set(a.iter().filter(|&v| g.neighbors(v).iter().any(|&w| !a.contains(VertexId(w)))))
}

/// Outer vertex boundary `∂⁺A`.
pub fn outer_boundary(g: &FiniteGraph, a: &VertexSet) -> VertexSet {
    let mut out = g.empty_vertex_set();
    for v in a.iter() {
        for &w in g.neighbors(v) {
            if !a.contains(VertexId(w)) {
                out.insert(VertexId(w));
            }
        }
    }
    out
}

/// Induced subgraph plus the id maps in both directions.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: FiniteGraph,
    /// Subgraph id -> parent id.
    pub to_parent: Vec<VertexId>,
    /// Parent id -> subgraph id.
    pub from_parent: Vec<Option<VertexId>>,
}

impl InducedSubgraph {
    pub fn lift(&self, s: &VertexSet, parent_len: usize) -> VertexSet {
        VertexSet::from_ids(parent_len, s.iter().map(|v| self.to_parent[v.index()]))
    }

    pub fn restrict(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_ids(
            self.graph.vertex_count(),
            s.iter().filter_map(|v| self.from_parent[v.index()]),
        )
    }
}

pub fn induced_subgraph(g: &FiniteGraph, a: &VertexSet) -> Result<InducedSubgraph> {
    if a.is_empty() {
        return Err(Error::invalid("induced subgraph of an empty set"));
    }
    let to_parent: Vec<VertexId> = a.iter().collect();
    let mut from_parent = vec![None; g.vertex_count()];
    for (i, &v) in to_parent.iter().enumerate() {
        from_parent[v.index()] = Some(VertexId(i as u32));
    }
    let mut edges = Vec::new();
    for (i, &v) in to_parent.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(j) = from_parent[w as usize] {
                if j.index() > i {
                    edges.push((i as u32, j.0));
                }
            }
        }
    }
    // Relabelling is monotone, so this is already lexicographic.
    let origin = from_parent[g.origin().index()].unwrap_or(VertexId(0));
    let graph = FiniteGraph::from_sorted_edges(to_parent.len(), edges, g.degree_bound(), origin, None);
    Ok(InducedSubgraph { graph, to_parent, from_parent })
}

/// Shortest-path distance, `None` when `v` is unreachable from `u`.
pub fn distance(g: &FiniteGraph, u: VertexId, v: VertexId) -> Option<u32> {
    let d = distances_from(g, &g.vertex_set([u]), None)[v.index()];
    (d != UNREACHABLE).then_some(d)
}

/// Whether `a` induces a connected subgraph.
pub fn is_connected_set(g: &FiniteGraph, a: &VertexSet) -> bool {
    let Some(start) = a.iter().next() else { return true };
    let mut seen = g.empty_vertex_set();
    seen.insert(start);
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            let w = VertexId(w);
            if a.contains(w) && seen.insert(w) {
                count += 1;
                stack.push(w);
            }
        }
    }
    count == a.len()
}

/// Maximum pairwise distance over `a`, measured in the ambient graph. Also returns a
/// pair of vertices realising it.
pub fn diameter_with_pair(g: &FiniteGraph, a: &VertexSet) -> Result<(u32, VertexId, VertexId)> {
    if a.is_empty() {
        return Err(Error::invalid("diameter of an empty set"));
    }
    if !is_connected_set(g, a) {
        return Err(Error::precondition("set is not connected"));
    }
    let mut best = (0, VertexId(0), VertexId(0));
    let first = a.iter().next().unwrap();
    best.1 = first;
    best.2 = first;
    for u in a.iter() {
        let dist = distances_from(g, &g.vertex_set([u]), None);
        for v in a.iter() {
            let d = dist[v.index()];
            if d != UNREACHABLE && d > best.0 {
                best = (d, u, v);
            }
        }
    }
    Ok(best)
}

pub fn diameter_of(g: &FiniteGraph, a: &VertexSet) -> Result<u32> {
    diameter_with_pair(g, a).map(|(d, _, _)| d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2(side: usize) -> FiniteGraph {
        generate(&GraphSpec::ZdBox { dim: 2, side }).unwrap()
    }

    #[test]
    fn generator_counts() {
        let g = z2(3);
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 12));
        let t = generate(&GraphSpec::Tree { degree: 3, depth: 2 }).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (10, 9));
        let s = generate(&GraphSpec::Slab { dim: 3, thickness: 1, window: [5, 5] }).unwrap();
        assert_eq!(s.vertex_count(), 75);
        assert!(generate(&GraphSpec::ZdBox { dim: 2, side: 0 }).is_err());
        assert!(generate(&GraphSpec::Slab { dim: 3, thickness: 0, window: [5, 5] }).is_err());
    }

    #[test]
    fn origin_is_centre() {
        let g = z2(5);
        assert_eq!(g.coords(g.origin()).unwrap(), vec![0, 0]);
        assert_eq!(g.degree(g.origin()), 4);
        let s = generate(&GraphSpec::Slab { dim: 3, thickness: 2, window: [6, 6] }).unwrap();
        assert_eq!(s.coords(s.origin()).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn rect_origin_outside_box_is_near_centre() {
        let g = lattice_rect(&[3, 3], &[3, 3]);
        assert_eq!(g.coords(g.origin()).unwrap(), vec![4, 4]);
    }

    #[test]
    fn lattice_edges_sorted_and_adjacent() {
        let g = z2(4);
        let lat = g.lattice().unwrap();
        let mut prev = (0, 0);
        for (i, (e, u, v)) in g.edges().enumerate() {
            assert_eq!(e.index(), i);
            assert!(u < v);
            assert!((u.0, v.0) > prev || i == 0);
            prev = (u.0, v.0);
            assert_eq!(lat.l1(u, v), 1);
            assert_eq!(g.edge_between(u, v), Some(e));
            assert_eq!(g.edge_between(v, u), Some(e));
        }
        for v in 0..g.vertex_count() {
            let nb = g.neighbors(VertexId(v as u32));
            assert!(nb.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn balls_in_z2() {
        let g = z2(11);
        let o = g.vertex_set([g.origin()]);
        assert_eq!(ball(&g, &o, 0).unwrap(), o);
        assert_eq!(ball(&g, &o, 1).unwrap().len(), 5);
        assert_eq!(ball(&g, &o, 2).unwrap().len(), 13);
        assert!(ball(&g, &g.empty_vertex_set(), 1).is_err());
    }

    #[test]
    fn boundary_examples() {
        let g = z2(11);
        let o = g.vertex_set([g.origin()]);
        let b = boundaries(&g, &o);
        assert_eq!((b.edge_boundary.len(), b.interior.len(), b.outer.len()), (4, 0, 4));
        let all = boundaries(&g, &g.all_vertices());
        assert!(all.edge_boundary.is_empty());
        assert_eq!(all.interior.len(), g.edge_count());
        let b1 = boundaries(&g, &ball(&g, &o, 1).unwrap());
        assert_eq!((b1.edge_boundary.len(), b1.interior.len()), (12, 4));
    }

    #[test]
    fn induced_examples() {
        let g = z2(7);
        let sub = induced_subgraph(&g, &g.all_vertices()).unwrap();
        assert_eq!(sub.graph.edge_count(), g.edge_count());
        assert!(sub.to_parent.iter().enumerate().all(|(i, v)| v.index() == i));
        let single = induced_subgraph(&g, &g.vertex_set([g.origin()])).unwrap();
        assert_eq!((single.graph.vertex_count(), single.graph.edge_count()), (1, 0));
        let star = induced_subgraph(&g, &ball_around(&g, g.origin(), 1)).unwrap();
        assert_eq!((star.graph.vertex_count(), star.graph.edge_count()), (5, 4));
        for (i, &p) in star.to_parent.iter().enumerate() {
            assert_eq!(star.from_parent[p.index()], Some(VertexId(i as u32)));
        }
        assert!(induced_subgraph(&g, &g.empty_vertex_set()).is_err());
    }

    #[test]
    fn distances_and_diameters() {
        let g = z2(15);
        let o = g.origin();
        assert_eq!(distance(&g, o, o), Some(0));
        let path = g.vertex_set((0..10).map(|x| g.vertex_at(&[x - 5, 0]).unwrap()));
        assert_eq!(diameter_of(&g, &path).unwrap(), 9);
        assert_eq!(diameter_of(&g, &ball_around(&g, o, 2)).unwrap(), 4);
        let split = g.vertex_set([g.vertex_at(&[0, 0]).unwrap(), g.vertex_at(&[2, 0]).unwrap()]);
        assert!(matches!(diameter_of(&g, &split), Err(Error::Precondition(_))));
        let two = FiniteGraph::from_edges(2, &[], 1, VertexId(0)).unwrap();
        assert_eq!(distance(&two, VertexId(0), VertexId(1)), None);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(FiniteGraph::from_edges(3, &[(0, 0)], 2, VertexId(0)).is_err());
        assert!(FiniteGraph::from_edges(3, &[(0, 1), (1, 0)], 2, VertexId(0)).is_err());
        assert!(FiniteGraph::from_edges(3, &[(0, 5)], 2, VertexId(0)).is_err());
        assert!(FiniteGraph::from_edges(3, &[(0, 1), (0, 2)], 1, VertexId(0)).is_err());
        assert!(FiniteGraph::from_edges(3, &[(0, 1), (0, 2)], 2, VertexId(0)).is_ok());
    }

    #[test]
    fn interior_degree_is_2d() {
        let g = generate(&GraphSpec::ZdBox { dim: 3, side: 5 }).unwrap();
        let lat = g.lattice().unwrap();
        for v in 0..g.vertex_count() {
            let v = VertexId(v as u32);
            let interior = (0..3).all(|a| lat.coord(v, a).abs() < 2);
            if interior {
                assert_eq!(g.degree(v), 6);
            }
        }
    }
}
