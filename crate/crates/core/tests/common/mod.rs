//! Random test shapes on a two-dimensional box and brute-force oracles shared by the
//! integration suites.
#![allow(dead_code)]

use perc_lab::graph::{is_connected_set, FiniteGraph};
use perc_lab::rng::StreamRng;
use perc_lab::{VertexId, VertexSet};

/// Random growth from the centre: each step adds a uniform outer-boundary vertex.
pub fn blob(g: &FiniteGraph, size: usize, rng: &mut StreamRng) -> VertexSet {
    let start = g.vertex_at(&[0, 0]).unwrap();
    let mut set = g.vertex_set([start]);
    let mut frontier: Vec<VertexId> = Vec::new();
    let push_nbrs = |v: VertexId, set: &VertexSet, frontier: &mut Vec<VertexId>| {
        for &w in g.neighbors(v) {
            if !set.contains(VertexId(w)) {
                frontier.push(VertexId(w));
            }
        }
    };
    push_nbrs(start, &set, &mut frontier);
    while set.len() < size && !frontier.is_empty() {
        let i = rng.below(frontier.len() as u64) as usize;
        let v = frontier.swap_remove(i);
        if set.insert(v) {
            push_nbrs(v, &set, &mut frontier);
        }
    }
    set
}

/// Trace of a simple random walk, stopped once it has visited `size` vertices.
pub fn walk(g: &FiniteGraph, size: usize, rng: &mut StreamRng) -> VertexSet {
    let mut v = g.vertex_at(&[0, 0]).unwrap();
    let mut set = g.vertex_set([v]);
    let mut steps = 0;
    while set.len() < size && steps < 100 * size {
        let nb = g.neighbors(v);
        v = VertexId(nb[rng.below(nb.len() as u64) as usize]);
        set.insert(v);
        steps += 1;
    }
    set
}

/// Sector of an ℓ∞ annulus, cut down to the component of its first vertex.
pub fn annulus_fragment(g: &FiniteGraph, max_size: usize, rng: &mut StreamRng) -> VertexSet {
    let lat = g.lattice().unwrap();
    let inner = 2 + rng.below(12) as i32;
    let width = 1 + rng.below(3) as i32;
    let angle0 = rng.next_f64() * std::f64::consts::TAU;
    let span = 0.3 + rng.next_f64() * 5.0;
    let mut set = g.empty_vertex_set();
    for v in 0..g.vertex_count() as u32 {
        let (x, y) = (lat.coord(VertexId(v), 0), lat.coord(VertexId(v), 1));
        let r = x.abs().max(y.abs());
        let a = (f64::from(y).atan2(f64::from(x)) - angle0).rem_euclid(std::f64::consts::TAU);
        if r >= inner && r < inner + width && a <= span {
            set.insert(VertexId(v));
        }
    }
    // keep a connected piece of at most max_size vertices
    let Some(first) = set.iter().next() else {
        return g.vertex_set([g.vertex_at(&[0, 0]).unwrap()]);
    };
    let mut out = g.vertex_set([first]);
    let mut queue = std::collections::VecDeque::from([first]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            let w = VertexId(w);
            if out.len() < max_size && set.contains(w) && out.insert(w) {
                queue.push_back(w);
            }
        }
    }
    debug_assert!(is_connected_set(g, &out));
    out
}

/// One of the three shape families, chosen by `kind % 3`.
pub fn random_connected_set(g: &FiniteGraph, kind: u64, max_size: usize, rng: &mut StreamRng) -> VertexSet {
    let size = 1 + rng.below(max_size as u64) as usize;
    match kind % 3 {
        0 => blob(g, size, rng),
        1 => walk(g, size, rng),
        _ => annulus_fragment(g, max_size, rng),
    }
}

/// Component labels from an adjacency matrix by repeated flooding.
pub fn oracle_components(n: usize, open_edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in open_edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut label = vec![usize::MAX; n];
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if label[v] == s {
                    for w in 0..n {
                        if adj[v][w] && label[w] != s {
                            label[w] = s;
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    label
}

/// `|∂A|` by scanning every edge.
pub fn edge_boundary(g: &FiniteGraph, a: &[u32]) -> usize {
    g.edges().filter(|&(_, x, y)| a.contains(&x.0) != a.contains(&y.0)).count()
}

/// Exhaustive min over `W ⊆ A ⊆ B_R` of `|∂A|`.
pub fn brute_cut(g: &FiniteGraph, w: &[u32], dist: &[u32], r: u32) -> usize {
    let free: Vec<u32> = (0..g.vertex_count() as u32).filter(|&v| dist[v as usize] <= r && !w.contains(&v)).collect();
    (0u32..1 << free.len())
        .map(|mask| {
            let mut a = w.to_vec();
            a.extend((0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i]));
            edge_boundary(g, &a)
        })
        .min()
        .unwrap()
}

/// Independent merge-event probability on the eight-edge instance.
pub fn oracle_merge(p: f64, q: f64, t: usize) -> f64 {
    let edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 5), (4, 5), (3, 4)];
    let eps = 1.0 - (1.0 - p) / (1.0 - q);
    let flood = |starts: Vec<usize>, ok: &dyn Fn(usize, usize, usize) -> bool| {
        let mut seen = [false; 6];
        let mut stack = starts;
        for &v in &stack {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            for (i, &(a, b)) in edges.iter().enumerate() {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w] && ok(i, v, w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let mut total = 0.0;
    for om in 0u32..256 {
        for ze in 0u32..256 {
            let w: f64 = (0..8)
                .map(|i| (if om >> i & 1 == 1 { q } else { 1.0 - q }) * (if ze >> i & 1 == 1 { eps } else { 1.0 - eps }))
                .product();
            let k = flood(vec![5], &|i, _, _| om >> i & 1 == 1);
            if k[0] {
                continue;
            }
            let m = flood(vec![0], &|i, v, u| !k[v] && !k[u] && (om | ze) >> i & 1 == 1);
            let contact: Vec<usize> = (0..8).filter(|&i| {
                let (a, b) = edges[i];
                (k[a] && m[b]) || (k[b] && m[a])
            }).collect();
            if contact.len() >= t && contact.iter().all(|&i| ze >> i & 1 == 0) {
                total += w;
            }
        }
    }
    total
}

