mod common;

use common::oracle_components;
use perc_lab::cluster::ClusterIndex;
use perc_lab::graph::{boundaries, lattice_box, FiniteGraph};
use perc_lab::tail::exact_tails;
use perc_lab::{EdgeId, VertexId, VertexSet};
use proptest::prelude::*;

/// Simple graph on `n` vertices from arbitrary pairs; loops and repeats dropped.
fn small_graph(n: usize, pairs: &[(usize, usize)], max_edges: usize) -> FiniteGraph {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for &(a, b) in pairs {
        let (a, b) = ((a % n) as u32, (b % n) as u32);
        let e = (a.min(b), a.max(b));
        if a != b && !edges.contains(&e) && edges.len() < max_edges {
            edges.push(e);
        }
    }
    FiniteGraph::from_edges(n, &edges, n, VertexId(0)).unwrap()
}

fn endpoints(g: &FiniteGraph) -> Vec<(usize, usize)> {
    g.edges().map(|(_, a, b)| (a.index(), b.index())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn union_find_matches_enumeration(n in 2usize..8, pairs in prop::collection::vec((0usize..8, 0usize..8), 1..20)) {
        let g = small_graph(n, &pairs, 12);
        let m = g.edge_count();
        let ends = endpoints(&g);
        // counts[k] = number of configurations with |C_o| = k
        let mut uf_counts = vec![0u64; n + 1];
        let mut oracle_counts = vec![0u64; n + 1];
        for mask in 0u32..1 << m {
            let idx = ClusterIndex::build_with(&g, |e| mask >> e.0 & 1 == 1);
            let open: Vec<(usize, usize)> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| ends[i]).collect();
            let label = oracle_components(n, &open);
            for v in 0..n {
                for w in 0..n {
                    prop_assert_eq!(idx.same(VertexId(v as u32), VertexId(w as u32)), label[v] == label[w]);
                }
            }
            let mut distinct = label.clone();
            distinct.sort_unstable();
            distinct.dedup();
            prop_assert_eq!(idx.component_count(), distinct.len());
            uf_counts[idx.component_size(VertexId(0))] += 1;
            oracle_counts[label.iter().filter(|&&l| l == label[0]).count()] += 1;
        }
        prop_assert_eq!(uf_counts, oracle_counts);
    }

    #[test]
    fn boundary_identities(seed_cells in prop::collection::vec((-4i32..=4, -4i32..=4), 1..30)) {
        let g = lattice_box(&[9, 9]);
        let a: VertexSet = g.vertex_set(seed_cells.iter().map(|&(x, y)| g.vertex_at(&[x, y]).unwrap()));
        let b = boundaries(&g, &a);
        // closure = interior ⊔ boundary
        prop_assert!(b.interior.is_disjoint(&b.edge_boundary));
        prop_assert_eq!(b.interior.union(&b.edge_boundary), b.closure.clone());
        // handshake: Σ deg over A = 2|A°| + |∂A|
        let deg: usize = a.iter().map(|v| g.degree(v)).sum();
        prop_assert_eq!(deg, 2 * b.interior.len() + b.edge_boundary.len());
        prop_assert!(b.inner.is_subset(&a));
        prop_assert!(b.outer.is_disjoint(&a));
        for e in b.edge_boundary.iter() {
            let (x, y) = g.endpoints(e);
            let (inside, outside) = if a.contains(x) { (x, y) } else { (y, x) };
            prop_assert!(b.inner.contains(inside) && b.outer.contains(outside));
        }
        // ∂A is also the boundary of the complement
        let comp = boundaries(&g, &a.complement());
        prop_assert_eq!(comp.edge_boundary, b.edge_boundary);
    }
}

#[test]
fn four_cycle_full_cluster() {
    let g = FiniteGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], 2, VertexId(0)).unwrap();
    let mut hits = 0;
    for mask in 0u32..16 {
        if ClusterIndex::build_with(&g, |e: EdgeId| mask >> e.0 & 1 == 1).component_size(VertexId(0)) == 4 {
            hits += 1;
        }
    }
    // four spanning paths plus the full cycle
    assert_eq!(hits, 5);
    let (v, _) = exact_tails(&g, 0.5, &[4], &[], 2).unwrap();
    assert_eq!(v[0], 5.0 / 16.0);
}
