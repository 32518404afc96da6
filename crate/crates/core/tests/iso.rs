mod common;

use common::{brute_cut, edge_boundary};

use perc_lab::graph::{distances_from, lattice_box, FiniteGraph, GraphSpec};
use perc_lab::iso::cutset::min_cut_at_radius;
use perc_lab::iso::{geometry_check, phi_of_set, phi_profile, ProfileOptions};
use perc_lab::rng::StreamRng;
use perc_lab::{VertexId, VertexSet};
use proptest::prelude::*;

/// min |∂A| over vertex sets of ℤ² with exactly `m` vertices containing the origin. Every
/// such set lies in the ℓ¹ ball of radius `m - 1`, and `|∂A| = 4|A| - 2 #{adjacent pairs}`.
fn brute_min_boundary(m: usize) -> usize {
    let r = m as i32 - 1;
    let near: Vec<(i32, i32)> = (-r..=r)
        .flat_map(|x| (-r..=r).map(move |y| (x, y)))
        .filter(|&(x, y)| (x, y) != (0, 0) && x.abs() + y.abs() <= r)
        .collect();
    fn rec(near: &[(i32, i32)], from: usize, left: usize, pick: &mut Vec<(i32, i32)>, best: &mut usize) {
        if left == 0 {
            let adj = pick
                .iter()
                .enumerate()
                .flat_map(|(i, a)| pick[i + 1..].iter().map(move |b| (a, b)))
                .filter(|(a, b)| (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1)
                .count();
            *best = (*best).min(4 * pick.len() - 2 * adj);
            return;
        }
        for i in from..near.len() {
            pick.push(near[i]);
            rec(near, i + 1, left - 1, pick, best);
            pick.pop();
        }
    }
    let mut best = usize::MAX;
    rec(&near, 0, m - 1, &mut vec![(0, 0)], &mut best);
    best
}

#[test]
fn square_lattice_profile() {
    // Sets of size m ≥ 7 have boundary at least 4⌈√m⌉ ≥ 12, so sizes up to 6 decide n ≤ 4.
    let minima: Vec<usize> = (1..=6).map(brute_min_boundary).collect();
    let oracle: Vec<usize> = (1..=4).map(|n| *minima[n - 1..].iter().min().unwrap()).collect();
    assert_eq!(oracle, [4, 6, 8, 8]);
    let prof = phi_profile(&GraphSpec::ZdBox { dim: 2, side: 21 }, 4, &ProfileOptions::default()).unwrap();
    assert_eq!(prof.exact, [(1, 4), (2, 6), (3, 8), (4, 8)]);
    assert!(prof.certified);
}

#[test]
fn single_site_and_pair() {
    let g = lattice_box(&[41, 41]);
    let o = g.vertex_at(&[0, 0]).unwrap();
    let one = phi_of_set(&g, &g.vertex_set([o]), &[2, 4]).unwrap();
    assert_eq!((one.value, one.stabilized), (4, true));
    let pair = g.vertex_set([o, g.vertex_at(&[1, 0]).unwrap()]);
    let two = phi_of_set(&g, &pair, &[3, 5]).unwrap();
    assert_eq!((two.value, two.stabilized), (6, true));
    assert_eq!(two.cutset.len(), 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn max_flow_equals_exhaustive_cut(
        n in 4usize..10,
        pairs in prop::collection::vec((0usize..10, 0usize..10), 3..30),
        w_bits in 1u32..8,
        r in 0u32..3,
    ) {
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for &(a, b) in &pairs {
            let (a, b) = ((a % n) as u32, (b % n) as u32);
            if a != b && !edges.contains(&(a.min(b), a.max(b))) && edges.len() < 14 {
                edges.push((a.min(b), a.max(b)));
            }
        }
        let g = FiniteGraph::from_edges(n, &edges, n, VertexId(0)).unwrap();
        let dist = distances_from(&g, &g.vertex_set([VertexId(0)]), None);
        prop_assume!(dist.iter().any(|&d| d == r + 1));
        let inside: Vec<u32> = (0..n as u32).filter(|&v| dist[v as usize] <= r).collect();
        let w: Vec<u32> = inside.iter().copied().enumerate().filter(|(i, _)| w_bits >> (i % 3) & 1 == 1 || *i == 0).map(|(_, v)| v).collect();
        let wset: VertexSet = g.vertex_set(w.iter().map(|&v| VertexId(v)));
        let (value, side) = min_cut_at_radius(&g, &wset, &dist, r).unwrap();
        prop_assert_eq!(value, brute_cut(&g, &w, &dist, r));
        prop_assert!(wset.is_subset(&side));
        let side_ids: Vec<u32> = side.iter().map(|v| v.0).collect();
        prop_assert_eq!(edge_boundary(&g, &side_ids), value);
    }

    #[test]
    fn boundary_dominates_diameter(seed in any::<u64>(), kind in 0u64..3) {
        let g = lattice_box(&[64, 64]);
        let mut rng = StreamRng::new(seed, kind);
        let a = common::random_connected_set(&g, kind, 200, &mut rng);
        let ids: Vec<VertexId> = a.iter().collect();
        // ambient distance in a box is the ℓ¹ distance
        let mut diam = 0;
        for &x in &ids {
            for &y in &ids {
                let (cx, cy) = (g.coords(x).unwrap(), g.coords(y).unwrap());
                diam = diam.max((cx[0] - cy[0]).abs() + (cx[1] - cy[1]).abs());
            }
        }
        let bd = edge_boundary(&g, &ids.iter().map(|v| v.0).collect::<Vec<_>>());
        prop_assert!(bd as f64 >= diam as f64 / 192.0);
        let diag = geometry_check(&g, &a, 1.0).unwrap();
        prop_assert_eq!(diag.diameter, diam as u32);
        prop_assert_eq!(diag.boundary, bd);
        prop_assert!(diag.verdict);
        prop_assert!(diag.family_boundary <= diag.boundary);
        let iv = diag.intervals();
        for (i, x) in iv.iter().enumerate() {
            for y in &iv[i + 1..] {
                prop_assert!(x.1 < y.0 || y.1 < x.0, "family intervals overlap");
            }
        }
    }
}
