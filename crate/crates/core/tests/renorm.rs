use perc_lab::cluster::Explorer;
use perc_lab::renorm::{
    block_connection_prob, coarse_grain, gm_density_scan, half_space_touch_fraction, l1_ball_volume, slab_crossing,
    uniqueness_event_prob, CoarseGrid, Host,
};
use perc_lab::rng::{EdgeLabels, Threshold};
use perc_lab::{EdgeId, VertexId};
use proptest::prelude::*;

fn l1(host: &Host, v: VertexId, c: &[i32]) -> u32 {
    (0..host.dim).map(|a| (host.coord(v, a) - c[a]).unsigned_abs()).sum()
}

/// Component labels of the open edges with both endpoints in `keep`.
fn flood_labels(host: &Host, keep: &dyn Fn(VertexId) -> bool, open: &dyn Fn(EdgeId) -> bool) -> Vec<u32> {
    let g = &host.graph;
    let n = g.vertex_count();
    let mut label = vec![u32::MAX; n];
    for s in 0..n as u32 {
        if label[s as usize] != u32::MAX || !keep(VertexId(s)) {
            continue;
        }
        label[s as usize] = s;
        let mut stack = vec![VertexId(s)];
        while let Some(v) = stack.pop() {
            for (w, e) in g.adjacency(v) {
                if label[w.index()] == u32::MAX && keep(w) && open(e) {
                    label[w.index()] = s;
                    stack.push(w);
                }
            }
        }
    }
    label
}

/// ζ of one coarse edge from scratch: both uniqueness events and the connection inside
/// the big ball around the first endpoint.
fn oracle_zeta(host: &Host, cu: &[i32], cv: &[i32], k: u32, n: u32, c: u32, open: &dyn Fn(EdgeId) -> bool) -> bool {
    let verts: Vec<VertexId> = (0..host.graph.vertex_count() as u32).map(VertexId).collect();
    let unique = |x: &[i32]| {
        let lab = flood_labels(host, &|v| l1(host, v, x) <= n, open);
        let mut hits: Vec<u32> = verts
            .iter()
            .filter(|&&v| l1(host, v, x) <= k)
            .map(|&v| lab[v.index()])
            .filter(|&l| verts.iter().any(|&w| lab[w.index()] == l && l1(host, w, x) == n))
            .collect();
        hits.sort_unstable();
        hits.dedup();
        hits.len() <= 1
    };
    if !unique(cu) || !unique(cv) {
        return false;
    }
    let lab = flood_labels(host, &|v| l1(host, v, cu) <= c * n, open);
    verts.iter().filter(|&&a| l1(host, a, cu) <= k).any(|&a| {
        verts.iter().any(|&b| l1(host, b, cv) <= k && lab[a.index()] == lab[b.index()])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coarse_field_matches_oracle(seed in any::<u64>(), p in 0.3f64..0.8) {
        let (k, n, c) = (1, 3, 2);
        let grid = CoarseGrid::new(2, k, n, c, 3).unwrap();
        let labels = EdgeLabels::for_purpose(seed, "oracle", &[]);
        let t = Threshold::from_prob(p);
        let open = |e: EdgeId| labels.is_open(e, t);
        let mut ex = Explorer::new(grid.host.graph.vertex_count());
        let zeta = grid.zeta(&mut ex, open);
        let centre = |s: usize| vec![(s / 3) as i32 * n as i32, (s % 3) as i32 * n as i32];
        for (i, &(a, b)) in grid.edges.iter().enumerate() {
            prop_assert_eq!(zeta[i], oracle_zeta(&grid.host, &centre(a), &centre(b), k, n, c, &open), "edge {}", i);
        }
    }

    #[test]
    fn coarse_field_is_local(seed in any::<u64>(), other in any::<u64>(), p in 0.3f64..0.8) {
        let grid = CoarseGrid::new(3, 1, 3, 2, 3).unwrap();
        let (a, b) = (EdgeLabels::for_purpose(seed, "inside", &[]), EdgeLabels::for_purpose(other, "outside", &[]));
        let t = Threshold::from_prob(p);
        let mut ex = Explorer::new(grid.host.graph.vertex_count());
        let base = grid.zeta(&mut ex, |e| a.is_open(e, t));
        for i in 0..grid.edges.len() {
            // resample every fine edge off the support of coarse edge i
            let mixed = grid.zeta(&mut ex, |e| if grid.in_support(i, e) { a.is_open(e, t) } else { b.is_open(e, t) });
            prop_assert_eq!(base[i], mixed[i], "coarse edge {}", i);
        }
    }
}

#[test]
fn ball_volumes() {
    for d in 1..=4usize {
        for r in 0..6u32 {
            let host = Host::new(&vec![-(r as i32); d], &vec![2 * r as usize + 1; d]).unwrap();
            let o = vec![0; d];
            let brute = (0..host.graph.vertex_count() as u32).filter(|&v| l1(&host, VertexId(v), &o) <= r).count();
            assert_eq!(l1_ball_volume(d, r), brute as u128, "d={d} r={r}");
            assert_eq!(host.ball(&o, r).unwrap().len(), brute);
        }
    }
}

#[test]
fn block_extremes() {
    assert_eq!(block_connection_prob(1.0, 1, 4, 2, 3, 50, 1).unwrap().estimate, 1.0);
    assert_eq!(block_connection_prob(0.0, 1, 4, 2, 3, 50, 1).unwrap().estimate, 0.0);
    // no cluster reaches the sphere when every edge is closed
    assert_eq!(uniqueness_event_prob(0.0, 3, 1, 4, 50, 1).unwrap().estimate, 1.0);
    assert_eq!(uniqueness_event_prob(1.0, 3, 1, 4, 50, 1).unwrap().estimate, 1.0);
    assert!(block_connection_prob(0.5, 4, 4, 1, 3, 10, 1).is_err());
}

#[test]
fn pigeonhole_never_fails() {
    let rows = gm_density_scan(0.7, 2, 1, &[3], 0.2, 400, 9).unwrap();
    let r = &rows[0];
    assert_eq!(r.c, 10);
    assert!(r.all_dense.estimate > 0.5, "premise should be exercised");
    assert_eq!(r.violations, 0);
    let full = gm_density_scan(1.0, 2, 1, &[2], 0.5, 20, 1).unwrap();
    assert!(full[0].fill_mean.iter().all(|&f| f == 1.0));
    assert_eq!(full[0].some_pair_meets.estimate, 1.0);
}

#[test]
fn slab_monotone_and_extremes() {
    let s = slab_crossing(3, 2, 0.45, &[8, 16], 300, 4).unwrap();
    assert!(s.monotone_in_thickness);
    for row in &s.rows {
        for w in row.by_thickness.windows(2) {
            assert!(w[0].successes <= w[1].successes);
        }
        assert_eq!(row.crossing.successes, row.by_thickness.last().unwrap().successes);
    }
    let one = slab_crossing(3, 1, 1.0, &[4], 10, 0).unwrap();
    assert!(one.rows[0].by_thickness.iter().all(|p| p.estimate == 1.0));
    let zero = slab_crossing(3, 1, 0.0, &[4], 10, 0).unwrap();
    assert!(zero.rows[0].by_thickness.iter().all(|p| p.estimate == 0.0));
}

#[test]
fn far_pairs_uncorrelated() {
    let cfg = coarse_grain(0.45, 3, 1, 3, 2, 8, 400, 2).unwrap();
    let far = cfg.far_class();
    assert!(far.pairs > 0);
    assert!(far.within_sigmas(4.0), "far covariance {} ± {}", far.covariance, far.std_err);
    assert!(cfg.marginals.iter().all(|&m| (0.0..=1.0).contains(&m)));
}

#[test]
fn half_space_extremes() {
    let one = half_space_touch_fraction(3, 1.0, 3, 0.5, 5, 0).unwrap();
    assert_eq!(one.mean_fraction, 1.0);
    assert_eq!(one.at_least_c0.estimate, 1.0);
    let zero = half_space_touch_fraction(3, 0.0, 3, 0.5, 5, 0).unwrap();
    assert_eq!(zero.mean_fraction, 0.0);
}
