use std::sync::Arc;

use perc_lab::cluster::Explorer;
use perc_lab::explore::{
    centred_block, check_invariants, find_mid_balls, grow_seed, grow_seed_with, practical_params, run_exploration, seeds_function,
    Arena, Estimator, HaltStatus, Mode, PracticalOptions,
};
use perc_lab::graph::lattice_box;
use perc_lab::percolation::Layers;
use perc_lab::sets::{EdgeId, VertexSet};
use perc_lab::{Error, FiniteGraph};

fn arena(side: usize, half: i32, radius: u32, t: usize) -> Arena {
    let g = Arc::new(lattice_box(&[side, side]));
    let s = centred_block(&g, half).unwrap();
    Arena::new(g, s, radius, t).unwrap()
}

fn column(g: &FiniteGraph, x: i32, h: i32) -> VertexSet {
    g.vertex_set((-h..=h).map(|y| g.vertex_at(&[x, y]).unwrap()))
}

#[test]
fn practical_runs_keep_invariants() {
    let a = arena(64, 2, 30, 5);
    let params = practical_params(0.95, 0.97, 0.5, a.graph(), &PracticalOptions::default()).unwrap();
    let mut reached = 0;
    for seed in 0..40 {
        let st = run_exploration(&a, &params, seed).unwrap();
        check_invariants(&st, &a, &params).unwrap();
        if st.reached() {
            reached += 1;
            assert!(a.touches(&st.k) >= a.t);
        }
    }
    assert!(reached >= 30, "reached_t in {reached}/40");
}

#[test]
fn runs_are_replayable() {
    let a = arena(32, 1, 14, 3);
    let params = practical_params(0.9, 0.95, 0.5, a.graph(), &PracticalOptions::default()).unwrap();
    let x = run_exploration(&a, &params, 7).unwrap().to_json();
    let y = run_exploration(&a, &params, 7).unwrap().to_json();
    assert_eq!(x, y);
}

#[test]
fn equal_parameters_find_no_seed() {
    let a = arena(32, 1, 14, 3);
    let opts = PracticalOptions { r: 1, ..PracticalOptions::default() };
    let params = practical_params(0.8, 0.8, 0.5, a.graph(), &opts).unwrap();
    assert_eq!(params.eta, 0.0);
    let st = run_exploration(&a, &params, 1).unwrap();
    assert_eq!(st.status, HaltStatus::HaltedNoSeed);
    assert_eq!(st.rounds.len(), 1);
}

#[test]
fn rigorous_mode_rejects_large_t() {
    let a = arena(32, 1, 14, 3);
    let mut params = practical_params(0.9, 0.95, 0.5, a.graph(), &PracticalOptions::default()).unwrap();
    params.mode = Mode::Rigorous;
    assert!(matches!(run_exploration(&a, &params, 0), Err(Error::Precondition(_))));
}

#[test]
fn seeds_preconditions() {
    let a = arena(41, 1, 18, 2);
    let params = practical_params(0.99, 0.995, 0.5, a.graph(), &PracticalOptions { r: 1, ..Default::default() }).unwrap();
    let g = a.graph();
    let d = g.empty_vertex_set();
    let balls = seeds_function(&d, &a.anchor, &a, &params, 3).unwrap();
    assert_eq!(balls.len() as u64, params.ell);
    for (i, b) in balls.iter().enumerate() {
        assert!(b.accepted);
        assert!(b.ball.is_subset(&a.working));
        for c in &balls[i + 1..] {
            assert!(b.ball.is_disjoint(&c.ball));
        }
    }
    // Touch count already at t.
    let mut k = a.anchor.clone();
    k.union_with(&a.outer_s);
    assert!(matches!(seeds_function(&d, &k, &a, &params, 3), Err(Error::Precondition(_))));
    // |D| above b*ell*t.
    let big = g.vertex_set(a.working.iter().take(params.b * params.ell as usize * a.t + 1));
    assert!(matches!(seeds_function(&big, &a.anchor, &a, &params, 3), Err(Error::Precondition(_))));
    // K without the anchor.
    assert!(seeds_function(&d, &g.empty_vertex_set(), &a, &params, 3).is_err());
}

#[test]
fn mid_balls_on_strip() {
    let g = lattice_box(&[31, 31]);
    let all = g.all_vertices();
    let (l, r) = (column(&g, -15, 15), column(&g, 15, 15));
    let spec = perc_lab::explore::MidBallSpec { radius: 1, count: 3, delta: 0.04, p: 0.9, mode: Mode::Rigorous };
    let est = Estimator { samples: 10_000, seed: 11, stream: 0 };
    let balls = find_mid_balls(&g, &all, &l, &r, &g.empty_vertex_set(), &spec, &est).unwrap();
    for b in &balls {
        assert!(b.accepted);
        assert!(b.to_l.estimate >= 0.8 - b.to_l.half_width());
        assert!(b.to_r.estimate >= 0.8 - b.to_r.half_width());
    }
}

#[test]
fn grow_seed_extremes() {
    let a = arena(21, 1, 8, 2);
    let g = a.graph();
    let b = g.vertex_set([g.vertex_at(&[2, 0]).unwrap(), g.vertex_at(&[3, 0]).unwrap()]);
    let c = grow_seed_with(&b, &a.anchor, &a, |_| true, |_| true);
    assert!(!c.is_disjoint(&a.anchor));
    assert!(!c.is_disjoint(&a.outer_s.difference(&a.anchor)));
    let closed = Layers::new(0.0, 0.0, 0, 0).unwrap();
    assert_eq!(grow_seed(&b, &a.anchor, &closed, &a), b);
}

/// Layers whose three label streams are replaced by fixed edge states.
struct Fixed {
    omega: u32,
    xi: u32,
    edges: Vec<EdgeId>,
}

impl Fixed {
    fn state(&self, mask: u32, e: EdgeId) -> bool {
        self.edges.iter().position(|&x| x == e).is_some_and(|i| mask >> i & 1 == 1)
    }
}

/// Cluster oracle: `𝒞₁` by plain search, `𝒞₂` edge by edge.
fn oracle(g: &FiniteGraph, a: &Arena, b: &VertexSet, k: &VertexSet, f: &Fixed) -> (VertexSet, bool, bool) {
    let mut ex = Explorer::new(g.vertex_count());
    ex.reset();
    ex.search(
        g,
        b.iter(),
        |v, w, e| !k.contains(v) && !k.contains(w) && a.domain.contains(e) && f.state(f.omega, e),
        |_| false,
    );
    let c1 = ex.visited_set(g);
    let xi_link = g.edges().any(|(e, u, v)| {
        a.domain.contains(e)
            && f.state(f.xi, e)
            && ((c1.contains(u) && !k.contains(u) && k.contains(v)) || (c1.contains(v) && !k.contains(v) && k.contains(u)))
    });
    let l = a.outer_s.difference(k);
    (c1.clone(), xi_link || !c1.is_disjoint(k), !c1.is_disjoint(&l))
}

#[test]
fn grow_seed_exhaustive_on_small_arena() {
    let g = Arc::new(lattice_box(&[3, 3]));
    let s = g.vertex_set([g.origin()]);
    let a = Arena::new(g.clone(), s, 1, 2).unwrap();
    let at = |x: i32, y: i32| g.vertex_at(&[x, y]).unwrap();
    let k = g.vertex_set([at(-1, 1), at(0, 1), at(1, 1)]);
    let b = g.vertex_set([at(-1, -1)]);
    let edges: Vec<EdgeId> = a.domain.iter().collect();
    let m = edges.len();
    assert_eq!(m, 8);
    let l = a.outer_s.difference(&k);
    let mut mismatches = 0;
    for omega in 0u32..1 << m {
        for xi in 0u32..1 << m {
            let f = Fixed { omega, xi, edges: edges.clone() };
            let c = grow_with(&a, &b, &k, &f);
            let (c1, meets_k, meets_l) = oracle(&g, &a, &b, &k, &f);
            assert!(c1.is_subset(&c));
            if meets_k != !c.is_disjoint(&k) || meets_l != !c.is_disjoint(&l) {
                mismatches += 1;
            }
            // Connected through ω ∪ ξ edges inside C.
            let mut ex = Explorer::new(g.vertex_count());
            ex.reset();
            ex.search(
                &g,
                b.iter(),
                |_, w, e| c.contains(w) && (f.state(omega, e) || f.state(xi, e)),
                |_| false,
            );
            assert_eq!(ex.visited_set(&g), c);
            // Resampling edges that do not touch C leaves C unchanged.
            let keep: Vec<bool> = edges
                .iter()
                .map(|&e| {
                    let (u, v) = g.endpoints(e);
                    c.contains(u) || c.contains(v)
                })
                .collect();
            let keep_mask: u32 = keep.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| 1 << i).sum();
            for flip in [0u32, u32::MAX, 0x5555_5555] {
                let f2 = Fixed {
                    omega: (omega & keep_mask) | (flip & !keep_mask),
                    xi: (xi & keep_mask) | (!flip & !keep_mask),
                    edges: edges.clone(),
                };
                assert_eq!(grow_with(&a, &b, &k, &f2), c);
            }
        }
    }
    assert_eq!(mismatches, 0);
}

fn grow_with(a: &Arena, b: &VertexSet, k: &VertexSet, f: &Fixed) -> VertexSet {
    grow_seed_with(b, k, a, |e| f.state(f.omega, e), |e| f.state(f.xi, e))
}
