use std::collections::VecDeque;

use perc_lab::graph::{lattice_box, FiniteGraph, GraphSpec};
use perc_lab::iso::{phi_profile, ProfileOptions};
use perc_lab::rng::{EdgeLabels, Threshold};
use perc_lab::tail::{solve_v_n, MassProbe, PhiModel};
use perc_lab::{EdgeId, VertexId, VertexSet};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn closed_forms() {
    for &(s, c) in &[(1usize, 0.1), (5, 0.25), (30, 0.05)] {
        let sq = solve_v_n(s, c, &PhiModel::Power { coef: 1.0, exponent: 0.5 }, 40, 4).unwrap();
        for (n, &v) in sq.v.iter().enumerate() {
            let exact = ((s as f64).sqrt() + c * n as f64 / 2.0).powi(2);
            assert!(rel(v, exact) < 1e-6, "sqrt model s={s} n={n}: {v} vs {exact}");
        }
        let k = 3.0;
        let flat = solve_v_n(s, c, &PhiModel::Constant { value: k }, 40, 4).unwrap();
        for (n, &v) in flat.v.iter().enumerate() {
            let exact = s as f64 + c * k * n as f64;
            assert!(rel(v, exact) < 1e-6, "constant model s={s} n={n}: {v} vs {exact}");
        }
    }
}

/// `∫_a^b dt / (c Φ(t))` for a step table followed by `coef √t`.
fn step_integral(values: &[f64], coef: f64, c: f64, a: f64, b: f64) -> f64 {
    let lim = values.len() as f64;
    let mut total = 0.0;
    for (k, &phi) in values.iter().enumerate() {
        let (lo, hi) = ((k as f64).max(a), ((k + 1) as f64).min(b));
        if hi > lo {
            total += (hi - lo) / (c * phi);
        }
    }
    if b > lim {
        let lo = a.max(lim);
        total += 2.0 * (b.sqrt() - lo.sqrt()) / (c * coef);
    }
    total
}

fn z2_step_model() -> PhiModel {
    let prof = phi_profile(&GraphSpec::ZdBox { dim: 2, side: 31 }, 8, &ProfileOptions::default()).unwrap();
    PhiModel::from_profile(&prof)
}

#[test]
fn step_profile_residual() {
    let model = z2_step_model();
    let PhiModel::Step { values, tail: Some((coef, exp)) } = &model else { panic!("expected a step model with a tail") };
    assert_eq!(*exp, 0.5);
    let c = 0.1;
    let sched = solve_v_n(2, c, &model, 60, 4).unwrap();
    assert!(sched.residual < 1e-8);
    for (n, &v) in sched.v.iter().enumerate() {
        assert!((step_integral(values, *coef, c, 2.0, v) - n as f64).abs() < 1e-8, "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn increment_bound(s in 1usize..50, c in 0.001f64..=0.125, exponent in 0.0f64..=1.0, coef in 0.5f64..4.0) {
        // Φ(x) ≤ 4x on x ≥ 1 and Φ(2x) ≤ 2Φ(x) for these models, and c ≤ 1/(2·4)
        let model = PhiModel::Power { coef, exponent };
        let sched = solve_v_n(s, c, &model, 30, 4).unwrap();
        prop_assert!(sched.hypotheses_hold);
        for w in sched.v.windows(2) {
            prop_assert!(w[1] - w[0] <= 2.0 * c * model.eval(w[0]) * (1.0 + 1e-9));
        }
        prop_assert!(sched.increment_bound_holds);
    }
}

#[test]
fn increment_bound_on_step_profile() {
    let model = z2_step_model();
    for &c in &[0.01, 0.05, 0.125] {
        let sched = solve_v_n(1, c, &model, 80, 4).unwrap();
        assert!(sched.hypotheses_hold && sched.increment_bound_holds, "c={c}");
    }
}

fn l1(g: &FiniteGraph, v: VertexId) -> i32 {
    g.coords(v).unwrap().iter().map(|x| x.abs()).sum()
}

#[test]
fn mass_extremes() {
    let g = lattice_box(&[41, 41]);
    let s = g.vertex_set([g.origin()]);
    let probe = MassProbe::new(&g, &s, 10).unwrap();
    let full = probe.trajectory(|_| true);
    for (n, &m) in full.iter().enumerate() {
        let ball = (0..g.vertex_count() as u32).filter(|&v| l1(&g, VertexId(v)) <= n as i32).count();
        assert_eq!(m, ball);
        assert_eq!(m, 2 * n * n + 2 * n + 1);
    }
    assert!(probe.trajectory(|_| false).iter().all(|&m| m == 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mass_matches_search(seed in any::<u64>(), p in 0.2f64..0.9, h in 0i32..2) {
        let g = lattice_box(&[41, 41]);
        let gr = &g;
        let s: VertexSet = g.vertex_set((-h..=h).flat_map(|x| (-h..=h).map(move |y| gr.vertex_at(&[x, y]).unwrap())));
        let n_max = 8;
        let probe = MassProbe::new(&g, &s, n_max).unwrap();
        let labels = EdgeLabels::for_purpose(seed, "mass-test", &[]);
        let t = Threshold::from_prob(p);
        let traj = probe.trajectory(|e| labels.is_open(EdgeId(e), t));
        // distance to the block is the ℓ∞-excess summed over axes
        let dist_s = |v: VertexId| g.coords(v).unwrap().iter().map(|x| (x.abs() - h).max(0)).sum::<i32>();
        for n in 0..=n_max as i32 {
            let mut seen: Vec<bool> = (0..g.vertex_count() as u32).map(|v| s.contains(VertexId(v))).collect();
            let mut queue: VecDeque<VertexId> = s.iter().collect();
            while let Some(v) = queue.pop_front() {
                for (w, e) in g.adjacency(v) {
                    if !seen[w.index()] && dist_s(w) <= n && labels.is_open(e, t) {
                        seen[w.index()] = true;
                        queue.push_back(w);
                    }
                }
            }
            prop_assert_eq!(traj[n as usize], seen.iter().filter(|&&b| b).count(), "n = {}", n);
        }
        prop_assert!(traj.windows(2).all(|w| w[0] <= w[1]));
    }
}
