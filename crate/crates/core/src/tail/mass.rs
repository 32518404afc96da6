//! The collecting-mass recursion: `v_n` solves `∫_{|S|}^{v_n} dt / (c Φ(t)) = n`, and
//! `M_n = |𝒞_S^n|` is compared against it.

use serde::Serialize;

use super::model::PhiModel;
use crate::cluster::UnionFind;
use crate::error::{Error, Result};
use crate::graph::{distances_from, FiniteGraph};
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::VertexSet;
use crate::stats::Proportion;

/// Relative tolerance of the adaptive quadrature. Integrands here are positive, so a
/// local relative criterion bounds the global relative error.
const QUAD_TOL: f64 = 1e-13;

/// One Richardson step on the trapezoid rule (Simpson's rule) over `[a, b]`.
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (f(0.5 * (a + m)), f(0.5 * (m + b)));
    let left = simpson(a, m, fa, lm, fm);
    let right = simpson(m, b, fm, rm, fb);
    let err = (left + right - whole) / 15.0;
    if depth == 0 || err.abs() <= QUAD_TOL * (left + right).abs() {
        return left + right + err;
    }
    adaptive(f, a, m, fa, lm, fm, left, depth - 1) + adaptive(f, m, b, fm, rm, fb, right, depth - 1)
}

/// `∫_a^b f` for positive `f`: trapezoid halving with Richardson extrapolation, refined
/// locally until the relative error estimate drops below `1e-13`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    adaptive(&f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 40)
}

/// `∫_a^b dt / (c Φ(t))`, exact on the table of a step model.
pub fn mass_integral(model: &PhiModel, c: f64, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let smooth = |lo: f64, hi: f64| integrate(|t| 1.0 / (c * model.eval(t)), lo, hi);
    match model {
        PhiModel::Constant { value } => (b - a) / (c * value),
        PhiModel::Power { .. } => smooth(a, b),
        PhiModel::Step { values, .. } => {
            let lim = values.len() as f64;
            let mut total = 0.0;
            let mut lo = a;
            // Φ is constant on each (k-1, k] inside the table.
            while lo < b.min(lim) {
                let k = (lo.floor() + 1.0).max(1.0);
                let hi = k.min(b);
                total += (hi - lo) / (c * values[k as usize - 1]);
                lo = hi;
            }
            if b > lim {
                total += smooth(lo.max(lim), b);
            }
            total
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MassSchedule {
    pub size_s: usize,
    pub c: f64,
    pub model: PhiModel,
    /// `v_0, …, v_{n_max}`.
    pub v: Vec<f64>,
    /// `max_n |∫_{|S|}^{v_n} dt/(cΦ) - n|`, integrals recomputed from `|S|`.
    pub residual: f64,
    /// `c ≤ 1/(2d)` and `Φ(2x) ≤ 2Φ(x)` at every `v_n`.
    pub hypotheses_hold: bool,
    /// `v_{n+1} - v_n ≤ 2cΦ(v_n)` for every `n`.
    pub increment_bound_holds: bool,
}

/// Solves for `v_0..=v_{n_max}` by bracketing and bisection on consecutive increments.
pub fn solve_v_n(size_s: usize, c: f64, model: &PhiModel, n_max: usize, degree: usize) -> Result<MassSchedule> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::invalid("c must be positive"));
    }
    if size_s == 0 {
        return Err(Error::invalid("|S| must be positive"));
    }
    model.validate()?;
    let mut v = vec![size_s as f64];
    for _ in 0..n_max {
        let lo = *v.last().unwrap();
        let mut step = (c * model.eval(lo)).max(1e-12);
        while mass_integral(model, c, lo, lo + step) < 1.0 {
            step *= 2.0;
            if !step.is_finite() || step > 1e300 {
                return Err(Error::budget("v_n diverged while bracketing"));
            }
        }
        let (mut a, mut b) = (lo, lo + step);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if mass_integral(model, c, lo, mid) < 1.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        v.push(0.5 * (a + b));
    }
    let residual = v
        .iter()
        .enumerate()
        .map(|(n, &x)| (mass_integral(model, c, size_s as f64, x) - n as f64).abs())
        .fold(0.0, f64::max);
    let hypotheses_hold =
        c <= 1.0 / (2.0 * degree as f64) && v.iter().all(|&x| model.eval(2.0 * x) <= 2.0 * model.eval(x) + 1e-12);
    let increment_bound_holds = v.windows(2).all(|w| w[1] - w[0] <= 2.0 * c * model.eval(w[0]) * (1.0 + 1e-12));
    Ok(MassSchedule {
        size_s,
        c,
        model: model.clone(),
        v,
        residual,
        hypotheses_hold,
        increment_bound_holds,
    })
}

/// `1 - Σ_{n ≥ |S|} e^{-cΦ(n)}`, with the table part and the modelled part kept apart.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyticBound {
    pub exact_part: f64,
    pub model_part: f64,
    /// The modelled sum was cut off before its terms fell below `1e-18`.
    pub truncated: bool,
    pub bound: f64,
}

pub fn analytic_bound(size_s: usize, c: f64, model: &PhiModel) -> AnalyticBound {
    let lim = model.exact_limit().unwrap_or(size_s.saturating_sub(1));
    let exact_part: f64 = (size_s..=lim).map(|n| (-c * model.eval(n as f64)).exp()).sum();
    let mut model_part = 0.0;
    let mut truncated = true;
    let start = (lim + 1).max(size_s) as u64;
    for n in start..start + 100_000_000 {
        let term = (-c * model.eval(n as f64)).exp();
        model_part += term;
        if term < 1e-18 {
            truncated = false;
            break;
        }
    }
    AnalyticBound { exact_part, model_part, truncated, bound: 1.0 - exact_part - model_part }
}

#[derive(Clone, Debug, Serialize)]
pub struct MassReport {
    pub p: f64,
    pub samples: u64,
    pub seed: u64,
    pub schedule: MassSchedule,
    pub success: Proportion,
    pub bound: AnalyticBound,
    /// `M_0..=M_{n_max}` of the first few samples.
    pub trajectories: Vec<Vec<usize>>,
}

/// `M_n = |𝒞_S^n|` for `n = 0..=n_max`, where `𝒞_S^n` is the set of vertices joined to `S`
/// inside `B_n(S)`.
pub struct MassProbe {
    size_s: usize,
    /// Edges with both endpoints in `B_{n_max}(S)`, grouped by the larger endpoint distance.
    levels: Vec<Vec<(u32, u32, u32)>>,
    s: Vec<u32>,
    n: usize,
}

impl MassProbe {
    pub fn new(g: &FiniteGraph, s: &VertexSet, n_max: usize) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::invalid("S must be nonempty"));
        }
        let dist = distances_from(g, s, Some(n_max as u32));
        let d = g.degree_bound();
        let inside = |x: u32| (x as usize) <= n_max;
        if (0..g.vertex_count()).any(|v| inside(dist[v]) && (dist[v] as usize) < n_max && g.degree(crate::sets::VertexId(v as u32)) < d) {
            return Err(Error::precondition("B_n(S) reaches the border of the graph; truncation too small"));
        }
        let mut levels = vec![Vec::new(); n_max + 1];
        for (e, a, b) in g.edges() {
            let (da, db) = (dist[a.index()], dist[b.index()]);
            if inside(da) && inside(db) {
                levels[da.max(db) as usize].push((e.0, a.0, b.0));
            }
        }
        Ok(MassProbe { size_s: s.len(), levels, s: s.iter().map(|v| v.0).collect(), n: g.vertex_count() })
    }

    pub fn trajectory(&self, open: impl Fn(u32) -> bool) -> Vec<usize> {
        // Vertex `n` is a virtual root tied to every vertex of S.
        let mut uf = UnionFind::new(self.n + 1);
        let root = self.n as u32;
        for &v in &self.s {
            uf.union(root, v);
        }
        let mut out = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            for &(e, a, b) in level {
                if open(e) {
                    uf.union(a, b);
                }
            }
            out.push(uf.set_size(root) - 1);
        }
        debug_assert_eq!(out[0], self.size_s);
        out
    }
}

/// Frequency of `{M_n ≥ v_n for all n ≤ n_max}` and the analytic lower bound.
#[allow(clippy::too_many_arguments)]
pub fn collect_mass_experiment(
    g: &FiniteGraph,
    s: &VertexSet,
    p: f64,
    c: f64,
    model: &PhiModel,
    n_max: usize,
    samples: u64,
    seed: u64,
) -> Result<MassReport> {
    if !(0.0..=1.0).contains(&p) || samples == 0 {
        return Err(Error::invalid("need p in [0, 1] and a positive sample count"));
    }
    let probe = MassProbe::new(g, s, n_max)?;
    let schedule = solve_v_n(s.len(), c, model, n_max, g.degree_bound())?;
    let t = Threshold::from_prob(p);
    let mut hits = 0;
    let mut trajectories = Vec::new();
    for i in 0..samples {
        let labels = EdgeLabels::for_purpose(seed, "mass", &[i]);
        let m = probe.trajectory(|e| labels.is_open(crate::sets::EdgeId(e), t));
        if m.iter().zip(&schedule.v).all(|(&mn, &vn)| mn as f64 >= vn) {
            hits += 1;
        }
        if trajectories.len() < 8 {
            trajectories.push(m);
        }
    }
    Ok(MassReport {
        p,
        samples,
        seed,
        bound: analytic_bound(s.len(), c, model),
        schedule,
        success: Proportion::new(hits, samples),
        trajectories,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let sqrt = PhiModel::Power { coef: 1.0, exponent: 0.5 };
        let s = solve_v_n(1, 0.2, &sqrt, 10, 4).unwrap();
        assert!((s.v[10] - 4.0).abs() < 1e-6 * 4.0, "{}", s.v[10]);
        let k = PhiModel::Constant { value: 3.0 };
        let s = solve_v_n(5, 0.1, &k, 7, 4).unwrap();
        for (n, &x) in s.v.iter().enumerate() {
            assert!((x - (5.0 + 0.3 * n as f64)).abs() < 1e-9);
        }
        assert!(solve_v_n(1, 0.0, &k, 3, 4).is_err());
        assert!(solve_v_n(1, 0.1, &PhiModel::Constant { value: 0.0 }, 3, 4).is_err());
    }

    #[test]
    fn step_integral_is_piecewise_exact() {
        let m = PhiModel::Step { values: vec![4.0, 6.0, 8.0, 8.0], tail: None };
        let got = mass_integral(&m, 0.5, 1.0, 3.5);
        let want = 1.0 / 3.0 + 1.0 / 4.0 + 0.5 / 4.0;
        assert!((got - want).abs() < 1e-15);
    }
}
