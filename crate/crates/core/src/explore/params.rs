//! Constants of the exploration: `η`, the sprinkling pair `(t, α)`, `δ`, `r`, `b`, `ℓ`, `c`.

use serde::{Deserialize, Serialize};

use crate::cluster::Explorer;
use crate::error::{Error, Result};
use crate::graph::{ball_around, distances_from, FiniteGraph};
use crate::percolation::eta_for;
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::VertexId;
use crate::stats::Proportion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Rigorous,
    Practical,
}

/// Relative slack when testing the defining inequalities, so that values that are equal
/// in exact arithmetic but round differently (e.g. `0.5^5` against `ε/2`) land on the right side.
const REL_TOL: f64 = 1e-12;

fn le_tol(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + REL_TOL)
}

/// Least `t` with `(1 - η)^t ≤ ε/2`, and `α = (ε/2)(1 - p)^t`.
pub fn calibrate_sprinkling(p: f64, eta: f64, epsilon: f64) -> Result<(u32, f64)> {
    if !(0.0..1.0).contains(&p) || p == 0.0 {
        return Err(Error::invalid("calibrate_sprinkling needs p in (0, 1)"));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid("calibrate_sprinkling needs eta in (0, 1); eta = 0 admits no finite t"));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::invalid("calibrate_sprinkling needs epsilon in (0, 1]"));
    }
    let target = epsilon / 2.0;
    let mut t = 0u32;
    let mut pow = 1.0;
    while !le_tol(pow, target) {
        t += 1;
        pow *= 1.0 - eta;
        if t > 100_000 {
            return Err(Error::budget("sprinkling exponent exceeds 100000"));
        }
    }
    let alpha = target * (1.0 - p).powi(t as i32);
    Ok((t, alpha))
}

/// Least `ℓ ≥ 1` with `(1 - η^b)^ℓ ≤ ε/2`.
pub fn seed_count(eta: f64, b: usize, epsilon: f64) -> Result<u64> {
    let hit = eta.powi(b as i32);
    if hit <= 0.0 {
        return Err(Error::budget("eta^b underflows; the seed count is astronomically large"));
    }
    let target = epsilon / 2.0;
    let approx = target.ln() / (-hit).ln_1p();
    if approx > 1e6 {
        // Too many rounds to iterate; the closed form is accurate at this size.
        if approx >= 9e18 {
            return Err(Error::budget(format!("seed count {approx:.3e} does not fit in 64 bits")));
        }
        return Ok(approx.ceil() as u64);
    }
    let miss = 1.0 - hit;
    let mut ell = 1u64;
    let mut pow = miss;
    while !le_tol(pow, target) {
        ell += 1;
        pow *= miss;
    }
    Ok(ell)
}

/// `b = max(|B_r°|, |B_r|)` around `v`.
pub fn ball_weight(g: &FiniteGraph, v: VertexId, r: u32) -> usize {
    let ball = ball_around(g, v, r);
    let interior = g.interior_edges(&ball).len();
    interior.max(ball.len())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RigorousValues {
    pub delta: f64,
    pub ell: u64,
    pub c: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExplorationParams {
    pub p: f64,
    pub q: f64,
    pub epsilon: f64,
    pub eta: f64,
    pub alpha: f64,
    pub t_spr: u32,
    pub delta: f64,
    pub r: u32,
    pub b: usize,
    pub ell: u64,
    pub c: f64,
    pub d: usize,
    pub mode: Mode,
    /// Monte Carlo samples per mid-ball estimate.
    pub estimator_samples: u64,
    /// What the rigorous formulas give for the same `r` (practical mode only).
    pub rigorous: Option<RigorousValues>,
}

impl ExplorationParams {
    /// Mid-ball acceptance level `1 - √δ`.
    pub fn threshold(&self) -> f64 {
        1.0 - self.delta.sqrt()
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct DeriveOptions {
    /// Use this `α` instead of calibrating.
    pub alpha: Option<f64>,
    /// Samples per radius when estimating `P_p(B_{r-1} ↔ shell)`.
    pub samples: u64,
    /// Largest radius tried.
    pub r_max: u32,
    pub seed: u64,
}

/// Vertices standing in for infinity: the graph's free border (vertices of deficient
/// degree), or the farthest sphere around the origin when there is none.
pub fn far_shell(g: &FiniteGraph) -> crate::sets::VertexSet {
    let d = g.degree_bound();
    let border = g.vertex_set((0..g.vertex_count() as u32).map(VertexId).filter(|&v| g.degree(v) < d));
    if !border.is_empty() {
        return border;
    }
    let dist = distances_from(g, &g.vertex_set([g.origin()]), None);
    let far = dist.iter().copied().filter(|&x| x != crate::graph::UNREACHABLE).max().unwrap_or(0);
    g.vertex_set((0..g.vertex_count() as u32).map(VertexId).filter(|v| dist[v.index()] == far))
}

/// Estimated `P_p(B_{r-1}(o) ↔ shell)` on `g`.
pub fn ball_to_shell_prob(g: &FiniteGraph, p: f64, r: u32, samples: u64, seed: u64) -> Proportion {
    let shell = far_shell(g);
    let sources: Vec<VertexId> = if r == 0 {
        Vec::new()
    } else {
        ball_around(g, g.origin(), r - 1).iter().collect()
    };
    if sources.is_empty() {
        return Proportion::new(0, samples);
    }
    let t = Threshold::from_prob(p);
    let mut ex = Explorer::new(g.vertex_count());
    let mut hits = 0;
    for s in 0..samples {
        let labels = EdgeLabels::for_purpose(seed, "r-calibration", &[u64::from(r), s]);
        ex.reset();
        if ex.search(g, sources.iter().copied(), |_, _, e| labels.is_open(e, t), |w| shell.contains(w)) {
            hits += 1;
        }
    }
    Proportion::new(hits, samples)
}

/// Rigorous constants for `(p, q, ε)` on `g`.
pub fn derive_params(p: f64, q: f64, epsilon: f64, g: &FiniteGraph, opts: &DeriveOptions) -> Result<ExplorationParams> {
    if !(p < q && q < 1.0) {
        return Err(Error::invalid("derive_params needs p < q < 1"));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::invalid("derive_params needs epsilon in (0, 1]"));
    }
    let eta = eta_for(p, q)?;
    let (t_spr, alpha) = match opts.alpha {
        Some(a) => (0, a),
        None => calibrate_sprinkling(p, eta, epsilon / 4.0)?,
    };
    let delta = alpha.min(epsilon / 4.0).powi(2);
    let mut r = None;
    for cand in 1..=opts.r_max.max(1) {
        let est = ball_to_shell_prob(g, p, cand, opts.samples, opts.seed);
        if est.estimate >= 1.0 - delta {
            r = Some(cand);
            break;
        }
    }
    let r = r.ok_or_else(|| {
        Error::budget(format!(
            "no r <= {} with P_p(B_(r-1) <-> shell) >= 1 - delta; p may be subcritical at this scale",
            opts.r_max
        ))
    })?;
    let b = ball_weight(g, g.origin(), r);
    let ell = seed_count(eta, b, epsilon)?;
    let d = g.degree_bound();
    let c = 1.0 / (4.0 * (b as f64).powi(3) * d as f64 * ell as f64);
    Ok(ExplorationParams {
        p,
        q,
        epsilon,
        eta,
        alpha,
        t_spr,
        delta,
        r,
        b,
        ell,
        c,
        d,
        mode: Mode::Rigorous,
        estimator_samples: opts.samples,
        rigorous: None,
    })
}

/// Practical overrides. `r = 0` uses single-vertex seeds, which are always open.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PracticalOptions {
    pub r: u32,
    pub ell: u64,
    pub delta: f64,
    pub estimator_samples: u64,
}

impl Default for PracticalOptions {
    fn default() -> Self {
        PracticalOptions { r: 0, ell: 2, delta: 0.04, estimator_samples: 200 }
    }
}

/// Practical parameters; the rigorous `δ`, `ℓ` and `c` for the same `r` are attached.
pub fn practical_params(p: f64, q: f64, epsilon: f64, g: &FiniteGraph, opts: &PracticalOptions) -> Result<ExplorationParams> {
    if !(p <= q && q < 1.0) {
        return Err(Error::invalid("practical_params needs p <= q < 1"));
    }
    if !(opts.delta > 0.0 && opts.delta < 1.0) || opts.ell == 0 || opts.estimator_samples == 0 {
        return Err(Error::invalid("practical overrides need delta in (0,1), ell >= 1, samples >= 1"));
    }
    let eta = eta_for(p, q)?;
    let b = ball_weight(g, g.origin(), opts.r);
    let d = g.degree_bound();
    let rigorous = if eta > 0.0 && p > 0.0 {
        let (_, alpha) = calibrate_sprinkling(p, eta, epsilon / 4.0)?;
        let ell = seed_count(eta, b, epsilon).unwrap_or(u64::MAX);
        Some(RigorousValues {
            delta: alpha.min(epsilon / 4.0).powi(2),
            ell,
            c: 1.0 / (4.0 * (b as f64).powi(3) * d as f64 * ell as f64),
        })
    } else {
        None
    };
    let (t_spr, alpha) = if eta > 0.0 && p > 0.0 { calibrate_sprinkling(p, eta, epsilon / 4.0)? } else { (0, 0.0) };
    Ok(ExplorationParams {
        p,
        q,
        epsilon,
        eta,
        alpha,
        t_spr,
        delta: opts.delta,
        r: opts.r,
        b,
        ell: opts.ell,
        c: 1.0 / (4.0 * (b as f64).powi(3) * d as f64 * opts.ell as f64),
        d,
        mode: Mode::Practical,
        estimator_samples: opts.estimator_samples,
        rigorous,
    })
}
