//! Threshold-coupled bond percolation and the three-layer sprinkling decomposition.

use serde::Serialize;

use crate::cluster::{ClusterIndex, Explorer};
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::{EdgeId, EdgeSet, VertexId, VertexSet};

/// Layer density `η` with `(1 - p)(1 - η)^2 = 1 - q`.
pub fn eta_for(p: f64, q: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) || !(0.0..1.0).contains(&q) {
        return Err(Error::invalid(format!("need 0 <= p, q < 1 (got p={p}, q={q})")));
    }
    if q < p {
        return Err(Error::invalid(format!("need p <= q (got p={p}, q={q})")));
    }
    let eta = 1.0 - ((1.0 - q) / (1.0 - p)).sqrt();
    Ok(eta.max(0.0))
}

/// An open-edge set with the density it was drawn at.
#[derive(Clone, Debug)]
pub struct Config {
    pub open: EdgeSet,
    pub p: f64,
}

impl Config {
    pub fn is_open(&self, e: EdgeId) -> bool {
        self.open.contains(e)
    }
}

/// `{e in domain : U_e < p}`.
pub fn sample_config(labels: &EdgeLabels, p: f64, domain: &EdgeSet) -> Config {
    let t = Threshold::from_prob(p);
    let mut open = EdgeSet::new(domain.universe());
    for e in domain.iter() {
        if labels.is_open(e, t) {
            open.insert(e);
        }
    }
    Config { open, p }
}

/// Lazily evaluated layers `ω ~ p`, `ξ ~ η`, `ζ ~ η` on disjoint streams.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Layers {
    pub p: f64,
    pub q: f64,
    pub eta: f64,
    pub omega: EdgeLabels,
    pub xi: EdgeLabels,
    pub zeta: EdgeLabels,
    #[serde(skip)]
    t_p: Threshold,
    #[serde(skip)]
    t_eta: Threshold,
}

impl Layers {
    /// Layers for replica `replica` under `seed`.
    pub fn new(p: f64, q: f64, seed: u64, replica: u64) -> Result<Self> {
        let eta = eta_for(p, q)?;
        Ok(Layers {
            p,
            q,
            eta,
            omega: EdgeLabels::for_purpose(seed, "layer-omega", &[replica]),
            xi: EdgeLabels::for_purpose(seed, "layer-xi", &[replica]),
            zeta: EdgeLabels::for_purpose(seed, "layer-zeta", &[replica]),
            t_p: Threshold::from_prob(p),
            t_eta: Threshold::from_prob(eta),
        })
    }

    #[inline]
    pub fn omega_open(&self, e: EdgeId) -> bool {
        self.omega.is_open(e, self.t_p)
    }

    #[inline]
    pub fn xi_open(&self, e: EdgeId) -> bool {
        self.xi.is_open(e, self.t_eta)
    }

    #[inline]
    pub fn zeta_open(&self, e: EdgeId) -> bool {
        self.zeta.is_open(e, self.t_eta)
    }

    #[inline]
    pub fn union_open(&self, e: EdgeId) -> bool {
        self.omega_open(e) || self.xi_open(e) || self.zeta_open(e)
    }
}

/// Materialised three-layer sample on a domain.
#[derive(Clone, Debug)]
pub struct LayeredSample {
    pub omega: Config,
    pub xi: Config,
    pub zeta: Config,
    pub domain: EdgeSet,
    pub p: f64,
    pub q: f64,
    pub eta: f64,
}

impl LayeredSample {
    pub fn union(&self) -> EdgeSet {
        let mut u = self.omega.open.union(&self.xi.open);
        u.union_with(&self.zeta.open);
        u
    }
}

pub fn sample_layers(p: f64, q: f64, domain: &EdgeSet, seed: u64, replica: u64) -> Result<LayeredSample> {
    let layers = Layers::new(p, q, seed, replica)?;
    Ok(materialize_layers(&layers, domain))
}

pub fn materialize_layers(layers: &Layers, domain: &EdgeSet) -> LayeredSample {
    LayeredSample {
        omega: sample_config(&layers.omega, layers.p, domain),
        xi: sample_config(&layers.xi, layers.eta, domain),
        zeta: sample_config(&layers.zeta, layers.eta, domain),
        domain: domain.clone(),
        p: layers.p,
        q: layers.q,
        eta: layers.eta,
    }
}

/// Components of `(V, config.open ∩ restriction)`.
pub fn clusters(g: &FiniteGraph, config: &Config, restriction: &EdgeSet) -> ClusterIndex {
    ClusterIndex::build(g, &config.open.intersection(restriction))
}

/// Whether some vertex of `l` joins some vertex of `r` through edges of `via`.
pub fn connected(g: &FiniteGraph, l: &VertexSet, r: &VertexSet, via: &EdgeSet) -> bool {
    if !l.is_disjoint(r) {
        return true;
    }
    let mut ex = Explorer::new(g.vertex_count());
    ex.reset();
    ex.search(g, l.iter(), |_, _, e| via.contains(e), |w| r.contains(w))
}

/// Whether an endpoint of `e` reaches `target` inside `V \ forbidden` using edges of
/// `via` with both endpoints allowed. Forbidden endpoints are never starting points.
pub fn edge_connected_to(
    g: &FiniteGraph,
    e: EdgeId,
    target: &VertexSet,
    via: &EdgeSet,
    forbidden: &VertexSet,
) -> bool {
    let (a, b) = g.endpoints(e);
    let starts: Vec<VertexId> = [a, b].into_iter().filter(|v| !forbidden.contains(*v)).collect();
    if starts.is_empty() {
        return false;
    }
    let mut ex = Explorer::new(g.vertex_count());
    ex.reset();
    ex.search(
        g,
        starts,
        |_, w, f| via.contains(f) && !forbidden.contains(w),
        |w| target.contains(w),
    )
}

/// Per-edge frequency of `ω ∪ ξ ∪ ζ` against `q`.
#[derive(Clone, Debug, Serialize)]
pub struct CouplingCheck {
    pub p: f64,
    pub q: f64,
    pub samples: u64,
    pub seed: u64,
    /// `(edge, frequency)`.
    pub frequencies: Vec<(u32, f64)>,
    /// Largest `|frequency - q| / sqrt(q(1-q)/samples)`.
    pub max_z: f64,
}

/// Samples the three layers `samples` times (replica `i` for sample `i`) on every edge.
pub fn coupling_check(g: &FiniteGraph, p: f64, q: f64, samples: u64, seed: u64) -> Result<CouplingCheck> {
    if samples == 0 {
        return Err(Error::invalid("samples must be positive"));
    }
    let mut counts = vec![0u64; g.edge_count()];
    for i in 0..samples {
        let layers = Layers::new(p, q, seed, i)?;
        for (e, c) in counts.iter_mut().enumerate() {
            *c += u64::from(layers.union_open(EdgeId(e as u32)));
        }
    }
    let n = samples as f64;
    let sd = (q * (1.0 - q) / n).sqrt();
    let frequencies: Vec<(u32, f64)> = counts.iter().enumerate().map(|(e, &c)| (e as u32, c as f64 / n)).collect();
    let max_z = frequencies
        .iter()
        .map(|&(_, f)| if sd > 0.0 { (f - q).abs() / sd } else if f == q { 0.0 } else { f64::INFINITY })
        .fold(0.0, f64::max);
    Ok(CouplingCheck { p, q, samples, seed, frequencies, max_z })
}

/// Total-variation distance between the law of `ω ∪ ξ ∪ ζ` on `m` edges, computed by
/// enumerating all `8^m` layer outcomes, and product Bernoulli(`q`). Supports `m ≤ 6`.
pub fn exact_coupling_residual(p: f64, q: f64, m: usize) -> Result<f64> {
    if m > 6 {
        return Err(Error::invalid("exact layer enumeration supports at most 6 edges"));
    }
    let eta = eta_for(p, q)?;
    // One edge: (ω, ξ, ζ) ∈ {0,1}^3 with weights p, η, η.
    let single: Vec<(bool, f64)> = (0..8u32)
        .map(|b| {
            let w = |bit: u32, pr: f64| if b >> bit & 1 == 1 { pr } else { 1.0 - pr };
            (b != 0, w(0, p) * w(1, eta) * w(2, eta))
        })
        .collect();
    let mut law = vec![0.0f64; 1 << m];
    for code in 0u64..1 << (3 * m) {
        let mut state = 0usize;
        let mut weight = 1.0;
        for e in 0..m {
            let (open, w) = single[(code >> (3 * e) & 7) as usize];
            weight *= w;
            if open {
                state |= 1 << e;
            }
        }
        law[state] += weight;
    }
    let tv = law
        .iter()
        .enumerate()
        .map(|(s, &pr)| {
            let target: f64 = (0..m).map(|e| if s >> e & 1 == 1 { q } else { 1.0 - q }).product();
            (pr - target).abs()
        })
        .sum::<f64>()
        / 2.0;
    Ok(tv)
}
