//! Volume and radius tails of the origin cluster inside a truncation ball.

use rayon::prelude::*;

use crate::curve::{CurveKind, TailCurve};
use crate::error::{Error, Result};
use crate::graph::{ball_around, distances_from, inner_boundary, FiniteGraph, UNREACHABLE};
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::{EdgeId, VertexId, VertexSet};

/// What one exploration of `𝒞_o ∩ B_R` found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusterStats {
    /// Vertices found; exact when `finite`, a partial count otherwise.
    pub size: usize,
    /// Largest distance from the origin among the vertices found.
    pub max_dist: u32,
    /// The cluster avoids `∂⁻B_R`.
    pub finite: bool,
}

impl ClusterStats {
    /// `n ≤ |𝒞_o| < ∞`.
    pub fn volume_event(&self, n: u64) -> bool {
        self.finite && self.size as u64 >= n
    }

    /// `o ↔ ∂B_n` but `o ↮ ∂B_R`.
    pub fn radius_event(&self, n: u64) -> bool {
        self.finite && u64::from(self.max_dist) >= n
    }
}

/// Reusable state for exploring the origin cluster inside `B_R`. Vertices are expanded
/// farthest-first, so clusters that reach the truncation boundary are detected after
/// roughly `R` steps instead of after filling the ball.
#[derive(Clone, Debug)]
pub struct ClusterProbe {
    radius: u32,
    dist: Vec<u32>,
    boundary: VertexSet,
    volume: usize,
    mark: Vec<u32>,
    epoch: u32,
    buckets: Vec<Vec<u32>>,
}

impl ClusterProbe {
    pub fn new(g: &FiniteGraph, radius: u32) -> Result<Self> {
        let mut dist = distances_from(g, &g.vertex_set([g.origin()]), Some(radius));
        let ball = ball_around(g, g.origin(), radius);
        let d = g.degree_bound();
        if ball.iter().any(|v| g.degree(v) < d) {
            return Err(Error::precondition(format!("B_{radius} reaches the border of the graph; enlarge it")));
        }
        for x in dist.iter_mut() {
            if *x > radius {
                *x = UNREACHABLE;
            }
        }
        Ok(ClusterProbe {
            radius,
            boundary: inner_boundary(g, &ball),
            volume: ball.len(),
            dist,
            mark: vec![0; g.vertex_count()],
            epoch: 0,
            buckets: vec![Vec::new(); radius as usize + 1],
        })
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// `|B_R|`.
    pub fn volume(&self) -> usize {
        self.volume
    }

    pub fn explore(&mut self, g: &FiniteGraph, open: impl Fn(EdgeId) -> bool) -> ClusterStats {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        for b in &mut self.buckets {
            b.clear();
        }
        let o = g.origin();
        self.mark[o.index()] = self.epoch;
        let mut stats = ClusterStats { size: 1, max_dist: 0, finite: !self.boundary.contains(o) };
        if !stats.finite {
            return stats;
        }
        self.buckets[0].push(o.0);
        let mut top = 0usize;
        loop {
            while top > 0 && self.buckets[top].is_empty() {
                top -= 1;
            }
            let Some(v) = self.buckets[top].pop() else { return stats };
            for (w, e) in g.adjacency(VertexId(v)) {
                let dw = self.dist[w.index()];
                if dw == UNREACHABLE || self.mark[w.index()] == self.epoch || !open(e) {
                    continue;
                }
                self.mark[w.index()] = self.epoch;
                stats.size += 1;
                stats.max_dist = stats.max_dist.max(dw);
                if self.boundary.contains(w) {
                    stats.finite = false;
                    return stats;
                }
                self.buckets[dw as usize].push(w.0);
                top = top.max(dw as usize);
            }
        }
    }
}

/// Labels of sample `i` for tail estimation; shared across `R` and grids.
pub fn tail_labels(seed: u64, sample: u64) -> EdgeLabels {
    EdgeLabels::for_purpose(seed, "tail", &[sample])
}

fn check_grids(volume: usize, radius: u32, vgrid: &[u64], rgrid: &[u64]) -> Result<()> {
    if let Some(&n) = vgrid.iter().find(|&&n| n == 0 || n > volume as u64) {
        return Err(Error::invalid(format!("volume threshold {n} outside 1..=|B_R| = {volume}")));
    }
    if let Some(&n) = rgrid.iter().find(|&&n| n >= u64::from(radius)) {
        return Err(Error::invalid(format!("radius threshold {n} must be below R = {radius}")));
    }
    Ok(())
}

const CHUNK: u64 = 2048;

/// Volume and radius curves from one exploration per sample.
pub fn tail_curves(
    g: &FiniteGraph,
    p: f64,
    volume_grid: &[u64],
    radius_grid: &[u64],
    radius: u32,
    samples: u64,
    seed: u64,
) -> Result<(TailCurve, TailCurve)> {
    if !(0.0..=1.0).contains(&p) || samples == 0 {
        return Err(Error::invalid("need p in [0, 1] and a positive sample count"));
    }
    let probe = ClusterProbe::new(g, radius)?;
    check_grids(probe.volume(), radius, volume_grid, radius_grid)?;
    let t = Threshold::from_prob(p);
    let chunks: Vec<u64> = (0..samples.div_ceil(CHUNK)).collect();
    let zero = || (vec![0u64; volume_grid.len()], vec![0u64; radius_grid.len()]);
    let (vc, rc) = chunks
        .par_iter()
        .map(|&c| {
            let mut probe = probe.clone();
            let (mut vc, mut rc) = zero();
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let labels = tail_labels(seed, i);
                let st = probe.explore(g, |e| labels.is_open(e, t));
                for (k, &n) in volume_grid.iter().enumerate() {
                    vc[k] += u64::from(st.volume_event(n));
                }
                for (k, &n) in radius_grid.iter().enumerate() {
                    rc[k] += u64::from(st.radius_event(n));
                }
            }
            (vc, rc)
        })
        .reduce(zero, |(mut a, mut b), (x, y)| {
            a.iter_mut().zip(x).for_each(|(u, v)| *u += v);
            b.iter_mut().zip(y).for_each(|(u, v)| *u += v);
            (a, b)
        });
    Ok((
        TailCurve::from_counts(CurveKind::Volume, p, radius, samples, seed, volume_grid, &vc),
        TailCurve::from_counts(CurveKind::Radius, p, radius, samples, seed, radius_grid, &rc),
    ))
}

/// Frequency of `n ≤ |𝒞_o| < ∞` per `n`, where clusters touching `∂⁻B_R` count as infinite.
pub fn volume_tail(g: &FiniteGraph, p: f64, grid: &[u64], radius: u32, samples: u64, seed: u64) -> Result<TailCurve> {
    Ok(tail_curves(g, p, grid, &[], radius, samples, seed)?.0)
}

/// Frequency of `o ↔ ∂B_n, o ↮ ∂B_R` per `n < R`.
pub fn radius_tail(g: &FiniteGraph, p: f64, grid: &[u64], radius: u32, samples: u64, seed: u64) -> Result<TailCurve> {
    Ok(tail_curves(g, p, &[], grid, radius, samples, seed)?.1)
}

/// Exact volume and radius tails by enumerating every configuration (`|E| ≤ 20`).
pub fn exact_tails(g: &FiniteGraph, p: f64, volume_grid: &[u64], radius_grid: &[u64], radius: u32) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = g.edge_count();
    if m > 20 {
        return Err(Error::invalid("exact tails support at most 20 edges"));
    }
    let mut probe = ClusterProbe::new(g, radius)?;
    check_grids(probe.volume(), radius, volume_grid, radius_grid)?;
    let mut vp = vec![0.0; volume_grid.len()];
    let mut rp = vec![0.0; radius_grid.len()];
    for mask in 0u32..1 << m {
        let w: f64 = (0..m).map(|i| if mask >> i & 1 == 1 { p } else { 1.0 - p }).product();
        let st = probe.explore(g, |e| mask >> e.0 & 1 == 1);
        for (k, &n) in volume_grid.iter().enumerate() {
            if st.volume_event(n) {
                vp[k] += w;
            }
        }
        for (k, &n) in radius_grid.iter().enumerate() {
            if st.radius_event(n) {
                rp[k] += w;
            }
        }
    }
    Ok((vp, rp))
}
