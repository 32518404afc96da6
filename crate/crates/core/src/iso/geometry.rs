//! Boundary versus diameter for connected sets, with the level-set diagnostics of the
//! covering argument: `|∂A| ≥ δ diam(A)` with `δ = ε² / (48 d)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{diameter_with_pair, distances_from, edge_boundary_size, FiniteGraph};
use crate::sets::{VertexId, VertexSet};

#[derive(Clone, Debug, Serialize)]
pub struct GeometryDiagnostics {
    /// Diameter `m` (ambient distance).
    pub diameter: u32,
    pub base: VertexId,
    pub boundary: usize,
    pub epsilon: f64,
    pub delta: f64,
    /// `f[k][r] = |A_{k,r}|` for `k, r ∈ 0..=m`.
    pub f: Vec<Vec<usize>>,
    /// `g[k][r] = |∂A_{k,r} ∩ ∂A|`.
    pub g: Vec<Vec<usize>>,
    /// `r(k)`, or `None` when no `r ≤ m` satisfies the threshold (hypothesis failure).
    pub radii: Vec<Option<u32>>,
    /// Chosen disjoint family `L`, as indices `k`.
    pub family: Vec<u32>,
    /// `Σ_{k∈L} |I_k|`.
    pub family_length: f64,
    /// `Σ_{k∈L} g(k, r(k))`, a lower bound for `|∂A|`.
    pub family_boundary: usize,
    pub verdict: bool,
    /// Set when `ε ≥ 1`, outside the regime the argument assumes.
    pub epsilon_warning: bool,
}

impl GeometryDiagnostics {
    /// Closed intervals `I_k = [k - r(k) - 1/2, k + r(k) + 1/2]` of the family.
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        self.family
            .iter()
            .map(|&k| {
                let r = self.radii[k as usize].unwrap_or(self.diameter) as f64;
                (k as f64 - r - 0.5, k as f64 + r + 0.5)
            })
            .collect()
    }
}

/// Runs the check. Tables are skipped when `diam(A) = 0`.
pub fn geometry_check(graph: &FiniteGraph, a: &VertexSet, epsilon: f64) -> Result<GeometryDiagnostics> {
    if !(epsilon > 0.0) {
        return Err(Error::invalid("epsilon must be positive"));
    }
    let (m, base, _) = diameter_with_pair(graph, a)?;
    let d = graph.degree_bound() as f64;
    let delta = epsilon * epsilon / (48.0 * d);
    let boundary = edge_boundary_size(graph, a);
    let mut diag = GeometryDiagnostics {
        diameter: m,
        base,
        boundary,
        epsilon,
        delta,
        f: Vec::new(),
        g: Vec::new(),
        radii: Vec::new(),
        family: Vec::new(),
        family_length: 0.0,
        family_boundary: 0,
        verdict: boundary as f64 >= delta * m as f64,
        epsilon_warning: epsilon >= 1.0,
    };
    if m == 0 {
        return Ok(diag);
    }
    if diag.epsilon_warning {
        log::warn!("geometry_check: epsilon = {epsilon} >= 1");
    }
    let levels = m as usize + 1;
    let dist = distances_from(graph, &graph.vertex_set([base]), Some(m));
    // Per-level vertex counts and counts of edges leaving A.
    let mut count = vec![0usize; levels];
    let mut out = vec![0usize; levels];
    for v in a.iter() {
        let l = dist[v.index()] as usize;
        count[l] += 1;
        out[l] += graph.neighbors(v).iter().filter(|&&w| !a.contains(VertexId(w))).count();
    }
    let prefix = |xs: &[usize]| {
        let mut p = vec![0usize; xs.len() + 1];
        for (i, x) in xs.iter().enumerate() {
            p[i + 1] = p[i] + x;
        }
        p
    };
    let (pc, po) = (prefix(&count), prefix(&out));
    let window = |p: &[usize], k: i64, r: i64| {
        let lo = (k - r).max(0) as usize;
        let hi = ((k + r) as usize).min(levels - 1);
        p[hi + 1] - p[lo]
    };
    for k in 0..levels as i64 {
        let fk: Vec<usize> = (0..levels as i64).map(|r| window(&pc, k, r)).collect();
        let gk: Vec<usize> = (0..levels as i64).map(|r| window(&po, k, r)).collect();
        let rk = (0..levels).find(|&r| gk[r] as f64 >= 0.5 * epsilon * (fk[r] as f64).sqrt());
        diag.radii.push(rk.map(|r| r as u32));
        diag.f.push(fk);
        diag.g.push(gk);
    }
    // Minimum-cardinality cover of the integer points 0..=m by the I_k, greedy.
    let span = |k: usize| {
        let r = diag.radii[k].map(|r| r as i64).unwrap_or(m as i64);
        (k as i64 - r, k as i64 + r)
    };
    let mut cover = Vec::new();
    let mut next = 0i64;
    while next <= m as i64 {
        let pick = (0..levels)
            .filter(|&k| span(k).0 <= next)
            .max_by_key(|&k| (span(k).1, std::cmp::Reverse(k)))
            .expect("I_next always covers next");
        cover.push(pick);
        next = span(pick).1 + 1;
    }
    cover.sort_by_key(|&k| span(k).0);
    let length = |ks: &[usize]| ks.iter().map(|&k| (span(k).1 - span(k).0 + 1) as f64).sum::<f64>();
    let even: Vec<usize> = cover.iter().copied().step_by(2).collect();
    let odd: Vec<usize> = cover.iter().copied().skip(1).step_by(2).collect();
    let chosen = if length(&even) >= length(&odd) { even } else { odd };
    diag.family_length = length(&chosen);
    diag.family_boundary = chosen
        .iter()
        .map(|&k| diag.g[k][diag.radii[k].unwrap_or(m) as usize])
        .sum();
    diag.family = chosen.into_iter().map(|k| k as u32).collect();
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ball_around, lattice_box};

    #[test]
    fn singleton_and_ball() {
        let g = lattice_box(&[15, 15]);
        let one = g.vertex_set([g.origin()]);
        let d = geometry_check(&g, &one, 1.0).unwrap();
        assert!(d.verdict && d.diameter == 0);
        let b = ball_around(&g, g.origin(), 2);
        let d = geometry_check(&g, &b, 1.0).unwrap();
        assert_eq!((d.boundary, d.diameter), (20, 4));
        assert!(d.verdict);
        assert!(d.family_length >= 2.0);
        let iv = d.intervals();
        for w in iv.windows(2) {
            assert!(w[0].1 < w[1].0);
        }
    }
}
