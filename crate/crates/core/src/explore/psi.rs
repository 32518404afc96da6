//! Touch counts `Ψ_R(S)`: edges of `∂S` whose outer endpoint joins the sphere of
//! radius `R + 1` off `S`.

use serde::Serialize;

use crate::cluster::Explorer;
use crate::curve::{CurveKind, TailCurve};
use crate::error::{Error, Result};
use crate::graph::{boundaries, distances_from, FiniteGraph};
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::{EdgeId, VertexId, VertexSet};

/// Truncation data for one `S` over an ascending radius schedule.
pub struct PsiProbe {
    s: VertexSet,
    boundary: Vec<(EdgeId, VertexId)>,
    dist: Vec<u32>,
    radii: Vec<u32>,
    ex: Explorer,
}

impl PsiProbe {
    pub fn new(g: &FiniteGraph, s: &VertexSet, radii: &[u32]) -> Result<Self> {
        if s.is_empty() || radii.is_empty() {
            return Err(Error::invalid("S and the radius schedule must be nonempty"));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("radius schedule must be strictly increasing"));
        }
        let dist = distances_from(g, &g.vertex_set([g.origin()]), None);
        let far = *radii.last().unwrap() + 1;
        if !dist.contains(&far) {
            return Err(Error::precondition(format!("sphere of radius {far} lies outside the graph")));
        }
        if s.iter().any(|v| dist[v.index()] > radii[0]) {
            return Err(Error::precondition("S touches the truncation boundary"));
        }
        let b = boundaries(g, s);
        let boundary = b
            .edge_boundary
            .iter()
            .map(|e| {
                let (a, c) = g.endpoints(e);
                (e, if s.contains(a) { c } else { a })
            })
            .collect();
        Ok(PsiProbe { s: s.clone(), boundary, dist, radii: radii.to_vec(), ex: Explorer::new(g.vertex_count()) })
    }

    pub fn boundary_size(&self) -> usize {
        self.boundary.len()
    }

    pub fn radii(&self) -> &[u32] {
        &self.radii
    }

    /// `Ψ_R` for every radius of the schedule, with `open` deciding edge states.
    pub fn evaluate(&mut self, g: &FiniteGraph, open: impl Fn(EdgeId) -> bool) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.radii.len());
        for &r in &self.radii {
            let shell = r + 1;
            let dist = &self.dist;
            let s = &self.s;
            self.ex.reset();
            self.ex.search(
                g,
                (0..g.vertex_count() as u32).map(VertexId).filter(|v| dist[v.index()] == shell),
                |_, w, e| dist[w.index()] <= shell && !s.contains(w) && open(e),
                |_| false,
            );
            let ex = &self.ex;
            out.push(self.boundary.iter().filter(|(_, w)| ex.is_marked(*w)).count());
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiEstimate {
    pub q: f64,
    pub samples: u64,
    pub seed: u64,
    /// `|∂S|`.
    pub boundary: usize,
    /// One curve over `t = 1..=|∂S|` per radius.
    pub curves: Vec<TailCurve>,
    pub means: Vec<f64>,
    /// The last two curves agree within their confidence intervals.
    pub stabilized: bool,
    /// `Ψ_R` was nonincreasing in `R` in every sample.
    pub monotone_in_r: bool,
}

/// Labels of sample `i` for touch estimation; shared across `q` and `R`.
pub fn psi_labels(seed: u64, sample: u64) -> EdgeLabels {
    EdgeLabels::for_purpose(seed, "psi", &[sample])
}

/// Estimates `P_q(Ψ_R(S) ≥ t)` for every `R` in `radii`.
pub fn estimate_psi(s: &VertexSet, q: f64, g: &FiniteGraph, radii: &[u32], samples: u64, seed: u64) -> Result<PsiEstimate> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::invalid("q must lie in [0, 1]"));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be positive"));
    }
    let mut probe = PsiProbe::new(g, s, radii)?;
    let m = probe.boundary_size();
    let thr = Threshold::from_prob(q);
    // counts[r][t-1] = #{samples with Ψ_R ≥ t}
    let mut counts = vec![vec![0u64; m]; radii.len()];
    let mut sums = vec![0u64; radii.len()];
    let mut monotone = true;
    for i in 0..samples {
        let labels = psi_labels(seed, i);
        let vals = probe.evaluate(g, |e| labels.is_open(e, thr));
        monotone &= vals.windows(2).all(|w| w[1] <= w[0]);
        for (ri, &v) in vals.iter().enumerate() {
            sums[ri] += v as u64;
            for c in counts[ri].iter_mut().take(v) {
                *c += 1;
            }
        }
    }
    let grid: Vec<u64> = (1..=m as u64).collect();
    let curves: Vec<TailCurve> = radii
        .iter()
        .zip(&counts)
        .map(|(&r, c)| TailCurve::from_counts(CurveKind::Psi, q, r, samples, seed, &grid, c))
        .collect();
    let stabilized = curves.len() >= 2 && {
        let (a, b) = (&curves[curves.len() - 2], &curves[curves.len() - 1]);
        a.points
            .iter()
            .zip(&b.points)
            .all(|(x, y)| (x.estimate - y.estimate).abs() <= x.ci_halfwidth + y.ci_halfwidth)
    };
    Ok(PsiEstimate {
        q,
        samples,
        seed,
        boundary: m,
        means: sums.iter().map(|&x| x as f64 / samples as f64).collect(),
        curves,
        stabilized,
        monotone_in_r: monotone,
    })
}
