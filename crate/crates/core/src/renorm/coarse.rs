//! The coarse field `ζ(uv)` on a `W × W` window of `ℤ²`, one fine sample per coarse sample.

use serde::Serialize;

use super::block::{check_p, per_sample, uniqueness_holds};
use super::geometry::{connects_within, Host};
use crate::cluster::{Explorer, UnionFind};
use crate::error::{Error, Result};
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::{EdgeId, VertexId};
use crate::stats::mean_and_se;

/// Fine realisation of a coarse window: site centres `n·u` embedded in the first two axes.
pub struct CoarseGrid {
    pub host: Host,
    pub k: u32,
    pub n: u32,
    pub c: u32,
    pub window: usize,
    centres: Vec<Vec<i32>>,
    k_balls: Vec<Vec<VertexId>>,
    /// Coarse edges `(u, v)` as site indices, `u` the lower-left endpoint.
    pub edges: Vec<(usize, usize)>,
}

impl CoarseGrid {
    pub fn new(d: usize, k: u32, n: u32, c: u32, window: usize) -> Result<Self> {
        if d < 2 || window < 2 {
            return Err(Error::invalid("coarse graining needs d >= 2 and a window of side >= 2"));
        }
        if k >= n {
            return Err(Error::precondition("the uniqueness event needs k < n"));
        }
        if n + k > c * n {
            return Err(Error::precondition("nv + B_k must fit inside nu + B_{Cn}"));
        }
        let w = window as i32;
        let site = |x: i32, y: i32| (x * w + y) as usize;
        let mut centres = Vec::with_capacity(window * window);
        for x in 0..w {
            for y in 0..w {
                let mut c0 = vec![0; d];
                c0[0] = x * n as i32;
                c0[1] = y * n as i32;
                centres.push(c0);
            }
        }
        let mut edges = Vec::new();
        for x in 0..w {
            for y in 0..w {
                if x + 1 < w {
                    edges.push((site(x, y), site(x + 1, y)));
                }
                if y + 1 < w {
                    edges.push((site(x, y), site(x, y + 1)));
                }
            }
        }
        let host = Host::covering(d, &centres, c * n)?;
        let k_balls = centres.iter().map(|x| host.ball(x, k)).collect::<Result<_>>()?;
        Ok(CoarseGrid { host, k, n, c, window, centres, k_balls, edges })
    }

    /// `ζ` for every coarse edge under the fine configuration `open`.
    pub fn zeta(&self, ex: &mut Explorer, open: impl Fn(EdgeId) -> bool) -> Vec<bool> {
        let u: Vec<bool> = self
            .centres
            .iter()
            .zip(&self.k_balls)
            .map(|(x, kb)| uniqueness_holds(&self.host, ex, x, kb, self.n, &open))
            .collect();
        let big = self.c * self.n;
        self.edges
            .iter()
            .map(|&(a, b)| {
                u[a] && u[b] && {
                    let tc = &self.centres[b];
                    connects_within(&self.host, ex, &self.k_balls[a], |w| self.host.l1(w, tc) <= self.k, &self.centres[a], big, &open)
                }
            })
            .collect()
    }

    /// Whether fine edge `e` lies inside `nu + B_{Cn}` or `nv + B_{Cn}` for coarse edge `i`.
    pub fn in_support(&self, i: usize, e: EdgeId) -> bool {
        let (a, b) = self.host.graph.endpoints(e);
        let big = self.c * self.n;
        let (u, v) = self.edges[i];
        [u, v].iter().any(|&s| {
            let x = &self.centres[s];
            self.host.l1(a, x) <= big && self.host.l1(b, x) <= big
        })
    }

    /// Coarse distance: least `ℓ∞` distance between endpoints.
    pub fn distance(&self, i: usize, j: usize) -> u32 {
        let w = self.window;
        let xy = |s: usize| ((s / w) as i64, (s % w) as i64);
        let (a, b) = self.edges[i];
        let (c, d) = self.edges[j];
        let mut best = u32::MAX;
        for s in [a, b] {
            for t in [c, d] {
                let (p, q) = (xy(s), xy(t));
                best = best.min((p.0 - q.0).abs().max((p.1 - q.1).abs()) as u32);
            }
        }
        best
    }

    /// Largest component of the open coarse subgraph, as a fraction of the sites.
    pub fn giant_fraction(&self, zeta: &[bool]) -> f64 {
        let mut uf = UnionFind::new(self.window * self.window);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if zeta[i] {
                uf.union(a as u32, b as u32);
            }
        }
        let best = (0..uf.len() as u32).map(|s| uf.set_size(s)).max().unwrap_or(0);
        best as f64 / uf.len() as f64
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CovarianceClass {
    /// Coarse distance, or `None` for the pooled class beyond `3C`.
    pub distance: Option<u32>,
    pub pairs: usize,
    pub covariance: f64,
    pub std_err: f64,
}

impl CovarianceClass {
    pub fn within_sigmas(&self, k: f64) -> bool {
        self.covariance.abs() <= k * self.std_err
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoarseConfig {
    pub p: f64,
    pub k: u32,
    pub n: u32,
    pub c: u32,
    pub window: usize,
    pub samples: u64,
    pub seed: u64,
    pub edges: Vec<(usize, usize)>,
    pub marginals: Vec<f64>,
    pub min_marginal: f64,
    pub mean_marginal: f64,
    /// Distances `1`, `2`, `3C` and everything beyond `3C`.
    pub covariances: Vec<CovarianceClass>,
    pub giant_fraction: f64,
    /// `ζ` of the first sample, for plotting.
    pub snapshot: Vec<bool>,
}

impl CoarseConfig {
    pub fn far_class(&self) -> &CovarianceClass {
        self.covariances.last().expect("far class present")
    }
}

/// Samples `ζ` on a `window × window` block of sites in `ℤ^d`.
#[allow(clippy::too_many_arguments)]
pub fn coarse_grain(p: f64, d: usize, k: u32, n: u32, c: u32, window: usize, samples: u64, seed: u64) -> Result<CoarseConfig> {
    check_p(p, samples)?;
    let grid = CoarseGrid::new(d, k, n, c, window)?;
    let thr = Threshold::from_prob(p);
    let draws: Vec<Vec<bool>> = per_sample(
        samples,
        || Explorer::new(grid.host.graph.vertex_count()),
        |i, ex| {
            let labels = EdgeLabels::for_purpose(seed, "coarse", &[i]);
            grid.zeta(ex, |e| labels.is_open(e, thr))
        },
    );
    let m = grid.edges.len();
    let sf = samples as f64;
    let marginals: Vec<f64> =
        (0..m).map(|j| draws.iter().filter(|z| z[j]).count() as f64 / sf).collect();
    let far = 3 * c;
    let mut classes: Vec<(Option<u32>, Vec<(usize, usize)>)> =
        [1, 2, far].into_iter().map(|d| (Some(d), Vec::new())).collect();
    classes.dedup_by_key(|c| c.0);
    classes.push((None, Vec::new()));
    for i in 0..m {
        for j in i + 1..m {
            let dist = grid.distance(i, j);
            let slot = if dist > far { classes.len() - 1 } else {
                match classes.iter().position(|c| c.0 == Some(dist)) {
                    Some(s) => s,
                    None => continue,
                }
            };
            classes[slot].1.push((i, j));
        }
    }
    let covariances = classes
        .into_iter()
        .map(|(distance, pairs)| {
            let per: Vec<f64> = draws
                .iter()
                .map(|z| {
                    let x = |j: usize| f64::from(u8::from(z[j])) - marginals[j];
                    pairs.iter().map(|&(a, b)| x(a) * x(b)).sum::<f64>() / pairs.len().max(1) as f64
                })
                .collect();
            let (covariance, std_err) = mean_and_se(&per);
            CovarianceClass { distance, pairs: pairs.len(), covariance, std_err }
        })
        .collect();
    let giant = draws.iter().map(|z| grid.giant_fraction(z)).sum::<f64>() / sf;
    Ok(CoarseConfig {
        p,
        k,
        n,
        c,
        window,
        samples,
        seed,
        edges: grid.edges.clone(),
        min_marginal: marginals.iter().copied().fold(1.0, f64::min),
        mean_marginal: marginals.iter().sum::<f64>() / m as f64,
        marginals,
        covariances,
        giant_fraction: giant,
        snapshot: draws[0].clone(),
    })
}
