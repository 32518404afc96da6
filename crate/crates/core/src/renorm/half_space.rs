//! Share of the sphere of radius `2n` reached from `B_n` inside the half-space `x₁ ≥ 0`.

use serde::Serialize;

use super::block::{check_p, per_sample};
use super::geometry::Host;
use crate::cluster::Explorer;
use crate::error::{Error, Result};
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::VertexId;
use crate::stats::{mean_and_se, Proportion};

#[derive(Clone, Debug, Serialize)]
pub struct HalfSpaceReport {
    pub d: usize,
    pub p: f64,
    pub n: u32,
    pub samples: u64,
    pub seed: u64,
    /// Vertices of the sphere inside the half-space.
    pub sphere_size: usize,
    pub mean_fraction: f64,
    pub std_err: f64,
    pub c0: f64,
    /// Frequency of a fraction at least `c0`.
    pub at_least_c0: Proportion,
}

pub fn half_space_touch_fraction(d: usize, p: f64, n: u32, c0: f64, samples: u64, seed: u64) -> Result<HalfSpaceReport> {
    check_p(p, samples)?;
    if d < 1 || n < 1 {
        return Err(Error::invalid("need d >= 1 and n >= 1"));
    }
    let o = vec![0; d];
    let host = Host::covering(d, std::slice::from_ref(&o), 2 * n)?;
    let inside = |v: VertexId| host.coord(v, 0) >= 0 && host.l1(v, &o) <= 2 * n;
    let sources: Vec<VertexId> = host.ball(&o, n)?.into_iter().filter(|&v| host.coord(v, 0) >= 0).collect();
    let sphere: Vec<VertexId> = host.ball(&o, 2 * n)?.into_iter().filter(|&v| inside(v) && host.l1(v, &o) == 2 * n).collect();
    let thr = Threshold::from_prob(p);
    let fractions: Vec<f64> = per_sample(
        samples,
        || Explorer::new(host.graph.vertex_count()),
        |i, ex| {
            let labels = EdgeLabels::for_purpose(seed, "half-space", &[i]);
            ex.reset();
            ex.search(&host.graph, sources.iter().copied(), |_, w, e| inside(w) && labels.is_open(e, thr), |_| false);
            sphere.iter().filter(|&&v| ex.is_marked(v)).count() as f64 / sphere.len() as f64
        },
    );
    let (mean_fraction, std_err) = mean_and_se(&fractions);
    let hits = fractions.iter().filter(|&&f| f >= c0).count() as u64;
    Ok(HalfSpaceReport {
        d,
        p,
        n,
        samples,
        seed,
        sphere_size: sphere.len(),
        mean_fraction,
        std_err,
        c0,
        at_least_c0: Proportion::new(hits, samples),
    })
}
