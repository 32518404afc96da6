//! Block events: connection of two `k`-balls inside a `Cn`-ball, and uniqueness of the
//! crossing cluster of a ball.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::geometry::{connects_within, on_axis, Host};
use crate::cluster::Explorer;
use crate::error::{Error, Result};
use crate::explore::Mode;
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::{EdgeId, VertexId};
use crate::stats::Proportion;

/// Scales of one renormalization step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockParams {
    pub d: usize,
    pub k: u32,
    pub n: u32,
    pub c: u32,
    pub epsilon: f64,
    /// `ε^{C²} / C`.
    pub eta_prime: f64,
    pub mode: Mode,
}

impl BlockParams {
    pub fn new(d: usize, k: u32, n: u32, c: u32, epsilon: f64, mode: Mode) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid("block renormalization needs d >= 2"));
        }
        if c < 2 || k < 1 {
            return Err(Error::invalid("need C >= 2 and k >= 1"));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::invalid("epsilon must lie in (0, 1)"));
        }
        if n + k > c * n {
            return Err(Error::precondition("B_k(n) must fit inside B_{Cn}"));
        }
        let eta_prime = epsilon.powf(f64::from(c) * f64::from(c)) / f64::from(c);
        Ok(BlockParams { d, k, n, c, epsilon, eta_prime, mode })
    }

    /// Scan contexts additionally ask for `n ≥ 3k`.
    pub fn check_scan(&self) -> Result<()> {
        if self.n < 3 * self.k {
            return Err(Error::precondition("scans need n >= 3k"));
        }
        Ok(())
    }
}

/// `C = 2⌈1/δ⌉`.
pub fn spread_constant(delta: f64) -> Result<u32> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta must lie in (0, 1)"));
    }
    let inv = (1.0 / delta).ceil();
    if inv > f64::from(u32::MAX / 2) {
        return Err(Error::invalid("delta too small"));
    }
    Ok(2 * inv as u32)
}

pub(crate) fn check_p(p: f64, samples: u64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("p must lie in [0, 1]"));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be positive"));
    }
    Ok(())
}

/// Runs `f(i, scratch)` for every sample index, in parallel, keeping index order.
pub(crate) fn per_sample<T: Send, S>(samples: u64, init: impl Fn() -> S + Sync + Send, f: impl Fn(u64, &mut S) -> T + Sync + Send) -> Vec<T> {
    (0..samples).into_par_iter().map_init(init, |s, i| f(i, s)).collect()
}

/// Frequency of `B_k ↔ B_k(n)` through open edges inside `B_{Cn}`.
pub fn block_connection_prob(p: f64, k: u32, n: u32, c: u32, d: usize, samples: u64, seed: u64) -> Result<Proportion> {
    check_p(p, samples)?;
    if d == 0 || c == 0 {
        return Err(Error::invalid("need d >= 1 and C >= 1"));
    }
    let big = c * n;
    if n + k > big {
        return Err(Error::precondition(format!("B_{k}(n) leaves B_{{Cn}} (n + k = {} > Cn = {big})", n + k)));
    }
    let o = vec![0; d];
    let host = Host::covering(d, std::slice::from_ref(&o), big)?;
    let from = host.ball(&o, k)?;
    let target = on_axis(d, n as i32);
    let thr = Threshold::from_prob(p);
    let hits = per_sample(
        samples,
        || Explorer::new(host.graph.vertex_count()),
        |i, ex| {
            let labels = EdgeLabels::for_purpose(seed, "block", &[i]);
            connects_within(&host, ex, &from, |w| host.l1(w, &target) <= k, &o, big, |e| labels.is_open(e, thr))
        },
    );
    Ok(Proportion::new(hits.iter().filter(|&&h| h).count() as u64, samples))
}

/// `U` around `centre`: at most one cluster of the configuration restricted to the edges
/// inside `B_{n0}(centre)` meets both `B_k(centre)` and the sphere of radius `n0`.
pub fn uniqueness_holds(host: &Host, ex: &mut Explorer, centre: &[i32], k_ball: &[VertexId], n0: u32, open: impl Fn(EdgeId) -> bool) -> bool {
    ex.reset();
    let mut crossing = 0;
    for &v in k_ball {
        if ex.is_marked(v) {
            continue;
        }
        let start = ex.visited().len();
        ex.search(&host.graph, [v], |_, w, e| host.l1(w, centre) <= n0 && open(e), |_| false);
        if ex.visited()[start..].iter().any(|&w| host.l1(VertexId(w), centre) == n0) {
            crossing += 1;
            if crossing > 1 {
                return false;
            }
        }
    }
    true
}

/// Frequency of `U` with `n0 = n0` around the origin of `ℤ^d`.
pub fn uniqueness_event_prob(p: f64, d: usize, k: u32, n0: u32, samples: u64, seed: u64) -> Result<Proportion> {
    check_p(p, samples)?;
    if d == 0 {
        return Err(Error::invalid("need d >= 1"));
    }
    if k >= n0 {
        return Err(Error::precondition("uniqueness event needs k < n0"));
    }
    let o = vec![0; d];
    let host = Host::covering(d, std::slice::from_ref(&o), n0)?;
    let k_ball = host.ball(&o, k)?;
    let thr = Threshold::from_prob(p);
    let hits = per_sample(
        samples,
        || Explorer::new(host.graph.vertex_count()),
        |i, ex| {
            let labels = EdgeLabels::for_purpose(seed, "uniqueness", &[i]);
            uniqueness_holds(&host, ex, &o, &k_ball, n0, |e| labels.is_open(e, thr))
        },
    );
    Ok(Proportion::new(hits.iter().filter(|&&h| h).count() as u64, samples))
}
