//! Density scan: the sets `𝒞_i` of vertices joined to `B_k(ni)` inside `B_{Cn}(ni)`,
//! their densities in `B_{2Cn}` and their pairwise intersections.

use serde::Serialize;

use super::block::{check_p, per_sample, spread_constant};
use super::geometry::{l1_ball_volume, on_axis, Host};
use crate::cluster::Explorer;
use crate::error::{Error, Result};
use crate::rng::{EdgeLabels, Threshold};
use crate::stats::{mean_and_se, Proportion};

#[derive(Clone, Debug, Serialize)]
pub struct DensityRow {
    pub n: u32,
    pub c: u32,
    pub delta: f64,
    pub samples: u64,
    /// `|B_{2Cn}|`.
    pub box_volume: u128,
    /// Mean and standard error of `|𝒞_i| / |B_{2Cn}|` per `i`.
    pub density_mean: Vec<f64>,
    pub density_se: Vec<f64>,
    /// Mean of `|𝒞_i| / |B_{Cn}|`, the share of its own ball that `𝒞_i` fills.
    pub fill_mean: Vec<f64>,
    /// Every `𝒞_i` has density above `δ`.
    pub all_dense: Proportion,
    /// Some pair `𝒞_i, 𝒞_j` intersects.
    pub some_pair_meets: Proportion,
    /// `pair_meets[i][j]`: frequency of `𝒞_i ∩ 𝒞_j ≠ ∅`.
    pub pair_meets: Vec<Vec<f64>>,
    /// Samples that were all dense yet pairwise disjoint.
    pub violations: u64,
}

struct Outcome {
    sizes: Vec<usize>,
    pairs: Vec<bool>,
}

/// One row per `n` of the grid, with `C = 2⌈1/δ⌉`.
pub fn gm_density_scan(p: f64, d: usize, k: u32, n_grid: &[u32], delta: f64, samples: u64, seed: u64) -> Result<Vec<DensityRow>> {
    check_p(p, samples)?;
    let c = spread_constant(delta)?;
    if c > 64 {
        return Err(Error::invalid("delta below 1/32 needs more than 64 sets"));
    }
    if d == 0 || n_grid.is_empty() {
        return Err(Error::invalid("need d >= 1 and a nonempty n grid"));
    }
    n_grid.iter().map(|&n| density_row(p, d, k, n, c, delta, samples, seed)).collect()
}

#[allow(clippy::too_many_arguments)]
fn density_row(p: f64, d: usize, k: u32, n: u32, c: u32, delta: f64, samples: u64, seed: u64) -> Result<DensityRow> {
    let big = c * n;
    if k > big {
        return Err(Error::precondition("B_k must fit inside B_{Cn}"));
    }
    let cs = c as usize;
    let centres: Vec<Vec<i32>> = (0..c).map(|i| on_axis(d, (n * i) as i32)).collect();
    let host = Host::covering(d, &centres, big)?;
    let seeds = centres.iter().map(|x| host.ball(x, k)).collect::<Result<Vec<_>>>()?;
    let box_volume = l1_ball_volume(d, 2 * big);
    let thr = Threshold::from_prob(p);
    let nv = host.graph.vertex_count();
    let outcomes: Vec<Outcome> = per_sample(
        samples,
        || (Explorer::new(nv), vec![0u64; nv]),
        |s, (ex, mask)| {
            let labels = EdgeLabels::for_purpose(seed, "density", &[u64::from(n), s]);
            let mut sizes = Vec::with_capacity(cs);
            let mut pairs = vec![false; cs * cs];
            let mut touched = Vec::new();
            for (i, x) in centres.iter().enumerate() {
                ex.reset();
                ex.search(&host.graph, seeds[i].iter().copied(), |_, w, e| host.l1(w, x) <= big && labels.is_open(e, thr), |_| false);
                sizes.push(ex.visited().len());
                for &v in ex.visited() {
                    let m = &mut mask[v as usize];
                    if *m == 0 {
                        touched.push(v);
                    }
                    let mut rest = *m;
                    while rest != 0 {
                        let j = rest.trailing_zeros() as usize;
                        pairs[j * cs + i] = true;
                        pairs[i * cs + j] = true;
                        rest &= rest - 1;
                    }
                    *m |= 1 << i;
                }
            }
            for v in touched {
                mask[v as usize] = 0;
            }
            Outcome { sizes, pairs }
        },
    );
    let vol = box_volume as f64;
    let mut density_mean = Vec::with_capacity(cs);
    let mut density_se = Vec::with_capacity(cs);
    let own = l1_ball_volume(d, big) as f64;
    for i in 0..cs {
        let xs: Vec<f64> = outcomes.iter().map(|o| o.sizes[i] as f64 / vol).collect();
        let (m, se) = mean_and_se(&xs);
        density_mean.push(m);
        density_se.push(se);
    }
    let fill_mean = density_mean.iter().map(|m| m * vol / own).collect();
    let (mut dense, mut meets, mut violations) = (0, 0, 0);
    let mut pair_meets = vec![vec![0.0; cs]; cs];
    for o in &outcomes {
        let all = o.sizes.iter().all(|&s| s as f64 > delta * vol);
        let any = o.pairs.iter().any(|&b| b);
        dense += u64::from(all);
        meets += u64::from(any);
        violations += u64::from(all && !any);
        for i in 0..cs {
            for j in 0..cs {
                pair_meets[i][j] += f64::from(u8::from(o.pairs[i * cs + j])) / samples as f64;
            }
        }
    }
    Ok(DensityRow {
        n,
        c,
        delta,
        samples,
        box_volume,
        density_mean,
        density_se,
        fill_mean,
        all_dense: Proportion::new(dense, samples),
        some_pair_meets: Proportion::new(meets, samples),
        pair_meets,
        violations,
    })
}
