//! Slab crossings: left-right crossings of an `L × L` window of `ℤ² × {-ℓ..ℓ}^{d-2}`.

use serde::Serialize;

use super::block::{check_p, per_sample};
use super::geometry::Host;
use crate::cluster::Explorer;
use crate::error::{Error, Result};
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::VertexId;
use crate::stats::Proportion;

#[derive(Clone, Debug, Serialize)]
pub struct SlabRow {
    pub length: u32,
    /// Crossing frequency at thickness `ℓ`.
    pub crossing: Proportion,
    /// Crossing frequency at thicknesses `0, 1, …, ℓ` on the same labels.
    pub by_thickness: Vec<Proportion>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SlabDiagnostics {
    pub d: usize,
    pub ell: u32,
    pub p: f64,
    pub samples: u64,
    pub seed: u64,
    pub rows: Vec<SlabRow>,
    /// Crossing at thickness `j` implied crossing at `j + 1` in every sample.
    pub monotone_in_thickness: bool,
    /// The Wilson lower bound at the longest window is at least half the estimate at the
    /// shortest one.
    pub non_degenerating: bool,
}

/// Crossings at thicknesses `0..=ell` for one window; entry `j` is the thickness-`j` event.
fn crossings(host: &Host, ex: &mut Explorer, left: &[VertexId], length: u32, ell: u32, open: impl Fn(crate::sets::EdgeId) -> bool) -> Vec<bool> {
    let thick = |v: VertexId, j: u32| (2..host.dim).all(|a| host.coord(v, a).unsigned_abs() <= j);
    let far = length as i32 - 1;
    (0..=ell)
        .map(|j| {
            ex.reset();
            ex.search(
                &host.graph,
                left.iter().copied().filter(|&v| thick(v, j)),
                |_, w, e| thick(w, j) && open(e),
                |w| host.coord(w, 0) == far,
            )
        })
        .collect()
}

pub fn slab_crossing(d: usize, ell: u32, p: f64, lengths: &[u32], samples: u64, seed: u64) -> Result<SlabDiagnostics> {
    check_p(p, samples)?;
    if d < 2 || ell < 1 {
        return Err(Error::invalid("slabs need d >= 2 and thickness >= 1"));
    }
    if lengths.is_empty() || lengths[0] == 0 || lengths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("window lengths must be positive and increasing"));
    }
    let mut rows = Vec::with_capacity(lengths.len());
    let mut monotone = true;
    let thr = Threshold::from_prob(p);
    for &length in lengths {
        let mut lo = vec![0, 0];
        let mut sides = vec![length as usize, length as usize];
        for _ in 2..d {
            lo.push(-(ell as i32));
            sides.push(2 * ell as usize + 1);
        }
        let host = Host::new(&lo, &sides)?;
        let left: Vec<VertexId> = (0..host.graph.vertex_count() as u32).map(VertexId).filter(|&v| host.coord(v, 0) == 0).collect();
        let outcomes: Vec<Vec<bool>> = per_sample(
            samples,
            || Explorer::new(host.graph.vertex_count()),
            |i, ex| {
                let labels = EdgeLabels::for_purpose(seed, "slab", &[u64::from(length), i]);
                crossings(&host, ex, &left, length, ell, |e| labels.is_open(e, thr))
            },
        );
        monotone &= outcomes.iter().all(|o| o.windows(2).all(|w| !w[0] || w[1]));
        let by_thickness: Vec<Proportion> = (0..=ell as usize)
            .map(|j| Proportion::new(outcomes.iter().filter(|o| o[j]).count() as u64, samples))
            .collect();
        rows.push(SlabRow { length, crossing: by_thickness[ell as usize], by_thickness });
    }
    let non_degenerating = rows.last().unwrap().crossing.lower >= 0.5 * rows[0].crossing.estimate && rows[0].crossing.estimate > 0.0;
    Ok(SlabDiagnostics { d, ell, p, samples, seed, rows, monotone_in_thickness: monotone, non_degenerating })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        let one = slab_crossing(3, 1, 1.0, &[2, 4], 5, 1).unwrap();
        assert!(one.rows.iter().all(|r| r.by_thickness.iter().all(|c| c.estimate == 1.0)));
        let zero = slab_crossing(3, 1, 0.0, &[2, 4], 5, 1).unwrap();
        assert!(zero.rows.iter().all(|r| r.crossing.estimate == 0.0));
        assert!(zero.monotone_in_thickness);
        assert!(slab_crossing(3, 1, 0.5, &[4, 4], 5, 1).is_err());
    }

    #[test]
    fn single_column_window_crosses_trivially() {
        let r = slab_crossing(2, 1, 0.0, &[1], 3, 1).unwrap();
        assert_eq!(r.rows[0].crossing.estimate, 1.0);
    }
}
