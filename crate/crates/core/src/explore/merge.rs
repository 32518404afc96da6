//! The merge bound: a `q`-cluster rarely touches the `ω`-infinite cluster in `t` places
//! while staying separate from it under the extra layer `ζ ~ ε`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cluster::Explorer;
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::rng::{EdgeLabels, Threshold};
use crate::sets::{EdgeId, VertexSet};
use crate::stats::Proportion;

/// `ε` with `(1 - q)(1 - ε) = 1 - p`, for `p ≥ q`.
pub fn merge_epsilon(p: f64, q: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&q) || !(0.0..=1.0).contains(&p) || p < q {
        return Err(Error::invalid("merge bound needs 0 <= q <= p <= 1 and q < 1"));
    }
    Ok((1.0 - (1.0 - p) / (1.0 - q)).clamp(0.0, 1.0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeOutcome {
    /// `𝒦`: vertices `ω`-connected to the shell.
    pub k: VertexSet,
    /// `𝓜`: cluster of `S \ 𝒦` in `ω ∪ ζ` minus the edges touching `𝒦`.
    pub m: VertexSet,
    /// `∂𝒦 ∩ ∂𝓜`.
    pub contact: Vec<EdgeId>,
    pub k_meets_s: bool,
    pub zeta_on_contact: bool,
}

impl MergeOutcome {
    pub fn in_event(&self, t: usize) -> bool {
        !self.k_meets_s && self.contact.len() >= t && !self.zeta_on_contact
    }
}

pub fn merge_outcome(
    g: &FiniteGraph,
    s: &VertexSet,
    shell: &VertexSet,
    omega: impl Fn(EdgeId) -> bool,
    zeta: impl Fn(EdgeId) -> bool,
    ex: &mut Explorer,
) -> MergeOutcome {
    ex.reset();
    ex.search(g, shell.iter(), |_, _, e| omega(e), |_| false);
    let k = ex.visited_set(g);
    ex.reset();
    ex.search(
        g,
        s.iter().filter(|v| !k.contains(*v)),
        |v, w, e| !k.contains(v) && !k.contains(w) && (omega(e) || zeta(e)),
        |_| false,
    );
    let m = ex.visited_set(g);
    let contact: Vec<EdgeId> = g
        .edges()
        .filter(|&(_, a, b)| (k.contains(a) && m.contains(b)) || (k.contains(b) && m.contains(a)))
        .map(|(e, _, _)| e)
        .collect();
    let zeta_on_contact = contact.iter().any(|&e| zeta(e));
    MergeOutcome { k_meets_s: !k.is_disjoint(s), k, m, contact, zeta_on_contact }
}

#[derive(Clone, Debug, Serialize)]
pub struct MergeReport {
    pub p: f64,
    pub q: f64,
    pub epsilon: f64,
    pub t: usize,
    pub frequency: Proportion,
    /// `(1 - ε)^t`.
    pub bound: f64,
    /// Frequency at most bound plus three standard errors.
    pub consistent: bool,
}

/// Monte Carlo frequency of the merge event with `ω ~ q`, `ζ ~ ε` on all of `g`.
#[allow(clippy::too_many_arguments)]
pub fn verify_merge_bound(
    g: &FiniteGraph,
    s: &VertexSet,
    shell: &VertexSet,
    p: f64,
    q: f64,
    t: usize,
    samples: u64,
    seed: u64,
) -> Result<MergeReport> {
    let epsilon = merge_epsilon(p, q)?;
    if s.is_empty() || shell.is_empty() || samples == 0 {
        return Err(Error::invalid("S, the shell and the sample budget must be nonempty"));
    }
    let (tq, te) = (Threshold::from_prob(q), Threshold::from_prob(epsilon));
    let mut ex = Explorer::new(g.vertex_count());
    let mut hits = 0;
    for i in 0..samples {
        let om = EdgeLabels::for_purpose(seed, "merge-omega", &[i]);
        let ze = EdgeLabels::for_purpose(seed, "merge-zeta", &[i]);
        let out = merge_outcome(g, s, shell, |e| om.is_open(e, tq), |e| ze.is_open(e, te), &mut ex);
        if out.in_event(t) {
            hits += 1;
        }
    }
    let frequency = Proportion::new(hits, samples);
    let bound = (1.0 - epsilon).powi(t as i32);
    let consistent = frequency.estimate <= bound + 3.0 * frequency.std_err();
    Ok(MergeReport { p, q, epsilon, t, frequency, bound, consistent })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactMergeReport {
    pub epsilon: f64,
    pub t: usize,
    /// Exact `P(𝓔)`.
    pub probability: f64,
    pub bound: f64,
    /// Number of `(𝒦, 𝓜)` classes meeting the conditioning.
    pub classes: usize,
    /// `max |P(𝓔 | 𝒦, 𝓜) - (1 - ε)^{|∂𝒦 ∩ ∂𝓜|}|` over those classes.
    pub identity_residual: f64,
}

/// Exact enumeration over both layers; feasible for up to 12 edges.
pub fn exact_merge(g: &FiniteGraph, s: &VertexSet, shell: &VertexSet, p: f64, q: f64, t: usize) -> Result<ExactMergeReport> {
    let epsilon = merge_epsilon(p, q)?;
    let m = g.edge_count();
    if m > 12 {
        return Err(Error::invalid("exact merge enumeration supports at most 12 edges"));
    }
    let weight = |mask: u32, pr: f64| {
        (0..m).map(|i| if mask >> i & 1 == 1 { pr } else { 1.0 - pr }).product::<f64>()
    };
    let mut ex = Explorer::new(g.vertex_count());
    let mut probability = 0.0;
    // (K, M) -> (P(K, M), P(K, M, E), contact size)
    let mut classes: BTreeMap<(Vec<u32>, Vec<u32>), (f64, f64, usize)> = BTreeMap::new();
    for om in 0u32..1 << m {
        let wo = weight(om, q);
        for ze in 0u32..1 << m {
            let w = wo * weight(ze, epsilon);
            let out = merge_outcome(g, s, shell, |e| om >> e.0 & 1 == 1, |e| ze >> e.0 & 1 == 1, &mut ex);
            let event = out.in_event(t);
            if event {
                probability += w;
            }
            if !out.k_meets_s && out.contact.len() >= t {
                let key = (out.k.iter().map(|v| v.0).collect(), out.m.iter().map(|v| v.0).collect());
                let entry = classes.entry(key).or_insert((0.0, 0.0, out.contact.len()));
                entry.0 += w;
                if event {
                    entry.1 += w;
                }
            }
        }
    }
    let identity_residual = classes
        .values()
        .filter(|c| c.0 > 0.0)
        .map(|&(pk, pe, n)| (pe / pk - (1.0 - epsilon).powi(n as i32)).abs())
        .fold(0.0, f64::max);
    Ok(ExactMergeReport {
        epsilon,
        t,
        probability,
        bound: (1.0 - epsilon).powi(t as i32),
        classes: classes.len(),
        identity_residual,
    })
}

/// The eight-edge test graph: `0-1, 0-2, 1-2, 1-3, 2-4, 3-5, 4-5, 3-4`, with `S = {0}` and
/// shell `{5}`.
pub fn eight_edge_instance() -> (FiniteGraph, VertexSet, VertexSet) {
    let edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 5), (4, 5), (3, 4)];
    let g = FiniteGraph::from_edges(6, &edges, 3, crate::sets::VertexId(0)).expect("valid edge list");
    let s = g.vertex_set([crate::sets::VertexId(0)]);
    let shell = g.vertex_set([crate::sets::VertexId(5)]);
    (g, s, shell)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_parameters_give_trivial_bound() {
        let (g, s, shell) = eight_edge_instance();
        let r = exact_merge(&g, &s, &shell, 0.5, 0.5, 1).unwrap();
        assert_eq!(r.bound, 1.0);
        assert!(r.probability <= 1.0);
    }

    #[test]
    fn wrong_roles_rejected() {
        assert!(merge_epsilon(0.3, 0.6).is_err());
    }
}
