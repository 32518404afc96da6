//! `Φ(W)`: the smallest edge cutset separating `W` from a far shell, via unit max-flow.

use serde::Serialize;

use super::maxflow::{FlowNetwork, INF};
use crate::error::{Error, Result};
use crate::graph::{distances_from, FiniteGraph, UNREACHABLE};
use crate::sets::{EdgeSet, VertexId, VertexSet};

#[derive(Clone, Debug, Serialize)]
pub struct CutsetCertificate {
    pub value: usize,
    #[serde(skip)]
    pub cutset: EdgeSet,
    /// Cut edges as endpoint pairs.
    #[serde(rename = "cutset")]
    pub cutset_edges: Vec<(u32, u32)>,
    #[serde(skip)]
    pub enclosing_set: VertexSet,
    /// Truncation radius of the reported value.
    #[serde(rename = "R")]
    pub radius: u32,
    pub stabilized: bool,
    /// `(R, value)` for every radius tried.
    pub history: Vec<(u32, usize)>,
}

/// Radii tried: `rad + 2, rad + 4, rad + 8, ...` (`steps` entries).
pub fn radius_schedule(rad: u32, steps: usize) -> Vec<u32> {
    (1..=steps as u32).map(|k| rad + (1 << k)).collect()
}

/// Min cut between `W` and the sphere of radius `R + 1` around the origin, with the
/// cut side restricted to `B_R`. Returns the value and the source side.
pub fn min_cut_at_radius(g: &FiniteGraph, w: &VertexSet, dist: &[u32], radius: u32) -> Result<(usize, VertexSet)> {
    let shell = radius + 1;
    if !dist.contains(&shell) {
        return Err(Error::precondition(format!("truncation shell at distance {shell} lies outside the graph")));
    }
    if w.iter().any(|v| dist[v.index()] >= shell) {
        return Err(Error::precondition("W touches the truncation shell"));
    }
    let mut local = vec![u32::MAX; g.vertex_count()];
    let mut members = Vec::new();
    for (v, &d) in dist.iter().enumerate() {
        if d <= shell {
            local[v] = members.len() as u32;
            members.push(v as u32);
        }
    }
    let src = members.len();
    let sink = src + 1;
    let mut net = FlowNetwork::new(members.len() + 2);
    for (i, &v) in members.iter().enumerate() {
        let vid = VertexId(v);
        if w.contains(vid) {
            net.add_arc(src, i, INF);
        }
        if dist[v as usize] == shell {
            net.add_arc(i, sink, INF);
            continue;
        }
        for &u in g.neighbors(vid) {
            let j = local[u as usize];
            if j != u32::MAX && (j as usize > i || dist[u as usize] == shell) {
                net.add_edge(i, j as usize, 1);
            }
        }
    }
    let value = net.max_flow(src, sink) as usize;
    let side = net.source_side(src);
    let enclosing = g.vertex_set(members.iter().enumerate().filter(|(i, _)| side[*i]).map(|(_, &v)| VertexId(v)));
    Ok((value, enclosing))
}

/// `Φ(W)` with the truncation swept over `radii` (ascending). Stabilised means the last
/// two radii gave the same value.
pub fn phi_of_set(g: &FiniteGraph, w: &VertexSet, radii: &[u32]) -> Result<CutsetCertificate> {
    if w.is_empty() {
        return Err(Error::invalid("W must be nonempty"));
    }
    if radii.is_empty() {
        return Err(Error::invalid("empty radius schedule"));
    }
    let dist = distances_from(g, &g.vertex_set([g.origin()]), None);
    if w.iter().any(|v| dist[v.index()] == UNREACHABLE) {
        return Err(Error::precondition("W is not reachable from the origin"));
    }
    let mut history = Vec::new();
    let mut last = None;
    for &r in radii {
        let (value, side) = min_cut_at_radius(g, w, &dist, r)?;
        if let Some((v, _)) = &last {
            debug_assert!(value <= *v, "min cut grew with the truncation radius");
        }
        history.push((r, value));
        last = Some((value, side));
    }
    let (value, enclosing_set) = last.unwrap();
    let cutset = crate::graph::boundaries(g, &enclosing_set).edge_boundary;
    assert_eq!(cutset.len(), value, "min cut must equal the boundary of the source side");
    let cutset_edges = cutset
        .iter()
        .map(|e| {
            let (a, b) = g.endpoints(e);
            (a.0, b.0)
        })
        .collect();
    let stabilized = history.len() >= 2 && history[history.len() - 1].1 == history[history.len() - 2].1;
    Ok(CutsetCertificate {
        value,
        cutset,
        cutset_edges,
        enclosing_set,
        radius: *radii.last().unwrap(),
        stabilized,
        history,
    })
}

/// `max dist(o, w)` over `w ∈ W`.
pub fn radius_of(g: &FiniteGraph, w: &VertexSet) -> Option<u32> {
    let dist = distances_from(g, &g.vertex_set([g.origin()]), None);
    w.iter().map(|v| dist[v.index()]).max().filter(|&d| d != UNREACHABLE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, lattice_box, GraphSpec};

    #[test]
    fn origin_and_pair_in_square_lattice() {
        let g = lattice_box(&[41, 41]);
        let o = g.origin();
        let w = g.vertex_set([o]);
        let c = phi_of_set(&g, &w, &radius_schedule(0, 3)).unwrap();
        assert_eq!(c.value, 4);
        assert!(c.stabilized);
        let e1 = g.vertex_at(&[1, 0]).unwrap();
        let pair = g.vertex_set([o, e1]);
        let c = phi_of_set(&g, &pair, &radius_schedule(1, 2)).unwrap();
        assert_eq!(c.value, 6);
        assert!(c.stabilized);
        assert!(pair.is_subset(&c.enclosing_set));
    }

    #[test]
    fn tree_root() {
        let g = generate(&GraphSpec::Tree { degree: 3, depth: 8 }).unwrap();
        let c = phi_of_set(&g, &g.vertex_set([g.origin()]), &radius_schedule(0, 2)).unwrap();
        assert_eq!(c.value, 3);
    }

    #[test]
    fn shell_outside_graph_is_rejected() {
        let g = lattice_box(&[5, 5]);
        assert!(phi_of_set(&g, &g.vertex_set([g.origin()]), &[8]).is_err());
    }
}
