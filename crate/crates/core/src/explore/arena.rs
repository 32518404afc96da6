use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{ball_around, boundaries, distances_from, FiniteGraph};
use crate::sets::{EdgeSet, VertexId, VertexSet};

/// Finite stage of one exploration: `Λ = B_{R+1}`, the target `S ⊆ B_R`, the anchor
/// `∂⁻Λ` and the touch target `t`.
#[derive(Clone, Debug)]
pub struct Arena {
    pub graph: Arc<FiniteGraph>,
    pub radius: u32,
    pub lambda: VertexSet,
    pub s: VertexSet,
    /// `∂⁻Λ`.
    pub anchor: VertexSet,
    pub t: usize,
    /// `Λ \ S`.
    pub working: VertexSet,
    /// Edges with both endpoints in `Λ \ S`; the support of every layer.
    pub domain: EdgeSet,
    /// `∂S`.
    pub boundary_s: EdgeSet,
    /// `∂⁺S`.
    pub outer_s: VertexSet,
}

impl Arena {
    pub fn new(graph: Arc<FiniteGraph>, s: VertexSet, radius: u32, t: usize) -> Result<Self> {
        let g = &*graph;
        if s.is_empty() {
            return Err(Error::invalid("S must be nonempty"));
        }
        if t == 0 {
            return Err(Error::invalid("touch target t must be at least 1"));
        }
        let dist = distances_from(g, &g.vertex_set([g.origin()]), Some(radius + 1));
        if s.iter().any(|v| dist[v.index()] > radius) {
            return Err(Error::precondition("S must lie inside B_R"));
        }
        let lambda = ball_around(g, g.origin(), radius + 1);
        let mut anchor = g.vertex_set(lambda.iter().filter(|v| dist[v.index()] == radius + 1));
        // Λ vertices on the free border of a finite host also face "infinity".
        let d = g.degree_bound();
        for v in lambda.iter() {
            if g.degree(v) < d || g.neighbors(v).iter().any(|&w| !lambda.contains(VertexId(w))) {
                anchor.insert(v);
            }
        }
        if !anchor.is_disjoint(&s) {
            return Err(Error::precondition("S meets the inner boundary of Lambda"));
        }
        if anchor.is_empty() {
            return Err(Error::precondition("Lambda has an empty inner boundary"));
        }
        let working = lambda.difference(&s);
        let domain = g.interior_edges(&working);
        let b = boundaries(g, &s);
        Ok(Arena {
            graph,
            radius,
            lambda,
            s,
            anchor,
            t,
            working,
            domain,
            boundary_s: b.edge_boundary,
            outer_s: b.outer,
        })
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    /// `|∂S ∩ ∂K|` for `K ⊆ Λ \ S`.
    pub fn touches(&self, k: &VertexSet) -> usize {
        self.boundary_s
            .iter()
            .filter(|&e| {
                let (a, b) = self.graph.endpoints(e);
                k.contains(a) || k.contains(b)
            })
            .count()
    }
}

/// Box `[-h, h]^2` of side `2h + 1` around the origin of a lattice graph.
pub fn centred_block(g: &FiniteGraph, half_side: i32) -> Result<VertexSet> {
    let lat = g.lattice().ok_or_else(|| Error::invalid("centred_block needs a lattice graph"))?;
    let dim = lat.dim();
    let mut out = g.empty_vertex_set();
    let mut x = vec![-half_side; dim];
    loop {
        let v = g.vertex_at(&x).ok_or_else(|| Error::invalid("block does not fit in the graph"))?;
        out.insert(v);
        let mut axis = 0;
        loop {
            if axis == dim {
                return Ok(out);
            }
            x[axis] += 1;
            if x[axis] <= half_side {
                break;
            }
            x[axis] = -half_side;
            axis += 1;
        }
    }
}
