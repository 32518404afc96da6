//! `ℓ¹` balls of `ℤ^d` realised on a box host that contains them.

use crate::cluster::Explorer;
use crate::error::{Error, Result};
use crate::graph::{lattice_rect, FiniteGraph};
use crate::sets::{EdgeId, VertexId};

/// Box of `ℤ^d` with flat coordinate storage.
pub struct Host {
    pub graph: FiniteGraph,
    pub dim: usize,
    coords: Vec<i32>,
}

/// Hosts above this many vertices are refused.
pub const MAX_HOST_VERTICES: usize = 20_000_000;

impl Host {
    pub fn new(lo: &[i32], sides: &[usize]) -> Result<Self> {
        let volume = sides.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
        match volume {
            Some(v) if v <= MAX_HOST_VERTICES => {}
            _ => return Err(Error::budget(format!("host box {sides:?} exceeds {MAX_HOST_VERTICES} vertices"))),
        }
        let graph = lattice_rect(lo, sides);
        let lat = graph.lattice().expect("lattice host");
        let dim = lat.dim();
        let mut coords = Vec::with_capacity(graph.vertex_count() * dim);
        for v in 0..graph.vertex_count() as u32 {
            coords.extend(lat.coords(VertexId(v)));
        }
        Ok(Host { graph, dim, coords })
    }

    /// Smallest box holding `B_radius(c)` for every centre.
    pub fn covering(dim: usize, centres: &[Vec<i32>], radius: u32) -> Result<Self> {
        let r = radius as i32;
        let mut lo = vec![i32::MAX; dim];
        let mut hi = vec![i32::MIN; dim];
        for c in centres {
            for a in 0..dim {
                lo[a] = lo[a].min(c[a] - r);
                hi[a] = hi[a].max(c[a] + r);
            }
        }
        let sides: Vec<usize> = (0..dim).map(|a| (hi[a] - lo[a] + 1) as usize).collect();
        Host::new(&lo, &sides)
    }

    #[inline]
    pub fn coord(&self, v: VertexId, axis: usize) -> i32 {
        self.coords[v.index() * self.dim + axis]
    }

    #[inline]
    pub fn l1(&self, v: VertexId, c: &[i32]) -> u32 {
        let x = &self.coords[v.index() * self.dim..(v.index() + 1) * self.dim];
        x.iter().zip(c).map(|(a, b)| (a - b).unsigned_abs()).sum()
    }

    /// Vertices of `B_r(c)`; fails when the ball leaves the host.
    pub fn ball(&self, c: &[i32], r: u32) -> Result<Vec<VertexId>> {
        let mut out = Vec::new();
        let mut x = c.to_vec();
        self.ball_rec(c, 0, r as i32, &mut x, &mut out)?;
        Ok(out)
    }

    fn ball_rec(&self, c: &[i32], axis: usize, left: i32, x: &mut [i32], out: &mut Vec<VertexId>) -> Result<()> {
        if axis == self.dim {
            let v = self
                .graph
                .vertex_at(x)
                .ok_or_else(|| Error::precondition(format!("ball around {c:?} leaves the host box")))?;
            out.push(v);
            return Ok(());
        }
        for off in -left..=left {
            x[axis] = c[axis] + off;
            self.ball_rec(c, axis + 1, left - off.abs(), x, out)?;
        }
        x[axis] = c[axis];
        Ok(())
    }
}

/// `(x, 0, …, 0)`.
pub fn on_axis(dim: usize, x: i32) -> Vec<i32> {
    let mut c = vec![0; dim];
    c[0] = x;
    c
}

/// `|B_r|` in `ℤ^d`: `Σ_j 2^j C(d, j) C(r, j)`.
pub fn l1_ball_volume(dim: usize, r: u32) -> u128 {
    let binom = |n: u128, k: u128| -> u128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
    };
    (0..=dim as u128).map(|j| (1u128 << j) * binom(dim as u128, j) * binom(u128::from(r), j)).sum()
}

/// Whether an open path joins `from` to `to` with every vertex inside `B_r(c)`.
/// Starts from the members of `from` that lie in the ball.
pub fn connects_within(
    host: &Host,
    ex: &mut Explorer,
    from: &[VertexId],
    is_target: impl Fn(VertexId) -> bool,
    c: &[i32],
    r: u32,
    open: impl Fn(EdgeId) -> bool,
) -> bool {
    ex.reset();
    ex.search(
        &host.graph,
        from.iter().copied().filter(|&v| host.l1(v, c) <= r),
        |_, w, e| host.l1(w, c) <= r && open(e),
        is_target,
    )
}
