//! Mid-balls: balls that connect, with high estimated probability, to both of two
//! disjoint targets without passing through the other one.

use std::collections::VecDeque;

use serde::Serialize;

use super::params::Mode;
use crate::cluster::Explorer;
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::rng::{mix64, EdgeLabels, Threshold};
use crate::sets::{VertexId, VertexSet};
use crate::stats::Proportion;

/// Shared Monte Carlo budget: `samples` configurations drawn from stream `stream`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Estimator {
    pub samples: u64,
    pub seed: u64,
    pub stream: u64,
}

/// Per-sample reach sets. `to_l[s]` holds the vertices that join `L` in sample `s` by an
/// open path whose vertices after the first avoid `R`; `to_r[s]` is the mirror image.
pub struct ReachSamples {
    to_l: Vec<VertexSet>,
    to_r: Vec<VertexSet>,
}

impl ReachSamples {
    pub fn sample(g: &FiniteGraph, allowed: &VertexSet, l: &VertexSet, r: &VertexSet, p: f64, est: &Estimator) -> Self {
        let t = Threshold::from_prob(p);
        let mut ex = Explorer::new(g.vertex_count());
        let mut to_l = Vec::with_capacity(est.samples as usize);
        let mut to_r = Vec::with_capacity(est.samples as usize);
        for s in 0..est.samples {
            let labels = EdgeLabels::new(est.seed, mix64(est.stream ^ mix64(s)));
            for (src, avoid, out) in [(l, r, &mut to_l), (r, l, &mut to_r)] {
                ex.reset();
                ex.search(
                    g,
                    src.iter().filter(|v| allowed.contains(*v)),
                    |v, w, e| allowed.contains(w) && !avoid.contains(v) && labels.is_open(e, t),
                    |_| false,
                );
                out.push(ex.visited_set(g));
            }
        }
        ReachSamples { to_l, to_r }
    }

    pub fn samples(&self) -> u64 {
        self.to_l.len() as u64
    }

    /// Estimated `(P(ball ↔ L), P(ball ↔ R))`.
    pub fn estimate(&self, ball: &VertexSet) -> (Proportion, Proportion) {
        let n = self.samples();
        let hits = |sets: &[VertexSet]| sets.iter().filter(|s| !s.is_disjoint(ball)).count() as u64;
        (Proportion::new(hits(&self.to_l), n), Proportion::new(hits(&self.to_r), n))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MidBallResult {
    pub centre: VertexId,
    pub radius: u32,
    #[serde(skip)]
    pub ball: VertexSet,
    pub vertices: Vec<u32>,
    pub to_l: Proportion,
    pub to_r: Proportion,
    pub accepted: bool,
    /// Position of the centre on the scanned path.
    pub path_index: usize,
    pub samples_used: u64,
}

impl MidBallResult {
    fn score(&self) -> f64 {
        self.to_l.estimate.min(self.to_r.estimate)
    }
}

/// Vertices of `allowed` within distance `radius` of `sources`, distances taken in the
/// graph induced on `allowed`.
pub fn ball_within(g: &FiniteGraph, allowed: &VertexSet, sources: impl IntoIterator<Item = VertexId>, radius: u32) -> VertexSet {
    let mut out = g.empty_vertex_set();
    let mut queue = VecDeque::new();
    for s in sources {
        if allowed.contains(s) && out.insert(s) {
            queue.push_back((s, 0u32));
        }
    }
    while let Some((v, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for &w in g.neighbors(v) {
            let w = VertexId(w);
            if allowed.contains(w) && out.insert(w) {
                queue.push_back((w, d + 1));
            }
        }
    }
    out
}

/// Shortest path from `l` to `r` inside `allowed`, as a vertex list starting in `l`.
pub fn shortest_path(g: &FiniteGraph, allowed: &VertexSet, l: &VertexSet, r: &VertexSet) -> Option<Vec<VertexId>> {
    let mut parent = vec![u32::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for v in l.iter().filter(|v| allowed.contains(*v)) {
        parent[v.index()] = v.0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        if r.contains(v) {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur.index()] != cur.0 {
                cur = VertexId(parent[cur.index()]);
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(v) {
            if allowed.contains(VertexId(w)) && parent[w as usize] == u32::MAX {
                parent[w as usize] = v.0;
                queue.push_back(VertexId(w));
            }
        }
    }
    None
}

/// Search settings shared by every ball of one call.
#[derive(Clone, Copy, Debug)]
pub struct MidBallSpec {
    pub radius: u32,
    pub count: u64,
    pub delta: f64,
    pub p: f64,
    pub mode: Mode,
}

/// `count` pairwise disjoint radius-`r` balls of the graph induced on `allowed`, each
/// disjoint from `a`. Ball `i` is centred on a path from `L` to `R` that avoids the
/// `r`-neighbourhood of `a` and of the balls already chosen; the path is scanned in order
/// and the first ball with both estimates at least `1 - √δ - half-width` is taken.
///
/// In practical mode a scan without a qualifying ball returns the best-scoring one with
/// `accepted = false`; rigorous mode reports budget exhaustion instead.
pub fn find_mid_balls(
    g: &FiniteGraph,
    allowed: &VertexSet,
    l: &VertexSet,
    r: &VertexSet,
    a: &VertexSet,
    spec: &MidBallSpec,
    est: &Estimator,
) -> Result<Vec<MidBallResult>> {
    if !l.is_disjoint(r) {
        return Err(Error::invalid("L and R must be disjoint"));
    }
    let reach = ReachSamples::sample(g, allowed, l, r, spec.p, est);
    let threshold = 1.0 - spec.delta.sqrt();
    let mut taken = a.intersection(allowed);
    let mut out = Vec::with_capacity(spec.count as usize);
    for i in 0..spec.count {
        let blocked = ball_within(g, allowed, taken.iter(), spec.radius);
        let free = allowed.difference(&blocked);
        let path = shortest_path(g, &free, l, r)
            .ok_or_else(|| Error::precondition(format!("no L-R path avoids the r-neighbourhood of the forbidden set (ball {i})")))?;
        let mut best: Option<MidBallResult> = None;
        let mut chosen = None;
        for (idx, &v) in path.iter().enumerate() {
            let ball = ball_within(g, allowed, [v], spec.radius);
            let (to_l, to_r) = reach.estimate(&ball);
            let accepted = to_l.estimate >= threshold - to_l.half_width() && to_r.estimate >= threshold - to_r.half_width();
            let res = MidBallResult {
                centre: v,
                radius: spec.radius,
                vertices: ball.iter().map(|x| x.0).collect(),
                ball,
                to_l,
                to_r,
                accepted,
                path_index: idx,
                samples_used: reach.samples(),
            };
            if accepted {
                chosen = Some(res);
                break;
            }
            if best.as_ref().is_none_or(|b| res.score() > b.score()) {
                best = Some(res);
            }
        }
        let res = match (chosen, spec.mode) {
            (Some(res), _) => res,
            (None, Mode::Practical) => best.expect("paths are nonempty"),
            (None, Mode::Rigorous) => {
                return Err(Error::budget(format!(
                    "no ball on the path reached 1 - sqrt(delta) within {} samples",
                    reach.samples()
                )))
            }
        };
        taken.union_with(&res.ball);
        out.push(res);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::lattice_box;

    fn column(g: &FiniteGraph, x: i32, h: i32) -> VertexSet {
        g.vertex_set((-h..=h).map(|y| g.vertex_at(&[x, y]).unwrap()))
    }

    #[test]
    fn p_one_accepts_first_ball() {
        let g = lattice_box(&[11, 11]);
        let all = g.all_vertices();
        let (l, r) = (column(&g, -5, 5), column(&g, 5, 5));
        let spec = MidBallSpec { radius: 1, count: 2, delta: 0.04, p: 1.0, mode: Mode::Rigorous };
        let est = Estimator { samples: 20, seed: 1, stream: 2 };
        let balls = find_mid_balls(&g, &all, &l, &r, &g.empty_vertex_set(), &spec, &est).unwrap();
        assert_eq!(balls.len(), 2);
        assert_eq!(balls[0].path_index, 0);
        for b in &balls {
            assert!(b.accepted && b.to_l.estimate == 1.0 && b.to_r.estimate == 1.0);
        }
        assert!(balls[0].ball.is_disjoint(&balls[1].ball));
    }

    #[test]
    fn adjacent_targets() {
        let g = lattice_box(&[5, 5]);
        let all = g.all_vertices();
        let (l, r) = (column(&g, 0, 2), column(&g, 1, 2));
        let spec = MidBallSpec { radius: 1, count: 1, delta: 0.04, p: 0.1, mode: Mode::Rigorous };
        let est = Estimator { samples: 50, seed: 3, stream: 4 };
        let b = &find_mid_balls(&g, &all, &l, &r, &g.empty_vertex_set(), &spec, &est).unwrap()[0];
        assert!(b.accepted);
        assert!(!b.ball.is_disjoint(&l) && !b.ball.is_disjoint(&r));
    }

    #[test]
    fn blocked_path_is_reported() {
        let g = lattice_box(&[7, 7]);
        let all = g.all_vertices();
        let (l, r) = (column(&g, -3, 3), column(&g, 3, 3));
        let wall = column(&g, 0, 3);
        let spec = MidBallSpec { radius: 0, count: 1, delta: 0.04, p: 0.5, mode: Mode::Practical };
        let est = Estimator { samples: 10, seed: 0, stream: 0 };
        let err = find_mid_balls(&g, &all, &l, &r, &wall, &spec, &est).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
