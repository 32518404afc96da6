//! The exploration loop: seeds, seed clusters and the round transcript.

use serde::Serialize;

use super::arena::Arena;
use super::midball::{ball_within, find_mid_balls, Estimator, MidBallResult, MidBallSpec};
use super::params::{ExplorationParams, Mode};
use crate::cluster::Explorer;
use crate::error::{Error, Result};
use crate::iso::{phi_of_set, radius_of};
use crate::percolation::Layers;
use crate::rng::stream_id;
use crate::sets::{EdgeId, VertexId, VertexSet};

/// Order-independent fingerprint of a vertex set.
fn set_key(s: &VertexSet) -> u64 {
    stream_id("vertex-set", &s.iter().map(|v| u64::from(v.0)).collect::<Vec<_>>())
}

/// The ordered seed balls for `(D, K)`. The balls live in the graph induced on `Λ \ S`,
/// are pairwise disjoint and avoid `D`. Estimates use a substream fixed by `seed` and a
/// fingerprint of `(D, K)`.
pub fn seeds_function(
    d: &VertexSet,
    k: &VertexSet,
    arena: &Arena,
    params: &ExplorationParams,
    seed: u64,
) -> Result<Vec<MidBallResult>> {
    if !arena.anchor.is_subset(k) {
        return Err(Error::precondition("K must contain the inner boundary of Lambda"));
    }
    if arena.touches(k) >= arena.t {
        return Err(Error::precondition("|dK ∩ dS| already reaches t"));
    }
    let budget = params.b as u128 * u128::from(params.ell) * arena.t as u128;
    if d.len() as u128 > budget {
        return Err(Error::precondition(format!("|D| = {} exceeds b*ell*t = {budget}", d.len())));
    }
    let l = arena.outer_s.difference(k);
    let est = Estimator {
        samples: params.estimator_samples,
        seed,
        stream: stream_id("seeds-estimator", &[set_key(d), set_key(k)]),
    };
    let spec = MidBallSpec { radius: params.r, count: params.ell, delta: params.delta, p: params.p, mode: params.mode };
    find_mid_balls(arena.graph(), &arena.working, &l, k, d, &spec, &est)
}

/// `𝒞_{D,K}(B) = 𝒞₁ ∪ 𝒞₂`: `𝒞₁` is `B` together with its `ω`-cluster through layer edges
/// that avoid `K`, and `𝒞₂` adds the `K` endpoints of `ξ`-open edges leaving `𝒞₁ \ K`.
pub fn grow_seed(b: &VertexSet, k: &VertexSet, layers: &Layers, arena: &Arena) -> VertexSet {
    grow_seed_with(b, k, arena, |e| layers.omega_open(e), |e| layers.xi_open(e))
}

/// [`grow_seed`] with explicit `ω` and `ξ` states.
pub fn grow_seed_with(
    b: &VertexSet,
    k: &VertexSet,
    arena: &Arena,
    omega: impl Fn(EdgeId) -> bool,
    xi: impl Fn(EdgeId) -> bool,
) -> VertexSet {
    let g = arena.graph();
    let mut ex = Explorer::new(g.vertex_count());
    ex.reset();
    ex.search(
        g,
        b.iter(),
        |v, w, e| !k.contains(v) && !k.contains(w) && arena.domain.contains(e) && omega(e),
        |_| false,
    );
    let mut c = ex.visited_set(g);
    let c1: Vec<VertexId> = c.iter().filter(|v| !k.contains(*v)).collect();
    for u in c1 {
        for (v, e) in g.adjacency(u) {
            if k.contains(v) && arena.domain.contains(e) && xi(e) {
                c.insert(v);
            }
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HaltStatus {
    Running,
    ReachedT,
    HaltedNoSeed,
    HaltedNoConnection,
    HaltedBudget,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundRecord {
    pub index: usize,
    pub seeds: Vec<MidBallResult>,
    /// Index into `seeds` of the first fully `ζ`-open ball.
    pub chosen: Option<usize>,
    pub cluster_size: usize,
    /// `N_i` after the round.
    pub touches: usize,
    pub status: HaltStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplorationState {
    pub seed: u64,
    pub t: usize,
    pub rounds: Vec<RoundRecord>,
    /// `N_0, N_1, ...`.
    pub touches: Vec<usize>,
    pub status: HaltStatus,
    /// `𝒞_0, 𝒞_1, ...` (empty after a halt).
    #[serde(skip)]
    pub clusters: Vec<VertexSet>,
    /// `𝒟`: union of all seed balls.
    #[serde(skip)]
    pub d: VertexSet,
    /// `𝒦`: union of all clusters.
    #[serde(skip)]
    pub k: VertexSet,
}

impl ExplorationState {
    pub fn reached(&self) -> bool {
        self.status == HaltStatus::ReachedT
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }
}

/// Truncated `Φ(S)`: min cut from `S` to the sphere just outside the arena.
fn arena_phi(arena: &Arena) -> Result<usize> {
    let rad = radius_of(arena.graph(), &arena.s).ok_or_else(|| Error::precondition("S unreachable"))?;
    let radii: Vec<u32> = [rad + 2, rad + 4, arena.radius].into_iter().filter(|&x| x <= arena.radius).collect();
    let radii = if radii.is_empty() { vec![arena.radius] } else { radii };
    Ok(phi_of_set(arena.graph(), &arena.s, &radii)?.value)
}

/// Runs the construction with layers drawn from `seed`.
pub fn run_exploration(arena: &Arena, params: &ExplorationParams, seed: u64) -> Result<ExplorationState> {
    if params.mode == Mode::Rigorous {
        let phi = arena_phi(arena)?;
        if arena.t as f64 > params.c * phi as f64 {
            return Err(Error::precondition(format!("t = {} exceeds c * Phi(S) = {}", arena.t, params.c * phi as f64)));
        }
    }
    let layers = Layers::new(params.p, params.q, seed, 0)?;
    let g = arena.graph();
    let mut state = ExplorationState {
        seed,
        t: arena.t,
        rounds: Vec::new(),
        touches: vec![arena.touches(&arena.anchor)],
        status: HaltStatus::Running,
        clusters: vec![arena.anchor.clone()],
        d: g.empty_vertex_set(),
        k: arena.anchor.clone(),
    };
    let mut n = state.touches[0];
    for i in 1.. {
        if n >= arena.t {
            state.status = HaltStatus::ReachedT;
            break;
        }
        // Every successful round adds a touch, so more than t rounds cannot happen.
        if i > arena.t {
            state.status = HaltStatus::HaltedBudget;
            break;
        }
        let seeds = match seeds_function(&state.d, &state.k, arena, params, seed) {
            Ok(s) => s,
            Err(Error::Precondition(msg)) if msg.starts_with("no L-R path") => {
                state.status = HaltStatus::HaltedNoConnection;
                state.rounds.push(RoundRecord {
                    index: i,
                    seeds: Vec::new(),
                    chosen: None,
                    cluster_size: 0,
                    touches: n,
                    status: state.status,
                });
                break;
            }
            Err(Error::Budget(_)) => {
                state.status = HaltStatus::HaltedBudget;
                break;
            }
            Err(e) => return Err(e),
        };
        for b in &seeds {
            state.d.union_with(&b.ball);
        }
        let chosen = seeds.iter().position(|b| {
            g.interior_edges(&b.ball).iter().all(|e| arena.domain.contains(e) && layers.zeta_open(e))
        });
        let mut record = RoundRecord { index: i, seeds, chosen, cluster_size: 0, touches: n, status: HaltStatus::Running };
        let Some(ci) = chosen else {
            state.status = HaltStatus::HaltedNoSeed;
            record.status = state.status;
            state.rounds.push(record);
            state.clusters.push(g.empty_vertex_set());
            break;
        };
        let c = grow_seed(&record.seeds[ci].ball, &state.k, &layers, arena);
        let new_touch = c.iter().any(|v| arena.outer_s.contains(v) && !state.k.contains(v));
        let meets_k = !c.is_disjoint(&state.k);
        if !(new_touch && meets_k) {
            state.status = HaltStatus::HaltedNoConnection;
            record.status = state.status;
            state.rounds.push(record);
            state.clusters.push(g.empty_vertex_set());
            break;
        }
        state.k.union_with(&c);
        n = arena.touches(&state.k);
        record.cluster_size = c.len();
        record.touches = n;
        state.touches.push(n);
        state.clusters.push(c);
        state.rounds.push(record);
    }
    if let Some(last) = state.rounds.last_mut() {
        last.status = state.status;
    }
    Ok(state)
}

/// Checks the transcript invariants and returns the first violation.
pub fn check_invariants(state: &ExplorationState, arena: &Arena, params: &ExplorationParams) -> std::result::Result<(), String> {
    let g = arena.graph();
    let mut seen = g.empty_vertex_set();
    for round in &state.rounds {
        let total: usize = round.seeds.iter().map(|b| b.ball.len()).sum();
        if total as u128 > params.b as u128 * u128::from(params.ell) {
            return Err(format!("round {}: seed volume {total} exceeds b*ell", round.index));
        }
        for b in &round.seeds {
            if !b.ball.is_disjoint(&seen) {
                return Err(format!("round {}: seed ball overlaps an earlier ball", round.index));
            }
            if b.ball != ball_within(g, &arena.working, [b.centre], params.r) {
                return Err(format!("round {}: seed is not a ball of the working graph", round.index));
            }
            seen.union_with(&b.ball);
        }
    }
    for w in state.touches.windows(2) {
        if w[1] <= w[0] {
            return Err("touch count did not strictly increase on a successful round".into());
        }
    }
    if !arena.anchor.is_subset(&state.k) {
        return Err("K lost the anchor".into());
    }
    if state.reached() && arena.touches(&state.k) < arena.t {
        return Err("reached_t without t touches".into());
    }
    Ok(())
}
