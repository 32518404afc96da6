//! Counter-based randomness.
//!
//! Every edge label is a pure function of `(master seed, stream id, edge index)`, so
//! configurations can be evaluated lazily, in any order and on any worker, and still
//! reproduce bit-for-bit. The generator is SplitMix64 evaluated at an arbitrary counter
//! position under a per-stream key.

use serde::{Deserialize, Serialize};

use crate::sets::EdgeId;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable 64-bit stream id from a purpose string and indices (FNV-1a, then mixed).
pub fn stream_id(purpose: &str, indices: &[u64]) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in purpose.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    for &i in indices {
        h = mix64(h ^ mix64(i.wrapping_add(GOLDEN_GAMMA)));
    }
    mix64(h)
}

#[inline]
fn stream_key(master_seed: u64, stream: u64) -> u64 {
    mix64(master_seed ^ mix64(stream.wrapping_mul(GOLDEN_GAMMA) ^ 0x5851_F42D_4C95_7F2D))
}

/// Open-edge cutoff: a label `U` (a 64-bit binary fraction) is open iff `U < threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Threshold(u128);

impl Threshold {
    /// `floor(p * 2^64)`; `p = 1` opens everything and `p = 0` nothing.
    pub fn from_prob(p: f64) -> Self {
        let p = p.clamp(0.0, 1.0);
        // Exact: p has a 53-bit mantissa and the product is a power-of-two scaling.
        Threshold((p * 18_446_744_073_709_551_616.0) as u128)
    }

    #[inline]
    pub fn admits(self, label: u64) -> bool {
        u128::from(label) < self.0
    }
}

/// Per-edge i.i.d. uniform labels for one stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabels {
    pub master_seed: u64,
    pub stream: u64,
    #[serde(skip)]
    key: u64,
}

impl EdgeLabels {
    pub fn new(master_seed: u64, stream: u64) -> Self {
        EdgeLabels { master_seed, stream, key: stream_key(master_seed, stream) }
    }

    /// Labels for a named purpose and replica indices under `master_seed`.
    pub fn for_purpose(master_seed: u64, purpose: &str, indices: &[u64]) -> Self {
        Self::new(master_seed, stream_id(purpose, indices))
    }

    #[inline]
    pub fn label(&self, e: EdgeId) -> u64 {
        self.at(u64::from(e.0))
    }

    #[inline]
    pub fn at(&self, counter: u64) -> u64 {
        mix64(self.key.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Label as a float in `[0, 1)`.
    pub fn uniform(&self, e: EdgeId) -> f64 {
        (self.label(e) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn is_open(&self, e: EdgeId, t: Threshold) -> bool {
        t.admits(self.label(e))
    }

    pub fn materialize(&self, edge_count: usize) -> Vec<u64> {
        (0..edge_count as u64).map(|i| self.at(i)).collect()
    }
}

/// Small sequential generator over a counter stream, for auxiliary draws (random test
/// shapes, tie breaking). Not used for edge states.
#[derive(Clone, Debug)]
pub struct StreamRng {
    labels: EdgeLabels,
    counter: u64,
}

impl StreamRng {
    pub fn new(master_seed: u64, stream: u64) -> Self {
        StreamRng { labels: EdgeLabels::new(master_seed, stream), counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let x = self.labels.at(self.counter);
        self.counter += 1;
        x
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n` (Lemire's multiply-shift; bias below 2^-64 * n).
    pub fn below(&mut self, n: u64) -> u64 {
        ((u128::from(self.next_u64()) * u128::from(n)) >> 64) as u64
    }
}
