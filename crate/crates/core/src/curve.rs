//! Tail curves: per-threshold frequencies with Wilson intervals.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::stats::Proportion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Volume,
    Radius,
    Psi,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: u64,
    pub estimate: f64,
    pub ci_halfwidth: f64,
    pub successes: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TailCurve {
    pub kind: CurveKind,
    pub p: f64,
    /// Truncation radius.
    #[serde(rename = "R")]
    pub radius: u32,
    pub samples: u64,
    pub seed: u64,
    pub points: Vec<CurvePoint>,
}

impl TailCurve {
    /// Builds a curve from success counts per grid value.
    pub fn from_counts(kind: CurveKind, p: f64, radius: u32, samples: u64, seed: u64, grid: &[u64], counts: &[u64]) -> Self {
        let points = grid
            .iter()
            .zip(counts)
            .map(|(&n, &s)| {
                let pr = Proportion::new(s, samples);
                CurvePoint { n, estimate: pr.estimate, ci_halfwidth: pr.half_width(), successes: s }
            })
            .collect();
        TailCurve { kind, p, radius, samples, seed, points }
    }

    pub fn estimates(&self) -> Vec<f64> {
        self.points.iter().map(|pt| pt.estimate).collect()
    }

    pub fn grid(&self) -> Vec<u64> {
        self.points.iter().map(|pt| pt.n).collect()
    }

    /// CSV body rows `n,estimate,ci_halfwidth,R,samples` (header included, no comment).
    pub fn csv_rows(&self) -> String {
        let mut out = String::from("n,estimate,ci_halfwidth,R,samples\n");
        for pt in &self.points {
            let _ = writeln!(out, "{},{:.12e},{:.12e},{},{}", pt.n, pt.estimate, pt.ci_halfwidth, self.radius, self.samples);
        }
        out
    }
}
