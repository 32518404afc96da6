//! Experiment configuration files (TOML). Unknown keys are rejected everywhere.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::explore::Mode;
use crate::graph::GraphSpec;
use crate::tail::PhiModel;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Required by every experiment that runs on a graph; the block experiments build
    /// their own boxes of `ℤ^d`.
    #[serde(default)]
    pub graph: Option<GraphSpec>,
    #[serde(default)]
    pub percolation: PercolationSection,
    pub experiment: Experiment,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PercolationSection {
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Json]
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { dir: default_dir(), formats: default_formats() }
    }
}

/// A vertex set of the configured graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Origin,
    /// `[-h, h]^d` around the origin of a lattice graph.
    Block { half_side: i32 },
    Coords { points: Vec<Vec<i32>> },
    Ids { ids: Vec<u32> },
}

fn d_ten() -> u64 {
    10_000
}

fn d_steps() -> usize {
    4
}

fn d_profile_n() -> usize {
    8
}

fn d_three() -> usize {
    3
}

fn d_mode() -> Mode {
    Mode::Practical
}

fn d_ell() -> u64 {
    2
}

fn d_delta() -> f64 {
    0.04
}

fn d_est() -> u64 {
    200
}

fn d_runs() -> u64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Experiment {
    PhiProfile {
        n_max: usize,
        #[serde(default)]
        exhaustive_max_n: Option<usize>,
    },
    PhiOfSet {
        set: SetSpec,
        #[serde(default = "d_steps")]
        steps: usize,
    },
    GeometryCheck {
        set: SetSpec,
        epsilon: f64,
    },
    LayersCheck {
        #[serde(default = "d_ten")]
        samples: u64,
        /// Edge count of the exact enumeration, at most 6.
        #[serde(default)]
        exact_edges: Option<usize>,
    },
    VolumeTail {
        radius: u32,
        grid: Vec<u64>,
        #[serde(default = "d_ten")]
        samples: u64,
    },
    RadiusTail {
        radius: u32,
        grid: Vec<u64>,
        #[serde(default = "d_ten")]
        samples: u64,
    },
    DecayFit {
        radius: u32,
        grid: Vec<u64>,
        #[serde(default = "d_ten")]
        samples: u64,
        /// Tail to fit: `volume` or `radius`.
        #[serde(default = "volume_word")]
        curve: String,
        /// Predictor model; defaults to the exact profile of the graph.
        #[serde(default)]
        model: Option<PhiModel>,
        #[serde(default = "d_profile_n")]
        profile_n_max: usize,
    },
    Psi {
        set: SetSpec,
        radii: Vec<u32>,
        #[serde(default = "d_ten")]
        samples: u64,
    },
    MergeBound {
        set: SetSpec,
        t: usize,
        #[serde(default = "d_ten")]
        samples: u64,
    },
    Explore {
        set: SetSpec,
        radius: u32,
        t: usize,
        #[serde(default = "d_runs")]
        runs: u64,
        #[serde(default = "d_mode")]
        mode: Mode,
        #[serde(default)]
        r: u32,
        #[serde(default = "d_ell")]
        ell: u64,
        #[serde(default = "d_delta")]
        delta: f64,
        #[serde(default = "d_est")]
        estimator_samples: u64,
        #[serde(default)]
        r_max: Option<u32>,
    },
    #[serde(rename = "v-n")]
    VN {
        size_s: usize,
        c: f64,
        model: PhiModel,
        n_max: usize,
        degree: usize,
    },
    CollectMass {
        set: SetSpec,
        c: f64,
        n_max: usize,
        #[serde(default = "d_ten")]
        samples: u64,
        #[serde(default)]
        model: Option<PhiModel>,
        #[serde(default = "d_profile_n")]
        profile_n_max: usize,
    },
    BlockScan {
        d: usize,
        k: u32,
        n_grid: Vec<u32>,
        c: u32,
        #[serde(default = "d_ten")]
        samples: u64,
        /// Also estimate the uniqueness event with `n0 = n`.
        #[serde(default)]
        uniqueness: bool,
    },
    CoarseGrain {
        d: usize,
        k: u32,
        n: u32,
        c: u32,
        window: usize,
        #[serde(default = "d_ten")]
        samples: u64,
    },
    DensityScan {
        d: usize,
        k: u32,
        n_grid: Vec<u32>,
        delta: f64,
        #[serde(default = "d_ten")]
        samples: u64,
    },
    SlabCrossing {
        #[serde(default = "d_three")]
        d: usize,
        ell: u32,
        lengths: Vec<u32>,
        #[serde(default = "d_ten")]
        samples: u64,
    },
    HalfSpace {
        #[serde(default = "d_three")]
        d: usize,
        n: u32,
        c0: f64,
        #[serde(default = "d_ten")]
        samples: u64,
    },
}

fn volume_word() -> String {
    "volume".into()
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::PhiProfile { .. } => "phi-profile",
            Experiment::PhiOfSet { .. } => "phi-of-set",
            Experiment::GeometryCheck { .. } => "geometry-check",
            Experiment::LayersCheck { .. } => "layers-check",
            Experiment::VolumeTail { .. } => "volume-tail",
            Experiment::RadiusTail { .. } => "radius-tail",
            Experiment::DecayFit { .. } => "decay-fit",
            Experiment::Psi { .. } => "psi",
            Experiment::MergeBound { .. } => "merge-bound",
            Experiment::Explore { .. } => "explore",
            Experiment::VN { .. } => "v-n",
            Experiment::CollectMass { .. } => "collect-mass",
            Experiment::BlockScan { .. } => "block-scan",
            Experiment::CoarseGrain { .. } => "coarse-grain",
            Experiment::DensityScan { .. } => "density-scan",
            Experiment::SlabCrossing { .. } => "slab-crossing",
            Experiment::HalfSpace { .. } => "half-space",
        }
    }

    /// Replica count, for experiments that sample.
    pub fn samples(&self) -> Option<u64> {
        match self {
            Experiment::LayersCheck { samples, .. }
            | Experiment::VolumeTail { samples, .. }
            | Experiment::RadiusTail { samples, .. }
            | Experiment::DecayFit { samples, .. }
            | Experiment::Psi { samples, .. }
            | Experiment::MergeBound { samples, .. }
            | Experiment::CollectMass { samples, .. }
            | Experiment::BlockScan { samples, .. }
            | Experiment::CoarseGrain { samples, .. }
            | Experiment::DensityScan { samples, .. }
            | Experiment::SlabCrossing { samples, .. }
            | Experiment::HalfSpace { samples, .. } => Some(*samples),
            Experiment::Explore { runs, .. } => Some(*runs),
            _ => None,
        }
    }
}
