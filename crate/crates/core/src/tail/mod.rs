//! Tail estimation for the origin cluster, decay fits and the collecting-mass schedule.

pub mod curves;
pub mod fit;
pub mod mass;
pub mod model;

pub use curves::{exact_tails, radius_tail, tail_curves, tail_labels, volume_tail, ClusterProbe, ClusterStats};
pub use fit::{fit_decay, DecayFit, Predictor, PredictorSource};
pub use mass::{analytic_bound, collect_mass_experiment, solve_v_n, AnalyticBound, MassProbe, MassReport, MassSchedule};
pub use model::PhiModel;
