//! The seeded touch exploration and the quantities around it.

pub mod arena;
pub mod merge;
pub mod midball;
pub mod params;
pub mod psi;
pub mod run;

pub use arena::{centred_block, Arena};
pub use merge::{eight_edge_instance, exact_merge, merge_epsilon, verify_merge_bound, ExactMergeReport, MergeReport};
pub use midball::{find_mid_balls, Estimator, MidBallResult, MidBallSpec};
pub use params::{
    calibrate_sprinkling, derive_params, far_shell, practical_params, DeriveOptions, ExplorationParams, Mode, PracticalOptions,
};
pub use psi::{estimate_psi, PsiEstimate, PsiProbe};
pub use run::{check_invariants, grow_seed, grow_seed_with, run_exploration, seeds_function, ExplorationState, HaltStatus};
