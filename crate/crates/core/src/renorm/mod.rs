//! Block renormalization on `ℤ^d`: block events, the coarse field, density scans, slab
//! crossings and the half-space touch fraction. Balls are `ℓ¹` balls.

mod block;
mod coarse;
mod density;
mod geometry;
mod half_space;
mod slab;

pub use block::{block_connection_prob, spread_constant, uniqueness_event_prob, uniqueness_holds, BlockParams};
pub use coarse::{coarse_grain, CoarseConfig, CoarseGrid, CovarianceClass};
pub use density::{gm_density_scan, DensityRow};
pub use geometry::{l1_ball_volume, on_axis, Host, MAX_HOST_VERTICES};
pub use half_space::{half_space_touch_fraction, HalfSpaceReport};
pub use slab::{slab_crossing, SlabDiagnostics, SlabRow};
