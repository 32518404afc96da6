//! Isoperimetric profiles, min edge cutsets and the boundary-diameter inequality.

pub mod cutset;
pub mod geometry;
pub mod maxflow;
pub mod profile;

pub use cutset::{phi_of_set, radius_of, radius_schedule, CutsetCertificate};
pub use geometry::{geometry_check, GeometryDiagnostics};
pub use profile::{fit_asymptotic, phi_profile, Family, IsoProfile, ProfileOptions};
