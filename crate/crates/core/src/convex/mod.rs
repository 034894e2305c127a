//! Convex optimization over stabilizer polytopes.

pub mod basis;
pub mod ipm;
mod ntd;
mod rom;
pub mod revised;
pub mod simplex;

pub use ntd::{ntd, ntd_auto, polytope_membership, CertificateStatus, ConstrainedNtd, NtdModel, NtdOptions, NtdResult, PRUNE_TOL};
pub use rom::{critical_global_lp, lp_membership, rom, rom_auto, LpModel, RomResult};
