//! Geometry of stabilizer polytopes.
//!
//! The crate enumerates stabilizer states and Clifford groups for a single
//! qubit, a single qutrit, two qubits and three qubits, builds the facet
//! inequalities of the corresponding stabilizer polytopes, and computes
//! distance-based and robustness-based measures of nonstabilizerness.
//! Sampling helpers and experiment drivers sit on top.

pub mod cliffstab;
pub mod convex;
pub mod error;
pub mod experiments;
pub mod facets;
pub mod linalg;
pub mod measures;
pub mod pauli;
pub mod qmat;
pub mod samplers;
pub mod system;

pub use error::{Error, Result};
pub use qmat::{ComplexMatrix, DensityMatrix, PureState, C64};
pub use system::System;
