use std::sync::OnceLock;

use super::{clifford_orbit, FacetInequality};
use crate::cliffstab::clifford_group;
use crate::error::Result;

/// Representatives of the eight Clifford classes of two-qubit facets,
/// coefficients over II, IX, IY, IZ, XI, ..., ZZ.
pub const FACET_REPRESENTATIVES: [[i64; 16]; 8] = [
    [1, 1, 0, 0, 0, 0, -1, 1, 1, 1, 0, 0, 0, 0, -1, -1],
    [1, 1, -1, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, -1],
    [2, 1, 1, 1, 1, 0, 0, 2, 0, 1, -1, 1, -2, -1, -1, -1],
    [2, 0, 2, 0, 0, 0, 0, 2, -1, 1, -1, 1, -1, -1, -1, -1],
    [2, 0, 0, -1, -1, 1, -1, 2, 0, 2, 0, -1, 0, 0, -2, -1],
    [2, 0, 1, 0, 1, 1, 0, -1, -1, 1, 0, 1, -1, -1, 0, -1],
    [3, -1, 0, -2, -2, 2, -1, 3, 0, 2, 1, -1, 1, 1, -2, -2],
    [4, 3, 1, 3, 2, 1, -1, 3, 2, 3, -1, 1, -3, -2, -2, -2],
];

pub fn representative_facets() -> Vec<FacetInequality> {
    FACET_REPRESENTATIVES
        .iter()
        .map(|row| FacetInequality::from_coefficients(2, row).expect("violator rows are valid"))
        .collect()
}

/// All two-qubit facets grouped by class (1..=8).
#[derive(Debug)]
pub struct FacetClasses {
    pub facets: Vec<FacetInequality>,
    pub class_of: Vec<u8>,
    pub class_sizes: [usize; 8],
}

impl FacetClasses {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Coefficient rows, cached for fast evaluation on Pauli vectors.
    pub fn coefficient_rows(&self) -> impl Iterator<Item = (&[i64], u8)> {
        self.facets.iter().map(|f| f.coefficients().unwrap()).zip(self.class_of.iter().copied())
    }
}

/// Clifford orbits of the eight representatives (cached).
pub fn two_qubit_facets() -> Result<&'static FacetClasses> {
    static CELL: OnceLock<FacetClasses> = OnceLock::new();
    if let Some(c) = CELL.get() {
        return Ok(c);
    }
    let group = clifford_group(2, 2)?;
    let mut facets = Vec::new();
    let mut class_of = Vec::new();
    let mut class_sizes = [0usize; 8];
    for (k, rep) in representative_facets().iter().enumerate() {
        let orbit = clifford_orbit(rep, group)?;
        class_sizes[k] = orbit.len();
        class_of.extend(std::iter::repeat_n(k as u8 + 1, orbit.len()));
        facets.extend(orbit);
    }
    Ok(CELL.get_or_init(|| FacetClasses { facets, class_of, class_sizes }))
}
