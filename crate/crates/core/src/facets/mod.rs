//! Facet inequalities of stabilizer polytopes.
//!
//! Every facet is oriented so that stabilizer states satisfy Tr(rho A) >= 0.
//! Qubit facets also carry integer Pauli coefficients alpha with
//! A = sum_k alpha_k P_k, indexed in the word order of [`crate::pauli`].

mod dd;
mod io;
mod orbit;
mod project;
mod qudit;
mod table;

use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::pauli::{from_pauli_vector, PauliWord};
use crate::qmat::{ComplexMatrix, DensityMatrix, PureState};

pub use dd::{dd_hull, Hull, ProjectedFacet};
pub use io::{read_facet_file, write_facet_file, FacetFile};
pub use orbit::{classify_orbits, clifford_orbit, orbit_key};
pub use project::{project_vertices, ProjectedPolytope, RationalVector};
pub use qudit::{one_qudit_facet, one_qudit_facets, qutrit_class_of, qutrit_facet_classes, QuditFacet};
pub use table::{representative_facets, two_qubit_facets, FacetClasses, FACET_REPRESENTATIVES};

/// Linear inequality Tr(rho A) >= 0 that holds on every stabilizer state.
#[derive(Clone, Debug)]
pub struct FacetInequality {
    dim: usize,
    coefficients: Option<Vec<i64>>,
    operator: OnceLock<ComplexMatrix>,
}

impl PartialEq for FacetInequality {
    fn eq(&self, other: &Self) -> bool {
        match (&self.coefficients, &other.coefficients) {
            (Some(a), Some(b)) => a == b,
            _ => self.dim == other.dim && orbit_key(self) == orbit_key(other),
        }
    }
}

/// Divide by the gcd of the entries; orientation is preserved.
pub fn canonical_coefficients(alpha: &[i64]) -> Vec<i64> {
    let g = alpha.iter().fold(0i64, |g, &a| g.gcd(&a));
    if g <= 1 {
        return alpha.to_vec();
    }
    alpha.iter().map(|a| a / g).collect()
}

impl FacetInequality {
    /// Qubit facet from integer Pauli coefficients (identity first). The
    /// vector is reduced to coprime entries.
    pub fn from_coefficients(n: usize, alpha: &[i64]) -> Result<Self> {
        if alpha.len() != 4usize.pow(n as u32) {
            return Err(Error::DimensionMismatch(format!("{} coefficients for {n} qubits", alpha.len())));
        }
        if alpha.iter().all(|&a| a == 0) {
            return Err(Error::InvalidLabel("all-zero facet".into()));
        }
        Ok(Self { dim: 1 << n, coefficients: Some(canonical_coefficients(alpha)), operator: OnceLock::new() })
    }

    /// Facet given by a Hermitian operator (any positive scaling).
    pub fn from_operator(op: ComplexMatrix) -> Result<Self> {
        let dev = op.hermitian_deviation();
        if dev > 1e-9 {
            return Err(Error::NonHermitian(dev));
        }
        let op = op.hermitian_part();
        let dim = op.rows();
        Ok(Self { dim, coefficients: None, operator: OnceLock::from(op) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> Option<&[i64]> {
        self.coefficients.as_deref()
    }

    pub fn operator(&self) -> &ComplexMatrix {
        self.operator.get_or_init(|| {
            let alpha = self.coefficients.as_ref().expect("facet has coefficients or an operator");
            let n = self.dim.trailing_zeros() as usize;
            let real: Vec<f64> = alpha.iter().map(|&a| a as f64).collect();
            // from_pauli_vector divides by 2^n.
            from_pauli_vector(n, &real).expect("length checked at construction").scale_real(self.dim as f64)
        })
    }

    /// Tr(rho A).
    pub fn evaluate(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!("state dim {} vs facet dim {}", rho.dim(), self.dim)));
        }
        Ok(rho.expectation(self.operator()))
    }

    pub fn evaluate_pure(&self, psi: &PureState) -> Result<f64> {
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!("state dim {} vs facet dim {}", psi.dim(), self.dim)));
        }
        Ok(psi.expectation(self.operator()).re)
    }

    /// sum_k alpha_k c_k for a Pauli expectation vector c (c_0 = 1).
    pub fn evaluate_pauli(&self, pauli: &[f64]) -> Option<f64> {
        self.coefficients.as_ref().map(|a| a.iter().zip(pauli).map(|(&x, &c)| x as f64 * c).sum())
    }

    /// Coefficients printed as "a*II + b*IX + ..." skipping zeros.
    pub fn describe(&self) -> String {
        match &self.coefficients {
            None => format!("operator facet on dimension {}", self.dim),
            Some(alpha) => {
                let n = self.dim.trailing_zeros() as usize;
                let terms: Vec<String> = alpha
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(k, a)| format!("{a:+}<{}>", PauliWord::from_index(n, k)))
                    .collect();
                format!("{} >= 0", terms.join(" "))
            }
        }
    }
}

/// Number of facets with Tr(rho A) < -tol.
pub fn count_violations(rho: &DensityMatrix, facets: &[FacetInequality], tol: f64) -> Result<usize> {
    if facets.iter().all(|f| f.coefficients.is_some()) && rho.dim().is_power_of_two() {
        let pv = crate::pauli::pauli_vector(rho)?;
        return Ok(facets.iter().filter(|f| f.evaluate_pauli(&pv).unwrap() < -tol).count());
    }
    let mut count = 0;
    for f in facets {
        if f.evaluate(rho)? < -tol {
            count += 1;
        }
    }
    Ok(count)
}

/// Default tolerance for violation counting.
pub const VIOLATION_TOL: f64 = 1e-12;
