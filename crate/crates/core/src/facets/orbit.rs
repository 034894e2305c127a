use std::collections::{HashMap, HashSet};

use super::FacetInequality;
use crate::cliffstab::CliffordGroup;
use crate::error::{Error, Result};

/// Exact key for qubit facets, rounded normalized operator otherwise.
pub fn orbit_key(f: &FacetInequality) -> Vec<i64> {
    if let Some(c) = f.coefficients() {
        return c.to_vec();
    }
    let op = f.operator();
    let norm = op.frobenius_norm().max(1e-300);
    op.as_slice()
        .iter()
        .flat_map(|z| [((z.re / norm) * 1e8).round() as i64, ((z.im / norm) * 1e8).round() as i64])
        .collect()
}

/// Distinct images C A C^dagger over the group, in order of first appearance.
pub fn clifford_orbit(f: &FacetInequality, group: &CliffordGroup) -> Result<Vec<FacetInequality>> {
    let dim = group.elements.first().map(|e| e.unitary.rows()).unwrap_or(0);
    if dim != f.dim() {
        return Err(Error::DimensionMismatch(format!("facet dim {} vs group dim {dim}", f.dim())));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if let Some(alpha) = f.coefficients() {
        for act in group.pauli_actions()? {
            let image = act.apply_coefficients(alpha);
            if seen.insert(image.clone()) {
                out.push(FacetInequality::from_coefficients(group.n, &image)?);
            }
        }
    } else {
        let op = f.operator();
        for e in &group.elements {
            let image = FacetInequality::from_operator(&(&e.unitary * op) * &e.unitary.adjoint())?;
            if seen.insert(orbit_key(&image)) {
                out.push(image);
            }
        }
    }
    Ok(out)
}

/// Partition facet indices into Clifford orbits. Every orbit must stay
/// inside the given list.
pub fn classify_orbits(facets: &[FacetInequality], group: &CliffordGroup) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<Vec<i64>, usize> = facets.iter().enumerate().map(|(i, f)| (orbit_key(f), i)).collect();
    let mut assigned = vec![false; facets.len()];
    let mut orbits = Vec::new();
    for i in 0..facets.len() {
        if assigned[i] {
            continue;
        }
        let mut members = Vec::new();
        for image in clifford_orbit(&facets[i], group)? {
            let j = *index
                .get(&orbit_key(&image))
                .ok_or_else(|| Error::Numerical("Clifford image left the facet list".into()))?;
            if !assigned[j] {
                assigned[j] = true;
                members.push(j);
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(orbits)
}
