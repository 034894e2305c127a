use std::collections::HashMap;

use num_rational::Ratio;

use crate::cliffstab::StabilizerVertexSet;
use crate::error::{Error, Result};
use crate::pauli::PauliWord;

pub type RationalVector = Vec<Ratio<i64>>;

/// Image of a vertex set under a map to chosen Pauli expectations.
#[derive(Clone, Debug)]
pub struct ProjectedPolytope {
    pub labels: Vec<PauliWord>,
    pub points: Vec<RationalVector>,
    /// Indices of the original vertices mapped to each point.
    pub provenance: Vec<Vec<usize>>,
}

impl ProjectedPolytope {
    /// Build directly from rational points (duplicates are merged).
    pub fn from_points(labels: Vec<PauliWord>, raw: Vec<RationalVector>) -> Result<Self> {
        let mut index: HashMap<RationalVector, usize> = HashMap::new();
        let mut points = Vec::new();
        let mut provenance: Vec<Vec<usize>> = Vec::new();
        for (i, p) in raw.into_iter().enumerate() {
            if p.len() != labels.len() {
                return Err(Error::DimensionMismatch(format!("point of length {} for {} labels", p.len(), labels.len())));
            }
            match index.get(&p) {
                Some(&k) => provenance[k].push(i),
                None => {
                    index.insert(p.clone(), points.len());
                    points.push(p);
                    provenance.push(vec![i]);
                }
            }
        }
        Ok(Self { labels, points, provenance })
    }

    pub fn ambient_dim(&self) -> usize {
        self.labels.len()
    }
}

/// Nearest fraction with denominator at most 64, if one is within 1e-9.
pub(crate) fn to_rational(x: f64) -> Option<Ratio<i64>> {
    (1..=64i64).find_map(|q| {
        let p = (x * q as f64).round();
        if (x * q as f64 - p).abs() < 1e-9 * q as f64 {
            Some(Ratio::new(p as i64, q))
        } else {
            None
        }
    })
}

/// Map every vertex to its vector of Pauli expectations on `labels`.
pub fn project_vertices(vs: &StabilizerVertexSet, labels: &[PauliWord]) -> Result<ProjectedPolytope> {
    if vs.d != 2 {
        return Err(Error::Unsupported("projections are defined through Pauli expectations".into()));
    }
    if labels.is_empty() {
        return Err(Error::InvalidLabel("no projection labels".into()));
    }
    if let Some(bad) = labels.iter().find(|w| w.num_qubits() != vs.n) {
        return Err(Error::InvalidLabel(format!("label {bad} does not act on {} qubits", vs.n)));
    }
    let raw = vs
        .states
        .iter()
        .map(|s| {
            labels
                .iter()
                .map(|w| {
                    let e = w.expectation_pure(s);
                    to_rational(e).ok_or_else(|| Error::Numerical(format!("expectation {e} is not rational")))
                })
                .collect::<Result<RationalVector>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ProjectedPolytope::from_points(labels.to_vec(), raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffstab::stabilizer_vertices;

    fn words(s: &str) -> Vec<PauliWord> {
        s.split_whitespace().map(|w| w.parse().unwrap()).collect()
    }

    #[test]
    fn rational_recovery() {
        assert_eq!(to_rational(0.5), Some(Ratio::new(1, 2)));
        assert_eq!(to_rational(-1.0 / 3.0), Some(Ratio::new(-1, 3)));
        assert_eq!(to_rational(std::f64::consts::PI), None);
    }

    #[test]
    fn octahedron_projection() {
        let vs = stabilizer_vertices(2, 1).unwrap();
        let pp = project_vertices(&vs, &words("X Y Z")).unwrap();
        assert_eq!(pp.points.len(), 6);
    }

    #[test]
    fn label_validation() {
        let vs = stabilizer_vertices(2, 2).unwrap();
        assert!(project_vertices(&vs, &words("XYZ")).is_err());
        assert!(project_vertices(&vs, &[]).is_err());
    }
}
