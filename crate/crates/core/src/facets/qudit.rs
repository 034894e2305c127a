use std::f64::consts::PI;
use std::sync::OnceLock;

use super::{classify_orbits, FacetInequality};
use crate::cliffstab::{clifford_group, displacement, DisplacementIndex};
use crate::error::{Error, Result};
use crate::pauli::all_words;
use crate::qmat::{ComplexMatrix, C64};

/// One-qudit facet A^q = -I + sum_j Pi_j^{q_j}.
#[derive(Clone, Debug)]
pub struct QuditFacet {
    pub d: u32,
    pub q: Vec<u32>,
    pub facet: FacetInequality,
}

/// The d + 1 displacement labels (a, b) whose eigenbases are mutually
/// unbiased: Z, X, then X Z^k for k = 1..d-1.
fn mub_labels(d: u32) -> Vec<(u32, u32)> {
    let mut out = vec![(1, 0), (0, 1)];
    out.extend((1..d).map(|k| (k, 1)));
    out
}

/// Projector onto the omega^q eigenspace of a displacement with D^d = I.
fn eigenprojector(d: u32, dmat: &ComplexMatrix, q: u32) -> ComplexMatrix {
    let n = d as usize;
    let mut acc = ComplexMatrix::zeros(n, n);
    let mut power = ComplexMatrix::identity(n);
    for k in 0..d {
        let ph = C64::from_polar(1.0, -2.0 * PI * ((q * k) % d) as f64 / d as f64);
        acc.axpy(ph / d as f64, &power);
        power = &power * dmat;
    }
    acc
}

/// Integer Pauli coefficients of a qubit operator when they are rational with
/// small denominators.
pub(crate) fn integer_pauli_coefficients(op: &ComplexMatrix) -> Option<Vec<i64>> {
    let n = crate::pauli::num_qubits_for_dim(op.rows()).ok()?;
    let dim = op.rows() as f64;
    let real: Vec<f64> = all_words(n)
        .iter()
        .map(|w| {
            let mut acc = C64::new(0.0, 0.0);
            for (r, c, v) in w.entries() {
                acc += v.conj() * op[(r, c)];
            }
            acc.re / dim
        })
        .collect();
    (1..=64).find_map(|scale| {
        let scaled: Vec<f64> = real.iter().map(|x| x * scale as f64).collect();
        if scaled.iter().all(|x| (x - x.round()).abs() < 1e-9) {
            Some(scaled.iter().map(|x| x.round() as i64).collect())
        } else {
            None
        }
    })
}

pub fn one_qudit_facet(d: u32, q: &[u32]) -> Result<QuditFacet> {
    if d != 2 && d != 3 {
        return Err(Error::Unsupported(format!("one-qudit facets for d={d}")));
    }
    if q.len() != d as usize + 1 || q.iter().any(|&x| x >= d) {
        return Err(Error::InvalidLabel(format!("facet label {q:?} for d={d}")));
    }
    let n = d as usize;
    let mut op = ComplexMatrix::identity(n).scale_real(-1.0);
    for (&(a, b), &qj) in mub_labels(d).iter().zip(q) {
        let dm = displacement(&DisplacementIndex::single(d, a, b))?;
        op = &op + &eigenprojector(d, &dm, qj);
    }
    let op = op.hermitian_part();
    let facet = if d == 2 {
        let alpha = integer_pauli_coefficients(&op).expect("qubit facet has half-integer coefficients");
        FacetInequality::from_coefficients(1, &alpha)?
    } else {
        FacetInequality::from_operator(op)?
    };
    Ok(QuditFacet { d, q: q.to_vec(), facet })
}

/// All d^{d+1} facets in lexicographic order of q.
pub fn one_qudit_facets(d: u32) -> Result<Vec<QuditFacet>> {
    let len = d as usize + 1;
    let total = (d as usize).pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let mut q = vec![0u32; len];
            for k in (0..len).rev() {
                q[k] = (idx % d as usize) as u32;
                idx /= d as usize;
            }
            one_qudit_facet(d, &q)
        })
        .collect()
}

/// Class (1 or 2) of each of the 81 qutrit facets under the Clifford group.
/// Class 1 contains q = 0000.
pub fn qutrit_facet_classes() -> Result<&'static [u8]> {
    static CLASSES: OnceLock<Vec<u8>> = OnceLock::new();
    if let Some(c) = CLASSES.get() {
        return Ok(c);
    }
    let facets: Vec<FacetInequality> = one_qudit_facets(3)?.into_iter().map(|f| f.facet).collect();
    let orbits = classify_orbits(&facets, clifford_group(3, 1)?)?;
    if orbits.len() != 2 {
        return Err(Error::Numerical(format!("expected 2 qutrit facet classes, found {}", orbits.len())));
    }
    let mut classes = vec![0u8; facets.len()];
    for orbit in &orbits {
        let label = if orbit.contains(&0) { 1 } else { 2 };
        for &i in orbit {
            classes[i] = label;
        }
    }
    Ok(CLASSES.get_or_init(|| classes))
}

pub fn qutrit_class_of(q: &[u32]) -> Result<u8> {
    if q.len() != 4 || q.iter().any(|&x| x >= 3) {
        return Err(Error::InvalidLabel(format!("qutrit facet label {q:?}")));
    }
    let idx = q.iter().fold(0usize, |acc, &x| acc * 3 + x as usize);
    Ok(qutrit_facet_classes()?[idx])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffstab::stabilizer_vertices;

    #[test]
    fn qubit_facets_are_octahedron_faces() {
        let fs = one_qudit_facets(2).unwrap();
        assert_eq!(fs.len(), 8);
        // q = 000 gives <I> + <X> + <Y> + <Z> >= 0 in I, X, Y, Z order.
        assert_eq!(fs[0].facet.coefficients().unwrap(), &[1, 1, 1, 1]);
        for f in &fs {
            let c = f.facet.coefficients().unwrap();
            assert_eq!(c[0], 1);
            assert!(c[1..].iter().all(|x| x.abs() == 1));
        }
    }

    #[test]
    fn vertices_satisfy_all_one_qudit_facets() {
        for d in [2, 3] {
            let vs = stabilizer_vertices(d, 1).unwrap();
            for f in one_qudit_facets(d).unwrap() {
                let mut tight = 0;
                for s in &vs.states {
                    let v = f.facet.evaluate_pure(s).unwrap();
                    assert!(v > -1e-12, "d={d} q={:?} value {v}", f.q);
                    if v.abs() < 1e-12 {
                        tight += 1;
                    }
                }
                assert!(tight >= d as usize, "d={d} q={:?} tight {tight}", f.q);
            }
        }
    }

    #[test]
    fn qutrit_facet_count_and_classes() {
        assert_eq!(one_qudit_facets(3).unwrap().len(), 81);
        let classes = qutrit_facet_classes().unwrap();
        assert_eq!(classes[0], 1);
        assert!(classes.iter().all(|&c| c == 1 || c == 2));
        assert!(classes.iter().any(|&c| c == 2));
    }

    #[test]
    fn bad_labels() {
        assert!(one_qudit_facet(3, &[0, 0, 0]).is_err());
        assert!(one_qudit_facet(2, &[0, 2, 0]).is_err());
        assert!(one_qudit_facet(5, &[0; 6]).is_err());
    }
}
