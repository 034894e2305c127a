//! Orthonormal Hermitian operator bases and the coordinates of states in them.

use crate::pauli::{all_words, num_qubits_for_dim};
use crate::qmat::{ComplexMatrix, C64};

/// Sparse Hermitian matrix stored as (row, col, value) triples.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseHermitian {
    pub dim: usize,
    pub entries: Vec<(usize, usize, C64)>,
}

impl SparseHermitian {
    pub fn from_dense(m: &ComplexMatrix) -> Self {
        let mut entries = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m[(r, c)];
                if v.norm() > 1e-15 {
                    entries.push((r, c, v));
                }
            }
        }
        Self { dim: m.rows(), entries }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    /// Re Tr(self * x)
    #[inline]
    pub fn inner(&self, x: &ComplexMatrix) -> f64 {
        self.entries.iter().map(|&(r, c, v)| (v * x[(c, r)]).re).sum()
    }

    /// out += s * self
    pub fn add_scaled_to(&self, s: f64, out: &mut ComplexMatrix) {
        for &(r, c, v) in &self.entries {
            out[(r, c)] += v * s;
        }
    }
}

/// Basis orthonormal under Re Tr(AB): normalized Pauli words for qubit
/// registers, matrix units (E_jj, (E_jk + E_kj)/sqrt2, i(E_jk - E_kj)/sqrt2)
/// otherwise. The first element is proportional to the identity for qubits.
pub fn operator_basis(dim: usize) -> Vec<SparseHermitian> {
    if let Ok(n) = num_qubits_for_dim(dim) {
        let s = 1.0 / (dim as f64).sqrt();
        return all_words(n)
            .iter()
            .map(|w| SparseHermitian { dim, entries: w.entries().into_iter().map(|(r, c, v)| (r, c, v * s)).collect() })
            .collect();
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        out.push(SparseHermitian { dim, entries: vec![(j, j, C64::new(1.0, 0.0))] });
    }
    for j in 0..dim {
        for k in j + 1..dim {
            out.push(SparseHermitian { dim, entries: vec![(j, k, C64::new(h, 0.0)), (k, j, C64::new(h, 0.0))] });
            out.push(SparseHermitian { dim, entries: vec![(j, k, C64::new(0.0, h)), (k, j, C64::new(0.0, -h))] });
        }
    }
    out
}

/// Real coordinates Re Tr(B_k M).
pub fn coordinates(basis: &[SparseHermitian], m: &ComplexMatrix) -> Vec<f64> {
    basis.iter().map(|b| b.inner(m)).collect()
}

/// <psi|B_k|psi> for every basis element.
pub fn pure_coordinates(basis: &[SparseHermitian], amps: &[C64]) -> Vec<f64> {
    basis
        .iter()
        .map(|b| b.entries.iter().map(|&(r, c, v)| (amps[r].conj() * v * amps[c]).re).sum())
        .collect()
}

/// Inverse map: sum_k x_k B_k.
pub fn from_coordinates(basis: &[SparseHermitian], x: &[f64]) -> ComplexMatrix {
    let dim = basis[0].dim;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (b, &xk) in basis.iter().zip(x) {
        if xk != 0.0 {
            b.add_scaled_to(xk, &mut m);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases_are_orthonormal() {
        for dim in [2, 3, 4, 8] {
            let basis = operator_basis(dim);
            assert_eq!(basis.len(), dim * dim);
            for (i, a) in basis.iter().enumerate() {
                let ad = a.to_dense();
                assert!(ad.hermitian_deviation() < 1e-15);
                for (j, b) in basis.iter().enumerate() {
                    let ip = b.inner(&ad);
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - expect).abs() < 1e-12, "dim {dim} ({i},{j}) {ip}");
                }
            }
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        let m = ComplexMatrix::from_fn(3, 3, |r, c| {
            if r == c {
                C64::new(r as f64, 0.0)
            } else if r < c {
                C64::new(0.3, 0.1 * c as f64)
            } else {
                C64::new(0.3, -0.1 * r as f64)
            }
        });
        let basis = operator_basis(3);
        let x = coordinates(&basis, &m);
        assert!(from_coordinates(&basis, &x).max_abs_diff(&m) < 1e-14);
    }
}
