//! Multi-qubit Pauli words.
//!
//! Words are indexed in base 4 with the letters ordered I, X, Y, Z and the
//! leftmost qubit most significant, so for two qubits the order is
//! II, IX, IY, IZ, XI, ..., ZZ. Qubit 0 is the leftmost tensor factor and the
//! most significant bit of a computational basis index.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, DensityMatrix, PureState, C64, I, ONE, ZERO};

const LETTERS: [char; 4] = ['I', 'X', 'Y', 'Z'];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliWord {
    letters: Vec<u8>,
}

impl PauliWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.iter().any(|&l| l > 3) {
            return Err(Error::InvalidLabel(format!("Pauli letter codes {letters:?}")));
        }
        Ok(Self { letters })
    }

    pub fn identity(n: usize) -> Self {
        Self { letters: vec![0; n] }
    }

    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut letters = vec![0u8; n];
        for k in (0..n).rev() {
            letters[k] = (index % 4) as u8;
            index /= 4;
        }
        Self { letters }
    }

    pub fn index(&self) -> usize {
        self.letters.iter().fold(0, |acc, &l| acc * 4 + l as usize)
    }

    pub fn num_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&l| l != 0).count()
    }

    /// Bit masks (x, z) over basis indices; Y sets both.
    fn masks(&self) -> (usize, usize) {
        let n = self.letters.len();
        let mut x = 0;
        let mut z = 0;
        for (k, &l) in self.letters.iter().enumerate() {
            let bit = 1 << (n - 1 - k);
            if l == 1 || l == 2 {
                x |= bit;
            }
            if l == 2 || l == 3 {
                z |= bit;
            }
        }
        (x, z)
    }

    fn y_count(&self) -> u32 {
        self.letters.iter().filter(|&&l| l == 2).count() as u32
    }

    /// P|j> = phase * |j ^ x|; returns (x mask, phase for each j) lazily.
    #[inline]
    fn action(&self, x: usize, z: usize, ny: u32, j: usize) -> (usize, C64) {
        // Y = i X Z, so the Y letters contribute i^{#Y} times (-1)^{popcount(j & z)}.
        let sign = if (j & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let ph = match ny % 4 {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        };
        (j ^ x, ph * sign)
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let dim = 1usize << self.letters.len();
        let (x, z, ny) = {
            let (x, z) = self.masks();
            (x, z, self.y_count())
        };
        let mut m = ComplexMatrix::zeros(dim, dim);
        for j in 0..dim {
            let (k, ph) = self.action(x, z, ny, j);
            m[(k, j)] = ph;
        }
        m
    }

    /// <psi|P|psi> (real for Hermitian P).
    pub fn expectation_pure(&self, psi: &PureState) -> f64 {
        let a = psi.amplitudes();
        let (x, z) = self.masks();
        let ny = self.y_count();
        let mut acc = ZERO;
        for (j, &aj) in a.iter().enumerate() {
            let (k, ph) = self.action(x, z, ny, j);
            acc += a[k].conj() * ph * aj;
        }
        acc.re
    }

    /// Tr(rho P).
    pub fn expectation(&self, rho: &DensityMatrix) -> f64 {
        let m = rho.matrix();
        let (x, z) = self.masks();
        let ny = self.y_count();
        let mut acc = ZERO;
        for j in 0..m.rows() {
            let (k, ph) = self.action(x, z, ny, j);
            acc += ph * m[(j, k)];
        }
        acc.re
    }

    /// Nonzero entries (row, col, value) of the matrix.
    pub fn entries(&self) -> Vec<(usize, usize, C64)> {
        let dim = 1usize << self.letters.len();
        let (x, z) = self.masks();
        let ny = self.y_count();
        (0..dim)
            .map(|j| {
                let (k, ph) = self.action(x, z, ny, j);
                (k, j, ph)
            })
            .collect()
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", LETTERS[l as usize])?;
        }
        Ok(())
    }
}

impl FromStr for PauliWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|ch| match ch.to_ascii_uppercase() {
                'I' => Ok(0),
                'X' => Ok(1),
                'Y' => Ok(2),
                'Z' => Ok(3),
                other => Err(Error::InvalidLabel(format!("'{other}' in Pauli word '{s}'"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if letters.is_empty() {
            return Err(Error::InvalidLabel("empty Pauli word".into()));
        }
        Ok(Self { letters })
    }
}

/// All 4^n words in index order.
pub fn all_words(n: usize) -> Vec<PauliWord> {
    (0..4usize.pow(n as u32)).map(|i| PauliWord::from_index(n, i)).collect()
}

pub fn num_qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::Unsupported(format!("dimension {dim} is not a qubit register")));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Vector of <P> over all words.
pub fn pauli_vector(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let n = num_qubits_for_dim(rho.dim())?;
    Ok(all_words(n).iter().map(|w| w.expectation(rho)).collect())
}

pub fn pauli_vector_pure(psi: &PureState) -> Result<Vec<f64>> {
    let n = num_qubits_for_dim(psi.dim())?;
    Ok(all_words(n).iter().map(|w| w.expectation_pure(psi)).collect())
}

/// rho = 2^{-n} sum_P c_P P
pub fn from_pauli_vector(n: usize, coeffs: &[f64]) -> Result<ComplexMatrix> {
    if coeffs.len() != 4usize.pow(n as u32) {
        return Err(Error::DimensionMismatch(format!("{} Pauli coefficients for {n} qubits", coeffs.len())));
    }
    let dim = 1usize << n;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        for (r, col, v) in PauliWord::from_index(n, i).entries() {
            m[(r, col)] += v * (c / dim as f64);
        }
    }
    Ok(m)
}
