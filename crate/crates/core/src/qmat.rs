//! Dense complex matrices, pure states and density matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance used when validating user supplied states.
pub const STATE_TOL: f64 = 1e-12;
/// Negative eigenvalues above this threshold are clamped to zero.
pub const CLAMP_TOL: f64 = 1e-10;

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// |u><v|
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    /// self += s * other
    pub fn axpy(&mut self, s: C64, other: &ComplexMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "axpy shape mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest |A - A^dagger| entry.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// <v|A|v>
    pub fn expectation(&self, v: &[C64]) -> C64 {
        let av = self.mul_vec(v);
        v.iter().zip(&av).map(|(a, b)| a.conj() * b).sum()
    }

    /// Re Tr(self * other) for square matrices of equal size.
    pub fn real_trace_product(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.data[r * self.cols + c];
                let b = other.data[c * other.cols + r];
                acc += a.re * b.re - a.im * b.im;
            }
        }
        acc
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// Kronecker product self (x) other.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ComplexMatrix::zeros(rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self[(r1, c1)];
                if a == ZERO {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * other[(r2, c2)];
                    }
                }
            }
        }
        out
    }

    /// Hermitian eigendecomposition by cyclic Jacobi rotations.
    pub fn eigh(&self) -> Result<Eigen> {
        eigh(self)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Eigenvalues in ascending order and the matching eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    /// Rebuild V diag(f(lambda)) V^dagger.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for r in 0..n {
                let vr = self.vectors[(r, k)] * w;
                for c in 0..n {
                    out[(r, c)] += vr * self.vectors[(c, k)].conj();
                }
            }
        }
        out
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
pub fn eigh(m: &ComplexMatrix) -> Result<Eigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("eigh on {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let scale = m.frobenius_norm().max(1e-300);
    let dev = m.hermitian_deviation();
    if dev > 1e-9 * scale.max(1.0) {
        return Err(Error::NonHermitian(dev));
    }
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in r + 1..n {
                s += a[(r, c)].norm_sqr();
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > 1e-15 * scale {
        if sweeps == JACOBI_MAX_SWEEPS {
            let residual = off(&a);
            if residual > 1e-10 * scale {
                return Err(Error::Convergence(format!("Jacobi off-diagonal mass {residual:e}")));
            }
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // U on (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                let u_pp = C64::new(cs, 0.0);
                let u_pq = C64::new(sn, 0.0);
                let u_qp = -phase.conj() * sn;
                let u_qq = phase.conj() * cs;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(Eigen { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eigh(m)?.values)
}

pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigvalsh(m)?.iter().map(|l| l.abs()).sum())
}

pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", rho.dim(), sigma.dim())));
    }
    Ok(0.5 * trace_norm(&(rho.matrix() - sigma.matrix()))?)
}

/// Partial trace over every subsystem not listed in `keep`.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows != total {
        return Err(Error::DimensionMismatch(format!(
            "matrix {}x{} does not match subsystem dims {dims:?}",
            m.rows, m.cols
        )));
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() || keep_sorted.iter().any(|&k| k >= dims.len()) {
        return Err(Error::InvalidLabel(format!("bad subsystem list {keep:?}")));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep_sorted.contains(k)).collect();
    let kept_dims: Vec<usize> = keep_sorted.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let dk: usize = kept_dims.iter().product();
    let dt: usize = traced_dims.iter().product();

    // Map (kept multi-index, traced multi-index) to the full linear index.
    let compose = |ki: usize, ti: usize| -> usize {
        let mut digits = vec![0usize; dims.len()];
        let mut rem = ki;
        for (pos, &k) in keep_sorted.iter().enumerate().rev() {
            digits[k] = rem % kept_dims[pos];
            rem /= kept_dims[pos];
        }
        let mut rem = ti;
        for (pos, &k) in traced.iter().enumerate().rev() {
            digits[k] = rem % traced_dims[pos];
            rem /= traced_dims[pos];
        }
        digits.iter().zip(dims).fold(0, |acc, (&dgt, &d)| acc * d + dgt)
    };

    let mut out = ComplexMatrix::zeros(dk, dk);
    for r in 0..dk {
        for c in 0..dk {
            let mut acc = ZERO;
            for t in 0..dt {
                acc += m[(compose(r, t), compose(c, t))];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Normalized state vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    amps: Vec<C64>,
}

impl PureState {
    /// Accepts amplitudes whose norm is already 1.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amps.is_empty() || (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("state norm {norm} is not 1")));
        }
        Ok(Self { amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amps.is_empty() || !norm.is_finite() || norm < 1e-300 {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(Self { amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::normalized(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Computational basis state |k>.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amps = vec![ZERO; dim];
        amps[k] = ONE;
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        PureState { amps }
    }

    pub fn apply(&self, u: &ComplexMatrix) -> Result<PureState> {
        if u.cols() != self.dim() || u.rows() != self.dim() {
            return Err(Error::DimensionMismatch(format!("{}x{} on dim {}", u.rows(), u.cols(), self.dim())));
        }
        Ok(PureState { amps: u.mul_vec(&self.amps) })
    }

    pub fn expectation(&self, op: &ComplexMatrix) -> C64 {
        op.expectation(&self.amps)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// Rescale so the first non-negligible amplitude is real and positive.
    pub fn phase_canonical(&self) -> PureState {
        let pivot = self.amps.iter().find(|a| a.norm() > 1e-9).copied().unwrap_or(ONE);
        let ph = pivot.conj() / pivot.norm();
        PureState { amps: self.amps.iter().map(|a| a * ph).collect() }
    }

    pub(crate) fn from_raw(amps: Vec<C64>) -> Self {
        Self { amps }
    }
}

/// |<psi|phi>|^2
pub fn fidelity_pure(psi: &PureState, phi: &PureState) -> f64 {
    psi.inner(phi).norm_sqr()
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", rho.dim(), sigma.dim())));
    }
    let sqrt_rho = eigh(rho.matrix())?.reconstruct_with(|l| l.max(0.0).sqrt());
    let inner = (&(&sqrt_rho * sigma.matrix()) * &sqrt_rho).hermitian_part();
    let s: f64 = eigvalsh(&inner)?.iter().map(|l| l.max(0.0).sqrt()).sum();
    Ok(s * s)
}

/// True when the two states agree up to a global phase.
pub fn equal_up_to_phase(psi: &PureState, phi: &PureState, tol: f64) -> bool {
    psi.dim() == phi.dim() && (1.0 - fidelity_pure(psi, phi)).abs() <= tol
}

/// Unit-trace positive semidefinite Hermitian matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity and trace, clamps tiny negative eigenvalues.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} density matrix", m.rows, m.cols)));
        }
        let dev = m.hermitian_deviation();
        if dev > STATE_TOL {
            return Err(Error::NonHermitian(dev));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let m = m.hermitian_part();
        let eig = eigh(&m)?;
        let min = eig.values[0];
        if min < -CLAMP_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        if min < 0.0 {
            let clamped = eig.reconstruct_with(|l| l.max(0.0));
            let tr = clamped.trace().re;
            return Ok(Self { m: clamped.scale_real(1.0 / tr).hermitian_part() });
        }
        Ok(Self { m })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self { m: ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()) }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { m: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64) }
    }

    /// Convex combination sum_k w_k |psi_k><psi_k|; weights are renormalized.
    pub fn mixture(weights: &[f64], states: &[PureState]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::DimensionMismatch("weights and states differ in length".into()));
        }
        let dim = states[0].dim();
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w < 0.0) || total <= 0.0 {
            return Err(Error::InvalidState("mixture weights must be nonnegative".into()));
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch("mixed state dimensions".into()));
            }
            m.axpy(C64::new(w / total, 0.0), &ComplexMatrix::outer(s.amplitudes(), s.amplitudes()));
        }
        Ok(Self { m })
    }

    /// Wrap a matrix known to be a valid state by construction.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    /// Re Tr(rho A)
    pub fn expectation(&self, op: &ComplexMatrix) -> f64 {
        self.m.real_trace_product(op)
    }

    pub fn purity(&self) -> f64 {
        self.m.real_trace_product(&self.m)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigvalsh(&self.m)
    }

    /// (1-p) rho + p sigma
    pub fn mix_with(&self, sigma: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
        if self.dim() != sigma.dim() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim(), sigma.dim())));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidState(format!("mixing parameter {p} outside [0, 1]")));
        }
        let mut m = self.m.scale_real(1.0 - p);
        m.axpy(C64::new(p, 0.0), &sigma.m);
        Ok(Self { m })
    }

    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
        Ok(Self { m: partial_trace(&self.m, dims, keep)? })
    }
}

/// Shannon entropy of a probability vector in bits.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let vals: Vec<f64> = rho.eigenvalues()?.into_iter().map(|l| l.max(0.0)).collect();
    Ok(shannon_entropy(&vals))
}
