//! Trace distance to the stabilizer polytope with a primal-dual certificate.

use std::sync::OnceLock;

use serde::Serialize;

use super::basis::{coordinates, operator_basis, pure_coordinates, SparseHermitian};
use super::ipm::{solve_conic, ConicProblem, IpmOptions, IpmStatus, PsdBlock};
use crate::cliffstab::StabilizerVertexSet;
use crate::error::{Error, Result};
use crate::qmat::{eigh, trace_norm, ComplexMatrix, DensityMatrix, C64};
use crate::system::System;

/// Weights below this are dropped from the reported mixture.
pub const PRUNE_TOL: f64 = 1e-12;

/// Vertex sets larger than this are solved by column generation.
const COLGEN_MIN_VERTICES: usize = 200;
const COLGEN_INITIAL: usize = 96;
const COLGEN_BATCH: usize = 48;
const COLGEN_ROUNDS: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct NtdOptions {
    /// Required certified gap between the primal and dual values.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NtdOptions {
    fn default() -> Self {
        Self { tol: 1e-6, max_iter: 100 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateStatus {
    Certified,
    GapAboveTolerance,
}

#[derive(Clone, Debug)]
pub struct NtdResult {
    /// 1/2 ||rho - sigma||_1 for the returned mixture sigma (an upper bound).
    pub value: f64,
    /// Dual value Tr(Y rho) - max_S <S|Y|S> (a lower bound).
    pub lower_bound: f64,
    pub gap: f64,
    /// Mixture weights over the vertex list.
    pub weights: Vec<f64>,
    /// Dual witness Y with spectrum in [-1/2, 1/2].
    pub witness: ComplexMatrix,
    pub iterations: usize,
    pub status: CertificateStatus,
}

impl NtdResult {
    pub fn is_certified(&self) -> bool {
        self.status == CertificateStatus::Certified
    }
}

/// Minimum distance subject to a linear constraint on the state.
#[derive(Clone, Debug)]
pub struct ConstrainedNtd {
    /// Primal objective of the interior point solve.
    pub value: f64,
    /// Dual objective.
    pub lower_bound: f64,
    pub residual: f64,
    /// A minimizing state, projected onto the density matrices.
    pub state: DensityMatrix,
    /// Tr(state op) for the returned state.
    pub achieved: f64,
}

/// Precomputed data for repeated distance computations against one vertex set.
#[derive(Clone, Debug)]
pub struct NtdModel {
    dim: usize,
    basis: Vec<SparseHermitian>,
    /// Column of basis coordinates for each vertex, sparse.
    cols: Vec<Vec<(usize, f64)>>,
    vertices: Vec<Vec<C64>>,
}

impl NtdModel {
    pub fn new(vs: &StabilizerVertexSet) -> Self {
        let dim = vs.dim();
        let basis = operator_basis(dim);
        let total = basis.len();
        let cols = vs
            .states
            .iter()
            .map(|s| {
                let mut col: Vec<(usize, f64)> = pure_coordinates(&basis, s.amplitudes())
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| v.abs() > 1e-13)
                    .collect();
                col.push((total, 1.0));
                col
            })
            .collect();
        let vertices = vs.states.iter().map(|s| s.amplitudes().to_vec()).collect();
        Self { dim, basis, cols, vertices }
    }

    /// Cached model for one of the built-in systems.
    pub fn for_system(system: System) -> Result<&'static NtdModel> {
        static CELLS: [OnceLock<NtdModel>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let idx = System::ALL.iter().position(|&s| s == system).expect("listed system");
        if let Some(m) = CELLS[idx].get() {
            return Ok(m);
        }
        let model = NtdModel::new(system.vertices()?);
        Ok(CELLS[idx].get_or_init(|| model))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// sum_S w_S |S><S|
    pub fn mixture(&self, weights: &[f64]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for (v, &w) in self.vertices.iter().zip(weights) {
            if w == 0.0 {
                continue;
            }
            for r in 0..self.dim {
                let vr = v[r] * w;
                for c in 0..self.dim {
                    m[(r, c)] += vr * v[c].conj();
                }
            }
        }
        m
    }

    fn max_vertex_expectation(&self, y: &ComplexMatrix) -> f64 {
        self.vertices.iter().map(|v| y.expectation(v).re).fold(f64::NEG_INFINITY, f64::max)
    }

    fn problem(&self, rho: &DensityMatrix, active: &[usize]) -> ConicProblem {
        let total = self.basis.len();
        let mut rhs = coordinates(&self.basis, rho.matrix());
        rhs.push(1.0);
        let half = ComplexMatrix::identity(self.dim).scale_real(0.5);
        let plus: Vec<(usize, SparseHermitian)> = self.basis.iter().cloned().enumerate().collect();
        let minus: Vec<(usize, SparseHermitian)> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                (i, SparseHermitian { dim: b.dim, entries: b.entries.iter().map(|&(r, c, v)| (r, c, -v)).collect() })
            })
            .collect();
        debug_assert_eq!(plus.len(), total);
        ConicProblem {
            rhs,
            lp_cost: vec![0.0; active.len()],
            lp_cols: active.iter().map(|&k| self.cols[k].clone()).collect(),
            psd: vec![
                PsdBlock { dim: self.dim, cost: half.clone(), rows: plus },
                PsdBlock { dim: self.dim, cost: half, rows: minus },
            ],
        }
    }

    /// Certified distance of rho to the convex hull of the vertices.
    pub fn ntd(&self, rho: &DensityMatrix, opts: &NtdOptions) -> Result<NtdResult> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!("state dim {} vs vertex dim {}", rho.dim(), self.dim)));
        }
        // A vertex is its own nearest point.
        for (k, v) in self.vertices.iter().enumerate() {
            if rho.matrix().expectation(v).re >= 1.0 - 1e-13 {
                let mut weights = vec![0.0; self.vertices.len()];
                weights[k] = 1.0;
                let value = 0.5 * trace_norm(&(rho.matrix() - &self.mixture(&weights)))?;
                return Ok(NtdResult {
                    value,
                    lower_bound: 0.0,
                    gap: value,
                    weights,
                    witness: ComplexMatrix::zeros(self.dim, self.dim),
                    iterations: 0,
                    status: if value <= opts.tol { CertificateStatus::Certified } else { CertificateStatus::GapAboveTolerance },
                });
            }
        }

        let n = self.vertices.len();
        if n <= COLGEN_MIN_VERTICES {
            let all: Vec<usize> = (0..n).collect();
            return self.solve_restricted(rho, &all, opts);
        }

        // Column generation: solve on the vertices closest to rho, then add the
        // vertices the witness scores highest until the certificate closes.
        let fidelity: Vec<f64> = self.vertices.iter().map(|v| rho.matrix().expectation(v).re).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| fidelity[b].total_cmp(&fidelity[a]));
        let mut active: Vec<usize> = order[..COLGEN_INITIAL.min(n)].to_vec();
        let mut in_active = vec![false; n];
        for &k in &active {
            in_active[k] = true;
        }
        let mut iterations = 0;
        for _ in 0..COLGEN_ROUNDS {
            let mut r = self.solve_restricted(rho, &active, opts)?;
            iterations += r.iterations;
            r.iterations = iterations;
            if r.is_certified() {
                return Ok(r);
            }
            let scores: Vec<f64> = self.vertices.iter().map(|v| r.witness.expectation(v).re).collect();
            let mut fresh: Vec<usize> = (0..n).filter(|&k| !in_active[k]).collect();
            fresh.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
            fresh.truncate(COLGEN_BATCH);
            if fresh.is_empty() {
                return Ok(r);
            }
            for k in fresh {
                in_active[k] = true;
                active.push(k);
            }
        }
        let all: Vec<usize> = (0..n).collect();
        let mut r = self.solve_restricted(rho, &all, opts)?;
        r.iterations += iterations;
        Ok(r)
    }

    /// Solves with only the listed vertices as columns; the certificate is
    /// evaluated against every vertex.
    fn solve_restricted(&self, rho: &DensityMatrix, active: &[usize], opts: &NtdOptions) -> Result<NtdResult> {
        let problem = self.problem(rho, active);
        let ipm_opts = IpmOptions { tol: 1e-10, max_iter: opts.max_iter };
        let sol = solve_conic(&problem, &ipm_opts)?;
        if sol.status == IpmStatus::Stalled && sol.x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Convergence("interior point iterates diverged".into()));
        }

        // Primal: project the weights onto the simplex and recompute exactly.
        let mut weights = vec![0.0; self.vertices.len()];
        for (&k, &w) in active.iter().zip(&sol.x) {
            if w > PRUNE_TOL {
                weights[k] = w;
            }
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::Convergence("no positive mixture weights".into()));
        }
        for w in weights.iter_mut() {
            *w /= total;
        }
        let sigma = self.mixture(&weights);
        let value = 0.5 * trace_norm(&(rho.matrix() - &sigma))?;

        // Dual: clip the witness spectrum into [-1/2, 1/2] and evaluate exactly.
        let mut y = ComplexMatrix::zeros(self.dim, self.dim);
        for (b, &yi) in self.basis.iter().zip(&sol.y) {
            b.add_scaled_to(yi, &mut y);
        }
        let y = eigh(&y.hermitian_part())?.reconstruct_with(|l| l.clamp(-0.5, 0.5)).hermitian_part();
        let lower_bound = rho.expectation(&y) - self.max_vertex_expectation(&y);

        let gap = value - lower_bound;
        Ok(NtdResult {
            value,
            lower_bound,
            gap,
            weights,
            witness: y,
            iterations: sol.iterations,
            status: if gap <= opts.tol { CertificateStatus::Certified } else { CertificateStatus::GapAboveTolerance },
        })
    }

    /// Smallest distance over all states rho with Tr(rho op) = value.
    pub fn min_ntd_at_expectation(&self, op: &ComplexMatrix, value: f64, opts: &NtdOptions) -> Result<ConstrainedNtd> {
        if op.rows() != self.dim || !op.is_square() {
            return Err(Error::DimensionMismatch(format!("operator of size {} for dimension {}", op.rows(), self.dim)));
        }
        let total = self.basis.len();
        let negate = |b: &SparseHermitian| SparseHermitian { dim: b.dim, entries: b.entries.iter().map(|&(r, c, v)| (r, c, -v)).collect() };
        let plus: Vec<(usize, SparseHermitian)> = self.basis.iter().cloned().enumerate().collect();
        let minus: Vec<(usize, SparseHermitian)> = self.basis.iter().map(negate).enumerate().collect();
        let mut state_rows = minus.clone();
        state_rows.push((total + 1, SparseHermitian::from_dense(&ComplexMatrix::identity(self.dim))));
        state_rows.push((total + 2, SparseHermitian::from_dense(&op.hermitian_part())));
        let mut rhs = vec![0.0; total];
        rhs.extend([1.0, 1.0, value]);
        let half = ComplexMatrix::identity(self.dim).scale_real(0.5);
        let problem = ConicProblem {
            rhs,
            lp_cost: vec![0.0; self.cols.len()],
            lp_cols: self.cols.clone(),
            psd: vec![
                PsdBlock { dim: self.dim, cost: half.clone(), rows: plus },
                PsdBlock { dim: self.dim, cost: half, rows: minus },
                PsdBlock { dim: self.dim, cost: ComplexMatrix::zeros(self.dim, self.dim), rows: state_rows },
            ],
        };
        let sol = solve_conic(&problem, &IpmOptions { tol: 1e-10, max_iter: opts.max_iter })?;
        if sol.status == IpmStatus::Stalled && sol.x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Convergence("interior point iterates diverged".into()));
        }
        let rho = sol.xs[2].hermitian_part();
        let tr = rho.trace().re;
        let rho = DensityMatrix::new(eigh(&rho)?.reconstruct_with(|l| l.max(0.0) / tr).hermitian_part())?;
        Ok(ConstrainedNtd {
            value: sol.primal_objective,
            lower_bound: sol.dual_objective,
            residual: sol.primal_infeasibility,
            achieved: rho.expectation(op),
            state: rho,
        })
    }

    /// Solves over every vertex at once, without column generation.
    pub fn ntd_full(&self, rho: &DensityMatrix, opts: &NtdOptions) -> Result<NtdResult> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.solve_restricted(rho, &all, opts)
    }
}

/// Distance to the stabilizer polytope of the given vertex set.
pub fn ntd(rho: &DensityMatrix, vs: &StabilizerVertexSet, opts: &NtdOptions) -> Result<NtdResult> {
    if let Ok(system) = System::new(vs.d, vs.n) {
        if std::ptr::eq(system.vertices()?, vs) {
            return NtdModel::for_system(system)?.ntd(rho, opts);
        }
    }
    NtdModel::new(vs).ntd(rho, opts)
}

/// Distance for a state of one of the built-in systems, inferred from its dimension.
pub fn ntd_auto(rho: &DensityMatrix, opts: &NtdOptions) -> Result<NtdResult> {
    NtdModel::for_system(System::from_dim(rho.dim())?)?.ntd(rho, opts)
}

/// True when the certified distance is at most `tol`.
pub fn polytope_membership(rho: &DensityMatrix, vs: &StabilizerVertexSet, tol: f64) -> Result<bool> {
    let r = ntd(rho, vs, &NtdOptions { tol: tol.min(1e-6), ..NtdOptions::default() })?;
    Ok(r.value <= tol)
}
