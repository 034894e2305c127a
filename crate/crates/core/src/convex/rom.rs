//! Robustness of magic and other linear programs over stabilizer vertices.

use std::sync::OnceLock;

use super::basis::{coordinates, operator_basis, pure_coordinates, SparseHermitian};
use super::ntd::CertificateStatus;
use super::revised::{sparse_feasible, sparse_minimize, Feasibility, RevisedOptions, SparseColumn};
use super::simplex::{feasible, solve, LinearProgram, LpStatus, SimplexOptions};
use crate::cliffstab::StabilizerVertexSet;
use crate::error::{Error, Result};
use crate::pauli::{pauli_vector, pauli_vector_pure};
use crate::qmat::DensityMatrix;
use crate::system::System;

#[derive(Clone, Debug)]
pub struct RomResult {
    /// ||x||_1 of the optimal pseudomixture.
    pub value: f64,
    /// Dual objective b.y with |A^T y| <= 1.
    pub lower_bound: f64,
    pub gap: f64,
    /// Signed weights over the vertex list, summing to 1.
    pub weights: Vec<f64>,
    /// max_i |(sum_S x_S a_S - b)_i| in basis coordinates.
    pub residual: f64,
    pub iterations: usize,
    pub status: CertificateStatus,
}

/// Vertex coordinates in an orthonormal operator basis.
#[derive(Clone, Debug)]
pub struct LpModel {
    dim: usize,
    basis: Vec<SparseHermitian>,
    /// cols[s][k] = <S|B_k|S>
    cols: Vec<Vec<f64>>,
    /// Pauli expectations of each vertex for qubit registers, basis
    /// coordinates otherwise, with zeros dropped.
    sparse: Vec<SparseColumn>,
    /// `sparse` followed by its negation, for signed decompositions.
    signed: Vec<SparseColumn>,
    pauli: bool,
}

impl LpModel {
    pub fn new(vs: &StabilizerVertexSet) -> Self {
        let dim = vs.dim();
        let basis = operator_basis(dim);
        let cols: Vec<Vec<f64>> = vs.states.iter().map(|s| pure_coordinates(&basis, s.amplitudes())).collect();
        let pauli = vs.d == 2;
        let dense: Vec<Vec<f64>> = if pauli {
            vs.states.iter().map(|s| pauli_vector_pure(s).expect("qubit register")).collect()
        } else {
            cols.clone()
        };
        let sparse: Vec<SparseColumn> = dense
            .iter()
            .map(|c| c.iter().enumerate().filter(|(_, v)| v.abs() > 1e-12).map(|(i, &v)| (i, v)).collect())
            .collect();
        let mut signed = sparse.clone();
        signed.extend(sparse.iter().map(|c| c.iter().map(|&(i, v)| (i, -v)).collect::<SparseColumn>()));
        Self { dim, basis, cols, sparse, signed, pauli }
    }

    pub fn for_system(system: System) -> Result<&'static LpModel> {
        static CELLS: [OnceLock<LpModel>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let idx = System::ALL.iter().position(|&s| s == system).expect("listed system");
        if let Some(m) = CELLS[idx].get() {
            return Ok(m);
        }
        let model = LpModel::new(system.vertices()?);
        Ok(CELLS[idx].get_or_init(|| model))
    }

    pub fn num_vertices(&self) -> usize {
        self.cols.len()
    }

    fn rows(&self) -> usize {
        self.basis.len()
    }

    fn rhs(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!("state dim {} vs vertex dim {}", rho.dim(), self.dim)));
        }
        Ok(coordinates(&self.basis, rho.matrix()))
    }

    fn reconstruction_residual(&self, x: &[f64], b: &[f64]) -> f64 {
        let mut worst = (x.iter().sum::<f64>() - 1.0).abs();
        for k in 0..self.rows() {
            let v: f64 = self.cols.iter().zip(x).map(|(c, &w)| c[k] * w).sum();
            worst = worst.max((v - b[k]).abs());
        }
        worst
    }

    fn check_dim(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!("state dim {} vs vertex dim {}", rho.dim(), self.dim)));
        }
        Ok(())
    }

    /// Constraint right-hand side matching the sparse columns.
    fn sparse_rhs(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        self.check_dim(rho)?;
        if self.pauli {
            pauli_vector(rho)
        } else {
            self.rhs(rho)
        }
    }

    /// min ||x||_1 subject to sum_S x_S |S><S| = rho.
    pub fn rom(&self, rho: &DensityMatrix, tol: f64) -> Result<RomResult> {
        let b = self.sparse_rhs(rho)?;
        let ns = self.num_vertices();
        let sol = sparse_minimize(b.len(), &self.signed, &vec![1.0; 2 * ns], &b, &RevisedOptions::default());
        let Some(sol) = sol else {
            return self.rom_dense(rho, tol);
        };
        let weights: Vec<f64> = (0..ns).map(|s| sol.x[s] - sol.x[s + ns]).collect();
        let value = weights.iter().map(|w| w.abs()).sum::<f64>();
        let worst = self
            .sparse
            .iter()
            .map(|c| c.iter().map(|&(i, a)| a * sol.y[i]).sum::<f64>().abs())
            .fold(0.0, f64::max);
        let scale = if worst > 1.0 { 1.0 / worst } else { 1.0 };
        let lower_bound = scale * b.iter().zip(&sol.y).map(|(b, y)| b * y).sum::<f64>();
        let gap = value - lower_bound;
        let residual = sol.residual.max((weights.iter().sum::<f64>() - 1.0).abs());
        let status = if gap <= tol { CertificateStatus::Certified } else { CertificateStatus::GapAboveTolerance };
        Ok(RomResult { value, lower_bound, gap, weights, residual, iterations: sol.iterations, status })
    }

    /// Robustness by the dense two-phase simplex in the orthonormal basis.
    pub fn rom_dense(&self, rho: &DensityMatrix, tol: f64) -> Result<RomResult> {
        let b = self.rhs(rho)?;
        let m = self.rows();
        let ns = self.num_vertices();
        let a = (0..m)
            .map(|k| {
                let mut row = Vec::with_capacity(2 * ns);
                row.extend(self.cols.iter().map(|c| c[k]));
                row.extend(self.cols.iter().map(|c| -c[k]));
                row
            })
            .collect();
        let lp = LinearProgram { a, b: b.clone(), c: vec![1.0; 2 * ns] };
        let sol = solve(&lp, &SimplexOptions::default())?;
        match sol.status {
            LpStatus::Optimal | LpStatus::IterationLimit => {}
            LpStatus::Infeasible => return Err(Error::Infeasible("vertex set does not span the state".into())),
            LpStatus::Unbounded => return Err(Error::Numerical("pseudomixture LP reported unbounded".into())),
        }
        let weights: Vec<f64> = (0..ns).map(|s| sol.x[s] - sol.x[s + ns]).collect();
        let value = weights.iter().map(|w| w.abs()).sum::<f64>();
        // Scale the dual into the feasible box so b.y is a valid bound.
        let worst = self
            .cols
            .iter()
            .map(|c| c.iter().zip(&sol.y).map(|(a, y)| a * y).sum::<f64>().abs())
            .fold(0.0, f64::max);
        let scale = if worst > 1.0 { 1.0 / worst } else { 1.0 };
        let lower_bound = scale * b.iter().zip(&sol.y).map(|(b, y)| b * y).sum::<f64>();
        let gap = value - lower_bound;
        let residual = self.reconstruction_residual(&weights, &b);
        let status = if sol.status == LpStatus::Optimal && gap <= tol {
            CertificateStatus::Certified
        } else {
            CertificateStatus::GapAboveTolerance
        };
        Ok(RomResult { value, lower_bound, gap, weights, residual, iterations: sol.iterations, status })
    }

    /// Exact membership of rho in the convex hull, by LP feasibility.
    pub fn contains(&self, rho: &DensityMatrix) -> Result<bool> {
        let b = self.sparse_rhs(rho)?;
        match sparse_feasible(b.len(), &self.sparse, &b, &RevisedOptions::default()) {
            Feasibility::Feasible(_) => return Ok(true),
            Feasibility::Infeasible => return Ok(false),
            Feasibility::Unknown => {}
        }
        self.contains_dense(rho)
    }

    /// Membership by the dense two-phase simplex.
    pub fn contains_dense(&self, rho: &DensityMatrix) -> Result<bool> {
        let b = self.rhs(rho)?;
        let a = (0..self.rows()).map(|k| self.cols.iter().map(|c| c[k]).collect()).collect();
        let lp = LinearProgram { a, b, c: vec![0.0; self.num_vertices()] };
        feasible(&lp, &SimplexOptions::default())
    }

    /// Smallest p with (1 - p) rho + p I/d inside the hull.
    pub fn critical_global(&self, rho: &DensityMatrix) -> Result<f64> {
        let b = self.rhs(rho)?;
        let mixed = self.rhs(&DensityMatrix::maximally_mixed(self.dim))?;
        let ns = self.num_vertices();
        let a = (0..self.rows())
            .map(|k| {
                let mut row: Vec<f64> = self.cols.iter().map(|c| c[k]).collect();
                row.push(b[k] - mixed[k]);
                row
            })
            .collect();
        let mut c = vec![0.0; ns + 1];
        c[ns] = 1.0;
        let lp = LinearProgram { a, b, c };
        let sol = solve(&lp, &SimplexOptions::default())?;
        match sol.status {
            LpStatus::Optimal => Ok(sol.x[ns].clamp(0.0, 1.0)),
            s => Err(Error::Numerical(format!("critical depolarization LP ended with {s:?}"))),
        }
    }
}

fn model_for(vs: &StabilizerVertexSet) -> Result<Option<&'static LpModel>> {
    if let Ok(system) = System::new(vs.d, vs.n) {
        if std::ptr::eq(system.vertices()?, vs) {
            return Ok(Some(LpModel::for_system(system)?));
        }
    }
    Ok(None)
}

/// Robustness of magic of rho with respect to the given vertex set.
pub fn rom(rho: &DensityMatrix, vs: &StabilizerVertexSet, tol: f64) -> Result<RomResult> {
    match model_for(vs)? {
        Some(m) => m.rom(rho, tol),
        None => LpModel::new(vs).rom(rho, tol),
    }
}

/// Robustness of magic for a state of one of the built-in systems.
pub fn rom_auto(rho: &DensityMatrix, tol: f64) -> Result<RomResult> {
    LpModel::for_system(System::from_dim(rho.dim())?)?.rom(rho, tol)
}

/// Hull membership decided by LP feasibility rather than by distance.
pub fn lp_membership(rho: &DensityMatrix, vs: &StabilizerVertexSet) -> Result<bool> {
    match model_for(vs)? {
        Some(m) => m.contains(rho),
        None => LpModel::new(vs).contains(rho),
    }
}

/// Exact global depolarization threshold as a single LP.
pub fn critical_global_lp(rho: &DensityMatrix, vs: &StabilizerVertexSet) -> Result<f64> {
    match model_for(vs)? {
        Some(m) => m.critical_global(rho),
        None => LpModel::new(vs).critical_global(rho),
    }
}
