//! Primal-dual interior point method for problems with a nonnegative
//! orthant block and Hermitian PSD blocks:
//!
//! ```text
//! min  c.x + sum_b <C_b, X_b>
//! s.t. sum_j a_ij x_j + sum_b <A_ib, X_b> = b_i,   x >= 0,  X_b >= 0
//! ```
//!
//! with dual `max b.y` subject to `c - A^T y >= 0` and `C_b - sum_i y_i A_ib
//! >= 0`. Search directions use the HKM scaling with a Mehrotra
//! predictor-corrector; the Schur complement is factored by Cholesky.

use super::basis::SparseHermitian;
use crate::error::{Error, Result};
use crate::linalg::{cholesky, cholesky_solve, complex_cholesky, hpd_inverse, lower_triangular_inverse, RealMatrix};
use crate::qmat::{eigvalsh, ComplexMatrix, C64};

#[derive(Clone, Debug)]
pub struct PsdBlock {
    pub dim: usize,
    pub cost: ComplexMatrix,
    /// Constraints touching this block: (constraint index, A_ib).
    pub rows: Vec<(usize, SparseHermitian)>,
}

#[derive(Clone, Debug)]
pub struct ConicProblem {
    pub rhs: Vec<f64>,
    pub lp_cost: Vec<f64>,
    /// Column j of the orthant block as (constraint index, a_ij).
    pub lp_cols: Vec<Vec<(usize, f64)>>,
    pub psd: Vec<PsdBlock>,
}

#[derive(Clone, Copy, Debug)]
pub struct IpmOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for IpmOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 100 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IpmStatus {
    Converged,
    MaxIterations,
    Stalled,
}

#[derive(Clone, Debug)]
pub struct IpmSolution {
    pub x: Vec<f64>,
    pub z: Vec<f64>,
    pub xs: Vec<ComplexMatrix>,
    pub zs: Vec<ComplexMatrix>,
    pub y: Vec<f64>,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub primal_infeasibility: f64,
    pub dual_infeasibility: f64,
    pub iterations: usize,
    pub status: IpmStatus,
}

struct Iterate {
    x: Vec<f64>,
    z: Vec<f64>,
    xs: Vec<ComplexMatrix>,
    zs: Vec<ComplexMatrix>,
    y: Vec<f64>,
}

struct Direction {
    dx: Vec<f64>,
    dz: Vec<f64>,
    dxs: Vec<ComplexMatrix>,
    dzs: Vec<ComplexMatrix>,
    dy: Vec<f64>,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl ConicProblem {
    fn m(&self) -> usize {
        self.rhs.len()
    }

    fn validate(&self) -> Result<()> {
        let m = self.m();
        if self.lp_cost.len() != self.lp_cols.len() {
            return Err(Error::DimensionMismatch("orthant cost and columns differ in length".into()));
        }
        let bad_lp = self.lp_cols.iter().flatten().any(|&(i, _)| i >= m);
        let bad_psd = self.psd.iter().any(|b| {
            b.cost.rows() != b.dim || b.rows.iter().any(|(i, a)| *i >= m || a.dim != b.dim)
        });
        if bad_lp || bad_psd {
            return Err(Error::DimensionMismatch("constraint index or block size out of range".into()));
        }
        Ok(())
    }

    /// A(x, X)
    fn apply(&self, x: &[f64], xs: &[ComplexMatrix]) -> Vec<f64> {
        let mut out = vec![0.0; self.m()];
        for (col, &xj) in self.lp_cols.iter().zip(x) {
            for &(i, a) in col {
                out[i] += a * xj;
            }
        }
        for (b, xb) in self.psd.iter().zip(xs) {
            for (i, a) in &b.rows {
                out[*i] += a.inner(xb);
            }
        }
        out
    }

    /// A^T y split into blocks.
    fn adjoint(&self, y: &[f64]) -> (Vec<f64>, Vec<ComplexMatrix>) {
        let lp = self.lp_cols.iter().map(|col| col.iter().map(|&(i, a)| a * y[i]).sum()).collect();
        let psd = self
            .psd
            .iter()
            .map(|b| {
                let mut m = ComplexMatrix::zeros(b.dim, b.dim);
                for (i, a) in &b.rows {
                    if y[*i] != 0.0 {
                        a.add_scaled_to(y[*i], &mut m);
                    }
                }
                m
            })
            .collect();
        (lp, psd)
    }

    fn primal_objective(&self, it: &Iterate) -> f64 {
        let lp: f64 = self.lp_cost.iter().zip(&it.x).map(|(c, x)| c * x).sum();
        let psd: f64 = self.psd.iter().zip(&it.xs).map(|(b, x)| b.cost.real_trace_product(x)).sum();
        lp + psd
    }

    fn order(&self) -> usize {
        self.lp_cols.len() + self.psd.iter().map(|b| b.dim).sum::<usize>()
    }
}

/// Largest step keeping x + a dx >= 0.
fn orthant_step(x: &[f64], dx: &[f64]) -> f64 {
    x.iter().zip(dx).filter(|(_, &d)| d < 0.0).map(|(&v, &d)| -v / d).fold(f64::INFINITY, f64::min)
}

/// Largest step keeping X + a dX positive semidefinite.
fn psd_step(x: &ComplexMatrix, dx: &ComplexMatrix) -> Result<f64> {
    let linv = lower_triangular_inverse(&complex_cholesky(x)?);
    let m = (&(&linv * dx) * &linv.adjoint()).hermitian_part();
    let lmin = eigvalsh(&m)?[0];
    Ok(if lmin < 0.0 { -1.0 / lmin } else { f64::INFINITY })
}

fn complementarity(it: &Iterate, d: Option<(&Direction, f64, f64)>) -> f64 {
    let mut total = 0.0;
    for j in 0..it.x.len() {
        let (x, z) = match d {
            Some((d, ap, ad)) => (it.x[j] + ap * d.dx[j], it.z[j] + ad * d.dz[j]),
            None => (it.x[j], it.z[j]),
        };
        total += x * z;
    }
    for b in 0..it.xs.len() {
        total += match d {
            Some((d, ap, ad)) => {
                let mut x = it.xs[b].clone();
                x.axpy(C64::new(ap, 0.0), &d.dxs[b]);
                let mut z = it.zs[b].clone();
                z.axpy(C64::new(ad, 0.0), &d.dzs[b]);
                x.real_trace_product(&z)
            }
            None => it.xs[b].real_trace_product(&it.zs[b]),
        };
    }
    total
}

pub fn solve_conic(problem: &ConicProblem, opts: &IpmOptions) -> Result<IpmSolution> {
    problem.validate()?;
    let m = problem.m();
    let n_order = problem.order().max(1) as f64;
    let b_norm = norm(&problem.rhs);
    let c_norm = norm(&problem.lp_cost).max(problem.psd.iter().map(|b| b.cost.frobenius_norm()).fold(0.0, f64::max));

    // Starting point scaled in the spirit of common SDP codes.
    let max_a = problem
        .psd
        .iter()
        .flat_map(|b| b.rows.iter().map(|(_, a)| a.entries.iter().map(|e| e.2.norm_sqr()).sum::<f64>().sqrt()))
        .chain(problem.lp_cols.iter().flatten().map(|e| e.1.abs()))
        .fold(1.0, f64::max);
    let xi = (n_order.sqrt()).max(1.0 + b_norm / (1.0 + max_a)).max(1.0);
    let eta = (n_order.sqrt()).max(1.0 + c_norm.max(max_a)).max(1.0);
    let mut it = Iterate {
        x: vec![xi; problem.lp_cols.len()],
        z: vec![eta; problem.lp_cols.len()],
        xs: problem.psd.iter().map(|b| ComplexMatrix::identity(b.dim).scale_real(xi)).collect(),
        zs: problem.psd.iter().map(|b| ComplexMatrix::identity(b.dim).scale_real(eta)).collect(),
        y: vec![0.0; m],
    };

    let mut status = IpmStatus::MaxIterations;
    let mut iterations = 0;
    let mut pobj = 0.0;
    let mut dobj = 0.0;
    let mut pinf = f64::INFINITY;
    let mut dinf = f64::INFINITY;

    for iter in 0..=opts.max_iter {
        iterations = iter;
        let ax = problem.apply(&it.x, &it.xs);
        let rp: Vec<f64> = problem.rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
        let (aty_lp, aty_psd) = problem.adjoint(&it.y);
        let rd: Vec<f64> = (0..it.x.len()).map(|j| problem.lp_cost[j] - it.z[j] - aty_lp[j]).collect();
        let rds: Vec<ComplexMatrix> = problem
            .psd
            .iter()
            .enumerate()
            .map(|(b, blk)| &(&blk.cost - &it.zs[b]) - &aty_psd[b])
            .collect();

        pobj = problem.primal_objective(&it);
        dobj = problem.rhs.iter().zip(&it.y).map(|(b, y)| b * y).sum();
        pinf = norm(&rp) / (1.0 + b_norm);
        let rd_norm = (rd.iter().map(|v| v * v).sum::<f64>() + rds.iter().map(|r| r.frobenius_norm().powi(2)).sum::<f64>()).sqrt();
        dinf = rd_norm / (1.0 + c_norm);
        let mu = complementarity(&it, None) / n_order;
        let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        let compl = mu * n_order / (1.0 + pobj.abs() + dobj.abs());

        if pinf < opts.tol && dinf < opts.tol && gap < opts.tol && compl < opts.tol {
            status = IpmStatus::Converged;
            break;
        }
        if iter == opts.max_iter {
            break;
        }

        let ws: Vec<ComplexMatrix> = match it.zs.iter().map(hpd_inverse).collect::<Result<Vec<_>>>() {
            Ok(w) => w,
            Err(_) => {
                status = IpmStatus::Stalled;
                break;
            }
        };

        // Schur complement M_ik = A_i(D A_k) with D the HKM scaling.
        let mut schur = RealMatrix::zeros(m);
        for (j, col) in problem.lp_cols.iter().enumerate() {
            let dj = it.x[j] / it.z[j];
            for &(i, ai) in col {
                for &(k, ak) in col {
                    schur.add_to(i, k, dj * ai * ak);
                }
            }
        }
        for (b, blk) in problem.psd.iter().enumerate() {
            let x = &it.xs[b];
            let w = &ws[b];
            let n = blk.dim;
            for (k, ak) in &blk.rows {
                // G = X A_k W
                let mut g = ComplexMatrix::zeros(n, n);
                for &(r, c, v) in &ak.entries {
                    for p in 0..n {
                        let xv = x[(p, r)] * v;
                        if xv == C64::new(0.0, 0.0) {
                            continue;
                        }
                        for q in 0..n {
                            g[(p, q)] += xv * w[(c, q)];
                        }
                    }
                }
                for (i, ai) in &blk.rows {
                    schur.add_to(*i, *k, ai.inner(&g));
                }
            }
        }
        for i in 0..m {
            for k in i + 1..m {
                let v = 0.5 * (schur.get(i, k) + schur.get(k, i));
                schur.set(i, k, v);
                schur.set(k, i, v);
            }
        }
        let chol = match cholesky(&schur) {
            Ok(l) => l,
            Err(_) => {
                let diag_max = (0..m).map(|i| schur.get(i, i)).fold(0.0, f64::max).max(1e-300);
                for i in 0..m {
                    schur.add_to(i, i, 1e-12 * diag_max);
                }
                match cholesky(&schur) {
                    Ok(l) => l,
                    Err(_) => {
                        status = IpmStatus::Stalled;
                        break;
                    }
                }
            }
        };

        let direction = |mu_t: f64, corr: Option<&Direction>| -> Direction {
            // H = mu_t Z^{-1} - X - X R_d Z^{-1} - corr Z^{-1}; same on the orthant.
            let h_lp: Vec<f64> = (0..it.x.len())
                .map(|j| {
                    let c = corr.map(|d| d.dx[j] * d.dz[j]).unwrap_or(0.0);
                    (mu_t - c) / it.z[j] - it.x[j] - it.x[j] * rd[j] / it.z[j]
                })
                .collect();
            let h_psd: Vec<ComplexMatrix> = (0..it.xs.len())
                .map(|b| {
                    let n = it.xs[b].rows();
                    let mut inner = ComplexMatrix::identity(n).scale_real(mu_t);
                    inner = &inner - &(&it.xs[b] * &rds[b]);
                    if let Some(d) = corr {
                        inner = &inner - &(&d.dxs[b] * &d.dzs[b]);
                    }
                    &(&inner * &ws[b]) - &it.xs[b]
                })
                .collect();
            let ah = problem.apply(&h_lp, &h_psd);
            let rhs: Vec<f64> = rp.iter().zip(&ah).map(|(r, a)| r - a).collect();
            let dy = cholesky_solve(&chol, &rhs);
            let (atdy_lp, atdy_psd) = problem.adjoint(&dy);
            let dz: Vec<f64> = rd.iter().zip(&atdy_lp).map(|(r, a)| r - a).collect();
            let dzs: Vec<ComplexMatrix> = rds.iter().zip(&atdy_psd).map(|(r, a)| r - a).collect();
            let dx: Vec<f64> = (0..it.x.len())
                .map(|j| {
                    let c = corr.map(|d| d.dx[j] * d.dz[j]).unwrap_or(0.0);
                    (mu_t - c - it.x[j] * dz[j]) / it.z[j] - it.x[j]
                })
                .collect();
            let dxs: Vec<ComplexMatrix> = (0..it.xs.len())
                .map(|b| {
                    let n = it.xs[b].rows();
                    let mut inner = ComplexMatrix::identity(n).scale_real(mu_t);
                    inner = &inner - &(&it.xs[b] * &dzs[b]);
                    if let Some(d) = corr {
                        inner = &inner - &(&d.dxs[b] * &d.dzs[b]);
                    }
                    (&(&inner * &ws[b]) - &it.xs[b]).hermitian_part()
                })
                .collect();
            Direction { dx, dz, dxs, dzs, dy }
        };

        let steps = |d: &Direction| -> Result<(f64, f64)> {
            let mut ap = orthant_step(&it.x, &d.dx);
            let mut ad = orthant_step(&it.z, &d.dz);
            for b in 0..it.xs.len() {
                ap = ap.min(psd_step(&it.xs[b], &d.dxs[b])?);
                ad = ad.min(psd_step(&it.zs[b], &d.dzs[b])?);
            }
            Ok((ap, ad))
        };

        let pred = direction(0.0, None);
        let (ap, ad) = match steps(&pred) {
            Ok(s) => s,
            Err(_) => {
                status = IpmStatus::Stalled;
                break;
            }
        };
        let (ap, ad) = (ap.min(1.0), ad.min(1.0));
        let mu_aff = complementarity(&it, Some((&pred, ap, ad))) / n_order;
        let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);
        let corr = direction(sigma * mu, Some(&pred));
        let (ap, ad) = match steps(&corr) {
            Ok(s) => s,
            Err(_) => {
                status = IpmStatus::Stalled;
                break;
            }
        };
        let tau = 0.98;
        let ap = (tau * ap).min(1.0);
        let ad = (tau * ad).min(1.0);
        if !(ap.is_finite() && ad.is_finite()) || (ap < 1e-12 && ad < 1e-12) {
            status = IpmStatus::Stalled;
            break;
        }
        for j in 0..it.x.len() {
            it.x[j] += ap * corr.dx[j];
            it.z[j] += ad * corr.dz[j];
        }
        for b in 0..it.xs.len() {
            it.xs[b].axpy(C64::new(ap, 0.0), &corr.dxs[b]);
            it.zs[b].axpy(C64::new(ad, 0.0), &corr.dzs[b]);
            it.xs[b] = it.xs[b].hermitian_part();
            it.zs[b] = it.zs[b].hermitian_part();
        }
        for i in 0..m {
            it.y[i] += ad * corr.dy[i];
        }
    }

    Ok(IpmSolution {
        x: it.x,
        z: it.z,
        xs: it.xs,
        zs: it.zs,
        y: it.y,
        primal_objective: pobj,
        dual_objective: dobj,
        primal_infeasibility: pinf,
        dual_infeasibility: dinf,
        iterations,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm(dim: usize, entries: Vec<(usize, usize, C64)>) -> SparseHermitian {
        SparseHermitian { dim, entries }
    }

    #[test]
    fn pure_lp() {
        // min x0 + 2 x1 s.t. x0 + x1 = 1
        let p = ConicProblem {
            rhs: vec![1.0],
            lp_cost: vec![1.0, 2.0],
            lp_cols: vec![vec![(0, 1.0)], vec![(0, 1.0)]],
            psd: vec![],
        };
        let s = solve_conic(&p, &IpmOptions::default()).unwrap();
        assert_eq!(s.status, IpmStatus::Converged);
        assert!((s.primal_objective - 1.0).abs() < 1e-8);
        assert!((s.x[0] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn min_eigenvalue_sdp() {
        // min <C, X> s.t. Tr X = 1 gives lambda_min(C).
        let c = ComplexMatrix::from_vec(
            2,
            2,
            vec![C64::new(1.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(-0.5, 0.0)],
        )
        .unwrap();
        let one = C64::new(1.0, 0.0);
        let p = ConicProblem {
            rhs: vec![1.0],
            lp_cost: vec![],
            lp_cols: vec![],
            psd: vec![PsdBlock { dim: 2, cost: c.clone(), rows: vec![(0, herm(2, vec![(0, 0, one), (1, 1, one)]))] }],
        };
        let s = solve_conic(&p, &IpmOptions::default()).unwrap();
        let lmin = eigvalsh(&c).unwrap()[0];
        assert_eq!(s.status, IpmStatus::Converged);
        assert!((s.primal_objective - lmin).abs() < 1e-8);
        assert!((s.dual_objective - lmin).abs() < 1e-8);
    }
}
