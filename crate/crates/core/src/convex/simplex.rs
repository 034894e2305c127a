//! Dense two-phase tableau simplex for `min c.x  s.t.  A x = b, x >= 0`.
//!
//! Each phase runs on a slightly perturbed right-hand side so that ties in
//! the ratio test are broken and degenerate stalling is avoided. Entering
//! columns follow Dantzig's rule, with Bland's rule after a run of
//! degenerate pivots. The tableau is periodically rebuilt from the original
//! data. When a phase ends the perturbation is removed and any basic
//! variable that turned slightly negative is repaired with dual simplex
//! pivots. The final basis is re-solved against the original data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Lu, RealMatrix};

#[derive(Clone, Debug)]
pub struct LinearProgram {
    /// Row-major constraint matrix, one row per equality.
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    /// Duals with A^T y <= c at optimality.
    pub y: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    /// max_i |(A x - b)_i|
    pub residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct SimplexOptions {
    /// Optimality tolerance on reduced costs and feasibility tolerance on
    /// the phase-one objective, relative to the size of b.
    pub feas_tol: f64,
    pub pivot_tol: f64,
    /// Relative size of the right-hand-side perturbation.
    pub perturbation: f64,
    pub max_iter: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { feas_tol: 1e-9, pivot_tol: 1e-9, perturbation: 1e-7, max_iter: 200_000 }
    }
}

const DEGENERATE_RUN: usize = 50;
const REINVERT_EVERY: usize = 100;
const CLEANUP_TOL: f64 = 1e-13;

enum Outcome {
    Optimal,
    Unbounded,
    IterationLimit,
}

struct Tableau {
    m: usize,
    n: usize,
    width: usize,
    t: Vec<f64>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    /// Rows of A with the sign of each row chosen so that b >= 0.
    a: Vec<f64>,
    b: Vec<f64>,
    /// Right-hand side in use, b plus the current perturbation.
    b_eff: Vec<f64>,
    cost: Vec<f64>,
    since_reinvert: usize,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Self {
        let m = lp.b.len();
        let n = lp.c.len();
        let width = n + m + 1;
        let mut a = vec![0.0; m * n];
        let mut b = vec![0.0; m];
        for i in 0..m {
            let s = if lp.b[i] < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                a[i * n + j] = s * lp.a[i][j];
            }
            b[i] = s * lp.b[i];
        }
        let mut tab = Self {
            m,
            n,
            width,
            t: vec![0.0; m * width],
            obj: vec![0.0; width],
            basis: (n..n + m).collect(),
            a,
            b: b.clone(),
            b_eff: b,
            cost: vec![0.0; n + m],
            since_reinvert: 0,
        };
        for i in 0..m {
            let row = &mut tab.t[i * width..(i + 1) * width];
            row[..n].copy_from_slice(&tab.a[i * n..(i + 1) * n]);
            row[n + i] = 1.0;
            row[width - 1] = tab.b[i];
        }
        tab
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    /// Entry (i, j) of [A | I].
    fn original(&self, i: usize, j: usize) -> f64 {
        if j < self.n {
            self.a[i * self.n + j]
        } else if j - self.n == i {
            1.0
        } else {
            0.0
        }
    }

    fn basis_matrix(&self) -> RealMatrix {
        let mut bm = RealMatrix::zeros(self.m);
        for (k, &j) in self.basis.iter().enumerate() {
            for i in 0..self.m {
                bm.set(i, k, self.original(i, j));
            }
        }
        bm
    }

    fn set_cost(&mut self, cost: Vec<f64>) {
        self.cost = cost;
        self.price();
    }

    /// Reduced costs for the current cost vector.
    fn price(&mut self) {
        let w = self.width;
        self.obj.iter_mut().for_each(|v| *v = 0.0);
        self.obj[..self.cost.len()].copy_from_slice(&self.cost);
        for i in 0..self.m {
            let cb = self.cost[self.basis[i]];
            if cb != 0.0 {
                for j in 0..w {
                    self.obj[j] -= cb * self.t[i * w + j];
                }
            }
        }
    }

    /// Rebuild B^-1 [A | I | b_eff] from the original data.
    fn reinvert(&mut self) -> bool {
        let Ok(lu) = Lu::new(&self.basis_matrix()) else {
            return false;
        };
        let (m, w) = (self.m, self.width);
        let mut col = vec![0.0; m];
        for j in 0..w {
            if j == w - 1 {
                col.copy_from_slice(&self.b_eff);
            } else {
                for (i, c) in col.iter_mut().enumerate() {
                    *c = self.original(i, j);
                }
            }
            let x = lu.solve(&col);
            for i in 0..m {
                self.t[i * w + j] = x[i];
            }
        }
        for (k, &j) in self.basis.iter().enumerate() {
            for i in 0..m {
                self.t[i * w + j] = if i == k { 1.0 } else { 0.0 };
            }
        }
        self.price();
        self.since_reinvert = 0;
        true
    }

    /// Perturb the current basic values by small positive amounts.
    fn perturb(&mut self, scale: f64, rng: &mut ChaCha8Rng) {
        let delta: Vec<f64> = (0..self.m).map(|_| scale * (1.0 + rng.random::<f64>())).collect();
        let bm = self.basis_matrix();
        let shift = bm.mul_vec(&delta);
        for i in 0..self.m {
            self.b_eff[i] = self.b[i] + shift[i];
        }
        self.reinvert();
    }

    fn unperturb(&mut self) {
        self.b_eff.copy_from_slice(&self.b);
        self.reinvert();
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.width;
        let piv = self.t[r * w + e];
        for j in 0..w {
            self.t[r * w + j] /= piv;
        }
        let (before, rest) = self.t.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = row[e];
            if f != 0.0 {
                for (x, &p) in row.iter_mut().zip(prow.iter()) {
                    *x -= f * p;
                }
                row[e] = 0.0;
            }
        }
        let f = self.obj[e];
        if f != 0.0 {
            for (x, &p) in self.obj.iter_mut().zip(prow.iter()) {
                *x -= f * p;
            }
            self.obj[e] = 0.0;
        }
        self.basis[r] = e;
        self.since_reinvert += 1;
        if self.since_reinvert >= REINVERT_EVERY {
            self.reinvert();
        }
    }

    /// Primal simplex over columns `0..limit`.
    fn optimize(&mut self, limit: usize, opts: &SimplexOptions, iters: &mut usize) -> Outcome {
        let mut degenerate = 0usize;
        loop {
            if *iters >= opts.max_iter {
                return Outcome::IterationLimit;
            }
            let bland = degenerate >= DEGENERATE_RUN;
            let mut enter = None;
            let mut best = -opts.feas_tol;
            for j in 0..limit {
                let d = self.obj[j];
                if d < best {
                    enter = Some(j);
                    if bland {
                        break;
                    }
                    best = d;
                }
            }
            let Some(e) = enter else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.at(i, e);
                if a > opts.pivot_tol {
                    let ratio = self.rhs(i).max(0.0) / a;
                    let better = match leave {
                        None => true,
                        Some((li, lr)) => ratio < lr || (ratio == lr && self.basis[i] < self.basis[li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return Outcome::Unbounded;
            };
            degenerate = if ratio <= 1e-14 { degenerate + 1 } else { 0 };
            self.pivot(r, e);
            *iters += 1;
        }
    }

    /// Dual simplex pivots until every basic value is nonnegative.
    fn cleanup(&mut self, limit: usize, opts: &SimplexOptions, iters: &mut usize) -> bool {
        loop {
            if *iters >= opts.max_iter {
                return false;
            }
            let worst = (0..self.m).map(|i| (i, self.rhs(i))).min_by(|a, b| a.1.total_cmp(&b.1));
            let Some((r, v)) = worst else {
                return true;
            };
            if v >= -CLEANUP_TOL {
                return true;
            }
            let mut enter: Option<(usize, f64)> = None;
            for j in 0..limit {
                let a = self.at(r, j);
                if a < -opts.pivot_tol {
                    let ratio = self.obj[j].max(0.0) / -a;
                    if enter.is_none_or(|(_, best)| ratio < best) {
                        enter = Some((j, ratio));
                    }
                }
            }
            let Some((e, _)) = enter else {
                return false;
            };
            self.pivot(r, e);
            *iters += 1;
        }
    }
}

/// Re-solve the final basis against the original data.
fn refine(lp: &LinearProgram, tab: &Tableau) -> Option<(Vec<f64>, Vec<f64>)> {
    let (m, n) = (tab.m, tab.n);
    let mut bmat = RealMatrix::zeros(m);
    for (k, &j) in tab.basis.iter().enumerate() {
        for i in 0..m {
            let v = if j < n {
                lp.a[i][j]
            } else if j - n == i {
                // artificial column expressed in the original row signs
                if lp.b[i] < 0.0 {
                    -1.0
                } else {
                    1.0
                }
            } else {
                0.0
            };
            bmat.set(i, k, v);
        }
    }
    let lu = Lu::new(&bmat).ok()?;
    let xb = lu.solve(&lp.b);
    let cb: Vec<f64> = tab.basis.iter().map(|&j| if j < n { lp.c[j] } else { 0.0 }).collect();
    let y = lu.solve_transpose(&cb);
    let mut x = vec![0.0; n];
    for (k, &j) in tab.basis.iter().enumerate() {
        if j < n {
            x[j] = xb[k].max(0.0);
        }
    }
    Some((x, y))
}

fn residual(lp: &LinearProgram, x: &[f64]) -> f64 {
    lp.a
        .iter()
        .zip(&lp.b)
        .map(|(row, &b)| (row.iter().zip(x).map(|(a, x)| a * x).sum::<f64>() - b).abs())
        .fold(0.0, f64::max)
}

fn check_shapes(lp: &LinearProgram) -> Result<()> {
    if lp.a.len() != lp.b.len() || lp.a.iter().any(|r| r.len() != lp.c.len()) {
        return Err(Error::DimensionMismatch("LP data shapes disagree".into()));
    }
    Ok(())
}

fn b_scale(lp: &LinearProgram) -> f64 {
    1.0 + lp.b.iter().fold(0.0f64, |a, b| a.max(b.abs()))
}

/// Phase one. Returns the tableau with a feasible basis, or the reason
/// there is none.
fn phase_one(
    lp: &LinearProgram,
    opts: &SimplexOptions,
    rng: &mut ChaCha8Rng,
    iters: &mut usize,
) -> (Tableau, Option<LpStatus>) {
    let mut tab = Tableau::new(lp);
    let (m, n) = (tab.m, tab.n);
    let scale = b_scale(lp);
    let mut cost = vec![0.0; n + m];
    cost[n..].iter_mut().for_each(|c| *c = 1.0);
    tab.set_cost(cost);
    tab.perturb(opts.perturbation * scale, rng);
    match tab.optimize(n + m, opts, iters) {
        Outcome::IterationLimit => return (tab, Some(LpStatus::IterationLimit)),
        Outcome::Unbounded => unreachable!("phase one objective is bounded below"),
        Outcome::Optimal => {}
    }
    tab.unperturb();
    if !tab.cleanup(n + m, opts, iters) {
        return (tab, Some(LpStatus::IterationLimit));
    }
    let infeas: f64 = (0..m).filter(|&i| tab.basis[i] >= n).map(|i| tab.rhs(i).max(0.0)).sum();
    if infeas > opts.feas_tol * scale {
        return (tab, Some(LpStatus::Infeasible));
    }
    // Drive artificial variables out of the basis where possible.
    for r in 0..m {
        if tab.basis[r] >= n {
            let best = (0..n)
                .filter(|j| !tab.basis.contains(j))
                .max_by(|&a, &b| tab.at(r, a).abs().total_cmp(&tab.at(r, b).abs()));
            if let Some(j) = best {
                if tab.at(r, j).abs() > 1e-7 {
                    tab.pivot(r, j);
                }
            }
        }
    }
    (tab, None)
}

/// Feasibility of A x = b, x >= 0.
pub fn feasible(lp: &LinearProgram, opts: &SimplexOptions) -> Result<bool> {
    check_shapes(lp)?;
    let mut iters = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    match phase_one(lp, opts, &mut rng, &mut iters).1 {
        None => Ok(true),
        Some(LpStatus::Infeasible) => Ok(false),
        Some(_) => Err(Error::Convergence("simplex iteration limit in phase one".into())),
    }
}

pub fn solve(lp: &LinearProgram, opts: &SimplexOptions) -> Result<LpSolution> {
    check_shapes(lp)?;
    let mut iters = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut tab, early) = phase_one(lp, opts, &mut rng, &mut iters);
    let (m, n) = (tab.m, tab.n);
    let fail = |status, iters| LpSolution {
        status,
        x: vec![0.0; n],
        y: vec![0.0; m],
        objective: f64::NAN,
        iterations: iters,
        residual: f64::INFINITY,
    };
    if let Some(status) = early {
        return Ok(fail(status, iters));
    }
    // Artificial columns stay only in redundant rows, where they sit at zero.
    let mut cost = lp.c.clone();
    cost.extend(std::iter::repeat_n(0.0, m));
    tab.set_cost(cost);
    tab.perturb(opts.perturbation * b_scale(lp), &mut rng);
    let mut status = match tab.optimize(n, opts, &mut iters) {
        Outcome::IterationLimit => LpStatus::IterationLimit,
        Outcome::Unbounded => return Ok(fail(LpStatus::Unbounded, iters)),
        Outcome::Optimal => LpStatus::Optimal,
    };
    tab.unperturb();
    if !tab.cleanup(n, opts, &mut iters) {
        status = LpStatus::IterationLimit;
    }
    let (x, y) = refine(lp, &tab).unwrap_or_else(|| {
        let mut x = vec![0.0; n];
        for (i, &j) in tab.basis.iter().enumerate() {
            if j < n {
                x[j] = tab.rhs(i).max(0.0);
            }
        }
        (x, vec![0.0; m])
    });
    let objective = lp.c.iter().zip(&x).map(|(c, x)| c * x).sum();
    let residual = residual(lp, &x);
    Ok(LpSolution { status, x, y, objective, iterations: iters, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lp() {
        // min -x0 - x1 s.t. x0 + 2 x1 + s0 = 4, 3 x0 + x1 + s1 = 6
        let lp = LinearProgram {
            a: vec![vec![1.0, 2.0, 1.0, 0.0], vec![3.0, 1.0, 0.0, 1.0]],
            b: vec![4.0, 6.0],
            c: vec![-1.0, -1.0, 0.0, 0.0],
        };
        let s = solve(&lp, &SimplexOptions::default()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective + 2.8).abs() < 1e-12);
        assert!((s.x[0] - 1.6).abs() < 1e-12 && (s.x[1] - 1.2).abs() < 1e-12);
        let by: f64 = lp.b.iter().zip(&s.y).map(|(b, y)| b * y).sum();
        assert!((by - s.objective).abs() < 1e-12);
        for j in 0..4 {
            let aty: f64 = (0..2).map(|i| lp.a[i][j] * s.y[i]).sum();
            assert!(aty <= lp.c[j] + 1e-12);
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram { a: vec![vec![1.0, 1.0]], b: vec![-1.0], c: vec![0.0, 0.0] };
        assert_eq!(solve(&lp, &SimplexOptions::default()).unwrap().status, LpStatus::Infeasible);
        assert!(!feasible(&lp, &SimplexOptions::default()).unwrap());
        let lp = LinearProgram { a: vec![vec![1.0, -1.0]], b: vec![1.0], c: vec![-1.0, 0.0] };
        assert_eq!(solve(&lp, &SimplexOptions::default()).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let lp = LinearProgram {
            a: vec![vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0], vec![1.0, 0.0, -1.0]],
            b: vec![1.0, 2.0, 0.0],
            c: vec![1.0, 2.0, 3.0],
        };
        let s = solve(&lp, &SimplexOptions::default()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(s.residual < 1e-12);
        assert!((s.objective - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's cycling instance in equality form.
        let lp = LinearProgram {
            a: vec![
                vec![0.25, -8.0, -1.0, 9.0, 1.0, 0.0, 0.0],
                vec![0.5, -12.0, -0.5, 3.0, 0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            ],
            b: vec![0.0, 0.0, 1.0],
            c: vec![-0.75, 20.0, -0.5, 6.0, 0.0, 0.0, 0.0],
        };
        let s = solve(&lp, &SimplexOptions::default()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective + 1.25).abs() < 1e-9);
    }

    #[test]
    fn barely_feasible() {
        // x0 = 1e-10 is the only solution
        let lp = LinearProgram { a: vec![vec![1.0, 0.0], vec![0.0, 1.0]], b: vec![1e-10, 0.0], c: vec![1.0, 1.0] };
        assert!(feasible(&lp, &SimplexOptions::default()).unwrap());
        let lp = LinearProgram { a: vec![vec![1.0, 1.0]], b: vec![-1e-6], c: vec![1.0, 1.0] };
        assert!(!feasible(&lp, &SimplexOptions::default()).unwrap());
    }
}
