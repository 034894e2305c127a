//! Revised simplex for `min c.x  s.t.  A x = b, x >= 0` with sparse columns
//! and few rows.
//!
//! The basis inverse is kept dense and updated by row operations; it is
//! rebuilt from an LU factorization at fixed intervals. Phases run on a
//! slightly perturbed right-hand side; answers are then checked against the
//! original data. Feasibility verdicts carry a certificate: a nonnegative
//! solution with small residual, or a Farkas vector y with y.a_j <= 0 for
//! every column and y.b > 0. When a check fails the verdict is `Unknown`
//! and callers fall back to the dense solver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Lu, RealMatrix};

/// Column of A as (row, value) pairs.
pub type SparseColumn = Vec<(usize, f64)>;

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    /// Nonnegative weights, indexed like the columns.
    Feasible(Vec<f64>),
    Infeasible,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SparseSolution {
    pub x: Vec<f64>,
    /// Duals with c_j - y.a_j >= 0 up to the optimality tolerance.
    pub y: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    /// max_i |(A x - b)_i|
    pub residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct RevisedOptions {
    pub feas_tol: f64,
    pub pivot_tol: f64,
    pub perturbation: f64,
    pub max_iter: usize,
}

impl Default for RevisedOptions {
    fn default() -> Self {
        Self { feas_tol: 1e-9, pivot_tol: 1e-9, perturbation: 1e-9, max_iter: 50_000 }
    }
}

const REINVERT_EVERY: usize = 64;
const DEGENERATE_RUN: usize = 50;

enum Phase {
    /// Cost 1 on artificial columns.
    One,
    /// Structural costs; artificial columns may not enter.
    Two,
}

struct State<'a> {
    m: usize,
    cols: &'a [SparseColumn],
    cost: &'a [f64],
    /// Row signs making the right-hand side nonnegative.
    sign: Vec<f64>,
    /// basis[i] < n: structural column; otherwise artificial n + i.
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    binv: Vec<f64>,
    b_eff: Vec<f64>,
    x: Vec<f64>,
    since_reinvert: usize,
    iterations: usize,
}

impl<'a> State<'a> {
    fn new(cols: &'a [SparseColumn], cost: &'a [f64], b: &[f64], perturbation: f64) -> Self {
        let m = b.len();
        let n = cols.len();
        let sign: Vec<f64> = b.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
        let scale = 1.0 + b.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let b_eff: Vec<f64> = b.iter().map(|&v| v.abs() + perturbation * scale * (1.0 + rng.random::<f64>())).collect();
        Self {
            m,
            cols,
            cost,
            sign,
            basis: (n..n + m).collect(),
            in_basis: vec![false; n],
            binv: (0..m * m).map(|k| if k / m == k % m { 1.0 } else { 0.0 }).collect(),
            x: b_eff.clone(),
            b_eff,
            since_reinvert: 0,
            iterations: 0,
        }
    }

    fn n(&self) -> usize {
        self.cols.len()
    }

    fn column_dense(&self, j: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.m];
        if j < self.n() {
            for &(i, a) in &self.cols[j] {
                v[i] = self.sign[i] * a;
            }
        } else {
            v[j - self.n()] = 1.0;
        }
        v
    }

    fn reinvert(&mut self) -> bool {
        let m = self.m;
        let mut bm = RealMatrix::zeros(m);
        for (k, &j) in self.basis.iter().enumerate() {
            for (i, v) in self.column_dense(j).into_iter().enumerate() {
                bm.set(i, k, v);
            }
        }
        let Ok(lu) = Lu::new(&bm) else {
            return false;
        };
        let mut e = vec![0.0; m];
        for c in 0..m {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[c] = 1.0;
            let col = lu.solve(&e);
            for r in 0..m {
                self.binv[r * m + c] = col[r];
            }
        }
        self.x = lu.solve(&self.b_eff);
        self.since_reinvert = 0;
        true
    }

    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut out = vec![0.0; m];
        if j < self.n() {
            for &(i, a) in &self.cols[j] {
                let s = self.sign[i] * a;
                for r in 0..m {
                    out[r] += self.binv[r * m + i] * s;
                }
            }
        } else {
            let i = j - self.n();
            for r in 0..m {
                out[r] = self.binv[r * m + i];
            }
        }
        out
    }

    fn basic_cost(&self, j: usize, phase: &Phase) -> f64 {
        let n = self.n();
        match phase {
            Phase::One => f64::from(u8::from(j >= n)),
            Phase::Two if j < n => self.cost[j],
            Phase::Two => 0.0,
        }
    }

    /// y = c_B^T B^-1 in the sign-flipped rows.
    fn duals(&self, phase: &Phase) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (r, &j) in self.basis.iter().enumerate() {
            let c = self.basic_cost(j, phase);
            if c != 0.0 {
                for (k, yk) in y.iter_mut().enumerate() {
                    *yk += c * self.binv[r * m + k];
                }
            }
        }
        y
    }

    fn dot(&self, y: &[f64], j: usize) -> f64 {
        self.cols[j].iter().map(|&(i, a)| y[i] * self.sign[i] * a).sum()
    }

    fn pivot(&mut self, r: usize, e: usize, alpha: &[f64]) -> bool {
        let m = self.m;
        let piv = alpha[r];
        let theta = self.x[r] / piv;
        for i in 0..m {
            self.x[i] -= theta * alpha[i];
        }
        self.x[r] = theta;
        let prow: Vec<f64> = self.binv[r * m..(r + 1) * m].iter().map(|v| v / piv).collect();
        for i in 0..m {
            let f = alpha[i];
            if i != r && f != 0.0 {
                for (v, &p) in self.binv[i * m..(i + 1) * m].iter_mut().zip(&prow) {
                    *v -= f * p;
                }
            }
        }
        self.binv[r * m..(r + 1) * m].copy_from_slice(&prow);
        if self.basis[r] < self.n() {
            self.in_basis[self.basis[r]] = false;
        }
        self.basis[r] = e;
        self.in_basis[e] = true;
        self.iterations += 1;
        self.since_reinvert += 1;
        self.since_reinvert < REINVERT_EVERY || self.reinvert()
    }

    /// Primal simplex; false when the iteration budget runs out, the
    /// problem looks unbounded, or the basis turns singular.
    fn optimize(&mut self, phase: Phase, opts: &RevisedOptions) -> bool {
        let mut degenerate = 0usize;
        let n = self.n();
        loop {
            if self.iterations >= opts.max_iter {
                return false;
            }
            let y = self.duals(&phase);
            let bland = degenerate >= DEGENERATE_RUN;
            let mut enter = None;
            let mut best = -opts.feas_tol;
            for j in 0..n {
                if self.in_basis[j] {
                    continue;
                }
                let c = if matches!(phase, Phase::One) { 0.0 } else { self.cost[j] };
                let d = c - self.dot(&y, j);
                if d < best {
                    enter = Some(j);
                    if bland {
                        break;
                    }
                    best = d;
                }
            }
            let Some(e) = enter else {
                return true;
            };
            let alpha = self.ftran(e);
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                if alpha[i] > opts.pivot_tol {
                    let ratio = self.x[i].max(0.0) / alpha[i];
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
                return false;
            };
            degenerate = if ratio <= 1e-14 { degenerate + 1 } else { 0 };
            if !self.pivot(r, e, &alpha) {
                return false;
            }
        }
    }

    /// Swap artificial columns out of the basis for structural ones.
    fn drive_out_artificials(&mut self) -> bool {
        let n = self.n();
        for r in 0..self.m {
            if self.basis[r] < n {
                continue;
            }
            let m = self.m;
            let row: Vec<f64> = self.binv[r * m..(r + 1) * m].to_vec();
            let best = (0..n)
                .filter(|&j| !self.in_basis[j])
                .map(|j| (j, self.cols[j].iter().map(|&(i, a)| row[i] * self.sign[i] * a).sum::<f64>()))
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()));
            match best {
                Some((j, v)) if v.abs() > 1e-7 => {
                    let alpha = self.ftran(j);
                    if !self.pivot(r, j, &alpha) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Basic solution for the original right-hand side.
    fn unperturbed(&mut self, b_abs: &[f64]) -> bool {
        self.b_eff = b_abs.to_vec();
        self.reinvert()
    }

    fn structural_x(&self) -> (Vec<f64>, f64, f64) {
        let n = self.n();
        let mut x = vec![0.0; n];
        let mut neg = 0.0f64;
        let mut art = 0.0f64;
        for (k, &j) in self.basis.iter().enumerate() {
            let v = self.x[k];
            if j < n {
                neg = neg.max(-v);
                x[j] = v.max(0.0);
            } else {
                art = art.max(v.abs());
            }
        }
        (x, neg, art)
    }
}

fn residual(cols: &[SparseColumn], x: &[f64], b: &[f64]) -> f64 {
    let mut ax = vec![0.0; b.len()];
    for (col, &w) in cols.iter().zip(x) {
        if w != 0.0 {
            for &(i, a) in col {
                ax[i] += a * w;
            }
        }
    }
    ax.iter().zip(b).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn valid(m: usize, cols: &[SparseColumn], b: &[f64]) -> bool {
    b.len() == m && cols.iter().flatten().all(|&(i, _)| i < m)
}

fn scale_of(b: &[f64]) -> f64 {
    1.0 + b.iter().fold(0.0f64, |a, v| a.max(v.abs()))
}

/// Decide whether b lies in the cone spanned by the columns.
pub fn sparse_feasible(m: usize, cols: &[SparseColumn], b: &[f64], opts: &RevisedOptions) -> Feasibility {
    if !valid(m, cols, b) {
        return Feasibility::Unknown;
    }
    let zero = vec![0.0; cols.len()];
    let mut st = State::new(cols, &zero, b, opts.perturbation);
    if !st.optimize(Phase::One, opts) {
        return Feasibility::Unknown;
    }
    let b_abs: Vec<f64> = b.iter().map(|v| v.abs()).collect();
    if !st.unperturbed(&b_abs) {
        return Feasibility::Unknown;
    }
    let scale = scale_of(b);
    let (x, neg, art) = st.structural_x();
    if neg <= opts.feas_tol * scale && art <= opts.feas_tol * scale && residual(cols, &x, b) <= 10.0 * opts.feas_tol * scale
    {
        return Feasibility::Feasible(x);
    }
    let y = st.duals(&Phase::One);
    let yb: f64 = y.iter().zip(&b_abs).map(|(a, b)| a * b).sum();
    let worst_col = (0..cols.len()).map(|j| st.dot(&y, j)).fold(0.0f64, f64::max);
    let ynorm = y.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    if worst_col <= 1e-12 * ynorm && yb > opts.feas_tol * scale * ynorm {
        return Feasibility::Infeasible;
    }
    Feasibility::Unknown
}

/// Minimize c.x over A x = b, x >= 0. Returns None when the problem is
/// infeasible, unbounded, or the answer fails its checks.
pub fn sparse_minimize(
    m: usize,
    cols: &[SparseColumn],
    cost: &[f64],
    b: &[f64],
    opts: &RevisedOptions,
) -> Option<SparseSolution> {
    if !valid(m, cols, b) || cost.len() != cols.len() {
        return None;
    }
    let mut st = State::new(cols, cost, b, opts.perturbation);
    let scale = scale_of(b);
    if !st.optimize(Phase::One, opts) {
        return None;
    }
    let (_, _, art) = st.structural_x();
    if art > 1e3 * opts.perturbation * scale * m as f64 || !st.drive_out_artificials() {
        return None;
    }
    if !st.optimize(Phase::Two, opts) {
        return None;
    }
    let b_abs: Vec<f64> = b.iter().map(|v| v.abs()).collect();
    if !st.unperturbed(&b_abs) {
        return None;
    }
    let (x, neg, _) = st.structural_x();
    let res = residual(cols, &x, b);
    if neg > opts.feas_tol * scale || res > 10.0 * opts.feas_tol * scale {
        return None;
    }
    let y_flipped = st.duals(&Phase::Two);
    let y: Vec<f64> = y_flipped.iter().zip(&st.sign).map(|(y, s)| y * s).collect();
    let objective = cost.iter().zip(&x).map(|(c, x)| c * x).sum();
    Some(SparseSolution { x, y, objective, iterations: st.iterations, residual: res })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_to_sparse(cols: &[Vec<f64>]) -> Vec<SparseColumn> {
        cols.iter().map(|c| c.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(i, &v)| (i, v)).collect()).collect()
    }

    fn square() -> Vec<SparseColumn> {
        // vertices of the unit square in homogeneous coordinates (1, x, y)
        dense_to_sparse(&[vec![1.0, 0.0, 0.0], vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 1.0]])
    }

    #[test]
    fn square_cone() {
        let cols = square();
        let opts = RevisedOptions::default();
        match sparse_feasible(3, &cols, &[1.0, 0.3, 0.9], &opts) {
            Feasibility::Feasible(x) => {
                assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                assert!(x.iter().all(|&v| v >= 0.0));
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(sparse_feasible(3, &cols, &[1.0, 1.2, 0.5], &opts), Feasibility::Infeasible);
        assert_eq!(sparse_feasible(3, &cols, &[1.0, -0.1, 0.5], &opts), Feasibility::Infeasible);
        assert!(matches!(sparse_feasible(3, &cols, &[1.0, 1.0, 1.0], &opts), Feasibility::Feasible(_)));
    }

    #[test]
    fn signed_decomposition() {
        // signed weights on the square vertices reproducing the point (1.5, 0.5)
        let mut cols = square();
        let neg: Vec<SparseColumn> = cols.iter().map(|c| c.iter().map(|&(i, a)| (i, -a)).collect()).collect();
        cols.extend(neg);
        let b = [1.0, 1.5, 0.5];
        let sol = sparse_minimize(3, &cols, &[1.0; 8], &b, &RevisedOptions::default()).unwrap();
        assert!(sol.residual < 1e-12);
        let dual: f64 = sol.y.iter().zip(&b).map(|(y, b)| y * b).sum();
        assert!((dual - sol.objective).abs() < 1e-9);
        for col in &cols {
            let v: f64 = col.iter().map(|&(i, a)| sol.y[i] * a).sum();
            assert!(v <= 1.0 + 1e-9);
        }
        // (1.5, 0.5) = 1.5 (1, 1/3) - 0.5 (0, 0) costs 2, and x = 1.5 forces at least that
        assert!((sol.objective - 2.0).abs() < 1e-9, "{}", sol.objective);
    }
}
