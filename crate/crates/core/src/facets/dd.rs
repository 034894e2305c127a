//! Facet enumeration by the double description method.
//!
//! Points p are homogenized to rows w = (1, p) scaled to integers, and the
//! extreme rays h = (b, a) of the cone { h : w . h >= 0 } are the facets
//! b + a . x >= 0 of the convex hull. Rays are integer vectors kept coprime;
//! all products run in checked i128 arithmetic.

use num_integer::Integer;
use num_rational::Ratio;

use super::project::{ProjectedPolytope, RationalVector};
use super::FacetInequality;
use crate::error::{Error, Result};
use crate::pauli::PauliWord;

/// constant + coeffs . x >= 0 (or = 0 for equations) in projected coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectedFacet {
    pub constant: i64,
    pub coeffs: Vec<i64>,
}

impl ProjectedFacet {
    pub fn evaluate(&self, p: &RationalVector) -> Ratio<i64> {
        p.iter().zip(&self.coeffs).fold(Ratio::from_integer(self.constant), |acc, (x, &c)| acc + x * c)
    }

    /// Embed into the full Pauli coefficient space of n qubits.
    pub fn to_inequality(&self, labels: &[PauliWord]) -> Result<FacetInequality> {
        let n = labels.first().map(|w| w.num_qubits()).unwrap_or(1);
        let mut alpha = vec![0i64; 4usize.pow(n as u32)];
        alpha[0] = self.constant;
        for (w, &c) in labels.iter().zip(&self.coeffs) {
            alpha[w.index()] += c;
        }
        FacetInequality::from_coefficients(n, &alpha)
    }
}

#[derive(Clone, Debug)]
pub struct Hull {
    pub labels: Vec<PauliWord>,
    /// Facets in lexicographic order of (constant, coeffs).
    pub facets: Vec<ProjectedFacet>,
    /// Affine equations satisfied by every point; empty when full-dimensional.
    pub equations: Vec<ProjectedFacet>,
    /// Affine dimension of the hull.
    pub dimension: usize,
}

impl Hull {
    pub fn inequalities(&self) -> Result<Vec<FacetInequality>> {
        self.facets.iter().map(|f| f.to_inequality(&self.labels)).collect()
    }

    /// Input points that are vertices of the hull: those whose tight facet
    /// normals, together with the equations, span the ambient space.
    pub fn vertices<'a>(&self, pp: &'a ProjectedPolytope) -> Vec<&'a RationalVector> {
        let zero = Ratio::from_integer(0);
        pp.points
            .iter()
            .filter(|p| {
                let mut normals: Vec<Vec<i64>> = self.equations.iter().map(|e| e.coeffs.clone()).collect();
                normals.extend(self.facets.iter().filter(|f| f.evaluate(p) == zero).map(|f| f.coeffs.clone()));
                rank(&normals) == pp.ambient_dim()
            })
            .collect()
    }

    /// Check validity, tightness on an affinely spanning subset and
    /// uniqueness of every facet.
    pub fn verify(&self, pp: &ProjectedPolytope) -> Result<()> {
        let rows = homogenize(&pp.points)?;
        for (k, f) in self.facets.iter().enumerate() {
            let mut tight = Vec::new();
            for (p, row) in pp.points.iter().zip(&rows) {
                let v = f.evaluate(p);
                if v < Ratio::from_integer(0) {
                    return Err(Error::Numerical(format!("facet {k} violated by a point")));
                }
                if v == Ratio::from_integer(0) {
                    tight.push(row.clone());
                }
            }
            if rank(&tight) != self.dimension {
                return Err(Error::Numerical(format!("facet {k} is not tight on a spanning set")));
            }
        }
        for e in &self.equations {
            if pp.points.iter().any(|p| e.evaluate(p) != Ratio::from_integer(0)) {
                return Err(Error::Numerical("equation not satisfied".into()));
            }
        }
        let mut sorted = self.facets.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.facets.len() {
            return Err(Error::Numerical("duplicate facets".into()));
        }
        Ok(())
    }
}

type Q = Ratio<i128>;

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

/// Rows (den, den * p) with den the lcm of the denominators of p.
fn homogenize(points: &[RationalVector]) -> Result<Vec<Vec<i64>>> {
    points
        .iter()
        .map(|p| {
            let den = p.iter().fold(1i64, |l, x| l.lcm(x.denom()));
            let mut row = Vec::with_capacity(p.len() + 1);
            row.push(den);
            for x in p {
                row.push(x.numer().checked_mul(den / x.denom()).ok_or_else(|| overflow("homogenizing point"))?);
            }
            Ok(row)
        })
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
fn rref(rows: &[Vec<i64>]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c];
        for x in m[rank].iter_mut() {
            *x /= piv;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != Q::from_integer(0) {
                let f = m[r][c];
                for k in 0..cols {
                    let sub = m[rank][k] * f;
                    m[r][k] -= sub;
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    (m, pivots)
}

fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        rref(rows).1.len()
    }
}

/// Scale a rational vector to coprime integers with the same direction.
fn integerize(v: &[Q]) -> Result<Vec<i64>> {
    let l = v.iter().fold(1i128, |l, x| l.lcm(x.denom()));
    let ints: Vec<i128> = v
        .iter()
        .map(|x| x.numer().checked_mul(l / x.denom()).ok_or_else(|| overflow("integerizing vector")))
        .collect::<Result<_>>()?;
    normalize(&ints)
}

fn normalize(v: &[i128]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x)).max(1);
    v.iter().map(|x| i64::try_from(x / g).map_err(|_| overflow("ray entry exceeds i64"))).collect()
}

fn dot(row: &[i64], ray: &[i64]) -> Result<i128> {
    row.iter().zip(ray).try_fold(0i128, |acc, (&a, &b)| {
        acc.checked_add((a as i128).checked_mul(b as i128)?)
    })
    .ok_or_else(|| overflow("inner product"))
}

struct Ray {
    v: Vec<i64>,
    zero: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn popcount(bits: &[u64]) -> u32 {
    bits.iter().map(|b| b.count_ones()).sum()
}

/// Extreme rays of { h : W h >= 0 } for W with full column rank.
fn extreme_rays(w: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n_rows = w.len();
    let r = w[0].len();
    let words = n_rows.div_ceil(64);

    // Greedy choice of r independent rows in the given order.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..n_rows {
        let mut trial: Vec<Vec<i64>> = basis.iter().map(|&b| w[b].clone()).collect();
        trial.push(w[i].clone());
        if rank(&trial) == trial.len() {
            basis.push(i);
            if basis.len() == r {
                break;
            }
        }
    }
    if basis.len() != r {
        return Err(Error::Numerical("row set lost rank".into()));
    }

    // Columns of B^{-1} satisfy B x_j = e_j, so each is tight on r - 1 basis rows.
    let mut aug: Vec<Vec<Q>> = basis
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            let mut row: Vec<Q> = w[b].iter().map(|&x| Q::from_integer(x as i128)).collect();
            row.extend((0..r).map(|j| Q::from_integer((j == k) as i128)));
            row
        })
        .collect();
    for c in 0..r {
        let p = (c..r).find(|&i| aug[i][c] != Q::from_integer(0)).expect("basis rows are independent");
        aug.swap(c, p);
        let piv = aug[c][c];
        for x in aug[c].iter_mut() {
            *x /= piv;
        }
        for i in 0..r {
            if i != c && aug[i][c] != Q::from_integer(0) {
                let f = aug[i][c];
                for k in 0..2 * r {
                    let sub = aug[c][k] * f;
                    aug[i][k] -= sub;
                }
            }
        }
    }
    let mut rays = Vec::with_capacity(r);
    for j in 0..r {
        let col: Vec<Q> = (0..r).map(|i| aug[i][r + j]).collect();
        let v = integerize(&col)?;
        let mut zero = vec![0u64; words];
        for (k, &b) in basis.iter().enumerate() {
            if k != j {
                bit_set(&mut zero, b);
            }
        }
        rays.push(Ray { v, zero });
    }

    let in_basis: Vec<bool> = {
        let mut m = vec![false; n_rows];
        for &b in &basis {
            m[b] = true;
        }
        m
    };

    for (i, row) in w.iter().enumerate() {
        if in_basis[i] {
            continue;
        }
        let s: Vec<i128> = rays.iter().map(|ray| dot(row, &ray.v)).collect::<Result<_>>()?;
        let plus: Vec<usize> = (0..rays.len()).filter(|&k| s[k] > 0).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&k| s[k] < 0).collect();
        if minus.is_empty() {
            for (k, ray) in rays.iter_mut().enumerate() {
                if s[k] == 0 {
                    bit_set(&mut ray.zero, i);
                }
            }
            continue;
        }

        let mut fresh: Vec<Ray> = Vec::new();
        let mut common = vec![0u64; words];
        for &p in &plus {
            for &m in &minus {
                for (c, (a, b)) in common.iter_mut().zip(rays[p].zero.iter().zip(&rays[m].zero)) {
                    *c = a & b;
                }
                if (popcount(&common) as usize) + 2 < r {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(t, ray)| {
                    t != p && t != m && ray.zero.iter().zip(&common).all(|(z, c)| z & c == *c)
                });
                if blocked {
                    continue;
                }
                let (sp, sm) = (s[p], -s[m]);
                let combo: Vec<i128> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[m].v)
                    .map(|(&a, &b)| {
                        (b as i128)
                            .checked_mul(sp)
                            .and_then(|x| (a as i128).checked_mul(sm).and_then(|y| x.checked_add(y)))
                    })
                    .collect::<Option<_>>()
                    .ok_or_else(|| overflow("combining rays"))?;
                let mut zero = common.clone();
                bit_set(&mut zero, i);
                fresh.push(Ray { v: normalize(&combo)?, zero });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut ray) in rays.into_iter().enumerate() {
            if s[k] > 0 {
                next.push(ray);
            } else if s[k] == 0 {
                bit_set(&mut ray.zero, i);
                next.push(ray);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}

/// Facets of the convex hull of the projected points.
pub fn dd_hull(pp: &ProjectedPolytope) -> Result<Hull> {
    if pp.points.is_empty() {
        return Err(Error::InvalidLabel("empty point set".into()));
    }
    let k = pp.ambient_dim();
    let mut order: Vec<usize> = (0..pp.points.len()).collect();
    order.sort_by(|&a, &b| pp.points[a].cmp(&pp.points[b]));
    let sorted: Vec<RationalVector> = order.iter().map(|&i| pp.points[i].clone()).collect();
    let rows = homogenize(&sorted)?;

    let (echelon, pivots) = rref(&rows);
    let r = pivots.len();

    // Equations: null space of the homogenized rows.
    let mut equations = Vec::new();
    for free in (0..=k).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::from_integer(0); k + 1];
        v[free] = Q::from_integer(1);
        for (row, &pc) in echelon.iter().zip(&pivots) {
            v[pc] = -row[free];
        }
        let ints = integerize(&v)?;
        equations.push(ProjectedFacet { constant: ints[0], coeffs: ints[1..].to_vec() });
    }

    let facets = if r <= 1 {
        Vec::new()
    } else {
        let restricted: Vec<Vec<i64>> = rows.iter().map(|row| pivots.iter().map(|&c| row[c]).collect()).collect();
        let mut out: Vec<ProjectedFacet> = extreme_rays(&restricted)?
            .into_iter()
            .map(|ray| {
                let mut full = vec![0i64; k + 1];
                for (&c, &x) in pivots.iter().zip(&ray) {
                    full[c] = x;
                }
                ProjectedFacet { constant: full[0], coeffs: full[1..].to_vec() }
            })
            .collect();
        out.sort();
        out
    };
    Ok(Hull { labels: pp.labels.clone(), facets, equations, dimension: r.saturating_sub(1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> RationalVector {
        v.iter().map(|&x| Ratio::from_integer(x)).collect()
    }

    fn labels(k: usize) -> Vec<PauliWord> {
        ["X", "Y", "Z", "X"][..k].iter().map(|w| w.parse().unwrap()).collect()
    }

    #[test]
    fn square_has_four_facets() {
        let pts = vec![q(&[0, 0]), q(&[1, 0]), q(&[0, 1]), q(&[1, 1]), q(&[0, 0])];
        let pp = ProjectedPolytope::from_points(labels(2), pts).unwrap();
        let hull = dd_hull(&pp).unwrap();
        assert_eq!(hull.facets.len(), 4);
        assert!(hull.equations.is_empty());
        hull.verify(&pp).unwrap();
    }

    #[test]
    fn cube_with_interior_point() {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push(q(&[x, y, z]));
                }
            }
        }
        pts.push(q(&[0, 0, 0]));
        let pp = ProjectedPolytope::from_points(labels(3), pts).unwrap();
        let hull = dd_hull(&pp).unwrap();
        assert_eq!(hull.facets.len(), 6);
        hull.verify(&pp).unwrap();
    }

    #[test]
    fn flat_triangle_reports_equation() {
        let pts = vec![q(&[1, 0, 0]), q(&[0, 1, 0]), q(&[0, 0, 1])];
        let pp = ProjectedPolytope::from_points(labels(3), pts).unwrap();
        let hull = dd_hull(&pp).unwrap();
        assert_eq!(hull.dimension, 2);
        assert_eq!(hull.equations.len(), 1);
        assert_eq!(hull.facets.len(), 3);
        hull.verify(&pp).unwrap();
    }

    #[test]
    fn single_point() {
        let pp = ProjectedPolytope::from_points(labels(2), vec![q(&[3, 4])]).unwrap();
        let hull = dd_hull(&pp).unwrap();
        assert_eq!(hull.dimension, 0);
        assert!(hull.facets.is_empty());
        assert_eq!(hull.equations.len(), 2);
    }
}
