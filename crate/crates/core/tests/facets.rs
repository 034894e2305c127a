use num_rational::Ratio;
use stabgeo::cliffstab::stabilizer_vertices;
use stabgeo::facets::{
    dd_hull, one_qudit_facets, project_vertices, qutrit_facet_classes, read_facet_file, representative_facets,
    two_qubit_facets, write_facet_file, FacetFile, ProjectedFacet, ProjectedPolytope, RationalVector,
};
use stabgeo::pauli::PauliWord;

fn words(s: &str) -> Vec<PauliWord> {
    s.split_whitespace().map(|w| w.parse().unwrap()).collect()
}

/// Brute-force vertex enumeration from an H-description: intersect every
/// k-subset of facet hyperplanes and keep the feasible points.
fn vertices_from_facets(k: usize, facets: &[ProjectedFacet]) -> Vec<RationalVector> {
    type Q = Ratio<i64>;
    let mut out: Vec<RationalVector> = Vec::new();
    let m = facets.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        // Solve coeffs . x = -constant for the chosen rows.
        let mut a: Vec<Vec<Q>> = idx
            .iter()
            .map(|&i| {
                let mut row: Vec<Q> = facets[i].coeffs.iter().map(|&c| Q::from_integer(c)).collect();
                row.push(Q::from_integer(-facets[i].constant));
                row
            })
            .collect();
        let mut ok = true;
        for c in 0..k {
            let Some(p) = (c..k).find(|&r| a[r][c] != Q::from_integer(0)) else {
                ok = false;
                break;
            };
            a.swap(c, p);
            let piv = a[c][c];
            for x in a[c].iter_mut() {
                *x /= piv;
            }
            for r in 0..k {
                if r != c {
                    let f = a[r][c];
                    for j in 0..=k {
                        let sub = a[c][j] * f;
                        a[r][j] -= sub;
                    }
                }
            }
        }
        if ok {
            let x: RationalVector = (0..k).map(|r| a[r][k]).collect();
            if facets.iter().all(|f| f.evaluate(&x) >= Ratio::from_integer(0)) && !out.contains(&x) {
                out.push(x);
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn rank(rows: &[Vec<i64>]) -> usize {
    type Q = Ratio<i64>;
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x)).collect()).collect();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != Q::from_integer(0) {
                let f = m[r][c] / m[rank][c];
                for k in 0..cols {
                    let sub = m[rank][k] * f;
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn extreme_points(pp: &ProjectedPolytope, facets: &[ProjectedFacet]) -> Vec<RationalVector> {
    let mut v = vertices_from_facets(pp.ambient_dim(), facets);
    v.sort();
    v
}

#[test]
fn two_qubit_facet_count_and_class_sizes() {
    let fc = two_qubit_facets().unwrap();
    assert_eq!(fc.len(), 22320);
    assert_eq!(fc.class_sizes, [240, 192, 3840, 5760, 1920, 2304, 5760, 2304]);
}

#[test]
fn stabilizer_states_satisfy_every_two_qubit_facet() {
    let fc = two_qubit_facets().unwrap();
    let vs = stabilizer_vertices(2, 2).unwrap();
    let pv = vs.pauli_vectors().unwrap();
    for (coeffs, _) in fc.coefficient_rows() {
        let mut tight = 0;
        for v in &pv {
            let val: f64 = coeffs.iter().zip(v).map(|(&a, &b)| a as f64 * b).sum();
            assert!(val > -1e-12);
            if val.abs() < 1e-12 {
                tight += 1;
            }
        }
        // a facet of a 15-dimensional polytope touches at least 15 vertices
        assert!(tight >= 15);
    }
}

#[test]
fn table_rows_are_tight_facets() {
    let vs = stabilizer_vertices(2, 2).unwrap();
    for f in representative_facets() {
        let min = vs.states.iter().map(|s| f.evaluate_pure(s).unwrap()).fold(f64::INFINITY, f64::min);
        assert!(min.abs() < 1e-12);
    }
}

#[test]
fn qutrit_facets_split_into_two_classes() {
    let classes = qutrit_facet_classes().unwrap();
    let ones = classes.iter().filter(|&&c| c == 1).count();
    assert_eq!(ones + classes.iter().filter(|&&c| c == 2).count(), 81);
    assert!(ones > 0 && ones < 81);
    assert_eq!(one_qudit_facets(3).unwrap().len(), 81);
}

#[test]
fn octahedron_hull() {
    let vs = stabilizer_vertices(2, 1).unwrap();
    let pp = project_vertices(&vs, &words("X Y Z")).unwrap();
    let hull = dd_hull(&pp).unwrap();
    assert_eq!(hull.facets.len(), 8);
    hull.verify(&pp).unwrap();
    for f in &hull.facets {
        assert_eq!(f.constant, 1);
        assert!(f.coeffs.iter().all(|c| c.abs() == 1));
    }
    assert_eq!(extreme_points(&pp, &hull.facets).len(), 6);
}

#[test]
fn chsh_projection_hull_round_trip() {
    let vs = stabilizer_vertices(2, 2).unwrap();
    let pp = project_vertices(&vs, &words("XX XY YX YY")).unwrap();
    let hull = dd_hull(&pp).unwrap();
    hull.verify(&pp).unwrap();
    assert!(hull.equations.is_empty());
    // The CHSH combination is valid but not a facet: it is implied.
    let chsh = ProjectedFacet { constant: 2, coeffs: vec![-1, -1, -1, 1] };
    assert!(pp.points.iter().all(|p| chsh.evaluate(p) >= Ratio::from_integer(0)));
    assert!(!hull.facets.contains(&chsh));
    // Vertices recovered from the facets are exactly the extreme input points.
    let recovered = extreme_points(&pp, &hull.facets);
    for v in &recovered {
        assert!(pp.points.contains(v));
    }
    // A point is a vertex iff the normals of its tight facets span the space.
    let vertices: Vec<&RationalVector> = pp
        .points
        .iter()
        .filter(|p| {
            let normals: Vec<Vec<i64>> = hull
                .facets
                .iter()
                .filter(|f| f.evaluate(p) == Ratio::from_integer(0))
                .map(|f| f.coeffs.clone())
                .collect();
            rank(&normals) == 4
        })
        .collect();
    assert_eq!(vertices.len(), recovered.len());
    assert_eq!(hull.vertices(&pp), vertices);
}

#[test]
fn three_body_projection_has_918_points() {
    let vs = stabilizer_vertices(2, 3).unwrap();
    let mut labels = Vec::new();
    for a in ['X', 'Y', 'Z'] {
        for b in ['X', 'Y', 'Z'] {
            for c in ['X', 'Y', 'Z'] {
                labels.push(format!("{a}{b}{c}").parse().unwrap());
            }
        }
    }
    let pp = project_vertices(&vs, &labels).unwrap();
    assert_eq!(pp.points.len(), 918);
}

pub fn two_body_xy_words() -> Vec<PauliWord> {
    words("XXI XYI YXI YYI XIX XIY YIX YIY IXX IXY IYX IYY")
}

#[test]
fn two_body_xy_hull_has_80_points_and_9984_facets() {
    let vs = stabilizer_vertices(2, 3).unwrap();
    let pp = project_vertices(&vs, &two_body_xy_words()).unwrap();
    // 80 vertices plus the origin
    assert_eq!(pp.points.len(), 81);
    let origin: RationalVector = vec![Ratio::from_integer(0); 12];
    assert!(pp.points.contains(&origin));
    let hull = dd_hull(&pp).unwrap();
    assert_eq!(hull.facets.len(), 9984);
    hull.verify(&pp).unwrap();
    // 56 of the 80 nonzero images are extreme and already span the hull
    let vertices = hull.vertices(&pp);
    assert_eq!(vertices.len(), 56);
    assert!(!vertices.contains(&&origin));
    let sub = ProjectedPolytope::from_points(pp.labels.clone(), vertices.into_iter().cloned().collect()).unwrap();
    assert_eq!(dd_hull(&sub).unwrap().facets, hull.facets);
    assert!(hull.facets.iter().all(|f| f.evaluate(&origin) > Ratio::from_integer(0)));
}

#[test]
fn facet_file_round_trip_for_two_qubit_facets() {
    let fc = two_qubit_facets().unwrap();
    let file = FacetFile::from_facets(2, &fc.facets[..50]).unwrap();
    let mut buf = Vec::new();
    write_facet_file(&mut buf, &file).unwrap();
    let back = read_facet_file(buf.as_slice()).unwrap();
    let ineqs = back.inequalities().unwrap();
    assert_eq!(ineqs.len(), 50);
    for (a, b) in ineqs.iter().zip(&fc.facets[..50]) {
        assert_eq!(a.coefficients(), b.coefficients());
    }
}
