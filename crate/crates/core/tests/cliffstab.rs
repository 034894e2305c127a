use std::collections::HashSet;

use stabgeo::cliffstab::{
    clifford_group, enumerate_clifford, gates, stabilizer_vertices, PauliAction,
};
use stabgeo::qmat::{fidelity_pure, ComplexMatrix};

fn key(u: &ComplexMatrix) -> Vec<(i64, i64)> {
    let pivot = u.as_slice().iter().find(|z| z.norm() > 1e-7).copied().unwrap();
    let ph = pivot.conj() / pivot.norm();
    u.as_slice()
        .iter()
        .map(|z| {
            let w = z * ph;
            ((w.re * 1e6).round() as i64, (w.im * 1e6).round() as i64)
        })
        .collect()
}

#[test]
fn two_qubit_group_has_11520_distinct_elements() {
    let g = enumerate_clifford(2, 2).unwrap();
    assert_eq!(g.len(), 11520);
    let keys: HashSet<_> = g.elements.iter().map(|e| key(&e.unitary)).collect();
    assert_eq!(keys.len(), 11520);
}

#[test]
fn two_qubit_group_is_closed_under_generators() {
    let g = clifford_group(2, 2).unwrap();
    let keys: HashSet<_> = g.elements.iter().map(|e| key(&e.unitary)).collect();
    let gens = [
        gates::on_qubit(&gates::h(), 0, 2),
        gates::on_qubit(&gates::h(), 1, 2),
        gates::on_qubit(&gates::s(), 0, 2),
        gates::on_qubit(&gates::s(), 1, 2),
        gates::cnot(0, 1, 2),
    ];
    assert!(keys.contains(&key(&ComplexMatrix::identity(4))));
    for e in g.elements.iter().step_by(7) {
        for gen in &gens {
            assert!(keys.contains(&key(&(gen * &e.unitary))));
        }
    }
}

#[test]
fn every_two_qubit_element_permutes_paulis() {
    let g = clifford_group(2, 2).unwrap();
    let acts = g.pauli_actions().unwrap();
    for a in acts.iter().step_by(97) {
        assert_eq!(a.perm[0], 0);
        let mut seen = a.perm.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..16).collect::<Vec<_>>());
    }
}

#[test]
fn three_qubit_vertex_count() {
    let v = stabilizer_vertices(2, 3).unwrap();
    assert_eq!(v.len(), 1080);
    // Every pair of distinct vertices has overlap in {0, 1/4, 1/2}: check the
    // first few rows exhaustively.
    for a in v.states.iter().take(20) {
        for b in &v.states {
            let f = fidelity_pure(a, b);
            let ok = [0.0, 0.125, 0.25, 0.5, 1.0].iter().any(|t| (f - t).abs() < 1e-10);
            assert!(ok, "unexpected overlap {f}");
        }
    }
}

#[test]
fn qubit_vertices_are_pauli_stabilized() {
    for n in 1..=3 {
        let v = stabilizer_vertices(2, n).unwrap();
        for row in v.pauli_vectors().unwrap() {
            let ones = row.iter().filter(|x| (x.abs() - 1.0).abs() < 1e-10).count();
            let zeros = row.iter().filter(|x| x.abs() < 1e-10).count();
            assert_eq!(ones, 1 << n);
            assert_eq!(ones + zeros, row.len());
        }
    }
}

#[test]
fn single_qubit_actions_cover_all_signed_permutations() {
    let g = clifford_group(2, 1).unwrap();
    let acts: HashSet<_> = g
        .pauli_actions()
        .unwrap()
        .iter()
        .map(|a: &PauliAction| (a.perm.clone(), a.sign.clone()))
        .collect();
    assert_eq!(acts.len(), 24);
}
