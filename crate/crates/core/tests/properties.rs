use proptest::prelude::*;
use stabgeo::cliffstab::{clifford_group, gates};
use stabgeo::convex::lp_membership;
use stabgeo::measures::rom;
use stabgeo::measures::{self, binary_entropy};
use stabgeo::qmat::{von_neumann_entropy, ComplexMatrix, DensityMatrix};
use stabgeo::samplers::{haar_pure, hs_mixed, SeededRng};
use stabgeo::System;

const TOL: f64 = 1e-6;

fn ntd(rho: &DensityMatrix) -> f64 {
    let r = measures::ntd(rho).unwrap();
    assert!(r.is_certified());
    r.value
}

fn random_state(dim: usize, rng: &mut SeededRng) -> DensityMatrix {
    match (rng.uniform() * 3.0) as usize {
        0 => haar_pure(dim, rng).unwrap().density(),
        1 => hs_mixed(dim, rng).unwrap(),
        _ => haar_pure(dim, rng).unwrap().density().mix_with(&hs_mixed(dim, rng).unwrap(), rng.uniform()).unwrap(),
    }
}

fn random_clifford(system: System, rng: &mut SeededRng) -> ComplexMatrix {
    if system != System::Qubit3 {
        let g = clifford_group(system.d(), system.n()).unwrap();
        return g.elements[(rng.uniform() * g.len() as f64) as usize % g.len()].unitary.clone();
    }
    let n = 3;
    let mut u = ComplexMatrix::identity(8);
    for _ in 0..20 {
        let q = (rng.uniform() * 3.0) as usize % 3;
        let g = match (rng.uniform() * 3.0) as usize {
            0 => gates::on_qubit(&gates::h(), q, n),
            1 => gates::on_qubit(&gates::s(), q, n),
            _ => gates::cnot(q, (q + 1) % 3, n),
        };
        u = g.matmul(&u);
    }
    u
}

fn conjugate(u: &ComplexMatrix, rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new(u.matmul(rho.matrix()).matmul(&u.adjoint())).unwrap()
}

fn system_for(pick: usize) -> System {
    [System::Qubit1, System::Qutrit1, System::Qubit2, System::Qubit3][pick]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn faithful_on_vertex_mixtures(seed in any::<u64>(), pick in 0usize..3) {
        let system = system_for(pick);
        let vs = system.vertices().unwrap();
        let mut rng = SeededRng::new(seed, 0);
        let k = 1 + (rng.uniform() * 5.0) as usize;
        let mut weights = vec![0.0; vs.len()];
        for _ in 0..k {
            weights[(rng.uniform() * vs.len() as f64) as usize % vs.len()] += rng.uniform() + 1e-3;
        }
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let rho = DensityMatrix::mixture(&weights, &vs.states).unwrap();
        prop_assert!(ntd(&rho) <= TOL);
        prop_assert!(lp_membership(&rho, vs).unwrap());
        prop_assert!((rom(&rho).unwrap().value - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn faithful_outside_the_polytope(seed in any::<u64>(), pick in 0usize..3) {
        let system = system_for(pick);
        let mut rng = SeededRng::new(seed, 1);
        let rho = random_state(system.dim(), &mut rng);
        let inside = lp_membership(&rho, system.vertices().unwrap()).unwrap();
        let d = ntd(&rho);
        prop_assert_eq!(inside, d <= 1e-5, "distance {}", d);
        if !inside {
            prop_assert!(rom(&rho).unwrap().value > 1.0 + 1e-8);
        }
    }

    #[test]
    fn convex(seed in any::<u64>(), pick in 0usize..3, q in 0.0f64..=1.0) {
        let system = system_for(pick);
        let mut rng = SeededRng::new(seed, 2);
        let a = random_state(system.dim(), &mut rng);
        let b = random_state(system.dim(), &mut rng);
        let mix = b.mix_with(&a, q).unwrap();
        prop_assert!(ntd(&mix) <= q * ntd(&a) + (1.0 - q) * ntd(&b) + 2.0 * TOL);
        let rom_mix = rom(&mix).unwrap().value;
        prop_assert!(rom_mix <= q * rom(&a).unwrap().value + (1.0 - q) * rom(&b).unwrap().value + 2e-8);
    }

    #[test]
    fn clifford_invariant(seed in any::<u64>(), pick in 0usize..3) {
        let system = system_for(pick);
        let mut rng = SeededRng::new(seed, 3);
        let rho = random_state(system.dim(), &mut rng);
        let c = random_clifford(system, &mut rng);
        let moved = conjugate(&c, &rho);
        prop_assert!((ntd(&moved) - ntd(&rho)).abs() <= 2.0 * TOL);
        prop_assert!((rom(&moved).unwrap().value - rom(&rho).unwrap().value).abs() <= 2e-8);
    }

    #[test]
    fn monotone_under_stabilizer_channels(seed in any::<u64>(), keep in 0usize..2) {
        let mut rng = SeededRng::new(seed, 4);
        let rho = random_state(4, &mut rng);
        let reduced = rho.partial_trace(&[2, 2], &[keep]).unwrap();
        prop_assert!(ntd(&reduced) <= ntd(&rho) + 2.0 * TOL);

        let s = &System::Qubit1.vertices().unwrap().states[(rng.uniform() * 6.0) as usize % 6];
        let one = random_state(2, &mut rng);
        let extended = DensityMatrix::new(one.matrix().kron(s.density().matrix())).unwrap();
        prop_assert!(ntd(&extended) <= ntd(&one) + 2.0 * TOL);
        // tensoring, tracing out and relabeling qubits all compose to a stabilizer channel
        let back = extended.partial_trace(&[2, 2], &[0]).unwrap();
        prop_assert!(ntd(&back) <= ntd(&extended) + 2.0 * TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn three_qubit_properties(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed, 5);
        let rho = random_state(8, &mut rng);
        let d = ntd(&rho);
        let c = random_clifford(System::Qubit3, &mut rng);
        prop_assert!((ntd(&conjugate(&c, &rho)) - d).abs() <= 2.0 * TOL);
        let reduced = rho.partial_trace(&[2, 2, 2], &[0, 2]).unwrap();
        prop_assert!(ntd(&reduced) <= d + 2.0 * TOL);
        let s = &System::Qubit1.vertices().unwrap().states[2];
        let extended = DensityMatrix::new(reduced.matrix().kron(s.density().matrix())).unwrap();
        prop_assert!(ntd(&extended) <= ntd(&reduced) + 2.0 * TOL);
    }
}

#[test]
fn entropy_bounds_from_largest_eigenvalue() {
    let mut rng = SeededRng::new(77, 0);
    let mut below_one = 0;
    for k in 0..10_000 {
        let dim = 2 + k % 7;
        let pure = haar_pure(dim, &mut rng).unwrap().density();
        let t = rng.uniform().powi(4);
        let rho = pure.mix_with(&hs_mixed(dim, &mut rng).unwrap(), t).unwrap();
        let s = von_neumann_entropy(&rho).unwrap();
        let lmax = rho.eigenvalues().unwrap().into_iter().fold(f64::NEG_INFINITY, f64::max);
        assert!(s >= binary_entropy(lmax) - 1e-12, "dim {dim}: S = {s}, h = {}", binary_entropy(lmax));
        if s < 1.0 {
            below_one += 1;
            assert!(lmax > 0.5, "dim {dim}: S = {s}, lmax = {lmax}");
        }
    }
    assert!(below_one > 1000, "{below_one}");
}
