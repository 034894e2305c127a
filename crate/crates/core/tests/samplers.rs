use stabgeo::cliffstab::gates;
use stabgeo::measures::{binary_entropy, ent_entropy, hoggar_state, t_state};
use stabgeo::qmat::{equal_up_to_phase, fidelity_pure, PureState};
use stabgeo::samplers::*;
use stabgeo::{measures, DensityMatrix, System};

fn mean_and_se(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

/// Composite Simpson rule on [a, b].
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let mut s = f(a) + f(b);
    for k in 1..intervals {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0, 0, 0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    let ne = (a.len() * b.len()) as f64 / (a.len() + b.len()) as f64;
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    let p = (1..=100)
        .map(|k| {
            let k = k as f64;
            2.0 * (-1f64).powf(k - 1.0) * (-2.0 * k * k * lambda * lambda).exp()
        })
        .sum::<f64>()
        .clamp(0.0, 1.0);
    (d, p)
}

#[test]
fn seeded_streams_are_reproducible_and_distinct() {
    let draw = |seed, stream| {
        let mut r = SeededRng::new(seed, stream);
        (0..8).map(|_| r.uniform()).collect::<Vec<_>>()
    };
    assert_eq!(draw(3, 7), draw(3, 7));
    assert_ne!(draw(3, 7), draw(3, 8));
    assert_ne!(draw(3, 7), draw(4, 7));
    let mut r = SeededRng::new(1, 1);
    let x: Vec<f64> = (0..20_000).map(|_| r.normal()).collect();
    let (m, se) = mean_and_se(&x);
    assert!(m.abs() < 4.0 * se);
    let var = x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
    assert!((var - 1.0).abs() < 0.05, "{var}");
}

#[test]
fn haar_overlap_with_basis_state() {
    for dim in [2, 3, 4, 8] {
        let mut rng = SeededRng::new(21, dim as u64);
        let x: Vec<f64> = (0..100_000)
            .map(|_| {
                let psi = haar_pure(dim, &mut rng).unwrap();
                assert!((psi.amplitudes().iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-12);
                psi.amplitudes()[0].norm_sqr()
            })
            .collect();
        let (m, se) = mean_and_se(&x);
        assert!((m - 1.0 / dim as f64).abs() < 3.0 * se + 1e-12, "dim {dim}: {m} ± {se}");
    }
    assert!(haar_pure(1, &mut SeededRng::new(0, 0)).is_err());
}

#[test]
fn haar_two_qubit_entropy_matches_quadrature() {
    // Schmidt coefficient x of a Haar two-qubit state has density proportional to (2x - 1)^2.
    let w = |x: f64| (2.0 * x - 1.0).powi(2);
    let oracle = simpson(|x| binary_entropy(x) * w(x), 0.0, 1.0, 4000) / simpson(w, 0.0, 1.0, 4000);
    let mut rng = SeededRng::new(5, 0);
    let x: Vec<f64> = (0..100_000).map(|_| ent_entropy(&haar_pure(4, &mut rng).unwrap()).unwrap()).collect();
    let (m, se) = mean_and_se(&x);
    assert!((m - oracle).abs() < 3.0 * se, "{m} ± {se} vs {oracle}");
}

#[test]
fn hs_states_are_valid_and_full_rank() {
    for dim in [2, 3, 4, 8] {
        let mut rng = SeededRng::new(8, dim as u64);
        for _ in 0..10_000 / dim {
            let rho = hs_mixed(dim, &mut rng).unwrap();
            let ev = rho.eigenvalues().unwrap();
            assert!(ev.iter().all(|&l| l > 0.0), "dim {dim}: {ev:?}");
            assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn hs_qubit_purity_matches_quadrature() {
    // Eigenvalue x of a Hilbert-Schmidt qubit state has density proportional to (2x - 1)^2.
    let w = |x: f64| (2.0 * x - 1.0).powi(2);
    let oracle = simpson(|x| (x * x + (1.0 - x).powi(2)) * w(x), 0.0, 1.0, 4000) / simpson(w, 0.0, 1.0, 4000);
    assert!((oracle - 0.8).abs() < 1e-9);
    let mut rng = SeededRng::new(13, 0);
    let x: Vec<f64> = (0..100_000).map(|_| hs_mixed(2, &mut rng).unwrap().purity()).collect();
    let (m, se) = mean_and_se(&x);
    assert!((m - oracle).abs() < 3.0 * se, "{m} ± {se} vs {oracle}");
    let mut rng = SeededRng::new(13, 1);
    let diag: Vec<f64> = (0..100_000).map(|_| hs_mixed(4, &mut rng).unwrap().matrix().as_slice()[0].re).collect();
    let (m, se) = mean_and_se(&diag);
    assert!((m - 0.25).abs() < 3.0 * se);
}

#[test]
fn circuit_states() {
    assert_eq!(circuit_angle_count(2).unwrap(), 6);
    assert_eq!(circuit_angle_count(3).unwrap(), 14);
    assert!(circuit_angle_count(4).is_err());
    for n in [2, 3] {
        let zero = circuit_state(n, &vec![0.0; circuit_angle_count(n).unwrap()]).unwrap();
        assert!(equal_up_to_phase(&zero, &PureState::basis(1 << n, 0), 1e-12));
    }
    assert!(circuit_state(2, &[0.0; 5]).is_err());
}

#[test]
fn biased_states_differ_from_haar() {
    let count = 4000;
    let mut rb = SeededRng::new(2, 0);
    let mut rh = SeededRng::new(2, 1);
    let biased: Vec<f64> = (0..count).map(|_| ent_entropy(&biased_circuit_state(2, &mut rb).unwrap()).unwrap()).collect();
    let haar: Vec<f64> = (0..count).map(|_| ent_entropy(&haar_pure(4, &mut rh).unwrap()).unwrap()).collect();
    let (_, p) = ks_two_sample(&biased, &haar);
    assert!(p < 1e-3, "p = {p}");
}

#[test]
fn biased_three_qubit_distances_sit_below_haar() {
    let mut rb = SeededRng::new(4, 0);
    let mut rh = SeededRng::new(4, 1);
    let mut biased: Vec<f64> =
        (0..400).map(|_| measures::ntd(&biased_circuit_state(3, &mut rb).unwrap().density()).unwrap().value).collect();
    let haar: Vec<f64> = (0..100).map(|_| measures::ntd(&haar_pure(8, &mut rh).unwrap().density()).unwrap().value).collect();
    biased.sort_by(f64::total_cmp);
    let haar_min = haar.iter().copied().fold(f64::INFINITY, f64::min);
    assert!(biased[0] < 0.25, "{}", biased[0]);
    assert!(biased[20] < haar_min, "{} vs {haar_min}", biased[20]);
    assert!(ks_two_sample(&biased, &haar).1 < 1e-3);
}

/// Full-size draw count; about an hour on one core.
#[test]
#[ignore]
fn biased_three_qubit_states_reach_below_one_tenth() {
    let mut rng = SeededRng::new(4, 0);
    let lowest = (0..100_000)
        .map(|_| measures::ntd(&biased_circuit_state(3, &mut rng).unwrap().density()).unwrap().value)
        .fold(f64::INFINITY, f64::min);
    assert!(lowest < 0.1, "{lowest}");
}

#[test]
fn walk_points_and_endpoints() {
    let vs = System::Qubit3.vertices().unwrap();
    let target = hoggar_state();
    let mut total = 0;
    for (k, v) in vs.states.iter().enumerate() {
        let w = walk(&WalkSpec { start: v.clone(), end: target.clone(), step: 1e-3 }).unwrap();
        assert!(w.skipped.is_empty());
        total += w.points.len();
        if k % 97 == 0 {
            let (e0, first) = &w.points[0];
            let (e1, last) = w.points.last().unwrap();
            assert_eq!((*e0, *e1), (0.0, 1.0));
            assert!(equal_up_to_phase(first, &target, 1e-12));
            assert!(equal_up_to_phase(last, v, 1e-12));
            assert!(w.points.iter().all(|(_, p)| (p.inner(p).re - 1.0).abs() < 1e-12));
        }
    }
    assert_eq!(total, 1_081_080);
    let psi = PureState::basis(2, 0);
    let anti = PureState::new(psi.amplitudes().iter().map(|a| -a).collect()).unwrap();
    let w = walk(&WalkSpec { start: psi, end: anti, step: 0.25 }).unwrap();
    assert_eq!(w.skipped, vec![0.5]);
    assert_eq!(w.points.len(), 4);
    assert!(walk(&WalkSpec { start: t_state(), end: t_state(), step: 0.0 }).is_err());
}

#[test]
fn near_vertex_states_stay_close() {
    let mut rng = SeededRng::new(6, 0);
    let vs = System::Qubit2.vertices().unwrap();
    for _ in 0..200 {
        let (k, psi) = near_vertex_state(System::Qubit2, 0.1, &mut rng).unwrap();
        assert!(fidelity_pure(&psi, &vs.states[k]) > 0.5);
    }
    assert!(near_vertex_state(System::Qubit2, 0.0, &mut rng).is_err());
}

#[test]
fn depolarizing_channels() {
    let mut rng = SeededRng::new(9, 0);
    for dim in [2, 4, 8] {
        let rho = hs_mixed(dim, &mut rng).unwrap();
        let mixed = DensityMatrix::maximally_mixed(dim);
        assert!(depolarize_global(&rho, 0.0).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-14);
        assert!(depolarize_global(&rho, 1.0).unwrap().matrix().max_abs_diff(mixed.matrix()) < 1e-14);
        assert!(depolarize_local(&rho, 0.0).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-14);
        assert!(depolarize_local(&rho, 1.0).unwrap().matrix().max_abs_diff(mixed.matrix()) < 1e-14);
    }
    // local noise on a product state acts on each factor
    let a = haar_pure(2, &mut rng).unwrap();
    let b = haar_pure(2, &mut rng).unwrap();
    let p = 0.3;
    let expected = depolarize_global(&a.density(), p)
        .unwrap()
        .matrix()
        .kron(depolarize_global(&b.density(), p).unwrap().matrix());
    let got = depolarize_local(&a.tensor(&b).density(), p).unwrap();
    assert!(got.matrix().max_abs_diff(&expected) < 1e-14);
    assert!(depolarize_global(&a.density(), 1.5).is_err());
}

#[test]
fn critical_probabilities() {
    let opts = CriticalOptions::default();
    let p = critical_depolarization(&t_state(), DepolarizationMode::Global, &opts).unwrap();
    assert!((p - (1.0 - 1.0 / 3f64.sqrt())).abs() <= 1e-4, "{p}");
    let p = critical_depolarization(&t_state(), DepolarizationMode::Local, &opts).unwrap();
    assert!((p - (1.0 - 1.0 / 3f64.sqrt())).abs() <= 1e-4, "{p}");
    for system in System::ALL {
        let v = &system.vertices().unwrap().states[1];
        assert_eq!(critical_depolarization(v, DepolarizationMode::Global, &opts).unwrap(), 0.0);
    }
}

#[test]
fn facet_and_distance_membership_agree_on_thresholds() {
    let exact = CriticalOptions::default();
    let sdp = CriticalOptions { membership: MembershipTest::Distance(1e-5), ..exact };
    let mut rng = SeededRng::new(15, 0);
    for (system, count) in [(System::Qubit2, 6), (System::Qutrit1, 6)] {
        for k in 0..count {
            let psi = haar_pure(system.dim(), &mut rng).unwrap();
            let mode = if system.is_qubit() && k % 2 == 1 { DepolarizationMode::Local } else { DepolarizationMode::Global };
            let a = critical_depolarization(&psi, mode, &exact).unwrap();
            let b = critical_depolarization(&psi, mode, &sdp).unwrap();
            // the distance test accepts states up to 1e-5 outside, so it can only report less noise
            assert!(b <= a + 1e-4 && a - b < 2e-3, "{system} {mode}: facets {a}, distance {b}");
        }
    }
}

#[test]
fn distance_statistics_are_clifford_invariant() {
    let c = gates::h().matmul(&gates::s());
    let n = 10_000;
    let mut ra = SeededRng::new(31, 0);
    let mut rb = SeededRng::new(31, 1);
    let plain: Vec<f64> = (0..n).map(|_| measures::ntd(&haar_pure(2, &mut ra).unwrap().density()).unwrap().value).collect();
    let rotated: Vec<f64> = (0..n)
        .map(|_| measures::ntd(&haar_pure(2, &mut rb).unwrap().apply(&c).unwrap().density()).unwrap().value)
        .collect();
    let (d, p) = ks_two_sample(&plain, &rotated);
    assert!(p > 1e-3, "D = {d}, p = {p}");
    // a non-Clifford rotation of a fixed ensemble is detected
    let r = ry(0.4);
    let mut rc = SeededRng::new(31, 2);
    let biased: Vec<f64> = (0..n)
        .map(|_| {
            let psi = PureState::basis(2, (rc.uniform() * 2.0) as usize).apply(&r).unwrap();
            measures::ntd(&psi.density()).unwrap().value
        })
        .collect();
    assert!(ks_two_sample(&plain, &biased).1 < 1e-3);
}

#[test]
fn distance_decreases_under_depolarization() {
    let mut rng = SeededRng::new(19, 0);
    for system in [System::Qubit1, System::Qutrit1, System::Qubit2] {
        for k in 0..6 {
            let rho = if k % 2 == 0 { haar_pure(system.dim(), &mut rng).unwrap().density() } else { hs_mixed(system.dim(), &mut rng).unwrap() };
            let modes: &[DepolarizationMode] =
                if system.is_qubit() { &[DepolarizationMode::Global, DepolarizationMode::Local] } else { &[DepolarizationMode::Global] };
            for &mode in modes {
                let mut prev = f64::INFINITY;
                for step in 0..=10 {
                    let v = measures::ntd(&depolarize(&rho, step as f64 / 10.0, mode).unwrap()).unwrap().value;
                    assert!(v <= prev + 2e-6, "{system} {mode} step {step}: {v} > {prev}");
                    prev = v;
                }
            }
        }
    }
}
