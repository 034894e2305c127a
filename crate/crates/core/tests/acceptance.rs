//! Acceptance criteria, one PASS/FAIL line each. Set ACCEPTANCE=1,4,7 to run
//! a subset and ACCEPTANCE_STRICT=1 to exit nonzero when any criterion fails.

use std::time::{Duration, Instant};

use stabgeo::cliffstab::{clifford_group, gates};
use stabgeo::convex::{lp_membership, NtdModel, NtdOptions};
use stabgeo::experiments::{run_command, ExperimentConfig, Generator, Report};
use stabgeo::facets::{one_qudit_facets, qutrit_facet_classes, representative_facets, two_qubit_facets};
use stabgeo::measures::{
    self, binary_entropy, ntd_lb_qubit, qutrit_facet_bound, qutrit_witness_minimum, qutrit_witness_operator,
};
use stabgeo::pauli::pauli_vector;
use stabgeo::qmat::{eigvalsh, von_neumann_entropy, ComplexMatrix, DensityMatrix};
use stabgeo::samplers::{depolarize_global, haar_pure, hs_mixed, DepolarizationMode, SeededRng};
use stabgeo::System;

struct Item {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Default)]
struct Criterion {
    items: Vec<Item>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(Item { name: name.into(), passed, detail: detail.into() });
    }

    fn report(&mut self, label: &str, r: &Report) {
        for c in &r.checks {
            self.check(format!("{label}: {}", c.name), c.passed, c.detail.clone());
        }
    }

    fn near(&mut self, name: &str, got: f64, want: f64, tol: f64) {
        self.check(name, (got - want).abs() <= tol, format!("{got:.6} vs {want} (tol {tol})"));
    }
}

fn cfg(system: System, samples: usize) -> ExperimentConfig {
    ExperimentConfig { system, samples: Some(samples), seed: 2024, checkpoint: false, ..Default::default() }
}

fn run(name: &str, c: &ExperimentConfig) -> Report {
    run_command(name, c).unwrap_or_else(|e| panic!("{name} on {}: {e}", c.system))
}

fn enumeration(c: &mut Criterion) {
    for (system, want) in [(System::Qubit1, 6), (System::Qutrit1, 12), (System::Qubit2, 60), (System::Qubit3, 1080)] {
        let got = system.vertices().unwrap().len();
        c.check(format!("{system} vertices"), got == want, format!("{got}"));
    }
    for ((d, n), want) in [((2, 1), 24), ((3, 1), 216), ((2, 2), 11_520)] {
        let got = clifford_group(d, n).unwrap().len();
        c.check(format!("Clifford group d={d} n={n}"), got == want, format!("{got}"));
    }
    let qutrit = one_qudit_facets(3).unwrap().len();
    let mut classes = qutrit_facet_classes().unwrap().to_vec();
    classes.sort_unstable();
    classes.dedup();
    c.check("qutrit facets", qutrit == 81 && classes == [1, 2], format!("{qutrit} facets in classes {classes:?}"));
    let fc = two_qubit_facets().unwrap();
    c.check(
        "two-qubit facet orbits",
        fc.facets.len() == 22_320 && representative_facets().len() == 8 && fc.class_sizes.iter().sum::<usize>() == 22_320,
        format!("{} facets from {} representatives, class sizes {:?}", fc.facets.len(), representative_facets().len(), fc.class_sizes),
    );
}

fn catalog(c: &mut Criterion) {
    c.report("catalog", &run("catalog", &cfg(System::Qubit1, 1)));
    // minimum of the second qutrit witness over pure states is its lowest eigenvalue
    let op = qutrit_witness_operator(2).unwrap();
    let lowest = eigvalsh(op).unwrap()[0];
    let mut rng = SeededRng::new(5, 0);
    let sampled = (0..20_000)
        .map(|_| haar_pure(3, &mut rng).unwrap().expectation(op).re)
        .fold(f64::INFINITY, f64::min);
    let exact = 0.5 - 5f64.sqrt() / 2.0;
    c.near("second qutrit witness minimum", lowest, exact, 1e-6);
    c.near("second qutrit witness minimum (library)", qutrit_witness_minimum(2).unwrap(), exact, 1e-6);
    c.check("sampled witness values stay above the minimum", sampled >= lowest - 1e-12, format!("{sampled:.6}"));
}

fn certification(c: &mut Criterion) {
    for system in System::ALL {
        let vs = system.vertices().unwrap();
        let dim = system.dim();
        let mut rng = SeededRng::new(77, dim as u64);
        let (mut worst_gap, mut worst_res, mut disagree, mut inside) = (0f64, 0f64, 0, 0);
        for k in 0..1000 {
            let rho = match k % 3 {
                0 => haar_pure(dim, &mut rng).unwrap().density(),
                1 => hs_mixed(dim, &mut rng).unwrap(),
                _ => {
                    let p = rng.uniform();
                    depolarize_global(&haar_pure(dim, &mut rng).unwrap().density(), p).unwrap()
                }
            };
            let d = measures::ntd(&rho).unwrap();
            let r = measures::rom(&rho).unwrap();
            worst_gap = worst_gap.max(d.gap);
            worst_res = worst_res.max(r.residual);
            let rom_one = r.value <= 1.0 + 1e-8;
            let near = d.value <= 1e-5;
            disagree += usize::from(rom_one != near || lp_membership(&rho, vs).unwrap() != near);
            inside += usize::from(near);
        }
        c.check(format!("{system} distance gap"), worst_gap <= 1e-6, format!("max gap {worst_gap:.2e}"));
        c.check(format!("{system} robustness residual"), worst_res <= 1e-8, format!("max residual {worst_res:.2e}"));
        c.check(format!("{system} membership agreement"), disagree == 0, format!("{disagree} disagreements, {inside} inside"));
    }
}

fn closed_forms(c: &mut Criterion) {
    let mut rng = SeededRng::new(91, 0);
    let (mut tested, mut worst) = (0, 0f64);
    while tested < 1000 {
        let rho = if rng.uniform() < 0.5 { haar_pure(2, &mut rng).unwrap().density() } else { hs_mixed(2, &mut rng).unwrap() };
        let pv = pauli_vector(&rho).unwrap();
        let r = [pv[1], pv[2], pv[3]];
        let s = r.map(f64::signum);
        let excess = (r.iter().map(|x| x.abs()).sum::<f64>() - 1.0) / 3.0;
        // the nearest point of the octant's face plane lies on the face
        if excess <= 0.0 || !r.iter().zip(&s).all(|(x, s)| (x - s * excess) * s >= 0.0) {
            continue;
        }
        tested += 1;
        worst = worst.max((ntd_lb_qubit(&rho).unwrap() - measures::ntd(&rho).unwrap().value).abs());
    }
    c.check("qubit closed form", worst <= 2e-3, format!("max deviation {worst:.2e} over {tested} states"));

    let model = NtdModel::for_system(System::Qutrit1).unwrap();
    for which in [1u8, 2] {
        let op = qutrit_witness_operator(which).unwrap();
        let floor = qutrit_witness_minimum(which).unwrap();
        let mut worst = 0f64;
        for k in 0..=40 {
            let value = floor * k as f64 / 40.0;
            let r = model.min_ntd_at_expectation(op, value, &NtdOptions::default()).unwrap();
            worst = worst.max((r.value - qutrit_facet_bound(which, value)).abs());
        }
        c.check(format!("qutrit witness {which} fit"), worst <= 2e-2, format!("max deviation {worst:.2e} over 41 levels"));
    }
}

fn hulls(c: &mut Criterion) {
    for projection in ["octahedron", "chsh", "two-body-xy"] {
        let r = run("hull", &ExperimentConfig { projection: Some(projection.into()), ..cfg(System::Qubit1, 1) });
        c.report(projection, &r);
        if projection == "chsh" {
            // <XX> + <XY> + <YX> - <YY> <= 2
            let table = &r.table;
            let is_chsh = |row: &Vec<stabgeo::experiments::Cell>| {
                row.iter().map(|x| x.as_f64().unwrap() as i64).collect::<Vec<_>>() == [2, -1, -1, -1, 1]
            };
            let vs = System::Qubit2.vertices().unwrap();
            let chsh = |s: &stabgeo::PureState| {
                let pv = pauli_vector(&s.density()).unwrap();
                2.0 - pv[5] - pv[6] - pv[9] + pv[10]
            };
            let valid = vs.states.iter().all(|s| chsh(s) >= -1e-12);
            c.check("CHSH valid but not a facet", valid && !table.rows.iter().any(is_chsh), format!("{} facets", table.rows.len()));
        }
    }
}

fn bell(c: &mut Criterion) {
    c.report("bell", &run("bell", &cfg(System::Qubit3, 200)));
}

fn statistics(c: &mut Criterion) {
    let hist = run("hist", &cfg(System::Qubit1, 10_000));
    let t = (3f64.sqrt() - 1.0) / (2.0 * 3f64.sqrt());
    let max = hist.summary_f64("max").unwrap();
    c.check("one-qubit maximum distance", max <= t + 1e-3, format!("{max:.6} <= {:.6}", t + 1e-3));

    let pure = run("facet-audit", &cfg(System::Qubit2, 10_000));
    let rate = pure.summary_f64("rate_all_classes").unwrap();
    c.check("pure two-qubit states violate all classes", rate == 1.0, format!("rate {rate}"));

    let mixed = run("facet-audit", &ExperimentConfig { generator: Generator::Hs, ..cfg(System::Qubit2, 10_000) });
    let mean = mixed.summary_f64("mean_violated").unwrap();
    c.check("mixed two-qubit mean violated facets", (mean - 1228.0).abs() <= 0.05 * 1228.0, format!("{mean:.2} vs 1228 (5%)"));

    for (system, mode, want) in [
        (System::Qubit1, DepolarizationMode::Global, 0.42),
        (System::Qubit2, DepolarizationMode::Global, 0.59),
        (System::Qubit3, DepolarizationMode::Global, 0.74),
        (System::Qubit2, DepolarizationMode::Local, 0.49),
        (System::Qubit3, DepolarizationMode::Local, 0.50),
    ] {
        let c2 = ExperimentConfig { mode, screen: true, with_measures: false, ..cfg(system, 20_000) };
        let r = run("threshold", &c2);
        c.near(&format!("{system} {mode} threshold"), r.summary_f64("max_p").unwrap(), want, 0.02);
    }

    let cmp = run("compare", &cfg(System::Qubit2, 10_000));
    let rho = cmp.summary_f64("spearman_ntd_rom").unwrap();
    c.check("distance/robustness Spearman", rho > 0.9, format!("{rho:.4}"));
}

fn random_clifford(system: System, rng: &mut SeededRng) -> ComplexMatrix {
    if system != System::Qubit3 {
        let g = clifford_group(system.d(), system.n()).unwrap();
        return g.elements[(rng.uniform() * g.len() as f64) as usize % g.len()].unitary.clone();
    }
    let mut u = ComplexMatrix::identity(8);
    for _ in 0..20 {
        let q = (rng.uniform() * 3.0) as usize % 3;
        let g = match (rng.uniform() * 3.0) as usize {
            0 => gates::on_qubit(&gates::h(), q, 3),
            1 => gates::on_qubit(&gates::s(), q, 3),
            _ => gates::cnot(q, (q + 1) % 3, 3),
        };
        u = g.matmul(&u);
    }
    u
}

fn properties(c: &mut Criterion) {
    const TOL: f64 = 1e-6;
    let ntd = |rho: &DensityMatrix| measures::ntd(rho).unwrap().value;
    for system in System::ALL {
        let dim = system.dim();
        let vs = system.vertices().unwrap();
        let count = if system == System::Qubit3 { 20 } else { 100 };
        let mut rng = SeededRng::new(404, dim as u64);
        let (mut faithful, mut convex, mut invariant, mut monotone) = (0, 0, 0, 0);
        for _ in 0..count {
            let a = hs_mixed(dim, &mut rng).unwrap().mix_with(&haar_pure(dim, &mut rng).unwrap().density(), rng.uniform()).unwrap();
            let b = depolarize_global(&haar_pure(dim, &mut rng).unwrap().density(), rng.uniform()).unwrap();
            let (da, db) = (ntd(&a), ntd(&b));
            faithful += usize::from((db <= 1e-5) != lp_membership(&b, vs).unwrap());
            let k = (rng.uniform() * vs.len() as f64) as usize % vs.len();
            faithful += usize::from(ntd(&vs.states[k].density()) > TOL);
            let q = rng.uniform();
            convex += usize::from(ntd(&b.mix_with(&a, q).unwrap()) > q * da + (1.0 - q) * db + 2.0 * TOL);
            let u = random_clifford(system, &mut rng);
            let moved = DensityMatrix::new(u.matmul(a.matrix()).matmul(&u.adjoint())).unwrap();
            invariant += usize::from((ntd(&moved) - da).abs() > 2.0 * TOL);
            if system.n() >= 2 {
                let keep: Vec<usize> = (0..system.n() - 1).collect();
                let reduced = a.partial_trace(&vec![2; system.n()], &keep).unwrap();
                monotone += usize::from(ntd(&reduced) > da + 2.0 * TOL);
                let s = &System::Qubit1.vertices().unwrap().states[k % 6];
                let extended = DensityMatrix::new(reduced.matrix().kron(s.density().matrix())).unwrap();
                monotone += usize::from(ntd(&extended) > ntd(&reduced) + 2.0 * TOL);
            }
        }
        c.check(format!("{system} faithfulness"), faithful == 0, format!("{faithful} failures over {count} pairs"));
        c.check(format!("{system} convexity"), convex == 0, format!("{convex} failures"));
        c.check(format!("{system} Clifford invariance"), invariant == 0, format!("{invariant} failures"));
        if system.n() >= 2 {
            c.check(format!("{system} monotonicity"), monotone == 0, format!("{monotone} failures"));
        }
    }

    let mut rng = SeededRng::new(405, 0);
    let (mut entropy_bad, mut majority_bad, mut below_one) = (0, 0, 0);
    for k in 0..10_000 {
        let dim = 2 + k % 7;
        let rho = haar_pure(dim, &mut rng).unwrap().density().mix_with(&hs_mixed(dim, &mut rng).unwrap(), rng.uniform().powi(4)).unwrap();
        let s = von_neumann_entropy(&rho).unwrap();
        let lmax = rho.eigenvalues().unwrap().into_iter().fold(f64::NEG_INFINITY, f64::max);
        entropy_bad += usize::from(s < binary_entropy(lmax) - 1e-12);
        if s < 1.0 {
            below_one += 1;
            majority_bad += usize::from(lmax <= 0.5);
        }
    }
    c.check("entropy exceeds h(largest eigenvalue)", entropy_bad == 0, format!("{entropy_bad} failures over 10000 states"));
    c.check("entropy below 1 forces a majority eigenvalue", majority_bad == 0, format!("{majority_bad} failures over {below_one} states"));

    for system in System::ALL {
        let r = run("concentration", &ExperimentConfig { generator: Generator::Walk, ..cfg(system, 10_000) });
        let audited = r.summary_f64("audited").unwrap() as usize;
        c.check(format!("{system} low-distance states found"), audited == 10_000, format!("{audited} of 10000"));
        c.report(&format!("{system} concentration"), &r);
    }
}

fn main() {
    let criteria: [(&str, fn(&mut Criterion)); 8] = [
        ("enumeration exactness", enumeration),
        ("catalog regressions", catalog),
        ("solver certification", certification),
        ("closed-form cross-check", closed_forms),
        ("hull enumeration", hulls),
        ("Bell evaluations", bell),
        ("statistical reproductions", statistics),
        ("property suites", properties),
    ];
    let only: Option<Vec<usize>> =
        std::env::var("ACCEPTANCE").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let id = k + 1;
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let mut c = Criterion::default();
        f(&mut c);
        let elapsed = start.elapsed();
        if id == 1 && elapsed > Duration::from_secs(600) {
            c.check("runtime", false, format!("{elapsed:?} > 10 min"));
        }
        let passed = c.items.iter().all(|i| i.passed);
        println!("{} {id}. {name} ({:.1} s)", if passed { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
        for i in &c.items {
            println!("    [{}] {}: {}", if i.passed { "ok" } else { "miss" }, i.name, i.detail);
        }
        if !passed {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        if std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
            std::process::exit(1);
        }
    }
}
