use std::io::BufRead;
use std::sync::OnceLock;

use num_rational::Ratio;

use super::config::{ExperimentConfig, Generator, DEFAULT_SAMPLES, DEFAULT_THRESHOLD_SAMPLES};
use super::driver::{run_chunked, run_samples};
use super::stats::{histogram, mean, spearman};
use super::table::{Cell, Report, Row, Table};
use crate::convex::{LpModel, NtdModel, NtdOptions};
use crate::error::{Error, Result};
use crate::facets::{
    dd_hull, one_qudit_facets, project_vertices, qutrit_facet_classes, read_facet_file, two_qubit_facets, FacetFile,
    FacetInequality, VIOLATION_TOL,
};
use crate::measures::{
    catalog, chsh3q, chsh_dd, chsh_halves, concentration_delta, entanglement_entropy, epsilon_star, evaluate_measure,
    fannes_bound, ghz_state, hoggar_state, mermin3, sre, t_state, w_state, CHSH3Q_BOUND, THREE_BODY_HOGGAR, THREE_BODY_W,
};
use crate::pauli::{pauli_vector, PauliWord};
use crate::qmat::{fidelity_pure, DensityMatrix, PureState, C64};
use crate::samplers::{
    biased_circuit_state, haar_pure, hs_mixed, near_vertex_state, walk_target, CriticalOptions, NoisePath, SeededRng,
};
use crate::system::System;

/// Distance of the T state to the one-qubit polytope, the one-qubit maximum.
fn t_distance() -> f64 {
    (3f64.sqrt() - 1.0) / (2.0 * 3f64.sqrt())
}

/// FNV-1a over the bit patterns of the amplitudes.
pub fn state_hash(values: &[C64]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for z in values {
        for bits in [z.re.to_bits(), z.im.to_bits()] {
            for byte in bits.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
    }
    format!("{h:016x}")
}

struct Sample {
    rho: DensityMatrix,
    pure: Option<PureState>,
    hash: String,
}

impl Sample {
    fn pure(psi: PureState) -> Self {
        let hash = state_hash(psi.amplitudes());
        Self { rho: psi.density(), pure: Some(psi), hash }
    }

    fn mixed(rho: DensityMatrix) -> Self {
        let hash = state_hash(rho.matrix().as_slice());
        Self { rho, pure: None, hash }
    }
}

/// Sample `id` of the configured generator, drawn from stream `id`.
fn draw(cfg: &ExperimentConfig, id: usize, default_reach: f64) -> Result<Sample> {
    let mut rng = SeededRng::new(cfg.seed, id as u64);
    let system = cfg.system;
    Ok(match cfg.generator {
        Generator::Haar => Sample::pure(haar_pure(system.dim(), &mut rng)?),
        Generator::Hs => Sample::mixed(hs_mixed(system.dim(), &mut rng)?),
        Generator::Biased => {
            if !system.is_qubit() {
                return Err(Error::Unsupported(format!("rotation circuits on {system}")));
            }
            Sample::pure(biased_circuit_state(system.n(), &mut rng)?)
        }
        Generator::Walk => Sample::pure(near_vertex_state(system, cfg.reach.unwrap_or(default_reach), &mut rng)?.1),
    })
}

fn ntd_opts(cfg: &ExperimentConfig) -> NtdOptions {
    NtdOptions { tol: cfg.tol, ..NtdOptions::default() }
}

fn entropy_of(psi: &PureState, system: System) -> Result<Option<f64>> {
    Ok(match system {
        System::Qubit2 => Some(entanglement_entropy(psi, &[0])?),
        System::Qubit3 => {
            let mut total = 0.0;
            for q in 0..3 {
                total += entanglement_entropy(psi, &[q])?;
            }
            Some(total / 3.0)
        }
        _ => None,
    })
}

fn column(rows: &[Row], k: usize) -> Vec<f64> {
    rows.iter().filter_map(|r| r[k].as_f64()).collect()
}

/// Named states against their reference values. Fails on any regression.
pub fn cmd_catalog(cfg: &ExperimentConfig) -> Result<Report> {
    let mut table = Table::new(&["name", "system", "measure", "expected", "computed", "tol", "deviation", "pass", "note"]);
    let mut report_checks = Vec::new();
    for entry in catalog() {
        let row_index = entry.name.strip_prefix("psi22_").and_then(|r| r.parse::<usize>().ok()).map(|r| r - 1);
        for exp in &entry.expected {
            let computed = evaluate_measure(&exp.measure, &entry, row_index)?;
            let dev = (computed - exp.value).abs();
            let pass = dev <= exp.tol;
            report_checks.push((format!("{} {}", entry.name, exp.measure), pass, format!("{computed:.6} vs {} (tol {})", exp.value, exp.tol)));
            table.rows.push(vec![
                Cell::text(&entry.name),
                Cell::text(entry.system.to_string()),
                Cell::text(&exp.measure),
                Cell::float(exp.value),
                Cell::float(computed),
                Cell::float(exp.tol),
                Cell::float(dev),
                Cell::Bool(pass),
                Cell::text(&exp.note),
            ]);
        }
    }
    let mut report = Report::new("catalog", cfg, table);
    for (name, pass, detail) in report_checks {
        report.check(name, pass, detail);
    }
    report.set("entries", catalog().len());
    Ok(report)
}

/// Distance histograms over random states.
pub fn cmd_hist(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let count = cfg.sample_count(DEFAULT_SAMPLES);
    let model = NtdModel::for_system(cfg.system)?;
    let opts = ntd_opts(cfg);
    let rows = run_samples(cfg, "hist", count, |i| {
        let s = draw(cfg, i, 1.0)?;
        let r = model.ntd(&s.rho, &opts)?;
        Ok(Some(vec![
            Cell::int(i),
            Cell::text(s.hash),
            Cell::float(r.value),
            Cell::float(r.lower_bound),
            Cell::float(r.gap),
            Cell::Bool(r.is_certified()),
        ]))
    })?;
    let mut table = Table::new(&["id", "hash", "ntd", "ntd_lower", "gap", "certified"]);
    table.rows = rows;
    let values = table.numbers("ntd");
    let uncertified = table.rows.iter().filter(|r| r[5].as_bool() == Some(false)).count();
    let hist = histogram(&values, cfg.bin_width);
    let mode_bin = hist.iter().enumerate().max_by_key(|(k, c)| (**c, std::cmp::Reverse(*k))).map(|(k, _)| k).unwrap_or(0);
    let (argmax, max) = values.iter().enumerate().fold((0, f64::NEG_INFINITY), |acc, (k, &v)| if v > acc.1 { (k, v) } else { acc });

    let mut report = Report::new("hist", cfg, table);
    report.set("samples", count);
    report.set("mean", mean(&values));
    report.set("max", max);
    report.set("argmax_id", argmax);
    report.set("min", values.iter().copied().fold(f64::INFINITY, f64::min));
    report.set("bin_width", cfg.bin_width);
    report.set("mode_bin_start", mode_bin as f64 * cfg.bin_width);
    report.set("histogram", &hist);
    report.set("uncertified", uncertified);
    report.check("certificates", uncertified == 0, format!("{uncertified} of {count} gaps above {}", cfg.tol));
    if cfg.system == System::Qubit1 {
        let bound = t_distance() + 1e-3;
        report.check("one-qubit maximum", max <= bound, format!("max {max:.6} vs bound {bound:.6}"));
    }
    Ok(report)
}

/// Distance, robustness and stabilizer Renyi entropy on the same samples.
pub fn cmd_compare(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let count = cfg.sample_count(DEFAULT_SAMPLES);
    let nmodel = NtdModel::for_system(cfg.system)?;
    let lmodel = LpModel::for_system(cfg.system)?;
    let opts = ntd_opts(cfg);
    let rows = run_samples(cfg, "compare", count, |i| {
        let s = draw(cfg, i, 1.0)?;
        let n = nmodel.ntd(&s.rho, &opts)?;
        let r = lmodel.rom(&s.rho, 1e-8)?;
        let sre2 = match &s.pure {
            Some(psi) if cfg.system.is_qubit() => Some(sre(psi, 2.0)?),
            _ => None,
        };
        Ok(Some(vec![
            Cell::int(i),
            Cell::text(s.hash),
            Cell::float(n.value),
            Cell::float(n.gap),
            Cell::float(r.value),
            Cell::float(r.gap),
            Cell::float(r.residual),
            Cell::opt(sre2),
        ]))
    })?;
    let mut table = Table::new(&["id", "hash", "ntd", "ntd_gap", "rom", "rom_gap", "rom_residual", "sre2"]);
    table.rows = rows;
    let ntd = table.numbers("ntd");
    let rom = table.numbers("rom");
    let sre2 = table.numbers("sre2");
    let rho_nr = spearman(&ntd, &rom);
    let mut report = Report::new("compare", cfg, table);
    report.set("samples", count);
    report.set("spearman_ntd_rom", rho_nr);
    if sre2.len() == ntd.len() {
        report.set("spearman_ntd_sre2", spearman(&ntd, &sre2));
        report.set("spearman_rom_sre2", spearman(&rom, &sre2));
    }
    let bad_gap = report.table.rows.iter().filter(|r| r[3].as_f64().is_none_or(|g| g > cfg.tol)).count();
    let bad_lp = report
        .table
        .rows
        .iter()
        .filter(|r| r[5].as_f64().is_none_or(|g| g.abs() > 1e-8) || r[6].as_f64().is_none_or(|x| x > 1e-8))
        .count();
    report.check("distance certificates", bad_gap == 0, format!("{bad_gap} gaps above {}", cfg.tol));
    report.check("robustness certificates", bad_lp == 0, format!("{bad_lp} rows with gap or residual above 1e-8"));
    if cfg.system == System::Qubit2 && cfg.generator.is_pure() {
        let v = rho_nr.unwrap_or(f64::NAN);
        report.check("distance/robustness rank correlation", v > 0.9, format!("spearman {v:.4}"));
    }
    Ok(report)
}

/// Critical depolarizing noise of random states.
pub fn cmd_threshold(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let count = cfg.sample_count(DEFAULT_THRESHOLD_SAMPLES);
    let copts = CriticalOptions::default();
    let nmodel = NtdModel::for_system(cfg.system)?;
    let lmodel = LpModel::for_system(cfg.system)?;
    let opts = ntd_opts(cfg);
    let mut floor = 0.0f64;
    let rows = run_chunked(
        cfg,
        "threshold",
        count,
        &mut floor,
        |&floor, i| {
            let s = draw(cfg, i, 1.0)?;
            let path = NoisePath::new(&s.rho, cfg.mode)?;
            let (p, below) = if cfg.screen {
                match path.critical_above(floor, &copts)? {
                    Some(p) => (Some(p), None),
                    None => (None, Some(floor)),
                }
            } else {
                (Some(path.critical(&copts)?), None)
            };
            let (n, r) = if cfg.with_measures {
                (Some(nmodel.ntd(&s.rho, &opts)?.value), Some(lmodel.rom(&s.rho, 1e-8)?.value))
            } else {
                (None, None)
            };
            Ok(Some(vec![Cell::int(i), Cell::text(s.hash), Cell::opt(p), Cell::opt(below), Cell::opt(n), Cell::opt(r)]))
        },
        |floor, rows| {
            for r in rows {
                if let Some(p) = r[2].as_f64() {
                    *floor = floor.max(p);
                }
            }
        },
    )?;
    let mut table = Table::new(&["id", "hash", "p_crit", "screened_below", "ntd", "rom"]);
    table.rows = rows;
    let resolved: Vec<(usize, f64)> = table.rows.iter().enumerate().filter_map(|(k, r)| r[2].as_f64().map(|p| (k, p))).collect();
    let (argmax, max) = resolved.iter().fold((0, f64::NEG_INFINITY), |acc, &(k, p)| if p > acc.1 { (k, p) } else { acc });
    let mut report = Report::new("threshold", cfg, table);
    report.set("samples", count);
    report.set("mode", cfg.mode);
    report.set("max_p", max);
    report.set("argmax_id", argmax);
    report.set("resolved", resolved.len());
    if !cfg.screen {
        let ps: Vec<f64> = resolved.iter().map(|x| x.1).collect();
        report.set("mean_p", mean(&ps));
        if cfg.with_measures {
            let ntd = report.table.numbers("ntd");
            let rom = report.table.numbers("rom");
            let corr_n = spearman(&ntd, &ps);
            report.set("spearman_ntd_p", corr_n);
            report.set("spearman_rom_p", spearman(&rom, &ps));
            if let Some(c) = corr_n {
                report.check("noise envelope", c >= 0.0, format!("spearman(ntd, p) = {c:.4}"));
            }
        }
    }
    if cfg.system == System::Qubit1 {
        let bound = 1.0 - 1.0 / 3f64.sqrt() + 1e-4;
        report.check("one-qubit maximum", max <= bound, format!("max {max:.6} vs bound {bound:.6}"));
    }
    Ok(report)
}

struct FacetSet {
    facets: Vec<FacetInequality>,
    class_of: Vec<u8>,
    classes: usize,
}

fn facet_set(system: System) -> Result<&'static FacetSet> {
    static CELLS: [OnceLock<FacetSet>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = match system {
        System::Qubit1 => 0,
        System::Qutrit1 => 1,
        System::Qubit2 => 2,
        System::Qubit3 => return Err(Error::Unsupported("the three-qubit facets are not enumerated".into())),
    };
    if let Some(s) = CELLS[idx].get() {
        return Ok(s);
    }
    let set = match system {
        System::Qubit1 => {
            let facets: Vec<FacetInequality> = one_qudit_facets(2)?.into_iter().map(|f| f.facet).collect();
            let class_of = vec![1; facets.len()];
            FacetSet { facets, class_of, classes: 1 }
        }
        System::Qutrit1 => {
            let facets = one_qudit_facets(3)?.into_iter().map(|f| f.facet).collect();
            FacetSet { facets, class_of: qutrit_facet_classes()?.to_vec(), classes: 2 }
        }
        _ => {
            let fc = two_qubit_facets()?;
            FacetSet { facets: fc.facets.clone(), class_of: fc.class_of.clone(), classes: 8 }
        }
    };
    Ok(CELLS[idx].get_or_init(|| set))
}

/// Violated facets per sample, split by Clifford class.
pub fn cmd_facet_audit(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let count = cfg.sample_count(DEFAULT_SAMPLES);
    let set = facet_set(cfg.system)?;
    let rows = run_samples(cfg, "facet-audit", count, |i| {
        let s = draw(cfg, i, 1.0)?;
        let values: Vec<f64> = if cfg.system.is_qubit() {
            let pv = pauli_vector(&s.rho)?;
            set.facets.iter().map(|f| f.evaluate_pauli(&pv).expect("qubit facets carry coefficients")).collect()
        } else {
            set.facets.iter().map(|f| f.evaluate(&s.rho)).collect::<Result<_>>()?
        };
        let mut per_class = vec![0usize; set.classes];
        for (v, &c) in values.iter().zip(&set.class_of) {
            if *v < -VIOLATION_TOL {
                per_class[c as usize - 1] += 1;
            }
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mut row = vec![Cell::int(i), Cell::text(s.hash), Cell::int(per_class.iter().sum()), Cell::float(min)];
        row.extend(per_class.into_iter().map(Cell::int));
        Ok(Some(row))
    })?;
    let class_cols: Vec<String> = (1..=set.classes).map(|c| format!("class_{c}")).collect();
    let mut cols: Vec<&str> = vec!["id", "hash", "violated", "min_value"];
    cols.extend(class_cols.iter().map(String::as_str));
    let mut table = Table::new(&cols);
    table.rows = rows;
    let violated = column(&table.rows, 2);
    let n = table.rows.len().max(1) as f64;
    let class_rate: Vec<f64> = (0..set.classes)
        .map(|c| table.rows.iter().filter(|r| r[4 + c].as_f64().unwrap_or(0.0) > 0.0).count() as f64 / n)
        .collect();
    let class_mean: Vec<f64> = (0..set.classes).map(|c| column(&table.rows, 4 + c).iter().sum::<f64>() / n).collect();
    let all_classes = table.rows.iter().filter(|r| (0..set.classes).all(|c| r[4 + c].as_f64().unwrap_or(0.0) > 0.0)).count();
    let mut report = Report::new("facet-audit", cfg, table);
    report.set("samples", count);
    report.set("facets", set.facets.len());
    report.set("mean_violated", mean(&violated));
    report.set("class_violation_rate", &class_rate);
    report.set("class_mean_violated", &class_mean);
    report.set("rate_all_classes", all_classes as f64 / n);
    report.set("rate_any", violated.iter().filter(|&&v| v > 0.0).count() as f64 / n);
    Ok(report)
}

/// Bell-type witnesses on the named states and on samples.
pub fn cmd_bell(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let count = cfg.sample_count(DEFAULT_SAMPLES);
    let system = cfg.system;
    let values = |rho: &DensityMatrix| -> Result<Vec<Cell>> {
        Ok(match system {
            System::Qubit2 => {
                let (a, b) = chsh_halves(rho)?;
                vec![Cell::float(chsh_dd(rho)?), Cell::float(a), Cell::float(b)]
            }
            System::Qubit3 => vec![
                Cell::float(mermin3(rho)?),
                Cell::float(chsh3q(rho)?),
                Cell::float(THREE_BODY_W.lhs(rho)?),
                Cell::float(THREE_BODY_HOGGAR.lhs(rho)?),
            ],
            s => return Err(Error::Unsupported(format!("Bell witnesses on {s}"))),
        })
    };
    let named: Vec<(&str, PureState)> = match system {
        System::Qubit2 => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            vec![("bell", PureState::from_real(&[s, 0.0, 0.0, s])?), ("T2", t_state().tensor(&t_state()))]
        }
        _ => vec![("W", w_state()), ("hoggar", hoggar_state()), ("GHZ", ghz_state())],
    };
    let mut table = Table::new(&match system {
        System::Qubit2 => vec!["id", "name", "hash", "chsh_dd", "chsh_a", "chsh_b"],
        _ => vec!["id", "name", "hash", "mermin3", "chsh3q", "three_body_w", "three_body_hoggar"],
    });
    let mut named_values = Vec::new();
    for (name, psi) in &named {
        let v = values(&psi.density())?;
        named_values.push((*name, v.clone()));
        let mut row = vec![Cell::Null, Cell::text(*name), Cell::text(state_hash(psi.amplitudes()))];
        row.extend(v);
        table.rows.push(row);
    }
    let sampled = run_samples(cfg, "bell", count, |i| {
        let s = draw(cfg, i, 1.0)?;
        let mut row = vec![Cell::int(i), Cell::Null, Cell::text(s.hash)];
        row.extend(values(&s.rho)?);
        Ok(Some(row))
    })?;
    let sample_rows = sampled.clone();
    table.rows.extend(sampled);
    let mut report = Report::new("bell", cfg, table);
    report.set("samples", count);
    let rate = |k: usize, bound: f64, above: bool| {
        let n = sample_rows.len().max(1) as f64;
        sample_rows.iter().filter(|r| r[k].as_f64().is_some_and(|v| if above { v > bound + 1e-9 } else { v < bound - 1e-9 })).count() as f64 / n
    };
    match system {
        System::Qubit2 => {
            report.set("rate_chsh_dd_above_2", rate(3, 2.0, true));
        }
        _ => {
            report.set("rate_mermin_above_2", rate(3, 2.0, true));
            report.set("rate_chsh3q_violated", rate(4, CHSH3Q_BOUND, true));
            report.set("rate_three_body_w_violated", rate(5, THREE_BODY_W.bound as f64, false));
            report.set("rate_three_body_hoggar_violated", rate(6, THREE_BODY_HOGGAR.bound as f64, false));
            let get = |name: &str, k: usize| named_values.iter().find(|(n, _)| *n == name).and_then(|(_, v)| v[k].as_f64()).unwrap_or(f64::NAN);
            for (label, value, target) in [
                ("W three-body", get("W", 2), -714.66),
                ("hoggar three-body", get("hoggar", 3), -1518.66),
                ("W two-body", get("W", 1), 5.33),
                ("hoggar two-body", get("hoggar", 1), 4.66),
                ("GHZ Mermin", get("GHZ", 0), 4.0),
            ] {
                report.set(&label.replace([' ', '-'], "_"), value);
                report.check(label, (value - target).abs() <= 1e-2, format!("{value:.4} vs {target}"));
            }
        }
    }
    Ok(report)
}

/// Distance against entanglement entropy, for random states or for walks
/// from every stabilizer state to the register's walk target.
pub fn cmd_entanglement(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let system = cfg.system;
    if system.n() < 2 {
        return Err(Error::Unsupported(format!("entanglement of a single site ({system})")));
    }
    let model = NtdModel::for_system(system)?;
    let opts = ntd_opts(cfg);
    let vs = system.vertices()?;
    let (rows, walks) = if cfg.generator == Generator::Walk {
        let walks = cfg.samples.unwrap_or(vs.len()).min(vs.len());
        let steps = (1.0 / cfg.step).round() as usize;
        let target = walk_target(system);
        let rows = run_samples(cfg, "entanglement", walks * (steps + 1), |i| {
            let (w, k) = (i / (steps + 1), i % (steps + 1));
            let eps = if k == steps { 1.0 } else { k as f64 * cfg.step };
            let amps: Vec<C64> =
                vs.states[w].amplitudes().iter().zip(target.amplitudes()).map(|(s, t)| s * eps + t * (1.0 - eps)).collect();
            if amps.iter().map(|a| a.norm_sqr()).sum::<f64>() < 1e-24 {
                return Ok(None);
            }
            let psi = PureState::normalized(amps)?;
            let r = model.ntd(&psi.density(), &opts)?;
            Ok(Some(vec![
                Cell::int(i),
                Cell::int(w),
                Cell::float(eps),
                Cell::text(state_hash(psi.amplitudes())),
                Cell::float(r.value),
                Cell::float(r.gap),
                Cell::opt(entropy_of(&psi, system)?),
            ]))
        })?;
        (rows, Some((walks, steps + 1)))
    } else {
        let count = cfg.sample_count(DEFAULT_SAMPLES);
        let rows = run_samples(cfg, "entanglement", count, |i| {
            let s = draw(cfg, i, 1.0)?;
            let psi = s.pure.as_ref().ok_or_else(|| Error::Config("entanglement entropy needs a pure-state generator".into()))?;
            let r = model.ntd(&s.rho, &opts)?;
            Ok(Some(vec![
                Cell::int(i),
                Cell::Null,
                Cell::Null,
                Cell::text(s.hash),
                Cell::float(r.value),
                Cell::float(r.gap),
                Cell::opt(entropy_of(psi, system)?),
            ]))
        })?;
        (rows, None)
    };
    let mut table = Table::new(&["id", "walk", "eps", "hash", "ntd", "gap", "entropy"]);
    table.rows = rows;
    let expected = walks.map(|(w, p)| w * p).unwrap_or_else(|| cfg.sample_count(DEFAULT_SAMPLES));
    let skipped = expected - table.rows.len();
    let ntd = column(&table.rows, 4);
    let ent = column(&table.rows, 6);
    let mut report = Report::new("entanglement", cfg, table);
    report.set("rows", ntd.len());
    report.set("skipped", skipped);
    report.set("max_ntd", ntd.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    report.set("max_entropy", ent.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    if let Some((w, p)) = walks {
        report.set("walks", w);
        report.set("points_per_walk", p);
    }
    if system == System::Qubit2 {
        let slack = 0.05;
        let limit = t_distance() + slack;
        let corner = ntd.iter().zip(&ent).filter(|(&n, &e)| e > 0.99 && n > limit).count();
        report.set("upper_right_count", corner);
        report.check("upper-right region empty", corner == 0, format!("{corner} states with E > 0.99 and ntd > {limit:.4}"));
    }
    Ok(report)
}

/// Audit of the concentration bound: a pure state at distance eps <= eps*
/// from the polytope lies within delta(eps) of some stabilizer state, and its
/// single-site entropies are within f(delta) of that state's.
pub fn cmd_concentration(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let system = cfg.system;
    let dim = system.dim();
    let count = cfg.sample_count(DEFAULT_SAMPLES);
    let eps_star = epsilon_star(dim)?;
    let model = NtdModel::for_system(system)?;
    let vs = system.vertices()?;
    let opts = ntd_opts(cfg);
    const MAX_ATTEMPTS: usize = 200;
    let rows = run_samples(cfg, "concentration", count, |i| {
        // Redraw within the sample's own stream until the state is eligible.
        let mut rng = SeededRng::new(cfg.seed, i as u64);
        let mut found = None;
        for attempt in 1..=MAX_ATTEMPTS {
            let psi = match cfg.generator {
                Generator::Haar => haar_pure(dim, &mut rng)?,
                Generator::Biased => biased_circuit_state(system.n(), &mut rng)?,
                Generator::Walk => near_vertex_state(system, cfg.reach.unwrap_or(0.3), &mut rng)?.1,
                Generator::Hs => return Err(Error::Config("the concentration audit needs pure states".into())),
            };
            let r = model.ntd(&psi.density(), &opts)?;
            if r.value <= eps_star {
                found = Some((attempt, psi, r));
                break;
            }
        }
        let Some((attempts, psi, r)) = found else {
            let mut row = vec![Cell::Null; 12];
            row[0] = Cell::int(i);
            row[2] = Cell::int(MAX_ATTEMPTS);
            return Ok(Some(row));
        };
        let eps = r.lower_bound.max(0.0);
        let delta = concentration_delta(eps, dim)?;
        let (nearest, dist) = vs
            .states
            .iter()
            .enumerate()
            .map(|(k, s)| (k, (1.0 - fidelity_pure(&psi, s)).max(0.0).sqrt()))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        let distance_ok = dist <= delta + 1e-9;
        let (gap, bound, entropy_ok) = if system.n() >= 2 {
            let bound = fannes_bound(delta, dim)?;
            let mut worst: f64 = 0.0;
            for q in 0..system.n() {
                let a = entanglement_entropy(&psi, &[q])?;
                let b = entanglement_entropy(&vs.states[nearest], &[q])?;
                worst = worst.max((a - b).abs());
            }
            (Some(worst), Some(bound), Cell::Bool(worst <= bound + 1e-9))
        } else {
            (None, None, Cell::Null)
        };
        Ok(Some(vec![
            Cell::int(i),
            Cell::text(state_hash(psi.amplitudes())),
            Cell::int(attempts),
            Cell::float(r.value),
            Cell::float(eps),
            Cell::float(delta),
            Cell::int(nearest),
            Cell::float(dist),
            Cell::Bool(distance_ok),
            Cell::opt(gap),
            Cell::opt(bound),
            entropy_ok,
        ]))
    })?;
    let mut table = Table::new(&[
        "id", "hash", "attempts", "ntd", "eps", "delta", "nearest", "nearest_distance", "distance_ok", "entropy_gap",
        "entropy_bound", "entropy_ok",
    ]);
    table.rows = rows;
    let audited = table.rows.iter().filter(|r| r[8].as_bool().is_some()).count();
    let distance_bad = table.rows.iter().filter(|r| r[8].as_bool() == Some(false)).count();
    let cor_audited = table.rows.iter().filter(|r| r[11].as_bool().is_some()).count();
    let cor_bad = table.rows.iter().filter(|r| r[11].as_bool() == Some(false)).count();
    let mut report = Report::new("concentration", cfg, table);
    report.set("eps_star", eps_star);
    report.set("samples", count);
    report.set("audited", audited);
    report.set("distance_violations", distance_bad);
    report.set("entropy_audited", cor_audited);
    report.set("entropy_violations", cor_bad);
    report.check("distance bound", distance_bad == 0, format!("{distance_bad} violations over {audited} states"));
    if system.n() >= 2 {
        report.check("entropy bound", cor_bad == 0, format!("{cor_bad} violations over {cor_audited} states"));
    }
    Ok(report)
}

/// Pauli words of a named projection, or a comma-separated list.
pub fn projection_words(name: &str) -> Result<Vec<PauliWord>> {
    let list: Vec<String> = match name {
        "octahedron" => ["X", "Y", "Z"].map(String::from).to_vec(),
        "chsh" => ["XX", "XY", "YX", "YY"].map(String::from).to_vec(),
        "two-body-xy" => {
            let mut out = Vec::new();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                for a in ['X', 'Y'] {
                    for b in ['X', 'Y'] {
                        let mut w = vec!['I'; 3];
                        w[i] = a;
                        w[j] = b;
                        out.push(w.into_iter().collect());
                    }
                }
            }
            out
        }
        custom => custom.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
    };
    list.iter().map(|s| s.parse::<PauliWord>()).collect()
}

/// Facets of a projected polytope.
pub fn cmd_hull(cfg: &ExperimentConfig) -> Result<Report> {
    let name = cfg.projection.clone().unwrap_or_else(|| "octahedron".into());
    let words = projection_words(&name)?;
    let n = words.first().map(|w| w.num_qubits()).ok_or_else(|| Error::Config("empty projection".into()))?;
    let system = System::new(2, n)?;
    let pp = project_vertices(system.vertices()?, &words)?;
    let hull = dd_hull(&pp)?;
    hull.verify(&pp)?;
    let mut cols = vec!["constant".to_string()];
    cols.extend(words.iter().map(|w| w.to_string()));
    let mut table = Table { columns: cols, rows: Vec::new() };
    for f in &hull.facets {
        let mut row = vec![Cell::Int(f.constant)];
        row.extend(f.coeffs.iter().map(|&c| Cell::Int(c)));
        table.rows.push(row);
    }
    let mut report = Report::new("hull", cfg, table);
    report.set("projection", &name);
    let extreme = hull.vertices(&pp).len();
    let nonzero = pp.points.iter().filter(|p| p.iter().any(|x| *x != Ratio::from_integer(0))).count();
    report.set("points", pp.points.len());
    report.set("nonzero_points", nonzero);
    report.set("extreme_points", extreme);
    report.set("facets", hull.facets.len());
    report.set("dimension", hull.dimension);
    match name.as_str() {
        "octahedron" => report.check("facet count", hull.facets.len() == 8, format!("{} facets", hull.facets.len())),
        "two-body-xy" => report.check(
            "projected point and facet counts",
            nonzero == 80 && hull.facets.len() == 9984,
            format!("{nonzero} nonzero points ({extreme} extreme), {} facets", hull.facets.len()),
        ),
        "chsh" => {
            let has = hull.facets.iter().any(|f| f.constant == 1 && f.coeffs == [-1, -1, 0, 0]);
            report.check("<XX> + <XY> <= 1 is a facet", has, format!("{} facets", hull.facets.len()));
        }
        _ => {}
    }
    report.facet_file = Some(FacetFile::from_hull(&hull));
    Ok(report)
}

/// Amplitudes of every stabilizer state of the register.
pub fn cmd_export_vertices(cfg: &ExperimentConfig) -> Result<Report> {
    let vs = cfg.system.vertices()?;
    let dim = cfg.system.dim();
    let mut cols = vec!["index".to_string()];
    for k in 0..dim {
        cols.push(format!("re_{k}"));
        cols.push(format!("im_{k}"));
    }
    let mut table = Table { columns: cols, rows: Vec::new() };
    for (k, s) in vs.states.iter().enumerate() {
        let mut row = vec![Cell::int(k)];
        for z in s.amplitudes() {
            row.push(Cell::Float(z.re));
            row.push(Cell::Float(z.im));
        }
        table.rows.push(row);
    }
    let mut report = Report::new("export-vertices", cfg, table);
    report.set("vertices", vs.len());
    report.check("vertex count", vs.len() == cfg.system.vertex_count(), format!("{} vertices", vs.len()));
    Ok(report)
}

/// All facets of a one- or two-qubit polytope as a facet file.
pub fn cmd_facets_export(cfg: &ExperimentConfig) -> Result<Report> {
    if !cfg.system.is_qubit() || cfg.system.n() > 2 {
        return Err(Error::Unsupported(format!("facet export for {}", cfg.system)));
    }
    let set = facet_set(cfg.system)?;
    let file = FacetFile::from_facets(cfg.system.n(), &set.facets)?;
    let mut cols = vec!["class".to_string(), "constant".to_string()];
    cols.extend(file.words.iter().map(|w| w.to_string()));
    let mut table = Table { columns: cols, rows: Vec::new() };
    for (row, &c) in file.rows.iter().zip(&set.class_of) {
        let mut r = vec![Cell::Int(c as i64)];
        r.extend(row.iter().map(|&x| Cell::Int(x)));
        table.rows.push(r);
    }
    let mut report = Report::new("facets-export", cfg, table);
    report.set("facets", file.rows.len());
    report.facet_file = Some(file);
    Ok(report)
}

/// Reads a facet file and checks every inequality on the stabilizer states.
pub fn cmd_facets_import<R: BufRead>(cfg: &ExperimentConfig, input: R) -> Result<Report> {
    let file = read_facet_file(input)?;
    let n = file.words.first().map(|w| w.num_qubits()).ok_or_else(|| Error::Config("facet file without words".into()))?;
    let system = System::new(2, n)?;
    let vs = system.vertices()?;
    let pvs = vs.pauli_vectors()?;
    let mut table = Table::new(&["index", "min_vertex_value", "tight_vertices", "valid"]);
    let mut invalid = 0;
    for (k, f) in file.inequalities()?.iter().enumerate() {
        let vals: Vec<f64> = pvs.iter().map(|p| f.evaluate_pauli(p).expect("qubit facet")).collect();
        let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let tight = vals.iter().filter(|v| v.abs() < 1e-9).count();
        let valid = min >= -1e-9;
        invalid += usize::from(!valid);
        table.rows.push(vec![Cell::int(k), Cell::float(min), Cell::int(tight), Cell::Bool(valid)]);
    }
    let mut report = Report::new("facets-import", cfg, table);
    report.set("facets", file.rows.len());
    report.set("system", system.to_string());
    report.check("valid on every stabilizer state", invalid == 0, format!("{invalid} invalid inequalities"));
    report.facet_file = Some(file);
    Ok(report)
}

/// Every command that only needs a configuration, by CLI name.
pub fn run_command(name: &str, cfg: &ExperimentConfig) -> Result<Report> {
    match name {
        "catalog" => cmd_catalog(cfg),
        "hist" => cmd_hist(cfg),
        "compare" => cmd_compare(cfg),
        "threshold" => cmd_threshold(cfg),
        "facet-audit" => cmd_facet_audit(cfg),
        "bell" => cmd_bell(cfg),
        "entanglement" => cmd_entanglement(cfg),
        "concentration" => cmd_concentration(cfg),
        "hull" => cmd_hull(cfg),
        "export-vertices" => cmd_export_vertices(cfg),
        "facets-export" => cmd_facets_export(cfg),
        other => Err(Error::Config(format!("unknown command '{other}'"))),
    }
}
