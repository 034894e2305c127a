use stabgeo_web::*;

#[test]
fn grid_has_vertices_at_the_poles_and_peaks_near_t() {
    let (nt, np) = (31, 24);
    let g = bloch_grid(nt, np).unwrap();
    assert_eq!(g.len(), nt * np);
    assert!(g[..np].iter().all(|&v| v < 1e-6));
    assert!(g[(nt - 1) * np..].iter().all(|&v| v < 1e-6));
    let max = g.iter().copied().fold(0.0, f64::max);
    let t = (3f64.sqrt() - 1.0) / (2.0 * 3f64.sqrt());
    assert!(max <= t + 1e-6 && max > t - 0.02, "{max}");
    assert!(bloch_grid(1, 4).is_err());
}

#[test]
fn explorer_reports_bell_state_measures() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = explore(&[s, 0.0, 0.0, 0.0, 0.0, 0.0, s, 0.0]).unwrap();
    assert!(v["ntd"].as_f64().unwrap() < 1e-6);
    assert!((v["rom"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert!((v["entropy"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["violated"], 0);
    assert_eq!(v["lu_class"], "bell");

    let tt = stabgeo::measures::t_state().tensor(&stabgeo::measures::t_state());
    let parts: Vec<f64> = tt.amplitudes().iter().flat_map(|a| [a.re, a.im]).collect();
    let v = explore(&parts).unwrap();
    assert!((v["ntd"].as_f64().unwrap() - 0.378).abs() < 2e-3, "{}", v["ntd"]);
    let by_class: Vec<u64> = v["violated_by_class"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(by_class.iter().sum::<u64>(), v["violated"].as_u64().unwrap());
    assert!(explore(&[1.0, 0.0, 0.0, 0.0]).is_err());
    assert!(explore(&[0.0; 8]).is_err());
}

#[test]
fn depolarization_of_t_state() {
    let s = 1.0 / 3f64.sqrt();
    let theta = s.acos();
    let phi = std::f64::consts::FRAC_PI_4;
    let psi = bloch_state(theta, phi);
    let parts: Vec<f64> = psi.amplitudes().iter().flat_map(|a| [a.re, a.im]).collect();
    let v = depolarization(&parts, "global", 11).unwrap();
    let crit = v["critical"].as_f64().unwrap();
    assert!((crit - (1.0 - s)).abs() < 1e-4, "{crit}");
    let ntd: Vec<f64> = v["ntd"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(ntd.len(), 11);
    assert!(ntd.windows(2).all(|w| w[1] <= w[0] + 2e-6));
    assert!(ntd[5] < 1e-5 && ntd[4] > 1e-3);
    assert!(depolarization(&parts, "sideways", 11).is_err());
}
