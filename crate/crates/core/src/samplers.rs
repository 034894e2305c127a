//! Random and structured state generation, depolarizing noise and
//! critical-noise search.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cliffstab::gates;
use crate::convex::{lp_membership, ntd, NtdOptions};
use crate::error::{Error, Result};
use crate::facets::{one_qudit_facets, two_qubit_facets};
use crate::pauli::{all_words, pauli_vector};
use crate::qmat::{ComplexMatrix, DensityMatrix, PureState, C64};
use crate::system::System;

/// Deterministic generator keyed by (seed, stream). Distinct streams are
/// independent, so sample k can always be drawn from stream k.
#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng, spare: None }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform on [0, 2 pi).
    pub fn angle(&mut self) -> f64 {
        2.0 * PI * self.uniform()
    }

    /// Standard normal by Box-Muller.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }

    /// Complex normal with independent standard normal parts.
    pub fn complex_normal(&mut self) -> C64 {
        let re = self.normal();
        C64::new(re, self.normal())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::DimensionMismatch(format!("sampling needs dimension >= 2, got {dim}")));
    }
    Ok(())
}

/// Haar-random pure state.
pub fn haar_pure(dim: usize, rng: &mut SeededRng) -> Result<PureState> {
    check_dim(dim)?;
    PureState::normalized((0..dim).map(|_| rng.complex_normal()).collect())
}

/// Hilbert-Schmidt random mixed state G G^dag / Tr(G G^dag) with a square
/// complex Ginibre matrix G.
pub fn hs_mixed(dim: usize, rng: &mut SeededRng) -> Result<DensityMatrix> {
    check_dim(dim)?;
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| rng.complex_normal());
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::new(w.scale_real(1.0 / tr).hermitian_part())
}

pub fn ry(theta: f64) -> ComplexMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    ComplexMatrix::from_vec(2, 2, vec![C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)])
        .expect("2x2")
}

pub fn rz(theta: f64) -> ComplexMatrix {
    let zero = C64::new(0.0, 0.0);
    ComplexMatrix::from_vec(2, 2, vec![C64::from_polar(1.0, -theta / 2.0), zero, zero, C64::from_polar(1.0, theta / 2.0)])
        .expect("2x2")
}

/// Number of rotation angles used by [`circuit_state`].
pub fn circuit_angle_count(n: usize) -> Result<usize> {
    match n {
        2 => Ok(6),
        3 => Ok(14),
        _ => Err(Error::Unsupported(format!("rotation circuits on {n} qubits"))),
    }
}

/// Rotation-and-CNOT circuit applied to |0...0>.
///
/// Two qubits: R_Y R_Z on each qubit, CNOT(0,1), R_Y on each qubit.
/// Three qubits: R_Y R_Z on each qubit, CNOT(0,1), CNOT(1,2), R_Y on each
/// qubit, CNOT(0,2), then R_Y R_Z on qubits 0 and 1 and R_Y on qubit 2.
/// In each R_Y R_Z pair the R_Z acts first.
pub fn circuit_state(n: usize, angles: &[f64]) -> Result<PureState> {
    let count = circuit_angle_count(n)?;
    if angles.len() != count {
        return Err(Error::DimensionMismatch(format!("{} angles for a {n}-qubit circuit", angles.len())));
    }
    let mut amps = PureState::basis(1 << n, 0).amplitudes().to_vec();
    let mut it = angles.iter().copied();
    let yz = |amps: &mut [C64], q: usize, it: &mut dyn Iterator<Item = f64>| {
        let a = it.next().unwrap();
        let b = it.next().unwrap();
        gates::apply_1q(amps, &rz(b), q, n);
        gates::apply_1q(amps, &ry(a), q, n);
    };
    for q in 0..n {
        yz(&mut amps, q, &mut it);
    }
    if n == 2 {
        gates::apply_cnot(&mut amps, 0, 1, n);
        for q in 0..2 {
            gates::apply_1q(&mut amps, &ry(it.next().unwrap()), q, n);
        }
    } else {
        gates::apply_cnot(&mut amps, 0, 1, n);
        gates::apply_cnot(&mut amps, 1, 2, n);
        for q in 0..3 {
            gates::apply_1q(&mut amps, &ry(it.next().unwrap()), q, n);
        }
        gates::apply_cnot(&mut amps, 0, 2, n);
        yz(&mut amps, 0, &mut it);
        yz(&mut amps, 1, &mut it);
        gates::apply_1q(&mut amps, &ry(it.next().unwrap()), 2, n);
    }
    PureState::normalized(amps)
}

/// Circuit state with angles drawn uniformly from [0, 2 pi).
pub fn biased_circuit_state(n: usize, rng: &mut SeededRng) -> Result<PureState> {
    let angles: Vec<f64> = (0..circuit_angle_count(n)?).map(|_| rng.angle()).collect();
    circuit_state(n, &angles)
}

/// Straight-line walk between two pure states.
#[derive(Clone, Debug)]
pub struct WalkSpec {
    pub start: PureState,
    pub end: PureState,
    pub step: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Walk {
    /// (epsilon, normalized state) in increasing epsilon.
    pub points: Vec<(f64, PureState)>,
    /// Values of epsilon where the interpolant vanished.
    pub skipped: Vec<f64>,
}

/// States proportional to eps |start> + (1 - eps) |end> for eps = 0, step, ..., 1.
pub fn walk(spec: &WalkSpec) -> Result<Walk> {
    if !(spec.step > 0.0 && spec.step <= 1.0) {
        return Err(Error::Config(format!("walk step {} outside (0, 1]", spec.step)));
    }
    if spec.start.dim() != spec.end.dim() {
        return Err(Error::DimensionMismatch("walk endpoints differ in dimension".into()));
    }
    let count = (1.0 / spec.step).round() as usize;
    let mut out = Walk::default();
    for k in 0..=count {
        let eps = if k == count { 1.0 } else { k as f64 * spec.step };
        let amps: Vec<C64> = spec
            .start
            .amplitudes()
            .iter()
            .zip(spec.end.amplitudes())
            .map(|(s, e)| s * eps + e * (1.0 - eps))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            out.skipped.push(eps);
            continue;
        }
        out.points.push((eps, PureState::normalized(amps)?));
    }
    Ok(out)
}

/// End point of the vertex walks: the largest-distance state known for each
/// register.
pub fn walk_target(system: System) -> PureState {
    use crate::measures::{hoggar_state, strange_state, t_state};
    match system {
        System::Qubit1 => t_state(),
        System::Qutrit1 => strange_state(),
        System::Qubit2 => t_state().tensor(&t_state()),
        System::Qubit3 => hoggar_state(),
    }
}

/// A point on the walk from a random stabilizer state towards a Haar-random
/// state, with eps drawn uniformly from [1 - reach, 1]. Returns the vertex
/// index and the state.
pub fn near_vertex_state(system: System, reach: f64, rng: &mut SeededRng) -> Result<(usize, PureState)> {
    if !(reach > 0.0 && reach <= 1.0) {
        return Err(Error::Config(format!("reach {reach} outside (0, 1]")));
    }
    let vs = system.vertices()?;
    loop {
        let k = ((rng.uniform() * vs.len() as f64) as usize).min(vs.len() - 1);
        let target = haar_pure(system.dim(), rng)?;
        let eps = 1.0 - reach * rng.uniform();
        let amps: Vec<C64> = vs.states[k]
            .amplitudes()
            .iter()
            .zip(target.amplitudes())
            .map(|(s, t)| s * eps + t * (1.0 - eps))
            .collect();
        if amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-12 {
            return Ok((k, PureState::normalized(amps)?));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepolarizationMode {
    Global,
    Local,
}

impl fmt::Display for DepolarizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Global => "global",
            Self::Local => "local",
        })
    }
}

impl FromStr for DepolarizationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "global" => Ok(Self::Global),
            "local" => Ok(Self::Local),
            _ => Err(Error::Config(format!("unknown depolarization mode '{s}'"))),
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidState(format!("noise probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// (1 - p) rho + p I/d
pub fn depolarize_global(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    check_p(p)?;
    rho.mix_with(&DensityMatrix::maximally_mixed(rho.dim()), p)
}

/// Single-qubit depolarizing channel with the same p on every qubit. On a
/// single qudit this coincides with the global channel.
pub fn depolarize_local(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    check_p(p)?;
    let dim = rho.dim();
    if !dim.is_power_of_two() || dim < 2 {
        if System::from_dim(dim).map(|s| s.n() == 1).unwrap_or(false) {
            return depolarize_global(rho, p);
        }
        return Err(Error::Unsupported(format!("local depolarization on dimension {dim}")));
    }
    let n = dim.trailing_zeros() as usize;
    let paulis = [gates::x(), gates::y(), gates::z()];
    let mut m = rho.matrix().clone();
    for q in 0..n {
        // I/2 (x) Tr_q(m) = (m + X m X + Y m Y + Z m Z) / 4 on qubit q
        let mut twirl = m.clone();
        for p1 in &paulis {
            let u = gates::on_qubit(p1, q, n);
            twirl = &twirl + &(&(&u * &m) * &u);
        }
        let mut next = m.scale_real(1.0 - p);
        next.axpy(C64::new(p / 4.0, 0.0), &twirl);
        m = next;
    }
    Ok(DensityMatrix::from_trusted(m.hermitian_part()))
}

pub fn depolarize(rho: &DensityMatrix, p: f64, mode: DepolarizationMode) -> Result<DensityMatrix> {
    match mode {
        DepolarizationMode::Global => depolarize_global(rho, p),
        DepolarizationMode::Local => depolarize_local(rho, p),
    }
}

/// How membership in the stabilizer polytope is decided during the search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "tol")]
pub enum MembershipTest {
    /// Facet inequalities where they are known (one qubit, one qutrit, two
    /// qubits), LP feasibility over the vertices otherwise.
    Exact,
    /// Certified trace distance at most the given tolerance.
    Distance(f64),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CriticalOptions {
    pub iterations: usize,
    pub membership: MembershipTest,
    /// Slack allowed on each facet inequality in exact mode.
    pub facet_tol: f64,
}

impl Default for CriticalOptions {
    fn default() -> Self {
        Self { iterations: 20, membership: MembershipTest::Exact, facet_tol: 1e-9 }
    }
}

/// Facet coefficient rows of a qubit register, flattened row-major.
fn qubit_facet_rows(system: System) -> Result<&'static [f64]> {
    static CELLS: [OnceLock<Vec<f64>>; 2] = [OnceLock::new(), OnceLock::new()];
    let idx = match system {
        System::Qubit1 => 0,
        System::Qubit2 => 1,
        _ => return Err(Error::Unsupported(format!("facet rows for {system}"))),
    };
    if let Some(f) = CELLS[idx].get() {
        return Ok(f);
    }
    let rows: Vec<f64> = if system == System::Qubit1 {
        one_qudit_facets(2)?
            .into_iter()
            .flat_map(|f| f.facet.coefficients().expect("qubit").iter().map(|&a| a as f64).collect::<Vec<_>>())
            .collect()
    } else {
        two_qubit_facets()?.facets.iter().flat_map(|f| f.coefficients().expect("qubit").iter().map(|&a| a as f64)).collect()
    };
    Ok(CELLS[idx].get_or_init(|| rows))
}

fn qutrit_facets() -> Result<&'static [ComplexMatrix]> {
    static CELL: OnceLock<Vec<ComplexMatrix>> = OnceLock::new();
    if let Some(f) = CELL.get() {
        return Ok(f);
    }
    let ops = one_qudit_facets(3)?.into_iter().map(|f| f.facet.operator().clone()).collect();
    Ok(CELL.get_or_init(|| ops))
}

/// Facet values along a noise path, where the facets are known.
enum FacetPath {
    /// Tr(rho_p A) = sum_k alpha_k c_k q^{w_k} with q = 1 - p.
    Qubit { rows: &'static [f64], coords: Vec<f64>, weights: Vec<i32> },
    /// Tr(rho_p A) = t + q (Tr(rho A) - t) with t = Tr(A)/3.
    Qutrit { pairs: Vec<(f64, f64)> },
    Unknown,
}

impl FacetPath {
    fn new(rho: &DensityMatrix, mode: DepolarizationMode, system: System) -> Result<Self> {
        Ok(match system {
            System::Qubit1 | System::Qubit2 => {
                let coords = pauli_vector(rho)?;
                let weights = match mode {
                    DepolarizationMode::Local => all_words(system.n()).iter().map(|w| w.weight() as i32).collect(),
                    DepolarizationMode::Global => (0..coords.len()).map(|k| i32::from(k != 0)).collect(),
                };
                FacetPath::Qubit { rows: qubit_facet_rows(system)?, coords, weights }
            }
            System::Qutrit1 => FacetPath::Qutrit {
                pairs: qutrit_facets()?
                    .iter()
                    .map(|a| {
                        let t = a.trace().re / 3.0;
                        (t, rho.expectation(a) - t)
                    })
                    .collect(),
            },
            System::Qubit3 => FacetPath::Unknown,
        })
    }

    fn min_value(&self, p: f64) -> Option<f64> {
        let q = 1.0 - p;
        match self {
            FacetPath::Qubit { rows, coords, weights } => {
                let scaled: Vec<f64> = coords.iter().zip(weights).map(|(c, &w)| c * q.powi(w)).collect();
                Some(rows.chunks_exact(scaled.len()).map(|r| r.iter().zip(&scaled).map(|(a, c)| a * c).sum::<f64>()).fold(f64::INFINITY, f64::min))
            }
            FacetPath::Qutrit { pairs } => Some(pairs.iter().map(|(t, g)| t + q * g).fold(f64::INFINITY, f64::min)),
            FacetPath::Unknown => None,
        }
    }
}

/// A state under increasing depolarizing noise, with fast membership tests.
pub struct NoisePath {
    rho: DensityMatrix,
    mode: DepolarizationMode,
    system: System,
    facets: FacetPath,
}

impl NoisePath {
    pub fn new(rho: &DensityMatrix, mode: DepolarizationMode) -> Result<Self> {
        let system = System::from_dim(rho.dim())?;
        let facets = FacetPath::new(rho, mode, system)?;
        Ok(Self { rho: rho.clone(), mode, system, facets })
    }

    pub fn state_at(&self, p: f64) -> Result<DensityMatrix> {
        depolarize(&self.rho, p, self.mode)
    }

    /// Smallest facet value at noise p, when facets are known.
    pub fn min_facet_value(&self, p: f64) -> Option<f64> {
        self.facets.min_value(p)
    }

    pub fn inside_at(&self, p: f64, opts: &CriticalOptions) -> Result<bool> {
        match opts.membership {
            MembershipTest::Exact => match self.min_facet_value(p) {
                Some(v) => Ok(v >= -opts.facet_tol),
                None => lp_membership(&self.state_at(p)?, self.system.vertices()?),
            },
            MembershipTest::Distance(tol) => {
                let r = ntd(&self.state_at(p)?, self.system.vertices()?, &NtdOptions { tol: tol.min(1e-6), ..Default::default() })?;
                Ok(r.value <= tol)
            }
        }
    }

    /// Bisection for the smallest p that puts the state inside the polytope,
    /// assuming membership is monotone in p. Returns 0 for states already
    /// inside.
    pub fn critical(&self, opts: &CriticalOptions) -> Result<f64> {
        if self.inside_at(0.0, opts)? {
            return Ok(0.0);
        }
        Ok(self.bisect(0.0, 1.0, opts)?.0)
    }

    /// Critical noise when it exceeds `floor`, or None when the state is
    /// already inside at `floor`. The final bracket has the same width as a
    /// full search from [0, 1].
    pub fn critical_above(&self, floor: f64, opts: &CriticalOptions) -> Result<Option<f64>> {
        check_p(floor)?;
        if self.inside_at(floor, opts)? {
            return Ok(None);
        }
        Ok(Some(self.bisect(floor, 1.0, opts)?.0))
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, opts: &CriticalOptions) -> Result<(f64, usize)> {
        let width = 0.5f64.powi(opts.iterations as i32);
        let mut steps = 0;
        while hi - lo > width && steps < opts.iterations {
            let mid = 0.5 * (lo + hi);
            if self.inside_at(mid, opts)? {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
        }
        Ok((0.5 * (lo + hi), steps))
    }
}

/// Noise level at which a pure state becomes a stabilizer mixture.
pub fn critical_depolarization(psi: &PureState, mode: DepolarizationMode, opts: &CriticalOptions) -> Result<f64> {
    NoisePath::new(&psi.density(), mode)?.critical(opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<f64> = (0..5).map({
            let mut r = SeededRng::new(7, 3);
            move |_| r.uniform()
        }).collect();
        let b: Vec<f64> = (0..5).map({
            let mut r = SeededRng::new(7, 3);
            move |_| r.uniform()
        }).collect();
        let c: Vec<f64> = (0..5).map({
            let mut r = SeededRng::new(7, 4);
            move |_| r.uniform()
        }).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn zero_angles_give_all_zero_state() {
        for n in [2, 3] {
            let psi = circuit_state(n, &vec![0.0; circuit_angle_count(n).unwrap()]).unwrap();
            assert!((psi.amplitudes()[0].re - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn local_channel_at_full_noise() {
        let mut rng = SeededRng::new(1, 0);
        let rho = hs_mixed(4, &mut rng).unwrap();
        let out = depolarize_local(&rho, 1.0).unwrap();
        assert!(out.matrix().max_abs_diff(DensityMatrix::maximally_mixed(4).matrix()) < 1e-14);
        assert!(depolarize_local(&rho, 0.0).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-14);
    }
}
