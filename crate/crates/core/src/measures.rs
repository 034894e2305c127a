//! Scalar quantities on states: distance-based magic and its closed-form
//! bounds, robustness, stabilizer Renyi entropy, entanglement, Bell-type
//! witnesses, entropy continuity bounds and a catalog of named states.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cliffstab::{displacement, DisplacementIndex};
use crate::convex::{ntd_auto, rom_auto, NtdOptions, NtdResult, RomResult};
use crate::error::{Error, Result};
use crate::facets::{count_violations, one_qudit_facets, qutrit_facet_classes, two_qubit_facets, VIOLATION_TOL};
use crate::pauli::{all_words, num_qubits_for_dim, pauli_vector, PauliWord};
use crate::qmat::{eigh, eigvalsh, von_neumann_entropy, ComplexMatrix, DensityMatrix, PureState, C64};
use crate::system::System;

/// Certified trace distance to the stabilizer polytope of the state's system.
pub fn ntd(rho: &DensityMatrix) -> Result<NtdResult> {
    ntd_auto(rho, &NtdOptions::default())
}

/// Robustness of magic with the default LP tolerance.
pub fn rom(rho: &DensityMatrix) -> Result<RomResult> {
    rom_auto(rho, 1e-8)
}

fn expect_dim(rho: &DensityMatrix, dim: usize) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch(format!("expected dimension {dim}, got {}", rho.dim())));
    }
    Ok(())
}

/// One-qubit closed form: -(sqrt3/3) min(0, min_q Tr(rho A^q)), the
/// Euclidean distance (halved) from the Bloch vector to the nearest violated
/// octahedron face plane.
pub fn ntd_lb_qubit(rho: &DensityMatrix) -> Result<f64> {
    expect_dim(rho, 2)?;
    let pv = pauli_vector(rho)?;
    let worst = one_qudit_facets(2)?
        .iter()
        .map(|f| f.facet.evaluate_pauli(&pv).expect("qubit facet") * 0.5)
        .fold(0.0f64, f64::min);
    Ok(-worst / 3f64.sqrt())
}

/// Breakpoints of the class-2 qutrit bound.
pub const QUTRIT_I0: f64 = 0.4554;
pub const QUTRIT_I1: f64 = 0.618;

/// Distance bound as a function of one facet value c = Tr(rho A) for a
/// qutrit facet of class 1 or 2. Zero for c >= 0.
pub fn qutrit_facet_bound(class: u8, c: f64) -> f64 {
    if c >= 0.0 {
        return 0.0;
    }
    match class {
        1 => -0.5 * c,
        _ if c >= -QUTRIT_I0 => -c / 5f64.sqrt(),
        _ => 3.43 * c * c + 2.19 * c + 0.49,
    }
}

/// Qutrit lower bound: the largest per-facet bound over all 81 facets.
pub fn ntd_lb_qutrit(rho: &DensityMatrix) -> Result<f64> {
    expect_dim(rho, 3)?;
    let classes = qutrit_facet_classes()?;
    let mut best = 0.0f64;
    for (f, &class) in one_qudit_facets(3)?.iter().zip(classes) {
        best = best.max(qutrit_facet_bound(class, f.facet.evaluate(rho)?));
    }
    Ok(best)
}

/// Hermitian operator of witness I1 (which = 1) or I2 (which = 2).
pub fn qutrit_witness_operator(which: u8) -> Result<&'static ComplexMatrix> {
    static CELLS: [OnceLock<ComplexMatrix>; 2] = [OnceLock::new(), OnceLock::new()];
    let cell = &CELLS[usize::from(which == 2)];
    if let Some(m) = cell.get() {
        return Ok(m);
    }
    let omega = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut acc = ComplexMatrix::zeros(3, 3);
    for a in 0..3 {
        for b in 0..3 {
            let coeff = match (which, a, b) {
                (2, 2, 1) => omega,
                (2, 1, 2) => omega.conj(),
                _ => C64::new(1.0, 0.0),
            };
            let d = displacement(&DisplacementIndex::single(3, a, b))?;
            acc.axpy(coeff / 3.0, &d.adjoint());
        }
    }
    Ok(cell.get_or_init(|| acc.hermitian_part()))
}

/// Qutrit witnesses (I1, I2): (1/3) sum c <D^dag> over all displacements,
/// with c = 1 for I1. I2 puts omega on X Z^2 and omega^* on X^2 Z. Both are
/// facets of the one-qutrit polytope, one from each Clifford class.
pub fn qutrit_witnesses(rho: &DensityMatrix) -> Result<(f64, f64)> {
    expect_dim(rho, 3)?;
    Ok((rho.expectation(qutrit_witness_operator(1)?), rho.expectation(qutrit_witness_operator(2)?)))
}

/// Smallest value of a qutrit witness over all states (its lowest eigenvalue).
pub fn qutrit_witness_minimum(which: u8) -> Result<f64> {
    Ok(eigvalsh(qutrit_witness_operator(which)?)?[0])
}

/// Stabilizer Renyi entropy (1/(1-alpha)) log2 sum_P Xi_P^alpha - log2 2^n
/// with Xi_P = <P>^2 / 2^n.
pub fn sre(psi: &PureState, alpha: f64) -> Result<f64> {
    if (alpha - 1.0).abs() < 1e-12 || alpha <= 0.0 {
        return Err(Error::Config(format!("Renyi order {alpha} is not supported")));
    }
    let n = num_qubits_for_dim(psi.dim())?;
    let dim = psi.dim() as f64;
    let total: f64 = all_words(n).iter().map(|w| (w.expectation_pure(psi).powi(2) / dim).powf(alpha)).sum();
    Ok(total.log2() / (1.0 - alpha) - dim.log2())
}

/// Von Neumann entropy (bits) of the reduced state on the `keep` qubits.
pub fn entanglement_entropy(psi: &PureState, keep: &[usize]) -> Result<f64> {
    let n = num_qubits_for_dim(psi.dim())?;
    let reduced = psi.density().partial_trace(&vec![2; n], keep)?;
    von_neumann_entropy(&reduced)
}

/// Two-qubit entanglement entropy across the only cut.
pub fn ent_entropy(psi: &PureState) -> Result<f64> {
    if psi.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("two-qubit state expected, got dimension {}", psi.dim())));
    }
    entanglement_entropy(psi, &[0])
}

/// Average single-qubit marginal entropy of a three-qubit state.
pub fn mean_entropy(psi: &PureState) -> Result<f64> {
    if psi.dim() != 8 {
        return Err(Error::DimensionMismatch(format!("three-qubit state expected, got dimension {}", psi.dim())));
    }
    let mut total = 0.0;
    for q in 0..3 {
        total += entanglement_entropy(psi, &[q])?;
    }
    Ok(total / 3.0)
}

/// Local-unitary class of a stabilizer state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LuClass {
    Product,
    Bell,
    /// Qubits 0 and 1 entangled, qubit 2 separate.
    BisepAbC,
    BisepAcB,
    BisepBcA,
    Ghz,
}

impl fmt::Display for LuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Product => "product",
            Self::Bell => "bell",
            Self::BisepAbC => "bisep-AB|C",
            Self::BisepAcB => "bisep-AC|B",
            Self::BisepBcA => "bisep-BC|A",
            Self::Ghz => "ghz",
        })
    }
}

fn entropy_bit(s: f64) -> Result<bool> {
    if s.abs() < 1e-9 {
        Ok(false)
    } else if (s - 1.0).abs() < 1e-9 {
        Ok(true)
    } else {
        Err(Error::InvalidState(format!("marginal entropy {s} is not 0 or 1; not a stabilizer state")))
    }
}

/// Classify a two- or three-qubit stabilizer state by its marginal entropies.
pub fn lu_class(psi: &PureState) -> Result<LuClass> {
    match psi.dim() {
        4 => Ok(if entropy_bit(ent_entropy(psi)?)? { LuClass::Bell } else { LuClass::Product }),
        8 => {
            let bits = [
                entropy_bit(entanglement_entropy(psi, &[0])?)?,
                entropy_bit(entanglement_entropy(psi, &[1])?)?,
                entropy_bit(entanglement_entropy(psi, &[2])?)?,
            ];
            match bits {
                [false, false, false] => Ok(LuClass::Product),
                [true, true, false] => Ok(LuClass::BisepAbC),
                [true, false, true] => Ok(LuClass::BisepAcB),
                [false, true, true] => Ok(LuClass::BisepBcA),
                [true, true, true] => Ok(LuClass::Ghz),
                _ => Err(Error::InvalidState(format!("marginal entropy pattern {bits:?} is impossible"))),
            }
        }
        d => Err(Error::Unsupported(format!("LU classes for dimension {d}"))),
    }
}

fn word_expectation(rho: &DensityMatrix, word: &str) -> Result<f64> {
    let w: PauliWord = word.parse()?;
    if 1usize << w.num_qubits() != rho.dim() {
        return Err(Error::DimensionMismatch(format!("word {word} on dimension {}", rho.dim())));
    }
    Ok(w.expectation(rho))
}

/// Sum of c * <word> over signed terms.
pub fn pauli_sum(rho: &DensityMatrix, terms: &[(f64, &str)]) -> Result<f64> {
    terms.iter().map(|&(c, w)| Ok(c * word_expectation(rho, w)?)).sum()
}

/// <XX> + <XY> + <YX> - <YY>; at most 2 on stabilizer states.
pub fn chsh_dd(rho: &DensityMatrix) -> Result<f64> {
    pauli_sum(rho, &[(1.0, "XX"), (1.0, "XY"), (1.0, "YX"), (-1.0, "YY")])
}

/// The two halves (<XX> + <XY>, <YX> - <YY>); each at most 1 on stabilizer states.
pub fn chsh_halves(rho: &DensityMatrix) -> Result<(f64, f64)> {
    Ok((pauli_sum(rho, &[(1.0, "XX"), (1.0, "XY")])?, pauli_sum(rho, &[(1.0, "YX"), (-1.0, "YY")])?))
}

/// <XXX> - <XYY> - <YXY> - <YYX>.
pub fn mermin3(rho: &DensityMatrix) -> Result<f64> {
    pauli_sum(rho, &[(1.0, "XXX"), (-1.0, "XYY"), (-1.0, "YXY"), (-1.0, "YYX")])
}

/// Two-body X/Y inequality on three qubits, left-hand side; at most 4 on
/// stabilizer states.
pub const CHSH3Q_TERMS: [(f64, &str); 11] = [
    (2.0, "XIX"),
    (-1.0, "XXI"),
    (3.0, "IXX"),
    (-3.0, "XYI"),
    (1.0, "YXI"),
    (-2.0, "XIY"),
    (-3.0, "IXY"),
    (1.0, "IYX"),
    (3.0, "YYI"),
    (2.0, "YIY"),
    (-1.0, "IYY"),
];
pub const CHSH3Q_BOUND: f64 = 4.0;

pub fn chsh3q(rho: &DensityMatrix) -> Result<f64> {
    pauli_sum(rho, &CHSH3Q_TERMS)
}

/// Three-body correlators (<XXX>, <XXY>, ..., <ZZZ>) in lexicographic order.
pub fn three_body_correlators(rho: &DensityMatrix) -> Result<[f64; 27]> {
    expect_dim(rho, 8)?;
    let pv = pauli_vector(rho)?;
    let mut out = [0.0; 27];
    for (k, slot) in out.iter_mut().enumerate() {
        let letters = [1 + k / 9, 1 + (k / 3) % 3, 1 + k % 3];
        *slot = pv[letters[0] * 16 + letters[1] * 4 + letters[2]];
    }
    Ok(out)
}

/// Facet of the three-body projection: coeffs . P3 >= bound.
#[derive(Clone, Copy, Debug)]
pub struct ThreeBodyInequality {
    pub name: &'static str,
    pub coeffs: [i64; 27],
    pub bound: i64,
}

impl ThreeBodyInequality {
    /// coeffs . P3; negative values below `bound` are violations.
    pub fn lhs(&self, rho: &DensityMatrix) -> Result<f64> {
        let p = three_body_correlators(rho)?;
        Ok(self.coeffs.iter().zip(&p).map(|(&c, &x)| c as f64 * x).sum())
    }

    /// coeffs . P3 - bound; negative when violated.
    pub fn slack(&self, rho: &DensityMatrix) -> Result<f64> {
        Ok(self.lhs(rho)? - self.bound as f64)
    }
}

pub const THREE_BODY_W: ThreeBodyInequality = ThreeBodyInequality {
    name: "three-body-w",
    coeffs: [
        -141, -103, -153, -359, -141, -71, -10, -72, -146, -79, 141, 67, 101, -99, 17, 78, -292, 366, -157, -95, 151,
        -225, -45, -89, -170, 232, 288,
    ],
    bound: -608,
};

pub const THREE_BODY_HOGGAR: ThreeBodyInequality = ThreeBodyInequality {
    name: "three-body-hoggar",
    coeffs: [
        278, -348, -500, -330, -116, 42, -204, 406, -60, 317, 15, 143, 687, -241, 399, 567, -229, 303, -27, -419, 339,
        -181, 507, -433, -271, 609, 89,
    ],
    bound: -1236,
};

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    crate::qmat::shannon_entropy(&[x, 1.0 - x])
}

/// t log2(D - 1) + h(t): the Fannes-Audenaert continuity bound.
pub fn fannes_error(t: f64, dim: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) || dim < 2 {
        return Err(Error::Config(format!("fannes_error needs t in [0,1] and D >= 2, got t={t}, D={dim}")));
    }
    Ok(t * ((dim - 1) as f64).log2() + binary_entropy(t))
}

/// Inverse of the binary entropy on the branch [1/2, 1], by bisection.
pub fn binary_entropy_inverse(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::Config(format!("binary entropy value {y} outside [0, 1]")));
    }
    let (mut lo, mut hi) = (0.5f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) > y {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest eps with f(eps, D) <= 1, by bisection on [0, 1 - 1/D].
pub fn epsilon_star(dim: usize) -> Result<f64> {
    let (mut lo, mut hi) = (0.0f64, 1.0 - 1.0 / dim as f64);
    if fannes_error(hi, dim)? <= 1.0 {
        return Ok(hi);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if fannes_error(mid, dim)? < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(lo)
}

/// eps + 2 sqrt(1 - h^-1(f(eps, D))): bound on the trace distance from a
/// pure state at distance eps from the polytope to its closest vertex.
pub fn concentration_delta(eps: f64, dim: usize) -> Result<f64> {
    let f = fannes_error(eps, dim)?;
    if f > 1.0 {
        return Err(Error::Config(format!("eps = {eps} exceeds the range where the bound applies for D = {dim}")));
    }
    Ok(eps + 2.0 * (1.0 - binary_entropy_inverse(f)?).max(0.0).sqrt())
}

/// Entropy difference allowed between states at trace distance at most t:
/// f evaluated at min(t, 1 - 1/D), where f is still increasing.
pub fn fannes_bound(t: f64, dim: usize) -> Result<f64> {
    fannes_error(t.clamp(0.0, 1.0 - 1.0 / dim as f64), dim)
}

/// Per-state measure summary.
#[derive(Clone, Debug, Serialize)]
pub struct MeasureRecord {
    pub ntd: f64,
    pub ntd_lower: f64,
    pub ntd_gap: f64,
    /// Closed-form bound where one exists (one qubit or one qutrit).
    pub ntd_lb: Option<f64>,
    pub rom: f64,
    pub rom_gap: f64,
    pub rom_residual: f64,
    pub sre2: Option<f64>,
    /// Two qubits: entropy across the cut; three qubits: mean marginal entropy.
    pub entropy: Option<f64>,
    /// Violated two-qubit facets.
    pub violations: Option<usize>,
}

impl MeasureRecord {
    pub fn for_state(rho: &DensityMatrix, pure: Option<&PureState>) -> Result<Self> {
        let system = System::from_dim(rho.dim())?;
        let n = ntd(rho)?;
        let r = rom(rho)?;
        let ntd_lb = match system {
            System::Qubit1 => Some(ntd_lb_qubit(rho)?),
            System::Qutrit1 => Some(ntd_lb_qutrit(rho)?),
            _ => None,
        };
        let sre2 = match pure {
            Some(psi) if system.is_qubit() => Some(sre(psi, 2.0)?),
            _ => None,
        };
        let entropy = match (pure, system) {
            (Some(psi), System::Qubit2) => Some(ent_entropy(psi)?),
            (Some(psi), System::Qubit3) => Some(mean_entropy(psi)?),
            _ => None,
        };
        let violations = match system {
            System::Qubit2 => Some(count_violations(rho, &two_qubit_facets()?.facets, VIOLATION_TOL)?),
            _ => None,
        };
        Ok(Self {
            ntd: n.value,
            ntd_lower: n.lower_bound,
            ntd_gap: n.gap,
            ntd_lb,
            rom: r.value,
            rom_gap: r.gap,
            rom_residual: r.residual,
            sre2,
            entropy,
            violations,
        })
    }
}

/// A reference value attached to a catalog state.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedValue {
    pub measure: String,
    pub value: f64,
    pub tol: f64,
    /// Where the value comes from.
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateCatalogEntry {
    pub name: String,
    pub system: System,
    pub state: PureState,
    pub expected: Vec<ExpectedValue>,
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn expect(measure: &str, value: f64, tol: f64, note: &str) -> ExpectedValue {
    ExpectedValue { measure: measure.into(), value, tol, note: note.into() }
}

/// |T> with Bloch vector (1,1,1)/sqrt3.
pub fn t_state() -> PureState {
    let theta = (1.0 / 3f64.sqrt()).acos();
    PureState::new(vec![c((theta / 2.0).cos(), 0.0), C64::from_polar((theta / 2.0).sin(), PI / 4.0)])
        .expect("unit norm")
}

pub fn strange_state() -> PureState {
    PureState::new(vec![c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)]).expect("unit norm")
}

/// Rounded amplitudes of the maximal violator of the second qutrit witness.
pub const STRANGE2_ROUNDED: [(f64, f64); 3] = [(0.17, -0.07), (-0.67, -0.18), (0.69, 0.0)];

/// Projection of psi onto the lowest eigenspace of a Hermitian operator,
/// renormalized. Recovers an exact maximal violator from rounded amplitudes.
pub fn ground_space_projection(op: &ComplexMatrix, psi: &PureState) -> Result<PureState> {
    let e = eigh(op)?;
    let d = op.rows();
    let scale = e.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut v = vec![C64::new(0.0, 0.0); d];
    for k in (0..d).take_while(|&k| e.values[k] - e.values[0] <= 1e-9 * scale) {
        let col = e.vectors.column(k);
        let overlap: C64 = col.iter().zip(psi.amplitudes()).map(|(a, b)| a.conj() * b).sum();
        for (vi, ci) in v.iter_mut().zip(&col) {
            *vi += overlap * ci;
        }
    }
    PureState::normalized(v)
}

/// Exact maximal violator of the second qutrit witness nearest the rounded one.
pub fn strange2_state() -> PureState {
    let rounded = PureState::normalized(STRANGE2_ROUNDED.iter().map(|&(re, im)| c(re, im)).collect()).expect("nonzero");
    ground_space_projection(qutrit_witness_operator(2).expect("witness"), &rounded).expect("overlapping ground space")
}

pub fn norrell_state() -> PureState {
    PureState::from_real(&[-1.0, 2.0, -1.0]).expect("nonzero")
}

pub fn hoggar_state() -> PureState {
    let mut amps = vec![c(0.0, 0.0); 8];
    amps[0b000] = c(1.0, 1.0);
    amps[0b010] = c(-1.0, 0.0);
    amps[0b011] = c(1.0, 0.0);
    amps[0b100] = c(0.0, -1.0);
    amps[0b101] = c(1.0, 0.0);
    PureState::normalized(amps).expect("nonzero")
}

pub fn w_state() -> PureState {
    let mut amps = vec![0.0; 8];
    amps[0b001] = 1.0;
    amps[0b010] = 1.0;
    amps[0b100] = 1.0;
    PureState::from_real(&amps).expect("nonzero")
}

pub fn ghz_state() -> PureState {
    let mut amps = vec![0.0; 8];
    amps[0] = 1.0;
    amps[7] = 1.0;
    PureState::from_real(&amps).expect("nonzero")
}

/// Rounded amplitudes of the maximal violators of the eight two-qubit facet
/// classes, with reference values of the minimum facet value and distance.
pub const MAX_VIOLATORS: [([(f64, f64); 4], f64, f64); 8] = [
    ([(0.628, 0.0), (-0.23, 0.23), (-0.23, -0.23), (0.0, 0.628)], -1.4641, 0.2113),
    ([(0.773, 0.0), (-0.394, 0.273), (-0.083, 0.241), (-0.255, 0.248)], -1.2361, 0.3577),
    ([(0.817, 0.0), (-0.299, -0.299), (-0.335, -0.09), (-0.09, -0.156)], -1.6397, 0.3376),
    ([(0.648, 0.0), (0.185, -0.535), (-0.262, 0.108), (0.381, -0.185)], -1.6171, 0.2998),
    ([(0.765, 0.0), (-0.383, 0.247), (0.068, 0.315), (-0.315, 0.068)], -1.2915, 0.3475),
    ([(0.459, 0.0), (0.579, -0.164), (0.0, -0.256), (-0.579, 0.164)], -1.8042, 0.3304),
    ([(0.544, 0.0), (-0.272, -0.035), (-0.391, 0.119), (-0.663, 0.153)], -1.746, 0.2334),
    ([(0.372, 0.0), (-0.715, -0.399), (-0.113, 0.203), (-0.195, -0.316)], -1.4875, 0.3304),
];

/// Rounded amplitudes of row r, normalized.
pub fn max_violator_rounded_state(r: usize) -> Result<PureState> {
    let row = MAX_VIOLATORS.get(r).ok_or_else(|| Error::InvalidLabel(format!("violator row {r}")))?;
    PureState::normalized(row.0.iter().map(|&(re, im)| c(re, im)).collect())
}

/// Maximal violator of facet class r + 1: the rounded amplitudes projected
/// onto the ground space of the class representative.
pub fn max_violator_state(r: usize) -> Result<PureState> {
    let rounded = max_violator_rounded_state(r)?;
    ground_space_projection(crate::facets::representative_facets()[r].operator(), &rounded)
}

/// Named states with reference values.
pub fn catalog() -> Vec<StateCatalogEntry> {
    let t = t_state();
    let sqrt3 = 3f64.sqrt();
    let mut out = vec![
        StateCatalogEntry {
            name: "T".into(),
            system: System::Qubit1,
            state: t.clone(),
            expected: vec![
                expect("ntd", 0.2113, 2e-3, "published"),
                expect("ntd_lb", (sqrt3 - 1.0) / (2.0 * sqrt3), 1e-6, "closed form (sqrt3 - 1)/(2 sqrt3)"),
                expect("rom", sqrt3, 1e-6, "l1 norm of the Bloch vector"),
                expect("sre2", (1.5f64).log2(), 1e-9, "Pauli spectrum {1, 1/3, 1/3, 1/3}"),
                expect("critical_global", 1.0 - 1.0 / sqrt3, 1e-4, "octahedron face crossing"),
            ],
        },
        StateCatalogEntry {
            name: "strange".into(),
            system: System::Qutrit1,
            state: strange_state(),
            expected: vec![
                expect("ntd", 0.5, 2e-3, "published"),
                expect("ntd_lb", 0.5, 1e-6, "class-1 branch"),
                expect("i31", -1.0, 1e-9, "published"),
            ],
        },
        StateCatalogEntry {
            name: "strange2".into(),
            system: System::Qutrit1,
            state: strange2_state(),
            expected: vec![
                expect("ntd", 0.447, 2e-3, "published"),
                expect("i32", 0.5 - 5f64.sqrt() / 2.0, 1e-9, "lowest eigenvalue of the witness"),
            ],
        },
        StateCatalogEntry {
            name: "norrell".into(),
            system: System::Qutrit1,
            state: norrell_state(),
            expected: vec![
                expect("ntd", 1.0 / 3.0, 2e-3, "published"),
                expect("i31", -0.5, 1e-9, "published"),
                expect("i32", -0.5, 1e-9, "published"),
            ],
        },
        StateCatalogEntry {
            name: "T2".into(),
            system: System::Qubit2,
            state: t.tensor(&t),
            expected: vec![
                expect("ntd", 0.378, 2e-3, "published"),
                expect("sre2", 2.0 * (1.5f64).log2(), 1e-9, "additivity"),
            ],
        },
        StateCatalogEntry {
            name: "T3".into(),
            system: System::Qubit3,
            state: t.tensor(&t).tensor(&t),
            expected: vec![expect("ntd", 0.509, 2e-3, "published")],
        },
        StateCatalogEntry {
            name: "hoggar".into(),
            system: System::Qubit3,
            state: hoggar_state(),
            expected: vec![
                expect("ntd", 0.583, 2e-3, "published"),
                expect("three_body_hoggar", -1518.66, 1e-2, "published"),
                expect("chsh3q", 4.66, 1e-2, "published"),
            ],
        },
        StateCatalogEntry {
            name: "W".into(),
            system: System::Qubit3,
            state: w_state(),
            expected: vec![
                expect("three_body_w", -714.66, 1e-2, "published"),
                expect("chsh3q", 5.33, 1e-2, "published"),
                expect("mean_entropy", binary_entropy(1.0 / 3.0), 1e-9, "marginals diag(2/3, 1/3)"),
            ],
        },
        StateCatalogEntry {
            name: "GHZ".into(),
            system: System::Qubit3,
            state: ghz_state(),
            expected: vec![
                expect("mermin3", 4.0, 1e-2, "published"),
                expect("ntd", 0.0, 1e-6, "stabilizer state"),
                expect("mean_entropy", 1.0, 1e-9, "maximally mixed marginals"),
            ],
        },
    ];
    for (r, row) in MAX_VIOLATORS.iter().enumerate() {
        out.push(StateCatalogEntry {
            name: format!("psi22_{}", r + 1),
            system: System::Qubit2,
            state: max_violator_state(r).expect("violator row"),
            expected: vec![
                expect("ntd", row.2, 2e-3, "published"),
                expect("facet_min", row.1, 2e-3, "published"),
            ],
        });
    }
    out
}

/// Evaluate one named measure on a state.
pub fn evaluate_measure(measure: &str, entry: &StateCatalogEntry, r: Option<usize>) -> Result<f64> {
    let psi = &entry.state;
    let rho = psi.density();
    match measure {
        "ntd" => Ok(ntd(&rho)?.value),
        "ntd_lb" => match entry.system {
            System::Qubit1 => ntd_lb_qubit(&rho),
            System::Qutrit1 => ntd_lb_qutrit(&rho),
            s => Err(Error::Unsupported(format!("closed-form bound on {s}"))),
        },
        "rom" => Ok(rom(&rho)?.value),
        "sre2" => sre(psi, 2.0),
        "i31" => Ok(qutrit_witnesses(&rho)?.0),
        "i32" => Ok(qutrit_witnesses(&rho)?.1),
        "chsh3q" => chsh3q(&rho),
        "mermin3" => mermin3(&rho),
        "three_body_w" => THREE_BODY_W.lhs(&rho),
        "three_body_hoggar" => THREE_BODY_HOGGAR.lhs(&rho),
        "mean_entropy" => mean_entropy(psi),
        "critical_global" => crate::samplers::critical_depolarization(
            psi,
            crate::samplers::DepolarizationMode::Global,
            &Default::default(),
        ),
        "facet_min" => {
            let r = r.ok_or_else(|| Error::Config("facet_min needs a violator row".into()))?;
            crate::facets::representative_facets()[r].evaluate(&rho)
        }
        other => Err(Error::Config(format!("unknown measure '{other}'"))),
    }
}
