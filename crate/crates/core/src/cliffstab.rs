//! Displacement operators, Clifford groups and stabilizer states.

use std::collections::{HashMap, HashSet, VecDeque};
use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{all_words, PauliWord};
use crate::qmat::{ComplexMatrix, PureState, C64, I, ONE, ZERO};

/// Multi-qudit displacement label: `a` is the clock (Z) exponent and `b`
/// the shift (X) exponent on each qudit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DisplacementIndex {
    pub d: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl DisplacementIndex {
    pub fn single(d: u32, a: u32, b: u32) -> Self {
        Self { d, a: vec![a], b: vec![b] }
    }
}

fn supported_prime(d: u32) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("local dimension {d}")))
    }
}

fn omega(d: u32, k: u64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * (k % d as u64) as f64 / d as f64)
}

/// tau^x where tau^2 = omega; tau = i for qubits, omega^{2^{-1}} for odd d.
fn tau(d: u32, x: i64) -> C64 {
    if d == 2 {
        match x.rem_euclid(4) {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        }
    } else {
        let inv2 = (d as i64 + 1) / 2;
        omega(d, (inv2 * x).rem_euclid(d as i64) as u64)
    }
}

fn mod_inverse(x: u32, p: u32) -> Option<u32> {
    (1..p).find(|&y| (x as u64 * y as u64) % p as u64 == 1)
}

/// Shift X|j> = |j+1>.
pub fn shift(d: u32) -> ComplexMatrix {
    let d = d as usize;
    ComplexMatrix::from_fn(d, d, |r, c| if r == (c + 1) % d { ONE } else { ZERO })
}

/// Clock Z|j> = omega^j |j>.
pub fn clock(d: u32) -> ComplexMatrix {
    let n = d as usize;
    ComplexMatrix::from_fn(n, n, |r, c| if r == c { omega(d, r as u64) } else { ZERO })
}

fn single_displacement(d: u32, a: u32, b: u32) -> ComplexMatrix {
    let n = d as usize;
    // tau^{ab} X^b Z^a: column k maps to row k+b with phase tau^{ab} omega^{ak}.
    let ph = tau(d, (a as i64) * (b as i64));
    ComplexMatrix::from_fn(n, n, |r, c| {
        if r == (c + b as usize) % n {
            ph * omega(d, a as u64 * c as u64)
        } else {
            ZERO
        }
    })
}

/// D_{a,b} = tau^{a.b} X^b Z^a on each qudit. For qubits (a,b) = (1,0), (0,1),
/// (1,1) give Z, X and Y.
pub fn displacement(idx: &DisplacementIndex) -> Result<ComplexMatrix> {
    supported_prime(idx.d)?;
    if idx.a.len() != idx.b.len() || idx.a.is_empty() {
        return Err(Error::InvalidLabel(format!("displacement label {idx:?}")));
    }
    if idx.a.iter().chain(&idx.b).any(|&v| v >= idx.d) {
        return Err(Error::InvalidLabel(format!("entries of {idx:?} must be below {}", idx.d)));
    }
    let mut m = ComplexMatrix::identity(1);
    for (&a, &b) in idx.a.iter().zip(&idx.b) {
        m = m.kron(&single_displacement(idx.d, a, b));
    }
    Ok(m)
}

/// Single-qudit Clifford label: displacement xi = (a, b) and a symplectic
/// matrix F = [[alpha, beta], [gamma, delta]] with unit determinant mod d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticLabel {
    pub d: u32,
    pub xi: (u32, u32),
    pub f: [[u32; 2]; 2],
}

/// Metaplectic unitary V_F.
fn metaplectic(d: u32, f: [[u32; 2]; 2]) -> Result<ComplexMatrix> {
    let [[al, be], [ga, de]] = f;
    let det = (al as i64 * de as i64 - be as i64 * ga as i64).rem_euclid(d as i64);
    if det != 1 || f.iter().flatten().any(|&v| v >= d) {
        return Err(Error::InvalidLabel(format!("{f:?} is not in SL(2, Z_{d})")));
    }
    let n = d as usize;
    if be != 0 {
        let binv = mod_inverse(be, d).expect("nonzero element of a prime field") as i64;
        let norm = 1.0 / (d as f64).sqrt();
        Ok(ComplexMatrix::from_fn(n, n, |j, k| {
            let (j, k) = (j as i64, k as i64);
            let e = binv * (al as i64 * k * k - 2 * j * k + de as i64 * j * j);
            tau(d, e) * norm
        }))
    } else {
        Ok(ComplexMatrix::from_fn(n, n, |r, k| {
            if r == (al as usize * k) % n {
                tau(d, al as i64 * ga as i64 * (k * k) as i64)
            } else {
                ZERO
            }
        }))
    }
}

/// C = D_xi V_F.
pub fn clifford_1qudit(label: &SymplecticLabel) -> Result<ComplexMatrix> {
    supported_prime(label.d)?;
    let (a, b) = label.xi;
    if a >= label.d || b >= label.d {
        return Err(Error::InvalidLabel(format!("xi = {:?}", label.xi)));
    }
    let dmat = single_displacement(label.d, a, b);
    Ok(&dmat * &metaplectic(label.d, label.f)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CliffordLabel {
    Symplectic(SymplecticLabel),
    GateWord(String),
}

#[derive(Clone, Debug)]
pub struct CliffordElement {
    pub unitary: ComplexMatrix,
    pub label: CliffordLabel,
}

/// Signed permutation of Pauli words induced by conjugation: C P_k C^dagger
/// = sign[k] P_{perm[k]}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliAction {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl PauliAction {
    pub fn from_unitary(u: &ComplexMatrix) -> Result<Self> {
        let n = crate::pauli::num_qubits_for_dim(u.rows())?;
        let words = all_words(n);
        let mats: Vec<ComplexMatrix> = words.iter().map(|w| w.matrix()).collect();
        let dim = u.rows() as f64;
        let ud = u.adjoint();
        let mut perm = Vec::with_capacity(words.len());
        let mut sign = Vec::with_capacity(words.len());
        for p in &mats {
            let q = &(u * p) * &ud;
            // Read off the unique Pauli from the first nonzero entry pattern.
            let mut found = None;
            for (k, w) in words.iter().enumerate() {
                let mut acc = ZERO;
                for (r, c, v) in w.entries() {
                    acc += v.conj() * q[(r, c)];
                }
                let coef = acc / dim;
                if (coef.norm() - 1.0).abs() < 1e-8 {
                    if coef.im.abs() > 1e-8 {
                        return Err(Error::Numerical("conjugated Pauli has complex phase".into()));
                    }
                    found = Some((k, if coef.re > 0.0 { 1 } else { -1 }));
                    break;
                }
            }
            let (k, s) = found.ok_or_else(|| Error::InvalidLabel("unitary is not a Clifford".into()))?;
            perm.push(k);
            sign.push(s);
        }
        Ok(Self { perm, sign })
    }

    /// Coefficients transform as alpha'_{perm[k]} = sign[k] alpha_k.
    pub fn apply_coefficients(&self, alpha: &[i64]) -> Vec<i64> {
        let mut out = vec![0; alpha.len()];
        for (k, &a) in alpha.iter().enumerate() {
            out[self.perm[k]] = self.sign[k] as i64 * a;
        }
        out
    }
}

/// Hashable key for a matrix or vector modulo a global phase.
pub(crate) fn phase_key(entries: &[C64]) -> Vec<(i64, i64)> {
    let pivot = entries.iter().find(|z| z.norm() > 1e-7).copied().unwrap_or(ONE);
    let ph = pivot.conj() / pivot.norm();
    entries
        .iter()
        .map(|z| {
            let w = z * ph;
            ((w.re * 1e7).round() as i64, (w.im * 1e7).round() as i64)
        })
        .collect()
}

#[derive(Debug)]
pub struct CliffordGroup {
    pub d: u32,
    pub n: usize,
    pub elements: Vec<CliffordElement>,
    actions: OnceLock<Vec<PauliAction>>,
}

impl CliffordGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Pauli actions of every element; qubit groups only.
    pub fn pauli_actions(&self) -> Result<&[PauliAction]> {
        if self.d != 2 {
            return Err(Error::Unsupported("Pauli actions are defined for qubits".into()));
        }
        if let Some(a) = self.actions.get() {
            return Ok(a);
        }
        let acts = self
            .elements
            .iter()
            .map(|e| PauliAction::from_unitary(&e.unitary))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.actions.get_or_init(|| acts))
    }
}

fn single_qudit_group(d: u32) -> Result<CliffordGroup> {
    let mut elements = Vec::new();
    for al in 0..d {
        for be in 0..d {
            for ga in 0..d {
                for de in 0..d {
                    if (al * de + d * d - be * ga) % d != 1 {
                        continue;
                    }
                    for a in 0..d {
                        for b in 0..d {
                            let label = SymplecticLabel { d, xi: (a, b), f: [[al, be], [ga, de]] };
                            let unitary = clifford_1qudit(&label)?;
                            elements.push(CliffordElement { unitary, label: CliffordLabel::Symplectic(label) });
                        }
                    }
                }
            }
        }
    }
    Ok(CliffordGroup { d, n: 1, elements, actions: OnceLock::new() })
}

pub mod gates {
    use super::*;

    pub fn h() -> ComplexMatrix {
        let s = 1.0 / 2f64.sqrt();
        ComplexMatrix::from_vec(2, 2, vec![C64::new(s, 0.0), C64::new(s, 0.0), C64::new(s, 0.0), C64::new(-s, 0.0)])
            .unwrap()
    }

    pub fn s() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, 2, vec![ONE, ZERO, ZERO, I]).unwrap()
    }

    pub fn x() -> ComplexMatrix {
        shift(2)
    }

    pub fn z() -> ComplexMatrix {
        clock(2)
    }

    pub fn y() -> ComplexMatrix {
        (&x() * &z()).scale(I)
    }

    /// Embed a single-qubit gate on `qubit` of an n-qubit register.
    pub fn on_qubit(u: &ComplexMatrix, qubit: usize, n: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(1);
        for k in 0..n {
            m = if k == qubit { m.kron(u) } else { m.kron(&ComplexMatrix::identity(2)) };
        }
        m
    }

    pub fn cnot(control: usize, target: usize, n: usize) -> ComplexMatrix {
        let dim = 1usize << n;
        let cbit = 1 << (n - 1 - control);
        let tbit = 1 << (n - 1 - target);
        ComplexMatrix::from_fn(dim, dim, |r, c| {
            let img = if c & cbit != 0 { c ^ tbit } else { c };
            if r == img {
                ONE
            } else {
                ZERO
            }
        })
    }

    /// In-place single-qubit gate on a state vector.
    pub fn apply_1q(amps: &mut [C64], u: &ComplexMatrix, qubit: usize, n: usize) {
        let bit = 1 << (n - 1 - qubit);
        for j in 0..amps.len() {
            if j & bit == 0 {
                let (a0, a1) = (amps[j], amps[j | bit]);
                amps[j] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
                amps[j | bit] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
            }
        }
    }

    pub fn apply_cnot(amps: &mut [C64], control: usize, target: usize, n: usize) {
        let cbit = 1 << (n - 1 - control);
        let tbit = 1 << (n - 1 - target);
        for j in 0..amps.len() {
            if j & cbit != 0 && j & tbit == 0 {
                amps.swap(j, j | tbit);
            }
        }
    }
}

/// Two-qubit Clifford group modulo phases from four families of gate words.
fn two_qubit_group() -> CliffordGroup {
    use gates::*;
    let id = ComplexMatrix::identity(2);
    let hh = h();
    let v = {
        let hs = &hh * &s();
        &hs * &hs
    };
    let v2 = &v * &v;
    let hs_choices = [("I", id.clone()), ("H", hh.clone())];
    let v_choices = [("I", id.clone()), ("V", v.clone()), ("VV", v2.clone())];
    let p_choices = [("I", id.clone()), ("X", x()), ("Y", y()), ("Z", z())];

    let mut c1: Vec<(String, ComplexMatrix)> = Vec::with_capacity(24);
    for (pn, p) in &p_choices {
        for (vn, vm) in &v_choices {
            for (hn, hm) in &hs_choices {
                c1.push((format!("{pn}{vn}{hn}"), &(p * vm) * hm));
            }
        }
    }
    let cx01 = cnot(0, 1, 2);
    let cx10 = cnot(1, 0, 2);
    let entanglers: [(&str, ComplexMatrix); 3] = [
        ("CX", cx01.clone()),
        ("CX.XC", &cx01 * &cx10),
        ("CX.XC.CX", &(&cx01 * &cx10) * &cx01),
    ];

    let mut elements = Vec::with_capacity(11520);
    for (n0, a) in &c1 {
        for (n1, b) in &c1 {
            let local = a.kron(b);
            elements.push(CliffordElement { unitary: local.clone(), label: CliffordLabel::GateWord(format!("{n0}|{n1}")) });
            for (k, (en, ent)) in entanglers.iter().enumerate() {
                let tails: Vec<(String, ComplexMatrix)> = if k == 2 {
                    vec![(String::new(), ComplexMatrix::identity(4))]
                } else {
                    let mut t = Vec::new();
                    for (vn0, v0) in &v_choices {
                        for (vn1, v1) in &v_choices {
                            t.push((format!(".{vn0}|{vn1}"), v0.kron(v1)));
                        }
                    }
                    t
                };
                for (tn, tail) in tails {
                    let u = &(&local * ent) * &tail;
                    elements.push(CliffordElement { unitary: u, label: CliffordLabel::GateWord(format!("{n0}|{n1}.{en}{tn}")) });
                }
            }
        }
    }
    CliffordGroup { d: 2, n: 2, elements, actions: OnceLock::new() }
}

/// Full Clifford group modulo global phases. Supported: one qubit (24),
/// one qutrit (216) and two qubits (11520).
pub fn enumerate_clifford(d: u32, n: usize) -> Result<CliffordGroup> {
    match (d, n) {
        (2, 1) | (3, 1) => single_qudit_group(d),
        (2, 2) => Ok(two_qubit_group()),
        _ => Err(Error::Unsupported(format!("Clifford enumeration for d={d}, n={n}"))),
    }
}

/// Cached Clifford groups.
pub fn clifford_group(d: u32, n: usize) -> Result<&'static CliffordGroup> {
    static Q1: OnceLock<CliffordGroup> = OnceLock::new();
    static T1: OnceLock<CliffordGroup> = OnceLock::new();
    static Q2: OnceLock<CliffordGroup> = OnceLock::new();
    let cell = match (d, n) {
        (2, 1) => &Q1,
        (3, 1) => &T1,
        (2, 2) => &Q2,
        _ => return Err(Error::Unsupported(format!("Clifford enumeration for d={d}, n={n}"))),
    };
    if let Some(g) = cell.get() {
        return Ok(g);
    }
    let g = enumerate_clifford(d, n)?;
    Ok(cell.get_or_init(|| g))
}

pub fn conjugate_state(u: &ComplexMatrix, psi: &PureState) -> Result<PureState> {
    psi.apply(u)
}

/// Stabilizer states of a register, deduplicated modulo global phase.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizerVertexSet {
    pub d: u32,
    pub n: usize,
    pub states: Vec<PureState>,
}

impl StabilizerVertexSet {
    pub fn dim(&self) -> usize {
        (self.d as usize).pow(self.n as u32)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Pauli expectation vectors (qubits only), one per state.
    pub fn pauli_vectors(&self) -> Result<Vec<Vec<f64>>> {
        if self.d != 2 {
            return Err(Error::Unsupported("Pauli vectors need qubits".into()));
        }
        let words = all_words(self.n);
        Ok(self
            .states
            .iter()
            .map(|s| words.iter().map(|w: &PauliWord| w.expectation_pure(s)).collect())
            .collect())
    }

    /// Serialize as JSON with amplitude pairs [re, im].
    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Export {
            d: u32,
            n: usize,
            count: usize,
            vertices: Vec<Vec<[f64; 2]>>,
        }
        let vertices = self
            .states
            .iter()
            .map(|s| s.amplitudes().iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Ok(serde_json::to_string_pretty(&Export { d: self.d, n: self.n, count: self.states.len(), vertices })?)
    }
}

fn qubit_vertices_bfs(n: usize) -> Vec<PureState> {
    let dim = 1usize << n;
    let hh = gates::h();
    let ss = gates::s();
    let start = PureState::basis(dim, 0);
    let mut seen: HashSet<Vec<(i64, i64)>> = HashSet::new();
    seen.insert(phase_key(start.amplitudes()));
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(psi) = queue.pop_front() {
        let mut nexts = Vec::new();
        for q in 0..n {
            for g in [&hh, &ss] {
                let mut a = psi.amplitudes().to_vec();
                gates::apply_1q(&mut a, g, q, n);
                nexts.push(a);
            }
        }
        for c in 0..n {
            for t in 0..n {
                if c != t {
                    let mut a = psi.amplitudes().to_vec();
                    gates::apply_cnot(&mut a, c, t, n);
                    nexts.push(a);
                }
            }
        }
        for a in nexts {
            if seen.insert(phase_key(&a)) {
                let s = PureState::from_raw(a).phase_canonical();
                out.push(s.clone());
                queue.push_back(s);
            }
        }
    }
    out
}

fn orbit_vertices(group: &CliffordGroup) -> Vec<PureState> {
    let start = PureState::basis(group.elements[0].unitary.rows(), 0);
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for e in &group.elements {
        let s = PureState::from_raw(e.unitary.mul_vec(start.amplitudes()));
        let key = phase_key(s.amplitudes());
        if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
            slot.insert(out.len());
            out.push(s.phase_canonical());
        }
    }
    out
}

/// Enumerate stabilizer states: 6, 12, 60 and 1080 for one qubit, one
/// qutrit, two qubits and three qubits.
pub fn stabilizer_vertices(d: u32, n: usize) -> Result<StabilizerVertexSet> {
    let states = match (d, n) {
        (2, 1..=3) => qubit_vertices_bfs(n),
        (3, 1) => orbit_vertices(clifford_group(3, 1)?),
        _ => return Err(Error::Unsupported(format!("stabilizer states for d={d}, n={n}"))),
    };
    Ok(StabilizerVertexSet { d, n, states })
}

/// Cached vertex sets.
pub fn vertex_set(d: u32, n: usize) -> Result<&'static StabilizerVertexSet> {
    static CELLS: [OnceLock<StabilizerVertexSet>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let cell = match (d, n) {
        (2, 1) => &CELLS[0],
        (3, 1) => &CELLS[1],
        (2, 2) => &CELLS[2],
        (2, 3) => &CELLS[3],
        _ => return Err(Error::Unsupported(format!("stabilizer states for d={d}, n={n}"))),
    };
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = stabilizer_vertices(d, n)?;
    Ok(cell.get_or_init(|| v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_displacements_are_paulis() {
        let z = displacement(&DisplacementIndex::single(2, 1, 0)).unwrap();
        let x = displacement(&DisplacementIndex::single(2, 0, 1)).unwrap();
        let y = displacement(&DisplacementIndex::single(2, 1, 1)).unwrap();
        assert!(z.max_abs_diff(&gates::z()) < 1e-15);
        assert!(x.max_abs_diff(&gates::x()) < 1e-15);
        assert!(y.max_abs_diff(&gates::y()) < 1e-15);
    }

    #[test]
    fn qutrit_displacements_have_order_three() {
        for a in 0..3 {
            for b in 0..3 {
                let dm = displacement(&DisplacementIndex::single(3, a, b)).unwrap();
                let cube = &(&dm * &dm) * &dm;
                assert!(cube.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
                // D^2 = D_{2a, 2b} exactly, phases included.
                let sq = displacement(&DisplacementIndex::single(3, (2 * a) % 3, (2 * b) % 3)).unwrap();
                assert!((&dm * &dm).max_abs_diff(&sq) < 1e-12);
            }
        }
    }

    #[test]
    fn displacement_rejects_bad_labels() {
        assert!(displacement(&DisplacementIndex::single(5, 0, 0)).is_err());
        assert!(displacement(&DisplacementIndex::single(3, 3, 0)).is_err());
    }

    #[test]
    fn antidiagonal_symplectic_gives_hadamard() {
        let label = SymplecticLabel { d: 2, xi: (0, 0), f: [[0, 1], [1, 0]] };
        let u = clifford_1qudit(&label).unwrap();
        let key = phase_key(u.as_slice());
        assert_eq!(key, phase_key(gates::h().as_slice()));
    }

    #[test]
    fn lower_triangular_symplectic_gives_phase_gate() {
        let label = SymplecticLabel { d: 2, xi: (0, 0), f: [[1, 0], [1, 1]] };
        let u = clifford_1qudit(&label).unwrap();
        assert_eq!(phase_key(u.as_slice()), phase_key(gates::s().as_slice()));
    }

    #[test]
    fn non_symplectic_label_rejected() {
        let label = SymplecticLabel { d: 3, xi: (0, 0), f: [[1, 1], [1, 1]] };
        assert!(matches!(clifford_1qudit(&label), Err(Error::InvalidLabel(_))));
    }

    #[test]
    fn single_qudit_groups_are_unitary_and_distinct() {
        for (d, size) in [(2, 24), (3, 216)] {
            let g = enumerate_clifford(d, 1).unwrap();
            assert_eq!(g.len(), size);
            let keys: HashSet<_> = g.elements.iter().map(|e| phase_key(e.unitary.as_slice())).collect();
            assert_eq!(keys.len(), size);
            for e in &g.elements {
                let uu = &e.unitary * &e.unitary.adjoint();
                assert!(uu.max_abs_diff(&ComplexMatrix::identity(d as usize)) < 1e-12);
            }
        }
    }

    #[test]
    fn pauli_action_of_hadamard() {
        let act = PauliAction::from_unitary(&gates::h()).unwrap();
        // I->I, X->Z, Y->-Y, Z->X
        assert_eq!(act.perm, vec![0, 3, 2, 1]);
        assert_eq!(act.sign, vec![1, 1, -1, 1]);
    }

    #[test]
    fn vertex_counts_small() {
        assert_eq!(stabilizer_vertices(2, 1).unwrap().len(), 6);
        assert_eq!(stabilizer_vertices(3, 1).unwrap().len(), 12);
        assert_eq!(stabilizer_vertices(2, 2).unwrap().len(), 60);
    }

    #[test]
    fn export_json_has_count() {
        let v = stabilizer_vertices(2, 1).unwrap();
        let js: serde_json::Value = serde_json::from_str(&v.to_json().unwrap()).unwrap();
        assert_eq!(js["count"], 6);
        assert_eq!(js["vertices"].as_array().unwrap().len(), 6);
    }
}
