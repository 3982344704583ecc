//! Standard gates, QFT/AQFT and Grover operators, circuit composition and
//! circuit-wise synthesis.
//!
//! Qubits are numbered from 1; qubit 1 is the most significant bit of a
//! basis index. For controlled gates the leading targets are the controls.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::error::{PdcsError, Result};
use crate::operator::{CMatrix, DenseOperator, C64, I, ONE, ZERO};
use crate::pauli::DEFAULT_DENSE_CAP;
use crate::rotor::{fidelity_unitary, Decomposition, Rotor};
use crate::synth::{synthesize_unitary, SynthesisConfig, SynthesisReport};

/// Default number of kept phase gates per qubit in the approximate QFT.
pub const DEFAULT_AQFT_DEGREE: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StandardGate {
    H,
    X,
    Y,
    Z,
    S,
    T,
    Cnot,
    Cz,
    Cs,
    Swap,
    Toffoli,
    Ccz,
    Fredkin,
    C3Not,
    C3Z,
    Grover(usize),
    Qft(usize),
    Aqft(usize, usize),
    /// `diag(1, e^{iθ})`.
    Phase(f64),
    /// Controlled `Phase(θ)`.
    CPhase(f64),
}

impl StandardGate {
    /// Parses `NAME`, `NAME(p, ...)` or `NAME` with `params` supplied separately.
    pub fn parse(name: &str, params: &[f64]) -> Result<StandardGate> {
        let name = name.trim();
        let (base, inline) = match name.find('(') {
            Some(open) => {
                let inner = name[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| PdcsError::UnknownGate(name.to_string()))?;
                let values = inner
                    .split(',')
                    .map(|v| v.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<f64>, _>>()
                    .map_err(|_| PdcsError::validation(format!("bad parameters in {name:?}")))?;
                (&name[..open], values)
            }
            None => (name, Vec::new()),
        };
        if !inline.is_empty() && !params.is_empty() {
            return Err(PdcsError::validation(format!(
                "{name:?}: parameters given both inline and separately"
            )));
        }
        let p = if inline.is_empty() {
            params.to_vec()
        } else {
            inline
        };
        let upper = base.trim().to_ascii_uppercase();
        let simple = |g: StandardGate| {
            if p.is_empty() {
                Ok(g)
            } else {
                Err(PdcsError::validation(format!(
                    "{upper} takes no parameters"
                )))
            }
        };
        let count = |v: f64, what: &str| -> Result<usize> {
            if v.fract() == 0.0 && v >= 1.0 && v <= DEFAULT_DENSE_CAP as f64 {
                Ok(v as usize)
            } else {
                Err(PdcsError::validation(format!("{upper}: bad {what} {v}")))
            }
        };
        let angle = || -> Result<f64> {
            match p.as_slice() {
                [t] if t.is_finite() => Ok(*t),
                _ => Err(PdcsError::validation(format!(
                    "{upper} takes one finite angle"
                ))),
            }
        };
        match upper.as_str() {
            "H" => simple(StandardGate::H),
            "X" => simple(StandardGate::X),
            "Y" => simple(StandardGate::Y),
            "Z" => simple(StandardGate::Z),
            "S" => simple(StandardGate::S),
            "T" => simple(StandardGate::T),
            "CNOT" | "CX" => simple(StandardGate::Cnot),
            "CZ" => simple(StandardGate::Cz),
            "CS" => simple(StandardGate::Cs),
            "SWAP" => simple(StandardGate::Swap),
            "TOFFOLI" | "CCX" | "CCNOT" => simple(StandardGate::Toffoli),
            "CCZ" => simple(StandardGate::Ccz),
            "FREDKIN" | "CSWAP" => simple(StandardGate::Fredkin),
            "C3NOT" => simple(StandardGate::C3Not),
            "C3Z" => simple(StandardGate::C3Z),
            "P" | "PHASE" => Ok(StandardGate::Phase(angle()?)),
            "CP" | "CPHASE" => Ok(StandardGate::CPhase(angle()?)),
            "GROVER" => match p.as_slice() {
                [n] => Ok(StandardGate::Grover(count(*n, "qubit count")?)),
                _ => Err(PdcsError::validation("GROVER takes one qubit count")),
            },
            "QFT" => match p.as_slice() {
                [n] => Ok(StandardGate::Qft(count(*n, "qubit count")?)),
                _ => Err(PdcsError::validation("QFT takes one qubit count")),
            },
            "AQFT" => match p.as_slice() {
                [n] => Ok(StandardGate::Aqft(
                    count(*n, "qubit count")?,
                    DEFAULT_AQFT_DEGREE,
                )),
                [n, d] => Ok(StandardGate::Aqft(
                    count(*n, "qubit count")?,
                    count(*d, "degree")?,
                )),
                _ => Err(PdcsError::validation(
                    "AQFT takes a qubit count and optional degree",
                )),
            },
            _ => Err(PdcsError::UnknownGate(name.to_string())),
        }
    }

    pub fn n_qubits(&self) -> usize {
        use StandardGate::*;
        match self {
            H | X | Y | Z | S | T | Phase(_) => 1,
            Cnot | Cz | Cs | Swap | CPhase(_) => 2,
            Toffoli | Ccz | Fredkin => 3,
            C3Not | C3Z => 4,
            Grover(n) | Qft(n) | Aqft(n, _) => *n,
        }
    }

    pub fn matrix(&self) -> DenseOperator {
        use StandardGate::*;
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let m = |n: usize, v: &[C64]| CMatrix::from_row_slice(n, n, v);
        let op = match self {
            H => m(2, &[h, h, h, -h]),
            X => m(2, &[ZERO, ONE, ONE, ZERO]),
            Y => m(2, &[ZERO, -I, I, ZERO]),
            Z => diagonal(&[ONE, -ONE]),
            S => diagonal(&[ONE, I]),
            T => diagonal(&[ONE, C64::from_polar(1.0, PI / 4.0)]),
            Phase(t) => diagonal(&[ONE, C64::from_polar(1.0, *t)]),
            Cnot => permutation(&[0, 1, 3, 2]),
            Cz => phase_on_last(2, -ONE),
            Cs => phase_on_last(2, I),
            CPhase(t) => phase_on_last(2, C64::from_polar(1.0, *t)),
            Swap => permutation(&[0, 2, 1, 3]),
            Toffoli => permutation(&[0, 1, 2, 3, 4, 5, 7, 6]),
            Ccz => phase_on_last(3, -ONE),
            Fredkin => permutation(&[0, 1, 2, 3, 4, 6, 5, 7]),
            C3Not => {
                let mut p: Vec<usize> = (0..16).collect();
                p.swap(14, 15);
                permutation(&p)
            }
            C3Z => phase_on_last(4, -ONE),
            Grover(n) => {
                let dim = 1usize << n;
                let v = 2.0 / dim as f64;
                CMatrix::from_fn(dim, dim, |r, c| {
                    C64::new(if r == c { v - 1.0 } else { v }, 0.0)
                })
            }
            Qft(n) => qft_matrix(*n),
            Aqft(n, d) => {
                return compose_circuit(&aqft_circuit(*n, *d)).expect("valid AQFT circuit")
            }
        };
        DenseOperator::from_matrix_unchecked(op)
    }
}

impl fmt::Display for StandardGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StandardGate::*;
        match self {
            Grover(n) => write!(f, "GROVER({n})"),
            Qft(n) => write!(f, "QFT({n})"),
            Aqft(n, d) => write!(f, "AQFT({n},{d})"),
            Phase(t) => write!(f, "P({t})"),
            CPhase(t) => write!(f, "CP({t})"),
            other => {
                let s = format!("{other:?}").to_ascii_uppercase();
                f.write_str(&s)
            }
        }
    }
}

fn diagonal(d: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d))
}

/// Identity with the last diagonal entry replaced.
fn phase_on_last(n: usize, phase: C64) -> CMatrix {
    let dim = 1 << n;
    let mut d = vec![ONE; dim];
    d[dim - 1] = phase;
    diagonal(&d)
}

/// Permutation matrix sending basis state `c` to `perm[c]`.
fn permutation(perm: &[usize]) -> CMatrix {
    CMatrix::from_fn(perm.len(), perm.len(), |r, c| {
        if perm[c] == r {
            ONE
        } else {
            ZERO
        }
    })
}

/// Entries `ω^{jk}/√N`, `ω = e^{2πi/N}`.
fn qft_matrix(n: usize) -> CMatrix {
    let dim = 1usize << n;
    let norm = 1.0 / (dim as f64).sqrt();
    CMatrix::from_fn(dim, dim, |j, k| {
        let e = (j * k) % dim;
        C64::from_polar(norm, 2.0 * PI * e as f64 / dim as f64)
    })
}

pub fn standard_gate(name: &str, params: &[f64]) -> Result<DenseOperator> {
    Ok(StandardGate::parse(name, params)?.matrix())
}

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    Standard(StandardGate),
    Matrix { label: String, op: DenseOperator },
}

impl GateKind {
    pub fn n_qubits(&self) -> usize {
        match self {
            GateKind::Standard(g) => g.n_qubits(),
            GateKind::Matrix { op, .. } => op.n_qubits(),
        }
    }

    pub fn matrix(&self) -> DenseOperator {
        match self {
            GateKind::Standard(g) => g.matrix(),
            GateKind::Matrix { op, .. } => op.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GateKind::Standard(g) => g.to_string(),
            GateKind::Matrix { label, .. } => label.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    pub gate: GateKind,
    /// 1-based qubit indices; the gate's local qubit `i` acts on `qubits[i-1]`.
    pub qubits: Vec<usize>,
}

impl GateOp {
    pub fn standard(gate: StandardGate, qubits: &[usize]) -> GateOp {
        GateOp {
            gate: GateKind::Standard(gate),
            qubits: qubits.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitSpec {
    pub n: usize,
    pub gates: Vec<GateOp>,
}

impl CircuitSpec {
    pub fn new(n: usize) -> CircuitSpec {
        CircuitSpec {
            n,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: StandardGate, qubits: &[usize]) -> &mut Self {
        self.gates.push(GateOp::standard(gate, qubits));
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(PdcsError::validation("circuit needs at least one qubit"));
        }
        for (i, g) in self.gates.iter().enumerate() {
            let want = g.gate.n_qubits();
            if g.qubits.len() != want {
                return Err(PdcsError::validation(format!(
                    "gate {i} ({}) needs {want} qubits, got {}",
                    g.gate.label(),
                    g.qubits.len()
                )));
            }
            for (k, &q) in g.qubits.iter().enumerate() {
                if q == 0 || q > self.n {
                    return Err(PdcsError::validation(format!(
                        "gate {i}: qubit {q} outside 1..={}",
                        self.n
                    )));
                }
                if g.qubits[..k].contains(&q) {
                    return Err(PdcsError::validation(format!(
                        "gate {i}: qubit {q} repeated"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Indices of every qubit touched by some gate, ascending.
    pub fn active_qubits(&self) -> Vec<usize> {
        let mut q: Vec<usize> = self.gates.iter().flat_map(|g| g.qubits.clone()).collect();
        q.sort_unstable();
        q.dedup();
        q
    }
}

/// Acts with `op` on `targets` (1-based) of an `n`-qubit register.
pub fn embed_operator(op: &DenseOperator, targets: &[usize], n: usize) -> Result<DenseOperator> {
    let k = op.n_qubits();
    if targets.len() != k {
        return Err(PdcsError::DimensionMismatch {
            expected: k,
            found: targets.len(),
        });
    }
    if n > DEFAULT_DENSE_CAP {
        return Err(PdcsError::Capacity {
            what: "dense circuit",
            n,
            cap: DEFAULT_DENSE_CAP,
            hint: "",
        });
    }
    let shifts: Vec<usize> = targets
        .iter()
        .map(|&t| {
            if t == 0 || t > n {
                Err(PdcsError::validation(format!("qubit {t} outside 1..={n}")))
            } else {
                Ok(n - t)
            }
        })
        .collect::<Result<_>>()?;
    let local_mask: usize = shifts.iter().map(|s| 1usize << s).sum();
    let local_of = |b: usize| {
        shifts
            .iter()
            .fold(0usize, |acc, s| (acc << 1) | ((b >> s) & 1))
    };
    let place = |rest: usize, local: usize| {
        shifts.iter().enumerate().fold(rest, |acc, (i, s)| {
            acc | (((local >> (k - 1 - i)) & 1) << s)
        })
    };
    let dim = 1usize << n;
    let ldim = 1usize << k;
    let m = op.matrix();
    let mut out = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let lc = local_of(col);
        let rest = col & !local_mask;
        for lr in 0..ldim {
            let v = m[(lr, lc)];
            if v != ZERO {
                out[(place(rest, lr), col)] = v;
            }
        }
    }
    Ok(DenseOperator::from_matrix_unchecked(out))
}

/// `U_m ⋯ U_1` for the gates in application order.
pub fn compose_circuit(spec: &CircuitSpec) -> Result<DenseOperator> {
    spec.validate()?;
    let mut w = DenseOperator::identity(spec.n);
    for g in &spec.gates {
        w = &embed_operator(&g.gate.matrix(), &g.qubits, spec.n)? * &w;
    }
    Ok(w)
}

/// Textbook QFT on qubits `1..=n`: Hadamards, controlled phases `2π/2^k`,
/// then the qubit-reversing swaps.
pub fn qft_circuit(n: usize) -> CircuitSpec {
    aqft_circuit(n, n)
}

/// QFT keeping only the controlled phases `2π/2^k` with `k ≤ degree`.
pub fn aqft_circuit(n: usize, degree: usize) -> CircuitSpec {
    let mut c = CircuitSpec::new(n);
    append_qft(&mut c, &(1..=n).collect::<Vec<_>>(), degree);
    c
}

fn append_qft(c: &mut CircuitSpec, qubits: &[usize], degree: usize) {
    let n = qubits.len();
    for j in 0..n {
        c.push(StandardGate::H, &[qubits[j]]);
        for k in 2..=(n - j).min(degree) {
            let theta = 2.0 * PI / (1u64 << k) as f64;
            c.push(StandardGate::CPhase(theta), &[qubits[j + k - 1], qubits[j]]);
        }
    }
    for j in 0..n / 2 {
        c.push(StandardGate::Swap, &[qubits[j], qubits[n - 1 - j]]);
    }
}

fn append_inverse_qft(c: &mut CircuitSpec, qubits: &[usize]) {
    let mut forward = CircuitSpec::new(c.n);
    append_qft(&mut forward, qubits, qubits.len());
    for g in forward.gates.into_iter().rev() {
        let inverse = match g.gate {
            GateKind::Standard(StandardGate::CPhase(t)) => StandardGate::CPhase(-t),
            GateKind::Standard(other) => other,
            GateKind::Matrix { .. } => unreachable!("QFT uses standard gates"),
        };
        c.push(inverse, &g.qubits);
    }
}

/// Period finding for `7^x mod 15` on 7 qubits.
///
/// Qubits 1–3 hold the exponent `x` (qubit 3 least significant), qubits
/// 4–7 the work register `y` (qubit 7 least significant), prepared in
/// `y = 1`. Controlled on `x3` the register is multiplied by 7, which from
/// `y = 1` is two CNOTs; controlled on `x2` it is multiplied by 4, a cyclic
/// shift by two bits made of two Fredkin gates; `7^4 ≡ 1` needs nothing.
/// An inverse QFT on the exponent register finishes the circuit.
pub fn shor15_circuit() -> CircuitSpec {
    let mut c = CircuitSpec::new(7);
    c.push(StandardGate::H, &[1])
        .push(StandardGate::H, &[2])
        .push(StandardGate::H, &[3]);
    append_shor15_modexp(&mut c);
    append_inverse_qft(&mut c, &[1, 2, 3]);
    c
}

fn append_shor15_modexp(c: &mut CircuitSpec) {
    c.push(StandardGate::X, &[7])
        .push(StandardGate::Cnot, &[3, 6])
        .push(StandardGate::Cnot, &[3, 5])
        .push(StandardGate::Fredkin, &[2, 7, 5])
        .push(StandardGate::Fredkin, &[2, 6, 4]);
}

/// One Grover search round on `n` qubits marking `|1…1⟩`: uniform
/// superposition, phase oracle, diffusion.
pub fn grover_circuit(n: usize) -> Result<CircuitSpec> {
    let oracle = match n {
        2 => StandardGate::Cz,
        3 => StandardGate::Ccz,
        4 => StandardGate::C3Z,
        _ => {
            return Err(PdcsError::validation(
                "grover preset supports 2 to 4 qubits",
            ))
        }
    };
    let all: Vec<usize> = (1..=n).collect();
    let mut c = CircuitSpec::new(n);
    for q in &all {
        c.push(StandardGate::H, &[*q]);
    }
    c.push(oracle, &all).push(StandardGate::Grover(n), &all);
    Ok(c)
}

pub const CIRCUIT_PRESETS: [&str; 5] = ["qft2", "aqft4", "shor15", "grover2", "grover3"];

pub fn circuit_preset(name: &str) -> Result<CircuitSpec> {
    match name.to_ascii_lowercase().as_str() {
        "qft2" => Ok(qft_circuit(2)),
        "aqft4" => Ok(aqft_circuit(4, DEFAULT_AQFT_DEGREE)),
        "shor15" => Ok(shor15_circuit()),
        "grover2" => grover_circuit(2),
        "grover3" => grover_circuit(3),
        _ => Err(PdcsError::UnknownPreset(name.to_string())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircuitOptions {
    /// Consecutive gates are fused into one block while the block spans at
    /// most this many qubits (or the width of its widest gate). Zero keeps
    /// every gate in its own block.
    pub block_qubits: usize,
    /// Merge neighbouring rotors whose members all commute and whose
    /// combined support is no wider than either one.
    pub merge: bool,
    /// Fail when a block does not reach the fidelity threshold.
    pub require_convergence: bool,
}

impl Default for CircuitOptions {
    fn default() -> Self {
        CircuitOptions {
            block_qubits: 2,
            merge: true,
            require_convergence: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockSynthesis {
    /// Indices into the circuit's gate list.
    pub gates: Vec<usize>,
    /// Register qubits of the block, ascending; local qubit `i` is `qubits[i-1]`.
    pub qubits: Vec<usize>,
    pub local: Decomposition,
    pub report: SynthesisReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitDecomposition {
    pub blocks: Vec<BlockSynthesis>,
    /// All rotors on the full register, merged where allowed.
    pub decomposition: Decomposition,
    /// Product of the per-block fidelities.
    pub block_fidelity_product: f64,
}

/// Groups consecutive gates into blocks of bounded width.
pub fn partition_blocks(spec: &CircuitSpec, block_qubits: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (i, g) in spec.gates.iter().enumerate() {
        if let Some((gates, qubits)) = blocks.last_mut().filter(|_| block_qubits > 0) {
            let mut union = qubits.clone();
            union.extend(&g.qubits);
            union.sort_unstable();
            union.dedup();
            if union.len() <= block_qubits.max(qubits.len()) {
                gates.push(i);
                *qubits = union;
                continue;
            }
        }
        let mut qubits = g.qubits.clone();
        qubits.sort_unstable();
        blocks.push((vec![i], qubits));
    }
    blocks
}

fn block_unitary(spec: &CircuitSpec, gates: &[usize], qubits: &[usize]) -> Result<DenseOperator> {
    let mut local = CircuitSpec::new(qubits.len());
    for &i in gates {
        let g = &spec.gates[i];
        let mapped = g
            .qubits
            .iter()
            .map(|q| {
                qubits
                    .iter()
                    .position(|b| b == q)
                    .expect("gate inside block")
                    + 1
            })
            .collect();
        local.gates.push(GateOp {
            gate: g.gate.clone(),
            qubits: mapped,
        });
    }
    compose_circuit(&local)
}

pub fn decompose_circuit(
    spec: &CircuitSpec,
    config: &SynthesisConfig,
) -> Result<CircuitDecomposition> {
    decompose_circuit_with(spec, config, &CircuitOptions::default())
}

/// Synthesizes each block on its own qubits and re-embeds the rotors.
///
/// With `require_convergence`, a block that exhausts its rotor budget fails
/// the whole call with the index of the block's first gate.
pub fn decompose_circuit_with(
    spec: &CircuitSpec,
    config: &SynthesisConfig,
    options: &CircuitOptions,
) -> Result<CircuitDecomposition> {
    spec.validate()?;
    for (i, g) in spec.gates.iter().enumerate() {
        if g.gate.n_qubits() > DEFAULT_DENSE_CAP {
            return Err(PdcsError::validation(format!(
                "gate {i} acts on more than {DEFAULT_DENSE_CAP} qubits"
            )));
        }
    }
    let partition = partition_blocks(spec, options.block_qubits);
    let blocks: Vec<BlockSynthesis> = partition
        .into_par_iter()
        .map(|(gates, qubits)| {
            let u = block_unitary(spec, &gates, &qubits)?;
            let (local, report) = synthesize_unitary(&u, config)?;
            if options.require_convergence && !report.converged() {
                return Err(PdcsError::BudgetExhausted {
                    gate: gates[0],
                    fidelity: report.final_fidelity,
                });
            }
            Ok(BlockSynthesis {
                gates,
                qubits,
                local,
                report,
            })
        })
        .collect::<Result<_>>()?;

    let mut rotors: Vec<Rotor> = Vec::new();
    for b in &blocks {
        for r in b.local.rotors() {
            let members = r
                .members()
                .iter()
                .map(|p| p.embed(spec.n, &b.qubits))
                .collect::<Result<Vec<_>>>()?;
            let embedded = Rotor::new(members, r.angles().to_vec())?;
            match rotors.last_mut() {
                Some(last) if options.merge && mergeable(last, &embedded) => {
                    *last = merge_rotors(last, &embedded)?;
                }
                _ => rotors.push(embedded),
            }
        }
    }
    let mut decomposition = Decomposition::from_rotors(spec.n, rotors)?;
    if spec.n <= DEFAULT_DENSE_CAP {
        let f = fidelity_unitary(&compose_circuit(spec)?, &decomposition.unitary())?;
        decomposition.set_achieved_fidelity(f);
    }
    let block_fidelity_product = blocks.iter().map(|b| b.local.achieved_fidelity()).product();
    Ok(CircuitDecomposition {
        blocks,
        decomposition,
        block_fidelity_product,
    })
}

/// Commuting rotors merge when the result is no wider than the wider input.
fn mergeable(a: &Rotor, b: &Rotor) -> bool {
    let support = |r: &Rotor| {
        r.members()
            .iter()
            .fold(0u64, |acc, p| acc | p.x_mask() | p.z_mask())
    };
    let union = (support(a) | support(b)).count_ones() as usize;
    union <= a.width().max(b.width())
        && a.members()
            .iter()
            .all(|p| b.members().iter().all(|q| p.commutes_with(q)))
}

/// Single rotor equal to `b · a` for commuting rotors; repeated strings add angles.
fn merge_rotors(a: &Rotor, b: &Rotor) -> Result<Rotor> {
    let mut members = a.members().to_vec();
    let mut angles = a.angles().to_vec();
    for (p, &phi) in b.members().iter().zip(b.angles()) {
        match members.iter().position(|q| q == p) {
            Some(k) => angles[k] += phi,
            None => {
                members.push(*p);
                angles.push(phi);
            }
        }
    }
    Rotor::new(members, angles)
}
