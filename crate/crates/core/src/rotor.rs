//! Rotors `V = exp(-i Σ_β φ_β P_β)` over commuting Pauli strings, ordered
//! rotor products, the trace fidelity and its analytic gradient.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{ensure_same_dim, PdcsError, Result};
use crate::operator::{trace_product, CMatrix, DenseOperator, C64, I};
use crate::pauli::PauliString;
use crate::state::QuantumState;
use crate::subsets::CommutingSubset;

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(angle: f64) -> f64 {
    let w = angle.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rotor {
    members: Vec<PauliString>,
    angles: Vec<f64>,
}

impl Rotor {
    /// Members must be nonempty, distinct, non-identity and pairwise commuting.
    /// Angles are wrapped into `(-π, π]`.
    pub fn new(members: Vec<PauliString>, angles: Vec<f64>) -> Result<Self> {
        if members.len() != angles.len() {
            return Err(PdcsError::validation(format!(
                "rotor has {} members but {} angles",
                members.len(),
                angles.len()
            )));
        }
        // CommutingSubset::new performs the structural checks.
        let subset = CommutingSubset::new(members)?;
        Ok(Rotor {
            members: subset.members().to_vec(),
            angles: angles.into_iter().map(wrap_angle).collect(),
        })
    }

    pub fn from_subset(subset: &CommutingSubset, angles: Vec<f64>) -> Result<Self> {
        Rotor::new(subset.members().to_vec(), angles)
    }

    pub fn from_labels(labels: &[&str], angles: &[f64]) -> Result<Self> {
        let members = labels
            .iter()
            .map(|l| PauliString::parse_label(l))
            .collect::<Result<Vec<_>>>()?;
        Rotor::new(members, angles.to_vec())
    }

    pub fn n(&self) -> usize {
        self.members[0].n()
    }

    pub fn members(&self) -> &[PauliString] {
        &self.members
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|p| p.to_label()).collect()
    }

    /// Number of qubits touched by any member.
    pub fn width(&self) -> usize {
        let support = self
            .members
            .iter()
            .fold(0u64, |acc, p| acc | p.x_mask() | p.z_mask());
        support.count_ones() as usize
    }

    pub fn unitary(&self) -> DenseOperator {
        DenseOperator::from_matrix_unchecked(rotor_matrix(&self.members, &self.angles))
    }

    pub fn apply_to_state(&self, state: &QuantumState) -> Result<QuantumState> {
        state.evolve(&self.unitary())
    }

    /// Drops members whose `|angle|` is below `threshold`; returns how many went.
    pub(crate) fn prune(&mut self, threshold: f64) -> usize {
        let before = self.members.len();
        let keep: Vec<bool> = self.angles.iter().map(|a| a.abs() >= threshold).collect();
        let mut k = keep.iter();
        self.members.retain(|_| *k.next().unwrap());
        let mut k = keep.iter();
        self.angles.retain(|_| *k.next().unwrap());
        before - self.members.len()
    }
}

/// `∏_β (cos φ_β I − i sin φ_β P_β)`; exact because the members commute.
pub(crate) fn rotor_matrix(members: &[PauliString], angles: &[f64]) -> CMatrix {
    let dim = 1usize << members[0].n();
    let mut v = CMatrix::identity(dim, dim);
    for (p, &phi) in members.iter().zip(angles) {
        let pv = p.left_multiply(&v);
        let (s, c) = phi.sin_cos();
        v = v * C64::new(c, 0.0) + pv * (-I * s);
    }
    v
}

pub fn rotor_unitary(rotor: &Rotor) -> DenseOperator {
    rotor.unitary()
}

/// An ordered rotor sequence `W = V_m ⋯ V_1`; `rotors[0]` is applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    n: usize,
    rotors: Vec<Rotor>,
    achieved_fidelity: f64,
    metadata: BTreeMap<String, String>,
}

impl Decomposition {
    pub fn empty(n: usize) -> Self {
        Decomposition {
            n,
            rotors: Vec::new(),
            achieved_fidelity: 0.0,
            metadata: BTreeMap::new(),
        }
    }

    pub fn from_rotors(n: usize, rotors: Vec<Rotor>) -> Result<Self> {
        for r in &rotors {
            ensure_same_dim(n, r.n())?;
        }
        Ok(Decomposition {
            rotors,
            ..Decomposition::empty(n)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn rotors(&self) -> &[Rotor] {
        &self.rotors
    }

    pub fn rotor_count(&self) -> usize {
        self.rotors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotors.is_empty()
    }

    pub fn push(&mut self, rotor: Rotor) -> Result<()> {
        ensure_same_dim(self.n, rotor.n())?;
        self.rotors.push(rotor);
        Ok(())
    }

    /// Total number of Pauli members over all rotors.
    pub fn member_count(&self) -> usize {
        self.rotors.iter().map(Rotor::len).sum()
    }

    pub fn max_width(&self) -> usize {
        self.rotors.iter().map(Rotor::width).max().unwrap_or(0)
    }

    /// All angles, rotor by rotor.
    pub fn angles(&self) -> Vec<f64> {
        self.rotors
            .iter()
            .flat_map(|r| r.angles.iter().cloned())
            .collect()
    }

    pub fn set_angles(&mut self, angles: &[f64]) -> Result<()> {
        ensure_same_dim(self.member_count(), angles.len())?;
        let mut it = angles.iter();
        for r in &mut self.rotors {
            for a in &mut r.angles {
                *a = wrap_angle(*it.next().unwrap());
            }
        }
        Ok(())
    }

    pub fn achieved_fidelity(&self) -> f64 {
        self.achieved_fidelity
    }

    pub fn set_achieved_fidelity(&mut self, fidelity: f64) {
        self.achieved_fidelity = fidelity;
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn metadata_mut(&mut self) -> &mut BTreeMap<String, String> {
        &mut self.metadata
    }

    /// `V_m ⋯ V_1`, or the identity when there are no rotors.
    pub fn unitary(&self) -> DenseOperator {
        let dim = self.dim();
        let mut w = CMatrix::identity(dim, dim);
        for r in &self.rotors {
            w = rotor_matrix(&r.members, &r.angles) * w;
        }
        DenseOperator::from_matrix_unchecked(w)
    }

    pub fn apply_to_state(&self, state: &QuantumState) -> Result<QuantumState> {
        state.evolve(&self.unitary())
    }

    /// Removes members with `|angle| < threshold` and then any rotor left empty.
    pub(crate) fn prune(&mut self, threshold: f64) -> usize {
        let removed = self.rotors.iter_mut().map(|r| r.prune(threshold)).sum();
        self.rotors.retain(|r| !r.is_empty());
        removed
    }
}

pub fn decomposition_unitary(d: &Decomposition) -> DenseOperator {
    d.unitary()
}

pub fn apply_to_state(d: &Decomposition, state: &QuantumState) -> Result<QuantumState> {
    d.apply_to_state(state)
}

/// `|Tr[target† · w]| / N`.
pub fn fidelity_unitary(target: &DenseOperator, w: &DenseOperator) -> Result<f64> {
    ensure_same_dim(target.dim(), w.dim())?;
    Ok(trace_overlap(&target.matrix().adjoint(), w.matrix())
        .norm()
        .min(1.0))
}

/// `Tr[a · b] / N`.
fn trace_overlap(a: &CMatrix, b: &CMatrix) -> C64 {
    trace_product(a, b) / a.nrows() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradientStatus {
    Regular,
    /// `|Tr[U†W]| = 0`: the modulus is not differentiable, gradient set to 0.
    ZeroOverlap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FidelityGradient {
    pub fidelity: f64,
    pub gradient: Vec<f64>,
    pub status: GradientStatus,
}

/// `∂F/∂φ` for every angle of `d`, in the order of [`Decomposition::angles`].
pub fn fidelity_gradient(target: &DenseOperator, d: &Decomposition) -> Result<FidelityGradient> {
    ensure_same_dim(target.dim(), d.dim())?;
    if d.is_empty() {
        return Err(PdcsError::validation("gradient of an empty decomposition"));
    }
    let target_adj = target.matrix().adjoint();
    Ok(unitary_objective(&target_adj, d.rotors(), &d.angles()))
}

/// Cached per-rotor unitaries plus the prefix products `V_j ⋯ V_1`.
struct Chain {
    rotors: Vec<CMatrix>,
    prefix: Vec<CMatrix>,
}

impl Chain {
    fn build(structure: &[Rotor], angles: &[f64]) -> Chain {
        let mut rotors = Vec::with_capacity(structure.len());
        let mut offset = 0;
        for r in structure {
            rotors.push(rotor_matrix(&r.members, &angles[offset..offset + r.len()]));
            offset += r.len();
        }
        let mut prefix: Vec<CMatrix> = Vec::with_capacity(rotors.len());
        for v in &rotors {
            let next = match prefix.last() {
                Some(p) => v * p,
                None => v.clone(),
            };
            prefix.push(next);
        }
        Chain { rotors, prefix }
    }

    fn total(&self) -> &CMatrix {
        self.prefix.last().expect("nonempty chain")
    }

    /// Suffix products `S_j = V_m ⋯ V_{j+1}` (identity for the last rotor).
    fn suffixes(&self) -> Vec<CMatrix> {
        let dim = self.rotors[0].nrows();
        let m = self.rotors.len();
        let mut out = vec![CMatrix::identity(dim, dim); m];
        for j in (0..m.saturating_sub(1)).rev() {
            out[j] = &out[j + 1] * &self.rotors[j + 1];
        }
        out
    }
}

/// Trace fidelity and its gradient for a rotor structure at `angles`.
///
/// With `c = Tr[U†W]/N` and `∂W/∂φ = S_j (−iP) V_j ⋯ V_1`, the derivative is
/// `∂c = −i Tr[(V_j⋯V_1) U† S_j · P] / N`, one O(N) Pauli trace per angle.
pub(crate) fn unitary_objective(
    target_adj: &CMatrix,
    structure: &[Rotor],
    angles: &[f64],
) -> FidelityGradient {
    let dim = target_adj.nrows();
    if structure.is_empty() {
        let c = target_adj.trace() / dim as f64;
        return FidelityGradient {
            fidelity: c.norm(),
            gradient: Vec::new(),
            status: GradientStatus::Regular,
        };
    }
    let chain = Chain::build(structure, angles);
    let c = trace_overlap(target_adj, chain.total());
    let fidelity = c.norm();
    if fidelity == 0.0 {
        return FidelityGradient {
            fidelity,
            gradient: vec![0.0; angles.len()],
            status: GradientStatus::ZeroOverlap,
        };
    }
    let suffixes = chain.suffixes();
    let mut gradient = Vec::with_capacity(angles.len());
    for (j, r) in structure.iter().enumerate() {
        let m = &chain.prefix[j] * target_adj * &suffixes[j];
        for p in &r.members {
            let dc = -I * p.trace_with(&m) / dim as f64;
            gradient.push((c.conj() * dc).re / fidelity);
        }
    }
    FidelityGradient {
        fidelity,
        gradient,
        status: GradientStatus::Regular,
    }
}

/// `g = Tr[W ρ0 W† ρT]` and `∂g/∂φ` for every angle.
///
/// `∂ρ_f = −i[S P S†, ρ_f]` gives `∂g = −i Tr[S†[ρ_f, ρT]S · P]`.
pub(crate) fn state_overlap(
    rho0: &CMatrix,
    rho_t: &CMatrix,
    structure: &[Rotor],
    angles: &[f64],
) -> (f64, Vec<f64>) {
    if structure.is_empty() {
        return (trace_product(rho0, rho_t).re, Vec::new());
    }
    let chain = Chain::build(structure, angles);
    let w = chain.total();
    let rho_f = w * rho0 * w.adjoint();
    let value = trace_product(&rho_f, rho_t).re;
    let commutator = &rho_f * rho_t - rho_t * &rho_f;
    let suffixes = chain.suffixes();
    let mut gradient = Vec::with_capacity(angles.len());
    for (j, r) in structure.iter().enumerate() {
        let s = &suffixes[j];
        let m = s.adjoint() * &commutator * s;
        for p in &r.members {
            gradient.push((-I * p.trace_with(&m)).re);
        }
    }
    (value, gradient)
}
