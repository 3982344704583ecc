//! Pauli Hamiltonians, exact propagators, product-formula baselines and the
//! fidelity-per-rotor comparison against rotor synthesis.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_same_dim, PdcsError, Result};
use crate::operator::{hermitian_propagator, CMatrix, DenseOperator, C64};
use crate::pauli::{PauliString, DEFAULT_DENSE_CAP};
use crate::rotor::{fidelity_unitary, Rotor};
use crate::synth::{synthesize_unitary, SynthesisConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianTerm {
    pub pauli: PauliString,
    /// Angular frequency in rad/s.
    pub coefficient: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSpec {
    n: usize,
    terms: Vec<HamiltonianTerm>,
}

impl HamiltonianSpec {
    pub fn new(n: usize, terms: Vec<HamiltonianTerm>) -> Result<Self> {
        for t in &terms {
            ensure_same_dim(n, t.pauli.n())?;
            if !t.coefficient.is_finite() {
                return Err(PdcsError::validation(format!(
                    "coefficient of {} is not finite",
                    t.pauli
                )));
            }
        }
        Ok(HamiltonianSpec { n, terms })
    }

    /// Terms given as `(label, rad/s)` pairs.
    pub fn from_labels(terms: &[(&str, f64)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| PdcsError::validation("Hamiltonian needs at least one term"))?;
        let n = first.0.len();
        let terms = terms
            .iter()
            .map(|(l, c)| {
                Ok(HamiltonianTerm {
                    pauli: PauliString::parse_label(l)?,
                    coefficient: *c,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        HamiltonianSpec::new(n, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[HamiltonianTerm] {
        &self.terms
    }

    /// Whether all terms with nonzero coefficient commute pairwise.
    pub fn is_commuting(&self) -> bool {
        let live: Vec<&PauliString> = self
            .terms
            .iter()
            .filter(|t| t.coefficient != 0.0)
            .map(|t| &t.pauli)
            .collect();
        live.iter()
            .enumerate()
            .all(|(i, a)| live[..i].iter().all(|b| a.commutes_with(b)))
    }

    pub fn dense(&self) -> Result<DenseOperator> {
        if self.n > DEFAULT_DENSE_CAP {
            return Err(PdcsError::Capacity {
                what: "dense Hamiltonian",
                n: self.n,
                cap: DEFAULT_DENSE_CAP,
                hint: "",
            });
        }
        let dim = 1usize << self.n;
        let mut h = CMatrix::zeros(dim, dim);
        for t in &self.terms {
            h += t.pauli.dense_matrix() * C64::new(t.coefficient, 0.0);
        }
        Ok(DenseOperator::from_matrix_unchecked(h))
    }

    /// Greedy split into consecutive mutually commuting groups, in term order.
    pub fn split_commuting(&self) -> Vec<HamiltonianSpec> {
        let mut groups: Vec<HamiltonianSpec> = Vec::new();
        for t in &self.terms {
            let fits = groups
                .last()
                .is_some_and(|g| g.terms.iter().all(|o| o.pauli.commutes_with(&t.pauli)));
            if !fits {
                groups.push(HamiltonianSpec {
                    n: self.n,
                    terms: Vec::new(),
                });
            }
            groups.last_mut().unwrap().terms.push(t.clone());
        }
        groups
    }

    /// Sum of several groups, terms concatenated.
    pub fn combine(groups: &[HamiltonianSpec]) -> Result<HamiltonianSpec> {
        let first = groups
            .first()
            .ok_or_else(|| PdcsError::validation("no Hamiltonian groups"))?;
        let terms = groups.iter().flat_map(|g| g.terms.clone()).collect();
        HamiltonianSpec::new(first.n, terms)
    }

    /// Coefficients of repeated strings summed; identity terms kept apart.
    fn collected(&self) -> (f64, Vec<(PauliString, f64)>) {
        let mut identity = 0.0;
        let mut out: Vec<(PauliString, f64)> = Vec::new();
        for t in &self.terms {
            if t.coefficient == 0.0 {
                continue;
            }
            if t.pauli.is_identity() {
                identity += t.coefficient;
            } else if let Some(e) = out.iter_mut().find(|(p, _)| *p == t.pauli) {
                e.1 += t.coefficient;
            } else {
                out.push((t.pauli, t.coefficient));
            }
        }
        (identity, out)
    }
}

/// `exp(-i H t)` from the eigendecomposition of the dense Hermitian `H`.
pub fn exact_propagator(h: &HamiltonianSpec, t: f64) -> Result<DenseOperator> {
    let dense = h.dense()?;
    Ok(DenseOperator::from_matrix_unchecked(hermitian_propagator(
        dense.matrix(),
        t,
    )))
}

/// `exp(-i H t)` for a commuting group, as a single rotor with angles `c·t`.
/// Identity terms contribute a global phase.
pub fn group_exponential(group: &HamiltonianSpec, t: f64) -> Result<DenseOperator> {
    let (phase, rotor) = group_rotor(group, t)?;
    let u = match rotor {
        Some(r) => r.unitary(),
        None => DenseOperator::identity(group.n),
    };
    Ok(u.scale(C64::from_polar(1.0, -phase * t)))
}

/// The rotor of `exp(-i H t)` and the identity coefficient. Errors when the
/// group's terms do not commute.
pub fn group_rotor(group: &HamiltonianSpec, t: f64) -> Result<(f64, Option<Rotor>)> {
    if !group.is_commuting() {
        return Err(PdcsError::validation(
            "Trotter group terms must commute; split the group",
        ));
    }
    let (identity, terms) = group.collected();
    if terms.is_empty() {
        return Ok((identity, None));
    }
    let (members, angles): (Vec<_>, Vec<_>) = terms.into_iter().map(|(p, c)| (p, c * t)).unzip();
    Ok((identity, Some(Rotor::new(members, angles)?)))
}

fn check_groups(groups: &[HamiltonianSpec], steps: usize) -> Result<usize> {
    let first = groups
        .first()
        .ok_or_else(|| PdcsError::validation("no Hamiltonian groups"))?;
    if steps == 0 {
        return Err(PdcsError::validation(
            "Trotter step count must be at least 1",
        ));
    }
    for g in groups {
        ensure_same_dim(first.n, g.n)?;
    }
    Ok(first.n)
}

fn power(u: &DenseOperator, k: usize) -> DenseOperator {
    let mut out = DenseOperator::identity(u.n_qubits());
    let mut base = u.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            out = &out * &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    out
}

/// `[e^{-i H_k δ} ⋯ e^{-i H_1 δ}]^steps` with `δ = t/steps`; `groups[0]` acts first.
pub fn trotter1(groups: &[HamiltonianSpec], t: f64, steps: usize) -> Result<DenseOperator> {
    let n = check_groups(groups, steps)?;
    let delta = t / steps as f64;
    let mut step = DenseOperator::identity(n);
    for g in groups {
        step = &group_exponential(g, delta)? * &step;
    }
    Ok(power(&step, steps))
}

/// `[e^{-i A δ/2} e^{-i B δ} e^{-i A δ/2}]^steps` for `groups = [A, B]`.
pub fn trotter2(groups: &[HamiltonianSpec], t: f64, steps: usize) -> Result<DenseOperator> {
    if groups.len() != 2 {
        return Err(PdcsError::validation(format!(
            "symmetrized Trotter needs exactly 2 groups, got {}",
            groups.len()
        )));
    }
    check_groups(groups, steps)?;
    let delta = t / steps as f64;
    let half = group_exponential(&groups[0], delta / 2.0)?;
    let full = group_exponential(&groups[1], delta)?;
    let step = &(&half * &full) * &half;
    Ok(power(&step, steps))
}

/// Steps affordable with `rotors` exponentials: one factor per group per step.
pub fn trotter1_steps(rotors: usize, groups: usize) -> usize {
    rotors / groups.max(1)
}

pub fn trotter1_rotors(steps: usize, groups: usize) -> usize {
    steps * groups
}

/// Steps affordable in the symmetrized form once neighbouring half steps
/// are merged, which leaves `2s + 1` factors.
pub fn trotter2_steps(rotors: usize) -> usize {
    rotors.saturating_sub(1) / 2
}

pub fn trotter2_rotors(steps: usize) -> usize {
    if steps == 0 {
        0
    } else {
        2 * steps + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrotterOrder {
    First,
    Second,
}

/// Trotter fidelity to `exact` when only `rotors` exponentials are allowed.
/// A budget too small for one step leaves the identity.
pub fn trotter_fidelity_at_budget(
    groups: &[HamiltonianSpec],
    t: f64,
    rotors: usize,
    order: TrotterOrder,
    exact: &DenseOperator,
) -> Result<f64> {
    let steps = match order {
        TrotterOrder::First => trotter1_steps(rotors, groups.len()),
        TrotterOrder::Second => trotter2_steps(rotors),
    };
    let u = match (steps, order) {
        (0, _) => DenseOperator::identity(exact.n_qubits()),
        (s, TrotterOrder::First) => trotter1(groups, t, s)?,
        (s, TrotterOrder::Second) => trotter2(groups, t, s)?,
    };
    fidelity_unitary(exact, &u)
}

/// Smallest rotor count at which the Trotter fidelity reaches `threshold`,
/// scanning step counts up to `max_steps`.
pub fn trotter_rotors_to_reach(
    groups: &[HamiltonianSpec],
    t: f64,
    order: TrotterOrder,
    threshold: f64,
    max_steps: usize,
) -> Result<Option<usize>> {
    let exact = exact_propagator(&HamiltonianSpec::combine(groups)?, t)?;
    if fidelity_unitary(&exact, &DenseOperator::identity(exact.n_qubits()))? >= threshold {
        return Ok(Some(0));
    }
    for s in 1..=max_steps {
        let (u, rotors) = match order {
            TrotterOrder::First => (trotter1(groups, t, s)?, trotter1_rotors(s, groups.len())),
            TrotterOrder::Second => (trotter2(groups, t, s)?, trotter2_rotors(s)),
        };
        if fidelity_unitary(&exact, &u)? >= threshold {
            return Ok(Some(rotors));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub m: usize,
    pub f_trotter1: f64,
    /// Absent unless there are exactly two groups.
    pub f_trotter2: Option<f64>,
    pub f_pdcs: f64,
}

/// Fidelity against the exact propagator at equal rotor counts.
///
/// The rotor-synthesis column runs with the threshold forced to 1 so that
/// each row spends its full budget of `m` rotors.
pub fn compare_decompositions(
    groups: &[HamiltonianSpec],
    t: f64,
    m_range: &[usize],
    config: &SynthesisConfig,
) -> Result<Vec<ComparisonRow>> {
    if m_range.is_empty() {
        return Err(PdcsError::validation("empty rotor-count range"));
    }
    let exact = exact_propagator(&HamiltonianSpec::combine(groups)?, t)?;
    m_range
        .par_iter()
        .map(|&m| {
            let f_trotter1 = trotter_fidelity_at_budget(groups, t, m, TrotterOrder::First, &exact)?;
            let f_trotter2 = if groups.len() == 2 {
                Some(trotter_fidelity_at_budget(
                    groups,
                    t,
                    m,
                    TrotterOrder::Second,
                    &exact,
                )?)
            } else {
                None
            };
            let f_pdcs = if m == 0 {
                fidelity_unitary(&exact, &DenseOperator::identity(exact.n_qubits()))?
            } else {
                let forced = SynthesisConfig {
                    max_rotors: m,
                    fidelity_threshold: 1.0,
                    ..config.clone()
                };
                synthesize_unitary(&exact, &forced)?.0.achieved_fidelity()
            };
            Ok(ComparisonRow {
                m,
                f_trotter1,
                f_trotter2,
                f_pdcs,
            })
        })
        .collect()
}
