//! Iterative rotor synthesis for unitaries and state transfers.
//!
//! Each step picks the maximal commuting subset with the largest overlap
//! against the current residual, appends a rotor over it and re-optimizes
//! every angle of the sequence jointly.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{ensure_same_dim, PdcsError, Result};
use crate::operator::{trace_product, CMatrix, DenseOperator, UNITARY_TOLERANCE};
use crate::optimize::{maximize, OptimizerSettings};
use crate::pauli::DEFAULT_DENSE_CAP;
use crate::rotor::{
    state_overlap, unitary_objective, wrap_angle, Decomposition, GradientStatus, Rotor,
};
use crate::state::{deviation_overlap, state_fidelity, uhlmann, QuantumState};
use crate::subsets::{
    enumerate_maximal_subsets_with_cap, greedy_from_table, CommutingSubset, OverlapTable,
    DEFAULT_ENUMERATION_CAP,
};

/// Greedy candidate count used when exhaustive enumeration is out of reach.
pub const DEFAULT_GREEDY_K: usize = 32;

/// Allowed backslide of the fidelity between consecutive iterations.
pub const MONOTONE_SLACK: f64 = 1e-9;

const JITTER: f64 = 1e-3;
const SCORE_TIE: f64 = 1e-12;
const FD_STEP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetMode {
    Exhaustive,
    Greedy(usize),
}

impl fmt::Display for SubsetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetMode::Exhaustive => write!(f, "exhaustive"),
            SubsetMode::Greedy(k) => write!(f, "greedy({k})"),
        }
    }
}

impl FromStr for SubsetMode {
    type Err = PdcsError;

    /// Accepts `exhaustive`, `greedy`, `greedy:K` and `greedy(K)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "exhaustive" {
            return Ok(SubsetMode::Exhaustive);
        }
        let rest = s
            .strip_prefix("greedy")
            .ok_or_else(|| PdcsError::validation(format!("unknown subset mode {s:?}")))?;
        let k = rest
            .trim_start_matches([':', '(', '='])
            .trim_end_matches(')');
        if k.is_empty() {
            return Ok(SubsetMode::Greedy(DEFAULT_GREEDY_K));
        }
        k.parse()
            .ok()
            .filter(|k| *k > 0)
            .map(SubsetMode::Greedy)
            .ok_or_else(|| PdcsError::validation(format!("bad greedy candidate count {k:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthesisConfig {
    pub fidelity_threshold: f64,
    pub max_rotors: usize,
    pub penalty_weight: f64,
    pub angle_prune_threshold: f64,
    pub restarts: usize,
    pub seed: u64,
    pub subset_mode: SubsetMode,
    /// Largest qubit count for which exhaustive mode enumerates subsets.
    pub enumeration_cap: usize,
    pub optimizer: OptimizerSettings,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        SynthesisConfig {
            fidelity_threshold: 0.9999,
            max_rotors: 16,
            penalty_weight: 1e-3,
            angle_prune_threshold: 1e-6,
            restarts: 8,
            seed: 0,
            subset_mode: SubsetMode::Exhaustive,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            optimizer: OptimizerSettings::default(),
        }
    }
}

impl SynthesisConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(PdcsError::validation(msg.to_string()));
        if !(self.fidelity_threshold > 0.0 && self.fidelity_threshold <= 1.0) {
            return bad("fidelity_threshold must lie in (0, 1]");
        }
        if self.max_rotors == 0 {
            return bad("max_rotors must be positive");
        }
        if self.penalty_weight.is_nan()
            || self.penalty_weight < 0.0
            || self.angle_prune_threshold.is_nan()
            || self.angle_prune_threshold < 0.0
        {
            return bad("penalty_weight and angle_prune_threshold must be nonnegative");
        }
        if self.restarts == 0 {
            return bad("restarts must be positive");
        }
        if self.subset_mode == SubsetMode::Greedy(0) {
            return bad("greedy candidate count must be positive");
        }
        if self.optimizer.gradient_tolerance.is_nan()
            || self.optimizer.gradient_tolerance <= 0.0
            || self.optimizer.max_iterations == 0
        {
            return bad("optimizer tolerances must be positive");
        }
        Ok(())
    }

    /// Short SHA-256 digest of the serialized configuration.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(&Sha256::digest(&bytes)[..8])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub j: usize,
    pub subset: Vec<String>,
    pub overlap: f64,
    pub fidelity: f64,
    pub pruned: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthesisStatus {
    Converged,
    RotorBudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub iterations: Vec<IterationRecord>,
    pub status: SynthesisStatus,
    pub initial_fidelity: f64,
    pub final_fidelity: f64,
    pub rotor_count: usize,
    pub subset_mode: String,
}

impl SynthesisReport {
    pub fn converged(&self) -> bool {
        self.status == SynthesisStatus::Converged
    }
}

/// What the angles are optimized for.
#[derive(Clone, Debug, PartialEq)]
pub enum Objective {
    Unitary(DenseOperator),
    State {
        initial: QuantumState,
        target: QuantumState,
    },
}

/// Objective evaluation for a fixed rotor structure.
///
/// `surrogate` is what the optimizer climbs; it is a monotone function of
/// the reported fidelity. Pure-state transfers climb `F²`, which stays
/// smooth where the overlap vanishes.
enum Evaluator {
    Unitary {
        target: CMatrix,
        target_adj: CMatrix,
    },
    Pure {
        rho0: CMatrix,
        rho_t: CMatrix,
    },
    Deviation {
        rho0: CMatrix,
        rho_t: CMatrix,
        scale: f64,
    },
    Mixed {
        rho0: CMatrix,
        rho_t: CMatrix,
    },
}

impl Evaluator {
    fn new(objective: &Objective) -> Result<Evaluator> {
        Ok(match objective {
            Objective::Unitary(u) => Evaluator::Unitary {
                target: u.matrix().clone(),
                target_adj: u.matrix().adjoint(),
            },
            Objective::State { initial, target } => {
                ensure_same_dim(target.dim(), initial.dim())?;
                // rejects deviation/normalized mixtures
                state_fidelity(initial, target)?;
                let rho0 = initial.to_density_matrix();
                let rho_t = target.to_density_matrix();
                match (initial, target) {
                    (QuantumState::Deviation(a), QuantumState::Deviation(b)) => {
                        let scale = 1.0 / (a.norm() * b.norm());
                        Evaluator::Deviation { rho0, rho_t, scale }
                    }
                    _ if initial.is_pure() || target.is_pure() => Evaluator::Pure { rho0, rho_t },
                    _ => Evaluator::Mixed { rho0, rho_t },
                }
            }
        })
    }

    fn dim(&self) -> usize {
        match self {
            Evaluator::Unitary { target, .. } => target.nrows(),
            Evaluator::Pure { rho0, .. }
            | Evaluator::Deviation { rho0, .. }
            | Evaluator::Mixed { rho0, .. } => rho0.nrows(),
        }
    }

    fn surrogate(&self, structure: &[Rotor], angles: &[f64]) -> (f64, Vec<f64>) {
        match self {
            Evaluator::Unitary { target_adj, .. } => {
                let g = unitary_objective(target_adj, structure, angles);
                debug_assert!(g.status == GradientStatus::Regular || g.fidelity == 0.0);
                (g.fidelity, g.gradient)
            }
            Evaluator::Pure { rho0, rho_t } => state_overlap(rho0, rho_t, structure, angles),
            Evaluator::Deviation { rho0, rho_t, scale } => {
                let (v, g) = state_overlap(rho0, rho_t, structure, angles);
                (v * scale, g.into_iter().map(|x| x * scale).collect())
            }
            Evaluator::Mixed { .. } => {
                let value = self.fidelity(structure, angles);
                let mut gradient = Vec::with_capacity(angles.len());
                let mut probe = angles.to_vec();
                for k in 0..angles.len() {
                    probe[k] = angles[k] + FD_STEP;
                    let up = self.fidelity(structure, &probe);
                    probe[k] = angles[k] - FD_STEP;
                    let down = self.fidelity(structure, &probe);
                    probe[k] = angles[k];
                    gradient.push((up - down) / (2.0 * FD_STEP));
                }
                (value, gradient)
            }
        }
    }

    fn fidelity(&self, structure: &[Rotor], angles: &[f64]) -> f64 {
        match self {
            Evaluator::Unitary { target_adj, .. } => {
                let w = chain_unitary(self.dim(), structure, angles);
                (trace_product(target_adj, &w) / self.dim() as f64)
                    .norm()
                    .min(1.0)
            }
            Evaluator::Pure { rho0, rho_t } => {
                let rho_f = evolve(rho0, &chain_unitary(self.dim(), structure, angles));
                trace_product(&rho_f, rho_t).re.clamp(0.0, 1.0).sqrt()
            }
            Evaluator::Deviation { rho0, rho_t, .. } => {
                let rho_f = evolve(rho0, &chain_unitary(self.dim(), structure, angles));
                deviation_overlap(&rho_f, rho_t).clamp(0.0, 1.0)
            }
            Evaluator::Mixed { rho0, rho_t } => {
                let rho_f = evolve(rho0, &chain_unitary(self.dim(), structure, angles));
                uhlmann(&rho_f, rho_t).clamp(0.0, 1.0)
            }
        }
    }

    /// Matrix `M` whose Pauli overlaps `|Tr[M P]|` rank the next subset:
    /// the residual `U W†`, or `ρ_T ρ_j` for state transfers.
    fn selection_matrix(&self, structure: &[Rotor], angles: &[f64]) -> CMatrix {
        let w = chain_unitary(self.dim(), structure, angles);
        match self {
            Evaluator::Unitary { target, .. } => target * w.adjoint(),
            Evaluator::Pure { rho0, rho_t }
            | Evaluator::Deviation { rho0, rho_t, .. }
            | Evaluator::Mixed { rho0, rho_t } => rho_t * evolve(rho0, &w),
        }
    }
}

fn evolve(rho: &CMatrix, w: &CMatrix) -> CMatrix {
    w * rho * w.adjoint()
}

fn chain_unitary(dim: usize, structure: &[Rotor], angles: &[f64]) -> CMatrix {
    let mut d = Decomposition::from_rotors(dim.trailing_zeros() as usize, structure.to_vec())
        .expect("structure shares the qubit count");
    d.set_angles(angles).expect("angle count matches structure");
    d.unitary().into_matrix()
}

fn penalty(angles: &[f64]) -> f64 {
    angles.iter().map(|a| wrap_angle(*a).powi(2)).sum()
}

#[derive(Clone, Debug)]
struct Candidate {
    angles: Vec<f64>,
    fidelity: f64,
    score: f64,
}

/// One start: penalized ascent to select a basin, then an unpenalized
/// polish so the reported fidelity is not biased by the penalty.
fn run_start(
    eval: &Evaluator,
    structure: &[Rotor],
    start: &[f64],
    config: &SynthesisConfig,
) -> Candidate {
    let lambda = config.penalty_weight;
    let penalized = |a: &[f64]| {
        let (v, mut g) = eval.surrogate(structure, a);
        let mut pen = 0.0;
        for (gk, ak) in g.iter_mut().zip(a) {
            let w = wrap_angle(*ak);
            pen += w * w;
            *gk -= 2.0 * lambda * w;
        }
        (v - lambda * pen, g)
    };
    let mut angles = maximize(penalized, start, &config.optimizer, true).x;
    if lambda > 0.0 {
        angles = polish(eval, structure, &angles, config);
    }
    candidate(eval, structure, angles, lambda)
}

fn polish(
    eval: &Evaluator,
    structure: &[Rotor],
    start: &[f64],
    config: &SynthesisConfig,
) -> Vec<f64> {
    maximize(
        |a| eval.surrogate(structure, a),
        start,
        &config.optimizer,
        true,
    )
    .x
}

fn candidate(eval: &Evaluator, structure: &[Rotor], angles: Vec<f64>, lambda: f64) -> Candidate {
    let angles: Vec<f64> = angles.into_iter().map(wrap_angle).collect();
    let fidelity = eval.fidelity(structure, &angles);
    Candidate {
        score: fidelity - lambda * penalty(&angles),
        fidelity,
        angles,
    }
}

fn stream_seed(seed: u64, step: u64, stream: u64) -> u64 {
    // SplitMix64 finalizer over a combined word.
    let mut z = seed
        ^ step.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ stream.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Multi-start optimization. Start 0 is `warm` plus jitter on the entries
/// from `fresh_from` on; the others are uniform in `(-π, π]`.
fn multi_start(
    eval: &Evaluator,
    structure: &[Rotor],
    warm: &[f64],
    fresh_from: usize,
    config: &SynthesisConfig,
    restarts: usize,
    step: u64,
) -> Candidate {
    let starts: Vec<Vec<f64>> = (0..restarts as u64)
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(config.seed, step, r));
            if r == 0 {
                warm.iter()
                    .enumerate()
                    .map(|(k, a)| {
                        if k >= fresh_from {
                            a + JITTER * rng.gen_range(-1.0..1.0)
                        } else {
                            *a
                        }
                    })
                    .collect()
            } else {
                (0..warm.len()).map(|_| rng.gen_range(-PI..PI)).collect()
            }
        })
        .collect();
    let results: Vec<Candidate> = starts
        .par_iter()
        .map(|s| run_start(eval, structure, s, config))
        .collect();
    best_of(results)
}

fn best_of(results: Vec<Candidate>) -> Candidate {
    let mut it = results.into_iter();
    let mut best = it.next().expect("at least one start");
    for c in it {
        if c.score > best.score + SCORE_TIE * best.score.abs().max(1.0) {
            best = c;
        }
    }
    best
}

/// Re-optimizes the angles of `d` for `objective` with the configured
/// multi-start policy; `d`'s own angles seed the first start.
pub fn optimize_angles(
    objective: &Objective,
    d: &Decomposition,
    config: &SynthesisConfig,
) -> Result<Decomposition> {
    config.validate()?;
    let eval = Evaluator::new(objective)?;
    ensure_same_dim(eval.dim(), d.dim())?;
    let warm = d.angles();
    let best = multi_start(
        &eval,
        d.rotors(),
        &warm,
        warm.len(),
        config,
        config.restarts,
        0,
    );
    let mut out = d.clone();
    out.set_angles(&best.angles)?;
    out.set_achieved_fidelity(best.fidelity);
    Ok(out)
}

enum Selector {
    Fixed(Vec<CommutingSubset>),
    Greedy(usize),
}

impl Selector {
    fn new(n: usize, config: &SynthesisConfig) -> Result<(Selector, SubsetMode)> {
        Ok(match config.subset_mode {
            SubsetMode::Exhaustive if n <= config.enumeration_cap => (
                Selector::Fixed(enumerate_maximal_subsets_with_cap(
                    n,
                    config.enumeration_cap,
                )?),
                SubsetMode::Exhaustive,
            ),
            SubsetMode::Exhaustive => (
                Selector::Greedy(DEFAULT_GREEDY_K),
                SubsetMode::Greedy(DEFAULT_GREEDY_K),
            ),
            SubsetMode::Greedy(k) => (Selector::Greedy(k), SubsetMode::Greedy(k)),
        })
    }

    fn candidates(&self, table: &OverlapTable) -> Vec<CommutingSubset> {
        match self {
            Selector::Fixed(all) => all.clone(),
            Selector::Greedy(k) => greedy_from_table(table, *k),
        }
    }
}

/// Whether ties in the subset score are resolved by trial optimization.
#[derive(Clone, Copy, PartialEq, Eq)]
enum TieBreak {
    FirstWins,
    Trial,
}

struct Run<'a> {
    eval: Evaluator,
    config: &'a SynthesisConfig,
    selector: Selector,
    tie_break: TieBreak,
}

impl Run<'_> {
    fn choose(
        &self,
        structure: &[Rotor],
        angles: &[f64],
        step: u64,
    ) -> Result<(CommutingSubset, f64)> {
        let table = OverlapTable::from_matrix(&self.eval.selection_matrix(structure, angles));
        let candidates = self.selector.candidates(&table);
        if self.tie_break == TieBreak::FirstWins {
            let (index, score) = table.best(&candidates)?;
            return Ok((candidates[index].clone(), score));
        }
        let tied = table.tied_best(&candidates);
        if tied.is_empty() {
            return Err(PdcsError::EmptyCandidates);
        }
        if tied.len() == 1 {
            let (i, s) = tied[0];
            return Ok((candidates[i].clone(), s));
        }
        // Overlap scores cannot tell these apart; try each one briefly.
        let trials: Vec<f64> = tied
            .par_iter()
            .map(|&(i, _)| {
                let mut trial = structure.to_vec();
                trial.push(zero_rotor(&candidates[i]));
                let mut warm = angles.to_vec();
                warm.resize(warm.len() + candidates[i].len(), 0.0);
                let cfg = SynthesisConfig {
                    seed: stream_seed(self.config.seed, step, 1 << 32),
                    ..self.config.clone()
                };
                multi_start(&self.eval, &trial, &warm, angles.len(), &cfg, 2, step).fidelity
            })
            .collect();
        let top = trials.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let pick = trials
            .iter()
            .position(|f| *f >= top - 1e-9)
            .expect("nonempty");
        let (i, s) = tied[pick];
        Ok((candidates[i].clone(), s))
    }

    fn synthesize(&self, n: usize) -> Result<(Decomposition, SynthesisReport)> {
        let config = self.config;
        let mut structure: Vec<Rotor> = Vec::new();
        let mut angles: Vec<f64> = Vec::new();
        let initial = self.eval.fidelity(&structure, &angles);
        let mut fidelity = initial;
        let mut iterations = Vec::new();
        let mut j = 0;
        while fidelity < config.fidelity_threshold && j < config.max_rotors {
            j += 1;
            let step = j as u64;
            let (subset, overlap) = self.choose(&structure, &angles, step)?;
            structure.push(zero_rotor(&subset));
            let mut warm = angles.clone();
            warm.resize(warm.len() + subset.len(), 0.0);

            let mut best = multi_start(
                &self.eval,
                &structure,
                &warm,
                angles.len(),
                config,
                config.restarts,
                step,
            );
            if best.fidelity < fidelity - MONOTONE_SLACK {
                let ascent = polish(&self.eval, &structure, &warm, config);
                let guarded = candidate(&self.eval, &structure, ascent, config.penalty_weight);
                if guarded.fidelity > best.fidelity {
                    best = guarded;
                }
            }

            let (pruned, next_structure, next_angles, next_fidelity) =
                self.prune(&structure, best, step)?;
            structure = next_structure;
            angles = next_angles;
            fidelity = next_fidelity;
            iterations.push(IterationRecord {
                j,
                subset: subset.labels(),
                overlap,
                fidelity,
                pruned,
            });
        }
        let mut d = Decomposition::from_rotors(n, structure)?;
        d.set_angles(&angles)?;
        let status = if fidelity >= config.fidelity_threshold {
            SynthesisStatus::Converged
        } else {
            SynthesisStatus::RotorBudgetExhausted
        };
        d.set_achieved_fidelity(fidelity);
        let report = SynthesisReport {
            iterations,
            status,
            initial_fidelity: initial,
            final_fidelity: fidelity,
            rotor_count: d.rotor_count(),
            subset_mode: String::new(),
        };
        Ok((d, report))
    }

    /// Drops near-zero members, re-optimizes once and keeps the result only
    /// if it does not lose fidelity (or stays above the threshold).
    fn prune(
        &self,
        structure: &[Rotor],
        best: Candidate,
        step: u64,
    ) -> Result<(usize, Vec<Rotor>, Vec<f64>, f64)> {
        let n = structure[0].n();
        let mut d = Decomposition::from_rotors(n, structure.to_vec())?;
        d.set_angles(&best.angles)?;
        let removed = d.prune(self.config.angle_prune_threshold);
        if removed == 0 {
            return Ok((0, structure.to_vec(), best.angles, best.fidelity));
        }
        let pruned_structure = d.rotors().to_vec();
        let warm = d.angles();
        let again = multi_start(
            &self.eval,
            &pruned_structure,
            &warm,
            warm.len(),
            self.config,
            1,
            step | 1 << 40,
        );
        let thr = self.config.fidelity_threshold;
        let keeps = again.fidelity >= best.fidelity - MONOTONE_SLACK
            || (best.fidelity >= thr && again.fidelity >= thr);
        if keeps {
            Ok((removed, pruned_structure, again.angles, again.fidelity))
        } else {
            Ok((0, structure.to_vec(), best.angles, best.fidelity))
        }
    }
}

fn zero_rotor(subset: &CommutingSubset) -> Rotor {
    Rotor::from_subset(subset, vec![0.0; subset.len()]).expect("subsets are valid rotors")
}

fn finish(
    mut d: Decomposition,
    mut report: SynthesisReport,
    config: &SynthesisConfig,
    mode: SubsetMode,
    branch: &str,
) -> (Decomposition, SynthesisReport) {
    report.subset_mode = mode.to_string();
    let meta = d.metadata_mut();
    meta.insert("branch".into(), branch.into());
    meta.insert("seed".into(), config.seed.to_string());
    meta.insert("config_digest".into(), config.digest());
    meta.insert("subset_mode".into(), mode.to_string());
    (d, report)
}

/// Synthesizes `target` as a rotor sequence.
///
/// Targets equal to a global phase times the identity return an empty
/// decomposition. Running out of rotors is reported in the status, not as
/// an error.
pub fn synthesize_unitary(
    target: &DenseOperator,
    config: &SynthesisConfig,
) -> Result<(Decomposition, SynthesisReport)> {
    config.validate()?;
    let n = target.n_qubits();
    if n > DEFAULT_DENSE_CAP {
        return Err(PdcsError::Capacity {
            what: "dense synthesis",
            n,
            cap: DEFAULT_DENSE_CAP,
            hint: "; synthesize gate by gate instead",
        });
    }
    if !target.is_unitary(UNITARY_TOLERANCE) {
        return Err(PdcsError::validation(format!(
            "target is not unitary (error {:.3e})",
            target.unitarity_error()
        )));
    }
    let (selector, mode) = Selector::new(n, config)?;
    if target.is_global_phase_identity(1e-12) {
        let mut d = Decomposition::empty(n);
        let f = crate::rotor::fidelity_unitary(target, &d.unitary())?;
        d.set_achieved_fidelity(f);
        let report = SynthesisReport {
            iterations: Vec::new(),
            status: SynthesisStatus::Converged,
            initial_fidelity: f,
            final_fidelity: f,
            rotor_count: 0,
            subset_mode: String::new(),
        };
        return Ok(finish(d, report, config, mode, "unitary"));
    }
    let run = Run {
        eval: Evaluator::new(&Objective::Unitary(target.clone()))?,
        config,
        selector,
        tie_break: TieBreak::FirstWins,
    };
    let (d, report) = run.synthesize(n)?;
    Ok(finish(d, report, config, mode, "unitary"))
}

/// Finds a rotor sequence `W` with `W ρ0 W†` close to `target`.
pub fn synthesize_state(
    initial: &QuantumState,
    target: &QuantumState,
    config: &SynthesisConfig,
) -> Result<(Decomposition, SynthesisReport)> {
    config.validate()?;
    ensure_same_dim(initial.dim(), target.dim())?;
    let n = initial.n_qubits();
    if n > DEFAULT_DENSE_CAP {
        return Err(PdcsError::Capacity {
            what: "dense state synthesis",
            n,
            cap: DEFAULT_DENSE_CAP,
            hint: "",
        });
    }
    let (selector, mode) = Selector::new(n, config)?;
    let run = Run {
        eval: Evaluator::new(&Objective::State {
            initial: initial.clone(),
            target: target.clone(),
        })?,
        config,
        selector,
        tie_break: TieBreak::Trial,
    };
    let (d, report) = run.synthesize(n)?;
    Ok(finish(d, report, config, mode, "state"))
}

/// Mean fidelity when every angle is scaled by a common factor drawn
/// uniformly from `[1-ε, 1+ε]`.
///
/// The same underlying draws are reused for every ε under a given seed, so
/// scores for different ε are directly comparable.
pub fn robustness_score(
    d: &Decomposition,
    target: &DenseOperator,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(PdcsError::validation("epsilon must be nonnegative"));
    }
    if samples == 0 {
        return Err(PdcsError::validation("samples must be positive"));
    }
    ensure_same_dim(target.dim(), d.dim())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<f64> = (0..samples).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let base = d.angles();
    let target_adj = target.matrix().adjoint();
    let total: f64 = draws
        .par_iter()
        .map(|u| {
            let s = 1.0 + epsilon * u;
            let scaled: Vec<f64> = base.iter().map(|a| a * s).collect();
            unitary_objective(&target_adj, d.rotors(), &scaled).fidelity
        })
        .sum();
    Ok(total / samples as f64)
}
