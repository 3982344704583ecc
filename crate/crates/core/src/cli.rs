//! The `pdcs` command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or validation error,
//! 3 rotor budget exhausted under `--strict`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{PdcsError, Result};
use crate::gates::{
    circuit_preset, decompose_circuit_with, CircuitOptions, StandardGate, CIRCUIT_PRESETS,
};
use crate::io::{
    comparison_csv, read_circuit, read_hamiltonian, read_matrix, read_state, series_csv,
    write_decomposition, DecompositionFile, RunManifest,
};
use crate::operator::DenseOperator;
use crate::rotor::Decomposition;
use crate::sim::{
    evolve_series, magnetization_x, pdcs_step_propagator, three_body_groups,
    three_body_initial_state, THREE_BODY_J123_HZ, THREE_BODY_OMEGA_X_HZ, THREE_BODY_TAU_S,
};
use crate::state::{presets, QuantumState, StateKind};
use crate::subsets::{
    enumerate_maximal_subsets_with_cap, maximal_subset_count, DEFAULT_ENUMERATION_CAP,
};
use crate::synth::{
    synthesize_state, synthesize_unitary, SubsetMode, SynthesisConfig, SynthesisReport,
};
use crate::trotter::{
    compare_decompositions, exact_propagator, trotter1, trotter1_steps, trotter2, trotter2_steps,
    HamiltonianSpec,
};

/// Environment variable naming the default synthesis config file.
pub const CONFIG_ENV: &str = "PDCS_CONFIG";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "pdcs",
    version,
    about = "Rotor synthesis over commuting Pauli subsets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize a unitary (file or named gate) or a circuit.
    Decompose(DecomposeArgs),
    /// Synthesize a rotor sequence taking one state to another.
    Prepare(PrepareArgs),
    /// Stroboscopic magnetization series for the three-body Hamiltonian.
    Simulate(SimulateArgs),
    /// Fidelity table of Trotter products against rotor synthesis.
    CompareTrotter(CompareArgs),
    /// Count or list the maximal commuting Pauli subsets.
    Subsets(SubsetsArgs),
}

#[derive(Args, Debug, Serialize)]
struct SynthArgs {
    /// Fidelity threshold.
    #[arg(long)]
    fidelity: Option<f64>,
    #[arg(long)]
    max_rotors: Option<usize>,
    /// Weight of the angle penalty.
    #[arg(long)]
    penalty: Option<f64>,
    /// Multi-start count per iteration.
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// exhaustive, greedy or greedy:K
    #[arg(long)]
    subset_mode: Option<String>,
    /// Angles below this magnitude are pruned.
    #[arg(long)]
    prune: Option<f64>,
    /// JSON synthesis config; defaults to $PDCS_CONFIG when set.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct DecomposeArgs {
    /// Matrix JSON file or gate name such as cnot, grover(3), cp(1.57).
    #[arg(long, conflicts_with = "circuit", required_unless_present = "circuit")]
    target: Option<String>,
    /// Gate parameters when --target names a parametrized gate.
    #[arg(long = "param")]
    params: Vec<f64>,
    /// Circuit JSON file or preset (qft2, aqft4, shor15, grover2, grover3).
    #[arg(long)]
    circuit: Option<String>,
    /// Widest block fused before synthesis; 0 synthesizes gate by gate.
    #[arg(long, default_value_t = 2)]
    block_qubits: usize,
    /// Keep neighbouring commuting rotors separate.
    #[arg(long)]
    no_merge: bool,
    /// Exit with code 3 when the rotor budget runs out.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    synth: SynthArgs,
}

#[derive(Args, Debug, Serialize)]
struct PrepareArgs {
    /// State JSON file or preset (zero2, zero3, inept-initial, ...).
    #[arg(long)]
    initial: Option<String>,
    /// State JSON file or preset (bell, ghz, w, inept).
    #[arg(long)]
    target: String,
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    synth: SynthArgs,
}

#[derive(Args, Debug, Serialize)]
struct SimulateArgs {
    #[arg(long, default_value = "three-body")]
    preset: String,
    /// Three-body coupling in Hz.
    #[arg(long, default_value_t = THREE_BODY_J123_HZ)]
    j123: f64,
    /// Transverse field in Hz.
    #[arg(long, default_value_t = THREE_BODY_OMEGA_X_HZ)]
    omega_x: f64,
    /// Step duration in seconds.
    #[arg(long, default_value_t = THREE_BODY_TAU_S)]
    tau: f64,
    #[arg(long, default_value_t = 20)]
    steps: usize,
    /// exact, pdcs, trotter1:M or trotter2:M with M the rotor budget per step.
    #[arg(long, default_value = "exact")]
    step_mode: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    synth: SynthArgs,
}

#[derive(Args, Debug, Serialize)]
struct CompareArgs {
    /// Hamiltonian JSON file or the preset three-body.
    #[arg(long, default_value = "three-body")]
    hamiltonian: String,
    /// Evolution time in seconds.
    #[arg(long, default_value_t = THREE_BODY_TAU_S)]
    t: f64,
    /// Rotor counts: A..B or a comma list.
    #[arg(long, default_value = "1..10")]
    m: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    synth: SynthArgs,
}

#[derive(Args, Debug, Serialize)]
struct SubsetsArgs {
    #[arg(long)]
    qubits: usize,
    #[arg(long)]
    count_only: bool,
    /// Largest qubit count that may be listed.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Decompose(a) => decompose(a),
        Command::Prepare(a) => prepare(a),
        Command::Simulate(a) => simulate(a),
        Command::CompareTrotter(a) => compare(a),
        Command::Subsets(a) => subsets(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                PdcsError::BudgetExhausted { .. } => EXIT_BUDGET,
                e if e.is_validation() => EXIT_VALIDATION,
                _ => EXIT_IO,
            }
        }
    }
}

fn resolve_config(a: &SynthArgs, base: SynthesisConfig) -> Result<SynthesisConfig> {
    let path = a
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let mut c = match path {
        Some(p) => {
            let text = fs::read_to_string(&p)?;
            serde_json::from_str(&text).map_err(|e| PdcsError::json(p.display().to_string(), e))?
        }
        None => base,
    };
    if let Some(v) = a.fidelity {
        c.fidelity_threshold = v;
    }
    if let Some(v) = a.max_rotors {
        c.max_rotors = v;
    }
    if let Some(v) = a.penalty {
        c.penalty_weight = v;
    }
    if let Some(v) = a.restarts {
        c.restarts = v;
    }
    if let Some(v) = a.seed {
        c.seed = v;
    }
    if let Some(v) = &a.subset_mode {
        c.subset_mode = v.parse::<SubsetMode>()?;
    }
    if let Some(v) = a.prune {
        c.angle_prune_threshold = v;
    }
    c.validate()?;
    Ok(c)
}

fn manifest_for<A: Serialize>(
    command: &str,
    args: &A,
    config: Option<&SynthesisConfig>,
) -> RunManifest {
    let mut m = RunManifest::start(command);
    if let Ok(serde_json::Value::Object(map)) = serde_json::to_value(args) {
        flatten_flags("", &map, &mut m.flags);
    }
    if let Some(c) = config {
        m.seed = Some(c.seed);
        m.flag(
            "config",
            serde_json::to_string(c).expect("config serializes"),
        );
    }
    m
}

fn flatten_flags(
    prefix: &str,
    map: &serde_json::Map<String, serde_json::Value>,
    out: &mut BTreeMap<String, String>,
) {
    for (k, v) in map {
        match v {
            serde_json::Value::Null => {}
            serde_json::Value::Object(inner) => flatten_flags(prefix, inner, out),
            serde_json::Value::String(s) => {
                out.insert(format!("{prefix}{k}"), s.clone());
            }
            other => {
                out.insert(format!("{prefix}{k}"), other.to_string());
            }
        }
    }
}

/// Gate names also accept a trailing qubit count: `grover3`, `qft2`.
fn resolve_gate(name: &str, params: &[f64]) -> Result<DenseOperator> {
    match StandardGate::parse(name, params) {
        Ok(g) => Ok(g.matrix()),
        Err(first) => {
            let digits = name.trim_start_matches(|c: char| !c.is_ascii_digit());
            let base = &name[..name.len() - digits.len()];
            match digits.parse::<f64>() {
                Ok(n) if !base.is_empty() && params.is_empty() && !name.contains('(') => {
                    StandardGate::parse(base, &[n])
                        .map(|g| g.matrix())
                        .map_err(|_| first)
                }
                _ => Err(first),
            }
        }
    }
}

fn finish_decomposition(
    mut file: DecompositionFile,
    mut manifest: RunManifest,
    out: Option<&Path>,
    started: Instant,
) -> Result<()> {
    if let Some(path) = out {
        manifest.outputs.push(path.display().to_string());
    }
    manifest.elapsed_s = started.elapsed().as_secs_f64();
    file.manifest = Some(manifest);
    match out {
        Some(path) => write_decomposition(&file, path),
        None => {
            let mut stdout = std::io::stdout().lock();
            serde_json::to_writer_pretty(&mut stdout, &file)
                .map_err(|e| PdcsError::json("stdout", e))?;
            writeln!(stdout)?;
            Ok(())
        }
    }
}

fn summarize(d: &Decomposition, report: Option<&SynthesisReport>) {
    let status = report
        .map(|r| format!("{:?}", r.status))
        .unwrap_or_default();
    eprintln!(
        "rotors={} members={} max_width={} fidelity={:.10} {}",
        d.rotor_count(),
        d.member_count(),
        d.max_width(),
        d.achieved_fidelity(),
        status
    );
}

fn budget_outcome(converged: bool, strict: bool, fidelity: f64) -> Result<i32> {
    if converged {
        return Ok(EXIT_OK);
    }
    eprintln!("warning: rotor budget exhausted at fidelity {fidelity:.10}");
    Ok(if strict { EXIT_BUDGET } else { EXIT_OK })
}

fn decompose(a: DecomposeArgs) -> Result<i32> {
    let started = Instant::now();
    let config = resolve_config(&a.synth, SynthesisConfig::default())?;
    let mut manifest = manifest_for("decompose", &a, Some(&config));

    if let Some(circuit) = &a.circuit {
        let path = Path::new(circuit);
        let spec = if path.is_file() {
            manifest.record_input(path)?;
            read_circuit(path)?
        } else if CIRCUIT_PRESETS.contains(&circuit.to_ascii_lowercase().as_str()) {
            circuit_preset(circuit)?
        } else {
            return Err(PdcsError::UnknownPreset(circuit.clone()));
        };
        let options = CircuitOptions {
            block_qubits: a.block_qubits,
            merge: !a.no_merge,
            require_convergence: a.strict,
        };
        let result = decompose_circuit_with(&spec, &config, &options)?;
        let converged = result.blocks.iter().all(|b| b.report.converged());
        let worst = result
            .blocks
            .iter()
            .map(|b| b.local.achieved_fidelity())
            .fold(1.0, f64::min);
        summarize(&result.decomposition, None);
        eprintln!(
            "blocks={} worst_block_fidelity={worst:.10}",
            result.blocks.len()
        );
        finish_decomposition(
            DecompositionFile::from_circuit(&result),
            manifest,
            a.out.as_deref(),
            started,
        )?;
        return budget_outcome(converged, a.strict, worst);
    }

    let target = a
        .target
        .as_deref()
        .expect("clap enforces --target or --circuit");
    let path = Path::new(target);
    let u = if path.is_file() {
        manifest.record_input(path)?;
        read_matrix(path, true)?
    } else {
        resolve_gate(target, &a.params)?
    };
    let (d, report) = synthesize_unitary(&u, &config)?;
    summarize(&d, Some(&report));
    finish_decomposition(
        DecompositionFile::new(&d, Some(&report)),
        manifest,
        a.out.as_deref(),
        started,
    )?;
    budget_outcome(report.converged(), a.strict, report.final_fidelity)
}

fn load_state(spec: &str, manifest: &mut RunManifest) -> Result<QuantumState> {
    let path = Path::new(spec);
    if path.is_file() {
        manifest.record_input(path)?;
        read_state(path)
    } else {
        presets::named(spec)
    }
}

fn prepare(a: PrepareArgs) -> Result<i32> {
    let started = Instant::now();
    let config = resolve_config(&a.synth, SynthesisConfig::default())?;
    let mut manifest = manifest_for("prepare", &a, Some(&config));
    let (initial, target) = match &a.initial {
        Some(init) => (
            load_state(init, &mut manifest)?,
            load_state(&a.target, &mut manifest)?,
        ),
        None if !Path::new(&a.target).is_file() => presets::transfer(&a.target)?,
        None => {
            let target = load_state(&a.target, &mut manifest)?;
            if target.kind() == StateKind::Deviation {
                return Err(PdcsError::validation(
                    "a deviation target needs an explicit --initial",
                ));
            }
            (presets::zero(target.n_qubits()), target)
        }
    };
    let (d, report) = synthesize_state(&initial, &target, &config)?;
    summarize(&d, Some(&report));
    finish_decomposition(
        DecompositionFile::new(&d, Some(&report)),
        manifest,
        a.out.as_deref(),
        started,
    )?;
    budget_outcome(report.converged(), a.strict, report.final_fidelity)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum StepMode {
    Exact,
    Pdcs,
    Trotter1(usize),
    Trotter2(usize),
}

fn parse_step_mode(s: &str) -> Result<StepMode> {
    let lower = s.trim().to_ascii_lowercase();
    let budget = |rest: &str| -> Result<usize> {
        rest.parse()
            .ok()
            .filter(|m| *m > 0)
            .ok_or_else(|| PdcsError::validation(format!("bad rotor budget in step mode {s:?}")))
    };
    match lower.split_once(':') {
        None if lower == "exact" => Ok(StepMode::Exact),
        None if lower == "pdcs" => Ok(StepMode::Pdcs),
        Some(("trotter1", m)) => Ok(StepMode::Trotter1(budget(m)?)),
        Some(("trotter2", m)) => Ok(StepMode::Trotter2(budget(m)?)),
        _ => Err(PdcsError::validation(format!(
            "unknown step mode {s:?}; expected exact, pdcs, trotter1:M or trotter2:M"
        ))),
    }
}

fn write_csv_output(
    out: Option<&Path>,
    mut manifest: RunManifest,
    started: Instant,
    write: impl Fn(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match out {
        Some(path) => {
            write(&mut fs::File::create(path)?)?;
            manifest.outputs.push(path.display().to_string());
            manifest.elapsed_s = started.elapsed().as_secs_f64();
            manifest.write_sidecar(path)?;
        }
        None => write(&mut std::io::stdout().lock())?,
    }
    Ok(())
}

fn simulate(a: SimulateArgs) -> Result<i32> {
    let started = Instant::now();
    if !matches!(
        a.preset.to_ascii_lowercase().as_str(),
        "three-body" | "three_body" | "threebody"
    ) {
        return Err(PdcsError::UnknownPreset(a.preset.clone()));
    }
    if !(a.tau.is_finite() && a.tau >= 0.0) {
        return Err(PdcsError::validation(
            "--tau must be finite and nonnegative",
        ));
    }
    let mode = parse_step_mode(&a.step_mode)?;
    let config = resolve_config(
        &a.synth,
        SynthesisConfig {
            fidelity_threshold: 0.999,
            ..SynthesisConfig::default()
        },
    )?;
    let manifest = manifest_for("simulate", &a, (mode == StepMode::Pdcs).then_some(&config));
    let groups = three_body_groups(a.j123, a.omega_x)?;
    let h = HamiltonianSpec::combine(&groups)?;
    let exact = exact_propagator(&h, a.tau)?;
    let step = match mode {
        StepMode::Exact => exact.clone(),
        StepMode::Pdcs => {
            let (d, report) = pdcs_step_propagator(&h, a.tau, &config)?;
            summarize(&d, Some(&report));
            d.unitary()
        }
        StepMode::Trotter1(m) => match trotter1_steps(m, groups.len()) {
            0 => {
                return Err(PdcsError::validation(format!(
                    "budget {m} is below one first-order step"
                )))
            }
            s => trotter1(&groups, a.tau, s)?,
        },
        StepMode::Trotter2(m) => match trotter2_steps(m) {
            0 => {
                return Err(PdcsError::validation(format!(
                    "budget {m} is below one symmetrized step"
                )))
            }
            s => trotter2(&groups, a.tau, s)?,
        },
    };
    eprintln!(
        "step fidelity={:.10}",
        crate::rotor::fidelity_unitary(&exact, &step)?
    );
    let series = evolve_series(
        &step,
        &three_body_initial_state(),
        &magnetization_x(3),
        a.steps,
        a.tau,
    )?
    .normalized()?;
    write_csv_output(a.out.as_deref(), manifest, started, |w| {
        series_csv(&series, w)
    })?;
    Ok(EXIT_OK)
}

fn parse_m_range(s: &str) -> Result<Vec<usize>> {
    let bad = || {
        PdcsError::validation(format!(
            "bad rotor-count range {s:?}; use A..B or a comma list"
        ))
    };
    let values: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|v| v.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    if values.is_empty() {
        return Err(bad());
    }
    Ok(values)
}

fn compare(a: CompareArgs) -> Result<i32> {
    let started = Instant::now();
    let config = resolve_config(&a.synth, SynthesisConfig::default())?;
    let mut manifest = manifest_for("compare-trotter", &a, Some(&config));
    let path = Path::new(&a.hamiltonian);
    let groups = if path.is_file() {
        manifest.record_input(path)?;
        read_hamiltonian(path)?
    } else if matches!(
        a.hamiltonian.to_ascii_lowercase().as_str(),
        "three-body" | "three_body"
    ) {
        three_body_groups(THREE_BODY_J123_HZ, THREE_BODY_OMEGA_X_HZ)?
    } else {
        return Err(PdcsError::UnknownPreset(a.hamiltonian.clone()));
    };
    if !(a.t.is_finite() && a.t >= 0.0) {
        return Err(PdcsError::validation("--t must be finite and nonnegative"));
    }
    let ms = parse_m_range(&a.m)?;
    let rows = compare_decompositions(&groups, a.t, &ms, &config)?;
    write_csv_output(a.out.as_deref(), manifest, started, |w| {
        comparison_csv(&rows, w)
    })?;
    Ok(EXIT_OK)
}

fn subsets(a: SubsetsArgs) -> Result<i32> {
    if a.qubits == 0 {
        return Err(PdcsError::validation("--qubits must be positive"));
    }
    let mut stdout = std::io::stdout().lock();
    if a.count_only {
        writeln!(stdout, "{}", maximal_subset_count(a.qubits))?;
        return Ok(EXIT_OK);
    }
    for s in enumerate_maximal_subsets_with_cap(a.qubits, a.cap)? {
        writeln!(stdout, "{}", s.labels().join(","))?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_modes() {
        assert_eq!(parse_step_mode("exact").unwrap(), StepMode::Exact);
        assert_eq!(parse_step_mode("PDCS").unwrap(), StepMode::Pdcs);
        assert_eq!(
            parse_step_mode("trotter1:4").unwrap(),
            StepMode::Trotter1(4)
        );
        assert_eq!(
            parse_step_mode("trotter2:5").unwrap(),
            StepMode::Trotter2(5)
        );
        for bad in ["trotter1", "trotter2:0", "trotter3:2", "exact:1", ""] {
            assert!(parse_step_mode(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn m_ranges() {
        assert_eq!(parse_m_range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_m_range("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_m_range("1,3, 5").unwrap(), vec![1, 3, 5]);
        assert!(parse_m_range("4..1").is_err());
        assert!(parse_m_range("x").is_err());
    }

    #[test]
    fn gate_names_with_counts() {
        assert_eq!(
            resolve_gate("grover3", &[]).unwrap(),
            StandardGate::Grover(3).matrix()
        );
        assert_eq!(
            resolve_gate("qft(2)", &[]).unwrap(),
            StandardGate::Qft(2).matrix()
        );
        assert_eq!(
            resolve_gate("cnot", &[]).unwrap(),
            StandardGate::Cnot.matrix()
        );
        assert!(resolve_gate("cnot2", &[]).is_err());
        assert!(resolve_gate("bogus", &[]).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(
            run(["pdcs", "subsets", "--qubits", "2", "--bogus"]),
            EXIT_VALIDATION
        );
        assert_eq!(run(["pdcs"]), EXIT_VALIDATION);
        assert_eq!(run(["pdcs", "decompose"]), EXIT_VALIDATION);
        assert_eq!(run(["pdcs", "subsets", "--qubits", "0"]), EXIT_VALIDATION);
        assert_eq!(run(["pdcs", "--help"]), EXIT_OK);
    }

    #[test]
    fn flags_are_flattened_into_the_manifest() {
        let args = SubsetsArgs {
            qubits: 3,
            count_only: true,
            cap: 5,
        };
        let m = manifest_for("subsets", &args, None);
        assert_eq!(m.flags["qubits"], "3");
        assert_eq!(m.flags["count_only"], "true");
        assert!(m.seed.is_none());
    }
}
