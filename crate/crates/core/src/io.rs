//! JSON and CSV file formats, plus the run manifest attached to outputs.
//!
//! Matrices are stored as `{"dim": N, "re": [[..]], "im": [[..]]}` with
//! row-major nested arrays. States add a `"kind"` field; statevectors use
//! flat `re`/`im` arrays.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{PdcsError, Result};
use crate::gates::{
    BlockSynthesis, CircuitDecomposition, CircuitSpec, GateKind, GateOp, StandardGate,
};
use crate::operator::{CMatrix, DenseOperator, C64, UNITARY_TOLERANCE};
use crate::pauli::PauliString;
use crate::rotor::{Decomposition, Rotor};
use crate::sim::TimeSeries;
use crate::state::{QuantumState, StateKind};
use crate::synth::SynthesisReport;
use crate::trotter::{ComparisonRow, HamiltonianSpec, HamiltonianTerm};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixRecord {
    pub fn from_matrix(m: &CMatrix) -> MatrixRecord {
        let rows = |f: fn(&C64) -> f64| {
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| f(&m[(r, c)])).collect())
                .collect()
        };
        MatrixRecord {
            dim: m.nrows(),
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_operator(&self) -> Result<DenseOperator> {
        if self.re.len() != self.dim {
            return Err(PdcsError::validation(format!(
                "re: dim is {} but found {} rows",
                self.dim,
                self.re.len()
            )));
        }
        DenseOperator::from_parts(&self.re, &self.im)
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        PdcsError::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| PdcsError::json(path.display().to_string(), e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| PdcsError::json(path.display().to_string(), e))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Reads a matrix file; with `require_unitary`, rejects non-unitary input.
pub fn read_matrix(path: &Path, require_unitary: bool) -> Result<DenseOperator> {
    let record: MatrixRecord = parse_json(path, &read_text(path)?)?;
    let op = record.to_operator()?;
    if require_unitary && !op.is_unitary(UNITARY_TOLERANCE) {
        return Err(PdcsError::validation(format!(
            "{}: matrix is not unitary (error {:.3e})",
            path.display(),
            op.unitarity_error()
        )));
    }
    Ok(op)
}

pub fn write_matrix(op: &DenseOperator, path: &Path) -> Result<()> {
    write_json(path, &MatrixRecord::from_matrix(op.matrix()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum StateData {
    Vector {
        re: Vec<f64>,
        im: Vec<f64>,
    },
    Matrix {
        re: Vec<Vec<f64>>,
        im: Vec<Vec<f64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    kind: StateKind,
    dim: usize,
    #[serde(flatten)]
    data: StateData,
}

impl StateRecord {
    pub fn from_state(s: &QuantumState) -> StateRecord {
        let data = match s {
            QuantumState::Statevector(v) => StateData::Vector {
                re: v.iter().map(|z| z.re).collect(),
                im: v.iter().map(|z| z.im).collect(),
            },
            other => {
                let m = MatrixRecord::from_matrix(&other.to_density_matrix());
                StateData::Matrix { re: m.re, im: m.im }
            }
        };
        StateRecord {
            kind: s.kind(),
            dim: s.dim(),
            data,
        }
    }

    pub fn to_state(&self) -> Result<QuantumState> {
        let bad = |msg: String| Err(PdcsError::validation(msg));
        match (&self.kind, &self.data) {
            (StateKind::Statevector, StateData::Vector { re, im }) => {
                if re.len() != self.dim || im.len() != self.dim {
                    return bad(format!(
                        "statevector: dim is {} but re/im have {}/{} entries",
                        self.dim,
                        re.len(),
                        im.len()
                    ));
                }
                let v = DVector::from_iterator(
                    self.dim,
                    re.iter().zip(im).map(|(a, b)| C64::new(*a, *b)),
                );
                QuantumState::statevector(v)
            }
            (StateKind::Density | StateKind::Deviation, StateData::Matrix { re, im }) => {
                let record = MatrixRecord {
                    dim: self.dim,
                    re: re.clone(),
                    im: im.clone(),
                };
                let m = record.to_operator()?.into_matrix();
                if self.kind == StateKind::Density {
                    QuantumState::density(m)
                } else {
                    QuantumState::deviation(m)
                }
            }
            (kind, _) => bad(format!("state of kind {kind:?} has the wrong data shape")),
        }
    }
}

pub fn read_state(path: &Path) -> Result<QuantumState> {
    let record: StateRecord = parse_json(path, &read_text(path)?)?;
    record.to_state()
}

pub fn write_state(s: &QuantumState, path: &Path) -> Result<()> {
    write_json(path, &StateRecord::from_state(s))
}

/// Provenance of one command invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub flags: BTreeMap<String, String>,
    pub seed: Option<u64>,
    /// SHA-256 of each input file, keyed by path.
    pub input_digests: BTreeMap<String, String>,
    pub started_unix_s: u64,
    pub elapsed_s: f64,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn start(command: &str) -> RunManifest {
        RunManifest {
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            flags: BTreeMap::new(),
            seed: None,
            input_digests: BTreeMap::new(),
            started_unix_s: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            elapsed_s: 0.0,
            outputs: Vec::new(),
        }
    }

    pub fn flag(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.flags.insert(name.to_string(), value.to_string());
        self
    }

    pub fn record_input(&mut self, path: &Path) -> Result<()> {
        let bytes = fs::read(path)?;
        self.input_digests.insert(
            path.display().to_string(),
            hex::encode(Sha256::digest(&bytes)),
        );
        Ok(())
    }

    /// Writes the manifest next to `output` as `<output>.manifest.json`.
    pub fn write_sidecar(&self, output: &Path) -> Result<PathBuf> {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        let path = PathBuf::from(name);
        write_json(&path, self)?;
        Ok(path)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotorRecord {
    pub paulis: Vec<String>,
    pub angles: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub gates: Vec<usize>,
    pub qubits: Vec<usize>,
    pub fidelity: f64,
    pub rotors: Vec<RotorRecord>,
}

/// On-disk decomposition. Everything except `manifest` is a deterministic
/// function of the inputs and configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub n: usize,
    pub fidelity: f64,
    pub rotors: Vec<RotorRecord>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<SynthesisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<RunManifest>,
}

fn rotor_records(rotors: &[Rotor]) -> Vec<RotorRecord> {
    rotors
        .iter()
        .map(|r| RotorRecord {
            paulis: r.labels(),
            angles: r.angles().to_vec(),
        })
        .collect()
}

impl DecompositionFile {
    pub fn new(d: &Decomposition, report: Option<&SynthesisReport>) -> DecompositionFile {
        DecompositionFile {
            n: d.n(),
            fidelity: d.achieved_fidelity(),
            rotors: rotor_records(d.rotors()),
            metadata: d.metadata().clone(),
            report: report.cloned(),
            blocks: None,
            manifest: None,
        }
    }

    pub fn from_circuit(c: &CircuitDecomposition) -> DecompositionFile {
        let mut file = DecompositionFile::new(&c.decomposition, None);
        file.blocks = Some(c.blocks.iter().map(block_record).collect());
        file
    }

    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let rotors = self
            .rotors
            .iter()
            .map(|r| {
                let members = r
                    .paulis
                    .iter()
                    .map(|l| PauliString::parse_label(l))
                    .collect::<Result<Vec<_>>>()?;
                Rotor::new(members, r.angles.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut d = Decomposition::from_rotors(self.n, rotors)?;
        d.set_achieved_fidelity(self.fidelity);
        d.metadata_mut().extend(self.metadata.clone());
        Ok(d)
    }

    /// Serialized form without the manifest; byte-identical across runs
    /// with the same inputs and seed.
    pub fn canonical_json(&self) -> String {
        let stripped = DecompositionFile {
            manifest: None,
            ..self.clone()
        };
        serde_json::to_string_pretty(&stripped).expect("serializable")
    }
}

fn block_record(b: &BlockSynthesis) -> BlockRecord {
    BlockRecord {
        gates: b.gates.clone(),
        qubits: b.qubits.clone(),
        fidelity: b.local.achieved_fidelity(),
        rotors: rotor_records(b.local.rotors()),
    }
}

pub fn write_decomposition(file: &DecompositionFile, path: &Path) -> Result<()> {
    write_json(path, file)
}

pub fn read_decomposition(path: &Path) -> Result<(Decomposition, DecompositionFile)> {
    let file: DecompositionFile = parse_json(path, &read_text(path)?)?;
    Ok((file.to_decomposition()?, file))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub gate: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
    /// Inline unitary; `gate` is then only a label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum CircuitFile {
    Bare(Vec<GateRecord>),
    Full {
        n: Option<usize>,
        gates: Vec<GateRecord>,
    },
}

/// Circuit files are either a bare gate list or `{"n": .., "gates": [..]}`.
/// Without `n` the register is as wide as the largest qubit index.
pub fn parse_circuit(text: &str, origin: &str) -> Result<CircuitSpec> {
    let file: CircuitFile =
        serde_json::from_str(text).map_err(|e| PdcsError::json(origin.to_string(), e))?;
    let (n, records) = match file {
        CircuitFile::Bare(g) => (None, g),
        CircuitFile::Full { n, gates } => (n, gates),
    };
    let width = records
        .iter()
        .flat_map(|g| g.qubits.iter().copied())
        .max()
        .unwrap_or(0);
    let mut spec = CircuitSpec::new(n.unwrap_or(width));
    for (i, g) in records.into_iter().enumerate() {
        let gate = match g.matrix {
            Some(m) => {
                let op = m.to_operator()?;
                if !op.is_unitary(UNITARY_TOLERANCE) {
                    return Err(PdcsError::validation(format!(
                        "gate {i}: inline matrix is not unitary"
                    )));
                }
                GateKind::Matrix { label: g.gate, op }
            }
            None => GateKind::Standard(StandardGate::parse(&g.gate, &g.params)?),
        };
        spec.gates.push(GateOp {
            gate,
            qubits: g.qubits,
        });
    }
    spec.validate()?;
    Ok(spec)
}

pub fn read_circuit(path: &Path) -> Result<CircuitSpec> {
    parse_circuit(&read_text(path)?, &path.display().to_string())
}

pub fn circuit_to_json(spec: &CircuitSpec) -> String {
    let gates: Vec<GateRecord> = spec
        .gates
        .iter()
        .map(|g| match &g.gate {
            GateKind::Standard(s) => GateRecord {
                gate: s.to_string(),
                qubits: g.qubits.clone(),
                params: Vec::new(),
                matrix: None,
            },
            GateKind::Matrix { label, op } => GateRecord {
                gate: label.clone(),
                qubits: g.qubits.clone(),
                params: Vec::new(),
                matrix: Some(MatrixRecord::from_matrix(op.matrix())),
            },
        })
        .collect();
    serde_json::to_string_pretty(&CircuitFile::Full {
        n: Some(spec.n),
        gates,
    })
    .expect("serializable")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientUnits {
    #[default]
    RadPerS,
    Hz,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub pauli: String,
    pub coefficient: f64,
}

/// Hamiltonian file: `{"units": "hz"|"rad_per_s", "groups": [[terms..], ..]}`
/// or `{"terms": [..]}`, which is split into consecutive commuting groups.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianFile {
    #[serde(default)]
    pub units: CoefficientUnits,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<Vec<TermRecord>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermRecord>>,
}

impl HamiltonianFile {
    pub fn to_groups(&self) -> Result<Vec<HamiltonianSpec>> {
        let scale = match self.units {
            CoefficientUnits::RadPerS => 1.0,
            CoefficientUnits::Hz => 2.0 * PI,
        };
        let build = |terms: &[TermRecord]| -> Result<HamiltonianSpec> {
            let first = terms
                .first()
                .ok_or_else(|| PdcsError::validation("empty Hamiltonian group"))?;
            let parsed = terms
                .iter()
                .map(|t| {
                    Ok(HamiltonianTerm {
                        pauli: PauliString::parse_label(&t.pauli)?,
                        coefficient: t.coefficient * scale,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            HamiltonianSpec::new(first.pauli.len(), parsed)
        };
        match (&self.groups, &self.terms) {
            (Some(groups), None) => groups.iter().map(|g| build(g)).collect(),
            (None, Some(terms)) => Ok(build(terms)?.split_commuting()),
            _ => Err(PdcsError::validation(
                "Hamiltonian file needs exactly one of \"groups\" or \"terms\"",
            )),
        }
    }
}

pub fn read_hamiltonian(path: &Path) -> Result<Vec<HamiltonianSpec>> {
    let file: HamiltonianFile = parse_json(path, &read_text(path)?)?;
    file.to_groups()
}

/// Writes the comparison table; an absent second-order value is an empty cell.
pub fn comparison_csv<W: std::io::Write>(rows: &[ComparisonRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["m", "f_trotter1", "f_trotter2", "f_pdcs"])?;
    for r in rows {
        w.write_record([
            r.m.to_string(),
            r.f_trotter1.to_string(),
            r.f_trotter2.map(|f| f.to_string()).unwrap_or_default(),
            r.f_pdcs.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn series_csv<W: std::io::Write>(series: &TimeSeries, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "t_seconds", "m_x"])?;
    for (k, (t, v)) in series.times.iter().zip(&series.values).enumerate() {
        w.write_record([k.to_string(), t.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_comparison_csv(rows: &[ComparisonRow], path: &Path) -> Result<()> {
    comparison_csv(rows, fs::File::create(path)?)
}

pub fn write_series_csv(series: &TimeSeries, path: &Path) -> Result<()> {
    series_csv(series, fs::File::create(path)?)
}
