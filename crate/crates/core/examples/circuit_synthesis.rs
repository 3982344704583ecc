//! Gate-by-gate synthesis of the AQFT-4 and Shor-15 circuits.

use pdcs::gates::{aqft_circuit, decompose_circuit_with, shor15_circuit, CircuitOptions};
use pdcs::synth::SynthesisConfig;
use pdcs::Result;

fn main() -> Result<()> {
    let config = SynthesisConfig::default();
    for (name, spec) in [("aqft4", aqft_circuit(4, 2)), ("shor15", shor15_circuit())] {
        for block_qubits in [0, 2] {
            let options = CircuitOptions {
                block_qubits,
                ..CircuitOptions::default()
            };
            let c = decompose_circuit_with(&spec, &config, &options)?;
            let d = &c.decomposition;
            println!(
                "{name} block_qubits={block_qubits}: {} gates -> {} blocks -> {} rotors, width <= {}, F={:.10}",
                spec.gates.len(),
                c.blocks.len(),
                d.rotor_count(),
                d.max_width(),
                d.achieved_fidelity()
            );
        }
    }
    Ok(())
}
