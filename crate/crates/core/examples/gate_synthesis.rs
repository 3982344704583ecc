//! Rotor decompositions of the standard gates, plus a robustness probe.

use pdcs::gates::StandardGate;
use pdcs::synth::{robustness_score, synthesize_unitary, SynthesisConfig};
use pdcs::Result;

fn main() -> Result<()> {
    let config = SynthesisConfig {
        seed: 7,
        ..SynthesisConfig::default()
    };
    let gates = [
        StandardGate::H,
        StandardGate::Cnot,
        StandardGate::Swap,
        StandardGate::Toffoli,
        StandardGate::Fredkin,
        StandardGate::Grover(3),
        StandardGate::Qft(2),
    ];
    for g in gates {
        let u = g.matrix();
        let (d, report) = synthesize_unitary(&u, &config)?;
        println!(
            "{g}: m={} F={:.10} {:?}",
            d.rotor_count(),
            report.final_fidelity,
            report.status
        );
        for r in d.rotors() {
            let terms: Vec<String> = r
                .labels()
                .iter()
                .zip(r.angles())
                .map(|(l, a)| format!("{l}:{a:+.4}"))
                .collect();
            println!("    [{}]", terms.join(" "));
        }
        let robust = robustness_score(&d, &u, 0.05, 64, 1)?;
        println!("    mean F under 5% angle miscalibration: {robust:.6}");
    }
    Ok(())
}
