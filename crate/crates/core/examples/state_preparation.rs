//! State-to-state synthesis: Bell, GHZ, W and the INEPT transfer.

use pdcs::state::{presets, state_fidelity};
use pdcs::synth::{synthesize_state, SynthesisConfig};
use pdcs::Result;

fn main() -> Result<()> {
    let config = SynthesisConfig::default();
    for name in ["bell", "ghz", "w", "inept"] {
        let (initial, target) = presets::transfer(name)?;
        let (d, report) = synthesize_state(&initial, &target, &config)?;
        let reached = d.apply_to_state(&initial)?;
        println!(
            "{name}: m={} F={:.10} ({:?})",
            d.rotor_count(),
            state_fidelity(&reached, &target)?,
            report.status
        );
        for r in d.rotors() {
            println!("    {:?} {:?}", r.labels(), r.angles());
        }
    }
    Ok(())
}
