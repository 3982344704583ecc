//! Stroboscopic M_x for the three-spin Hamiltonian with exact and
//! synthesized step propagators.

use pdcs::sim::{
    evolve_series, magnetization_x, pdcs_step_propagator, three_body_initial_state,
    three_body_preset, THREE_BODY_J123_HZ, THREE_BODY_OMEGA_X_HZ, THREE_BODY_TAU_S,
};
use pdcs::synth::SynthesisConfig;
use pdcs::trotter::exact_propagator;
use pdcs::Result;

fn main() -> Result<()> {
    let tau = THREE_BODY_TAU_S;
    let h = three_body_preset(THREE_BODY_J123_HZ, THREE_BODY_OMEGA_X_HZ)?;
    let config = SynthesisConfig {
        fidelity_threshold: 0.999,
        ..SynthesisConfig::default()
    };
    let (d, report) = pdcs_step_propagator(&h, tau, &config)?;
    println!(
        "step: m={} members={} F={:.10}",
        d.rotor_count(),
        d.member_count(),
        report.final_fidelity
    );
    for r in d.rotors() {
        println!("    {:?}", r.labels());
    }

    let rho0 = three_body_initial_state();
    let obs = magnetization_x(3);
    let exact = evolve_series(&exact_propagator(&h, tau)?, &rho0, &obs, 20, tau)?.normalized()?;
    let synthesized = evolve_series(&d.unitary(), &rho0, &obs, 20, tau)?.normalized()?;
    println!("k  t[s]   exact     rotors");
    for k in 0..exact.len() {
        println!(
            "{k:<2} {:<6.2} {:+.6} {:+.6}",
            exact.times[k], exact.values[k], synthesized.values[k]
        );
    }
    println!(
        "max deviation {:.2e}",
        exact.max_abs_difference(&synthesized)?
    );
    Ok(())
}
