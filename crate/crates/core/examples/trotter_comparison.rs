//! Fidelity at equal rotor budgets: first- and second-order Trotter
//! against rotor synthesis for the three-body step.

use pdcs::sim::{three_body_groups, THREE_BODY_J123_HZ, THREE_BODY_OMEGA_X_HZ, THREE_BODY_TAU_S};
use pdcs::synth::SynthesisConfig;
use pdcs::trotter::{compare_decompositions, trotter_rotors_to_reach, TrotterOrder};
use pdcs::Result;

fn main() -> Result<()> {
    let groups = three_body_groups(THREE_BODY_J123_HZ, THREE_BODY_OMEGA_X_HZ)?;
    let t = THREE_BODY_TAU_S;
    let ms: Vec<usize> = (1..=8).collect();
    let rows = compare_decompositions(&groups, t, &ms, &SynthesisConfig::default())?;
    println!(" m  trotter1  trotter2  rotors");
    for r in &rows {
        println!(
            "{:>2}  {:.6}  {:.6}  {:.6}",
            r.m,
            r.f_trotter1,
            r.f_trotter2.unwrap_or(f64::NAN),
            r.f_pdcs
        );
    }
    for order in [TrotterOrder::First, TrotterOrder::Second] {
        match trotter_rotors_to_reach(&groups, t, order, 0.999, 1000)? {
            Some(m) => println!("{order:?}-order Trotter reaches F=0.999 with {m} rotors"),
            None => println!("{order:?}-order Trotter does not reach F=0.999 within 1000 steps"),
        }
    }
    Ok(())
}
