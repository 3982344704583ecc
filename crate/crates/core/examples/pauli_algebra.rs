//! Pauli strings: parsing, products with phases, commutation and traces.

use pdcs::{all_pauli_strings, pauli_trace, PauliString, Result};

fn main() -> Result<()> {
    let xz = PauliString::parse_label("XZ")?;
    let zx = PauliString::parse_label("ZX")?;
    let yy = PauliString::parse_label("YY")?;

    let (product, phase) = xz.multiply(&zx)?;
    println!("XZ * ZX = {} * {}", phase.to_complex(), product);
    println!("XZ commutes with ZX: {}", xz.commutes(&zx)?);
    println!("XZ commutes with YY: {}", xz.commutes(&yy)?);
    println!(
        "support of IXIZ: {:?}",
        PauliString::parse_label("IXIZ")?.support()
    );

    // Tr[P Q] vanishes unless P = Q, so the traces pick out one coefficient.
    let m = yy.dense()?;
    for p in all_pauli_strings(2) {
        let t = pauli_trace(&m, &p)?;
        if t.norm() > 0.0 {
            println!("Tr[YY {p}] = {t}");
        }
    }
    Ok(())
}
