//! Maximal commuting subsets and their overlap scores against a target.

use pdcs::gates::StandardGate;
use pdcs::subsets::{enumerate_maximal_subsets, maximal_subset_count, OverlapTable};
use pdcs::Result;

fn main() -> Result<()> {
    for n in 1..=5 {
        println!(
            "n={n}: {} maximal commuting subsets",
            maximal_subset_count(n)
        );
    }

    let subsets = enumerate_maximal_subsets(2)?;
    let table = OverlapTable::new(&StandardGate::Cnot.matrix());
    let (best, score) = table.best(&subsets)?;
    println!(
        "best subset for CNOT: {:?} (score {score})",
        subsets[best].labels()
    );
    for s in subsets.iter().take(4) {
        println!("  {:?} -> {}", s.labels(), table.score(s));
    }
    Ok(())
}
