mod common;

use std::f64::consts::PI;

use pdcs::gates::StandardGate;
use pdcs::io::{
    read_decomposition, read_matrix, write_decomposition, write_matrix, DecompositionFile,
    MatrixRecord,
};
use pdcs::rotor::{fidelity_unitary, Decomposition, Rotor};
use pdcs::subsets::enumerate_maximal_subsets;
use pdcs::synth::{synthesize_unitary, SynthesisConfig};
use pdcs::{DenseOperator, PauliString};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn decomposition_strategy() -> impl Strategy<Value = Decomposition> {
    (1usize..=3)
        .prop_flat_map(|n| {
            let count = enumerate_maximal_subsets(n).unwrap().len();
            (
                Just(n),
                prop::collection::vec((0..count, prop::collection::vec(-PI..PI, 1..8)), 0..4),
            )
        })
        .prop_map(|(n, specs)| {
            let subsets = enumerate_maximal_subsets(n).unwrap();
            let rotors = specs
                .into_iter()
                .map(|(i, angles)| {
                    let members: Vec<PauliString> = subsets[i]
                        .members()
                        .iter()
                        .copied()
                        .take(angles.len())
                        .collect();
                    let angles = angles[..members.len()].to_vec();
                    Rotor::new(members, angles).unwrap()
                })
                .collect();
            Decomposition::from_rotors(n, rotors).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_json_is_a_fixpoint(d in decomposition_strategy()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.json");
        let file = DecompositionFile::new(&d, None);
        write_decomposition(&file, &path).unwrap();
        let first = std::fs::read_to_string(&path).unwrap();
        let (back, back_file) = read_decomposition(&path).unwrap();
        prop_assert_eq!(back.angles(), d.angles());
        prop_assert!(back.unitary().max_abs_diff(&d.unitary()) == 0.0);
        write_decomposition(&back_file, &path).unwrap();
        prop_assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    }

    #[test]
    fn matrix_json_is_bit_exact(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = DenseOperator::new(common::random_unitary(1 << n, &mut rng)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.json");
        write_matrix(&u, &path).unwrap();
        let back = read_matrix(&path, true).unwrap();
        prop_assert_eq!(&back, &u);
        let record: MatrixRecord = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        prop_assert_eq!(record, MatrixRecord::from_matrix(u.matrix()));
    }
}

#[test]
fn synthesized_decompositions_survive_the_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for g in [StandardGate::H, StandardGate::Toffoli, StandardGate::Qft(2)] {
        let (d, report) = synthesize_unitary(&g.matrix(), &SynthesisConfig::default()).unwrap();
        let path = dir.path().join("d.json");
        write_decomposition(&DecompositionFile::new(&d, Some(&report)), &path).unwrap();
        let (back, file) = read_decomposition(&path).unwrap();
        let f = fidelity_unitary(&g.matrix(), &back.unitary()).unwrap();
        assert!((f - d.achieved_fidelity()).abs() <= 1e-12, "{g}");
        assert_eq!(file.report.as_ref(), Some(&report));
    }
}

#[test]
fn same_seed_same_bytes_in_process() {
    let config = SynthesisConfig {
        seed: 99,
        ..SynthesisConfig::default()
    };
    let target =
        DenseOperator::new(common::random_unitary(4, &mut ChaCha8Rng::seed_from_u64(5))).unwrap();
    let render = || {
        let (d, report) = synthesize_unitary(&target, &config).unwrap();
        DecompositionFile::new(&d, Some(&report)).canonical_json()
    };
    assert_eq!(render(), render());
}
