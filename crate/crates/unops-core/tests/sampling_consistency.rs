//! Sampled frequencies must track exact probabilities, and seeded runs must
//! be reproducible.

use std::collections::BTreeMap;

use unops_core::qsim::Backend;
use unops_core::unadd::{build_full_unadder_circuit, unadd, unadder_input};
use unops_core::{RunMode, Triple};

const SHOTS: u64 = 1_000_000;

/// Five-sigma band for a binomial frequency estimate.
fn band(p: f64, shots: u64) -> f64 {
    5.0 * (p * (1.0 - p) / shots as f64).sqrt()
}

fn branching_input_frequencies(c_out: u8, sum: u8, seed: u64) -> BTreeMap<Vec<u64>, f64> {
    let mut circuit = build_full_unadder_circuit();
    circuit
        .set_initial_state(unadder_input(&circuit, c_out, sum))
        .expect("input fits");
    let state = circuit.run(Backend::Dense).expect("5 wires fit");
    let result = state
        .sample(circuit.layout(), SHOTS, seed)
        .expect("nonzero shots");
    result
        .counts()
        .iter()
        .map(|(values, &count)| (values.clone(), count as f64 / SHOTS as f64))
        .collect()
}

#[test]
fn branching_inputs_hit_uniform_thirds() {
    for (c_out, sum) in [(0u8, 1u8), (1, 0)] {
        let frequencies = branching_input_frequencies(c_out, sum, 11);
        assert_eq!(frequencies.len(), 3, "input ({c_out},{sum})");
        for (values, freq) in &frequencies {
            let err = (freq - 1.0 / 3.0).abs();
            assert!(
                err < band(1.0 / 3.0, SHOTS),
                "input ({c_out},{sum}) outcome {values:?}: err {err}"
            );
        }
    }
}

#[test]
fn unaddition_frequencies_track_exact_masses() {
    let exact = unadd(5, 3, RunMode::Exact, Backend::Sparse).expect("valid instance");
    let sampled = unadd(
        5,
        3,
        RunMode::Sample {
            shots: SHOTS,
            seed: 23,
        },
        Backend::Sparse,
    )
    .expect("valid instance");

    let masses: BTreeMap<Triple, f64> = match exact.outcomes {
        unops_core::unadd::UnaddOutcomes::Exact(masses) => masses,
        _ => unreachable!("exact mode"),
    };
    let counts: BTreeMap<Triple, u64> = match sampled.outcomes {
        unops_core::unadd::UnaddOutcomes::Sampled { counts, .. } => counts,
        _ => unreachable!("sample mode"),
    };

    assert_eq!(masses.len(), 11);
    let total: u64 = counts.values().sum();
    assert_eq!(total, SHOTS);
    for (triple, count) in &counts {
        let p = masses
            .get(triple)
            .copied()
            .unwrap_or_else(|| panic!("sampled triple {triple:?} outside exact support"));
        let err = (*count as f64 / SHOTS as f64 - p).abs();
        assert!(err < band(p, SHOTS), "triple {triple:?}: err {err}");
    }
}

#[test]
fn same_seed_reproduces_counts_across_backends() {
    let reference = branching_input_frequencies(1, 0, 42);
    assert_eq!(branching_input_frequencies(1, 0, 42), reference);

    let mut circuit = build_full_unadder_circuit();
    circuit
        .set_initial_state(unadder_input(&circuit, 1, 0))
        .expect("input fits");
    let sparse = circuit.run(Backend::Sparse).expect("runs sparse");
    let sparse_result = sparse
        .sample(circuit.layout(), SHOTS, 42)
        .expect("nonzero shots");
    let sparse_frequencies: BTreeMap<Vec<u64>, f64> = sparse_result
        .counts()
        .iter()
        .map(|(values, &count)| (values.clone(), count as f64 / SHOTS as f64))
        .collect();
    assert_eq!(sparse_frequencies, reference);
}

#[test]
fn different_seeds_differ() {
    let a = branching_input_frequencies(0, 1, 1);
    let b = branching_input_frequencies(0, 1, 2);
    assert_ne!(a, b);
}
