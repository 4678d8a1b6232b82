//! Command runners: build the device, run it, compare against the oracle
//! and assemble a [`Report`].

use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::Result;
use unops_core::oracle::{factor_pairs_oracle, unadd_oracle};
use unops_core::qsim::{
    unitarity_deviation, Backend, Circuit, QuantumState, DENSE_WIRE_LIMIT, SUPPORT_TOL,
    UNITARITY_TOL,
};
use unops_core::unadd::{
    build_full_unadder_circuit, build_optimised_full_unadder_circuit, expected_cardinality,
    full_unadder_branches, full_unadder_matrix, unadd, unadder_input, UnaddOutcomes,
};
use unops_core::unmult::{unmultiply, RejectReason, UnmultOutcomes};
use unops_core::RunMode;

use crate::args::{BenchArgs, ModeArg, RunArgs, VerifyArgs};
use crate::report::{
    BenchResults, BenchRun, CheckReport, ConfigEcho, Report, Results, UnaddResults, UnmulResults,
    VerifyResults,
};

/// A finished command: its report plus whether any verdict or check
/// failed (exit code 1).
pub struct Outcome {
    pub report: Report,
    pub failed: bool,
}

fn echo_run_config(args: &RunArgs) -> ConfigEcho {
    let sampled = args.mode == ModeArg::Sample;
    ConfigEcho {
        bits: Some(args.bits),
        value: Some(args.value),
        mode: Some(args.mode.as_str().to_string()),
        shots: sampled.then_some(args.shots),
        seed: sampled.then_some(args.seed),
        backend: Some(args.backend.as_str().to_string()),
        format: args.format.as_str().to_string(),
    }
}

fn verdict(matched: bool) -> Option<String> {
    Some(if matched { "match" } else { "mismatch" }.to_string())
}

pub fn cmd_unadd(args: &RunArgs) -> Result<Outcome> {
    let run = unadd(args.value, args.bits, args.run_mode(), args.backend.into())?;
    let observed = run.triples();
    let oracle = unadd_oracle(args.value, args.bits);
    // Sampling may miss rare outcomes, so it is only held to soundness;
    // exact mode must reproduce the oracle set.
    let matched = match args.mode {
        ModeArg::Exact => observed == oracle,
        ModeArg::Sample => observed.is_subset(&oracle),
    };

    let mut triples = Vec::new();
    let mut probabilities = None;
    let mut counts = None;
    match &run.outcomes {
        UnaddOutcomes::Exact(masses) => {
            let mut weights = Vec::new();
            for (t, &mass) in masses {
                triples.push([t.a, t.b, t.c_in as u64]);
                weights.push(mass);
            }
            probabilities = Some(weights);
        }
        UnaddOutcomes::Sampled {
            counts: observed, ..
        } => {
            let mut weights = Vec::new();
            for (t, &n) in observed {
                triples.push([t.a, t.b, t.c_in as u64]);
                weights.push(n);
            }
            counts = Some(weights);
        }
    }
    let cardinality = triples.len() as u64;
    if args.summary {
        triples.clear();
        probabilities = None;
        counts = None;
    }

    Ok(Outcome {
        report: Report {
            command: "unadd".to_string(),
            config: echo_run_config(args),
            results: Results::Unadd(UnaddResults {
                triples,
                probabilities,
                counts,
                cardinality,
                expected_cardinality: expected_cardinality(args.value),
            }),
            oracle_verdict: verdict(matched),
            post_selection_probability: None,
            timing_ms: None,
        },
        failed: !matched,
    })
}

fn reason_key(reason: RejectReason) -> &'static str {
    match reason {
        RejectReason::Const0Nonzero => "const0_nonzero",
        RejectReason::CarryNonzero => "carry_nonzero",
        RejectReason::InconsistentX => "inconsistent_x",
    }
}

const ALL_REASONS: [RejectReason; 3] = [
    RejectReason::Const0Nonzero,
    RejectReason::CarryNonzero,
    RejectReason::InconsistentX,
];

pub fn cmd_unmul(args: &RunArgs) -> Result<Outcome> {
    let run = unmultiply(args.value, args.bits, args.run_mode(), args.backend.into())?;
    let observed = run.pairs();
    let oracle = factor_pairs_oracle(args.value, args.bits);
    // Exact runs of positive products must reproduce the oracle set; the
    // zero product and sampling are held to soundness (see module docs).
    let strict = args.mode == ModeArg::Exact && args.value >= 1;
    let matched = if strict {
        observed == oracle
    } else {
        observed.is_subset(&oracle)
    };

    let post_selection = run.post_selection_probability();
    let mut pairs = Vec::new();
    let mut probabilities = None;
    let mut counts = None;
    let mut rejection_probabilities = None;
    let mut rejection_counts = None;
    match &run.outcomes {
        UnmultOutcomes::Exact {
            pair_masses,
            rejection_masses,
        } => {
            let mut weights = Vec::new();
            for (p, &mass) in pair_masses {
                pairs.push([p.x, p.y]);
                weights.push(mass);
            }
            probabilities = Some(weights);
            let mut by_reason = BTreeMap::new();
            for reason in ALL_REASONS {
                by_reason.insert(
                    reason_key(reason).to_string(),
                    rejection_masses.get(&reason).copied().unwrap_or(0.0),
                );
            }
            rejection_probabilities = Some(by_reason);
        }
        UnmultOutcomes::Sampled {
            pair_counts,
            rejection_counts: rejected,
            ..
        } => {
            let mut weights = Vec::new();
            for (p, &n) in pair_counts {
                pairs.push([p.x, p.y]);
                weights.push(n);
            }
            counts = Some(weights);
            let mut by_reason = BTreeMap::new();
            for reason in ALL_REASONS {
                by_reason.insert(
                    reason_key(reason).to_string(),
                    rejected.get(&reason).copied().unwrap_or(0),
                );
            }
            rejection_counts = Some(by_reason);
        }
    }
    let cardinality = pairs.len() as u64;
    if args.summary {
        pairs.clear();
        probabilities = None;
        counts = None;
    }

    Ok(Outcome {
        report: Report {
            command: "unmul".to_string(),
            config: echo_run_config(args),
            results: Results::Unmul(UnmulResults {
                pairs,
                probabilities,
                counts,
                cardinality,
                rejection_probabilities,
                rejection_counts,
            }),
            oracle_verdict: verdict(matched),
            post_selection_probability: Some(post_selection),
            timing_ms: None,
        },
        failed: !matched,
    })
}

/// Probability of each decoded (c_in, b, a) outcome for one unadder input.
fn branch_distribution(circuit: &Circuit, c_out: u8, sum: u8) -> BTreeMap<(u8, u8, u8), f64> {
    let mut prepared = circuit.clone();
    prepared
        .set_initial_state(unadder_input(circuit, c_out, sum))
        .expect("input fits the circuit");
    let state = prepared.run(Backend::Dense).expect("small dense run");
    let mut masses = BTreeMap::new();
    for (basis, amp) in state.support(SUPPORT_TOL) {
        let values = prepared.layout().decode(basis);
        let key = (values[2] as u8, values[1] as u8, values[0] as u8);
        *masses.entry(key).or_insert(0.0) += amp.norm_sqr();
    }
    masses
}

fn check_matrix_unitarity() -> CheckReport {
    let deviation = unitarity_deviation(&full_unadder_matrix(), 8);
    CheckReport::new(
        "matrix_unitarity",
        deviation < UNITARITY_TOL,
        format!("max deviation {deviation:.2e}"),
    )
}

fn check_matrix_truth_table() -> CheckReport {
    let matrix = full_unadder_matrix();
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for ((c_out, sum), outputs) in full_unadder_branches() {
        let col = (4 * c_out + 2 * sum) as usize;
        let branch_mass = 1.0 / outputs.len() as f64;
        for row in 0..8 {
            let mass = matrix[row * 8 + col].norm_sqr();
            let listed = outputs
                .iter()
                .any(|&(c_in, b, a)| (4 * c_in + 2 * b + a) as usize == row);
            if listed {
                if outputs.len() == 1 {
                    pass &= mass == 1.0;
                } else {
                    let err = (mass - branch_mass).abs();
                    worst = worst.max(err);
                    pass &= err < 1e-10;
                }
            } else {
                pass &= mass < 1e-20;
            }
        }
    }
    CheckReport::new(
        "matrix_truth_table",
        pass,
        format!("worst branch probability error {worst:.2e}"),
    )
}

fn check_circuit_truth_table(name: &str, circuit: &Circuit) -> CheckReport {
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for ((c_out, sum), outputs) in full_unadder_branches() {
        let masses = branch_distribution(circuit, c_out, sum);
        pass &= masses.len() == outputs.len();
        let expected = 1.0 / outputs.len() as f64;
        for &(c_in, b, a) in outputs {
            let mass = masses.get(&(c_in, b, a)).copied().unwrap_or(0.0);
            let err = (mass - expected).abs();
            worst = worst.max(err);
            pass &= err < 1e-10;
        }
    }
    CheckReport::new(
        name,
        pass,
        format!("worst branch probability error {worst:.2e}"),
    )
}

fn check_realization_equivalence() -> CheckReport {
    let gate_level = build_full_unadder_circuit();
    let matrix_level = build_optimised_full_unadder_circuit();
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for c_out in 0..2 {
        for sum in 0..2 {
            let lhs = branch_distribution(&gate_level, c_out, sum);
            let rhs = branch_distribution(&matrix_level, c_out, sum);
            pass &= lhs.len() == rhs.len();
            for (key, mass) in &lhs {
                let err = (mass - rhs.get(key).copied().unwrap_or(0.0)).abs();
                worst = worst.max(err);
                pass &= err < 1e-10;
            }
        }
    }
    CheckReport::new(
        "realization_equivalence",
        pass,
        format!("worst distribution difference {worst:.2e}"),
    )
}

fn check_norm_preservation() -> CheckReport {
    let mut worst: f64 = 0.0;
    for circuit in [
        build_full_unadder_circuit(),
        build_optimised_full_unadder_circuit(),
    ] {
        for c_out in 0..2 {
            for sum in 0..2 {
                let input = unadder_input(&circuit, c_out, sum);
                let mut state = QuantumState::basis(circuit.num_wires(), input, Backend::Dense)
                    .expect("small dense state");
                for gate in circuit.gates() {
                    state.apply(gate).expect("gates fit the circuit");
                    worst = worst.max((state.norm_sqr() - 1.0).abs());
                }
            }
        }
    }
    CheckReport::new(
        "norm_preservation",
        worst < 1e-10,
        format!("worst norm drift {worst:.2e}"),
    )
}

fn sample_branch_counts(
    circuit: &Circuit,
    c_out: u8,
    sum: u8,
    shots: u64,
    seed: u64,
) -> BTreeMap<Vec<u64>, u64> {
    let mut prepared = circuit.clone();
    prepared
        .set_initial_state(unadder_input(circuit, c_out, sum))
        .expect("input fits the circuit");
    let state = prepared.run(Backend::Dense).expect("small dense run");
    state
        .sample(prepared.layout(), shots, seed)
        .expect("shots >= 1")
        .counts()
        .clone()
}

fn check_sampling_frequencies(shots: u64, seed: u64) -> CheckReport {
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for circuit in [
        build_full_unadder_circuit(),
        build_optimised_full_unadder_circuit(),
    ] {
        for ((c_out, sum), outputs) in full_unadder_branches() {
            if outputs.len() == 1 {
                continue;
            }
            let counts = sample_branch_counts(&circuit, c_out, sum, shots, seed);
            for &(c_in, b, a) in outputs {
                let key = vec![a as u64, b as u64, c_in as u64];
                let freq = counts.get(&key).copied().unwrap_or(0) as f64 / shots as f64;
                let err = (freq - 1.0 / 3.0).abs();
                worst = worst.max(err);
                pass &= err <= 0.005;
            }
        }
    }
    CheckReport::new(
        "sampling_frequencies",
        pass,
        format!("worst |freq - 1/3| = {worst:.2e} at {shots} shots"),
    )
}

fn check_sampling_determinism(shots: u64, seed: u64) -> CheckReport {
    let circuit = build_optimised_full_unadder_circuit();
    let first = sample_branch_counts(&circuit, 0, 1, shots, seed);
    let second = sample_branch_counts(&circuit, 0, 1, shots, seed);
    CheckReport::new(
        "sampling_determinism",
        first == second,
        format!("two {shots}-shot runs with seed {seed} compared"),
    )
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let mut checks = vec![
        check_matrix_unitarity(),
        check_matrix_truth_table(),
        check_circuit_truth_table("gate_circuit_truth_table", &build_full_unadder_circuit()),
        check_circuit_truth_table(
            "matrix_circuit_truth_table",
            &build_optimised_full_unadder_circuit(),
        ),
        check_realization_equivalence(),
        check_norm_preservation(),
    ];
    if let Some(shots) = args.shots {
        checks.push(check_sampling_frequencies(shots, args.seed));
        checks.push(check_sampling_determinism(shots, args.seed));
    }
    let failed = checks.iter().any(|c| !c.passed());

    Ok(Outcome {
        report: Report {
            command: "verify".to_string(),
            config: ConfigEcho {
                shots: args.shots,
                seed: args.shots.map(|_| args.seed),
                backend: Some("dense".to_string()),
                format: args.format.as_str().to_string(),
                ..ConfigEcho::default()
            },
            results: Results::Verify(VerifyResults { checks }),
            oracle_verdict: None,
            post_selection_probability: None,
            timing_ms: None,
        },
        failed,
    })
}

fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.trim_start_matches("VmHWM:")
        .trim()
        .trim_end_matches("kB")
        .trim()
        .parse()
        .ok()
}

pub fn cmd_bench(args: &BenchArgs) -> Result<Outcome> {
    let mut runs = Vec::new();
    for n_bits in 1..=args.max_bits {
        let sum = (1u64 << n_bits) - 1;
        for backend in [Backend::Dense, Backend::Sparse] {
            if backend == Backend::Dense && 2 * n_bits as usize + 1 > DENSE_WIRE_LIMIT {
                continue;
            }
            let started = Instant::now();
            let run = unadd(sum, n_bits, RunMode::Exact, backend)?;
            let wall_ms = started.elapsed().as_secs_f64() * 1e3;
            runs.push(BenchRun {
                n_bits,
                backend: match backend {
                    Backend::Dense => "dense",
                    Backend::Sparse => "sparse",
                }
                .to_string(),
                wall_ms,
                peak_rss_kb: peak_rss_kb(),
                support_size: run.triples().len() as u64,
            });
        }
    }

    Ok(Outcome {
        report: Report {
            command: "bench".to_string(),
            config: ConfigEcho {
                bits: Some(args.max_bits),
                format: args.format.as_str().to_string(),
                ..ConfigEcho::default()
            },
            results: Results::Bench(BenchResults { runs }),
            oracle_verdict: None,
            post_selection_probability: None,
            timing_ms: None,
        },
        failed: false,
    })
}
