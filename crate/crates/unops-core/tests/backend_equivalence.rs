//! Dense and sparse backends must agree amplitude-for-amplitude on every
//! circuit they can both run, and both must preserve the norm after every
//! gate.

use proptest::prelude::*;
use unops_core::qsim::{Backend, Circuit, Control, Gate, QuantumState};
use unops_core::unadd::{build_rcu, full_unadder_gate};
use unops_core::unmult::build_unmultiplier;

const TOL: f64 = 1e-10;

fn assert_states_match(dense: &QuantumState, sparse: &QuantumState) -> Result<(), TestCaseError> {
    for (basis, amp) in dense.support(TOL) {
        let diff = (amp - sparse.amplitude(basis)).norm();
        prop_assert!(diff < TOL, "basis {basis}: dense-sparse diff {diff}");
    }
    for (basis, amp) in sparse.support(TOL) {
        let diff = (amp - dense.amplitude(basis)).norm();
        prop_assert!(diff < TOL, "basis {basis}: sparse-dense diff {diff}");
    }
    Ok(())
}

fn run_both(circuit: &Circuit) -> Result<(), TestCaseError> {
    let mut dense =
        QuantumState::basis(circuit.num_wires(), circuit.initial_state(), Backend::Dense)
            .expect("fits dense");
    let mut sparse = QuantumState::basis(
        circuit.num_wires(),
        circuit.initial_state(),
        Backend::Sparse,
    )
    .expect("fits sparse");
    for gate in circuit.gates() {
        dense.apply(gate).expect("valid gate");
        sparse.apply(gate).expect("valid gate");
        prop_assert!((dense.norm_sqr() - 1.0).abs() < TOL);
        prop_assert!((sparse.norm_sqr() - 1.0).abs() < TOL);
    }
    assert_states_match(&dense, &sparse)
}

#[derive(Clone, Debug)]
enum GateSpec {
    X(usize),
    H(usize),
    Ry(f64, usize),
    Cx {
        control: usize,
        negative: bool,
        target: usize,
    },
    FullUnadder(usize, usize, usize),
}

fn gate_spec(num_wires: usize) -> impl Strategy<Value = GateSpec> {
    let wire = 0..num_wires;
    prop_oneof![
        wire.clone().prop_map(GateSpec::X),
        wire.clone().prop_map(GateSpec::H),
        (0.0..std::f64::consts::TAU, wire.clone()).prop_map(|(theta, w)| GateSpec::Ry(theta, w)),
        (wire.clone(), any::<bool>(), wire.clone()).prop_map(|(control, negative, target)| {
            GateSpec::Cx {
                control,
                negative,
                target,
            }
        }),
        (wire.clone(), wire.clone(), wire).prop_map(|(a, b, c)| GateSpec::FullUnadder(a, b, c)),
    ]
}

/// Builds a circuit from specs, dropping any spec whose wires collide.
fn build(num_wires: usize, specs: &[GateSpec], initial: u64) -> Circuit {
    let mut circuit = Circuit::new(num_wires);
    circuit
        .set_initial_state(initial & ((1 << num_wires) - 1))
        .expect("masked to range");
    for spec in specs {
        let gate = match *spec {
            GateSpec::X(w) => Some(Gate::x(w)),
            GateSpec::H(w) => Some(Gate::h(w)),
            GateSpec::Ry(theta, w) => Some(Gate::ry(theta, w)),
            GateSpec::Cx {
                control,
                negative,
                target,
            } if control != target => {
                let ctl = if negative {
                    Control::negative(control)
                } else {
                    Control::positive(control)
                };
                Some(Gate::x(target).controlled([ctl]).expect("distinct wires"))
            }
            GateSpec::FullUnadder(a, b, c) if a != b && b != c && a != c => {
                Some(full_unadder_gate(a, b, c).expect("distinct wires"))
            }
            _ => None,
        };
        if let Some(gate) = gate {
            circuit.push(gate).expect("wire in range");
        }
    }
    circuit
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_circuits_agree(
        num_wires in 3usize..=7,
        specs in prop::collection::vec(gate_spec(7), 0..12),
        initial in any::<u64>(),
    ) {
        let specs: Vec<GateSpec> = specs
            .into_iter()
            .map(|s| clamp_spec(s, num_wires))
            .collect();
        run_both(&build(num_wires, &specs, initial))?;
    }

    #[test]
    fn rcu_instances_agree(n_bits in 1u32..=6, frac in 0.0f64..1.0) {
        let sum = (frac * ((1u64 << n_bits) - 1) as f64) as u64;
        run_both(&build_rcu(n_bits, sum).expect("valid instance"))?;
    }
}

fn clamp_spec(spec: GateSpec, num_wires: usize) -> GateSpec {
    match spec {
        GateSpec::X(w) => GateSpec::X(w % num_wires),
        GateSpec::H(w) => GateSpec::H(w % num_wires),
        GateSpec::Ry(theta, w) => GateSpec::Ry(theta, w % num_wires),
        GateSpec::Cx {
            control,
            negative,
            target,
        } => GateSpec::Cx {
            control: control % num_wires,
            negative,
            target: target % num_wires,
        },
        GateSpec::FullUnadder(a, b, c) => {
            GateSpec::FullUnadder(a % num_wires, b % num_wires, c % num_wires)
        }
    }
}

#[test]
fn unmultiplier_instances_agree() {
    for product in [0u64, 1, 5, 6, 12, 15] {
        let (circuit, _) = build_unmultiplier(2, product).expect("valid instance");
        let dense = circuit.run(Backend::Dense).expect("10 wires fit dense");
        let sparse = circuit.run(Backend::Sparse).expect("runs sparse");
        assert_states_match(&dense, &sparse).expect("backends agree");
    }
}
