// SPDX-License-Identifier: Apache-2.0

mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use qdescriptor::foliation::entanglement;
use qdescriptor::oracle::Oracle;
use qdescriptor::pauli::{canonicalize, linear_combine};
use qdescriptor::report::build_report;
use qdescriptor::{parse_circuit, run_circuit, serialize_circuit, Circuit, Gate, PauliLetter, PauliString, PauliSum};

const N: usize = 4;

fn letter() -> impl Strategy<Value = PauliLetter> {
    prop::sample::select(PauliLetter::ALL.to_vec())
}

fn strings() -> impl Strategy<Value = Vec<PauliString>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, prop::collection::vec(letter(), N)), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(re, im, letters)| PauliString::new(Complex64::new(re, im), letters.into_iter().enumerate()))
            .collect()
    })
}

fn sums() -> impl Strategy<Value = PauliSum> {
    strings().prop_map(|s| canonicalize(N, s).unwrap())
}

fn hermitian() -> impl Strategy<Value = PauliSum> {
    sums().prop_map(|a| linear_combine(N, [(0.5, &a), (0.5, &a.adjoint())]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn product_is_associative(a in sums(), b in sums(), c in sums()) {
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        prop_assert!(left.approx_eq(&right, 1e-12));
    }

    #[test]
    fn product_distributes(a in sums(), b in sums(), c in sums(), x in -2.0..2.0f64, y in -2.0..2.0f64) {
        let bc = linear_combine(N, [(x, &b), (y, &c)]).unwrap();
        let left = &a * &bc;
        let right = linear_combine(N, [(x, &(&a * &b)), (y, &(&a * &c))]).unwrap();
        prop_assert!(left.approx_eq(&right, 1e-12));
    }

    #[test]
    fn canonicalize_is_idempotent_and_order_free(terms in strings(), seed in any::<u64>()) {
        let once = canonicalize(N, terms.clone()).unwrap();
        let twice = canonicalize(N, once.iter()).unwrap();
        prop_assert_eq!(&once, &twice);
        let mut shuffled = terms;
        let len = shuffled.len().max(1);
        shuffled.rotate_left(seed as usize % len);
        shuffled.reverse();
        let other = canonicalize(N, shuffled).unwrap();
        prop_assert!(once.approx_eq(&other, 1e-12));
    }

    #[test]
    fn vacuum_expectation_is_linear(a in hermitian(), b in hermitian(), x in -2.0..2.0f64, y in -2.0..2.0f64) {
        let combo = linear_combine(N, [(x, &a), (y, &b)]).unwrap();
        let lhs = combo.vacuum_expectation().unwrap();
        let rhs = x * a.vacuum_expectation().unwrap() + y * b.vacuum_expectation().unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn vacuum_expectation_matches_dense_matrix(a in sums()) {
        let m = Oracle::default().expand(&a).unwrap();
        let dense = m[(0, 0)];
        prop_assert!((a.vacuum_expectation_complex() - dense).norm() < 1e-9);
    }

    #[test]
    fn expand_is_multiplicative(a in sums(), b in sums()) {
        let o = Oracle::default();
        let lhs = o.expand(&(&a * &b)).unwrap();
        let rhs = o.expand(&a).unwrap() * o.expand(&b).unwrap();
        prop_assert!(qdescriptor::oracle::max_abs_diff(&lhs, &rhs) < 1e-9);
    }

    #[test]
    fn random_circuits_preserve_invariants(circuit in common::circuits(4, 10)) {
        let trace = run_circuit(&circuit).unwrap();
        for state in trace.states() {
            prop_assert!(common::invariant_defect(state) < 1e-9);
        }
        let report = Oracle::default().cross_check(&trace, &circuit).unwrap();
        prop_assert!(report.passes(1e-9), "{:?}", report);
        let table = build_report(&trace, 1e-9).unwrap();
        for row in table.rows() {
            if let Some((p, m)) = row.projections {
                prop_assert!((p + m - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn gates_only_touch_their_qubits(circuit in common::circuits(4, 10)) {
        let trace = run_circuit(&circuit).unwrap();
        for step in circuit.steps() {
            let before = &trace.states()[step.slot];
            let after = &trace.states()[step.slot + 1];
            let touched: Vec<usize> = circuit.gates_in_slot(step.slot).flat_map(|g| g.qubits()).collect();
            for q in (0..circuit.n_qubits()).filter(|q| !touched.contains(q)) {
                let (b, a) = (before.descriptor(q).unwrap(), after.descriptor(q).unwrap());
                prop_assert_eq!((&b.x, &b.y, &b.z), (&a.x, &a.y, &a.z));
            }
        }
    }

    #[test]
    fn simultaneous_gates_commute(circuit in common::circuits(4, 10)) {
        let trace = run_circuit(&circuit).unwrap();
        for slot in 0..circuit.n_slots() {
            let gates: Vec<&Gate> = circuit.gates_in_slot(slot).collect();
            let reversed = trace.states()[slot].apply_slot(gates.iter().rev().copied()).unwrap();
            let forward = &trace.states()[slot + 1];
            for q in 0..circuit.n_qubits() {
                let (f, r) = (forward.descriptor(q).unwrap(), reversed.descriptor(q).unwrap());
                prop_assert!(f.x.approx_eq(&r.x, 1e-12) && f.y.approx_eq(&r.y, 1e-12) && f.z.approx_eq(&r.z, 1e-12));
            }
        }
    }

    #[test]
    fn text_round_trip(circuit in common::circuits(4, 12), labelled in any::<bool>()) {
        let mut circuit = circuit;
        if labelled {
            for q in 0..circuit.n_qubits() {
                circuit.set_label(q, format!("Q_{q}")).unwrap();
            }
        }
        let parsed = parse_circuit(&serialize_circuit(&circuit)).unwrap();
        prop_assert_eq!(parsed, circuit);
    }

    #[test]
    fn entanglement_survives_local_rotations(circuit in common::circuits(3, 8)) {
        prop_assume!(circuit.n_qubits() >= 2);
        let state = run_circuit(&circuit).unwrap().final_state().clone();
        let tol = 1e-9;
        let grid = [0.3, 1.1, -0.7, 2.5, std::f64::consts::FRAC_PI_2];
        for (a, b) in [(0, 1), (1, 0)] {
            let base = entanglement(&state, a, b, tol).unwrap();
            // verdicts too close to the threshold are not meaningful
            prop_assume!(!base.entangled || base.deviation() > 1e-6);
            for &theta in &grid {
                for &phi in &grid {
                    let rotated = state.apply_rotation_y(a, theta).unwrap().apply_rotation_y(b, phi).unwrap();
                    let w = entanglement(&rotated, a, b, tol).unwrap();
                    prop_assert_eq!(w.entangled, base.entangled, "theta {} phi {}", theta, phi);
                }
            }
        }
    }
}

#[test]
fn simultaneous_bell_stages_match_sequential_ones() {
    let mut together = Circuit::new(4).unwrap();
    together.push(0, Gate::RotationY { qubit: 0, angle: 1.0 }).unwrap();
    together.push(0, Gate::RotationY { qubit: 2, angle: 0.4 }).unwrap();
    together.push(1, Gate::Cnot { control: 0, target: 1 }).unwrap();
    together.push(1, Gate::Cnot { control: 2, target: 3 }).unwrap();
    let mut apart = Circuit::new(4).unwrap();
    for step in together.steps() {
        apart.append(step.gate).unwrap();
    }
    let a = run_circuit(&together).unwrap();
    let b = run_circuit(&apart).unwrap();
    for (x, y) in a.final_state().descriptors().iter().zip(b.final_state().descriptors()) {
        assert_eq!((&x.x, &x.y, &x.z), (&y.x, &y.y, &y.z));
    }
}
