// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use qdescriptor::{Circuit, Component, Gate, NetworkState, PauliSum, Sign};

/// Raw gate choice: kind, two qubit picks, angle, and whether to try sharing the previous slot.
pub type RawGate = (u8, usize, usize, f64, bool);

pub fn raw_gates(max: usize) -> impl Strategy<Value = Vec<RawGate>> {
    prop::collection::vec((0u8..4, 0usize..4, 1usize..4, -PI..PI, any::<bool>()), 0..=max)
}

/// Builds a valid circuit on `n` qubits; gates share a slot when asked and when disjoint.
pub fn build_circuit(n: usize, raw: &[RawGate]) -> Circuit {
    let mut c = Circuit::new(n).unwrap();
    for &(kind, a, offset, angle, share) in raw {
        let q = a % n;
        let other = (q + offset) % n;
        let gate = match kind {
            _ if n == 1 || other == q => match kind % 2 {
                0 => Gate::RotationY { qubit: q, angle },
                _ => Gate::Hadamard { qubit: q },
            },
            0 => Gate::RotationY { qubit: q, angle },
            1 => Gate::Hadamard { qubit: q },
            2 => Gate::Cnot {
                control: q,
                target: other,
            },
            _ => Gate::ControlledHadamard {
                control: q,
                target: other,
            },
        };
        let pushed = share && c.last_slot().is_some_and(|s| c.push(s, gate).is_ok());
        if !pushed {
            c.append(gate).unwrap();
        }
    }
    c
}

pub fn circuits(max_qubits: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_qubits, raw_gates(max_gates)).prop_map(|(n, raw)| build_circuit(n, &raw))
}

/// Largest violation of the single-qubit algebra, the projector identities and
/// cross-qubit commutation in one network state.
pub fn invariant_defect(state: &NetworkState) -> f64 {
    let n = state.n_qubits();
    let id = PauliSum::identity(n);
    let mut worst = 0.0f64;
    for q in 0..n {
        let d = state.descriptor(q).unwrap();
        worst = worst.max(d.algebra_defect(&id).unwrap());
        let p = state.projector(q, Sign::Plus).unwrap();
        let m = state.projector(q, Sign::Minus).unwrap();
        worst = worst.max((&p + &m).distance(&id));
        worst = worst.max((&p * &p).distance(&p));
        worst = worst.max((&m * &m).distance(&m));
        worst = worst.max((&p * &m).distance(&PauliSum::zero(n)));
        let total = p.vacuum_expectation().unwrap() + m.vacuum_expectation().unwrap();
        worst = worst.max((total - 1.0).abs());
        for q2 in (q + 1)..n {
            for a in Component::ALL {
                for b in Component::ALL {
                    let comm = state
                        .component(q, a)
                        .unwrap()
                        .commutator(state.component(q2, b).unwrap())
                        .unwrap();
                    worst = worst.max(comm.distance(&PauliSum::zero(n)));
                }
            }
        }
    }
    worst
}
