// SPDX-License-Identifier: Apache-2.0

//! Built-in circuits.

use crate::engine::{Circuit, Gate};
use crate::error::Result;
use crate::parse::parse_circuit;

/// Text of the shipped eight-qubit Frauchiger-Renner network.
pub const FR_SOURCE: &str = include_str!("../presets/fr.qc");

pub const R: usize = 0;
pub const A: usize = 1;
pub const S: usize = 2;
pub const B: usize = 3;
pub const U_R: usize = 4;
pub const U_A: usize = 5;
pub const W_S: usize = 6;
pub const W_B: usize = 7;

/// Coin rotation angle: `2 asin(sqrt(2/3))`, giving `<P+[q_Rz]> = 1/3`.
pub fn fr_angle() -> f64 {
    2.0 * (2.0f64 / 3.0).sqrt().asin()
}

pub fn preset_fr() -> Circuit {
    let mut c = Circuit::new(8).expect("nonzero");
    for (q, name) in ["R", "A", "S", "B", "U_R", "U_A", "W_S", "W_B"].into_iter().enumerate() {
        c.set_label(q, name).expect("in range");
    }
    let steps = [
        (
            0,
            Gate::RotationY {
                qubit: R,
                angle: fr_angle(),
            },
        ),
        (1, Gate::Cnot { control: R, target: A }),
        (2, Gate::ControlledHadamard { control: A, target: S }),
        (3, Gate::Cnot { control: S, target: B }),
        (4, Gate::Cnot { control: R, target: A }),
        (4, Gate::Cnot { control: S, target: B }),
        (5, Gate::Hadamard { qubit: R }),
        (5, Gate::Hadamard { qubit: S }),
        (
            6,
            Gate::Cnot {
                control: R,
                target: U_R,
            },
        ),
        (
            6,
            Gate::Cnot {
                control: A,
                target: U_A,
            },
        ),
        (
            6,
            Gate::Cnot {
                control: S,
                target: W_S,
            },
        ),
        (
            6,
            Gate::Cnot {
                control: B,
                target: W_B,
            },
        ),
    ];
    for (slot, gate) in steps {
        c.push(slot, gate).expect("valid preset");
    }
    c
}

/// Looks up a preset by name (`fr`).
pub fn preset(name: &str) -> Option<Result<Circuit>> {
    match name {
        "fr" => Some(parse_circuit(FR_SOURCE)),
        _ => None,
    }
}
