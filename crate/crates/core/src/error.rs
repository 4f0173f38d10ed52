// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::engine::Sign;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}-qubit operand combined with {right}-qubit operand")]
    DimensionMismatch { left: usize, right: usize },

    #[error("a network needs at least one qubit")]
    EmptyNetwork,

    #[error("qubit {qubit} is out of range for a {n_qubits}-qubit network")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("a qubit pair needs two distinct qubits, got {0} twice")]
    SameQubit(usize),

    #[error("operator is not Hermitian: expectation has imaginary part {residue:e}")]
    NotHermitian { residue: f64 },

    #[error("qubits {control} and {target} are not sharply foliated at t={time}")]
    NotSharp { control: usize, target: usize, time: usize },

    #[error("branch {sign} of qubit {control} has zero weight at t={time}")]
    ZeroWeight { control: usize, sign: Sign, time: usize },

    #[error("{0}")]
    Usage(String),

    #[error("{n_qubits} qubits exceeds the dense oracle cap of {cap}")]
    SizeCap { n_qubits: usize, cap: usize },

    #[error("circuit and trace disagree: {0}")]
    TraceMismatch(String),

    #[error("slot {slot}: {source}")]
    Slot {
        slot: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
