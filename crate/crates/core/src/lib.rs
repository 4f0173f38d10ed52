// SPDX-License-Identifier: Apache-2.0

//! Heisenberg-picture (Deutsch–Hayden) descriptors for small qubit networks.
//!
//! * [`pauli`] — sparse Pauli-string algebra.
//! * [`engine`] — descriptor propagation through Ry, H, CNOT and controlled-H.
//! * [`foliation`] — sharp-foliation tests, relative descriptors and
//!   conditional expectations.
//! * [`tree`] — branching trees built from foliation events.
//! * [`oracle`] — dense Schrödinger-picture cross-check.
//! * [`parse`], [`preset`], [`report`] — circuit text format, built-in
//!   circuits and the per-gate summary table.

pub mod engine;
pub mod error;
pub mod foliation;
pub mod oracle;
pub mod parse;
pub mod pauli;
pub mod preset;
pub mod report;
pub mod tree;

/// Version stamped into every emitted JSON, DOT and table file.
pub const FORMAT_VERSION: u32 = 1;

pub use engine::{run_circuit, Circuit, Component, Descriptor, Gate, GateStep, NetworkState, Sign, Trace};
pub use error::{Error, Result};
pub use foliation::{
    conditional_expectation, entanglement, relative_descriptor, sharp_foliation, FoliationReport, Verdict,
    DEFAULT_TOLERANCE,
};
pub use oracle::{CrossCheckReport, Oracle};
pub use parse::{parse_circuit, serialize_circuit};
pub use pauli::{PauliLetter, PauliString, PauliSum};
pub use preset::preset_fr;
pub use report::{build_report, ReportTable};
pub use tree::{build_branch_tree, BranchTree};
