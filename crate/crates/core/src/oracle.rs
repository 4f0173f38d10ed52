// SPDX-License-Identifier: Apache-2.0

//! Dense-matrix reference implementation.
//!
//! Independent of the descriptor engine: gates are applied as explicit
//! unitaries, either to a state vector (Schrödinger picture) or by
//! conjugating bare Pauli matrices (`U† σ U`). Basis index bit `k` holds
//! qubit `k`'s value, and `|0>` is the `+1` eigenvector of `σz`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::engine::{Circuit, Component, Gate, Trace};
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, PauliSum};

pub type DenseOperator = DMatrix<Complex64>;

pub const DEFAULT_DENSE_CAP: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `P|b> = phase * |b'>` for a single letter acting on bit value `b`.
fn letter_action(letter: PauliLetter, bit: bool) -> (bool, Complex64) {
    match (letter, bit) {
        (PauliLetter::I, b) => (b, ONE),
        (PauliLetter::X, b) => (!b, ONE),
        (PauliLetter::Y, false) => (true, Complex64::new(0.0, 1.0)),
        (PauliLetter::Y, true) => (false, Complex64::new(0.0, -1.0)),
        (PauliLetter::Z, false) => (false, ONE),
        (PauliLetter::Z, true) => (true, re(-1.0)),
    }
}

/// 2x2 or 4x4 matrix of a gate on its own qubits. Local index bit 0 is the
/// first qubit of [`Gate::qubits`] (the control for controlled gates).
pub fn local_matrix(gate: &Gate) -> DenseOperator {
    let h = FRAC_1_SQRT_2;
    match *gate {
        Gate::RotationY { angle, .. } => {
            let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
            DMatrix::from_row_slice(2, 2, &[re(c), re(-s), re(s), re(c)])
        }
        Gate::Hadamard { .. } => DMatrix::from_row_slice(2, 2, &[re(h), re(h), re(h), re(-h)]),
        Gate::Cnot { .. } => {
            // index = control + 2 * target; flip the target when the control bit is 1
            let mut m = DMatrix::from_element(4, 4, ZERO);
            for col in 0..4usize {
                let row = if col & 1 == 1 { col ^ 2 } else { col };
                m[(row, col)] = ONE;
            }
            m
        }
        Gate::ControlledHadamard { .. } => {
            let mut m = DMatrix::from_element(4, 4, ZERO);
            m[(0, 0)] = ONE;
            m[(2, 2)] = ONE;
            m[(1, 1)] = re(h);
            m[(1, 3)] = re(h);
            m[(3, 1)] = re(h);
            m[(3, 3)] = re(-h);
            m
        }
    }
}

fn sub_indices(qubits: &[usize]) -> Vec<usize> {
    (0..1usize << qubits.len())
        .map(|local| {
            qubits
                .iter()
                .enumerate()
                .filter(|(k, _)| local >> k & 1 == 1)
                .fold(0, |acc, (_, &q)| acc | 1 << q)
        })
        .collect()
}

fn bases(dim: usize, qubits: &[usize]) -> impl Iterator<Item = usize> + '_ {
    let mask: usize = qubits.iter().map(|&q| 1 << q).sum();
    (0..dim).filter(move |i| i & mask == 0)
}

/// `m <- G m` for a gate `g` acting on `qubits`.
fn apply_left(m: &mut DenseOperator, g: &DenseOperator, qubits: &[usize]) {
    let offsets = sub_indices(qubits);
    let k = offsets.len();
    let mut buf = vec![ZERO; k];
    for col in 0..m.ncols() {
        for base in bases(m.nrows(), qubits) {
            for (s, &o) in offsets.iter().enumerate() {
                buf[s] = m[(base | o, col)];
            }
            for (r, &o) in offsets.iter().enumerate() {
                m[(base | o, col)] = (0..k).map(|s| g[(r, s)] * buf[s]).sum();
            }
        }
    }
}

/// `m <- m G` for a gate `g` acting on `qubits`.
fn apply_right(m: &mut DenseOperator, g: &DenseOperator, qubits: &[usize]) {
    let offsets = sub_indices(qubits);
    let k = offsets.len();
    let mut buf = vec![ZERO; k];
    for row in 0..m.nrows() {
        for base in bases(m.ncols(), qubits) {
            for (s, &o) in offsets.iter().enumerate() {
                buf[s] = m[(row, base | o)];
            }
            for (c, &o) in offsets.iter().enumerate() {
                m[(row, base | o)] = (0..k).map(|s| buf[s] * g[(s, c)]).sum();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn vacuum(n_qubits: usize) -> Self {
        let mut amplitudes = DVector::from_element(1 << n_qubits, ZERO);
        amplitudes[0] = ONE;
        StateVector { n_qubits, amplitudes }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `<ψ|A|ψ>` for a dense operator.
    pub fn expectation(&self, op: &DenseOperator) -> Complex64 {
        self.amplitudes.dotc(&(op * &self.amplitudes))
    }

    /// `<ψ|P|ψ>` for a Pauli string, computed without building a matrix.
    pub fn string_expectation(&self, string: &PauliString) -> Complex64 {
        let mut total = ZERO;
        for (j, &amp) in self.amplitudes.iter().enumerate() {
            if amp == ZERO {
                continue;
            }
            let mut out = j;
            let mut phase = string.coeff();
            for &(q, l) in string.letters() {
                let (bit, p) = letter_action(l, j >> q & 1 == 1);
                out = if bit { out | 1 << q } else { out & !(1 << q) };
                phase *= p;
            }
            total += self.amplitudes[out].conj() * phase * amp;
        }
        total
    }

    /// Probability that `qubit` records `sign` (`+1` is bit value 0).
    pub fn probability(&self, qubit: usize, plus: bool) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(j, _)| (j >> qubit & 1 == 0) == plus)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Joint outcome distribution of `qubits`; index bit `k` is `qubits[k]`.
    pub fn marginal(&self, qubits: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << qubits.len()];
        for (j, a) in self.amplitudes.iter().enumerate() {
            let idx = qubits
                .iter()
                .enumerate()
                .fold(0, |acc, (k, &q)| acc | (j >> q & 1) << k);
            out[idx] += a.norm_sqr();
        }
        out
    }

    fn apply(&mut self, gate: &Gate) {
        let g = local_matrix(gate);
        let qubits = gate.qubits();
        let offsets = sub_indices(&qubits);
        let k = offsets.len();
        let mut buf = vec![ZERO; k];
        for base in bases(self.amplitudes.len(), &qubits) {
            for (s, &o) in offsets.iter().enumerate() {
                buf[s] = self.amplitudes[base | o];
            }
            for (r, &o) in offsets.iter().enumerate() {
                self.amplitudes[base | o] = (0..k).map(|s| g[(r, s)] * buf[s]).sum();
            }
        }
    }
}

/// Where the largest deviation of a cross-check was found.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Site {
    pub slot: usize,
    pub qubit: usize,
    pub component: Component,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheckReport {
    pub max_expectation_dev: f64,
    pub max_matrix_dev: f64,
    pub worst_site: Option<Site>,
}

impl CrossCheckReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_expectation_dev <= tol && self.max_matrix_dev <= tol
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Versioned<'a> {
            format_version: u32,
            #[serde(flatten)]
            report: &'a CrossCheckReport,
        }
        Ok(serde_json::to_string_pretty(&Versioned {
            format_version: crate::FORMAT_VERSION,
            report: self,
        })?)
    }
}

/// Dense simulator with a qubit cap.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_DENSE_CAP }
    }
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Oracle { cap }
    }

    fn check_size(&self, n_qubits: usize) -> Result<()> {
        if n_qubits > self.cap {
            return Err(Error::SizeCap {
                n_qubits,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// `Σ coeff · ⊗ letters` as a `2^n x 2^n` matrix.
    pub fn expand(&self, sum: &PauliSum) -> Result<DenseOperator> {
        let n = sum.n_qubits();
        self.check_size(n)?;
        let dim = 1usize << n;
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for term in sum.iter() {
            for col in 0..dim {
                let mut row = col;
                let mut phase = term.coeff();
                for &(q, l) in term.letters() {
                    let (bit, p) = letter_action(l, col >> q & 1 == 1);
                    row = if bit { row | 1 << q } else { row & !(1 << q) };
                    phase *= p;
                }
                m[(row, col)] += phase;
            }
        }
        Ok(m)
    }

    /// The gate embedded in the full `n`-qubit space.
    pub fn gate_unitary(&self, gate: &Gate, n_qubits: usize) -> Result<DenseOperator> {
        self.check_size(n_qubits)?;
        gate.validate(n_qubits)?;
        let mut u = DMatrix::identity(1 << n_qubits, 1 << n_qubits);
        apply_left(&mut u, &local_matrix(gate), &gate.qubits());
        Ok(u)
    }

    /// `ψ_0 = |0...0>`, then one state per slot boundary.
    pub fn evolve_state(&self, circuit: &Circuit) -> Result<Vec<StateVector>> {
        self.check_size(circuit.n_qubits())?;
        let mut states = vec![StateVector::vacuum(circuit.n_qubits())];
        for slot in 0..circuit.n_slots() {
            let mut next = states[slot].clone();
            for gate in circuit.gates_in_slot(slot) {
                next.apply(gate);
            }
            states.push(next);
        }
        Ok(states)
    }

    /// `U† σ U` for one bare Pauli matrix, with `U` every gate before `upto_slot`.
    pub fn conjugate(&self, circuit: &Circuit, upto_slot: usize, qubit: usize, c: Component) -> Result<DenseOperator> {
        let n = circuit.n_qubits();
        self.check_size(n)?;
        if qubit >= n {
            return Err(Error::QubitOutOfRange { qubit, n_qubits: n });
        }
        let mut m = self.expand(&PauliSum::letter(n, qubit, c.letter()))?;
        // innermost factor first: the latest gate conjugates the bare matrix
        for step in circuit.steps().iter().rev().filter(|s| s.slot < upto_slot) {
            let g = local_matrix(&step.gate);
            let qubits = step.gate.qubits();
            apply_left(&mut m, &g.adjoint(), &qubits);
            apply_right(&mut m, &g, &qubits);
        }
        Ok(m)
    }

    /// Dense descriptor triples of every qubit at boundary `upto_slot`.
    pub fn conjugate_descriptors(&self, circuit: &Circuit, upto_slot: usize) -> Result<Vec<[DenseOperator; 3]>> {
        (0..circuit.n_qubits())
            .map(|q| {
                Ok([
                    self.conjugate(circuit, upto_slot, q, Component::X)?,
                    self.conjugate(circuit, upto_slot, q, Component::Y)?,
                    self.conjugate(circuit, upto_slot, q, Component::Z)?,
                ])
            })
            .collect()
    }

    /// Compares engine descriptors with the state vector and with dense conjugation
    /// at every slot, qubit and component.
    pub fn cross_check(&self, trace: &Trace, circuit: &Circuit) -> Result<CrossCheckReport> {
        if trace.n_qubits() != circuit.n_qubits() || trace.states().len() != circuit.n_slots() + 1 {
            return Err(Error::TraceMismatch(format!(
                "trace has {} qubits and {} boundaries, circuit has {} qubits and {} boundaries",
                trace.n_qubits(),
                trace.states().len(),
                circuit.n_qubits(),
                circuit.n_slots() + 1
            )));
        }
        let psi = self.evolve_state(circuit)?;
        let mut report = CrossCheckReport {
            max_expectation_dev: 0.0,
            max_matrix_dev: 0.0,
            worst_site: None,
        };
        let mut worst = -1.0;
        for (slot, state) in trace.states().iter().enumerate() {
            for qubit in 0..circuit.n_qubits() {
                for c in Component::ALL {
                    let engine = state.component(qubit, c)?;
                    let schrodinger = psi[slot].string_expectation(&PauliString::single(ONE, qubit, c.letter()));
                    let exp_dev = (re(engine.vacuum_expectation()?) - schrodinger).norm();
                    let mat_dev = max_abs_diff(&self.expand(engine)?, &self.conjugate(circuit, slot, qubit, c)?);
                    report.max_expectation_dev = report.max_expectation_dev.max(exp_dev);
                    report.max_matrix_dev = report.max_matrix_dev.max(mat_dev);
                    if exp_dev.max(mat_dev) > worst {
                        worst = exp_dev.max(mat_dev);
                        report.worst_site = Some(Site {
                            slot,
                            qubit,
                            component: c,
                        });
                    }
                }
            }
        }
        Ok(report)
    }
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &DenseOperator, b: &DenseOperator) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest entrywise deviation of `u† u` from the identity.
pub fn unitarity_defect(u: &DenseOperator) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &DMatrix::identity(u.nrows(), u.ncols()))
}
