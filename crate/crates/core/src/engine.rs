// SPDX-License-Identifier: Apache-2.0

//! Heisenberg-picture descriptor network.
//!
//! Every qubit carries a descriptor triple `(x, y, z)` of [`PauliSum`]s. The
//! global state stays fixed at `|0...0>`; gates act on descriptors through
//! closed-form update rules written in terms of the pre-gate components.
//! All three components are stored so the Pauli algebra can be checked at
//! every step.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{linear_combine, PauliLetter, PauliSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    X,
    Y,
    Z,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::X, Component::Y, Component::Z];

    pub fn letter(self) -> PauliLetter {
        match self {
            Component::X => PauliLetter::X,
            Component::Y => PauliLetter::Y,
            Component::Z => PauliLetter::Z,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Component::X => "x",
            Component::Y => "y",
            Component::Z => "z",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Eigenvalue label of a projector branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Heisenberg observable triple of one qubit at one time slot.
#[derive(Clone, Debug, PartialEq)]
pub struct Descriptor {
    pub qubit: usize,
    pub time: usize,
    pub x: PauliSum,
    pub y: PauliSum,
    pub z: PauliSum,
}

impl Descriptor {
    /// `(σx, σy, σz)` supported on `qubit` alone.
    pub fn local(n_qubits: usize, qubit: usize) -> Self {
        Descriptor {
            qubit,
            time: 0,
            x: PauliSum::letter(n_qubits, qubit, PauliLetter::X),
            y: PauliSum::letter(n_qubits, qubit, PauliLetter::Y),
            z: PauliSum::letter(n_qubits, qubit, PauliLetter::Z),
        }
    }

    pub fn component(&self, c: Component) -> &PauliSum {
        match c {
            Component::X => &self.x,
            Component::Y => &self.y,
            Component::Z => &self.z,
        }
    }

    pub fn components(&self) -> [&PauliSum; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Right-multiplies every component by `factor`.
    pub fn right_mul(&self, factor: &PauliSum) -> Result<Descriptor> {
        Ok(Descriptor {
            qubit: self.qubit,
            time: self.time,
            x: self.x.checked_mul(factor)?,
            y: self.y.checked_mul(factor)?,
            z: self.z.checked_mul(factor)?,
        })
    }

    /// Largest coefficient deviation from `q_i q_j = δij E + i Σ εijk q_k`,
    /// where `E` is `identity` (the full identity, or a projector for relative descriptors).
    pub fn algebra_defect(&self, identity: &PauliSum) -> Result<f64> {
        let c = self.components();
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let product = c[i].checked_mul(c[j])?;
                let expected = if i == j {
                    identity.clone()
                } else {
                    let k = 3 - i - j;
                    let eps = if (j + 3 - i) % 3 == 1 { 1.0 } else { -1.0 };
                    c[k].scale(num_complex::Complex64::new(0.0, eps))
                };
                worst = worst.max(product.distance(&expected));
            }
        }
        Ok(worst)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    RotationY { qubit: usize, angle: f64 },
    Hadamard { qubit: usize },
    Cnot { control: usize, target: usize },
    ControlledHadamard { control: usize, target: usize },
}

impl Gate {
    pub fn control(&self) -> Option<usize> {
        match *self {
            Gate::Cnot { control, .. } | Gate::ControlledHadamard { control, .. } => Some(control),
            _ => None,
        }
    }

    /// The qubit the gate acts on (the target for controlled gates).
    pub fn target(&self) -> usize {
        match *self {
            Gate::RotationY { qubit, .. } | Gate::Hadamard { qubit } => qubit,
            Gate::Cnot { target, .. } | Gate::ControlledHadamard { target, .. } => target,
        }
    }

    /// Qubits touched, control first.
    pub fn qubits(&self) -> Vec<usize> {
        match self.control() {
            Some(c) => vec![c, self.target()],
            None => vec![self.target()],
        }
    }

    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::RotationY { .. } => "ry",
            Gate::Hadamard { .. } => "h",
            Gate::Cnot { .. } => "cx",
            Gate::ControlledHadamard { .. } => "ch",
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        if let Some(c) = self.control() {
            if c == self.target() {
                return Err(Error::InvalidGate(format!(
                    "{} needs distinct control and target, got {c} twice",
                    self.mnemonic()
                )));
            }
        }
        if let Gate::RotationY { angle, .. } = self {
            if !angle.is_finite() {
                return Err(Error::InvalidGate(format!("rotation angle {angle} is not finite")));
            }
        }
        Ok(())
    }
}

/// A gate occupying the time interval `(slot, slot + 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateStep {
    pub slot: usize,
    pub gate: Gate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    steps: Vec<GateStep>,
    labels: BTreeMap<usize, String>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::EmptyNetwork);
        }
        Ok(Circuit {
            n_qubits,
            steps: Vec::new(),
            labels: BTreeMap::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn steps(&self) -> &[GateStep] {
        &self.steps
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn set_label(&mut self, qubit: usize, name: impl Into<String>) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        self.labels.insert(qubit, name.into());
        Ok(())
    }

    /// Display name of a qubit: its label, or `q<index>`.
    pub fn label(&self, qubit: usize) -> String {
        self.labels.get(&qubit).cloned().unwrap_or_else(|| format!("q{qubit}"))
    }

    /// Resolves a label or a decimal index.
    pub fn qubit_by_name(&self, name: &str) -> Option<usize> {
        if let Some((&q, _)) = self.labels.iter().find(|(_, l)| l.as_str() == name) {
            return Some(q);
        }
        name.parse().ok().filter(|&q| q < self.n_qubits)
    }

    pub fn last_slot(&self) -> Option<usize> {
        self.steps.last().map(|s| s.slot)
    }

    /// Number of slot intervals; the trace has one more boundary than this.
    pub fn n_slots(&self) -> usize {
        self.last_slot().map_or(0, |s| s + 1)
    }

    pub fn gates_in_slot(&self, slot: usize) -> impl Iterator<Item = &Gate> + '_ {
        self.steps.iter().filter(move |s| s.slot == slot).map(|s| &s.gate)
    }

    /// Appends a gate at an explicit slot, checking ranges, slot order and
    /// that gates sharing a slot act on disjoint qubits.
    pub fn push(&mut self, slot: usize, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        if let Some(last) = self.last_slot() {
            if slot < last {
                return Err(Error::InvalidGate(format!(
                    "slot {slot} precedes the previous slot {last}"
                )));
            }
        }
        let qubits = gate.qubits();
        if let Some(clash) = self
            .gates_in_slot(slot)
            .flat_map(|g| g.qubits())
            .find(|q| qubits.contains(q))
        {
            return Err(Error::InvalidGate(format!(
                "qubit {clash} is used twice in slot {slot}"
            )));
        }
        self.steps.push(GateStep { slot, gate });
        Ok(())
    }

    /// Appends a gate in the slot after the last one. Returns that slot.
    pub fn append(&mut self, gate: Gate) -> Result<usize> {
        let slot = self.last_slot().map_or(0, |s| s + 1);
        self.push(slot, gate)?;
        Ok(slot)
    }

    /// Ordered (control, target) pairs of every two-qubit gate, first occurrence first.
    pub fn interacting_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for step in &self.steps {
            if let Some(c) = step.gate.control() {
                let pair = (c, step.gate.target());
                let seen = pairs.iter().any(|&(a, b)| (a, b) == pair || (b, a) == pair);
                if !seen {
                    pairs.push(pair);
                }
            }
        }
        pairs
    }
}

/// Descriptors of every qubit at one slot boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkState {
    time: usize,
    descriptors: Vec<Descriptor>,
}

impl NetworkState {
    /// Every qubit starts with its local Pauli triple at `t = 0`.
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::EmptyNetwork);
        }
        Ok(NetworkState {
            time: 0,
            descriptors: (0..n_qubits).map(|q| Descriptor::local(n_qubits, q)).collect(),
        })
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn n_qubits(&self) -> usize {
        self.descriptors.len()
    }

    pub fn descriptors(&self) -> &[Descriptor] {
        &self.descriptors
    }

    pub fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits() {
            return Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits(),
            });
        }
        Ok(())
    }

    pub fn descriptor(&self, qubit: usize) -> Result<&Descriptor> {
        self.check_qubit(qubit)?;
        Ok(&self.descriptors[qubit])
    }

    pub fn component(&self, qubit: usize, c: Component) -> Result<&PauliSum> {
        Ok(self.descriptor(qubit)?.component(c))
    }

    /// `<0| q_{qubit,c} |0>`.
    pub fn expectation(&self, qubit: usize, c: Component) -> Result<f64> {
        self.component(qubit, c)?.vacuum_expectation()
    }

    /// `P_sign[q_z] = (I + sign q_z) / 2`.
    pub fn projector(&self, qubit: usize, sign: Sign) -> Result<PauliSum> {
        let z = self.component(qubit, Component::Z)?;
        linear_combine(
            self.n_qubits(),
            [(0.5, &PauliSum::identity(self.n_qubits())), (0.5 * sign.value(), z)],
        )
    }

    pub fn apply_rotation_y(&self, qubit: usize, angle: f64) -> Result<Self> {
        self.apply_gate(&Gate::RotationY { qubit, angle })
    }

    pub fn apply_hadamard(&self, qubit: usize) -> Result<Self> {
        self.apply_gate(&Gate::Hadamard { qubit })
    }

    pub fn apply_cnot(&self, control: usize, target: usize) -> Result<Self> {
        self.apply_gate(&Gate::Cnot { control, target })
    }

    pub fn apply_controlled_hadamard(&self, control: usize, target: usize) -> Result<Self> {
        self.apply_gate(&Gate::ControlledHadamard { control, target })
    }

    /// Applies one gate and advances time by one slot.
    pub fn apply_gate(&self, gate: &Gate) -> Result<Self> {
        self.apply_slot([gate])
    }

    /// Applies gates acting on disjoint qubits within a single slot, then advances time.
    pub fn apply_slot<'a>(&self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<Self> {
        let mut next = self.clone();
        let mut touched: Vec<usize> = Vec::new();
        for gate in gates {
            gate.validate(self.n_qubits())?;
            for q in gate.qubits() {
                if touched.contains(&q) {
                    return Err(Error::InvalidGate(format!("qubit {q} is used twice in one slot")));
                }
                touched.push(q);
            }
            for d in next.updated(gate)? {
                let q = d.qubit;
                next.descriptors[q] = d;
            }
        }
        next.time += 1;
        for d in &mut next.descriptors {
            d.time = next.time;
        }
        Ok(next)
    }

    /// New descriptors of the gate's qubits, computed from the current (pre-gate) components.
    fn updated(&self, gate: &Gate) -> Result<Vec<Descriptor>> {
        let n = self.n_qubits();
        let out = match *gate {
            Gate::RotationY { qubit, angle } => {
                let q = &self.descriptors[qubit];
                let (cos, sin) = (angle.cos(), angle.sin());
                vec![Descriptor {
                    x: linear_combine(n, [(cos, &q.x), (sin, &q.z)])?,
                    y: q.y.clone(),
                    z: linear_combine(n, [(cos, &q.z), (-sin, &q.x)])?,
                    ..q.clone()
                }]
            }
            Gate::Hadamard { qubit } => {
                let q = &self.descriptors[qubit];
                vec![Descriptor {
                    x: q.z.clone(),
                    y: -&q.y,
                    z: q.x.clone(),
                    ..q.clone()
                }]
            }
            Gate::Cnot { control, target } => {
                let c = &self.descriptors[control];
                let t = &self.descriptors[target];
                vec![
                    Descriptor {
                        x: &c.x * &t.x,
                        y: &c.y * &t.x,
                        z: c.z.clone(),
                        ..c.clone()
                    },
                    Descriptor {
                        x: t.x.clone(),
                        y: &t.y * &c.z,
                        z: &t.z * &c.z,
                        ..t.clone()
                    },
                ]
            }
            Gate::ControlledHadamard { control, target } => {
                let c = &self.descriptors[control];
                let t = &self.descriptors[target];
                let hadamard = linear_combine(n, [(FRAC_1_SQRT_2, &t.x), (FRAC_1_SQRT_2, &t.z)])?;
                let plus = self.projector(control, Sign::Plus)?;
                let minus = self.projector(control, Sign::Minus)?;
                vec![
                    Descriptor {
                        x: &c.x * &hadamard,
                        y: &c.y * &hadamard,
                        z: c.z.clone(),
                        ..c.clone()
                    },
                    Descriptor {
                        x: &(&t.x * &plus) + &(&t.z * &minus),
                        y: &t.y * &c.z,
                        z: &(&t.z * &plus) + &(&t.x * &minus),
                        ..t.clone()
                    },
                ]
            }
        };
        Ok(out)
    }
}

/// Network states at every slot boundary `t = 0..=n_slots`.
#[derive(Clone, Debug)]
pub struct Trace {
    circuit: Circuit,
    states: Vec<NetworkState>,
}

impl Trace {
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn states(&self) -> &[NetworkState] {
        &self.states
    }

    pub fn state(&self, time: usize) -> Option<&NetworkState> {
        self.states.get(time)
    }

    pub fn final_state(&self) -> &NetworkState {
        self.states.last().expect("a trace always holds the initial state")
    }

    pub fn n_qubits(&self) -> usize {
        self.circuit.n_qubits()
    }

    /// Versioned JSON dump of every descriptor at every slot boundary.
    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Entry<'a> {
            qubit: usize,
            x: &'a PauliSum,
            y: &'a PauliSum,
            z: &'a PauliSum,
        }
        #[derive(Serialize)]
        struct Slot<'a> {
            t: usize,
            descriptors: Vec<Entry<'a>>,
        }
        struct Labels<'a>(&'a Circuit);
        impl Serialize for Labels<'_> {
            fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                use serde::ser::SerializeMap;
                let mut map = ser.serialize_map(Some(self.0.n_qubits()))?;
                for q in 0..self.0.n_qubits() {
                    map.serialize_entry(&q.to_string(), &self.0.label(q))?;
                }
                map.end()
            }
        }
        #[derive(Serialize)]
        struct Dump<'a> {
            format_version: u32,
            n_qubits: usize,
            labels: Labels<'a>,
            slots: Vec<Slot<'a>>,
        }
        let dump = Dump {
            format_version: crate::FORMAT_VERSION,
            n_qubits: self.n_qubits(),
            labels: Labels(&self.circuit),
            slots: self
                .states
                .iter()
                .map(|s| Slot {
                    t: s.time,
                    descriptors: s
                        .descriptors
                        .iter()
                        .map(|d| Entry {
                            qubit: d.qubit,
                            x: &d.x,
                            y: &d.y,
                            z: &d.z,
                        })
                        .collect(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&dump)?)
    }
}

/// Evolves the initial network slot by slot.
pub fn run_circuit(circuit: &Circuit) -> Result<Trace> {
    let mut states = vec![NetworkState::new(circuit.n_qubits())?];
    for slot in 0..circuit.n_slots() {
        let next = states[slot]
            .apply_slot(circuit.gates_in_slot(slot))
            .map_err(|e| Error::Slot {
                slot,
                source: Box::new(e),
            })?;
        states.push(next);
    }
    Ok(Trace {
        circuit: circuit.clone(),
        states,
    })
}
