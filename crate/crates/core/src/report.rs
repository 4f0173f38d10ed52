// SPDX-License-Identifier: Apache-2.0

//! Per-gate summary table: interacting parties, foliation verdict and branch weights.

use std::fmt::Write as _;

use crate::engine::{Gate, Sign, Trace};
use crate::error::Result;
use crate::foliation::{sharp_foliation, Verdict};

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    /// Slot interval `(k, k + 1)` of the gate.
    pub interval: (usize, usize),
    pub gate: Gate,
    /// `(subject, partner)`; for a single-qubit gate the partner is the last
    /// qubit it interacted with, if any.
    pub parties: Option<(usize, usize)>,
    pub verdict: Option<Verdict>,
    /// `(<P+[q_Cz]>, <P-[q_Cz]>)` after the gate.
    pub projections: Option<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportTable {
    labels: Vec<String>,
    rows: Vec<ReportRow>,
}

fn last_partner(trace: &Trace, qubit: usize, before_slot: usize) -> Option<usize> {
    trace
        .circuit()
        .steps()
        .iter()
        .rev()
        .filter(|s| s.slot < before_slot && s.gate.control().is_some())
        .filter_map(|s| {
            let q = s.gate.qubits();
            match (q[0] == qubit, q[1] == qubit) {
                (true, _) => Some(q[1]),
                (_, true) => Some(q[0]),
                _ => None,
            }
        })
        .next()
}

pub fn build_report(trace: &Trace, tol: f64) -> Result<ReportTable> {
    let circuit = trace.circuit();
    let mut rows = Vec::new();
    for step in circuit.steps() {
        let parties = match step.gate.control() {
            Some(c) => Some((c, step.gate.target())),
            None => last_partner(trace, step.gate.target(), step.slot).map(|p| (step.gate.target(), p)),
        };
        let (verdict, projections) = match parties {
            Some((c, t)) => {
                let state = &trace.states()[step.slot + 1];
                let report = sharp_foliation(state, c, t, tol)?;
                (Some(report.verdict), Some((report.proj_plus, report.proj_minus)))
            }
            None => (None, None),
        };
        rows.push(ReportRow {
            interval: (step.slot, step.slot + 1),
            gate: step.gate,
            parties,
            verdict,
            projections,
        });
    }
    Ok(ReportTable {
        labels: (0..circuit.n_qubits()).map(|q| circuit.label(q)).collect(),
        rows,
    })
}

/// Exact sixths print as reduced fractions, anything else with six significant digits.
pub fn format_number(x: f64) -> String {
    let sixths = (x * 6.0).round();
    if (x - sixths / 6.0).abs() <= 1e-9 && sixths.abs() < 1e12 {
        let num = sixths as i64;
        if num == 0 {
            return "0".into();
        }
        let g = gcd(num.unsigned_abs(), 6) as i64;
        let (n, d) = (num / g, 6 / g);
        return if d == 1 { n.to_string() } else { format!("{n}/{d}") };
    }
    let digits = if x == 0.0 { 0 } else { x.abs().log10().floor() as i32 };
    let decimals = (5 - digits).clamp(0, 17) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Table wording for a verdict; an unentangled pair is reported as non-sharp.
pub fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Sharp => "Sharp",
        Verdict::AntiSharp => "Anti-sharp",
        Verdict::NonSharp | Verdict::Unentangled => "Non-sharp",
    }
}

impl ReportTable {
    pub fn rows(&self) -> &[ReportRow] {
        &self.rows
    }

    fn label(&self, q: usize) -> &str {
        &self.labels[q]
    }

    pub fn gate_text(&self, gate: &Gate) -> String {
        match *gate {
            Gate::RotationY { qubit, .. } => format!("Rotation on {}", self.label(qubit)),
            Gate::Hadamard { qubit } => format!("Hadamard on {}", self.label(qubit)),
            Gate::Cnot { .. } => "Controlled-not".into(),
            Gate::ControlledHadamard { .. } => "Controlled-H".into(),
        }
    }

    fn cells(&self, row: &ReportRow) -> [String; 5] {
        [
            format!("({},{})", row.interval.0, row.interval.1),
            row.parties
                .map_or("-".into(), |(a, b)| format!("{},{}", self.label(a), self.label(b))),
            self.gate_text(&row.gate),
            row.verdict.map_or("-".into(), |v| verdict_text(v).into()),
            row.projections.map_or("-".into(), |(p, m)| {
                format!("({}, {})", format_number(p), format_number(m))
            }),
        ]
    }

    /// Aligned plain-text rendering.
    pub fn render(&self) -> String {
        let header = ["Time", "Interaction", "Gate", "Foliations", "Projections"].map(String::from);
        let body: Vec<[String; 5]> = self.rows.iter().map(|r| self.cells(r)).collect();
        let mut widths = header.clone().map(|h| h.len());
        for cells in &body {
            for (w, c) in widths.iter_mut().zip(cells) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "# format_version {}", crate::FORMAT_VERSION);
        for cells in std::iter::once(&header).chain(&body) {
            let mut line = String::new();
            for (c, w) in cells.iter().zip(widths) {
                let _ = write!(line, "{c:<w$}  ");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// Projection weights of a row's control, indexed by sign.
    pub fn weight(&self, row: usize, sign: Sign) -> Option<f64> {
        let (p, m) = self.rows.get(row)?.projections?;
        Some(match sign {
            Sign::Plus => p,
            Sign::Minus => m,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_circuit, Circuit};

    #[test]
    fn sixths_print_as_fractions() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(1.0 / 3.0), "1/3");
        assert_eq!(format_number(2.0 / 3.0 + 1e-12), "2/3");
        assert_eq!(format_number(5.0 / 6.0), "5/6");
        assert_eq!(format_number(0.5), "1/2");
        assert_eq!(format_number(-1.0 / 3.0), "-1/3");
    }

    #[test]
    fn other_values_print_six_digits() {
        assert_eq!(format_number(0.1), "0.1");
        assert_eq!(format_number(0.123456789), "0.123457");
        assert_eq!(format_number(12.3456789), "12.3457");
    }

    #[test]
    fn rows_follow_gates() {
        let mut c = Circuit::new(2).unwrap();
        c.append(Gate::RotationY { qubit: 0, angle: 1.0 }).unwrap();
        c.append(Gate::Cnot { control: 0, target: 1 }).unwrap();
        c.append(Gate::Hadamard { qubit: 0 }).unwrap();
        let table = build_report(&run_circuit(&c).unwrap(), 1e-9).unwrap();
        let rows = table.rows();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].parties, None);
        assert_eq!(rows[1].verdict, Some(Verdict::Sharp));
        assert_eq!(rows[2].parties, Some((0, 1)));
        let text = table.render();
        assert!(text.starts_with("# format_version 1\nTime"));
        assert!(text.contains("Hadamard on q0"));
        assert!(text.lines().all(|l| !l.ends_with(' ')));
    }
}
