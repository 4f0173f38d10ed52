// SPDX-License-Identifier: Apache-2.0

//! Plain-text circuit format.
//!
//! ```text
//! # comment
//! format_version 1
//! qubits 3
//! label 0 R
//! @0 ry R 2*arcsin(sqrt(2/3))
//! cx R 1          # no slot: previous slot + 1
//! @2 h 0
//! @2 ch 1 2
//! ```
//!
//! Qubits are referenced by index or label. Angles accept `pi`, decimal
//! numbers, `+ - * / ^`, parentheses and the functions `sqrt`, `sin`, `cos`,
//! `tan`, `arcsin`/`asin`, `arccos`/`acos`, `arctan`/`atan`.

use std::fmt::Write as _;

use crate::engine::{Circuit, Gate};
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_count(tok: Token<'_>, line: usize, what: &str) -> Result<usize> {
    tok.text
        .parse()
        .map_err(|_| Error::parse(line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

struct Parser {
    circuit: Option<Circuit>,
    last_slot: Option<usize>,
}

impl Parser {
    fn qubit(&self, tok: Token<'_>, line: usize) -> Result<usize> {
        let circuit = self.circuit.as_ref().expect("checked by caller");
        if let Ok(q) = tok.text.parse::<usize>() {
            if q >= circuit.n_qubits() {
                return Err(Error::parse(
                    line,
                    tok.column,
                    format!("qubit {q} is out of range for {} qubits", circuit.n_qubits()),
                ));
            }
            return Ok(q);
        }
        circuit
            .labels()
            .iter()
            .find(|(_, l)| l.as_str() == tok.text)
            .map(|(&q, _)| q)
            .ok_or_else(|| Error::parse(line, tok.column, format!("unknown qubit `{}`", tok.text)))
    }

    fn line(&mut self, raw: &str, number: usize) -> Result<()> {
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&first) = toks.first() else {
            return Ok(());
        };
        let expect_args = |n: usize| -> Result<()> {
            if toks.len() != n + 1 {
                let col = toks.get(n + 1).map_or(first.column, |t| t.column);
                return Err(Error::parse(
                    number,
                    col,
                    format!("`{}` takes {n} argument(s), found {}", first.text, toks.len() - 1),
                ));
            }
            Ok(())
        };
        match first.text {
            "format_version" => {
                expect_args(1)?;
                let v = parse_count(toks[1], number, "a version number")?;
                if v != crate::FORMAT_VERSION as usize {
                    return Err(Error::parse(
                        number,
                        toks[1].column,
                        format!("unsupported format_version {v}"),
                    ));
                }
                return Ok(());
            }
            "qubits" => {
                expect_args(1)?;
                if self.circuit.is_some() {
                    return Err(Error::parse(number, first.column, "qubit count declared twice"));
                }
                let n = parse_count(toks[1], number, "a qubit count")?;
                self.circuit = Some(Circuit::new(n).map_err(|e| Error::parse(number, toks[1].column, e.to_string()))?);
                return Ok(());
            }
            "label" => {
                expect_args(2)?;
                let Some(circuit) = self.circuit.as_mut() else {
                    return Err(Error::parse(number, first.column, "`label` before `qubits`"));
                };
                let q = parse_count(toks[1], number, "a qubit index")?;
                let name = toks[2];
                if !is_identifier(name.text) {
                    return Err(Error::parse(
                        number,
                        name.column,
                        format!("`{}` is not a valid label", name.text),
                    ));
                }
                if circuit.labels().values().any(|l| l == name.text) {
                    return Err(Error::parse(
                        number,
                        name.column,
                        format!("label `{}` is already taken", name.text),
                    ));
                }
                return circuit
                    .set_label(q, name.text)
                    .map_err(|e| Error::parse(number, toks[1].column, e.to_string()));
            }
            _ => {}
        }

        let (slot, rest) = match first.text.strip_prefix('@') {
            Some(s) => {
                let slot = s
                    .parse::<usize>()
                    .map_err(|_| Error::parse(number, first.column, format!("bad slot `{}`", first.text)))?;
                (Some(slot), &toks[1..])
            }
            None => (None, &toks[..]),
        };
        let Some(&op) = rest.first() else {
            return Err(Error::parse(number, first.column, "slot marker without a gate"));
        };
        let args = &rest[1..];
        let arity = match op.text {
            "ry" | "h" => 1,
            "cx" | "ch" => 2,
            other => return Err(Error::parse(number, op.column, format!("unknown gate `{other}`"))),
        };
        if args.len() < arity || (op.text != "ry" && args.len() > arity) || (op.text == "ry" && args.len() < 2) {
            return Err(Error::parse(
                number,
                op.column,
                format!("wrong number of operands for `{}`", op.text),
            ));
        }
        if arity == 2 && args[0].text == args[1].text {
            return Err(Error::parse(
                number,
                args[1].column,
                format!("`{}` needs distinct control and target", op.text),
            ));
        }
        if self.circuit.is_none() {
            return Err(Error::parse(number, op.column, "gate before `qubits`"));
        }
        let q0 = self.qubit(args[0], number)?;
        let gate = match op.text {
            "ry" => {
                let start = args[1].column - 1;
                let angle = eval_expr(&content[start..])
                    .map_err(|(offset, msg)| Error::parse(number, start + offset + 1, msg))?;
                Gate::RotationY { qubit: q0, angle }
            }
            "h" => Gate::Hadamard { qubit: q0 },
            _ => {
                let q1 = self.qubit(args[1], number)?;
                if q0 == q1 {
                    return Err(Error::parse(
                        number,
                        args[1].column,
                        format!("`{}` needs distinct control and target", op.text),
                    ));
                }
                if op.text == "cx" {
                    Gate::Cnot {
                        control: q0,
                        target: q1,
                    }
                } else {
                    Gate::ControlledHadamard {
                        control: q0,
                        target: q1,
                    }
                }
            }
        };
        let slot = slot.unwrap_or_else(|| self.last_slot.map_or(0, |s| s + 1));
        let circuit = self.circuit.as_mut().expect("checked above");
        circuit
            .push(slot, gate)
            .map_err(|e| Error::parse(number, first.column, e.to_string()))?;
        self.last_slot = Some(slot);
        Ok(())
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut parser = Parser {
        circuit: None,
        last_slot: None,
    };
    for (i, line) in text.lines().enumerate() {
        parser.line(line, i + 1)?;
    }
    parser
        .circuit
        .ok_or_else(|| Error::parse(text.lines().count().max(1), 1, "missing `qubits` declaration"))
}

/// Canonical text with explicit slots; parses back to an equal circuit.
pub fn serialize_circuit(circuit: &Circuit) -> String {
    let name = |q: usize| -> String { circuit.labels().get(&q).cloned().unwrap_or_else(|| q.to_string()) };
    let mut out = String::new();
    let _ = writeln!(out, "format_version {}", crate::FORMAT_VERSION);
    let _ = writeln!(out, "qubits {}", circuit.n_qubits());
    for (q, l) in circuit.labels() {
        let _ = writeln!(out, "label {q} {l}");
    }
    for step in circuit.steps() {
        let _ = match step.gate {
            Gate::RotationY { qubit, angle } => writeln!(out, "@{} ry {} {}", step.slot, name(qubit), angle),
            Gate::Hadamard { qubit } => writeln!(out, "@{} h {}", step.slot, name(qubit)),
            Gate::Cnot { control, target } => writeln!(out, "@{} cx {} {}", step.slot, name(control), name(target)),
            Gate::ControlledHadamard { control, target } => {
                writeln!(out, "@{} ch {} {}", step.slot, name(control), name(target))
            }
        };
    }
    out
}

type ExprError = (usize, String);

struct Expr<'a> {
    src: &'a str,
    pos: usize,
}

impl Expr<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err((self.pos, msg.into()))
    }

    fn sum(&mut self) -> Result<f64, ExprError> {
        let mut v = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            v = if op == '+' { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<f64, ExprError> {
        let mut v = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            v = if op == '*' { v * rhs } else { v / rhs };
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<f64, ExprError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<f64, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            return Ok(base.powf(self.unary()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<f64, ExprError> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of expression");
        };
        let start = self.pos;
        if c == '(' {
            self.pos += 1;
            let v = self.sum()?;
            if self.peek() != Some(')') {
                return self.err("expected `)`");
            }
            self.pos += 1;
            return Ok(v);
        }
        if c.is_ascii_digit() || c == '.' {
            let bytes = self.src.as_bytes();
            let mut end = self.pos;
            while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
                end += 1;
            }
            if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
                let mut e = end + 1;
                if e < bytes.len() && (bytes[e] == b'+' || bytes[e] == b'-') {
                    e += 1;
                }
                if e < bytes.len() && bytes[e].is_ascii_digit() {
                    while e < bytes.len() && bytes[e].is_ascii_digit() {
                        e += 1;
                    }
                    end = e;
                }
            }
            let text = &self.src[start..end];
            return match text.parse::<f64>() {
                Ok(v) => {
                    self.pos = end;
                    Ok(v)
                }
                Err(_) => self.err(format!("bad number `{text}`")),
            };
        }
        if c.is_ascii_alphabetic() {
            let end = self.src[start..]
                .find(|ch: char| !ch.is_ascii_alphanumeric() && ch != '_')
                .map_or(self.src.len(), |i| start + i);
            let name = &self.src[start..end];
            self.pos = end;
            if name == "pi" {
                return Ok(std::f64::consts::PI);
            }
            let f: fn(f64) -> f64 = match name {
                "sqrt" => f64::sqrt,
                "sin" => f64::sin,
                "cos" => f64::cos,
                "tan" => f64::tan,
                "arcsin" | "asin" => f64::asin,
                "arccos" | "acos" => f64::acos,
                "arctan" | "atan" => f64::atan,
                _ => {
                    self.pos = start;
                    return self.err(format!("unknown name `{name}`"));
                }
            };
            if self.peek() != Some('(') {
                return self.err(format!("expected `(` after `{name}`"));
            }
            self.pos += 1;
            let arg = self.sum()?;
            if self.peek() != Some(')') {
                return self.err("expected `)`");
            }
            self.pos += 1;
            return Ok(f(arg));
        }
        self.err(format!("unexpected `{c}`"))
    }
}

/// Evaluates an angle expression. Errors carry the byte offset of the problem.
pub fn eval_expr(src: &str) -> Result<f64, (usize, String)> {
    let mut p = Expr { src, pos: 0 };
    let v = p.sum()?;
    if let Some(c) = p.peek() {
        return p.err(format!("unexpected `{c}`"));
    }
    if !v.is_finite() {
        return Err((0, format!("expression evaluates to {v}")));
    }
    Ok(v)
}
