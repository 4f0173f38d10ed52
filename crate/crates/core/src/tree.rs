// SPDX-License-Identifier: Apache-2.0

//! Everettian branching tree assembled from pairwise foliation reports.
//!
//! A watched pair becomes active once a gate has coupled it (or once it is
//! entangled). From then on, its verdict at each slot boundary is compared
//! with the previous one:
//!
//! * entering a sharp or anti-sharp verdict emits a `created-sharp` node;
//! * leaving it emits a `diffused` node, reached from the created node by one
//!   signed edge per live branch, weighted by the branch's projector weight;
//! * entering an entangled but non-sharp verdict emits a `non-sharp-bubble`.
//!
//! Foliations still open at the end of the trace close on `leaf` nodes, one
//! per live branch. Every event is also linked (by an unsigned edge) to the
//! most recent event on each of its two qubits, so all nodes hang off the
//! trunk.

use std::fmt::Write as _;

use serde::Serialize;

use crate::engine::{Circuit, Sign, Trace};
use crate::error::{Error, Result};
use crate::foliation::{sharp_foliation, FoliationReport, Verdict};
use crate::report::format_number;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    Trunk,
    CreatedSharp,
    Diffused,
    NonSharpBubble,
    Leaf,
}

impl NodeKind {
    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Trunk => "trunk",
            NodeKind::CreatedSharp => "created-sharp",
            NodeKind::Diffused => "diffused",
            NodeKind::NonSharpBubble => "non-sharp-bubble",
            NodeKind::Leaf => "leaf",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeNode {
    pub id: usize,
    pub kind: NodeKind,
    pub slot: usize,
    pub pair: Option<(usize, usize)>,
    pub labels: Vec<String>,
}

/// `sign` is the control's branch eigenvalue, or 0 for an unsigned continuation edge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeEdge {
    pub from: usize,
    pub to: usize,
    pub sign: i8,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchTree {
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<TreeEdge>,
}

#[derive(Clone, Debug)]
struct LiveBranch {
    sign: Sign,
    weight: f64,
    label: String,
}

#[derive(Default)]
struct PairTrack {
    active: bool,
    previous: Option<Verdict>,
    open: Option<(usize, Verdict, Vec<LiveBranch>)>,
}

/// `C+1/T+1` style labels for the live branches of a foliated report.
pub fn branch_labels(circuit: &Circuit, report: &FoliationReport, tol: f64) -> Vec<String> {
    live_branches(circuit, report, tol)
        .into_iter()
        .map(|b| b.label)
        .collect()
}

fn live_branches(circuit: &Circuit, report: &FoliationReport, tol: f64) -> Vec<LiveBranch> {
    let (c, t) = report.pair;
    report
        .live_branches(tol)
        .map(|b| LiveBranch {
            sign: b.control_sign,
            weight: b.weight,
            label: format!(
                "{}{}/{}{}",
                circuit.label(c),
                b.control_sign,
                circuit.label(t),
                b.target_sign
            ),
        })
        .collect()
}

fn same_branches(a: &[LiveBranch], b: &[LiveBranch], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| x.sign == y.sign && (x.weight - y.weight).abs() <= tol)
}

struct Builder<'a> {
    circuit: &'a Circuit,
    tree: BranchTree,
    cursor: Vec<usize>,
}

impl Builder<'_> {
    fn add_node(&mut self, kind: NodeKind, slot: usize, pair: Option<(usize, usize)>, labels: Vec<String>) -> usize {
        let id = self.tree.nodes.len();
        self.tree.nodes.push(TreeNode {
            id,
            kind,
            slot,
            pair,
            labels,
        });
        id
    }

    fn add_edge(&mut self, from: usize, to: usize, sign: i8, weight: f64) {
        self.tree.edges.push(TreeEdge { from, to, sign, weight });
    }

    /// Adds an event on `pair`, linked from the latest events on both qubits.
    fn event(
        &mut self,
        kind: NodeKind,
        slot: usize,
        pair: (usize, usize),
        labels: Vec<String>,
        skip: Option<usize>,
    ) -> usize {
        let id = self.add_node(kind, slot, Some(pair), labels);
        let mut parents = vec![self.cursor[pair.0], self.cursor[pair.1]];
        parents.dedup();
        for p in parents {
            if Some(p) != skip {
                self.add_edge(p, id, 0, 1.0);
            }
        }
        self.cursor[pair.0] = id;
        self.cursor[pair.1] = id;
        id
    }

    fn close(&mut self, from: usize, to: usize, branches: &[LiveBranch]) {
        for b in branches {
            self.add_edge(from, to, b.sign.as_i8(), b.weight);
        }
    }

    fn pair_label(&self, pair: (usize, usize)) -> String {
        format!("{},{}", self.circuit.label(pair.0), self.circuit.label(pair.1))
    }
}

/// First slot boundary at which a gate has acted on both qubits of `pair`.
fn coupled_at(circuit: &Circuit, pair: (usize, usize)) -> Option<usize> {
    circuit
        .steps()
        .iter()
        .find(|s| {
            let q = s.gate.qubits();
            q.contains(&pair.0) && q.contains(&pair.1)
        })
        .map(|s| s.slot + 1)
}

/// Builds the tree for `watch` pairs (control, target). Pairs are processed
/// in ascending index order so node ids are deterministic.
pub fn build_branch_tree(trace: &Trace, watch: &[(usize, usize)], tol: f64) -> Result<BranchTree> {
    let circuit = trace.circuit();
    let n = circuit.n_qubits();
    let mut pairs = watch.to_vec();
    for &(c, t) in &pairs {
        for q in [c, t] {
            if q >= n {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits: n });
            }
        }
        if c == t {
            return Err(Error::SameQubit(c));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let mut b = Builder {
        circuit,
        tree: BranchTree {
            nodes: Vec::new(),
            edges: Vec::new(),
        },
        cursor: vec![0; n],
    };
    let all: Vec<String> = (0..n).map(|q| circuit.label(q)).collect();
    b.add_node(NodeKind::Trunk, 0, None, all);

    let coupling: Vec<Option<usize>> = pairs.iter().map(|&p| coupled_at(circuit, p)).collect();
    let mut tracks: Vec<PairTrack> = pairs.iter().map(|_| PairTrack::default()).collect();

    for (time, state) in trace.states().iter().enumerate().skip(1) {
        for (k, &pair) in pairs.iter().enumerate() {
            let report = sharp_foliation(state, pair.0, pair.1, tol)?;
            let track = &mut tracks[k];
            if !track.active {
                track.active = coupling[k].is_some_and(|s| s <= time) || report.witness.entangled;
                if !track.active {
                    continue;
                }
            }
            let live = if report.verdict.is_foliated() {
                live_branches(circuit, &report, tol)
            } else {
                Vec::new()
            };

            if let Some((open_id, open_verdict, open_branches)) = track.open.take() {
                let unchanged = report.verdict == open_verdict && same_branches(&open_branches, &live, tol);
                if unchanged {
                    track.open = Some((open_id, open_verdict, open_branches));
                } else {
                    let labels = open_branches.iter().map(|x| x.label.clone()).collect();
                    let id = b.event(NodeKind::Diffused, time, pair, labels, Some(open_id));
                    b.close(open_id, id, &open_branches);
                }
            }
            if report.verdict.is_foliated() && track.open.is_none() {
                let labels = live.iter().map(|x| x.label.clone()).collect();
                let id = b.event(NodeKind::CreatedSharp, time, pair, labels, None);
                track.open = Some((id, report.verdict, live));
            }
            if report.verdict == Verdict::NonSharp && track.previous != Some(Verdict::NonSharp) {
                let label = b.pair_label(pair);
                b.event(NodeKind::NonSharpBubble, time, pair, vec![label], None);
            }
            track.previous = Some(report.verdict);
        }
    }

    let end = trace.states().len() - 1;
    for (k, &pair) in pairs.iter().enumerate() {
        if let Some((open_id, _, branches)) = tracks[k].open.take() {
            for branch in branches {
                let leaf = b.add_node(NodeKind::Leaf, end, Some(pair), vec![branch.label.clone()]);
                b.add_edge(open_id, leaf, branch.sign.as_i8(), branch.weight);
            }
        }
    }
    Ok(b.tree)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl BranchTree {
    pub fn created_sharp(&self) -> impl Iterator<Item = &TreeNode> + '_ {
        self.nodes.iter().filter(|n| n.kind == NodeKind::CreatedSharp)
    }

    pub fn outgoing(&self, id: usize) -> impl Iterator<Item = &TreeEdge> + '_ {
        self.edges.iter().filter(move |e| e.from == id)
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Versioned<'a> {
            format_version: u32,
            nodes: &'a [TreeNode],
            edges: &'a [TreeEdge],
        }
        Ok(serde_json::to_string_pretty(&Versioned {
            format_version: crate::FORMAT_VERSION,
            nodes: &self.nodes,
            edges: &self.edges,
        })?)
    }

    /// Graphviz rendering: branch edges carry their sign and a pen width proportional to their weight.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "// format_version {}", crate::FORMAT_VERSION);
        out.push_str("digraph branch_tree {\n    rankdir=LR;\n    node [fontname=\"Helvetica\"];\n");
        for node in &self.nodes {
            let shape = match node.kind {
                NodeKind::Trunk => "shape=box",
                NodeKind::CreatedSharp => "shape=ellipse",
                NodeKind::Diffused => "shape=diamond",
                NodeKind::NonSharpBubble => "shape=ellipse, style=dashed",
                NodeKind::Leaf => "shape=plaintext",
            };
            let mut label = format!("{}\\nt={}", node.kind.name(), node.slot);
            for l in &node.labels {
                label.push_str("\\n");
                label.push_str(&escape(l));
            }
            let _ = writeln!(
                out,
                "    n{} [label=\"{}\", class=\"{}\", {}];",
                node.id,
                label,
                node.kind.name(),
                shape
            );
        }
        for e in &self.edges {
            if e.sign == 0 {
                let _ = writeln!(out, "    n{} -> n{} [style=dashed, penwidth=1];", e.from, e.to);
            } else {
                let _ = writeln!(
                    out,
                    "    n{} -> n{} [label=\"{:+} ({})\", penwidth={:.3}];",
                    e.from,
                    e.to,
                    e.sign,
                    format_number(e.weight),
                    5.0 * e.weight
                );
            }
        }
        out.push_str("}\n");
        out
    }
}
