//! Single-fault propagation. Every nonidentity Pauli on the support of each
//! gate is inserted right after that gate, and every single-qubit Pauli at
//! the input, then pushed through the rest of the circuit; the final error
//! is weighed block by block.
//!
//! Measurements with a correction are absorbed into the Pauli frame: a fault
//! that flips the outcome also triggers the correction, so the correction is
//! multiplied into the error. Classically controlled Pauli gates are handled
//! the same way.

use std::fmt::Write as _;

use crate::bits::BitVec;
use crate::clifford::{Circuit, Step};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::group::PauliGroup;
use crate::pauli::PauliOperator;

/// Largest block for which coset-reduced weights are computed.
pub const MAX_REDUCTION_N: usize = 10;

#[derive(Clone, Debug)]
pub struct Block {
    pub name: String,
    pub qubits: Vec<usize>,
    /// The code on the block, for coset reduction of the weights.
    pub code: Option<StabilizerCode>,
}

#[derive(Clone, Debug, Default)]
pub struct BlockLayout {
    pub blocks: Vec<Block>,
}

impl BlockLayout {
    pub fn new(blocks: Vec<Block>) -> Self {
        Self { blocks }
    }

    /// `count` consecutive blocks of `code`, starting at qubit 0.
    pub fn uniform(code: &StabilizerCode, count: usize) -> Self {
        let n = code.n();
        Self {
            blocks: (0..count)
                .map(|b| Block {
                    name: format!("B{}", b + 1),
                    qubits: (b * n..(b + 1) * n).collect(),
                    code: Some(code.clone()),
                })
                .collect(),
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        let mut owner = vec![false; n];
        for b in &self.blocks {
            for &q in &b.qubits {
                if q >= n || std::mem::replace(&mut owner[q], true) {
                    return Err(Error::Invalid(format!("block {} has a bad or shared qubit {}", b.name, q + 1)));
                }
            }
            if let Some(c) = &b.code {
                if c.n() != b.qubits.len() {
                    return Err(Error::SizeMismatch { expected: c.n(), found: b.qubits.len() });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultEntry {
    /// Index of the faulty step, `None` for a fault on the input.
    pub step: Option<usize>,
    pub gate: String,
    pub targets: Vec<usize>,
    /// The fault on the gate's targets, in target order.
    pub fault: PauliOperator,
    /// The error at the end of the circuit, up to phase.
    pub final_error: PauliOperator,
    pub raw_weights: Vec<usize>,
    /// Minimum weight over the block's stabilizer coset, when available.
    pub reduced_weights: Vec<Option<usize>>,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultReport {
    pub block_names: Vec<String>,
    pub entries: Vec<FaultEntry>,
}

impl FaultReport {
    pub fn violations(&self) -> impl Iterator<Item = &FaultEntry> {
        self.entries.iter().filter(|e| e.violation)
    }

    pub fn has_violation(&self) -> bool {
        self.entries.iter().any(|e| e.violation)
    }

    /// One line per (location, fault).
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "step  gate        fault   final error  raw weights  reduced  violation");
        for e in &self.entries {
            let targets: Vec<String> = e.targets.iter().map(|t| (t + 1).to_string()).collect();
            let reduced: Vec<String> =
                e.reduced_weights.iter().map(|w| w.map_or("-".to_string(), |w| w.to_string())).collect();
            let raw: Vec<String> = e.raw_weights.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(
                out,
                "{:<5} {:<11} {:<7} {:<12} {:<12} {:<8} {}",
                e.step.map_or("in".to_string(), |s| (s + 1).to_string()),
                format!("{}({})", e.gate, targets.join(",")),
                e.fault.pattern_string(),
                e.final_error.pattern_string(),
                raw.join(","),
                reduced.join(","),
                if e.violation { "yes" } else { "no" }
            );
        }
        out
    }
}

/// Pushes `e` through the steps from index `start` on.
pub fn propagate(circuit: &Circuit, start: usize, mut e: PauliOperator) -> Result<PauliOperator> {
    let mut flipped: Vec<bool> = Vec::new();
    for step in &circuit.steps()[start..] {
        match step {
            Step::Gate { gate, targets } => e = gate.map().apply_at(&e, targets)?,
            Step::Measure { op, correction, bit } => {
                let flip = !e.commutes_with(op);
                if flip {
                    if let Some(c) = correction {
                        e = e.multiply(c)?;
                    }
                }
                if let Some(b) = *bit {
                    if flipped.len() <= b {
                        flipped.resize(b + 1, false);
                    }
                    flipped[b] = flip;
                }
            }
            Step::IfGate { bit, gate, targets } => {
                let p = gate.as_pauli().ok_or_else(|| {
                    Error::InvalidCircuit(format!("conditional gate {gate} is not a Pauli and cannot be tracked"))
                })?;
                if flipped.get(*bit).copied().unwrap_or(false) {
                    e = e.multiply(&p.embed(e.n(), targets))?;
                }
            }
        }
    }
    Ok(e.with_phase(0))
}

fn reduced_weight(error: &PauliOperator, code: &StabilizerCode) -> Option<usize> {
    if code.n() > MAX_REDUCTION_N {
        return None;
    }
    let gens = code.generators();
    let group = PauliGroup::new(code.n(), gens);
    let r = gens.len();
    let best = (0u64..1 << r)
        .map(|mask| {
            let s = group.product(&BitVec::from_u64(r, mask));
            error.multiply(&s).expect("sizes match").weight()
        })
        .min()
        .unwrap_or(error.weight());
    Some(best)
}

/// Inserts every single fault on the input and after every gate of
/// `circuit` and reports the per-block error weights. A violation is a raw
/// weight of 2 or more in some block.
pub fn fault_injection(circuit: &Circuit, layout: &BlockLayout) -> Result<FaultReport> {
    let n = circuit.n();
    layout.check(n)?;
    let mut locations: Vec<(Option<usize>, String, Vec<usize>)> =
        (0..n).map(|q| (None, "input".to_string(), vec![q])).collect();
    for (idx, step) in circuit.steps().iter().enumerate() {
        if let Step::Gate { gate, targets } | Step::IfGate { gate, targets, .. } = step {
            locations.push((Some(idx), gate.name().to_string(), targets.clone()));
        }
    }
    let mut entries = Vec::new();
    for (step, gate, targets) in locations {
        let start = step.map_or(0, |s| s + 1);
        for fault in crate::pauli::all_patterns(targets.len()).filter(|p| !p.is_identity_pattern()) {
            let final_error = propagate(circuit, start, fault.embed(n, &targets))?;
            let mut raw_weights = Vec::new();
            let mut reduced_weights = Vec::new();
            for b in &layout.blocks {
                let local = final_error.restrict(&b.qubits).with_phase(0);
                raw_weights.push(local.weight());
                reduced_weights.push(b.code.as_ref().and_then(|c| reduced_weight(&local, c)));
            }
            let violation = raw_weights.iter().any(|&w| w >= 2);
            entries.push(FaultEntry {
                step,
                gate: gate.clone(),
                targets: targets.clone(),
                fault,
                final_error,
                raw_weights,
                reduced_weights,
                violation,
            });
        }
    }
    Ok(FaultReport { block_names: layout.blocks.iter().map(|b| b.name.clone()).collect(), entries })
}
