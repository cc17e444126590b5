//! Circuits of gates, Pauli measurements and classically controlled gates,
//! and their `.circ` text form.
//!
//! ```text
//! QUBITS 2
//! GATE CNOT 1 2
//! MEASURE iIY CORRECT ZZ -> b1
//! IF b1 GATE Z 2
//! ```
//!
//! Qubits are 1-based in text and 0-based in memory. A custom gate is written
//! `MAP:<x1>/<z1>/<x2>/<z2>...`, listing the images of each qubit's X and Z.

use std::fmt::{self, Write as _};

use super::named::{canonical_name, named_gate};
use super::CliffordMap;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

#[derive(Clone, PartialEq, Eq)]
pub struct Gate {
    name: String,
    map: CliffordMap,
}

impl Gate {
    /// A named gate, or a `MAP:` custom gate.
    pub fn parse(name: &str) -> Result<Gate> {
        if let Some(body) = name.strip_prefix("MAP:") {
            let images: Vec<PauliOperator> =
                body.split('/').map(str::parse).collect::<Result<_>>()?;
            if images.is_empty() || images.len() % 2 != 0 {
                return Err(Error::Invalid(format!("custom gate `{name}` needs X/Z image pairs")));
            }
            let xs = images.iter().step_by(2).cloned().collect();
            let zs = images.iter().skip(1).step_by(2).cloned().collect();
            return Ok(Gate::custom(CliffordMap::new(xs, zs)?));
        }
        let map = named_gate(name)?;
        Ok(Gate { name: canonical_name(name).unwrap().to_string(), map })
    }

    pub fn named(name: &str) -> Gate {
        Gate::parse(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn custom(map: CliffordMap) -> Gate {
        let mut name = String::from("MAP:");
        for j in 0..map.n() {
            if j > 0 {
                name.push('/');
            }
            let _ = write!(name, "{}/{}", map.x_image(j), map.z_image(j));
        }
        Gate { name, map }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn map(&self) -> &CliffordMap {
        &self.map
    }

    pub fn arity(&self) -> usize {
        self.map.n()
    }

    /// The Pauli operator this gate applies, if it is one of `I`, `X`, `Y`, `Z`.
    pub fn as_pauli(&self) -> Option<PauliOperator> {
        let p = match self.name.as_str() {
            "I" => "I",
            "X" => "X",
            "Y" => "iY",
            "Z" => "Z",
            _ => return None,
        };
        Some(crate::pauli::pauli(p))
    }

    pub fn inverse(&self) -> Gate {
        let inv = self.map.invert();
        for (name, arity) in super::NAMED_GATES {
            if *arity == self.arity() {
                let g = named_gate(name).unwrap();
                if g == inv {
                    return Gate { name: name.to_string(), map: g };
                }
            }
        }
        Gate::custom(inv)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gate({})", self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Gate { gate: Gate, targets: Vec<usize> },
    /// Measure a Hermitian Pauli. With a correction, an outcome of `-1` is
    /// followed by applying the correction, which must anticommute with `op`.
    Measure { op: PauliOperator, correction: Option<PauliOperator>, bit: Option<usize> },
    IfGate { bit: usize, gate: Gate, targets: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    steps: Vec<Step>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self { n, steps: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Appends a step after checking it against the register.
    pub fn push(&mut self, step: Step) -> Result<&mut Self> {
        self.check_step(&step)?;
        self.steps.push(step);
        Ok(self)
    }

    /// Appends a named gate on 0-based targets.
    pub fn gate(&mut self, name: &str, targets: &[usize]) -> Result<&mut Self> {
        self.push(Step::Gate { gate: Gate::parse(name)?, targets: targets.to_vec() })
    }

    pub fn measure(&mut self, op: &str, correction: Option<&str>, bit: Option<usize>) -> Result<&mut Self> {
        let op = op.parse()?;
        let correction = correction.map(str::parse).transpose()?;
        self.push(Step::Measure { op, correction, bit })
    }

    pub fn if_gate(&mut self, bit: usize, name: &str, targets: &[usize]) -> Result<&mut Self> {
        self.push(Step::IfGate { bit, gate: Gate::parse(name)?, targets: targets.to_vec() })
    }

    /// Appends every step of `other` (same register size).
    pub fn extend(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.n != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: other.n });
        }
        for s in &other.steps {
            self.push(s.clone())?;
        }
        Ok(self)
    }

    fn check_targets(&self, gate: &Gate, targets: &[usize]) -> Result<()> {
        if gate.arity() != targets.len() {
            return Err(Error::InvalidCircuit(format!(
                "gate {} takes {} targets, got {}",
                gate,
                gate.arity(),
                targets.len()
            )));
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.n {
                return Err(Error::InvalidCircuit(format!(
                    "target {} out of range for {} qubits",
                    t + 1,
                    self.n
                )));
            }
            if targets[..i].contains(&t) {
                return Err(Error::InvalidCircuit(format!("repeated target {}", t + 1)));
            }
        }
        Ok(())
    }

    fn check_step(&self, step: &Step) -> Result<()> {
        match step {
            Step::Gate { gate, targets } | Step::IfGate { gate, targets, .. } => {
                self.check_targets(gate, targets)
            }
            Step::Measure { op, correction, .. } => {
                if op.n() != self.n {
                    return Err(Error::InvalidCircuit(format!(
                        "measured operator {op} has {} qubits, circuit has {}",
                        op.n(),
                        self.n
                    )));
                }
                if !op.is_hermitian() || op.is_identity_pattern() {
                    return Err(Error::InvalidCircuit(format!(
                        "measured operator {op} must be a non-identity Hermitian Pauli"
                    )));
                }
                if let Some(c) = correction {
                    if c.n() != self.n {
                        return Err(Error::InvalidCircuit(format!("correction {c} has wrong size")));
                    }
                    if c.commutes_with(op) {
                        return Err(Error::InvalidCircuit(format!(
                            "correction {c} must anticommute with measured {op}"
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// The total map of a circuit made only of gates.
    pub fn to_clifford(&self) -> Result<CliffordMap> {
        let mut acc = CliffordMap::identity(self.n);
        for step in &self.steps {
            match step {
                Step::Gate { gate, targets } => {
                    acc = acc.then(&gate.map().embed(self.n, targets)?)?;
                }
                _ => {
                    return Err(Error::InvalidCircuit(
                        "circuit contains measurements or classical control".into(),
                    ))
                }
            }
        }
        Ok(acc)
    }

    /// Number of gate steps (conditional ones included).
    pub fn gate_count(&self) -> usize {
        self.steps.iter().filter(|s| !matches!(s, Step::Measure { .. })).count()
    }
}

fn fmt_targets(t: &[usize]) -> String {
    t.iter().map(|q| (q + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn format_circ(c: &Circuit) -> String {
    let mut out = format!("QUBITS {}\n", c.n);
    for step in &c.steps {
        match step {
            Step::Gate { gate, targets } => {
                let _ = writeln!(out, "GATE {} {}", gate, fmt_targets(targets));
            }
            Step::Measure { op, correction, bit } => {
                out.push_str("MEASURE ");
                out.push_str(&op.to_string());
                if let Some(corr) = correction {
                    let _ = write!(out, " CORRECT {corr}");
                }
                if let Some(b) = bit {
                    let _ = write!(out, " -> b{b}");
                }
                out.push('\n');
            }
            Step::IfGate { bit, gate, targets } => {
                let _ = writeln!(out, "IF b{} GATE {} {}", bit, gate, fmt_targets(targets));
            }
        }
    }
    out
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_circ(self))
    }
}

fn parse_bit(tok: &str, line: usize) -> Result<usize> {
    tok.strip_prefix('b')
        .and_then(|b| b.parse().ok())
        .ok_or_else(|| Error::parse(Some(line), format!("expected a classical bit `b<k>`, got `{tok}`")))
}

fn parse_targets(toks: &[&str], line: usize) -> Result<Vec<usize>> {
    toks.iter()
        .map(|t| match t.parse::<usize>() {
            Ok(q) if q >= 1 => Ok(q - 1),
            _ => Err(Error::parse(Some(line), format!("bad qubit index `{t}`"))),
        })
        .collect()
}

pub fn parse_circ(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut pending: Vec<(usize, Step)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let err = |m: String| Error::parse(Some(line), m);
        match toks[0] {
            "QUBITS" => {
                if circuit.is_some() || !pending.is_empty() {
                    return Err(err("QUBITS must be the first statement".into()));
                }
                let n = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .filter(|&n: &usize| n >= 1 && toks.len() == 2)
                    .ok_or_else(|| err("expected `QUBITS <n>`".into()))?;
                circuit = Some(Circuit::new(n));
            }
            "GATE" => {
                if toks.len() < 3 {
                    return Err(err("expected `GATE <name> <targets>`".into()));
                }
                let gate = Gate::parse(toks[1]).map_err(|e| err(e.to_string()))?;
                pending.push((line, Step::Gate { gate, targets: parse_targets(&toks[2..], line)? }));
            }
            "IF" => {
                if toks.len() < 5 || toks[2] != "GATE" {
                    return Err(err("expected `IF b<k> GATE <name> <targets>`".into()));
                }
                let bit = parse_bit(toks[1], line)?;
                let gate = Gate::parse(toks[3]).map_err(|e| err(e.to_string()))?;
                pending.push((line, Step::IfGate { bit, gate, targets: parse_targets(&toks[4..], line)? }));
            }
            "MEASURE" => {
                let mut rest = &toks[1..];
                let op: PauliOperator = rest
                    .first()
                    .ok_or_else(|| err("expected a Pauli after MEASURE".into()))?
                    .parse()
                    .map_err(|e: Error| err(e.to_string()))?;
                rest = &rest[1..];
                let mut correction = None;
                if rest.first() == Some(&"CORRECT") {
                    let c: PauliOperator = rest
                        .get(1)
                        .ok_or_else(|| err("expected a Pauli after CORRECT".into()))?
                        .parse()
                        .map_err(|e: Error| err(e.to_string()))?;
                    correction = Some(c);
                    rest = &rest[2..];
                }
                let mut bit = None;
                if rest.first() == Some(&"->") {
                    bit = Some(parse_bit(rest.get(1).copied().unwrap_or(""), line)?);
                    rest = &rest[2.min(rest.len())..];
                }
                if !rest.is_empty() {
                    return Err(err(format!("unexpected `{}`", rest.join(" "))));
                }
                pending.push((line, Step::Measure { op, correction, bit }));
            }
            other => return Err(err(format!("unknown statement `{other}`"))),
        }
    }
    let mut circuit = match circuit {
        Some(c) => c,
        None => Circuit::new(infer_size(&pending).ok_or_else(|| Error::parse(None, "empty circuit"))?),
    };
    let mut defined = std::collections::HashSet::new();
    for (line, step) in pending {
        if let Step::IfGate { bit, .. } = &step {
            if !defined.contains(bit) {
                return Err(Error::parse(Some(line), format!("bit b{bit} used before it is measured")));
            }
        }
        if let Step::Measure { bit: Some(b), .. } = &step {
            defined.insert(*b);
        }
        circuit.push(step).map_err(|e| Error::parse(Some(line), e.to_string()))?;
    }
    Ok(circuit)
}

fn infer_size(steps: &[(usize, Step)]) -> Option<usize> {
    steps
        .iter()
        .map(|(_, s)| match s {
            Step::Measure { op, .. } => op.n(),
            Step::Gate { targets, .. } | Step::IfGate { targets, .. } => {
                targets.iter().max().map_or(0, |m| m + 1)
            }
        })
        .max()
        .filter(|&n| n > 0)
}
