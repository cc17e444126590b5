//! Tracking how measurements and gates act on a set of logical operators.
//!
//! A frame is a stabilizer (fewer than `n` generators) plus logical
//! operators `X̄_i`, `Z̄_i` in its normalizer. Measuring `A` that anticommutes
//! with a generator `M₁` (outcome forced to `+1`) replaces `M₁` by `A` and
//! every tracked `N` that anticommutes with `A` by `M₁N`.

use std::fmt;

use super::isolate_qubit;
use crate::clifford::{Circuit, CliffordMap, Step};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::group::PauliGroup;
use crate::pauli::PauliOperator;

#[derive(Clone, PartialEq, Eq)]
pub struct LogicalFrame {
    n: usize,
    stabilizer: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
}

impl LogicalFrame {
    pub fn from_code(code: &StabilizerCode) -> Self {
        Self {
            n: code.n(),
            stabilizer: code.generators().to_vec(),
            logical_x: code.logical_x().to_vec(),
            logical_z: code.logical_z().to_vec(),
        }
    }

    pub fn new(
        n: usize,
        stabilizer: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self> {
        for p in stabilizer.iter().chain(&logical_x).chain(&logical_z) {
            if p.n() != n {
                return Err(Error::SizeMismatch { expected: n, found: p.n() });
            }
        }
        if logical_x.len() != logical_z.len() {
            return Err(Error::Invalid("logical X and Z lists differ in length".into()));
        }
        Ok(Self { n, stabilizer, logical_x, logical_z })
    }

    /// `data` qubits carrying `X_j`, `Z_j`, followed by ancillas each fixed
    /// by its own single-qubit stabilizer (e.g. `Z` for `|0⟩`).
    pub fn with_ancillas(data: usize, ancillas: &[PauliOperator]) -> Result<Self> {
        let n = data + ancillas.len();
        let mut stabilizer = Vec::new();
        for (j, a) in ancillas.iter().enumerate() {
            if a.n() != 1 || !a.is_hermitian() || a.is_identity_pattern() {
                return Err(Error::Invalid(format!("ancilla stabilizer {a} must be a one-qubit Hermitian Pauli")));
            }
            stabilizer.push(a.embed(n, &[data + j]));
        }
        Ok(Self {
            n,
            stabilizer,
            logical_x: (0..data).map(|j| PauliOperator::x_on(n, &[j])).collect(),
            logical_z: (0..data).map(|j| PauliOperator::z_on(n, &[j])).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stabilizer(&self) -> &[PauliOperator] {
        &self.stabilizer
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    fn tracked_mut(&mut self) -> impl Iterator<Item = &mut PauliOperator> {
        self.stabilizer.iter_mut().chain(self.logical_x.iter_mut()).chain(self.logical_z.iter_mut())
    }

    pub fn apply_map(&mut self, c: &CliffordMap, targets: &[usize]) -> Result<()> {
        for p in self.tracked_mut() {
            *p = c.apply_at(p, targets)?;
        }
        Ok(())
    }

    /// Applies a Pauli operator: tracked operators anticommuting with it flip sign.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: p.n() });
        }
        for t in self.tracked_mut() {
            if !t.commutes_with(p) {
                *t = t.clone().negated();
            }
        }
        Ok(())
    }

    /// Measures `a` with the outcome taken as `+1`.
    ///
    /// If `±a` is already in the stabilizer nothing changes. If `a` commutes
    /// with the stabilizer but is not in it, the measurement would reveal
    /// encoded information and [`Error::RevealsLogical`] is returned.
    pub fn measure(&mut self, a: &PauliOperator) -> Result<()> {
        if a.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: a.n() });
        }
        if !a.is_hermitian() {
            return Err(Error::NotHermitian(a.to_string()));
        }
        let anti: Vec<usize> =
            (0..self.stabilizer.len()).filter(|&j| !self.stabilizer[j].commutes_with(a)).collect();
        let Some((&pivot, rest)) = anti.split_first() else {
            if PauliGroup::new(self.n, &self.stabilizer).contains_pattern(a) {
                return Ok(());
            }
            return Err(Error::RevealsLogical(a.to_string()));
        };
        let m1 = self.stabilizer[pivot].clone();
        for &j in rest {
            self.stabilizer[j] = m1.multiply(&self.stabilizer[j])?;
        }
        for n in self.logical_x.iter_mut().chain(self.logical_z.iter_mut()) {
            if !n.commutes_with(a) {
                *n = m1.multiply(n)?;
            }
        }
        self.stabilizer[pivot] = a.clone();
        Ok(())
    }

    /// Measures `a` and applies `correction` whenever the outcome is `-1`.
    /// A random outcome is followed on its `+1` branch; a deterministic `-1`
    /// (`-a` already in the stabilizer) applies the correction to the frame.
    pub fn measure_and_correct(&mut self, a: &PauliOperator, correction: &PauliOperator) -> Result<()> {
        if correction.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: correction.n() });
        }
        if correction.commutes_with(a) {
            return Err(Error::InvalidCircuit(format!("correction {correction} must anticommute with {a}")));
        }
        let fixed_minus = self.stabilizer.iter().all(|g| g.commutes_with(a))
            && PauliGroup::new(self.n, &self.stabilizer).contains(&a.clone().negated());
        if fixed_minus {
            return self.apply_pauli(correction);
        }
        self.measure(a)
    }

    /// Drops qubit `q`; some stabilizer element must act on `q` alone.
    pub fn discard_qubit(&mut self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::Invalid(format!("qubit {} out of range", q + 1)));
        }
        if self.stabilizer.is_empty() {
            return Err(Error::Entangled(q));
        }
        let (slot, _) = isolate_qubit(&mut self.stabilizer, q).ok_or(Error::Entangled(q))?;
        let e = self.stabilizer.remove(slot);
        for n in self.logical_x.iter_mut().chain(self.logical_z.iter_mut()) {
            if n.letter(q) != 'I' {
                *n = e.multiply(n)?;
            }
            debug_assert_eq!(n.letter(q), 'I');
        }
        for p in self.tracked_mut() {
            *p = p.remove_qubits(&[q]);
        }
        self.n -= 1;
        Ok(())
    }

    /// Runs a circuit along the branch where every random outcome is `+1`.
    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: circuit.n() });
        }
        let mut bits: Vec<Option<bool>> = Vec::new();
        for step in circuit.steps() {
            match step {
                Step::Gate { gate, targets } => self.apply_map(gate.map(), targets)?,
                Step::Measure { op, correction, bit } => {
                    let group = PauliGroup::new(self.n, &self.stabilizer);
                    let minus = self.stabilizer.iter().all(|g| g.commutes_with(op))
                        && group.contains(&op.clone().negated());
                    match correction {
                        Some(c) => self.measure_and_correct(op, c)?,
                        None => self.measure(op)?,
                    }
                    if let Some(b) = *bit {
                        if bits.len() <= b {
                            bits.resize(b + 1, None);
                        }
                        bits[b] = Some(minus);
                    }
                }
                Step::IfGate { bit, gate, targets } => {
                    let set = bits.get(*bit).copied().flatten().ok_or_else(|| {
                        Error::InvalidCircuit(format!("classical bit {bit} read before it was written"))
                    })?;
                    if set {
                        self.apply_map(gate.map(), targets)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// With no stabilizer left, the tracked images form a Clifford map from
    /// the initial logical operators to the physical register.
    pub fn to_map(&self) -> Result<CliffordMap> {
        if !self.stabilizer.is_empty() || self.logical_x.len() != self.n {
            return Err(Error::Invalid(format!(
                "frame still has {} stabilizer generators on {} qubits",
                self.stabilizer.len(),
                self.n
            )));
        }
        CliffordMap::new(self.logical_x.clone(), self.logical_z.clone())
    }
}

impl fmt::Display for LogicalFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[PauliOperator]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "S = <{}>; X̄ = [{}]; Z̄ = [{}]",
            list(&self.stabilizer),
            list(&self.logical_x),
            list(&self.logical_z)
        )
    }
}

impl fmt::Debug for LogicalFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogicalFrame({self})")
    }
}
