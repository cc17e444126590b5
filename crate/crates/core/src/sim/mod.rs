//! Stabilizer-state simulation: pure states given by `n` independent,
//! commuting, signed Pauli generators, updated by Clifford gates and Pauli
//! measurements.
//!
//! Measurement follows the textbook case split. If `±A` is already in the
//! stabilizer the outcome is fixed and nothing changes. Otherwise `A`
//! anticommutes with some generator `M₁`; every other anticommuting `M_j` is
//! replaced by `M₁M_j`, the outcome is a fair coin, and `M₁` is replaced by
//! `±A`.

mod dense;
mod faults;
mod frame;

pub use dense::{DenseMeasurement, DenseState};
pub use faults::{fault_injection, propagate, Block, BlockLayout, FaultEntry, FaultReport, MAX_REDUCTION_N};
pub use frame::LogicalFrame;

use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::bits::BitVec;
use crate::clifford::{stabilizer_vector, CliffordMap, Circuit, Gate, Step, MAX_DENSE_N};
use crate::error::{Error, Result};
use crate::group::{symplectic_rank, PauliGroup};
use crate::pauli::PauliOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MeasurementRecord {
    /// `+1` or `-1`, as measured (before any correction).
    pub outcome: i8,
    pub deterministic: bool,
    /// A correction was applied because the outcome was `-1`.
    pub corrected: bool,
}

impl MeasurementRecord {
    pub fn is_minus(&self) -> bool {
        self.outcome < 0
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerState {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerState {
    /// The computational basis state `|b₁…b_n⟩`, stabilized by `(-1)^{b_j} Z_j`.
    pub fn basis_state(bits: &[bool]) -> Self {
        let n = bits.len();
        let generators = bits
            .iter()
            .enumerate()
            .map(|(j, &b)| {
                let z = PauliOperator::z_on(n, &[j]);
                if b { z.negated() } else { z }
            })
            .collect();
        Self { n, generators }
    }

    pub fn zero(n: usize) -> Self {
        Self::basis_state(&vec![false; n])
    }

    /// A state from explicit generators, checked for Hermiticity, pairwise
    /// commutation and full rank.
    pub fn from_generators(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        if generators.len() != n {
            return Err(Error::Invalid(format!("a state on {n} qubits needs {n} generators, got {}", generators.len())));
        }
        for g in &generators {
            if g.n() != n {
                return Err(Error::SizeMismatch { expected: n, found: g.n() });
            }
            if !g.is_hermitian() {
                return Err(Error::NotHermitian(g.to_string()));
            }
        }
        for (a, ga) in generators.iter().enumerate() {
            for gb in &generators[a + 1..] {
                if !ga.commutes_with(gb) {
                    return Err(Error::Invalid(format!("generators {ga} and {gb} anticommute")));
                }
            }
        }
        if symplectic_rank(&generators) != n {
            return Err(Error::Invalid("generators are not independent".into()));
        }
        Ok(Self { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    fn group(&self) -> PauliGroup {
        PauliGroup::new(self.n, &self.generators)
    }

    /// `Some(±1)` if `±p` stabilizes the state, `None` if `p` has a random
    /// outcome. `p` must be Hermitian.
    pub fn expectation(&self, p: &PauliOperator) -> Result<Option<i8>> {
        self.check_op(p)?;
        Ok(match self.group().decompose(p) {
            Some((_, 0)) => Some(1),
            Some((_, 2)) => Some(-1),
            Some((_, ph)) => unreachable!("Hermitian operators differ by ±1, got i^{ph}"),
            None => None,
        })
    }

    /// Whether `p` (with its sign) is in the stabilizer.
    pub fn stabilized_by(&self, p: &PauliOperator) -> bool {
        p.n() == self.n && self.group().contains(p)
    }

    fn check_op(&self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: p.n() });
        }
        if !p.is_hermitian() {
            return Err(Error::NotHermitian(p.to_string()));
        }
        Ok(())
    }

    /// Conjugates every generator by `c` acting on `targets`.
    pub fn apply_map(&mut self, c: &CliffordMap, targets: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.n];
        for &t in targets {
            if t >= self.n || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidCircuit(format!("bad targets {targets:?} for {} qubits", self.n)));
            }
        }
        for g in &mut self.generators {
            *g = c.apply_at(g, targets)?;
        }
        self.debug_check();
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate, targets: &[usize]) -> Result<()> {
        self.apply_map(gate.map(), targets)
    }

    /// Applies the Pauli operator `p` to the state (generators anticommuting
    /// with it flip sign).
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: p.n() });
        }
        for g in &mut self.generators {
            if !g.commutes_with(p) {
                *g = g.clone().negated();
            }
        }
        Ok(())
    }

    /// Projective measurement of the Hermitian Pauli `a`. One `bool` is drawn
    /// from `rng` per random outcome, none for deterministic ones.
    pub fn measure<R: Rng + ?Sized>(&mut self, a: &PauliOperator, rng: &mut R) -> Result<MeasurementRecord> {
        self.check_op(a)?;
        let anti: Vec<usize> = (0..self.n).filter(|&j| !self.generators[j].commutes_with(a)).collect();
        let Some((&pivot, rest)) = anti.split_first() else {
            let sign = self.expectation(a)?.expect("full-rank state fixes every commuting Pauli");
            return Ok(MeasurementRecord { outcome: sign, deterministic: true, corrected: false });
        };
        let m1 = self.generators[pivot].clone();
        for &j in rest {
            // M₁ and M_j commute, so the product stays Hermitian
            self.generators[j] = m1.multiply(&self.generators[j])?;
        }
        let minus = rng.gen::<bool>();
        self.generators[pivot] = if minus { a.clone().negated() } else { a.clone() };
        self.debug_check();
        Ok(MeasurementRecord { outcome: if minus { -1 } else { 1 }, deterministic: false, corrected: false })
    }

    /// Measures `a`; on `-1`, applies `correction` (which must anticommute
    /// with `a`) so that `+a` stabilizes the result either way.
    pub fn measure_and_correct<R: Rng + ?Sized>(
        &mut self,
        a: &PauliOperator,
        correction: &PauliOperator,
        rng: &mut R,
    ) -> Result<MeasurementRecord> {
        if correction.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: correction.n() });
        }
        if correction.commutes_with(a) {
            return Err(Error::InvalidCircuit(format!("correction {correction} must anticommute with {a}")));
        }
        let mut rec = self.measure(a, rng)?;
        if rec.is_minus() {
            self.apply_pauli(correction)?;
            rec.corrected = true;
        }
        debug_assert!(self.stabilized_by(a));
        Ok(rec)
    }

    /// Removes qubit `q`, which must be unentangled: some element of the
    /// stabilizer has to act on `q` alone.
    pub fn discard_qubit(&mut self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::Invalid(format!("qubit {} out of range", q + 1)));
        }
        let (idx, local) = isolate_qubit(&mut self.generators, q).ok_or(Error::Entangled(q))?;
        self.generators.remove(idx);
        for g in &mut self.generators {
            debug_assert!(g.letter(q) == 'I' || g.letter(q) == local);
            *g = g.remove_qubits(&[q]);
        }
        self.n -= 1;
        self.debug_check();
        Ok(())
    }

    /// Normalized amplitudes, with an arbitrary global phase.
    pub fn to_vector(&self) -> Result<DVector<Complex64>> {
        if self.n > MAX_DENSE_N {
            return Err(Error::TooLarge { what: "dense state", n: self.n, max: MAX_DENSE_N });
        }
        Ok(stabilizer_vector(self.n, &self.generators))
    }

    /// Runs every step of `circuit`. Measurement outcomes are stored as bits
    /// (`true` for `-1`) for steps that name one.
    pub fn run<R: Rng + ?Sized>(&mut self, circuit: &Circuit, rng: &mut R) -> Result<RunRecord> {
        if circuit.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: circuit.n() });
        }
        let mut out = RunRecord::default();
        for step in circuit.steps() {
            match step {
                Step::Gate { gate, targets } => self.apply_gate(gate, targets)?,
                Step::Measure { op, correction, bit } => {
                    let rec = match correction {
                        Some(c) => self.measure_and_correct(op, c, rng)?,
                        None => self.measure(op, rng)?,
                    };
                    out.store(*bit, rec.is_minus());
                    out.measurements.push(rec);
                }
                Step::IfGate { bit, gate, targets } => {
                    if out.bit(*bit)? {
                        self.apply_gate(gate, targets)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rows of the generator matrix in canonical reduced form, for comparing
    /// states as sets.
    pub fn canonical_generators(&self) -> Vec<PauliOperator> {
        canonical_form(self.n, &self.generators)
    }

    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            for (a, ga) in self.generators.iter().enumerate() {
                debug_assert!(ga.is_hermitian(), "{ga} not Hermitian");
                for gb in &self.generators[a + 1..] {
                    debug_assert!(ga.commutes_with(gb), "{ga} and {gb} anticommute");
                }
            }
            debug_assert_eq!(symplectic_rank(&self.generators), self.generators.len());
        }
    }
}

impl fmt::Display for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl fmt::Debug for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StabilizerState{self}")
    }
}

/// Outcomes of a circuit run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunRecord {
    pub measurements: Vec<MeasurementRecord>,
    pub bits: Vec<Option<bool>>,
}

impl RunRecord {
    fn store(&mut self, bit: Option<usize>, value: bool) {
        if let Some(b) = bit {
            if self.bits.len() <= b {
                self.bits.resize(b + 1, None);
            }
            self.bits[b] = Some(value);
        }
    }

    pub fn bit(&self, b: usize) -> Result<bool> {
        self.bits
            .get(b)
            .copied()
            .flatten()
            .ok_or_else(|| Error::InvalidCircuit(format!("classical bit {b} read before it was written")))
    }
}

/// Finds a group element supported on qubit `q` only, puts it in place of a
/// generator it depends on, and clears qubit `q` from every other generator.
/// Returns the slot index and the element's letter on `q`.
pub(crate) fn isolate_qubit(gens: &mut [PauliOperator], q: usize) -> Option<(usize, char)> {
    let n = gens.first()?.n();
    let group = PauliGroup::new(n, gens);
    for letter in ['X', 'Y', 'Z'] {
        let single = PauliOperator::single(n, q, letter);
        let Some((sel, _)) = group.decompose(&single) else { continue };
        let element = group.product(&sel);
        let slot = sel.first_one().expect("non-identity element uses a generator");
        gens[slot] = element.clone();
        for (j, g) in gens.iter_mut().enumerate() {
            if j != slot && g.letter(q) != 'I' {
                *g = element.multiply(g).expect("sizes match");
            }
        }
        return Some((slot, letter));
    }
    None
}

/// Reduced row echelon form of a generator list (phases carried along).
pub(crate) fn canonical_form(n: usize, gens: &[PauliOperator]) -> Vec<PauliOperator> {
    let mut rows = gens.to_vec();
    let mut r = 0;
    for col in 0..2 * n {
        let bit = |p: &PauliOperator| if col < n { p.x().get(col) } else { p.z().get(col - n) };
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i])) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row) {
                *row = pivot.multiply(row).expect("sizes match");
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Whether two generator lists generate the same signed group.
pub(crate) fn same_group(n: usize, a: &[PauliOperator], b: &[PauliOperator]) -> bool {
    let ga = PauliGroup::new(n, a);
    ga.rank() == symplectic_rank(b) && b.iter().all(|p| ga.contains(p))
}

impl StabilizerState {
    /// Equality as states: same signed stabilizer group.
    pub fn same_state(&self, other: &StabilizerState) -> bool {
        self.n == other.n && same_group(self.n, &self.generators, &other.generators)
    }
}

/// A random circuit of `gates` named gates and `measurements` Pauli
/// measurements on `n` qubits. About half of the measurements carry a
/// correction; some store a bit that later controls a Pauli gate.
pub fn random_circuit<R: Rng + ?Sized>(n: usize, gates: usize, measurements: usize, rng: &mut R) -> Circuit {
    const ONE: [&str; 10] = ["R", "P", "Pdg", "Q", "Qdg", "T", "T2", "X", "Y", "Z"];
    const TWO: [&str; 3] = ["CNOT", "CZ", "SWAP"];
    assert!(n >= 1);
    let mut c = Circuit::new(n);
    let total = gates + measurements;
    let mut meas_left = measurements;
    let mut bits = 0usize;
    let random_pauli = |rng: &mut R| loop {
        let x = BitVec::from_bools((0..n).map(|_| rng.gen::<bool>()));
        let z = BitVec::from_bools((0..n).map(|_| rng.gen::<bool>()));
        let p = PauliOperator::hermitian(x, z);
        if !p.is_identity_pattern() {
            return if rng.gen::<bool>() { p.negated() } else { p };
        }
    };
    for i in 0..total {
        let remaining = total - i;
        if meas_left > 0 && rng.gen_range(0..remaining) < meas_left {
            meas_left -= 1;
            let op = random_pauli(rng);
            let correction = if rng.gen::<bool>() {
                Some(loop {
                    let cand = random_pauli(rng);
                    if !cand.commutes_with(&op) {
                        break cand;
                    }
                })
            } else {
                None
            };
            let bit = rng.gen_bool(0.3).then(|| {
                bits += 1;
                bits - 1
            });
            c.push(Step::Measure { op, correction, bit }).expect("generated step is valid");
            continue;
        }
        if bits > 0 && rng.gen_bool(0.1) {
            let b = rng.gen_range(0..bits);
            let name = ["X", "Y", "Z"][rng.gen_range(0..3)];
            let q = rng.gen_range(0..n);
            c.if_gate(b, name, &[q]).expect("generated step is valid");
            continue;
        }
        let arity = if n >= 3 && rng.gen_bool(0.05) {
            3
        } else if n >= 2 && rng.gen_bool(0.4) {
            2
        } else {
            1
        };
        let name = match arity {
            1 => ONE[rng.gen_range(0..ONE.len())],
            2 => TWO[rng.gen_range(0..TWO.len())],
            _ => "T3",
        };
        let mut qs: Vec<usize> = (0..n).collect();
        qs.shuffle(rng);
        c.gate(name, &qs[..arity]).expect("generated step is valid");
    }
    c
}

#[cfg(test)]
mod tests;
