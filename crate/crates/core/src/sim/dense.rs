//! State-vector oracle for small registers. Gates are applied through their
//! dense unitaries, measurements through the projectors `(I ± A)/2`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use super::{RunRecord, StabilizerState};
use crate::clifford::{apply_pauli_vec, to_unitary, CliffordMap, Circuit, Step, MAX_DENSE_N};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DenseMeasurement {
    /// Probability of the `+1` outcome before the measurement.
    pub p_plus: f64,
    pub outcome: i8,
    pub deterministic: bool,
    pub corrected: bool,
}

impl DenseMeasurement {
    pub fn is_minus(&self) -> bool {
        self.outcome < 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: DVector<Complex64>,
}

impl DenseState {
    pub fn basis_state(bits: &[bool]) -> Result<Self> {
        let n = bits.len();
        guard(n)?;
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        let mut amps = DVector::from_element(1 << n, Complex64::new(0.0, 0.0));
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_stabilizer(s: &StabilizerState) -> Result<Self> {
        Ok(Self { n: s.n(), amps: s.to_vector()? })
    }

    /// Wraps a vector of length `2^n`, normalizing it.
    pub fn from_vector(amps: DVector<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() {
            return Err(Error::Invalid(format!("vector length {dim} is not a power of two")));
        }
        let n = dim.trailing_zeros() as usize;
        guard(n)?;
        let norm = amps.norm();
        if norm < EPS {
            return Err(Error::Invalid("zero vector".into()));
        }
        Ok(Self { n, amps: amps / Complex64::new(norm, 0.0) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn apply_map(&mut self, c: &CliffordMap, targets: &[usize]) -> Result<()> {
        if targets.len() != c.n() || targets.iter().any(|&t| t >= self.n) {
            return Err(Error::InvalidCircuit(format!("bad targets {targets:?} for {} qubits", self.n)));
        }
        let u = to_unitary(c)?;
        self.apply_unitary(&u, targets);
        Ok(())
    }

    /// Applies a `2^k × 2^k` unitary to `targets` (first target is the most
    /// significant local bit).
    pub fn apply_unitary(&mut self, u: &DMatrix<Complex64>, targets: &[usize]) {
        let k = targets.len();
        let masks: Vec<usize> = targets.iter().map(|&t| 1usize << (self.n - 1 - t)).collect();
        let all = masks.iter().fold(0, |a, m| a | m);
        let local_index = |l: usize| -> usize {
            (0..k).filter(|&j| l >> (k - 1 - j) & 1 == 1).fold(0, |a, j| a | masks[j])
        };
        let offsets: Vec<usize> = (0..1usize << k).map(local_index).collect();
        let mut buf = DVector::from_element(1 << k, Complex64::new(0.0, 0.0));
        for base in 0..self.amps.len() {
            if base & all != 0 {
                continue;
            }
            for (l, off) in offsets.iter().enumerate() {
                buf[l] = self.amps[base | off];
            }
            let out = u * &buf;
            for (l, off) in offsets.iter().enumerate() {
                self.amps[base | off] = out[l];
            }
        }
    }

    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        self.check(p)?;
        self.amps = apply_pauli_vec(p, &self.amps);
        Ok(())
    }

    fn check(&self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: p.n() });
        }
        Ok(())
    }

    /// `⟨ψ|p|ψ⟩` for Hermitian `p`.
    pub fn expectation(&self, p: &PauliOperator) -> Result<f64> {
        self.check(p)?;
        if !p.is_hermitian() {
            return Err(Error::NotHermitian(p.to_string()));
        }
        Ok(self.amps.dotc(&apply_pauli_vec(p, &self.amps)).re)
    }

    /// Probability of `+1` when measuring `p`.
    pub fn probability_plus(&self, p: &PauliOperator) -> Result<f64> {
        Ok((1.0 + self.expectation(p)?) / 2.0)
    }

    /// Projects onto the `±1` eigenspace of `p` and renormalizes; returns the
    /// probability of that outcome.
    pub fn project(&mut self, p: &PauliOperator, minus: bool) -> Result<f64> {
        let p_plus = self.probability_plus(p)?;
        let prob = if minus { 1.0 - p_plus } else { p_plus };
        if prob < EPS {
            return Err(Error::Invalid(format!("outcome {} of {p} has probability 0", if minus { -1 } else { 1 })));
        }
        let pv = apply_pauli_vec(p, &self.amps);
        let sign = Complex64::new(if minus { -1.0 } else { 1.0 }, 0.0);
        let projected = (&self.amps + pv * sign) * Complex64::new(0.5, 0.0);
        self.amps = &projected / Complex64::new(projected.norm(), 0.0);
        Ok(prob)
    }

    /// Samples a measurement of `p`. Draws one `bool` from `rng` for an
    /// even split (matching the tableau simulator draw for draw), one `f64`
    /// for any other nontrivial split, nothing for a certain outcome.
    pub fn measure<R: Rng + ?Sized>(&mut self, p: &PauliOperator, rng: &mut R) -> Result<DenseMeasurement> {
        let p_plus = self.probability_plus(p)?;
        let (minus, deterministic) = if p_plus > 1.0 - EPS {
            (false, true)
        } else if p_plus < EPS {
            (true, true)
        } else if (p_plus - 0.5).abs() < EPS {
            (rng.gen::<bool>(), false)
        } else {
            (rng.gen::<f64>() >= p_plus, false)
        };
        self.project(p, minus)?;
        Ok(DenseMeasurement { p_plus, outcome: if minus { -1 } else { 1 }, deterministic, corrected: false })
    }

    pub fn measure_and_correct<R: Rng + ?Sized>(
        &mut self,
        p: &PauliOperator,
        correction: &PauliOperator,
        rng: &mut R,
    ) -> Result<DenseMeasurement> {
        let mut m = self.measure(p, rng)?;
        if m.is_minus() {
            self.apply_pauli(correction)?;
            m.corrected = true;
        }
        Ok(m)
    }

    /// Removes qubit `q` if the state factors as `|φ⟩_q ⊗ |χ⟩`.
    pub fn discard_qubit(&mut self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::Invalid(format!("qubit {} out of range", q + 1)));
        }
        let half = self.amps.len() / 2;
        let bit = 1usize << (self.n - 1 - q);
        // rest index r (n-1 bits) -> full index with bit q = v
        let full = |r: usize, v: usize| -> usize {
            let low = r & (bit - 1);
            let high = (r & !(bit - 1)) << 1;
            high | low | if v == 1 { bit } else { 0 }
        };
        let m = DMatrix::from_fn(2, half, |v, r| self.amps[full(r, v)]);
        let (col, _) = m
            .column_iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("nonempty");
        let phi = m.column(col).into_owned();
        let phi = &phi / Complex64::new(phi.norm(), 0.0);
        let chi = phi.adjoint() * &m;
        let residual = &m - &phi * &chi;
        if residual.norm() > 1e-8 {
            return Err(Error::Entangled(q));
        }
        self.amps = chi.transpose();
        self.n -= 1;
        Ok(())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &DenseState) -> f64 {
        if self.n != other.n {
            return 0.0;
        }
        self.amps.dotc(&other.amps).norm_sqr()
    }

    /// Runs a circuit with the same step semantics as the tableau simulator.
    pub fn run<R: Rng + ?Sized>(&mut self, circuit: &Circuit, rng: &mut R) -> Result<(Vec<DenseMeasurement>, RunRecord)> {
        if circuit.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: circuit.n() });
        }
        let mut rec = RunRecord::default();
        let mut out = Vec::new();
        for step in circuit.steps() {
            match step {
                Step::Gate { gate, targets } => self.apply_map(gate.map(), targets)?,
                Step::Measure { op, correction, bit } => {
                    let m = match correction {
                        Some(c) => self.measure_and_correct(op, c, rng)?,
                        None => self.measure(op, rng)?,
                    };
                    rec.store(*bit, m.is_minus());
                    out.push(m);
                }
                Step::IfGate { bit, gate, targets } => {
                    if rec.bit(*bit)? {
                        self.apply_map(gate.map(), targets)?;
                    }
                }
            }
        }
        Ok((out, rec))
    }
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_DENSE_N {
        return Err(Error::TooLarge { what: "dense state", n, max: MAX_DENSE_N });
    }
    Ok(())
}
