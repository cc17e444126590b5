//! Phase-tracked Pauli operators on `n` qubits.
//!
//! An operator is stored as `i^phase · X^x · Z^z`, with every X factor to the
//! left of every Z factor. On a single qubit `Y` is the real matrix
//! `X·Z = [[0, -1], [1, 0]]`, so a stored `Y` carries no phase of its own and
//! the Hermitian `σ_y` is written `iY`. An operator is Hermitian exactly when
//! `phase ≡ |x ∧ z| (mod 2)`.
//!
//! Text form is an optional sign token (`""`, `"-"`, `"i"`, `"-i"`) followed by
//! one letter from `IXYZ` per qubit, qubit 1 first: `"XZZXI"`, `"-iY"`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self { x: BitVec::zeros(n), z: BitVec::zeros(n), phase: 0 }
    }

    /// Builds `i^phase · X^x · Z^z`.
    pub fn from_parts(x: BitVec, z: BitVec, phase: u8) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts must have equal length");
        Self { x, z, phase: phase % 4 }
    }

    /// The Hermitian operator with the given pattern and sign `+1`
    /// (phase `|x ∧ z| mod 2`, so that e.g. a lone `Y` becomes `iY`).
    pub fn hermitian(x: BitVec, z: BitVec) -> Self {
        let phase = (x.and_count(&z) % 2) as u8;
        Self::from_parts(x, z, phase)
    }

    /// A single-qubit letter (`I`, `X`, `Y`, `Z`) placed on qubit `q`, phase 0.
    pub fn single(n: usize, q: usize, letter: char) -> Self {
        let mut p = Self::identity(n);
        p.set_letter(q, letter);
        p
    }

    pub fn x_on(n: usize, qubits: &[usize]) -> Self {
        Self::from_parts(BitVec::from_ones(n, qubits), BitVec::zeros(n), 0)
    }

    pub fn z_on(n: usize, qubits: &[usize]) -> Self {
        Self::from_parts(BitVec::zeros(n), BitVec::from_ones(n, qubits), 0)
    }

    /// Inverse of [`PauliOperator::symplectic`].
    pub fn from_symplectic(v: &BitVec, phase: u8) -> Self {
        assert!(v.len() % 2 == 0);
        let n = v.len() / 2;
        let x = BitVec::from_bools((0..n).map(|i| v.get(i)));
        let z = BitVec::from_bools((n..2 * n).map(|i| v.get(i)));
        Self::from_parts(x, z, phase)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// `(x | z)` as one vector of length `2n`.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    /// Overwrites qubit `q`'s factor; the phase is left alone.
    pub fn set_letter(&mut self, q: usize, letter: char) {
        let (xb, zb) = match letter {
            'I' => (false, false),
            'X' => (true, false),
            'Y' => (true, true),
            'Z' => (false, true),
            other => panic!("not a Pauli letter: {other:?}"),
        };
        self.x.set(q, xb);
        self.z.set(q, zb);
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    /// Multiplies by `i^k`.
    pub fn times_i(mut self, k: u8) -> Self {
        self.phase = (self.phase + k) % 4;
        self
    }

    pub fn negated(self) -> Self {
        self.times_i(2)
    }

    pub fn weight(&self) -> usize {
        self.x.or_count(&self.z)
    }

    /// Qubits where the operator acts nontrivially.
    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).ones().collect()
    }

    pub fn is_identity_pattern(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Identity with phase 0.
    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.is_identity_pattern()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize) % 2 == self.x.and_count(&self.z) % 2
    }

    /// Equality of the X/Z pattern, ignoring the phase.
    pub fn eq_up_to_phase(&self, other: &PauliOperator) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Checked group product `self · rhs`.
    pub fn multiply(&self, rhs: &PauliOperator) -> Result<PauliOperator> {
        check_sizes(self, rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &PauliOperator) -> PauliOperator {
        // X^a Z^b · X^c Z^d = (-1)^{b·c} X^{a+c} Z^{b+d}
        let sign = if self.z.dot(&rhs.x) { 2 } else { 0 };
        PauliOperator {
            x: self.x.xor(&rhs.x),
            z: self.z.xor(&rhs.z),
            phase: (self.phase + rhs.phase + sign) % 4,
        }
    }

    /// In-place `self ← self · rhs`.
    pub fn mul_assign_right(&mut self, rhs: &PauliOperator) {
        assert_eq!(self.n(), rhs.n(), "Pauli size mismatch");
        let sign = if self.z.dot(&rhs.x) { 2 } else { 0 };
        self.x.xor_assign(&rhs.x);
        self.z.xor_assign(&rhs.z);
        self.phase = (self.phase + rhs.phase + sign) % 4;
    }

    /// Checked commutation test.
    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        check_sizes(self, other)?;
        Ok(self.commutes_with(other))
    }

    /// Commutation test for operators already known to have equal size.
    #[inline]
    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }

    /// `self ⊗ other` on `self.n() + other.n()` qubits.
    pub fn tensor(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) % 4,
        }
    }

    /// Restriction to the listed qubits, keeping the phase.
    pub fn restrict(&self, qubits: &[usize]) -> PauliOperator {
        PauliOperator { x: self.x.select(qubits), z: self.z.select(qubits), phase: self.phase }
    }

    /// Places this operator on `targets` of an `n`-qubit register.
    pub fn embed(&self, n: usize, targets: &[usize]) -> PauliOperator {
        assert_eq!(targets.len(), self.n());
        let mut out = PauliOperator::identity(n);
        for (local, &t) in targets.iter().enumerate() {
            out.x.set(t, self.x.get(local));
            out.z.set(t, self.z.get(local));
        }
        out.phase = self.phase;
        out
    }

    /// Drops the listed qubits, keeping the phase.
    pub fn remove_qubits(&self, drop: &[usize]) -> PauliOperator {
        let keep: Vec<usize> = (0..self.n()).filter(|q| !drop.contains(q)).collect();
        self.restrict(&keep)
    }

    /// Relabels qubits so that qubit `q` moves to `perm[q]`.
    pub fn permute(&self, perm: &[usize]) -> PauliOperator {
        assert_eq!(perm.len(), self.n());
        let mut out = PauliOperator::identity(self.n());
        for (q, &dest) in perm.iter().enumerate() {
            out.x.set(dest, self.x.get(q));
            out.z.set(dest, self.z.get(q));
        }
        out.phase = self.phase;
        out
    }

    fn sign_token(&self) -> &'static str {
        match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        }
    }

    /// Letters only, no sign token.
    pub fn pattern_string(&self) -> String {
        (0..self.n()).map(|q| self.letter(q)).collect()
    }
}

fn check_sizes(a: &PauliOperator, b: &PauliOperator) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch { expected: a.n(), found: b.n() });
    }
    Ok(())
}

impl Mul for &PauliOperator {
    type Output = PauliOperator;

    /// Panics on a size mismatch; use [`PauliOperator::multiply`] for a checked product.
    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        assert_eq!(self.n(), rhs.n(), "Pauli size mismatch");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign_token(), self.pattern_string())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (mut phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3u8, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::parse(None, format!("empty Pauli string `{s}`")));
        }
        let mut x = BitVec::zeros(0);
        let mut z = BitVec::zeros(0);
        for c in body.chars() {
            let (xb, zb) = match c {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                other => {
                    return Err(Error::parse(
                        None,
                        format!("invalid character {other:?} in Pauli string `{s}`"),
                    ))
                }
            };
            x.push(xb);
            z.push(zb);
        }
        phase %= 4;
        Ok(PauliOperator { x, z, phase })
    }
}

/// Parses a Pauli string, panicking on malformed input. Meant for literals.
pub fn pauli(s: &str) -> PauliOperator {
    s.parse().unwrap_or_else(|e| panic!("bad Pauli literal `{s}`: {e}"))
}

/// All `4^n` phase-0 patterns on `n` qubits, in a fixed order.
pub fn all_patterns(n: usize) -> impl Iterator<Item = PauliOperator> {
    assert!(n <= 16, "pattern enumeration limited to 16 qubits");
    (0u64..(1u64 << (2 * n))).map(move |code| {
        let x = BitVec::from_u64(n, code & ((1u64 << n) - 1));
        let z = BitVec::from_u64(n, code >> n);
        PauliOperator::from_parts(x, z, 0)
    })
}
