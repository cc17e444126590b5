//! Clifford maps: elements of the normalizer of the Pauli group, stored as
//! the images of `X_j` and `Z_j` under conjugation `P ↦ U P U†`.
//!
//! Maps carry no global phase. Two maps are equal iff their tables are equal,
//! phases of the images included.

mod circuit;
mod gatefile;
mod named;
mod synth;
mod unitary;

pub use circuit::{parse_circ, format_circ, Circuit, Gate, Step};
pub use gatefile::{format_gate_file, parse_gate_file};
pub use named::{
    gate_arity, named_gate, random_clifford, single_qubit_cliffords, single_qubit_name, OneQubitClass,
    NAMED_GATES,
};
pub use synth::synthesize;
pub use unitary::{equal_up_to_phase, pauli_matrix, to_unitary, MAX_DENSE_N};
pub(crate) use unitary::{apply_pauli_vec, stabilizer_vector};

use std::fmt;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::Gf2Basis;
use crate::pauli::PauliOperator;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordMap {
    n: usize,
    x_images: Vec<PauliOperator>,
    z_images: Vec<PauliOperator>,
}

impl CliffordMap {
    /// Builds a map and checks that the images are Hermitian and preserve
    /// all commutation relations.
    pub fn new(x_images: Vec<PauliOperator>, z_images: Vec<PauliOperator>) -> Result<Self> {
        let n = x_images.len();
        if z_images.len() != n {
            return Err(Error::InvalidMap(format!(
                "{} X images but {} Z images",
                n,
                z_images.len()
            )));
        }
        let map = Self { n, x_images, z_images };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x_images: (0..n).map(|j| PauliOperator::x_on(n, &[j])).collect(),
            z_images: (0..n).map(|j| PauliOperator::z_on(n, &[j])).collect(),
        }
    }

    /// Conjugation by a Pauli operator: `X_j` and `Z_j` pick up a sign when
    /// they anticommute with `p`.
    pub fn pauli_conjugation(p: &PauliOperator) -> Self {
        let mut c = Self::identity(p.n());
        for j in 0..p.n() {
            if p.z().get(j) {
                c.x_images[j] = c.x_images[j].clone().negated();
            }
            if p.x().get(j) {
                c.z_images[j] = c.z_images[j].clone().negated();
            }
        }
        c
    }

    /// Wire relabeling: qubit `q` moves to position `perm[q]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Self {
            n,
            x_images: perm.iter().map(|&p| PauliOperator::x_on(n, &[p])).collect(),
            z_images: perm.iter().map(|&p| PauliOperator::z_on(n, &[p])).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_images(&self) -> &[PauliOperator] {
        &self.x_images
    }

    pub fn z_images(&self) -> &[PauliOperator] {
        &self.z_images
    }

    pub fn x_image(&self, j: usize) -> &PauliOperator {
        &self.x_images[j]
    }

    pub fn z_image(&self, j: usize) -> &PauliOperator {
        &self.z_images[j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Checks sizes, Hermiticity of the images and the symplectic condition.
    pub fn validate(&self) -> Result<()> {
        let all: Vec<(String, &PauliOperator)> = self
            .x_images
            .iter()
            .enumerate()
            .map(|(j, p)| (format!("X{}", j + 1), p))
            .chain(self.z_images.iter().enumerate().map(|(j, p)| (format!("Z{}", j + 1), p)))
            .collect();
        for (label, p) in &all {
            if p.n() != self.n {
                return Err(Error::InvalidMap(format!(
                    "image of {label} has {} qubits, expected {}",
                    p.n(),
                    self.n
                )));
            }
            if !p.is_hermitian() {
                return Err(Error::InvalidMap(format!("image of {label} = {p} is not Hermitian")));
            }
        }
        // images must anticommute exactly for the pairs (X_j, Z_j)
        let m = all.len();
        for a in 0..m {
            for b in a + 1..m {
                let expect_anti = self.n > 0 && b == a + self.n;
                if all[a].1.commutes_with(all[b].1) == expect_anti {
                    return Err(Error::InvalidMap(format!(
                        "images of {} and {} should {}",
                        all[a].0,
                        all[b].0,
                        if expect_anti { "anticommute" } else { "commute" }
                    )));
                }
            }
        }
        Ok(())
    }

    /// `U p U†`.
    pub fn apply(&self, p: &PauliOperator) -> Result<PauliOperator> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: p.n() });
        }
        let mut acc = PauliOperator::identity(self.n).with_phase(p.phase());
        for j in p.x().ones() {
            acc.mul_assign_right(&self.x_images[j]);
        }
        for j in p.z().ones() {
            acc.mul_assign_right(&self.z_images[j]);
        }
        Ok(acc)
    }

    /// Image of `p` under this map placed on `targets` of `p`'s register,
    /// without building the embedded map.
    pub fn apply_at(&self, p: &PauliOperator, targets: &[usize]) -> Result<PauliOperator> {
        if targets.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: targets.len() });
        }
        if let Some(&t) = targets.iter().find(|&&t| t >= p.n()) {
            return Err(Error::Invalid(format!("target {t} out of range for {} qubits", p.n())));
        }
        // disjoint supports split without a phase in X-before-Z order
        let local = self.apply(&p.restrict(targets).with_phase(0))?;
        let mut out = p.clone();
        for (j, &t) in targets.iter().enumerate() {
            out.set_letter(t, local.letter(j));
        }
        Ok(out.with_phase((p.phase() + local.phase()) % 4))
    }

    /// `inner` first, then `outer`.
    pub fn compose(outer: &CliffordMap, inner: &CliffordMap) -> Result<CliffordMap> {
        if outer.n != inner.n {
            return Err(Error::SizeMismatch { expected: outer.n, found: inner.n });
        }
        let push = |v: &[PauliOperator]| -> Vec<PauliOperator> {
            v.iter().map(|p| outer.apply(p).expect("sizes checked")).collect()
        };
        Ok(CliffordMap { n: outer.n, x_images: push(&inner.x_images), z_images: push(&inner.z_images) })
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &CliffordMap) -> Result<CliffordMap> {
        Self::compose(next, self)
    }

    pub fn invert(&self) -> CliffordMap {
        let n = self.n;
        let images: Vec<BitVec> =
            self.x_images.iter().chain(&self.z_images).map(|p| p.symplectic()).collect();
        let basis = Gf2Basis::from_vectors(2 * n, &images);
        let preimage = |target: PauliOperator| -> PauliOperator {
            let combo = basis.solve(&target.symplectic()).expect("valid map is invertible");
            let x = BitVec::from_bools((0..n).map(|j| combo.get(j)));
            let z = BitVec::from_bools((0..n).map(|j| combo.get(n + j)));
            let q = PauliOperator::from_parts(x, z, 0);
            let got = self.apply(&q).expect("sizes match");
            q.times_i((4 + target.phase() - got.phase()) % 4)
        };
        CliffordMap {
            n,
            x_images: (0..n).map(|j| preimage(PauliOperator::x_on(n, &[j]))).collect(),
            z_images: (0..n).map(|j| preimage(PauliOperator::z_on(n, &[j]))).collect(),
        }
    }

    /// The map acting on `targets` of an `n`-qubit register, identity elsewhere.
    pub fn embed(&self, n: usize, targets: &[usize]) -> Result<CliffordMap> {
        if targets.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: targets.len() });
        }
        let mut seen = vec![false; n];
        for &t in targets {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(Error::Invalid(format!("bad target list {targets:?} for {n} qubits")));
            }
        }
        let mut out = CliffordMap::identity(n);
        for (j, &t) in targets.iter().enumerate() {
            out.x_images[t] = self.x_images[j].embed(n, targets);
            out.z_images[t] = self.z_images[j].embed(n, targets);
        }
        Ok(out)
    }

    /// `self ⊗ other`, with `self` on the first qubits.
    pub fn tensor(&self, other: &CliffordMap) -> CliffordMap {
        let (a, b) = (self.n, other.n);
        let left = |p: &PauliOperator| p.tensor(&PauliOperator::identity(b));
        let right = |p: &PauliOperator| PauliOperator::identity(a).tensor(p);
        CliffordMap {
            n: a + b,
            x_images: self.x_images.iter().map(left).chain(other.x_images.iter().map(right)).collect(),
            z_images: self.z_images.iter().map(left).chain(other.z_images.iter().map(right)).collect(),
        }
    }

    /// Table rows in `.gate` syntax, X rows first.
    pub fn table_lines(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.x_images.iter().enumerate().map(|(j, p)| format!("X{} -> {}", j + 1, p)).collect();
        out.extend(self.z_images.iter().enumerate().map(|(j, p)| format!("Z{} -> {}", j + 1, p)));
        out
    }

    pub(crate) fn from_images_unchecked(x_images: Vec<PauliOperator>, z_images: Vec<PauliOperator>) -> Self {
        Self { n: x_images.len(), x_images, z_images }
    }
}

impl fmt::Display for CliffordMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.table_lines().join(", "))
    }
}

impl fmt::Debug for CliffordMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordMap[{self}]")
    }
}
