//! Stabilizer codes: generators, logical operators, syndromes, normalizer
//! membership, logical decomposition, distance and CSS structure.

mod builtin;
mod file;
mod random;

pub use builtin::{builtin_code, distance2, eight_qubit, five_qubit, steane7, trivial, BUILTIN_NAMES};
pub use file::{format_stab, parse_stab};
pub use random::random_code;

use std::fmt;

use serde::Serialize;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::group::{self, PauliGroup};
use crate::pauli::PauliOperator;

/// Largest `n` accepted by [`StabilizerCode::distance`].
pub const MAX_DISTANCE_N: usize = 14;
/// Largest sector rank enumerated by the doubly-even check.
pub const MAX_SECTOR_RANK: usize = 20;

/// An `[[n, k]]` stabilizer code with an explicit logical frame.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    group: PauliGroup,
}

impl PartialEq for StabilizerCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.generators == other.generators
            && self.logical_x == other.logical_x
            && self.logical_z == other.logical_z
    }
}

impl StabilizerCode {
    /// Assembles a code. Only shapes are checked here; the algebraic
    /// invariants are reported by [`StabilizerCode::validate`].
    pub fn new(
        n: usize,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self> {
        for p in generators.iter().chain(&logical_x).chain(&logical_z) {
            if p.n() != n {
                return Err(Error::SizeMismatch { expected: n, found: p.n() });
            }
        }
        if logical_x.len() != logical_z.len() {
            return Err(Error::InvalidCode(format!(
                "{} logical X operators but {} logical Z operators",
                logical_x.len(),
                logical_z.len()
            )));
        }
        let group = PauliGroup::new(n, &generators);
        Ok(Self { n, generators, logical_x, logical_z, group })
    }

    /// Builds a code from generators alone, deriving a logical frame.
    pub fn from_generators(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        let (lx, lz) = derive_logical_frame(n, &generators)?;
        Self::new(n, generators, lx, lz)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn stabilizer_group(&self) -> &PauliGroup {
        &self.group
    }

    fn check_size(&self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: p.n() });
        }
        Ok(())
    }

    /// Checks every structural invariant and lists the violated ones.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let gens = &self.generators;
        let expected = self.n.checked_sub(self.k());
        if expected != Some(gens.len()) {
            v.push(Violation::GeneratorCount {
                expected: expected.unwrap_or(0),
                found: gens.len(),
            });
        }
        for (i, g) in gens.iter().enumerate() {
            if !g.is_hermitian() {
                v.push(Violation::NotHermitian { label: format!("M{}", i + 1), op: g.to_string() });
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if !gens[i].commutes_with(&gens[j]) {
                    v.push(Violation::Anticommute {
                        a: format!("M{}", i + 1),
                        b: format!("M{}", j + 1),
                    });
                }
            }
        }
        let rank = self.group.rank();
        if rank < gens.len() {
            v.push(Violation::Dependent { rank, count: gens.len() });
        }
        let labelled: Vec<(String, &PauliOperator)> = self
            .logical_x
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("X{}", i + 1), p))
            .chain(self.logical_z.iter().enumerate().map(|(i, p)| (format!("Z{}", i + 1), p)))
            .collect();
        for (label, p) in &labelled {
            if !p.is_hermitian() {
                v.push(Violation::NotHermitian { label: label.clone(), op: p.to_string() });
            }
            for (j, g) in gens.iter().enumerate() {
                if !p.commutes_with(g) {
                    v.push(Violation::Anticommute { a: label.clone(), b: format!("M{}", j + 1) });
                }
            }
        }
        let k = self.k();
        for i in 0..k {
            for j in 0..k {
                let xz = self.logical_x[i].commutes_with(&self.logical_z[j]);
                if i == j && xz {
                    v.push(Violation::LogicalPairCommutes { index: i + 1 });
                }
                if i != j && !xz {
                    v.push(Violation::Anticommute {
                        a: format!("X{}", i + 1),
                        b: format!("Z{}", j + 1),
                    });
                }
                if i < j {
                    if !self.logical_x[i].commutes_with(&self.logical_x[j]) {
                        v.push(Violation::Anticommute {
                            a: format!("X{}", i + 1),
                            b: format!("X{}", j + 1),
                        });
                    }
                    if !self.logical_z[i].commutes_with(&self.logical_z[j]) {
                        v.push(Violation::Anticommute {
                            a: format!("Z{}", i + 1),
                            b: format!("Z{}", j + 1),
                        });
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    /// Bit `i` is set iff `e` anticommutes with generator `i`.
    pub fn syndrome(&self, e: &PauliOperator) -> Result<Syndrome> {
        self.check_size(e)?;
        Ok(Syndrome(BitVec::from_bools(self.generators.iter().map(|g| !g.commutes_with(e)))))
    }

    /// If `p = i^φ · (product of generators)`, returns `φ`.
    pub fn in_stabilizer(&self, p: &PauliOperator) -> Result<Option<u8>> {
        self.check_size(p)?;
        Ok(self.group.decompose(p).map(|(_, phase)| phase))
    }

    pub fn in_normalizer(&self, p: &PauliOperator) -> Result<bool> {
        self.check_size(p)?;
        Ok(self.generators.iter().all(|g| g.commutes_with(p)))
    }

    /// Writes a normalizer element as `i^φ · ∏X̄^x ∏Z̄^z · (product of generators)`.
    pub fn reduce_logical(&self, p: &PauliOperator) -> Result<LogicalDecomposition> {
        if !self.in_normalizer(p)? {
            return Err(Error::NotInNormalizer(p.to_string()));
        }
        let k = self.k();
        let lx = BitVec::from_bools(self.logical_z.iter().map(|zl| !p.commutes_with(zl)));
        let lz = BitVec::from_bools(self.logical_x.iter().map(|xl| !p.commutes_with(xl)));
        let frame = self.logical_product(&lx, &lz);
        let residue = PauliOperator::from_parts(p.x().xor(frame.x()), p.z().xor(frame.z()), 0);
        let (selection, _) = self.group.decompose(&residue).ok_or_else(|| {
            Error::InvalidCode(format!(
                "{p} commutes with the stabilizer but is not resolved by the logical frame"
            ))
        })?;
        let assembled = &frame * &self.group.product(&selection);
        debug_assert!(assembled.eq_up_to_phase(p));
        let phase = (4 + p.phase() - assembled.phase()) % 4;
        let logical = PauliOperator::from_parts(lx, lz, phase);
        debug_assert_eq!(logical.n(), k);
        Ok(LogicalDecomposition { logical, stabilizer_part: selection })
    }

    /// `∏ X̄_i^{x_i} · ∏ Z̄_i^{z_i}` in index order, phase 0 prefactor.
    pub fn logical_product(&self, x: &BitVec, z: &BitVec) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.n);
        for i in x.ones() {
            acc.mul_assign_right(&self.logical_x[i]);
        }
        for i in z.ones() {
            acc.mul_assign_right(&self.logical_z[i]);
        }
        acc
    }

    /// Physical representative of a logical Pauli on the `k` encoded qubits.
    pub fn encode_logical(&self, logical: &PauliOperator) -> PauliOperator {
        assert_eq!(logical.n(), self.k());
        self.logical_product(logical.x(), logical.z()).times_i(logical.phase())
    }

    /// Minimum weight of a nontrivial logical operator, by exhaustive search
    /// in order of increasing weight.
    pub fn distance(&self) -> Result<usize> {
        if self.n > MAX_DISTANCE_N {
            return Err(Error::TooLarge { what: "distance", n: self.n, max: MAX_DISTANCE_N });
        }
        if self.k() == 0 {
            return Err(Error::InvalidCode("distance is undefined for k = 0".into()));
        }
        let rows: Vec<BitVec> = self.generators.iter().map(group::commutation_row).collect();
        let n = self.n;
        for w in 1..=n {
            let mut found = false;
            for_each_combination(n, w, &mut |support| {
                // 3^w choices of X, Y, Z on the support
                let total = 3usize.pow(w as u32);
                for mut code in 0..total {
                    let mut x = BitVec::zeros(n);
                    let mut z = BitVec::zeros(n);
                    for &q in support {
                        match code % 3 {
                            0 => x.set(q, true),
                            1 => {
                                x.set(q, true);
                                z.set(q, true)
                            }
                            _ => z.set(q, true),
                        }
                        code /= 3;
                    }
                    let v = x.concat(&z);
                    if rows.iter().all(|r| !r.dot(&v))
                        && !self.group.contains_pattern(&PauliOperator::from_parts(x, z, 0))
                    {
                        return true;
                    }
                }
                false
            }, &mut found);
            if found {
                return Ok(w);
            }
        }
        Err(Error::InvalidCode("no nontrivial logical operator found".into()))
    }

    /// The X-only and Z-only sectors, when the stabilizer is their direct
    /// product with every sector element carrying sign `+1`.
    pub fn css_structure(&self) -> Option<CssStructure> {
        let mut x_parts = Vec::new();
        let mut z_parts = Vec::new();
        for g in &self.generators {
            let xp = PauliOperator::from_parts(g.x().clone(), BitVec::zeros(self.n), 0);
            let zp = PauliOperator::from_parts(BitVec::zeros(self.n), g.z().clone(), 0);
            if !self.group.contains(&xp) || !self.group.contains(&zp) {
                return None;
            }
            x_parts.push(xp);
            z_parts.push(zp);
        }
        let x_sector = independent_subset(self.n, x_parts);
        let z_sector = independent_subset(self.n, z_parts);
        if x_sector.len() + z_sector.len() != self.group.rank() {
            return None;
        }
        Some(CssStructure { x_sector, z_sector })
    }

    /// Self-duality (X sector rows span the same space as Z sector rows) and
    /// doubly-evenness (every X-sector element has weight divisible by 4).
    pub fn doubly_even_self_dual_check(&self) -> Result<CssReport> {
        let css = self
            .css_structure()
            .ok_or_else(|| Error::InvalidCode("code is not of CSS type".into()))?;
        let r = css.x_sector.len();
        if r > MAX_SECTOR_RANK {
            return Err(Error::TooLarge { what: "X-sector enumeration", n: r, max: MAX_SECTOR_RANK });
        }
        let xs: Vec<BitVec> = css.x_sector.iter().map(|p| p.x().clone()).collect();
        let zs: Vec<BitVec> = css.z_sector.iter().map(|p| p.z().clone()).collect();
        let self_dual = same_span(self.n, &xs, &zs);
        let mut doubly_even = true;
        for mask in 0u64..(1u64 << r) {
            let mut acc = BitVec::zeros(self.n);
            for (i, row) in xs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc.xor_assign(row);
                }
            }
            if acc.count_ones() % 4 != 0 {
                doubly_even = false;
                break;
            }
        }
        Ok(CssReport { self_dual, doubly_even })
    }

    /// Direct product of two codes on disjoint registers (`self` first).
    pub fn tensor(&self, other: &StabilizerCode) -> StabilizerCode {
        let (a, b) = (self.n, other.n);
        let left = |p: &PauliOperator| p.tensor(&PauliOperator::identity(b));
        let right = |p: &PauliOperator| PauliOperator::identity(a).tensor(p);
        let gens = self.generators.iter().map(left).chain(other.generators.iter().map(right));
        let lx = self.logical_x.iter().map(left).chain(other.logical_x.iter().map(right));
        let lz = self.logical_z.iter().map(left).chain(other.logical_z.iter().map(right));
        StabilizerCode::new(a + b, gens.collect(), lx.collect(), lz.collect())
            .expect("tensor of well-formed codes is well-formed")
    }

    /// `m` copies of the code, block-major.
    pub fn power(&self, m: usize) -> StabilizerCode {
        assert!(m >= 1);
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.tensor(self);
        }
        acc
    }

    /// Makes every Hermitian generator's sign `+1` by conjugating the whole
    /// code with a Pauli that anticommutes with exactly the negative ones;
    /// logical operators are conjugated along with them.
    pub fn normalize_signs(&self) -> Result<StabilizerCode> {
        let negative = BitVec::from_bools(
            self.generators
                .iter()
                .map(|g| g.is_hermitian() && g.phase() != (g.x().and_count(g.z()) % 2) as u8),
        );
        if negative.is_zero() {
            return Ok(self.clone());
        }
        let flip = group::find_with_commutation(self.n, &self.generators, &negative)
            .ok_or_else(|| Error::InvalidCode("generator signs cannot be normalized".into()))?;
        let conj = |p: &PauliOperator| {
            if p.commutes_with(&flip) {
                p.clone()
            } else {
                p.clone().negated()
            }
        };
        StabilizerCode::new(
            self.n,
            self.generators.iter().map(conj).collect(),
            self.logical_x.iter().map(conj).collect(),
            self.logical_z.iter().map(conj).collect(),
        )
    }

    /// Same code with the generators replaced by an echelon-form basis of the
    /// same group (signs kept exact).
    pub fn row_reduced(&self) -> StabilizerCode {
        let mut rows: Vec<PauliOperator> = self.generators.clone();
        let ncols = 2 * self.n;
        let mut r = 0;
        for c in 0..ncols {
            let bit = |p: &PauliOperator| {
                if c < self.n {
                    p.x().get(c)
                } else {
                    p.z().get(c - self.n)
                }
            };
            let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i])) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && bit(row) {
                    row.mul_assign_right(&pivot);
                }
            }
            r += 1;
        }
        StabilizerCode::new(self.n, rows, self.logical_x.clone(), self.logical_z.clone())
            .expect("row reduction keeps shapes")
    }
}

/// Calls `f` on each `w`-subset of `0..n` (ascending) until it returns true.
fn for_each_combination(
    n: usize,
    w: usize,
    f: &mut dyn FnMut(&[usize]) -> bool,
    found: &mut bool,
) {
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        if f(&idx) {
            *found = true;
            return;
        }
        // advance to the next combination
        let mut i = w;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - w + i {
                idx[i] += 1;
                for j in i + 1..w {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return;
            }
        }
    }
}

fn independent_subset(n: usize, ops: Vec<PauliOperator>) -> Vec<PauliOperator> {
    let mut basis = crate::gf2::Gf2Basis::new(2 * n, ops.len());
    ops.into_iter().filter(|p| basis.insert(p.symplectic())).collect()
}

fn same_span(n: usize, a: &[BitVec], b: &[BitVec]) -> bool {
    let ba = crate::gf2::Gf2Basis::from_vectors(n, a);
    let bb = crate::gf2::Gf2Basis::from_vectors(n, b);
    ba.rank() == bb.rank() && b.iter().all(|v| ba.contains(v)) && a.iter().all(|v| bb.contains(v))
}

/// Derives logical X̄/Z̄ operators for independent commuting generators.
///
/// The normalizer is computed as the commutant of the generators, reduced
/// modulo the stabilizer, and split into anticommuting pairs by symplectic
/// Gram-Schmidt in basis order: the first remaining vector becomes `Z̄_i`,
/// the first later vector anticommuting with it becomes `X̄_i`.
pub fn derive_logical_frame(
    n: usize,
    generators: &[PauliOperator],
) -> Result<(Vec<PauliOperator>, Vec<PauliOperator>)> {
    for (i, a) in generators.iter().enumerate() {
        if a.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: a.n() });
        }
        for b in &generators[i + 1..] {
            if !a.commutes_with(b) {
                return Err(Error::InvalidCode(format!("generators {a} and {b} anticommute")));
            }
        }
    }
    let stab = PauliGroup::new(n, generators);
    if stab.rank() != generators.len() {
        return Err(Error::InvalidCode("generators are not independent".into()));
    }
    let mut span = crate::gf2::Gf2Basis::new(2 * n, generators.len() + 2 * n);
    for g in generators {
        span.insert(g.symplectic());
    }
    let mut candidates: Vec<BitVec> = Vec::new();
    for v in group::commutant_basis(n, generators) {
        let reduced = span.residue(&v);
        if span.insert(reduced.clone()) {
            candidates.push(reduced);
        }
    }
    let symp = |a: &BitVec, b: &BitVec| {
        let pa = PauliOperator::from_symplectic(a, 0);
        let pb = PauliOperator::from_symplectic(b, 0);
        !pa.commutes_with(&pb)
    };
    let mut lx = Vec::new();
    let mut lz = Vec::new();
    while !candidates.is_empty() {
        let a = candidates.remove(0);
        let j = candidates
            .iter()
            .position(|b| symp(&a, b))
            .ok_or_else(|| Error::InvalidCode("degenerate normalizer".into()))?;
        let b = candidates.remove(j);
        for v in candidates.iter_mut() {
            let (va, vb) = (symp(v, &a), symp(v, &b));
            if vb {
                v.xor_assign(&a);
            }
            if va {
                v.xor_assign(&b);
            }
        }
        let to_op = |v: &BitVec| {
            let p = PauliOperator::from_symplectic(v, 0);
            PauliOperator::hermitian(p.x().clone(), p.z().clone())
        };
        lz.push(to_op(&a));
        lx.push(to_op(&b));
    }
    Ok((lx, lz))
}

/// Violated code invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    GeneratorCount { expected: usize, found: usize },
    NotHermitian { label: String, op: String },
    Anticommute { a: String, b: String },
    Dependent { rank: usize, count: usize },
    LogicalPairCommutes { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GeneratorCount { expected, found } => {
                write!(f, "expected n-k = {expected} generators, found {found}")
            }
            Violation::NotHermitian { label, op } => write!(f, "{label} = {op} is not Hermitian"),
            Violation::Anticommute { a, b } => write!(f, "{a} and {b} anticommute"),
            Violation::Dependent { rank, count } => {
                write!(f, "generators are dependent (rank {rank} < {count})")
            }
            Violation::LogicalPairCommutes { index } => {
                write!(f, "X{index} and Z{index} commute")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Syndrome(pub BitVec);

impl Syndrome {
    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({})", self.0)
    }
}

/// `p = logical.phase · ∏X̄^x ∏Z̄^z · ∏(selected generators)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalDecomposition {
    /// Logical Pauli on the `k` encoded qubits, carrying the phase.
    pub logical: PauliOperator,
    pub stabilizer_part: BitVec,
}

impl LogicalDecomposition {
    pub fn phase(&self) -> u8 {
        self.logical.phase()
    }

    pub fn reassemble(&self, code: &StabilizerCode) -> PauliOperator {
        let frame = code.logical_product(self.logical.x(), self.logical.z());
        (&frame * &code.stabilizer_group().product(&self.stabilizer_part)).times_i(self.phase())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssStructure {
    pub x_sector: Vec<PauliOperator>,
    pub z_sector: Vec<PauliOperator>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CssReport {
    pub self_dual: bool,
    pub doubly_even: bool,
}

#[cfg(test)]
mod tests;
