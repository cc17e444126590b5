//! Subgroups of the Pauli group given by generators: membership with exact
//! phase bookkeeping, and solving for operators with prescribed commutation.

use crate::bits::BitVec;
use crate::gf2::{self, Gf2Basis};
use crate::pauli::PauliOperator;

/// The group generated by a list of Pauli operators.
///
/// Membership is decided on the symplectic (phaseless) vectors; the phase of a
/// member relative to the generator product is recovered by multiplying the
/// selected generators in index order.
#[derive(Clone, Debug)]
pub struct PauliGroup {
    n: usize,
    generators: Vec<PauliOperator>,
    basis: Gf2Basis,
}

impl PauliGroup {
    pub fn new(n: usize, generators: &[PauliOperator]) -> Self {
        for g in generators {
            assert_eq!(g.n(), n, "generator size mismatch");
        }
        let vecs: Vec<BitVec> = generators.iter().map(|g| g.symplectic()).collect();
        Self { n, generators: generators.to_vec(), basis: Gf2Basis::from_vectors(2 * n, &vecs) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// GF(2) rank of the generators.
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// Ordered product of the selected generators.
    pub fn product(&self, selection: &BitVec) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.n);
        for i in selection.ones() {
            acc.mul_assign_right(&self.generators[i]);
        }
        acc
    }

    /// If `p = i^φ · ∏ g_i` over some selection (index order), returns the
    /// selection and `φ`.
    pub fn decompose(&self, p: &PauliOperator) -> Option<(BitVec, u8)> {
        assert_eq!(p.n(), self.n, "operator size mismatch");
        let sel = self.basis.solve(&p.symplectic())?;
        let prod = self.product(&sel);
        debug_assert!(prod.eq_up_to_phase(p));
        let phase = (4 + p.phase() - prod.phase()) % 4;
        Some((sel, phase))
    }

    pub fn contains_pattern(&self, p: &PauliOperator) -> bool {
        self.basis.contains(&p.symplectic())
    }

    /// True iff `p` is exactly an element of the group (phase included).
    pub fn contains(&self, p: &PauliOperator) -> bool {
        matches!(self.decompose(p), Some((_, 0)))
    }
}

/// The row `r` with `r · (v.x | v.z) = [p and v anticommute]`.
pub fn commutation_row(p: &PauliOperator) -> BitVec {
    p.z().concat(p.x())
}

/// Finds a Pauli that anticommutes with `constraints[i]` exactly when
/// `anticommute[i]` is set. The result is Hermitian with sign `+1`.
pub fn find_with_commutation(
    n: usize,
    constraints: &[PauliOperator],
    anticommute: &BitVec,
) -> Option<PauliOperator> {
    let rows: Vec<BitVec> = constraints.iter().map(commutation_row).collect();
    let v = gf2::solve_linear(&rows, anticommute, 2 * n)?;
    let p = PauliOperator::from_symplectic(&v, 0);
    Some(PauliOperator::hermitian(p.x().clone(), p.z().clone()))
}

/// All Paulis (as symplectic vectors) commuting with every constraint.
pub fn commutant_basis(n: usize, constraints: &[PauliOperator]) -> Vec<BitVec> {
    let rows: Vec<BitVec> = constraints.iter().map(commutation_row).collect();
    gf2::nullspace(&rows, 2 * n)
}

/// Symplectic rank of a set of operators.
pub fn symplectic_rank(ops: &[PauliOperator]) -> usize {
    let vecs: Vec<BitVec> = ops.iter().map(|p| p.symplectic()).collect();
    gf2::rank(&vecs)
}
