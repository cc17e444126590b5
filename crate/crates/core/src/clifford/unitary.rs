//! Dense matrices for Pauli operators and Clifford maps.
//!
//! Qubit 0 is the most significant bit of a basis index.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::CliffordMap;
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2;
use crate::pauli::PauliOperator;

/// Largest register for which dense objects are built.
pub const MAX_DENSE_N: usize = 10;

pub(crate) fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Bit masks of the X and Z parts in basis-index order.
pub(crate) fn masks(p: &PauliOperator) -> (usize, usize) {
    let n = p.n();
    let mut xm = 0usize;
    let mut zm = 0usize;
    for q in 0..n {
        let bit = 1usize << (n - 1 - q);
        if p.x().get(q) {
            xm |= bit;
        }
        if p.z().get(q) {
            zm |= bit;
        }
    }
    (xm, zm)
}

/// `p |v⟩` for a state vector `v`.
pub(crate) fn apply_pauli_vec(p: &PauliOperator, v: &DVector<Complex64>) -> DVector<Complex64> {
    let (xm, zm) = masks(p);
    let scale = i_pow(p.phase());
    let mut out = DVector::from_element(v.len(), Complex64::new(0.0, 0.0));
    for b in 0..v.len() {
        // X^x Z^z |b⟩ = (-1)^{z·b} |b ⊕ x⟩
        let sign = if (zm & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[b ^ xm] = v[b] * scale * sign;
    }
    out
}

pub fn pauli_matrix(p: &PauliOperator) -> Result<DMatrix<Complex64>> {
    let n = p.n();
    if n > MAX_DENSE_N {
        return Err(Error::TooLarge { what: "dense matrix", n, max: MAX_DENSE_N });
    }
    let dim = 1usize << n;
    let (xm, zm) = masks(p);
    let scale = i_pow(p.phase());
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for b in 0..dim {
        let sign = if (zm & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        m[(b ^ xm, b)] = scale * sign;
    }
    Ok(m)
}

/// The stabilizer state of `n` independent commuting Hermitian generators,
/// normalized, with an arbitrary global phase.
pub(crate) fn stabilizer_vector(n: usize, generators: &[PauliOperator]) -> DVector<Complex64> {
    let dim = 1usize << n;
    // a basis state in the support: solve the parity constraints carried by
    // the Z-only elements of the group
    let mut rows: Vec<PauliOperator> = generators.to_vec();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].x().get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.x().get(c) {
                row.mul_assign_right(&pivot);
            }
        }
        r += 1;
    }
    let z_rows: Vec<BitVec> = rows[r..].iter().map(|p| p.z().clone()).collect();
    let rhs = BitVec::from_bools(rows[r..].iter().map(|p| p.phase() == 2));
    let sol = gf2::solve_linear(&z_rows, &rhs, n).expect("stabilizer group does not contain -I");
    let mut start = 0usize;
    for q in sol.ones() {
        start |= 1 << (n - 1 - q);
    }
    let mut v = DVector::from_element(dim, Complex64::new(0.0, 0.0));
    v[start] = Complex64::new(1.0, 0.0);
    for g in generators {
        let gv = apply_pauli_vec(g, &v);
        v = (&v + gv) * Complex64::new(0.5, 0.0);
    }
    let norm = v.norm();
    assert!(norm > 1e-9, "projector annihilated the chosen support vector");
    v / Complex64::new(norm, 0.0)
}

/// The unitary `U` with `U σ U† = c(σ)`, with the first nonzero entry of
/// column 0 made positive real.
pub fn to_unitary(c: &CliffordMap) -> Result<DMatrix<Complex64>> {
    let n = c.n();
    if n > MAX_DENSE_N {
        return Err(Error::TooLarge { what: "to_unitary", n, max: MAX_DENSE_N });
    }
    let dim = 1usize << n;
    let psi0 = stabilizer_vector(n, c.z_images());
    let mut u = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for col in 0..dim {
        let mut v = psi0.clone();
        for q in 0..n {
            if col >> (n - 1 - q) & 1 == 1 {
                v = apply_pauli_vec(c.x_image(q), &v);
            }
        }
        u.set_column(col, &v);
    }
    let first = u.column(0).iter().copied().find(|a| a.norm() > 1e-12).expect("nonzero column");
    let fix = first.conj() / first.norm();
    Ok(u * fix)
}

/// Whether two matrices agree up to a global phase, entrywise within `tol`.
pub fn equal_up_to_phase(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let Some((idx, _)) = a.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())) else {
        return true;
    };
    let (ai, bi) = (a.as_slice()[idx], b.as_slice()[idx]);
    if bi.norm() < tol {
        return a.iter().all(|z| z.norm() < tol) && b.iter().all(|z| z.norm() < tol);
    }
    let phase = ai / bi;
    a.iter().zip(b.iter()).all(|(x, y)| (x - y * phase).norm() < tol)
}
