//! Linear algebra over GF(2) on packed bit vectors.

use crate::bits::BitVec;

/// Incrementally built echelon basis that remembers, for every reduced row,
/// which inserted vectors were XORed together to produce it.
#[derive(Clone, Debug)]
pub struct Gf2Basis {
    dim: usize,
    capacity: usize,
    inserted: usize,
    rows: Vec<Row>,
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: BitVec,
    combo: BitVec,
}

impl Gf2Basis {
    /// `dim` is the vector length, `capacity` the maximum number of insertions.
    pub fn new(dim: usize, capacity: usize) -> Self {
        Self { dim, capacity, inserted: 0, rows: Vec::new() }
    }

    pub fn from_vectors(dim: usize, vectors: &[BitVec]) -> Self {
        let mut b = Self::new(dim, vectors.len());
        for v in vectors {
            b.insert(v.clone());
        }
        b
    }

    /// Inserts the next vector; returns `true` if it was independent of the
    /// previous ones.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.dim);
        assert!(self.inserted < self.capacity, "Gf2Basis capacity exceeded");
        let mut combo = BitVec::zeros(self.capacity);
        combo.set(self.inserted, true);
        self.inserted += 1;
        let (vec, combo) = self.reduce(v, combo);
        match vec.first_one() {
            Some(pivot) => {
                self.rows.push(Row { pivot, vec, combo });
                true
            }
            None => false,
        }
    }

    fn reduce(&self, mut v: BitVec, mut combo: BitVec) -> (BitVec, BitVec) {
        for row in &self.rows {
            if v.get(row.pivot) {
                v.xor_assign(&row.vec);
                combo.xor_assign(&row.combo);
            }
        }
        (v, combo)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Which inserted vectors sum to `target`, if any.
    pub fn solve(&self, target: &BitVec) -> Option<BitVec> {
        let (rest, combo) = self.reduce(target.clone(), BitVec::zeros(self.capacity));
        rest.is_zero().then_some(combo)
    }

    pub fn contains(&self, target: &BitVec) -> bool {
        self.reduce(target.clone(), BitVec::zeros(self.capacity)).0.is_zero()
    }

    /// Residue of `target` after reduction; zero iff it lies in the span.
    pub fn residue(&self, target: &BitVec) -> BitVec {
        self.reduce(target.clone(), BitVec::zeros(self.capacity)).0
    }

    /// The reduced basis vectors.
    pub fn basis_vectors(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter().map(|r| &r.vec)
    }
}

/// Rank of a set of vectors.
pub fn rank(vectors: &[BitVec]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => Gf2Basis::from_vectors(v.len(), vectors).rank(),
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<BitVec>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Solves `rows[i] · v = rhs[i]` for `v`, setting free variables to zero.
pub fn solve_linear(rows: &[BitVec], rhs: &BitVec, ncols: usize) -> Option<BitVec> {
    assert_eq!(rows.len(), rhs.len());
    // augment with the right-hand side as an extra trailing column
    let mut aug: Vec<BitVec> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.clone();
            a.push(rhs.get(i));
            a
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut v = BitVec::zeros(ncols);
    for (row, &c) in aug.iter().zip(&pivots) {
        if row.get(ncols) {
            v.set(c, true);
        }
    }
    Some(v)
}

/// Basis of `{ v : rows[i] · v = 0 for all i }`.
pub fn nullspace(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = BitVec::zeros(ncols);
            v.set(f, true);
            for (row, &p) in m.iter().zip(&pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bools(s.chars().map(|c| c == '1'))
    }

    #[test]
    fn basis_tracks_combinations() {
        let vs = [bv("1100"), bv("0110"), bv("1010"), bv("0001")];
        let b = Gf2Basis::from_vectors(4, &vs);
        assert_eq!(b.rank(), 3);
        let combo = b.solve(&bv("1011")).unwrap();
        let mut acc = BitVec::zeros(4);
        for i in combo.ones() {
            acc.xor_assign(&vs[i]);
        }
        assert_eq!(acc, bv("1011"));
        assert!(b.solve(&bv("1000")).is_none());
    }

    #[test]
    fn linear_solve_and_nullspace() {
        let rows = [bv("110"), bv("011")];
        let v = solve_linear(&rows, &bv("10"), 3).unwrap();
        assert!(rows[0].dot(&v) && !rows[1].dot(&v));
        let inconsistent = [bv("110"), bv("110")];
        assert!(solve_linear(&inconsistent, &bv("10"), 3).is_none());
        let ns = nullspace(&rows, 3);
        assert_eq!(ns, vec![bv("111")]);
    }
}
