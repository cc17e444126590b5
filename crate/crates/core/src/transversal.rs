//! Transversal and permutation operations on blocks of a stabilizer code:
//! validity (the stabilizer is mapped onto itself, signs included) and the
//! induced logical operation.
//!
//! For `m` blocks of an `[[n, k]]` code, physical qubit `p` of block `b` is
//! qubit `b·n + p` (block-major) and logical qubit `i` of block `b` is
//! `b·k + i`.

use std::fmt;

use crate::clifford::{single_qubit_cliffords, single_qubit_name, CliffordMap};
use crate::code::{eight_qubit, StabilizerCode};
use crate::error::{Error, Result};
use crate::pauli::{pauli, PauliOperator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    /// An `m`-qubit gate applied to each position across the `m` blocks.
    Bitwise(CliffordMap),
    /// Position `p` of every block moves to position `perm[p]`.
    Permutation(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalCandidate {
    pub blocks: usize,
    pub stages: Vec<Stage>,
}

impl TransversalCandidate {
    pub fn bitwise(gate: CliffordMap) -> Self {
        Self { blocks: gate.n(), stages: vec![Stage::Bitwise(gate)] }
    }

    pub fn permutation(perm: Vec<usize>) -> Self {
        Self { blocks: 1, stages: vec![Stage::Permutation(perm)] }
    }

    pub fn then(mut self, stage: Stage) -> Self {
        self.stages.push(stage);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// The image is not in the stabilizer even up to phase.
    Outside,
    /// The image is `i^phase` times a stabilizer element, `phase != 0`.
    WrongPhase(u8),
}

/// A generator of the `m`-block stabilizer whose image leaves it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub block: usize,
    pub generator: usize,
    pub image: PauliOperator,
    pub kind: WitnessKind,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{} (block {}) -> {}", self.generator + 1, self.block + 1, self.image)?;
        match self.kind {
            WitnessKind::Outside => write!(f, ", not in the stabilizer"),
            WitnessKind::WrongPhase(p) => write!(f, ", stabilizer element times i^{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalVerdict {
    pub valid: bool,
    pub witness: Option<Witness>,
    /// Logical operation on the `m·k` encoded qubits, when valid.
    pub logical: Option<CliffordMap>,
}

/// Index of `(block, position)` in block-major order.
pub fn block_major(block: usize, pos: usize, n: usize) -> usize {
    block * n + pos
}

/// Index of `(block, position)` in position-major order.
pub fn position_major(block: usize, pos: usize, m: usize) -> usize {
    pos * m + block
}

/// Relabels a map's qubits: qubit `q` becomes `perm[q]`.
pub fn relabel(map: &CliffordMap, perm: &[usize]) -> Result<CliffordMap> {
    let n = map.n();
    if perm.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: perm.len() });
    }
    let mut xs = vec![PauliOperator::identity(n); n];
    let mut zs = vec![PauliOperator::identity(n); n];
    for q in 0..n {
        xs[perm[q]] = map.x_image(q).permute(perm);
        zs[perm[q]] = map.z_image(q).permute(perm);
    }
    CliffordMap::new(xs, zs)
}

fn bitwise_map(g: &CliffordMap, n: usize) -> Result<CliffordMap> {
    let m = g.n();
    let mut pm = g.clone();
    for _ in 1..n {
        pm = pm.tensor(g);
    }
    // position-major index -> block-major index
    let mut perm = vec![0; m * n];
    for b in 0..m {
        for p in 0..n {
            perm[position_major(b, p, m)] = block_major(b, p, n);
        }
    }
    relabel(&pm, &perm)
}

/// The physical map of a candidate on `m·n` qubits (block-major).
pub fn physical_map(code: &StabilizerCode, cand: &TransversalCandidate) -> Result<CliffordMap> {
    let (n, m) = (code.n(), cand.blocks);
    if m == 0 {
        return Err(Error::InvalidCandidate("at least one block is required".into()));
    }
    let mut acc = CliffordMap::identity(m * n);
    for stage in &cand.stages {
        let step = match stage {
            Stage::Bitwise(g) => {
                if g.n() != m {
                    return Err(Error::InvalidCandidate(format!(
                        "bitwise gate acts on {} qubits but there are {m} blocks",
                        g.n()
                    )));
                }
                bitwise_map(g, n)?
            }
            Stage::Permutation(perm) => {
                if perm.len() != n {
                    return Err(Error::InvalidCandidate(format!(
                        "permutation has {} entries, code has n = {n}",
                        perm.len()
                    )));
                }
                let full: Vec<usize> =
                    (0..m * n).map(|q| block_major(q / n, perm[q % n], n)).collect();
                CliffordMap::permutation(&full)
                    .map_err(|_| Error::InvalidCandidate(format!("{perm:?} is not a permutation")))?
            }
        };
        acc = acc.then(&step)?;
    }
    Ok(acc)
}

/// Whether the candidate maps the `m`-block stabilizer onto itself exactly,
/// and if so which logical operation it performs.
pub fn check_transversal(code: &StabilizerCode, cand: &TransversalCandidate) -> Result<TransversalVerdict> {
    let u = physical_map(code, cand)?;
    let big = code.power(cand.blocks);
    let r = code.generators().len();
    for (i, g) in big.generators().iter().enumerate() {
        let image = u.apply(g)?;
        let kind = match big.in_stabilizer(&image)? {
            Some(0) => continue,
            Some(p) => WitnessKind::WrongPhase(p),
            None => WitnessKind::Outside,
        };
        let witness = Witness { block: i / r.max(1), generator: i % r.max(1), image, kind };
        return Ok(TransversalVerdict { valid: false, witness: Some(witness), logical: None });
    }
    let reduce = |p: &PauliOperator| -> Result<PauliOperator> { Ok(big.reduce_logical(&u.apply(p)?)?.logical) };
    let xs = big.logical_x().iter().map(reduce).collect::<Result<Vec<_>>>()?;
    let zs = big.logical_z().iter().map(reduce).collect::<Result<Vec<_>>>()?;
    let logical = CliffordMap::new(xs, zs)?;
    Ok(TransversalVerdict { valid: true, witness: None, logical: Some(logical) })
}

/// The logical operation of a valid candidate.
pub fn logical_action(code: &StabilizerCode, cand: &TransversalCandidate) -> Result<CliffordMap> {
    let v = check_transversal(code, cand)?;
    match v.logical {
        Some(l) => Ok(l),
        None => Err(Error::InvalidCandidate(format!(
            "operation does not preserve the stabilizer: {}",
            v.witness.expect("invalid verdicts carry a witness")
        ))),
    }
}

#[derive(Clone, Debug)]
pub struct SingleQubitResult {
    pub name: String,
    pub gate: CliffordMap,
    pub logical: CliffordMap,
}

/// Every single-qubit Clifford whose bitwise application is valid.
pub fn search_single_qubit_transversal(code: &StabilizerCode) -> Result<Vec<SingleQubitResult>> {
    let mut out = Vec::new();
    for class in single_qubit_cliffords() {
        let v = check_transversal(code, &TransversalCandidate::bitwise(class.map.clone()))?;
        if let Some(logical) = v.logical {
            out.push(SingleQubitResult { name: single_qubit_name(&class.map), gate: class.map, logical });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CssCnotAgreement {
    pub bitwise_cnot_valid: bool,
    pub css: bool,
}

impl CssCnotAgreement {
    pub fn agree(&self) -> bool {
        self.bitwise_cnot_valid == self.css
    }
}

/// Compares "bitwise CNOT between two blocks is valid" with "the code has CSS
/// form"; the two should always agree.
pub fn css_cnot_theorem_check(code: &StabilizerCode) -> Result<CssCnotAgreement> {
    let cnot = crate::clifford::named_gate("CNOT")?;
    let v = check_transversal(code, &TransversalCandidate::bitwise(cnot))?;
    Ok(CssCnotAgreement { bitwise_cnot_valid: v.valid, css: code.css_structure().is_some() })
}

#[derive(Clone, Debug)]
pub struct NamedCandidate {
    pub name: &'static str,
    pub candidate: TransversalCandidate,
    pub expected_logical: CliffordMap,
}

/// The three qubit permutations of the eight-qubit code with the logical
/// operations they perform in the built-in frame. Some X images pick up a
/// sign, which amounts to a logical Z correction after the permutation.
pub fn eight_qubit_permutations() -> Vec<NamedCandidate> {
    let table = |xs: [&str; 3]| {
        CliffordMap::new(xs.iter().map(|s| pauli(s)).collect(), vec![pauli("ZII"), pauli("IZI"), pauli("IIZ")])
            .expect("expected tables are valid")
    };
    vec![
        NamedCandidate {
            name: "swap_halves",
            candidate: TransversalCandidate::permutation(vec![4, 5, 6, 7, 0, 1, 2, 3]),
            expected_logical: table(["-XIZ", "-IXI", "ZIX"]),
        },
        NamedCandidate {
            name: "swap_pairs",
            candidate: TransversalCandidate::permutation(vec![2, 3, 0, 1, 6, 7, 4, 5]),
            expected_logical: table(["XZZ", "ZXZ", "ZZX"]),
        },
        NamedCandidate {
            name: "swap_odd_even",
            candidate: TransversalCandidate::permutation(vec![1, 0, 3, 2, 5, 4, 7, 6]),
            expected_logical: table(["XIZ", "-IXZ", "-ZZX"]),
        },
    ]
}

/// The code the eight-qubit permutations act on.
pub fn eight_qubit_code() -> StabilizerCode {
    eight_qubit()
}
