//! Measurement-based gate constructions, packaged as data.
//!
//! A [`Protocol`] is a circuit together with the state of its register
//! before the circuit runs (stabilizer generators plus the logical operators
//! of the input qubits) and the operators that carry the output. The target
//! is a Clifford map from inputs to outputs.
//!
//! Verification attaches one reference qubit per input, maximally entangled
//! with it, and runs the circuit on the stabilizer simulator. The protocol
//! works on a given run iff the final state is stabilized by
//! `enc(target(X_i)) ⊗ X_ref` and `enc(target(Z_i)) ⊗ Z_ref` for every input
//! `i`, which pins the channel down completely. Small registers are rerun on
//! the dense oracle with the same seed. The achieved map is read off a
//! [`LogicalFrame`] run along the `+1` branch.

use std::fmt::{self, Write as _};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitVec;
use crate::clifford::{
    apply_pauli_vec, format_circ, named_gate, to_unitary, Circuit, CliffordMap, Gate, Step, MAX_DENSE_N,
};
use crate::code::{builtin_code, StabilizerCode};
use crate::error::{Error, Result};
use crate::group::find_with_commutation;
use crate::pauli::{pauli, PauliOperator};
use crate::sim::{fault_injection, Block, BlockLayout, DenseState, LogicalFrame, StabilizerState};
use crate::transversal::{logical_action, TransversalCandidate};

/// Registered protocol names with one-line summaries.
pub const PROTOCOLS: &[(&str, &str)] = &[
    ("p_dagger_from_cnot", "ancilla |0>, CNOT, measure iY on the ancilla: P† on the data"),
    ("q_from_cnot_p", "ancilla |+>, CNOT back onto the data, P, measure X on the ancilla: Q"),
    ("r_from_pqp", "R = P Q† P assembled from the two previous constructions"),
    ("teleport", "Bell pair, CNOT, X and Z measurements with classical corrections"),
    ("cnot_from_g4", "two |0> ancillas, G4, measure X on both: CNOT (code = blockwise)"),
    ("p_from_t3", "two |0> ancillas, T3, measure Z on qubits 2 and 3: P on the data"),
    ("twoqubit_from_t3", "one |0> ancilla, T3, measure X on qubit 2: a two-qubit Clifford"),
    ("cnot_from_t3", "twoqubit_from_t3 dressed with one-qubit gates: CNOT from qubit 2 to qubit 1"),
    ("qubit_switch", "move encoded qubit j out of a distance-2 block into a fresh block"),
    ("bell_prep_inblock", "encoded Bell pair on slots i, j of one distance-2 block"),
    ("inblock_teleport", "teleport encoded slot i of one block into slot j of another"),
    ("safe_swap", "swap two qubits of a distance-2 block through an ancilla"),
    ("encoded_zero_prep", "measure every generator and every Z̄ with corrections: encoded |0...0>"),
];

/// Optional parameters. Slots are 0-based.
#[derive(Clone, Debug, Default)]
pub struct ProtocolParams {
    pub code: Option<StabilizerCode>,
    pub i: Option<usize>,
    pub j: Option<usize>,
}

impl ProtocolParams {
    pub fn with_code(code: StabilizerCode) -> Self {
        Self { code: Some(code), ..Self::default() }
    }

    pub fn slots(mut self, i: usize, j: usize) -> Self {
        self.i = Some(i);
        self.j = Some(j);
        self
    }
}

#[derive(Clone, Debug)]
pub struct Protocol {
    pub name: String,
    pub circuit: Circuit,
    /// Generators fixing the register apart from the inputs.
    pub initial: Vec<PauliOperator>,
    pub input_x: Vec<PauliOperator>,
    pub input_z: Vec<PauliOperator>,
    pub output_x: Vec<PauliOperator>,
    pub output_z: Vec<PauliOperator>,
    pub target: CliffordMap,
    /// Extra operators that must stabilize the final state.
    pub expect: Vec<PauliOperator>,
    /// Block layout for a single-fault check, when the protocol claims one.
    pub faults: Option<BlockLayout>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Tableau,
    Both,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verification::Tableau => "tableau",
            Verification::Both => "tableau+dense",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub what: String,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct ProtocolResult {
    pub name: String,
    pub seed: u64,
    /// The map read off the `+1` branch, in terms of the output operators.
    pub achieved: Option<CliffordMap>,
    pub target: CliffordMap,
    pub method: Verification,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl ProtocolResult {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

fn ops(list: &[&str]) -> Vec<PauliOperator> {
    list.iter().map(|s| pauli(s)).collect()
}

/// Single-qubit `X_q` and `Z_q` lists for the given qubits.
fn physical(n: usize, qubits: &[usize]) -> (Vec<PauliOperator>, Vec<PauliOperator>) {
    (
        qubits.iter().map(|&q| PauliOperator::x_on(n, &[q])).collect(),
        qubits.iter().map(|&q| PauliOperator::z_on(n, &[q])).collect(),
    )
}

fn gate_map(name: &str, n: usize, targets: &[usize]) -> CliffordMap {
    named_gate(name).and_then(|g| g.embed(n, targets)).expect("registered gate")
}

impl Protocol {
    /// A protocol whose inputs and outputs are bare qubits.
    fn unencoded(
        name: &str,
        circuit: Circuit,
        initial: Vec<PauliOperator>,
        inputs: &[usize],
        outputs: &[usize],
        target: CliffordMap,
    ) -> Self {
        let n = circuit.n();
        let (input_x, input_z) = physical(n, inputs);
        let (output_x, output_z) = physical(n, outputs);
        Self {
            name: name.to_string(),
            circuit,
            initial,
            input_x,
            input_z,
            output_x,
            output_z,
            target,
            expect: Vec::new(),
            faults: None,
        }
    }

    pub fn n(&self) -> usize {
        self.circuit.n()
    }

    pub fn k(&self) -> usize {
        self.input_x.len()
    }

    /// `i^φ ∏X̄^x ∏Z̄^z` over the output operators.
    pub fn encode_output(&self, logical: &PauliOperator) -> PauliOperator {
        product(self.n(), &self.output_x, &self.output_z, logical)
    }

    /// The register size the verification runs on.
    pub fn verification_n(&self) -> usize {
        self.n() + self.k()
    }

    /// The circuit in `.circ` form, headed by comments describing the
    /// register preparation and the input and output operators.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# protocol {}", self.name);
        let list = |v: &[PauliOperator]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "# prepared: {}", list(&self.initial));
        let _ = writeln!(out, "# input X: {}", list(&self.input_x));
        let _ = writeln!(out, "# input Z: {}", list(&self.input_z));
        let _ = writeln!(out, "# output X: {}", list(&self.output_x));
        let _ = writeln!(out, "# output Z: {}", list(&self.output_z));
        for line in self.target.table_lines() {
            let _ = writeln!(out, "# target {line}");
        }
        if !self.expect.is_empty() {
            let _ = writeln!(out, "# final state stabilized by: {}", list(&self.expect));
        }
        out.push_str(&format_circ(&self.circuit));
        out
    }
}

fn product(n: usize, xs: &[PauliOperator], zs: &[PauliOperator], logical: &PauliOperator) -> PauliOperator {
    let mut acc = PauliOperator::identity(n);
    for i in logical.x().ones() {
        acc.mul_assign_right(&xs[i]);
    }
    for i in logical.z().ones() {
        acc.mul_assign_right(&zs[i]);
    }
    acc.times_i(logical.phase())
}

/// Looks up a registered protocol.
pub fn build_protocol(name: &str, params: &ProtocolParams) -> Result<Protocol> {
    let d2 = || -> Result<StabilizerCode> {
        match &params.code {
            Some(c) => Ok(c.clone()),
            None => builtin_code("distance2(4)"),
        }
    };
    match name {
        "p_dagger_from_cnot" => Ok(p_dagger_from_cnot()),
        "q_from_cnot_p" => Ok(q_from_cnot_p()),
        "r_from_pqp" => Ok(r_from_pqp()),
        "teleport" => Ok(teleport()),
        "cnot_from_g4" => match &params.code {
            Some(c) => encode_protocol(&cnot_from_g4(), c),
            None => Ok(cnot_from_g4()),
        },
        "p_from_t3" => Ok(p_from_t3()),
        "twoqubit_from_t3" => Ok(twoqubit_from_t3()),
        "cnot_from_t3" => Ok(cnot_from_t3()),
        "qubit_switch" => qubit_switch(&d2()?, params.j.unwrap_or(0)),
        "bell_prep_inblock" => bell_prep_inblock(&d2()?, params.i.unwrap_or(0), params.j.unwrap_or(1)),
        "inblock_teleport" => inblock_teleport(&d2()?, params.i.unwrap_or(0), params.j.unwrap_or(1)),
        "safe_swap" => safe_swap(&d2()?, params.i.unwrap_or(0), params.j.unwrap_or(1)),
        "encoded_zero_prep" => match &params.code {
            Some(c) => encoded_zero_prep(c),
            None => encoded_zero_prep(&builtin_code("steane7")?),
        },
        other => Err(Error::Unknown { kind: "protocol", name: other.to_string() }),
    }
}

/// Builds and verifies a registered protocol for one seed.
pub fn run_protocol(name: &str, params: &ProtocolParams, seed: u64) -> Result<ProtocolResult> {
    verify(&build_protocol(name, params)?, seed)
}

pub fn p_dagger_from_cnot() -> Protocol {
    let mut c = Circuit::new(2);
    c.gate("CNOT", &[0, 1]).expect("valid");
    c.measure("iIY", Some("ZZ"), None).expect("valid");
    Protocol::unencoded("p_dagger_from_cnot", c, ops(&["IZ"]), &[0], &[0], gate_map("Pdg", 1, &[0]))
}

pub fn q_from_cnot_p() -> Protocol {
    let mut c = Circuit::new(2);
    c.gate("CNOT", &[1, 0]).expect("valid");
    c.gate("P", &[1]).expect("valid");
    c.measure("IX", Some("iXY"), None).expect("valid");
    Protocol::unencoded("q_from_cnot_p", c, ops(&["IX"]), &[0], &[0], gate_map("Q", 1, &[0]))
}

/// `R = P Q† P` with `P = P†·Z` and `Q† = Q·X` (Paulis are free), each
/// non-Pauli factor taken from one of the two constructions above on a
/// fresh ancilla.
pub fn r_from_pqp() -> Protocol {
    let mut c = Circuit::new(4);
    c.gate("CNOT", &[0, 1]).expect("valid");
    c.measure("iIYII", Some("ZZII"), None).expect("valid");
    c.gate("Z", &[0]).expect("valid");
    c.gate("CNOT", &[2, 0]).expect("valid");
    c.gate("P", &[2]).expect("valid");
    c.measure("IIXI", Some("iXIYI"), None).expect("valid");
    c.gate("X", &[0]).expect("valid");
    c.gate("CNOT", &[0, 3]).expect("valid");
    c.measure("iIIIY", Some("ZIIZ"), None).expect("valid");
    c.gate("Z", &[0]).expect("valid");
    Protocol::unencoded("r_from_pqp", c, ops(&["IZII", "IIXI", "IIIZ"]), &[0], &[0], gate_map("R", 1, &[0]))
}

pub fn teleport() -> Protocol {
    let mut c = Circuit::new(3);
    c.gate("CNOT", &[0, 1]).expect("valid");
    c.measure("XII", None, Some(0)).expect("valid");
    c.if_gate(0, "Z", &[1]).expect("valid");
    c.if_gate(0, "Z", &[2]).expect("valid");
    c.measure("IZI", None, Some(1)).expect("valid");
    c.if_gate(1, "X", &[2]).expect("valid");
    Protocol::unencoded("teleport", c, ops(&["IXX", "IZZ"]), &[0], &[2], CliffordMap::identity(1))
}

pub fn cnot_from_g4() -> Protocol {
    let mut c = Circuit::new(4);
    c.gate("G4", &[0, 1, 2, 3]).expect("valid");
    c.measure("IIXI", Some("ZIZZ"), None).expect("valid");
    c.measure("IIIX", Some("ZZIZ"), None).expect("valid");
    Protocol::unencoded("cnot_from_g4", c, ops(&["IIZI", "IIIZ"]), &[0, 1], &[0, 1], gate_map("CNOT", 2, &[0, 1]))
}

pub fn p_from_t3() -> Protocol {
    let mut c = Circuit::new(3);
    c.gate("T3", &[0, 1, 2]).expect("valid");
    c.measure("IZI", Some("iZXY"), None).expect("valid");
    c.measure("IIZ", Some("iXZY"), None).expect("valid");
    Protocol::unencoded("p_from_t3", c, ops(&["ZII", "IZI"]), &[2], &[0], gate_map("P", 1, &[0]))
}

/// The two-qubit map left on qubits 1 and 3.
pub fn twoqubit_t3_map() -> CliffordMap {
    CliffordMap::new(ops(&["iYI", "iYZ"]), ops(&["iZY", "iYX"])).expect("valid table")
}

fn twoqubit_circuit(c: &mut Circuit) {
    c.gate("T3", &[0, 1, 2]).expect("valid");
    c.measure("IXI", Some("ZZZ"), None).expect("valid");
}

pub fn twoqubit_from_t3() -> Protocol {
    let mut c = Circuit::new(3);
    twoqubit_circuit(&mut c);
    Protocol::unencoded("twoqubit_from_t3", c, ops(&["IIZ"]), &[0, 1], &[0, 2], twoqubit_t3_map())
}

/// One-qubit gates `(a, b)` before and `(c, d)` after the T3 construction
/// that turn it into a CNOT with control on the second qubit.
pub const CNOT_FROM_T3_DRESSING: [&str; 4] = ["I", "Qdg", "Pdg", "T"];

pub fn cnot_from_t3() -> Protocol {
    let [a, b, c2, d] = CNOT_FROM_T3_DRESSING;
    let mut c = Circuit::new(3);
    c.gate(a, &[0]).expect("valid");
    c.gate(b, &[1]).expect("valid");
    twoqubit_circuit(&mut c);
    c.gate(c2, &[0]).expect("valid");
    c.gate(d, &[2]).expect("valid");
    Protocol::unencoded("cnot_from_t3", c, ops(&["IIZ"]), &[0, 1], &[0, 2], gate_map("CNOT", 2, &[1, 0]))
}

fn block_op(p: &PauliOperator, total: usize, block: usize) -> PauliOperator {
    let n = p.n();
    p.embed(total, &(block * n..(block + 1) * n).collect::<Vec<_>>())
}

fn bitwise(c: &mut Circuit, gate: &str, blocks: &[usize], n: usize) -> Result<()> {
    for pos in 0..n {
        let targets: Vec<usize> = blocks.iter().map(|b| b * n + pos).collect();
        c.gate(gate, &targets)?;
    }
    Ok(())
}

fn distance2_slot(code: &StabilizerCode, slot: usize) -> Result<()> {
    if slot >= code.k() {
        return Err(Error::Invalid(format!("slot {} out of range for k = {}", slot + 1, code.k())));
    }
    Ok(())
}

/// A data block and a fresh block holding `|0⟩` in every slot but `j`,
/// which holds `|+⟩`. Bitwise CNOT from the fresh block onto the data block,
/// then `Z̄_j` of the data block is measured.
pub fn qubit_switch(code: &StabilizerCode, j: usize) -> Result<Protocol> {
    distance2_slot(code, j)?;
    let (n, k) = (code.n(), code.k());
    let total = 2 * n;
    let on = |p: &PauliOperator, b: usize| block_op(p, total, b);
    let (lx, lz) = (code.logical_x(), code.logical_z());
    let mut initial: Vec<PauliOperator> = code.generators().iter().flat_map(|g| [on(g, 0), on(g, 1)]).collect();
    initial.extend((0..k).map(|i| if i == j { on(&lx[i], 1) } else { on(&lz[i], 1) }));
    let mut c = Circuit::new(total);
    bitwise(&mut c, "CNOT", &[1, 0], n)?;
    let corr = on(&lx[j], 0).multiply(&on(&lx[j], 1))?;
    c.push(Step::Measure { op: on(&lz[j], 0), correction: Some(corr), bit: None })?;
    let out_block = |i: usize| if i == j { 1 } else { 0 };
    Ok(Protocol {
        name: "qubit_switch".into(),
        circuit: c,
        initial,
        input_x: lx.iter().map(|p| on(p, 0)).collect(),
        input_z: lz.iter().map(|p| on(p, 0)).collect(),
        output_x: (0..k).map(|i| on(&lx[i], out_block(i))).collect(),
        output_z: (0..k).map(|i| on(&lz[i], out_block(i))).collect(),
        target: CliffordMap::identity(k),
        expect: Vec::new(),
        faults: None,
    })
}

fn bell_steps(c: &mut Circuit, code: &StabilizerCode, total: usize, block: usize, i: usize, j: usize) -> Result<()> {
    let on = |p: &PauliOperator| block_op(p, total, block);
    let (lx, lz) = (code.logical_x(), code.logical_z());
    let op = on(&lx[i]).multiply(&on(&lx[j]))?;
    c.push(Step::Measure { op, correction: Some(on(&lz[i])), bit: None })?;
    Ok(())
}

/// An otherwise empty block (every slot `|0⟩`); measuring `X̄_iX̄_j` with
/// correction `Z̄_i` leaves slots `i`, `j` in `|00⟩ + |11⟩`.
pub fn bell_prep_inblock(code: &StabilizerCode, i: usize, j: usize) -> Result<Protocol> {
    distance2_slot(code, i)?;
    distance2_slot(code, j)?;
    if i == j {
        return Err(Error::Invalid("Bell pair needs two distinct slots".into()));
    }
    let n = code.n();
    let mut initial = code.generators().to_vec();
    initial.extend(code.logical_z().iter().cloned());
    let mut c = Circuit::new(n);
    bell_steps(&mut c, code, n, 0, i, j)?;
    let (lx, lz) = (code.logical_x(), code.logical_z());
    Ok(Protocol {
        name: "bell_prep_inblock".into(),
        circuit: c,
        initial,
        input_x: Vec::new(),
        input_z: Vec::new(),
        output_x: Vec::new(),
        output_z: Vec::new(),
        target: CliffordMap::identity(0),
        expect: vec![lx[i].multiply(&lx[j])?, lz[i].multiply(&lz[j])?],
        faults: None,
    })
}

/// Slot `i` of block A holds the data, every other slot of A is `|0⟩`.
/// Block B gets a Bell pair on slots `i`, `j`; a bitwise CNOT from A to B
/// acts as a logical CNOT between the two slot-`i` qubits, and measuring
/// `X̄_i` on A and `Z̄_i` on B with corrections leaves the data in slot `j`
/// of B.
pub fn inblock_teleport(code: &StabilizerCode, i: usize, j: usize) -> Result<Protocol> {
    distance2_slot(code, i)?;
    distance2_slot(code, j)?;
    if i == j {
        return Err(Error::Invalid("teleport needs two distinct slots".into()));
    }
    let (n, k) = (code.n(), code.k());
    let total = 2 * n;
    let on = |p: &PauliOperator, b: usize| block_op(p, total, b);
    let (lx, lz) = (code.logical_x(), code.logical_z());
    let mut initial: Vec<PauliOperator> = code.generators().iter().flat_map(|g| [on(g, 0), on(g, 1)]).collect();
    initial.extend((0..k).filter(|&l| l != i).map(|l| on(&lz[l], 0)));
    initial.extend((0..k).map(|l| on(&lz[l], 1)));
    let mut c = Circuit::new(total);
    bell_steps(&mut c, code, total, 1, i, j)?;
    bitwise(&mut c, "CNOT", &[0, 1], n)?;
    let z_corr = on(&lz[i], 0).multiply(&on(&lz[i], 1))?.multiply(&on(&lz[j], 1))?;
    c.push(Step::Measure { op: on(&lx[i], 0), correction: Some(z_corr), bit: None })?;
    let x_corr = on(&lx[i], 1).multiply(&on(&lx[j], 1))?;
    c.push(Step::Measure { op: on(&lz[i], 1), correction: Some(x_corr), bit: None })?;
    Ok(Protocol {
        name: "inblock_teleport".into(),
        circuit: c,
        initial,
        input_x: vec![on(&lx[i], 0)],
        input_z: vec![on(&lz[i], 0)],
        output_x: vec![on(&lx[j], 1)],
        output_z: vec![on(&lz[j], 1)],
        target: CliffordMap::identity(1),
        expect: Vec::new(),
        faults: None,
    })
}

/// Exchanges encoded slots `i` and `j` of a distance-2 block by swapping
/// physical qubits `i+1` and `j+1` through an ancilla, so that no gate ever
/// touches both of them.
pub fn safe_swap(code: &StabilizerCode, i: usize, j: usize) -> Result<Protocol> {
    distance2_slot(code, i)?;
    distance2_slot(code, j)?;
    if i == j {
        return Err(Error::Invalid("swap needs two distinct slots".into()));
    }
    let (n, k) = (code.n(), code.k());
    let ext = |p: &PauliOperator| p.tensor(&PauliOperator::identity(1));
    let (a, b, anc) = (i + 1, j + 1, n);
    let physical_swap = CliffordMap::permutation(&{
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        perm
    })?;
    // the swap must act on the code as the logical swap of slots i and j
    let swap_logical = gate_map("SWAP", k, &[i, j]);
    for p in code.generators() {
        if code.in_stabilizer(&physical_swap.apply(p)?)? != Some(0) {
            return Err(Error::InvalidCode(format!("swapping qubits {} and {} does not preserve {p}", a + 1, b + 1)));
        }
    }
    let mut c = Circuit::new(n + 1);
    c.gate("SWAP", &[a, anc])?;
    c.gate("SWAP", &[a, b])?;
    c.gate("SWAP", &[b, anc])?;
    let mut initial: Vec<PauliOperator> = code.generators().iter().map(ext).collect();
    initial.push(PauliOperator::z_on(n + 1, &[anc]));
    let xs: Vec<PauliOperator> = code.logical_x().iter().map(ext).collect();
    let zs: Vec<PauliOperator> = code.logical_z().iter().map(ext).collect();
    let layout = BlockLayout::new(vec![
        Block { name: "data".into(), qubits: (0..n).collect(), code: Some(code.clone()) },
        Block { name: "ancilla".into(), qubits: vec![anc], code: None },
    ]);
    Ok(Protocol {
        name: "safe_swap".into(),
        circuit: c,
        initial,
        input_x: xs.clone(),
        input_z: zs.clone(),
        output_x: xs,
        output_z: zs,
        target: swap_logical,
        expect: Vec::new(),
        faults: Some(layout),
    })
}

/// Starting from `|+⟩^n`, measures each generator and then each `Z̄_i`; a
/// `-1` outcome is fixed by an operator that anticommutes with the measured
/// one and with nothing else in the list.
pub fn encoded_zero_prep(code: &StabilizerCode) -> Result<Protocol> {
    let n = code.n();
    let mut constraints: Vec<PauliOperator> = code.generators().to_vec();
    constraints.extend(code.logical_z().iter().cloned());
    let mut c = Circuit::new(n);
    for (idx, op) in constraints.iter().enumerate() {
        let mut anti = BitVec::zeros(constraints.len());
        anti.set(idx, true);
        let corr = find_with_commutation(n, &constraints, &anti)
            .ok_or_else(|| Error::InvalidCode(format!("no correction for {op}")))?;
        c.push(Step::Measure { op: op.clone(), correction: Some(corr), bit: None })?;
    }
    Ok(Protocol {
        name: "encoded_zero_prep".into(),
        circuit: c,
        initial: (0..n).map(|q| PauliOperator::x_on(n, &[q])).collect(),
        input_x: Vec::new(),
        input_z: Vec::new(),
        output_x: Vec::new(),
        output_z: Vec::new(),
        target: CliffordMap::identity(0),
        expect: constraints,
        faults: None,
    })
}

/// Replaces every qubit of an unencoded protocol by a block of a one-qubit
/// code. Gates become bitwise gates and must act on the code as themselves;
/// Pauli operators become their logical counterparts.
pub fn encode_protocol(p: &Protocol, code: &StabilizerCode) -> Result<Protocol> {
    if code.k() != 1 {
        return Err(Error::InvalidCode(format!("block encoding needs k = 1, got k = {}", code.k())));
    }
    let (m, n) = (p.n(), code.n());
    let big = code.power(m);
    let total = m * n;
    // unencoded operators here are all products of bare-qubit Paulis
    let enc = |op: &PauliOperator| big.encode_logical(op);
    let mut c = Circuit::new(total);
    for step in p.circuit.steps() {
        match step {
            Step::Gate { gate, targets } => {
                let action = logical_action(code, &TransversalCandidate::bitwise(gate.map().clone()))?;
                if &action != gate.map() {
                    return Err(Error::InvalidCandidate(format!("bitwise {gate} is not a logical {gate} on this code")));
                }
                bitwise(&mut c, gate.name(), targets, n)?;
            }
            Step::Measure { op, correction, bit } => {
                c.push(Step::Measure { op: enc(op), correction: correction.as_ref().map(enc), bit: *bit })?;
            }
            Step::IfGate { bit, gate, targets } => {
                let pauli_gate = gate.as_pauli().ok_or_else(|| {
                    Error::InvalidCircuit(format!("conditional gate {gate} cannot be encoded"))
                })?;
                let logical = enc(&pauli_gate.embed(m, targets));
                for q in logical.support() {
                    c.push(Step::IfGate {
                        bit: *bit,
                        gate: Gate::parse(&logical.letter(q).to_string())?,
                        targets: vec![q],
                    })?;
                }
            }
        }
    }
    let mut initial = big.generators().to_vec();
    initial.extend(p.initial.iter().map(enc));
    Ok(Protocol {
        name: p.name.clone(),
        circuit: c,
        initial,
        input_x: p.input_x.iter().map(enc).collect(),
        input_z: p.input_z.iter().map(enc).collect(),
        output_x: p.output_x.iter().map(enc).collect(),
        output_z: p.output_z.iter().map(enc).collect(),
        target: p.target.clone(),
        expect: p.expect.iter().map(enc).collect(),
        faults: None,
    })
}

fn widen(op: &PauliOperator, extra: usize) -> PauliOperator {
    op.tensor(&PauliOperator::identity(extra))
}

fn widen_circuit(c: &Circuit, extra: usize) -> Result<Circuit> {
    let mut out = Circuit::new(c.n() + extra);
    for step in c.steps() {
        out.push(match step {
            Step::Measure { op, correction, bit } => Step::Measure {
                op: widen(op, extra),
                correction: correction.as_ref().map(|c| widen(c, extra)),
                bit: *bit,
            },
            other => other.clone(),
        })?;
    }
    Ok(out)
}

fn reference(k: usize, i: usize, letter: char) -> PauliOperator {
    PauliOperator::single(k, i, letter)
}

/// The register with each input maximally entangled with a reference qubit.
pub fn choi_state(p: &Protocol) -> Result<StabilizerState> {
    let k = p.k();
    let mut gens: Vec<PauliOperator> = p.initial.iter().map(|g| widen(g, k)).collect();
    for i in 0..k {
        gens.push(p.input_x[i].tensor(&reference(k, i, 'X')));
        gens.push(p.input_z[i].tensor(&reference(k, i, 'Z')));
    }
    StabilizerState::from_generators(p.n() + k, gens)
}

/// Operators that must stabilize the final Choi state.
pub fn expected_stabilizers(p: &Protocol) -> Vec<PauliOperator> {
    let k = p.k();
    let mut out = Vec::new();
    for i in 0..k {
        out.push(p.encode_output(p.target.x_image(i)).tensor(&reference(k, i, 'X')));
        out.push(p.encode_output(p.target.z_image(i)).tensor(&reference(k, i, 'Z')));
    }
    out.extend(p.expect.iter().map(|e| widen(e, k)));
    out
}

/// The logical map along the `+1` branch, in terms of the output operators.
pub fn achieved_map(p: &Protocol) -> Result<CliffordMap> {
    let n = p.n();
    let mut frame = LogicalFrame::new(n, p.initial.clone(), p.input_x.clone(), p.input_z.clone())?;
    frame.run(&p.circuit)?;
    let out = StabilizerCode::new(n, frame.stabilizer().to_vec(), p.output_x.clone(), p.output_z.clone())?;
    let reduce = |q: &PauliOperator| -> Result<PauliOperator> { Ok(out.reduce_logical(q)?.logical) };
    let xs = frame.logical_x().iter().map(reduce).collect::<Result<Vec<_>>>()?;
    let zs = frame.logical_z().iter().map(reduce).collect::<Result<Vec<_>>>()?;
    CliffordMap::new(xs, zs)
}

/// Runs the protocol once with the given seed on the stabilizer simulator,
/// and on the dense oracle when the verification register is small enough.
pub fn verify(p: &Protocol, seed: u64) -> Result<ProtocolResult> {
    let k = p.k();
    let wide = widen_circuit(&p.circuit, k)?;
    let start = choi_state(p)?;
    let expected = expected_stabilizers(p);
    let mut checks = Vec::new();

    let mut state = start.clone();
    let record = state.run(&wide, &mut ChaCha8Rng::seed_from_u64(seed))?;
    for e in &expected {
        checks.push(Check { what: format!("tableau: final state stabilized by {e}"), ok: state.stabilized_by(e) });
    }

    let method = if wide.n() <= MAX_DENSE_N {
        let mut dense = DenseState::from_stabilizer(&start)?;
        let (meas, _) = dense.run(&wide, &mut ChaCha8Rng::seed_from_u64(seed))?;
        let same_outcomes = meas.len() == record.measurements.len()
            && meas.iter().zip(&record.measurements).all(|(d, t)| d.outcome == t.outcome);
        checks.push(Check { what: "dense: same measurement outcomes as the tableau".into(), ok: same_outcomes });
        let fid = dense.fidelity(&DenseState::from_stabilizer(&state)?);
        checks.push(Check { what: format!("dense: fidelity with tableau state {fid:.12}"), ok: (fid - 1.0).abs() < 1e-9 });
        for e in &expected {
            let v = dense.expectation(e)?;
            checks.push(Check { what: format!("dense: <{e}> = {v:.12}"), ok: (v - 1.0).abs() < 1e-9 });
        }
        Verification::Both
    } else {
        Verification::Tableau
    };

    let achieved = match achieved_map(p) {
        Ok(m) => {
            checks.push(Check { what: "+1 branch map equals the target".into(), ok: m == p.target });
            Some(m)
        }
        Err(e) => {
            checks.push(Check { what: format!("+1 branch map: {e}"), ok: false });
            None
        }
    };

    if let Some(layout) = &p.faults {
        let report = fault_injection(&p.circuit, layout)?;
        let bad = report.violations().count();
        checks.push(Check { what: format!("single faults hitting two qubits of a block: {bad}"), ok: bad == 0 });
    }

    let pass = checks.iter().all(|c| c.ok);
    Ok(ProtocolResult { name: p.name.clone(), seed, achieved, target: p.target.clone(), method, checks, pass })
}

/// Runs a bare-qubit protocol on a dense input state (over the input qubits,
/// in order) and returns the state of the output qubits, which must be bare
/// qubits in increasing order.
pub fn run_on_input(p: &Protocol, input: &DenseState, seed: u64) -> Result<DenseState> {
    let n = p.n();
    let k = p.k();
    if input.n() != k {
        return Err(Error::SizeMismatch { expected: k, found: input.n() });
    }
    let single = |v: &[PauliOperator], letter: char| -> Option<Vec<usize>> {
        v.iter()
            .map(|o| {
                let s = o.support();
                (s.len() == 1 && o.letter(s[0]) == letter && *o == PauliOperator::single(n, s[0], letter))
                    .then_some(s[0])
            })
            .collect()
    };
    let outputs = single(&p.output_x, 'X')
        .filter(|q| Some(q) == single(&p.output_z, 'Z').as_ref() && q.windows(2).all(|w| w[0] < w[1]))
        .ok_or_else(|| Error::Invalid(format!("{} does not end on bare qubits", p.name)))?;

    // |0̄⟩ is fixed by the preparation and every Z̄_i; |ā⟩ = ∏ X̄_i^{a_i} |0̄⟩
    let mut gens = p.initial.clone();
    gens.extend(p.input_z.iter().cloned());
    let zero = StabilizerState::from_generators(n, gens)?.to_vector()?;
    let mut amps = zero.map(|_| num_complex::Complex64::new(0.0, 0.0));
    for (a, coeff) in input.amplitudes().iter().enumerate() {
        let bits = BitVec::from_bools((0..k).map(|i| a >> (k - 1 - i) & 1 == 1));
        let xbar = product(n, &p.input_x, &p.input_z, &PauliOperator::from_parts(bits, BitVec::zeros(k), 0));
        amps += apply_pauli_vec(&xbar, &zero) * *coeff;
    }
    let mut state = DenseState::from_vector(amps)?;
    state.run(&p.circuit, &mut ChaCha8Rng::seed_from_u64(seed))?;
    for q in (0..n).rev() {
        if !outputs.contains(&q) {
            state.discard_qubit(q)?;
        }
    }
    Ok(state)
}

/// The target applied to a dense input, for comparison with [`run_on_input`].
pub fn apply_target(p: &Protocol, input: &DenseState) -> Result<DenseState> {
    let u = to_unitary(&p.target)?;
    DenseState::from_vector(u * input.amplitudes())
}
