//! Synthesis of a Clifford map into `R`, `P`, `P†` and `CNOT` gates, with a
//! `Z` for negative controlled operators and Pauli fixups.
//!
//! The recursion peels off the first qubit. With `M = U Z₁ U†` and
//! `N = U X₁ U†`, one-qubit rotations before and after `U` (plus a swap when
//! qubit 1 is untouched) bring them to `M = X ⊗ M′` and `N = Z ⊗ N′` or
//! `I ⊗ N′`. Then `W = C(M′) · H₁ · C(N′)` has the same action on `X₁` and
//! `Z₁`, so `W† U` acts trivially on qubit 1 and the recursion continues on
//! the rest. `C(A)` is `A` controlled by qubit 1.

use super::named::{named_gate, single_qubit_cliffords};
use super::{Circuit, CliffordMap};
use crate::error::Result;
use crate::pauli::PauliOperator;

type Emitted = Vec<(&'static str, Vec<usize>)>;

/// Synthesizes `c`; replaying the returned circuit reproduces `c` exactly.
pub fn synthesize(c: &CliffordMap) -> Result<Circuit> {
    c.validate()?;
    let n = c.n();
    let qubits: Vec<usize> = (0..n).collect();
    let mut out: Emitted = Vec::new();
    peel(c, &qubits, &mut out);
    let mut circuit = Circuit::new(n);
    for (name, targets) in cancel_inverses(out) {
        circuit.gate(name, &targets)?;
    }
    // any leftover sign difference is a Pauli conjugation
    let got = circuit.to_clifford()?;
    if got != *c {
        let diff = CliffordMap::compose(c, &got.invert())?;
        for j in 0..n {
            let x_flip = diff.x_image(j).phase() == 2;
            let z_flip = diff.z_image(j).phase() == 2;
            let name = match (x_flip, z_flip) {
                (false, false) => continue,
                (true, false) => "Z",
                (false, true) => "X",
                (true, true) => "Y",
            };
            circuit.gate(name, &[j])?;
        }
        debug_assert_eq!(circuit.to_clifford()?, *c);
    }
    Ok(circuit)
}

fn gate_on(name: &str, m: usize, targets: &[usize]) -> CliffordMap {
    named_gate(name).unwrap().embed(m, targets).unwrap()
}

fn letter_at(p: &PauliOperator, q: usize) -> char {
    p.letter(q)
}

fn anticommuting_letters(a: char, b: char) -> bool {
    a != 'I' && b != 'I' && a != b
}

/// Appends the circuit of `u` on the listed global qubits.
fn peel(u: &CliffordMap, qubits: &[usize], out: &mut Emitted) {
    let m = u.n();
    if m == 0 {
        return;
    }
    let classes = single_qubit_cliffords();
    let mut cur = u.clone();
    let mut pre: Option<&'static str> = None;
    let mut swap_with: Option<usize> = None;

    let mut a = letter_at(cur.z_image(0), 0);
    let mut b = letter_at(cur.x_image(0), 0);
    if a == 'I' && b == 'I' {
        let (mz, nx) = (cur.z_image(0), cur.x_image(0));
        let j = (1..m)
            .find(|&j| letter_at(mz, j) != 'I' || letter_at(nx, j) != 'I')
            .expect("images of X and Z anticommute, so they have support");
        cur = cur.then(&gate_on("SWAP", m, &[0, j])).unwrap();
        swap_with = Some(j);
        a = letter_at(cur.z_image(0), 0);
        b = letter_at(cur.x_image(0), 0);
    }
    if a == 'I' {
        // exchange the roles of M and N
        pre = Some("R");
        cur = CliffordMap::compose(&cur, &gate_on("R", m, &[0])).unwrap();
    } else if b == a {
        // N becomes (up to phase) M·N, which is trivial on qubit 1
        pre = Some("P");
        cur = CliffordMap::compose(&cur, &gate_on("P", m, &[0])).unwrap();
    }
    let a = letter_at(cur.z_image(0), 0);
    let b = letter_at(cur.x_image(0), 0);
    debug_assert!(a != 'I' && (b == 'I' || anticommuting_letters(a, b)));

    let letter_of = |map: &CliffordMap, l: char| -> char {
        let p = PauliOperator::single(1, 0, l);
        map.apply(&p).unwrap().letter(0)
    };
    let v = classes
        .iter()
        .find(|c| letter_of(&c.map, a) == 'X' && (b == 'I' || letter_of(&c.map, b) == 'Z'))
        .expect("some single-qubit Clifford aligns the leading letters");
    let v_map = v.map.embed(m, &[0]).unwrap();
    let tilde = cur.then(&v_map).unwrap();

    let mz = tilde.z_image(0);
    let nx = tilde.x_image(0);
    let m_rest = mz.remove_qubits(&[0]);
    let n_rest = nx.remove_qubits(&[0]);

    let mut w_local: Emitted = Vec::new();
    controlled(&n_rest, &mut w_local);
    w_local.push(("R", vec![0]));
    controlled(&m_rest, &mut w_local);
    let mut w = CliffordMap::identity(m);
    for (name, t) in &w_local {
        w = w.then(&gate_on(name, m, t)).unwrap();
    }
    let inner = CliffordMap::compose(&w.invert(), &tilde).unwrap();
    debug_assert_eq!(inner.z_image(0), &PauliOperator::z_on(m, &[0]));
    debug_assert_eq!(inner.x_image(0), &PauliOperator::x_on(m, &[0]));
    let rest: Vec<usize> = (1..m).collect();
    let sub = CliffordMap::from_images_unchecked(
        rest.iter().map(|&j| inner.x_image(j).remove_qubits(&[0])).collect(),
        rest.iter().map(|&j| inner.z_image(j).remove_qubits(&[0])).collect(),
    );

    let global = |t: &[usize]| t.iter().map(|&q| qubits[q]).collect::<Vec<_>>();
    // u = swap† · v† · W · sub · pre†, applied right to left
    match pre {
        Some("R") => out.push(("R", vec![qubits[0]])),
        Some("P") => out.push(("Pdg", vec![qubits[0]])),
        _ => {}
    }
    peel(&sub, &qubits[1..], out);
    for (name, t) in w_local {
        out.push((name, global(&t)));
    }
    for g in v.word.iter().rev() {
        out.push((if *g == "P" { "Pdg" } else { "R" }, vec![qubits[0]]));
    }
    if let Some(j) = swap_with {
        let (p, q) = (qubits[0], qubits[j]);
        out.push(("CNOT", vec![p, q]));
        out.push(("CNOT", vec![q, p]));
        out.push(("CNOT", vec![p, q]));
    }
}

/// Gates for `A` controlled by local qubit 0, where `A` acts on qubits
/// `1..` (its qubit `j` is local qubit `j + 1`).
fn controlled(a: &PauliOperator, out: &mut Emitted) {
    let ys = a.x().and_count(a.z());
    // A = s · ∏σ_j with σ_y = iY, so the stored phase is #Y + (0 or 2)
    let negative = (4 + a.phase() as usize - ys % 4) % 4 == 2;
    for j in 0..a.n() {
        let t = j + 1;
        match a.letter(j) {
            'X' => out.push(("CNOT", vec![0, t])),
            'Z' => {
                out.push(("R", vec![t]));
                out.push(("CNOT", vec![0, t]));
                out.push(("R", vec![t]));
            }
            'Y' => {
                out.push(("Pdg", vec![t]));
                out.push(("CNOT", vec![0, t]));
                out.push(("P", vec![t]));
            }
            _ => {}
        }
    }
    if negative {
        out.push(("Z", vec![0]));
    }
}

/// Removes adjacent pairs of mutually inverse gates on the same targets.
fn cancel_inverses(steps: Emitted) -> Emitted {
    let inverse = |a: &str, b: &str| {
        matches!(
            (a, b),
            ("R", "R") | ("CNOT", "CNOT") | ("P", "Pdg") | ("Pdg", "P") | ("Z", "Z") | ("X", "X") | ("Y", "Y")
        )
    };
    let mut out: Emitted = Vec::new();
    for s in steps {
        if let Some(last) = out.last() {
            if last.1 == s.1 && inverse(last.0, s.0) {
                out.pop();
                continue;
            }
        }
        out.push(s);
    }
    out
}
