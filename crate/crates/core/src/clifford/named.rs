//! Named gates, the 24 single-qubit Cliffords, and random maps.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CliffordMap;
use crate::error::{Error, Result};
use crate::pauli::pauli;

/// Canonical gate names with their arities.
pub const NAMED_GATES: &[(&str, usize)] = &[
    ("I", 1),
    ("R", 1),
    ("P", 1),
    ("Pdg", 1),
    ("Q", 1),
    ("Qdg", 1),
    ("T", 1),
    ("T2", 1),
    ("X", 1),
    ("Y", 1),
    ("Z", 1),
    ("CNOT", 2),
    ("CZ", 2),
    ("SWAP", 2),
    ("T3", 3),
    ("G4", 4),
];

/// Maps aliases to canonical names.
pub(crate) fn canonical_name(name: &str) -> Option<&'static str> {
    let canon = match name {
        "H" => "R",
        "S" => "P",
        "P†" | "P^dag" | "Sdg" => "Pdg",
        "Q†" | "Q^dag" => "Qdg",
        // T has order three
        "T†" | "T^dag" | "Tdg" | "T^2" | "T²" => "T2",
        "CX" => "CNOT",
        "T₃" => "T3",
        "G₄" => "G4",
        other => other,
    };
    NAMED_GATES.iter().find(|(n, _)| *n == canon).map(|(n, _)| *n)
}

pub fn gate_arity(name: &str) -> Option<usize> {
    let canon = canonical_name(name)?;
    NAMED_GATES.iter().find(|(n, _)| *n == canon).map(|(_, a)| *a)
}

fn table(x: &[&str], z: &[&str]) -> CliffordMap {
    CliffordMap::new(x.iter().map(|s| pauli(s)).collect(), z.iter().map(|s| pauli(s)).collect())
        .expect("gate table is a valid Clifford map")
}

/// The conjugation table of a named gate on its own qubits.
pub fn named_gate(name: &str) -> Result<CliffordMap> {
    let canon =
        canonical_name(name).ok_or_else(|| Error::Unknown { kind: "gate", name: name.to_string() })?;
    Ok(match canon {
        "I" => CliffordMap::identity(1),
        "R" => table(&["Z"], &["X"]),
        "P" => table(&["iY"], &["Z"]),
        "Pdg" => table(&["-iY"], &["Z"]),
        "Q" => table(&["X"], &["iY"]),
        "Qdg" => table(&["X"], &["-iY"]),
        // X -> iY -> Z -> X
        "T" => table(&["iY"], &["X"]),
        "T2" => table(&["Z"], &["iY"]),
        "X" => table(&["X"], &["-Z"]),
        "Y" => table(&["-X"], &["-Z"]),
        "Z" => table(&["-X"], &["Z"]),
        "CNOT" => table(&["XX", "IX"], &["ZI", "ZZ"]),
        "CZ" => table(&["XZ", "ZX"], &["ZI", "IZ"]),
        "SWAP" => table(&["IX", "XI"], &["IZ", "ZI"]),
        "T3" => table(&["iXYZ", "iYXZ", "XXX"], &["iZXY", "iXZY", "ZZZ"]),
        "G4" => table(&["XXXI", "IXXX", "XIXX", "XXIX"], &["ZZZI", "IZZZ", "ZIZZ", "ZZIZ"]),
        _ => unreachable!("every canonical name has a table"),
    })
}

/// A single-qubit Clifford with a shortest word over `{R, P}` producing it
/// (gates listed in application order).
#[derive(Clone, Debug)]
pub struct OneQubitClass {
    pub map: CliffordMap,
    pub word: Vec<&'static str>,
}

/// All 24 single-qubit Clifford maps (sign choices included, no global
/// phase), in breadth-first order from the identity.
pub fn single_qubit_cliffords() -> Vec<OneQubitClass> {
    let gens = [("R", named_gate("R").unwrap()), ("P", named_gate("P").unwrap())];
    let mut out = vec![OneQubitClass { map: CliffordMap::identity(1), word: Vec::new() }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (name, g) in &gens {
            let next = out[i].map.then(g).unwrap();
            if out.iter().all(|c| c.map != next) {
                let mut word = out[i].word.clone();
                word.push(name);
                out.push(OneQubitClass { map: next, word });
                queue.push_back(out.len() - 1);
            }
        }
    }
    debug_assert_eq!(out.len(), 24);
    out
}

/// Name of a single-qubit map: a named gate when one matches, otherwise its
/// table in custom-gate syntax.
pub fn single_qubit_name(map: &CliffordMap) -> String {
    for (name, arity) in NAMED_GATES {
        if *arity == 1 && named_gate(name).map(|g| &g == map).unwrap_or(false) {
            return name.to_string();
        }
    }
    format!("MAP:{}/{}", map.x_image(0), map.z_image(0))
}

/// A map obtained from a seed-derived sequence of named gates. Not uniformly
/// distributed over the Clifford group.
pub fn random_clifford(n: usize, seed: u64) -> CliffordMap {
    assert!(n >= 1, "random_clifford needs n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = ["R", "P", "Q", "T", "X", "Z"];
    let mut acc = CliffordMap::identity(n);
    for _ in 0..(8 * n + 4) {
        let step = if n >= 2 && rng.gen_bool(0.4) {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            named_gate("CNOT").unwrap().embed(n, &[a, b]).unwrap()
        } else {
            let g = one[rng.gen_range(0..one.len())];
            named_gate(g).unwrap().embed(n, &[rng.gen_range(0..n)]).unwrap()
        };
        acc = acc.then(&step).unwrap();
    }
    acc
}
