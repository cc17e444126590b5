//! Built-in code families.

use super::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::{pauli, PauliOperator};

pub const BUILTIN_NAMES: &[&str] = &["steane7", "five_qubit", "eight_qubit", "distance2(n)", "trivial"];

fn code(n: usize, gens: &[&str], lx: &[&str], lz: &[&str]) -> StabilizerCode {
    let ops = |v: &[&str]| v.iter().map(|s| pauli(s)).collect::<Vec<_>>();
    StabilizerCode::new(n, ops(gens), ops(lx), ops(lz)).expect("built-in code is well formed")
}

/// The seven-qubit CSS code.
pub fn steane7() -> StabilizerCode {
    code(
        7,
        &["XXXXIII", "XXIIXXI", "XIXIXIX", "ZZZZIII", "ZZIIZZI", "ZIZIZIZ"],
        &["IIIIXXX"],
        &["IIIIZZZ"],
    )
}

/// The cyclic five-qubit code.
pub fn five_qubit() -> StabilizerCode {
    code(5, &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"], &["XXXXX"], &["ZZZZZ"])
}

/// The `[[8, 3, 3]]` code.
pub fn eight_qubit() -> StabilizerCode {
    code(
        8,
        &["XXXXXXXX", "ZZZZZZZZ", "XIXIZYZY", "XIYZXIYZ", "XZIYIYXZ"],
        &["XXIIIZIZ", "XIXZIIZI", "XIIZXZII"],
        &["IZIZIZIZ", "IIZZIIZZ", "IIIIZZZZ"],
    )
}

/// The `[[n, n-2, 2]]` code with stabilizer `X^n, Z^n`, `n` even.
pub fn distance2(n: usize) -> Result<StabilizerCode> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::Invalid(format!("distance2 needs even n >= 4, got {n}")));
    }
    let gens = vec![PauliOperator::x_on(n, &(0..n).collect::<Vec<_>>()), PauliOperator::z_on(n, &(0..n).collect::<Vec<_>>())];
    let lx = (1..n - 1).map(|i| PauliOperator::x_on(n, &[0, i])).collect();
    let lz = (1..n - 1).map(|i| PauliOperator::z_on(n, &[i, n - 1])).collect();
    StabilizerCode::new(n, gens, lx, lz)
}

/// One unencoded qubit.
pub fn trivial() -> StabilizerCode {
    code(1, &[], &["X"], &["Z"])
}

/// Looks up a built-in code by name: `steane7`, `five_qubit`, `eight_qubit`,
/// `trivial`, or `distance2(n)` (also `distance2:n`).
pub fn builtin_code(name: &str) -> Result<StabilizerCode> {
    let name = name.trim();
    match name {
        "steane7" => return Ok(steane7()),
        "five_qubit" => return Ok(five_qubit()),
        "eight_qubit" => return Ok(eight_qubit()),
        "trivial" => return Ok(trivial()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("distance2") {
        let arg = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| rest.strip_prefix(':'));
        if let Some(n) = arg.and_then(|a| a.trim().parse::<usize>().ok()) {
            return distance2(n);
        }
    }
    Err(Error::Unknown { kind: "code", name: name.to_string() })
}
