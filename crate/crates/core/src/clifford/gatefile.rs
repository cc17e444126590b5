//! The `.gate` format: one conjugation-table row per line.
//!
//! ```text
//! X1 -> iY
//! Z1 -> X
//! ```

use std::collections::BTreeMap;

use super::CliffordMap;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

pub fn parse_gate_file(text: &str) -> Result<CliffordMap> {
    let mut rows: [BTreeMap<usize, PauliOperator>; 2] = Default::default();
    for (i, raw) in text.lines().enumerate() {
        let line = Some(i + 1);
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (lhs, rhs) = body
            .split_once("->")
            .ok_or_else(|| Error::parse(line, format!("expected `X<i> -> <pauli>`, got `{body}`")))?;
        let lhs = lhs.trim();
        let slot = match lhs.chars().next() {
            Some('X') => 0,
            Some('Z') => 1,
            _ => return Err(Error::parse(line, format!("row label must be X<i> or Z<i>, got `{lhs}`"))),
        };
        let idx: usize = lhs[1..]
            .parse()
            .ok()
            .filter(|&j| j >= 1)
            .ok_or_else(|| Error::parse(line, format!("bad qubit index in `{lhs}`")))?;
        let image: PauliOperator = rhs.trim().parse().map_err(|e: Error| Error::parse(line, e.to_string()))?;
        if rows[slot].insert(idx - 1, image).is_some() {
            return Err(Error::parse(line, format!("duplicate row `{lhs}`")));
        }
    }
    let n = rows[0].len();
    if n == 0 {
        return Err(Error::parse(None, "gate file has no rows"));
    }
    let mut xs = Vec::with_capacity(n);
    let mut zs = Vec::with_capacity(n);
    for j in 0..n {
        match (rows[0].get(&j), rows[1].get(&j)) {
            (Some(x), Some(z)) => {
                xs.push(x.clone());
                zs.push(z.clone());
            }
            _ => return Err(Error::parse(None, format!("rows X{0} and Z{0} are both required", j + 1))),
        }
    }
    if rows[1].len() != n {
        return Err(Error::parse(None, "X and Z rows do not cover the same qubits"));
    }
    CliffordMap::new(xs, zs)
}

pub fn format_gate_file(map: &CliffordMap) -> String {
    let mut out = String::new();
    for line in map.table_lines() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}
