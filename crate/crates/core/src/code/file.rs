//! The line-based `.stab` code format.
//!
//! ```text
//! # comment
//! n=5 k=1
//! M1: XZZXI
//! ...
//! X1: XXXXX
//! Z1: ZZZZZ
//! ```
//!
//! Logical lines may be omitted entirely, in which case a logical frame is
//! derived from the generators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{derive_logical_frame, StabilizerCode};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

pub fn parse_stab(text: &str) -> Result<StabilizerCode> {
    let mut header: Option<(usize, usize)> = None;
    let mut sections: [BTreeMap<usize, (usize, PauliOperator)>; 3] = Default::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = Some(lineno + 1);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if header.is_none() {
            header = Some(parse_header(line).map_err(|m| Error::parse(line_no, m))?);
            continue;
        }
        let (label, body) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, format!("expected `<label>: <pauli>`, got `{line}`")))?;
        let label = label.trim();
        let slot = match label.chars().next() {
            Some('M') => 0,
            Some('X') => 1,
            Some('Z') => 2,
            _ => return Err(Error::parse(line_no, format!("unknown label `{label}`"))),
        };
        let index: usize = label[1..]
            .parse()
            .ok()
            .filter(|&i| i >= 1)
            .ok_or_else(|| Error::parse(line_no, format!("bad index in label `{label}`")))?;
        let op: PauliOperator = body
            .trim()
            .parse()
            .map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
        if sections[slot].insert(index, (lineno + 1, op)).is_some() {
            return Err(Error::parse(line_no, format!("duplicate label `{label}`")));
        }
    }
    let (n, k) = header.ok_or_else(|| Error::parse(None, "missing `n=<int> k=<int>` header"))?;
    let mut lists = Vec::new();
    for (slot, prefix) in sections.iter().zip(["M", "X", "Z"]) {
        let mut ops = Vec::new();
        for (expect, (idx, (line, op))) in (1..).zip(slot) {
            if *idx != expect {
                return Err(Error::parse(Some(*line), format!("{prefix} labels must be numbered 1, 2, ... without gaps")));
            }
            if op.n() != n {
                return Err(Error::parse(
                    Some(*line),
                    format!("{prefix}{idx} has {} qubits, header says n={n}", op.n()),
                ));
            }
            ops.push(op.clone());
        }
        lists.push(ops);
    }
    let lz = lists.pop().unwrap();
    let lx = lists.pop().unwrap();
    let gens = lists.pop().unwrap();
    let (lx, lz) = if lx.is_empty() && lz.is_empty() && k > 0 {
        derive_logical_frame(n, &gens)?
    } else {
        (lx, lz)
    };
    if lx.len() != k || lz.len() != k {
        return Err(Error::parse(
            None,
            format!("header says k={k} but file has {} X and {} Z logical operators", lx.len(), lz.len()),
        ));
    }
    let code = StabilizerCode::new(n, gens, lx, lz)?;
    // signs are normalized when possible; otherwise validation reports them
    Ok(code.normalize_signs().unwrap_or(code))
}

fn parse_header(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut n = None;
    let mut k = None;
    for tok in line.split_whitespace() {
        let (key, value) = tok.split_once('=').ok_or_else(|| format!("bad header token `{tok}`"))?;
        let value: usize = value.parse().map_err(|_| format!("bad integer in `{tok}`"))?;
        match key {
            "n" => n = Some(value),
            "k" => k = Some(value),
            _ => return Err(format!("unknown header key `{key}`")),
        }
    }
    match (n, k) {
        (Some(n), Some(k)) if n >= 1 && k <= n => Ok((n, k)),
        (Some(_), Some(_)) => Err("header needs n >= 1 and k <= n".into()),
        _ => Err("header must be `n=<int> k=<int>`".into()),
    }
}

pub fn format_stab(code: &StabilizerCode) -> String {
    let mut out = format!("n={} k={}\n", code.n(), code.k());
    for (i, g) in code.generators().iter().enumerate() {
        let _ = writeln!(out, "M{}: {}", i + 1, g);
    }
    for (i, p) in code.logical_x().iter().enumerate() {
        let _ = writeln!(out, "X{}: {}", i + 1, p);
    }
    for (i, p) in code.logical_z().iter().enumerate() {
        let _ = writeln!(out, "Z{}: {}", i + 1, p);
    }
    out
}
