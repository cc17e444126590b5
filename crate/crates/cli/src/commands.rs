use std::fs;
use std::path::Path;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use stabft::clifford::{
    format_circ, named_gate, parse_circ, parse_gate_file, single_qubit_name, synthesize, Circuit,
    Gate, NAMED_GATES,
};
use stabft::code::{builtin_code, parse_stab};
use stabft::protocols::{build_protocol, verify, ProtocolParams, PROTOCOLS};
use stabft::sim::{fault_injection, Block, BlockLayout, DenseState, StabilizerState};
use stabft::transversal::{check_transversal, eight_qubit_permutations, TransversalCandidate};
use stabft::{CliffordMap, StabilizerCode};

use crate::report::Report;
use crate::{Cli, CodeAction, Command, ProtocolAction, ProtocolArgs};

type Outcome = Result<(), String>;

pub fn dispatch(cli: &Cli, echo: String) -> Report {
    let mut r = Report::new(echo.clone());
    let outcome = match &cli.command {
        Command::Code { action } => code(cli, action, &mut r),
        Command::Transversal { code, gate, blocks } => transversal(cli, code, gate, *blocks, &mut r),
        Command::Sim { circuit, oracle, basis } => sim(cli, circuit, *oracle, basis.as_deref(), &mut r),
        Command::Synth { gate } => synth(gate, &mut r),
        Command::Faults { circuit, code, blocks, block } => {
            faults(cli, circuit, code.as_deref(), *blocks, block, &mut r)
        }
        Command::Protocol { action } => protocol(cli, action, &mut r),
    };
    match outcome {
        Ok(()) => r,
        Err(message) => Report::input_error(echo, &message),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_code(cli: &Cli, spec: &str) -> Result<StabilizerCode, String> {
    let path = Path::new(spec);
    let code = if path.is_file() {
        parse_stab(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?
    } else {
        builtin_code(spec).map_err(|e| e.to_string())?
    };
    guard(code.n(), cli.max_n, "code")?;
    Ok(code)
}

fn load_circuit(cli: &Cli, path: &Path) -> Result<Circuit, String> {
    let c = parse_circ(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    guard(c.n(), cli.max_n, "circuit")?;
    Ok(c)
}

fn guard(n: usize, max: usize, what: &str) -> Outcome {
    if n > max {
        return Err(format!("{what} has {n} qubits, above the limit of {max}"));
    }
    Ok(())
}

fn strings<T: ToString>(items: &[T]) -> Value {
    Value::from(items.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

fn code(cli: &Cli, action: &CodeAction, r: &mut Report) -> Outcome {
    match action {
        CodeAction::Validate { code } => {
            let c = load_code(cli, code)?;
            let report = c.validate();
            r.set("n", c.n()).set("k", c.k()).set("valid", report.is_valid());
            r.set("violations", strings(&report.violations));
            r.check(report.is_valid());
        }
        CodeAction::Info { code } => {
            let c = load_code(cli, code)?;
            r.set("n", c.n()).set("k", c.k());
            r.set("generators", strings(c.generators()));
            r.set("logical_x", strings(c.logical_x()));
            r.set("logical_z", strings(c.logical_z()));
            let css = c.css_structure().is_some();
            r.set("css", css);
            if css {
                let d = c.doubly_even_self_dual_check().map_err(|e| e.to_string())?;
                r.set("self_dual", d.self_dual).set("doubly_even", d.doubly_even);
            }
        }
        CodeAction::Distance { code } => {
            let c = load_code(cli, code)?;
            let d = c.distance().map_err(|e| e.to_string())?;
            r.set("n", c.n()).set("k", c.k()).set("distance", d);
        }
    }
    Ok(())
}

/// Name of a named gate equal to `map`, if any.
fn gate_name(map: &CliffordMap) -> String {
    if map.n() == 1 {
        return single_qubit_name(map);
    }
    NAMED_GATES
        .iter()
        .find(|(name, arity)| *arity == map.n() && named_gate(name).map(|g| &g == map).unwrap_or(false))
        .map_or_else(|| "custom".to_string(), |(name, _)| name.to_string())
}

fn transversal(cli: &Cli, code: &str, gate: &str, blocks: Option<usize>, r: &mut Report) -> Outcome {
    let c = load_code(cli, code)?;
    let path = Path::new(gate);
    let named_perm = eight_qubit_permutations().into_iter().find(|p| p.name == gate);
    let cand = if path.is_file() {
        let map = parse_gate_file(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
        bitwise(map, blocks)?
    } else if let Some(p) = named_perm {
        if c.n() != 8 {
            return Err(format!("{gate} permutes eight qubits, the code has {}", c.n()));
        }
        p.candidate
    } else {
        let g = Gate::parse(gate).map_err(|e| e.to_string())?;
        bitwise(g.map().clone(), blocks)?
    };
    guard(c.n() * cand.blocks, cli.max_n, "block register")?;
    let v = check_transversal(&c, &cand).map_err(|e| e.to_string())?;
    r.set("code", code).set("gate", gate).set("blocks", cand.blocks).set("valid", v.valid);
    match (&v.witness, &v.logical) {
        (Some(w), _) => {
            r.set("witness", w.to_string());
        }
        (None, Some(l)) => {
            r.set("logical_gate", gate_name(l));
            r.set("logical", Value::from(l.table_lines()));
        }
        (None, None) => {}
    }
    r.check(v.valid);
    Ok(())
}

/// A gate applied to position `p` of every block at once; a one-qubit gate
/// on `m` blocks is applied to every block separately.
fn bitwise(map: CliffordMap, blocks: Option<usize>) -> Result<TransversalCandidate, String> {
    let m = blocks.unwrap_or(map.n());
    if m == 0 {
        return Err("--blocks must be at least 1".into());
    }
    if m == map.n() {
        return Ok(TransversalCandidate::bitwise(map));
    }
    if map.n() != 1 {
        return Err(format!("a {}-qubit gate needs --blocks {}", map.n(), map.n()));
    }
    let mut acc = map.clone();
    for _ in 1..m {
        acc = acc.tensor(&map);
    }
    Ok(TransversalCandidate::bitwise(acc))
}

fn sim(cli: &Cli, path: &Path, oracle: bool, basis: Option<&str>, r: &mut Report) -> Outcome {
    let circuit = load_circuit(cli, path)?;
    let n = circuit.n();
    let bits: Vec<bool> = match basis {
        None => vec![false; n],
        Some(s) => s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(format!("bad basis string `{s}`")),
            })
            .collect::<Result<_, _>>()?,
    };
    if bits.len() != n {
        return Err(format!("basis string has {} bits, circuit has {n} qubits", bits.len()));
    }
    if oracle {
        guard(n, cli.max_dense_n, "dense oracle register")?;
    }
    let start = StabilizerState::basis_state(&bits);
    let mut state = start.clone();
    let rec = state.run(&circuit, &mut ChaCha8Rng::seed_from_u64(cli.seed)).map_err(|e| e.to_string())?;
    let measurements: Vec<Value> = rec
        .measurements
        .iter()
        .map(|m| json!({"outcome": m.outcome, "deterministic": m.deterministic, "corrected": m.corrected}))
        .collect();
    let bit_values: Vec<Value> =
        rec.bits.iter().map(|b| b.map_or(Value::Null, |v| Value::from(if v { 1 } else { 0 }))).collect();
    r.set("qubits", n).set("seed", cli.seed);
    r.set("measurements", measurements).set("bits", bit_values);
    r.set("final_stabilizer", strings(&state.canonical_generators()));
    if oracle {
        let mut dense = DenseState::from_stabilizer(&start).map_err(|e| e.to_string())?;
        let (dm, _) =
            dense.run(&circuit, &mut ChaCha8Rng::seed_from_u64(cli.seed)).map_err(|e| e.to_string())?;
        let same = dm.len() == rec.measurements.len()
            && dm.iter().zip(&rec.measurements).all(|(d, t)| d.outcome == t.outcome);
        let fid = dense.fidelity(&DenseState::from_stabilizer(&state).map_err(|e| e.to_string())?);
        let ok = same && (fid - 1.0).abs() < 1e-9;
        r.set("oracle", json!({"outcomes_agree": same, "fidelity": format!("{fid:.12}"), "agree": ok}));
        r.check(ok);
    }
    Ok(())
}

fn synth(path: &Path, r: &mut Report) -> Outcome {
    let map = parse_gate_file(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let c = synthesize(&map).map_err(|e| e.to_string())?;
    let replay = c.to_clifford().map_err(|e| e.to_string())?;
    r.set("gates", c.gate_count()).set("replays_to_input", replay == map);
    r.check(replay == map);
    r.file = Some(format_circ(&c));
    Ok(())
}

fn parse_block(spec: &str, idx: usize) -> Result<Block, String> {
    let mut qubits = Vec::new();
    for part in spec.split(',') {
        let num = |s: &str| -> Result<usize, String> {
            s.trim().parse::<usize>().ok().filter(|&q| q >= 1).ok_or_else(|| format!("bad qubit `{s}` in --block"))
        };
        match part.split_once('-') {
            Some((a, b)) => qubits.extend(num(a)? - 1..num(b)?),
            None => qubits.push(num(part)? - 1),
        }
    }
    Ok(Block { name: format!("extra{}", idx + 1), qubits, code: None })
}

fn faults(
    cli: &Cli,
    path: &Path,
    code: Option<&str>,
    blocks: Option<usize>,
    extra: &[String],
    r: &mut Report,
) -> Outcome {
    let circuit = load_circuit(cli, path)?;
    let mut layout = match code {
        Some(c) => BlockLayout::uniform(&load_code(cli, c)?, blocks.unwrap_or(1)),
        None if blocks.is_some() => return Err("--blocks needs --code".into()),
        None => BlockLayout::default(),
    };
    for (i, spec) in extra.iter().enumerate() {
        layout.blocks.push(parse_block(spec, i)?);
    }
    if layout.blocks.is_empty() {
        return Err("no blocks given; use --code/--blocks or --block".into());
    }
    let report = fault_injection(&circuit, &layout).map_err(|e| e.to_string())?;
    let violations: Vec<Value> = report
        .violations()
        .map(|e| {
            json!({
                "step": e.step.map_or("input".to_string(), |s| (s + 1).to_string()),
                "gate": e.gate,
                "targets": e.targets.iter().map(|t| t + 1).collect::<Vec<_>>(),
                "fault": e.fault.pattern_string(),
                "final_error": e.final_error.pattern_string(),
                "raw_weights": e.raw_weights,
            })
        })
        .collect();
    r.set("blocks", Value::from(report.block_names.clone()));
    r.set("locations_checked", report.entries.len());
    r.set("violation_count", violations.len());
    r.set("violations", violations);
    r.set("table", report.to_table());
    r.check(!report.has_violation());
    Ok(())
}

fn params(cli: &Cli, args: &ProtocolArgs) -> Result<ProtocolParams, String> {
    let slot = |s: Option<usize>| -> Result<Option<usize>, String> {
        s.map(|v| v.checked_sub(1).ok_or_else(|| "slots are numbered from 1".to_string())).transpose()
    };
    Ok(ProtocolParams {
        code: args.code.as_deref().map(|c| load_code(cli, c)).transpose()?,
        i: slot(args.i)?,
        j: slot(args.j)?,
    })
}

fn protocol(cli: &Cli, action: &ProtocolAction, r: &mut Report) -> Outcome {
    match action {
        ProtocolAction::List => {
            let list: Vec<Value> = PROTOCOLS.iter().map(|(n, d)| json!({"name": n, "summary": d})).collect();
            r.set("protocols", list);
        }
        ProtocolAction::Dump { args } => {
            let p = build_protocol(&args.name, &params(cli, args)?).map_err(|e| e.to_string())?;
            r.set("name", p.name.clone());
            r.file = Some(p.dump());
        }
        ProtocolAction::Run { args, seeds } => {
            let p = build_protocol(&args.name, &params(cli, args)?).map_err(|e| e.to_string())?;
            guard(p.verification_n(), cli.max_n, "verification register")?;
            if *seeds == 0 {
                return Err("--seeds must be at least 1".into());
            }
            let mut failures = Vec::new();
            let mut first = None;
            for seed in cli.seed..cli.seed + seeds {
                let res = verify(&p, seed).map_err(|e| e.to_string())?;
                failures.extend(res.failures().map(|c| format!("seed {seed}: {}", c.what)));
                first.get_or_insert(res);
            }
            let first = first.expect("at least one seed");
            r.set("name", p.name.clone());
            r.set("qubits", p.n()).set("verification_qubits", p.verification_n());
            r.set("method", first.method.to_string());
            r.set("target", Value::from(p.target.table_lines()));
            r.set("achieved", first.achieved.as_ref().map_or(Value::Null, |m| Value::from(m.table_lines())));
            r.set("seeds", json!({"first": cli.seed, "count": seeds}));
            r.set("pass", failures.is_empty());
            r.set("failures", Value::from(failures.clone()));
            r.check(failures.is_empty());
        }
    }
    Ok(())
}
