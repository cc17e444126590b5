//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Tolerances are fixed below.

// a NaN distance must fail, hence the negated comparisons in `ensure!`
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process::ExitCode;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabft::clifford::{equal_up_to_phase, named_gate, pauli_matrix, random_clifford, synthesize, to_unitary, Circuit, Step};
use stabft::code::{distance2, eight_qubit, five_qubit, random_code, steane7};
use stabft::protocols::{build_protocol, run_on_input, run_protocol, safe_swap, ProtocolParams, Verification, PROTOCOLS};
use stabft::sim::{fault_injection, random_circuit, BlockLayout, DenseState, StabilizerState};
use stabft::transversal::{check_transversal, eight_qubit_permutations, logical_action, physical_map, search_single_qubit_transversal, TransversalCandidate};
use stabft::{pauli, BitVec, CliffordMap, PauliOperator, StabilizerCode};

const MATRIX_TOL: f64 = 1e-12;
const DENSE_TOL: f64 = 1e-10;
const PROTOCOL_SEEDS: u64 = 50;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !($cond) {
            return Err(format!($($fmt)+));
        }
    };
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn bitwise(name: &str) -> TransversalCandidate {
    TransversalCandidate::bitwise(named_gate(name).unwrap())
}

fn selection(bits: &[usize], len: usize) -> BitVec {
    BitVec::from_bools((0..len).map(|i| bits.contains(&i)))
}

/// `gate` on logical qubit `i` of every block, `k` logical qubits per block.
fn logical_bitwise(gate: &CliffordMap, k: usize) -> CliffordMap {
    let m = gate.n();
    (0..k).fold(CliffordMap::identity(m * k), |acc, i| {
        let targets: Vec<usize> = (0..m).map(|b| b * k + i).collect();
        acc.then(&gate.embed(m * k, &targets).unwrap()).unwrap()
    })
}

// 1 -------------------------------------------------------------------------

/// `i^phase X^x Z^z`, built from 2×2 matrices with qubit 0 as the most
/// significant tensor factor.
fn reference_matrix(x: &[bool], z: &[bool], phase: u8) -> DMatrix<Complex64> {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let xm = DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]);
    let zm = DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]);
    let mut m = DMatrix::from_element(1, 1, one);
    for q in 0..x.len() {
        let mut f = DMatrix::identity(2, 2);
        if x[q] {
            f = &f * &xm;
        }
        if z[q] {
            f = &f * &zm;
        }
        m = m.kronecker(&f);
    }
    m * Complex64::i().powu(phase as u32)
}

fn pauli_exactness() -> Outcome {
    let mut pairs = 0;
    for n in 1..=2usize {
        let mut ops = Vec::new();
        for bits in 0..(1u32 << (2 * n)) {
            let x: Vec<bool> = (0..n).map(|q| bits >> q & 1 == 1).collect();
            let z: Vec<bool> = (0..n).map(|q| bits >> (n + q) & 1 == 1).collect();
            for phase in 0..4u8 {
                let p = PauliOperator::from_parts(BitVec::from_bools(x.clone()), BitVec::from_bools(z.clone()), phase);
                ops.push((p, reference_matrix(&x, &z, phase)));
            }
        }
        for (a, ma) in &ops {
            for (b, mb) in &ops {
                let ab = a.multiply(b).map_err(e)?;
                let want = ma * mb;
                let got = reference_matrix(
                    &(0..n).map(|q| ab.x().get(q)).collect::<Vec<_>>(),
                    &(0..n).map(|q| ab.z().get(q)).collect::<Vec<_>>(),
                    ab.phase(),
                );
                ensure!(got == want, "{a} * {b} = {ab}, matrices differ");
                ensure!(a.commutes(b).map_err(e)? == (ma * mb == mb * ma), "commutation of {a} and {b}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, exact"))
}

// 2 -------------------------------------------------------------------------

fn table_reproduction() -> Outcome {
    let tables: [(&str, &[&str], &[&str]); 7] = [
        ("R", &["Z"], &["X"]),
        ("P", &["iY"], &["Z"]),
        ("CNOT", &["XX", "IX"], &["ZI", "ZZ"]),
        ("T", &["iY"], &["X"]),
        ("Q", &["X"], &["iY"]),
        ("T3", &["iXYZ", "iYXZ", "XXX"], &["iZXY", "iXZY", "ZZZ"]),
        ("G4", &["XXXI", "IXXX", "XIXX", "XXIX"], &["ZZZI", "IZZZ", "ZIZZ", "ZZIZ"]),
    ];
    for (name, xs, zs) in tables {
        let g = named_gate(name).map_err(e)?;
        for (j, (x, z)) in xs.iter().zip(zs.iter()).enumerate() {
            ensure!(g.x_image(j) == &pauli(x), "{name}: X{} -> {}, expected {x}", j + 1, g.x_image(j));
            ensure!(g.z_image(j) == &pauli(z), "{name}: Z{} -> {}, expected {z}", j + 1, g.z_image(j));
        }
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let t = DMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(0.0, -s), c(s, 0.0), c(0.0, s)]);
    let d = max_diff(&to_unitary(&named_gate("T").unwrap()).map_err(e)?, &t);
    ensure!(d < MATRIX_TOL, "T matrix off by {d}");
    let rows: [[(f64, f64); 8]; 8] = [
        [(1., 0.), (0., 0.), (0., 1.), (0., 0.), (0., 1.), (0., 0.), (1., 0.), (0., 0.)],
        [(0., 0.), (-1., 0.), (0., 0.), (0., 1.), (0., 0.), (0., 1.), (0., 0.), (-1., 0.)],
        [(0., 0.), (0., 1.), (0., 0.), (1., 0.), (0., 0.), (-1., 0.), (0., 0.), (0., -1.)],
        [(0., 1.), (0., 0.), (-1., 0.), (0., 0.), (1., 0.), (0., 0.), (0., -1.), (0., 0.)],
        [(0., 0.), (0., 1.), (0., 0.), (-1., 0.), (0., 0.), (1., 0.), (0., 0.), (0., -1.)],
        [(0., 1.), (0., 0.), (1., 0.), (0., 0.), (-1., 0.), (0., 0.), (0., -1.), (0., 0.)],
        [(-1., 0.), (0., 0.), (0., 1.), (0., 0.), (0., 1.), (0., 0.), (-1., 0.), (0., 0.)],
        [(0., 0.), (1., 0.), (0., 0.), (0., 1.), (0., 0.), (0., 1.), (0., 0.), (1., 0.)],
    ];
    let t3 = DMatrix::from_fn(8, 8, |i, j| c(rows[i][j].0 * 0.5, rows[i][j].1 * 0.5));
    ensure!(
        equal_up_to_phase(&to_unitary(&named_gate("T3").unwrap()).map_err(e)?, &t3, MATRIX_TOL),
        "T3 matrix differs beyond a global phase"
    );
    Ok("7 tables, T and T3 matrices".into())
}

// 3 -------------------------------------------------------------------------

fn steane_gates() -> Outcome {
    let code = steane7();
    let r = logical_action(&code, &bitwise("R")).map_err(e)?;
    ensure!(r == named_gate("R").unwrap(), "bitwise R acts as {:?}", r.table_lines());
    let p = logical_action(&code, &bitwise("P")).map_err(e)?;
    ensure!(
        p.x_image(0) == &pauli("-iY") && p.z_image(0) == &pauli("Z"),
        "bitwise P acts as {:?}",
        p.table_lines()
    );
    let cnot = logical_action(&code, &bitwise("CNOT")).map_err(e)?;
    ensure!(cnot == named_gate("CNOT").unwrap(), "bitwise CNOT acts as {:?}", cnot.table_lines());
    Ok("R, P -> (X -> -iY, Z -> Z), CNOT".into())
}

// 4 -------------------------------------------------------------------------

/// The same stabilizer group presented through a random sequence of
/// generator products.
fn reshuffled(code: &StabilizerCode, rng: &mut ChaCha8Rng) -> StabilizerCode {
    let mut gens = code.generators().to_vec();
    for _ in 0..12 {
        let a = rng.gen_range(0..gens.len());
        let b = rng.gen_range(0..gens.len());
        if a != b {
            gens[a] = gens[a].multiply(&gens[b]).unwrap();
        }
    }
    StabilizerCode::new(code.n(), gens, code.logical_x().to_vec(), code.logical_z().to_vec()).unwrap()
}

fn codespace_projector(code: &StabilizerCode) -> DMatrix<Complex64> {
    let dim = 1 << code.n();
    code.generators().iter().fold(DMatrix::identity(dim, dim), |acc, g| {
        let m = pauli_matrix(g).unwrap();
        acc * (DMatrix::identity(dim, dim) + m) * c(0.5, 0.0)
    })
}

fn five_qubit_gates() -> Outcome {
    let code = five_qubit();
    let t = check_transversal(&code, &bitwise("T")).map_err(e)?;
    ensure!(t.valid, "bitwise T invalid: {:?}", t.witness);
    ensure!(t.logical == Some(named_gate("T").unwrap()), "bitwise T logical action");
    let u = physical_map(&code, &bitwise("T")).map_err(e)?;
    let img = u.apply(&code.generators()[0]).map_err(e)?;
    let m3m4 = code.generators()[2].multiply(&code.generators()[3]).map_err(e)?;
    ensure!(img == m3m4, "M1 -> {img}, expected M3M4 = {m3m4}");

    ensure!(!check_transversal(&code, &bitwise("R")).map_err(e)?.valid, "bitwise R reported valid");
    let t3 = check_transversal(&code, &bitwise("T3")).map_err(e)?;
    ensure!(t3.valid && t3.logical == Some(named_gate("T3").unwrap()), "T3 on three blocks");

    let names = |c: &StabilizerCode| -> Vec<(String, Vec<String>)> {
        search_single_qubit_transversal(c).unwrap().into_iter().map(|r| (r.name, r.logical.table_lines())).collect()
    };
    let sweep = names(&code);
    for seed in 0..10 {
        let other = reshuffled(&code, &mut ChaCha8Rng::seed_from_u64(seed));
        ensure!(names(&other) == sweep, "sweep changes under presentation seed {seed}");
    }
    let proj = codespace_projector(&code);
    for r in search_single_qubit_transversal(&code).map_err(e)? {
        let g = (1..code.n()).fold(r.gate.clone(), |acc, _| acc.tensor(&r.gate));
        let u = to_unitary(&g).map_err(e)?;
        let d = max_diff(&(&u * &proj * u.adjoint()), &proj);
        ensure!(d < DENSE_TOL, "{} moves the codespace by {d}", r.name);
    }
    let list: Vec<&str> = sweep.iter().map(|(n, _)| n.as_str()).collect();
    Ok(format!("sweep valid set {list:?}, dense check on each"))
}

// 5 -------------------------------------------------------------------------

fn css_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut css, mut bad) = (0, Vec::new());
    for trial in 0..500 {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(1..n);
        let code = random_code(n, k, &mut rng);
        ensure!(code.validate().is_valid(), "trial {trial}: generated code invalid");
        let cnot = check_transversal(&code, &bitwise("CNOT")).map_err(e)?.valid;
        let is_css = code.css_structure().is_some();
        css += is_css as usize;
        if cnot != is_css {
            bad.push(trial);
        }
    }
    ensure!(bad.is_empty(), "disagreements at trials {bad:?}");
    Ok(format!("500 codes, {css} CSS, 0 disagreements"))
}

// 6 -------------------------------------------------------------------------

fn universality_gates() -> Outcome {
    let g4 = named_gate("G4").unwrap();
    for code in [steane7(), five_qubit(), eight_qubit(), distance2(4).unwrap()] {
        let l = logical_action(&code, &TransversalCandidate::bitwise(g4.clone())).map_err(e)?;
        ensure!(l == logical_bitwise(&g4, code.k()), "G4 on [[{}, {}]]", code.n(), code.k());
    }
    let cnot = named_gate("CNOT").unwrap();
    for params in [ProtocolParams::default(), ProtocolParams::with_code(steane7()), ProtocolParams::with_code(five_qubit())] {
        for seed in 0..PROTOCOL_SEEDS {
            let r = run_protocol("cnot_from_g4", &params, seed).map_err(e)?;
            ensure!(r.pass, "cnot_from_g4 seed {seed}: {:?}", r.failures().collect::<Vec<_>>());
            ensure!(r.achieved.as_ref() == Some(&cnot), "cnot_from_g4 seed {seed} achieved {:?}", r.achieved);
        }
    }
    Ok("G4 on 4 families; CNOT unencoded, on steane7 and five_qubit".into())
}

// 7 -------------------------------------------------------------------------

fn eight_qubit_code() -> Outcome {
    let code = eight_qubit();
    let images: [(&str, [&[usize]; 5]); 3] = [
        ("swap_halves", [&[0], &[1], &[0, 1, 2], &[3], &[0, 4]]),
        ("swap_pairs", [&[0], &[1], &[2], &[1, 3], &[0, 4]]),
        ("swap_odd_even", [&[0], &[1], &[0, 2], &[0, 3], &[0, 1, 4]]),
    ];
    let printed: [(&str, [&str; 3]); 3] = [
        ("swap_halves", ["XIZ", "IXI", "ZIX"]),
        ("swap_pairs", ["XZZ", "ZXZ", "ZZX"]),
        ("swap_odd_even", ["XIZ", "IXZ", "ZZX"]),
    ];
    let zs = vec![pauli("ZII"), pauli("IZI"), pauli("IIZ")];
    let mut signed = Vec::new();
    for ((nc, (name, sels)), (_, xs)) in eight_qubit_permutations().iter().zip(images).zip(printed) {
        ensure!(nc.name == name, "permutation order");
        let u = physical_map(&code, &nc.candidate).map_err(e)?;
        for (g, sel) in code.generators().iter().zip(sels) {
            let got = code.stabilizer_group().decompose(&u.apply(g).map_err(e)?);
            ensure!(got == Some((selection(sel, 5), 0)), "{name}: image of {g} is {got:?}");
        }
        let l = logical_action(&code, &nc.candidate).map_err(e)?;
        let paper = CliffordMap::new(xs.iter().map(|s| pauli(s)).collect(), zs.clone()).map_err(e)?;
        for j in 0..3 {
            ensure!(l.x_image(j).eq_up_to_phase(paper.x_image(j)), "{name}: X{} -> {}", j + 1, l.x_image(j));
            ensure!(l.z_image(j) == paper.z_image(j), "{name}: Z{} -> {}", j + 1, l.z_image(j));
        }
        let by_pauli = stabft::pauli::all_patterns(3)
            .any(|p| paper.then(&CliffordMap::pauli_conjugation(&p)).map(|m| m == l).unwrap_or(false));
        ensure!(by_pauli, "{name}: not the printed table up to a logical Pauli");
        signed.push(format!("{name} {}", l.x_images().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")));
    }
    Ok(format!("signed X rows: {}", signed.join("; ")))
}

// 8 -------------------------------------------------------------------------

fn distance_two_family() -> Outcome {
    let code = distance2(4).map_err(e)?;
    let r = logical_action(&code, &bitwise("R")).map_err(e)?;
    let want_r = CliffordMap::new(vec![pauli("IZ"), pauli("ZI")], vec![pauli("IX"), pauli("XI")]).unwrap();
    ensure!(r == want_r, "bitwise R acts as {:?}", r.table_lines());
    let p = logical_action(&code, &bitwise("P")).map_err(e)?;
    let want_p = CliffordMap::new(vec![pauli("-XZ"), pauli("-ZX")], vec![pauli("ZI"), pauli("IZ")]).unwrap();
    ensure!(p == want_p, "bitwise P acts as {:?}", p.table_lines());
    for n in [4, 6, 8] {
        let d = distance2(n).map_err(e)?.distance().map_err(e)?;
        ensure!(d == 2, "distance2({n}) has distance {d}");
    }
    Ok("R and P tables; distance 2 at n = 4, 6, 8".into())
}

// 9 -------------------------------------------------------------------------

fn simulator_vs_oracle() -> Outcome {
    let mut total = 0;
    for seed in 0..200u64 {
        let n = 1 + (seed as usize % 5);
        let mut gen = ChaCha8Rng::seed_from_u64(seed);
        let gates = gen.gen_range(0..=40);
        let meas = gen.gen_range(0..=10);
        let circuit = random_circuit(n, gates, meas, &mut gen);
        let mut s = StabilizerState::zero(n);
        let mut d = DenseState::basis_state(&vec![false; n]).map_err(e)?;
        let tab = s.run(&circuit, &mut ChaCha8Rng::seed_from_u64(seed + 1000)).map_err(e)?;
        let (dense, _) = d.run(&circuit, &mut ChaCha8Rng::seed_from_u64(seed + 1000)).map_err(e)?;
        ensure!(tab.measurements.len() == dense.len(), "seed {seed}: record lengths");
        for (t, o) in tab.measurements.iter().zip(&dense) {
            let p = o.p_plus;
            ensure!([0.0, 0.5, 1.0].iter().any(|v| (p - v).abs() < DENSE_TOL), "seed {seed}: p = {p}");
            ensure!(
                (t.deterministic, t.outcome, t.corrected) == (o.deterministic, o.outcome, o.corrected),
                "seed {seed}: tableau {t:?} vs dense {o:?}"
            );
            total += 1;
        }
        let f = DenseState::from_stabilizer(&s).map_err(e)?.fidelity(&d);
        ensure!(f > 1.0 - DENSE_TOL, "seed {seed}: fidelity {f}");
    }
    Ok(format!("200 circuits, {total} measurements"))
}

// 10 ------------------------------------------------------------------------

fn gate_by_gate_unitary(circuit: &Circuit) -> DMatrix<Complex64> {
    let dim = 1 << circuit.n();
    circuit.steps().iter().fold(DMatrix::identity(dim, dim), |acc, step| match step {
        Step::Gate { gate, targets } => to_unitary(&gate.map().embed(circuit.n(), targets).unwrap()).unwrap() * acc,
        _ => panic!("synthesized circuits hold gates only"),
    })
}

fn synthesis() -> Outcome {
    for n in 1..=4 {
        for seed in 0..100 {
            let target = random_clifford(n, seed);
            let circuit = synthesize(&target).map_err(e)?;
            ensure!(circuit.to_clifford().map_err(e)? == target, "n = {n}, seed {seed}: tableau differs");
            if n <= 3 {
                let u = gate_by_gate_unitary(&circuit);
                ensure!(equal_up_to_phase(&u, &to_unitary(&target).map_err(e)?, DENSE_TOL), "n = {n}, seed {seed}: unitary");
            }
        }
    }
    Ok("400 Cliffords".into())
}

// 11 ------------------------------------------------------------------------

fn qubit(a: Complex64, b: Complex64) -> DenseState {
    DenseState::from_vector(nalgebra::DVector::from_vec(vec![a, b])).unwrap()
}

fn protocols() -> Outcome {
    for (name, _) in PROTOCOLS {
        for seed in 0..PROTOCOL_SEEDS {
            let r = run_protocol(name, &ProtocolParams::default(), seed).map_err(e)?;
            ensure!(r.pass, "{name} seed {seed}: {:?}", r.failures().collect::<Vec<_>>());
            if ["teleport", "p_dagger_from_cnot"].contains(name) {
                ensure!(r.method == Verification::Both, "{name} not checked densely");
            }
        }
    }
    let p = build_protocol("p_dagger_from_cnot", &ProtocolParams::default()).map_err(e)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for seed in 0..PROTOCOL_SEEDS {
        let one = run_on_input(&p, &qubit(c(0.0, 0.0), c(1.0, 0.0)), seed).map_err(e)?;
        ensure!(one.fidelity(&qubit(c(0.0, 0.0), c(1.0, 0.0))) > 1.0 - MATRIX_TOL, "p_dagger |1> seed {seed}");
        // the -i on |1> shows up as a relative phase
        let plus = run_on_input(&p, &qubit(c(h, 0.0), c(h, 0.0)), seed).map_err(e)?;
        ensure!(plus.fidelity(&qubit(c(h, 0.0), c(0.0, -h))) > 1.0 - MATRIX_TOL, "p_dagger |+> seed {seed}");
    }
    let t = build_protocol("teleport", &ProtocolParams::default()).map_err(e)?;
    for seed in 0..PROTOCOL_SEEDS {
        let u = to_unitary(&random_clifford(1, 500 + seed)).map_err(e)?;
        let input = DenseState::from_vector(u.column(0).into_owned()).map_err(e)?;
        let out = run_on_input(&t, &input, seed).map_err(e)?;
        ensure!(out.fidelity(&input) > 1.0 - MATRIX_TOL, "teleport seed {seed}");
    }
    Ok(format!("{} protocols x {PROTOCOL_SEEDS} seeds; dense teleport and p_dagger", PROTOCOLS.len()))
}

// 12 ------------------------------------------------------------------------

fn fault_injection_claims() -> Outcome {
    let code = steane7();
    let mut cnot = Circuit::new(14);
    for q in 0..7 {
        cnot.gate("CNOT", &[q, 7 + q]).map_err(e)?;
    }
    let report = fault_injection(&cnot, &BlockLayout::uniform(&code, 2)).map_err(e)?;
    ensure!(!report.has_violation(), "bitwise CNOT:\n{}", report.to_table());

    let d2 = distance2(4).map_err(e)?;
    let swap = safe_swap(&d2, 0, 1).map_err(e)?;
    let layout = swap.faults.clone().ok_or("safe_swap has no fault layout")?;
    let mut direct = Circuit::new(5);
    direct.gate("SWAP", &[1, 2]).map_err(e)?;
    let direct_report = fault_injection(&direct, &layout).map_err(e)?;
    ensure!(direct_report.has_violation(), "direct swap shows no violation");
    let safe = fault_injection(&swap.circuit, &layout).map_err(e)?;
    ensure!(!safe.has_violation(), "safe_swap:\n{}", safe.to_table());
    Ok(format!("direct swap: {} violating faults; bitwise CNOT and safe_swap: none", direct_report.violations().count()))
}

// 13 ------------------------------------------------------------------------

fn distances() -> Outcome {
    let got: Vec<usize> =
        [five_qubit(), steane7(), eight_qubit()].iter().map(|c| c.distance()).collect::<Result<_, _>>().map_err(e)?;
    ensure!(got == [3, 3, 3], "distances {got:?}");
    Ok("five_qubit 3, steane7 3, eight_qubit 3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("Pauli algebra against explicit matrices", pauli_exactness),
        ("gate tables and matrices", table_reproduction),
        ("Steane code transversal gates", steane_gates),
        ("five-qubit code transversal gates", five_qubit_gates),
        ("bitwise CNOT valid iff CSS", css_theorem),
        ("G4 and cnot_from_g4", universality_gates),
        ("eight-qubit permutations", eight_qubit_code),
        ("distance-2 family", distance_two_family),
        ("stabilizer simulator against dense oracle", simulator_vs_oracle),
        ("Clifford synthesis", synthesis),
        ("protocols", protocols),
        ("fault injection", fault_injection_claims),
        ("distances", distances),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {title} [{secs:.2}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title} [{secs:.2}s]: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
