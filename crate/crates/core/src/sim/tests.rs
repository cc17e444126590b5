use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::clifford::{named_gate, pauli_matrix, to_unitary};
use crate::code::{distance2, steane7, StabilizerCode};
use crate::pauli::pauli;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn state(gens: &[&str]) -> StabilizerState {
    let gens: Vec<PauliOperator> = gens.iter().map(|s| pauli(s)).collect();
    StabilizerState::from_generators(gens[0].n(), gens).unwrap()
}

#[test]
fn basis_states_and_gates() {
    assert_eq!(StabilizerState::basis_state(&[false, false]), state(&["ZI", "IZ"]));
    assert_eq!(StabilizerState::basis_state(&[true]), state(&["-Z"]));
    let mut plus = StabilizerState::zero(1);
    plus.apply_gate(&Gate::named("R"), &[0]).unwrap();
    assert_eq!(plus, state(&["X"]));

    let mut s = state(&["XI", "IZ"]);
    s.apply_gate(&Gate::named("CNOT"), &[0, 1]).unwrap();
    assert_eq!(s, state(&["XX", "ZZ"]));

    let mut s = state(&["X"]);
    s.apply_gate(&Gate::named("P"), &[0]).unwrap();
    assert_eq!(s.generators()[0], pauli("iY"));
    let before = s.clone();
    s.apply_gate(&Gate::named("I"), &[0]).unwrap();
    assert_eq!(s, before);

    assert!(StabilizerState::from_generators(2, vec![pauli("XI"), pauli("ZI")]).is_err());
    assert!(StabilizerState::from_generators(2, vec![pauli("XX"), pauli("XX")]).is_err());
    assert!(StabilizerState::from_generators(1, vec![pauli("Y")]).is_err());
}

#[test]
fn apply_at_matches_embedded_map() {
    let mut r = rng(5);
    for seed in 0..50 {
        let g = crate::clifford::random_clifford(2, seed);
        let p = random_circuit(4, 0, 1, &mut r);
        let Step::Measure { op, .. } = &p.steps()[0] else { unreachable!() };
        let targets = [3, 1];
        assert_eq!(g.apply_at(op, &targets).unwrap(), g.embed(4, &targets).unwrap().apply(op).unwrap());
    }
}

#[test]
fn measurement_cases() {
    let mut s = state(&["Z"]);
    let rec = s.measure(&pauli("Z"), &mut rng(0)).unwrap();
    assert_eq!(rec, MeasurementRecord { outcome: 1, deterministic: true, corrected: false });
    assert_eq!(s, state(&["Z"]));

    let mut seen = [false; 2];
    for seed in 0..20 {
        let mut s = state(&["Z"]);
        let rec = s.measure(&pauli("X"), &mut rng(seed)).unwrap();
        assert!(!rec.deterministic);
        let expect = if rec.is_minus() { "-X" } else { "X" };
        assert_eq!(s, state(&[expect]));
        seen[rec.is_minus() as usize] = true;
        // a repeated measurement is deterministic and agrees
        let again = s.measure(&pauli("X"), &mut rng(seed + 100)).unwrap();
        assert!(again.deterministic);
        assert_eq!(again.outcome, rec.outcome);
    }
    assert!(seen[0] && seen[1]);

    assert!(matches!(s_err(), Err(Error::NotHermitian(_))));
}

fn s_err() -> Result<MeasurementRecord> {
    StabilizerState::zero(1).measure(&pauli("iX"), &mut rng(0))
}

#[test]
fn one_draw_per_random_outcome() {
    use rand::RngCore;
    let mut a = rng(9);
    let mut s = StabilizerState::zero(2);
    s.measure(&pauli("ZI"), &mut a).unwrap();
    s.measure(&pauli("XI"), &mut a).unwrap();
    s.measure(&pauli("IX"), &mut a).unwrap();
    let mut b = rng(9);
    let _ = b.gen::<bool>();
    let _ = b.gen::<bool>();
    assert_eq!(a.next_u64(), b.next_u64());
}

#[test]
fn measure_and_correct_examples() {
    let mut s = state(&["-X"]);
    let rec = s.measure_and_correct(&pauli("Z"), &pauli("X"), &mut rng(1)).unwrap();
    assert!(!rec.deterministic);
    assert_eq!(s, state(&["Z"]));
    assert_eq!(rec.corrected, rec.is_minus());

    let mut s = state(&["Z"]);
    let rec = s.measure_and_correct(&pauli("Z"), &pauli("X"), &mut rng(1)).unwrap();
    assert!(rec.deterministic && !rec.corrected);
    assert_eq!(s, state(&["Z"]));

    assert!(state(&["Z"]).measure_and_correct(&pauli("X"), &pauli("Z"), &mut rng(0)).is_ok());
    assert!(state(&["Z"]).measure_and_correct(&pauli("X"), &pauli("X"), &mut rng(0)).is_err());
}

#[test]
fn p_dagger_walkthrough() {
    for seed in 0..16 {
        let mut s = StabilizerState::zero(2);
        s.apply_gate(&Gate::named("CNOT"), &[0, 1]).unwrap();
        assert_eq!(s, state(&["ZI", "ZZ"]));
        s.measure_and_correct(&pauli("iIY"), &pauli("ZZ"), &mut rng(seed)).unwrap();
        assert!(s.stabilized_by(&pauli("iIY")));
        s.discard_qubit(1).unwrap();
        assert_eq!(s, state(&["Z"]));
    }

    let mut f = LogicalFrame::with_ancillas(1, &[pauli("Z")]).unwrap();
    f.apply_map(&named_gate("CNOT").unwrap(), &[0, 1]).unwrap();
    assert_eq!(f.logical_x()[0], pauli("XX"));
    f.measure_and_correct(&pauli("iIY"), &pauli("ZZ")).unwrap();
    assert_eq!(f.logical_x()[0], pauli("YY"));
    assert_eq!(f.logical_z()[0], pauli("ZI"));
    f.discard_qubit(1).unwrap();
    assert_eq!(f.to_map().unwrap(), named_gate("Pdg").unwrap());

    // dense: |1⟩ -> -i|1⟩, |0⟩ -> |0⟩, coherently
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for seed in 0..8 {
        let input = DVector::from_vec(vec![
            Complex64::new(h, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        let mut d = DenseState::from_vector(input).unwrap();
        d.apply_map(&named_gate("CNOT").unwrap(), &[0, 1]).unwrap();
        d.measure_and_correct(&pauli("iIY"), &pauli("ZZ"), &mut rng(seed)).unwrap();
        d.discard_qubit(1).unwrap();
        let a = d.amplitudes();
        let ratio = a[1] / a[0];
        assert!((ratio - Complex64::new(0.0, -1.0)).norm() < 1e-12, "{ratio}");
    }
}

#[test]
fn q_construction_and_teleport_frames() {
    let mut f = LogicalFrame::with_ancillas(1, &[pauli("X")]).unwrap();
    f.apply_map(&named_gate("CNOT").unwrap(), &[1, 0]).unwrap();
    assert_eq!(f.logical_z()[0], pauli("ZZ"));
    f.apply_map(&named_gate("P").unwrap(), &[1]).unwrap();
    assert_eq!(f.stabilizer()[0], pauli("iXY"));
    f.measure_and_correct(&pauli("IX"), &pauli("iXY")).unwrap();
    assert_eq!(f.logical_x()[0], pauli("XI"));
    assert_eq!(f.logical_z()[0], pauli("iYX"));
    f.discard_qubit(1).unwrap();
    assert_eq!(f.to_map().unwrap(), named_gate("Q").unwrap());

    let code = StabilizerCode::new(3, vec![pauli("IXX"), pauli("IZZ")], vec![pauli("XII")], vec![pauli("ZII")]).unwrap();
    let mut f = LogicalFrame::from_code(&code);
    f.apply_map(&named_gate("CNOT").unwrap(), &[0, 1]).unwrap();
    f.measure(&pauli("XII")).unwrap();
    f.discard_qubit(0).unwrap();
    assert_eq!(f.logical_x()[0].pattern_string(), "XI");
    f.measure(&pauli("ZI")).unwrap();
    f.discard_qubit(0).unwrap();
    assert_eq!(f.to_map().unwrap(), CliffordMap::identity(1));

    // ZZ commutes with the stabilizer without being in it; X̄ commutes with IX
    let mut f = LogicalFrame::with_ancillas(1, &[pauli("Z")]).unwrap();
    f.measure(&pauli("ZZ")).unwrap_err();
    let mut f = LogicalFrame::with_ancillas(1, &[pauli("Z")]).unwrap();
    f.measure(&pauli("IX")).unwrap();
    assert_eq!(f.logical_x()[0], pauli("XI"));
}

#[test]
fn reveals_logical_and_entangled() {
    let mut f = LogicalFrame::from_code(&steane7());
    let zbar = steane7().logical_z()[0].clone();
    assert!(matches!(f.measure(&zbar), Err(Error::RevealsLogical(_))));
    let m = steane7().generators()[0].clone();
    f.measure(&m).unwrap();

    let mut s = state(&["XX", "ZZ"]);
    assert_eq!(s.discard_qubit(0), Err(Error::Entangled(0)));
    let mut d = DenseState::from_stabilizer(&state(&["XX", "ZZ"])).unwrap();
    assert_eq!(d.discard_qubit(1), Err(Error::Entangled(1)));
    let mut s = state(&["XXI", "ZZI", "IIY"].map(|g| if g == "IIY" { "iIIY" } else { g }));
    s.discard_qubit(2).unwrap();
    assert_eq!(s, state(&["XX", "ZZ"]));
    let mut s = state(&["XI", "-IZ"]);
    s.discard_qubit(0).unwrap();
    assert_eq!(s, state(&["-Z"]));
}

#[test]
fn dense_oracle_examples() {
    let d = DenseState::basis_state(&[false]).unwrap();
    assert!((d.probability_plus(&pauli("Z")).unwrap() - 1.0).abs() < 1e-12);
    assert!((d.probability_plus(&pauli("X")).unwrap() - 0.5).abs() < 1e-12);
    let mut d = DenseState::basis_state(&[true, false]).unwrap();
    let m = d.measure(&pauli("ZI"), &mut rng(0)).unwrap();
    assert!(m.deterministic && m.is_minus());
    assert!(DenseState::basis_state(&[false; 11]).is_err());
}

/// Tableau and dense runs of the same circuit with the same seed draw the
/// same outcomes and end in the same state.
fn agree(n: usize, seed: u64) {
    let mut gen = rng(seed);
    let gates = gen.gen_range(0..=40);
    let meas = gen.gen_range(0..=10);
    let circuit = random_circuit(n, gates, meas, &mut gen);
    let mut s = StabilizerState::zero(n);
    let mut d = DenseState::basis_state(&vec![false; n]).unwrap();
    let tab = s.run(&circuit, &mut rng(seed ^ 0xabc)).unwrap();
    let (dense, _) = d.run(&circuit, &mut rng(seed ^ 0xabc)).unwrap();
    assert_eq!(tab.measurements.len(), dense.len());
    for (t, o) in tab.measurements.iter().zip(&dense) {
        let p = o.p_plus;
        assert!([0.0, 0.5, 1.0].iter().any(|v| (p - v).abs() < 1e-10), "p = {p}");
        assert_eq!(t.deterministic, o.deterministic);
        assert_eq!(t.outcome, o.outcome);
        assert_eq!(t.corrected, o.corrected);
    }
    let back = DenseState::from_stabilizer(&s).unwrap();
    assert!(back.fidelity(&d) > 1.0 - 1e-10, "seed {seed}: fidelity {}", back.fidelity(&d));
}

#[test]
fn tableau_matches_dense_oracle() {
    for seed in 0..60 {
        agree(1 + (seed as usize % 5), seed);
    }
}

#[test]
fn fault_propagation_is_conjugation() {
    let mut r = rng(3);
    for seed in 0..30 {
        let n = 1 + seed as usize % 3;
        let c = crate::clifford::random_clifford(n, seed);
        let u = to_unitary(&c).unwrap();
        let probe = random_circuit(n, 0, 1, &mut r);
        let Step::Measure { op, .. } = &probe.steps()[0] else { unreachable!() };
        let lhs = &u * pauli_matrix(op).unwrap() * u.adjoint();
        let rhs = pauli_matrix(&c.apply(op).unwrap()).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
    }
}

#[test]
fn fault_examples() {
    let code = steane7();
    let mut c = Circuit::new(14);
    for p in 0..7 {
        c.gate("CNOT", &[p, 7 + p]).unwrap();
    }
    let report = fault_injection(&c, &BlockLayout::uniform(&code, 2)).unwrap();
    assert!(!report.has_violation());
    let x_on_control = report
        .entries
        .iter()
        .find(|e| e.step.is_none() && e.targets == [0] && e.fault == pauli("X"))
        .unwrap();
    assert_eq!(x_on_control.raw_weights, vec![1, 1]);
    assert_eq!(x_on_control.final_error.support(), vec![0, 7]);
    assert_eq!(report.entries.len(), 14 * 3 + 7 * 15);

    let d4 = distance2(4).unwrap();
    let in_block = |circ: &Circuit| {
        let layout = BlockLayout::new(vec![
            Block { name: "data".into(), qubits: vec![0, 1, 2, 3], code: Some(d4.clone()) },
            Block { name: "ancilla".into(), qubits: vec![4], code: None },
        ]);
        fault_injection(circ, &layout).unwrap()
    };
    let mut direct = Circuit::new(5);
    direct.gate("SWAP", &[1, 2]).unwrap();
    let rep = in_block(&direct);
    assert!(rep.has_violation());
    let both = rep.entries.iter().find(|e| e.fault == pauli("XX")).unwrap();
    assert_eq!(both.raw_weights[0], 2);
    assert!(both.reduced_weights[0].unwrap() <= 2);

    let mut safe = Circuit::new(5);
    safe.gate("SWAP", &[1, 4]).unwrap().gate("SWAP", &[1, 2]).unwrap().gate("SWAP", &[2, 4]).unwrap();
    let rep = in_block(&safe);
    assert!(!rep.has_violation(), "{}", rep.to_table());
    for e in &rep.entries {
        for (r, red) in e.raw_weights.iter().zip(&e.reduced_weights) {
            if let Some(red) = red {
                assert!(red <= r);
            }
        }
    }
}

#[test]
fn fault_frame_updates() {
    // teleportation: an X fault on qubit 1 flips the first outcome, and the
    // conditional Z corrections then land on qubits 2 and 3
    let mut c = Circuit::new(3);
    c.gate("CNOT", &[0, 1]).unwrap();
    c.gate("I", &[0]).unwrap();
    c.measure("XII", None, Some(0)).unwrap();
    c.if_gate(0, "Z", &[1]).unwrap();
    c.if_gate(0, "Z", &[2]).unwrap();
    let e = faults::propagate(&c, 2, pauli("ZII")).unwrap();
    assert_eq!(e, pauli("ZZZ"));
    let e = faults::propagate(&c, 2, pauli("XII")).unwrap();
    assert_eq!(e, pauli("XII"));

    let mut c = Circuit::new(2);
    c.gate("I", &[0]).unwrap();
    c.measure("ZI", Some("XX"), None).unwrap();
    assert_eq!(faults::propagate(&c, 1, pauli("XI")).unwrap(), pauli("IX"));
}
