use super::*;
use crate::pauli::pauli;

fn bits(s: &str) -> BitVec {
    BitVec::from_bools(s.chars().map(|c| c == '1'))
}

#[test]
fn builtins_validate() {
    for c in [steane7(), five_qubit(), eight_qubit(), trivial(), distance2(4).unwrap(), distance2(6).unwrap()] {
        let report = c.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
    }
}

#[test]
fn broken_five_qubit_reports_anticommuting_pair() {
    let c = five_qubit();
    let mut gens = c.generators().to_vec();
    gens[0] = pauli("XZZXX");
    let broken = StabilizerCode::new(5, gens, c.logical_x().to_vec(), c.logical_z().to_vec()).unwrap();
    let report = broken.validate();
    // the replaced row clashes with M3 and M4; with M2 it still commutes
    for other in ["M3", "M4"] {
        assert!(report
            .violations
            .contains(&Violation::Anticommute { a: "M1".into(), b: other.into() }));
    }
    assert!(!report
        .violations
        .contains(&Violation::Anticommute { a: "M1".into(), b: "M2".into() }));
}

#[test]
fn syndromes() {
    let c = steane7();
    assert_eq!(c.syndrome(&pauli("ZIIIIII")).unwrap().0, bits("111000"));
    assert_eq!(c.syndrome(&pauli("IIIIXII")).unwrap().0, bits("000011"));
    assert!(c.syndrome(&PauliOperator::identity(7)).unwrap().is_trivial());
    assert!(c.syndrome(&pauli("X")).is_err());
}

#[test]
fn stabilizer_membership() {
    let c = steane7();
    assert_eq!(c.in_stabilizer(&pauli("IIXXXXI")).unwrap(), Some(0));
    assert_eq!(c.in_stabilizer(&pauli("-IIXXXXI")).unwrap(), Some(2));
    assert_eq!(c.in_stabilizer(&pauli("IIIIXXX")).unwrap(), None);
    assert_eq!(c.in_stabilizer(&PauliOperator::identity(7)).unwrap(), Some(0));
}

#[test]
fn normalizer_membership() {
    let c = five_qubit();
    assert!(c.in_normalizer(&pauli("XXXXX")).unwrap());
    assert!(!c.in_normalizer(&pauli("XIIII")).unwrap());
    for g in c.generators() {
        assert!(c.in_normalizer(g).unwrap());
    }
}

#[test]
fn reduce_logical_examples() {
    let c = steane7();
    let d = c.reduce_logical(&pauli("IIIIZZZ")).unwrap();
    assert_eq!(d.logical, pauli("Z"));
    let d = c.reduce_logical(&c.generators()[2]).unwrap();
    assert_eq!(d.logical, pauli("I"));
    assert_eq!(d.stabilizer_part, bits("001000"));

    // X̄·Z̄ = XXXXX·ZZZZZ = YYYYY exactly, so YYYYY is logical Y with phase 0
    let f = five_qubit();
    let d = f.reduce_logical(&pauli("YYYYY")).unwrap();
    assert_eq!(d.logical, pauli("Y"));
    assert_eq!(d.reassemble(&f), pauli("YYYYY"));
    let d = f.reduce_logical(&pauli("iYYYYY")).unwrap();
    assert_eq!(d.phase(), 1);

    assert!(matches!(f.reduce_logical(&pauli("XIIII")), Err(Error::NotInNormalizer(_))));
}

#[test]
fn distances() {
    assert_eq!(five_qubit().distance().unwrap(), 3);
    assert_eq!(distance2(4).unwrap().distance().unwrap(), 2);
    assert_eq!(eight_qubit().distance().unwrap(), 3);
    assert_eq!(steane7().distance().unwrap(), 3);
    assert_eq!(trivial().distance().unwrap(), 1);
}

#[test]
fn builtin_lookup() {
    assert_eq!(builtin_code("steane7").unwrap().generators().len(), 6);
    let d = builtin_code("distance2(4)").unwrap();
    assert_eq!(d.k(), 2);
    assert_eq!(d.logical_x()[0], pauli("XXII"));
    assert_eq!(d.logical_z()[0], pauli("IZIZ"));
    assert_eq!(builtin_code("distance2:6").unwrap().n(), 6);
    assert!(builtin_code("distance2(5)").is_err());
    assert!(matches!(builtin_code("golay"), Err(Error::Unknown { .. })));
    assert_eq!(five_qubit().generators()[1], pauli("IXZZX"));
}

#[test]
fn css_detection() {
    let s = steane7().css_structure().unwrap();
    assert_eq!(s.x_sector, steane7().generators()[..3].to_vec());
    assert_eq!(s.z_sector, steane7().generators()[3..].to_vec());
    assert!(five_qubit().css_structure().is_none());
    let d = distance2(6).unwrap().css_structure().unwrap();
    assert_eq!(d.x_sector, vec![pauli("XXXXXX")]);
    assert_eq!(d.z_sector, vec![pauli("ZZZZZZ")]);
    assert!(eight_qubit().css_structure().is_none());
}

#[test]
fn doubly_even_self_dual() {
    let r = steane7().doubly_even_self_dual_check().unwrap();
    assert!(r.self_dual && r.doubly_even);
    let r = distance2(4).unwrap().doubly_even_self_dual_check().unwrap();
    assert!(r.self_dual && r.doubly_even);
    let r = distance2(6).unwrap().doubly_even_self_dual_check().unwrap();
    assert!(r.self_dual && !r.doubly_even);
    assert!(five_qubit().doubly_even_self_dual_check().is_err());
}

#[test]
fn derived_frame_is_valid() {
    for c in [steane7(), five_qubit(), eight_qubit(), distance2(6).unwrap()] {
        let d = StabilizerCode::from_generators(c.n(), c.generators().to_vec()).unwrap();
        assert!(d.validate().is_valid(), "{:?}", d.validate());
        assert_eq!(d.k(), c.k());
    }
}

#[test]
fn sign_normalization() {
    let c = StabilizerCode::new(
        5,
        vec![pauli("-XZZXI"), pauli("IXZZX"), pauli("XIXZZ"), pauli("ZXIXZ")],
        vec![pauli("XXXXX")],
        vec![pauli("ZZZZZ")],
    )
    .unwrap();
    assert!(c.validate().is_valid());
    let fixed = c.normalize_signs().unwrap();
    assert!(fixed.validate().is_valid());
    assert_eq!(fixed.generators(), five_qubit().generators());
}

#[test]
fn stab_file_round_trip() {
    for c in [steane7(), five_qubit(), eight_qubit(), distance2(4).unwrap(), trivial()] {
        let text = format_stab(&c);
        assert_eq!(parse_stab(&text).unwrap(), c);
    }
    let text = "# five\nn=5 k=1\nM1: XZZXI\nM2: IXZZX\nM3: XIXZZ\nM4: ZXIXZ\n";
    let c = parse_stab(text).unwrap();
    assert!(c.validate().is_valid());
    assert!(parse_stab("n=2 k=1\nM1: XXX\n").is_err());
    assert!(parse_stab("M1: XX\n").is_err());
    assert!(parse_stab("n=2 k=0\nM1: XX\nM3: ZZ\n").is_err());
}

#[test]
fn tensor_and_row_reduction() {
    let s = steane7();
    let two = s.power(2);
    assert_eq!(two.n(), 14);
    assert_eq!(two.k(), 2);
    assert!(two.validate().is_valid());
    let rr = five_qubit().row_reduced();
    assert!(rr.validate().is_valid());
    for g in five_qubit().generators() {
        assert_eq!(rr.in_stabilizer(g).unwrap(), Some(0));
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
        (proptest::collection::vec(0u8..4, n), 0u8..4).prop_map(|(letters, phase)| {
            let mut p = PauliOperator::identity(letters.len()).with_phase(phase);
            for (q, l) in letters.iter().enumerate() {
                p.set_letter(q, ['I', 'X', 'Y', 'Z'][*l as usize]);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn syndrome_is_linear(a in arb_pauli(7), b in arb_pauli(7)) {
            let c = steane7();
            let s = c.syndrome(&(&a * &b)).unwrap().0;
            prop_assert_eq!(s, c.syndrome(&a).unwrap().0.xor(&c.syndrome(&b).unwrap().0));
        }

        #[test]
        fn normalizer_iff_zero_syndrome(p in arb_pauli(8)) {
            let c = eight_qubit();
            prop_assert_eq!(c.in_normalizer(&p).unwrap(), c.syndrome(&p).unwrap().is_trivial());
        }
    }
}
