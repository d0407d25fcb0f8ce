mod support;

use holonomic::arith::{Poly, Rational, ZPoly};
use holonomic::eval::{split_product, unroll};
use holonomic::guess::{guess_rec, ArithmeticPath, GuessConfig};
use holonomic::io::{
    format_relation, parse_operator_text, parse_relation, parse_sequence, OutputMode, SequenceFile, SourceFormat,
};
use holonomic::ore::{OreKind, OreOperator};
use holonomic::relation::{AlgebraicEquation, DiffEquation, Recurrence, Relation};
use proptest::prelude::*;
use support::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..4).prop_map(Poly::new)
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn coefficients() -> impl Strategy<Value = Vec<Poly>> {
    (prop::collection::vec(poly(), 1..3), nonzero_poly()).prop_map(|(mut v, lead)| {
        v.push(lead);
        v
    })
}

fn relation() -> impl Strategy<Value = Relation> {
    let init = || prop::collection::vec(rational(), 0..4);
    let rhs = || prop::option::of(nonzero_poly());
    prop_oneof![
        (coefficients(), init(), rhs()).prop_map(|(c, i, g)| {
            let r = Recurrence::new(c, i);
            Relation::Rec(match g {
                Some(g) => r.with_inhomogeneous(g),
                None => r,
            })
        }),
        (coefficients(), init(), rhs()).prop_map(|(c, i, g)| {
            let d = DiffEquation::new(c, i);
            Relation::Ode(match g {
                Some(g) => d.with_inhomogeneous(g),
                None => d,
            })
        }),
        (coefficients(), rational()).prop_map(|(c, s)| Relation::Alg(AlgebraicEquation::new(c, s))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relation_json_round_trip(rel in relation()) {
        let text = format_relation(&rel, OutputMode::Json);
        let back = parse_relation(&text).unwrap();
        prop_assert_eq!(&back, &rel);
        prop_assert_eq!(format_relation(&back, OutputMode::Json), text);
    }

    #[test]
    fn relation_pretty_round_trip(rel in relation()) {
        let text = format_relation(&rel, OutputMode::Pretty);
        let back = parse_relation(&text).unwrap();
        prop_assert_eq!(format_relation(&back, OutputMode::Pretty), text);
        prop_assert_eq!(back, rel);
    }

    #[test]
    fn sequence_round_trip(values in prop::collection::vec(rational(), 1..30), start in prop::option::of(-5i64..100)) {
        let seq = match start {
            Some(s) => SequenceFile {
                entries: values.iter().enumerate().map(|(i, v)| (Some(s + i as i64), v.clone())).collect(),
                format: SourceFormat::BFile,
            },
            None => SequenceFile::plain(values.clone()),
        };
        let text = holonomic::io::format_sequence(&seq);
        let back = parse_sequence(&format!("# header\n{text}\n")).unwrap();
        prop_assert_eq!(back.values(), values);
        prop_assert_eq!(back, seq);
    }

    #[test]
    fn operator_text_round_trip(c in prop::collection::vec(nonzero_poly(), 1..4), dens in prop::collection::vec(nonzero_poly(), 1..4), shift in any::<bool>()) {
        let kind = if shift { OreKind::Shift } else { OreKind::Diff };
        let coeffs = c.iter().zip(dens.iter().cycle()).map(|(a, b)| holonomic::arith::RatFun::new(a.clone(), b.clone())).collect();
        let op = OreOperator::new(kind, "t", coeffs);
        let back = parse_operator_text(&op.to_text()).unwrap();
        prop_assert_eq!(back, op);
    }

    #[test]
    fn split_product_is_associative(c in prop::collection::vec(-6i64..6, 3), lead in 1i64..4, a in 0usize..20, b in 1usize..20, d in 1usize..20) {
        let z = vec![ZPoly::from_i64s(&[c[0], 1]), ZPoly::from_i64s(&[c[1], c[2]]), ZPoly::from_i64s(&[lead, 1])];
        let (m1, m2, m3) = (a + b, a + b + d, a + b + d + 7);
        let x = split_product(&z, a, m1, 4);
        let y = split_product(&z, m1, m2, 4);
        let w = split_product(&z, m2, m3, 4);
        let left = x.then(&y).then(&w);
        let right = x.then(&y.then(&w));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &split_product(&z, a, m3, 1000));
    }
}

#[test]
fn pretty_output_omits_zero_rhs() {
    let text = format_relation(&catalan().into(), OutputMode::Pretty);
    assert_eq!(text, "(n + 2)*u(n+1) + (-4*n - 2)*u(n) = 0; u(0) = 1");
}

#[test]
fn b_file_prefix() {
    let seq = parse_sequence("0 0\n1 1\n2 1\n3 2").unwrap();
    assert_eq!(seq.format, SourceFormat::BFile);
    assert_eq!(seq.values(), ints(&[0, 1, 1, 2]));
    let plain = parse_sequence("1\n-161/248832").unwrap();
    assert_eq!(plain.values(), strs(&["1", "-161/248832"]));
    assert!(matches!(parse_sequence("1 1\n3 2"), Err(holonomic::HoloError::NonContiguousIndices(2))));
}

#[test]
fn guess_is_deterministic() {
    let terms = unroll(&apery(), 30).unwrap();
    let cfg = GuessConfig { path: ArithmeticPath::Modular, ..GuessConfig::default() };
    let a = serde_json::to_string(&guess_rec(&terms, &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&guess_rec(&terms, &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn plant_and_recover_suite() {
    plant_and_recover(50, 101).unwrap();
}

#[test]
fn path_equality_suite() {
    path_equality().unwrap();
}

#[test]
fn rec_ode_roundtrip_suite() {
    rec_ode_roundtrip(30, 202).unwrap();
}

#[test]
fn gcrd_lclm_suite() {
    gcrd_lclm(50, 303).unwrap();
}

#[test]
fn nth_term_suite() {
    nth_matches_unroll(404).unwrap();
}
