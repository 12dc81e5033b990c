use nckit_cli::parse::{parse_poly, parse_scalar};
use nckit_core::kernel::{CycloScalar, NcPoly, Word};
use proptest::prelude::*;

fn names() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

fn scalar() -> impl Strategy<Value = CycloScalar> {
    (prop_oneof![Just(1u32), Just(3), Just(4), Just(5)], proptest::collection::vec((-5i64..=5, 1i64..=4), 1..4))
        .prop_map(|(m, parts)| {
            parts.iter().enumerate().fold(CycloScalar::zero(), |acc, (k, &(n, d))| {
                &acc + &(&CycloScalar::from_ratio(n, d) * &CycloScalar::root_of_unity(m, k as i64))
            })
        })
}

fn poly() -> impl Strategy<Value = NcPoly> {
    let degrees = [1u32, 2, 1];
    proptest::collection::vec((scalar(), proptest::collection::vec(0u16..3, 0..5)), 0..6).prop_map(move |terms| {
        let mut p = NcPoly::zero();
        for (c, letters) in terms {
            p.add_term(Word::new(&letters, &degrees), &c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn display_then_parse_is_identity(p in poly()) {
        let shown = p.display_with(&names());
        let back = parse_poly(&shown, &names(), &[1, 2, 1]).unwrap();
        prop_assert_eq!(back, p, "{}", shown);
    }

    #[test]
    fn scalars_round_trip(c in scalar()) {
        prop_assert_eq!(parse_scalar(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn multiplication_is_associative_in_the_parser(a in poly(), b in poly()) {
        let n = names();
        let src = format!("({})*({})", a.display_with(&n), b.display_with(&n));
        prop_assert_eq!(parse_poly(&src, &n, &[1, 2, 1]).unwrap(), &a * &b);
    }
}

#[test]
fn non_generator_identifiers_are_rejected_with_position() {
    let e = parse_poly("x*y - w", &names(), &[1, 2, 1]).unwrap_err();
    assert_eq!(e.pos, 6);
    assert_eq!(e.to_string(), "at column 7: unknown identifier 'w'");
}
