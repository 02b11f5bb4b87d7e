mod common;

use common::*;
use nilpotent_core::parse::{parse_laurent, parse_point, parse_rational, print_in_parameter, ParseErrorKind};
use nilpotent_core::polycore::Ring;
use nilpotent_core::{parse_polynomial, print_canonical, Polynomial};
use proptest::prelude::*;

#[test]
fn grammar_examples() {
    let r = big();
    let f2 = &(&p(&r, "2") * &p(&r, "x").pow(3)) * &p(&r, "t") - p(&r, "s").pow(2);
    assert_eq!(parse_polynomial("2*x^3*t - s^2", &r).unwrap(), f2);
    assert!(parse_polynomial("0", &r).unwrap().is_zero());
    let e = parse_polynomial("x^-1", &r).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
    assert_eq!(e.position, 2);
    assert!(matches!(
        parse_polynomial("w + 1", &r).unwrap_err().kind,
        ParseErrorKind::UnknownVariable(_)
    ));
    assert_eq!(parse_polynomial("2 x", &r).unwrap_err().position, 2);
    assert_eq!(
        parse_polynomial("(x + s", &r).unwrap_err().kind,
        ParseErrorKind::UnexpectedEnd("`)`")
    );
    assert_eq!(
        parse_polynomial("x/0", &r).unwrap_err().kind,
        ParseErrorKind::Unexpected {
            expected: "an operator or end of input",
            found: "`/`".into()
        }
    );
    assert_eq!(
        parse_polynomial("1/0", &r).unwrap_err().kind,
        ParseErrorKind::ZeroDenominator
    );
    assert_eq!(
        parse_polynomial(" - ( x - s ) ^ 2 ", &r).unwrap(),
        p(&r, "-x^2 + 2*x*s - s^2")
    );
}

#[test]
fn canonical_printing() {
    let r = big();
    assert_eq!(print_canonical(&p(&r, "x*v - s")), "x*v - s");
    assert_eq!(print_canonical(&Polynomial::zero(&r)), "0");
    assert_eq!(print_canonical(&p(&r, "1 + s*1/2")), "1/2*s + 1");
    assert_eq!(print_canonical(&p(&r, "-s^2 + 2*x^3*t")), "2*x^3*t - s^2");
    assert_eq!(print_canonical(&p(&r, "-1/3*t")), "-1/3*t");
}

#[test]
fn auxiliary_forms() {
    let r = big();
    assert_eq!(parse_rational("-7/14").unwrap(), rat(-1, 2));
    assert_eq!(
        parse_point("1, 0, 1/2, -3, 0", &r).unwrap().to_string(),
        "(1, 0, 1/2, -3, 0)"
    );
    assert_eq!(parse_point("1, 0, x", &r).unwrap_err().position, 6);
    assert_eq!(parse_laurent("s/x^3", &r).unwrap().to_string(), "(s)/x^3");
    assert_eq!(parse_laurent("(x*v - s)/x", &r).unwrap().to_string(), "(x*v - s)/x");
    assert_eq!(parse_laurent("1/2*s", &r).unwrap().to_string(), "1/2*s");
    assert_eq!(parse_laurent("x^2*v/x^3", &r).unwrap().to_string(), "(v)/x");
    let ext = Ring::new(["x", "s", "t", "u", "v", "r"]).unwrap();
    let mu = p(&ext, "u + r*t + 1/2*r^2*s + 1/6*r^3*x^3");
    assert_eq!(
        print_in_parameter(&mu, "r").unwrap(),
        "u + r*t + 1/2*r^2*s + 1/6*r^3*x^3"
    );
}

/// Syntactically valid text built from the grammar.
fn arb_expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0u32..50).prop_map(|n| n.to_string()),
        (1u32..50, 1u32..9).prop_map(|(n, d)| format!("{n}/{d}")),
        prop::sample::select(vec!["x", "s", "t", "u", "v"]).prop_map(String::from),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.prop_map(|a| format!("(-({a}))")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_is_identity(f in arb_poly(big(), 8, 10, 1000)) {
        let text = print_canonical(&f);
        prop_assert_eq!(parse_polynomial(&text, f.ring()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn valid_text_parses(text in arb_expr()) {
        let r = big();
        let f = parse_polynomial(&text, &r).unwrap();
        prop_assert_eq!(parse_polynomial(&print_canonical(&f), &r).unwrap(), f);
    }

    #[test]
    fn garbage_never_panics(text in "[xstuv0-9+*^/()\\- #.]{0,24}") {
        if let Err(e) = parse_polynomial(&text, &big()) {
            prop_assert!(e.position <= text.len());
        }
    }
}
