use diffprim::algebra::{rat, var};
use diffprim::parse::{parse_expr, parse_field_file, ExprAst, ParseError};
use proptest::prelude::*;

fn ast() -> impl Strategy<Value = ExprAst> {
    let leaf = prop_oneof![
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ExprAst::Num(rat(n, d))),
        prop::sample::select(vec!["x", "y", "t1"]).prop_map(|v| ExprAst::Var(var(v))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| ExprAst::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ExprAst::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ExprAst::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ExprAst::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 0u32..4).prop_map(|(a, e)| ExprAst::Pow(Box::new(a), e)),
        ]
    })
}

proptest! {
    #[test]
    fn rendering_reparses_to_an_equal_function(e in ast()) {
        let text = e.to_string();
        let back = parse_expr(&text).unwrap();
        prop_assert_eq!(back.eval().unwrap(), e.eval().unwrap(), "{}", text);
    }

    #[test]
    fn expression_parser_never_panics(s in "[-+*/^()xy0-9 ]{0,40}") {
        if let Ok(e) = parse_expr(&s) {
            let _ = e.eval();
        }
    }

    #[test]
    fn file_parser_never_panics(s in "(generator|derivation|element|[a-z]|=|[0-9]|[-+*/^() #\n]){0,60}") {
        let _ = parse_field_file(&s);
    }
}

#[test]
fn precedence_and_literals() {
    let eval = |s: &str| parse_expr(s).unwrap().eval().unwrap();
    assert_eq!(eval("-x^2"), -&eval("x*x"));
    assert_eq!(eval("2^3^2"), eval("512"));
    assert_eq!(eval("1/2*x"), eval("x/2"));
    assert!(parse_expr("2x").is_err());
    assert!(parse_expr("x^99999").unwrap().eval().is_err());
    let deep = format!("{}x{}", "(".repeat(1000), ")".repeat(1000));
    assert!(parse_expr(&deep).is_err());
}

#[test]
fn file_errors_point_at_the_line() {
    let err = parse_field_file("generator x\nderivation x = 1 +\n").unwrap_err();
    assert_eq!(err.line(), 2);
    let err = parse_field_file("generator x\ngenerator y\nderivation x = y\n").unwrap_err();
    assert!(matches!(err, ParseError::MissingDerivation { .. }), "{err}");
    let err = parse_field_file("generator x\nderivation x = z\n").unwrap_err();
    assert!(matches!(err, ParseError::UnknownVariable { line: 2, .. }), "{err}");
}

#[test]
fn example_file_loads() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/example.field")).unwrap();
    let file = parse_field_file(&text).unwrap();
    assert_eq!(file.presentation().generators().len(), 2);
    assert!(file.element("a").is_some());
    assert!(file.resolve("a + x").is_ok());
}
