mod common;

use common::*;
use compass_core::dsl::{
    parse, parse_source, run_source, tokenize, Arg, CallExpr, EmitTarget, Located, Op, Pos, RuntimeErrorKind,
    Script, ScriptError, Statement, TokenKind,
};
use compass_core::{Selector, Tolerance};
use proptest::prelude::*;

#[test]
fn tokenize_examples() {
    let kinds: Vec<_> = tokenize("given A = (0, 1)").unwrap().iter().map(|t| t.kind).collect();
    assert_eq!(kinds.len(), 9);
    assert_eq!(kinds[0], TokenKind::Keyword);
    assert_eq!(tokenize("# comment only\n").unwrap().len(), 2);
    assert_eq!(tokenize("let M = midpoint(A, B)").unwrap().len(), 10);
}

#[test]
fn parse_examples() {
    let src = "given A = (0, 0)\ngiven B = (1, 0)\nlet M = midpoint(A, B)\nemit points \"-\"\nemit svg \"m.svg\"\n";
    assert_eq!(parse_source(src).unwrap().statements.len(), 5);
    let err = parse(&tokenize("let M = midpoint(A B)").unwrap()).unwrap_err();
    assert_eq!((err.line, err.column, err.expected.as_str()), (1, 20, "`,`"));
    let script = parse_source("let X, Y = intersect(c1, c2)").unwrap();
    assert!(matches!(&script.statements[0].stmt, Statement::Let { names, .. } if names.len() == 2));
}

#[test]
fn interpret_examples() {
    let tol = Tolerance::default();
    let s = run_source("given A = (0, 0)\ngiven B = (1, 0)\nlet M = midpoint(A, B)\nemit points \"-\"", &tol).unwrap();
    assert_near(s.point("M").unwrap(), pt(0.5, 0.0), 1e-9);
    assert_eq!(s.emits[0].target, EmitTarget::Points);

    let s = run_source(
        "given A = (-0.4, -0.4)\ngiven B = (2.3, 2.3)\ngiven C = (0.2, 1.8)\ngiven D = (2.7, -0.7)\nlet S = linexline(A, B, C, D)",
        &tol,
    )
    .unwrap();
    assert_near(s.point("S").unwrap(), pt(1.0, 1.0), 1e-9);

    match run_source("given A = (0, 0)\n\nlet M = midpoint(A, Q)", &tol) {
        Err(ScriptError::Runtime(e)) => {
            assert_eq!(e.line, 3);
            assert!(matches!(e.kind, RuntimeErrorKind::Name(_)));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn interpretation_is_a_pure_function_of_source_and_tolerance() {
    let src = "given A = (0, 0)\ngiven B = (1, 0)\nlet H = half()\nemit svg \"never-written.svg\"";
    let a = run_source(src, &Tolerance::default()).unwrap();
    let b = run_source(src, &Tolerance::default()).unwrap();
    assert_eq!(a, b);
    assert!(!std::path::Path::new("never-written.svg").exists());
}

// Random ASTs for the round trip.

fn ident() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_]{0,6}".prop_filter("not a keyword", |s| {
        !compass_core::dsl::KEYWORDS.contains(&s.as_str())
    })
}

fn number() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6..1e6f64,
        (-1000i32..1000).prop_map(f64::from),
        prop::num::f64::NORMAL,
    ]
}

fn arg() -> impl Strategy<Value = Arg> {
    prop_oneof![
        ident().prop_map(Arg::Name),
        number().prop_map(Arg::Number),
        any::<bool>().prop_map(|l| Arg::Selector(if l { Selector::Left } else { Selector::Right })),
    ]
}

fn statement() -> impl Strategy<Value = Statement> {
    prop_oneof![
        (ident(), number(), number()).prop_map(|(name, x, y)| Statement::Given { name, x, y }),
        (prop::collection::vec(ident(), 1..3), prop::sample::select(Op::ALL.to_vec()), prop::collection::vec(arg(), 0..5))
            .prop_map(|(names, op, args)| Statement::Let { names, call: CallExpr { op, args } }),
        (prop::sample::select(vec![EmitTarget::Svg, EmitTarget::Trace, EmitTarget::Points]), "[ -~]{0,12}")
            .prop_map(|(target, path)| Statement::Emit { target, path }),
    ]
}

proptest! {
    #[test]
    fn pretty_print_round_trip(stmts in prop::collection::vec(statement(), 0..12)) {
        let script = Script {
            statements: stmts
                .into_iter()
                .map(|stmt| Located { stmt, pos: Pos::default(), arg_pos: Vec::new() })
                .collect(),
        };
        let text = script.to_string();
        let again = parse_source(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert!(script.same_ast(&again), "{}", text);
    }
}
