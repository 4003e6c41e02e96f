//! Decide "A satisfiable AND B unsatisfiable" with one oracle application.
//!
//! The trick reuses the XOR circuit with slots (A, A∧B): the two slot answers
//! differ exactly when A is satisfiable but the merged instance is not, i.e.
//! when B fails.

use onequery::{brute_force_sat, parse_expr, run_deutsch_and_not, CountedOracle};

fn main() {
    let cases = [
        ("x1", "x2 & !x2"),
        ("x1", "x2"),
        ("x1 & !x1", "x2"),
        ("x1 & !x1", "x2 & !x2"),
    ];
    for (a_text, b_text) in cases {
        let a = parse_expr(a_text).expect("valid");
        let b = parse_expr(b_text).expect("valid");

        let mut oracle = CountedOracle::dpll();
        let folded = run_deutsch_and_not(&a, &b, &mut oracle).expect("circuit runs");

        let expected = brute_force_sat(&a).expect("small") && !brute_force_sat(&b).expect("small");
        println!(
            "A = {a_text:<12} B = {b_text:<12} (A sat and B unsat)? {}  [{} query]",
            u8::from(folded),
            oracle.query_count(),
        );
        assert_eq!(folded, expected);
        assert_eq!(oracle.query_count(), 1);
    }
}
