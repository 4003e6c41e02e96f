//! XOR of two oracle answers from a single oracle application.
//!
//! Classically this costs two queries. The circuit superposes the two
//! questions, lets one oracle application kick each answer into a sign, and
//! reads the parity out of the interference — always exactly, never by chance.

use onequery::{brute_force_sat, parse_expr, run_deutsch_xor, CountedOracle};

fn main() {
    let cases = [
        ("x1 & !x1", "x1"),
        ("x1", "x2 | !x2"),
        ("x1 & !x1", "x2 & !x2"),
        ("(x1 | x2) & !x1", "x1 & x2"),
    ];
    for (a_text, b_text) in cases {
        let a = parse_expr(a_text).expect("valid");
        let b = parse_expr(b_text).expect("valid");

        let mut oracle = CountedOracle::dpll();
        let folded = run_deutsch_xor(&a, &b, &mut oracle).expect("circuit runs");

        let answer_a = brute_force_sat(&a).expect("small");
        let answer_b = brute_force_sat(&b).expect("small");

        println!(
            "O({a_text}) = {}, O({b_text}) = {}",
            u8::from(answer_a),
            u8::from(answer_b),
        );
        println!(
            "  one-call circuit measured {} (expected {}), queries charged: {}\n",
            u8::from(folded),
            u8::from(answer_a ^ answer_b),
            oracle.query_count(),
        );
        assert_eq!(folded, answer_a ^ answer_b);
        assert_eq!(oracle.query_count(), 1);
    }
}
