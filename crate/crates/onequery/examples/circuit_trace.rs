//! Watch the exact amplitudes move through the one-call circuit.
//!
//! Each stage prints the four amplitudes over the basis
//! (slot0,ans0), (slot0,ans1), (slot1,ans0), (slot1,ans1), every one a
//! canonical triple (a, b, k) meaning (a + b√2)/2^k. No floats anywhere:
//! the final state provably puts probability exactly 1 on one outcome.

use onequery::qsim::run_deutsch_xor_with_trace;
use onequery::{parse_expr, CountedOracle};

fn main() {
    let a = parse_expr("x1 & !x1").expect("valid"); // unsatisfiable
    let b = parse_expr("x1").expect("valid"); // satisfiable

    let mut oracle = CountedOracle::dpll();
    let (outcome, trace) = run_deutsch_xor_with_trace(&a, &b, &mut oracle).expect("runs");

    println!("slots: |{a}⟩ and |{b}⟩\n");
    for entry in &trace {
        println!("{}", serde_json::to_string(entry).expect("serializes"));
    }
    println!("\nmeasured question register: {}", u8::from(outcome));
    println!("queries charged: {}", oracle.query_count());
}
