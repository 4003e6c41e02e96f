//! Every oracle query is logged and counted. A classical call charges one
//! query; so does one quantum application, even though simulating it
//! evaluates both slot labels. The log exports as JSON lines.

use onequery::dispatch::{eval_classical_two_query, execute, select_protocol};
use onequery::{parse_expr, CountedOracle, TruthTable2};

fn main() {
    let a = parse_expr("x1 & !x1").expect("valid");
    let b = parse_expr("x1").expect("valid");
    let xor = TruthTable2::parse("xor").expect("known mnemonic");

    let mut baseline = CountedOracle::dpll();
    eval_classical_two_query(xor, &a, &b, &mut baseline).expect("solves");
    println!(
        "two-query baseline log ({} queries):",
        baseline.query_count()
    );
    print!("{}", baseline.export_log_jsonl());

    let mut folded = CountedOracle::dpll();
    execute(&select_protocol(xor), &a, &b, &mut folded).expect("runs");
    println!("\none-call protocol log ({} query):", folded.query_count());
    print!("{}", folded.export_log_jsonl());
}
