//! Exhaustively verify the one-query protocols against the two-query
//! baseline on a small formula corpus.

use onequery::harness::enumerate_small;
use onequery::{sweep, SolverKind};

fn main() {
    let corpus = enumerate_small(2, 4, 2000).expect("within budget");
    println!(
        "corpus: {} pairs of formulas with <=2 variables and <=4 nodes",
        corpus.pairs.len()
    );

    let report = sweep(&corpus, SolverKind::Dpll);
    println!("{}\n", report.human_summary());

    let sample = &report.records[6 * corpus.pairs.len() + 1]; // a xor case
    println!("one record, as the JSON report stores it:");
    println!(
        "{}",
        serde_json::to_string_pretty(sample).expect("serializes")
    );
    assert!(report.passed());
}
