//! Verify the protocols on seeded random 3-CNF pairs near the
//! satisfiability threshold, where SAT and UNSAT instances mix.

use onequery::harness::random_corpus;
use onequery::{sweep, SolverKind};

fn main() {
    // clauses/vars = 42/10 = 4.2, close to the 3-SAT threshold.
    let corpus = random_corpus(150, 10, 42, 3, 7);
    let report = sweep(&corpus, SolverKind::Dpll);
    println!("{}", report.human_summary());

    // Same seed, same corpus, byte-identical report.
    let again = sweep(&random_corpus(150, 10, 42, 3, 7), SolverKind::Dpll);
    println!(
        "\nrerun with the same seed is byte-identical: {}",
        report.to_json() == again.to_json()
    );
    assert!(report.passed());
}
