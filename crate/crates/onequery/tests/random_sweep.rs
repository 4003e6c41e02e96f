//! End-to-end sweep over a large random corpus: beyond the exhaustive
//! acceptance corpus, the one-query protocols and the two-query baseline
//! must also agree on a thousand seeded threshold-ratio CNF pairs.

use onequery::harness::random_corpus;
use onequery::{sweep, SolverKind};

#[test]
fn thousand_random_pairs_sweep_clean() {
    let corpus = random_corpus(1000, 4, 17, 3, 42);
    let report = sweep(&corpus, SolverKind::Dpll);
    assert_eq!(report.summary.cases, 16_000);
    assert_eq!(report.summary.mismatches, 0);
    assert_eq!(report.summary.determinism_violations, 0);
    assert_eq!(report.summary.max_quantum_queries, 1);
    assert!(report
        .records
        .iter()
        .all(|r| r.classical_queries == 2 && r.quantum_queries <= 1));
}

#[test]
fn brute_force_backend_sweeps_clean_too() {
    let corpus = random_corpus(60, 4, 17, 3, 43);
    let dpll = sweep(&corpus, SolverKind::Dpll);
    let brute = sweep(&corpus, SolverKind::BruteForce);
    assert!(dpll.passed() && brute.passed());
    // Same answers from both backends, record for record.
    for (d, b) in dpll.records.iter().zip(&brute.records) {
        assert_eq!(d.classical_answer, b.classical_answer);
        assert_eq!(d.quantum_answer, b.quantum_answer);
    }
}
