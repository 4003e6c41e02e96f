//! Fold two non-adaptive SAT-oracle queries into one.
//!
//! A classical program that asks a SAT oracle two fixed questions A and B and
//! combines the answers with some function F: {0,1}² → {0,1} can always be
//! replaced by a strategy that asks at most one question: either a merged
//! classical instance (A∨B or A∧B), or a single application of the oracle in
//! superposition over two labeled questions, read out exactly through a
//! Deutsch-style circuit. This crate mechanizes both sides at desk scale —
//! formula plumbing, counted oracles, an exact-arithmetic circuit simulator,
//! the protocol dispatch for all 16 functions, and verification sweeps that
//! compare the one-query strategies against the two-query baseline on
//! exhaustive and random instance corpora.
//!
//! ## Modules
//!
//! * [`formula`] — expression ASTs, the expression and DIMACS parsers and
//!   writers, instance-merging combinators, Tseitin CNF encoding.
//! * [`oracle`] — brute-force and DPLL satisfiability backends behind a
//!   query-counting oracle with an exportable log.
//! * [`qsim`] — the two one-call circuits over a 2-slot question register,
//!   with amplitudes in the exact ring (a + b√2)/2^k.
//! * [`dispatch`] — truth tables, accepting sets, protocol selection, and the
//!   two-query classical baseline.
//! * [`harness`] — corpora, sweeps, JSON reports, and the black-box contrast
//!   demo.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example parse_and_solve    # parsers, Tseitin, both solvers
//! cargo run --example combinators       # instance merging and oracle laws
//! cargo run --example deutsch_xor       # XOR of two answers, one query
//! cargo run --example deutsch_and_not   # "A sat and B unsat", one query
//! cargo run --example circuit_trace     # exact amplitudes after each stage
//! cargo run --example protocol_table    # all 16 tables and their protocols
//! cargo run --example sweep_exhaustive  # exhaustive corpus verification
//! cargo run --example sweep_random      # seeded random-corpus verification
//! cargo run --example contrast_demo     # unstructured black-box contrast
//! cargo run --example query_log         # counted oracle log as JSON lines
//! ```
//!
//! The `onequery` binary wraps the same machinery in `run`, `verify`, and
//! `contrast` subcommands; see the README.

pub mod dispatch;
pub mod formula;
pub mod harness;
pub mod oracle;
pub mod qsim;

pub use dispatch::{eval_classical_two_query, execute, select_protocol, Protocol, TruthTable2};
pub use formula::{
    and_combine, or_combine, parse_dimacs, parse_expr, serialize_dimacs, serialize_expr,
    CnfFormula, Formula,
};
pub use harness::{enumerate_small, random_corpus, sweep, verify_pair, Corpus, Report};
pub use oracle::{brute_force_sat, dpll_sat, CountedOracle, SolverKind};
pub use qsim::{run_deutsch_and_not, run_deutsch_xor, ExactAmp, QState};
