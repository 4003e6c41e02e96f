//! Corpus generation, verification sweeps, machine-readable reports, and the
//! unstructured-black-box contrast demo.
//!
//! A sweep runs every decision table against every formula pair in a corpus
//! twice: once with the naive two-query baseline and once with the dispatched
//! at-most-one-query protocol, on fresh oracles, and records whether the
//! answers agree. Reports are plain serde structs with a fixed field order,
//! so identical inputs produce byte-identical JSON.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dispatch::{
    eval_classical_two_query, execute, execute_with_trace, select_protocol, TruthTable2,
};
use crate::formula::{cnf_to_formula, serialize_expr, CnfFormula, Formula};
use crate::oracle::{CountedOracle, SolverKind};
use crate::qsim::{CircuitError, TraceEntry};
use thiserror::Error;

/// Hard ceiling on corpus sizes; enumeration requests beyond it are refused.
pub const MAX_CORPUS_PAIRS: usize = 1_000_000;
const MAX_CORPUS_FORMULAS: usize = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("exhaustive enumeration supports at most 3 variables, got {0}")]
    TooManyVars(u32),
    #[error("corpus budget exceeded: {requested} {unit} requested, limit {limit}")]
    BudgetExceeded {
        requested: usize,
        unit: &'static str,
        limit: usize,
    },
}

/// How a corpus was produced; embedded in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum CorpusConfig {
    ExhaustiveSmall {
        max_vars: u32,
        max_nodes: usize,
        max_pairs: usize,
    },
    Random {
        pairs: usize,
        vars: u32,
        clauses: usize,
        width: usize,
        seed: u64,
    },
}

/// A list of formula pairs plus the recipe that produced it.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub config: CorpusConfig,
    pub pairs: Vec<(Formula, Formula)>,
}

/// Every expression tree with at most `max_vars` variables and `max_nodes`
/// nodes, deduplicated and ordered by serialized text.
pub fn enumerate_formulas(max_vars: u32, max_nodes: usize) -> Result<Vec<Formula>, CorpusError> {
    if max_vars > 3 {
        return Err(CorpusError::TooManyVars(max_vars));
    }
    let mut by_size: Vec<Vec<Formula>> = Vec::new();
    let mut total = 0usize;
    for size in 1..=max_nodes {
        let mut bucket: Vec<Formula> = Vec::new();
        if size == 1 {
            bucket.push(Formula::False);
            bucket.push(Formula::True);
            for v in 1..=max_vars {
                bucket.push(Formula::var(v));
            }
        } else {
            for f in &by_size[size - 2] {
                bucket.push(!f.clone());
            }
            for left_size in 1..size - 1 {
                let right_size = size - 1 - left_size;
                for l in &by_size[left_size - 1] {
                    for r in &by_size[right_size - 1] {
                        bucket.push(l.clone().and(r.clone()));
                        bucket.push(l.clone().or(r.clone()));
                    }
                }
            }
        }
        total += bucket.len();
        if total > MAX_CORPUS_FORMULAS {
            return Err(CorpusError::BudgetExceeded {
                requested: total,
                unit: "formulas",
                limit: MAX_CORPUS_FORMULAS,
            });
        }
        by_size.push(bucket);
    }
    let mut dedup: std::collections::BTreeMap<String, Formula> = std::collections::BTreeMap::new();
    for bucket in by_size {
        for f in bucket {
            dedup.insert(serialize_expr(&f), f);
        }
    }
    Ok(dedup.into_values().collect())
}

/// Exhaustive small corpus: all formula ASTs within the bounds, paired as the
/// full Cartesian square when it fits in `max_pairs`, and otherwise as the two
/// constant pairs (T,F), (F,T) followed by an evenly strided sample of the
/// square in row-major order.
pub fn enumerate_small(
    max_vars: u32,
    max_nodes: usize,
    max_pairs: usize,
) -> Result<Corpus, CorpusError> {
    if max_pairs > MAX_CORPUS_PAIRS {
        return Err(CorpusError::BudgetExceeded {
            requested: max_pairs,
            unit: "pairs",
            limit: MAX_CORPUS_PAIRS,
        });
    }
    let formulas = enumerate_formulas(max_vars, max_nodes)?;
    let n = formulas.len();
    let square = n * n;
    let mut pairs = Vec::new();
    if square <= max_pairs {
        for l in &formulas {
            for r in &formulas {
                pairs.push((l.clone(), r.clone()));
            }
        }
    } else {
        pairs.push((Formula::True, Formula::False));
        pairs.push((Formula::False, Formula::True));
        let samples = max_pairs.saturating_sub(2);
        if let Some(step) = square.checked_div(samples) {
            for i in 0..samples {
                let index = i * step;
                pairs.push((formulas[index / n].clone(), formulas[index % n].clone()));
            }
        }
        pairs.truncate(max_pairs);
    }
    Ok(Corpus {
        config: CorpusConfig::ExhaustiveSmall {
            max_vars,
            max_nodes,
            max_pairs,
        },
        pairs,
    })
}

fn random_cnf_clauses(rng: &mut ChaCha8Rng, vars: u32, clauses: usize, width: usize) -> CnfFormula {
    assert!(width as u32 <= vars, "clause width must not exceed vars");
    assert!(vars >= 1, "need at least one variable");
    let mut out = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let chosen = rand::seq::index::sample(rng, vars as usize, width);
        let clause = chosen
            .into_iter()
            .map(|v| {
                let literal = (v + 1) as i32;
                if rng.gen::<bool>() {
                    literal
                } else {
                    -literal
                }
            })
            .collect();
        out.push(clause);
    }
    CnfFormula {
        num_vars: vars,
        clauses: out,
    }
}

/// Uniform random k-CNF as an expression tree: each clause draws `width`
/// distinct variables with independent polarities. The same seed always
/// yields the same formula.
pub fn gen_random_cnf(vars: u32, clauses: usize, width: usize, seed: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cnf_to_formula(&random_cnf_clauses(&mut rng, vars, clauses, width))
}

/// Seeded corpus of random CNF pairs; both sides of a pair are drawn from one
/// generator stream, so the whole corpus is a function of the seed.
pub fn random_corpus(pairs: usize, vars: u32, clauses: usize, width: usize, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let a = cnf_to_formula(&random_cnf_clauses(&mut rng, vars, clauses, width));
        let b = cnf_to_formula(&random_cnf_clauses(&mut rng, vars, clauses, width));
        out.push((a, b));
    }
    Corpus {
        config: CorpusConfig::Random {
            pairs,
            vars,
            clauses,
            width,
            seed,
        },
        pairs: out,
    }
}

/// Outcome of checking one (table, pair) case both ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub table: String,
    /// Index into the corpus pair list; 0 for single runs.
    pub pair: usize,
    pub protocol: String,
    pub classical_answer: Option<u8>,
    pub quantum_answer: Option<u8>,
    pub classical_queries: usize,
    pub quantum_queries: usize,
    pub agreement: bool,
    pub determinism_violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Runs the two-query baseline and the dispatched protocol on fresh oracles
/// and records answers, query counts, and agreement. Solver and simulator
/// errors are captured in the record, never thrown.
pub fn verify_pair(
    table: TruthTable2,
    a: &Formula,
    b: &Formula,
    solver: SolverKind,
) -> SweepRecord {
    let protocol = select_protocol(table);

    let mut classical_oracle = CountedOracle::new(solver);
    let classical = eval_classical_two_query(table, a, b, &mut classical_oracle);

    let mut quantum_oracle = CountedOracle::new(solver);
    let quantum = execute(&protocol, a, b, &mut quantum_oracle);

    let determinism_violation = matches!(quantum, Err(CircuitError::NonDeterministic));
    let error = match (&classical, &quantum) {
        (Ok(_), Ok(_)) => None,
        (Err(e), _) => Some(e.to_string()),
        (_, Err(e)) => Some(e.to_string()),
    };
    let agreement = matches!((&classical, &quantum), (Ok(c), Ok(q)) if c == q);

    SweepRecord {
        table: table.to_string(),
        pair: 0,
        protocol: protocol.to_string(),
        classical_answer: classical.ok().map(u8::from),
        quantum_answer: quantum.ok().map(u8::from),
        classical_queries: classical_oracle.query_count(),
        quantum_queries: quantum_oracle.query_count(),
        agreement,
        determinism_violation,
        error,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub pairs: usize,
    pub tables: usize,
    pub mismatches: usize,
    pub determinism_violations: usize,
    pub max_quantum_queries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportConfig {
    pub oracle: &'static str,
    pub corpus: CorpusConfig,
}

/// Full sweep output; serialize with `serde_json` for the machine-readable
/// form. Field order is fixed so equal runs diff clean.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub config: ReportConfig,
    pub summary: Summary,
    pub records: Vec<SweepRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.mismatches == 0 && self.summary.determinism_violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// One-paragraph human summary for stderr.
    pub fn human_summary(&self) -> String {
        format!(
            "cases: {} ({} tables x {} pairs)\nmismatches: {}\ndeterminism violations: {}\nmax quantum queries: {}\nresult: {}",
            self.summary.cases,
            self.summary.tables,
            self.summary.pairs,
            self.summary.mismatches,
            self.summary.determinism_violations,
            self.summary.max_quantum_queries,
            if self.passed() { "PASS" } else { "FAIL" },
        )
    }
}

/// Verifies every decision table against every pair in the corpus.
pub fn sweep(corpus: &Corpus, solver: SolverKind) -> Report {
    let mut records = Vec::with_capacity(16 * corpus.pairs.len());
    for table in TruthTable2::all() {
        for (index, (a, b)) in corpus.pairs.iter().enumerate() {
            let mut record = verify_pair(table, a, b, solver);
            record.pair = index;
            records.push(record);
        }
    }
    let summary = Summary {
        cases: records.len(),
        pairs: corpus.pairs.len(),
        tables: 16,
        mismatches: records.iter().filter(|r| !r.agreement).count(),
        determinism_violations: records.iter().filter(|r| r.determinism_violation).count(),
        max_quantum_queries: records.iter().map(|r| r.quantum_queries).max().unwrap_or(0),
    };
    Report {
        config: ReportConfig {
            oracle: solver.name(),
            corpus: corpus.config.clone(),
        },
        summary,
        records,
    }
}

/// Single verification record for one table and one explicit formula pair,
/// optionally with the circuit amplitude trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunRecord {
    pub table: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_name: Option<&'static str>,
    pub a: String,
    pub b: String,
    pub protocol: String,
    pub classical_answer: Option<u8>,
    pub quantum_answer: Option<u8>,
    pub classical_queries: usize,
    pub quantum_queries: usize,
    pub agreement: bool,
    pub determinism_violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
}

/// One verification of `table` on the pair, as the CLI's `run` emits.
pub fn run_single(
    table: TruthTable2,
    a: &Formula,
    b: &Formula,
    solver: SolverKind,
    with_trace: bool,
) -> RunRecord {
    let protocol = select_protocol(table);

    let mut classical_oracle = CountedOracle::new(solver);
    let classical = eval_classical_two_query(table, a, b, &mut classical_oracle);

    let mut quantum_oracle = CountedOracle::new(solver);
    let (quantum, trace) = if with_trace {
        match execute_with_trace(&protocol, a, b, &mut quantum_oracle) {
            Ok((bit, steps)) => (Ok(bit), Some(steps)),
            Err(e) => (Err(e), Some(Vec::new())),
        }
    } else {
        (execute(&protocol, a, b, &mut quantum_oracle), None)
    };

    let determinism_violation = matches!(quantum, Err(CircuitError::NonDeterministic));
    let error = match (&classical, &quantum) {
        (Ok(_), Ok(_)) => None,
        (Err(e), _) => Some(e.to_string()),
        (_, Err(e)) => Some(e.to_string()),
    };
    let agreement = matches!((&classical, &quantum), (Ok(c), Ok(q)) if c == q);

    RunRecord {
        table: table.to_string(),
        table_name: table.name(),
        a: serialize_expr(a),
        b: serialize_expr(b),
        protocol: protocol.to_string(),
        classical_answer: classical.ok().map(u8::from),
        quantum_answer: quantum.ok().map(u8::from),
        classical_queries: classical_oracle.query_count(),
        quantum_queries: quantum_oracle.query_count(),
        agreement,
        determinism_violation,
        error,
        trace,
    }
}

/// Which of the two oracle bits a one-query classical strategy reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueriedBit {
    First,
    Second,
}

/// A classical strategy against an unstructured two-bit black box: read one
/// bit, answer through a fixed output map. There are exactly 8 of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionTree1 {
    pub queried: QueriedBit,
    /// Output for reading 0, output for reading 1.
    pub outputs: [bool; 2],
}

impl DecisionTree1 {
    pub fn all() -> [DecisionTree1; 8] {
        let mut trees = [DecisionTree1 {
            queried: QueriedBit::First,
            outputs: [false, false],
        }; 8];
        let mut i = 0;
        for queried in [QueriedBit::First, QueriedBit::Second] {
            for out0 in [false, true] {
                for out1 in [false, true] {
                    trees[i] = DecisionTree1 {
                        queried,
                        outputs: [out0, out1],
                    };
                    i += 1;
                }
            }
        }
        trees
    }

    pub fn evaluate(&self, a: bool, b: bool) -> bool {
        let read = match self.queried {
            QueriedBit::First => a,
            QueriedBit::Second => b,
        };
        self.outputs[usize::from(read)]
    }

    /// True iff this tree computes `table` on all four input patterns.
    pub fn computes(&self, table: TruthTable2) -> bool {
        [(false, false), (false, true), (true, false), (true, true)]
            .into_iter()
            .all(|(a, b)| self.evaluate(a, b) == table.eval(a, b))
    }

    pub fn describe(&self) -> String {
        format!(
            "read {}; 0->{}, 1->{}",
            match self.queried {
                QueriedBit::First => "first",
                QueriedBit::Second => "second",
            },
            u8::from(self.outputs[0]),
            u8::from(self.outputs[1]),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContrastRow {
    pub table: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<&'static str>,
    pub succeeding_trees: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
}

/// For every decision table, counts how many of the 8 one-query decision
/// trees compute it against an unstructured black box. AND and XOR get zero;
/// the single-bit projections do not — the contrast with the structured
/// one-query protocols above.
pub fn contrast_demo() -> Vec<ContrastRow> {
    TruthTable2::all()
        .map(|table| {
            let winners: Vec<DecisionTree1> = DecisionTree1::all()
                .into_iter()
                .filter(|tree| tree.computes(table))
                .collect();
            ContrastRow {
                table: table.to_string(),
                name: table.name(),
                succeeding_trees: winners.len(),
                example: winners.first().map(DecisionTree1::describe),
            }
        })
        .collect()
}

/// Plain-text table for the CLI.
pub fn render_contrast(rows: &[ContrastRow]) -> String {
    let mut out = String::from("table  name      trees  example strategy\n");
    for row in rows {
        out.push_str(&format!(
            "{:<6} {:<9} {:>2}/8   {}\n",
            row.table,
            row.name.unwrap_or("-"),
            row.succeeding_trees,
            row.example.as_deref().unwrap_or("-"),
        ));
    }
    out
}
