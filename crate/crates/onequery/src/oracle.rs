//! The satisfiability decision oracle, with strict query accounting.
//!
//! Two independent decision routes back the oracle: exhaustive assignment
//! enumeration over the expression tree, and DPLL over the Tseitin encoding.
//! They are cross-checked against each other in the test suites; neither is
//! ever used to validate itself.
//!
//! A [`CountedOracle`] charges one query per classical call and one query per
//! quantum oracle application, even though simulating an application must
//! evaluate the answer for both basis labels. The log records which kind each
//! query was.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{serialize_expr, tseitin, CnfFormula, Formula};

/// Enumeration guard for [`brute_force_sat`].
pub const BRUTE_FORCE_VAR_LIMIT: u32 = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("formula has {max_var} variables, over the brute-force limit of {limit}")]
    VariableBudget { max_var: u32, limit: u32 },
    #[error("stub oracle has no answer for formula {0:?}")]
    StubMiss(String),
}

/// Decides satisfiability by evaluating every assignment; the reference
/// answer the rest of the crate is checked against.
pub fn brute_force_sat(f: &Formula) -> Result<bool, SolveError> {
    let n = f.max_var();
    if n > BRUTE_FORCE_VAR_LIMIT {
        return Err(SolveError::VariableBudget {
            max_var: n,
            limit: BRUTE_FORCE_VAR_LIMIT,
        });
    }
    Ok((0..1u64 << n).any(|assignment| f.eval(assignment)))
}

/// DPLL satisfiability decision.
///
/// The rule is fixed for reproducibility: propagate units to fixpoint, then
/// assign the lowest-index pure literal, and only then branch on the
/// lowest-index variable still occurring in an unsatisfied clause, trying
/// true first. The clause database is indexed once and never rewritten;
/// assignments maintain per-clause counters and undo through a trail.
pub fn dpll_sat(cnf: &CnfFormula) -> bool {
    if cnf.clauses.is_empty() {
        return true;
    }
    if cnf.clauses.iter().any(|c| c.is_empty()) {
        return false;
    }
    DpllState::new(cnf).solve()
}

struct DpllState<'a> {
    clauses: &'a [Vec<i32>],
    /// Per variable (1-based), the clauses where it occurs positively /
    /// negatively, one entry per occurrence.
    pos_occ: Vec<Vec<u32>>,
    neg_occ: Vec<Vec<u32>>,
    /// 0 unassigned, +1 true, -1 false; 1-based.
    assignment: Vec<i8>,
    true_count: Vec<u32>,
    false_count: Vec<u32>,
    /// Per variable, occurrences of each polarity in not-yet-satisfied
    /// clauses; drives pure-literal detection and branch selection.
    active_pos: Vec<u32>,
    active_neg: Vec<u32>,
    satisfied: usize,
    trail: Vec<i32>,
}

impl<'a> DpllState<'a> {
    fn new(cnf: &'a CnfFormula) -> Self {
        let n = cnf.num_vars as usize;
        let mut state = DpllState {
            clauses: &cnf.clauses,
            pos_occ: vec![Vec::new(); n + 1],
            neg_occ: vec![Vec::new(); n + 1],
            assignment: vec![0; n + 1],
            true_count: vec![0; cnf.clauses.len()],
            false_count: vec![0; cnf.clauses.len()],
            active_pos: vec![0; n + 1],
            active_neg: vec![0; n + 1],
            satisfied: 0,
            trail: Vec::new(),
        };
        for (index, clause) in cnf.clauses.iter().enumerate() {
            for &literal in clause {
                let var = literal.unsigned_abs() as usize;
                if literal > 0 {
                    state.pos_occ[var].push(index as u32);
                    state.active_pos[var] += 1;
                } else {
                    state.neg_occ[var].push(index as u32);
                    state.active_neg[var] += 1;
                }
            }
        }
        state
    }

    fn assign(&mut self, literal: i32) {
        let var = literal.unsigned_abs() as usize;
        debug_assert_eq!(self.assignment[var], 0);
        self.assignment[var] = literal.signum() as i8;
        self.trail.push(literal);
        let same = if literal > 0 {
            &self.pos_occ
        } else {
            &self.neg_occ
        };
        for k in 0..same[var].len() {
            let c = if literal > 0 {
                self.pos_occ[var][k]
            } else {
                self.neg_occ[var][k]
            } as usize;
            self.true_count[c] += 1;
            if self.true_count[c] == 1 {
                self.satisfied += 1;
                for &l in &self.clauses[c] {
                    let v = l.unsigned_abs() as usize;
                    if l > 0 {
                        self.active_pos[v] -= 1;
                    } else {
                        self.active_neg[v] -= 1;
                    }
                }
            }
        }
        let opposite_len = if literal > 0 {
            self.neg_occ[var].len()
        } else {
            self.pos_occ[var].len()
        };
        for k in 0..opposite_len {
            let c = if literal > 0 {
                self.neg_occ[var][k]
            } else {
                self.pos_occ[var][k]
            } as usize;
            self.false_count[c] += 1;
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let literal = self.trail.pop().expect("trail above mark");
            let var = literal.unsigned_abs() as usize;
            self.assignment[var] = 0;
            let same_len = if literal > 0 {
                self.pos_occ[var].len()
            } else {
                self.neg_occ[var].len()
            };
            for k in 0..same_len {
                let c = if literal > 0 {
                    self.pos_occ[var][k]
                } else {
                    self.neg_occ[var][k]
                } as usize;
                if self.true_count[c] == 1 {
                    self.satisfied -= 1;
                    for &l in &self.clauses[c] {
                        let v = l.unsigned_abs() as usize;
                        if l > 0 {
                            self.active_pos[v] += 1;
                        } else {
                            self.active_neg[v] += 1;
                        }
                    }
                }
                self.true_count[c] -= 1;
            }
            let opposite_len = if literal > 0 {
                self.neg_occ[var].len()
            } else {
                self.pos_occ[var].len()
            };
            for k in 0..opposite_len {
                let c = if literal > 0 {
                    self.neg_occ[var][k]
                } else {
                    self.pos_occ[var][k]
                } as usize;
                self.false_count[c] -= 1;
            }
        }
    }

    /// Processes trail entries from `from` on, assigning forced literals.
    /// Returns false on conflict.
    fn propagate_from(&mut self, mut from: usize) -> bool {
        while from < self.trail.len() {
            let literal = self.trail[from];
            from += 1;
            let var = literal.unsigned_abs() as usize;
            let touched_len = if literal > 0 {
                self.neg_occ[var].len()
            } else {
                self.pos_occ[var].len()
            };
            for k in 0..touched_len {
                let c = if literal > 0 {
                    self.neg_occ[var][k]
                } else {
                    self.pos_occ[var][k]
                } as usize;
                if !self.check_clause(c) {
                    return false;
                }
            }
        }
        true
    }

    /// Conflict/unit test for one clause under the current counters.
    fn check_clause(&mut self, c: usize) -> bool {
        if self.true_count[c] > 0 {
            return true;
        }
        let remaining = self.clauses[c].len() as u32 - self.false_count[c];
        if remaining == 0 {
            return false;
        }
        if remaining == 1 {
            if let Some(&unit) = self.clauses[c]
                .iter()
                .find(|l| self.assignment[l.unsigned_abs() as usize] == 0)
            {
                self.assign(unit);
            }
        }
        true
    }

    /// Seeds propagation with the clauses that are units before any
    /// assignment, in clause order.
    fn assign_initial_units(&mut self) -> bool {
        for c in 0..self.clauses.len() {
            if !self.check_clause(c) {
                return false;
            }
        }
        true
    }

    fn lowest_pure_literal(&self) -> Option<i32> {
        for var in 1..self.assignment.len() {
            if self.assignment[var] != 0 {
                continue;
            }
            match (self.active_pos[var] > 0, self.active_neg[var] > 0) {
                (true, false) => return Some(var as i32),
                (false, true) => return Some(-(var as i32)),
                _ => {}
            }
        }
        None
    }

    fn lowest_active_var(&self) -> Option<usize> {
        (1..self.assignment.len()).find(|&var| {
            self.assignment[var] == 0 && (self.active_pos[var] > 0 || self.active_neg[var] > 0)
        })
    }

    fn solve(&mut self) -> bool {
        if !self.assign_initial_units() || !self.propagate_from(0) {
            return false;
        }
        self.search()
    }

    /// Simplify to fixpoint, then branch. The trail is restored to its
    /// entry state on failure.
    fn search(&mut self) -> bool {
        let mark = self.trail.len();
        let mut from = mark;
        loop {
            if !self.propagate_from(from) {
                self.undo_to(mark);
                return false;
            }
            if self.satisfied == self.clauses.len() {
                return true;
            }
            from = self.trail.len();
            match self.lowest_pure_literal() {
                Some(pure) => self.assign(pure),
                None => break,
            }
        }
        let var = self
            .lowest_active_var()
            .expect("unsatisfied conflict-free state has an active variable");
        for literal in [var as i32, -(var as i32)] {
            let branch_mark = self.trail.len();
            self.assign(literal);
            if !self.propagate_from(branch_mark) {
                self.undo_to(branch_mark);
                continue;
            }
            if self.satisfied == self.clauses.len() || self.search() {
                return true;
            }
            self.undo_to(branch_mark);
        }
        self.undo_to(mark);
        false
    }
}

/// Solver backing a [`CountedOracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    /// DPLL over the Tseitin encoding; the default.
    Dpll,
    /// Exhaustive enumeration; the cross-checking reference.
    BruteForce,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Dpll => "dpll",
            SolverKind::BruteForce => "brute",
        }
    }
}

#[derive(Debug, Clone)]
enum Backend {
    Solver(SolverKind),
    /// Canned answers keyed by serialized formula text. Lets protocol tests
    /// pin the oracle bits directly, independent of any solver.
    Stub(HashMap<String, bool>),
}

/// One entry per charged query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryRecord {
    ClassicalCall {
        formula: String,
        answer: bool,
    },
    /// A single unitary application; the simulator evaluated both basis
    /// labels, but only one query is charged.
    QuantumApplication {
        slot0: String,
        slot1: String,
        answers: (bool, bool),
    },
}

#[derive(Serialize)]
struct ClassicalLine<'a> {
    kind: &'static str,
    formula: &'a str,
    answer: u8,
}

#[derive(Serialize)]
struct QuantumLine {
    kind: &'static str,
    formula: String,
    answers: [u8; 2],
}

impl QueryRecord {
    pub fn kind(&self) -> &'static str {
        match self {
            QueryRecord::ClassicalCall { .. } => "classical-call",
            QueryRecord::QuantumApplication { .. } => "quantum-application",
        }
    }

    /// One JSON object per record; classical lines carry `answer`, quantum
    /// lines carry both basis answers.
    pub fn json_line(&self) -> String {
        match self {
            QueryRecord::ClassicalCall { formula, answer } => {
                serde_json::to_string(&ClassicalLine {
                    kind: self.kind(),
                    formula,
                    answer: u8::from(*answer),
                })
            }
            QueryRecord::QuantumApplication {
                slot0,
                slot1,
                answers,
            } => serde_json::to_string(&QuantumLine {
                kind: self.kind(),
                formula: format!("{slot0} ; {slot1}"),
                answers: [u8::from(answers.0), u8::from(answers.1)],
            }),
        }
        .expect("query records always serialize")
    }
}

/// Satisfiability oracle that logs and counts every query.
///
/// Single-writer: one protocol run owns one oracle. The count never decreases
/// and always equals the log length.
#[derive(Debug, Clone)]
pub struct CountedOracle {
    backend: Backend,
    log: Vec<QueryRecord>,
}

impl CountedOracle {
    pub fn new(solver: SolverKind) -> Self {
        CountedOracle {
            backend: Backend::Solver(solver),
            log: Vec::new(),
        }
    }

    pub fn dpll() -> Self {
        Self::new(SolverKind::Dpll)
    }

    pub fn brute_force() -> Self {
        Self::new(SolverKind::BruteForce)
    }

    /// Oracle that answers from a fixed table instead of solving. Formulas
    /// are matched by their serialized text.
    pub fn with_stub(entries: impl IntoIterator<Item = (Formula, bool)>) -> Self {
        let table = entries
            .into_iter()
            .map(|(f, answer)| (serialize_expr(&f), answer))
            .collect();
        CountedOracle {
            backend: Backend::Stub(table),
            log: Vec::new(),
        }
    }

    pub fn query_count(&self) -> usize {
        self.log.len()
    }

    pub fn log(&self) -> &[QueryRecord] {
        &self.log
    }

    /// Newline-terminated JSON lines, one per query.
    pub fn export_log_jsonl(&self) -> String {
        let mut out = String::new();
        for record in &self.log {
            out.push_str(&record.json_line());
            out.push('\n');
        }
        out
    }

    fn decide(&self, f: &Formula) -> Result<bool, SolveError> {
        match &self.backend {
            Backend::Solver(SolverKind::Dpll) => Ok(dpll_sat(&tseitin(f))),
            Backend::Solver(SolverKind::BruteForce) => brute_force_sat(f),
            Backend::Stub(table) => {
                let key = serialize_expr(f);
                table.get(&key).copied().ok_or(SolveError::StubMiss(key))
            }
        }
    }

    /// Answers "is `f` satisfiable?" and charges one classical query.
    pub fn classical_query(&mut self, f: &Formula) -> Result<bool, SolveError> {
        let answer = self.decide(f)?;
        self.log.push(QueryRecord::ClassicalCall {
            formula: serialize_expr(f),
            answer,
        });
        Ok(answer)
    }

    /// Answers for both basis labels of one unitary oracle application,
    /// charging a single query.
    pub fn quantum_application_answers(
        &mut self,
        q0: &Formula,
        q1: &Formula,
    ) -> Result<(bool, bool), SolveError> {
        let answers = (self.decide(q0)?, self.decide(q1)?);
        self.log.push(QueryRecord::QuantumApplication {
            slot0: serialize_expr(q0),
            slot1: serialize_expr(q1),
            answers,
        });
        Ok(answers)
    }
}
