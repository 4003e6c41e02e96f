//! Boolean formulas and the satisfiability-preserving combinators that merge
//! two instances into one.
//!
//! Two concrete syntaxes are supported:
//!
//! * expression text, `expr := term ('|' term)* ; term := factor ('&' factor)* ;
//!   factor := '!' factor | '(' expr ')' | var | 'T' | 'F' ; var := 'x' [1-9][0-9]*`,
//!   with `!` binding tighter than `&`, which binds tighter than `|`;
//! * DIMACS CNF (`c` comments, `p cnf <vars> <clauses>` header, 0-terminated
//!   clauses).
//!
//! Formulas are plain immutable trees. `or_combine` and `and_combine` implement
//! the instance-merging identities O(A)∨O(B) = O(A∨B) and O(A)∧O(B) = O(A∧B):
//! the right operand's variables are shifted past the left operand's so the two
//! existential blocks stay independent.

use std::fmt;

use thiserror::Error;

/// Boolean expression tree over positive-integer variables.
///
/// `Var(0)` is never produced by the constructors or parsers; all code may
/// assume indices start at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(u32),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    True,
    False,
}

impl Formula {
    /// Variable with 1-based index. Panics on index 0.
    pub fn var(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Formula::Var(index)
    }

    pub fn and(self, rhs: Self) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Self) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    /// Largest variable index present, 0 for variable-free formulas.
    pub fn max_var(&self) -> u32 {
        match self {
            Formula::Var(i) => *i,
            Formula::Not(c) => c.max_var(),
            Formula::And(l, r) | Formula::Or(l, r) => l.max_var().max(r.max_var()),
            Formula::True | Formula::False => 0,
        }
    }

    /// Total node count of the tree.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::True | Formula::False => 1,
            Formula::Not(c) => 1 + c.node_count(),
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// Evaluates under the assignment encoded bitwise: variable `i` is true
    /// iff bit `i - 1` of `assignment` is set. Only meaningful for
    /// `max_var() <= 64`.
    pub fn eval(&self, assignment: u64) -> bool {
        match self {
            Formula::Var(i) => assignment >> (i - 1) & 1 == 1,
            Formula::Not(c) => !c.eval(assignment),
            Formula::And(l, r) => l.eval(assignment) && r.eval(assignment),
            Formula::Or(l, r) => l.eval(assignment) || r.eval(assignment),
            Formula::True => true,
            Formula::False => false,
        }
    }
}

impl std::ops::Not for Formula {
    type Output = Formula;
    fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(i) => write!(f, "x{i}"),
            Formula::Not(c) => write!(f, "!{c}"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Or(l, r) => write!(f, "({l} | {r})"),
            Formula::True => write!(f, "T"),
            Formula::False => write!(f, "F"),
        }
    }
}

/// Canonical text form; `parse_expr` inverts it exactly.
pub fn serialize_expr(f: &Formula) -> String {
    f.to_string()
}

/// Shifts every variable index up by `offset`. Satisfiability is unaffected;
/// the satisfying assignments are the originals relocated to the new indices.
pub fn rename_offset(f: &Formula, offset: u32) -> Formula {
    match f {
        Formula::Var(i) => Formula::Var(i.checked_add(offset).expect("variable index overflow")),
        Formula::Not(c) => Formula::Not(Box::new(rename_offset(c, offset))),
        Formula::And(l, r) => Formula::And(
            Box::new(rename_offset(l, offset)),
            Box::new(rename_offset(r, offset)),
        ),
        Formula::Or(l, r) => Formula::Or(
            Box::new(rename_offset(l, offset)),
            Box::new(rename_offset(r, offset)),
        ),
        Formula::True => Formula::True,
        Formula::False => Formula::False,
    }
}

/// Single instance that is satisfiable iff `a` is satisfiable or `b` is.
///
/// `b`'s variables are shifted past `a`'s, so each disjunct quantifies over
/// its own block and neither can constrain the other.
pub fn or_combine(a: &Formula, b: &Formula) -> Formula {
    Formula::Or(Box::new(a.clone()), Box::new(rename_offset(b, a.max_var())))
}

/// Single instance that is satisfiable iff both `a` and `b` are.
pub fn and_combine(a: &Formula, b: &Formula) -> Formula {
    Formula::And(Box::new(a.clone()), Box::new(rename_offset(b, a.max_var())))
}

/// Syntax error in expression text, with a byte offset into the input.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("{message} at byte {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut node = self.parse_and()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            node = node.or(self.parse_and()?);
        }
        Ok(node)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut node = self.parse_factor()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            node = node.and(self.parse_factor()?);
        }
        Ok(node)
    }

    fn parse_factor(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            None => Err(ParseError::new(self.pos, "unexpected end of input")),
            Some(b'!') => {
                self.pos += 1;
                Ok(!self.parse_factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_or()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(ParseError::new(self.pos, "expected ')'"))
                }
            }
            Some(b'x') => {
                self.pos += 1;
                self.parse_var_index()
            }
            Some(b'T') => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(c) => Err(ParseError::new(
                self.pos,
                format!("unexpected character {:?}", c as char),
            )),
        }
    }

    fn parse_var_index(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        if digits.is_empty() {
            return Err(ParseError::new(start, "expected variable index after 'x'"));
        }
        if digits[0] == b'0' {
            return Err(if digits == b"0" {
                ParseError::new(start, "variable index 0 is not allowed")
            } else {
                ParseError::new(start, "variable index must not start with 0")
            });
        }
        let text = std::str::from_utf8(digits).expect("digits are ascii");
        let index: u32 = text
            .parse()
            .map_err(|_| ParseError::new(start, "variable index too large"))?;
        Ok(Formula::Var(index))
    }
}

/// Parses expression text into a [`Formula`].
pub fn parse_expr(text: &str) -> Result<Formula, ParseError> {
    let mut parser = ExprParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let formula = parser.parse_or()?;
    if let Some(c) = parser.peek() {
        return Err(ParseError::new(
            parser.pos,
            format!("unexpected character {:?}", c as char),
        ));
    }
    Ok(formula)
}

/// Clause list in DIMACS conventions: positive literal = variable, negative =
/// negation. No clauses means trivially satisfiable; an empty clause makes the
/// whole instance unsatisfiable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<Vec<i32>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("missing 'p cnf' header")]
    MissingHeader,
    #[error("malformed header on line {line}: {text:?}")]
    MalformedHeader { line: usize, text: String },
    #[error("invalid token {token:?} on line {line}")]
    InvalidToken { line: usize, token: String },
    #[error("literal {literal} on line {line} exceeds declared variable count {declared}")]
    LiteralOutOfRange {
        line: usize,
        literal: i64,
        declared: u32,
    },
    #[error("clause {index} is missing its terminating 0")]
    MissingTerminator { index: usize },
    #[error("header declares {declared} clauses but file contains {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
}

/// Parses DIMACS CNF text. Header counts are validated: every literal must fit
/// the declared variable range and the clause count must match.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut lines = text.lines().enumerate();

    let (num_vars, declared_clauses) = loop {
        let Some((idx, line)) = lines.next() else {
            return Err(DimacsError::MissingHeader);
        };
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if !line.starts_with('p') {
            return Err(DimacsError::MissingHeader);
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let malformed = || DimacsError::MalformedHeader {
            line: idx + 1,
            text: line.to_string(),
        };
        if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
            return Err(malformed());
        }
        let vars: u32 = fields[2].parse().map_err(|_| malformed())?;
        let clauses: usize = fields[3].parse().map_err(|_| malformed())?;
        break (vars, clauses);
    };

    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        for token in line.split_whitespace() {
            let literal: i64 = token.parse().map_err(|_| DimacsError::InvalidToken {
                line: idx + 1,
                token: token.to_string(),
            })?;
            if literal == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if literal.unsigned_abs() > u64::from(num_vars) {
                return Err(DimacsError::LiteralOutOfRange {
                    line: idx + 1,
                    literal,
                    declared: num_vars,
                });
            } else {
                current.push(literal as i32);
            }
        }
    }
    if !current.is_empty() {
        return Err(DimacsError::MissingTerminator {
            index: clauses.len(),
        });
    }
    if clauses.len() != declared_clauses {
        return Err(DimacsError::ClauseCountMismatch {
            declared: declared_clauses,
            found: clauses.len(),
        });
    }
    Ok(CnfFormula { num_vars, clauses })
}

/// Emits DIMACS text; `parse_dimacs` inverts it clause for clause.
pub fn serialize_dimacs(cnf: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars, cnf.clauses.len());
    for clause in &cnf.clauses {
        for literal in clause {
            out.push_str(&literal.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Expands a CNF into the equivalent expression tree: clauses become
/// left-nested `Or` chains joined by a left-nested `And` chain.
pub fn cnf_to_formula(cnf: &CnfFormula) -> Formula {
    let clause_tree = |clause: &[i32]| -> Formula {
        let mut literals = clause.iter().map(|&l| {
            let var = Formula::Var(l.unsigned_abs());
            if l < 0 {
                !var
            } else {
                var
            }
        });
        match literals.next() {
            None => Formula::False,
            Some(first) => literals.fold(first, Formula::or),
        }
    };
    let mut clauses = cnf.clauses.iter().map(|c| clause_tree(c));
    match clauses.next() {
        None => Formula::True,
        Some(first) => clauses.fold(first, Formula::and),
    }
}

/// Equisatisfiable CNF encoding of an expression tree.
///
/// Original variables keep their indices; each non-leaf node gets a fresh
/// definitional variable above `max_var`, and a final unit clause asserts the
/// root. Output size is linear in the node count.
pub fn tseitin(f: &Formula) -> CnfFormula {
    let mut next_var = f.max_var();
    let mut clauses = Vec::new();
    let root = tseitin_node(f, &mut next_var, &mut clauses);
    clauses.push(vec![root]);
    CnfFormula {
        num_vars: next_var,
        clauses,
    }
}

fn fresh_var(next_var: &mut u32) -> i32 {
    *next_var += 1;
    *next_var as i32
}

/// Returns the literal representing `f`, appending its defining clauses.
fn tseitin_node(f: &Formula, next_var: &mut u32, clauses: &mut Vec<Vec<i32>>) -> i32 {
    match f {
        Formula::Var(i) => *i as i32,
        Formula::Not(c) => {
            let child = tseitin_node(c, next_var, clauses);
            let v = fresh_var(next_var);
            clauses.push(vec![-v, -child]);
            clauses.push(vec![v, child]);
            v
        }
        Formula::And(l, r) => {
            let left = tseitin_node(l, next_var, clauses);
            let right = tseitin_node(r, next_var, clauses);
            let v = fresh_var(next_var);
            clauses.push(vec![-v, left]);
            clauses.push(vec![-v, right]);
            clauses.push(vec![v, -left, -right]);
            v
        }
        Formula::Or(l, r) => {
            let left = tseitin_node(l, next_var, clauses);
            let right = tseitin_node(r, next_var, clauses);
            let v = fresh_var(next_var);
            clauses.push(vec![-v, left, right]);
            clauses.push(vec![v, -left]);
            clauses.push(vec![v, -right]);
            v
        }
        Formula::True => {
            let v = fresh_var(next_var);
            clauses.push(vec![v]);
            v
        }
        Formula::False => {
            let v = fresh_var(next_var);
            clauses.push(vec![-v]);
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_sat;
    use proptest::prelude::*;

    fn is_sat(f: &Formula) -> bool {
        brute_force_sat(f).expect("within brute-force budget")
    }

    #[test]
    fn parse_conjunction_with_negation() {
        let f = parse_expr("x1 & !x1").unwrap();
        assert_eq!(f, Formula::var(1).and(!Formula::var(1)));
    }

    #[test]
    fn parse_respects_precedence_and_parens() {
        let f = parse_expr("x1 | (x2 & !x3)").unwrap();
        assert_eq!(f, Formula::var(1).or(Formula::var(2).and(!Formula::var(3))));
        // Without parens, '&' still binds tighter than '|'.
        assert_eq!(parse_expr("x1 | x2 & !x3").unwrap(), f);
    }

    #[test]
    fn parse_rejects_variable_index_zero() {
        let err = parse_expr("x0 & x1").unwrap_err();
        assert_eq!(err.pos, 1);
        assert!(err.message.contains("variable index 0"), "{err}");
    }

    #[test]
    fn parse_rejects_trailing_garbage_and_bad_chars() {
        assert!(parse_expr("x1 x2").is_err());
        assert!(parse_expr("x1 &").is_err());
        assert!(parse_expr("(x1").is_err());
        assert!(parse_expr("y1").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("x01").is_err());
    }

    #[test]
    fn parse_constants() {
        assert_eq!(parse_expr("T").unwrap(), Formula::True);
        assert_eq!(
            parse_expr("!F & T").unwrap(),
            (!Formula::False).and(Formula::True)
        );
    }

    #[test]
    fn serialize_matches_expected_text() {
        let f = Formula::var(1).and(!Formula::var(1));
        assert_eq!(serialize_expr(&f), "(x1 & !x1)");
    }

    #[test]
    fn parse_dimacs_unit_contradiction() {
        let cnf = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").unwrap();
        assert_eq!(cnf.num_vars, 1);
        assert_eq!(cnf.clauses, vec![vec![1], vec![-1]]);
    }

    #[test]
    fn parse_dimacs_single_clause_with_comments() {
        let cnf = parse_dimacs("c sample\np cnf 2 1\nc mid comment\n1 -2 0\n").unwrap();
        assert_eq!(cnf.clauses, vec![vec![1, -2]]);
    }

    #[test]
    fn parse_dimacs_rejects_out_of_range_literal() {
        let err = parse_dimacs("p cnf 1 1\n2 0\n").unwrap_err();
        assert_eq!(
            err,
            DimacsError::LiteralOutOfRange {
                line: 2,
                literal: 2,
                declared: 1
            }
        );
    }

    #[test]
    fn parse_dimacs_rejects_structural_defects() {
        assert_eq!(
            parse_dimacs("1 0\n").unwrap_err(),
            DimacsError::MissingHeader
        );
        assert!(matches!(
            parse_dimacs("p cnf x 1\n1 0\n").unwrap_err(),
            DimacsError::MalformedHeader { .. }
        ));
        assert_eq!(
            parse_dimacs("p cnf 1 1\n1\n").unwrap_err(),
            DimacsError::MissingTerminator { index: 0 }
        );
        assert_eq!(
            parse_dimacs("p cnf 1 2\n1 0\n").unwrap_err(),
            DimacsError::ClauseCountMismatch {
                declared: 2,
                found: 1
            }
        );
        assert!(matches!(
            parse_dimacs("p cnf 1 1\n1 a 0\n").unwrap_err(),
            DimacsError::InvalidToken { .. }
        ));
    }

    #[test]
    fn serialize_dimacs_matches_expected_text() {
        let cnf = CnfFormula {
            num_vars: 2,
            clauses: vec![vec![1, -2]],
        };
        assert_eq!(serialize_dimacs(&cnf), "p cnf 2 1\n1 -2 0\n");
    }

    #[test]
    fn cnf_to_formula_conventions() {
        let pair = CnfFormula {
            num_vars: 1,
            clauses: vec![vec![1], vec![-1]],
        };
        assert_eq!(cnf_to_formula(&pair), Formula::var(1).and(!Formula::var(1)));
        let empty = CnfFormula {
            num_vars: 0,
            clauses: vec![],
        };
        assert_eq!(cnf_to_formula(&empty), Formula::True);
        let empty_clause = CnfFormula {
            num_vars: 0,
            clauses: vec![vec![]],
        };
        assert_eq!(cnf_to_formula(&empty_clause), Formula::False);
    }

    #[test]
    fn rename_offset_shifts_indices() {
        assert_eq!(rename_offset(&Formula::var(1), 0), Formula::var(1));
        assert_eq!(
            rename_offset(&Formula::var(1).and(Formula::var(2)), 2),
            Formula::var(3).and(Formula::var(4))
        );
    }

    #[test]
    fn rename_offset_clears_the_other_block() {
        let f = parse_expr("x1 & !x2").unwrap();
        let g = parse_expr("(x1 | x2) & x3").unwrap();
        let shifted = rename_offset(&f, g.max_var());
        assert!(shifted.max_var() > g.max_var());
    }

    #[test]
    fn rename_offset_preserves_model_count() {
        // Models over n + offset variables: each original model reappears with
        // the offset low bits free.
        for text in ["x1", "x1 & !x2", "(x1 | x2) & !x1", "T", "x1 & !x1"] {
            let f = parse_expr(text).unwrap();
            let n = f.max_var();
            let count = |g: &Formula, vars: u32| (0..1u64 << vars).filter(|&m| g.eval(m)).count();
            for offset in [0u32, 1, 3] {
                let shifted = rename_offset(&f, offset);
                assert_eq!(
                    count(&shifted, n + offset),
                    count(&f, n) << offset,
                    "offset {offset} on {text}"
                );
            }
        }
    }

    #[test]
    fn or_combine_matches_disjunction_of_answers() {
        let unsat = parse_expr("x1 & !x1").unwrap();
        let sat = parse_expr("x1").unwrap();
        assert!(is_sat(&or_combine(&unsat, &sat)));
        assert!(!is_sat(&or_combine(&unsat, &unsat)));
        assert!(is_sat(&or_combine(&sat, &unsat)));
    }

    #[test]
    fn and_combine_matches_conjunction_of_answers() {
        let sat = parse_expr("x1").unwrap();
        let unsat = parse_expr("x1 & !x1").unwrap();
        assert!(is_sat(&and_combine(&sat, &sat)));
        assert!(!is_sat(&and_combine(&sat, &unsat)));
    }

    #[test]
    fn and_combine_renames_shared_variables() {
        // x2 appears negatively in `a` and positively in `b`; without the
        // offset rename the combination would be wrongly unsatisfiable.
        let a = parse_expr("x1 & !x2").unwrap();
        let b = parse_expr("x2").unwrap();
        let combined = and_combine(&a, &b);
        assert_eq!(serialize_expr(&combined), "((x1 & !x2) & x4)");
        assert!(is_sat(&combined));
    }

    #[test]
    fn combinators_agree_with_brute_force_on_samples() {
        let samples = [
            "x1",
            "!x1",
            "x1 & !x1",
            "x1 | !x1",
            "x1 & x2",
            "x1 & !x2",
            "(x1 | x2) & !x1",
            "T",
            "F",
            "!(x1 & x2) & x1 & x2",
        ];
        for a_text in samples {
            for b_text in samples {
                let a = parse_expr(a_text).unwrap();
                let b = parse_expr(b_text).unwrap();
                assert_eq!(
                    is_sat(&or_combine(&a, &b)),
                    is_sat(&a) || is_sat(&b),
                    "or_combine({a_text}, {b_text})"
                );
                assert_eq!(
                    is_sat(&and_combine(&a, &b)),
                    is_sat(&a) && is_sat(&b),
                    "and_combine({a_text}, {b_text})"
                );
            }
        }
    }

    #[test]
    fn tseitin_single_variable() {
        let cnf = tseitin(&Formula::var(1));
        assert_eq!(cnf.num_vars, 1);
        assert_eq!(cnf.clauses, vec![vec![1]]);
    }

    #[test]
    fn tseitin_false_yields_unit_contradiction() {
        let cnf = tseitin(&Formula::False);
        assert_eq!(cnf.clauses, vec![vec![-1], vec![1]]);
        assert!(!is_sat(&cnf_to_formula(&cnf)));
    }

    #[test]
    fn tseitin_is_equisatisfiable_on_samples() {
        let samples = [
            "x1",
            "!x1",
            "x1 & !x1",
            "x1 | x2",
            "(x1 | x2) & (!x1 | !x2)",
            "T",
            "F",
            "!(x1 & (x2 | !x3))",
            "x1 & x2 & x3 & !x1",
        ];
        for text in samples {
            let f = parse_expr(text).unwrap();
            let cnf = tseitin(&f);
            assert!(cnf.num_vars >= f.max_var());
            for clause in &cnf.clauses {
                assert!(clause
                    .iter()
                    .all(|&l| l != 0 && l.unsigned_abs() <= cnf.num_vars));
            }
            assert_eq!(is_sat(&cnf_to_formula(&cnf)), is_sat(&f), "tseitin({text})");
        }
    }

    #[test]
    fn tseitin_size_is_linear() {
        let f = parse_expr("!(x1 & (x2 | !x3)) | (x1 & x2)").unwrap();
        let cnf = tseitin(&f);
        assert!(cnf.clauses.len() <= 3 * f.node_count() + 1);
    }

    #[test]
    fn tseitin_is_equisatisfiable_on_the_whole_small_corpus() {
        // Checked by brute force on the expanded CNF, independent of DPLL.
        let formulas = crate::harness::enumerate_formulas(2, 4).unwrap();
        assert_eq!(formulas.len(), 144);
        for f in &formulas {
            let cnf = tseitin(f);
            assert_eq!(is_sat(&cnf_to_formula(&cnf)), is_sat(f), "tseitin({f})");
        }
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            (1u32..=8).prop_map(Formula::var),
            Just(Formula::True),
            Just(Formula::False),
        ];
        leaf.prop_recursive(8, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|f| !f),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.or(b)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn expr_round_trip(f in arb_formula()) {
            let text = serialize_expr(&f);
            prop_assert_eq!(parse_expr(&text).unwrap(), f);
        }
    }

    proptest! {
        #[test]
        fn dimacs_round_trip(
            num_vars in 1u32..=6,
            clause_shape in proptest::collection::vec(
                proptest::collection::vec((1u32..=6, proptest::bool::ANY), 0..5),
                0..8,
            )
        ) {
            let clauses: Vec<Vec<i32>> = clause_shape
                .iter()
                .map(|clause| {
                    clause
                        .iter()
                        .map(|&(v, neg)| {
                            let v = (v % num_vars) + 1;
                            if neg { -(v as i32) } else { v as i32 }
                        })
                        .collect()
                })
                .collect();
            let cnf = CnfFormula { num_vars, clauses };
            prop_assert_eq!(parse_dimacs(&serialize_dimacs(&cnf)).unwrap(), cnf);
        }

        #[test]
        fn combine_laws_on_random_formulas(a in arb_formula(), b in arb_formula()) {
            prop_assume!(a.max_var() + b.max_var() <= 16);
            let sa = brute_force_sat(&a).unwrap();
            let sb = brute_force_sat(&b).unwrap();
            prop_assert_eq!(brute_force_sat(&or_combine(&a, &b)).unwrap(), sa || sb);
            prop_assert_eq!(brute_force_sat(&and_combine(&a, &b)).unwrap(), sa && sb);
        }
    }
}
