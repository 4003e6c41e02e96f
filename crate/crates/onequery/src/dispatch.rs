//! Mapping every two-bit decision function onto a protocol that needs at most
//! one oracle query, plus the naive two-query baseline it is checked against.
//!
//! A decision function F over the two oracle answers is represented
//! extensionally as its four output bits. Its accepting set — the answer
//! pairs mapped to 1 — fully determines the protocol:
//!
//! * empty or full set: answer constantly, zero queries;
//! * a set that depends on only one answer: query that formula directly;
//! * the singletons {(0,0)} and {(1,1)}: one classical query on the merged
//!   instance A∨B or A∧B;
//! * the singletons {(1,0)} and {(0,1)}: the one-call and-not circuit, in the
//!   appropriate argument order;
//! * the parity sets: the one-call XOR circuit;
//! * three-element sets: the complement's protocol with the output negated.
//!
//! Output negation is free classical postprocessing and never costs a query.

use std::fmt;

use crate::formula::{and_combine, or_combine, Formula};
use crate::oracle::{CountedOracle, SolveError};
use crate::qsim::{
    run_deutsch_and_not, run_deutsch_and_not_with_trace, run_deutsch_xor,
    run_deutsch_xor_with_trace, CircuitError, TraceEntry,
};

/// A function F: {0,1}² → {0,1}, stored as the outputs
/// [F(0,0), F(0,1), F(1,0), F(1,1)].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruthTable2 {
    bits: [bool; 4],
}

/// Mnemonic names accepted anywhere a truth table can be written.
pub const MNEMONICS: [(&str, &str); 12] = [
    ("and", "0001"),
    ("or", "0111"),
    ("xor", "0110"),
    ("xnor", "1001"),
    ("nand", "1110"),
    ("nor", "1000"),
    ("a", "0011"),
    ("b", "0101"),
    ("not-a", "1100"),
    ("not-b", "1010"),
    ("andnot", "0010"),
    ("notand-b", "0100"),
];

impl TruthTable2 {
    pub fn new(bits: [bool; 4]) -> Self {
        TruthTable2 { bits }
    }

    /// Accepts a 4-bit string "f00 f01 f10 f11" like "0110", or a mnemonic.
    pub fn parse(text: &str) -> Option<Self> {
        let bits = MNEMONICS
            .iter()
            .find(|(name, _)| *name == text)
            .map(|(_, bits)| *bits)
            .unwrap_or(text);
        let chars: Vec<char> = bits.chars().collect();
        if chars.len() != 4 || !chars.iter().all(|c| *c == '0' || *c == '1') {
            return None;
        }
        Some(TruthTable2::new([
            chars[0] == '1',
            chars[1] == '1',
            chars[2] == '1',
            chars[3] == '1',
        ]))
    }

    pub fn eval(&self, a: bool, b: bool) -> bool {
        self.bits[usize::from(a) * 2 + usize::from(b)]
    }

    pub fn complement(&self) -> Self {
        TruthTable2::new(self.bits.map(|bit| !bit))
    }

    pub fn accepting_set(&self) -> AcceptingSet {
        AcceptingSet {
            accepted: self.bits,
        }
    }

    /// Mnemonic for this table, if one exists.
    pub fn name(&self) -> Option<&'static str> {
        let text = self.to_string();
        MNEMONICS
            .iter()
            .find(|(_, bits)| *bits == text)
            .map(|(name, _)| *name)
    }

    /// All 16 tables, in numeric order of their bit strings.
    pub fn all() -> impl Iterator<Item = TruthTable2> {
        (0u8..16).map(|n| TruthTable2::new([n & 8 != 0, n & 4 != 0, n & 2 != 0, n & 1 != 0]))
    }
}

impl fmt::Display for TruthTable2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.bits {
            write!(f, "{}", u8::from(bit))?;
        }
        Ok(())
    }
}

/// The set of oracle-answer pairs a decision function accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AcceptingSet {
    accepted: [bool; 4],
}

impl AcceptingSet {
    pub fn contains(&self, a: bool, b: bool) -> bool {
        self.accepted[usize::from(a) * 2 + usize::from(b)]
    }

    pub fn size(&self) -> usize {
        self.accepted.iter().filter(|&&x| x).count()
    }

    pub fn members(&self) -> Vec<(bool, bool)> {
        [(false, false), (false, true), (true, false), (true, true)]
            .into_iter()
            .filter(|&(a, b)| self.contains(a, b))
            .collect()
    }
}

impl fmt::Display for AcceptingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.members().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({},{})", u8::from(a), u8::from(b))?;
        }
        write!(f, "}}")
    }
}

/// The single formula a [`Protocol::SingleQuery`] submits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryRecipe {
    A,
    B,
    AOrB,
    AAndB,
}

impl QueryRecipe {
    pub fn build(self, a: &Formula, b: &Formula) -> Formula {
        match self {
            QueryRecipe::A => a.clone(),
            QueryRecipe::B => b.clone(),
            QueryRecipe::AOrB => or_combine(a, b),
            QueryRecipe::AAndB => and_combine(a, b),
        }
    }

    fn label(self) -> &'static str {
        match self {
            QueryRecipe::A => "A",
            QueryRecipe::B => "B",
            QueryRecipe::AOrB => "A|B",
            QueryRecipe::AAndB => "A&B",
        }
    }
}

/// Argument order for the and-not circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgOrder {
    AB,
    BA,
}

/// A strategy that computes some decision function with at most one oracle
/// query. `negate` flips the output afterwards, which is free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    Const(bool),
    SingleQuery { recipe: QueryRecipe, negate: bool },
    DeutschXor { negate: bool },
    DeutschAndNot { order: ArgOrder, negate: bool },
}

impl Protocol {
    /// Same queries, complemented output.
    pub fn negated(self) -> Self {
        match self {
            Protocol::Const(bit) => Protocol::Const(!bit),
            Protocol::SingleQuery { recipe, negate } => Protocol::SingleQuery {
                recipe,
                negate: !negate,
            },
            Protocol::DeutschXor { negate } => Protocol::DeutschXor { negate: !negate },
            Protocol::DeutschAndNot { order, negate } => Protocol::DeutschAndNot {
                order,
                negate: !negate,
            },
        }
    }

    /// Upper bound on the queries [`execute`] will charge.
    pub fn query_budget(&self) -> usize {
        match self {
            Protocol::Const(_) => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let negate = match self {
            Protocol::Const(_) => false,
            Protocol::SingleQuery { negate, .. }
            | Protocol::DeutschXor { negate }
            | Protocol::DeutschAndNot { negate, .. } => *negate,
        };
        if negate {
            write!(f, "!")?;
        }
        match self {
            Protocol::Const(bit) => write!(f, "const({})", u8::from(*bit)),
            Protocol::SingleQuery { recipe, .. } => write!(f, "query({})", recipe.label()),
            Protocol::DeutschXor { .. } => write!(f, "deutsch-xor"),
            Protocol::DeutschAndNot { order, .. } => match order {
                ArgOrder::AB => write!(f, "deutsch-andnot(A,B)"),
                ArgOrder::BA => write!(f, "deutsch-andnot(B,A)"),
            },
        }
    }
}

/// The accepting set of `table`, as a free function for symmetry with the
/// rest of the pipeline.
pub fn accepting_set(table: TruthTable2) -> AcceptingSet {
    table.accepting_set()
}

/// Chooses the at-most-one-query protocol computing `table`.
pub fn select_protocol(table: TruthTable2) -> Protocol {
    let set = table.accepting_set();
    match set.size() {
        0 => Protocol::Const(false),
        4 => Protocol::Const(true),
        // Reduce to the complement's one-element case; negation is free.
        3 => select_protocol(table.complement()).negated(),
        1 => match set.members()[0] {
            (false, false) => Protocol::SingleQuery {
                recipe: QueryRecipe::AOrB,
                negate: true,
            },
            (true, true) => Protocol::SingleQuery {
                recipe: QueryRecipe::AAndB,
                negate: false,
            },
            (true, false) => Protocol::DeutschAndNot {
                order: ArgOrder::AB,
                negate: false,
            },
            (false, true) => Protocol::DeutschAndNot {
                order: ArgOrder::BA,
                negate: false,
            },
        },
        2 => {
            let accepts = |a, b| set.contains(a, b);
            if accepts(true, false) && accepts(true, true) {
                // Depends on the first answer only.
                Protocol::SingleQuery {
                    recipe: QueryRecipe::A,
                    negate: false,
                }
            } else if accepts(false, false) && accepts(false, true) {
                Protocol::SingleQuery {
                    recipe: QueryRecipe::A,
                    negate: true,
                }
            } else if accepts(false, true) && accepts(true, true) {
                Protocol::SingleQuery {
                    recipe: QueryRecipe::B,
                    negate: false,
                }
            } else if accepts(false, false) && accepts(true, false) {
                Protocol::SingleQuery {
                    recipe: QueryRecipe::B,
                    negate: true,
                }
            } else if accepts(false, true) && accepts(true, false) {
                Protocol::DeutschXor { negate: false }
            } else {
                Protocol::DeutschXor { negate: true }
            }
        }
        _ => unreachable!("a 4-bit set has size 0..=4"),
    }
}

fn execute_inner(
    protocol: &Protocol,
    a: &Formula,
    b: &Formula,
    oracle: &mut CountedOracle,
    trace: Option<&mut Vec<TraceEntry>>,
) -> Result<bool, CircuitError> {
    match *protocol {
        Protocol::Const(bit) => Ok(bit),
        Protocol::SingleQuery { recipe, negate } => {
            let formula = recipe.build(a, b);
            Ok(oracle.classical_query(&formula)? ^ negate)
        }
        Protocol::DeutschXor { negate } => {
            let bit = match trace {
                Some(sink) => {
                    let (bit, steps) = run_deutsch_xor_with_trace(a, b, oracle)?;
                    sink.extend(steps);
                    bit
                }
                None => run_deutsch_xor(a, b, oracle)?,
            };
            Ok(bit ^ negate)
        }
        Protocol::DeutschAndNot { order, negate } => {
            let (first, second) = match order {
                ArgOrder::AB => (a, b),
                ArgOrder::BA => (b, a),
            };
            let bit = match trace {
                Some(sink) => {
                    let (bit, steps) = run_deutsch_and_not_with_trace(first, second, oracle)?;
                    sink.extend(steps);
                    bit
                }
                None => run_deutsch_and_not(first, second, oracle)?,
            };
            Ok(bit ^ negate)
        }
    }
}

/// Runs `protocol` on the instance pair, charging at most one query.
pub fn execute(
    protocol: &Protocol,
    a: &Formula,
    b: &Formula,
    oracle: &mut CountedOracle,
) -> Result<bool, CircuitError> {
    execute_inner(protocol, a, b, oracle, None)
}

/// [`execute`] plus amplitude snapshots for the circuit stages; the trace is
/// empty for constant and single-query protocols.
pub fn execute_with_trace(
    protocol: &Protocol,
    a: &Formula,
    b: &Formula,
    oracle: &mut CountedOracle,
) -> Result<(bool, Vec<TraceEntry>), CircuitError> {
    let mut trace = Vec::new();
    let bit = execute_inner(protocol, a, b, oracle, Some(&mut trace))?;
    Ok((bit, trace))
}

/// The baseline: query both formulas (fixed up front, never adapted), then
/// apply the table. Always exactly two queries, even for constant tables —
/// this measures the cost being folded away, not an optimized strategy.
pub fn eval_classical_two_query(
    table: TruthTable2,
    a: &Formula,
    b: &Formula,
    oracle: &mut CountedOracle,
) -> Result<bool, SolveError> {
    let answer_a = oracle.classical_query(a)?;
    let answer_b = oracle.classical_query(b)?;
    Ok(table.eval(answer_a, answer_b))
}
