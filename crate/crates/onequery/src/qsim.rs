//! Exact simulation of the two one-call Deutsch-style circuits.
//!
//! The state space is tiny: a question register with two labeled
//! basis slots (each bound to a formula) and one answer qubit, four amplitudes
//! in total. Amplitudes live in the ring of numbers (a + b·√2) / 2^k with
//! integer a, b — every value these circuits produce — so "the measurement
//! outcome has probability exactly 1" is a decidable equation, not a
//! floating-point tolerance.
//!
//! The oracle acts by XOR-ing each slot's answer bit into the answer qubit;
//! preparing that qubit in |0⟩−|1⟩ turns the XOR into a per-slot sign, which
//! the final basis change converts into a deterministic outcome.

use serde::Serialize;
use thiserror::Error;

use crate::formula::{and_combine, Formula};
use crate::oracle::{CountedOracle, SolveError};

/// Exact number (a + b·√2) / 2^k.
///
/// Kept canonical: k is minimal, so equal values have identical fields and
/// derived equality is exact equality. Arithmetic is checked and panics on
/// i64 overflow; the circuits here stay within single digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactAmp {
    a: i64,
    b: i64,
    k: u32,
}

impl ExactAmp {
    pub const ZERO: ExactAmp = ExactAmp { a: 0, b: 0, k: 0 };
    pub const ONE: ExactAmp = ExactAmp { a: 1, b: 0, k: 0 };
    /// 1/2.
    pub const HALF: ExactAmp = ExactAmp { a: 1, b: 0, k: 1 };
    /// 1/√2 = √2/2.
    pub const INV_SQRT2: ExactAmp = ExactAmp { a: 0, b: 1, k: 1 };

    pub fn new(a: i64, b: i64, k: u32) -> Self {
        ExactAmp { a, b, k }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.k > 0 && self.a % 2 == 0 && self.b % 2 == 0 {
            self.a /= 2;
            self.b /= 2;
            self.k -= 1;
        }
        self
    }

    /// The canonical triple (a, b, k).
    pub fn parts(self) -> (i64, i64, u32) {
        (self.a, self.b, self.k)
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Multiplication by 1/√2: (a + b√2)/2^k ↦ (2b + a√2)/2^(k+1).
    pub fn mul_inv_sqrt2(self) -> Self {
        let doubled = self.b.checked_mul(2).expect("amplitude overflow");
        ExactAmp {
            a: doubled,
            b: self.a,
            k: self.k.checked_add(1).expect("amplitude overflow"),
        }
        .normalized()
    }

    /// |self|²; real values, so just the square.
    pub fn norm_sqr(self) -> Self {
        self * self
    }

    fn scale_to(self, k: u32) -> (i64, i64) {
        let shift = k - self.k;
        assert!(shift < 63, "amplitude overflow");
        let factor = 1i64 << shift;
        (
            self.a.checked_mul(factor).expect("amplitude overflow"),
            self.b.checked_mul(factor).expect("amplitude overflow"),
        )
    }
}

impl std::ops::Add for ExactAmp {
    type Output = ExactAmp;
    fn add(self, rhs: ExactAmp) -> ExactAmp {
        let k = self.k.max(rhs.k);
        let (a1, b1) = self.scale_to(k);
        let (a2, b2) = rhs.scale_to(k);
        ExactAmp {
            a: a1.checked_add(a2).expect("amplitude overflow"),
            b: b1.checked_add(b2).expect("amplitude overflow"),
            k,
        }
        .normalized()
    }
}

impl std::ops::Neg for ExactAmp {
    type Output = ExactAmp;
    fn neg(self) -> ExactAmp {
        ExactAmp {
            a: self.a.checked_neg().expect("amplitude overflow"),
            b: self.b.checked_neg().expect("amplitude overflow"),
            k: self.k,
        }
    }
}

impl std::ops::Sub for ExactAmp {
    type Output = ExactAmp;
    fn sub(self, rhs: ExactAmp) -> ExactAmp {
        self + (-rhs)
    }
}

impl std::ops::Mul for ExactAmp {
    type Output = ExactAmp;
    fn mul(self, rhs: ExactAmp) -> ExactAmp {
        // (a1 + b1√2)(a2 + b2√2) = a1a2 + 2b1b2 + (a1b2 + b1a2)√2
        let ovf = "amplitude overflow";
        let aa = self.a.checked_mul(rhs.a).expect(ovf);
        let bb = self.b.checked_mul(rhs.b).expect(ovf);
        let rational = aa.checked_add(bb.checked_mul(2).expect(ovf)).expect(ovf);
        let ab = self.a.checked_mul(rhs.b).expect(ovf);
        let ba = self.b.checked_mul(rhs.a).expect(ovf);
        ExactAmp {
            a: rational,
            b: ab.checked_add(ba).expect(ovf),
            k: self.k.checked_add(rhs.k).expect(ovf),
        }
        .normalized()
    }
}

impl std::fmt::Display for ExactAmp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} + {}√2)/2^{}", self.a, self.b, self.k)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    /// Measurement found no outcome of probability exactly 1. Never expected
    /// on the circuits built here; signals a broken protocol.
    #[error("non-deterministic state: no question-register outcome has probability exactly 1")]
    NonDeterministic,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Four-amplitude state over (question slot, answer bit), with a formula
/// bound to each slot. Basis order: (slot 0, ans 0), (slot 0, ans 1),
/// (slot 1, ans 0), (slot 1, ans 1). Values are immutable; every step
/// returns a fresh state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QState {
    amps: [ExactAmp; 4],
    labels: [Formula; 2],
}

impl QState {
    /// ½(|slot0⟩ + |slot1⟩) ⊗ (|0⟩ − |1⟩), with the given formulas bound to
    /// the two question slots.
    pub fn prepare(q0: Formula, q1: Formula) -> Self {
        let h = ExactAmp::HALF;
        QState {
            amps: [h, -h, h, -h],
            labels: [q0, q1],
        }
    }

    pub fn labels(&self) -> (&Formula, &Formula) {
        (&self.labels[0], &self.labels[1])
    }

    pub fn amplitudes(&self) -> [ExactAmp; 4] {
        self.amps
    }

    /// Σ|amp|²; exactly 1 on every reachable state.
    pub fn norm_squared(&self) -> ExactAmp {
        self.amps
            .iter()
            .fold(ExactAmp::ZERO, |acc, &a| acc + a.norm_sqr())
    }

    /// One oracle application: the answer for each slot's formula is XOR-ed
    /// into the answer qubit, moving amplitude (slot i, ans b) to
    /// (slot i, b ⊕ answer_i). Charges exactly one query.
    pub fn apply_oracle(&self, oracle: &mut CountedOracle) -> Result<QState, SolveError> {
        let (r0, r1) = oracle.quantum_application_answers(&self.labels[0], &self.labels[1])?;
        let mut amps = self.amps;
        if r0 {
            amps.swap(0, 1);
        }
        if r1 {
            amps.swap(2, 3);
        }
        Ok(QState {
            amps,
            labels: self.labels.clone(),
        })
    }

    /// Hadamard on the question register: |slot0⟩ ↦ (|0⟩+|1⟩)/√2,
    /// |slot1⟩ ↦ (|0⟩−|1⟩)/√2. The answer qubit is untouched.
    pub fn basis_change(&self) -> QState {
        let mut amps = [ExactAmp::ZERO; 4];
        for ans in 0..2 {
            let x = self.amps[ans];
            let y = self.amps[2 + ans];
            amps[ans] = (x + y).mul_inv_sqrt2();
            amps[2 + ans] = (x - y).mul_inv_sqrt2();
        }
        QState {
            amps,
            labels: self.labels.clone(),
        }
    }

    /// Reads the question register, requiring the outcome to be certain:
    /// the returned bit has probability exactly 1 in the exact ring.
    pub fn measure_question(&self) -> Result<bool, CircuitError> {
        let p0 = self.amps[0].norm_sqr() + self.amps[1].norm_sqr();
        let p1 = self.amps[2].norm_sqr() + self.amps[3].norm_sqr();
        if p0 == ExactAmp::ONE && p1.is_zero() {
            Ok(false)
        } else if p1 == ExactAmp::ONE && p0.is_zero() {
            Ok(true)
        } else {
            Err(CircuitError::NonDeterministic)
        }
    }
}

/// Snapshot of the four amplitudes after a circuit stage, each as the
/// canonical triple (a, b, k) of (a + b√2)/2^k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub stage: &'static str,
    pub amps: [[i64; 3]; 4],
}

impl TraceEntry {
    fn snapshot(stage: &'static str, state: &QState) -> Self {
        let amps = state.amplitudes().map(|amp| {
            let (a, b, k) = amp.parts();
            [a, b, i64::from(k)]
        });
        TraceEntry { stage, amps }
    }
}

fn run_circuit(
    q0: Formula,
    q1: Formula,
    oracle: &mut CountedOracle,
    mut trace: Option<&mut Vec<TraceEntry>>,
) -> Result<bool, CircuitError> {
    let mut record = |stage, state: &QState| {
        if let Some(sink) = trace.as_deref_mut() {
            sink.push(TraceEntry::snapshot(stage, state));
        }
    };
    let prepared = QState::prepare(q0, q1);
    record("prepare", &prepared);
    let kicked = prepared.apply_oracle(oracle)?;
    record("oracle", &kicked);
    let rotated = kicked.basis_change();
    record("basis-change", &rotated);
    rotated.measure_question()
}

/// Computes answer(a) XOR answer(b) with a single oracle application:
/// prepare over slots (a, b), apply the oracle, rotate, measure.
pub fn run_deutsch_xor(
    a: &Formula,
    b: &Formula,
    oracle: &mut CountedOracle,
) -> Result<bool, CircuitError> {
    run_circuit(a.clone(), b.clone(), oracle, None)
}

/// [`run_deutsch_xor`] plus the per-stage amplitude snapshots.
pub fn run_deutsch_xor_with_trace(
    a: &Formula,
    b: &Formula,
    oracle: &mut CountedOracle,
) -> Result<(bool, Vec<TraceEntry>), CircuitError> {
    let mut trace = Vec::new();
    let bit = run_circuit(a.clone(), b.clone(), oracle, Some(&mut trace))?;
    Ok((bit, trace))
}

/// Decides "a satisfiable AND b unsatisfiable" with a single oracle
/// application, by superposing `a` against the merged instance a∧b: the
/// measured bit is answer(a) XOR answer(a∧b), which is 1 exactly in that
/// case.
pub fn run_deutsch_and_not(
    a: &Formula,
    b: &Formula,
    oracle: &mut CountedOracle,
) -> Result<bool, CircuitError> {
    run_circuit(a.clone(), and_combine(a, b), oracle, None)
}

/// [`run_deutsch_and_not`] plus the per-stage amplitude snapshots.
pub fn run_deutsch_and_not_with_trace(
    a: &Formula,
    b: &Formula,
    oracle: &mut CountedOracle,
) -> Result<(bool, Vec<TraceEntry>), CircuitError> {
    let mut trace = Vec::new();
    let bit = run_circuit(a.clone(), and_combine(a, b), oracle, Some(&mut trace))?;
    Ok((bit, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_expr;
    use crate::oracle::brute_force_sat;
    use proptest::prelude::*;

    fn amp(a: i64, b: i64, k: u32) -> ExactAmp {
        ExactAmp::new(a, b, k)
    }

    /// Oracle whose two slot answers are pinned to the given bits.
    fn pinned_oracle(r0: bool, r1: bool) -> (Formula, Formula, CountedOracle) {
        let q0 = Formula::var(1);
        let q1 = Formula::var(2);
        let oracle = CountedOracle::with_stub([(q0.clone(), r0), (q1.clone(), r1)]);
        (q0, q1, oracle)
    }

    #[test]
    fn canonical_form_reduces_common_powers() {
        assert_eq!(amp(2, 4, 3), amp(1, 2, 2));
        assert_eq!(amp(0, 0, 5), ExactAmp::ZERO);
        assert_eq!(amp(2, 0, 1), ExactAmp::ONE);
        assert_eq!(amp(1, 2, 2).parts(), (1, 2, 2));
    }

    #[test]
    fn inv_sqrt2_squares_to_half() {
        assert_eq!(ExactAmp::INV_SQRT2 * ExactAmp::INV_SQRT2, ExactAmp::HALF);
        assert_eq!(ExactAmp::ONE.mul_inv_sqrt2(), ExactAmp::INV_SQRT2);
    }

    #[test]
    #[should_panic(expected = "amplitude overflow")]
    fn overflow_panics() {
        let _ = amp(i64::MAX, 0, 0) + amp(1, 0, 0);
    }

    #[test]
    fn prepare_has_uniform_signed_amplitudes_and_unit_norm() {
        let state = QState::prepare(Formula::var(1), Formula::var(2));
        let h = ExactAmp::HALF;
        assert_eq!(state.amplitudes(), [h, -h, h, -h]);
        assert_eq!(state.norm_squared(), ExactAmp::ONE);
    }

    #[test]
    fn oracle_application_is_identity_when_both_answers_are_zero() {
        let (q0, q1, mut oracle) = pinned_oracle(false, false);
        let state = QState::prepare(q0, q1);
        let after = state.apply_oracle(&mut oracle).unwrap();
        assert_eq!(after.amplitudes(), state.amplitudes());
        assert_eq!(oracle.query_count(), 1);
    }

    #[test]
    fn oracle_application_flips_the_answered_slot() {
        let (q0, q1, mut oracle) = pinned_oracle(false, true);
        let after = QState::prepare(q0, q1).apply_oracle(&mut oracle).unwrap();
        let h = ExactAmp::HALF;
        assert_eq!(after.amplitudes(), [h, -h, -h, h]);
        assert_eq!(after.norm_squared(), ExactAmp::ONE);
    }

    #[test]
    fn oracle_application_gives_global_sign_when_both_answers_are_one() {
        let (q0, q1, mut oracle) = pinned_oracle(true, true);
        let after = QState::prepare(q0, q1).apply_oracle(&mut oracle).unwrap();
        let h = ExactAmp::HALF;
        assert_eq!(after.amplitudes(), [-h, h, -h, h]);
    }

    #[test]
    fn basis_change_collapses_matched_signs_to_slot_zero() {
        let state = QState::prepare(Formula::var(1), Formula::var(2));
        let rotated = state.basis_change();
        let r = ExactAmp::INV_SQRT2;
        assert_eq!(
            rotated.amplitudes(),
            [r, -r, ExactAmp::ZERO, ExactAmp::ZERO]
        );
        assert_eq!(rotated.norm_squared(), ExactAmp::ONE);
    }

    #[test]
    fn basis_change_collapses_opposed_signs_to_slot_one() {
        let (q0, q1, mut oracle) = pinned_oracle(false, true);
        let rotated = QState::prepare(q0, q1)
            .apply_oracle(&mut oracle)
            .unwrap()
            .basis_change();
        let r = ExactAmp::INV_SQRT2;
        assert_eq!(
            rotated.amplitudes(),
            [ExactAmp::ZERO, ExactAmp::ZERO, r, -r]
        );
    }

    #[test]
    fn basis_change_twice_is_identity() {
        let (q0, q1, mut oracle) = pinned_oracle(true, false);
        let state = QState::prepare(q0, q1).apply_oracle(&mut oracle).unwrap();
        assert_eq!(state.basis_change().basis_change(), state);
    }

    #[test]
    fn measure_reads_the_certain_slot() {
        let state = QState::prepare(Formula::var(1), Formula::var(2));
        assert_eq!(state.basis_change().measure_question(), Ok(false));

        let (q0, q1, mut oracle) = pinned_oracle(false, true);
        let rotated = QState::prepare(q0, q1)
            .apply_oracle(&mut oracle)
            .unwrap()
            .basis_change();
        assert_eq!(rotated.measure_question(), Ok(true));
    }

    #[test]
    fn measure_rejects_balanced_states() {
        let state = QState::prepare(Formula::var(1), Formula::var(2));
        assert_eq!(
            state.measure_question(),
            Err(CircuitError::NonDeterministic)
        );
    }

    #[test]
    fn norm_is_preserved_through_every_stage_for_all_answer_patterns() {
        for r0 in [false, true] {
            for r1 in [false, true] {
                let (q0, q1, mut oracle) = pinned_oracle(r0, r1);
                let prepared = QState::prepare(q0, q1);
                assert_eq!(prepared.norm_squared(), ExactAmp::ONE);
                let kicked = prepared.apply_oracle(&mut oracle).unwrap();
                assert_eq!(kicked.norm_squared(), ExactAmp::ONE);
                let rotated = kicked.basis_change();
                assert_eq!(rotated.norm_squared(), ExactAmp::ONE);
                assert_eq!(rotated.measure_question(), Ok(r0 ^ r1));
            }
        }
    }

    #[test]
    fn deutsch_xor_matches_brute_force() {
        let cases = [
            ("x1 & !x1", "x1", true),
            ("x1 & !x1", "x2 & !x2", false),
            ("x1", "x2", false),
        ];
        for (a_text, b_text, expected) in cases {
            let a = parse_expr(a_text).unwrap();
            let b = parse_expr(b_text).unwrap();
            let reference = brute_force_sat(&a).unwrap() ^ brute_force_sat(&b).unwrap();
            assert_eq!(reference, expected, "case ({a_text}, {b_text})");
            let mut oracle = CountedOracle::dpll();
            assert_eq!(run_deutsch_xor(&a, &b, &mut oracle).unwrap(), expected);
            assert_eq!(oracle.query_count(), 1);
        }
    }

    #[test]
    fn deutsch_and_not_matches_brute_force() {
        let cases = [
            ("x1", "x2 & !x2", true),
            ("x1", "x2", false),
            ("x1 & !x1", "x2", false),
            ("x1 & !x1", "x2 & !x2", false),
        ];
        for (a_text, b_text, expected) in cases {
            let a = parse_expr(a_text).unwrap();
            let b = parse_expr(b_text).unwrap();
            let reference = brute_force_sat(&a).unwrap() && !brute_force_sat(&b).unwrap();
            assert_eq!(reference, expected, "case ({a_text}, {b_text})");
            let mut oracle = CountedOracle::dpll();
            assert_eq!(run_deutsch_and_not(&a, &b, &mut oracle).unwrap(), expected);
            assert_eq!(oracle.query_count(), 1);
        }
    }

    #[test]
    fn and_not_slots_are_the_first_formula_and_the_merged_instance() {
        let a = parse_expr("x1").unwrap();
        let b = parse_expr("x1 & x2").unwrap();
        let mut oracle = CountedOracle::dpll();
        run_deutsch_and_not(&a, &b, &mut oracle).unwrap();
        match &oracle.log()[0] {
            crate::oracle::QueryRecord::QuantumApplication { slot0, slot1, .. } => {
                assert_eq!(slot0, "x1");
                assert_eq!(slot1, "(x1 & (x2 & x3))");
            }
            other => panic!("expected a quantum application, got {other:?}"),
        }
    }

    #[test]
    fn trace_snapshots_every_stage() {
        let a = parse_expr("x1 & !x1").unwrap();
        let b = parse_expr("x1").unwrap();
        let mut oracle = CountedOracle::dpll();
        let (bit, trace) = run_deutsch_xor_with_trace(&a, &b, &mut oracle).unwrap();
        assert!(bit);
        let stages: Vec<&str> = trace.iter().map(|t| t.stage).collect();
        assert_eq!(stages, ["prepare", "oracle", "basis-change"]);
        assert_eq!(trace[0].amps[0], [1, 0, 1]);
        assert_eq!(trace[2].amps[2], [0, 1, 1]);
    }

    fn arb_amp() -> impl Strategy<Value = ExactAmp> {
        (-16i64..=16, -16i64..=16, 0u32..=3).prop_map(|(a, b, k)| ExactAmp::new(a, b, k))
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb_amp(), y in arb_amp(), z in arb_amp()) {
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x + ExactAmp::ZERO, x);
            prop_assert_eq!(x * ExactAmp::ONE, x);
            prop_assert_eq!(x - x, ExactAmp::ZERO);
        }

        #[test]
        fn canonical_representation_is_unique(x in arb_amp(), shift in 0u32..=3) {
            let (a, b, k) = x.parts();
            let inflated = ExactAmp::new(a << shift, b << shift, k + shift);
            prop_assert_eq!(inflated, x);
            prop_assert_eq!(inflated.parts(), x.parts());
        }

        #[test]
        fn mul_inv_sqrt2_agrees_with_ring_multiplication(x in arb_amp()) {
            prop_assert_eq!(x.mul_inv_sqrt2(), x * ExactAmp::INV_SQRT2);
            prop_assert_eq!(x.mul_inv_sqrt2().mul_inv_sqrt2(), x * ExactAmp::HALF);
        }
    }
}
