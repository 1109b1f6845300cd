//! Budget-capped evaluation of fast-growing hierarchies.
//!
//! `F₀(x) = x+1`, `F_{b+1}(x) = F_b^x(x)` and `F_l(x) = F_{s(l,x)}(x)` for a
//! limit `l`. Evaluation runs on an explicit task stack so deep recursions
//! never touch the native stack; exhausting either budget yields
//! [`EvalOutcome::BudgetExceeded`] instead of an error.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::funseq::{greedy_min_path, FunSeqError, FunSeqSystem, PathCode, DEFAULT_STEP_CAP};
use crate::ordinal::ElementKind;

pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;
pub const DEFAULT_MAX_BITS: u64 = 1 << 20;

/// Results up to this many bits are memoized within one evaluation.
const MEMO_BITS: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FghError {
    #[error("budget must be positive (steps {steps}, bits {bits})")]
    InvalidBudget { steps: u64, bits: u64 },
    #[error("result exceeds {max_bits} bits")]
    Overflow { max_bits: u64 },
    #[error("{lower} is not below {upper}")]
    NotBelow { lower: String, upper: String },
    #[error(transparent)]
    FunSeq(#[from] FunSeqError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvalBudget {
    pub max_recursion_steps: u64,
    pub max_result_bits: u64,
}

impl Default for EvalBudget {
    fn default() -> Self {
        EvalBudget {
            max_recursion_steps: DEFAULT_MAX_STEPS,
            max_result_bits: DEFAULT_MAX_BITS,
        }
    }
}

impl EvalBudget {
    pub fn new(max_recursion_steps: u64, max_result_bits: u64) -> Result<Self, FghError> {
        if max_recursion_steps == 0 || max_result_bits == 0 {
            return Err(FghError::InvalidBudget {
                steps: max_recursion_steps,
                bits: max_result_bits,
            });
        }
        Ok(EvalBudget {
            max_recursion_steps,
            max_result_bits,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalOutcome {
    Exact(#[serde(serialize_with = "decimal")] BigUint),
    BudgetExceeded { steps: u64 },
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl EvalOutcome {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            EvalOutcome::Exact(v) => Some(v),
            EvalOutcome::BudgetExceeded { .. } => None,
        }
    }
}

impl fmt::Display for EvalOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalOutcome::Exact(v) => write!(f, "{v}"),
            EvalOutcome::BudgetExceeded { steps } => write!(f, "budget-exceeded({steps})"),
        }
    }
}

enum Task<E> {
    /// Evaluate `F_e(x)` and push the result.
    Call(E, BigUint),
    /// Apply `F_e` to the top value `remaining` more times.
    Iterate(E, u64),
    /// Record the top value as `F_e(x)`.
    Remember(E, BigUint),
}

struct Exceeded;

/// `F^s_a(x)` within `budget`.
///
/// `F₁(x) = 2x` and `F₂(x) = x·2^x` are evaluated in closed form; everything
/// above them is unfolded literally.
pub fn fgh_eval<S: FunSeqSystem>(
    sys: &S,
    a: &S::Elem,
    x: &BigUint,
    budget: EvalBudget,
) -> Result<EvalOutcome, FghError> {
    if !sys.contains(a) {
        return Err(FunSeqError::NotInOrdering(a.to_string()).into());
    }
    let mut machine = Machine {
        sys,
        budget,
        steps: 0,
        memo: HashMap::new(),
    };
    match machine.run(a, x)? {
        Ok(v) => Ok(EvalOutcome::Exact(v)),
        Err(Exceeded) => Ok(EvalOutcome::BudgetExceeded {
            steps: machine.steps,
        }),
    }
}

pub fn fgh_eval_u64<S: FunSeqSystem>(
    sys: &S,
    a: &S::Elem,
    x: u64,
    budget: EvalBudget,
) -> Result<EvalOutcome, FghError> {
    fgh_eval(sys, a, &BigUint::from(x), budget)
}

struct Machine<'s, S: FunSeqSystem> {
    sys: &'s S,
    budget: EvalBudget,
    steps: u64,
    memo: HashMap<(S::Elem, u64), BigUint>,
}

impl<S: FunSeqSystem> Machine<'_, S> {
    fn check_bits(&self, v: &BigUint) -> Result<(), Exceeded> {
        if v.bits() > self.budget.max_result_bits {
            Err(Exceeded)
        } else {
            Ok(())
        }
    }

    /// Finite levels 1 and 2 in closed form.
    fn closed_form(&self, level: u8, x: &BigUint) -> Result<BigUint, Exceeded> {
        match level {
            1 => {
                let v = x << 1u32;
                self.check_bits(&v)?;
                Ok(v)
            }
            _ => {
                let shift = x.to_u64().ok_or(Exceeded)?;
                if shift.saturating_add(x.bits()) > self.budget.max_result_bits {
                    return Err(Exceeded);
                }
                Ok(x << shift)
            }
        }
    }

    /// 0 for the minimum, `k` for the `k`-th successor of it when `k ≤ 2`.
    fn finite_level(&self, e: &S::Elem) -> Option<u8> {
        let mut current = e.clone();
        for level in 0..=2u8 {
            match self.sys.classify(&current) {
                ElementKind::Zero => return Some(level),
                ElementKind::Successor(p) => current = p,
                ElementKind::Limit => return None,
            }
        }
        None
    }

    fn run(&mut self, a: &S::Elem, x: &BigUint) -> Result<Result<BigUint, Exceeded>, FghError> {
        let mut tasks = vec![Task::Call(a.clone(), x.clone())];
        let mut values: Vec<BigUint> = Vec::new();
        while let Some(task) = tasks.pop() {
            self.steps += 1;
            if self.steps > self.budget.max_recursion_steps {
                return Ok(Err(Exceeded));
            }
            match task {
                Task::Call(e, x) => {
                    let key = x.to_u64().map(|small| (e.clone(), small));
                    if let Some(v) = key.as_ref().and_then(|k| self.memo.get(k)) {
                        values.push(v.clone());
                        continue;
                    }
                    match self.finite_level(&e) {
                        Some(0) => {
                            let v = x + 1u32;
                            if self.check_bits(&v).is_err() {
                                return Ok(Err(Exceeded));
                            }
                            values.push(v);
                            continue;
                        }
                        Some(level) => match self.closed_form(level, &x) {
                            Ok(v) => {
                                values.push(v);
                                continue;
                            }
                            Err(e) => return Ok(Err(e)),
                        },
                        None => {}
                    }
                    let Some(n) = x.to_u64() else {
                        return Ok(Err(Exceeded));
                    };
                    tasks.push(Task::Remember(e.clone(), x.clone()));
                    match self.sys.classify(&e) {
                        ElementKind::Zero => unreachable!("handled as level 0"),
                        ElementKind::Successor(b) => {
                            values.push(x);
                            tasks.push(Task::Iterate(b, n));
                        }
                        ElementKind::Limit => {
                            let next = self.sys.fundamental(&e, n)?;
                            tasks.push(Task::Call(next, x));
                        }
                    }
                }
                Task::Iterate(b, remaining) => {
                    if remaining == 0 {
                        continue;
                    }
                    let top = values.pop().expect("iterate without operand");
                    tasks.push(Task::Iterate(b.clone(), remaining - 1));
                    tasks.push(Task::Call(b, top));
                }
                Task::Remember(e, x) => {
                    let v = values.last().expect("remember without value");
                    if v.bits() <= MEMO_BITS {
                        if let Some(small) = x.to_u64() {
                            self.memo.insert((e, small), v.clone());
                        }
                    }
                }
            }
        }
        let v = values.pop().expect("evaluation produced no value");
        if self.check_bits(&v).is_err() {
            return Ok(Err(Exceeded));
        }
        Ok(Ok(v))
    }
}

/// `ℶ_n(x)`: `ℶ₀(x) = x`, `ℶ_{n+1}(x) = 2^{ℶ_n(x)}`.
pub fn beth(n: u64, x: &BigUint, max_bits: u64) -> Result<BigUint, FghError> {
    let overflow = FghError::Overflow { max_bits };
    let mut v = x.clone();
    if v.bits() > max_bits {
        return Err(overflow);
    }
    for _ in 0..n {
        // 2^v has v+1 bits
        let exp = v.to_u64().ok_or_else(|| overflow.clone())?;
        if exp >= max_bits {
            return Err(overflow);
        }
        v = BigUint::one() << exp;
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Greater,
    NotGreater,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Greater => "greater",
            Verdict::NotGreater => "not-greater",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

fn verdict(lhs: &EvalOutcome, rhs: &EvalOutcome) -> Verdict {
    match (lhs.exact(), rhs.exact()) {
        (Some(l), Some(r)) if l > r => Verdict::Greater,
        (Some(_), Some(_)) => Verdict::NotGreater,
        _ => Verdict::Inconclusive,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentRow {
    pub x: u64,
    pub lhs: EvalOutcome,
    pub rhs: EvalOutcome,
    pub verdict: Verdict,
}

/// Rows compare `lhs = F^{sys2}_b(x)` against `rhs = F^{sys1}_a(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationTable {
    pub a: String,
    pub b: String,
    pub rows: Vec<ExperimentRow>,
    /// Least sampled `x` from which every exact row is `greater`.
    pub crossover: Option<u64>,
}

impl DominationTable {
    pub fn to_csv(&self) -> String {
        rows_to_csv(&self.rows)
    }

    pub fn counter_verdicts_from(&self, x0: u64) -> Vec<&ExperimentRow> {
        self.rows
            .iter()
            .filter(|r| r.x >= x0 && r.verdict == Verdict::NotGreater)
            .collect()
    }
}

fn rows_to_csv(rows: &[ExperimentRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "lhs", "rhs", "verdict"])
        .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.x.to_string(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.verdict.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn crossover(rows: &[ExperimentRow]) -> Option<u64> {
    let mut sorted: Vec<&ExperimentRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.x);
    let last_bad = sorted.iter().rposition(|r| r.verdict == Verdict::NotGreater);
    let start = last_bad.map_or(0, |i| i + 1);
    sorted[start..]
        .iter()
        .find(|r| r.verdict == Verdict::Greater)
        .map(|r| r.x)
}

/// Samples `F^{sys2}_b(x)` against `F^{sys1}_a(x)` for `a < b`.
pub fn domination_experiment<S1, S2>(
    sys1: &S1,
    sys2: &S2,
    a: &S1::Elem,
    b: &S1::Elem,
    x_values: &[u64],
    budget: EvalBudget,
) -> Result<DominationTable, FghError>
where
    S1: FunSeqSystem,
    S2: FunSeqSystem<Elem = S1::Elem>,
{
    if !sys1.less(a, b) {
        return Err(FghError::NotBelow {
            lower: a.to_string(),
            upper: b.to_string(),
        });
    }
    let mut rows = Vec::with_capacity(x_values.len());
    for &x in x_values {
        let lhs = fgh_eval_u64(sys2, b, x, budget)?;
        let rhs = fgh_eval_u64(sys1, a, x, budget)?;
        let verdict = verdict(&lhs, &rhs);
        rows.push(ExperimentRow { x, lhs, rhs, verdict });
    }
    Ok(DominationTable {
        a: a.to_string(),
        b: b.to_string(),
        crossover: crossover(&rows),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomVerdict {
    Holds,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoherentRow {
    pub x: u64,
    pub lhs: EvalOutcome,
    pub rhs: EvalOutcome,
    pub verdict: DomVerdict,
}

/// Outcome of checking `F_a(x) ≥ F_b(x)` for `x ≥ |p|`, `p` the least path
/// from `a` to `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoherentDomReport {
    pub a: String,
    pub b: String,
    pub path: PathCode,
    pub measure: u64,
    pub rows: Vec<CoherentRow>,
    /// Sampled `x` below `|p|`, not checked.
    pub skipped: Vec<u64>,
}

impl CoherentDomReport {
    pub fn violations(&self) -> impl Iterator<Item = &CoherentRow> {
        self.rows.iter().filter(|r| r.verdict == DomVerdict::Violated)
    }

    pub fn inconclusive(&self) -> impl Iterator<Item = &CoherentRow> {
        self.rows
            .iter()
            .filter(|r| r.verdict == DomVerdict::Inconclusive)
    }

    pub fn holds(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["x", "lhs", "rhs", "verdict"])
            .expect("in-memory write");
        for r in &self.rows {
            let v = match r.verdict {
                DomVerdict::Holds => "holds",
                DomVerdict::Violated => "violated",
                DomVerdict::Inconclusive => "inconclusive",
            };
            w.write_record([r.x.to_string(), r.lhs.to_string(), r.rhs.to_string(), v.into()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

pub fn check_coherent_dom<S: FunSeqSystem>(
    sys: &S,
    a: &S::Elem,
    b: &S::Elem,
    x_values: &[u64],
    budget: EvalBudget,
) -> Result<CoherentDomReport, FghError> {
    let path = greedy_min_path(sys, a, b, DEFAULT_STEP_CAP)?;
    let measure = path.measure();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &x in x_values {
        if x < measure {
            skipped.push(x);
            continue;
        }
        let lhs = fgh_eval_u64(sys, a, x, budget)?;
        let rhs = fgh_eval_u64(sys, b, x, budget)?;
        let verdict = match (lhs.exact(), rhs.exact()) {
            (Some(l), Some(r)) if l >= r => DomVerdict::Holds,
            (Some(_), Some(_)) => DomVerdict::Violated,
            _ => DomVerdict::Inconclusive,
        };
        rows.push(CoherentRow { x, lhs, rhs, verdict });
    }
    Ok(CoherentDomReport {
        a: a.to_string(),
        b: b.to_string(),
        path,
        measure,
        rows,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funseq::{ShiftedSystem, StandardSystem};
    use crate::ordinal::Ordinal;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn eval(a: &str, x: u64) -> EvalOutcome {
        fgh_eval_u64(&StandardSystem, &o(a), x, EvalBudget::default()).unwrap()
    }

    fn exact(v: u64) -> EvalOutcome {
        EvalOutcome::Exact(BigUint::from(v))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval("0", 5), exact(6));
        assert_eq!(eval("1", 3), exact(6));
        assert_eq!(eval("w", 2), exact(8));
        assert_eq!(eval("2", 3), exact(24));
        assert_eq!(eval("3", 2), exact(2048));
    }

    #[test]
    fn budget_exhaustion_is_an_outcome() {
        assert!(matches!(eval("3", 3), EvalOutcome::BudgetExceeded { .. }));
        assert!(matches!(eval("w^w", 4), EvalOutcome::BudgetExceeded { .. }));
        let tiny = EvalBudget::new(3, 64).unwrap();
        let r = fgh_eval_u64(&StandardSystem, &o("w*2"), 3, tiny).unwrap();
        assert_eq!(r, EvalOutcome::BudgetExceeded { steps: 4 });
        assert!(EvalBudget::new(0, 5).is_err());
    }

    #[test]
    fn beth_examples() {
        let b = |n, x: u64| beth(n, &BigUint::from(x), DEFAULT_MAX_BITS).unwrap();
        assert_eq!(b(0, 7), BigUint::from(7u32));
        assert_eq!(b(1, 10), BigUint::from(1024u32));
        assert_eq!(b(2, 3), BigUint::from(256u32));
        assert!(matches!(
            beth(3, &BigUint::from(5u32), 1000),
            Err(FghError::Overflow { max_bits: 1000 })
        ));
    }

    #[test]
    fn domination_examples() {
        let st = StandardSystem;
        let xs: Vec<u64> = (1..=6).collect();
        let t = domination_experiment(&st, &st, &o("1"), &o("2"), &xs, EvalBudget::default())
            .unwrap();
        assert_eq!(t.crossover, Some(2));
        assert_eq!(t.rows[0].verdict, Verdict::NotGreater);
        assert!(t.rows[1..].iter().all(|r| r.verdict == Verdict::Greater));

        let xs: Vec<u64> = (1..=5).collect();
        let t = domination_experiment(
            &st,
            &ShiftedSystem,
            &o("w"),
            &o("w*2"),
            &xs,
            EvalBudget::default(),
        )
        .unwrap();
        assert!(t.counter_verdicts_from(2).is_empty());
        assert!(matches!(
            domination_experiment(&st, &st, &o("w"), &o("w"), &xs, EvalBudget::default()),
            Err(FghError::NotBelow { .. })
        ));
    }

    #[test]
    fn coherent_dom_examples() {
        let st = StandardSystem;
        let r = check_coherent_dom(&st, &o("w"), &o("3"), &[4, 5, 6], EvalBudget::default())
            .unwrap();
        assert_eq!(r.path, PathCode(vec![4]));
        assert_eq!(r.measure, 5);
        assert_eq!(r.skipped, vec![4]);
        assert!(r.holds());
        let r = check_coherent_dom(&st, &o("2"), &o("1"), &[2, 3], EvalBudget::default())
            .unwrap();
        assert!(r.holds() && r.inconclusive().next().is_none());
        let r = check_coherent_dom(&st, &o("1"), &o("0"), &[1], EvalBudget::default()).unwrap();
        assert_eq!(r.rows[0].lhs, exact(2));
        assert_eq!(r.rows[0].rhs, exact(2));
        assert!(r.holds());
    }

    #[test]
    fn csv_shape() {
        let st = StandardSystem;
        let t = domination_experiment(&st, &st, &o("0"), &o("1"), &[1, 2], EvalBudget::default())
            .unwrap();
        assert_eq!(
            t.to_csv(),
            "x,lhs,rhs,verdict\n1,2,2,not-greater\n2,4,3,greater\n"
        );
    }
}
