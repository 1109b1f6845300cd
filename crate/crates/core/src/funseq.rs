//! Fundamental-sequence systems over strict well-orderings.
//!
//! A [`FunSeqSystem`] assigns to every non-zero limit `x` a strictly
//! increasing sequence `s(x, 0) < s(x, 1) < …` below `x`. On top of that this
//! module provides descent paths ([`PathCode`]), the greedy least-measure path
//! search, the step-down chain and checkers for the Bachmann property and
//! Schmidt coherence.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::ordinal::{ElementKind, Ordinal, OrdinalError};

/// Default cap on path length / step-down steps.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunSeqError {
    #[error("{0} is not a limit element")]
    NotALimit(String),
    #[error("invalid path step at index {index}: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("step limit of {0} exceeded")]
    StepLimit(usize),
    #[error("target {target} is not below {start}")]
    TargetNotBelow { start: String, target: String },
    #[error("no table entry for s({x}, {n})")]
    MissingEntry { x: String, n: u64 },
    #[error("{0} does not belong to the ordering")]
    NotInOrdering(String),
    #[error("table line {line}: {message}")]
    Table { line: usize, message: String },
    #[error("sequence for {x} is not increasing: s({x},{n}) = {lo} but s({x},{m}) = {hi}")]
    NotMonotone {
        x: String,
        n: u64,
        m: u64,
        lo: String,
        hi: String,
    },
    #[error("s({x},{n}) = {value} is not below {x}")]
    NotBelow { x: String, n: u64, value: String },
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error("{0}")]
    Other(String),
}

/// A strict well-ordering presented through comparison and classification.
pub trait OrderPresentation {
    type Elem: Clone + Eq + Hash + fmt::Debug + fmt::Display;

    fn compare(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// Zero, successor (with its predecessor) or limit.
    fn classify(&self, a: &Self::Elem) -> ElementKind<Self::Elem>;

    fn minimum(&self) -> Self::Elem;

    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn less(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.compare(a, b) == Ordering::Less
    }
}

/// A system of strictly monotone cofinal sequences.
pub trait FunSeqSystem: OrderPresentation {
    /// `s(x, n)` for a limit `x`.
    fn fundamental(&self, x: &Self::Elem, n: u64) -> Result<Self::Elem, FunSeqError>;
}

impl<S: OrderPresentation + ?Sized> OrderPresentation for &S {
    type Elem = S::Elem;

    fn compare(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        (**self).compare(a, b)
    }

    fn classify(&self, a: &Self::Elem) -> ElementKind<Self::Elem> {
        (**self).classify(a)
    }

    fn minimum(&self) -> Self::Elem {
        (**self).minimum()
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        (**self).contains(a)
    }
}

impl<S: FunSeqSystem + ?Sized> FunSeqSystem for &S {
    fn fundamental(&self, x: &Self::Elem, n: u64) -> Result<Self::Elem, FunSeqError> {
        (**self).fundamental(x, n)
    }
}

macro_rules! ordinal_presentation {
    ($ty:ty) => {
        impl OrderPresentation for $ty {
            type Elem = Ordinal;

            fn compare(&self, a: &Ordinal, b: &Ordinal) -> Ordering {
                a.cmp(b)
            }

            fn classify(&self, a: &Ordinal) -> ElementKind<Ordinal> {
                a.classify()
            }

            fn minimum(&self) -> Ordinal {
                Ordinal::zero()
            }
        }
    };
}

/// The standard system `s_st` on ordinals below ε₀.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardSystem;

ordinal_presentation!(StandardSystem);

impl FunSeqSystem for StandardSystem {
    fn fundamental(&self, x: &Ordinal, n: u64) -> Result<Ordinal, FunSeqError> {
        Ok(x.standard_fundamental(n)?)
    }
}

/// `s′(α+ω^{β+1}, n) = α+ω^β·(n+1)`, with the same limit-exponent rule as
/// the standard system.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShiftedSystem;

ordinal_presentation!(ShiftedSystem);

impl FunSeqSystem for ShiftedSystem {
    fn fundamental(&self, x: &Ordinal, n: u64) -> Result<Ordinal, FunSeqError> {
        Ok(x.fundamental_with(n, 1)?)
    }
}

/// A table of explicit `s(x, n)` values over ordinals, optionally falling
/// back to the standard system for pairs the table does not mention.
///
/// Text format: one entry per line, `x ; n ; s(x,n)` in ordinal syntax.
/// Blank lines and `#` comments are ignored; a line `fallback: standard`
/// enables the fallback.
#[derive(Debug, Clone, Default)]
pub struct TableSystem {
    entries: BTreeMap<(Ordinal, u64), Ordinal>,
    fallback: bool,
}

ordinal_presentation!(TableSystem);

impl TableSystem {
    pub fn new(
        entries: impl IntoIterator<Item = (Ordinal, u64, Ordinal)>,
        fallback: bool,
    ) -> Result<Self, FunSeqError> {
        let mut table = TableSystem {
            entries: BTreeMap::new(),
            fallback,
        };
        for (x, n, value) in entries {
            table.entries.insert((x, n), value);
        }
        table.validate()?;
        Ok(table)
    }

    pub fn parse(text: &str) -> Result<Self, FunSeqError> {
        let mut entries = Vec::new();
        let mut fallback = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("fallback:") {
                fallback = match rest.trim() {
                    "standard" | "st" => true,
                    "none" => false,
                    other => {
                        return Err(FunSeqError::Table {
                            line: i + 1,
                            message: format!("unknown fallback '{other}'"),
                        })
                    }
                };
                continue;
            }
            let fields: Vec<&str> = line.split(';').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(FunSeqError::Table {
                    line: i + 1,
                    message: "expected 'x ; n ; s(x,n)'".into(),
                });
            }
            let bad = |m: String| FunSeqError::Table {
                line: i + 1,
                message: m,
            };
            let x: Ordinal = fields[0].parse().map_err(|e| bad(format!("{e}")))?;
            let n: u64 = fields[1]
                .parse()
                .map_err(|_| bad(format!("'{}' is not a natural", fields[1])))?;
            let v: Ordinal = fields[2].parse().map_err(|e| bad(format!("{e}")))?;
            entries.push((x, n, v));
        }
        TableSystem::new(entries, fallback)
    }

    fn validate(&self) -> Result<(), FunSeqError> {
        let mut previous: Option<(&Ordinal, u64, &Ordinal)> = None;
        for ((x, n), value) in &self.entries {
            if !x.is_limit() {
                return Err(FunSeqError::NotALimit(x.to_string()));
            }
            if value >= x {
                return Err(FunSeqError::NotBelow {
                    x: x.to_string(),
                    n: *n,
                    value: value.to_string(),
                });
            }
            if let Some((px, pn, pv)) = previous {
                if px == x && pv >= value {
                    return Err(FunSeqError::NotMonotone {
                        x: x.to_string(),
                        n: pn,
                        m: *n,
                        lo: pv.to_string(),
                        hi: value.to_string(),
                    });
                }
            }
            previous = Some((x, *n, value));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl FunSeqSystem for TableSystem {
    fn fundamental(&self, x: &Ordinal, n: u64) -> Result<Ordinal, FunSeqError> {
        if let Some(v) = self.entries.get(&(x.clone(), n)) {
            return Ok(v.clone());
        }
        if self.fallback {
            return Ok(x.standard_fundamental(n)?);
        }
        if !x.is_limit() {
            return Err(FunSeqError::NotALimit(x.to_string()));
        }
        Err(FunSeqError::MissingEntry {
            x: x.to_string(),
            n,
        })
    }
}

/// A finite descent code `(n₁, …, n_k)`: an entry `m ≥ 1` at a limit moves to
/// `s(·, m−1)`, an entry `0` at a successor moves to the predecessor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct PathCode(pub Vec<u64>);

impl PathCode {
    pub fn empty() -> Self {
        PathCode(Vec::new())
    }

    /// `n₁ + … + n_k + k`.
    pub fn measure(&self) -> u64 {
        self.0.iter().sum::<u64>() + self.0.len() as u64
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &PathCode) -> PathCode {
        PathCode(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for PathCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for PathCode {
    type Err = FunSeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(PathCode::empty());
        }
        inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| FunSeqError::Other(format!("bad path entry '{p}'")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(PathCode)
    }
}

pub fn path_measure(p: &PathCode) -> u64 {
    p.measure()
}

/// One step of a path code from `current`.
fn path_step<S: FunSeqSystem>(
    sys: &S,
    current: &S::Elem,
    entry: u64,
    index: usize,
) -> Result<S::Elem, FunSeqError> {
    let invalid = |reason: String| FunSeqError::InvalidStep { index, reason };
    match (sys.classify(current), entry) {
        (ElementKind::Limit, 0) => Err(invalid(format!("entry 0 at limit {current}"))),
        (ElementKind::Limit, m) => sys.fundamental(current, m - 1),
        (ElementKind::Successor(pred), 0) => Ok(pred),
        (ElementKind::Successor(_), m) => Err(invalid(format!("entry {m} at successor {current}"))),
        (ElementKind::Zero, m) => Err(invalid(format!("entry {m} at the minimum {current}"))),
    }
}

/// End point of the descent path coded by `p` from `a`.
pub fn resolve_path<S: FunSeqSystem>(
    sys: &S,
    a: &S::Elem,
    p: &PathCode,
) -> Result<S::Elem, FunSeqError> {
    if !sys.contains(a) {
        return Err(FunSeqError::NotInOrdering(a.to_string()));
    }
    let mut current = a.clone();
    for (index, &entry) in p.0.iter().enumerate() {
        current = path_step(sys, &current, entry, index)?;
    }
    Ok(current)
}

/// Least `n` with `target ≤ s(x, n)`, found by galloping then bisection.
pub fn least_index_reaching<S: FunSeqSystem>(
    sys: &S,
    x: &S::Elem,
    target: &S::Elem,
) -> Result<u64, FunSeqError> {
    let reaches = |n: u64| -> Result<bool, FunSeqError> {
        Ok(sys.compare(&sys.fundamental(x, n)?, target) != Ordering::Less)
    };
    if reaches(0)? {
        return Ok(0);
    }
    let (mut lo, mut hi) = (0u64, 1u64);
    while !reaches(hi)? {
        lo = hi;
        hi = match hi.checked_mul(2) {
            Some(h) if h < 1 << 62 => h,
            _ => {
                return Err(FunSeqError::Other(format!(
                    "sequence for {x} never reaches {target}"
                )))
            }
        };
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Greedy least-measure path from `a` down to `b`: at each step take the
/// least entry whose end point is still `≥ b`. Minimal when the system has
/// the Bachmann property.
pub fn greedy_min_path<S: FunSeqSystem>(
    sys: &S,
    a: &S::Elem,
    b: &S::Elem,
    step_cap: usize,
) -> Result<PathCode, FunSeqError> {
    if !sys.less(b, a) {
        return Err(FunSeqError::TargetNotBelow {
            start: a.to_string(),
            target: b.to_string(),
        });
    }
    let mut current = a.clone();
    let mut code = Vec::new();
    while current != *b {
        if code.len() >= step_cap {
            return Err(FunSeqError::StepLimit(step_cap));
        }
        match sys.classify(&current) {
            ElementKind::Successor(pred) => {
                code.push(0);
                current = pred;
            }
            ElementKind::Limit => {
                let n = least_index_reaching(sys, &current, b)?;
                code.push(n + 1);
                current = sys.fundamental(&current, n)?;
            }
            ElementKind::Zero => {
                return Err(FunSeqError::TargetNotBelow {
                    start: current.to_string(),
                    target: b.to_string(),
                })
            }
        }
    }
    Ok(PathCode(code))
}

/// Every valid path from `a` ending exactly at `b` with measure at most
/// `measure_cap`, sorted by measure and then lexicographically.
pub fn enumerate_paths<S: FunSeqSystem>(
    sys: &S,
    a: &S::Elem,
    b: &S::Elem,
    measure_cap: u64,
) -> Result<Vec<PathCode>, FunSeqError> {
    let mut out = Vec::new();
    for m in 0..=measure_cap {
        out.extend(paths_of_measure(sys, a, b, m)?);
    }
    Ok(out)
}

/// Every valid path from `a` ending exactly at `b` with measure exactly
/// `measure`, sorted lexicographically.
pub fn paths_of_measure<S: FunSeqSystem>(
    sys: &S,
    a: &S::Elem,
    b: &S::Elem,
    measure: u64,
) -> Result<Vec<PathCode>, FunSeqError> {
    let mut out = Vec::new();
    if !sys.less(b, a) {
        return Ok(out);
    }
    let mut prefix = Vec::new();
    enumerate_from(sys, a, b, measure, &mut prefix, &mut out)?;
    out.sort();
    Ok(out)
}

/// The first path listed by [`enumerate_paths`] for `measure_cap`, found
/// by trying measures in increasing order.
pub fn least_enumerated_path<S: FunSeqSystem>(
    sys: &S,
    a: &S::Elem,
    b: &S::Elem,
    measure_cap: u64,
) -> Result<Option<PathCode>, FunSeqError> {
    for m in 0..=measure_cap {
        if let Some(p) = paths_of_measure(sys, a, b, m)?.into_iter().next() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Paths from `current` to `target` using exactly `budget` more measure.
fn enumerate_from<S: FunSeqSystem>(
    sys: &S,
    current: &S::Elem,
    target: &S::Elem,
    budget: u64,
    prefix: &mut Vec<u64>,
    out: &mut Vec<PathCode>,
) -> Result<(), FunSeqError> {
    match sys.compare(current, target) {
        Ordering::Equal => {
            if budget == 0 {
                out.push(PathCode(prefix.clone()));
            }
            return Ok(());
        }
        Ordering::Less => return Ok(()),
        Ordering::Greater => {}
    }
    match sys.classify(current) {
        ElementKind::Zero => {}
        ElementKind::Successor(pred) => {
            if budget >= 1 {
                prefix.push(0);
                enumerate_from(sys, &pred, target, budget - 1, prefix, out)?;
                prefix.pop();
            }
        }
        ElementKind::Limit => {
            // entry m costs m + 1
            for m in 1..budget {
                let next = sys.fundamental(current, m - 1)?;
                if sys.less(&next, target) {
                    continue;
                }
                prefix.push(m);
                enumerate_from(sys, &next, target, budget - m - 1, prefix, out)?;
                prefix.pop();
            }
        }
    }
    Ok(())
}

/// The step-down image: predecessor of a successor, `s(x, 0)` of a limit.
pub fn step_down<S: FunSeqSystem>(
    sys: &S,
    x: &S::Elem,
) -> Result<Option<S::Elem>, FunSeqError> {
    match sys.classify(x) {
        ElementKind::Zero => Ok(None),
        ElementKind::Successor(pred) => Ok(Some(pred)),
        ElementKind::Limit => sys.fundamental(x, 0).map(Some),
    }
}

/// Lazy iterator over the step-down chain `a = c₀ > c₁ > …` ending at the
/// minimum.
pub struct StepDownChain<'s, S: FunSeqSystem> {
    sys: &'s S,
    next: Option<S::Elem>,
    steps: usize,
    cap: usize,
    failed: bool,
}

impl<S: FunSeqSystem> Iterator for StepDownChain<'_, S> {
    type Item = Result<S::Elem, FunSeqError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let current = self.next.take()?;
        if self.steps > self.cap {
            self.failed = true;
            return Some(Err(FunSeqError::StepLimit(self.cap)));
        }
        self.steps += 1;
        match step_down(self.sys, &current) {
            Ok(n) => self.next = n,
            Err(e) => {
                self.failed = true;
                return Some(Err(e));
            }
        }
        Some(Ok(current))
    }
}

pub fn step_down_chain<'s, S: FunSeqSystem>(
    sys: &'s S,
    a: &S::Elem,
    cap: usize,
) -> StepDownChain<'s, S> {
    StepDownChain {
        sys,
        next: Some(a.clone()),
        steps: 0,
        cap,
        failed: false,
    }
}

/// Whether `lower ≺^s upper`, decided by walking the step-down chain of
/// `upper` until it passes below `lower`.
pub fn step_down_reaches<S: FunSeqSystem>(
    sys: &S,
    upper: &S::Elem,
    lower: &S::Elem,
    cap: usize,
) -> Result<bool, FunSeqError> {
    for item in step_down_chain(sys, upper, cap).skip(1) {
        let c = item?;
        match sys.compare(&c, lower) {
            Ordering::Equal => return Ok(true),
            Ordering::Less => return Ok(false),
            Ordering::Greater => {}
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BachmannViolation {
    pub x: String,
    pub n: u64,
    pub y: String,
    pub s_x_n: String,
    pub s_y_0: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BachmannReport {
    /// Number of `(x, n, y)` triples that met the premise.
    pub checked: usize,
    pub violations: Vec<BachmannViolation>,
}

impl BachmannReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `s(x,n) < y ≤ s(x,n+1) ⇒ s(x,n) ≤ s(y,0)` for sampled limits `x, y`
/// and `n ≤ n_cap`.
pub fn check_bachmann<S: FunSeqSystem>(
    sys: &S,
    limit_sample: &[S::Elem],
    n_cap: u64,
) -> Result<BachmannReport, FunSeqError> {
    for x in limit_sample {
        if !sys.classify(x).is_limit() {
            return Err(FunSeqError::NotALimit(x.to_string()));
        }
    }
    let first_terms: Vec<S::Elem> = limit_sample
        .iter()
        .map(|y| sys.fundamental(y, 0))
        .collect::<Result<_, _>>()?;
    let mut report = BachmannReport::default();
    for x in limit_sample {
        let mut lo = sys.fundamental(x, 0)?;
        for n in 0..=n_cap {
            let hi = sys.fundamental(x, n + 1)?;
            for (y, s_y0) in limit_sample.iter().zip(&first_terms) {
                if sys.less(&lo, y) && !sys.less(&hi, y) {
                    report.checked += 1;
                    if sys.less(s_y0, &lo) {
                        report.violations.push(BachmannViolation {
                            x: x.to_string(),
                            n,
                            y: y.to_string(),
                            s_x_n: lo.to_string(),
                            s_y_0: s_y0.to_string(),
                        });
                    }
                }
            }
            lo = hi;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchmidtViolation {
    pub x: String,
    pub n: u64,
    pub s_x_n: String,
    pub s_x_n1: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SchmidtReport {
    pub checked: usize,
    pub violations: Vec<SchmidtViolation>,
}

impl SchmidtReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `s(x,n) ≺^s s(x,n+1)` for sampled limits and `n ≤ n_cap`.
pub fn check_schmidt_coherent<S: FunSeqSystem>(
    sys: &S,
    limit_sample: &[S::Elem],
    n_cap: u64,
    step_cap: usize,
) -> Result<SchmidtReport, FunSeqError> {
    let mut report = SchmidtReport::default();
    for x in limit_sample {
        if !sys.classify(x).is_limit() {
            return Err(FunSeqError::NotALimit(x.to_string()));
        }
        let mut lo = sys.fundamental(x, 0)?;
        for n in 0..=n_cap {
            let hi = sys.fundamental(x, n + 1)?;
            report.checked += 1;
            if !step_down_reaches(sys, &hi, &lo, step_cap)? {
                report.violations.push(SchmidtViolation {
                    x: x.to_string(),
                    n,
                    s_x_n: lo.to_string(),
                    s_x_n1: hi.to_string(),
                });
            }
            lo = hi;
        }
    }
    Ok(report)
}

/// All ordinals `Σ ω^e·c_e` with natural exponents `e < max_exponent` and
/// coefficients `c_e ≤ coef_cap`, in increasing order.
pub fn ordinals_below_omega_power(max_exponent: u32, coef_cap: u64) -> Vec<Ordinal> {
    let mut out = vec![Ordinal::zero()];
    for e in 0..max_exponent as u64 {
        let mut next = Vec::new();
        for base in &out {
            for c in 0..=coef_cap {
                // prepend the ω^e·c term above everything already chosen
                next.push(Ordinal::term(Ordinal::nat(e), c).add(base));
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn resolve_path_examples() {
        let st = StandardSystem;
        assert_eq!(resolve_path(&st, &o("w"), &PathCode::empty()).unwrap(), o("w"));
        assert_eq!(resolve_path(&st, &o("w"), &PathCode(vec![3])).unwrap(), o("2"));
        let err = resolve_path(&st, &o("w^2"), &PathCode(vec![2, 0])).unwrap_err();
        assert!(matches!(err, FunSeqError::InvalidStep { index: 1, .. }));
        let err = resolve_path(&st, &o("3"), &PathCode(vec![1])).unwrap_err();
        assert!(matches!(err, FunSeqError::InvalidStep { index: 0, .. }));
        let err = resolve_path(&st, &o("0"), &PathCode(vec![0])).unwrap_err();
        assert!(matches!(err, FunSeqError::InvalidStep { index: 0, .. }));
    }

    #[test]
    fn path_measure_examples() {
        assert_eq!(path_measure(&PathCode::empty()), 0);
        assert_eq!(path_measure(&PathCode(vec![3])), 4);
        assert_eq!(path_measure(&PathCode(vec![2, 0, 1])), 6);
    }

    #[test]
    fn greedy_examples() {
        let st = StandardSystem;
        let cap = DEFAULT_STEP_CAP;
        assert_eq!(greedy_min_path(&st, &o("w"), &o("2"), cap).unwrap(), PathCode(vec![3]));
        assert_eq!(greedy_min_path(&st, &o("w^2"), &o("w"), cap).unwrap(), PathCode(vec![2]));
        assert_eq!(greedy_min_path(&st, &o("5"), &o("4"), cap).unwrap(), PathCode(vec![0]));
        assert!(matches!(
            greedy_min_path(&st, &o("w"), &o("w"), cap),
            Err(FunSeqError::TargetNotBelow { .. })
        ));
        assert!(matches!(
            greedy_min_path(&st, &o("w*3"), &o("0"), 2),
            Err(FunSeqError::StepLimit(2))
        ));
    }

    #[test]
    fn enumerate_examples() {
        let st = StandardSystem;
        assert_eq!(enumerate_paths(&st, &o("w"), &o("2"), 4).unwrap(), vec![PathCode(vec![3])]);
        assert_eq!(enumerate_paths(&st, &o("3"), &o("2"), 10).unwrap(), vec![PathCode(vec![0])]);
        assert!(enumerate_paths(&st, &o("w"), &o("w"), 5).unwrap().is_empty());
        // ω → 2 also via (4,0) with measure 6
        let all = enumerate_paths(&st, &o("w"), &o("2"), 6).unwrap();
        assert_eq!(all, vec![PathCode(vec![3]), PathCode(vec![4, 0])]);
    }

    #[test]
    fn enumeration_by_measure() {
        let st = StandardSystem;
        let all = enumerate_paths(&st, &o("w*2"), &o("w"), 6).unwrap();
        let want = [vec![1], vec![2, 0], vec![3, 0, 0]];
        assert_eq!(all, want.map(PathCode).to_vec());
        assert!(paths_of_measure(&st, &o("w*2"), &o("w"), 3).unwrap().is_empty());
        assert_eq!(paths_of_measure(&st, &o("w*2"), &o("w"), 4).unwrap(), vec![PathCode(vec![2, 0])]);
        let least = least_enumerated_path(&st, &o("w*2"), &o("w"), 9).unwrap();
        assert_eq!(least.as_ref(), all.first());
        assert_eq!(least, Some(PathCode(vec![1])));
        assert_eq!(least_enumerated_path(&st, &o("w"), &o("5"), 4).unwrap(), None);
    }

    #[test]
    fn step_down_examples() {
        let st = StandardSystem;
        let chain = |a: &str| -> Vec<Ordinal> {
            step_down_chain(&st, &o(a), DEFAULT_STEP_CAP)
                .collect::<Result<_, _>>()
                .unwrap()
        };
        assert_eq!(chain("w^2"), vec![o("w^2"), o("0")]);
        assert_eq!(chain("3"), vec![o("3"), o("2"), o("1"), o("0")]);
        assert_eq!(chain("w+1"), vec![o("w+1"), o("w"), o("0")]);
        let capped: Vec<_> = step_down_chain(&st, &o("5"), 2).collect();
        assert!(matches!(capped.last(), Some(Err(FunSeqError::StepLimit(2)))));
    }

    fn counterexample() -> TableSystem {
        let mut entries: Vec<(Ordinal, u64, Ordinal)> = (0..=8)
            .map(|n| (o("w^2"), n, Ordinal::term(Ordinal::one(), n + 1)))
            .collect();
        entries.push((o("w*2"), 0, o("0")));
        TableSystem::new(entries, true).unwrap()
    }

    #[test]
    fn bachmann_examples() {
        let st = StandardSystem;
        let sample = [o("w^2"), o("w*2")];
        assert!(check_bachmann(&st, &sample, 3).unwrap().holds());
        let report = check_bachmann(&counterexample(), &sample, 3).unwrap();
        assert!(report.violations.contains(&BachmannViolation {
            x: "w^2".into(),
            n: 0,
            y: "w*2".into(),
            s_x_n: "w".into(),
            s_y_0: "0".into(),
        }));
        assert!(check_bachmann(&st, &[], 5).unwrap().holds());
        assert!(check_bachmann(&st, &[o("w+1")], 5).is_err());
    }

    #[test]
    fn schmidt_examples() {
        let st = StandardSystem;
        assert!(check_schmidt_coherent(&st, &[o("w")], 4, DEFAULT_STEP_CAP).unwrap().holds());
        assert!(check_schmidt_coherent(&st, &[o("w^2")], 3, DEFAULT_STEP_CAP).unwrap().holds());
        assert!(check_schmidt_coherent(&st, &[], 1, DEFAULT_STEP_CAP).unwrap().holds());
        // s(ω·2, 0) = 0 breaks the step-down link from s(ω²,1) = ω·2 to s(ω²,0) = ω
        let report = check_schmidt_coherent(&counterexample(), &[o("w^2")], 2, 1000).unwrap();
        assert!(!report.holds());
    }

    #[test]
    fn table_parsing_and_validation() {
        let t = TableSystem::parse("# demo\nw^2 ; 0 ; w\nw^2 ; 1 ; w*2\n").unwrap();
        assert_eq!(t.fundamental(&o("w^2"), 1).unwrap(), o("w*2"));
        assert!(matches!(
            t.fundamental(&o("w^2"), 2),
            Err(FunSeqError::MissingEntry { .. })
        ));
        let t = TableSystem::parse("fallback: standard\nw^2 ; 0 ; w\n").unwrap();
        assert_eq!(t.fundamental(&o("w^2"), 3).unwrap(), o("w*3"));
        assert!(matches!(
            TableSystem::parse("w+1 ; 0 ; w"),
            Err(FunSeqError::NotALimit(_))
        ));
        assert!(matches!(
            TableSystem::parse("w ; 0 ; w"),
            Err(FunSeqError::NotBelow { .. })
        ));
        assert!(matches!(
            TableSystem::parse("w ; 0 ; 5\nw ; 1 ; 3"),
            Err(FunSeqError::NotMonotone { .. })
        ));
        assert!(matches!(
            TableSystem::parse("w ; x ; 5"),
            Err(FunSeqError::Table { line: 1, .. })
        ));
    }

    #[test]
    fn shifted_system_values() {
        let sh = ShiftedSystem;
        assert_eq!(sh.fundamental(&o("w"), 0).unwrap(), o("1"));
        assert_eq!(sh.fundamental(&o("w^2+w"), 2).unwrap(), o("w^2+3"));
        assert_eq!(sh.fundamental(&o("w^w"), 1).unwrap(), o("w^2"));
    }

    #[test]
    fn sample_enumeration() {
        let all = ordinals_below_omega_power(2, 1);
        assert_eq!(all, vec![o("0"), o("1"), o("w"), o("w+1")]);
        assert_eq!(ordinals_below_omega_power(3, 4).len(), 125);
    }
}
