//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a strictly decreasing list of terms `ω^e·c` with
//! `c ≥ 1`, where every exponent `e` is itself an [`Ordinal`]. The empty list
//! is `0`. The representation is unique, so structural equality coincides
//! with ordinal equality and the derived `Hash` is sound.
//!
//! Text syntax: `0`, naturals, `w` (or `ω`), `w^<exponent>`, `*<nat>`
//! coefficients and `+` between terms, e.g. `w^3*2+w*5+7`. Exponents that are
//! not a single atom must be parenthesised (`w^(w+1)`); `^` associates to the
//! right, so `w^w^2` is `ω^(ω^2)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default nesting-depth cap used by parsing and [`Ordinal::omega_tower`].
pub const DEFAULT_DEPTH_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("{0} is not a limit ordinal")]
    NotALimit(Ordinal),
    #[error("zero has no last exponent")]
    Zero,
    #[error("nesting depth {depth} exceeds the cap of {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("term list is not in Cantor normal form: {0}")]
    NotNormal(String),
    #[error("no index n with {target} <= s({ordinal}, n) below 2^63")]
    NotCofinal { ordinal: Ordinal, target: Ordinal },
}

/// The three shapes an element of a well-ordering can have.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElementKind<T> {
    Zero,
    Successor(T),
    Limit,
}

impl<T> ElementKind<T> {
    pub fn is_limit(&self) -> bool {
        matches!(self, ElementKind::Limit)
    }
}

/// One Cantor-normal-form term `ω^exponent · coefficient`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Term>", into = "Vec<Term>")]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl TryFrom<Vec<Term>> for Ordinal {
    type Error = OrdinalError;

    fn try_from(terms: Vec<Term>) -> Result<Self, Self::Error> {
        Ordinal::from_terms(terms)
    }
}

impl From<Ordinal> for Vec<Term> {
    fn from(o: Ordinal) -> Self {
        o.terms
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_power(Ordinal::one())
    }

    pub fn nat(n: u64) -> Self {
        Ordinal::term(Ordinal::zero(), n)
    }

    /// `ω^exponent`.
    pub fn omega_power(exponent: Ordinal) -> Self {
        Ordinal::term(exponent, 1)
    }

    /// `ω^exponent · coefficient`; a zero coefficient gives `0`.
    pub fn term(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    /// Builds an ordinal from an explicit term list, rejecting lists that are
    /// not already in normal form.
    pub fn from_terms(terms: Vec<Term>) -> Result<Self, OrdinalError> {
        for (i, t) in terms.iter().enumerate() {
            if t.coefficient == 0 {
                return Err(OrdinalError::NotNormal(format!("term {i} has coefficient 0")));
            }
            if i > 0 && terms[i - 1].exponent <= t.exponent {
                return Err(OrdinalError::NotNormal(format!(
                    "exponent of term {i} is not below its predecessor"
                )));
            }
        }
        Ok(Ordinal { terms })
    }

    /// `α₀ + α₁ + …` for finite lists of `(exponent, coefficient)` over
    /// natural exponents, in any order. Handy for tests and examples.
    pub fn from_nat_terms(terms: &[(u64, u64)]) -> Self {
        terms.iter().fold(Ordinal::zero(), |acc, &(e, c)| {
            acc.add(&Ordinal::term(Ordinal::nat(e), c))
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    /// Nesting depth: `0` has depth 0, `ω^e·c + …` has depth one more than
    /// its deepest exponent.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| 1 + t.exponent.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn compare(&self, other: &Ordinal) -> Ordering {
        self.cmp(other)
    }

    /// Ordinal sum. Terms of `self` whose exponent is below the leading
    /// exponent of `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut merged = false;
        for t in &self.terms {
            match t.exponent.cmp(&lead.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    terms.push(Term {
                        exponent: t.exponent.clone(),
                        coefficient: t
                            .coefficient
                            .checked_add(lead.coefficient)
                            .expect("ordinal coefficient overflow"),
                    });
                    merged = true;
                    break;
                }
                Ordering::Less => break,
            }
        }
        let rest = if merged { &other.terms[1..] } else { &other.terms[..] };
        terms.extend(rest.iter().cloned());
        Ordinal { terms }
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    pub fn classify(&self) -> ElementKind<Ordinal> {
        match self.terms.last() {
            None => ElementKind::Zero,
            Some(t) if t.exponent.is_zero() => {
                let mut terms = self.terms.clone();
                let last = terms.last_mut().expect("non-empty");
                if last.coefficient == 1 {
                    terms.pop();
                } else {
                    last.coefficient -= 1;
                }
                ElementKind::Successor(Ordinal { terms })
            }
            Some(_) => ElementKind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify().is_limit()
    }

    /// Exponent of the final Cantor-normal-form term.
    pub fn last_exponent(&self) -> Result<&Ordinal, OrdinalError> {
        self.terms
            .last()
            .map(|t| &t.exponent)
            .ok_or(OrdinalError::Zero)
    }

    /// Splits `α + ω^β·c` into `(α + ω^β·(c−1), β)`, i.e. peels one copy of
    /// the final power off.
    fn split_last_power(&self) -> Option<(Ordinal, Ordinal)> {
        let last = self.terms.last()?;
        let mut head = self.terms.clone();
        let exponent = last.exponent.clone();
        let tail = head.last_mut().expect("non-empty");
        if tail.coefficient == 1 {
            head.pop();
        } else {
            tail.coefficient -= 1;
        }
        Some((Ordinal { terms: head }, exponent))
    }

    /// The standard fundamental sequence: `s(α+ω^{β+1}, n) = α+ω^β·n`, and for
    /// limit `β`, `s(α+ω^β, n) = α+ω^{s(β,n)}`.
    pub fn standard_fundamental(&self, n: u64) -> Result<Ordinal, OrdinalError> {
        self.fundamental_with(n, 0)
    }

    /// Like [`standard_fundamental`](Self::standard_fundamental) but with the
    /// successor-exponent rule `s(α+ω^{β+1}, n) = α+ω^β·(n+shift)`. `shift = 1`
    /// gives the shifted system used in domination experiments.
    pub fn fundamental_with(&self, n: u64, shift: u64) -> Result<Ordinal, OrdinalError> {
        if !self.is_limit() {
            return Err(OrdinalError::NotALimit(self.clone()));
        }
        let (head, exponent) = self.split_last_power().expect("limit is non-zero");
        match exponent.classify() {
            ElementKind::Zero => unreachable!("limit has a non-zero last exponent"),
            ElementKind::Successor(pred) => {
                let coefficient = n.checked_add(shift).expect("fundamental index overflow");
                Ok(head.add(&Ordinal::term(pred, coefficient)))
            }
            ElementKind::Limit => {
                let inner = exponent.fundamental_with(n, shift)?;
                Ok(head.add(&Ordinal::omega_power(inner)))
            }
        }
    }

    /// Least `n` with `target ≤ s_st(self, n)`; exists for every `target < self`.
    pub fn cofinal_index(&self, target: &Ordinal) -> Result<u64, OrdinalError> {
        let at = |n: u64| self.standard_fundamental(n);
        if at(0)? >= *target {
            return Ok(0);
        }
        let mut lo = 0u64;
        let mut hi = 1u64;
        while at(hi)? < *target {
            lo = hi;
            hi = hi.checked_mul(2).filter(|h| *h < 1 << 63).ok_or_else(|| {
                OrdinalError::NotCofinal {
                    ordinal: self.clone(),
                    target: target.clone(),
                }
            })?;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if at(mid)? >= *target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// `ω_k`: `ω_0 = 1`, `ω_{k+1} = ω^{ω_k}`.
    pub fn omega_tower(k: usize) -> Result<Ordinal, OrdinalError> {
        Ordinal::omega_tower_capped(k, DEFAULT_DEPTH_CAP)
    }

    pub fn omega_tower_capped(k: usize, cap: usize) -> Result<Ordinal, OrdinalError> {
        if k + 1 > cap {
            return Err(OrdinalError::DepthCap { depth: k + 1, cap });
        }
        let mut o = Ordinal::one();
        for _ in 0..k {
            o = Ordinal::omega_power(o);
        }
        Ok(o)
    }

    pub fn parse_capped(text: &str, cap: usize) -> Result<Ordinal, OrdinalError> {
        let mut p = Parser {
            src: text,
            pos: 0,
            cap,
        };
        p.skip_ws();
        let o = p.sum(0)?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("unexpected trailing input"));
        }
        let depth = o.depth();
        if depth > cap {
            return Err(OrdinalError::DepthCap { depth, cap });
        }
        Ok(o)
    }

    fn fmt_exponent(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atomic = match self.terms.as_slice() {
            [t] => t.exponent.is_zero() || t.coefficient == 1,
            _ => false,
        };
        if atomic {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    /// Lexicographic on term lists: exponent first, then coefficient; a
    /// proper prefix is smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then(a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            write!(f, "w")?;
            if t.exponent != Ordinal::one() {
                write!(f, "^")?;
                t.exponent.fmt_exponent(f)?;
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ordinal::parse_capped(s, DEFAULT_DEPTH_CAP)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    cap: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> OrdinalError {
        OrdinalError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn check_depth(&self, depth: usize) -> Result<(), OrdinalError> {
        if depth > self.cap {
            Err(OrdinalError::DepthCap {
                depth,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    // sum := product ('+' product)*
    fn sum(&mut self, depth: usize) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.product(depth)?;
        while self.eat('+') {
            let next = self.product(depth)?;
            acc = acc.add(&next);
        }
        Ok(acc)
    }

    // product := atom ('*' nat)*
    fn product(&mut self, depth: usize) -> Result<Ordinal, OrdinalError> {
        let mut base = self.atom(depth)?;
        while self.eat('*') {
            self.skip_ws();
            let c = self.nat()?;
            base = scale(&base, c);
        }
        Ok(base)
    }

    // atom := nat | ('w'|'ω') ('^' exponent)? | '(' sum ')'
    fn atom(&mut self, depth: usize) -> Result<Ordinal, OrdinalError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some('w') | Some('ω') => {
                let c = self.peek().expect("peeked");
                self.pos += c.len_utf8();
                self.check_depth(depth + 2)?;
                let exponent = if self.eat('^') {
                    self.exponent(depth + 1)?
                } else {
                    Ordinal::one()
                };
                Ok(Ordinal::omega_power(exponent))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.sum(depth)?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.error("expected a natural, 'w' or '('")),
        }
    }

    // exponent := nat | 'w' ('^' exponent)? | '(' sum ')'
    fn exponent(&mut self, depth: usize) -> Result<Ordinal, OrdinalError> {
        self.check_depth(depth)?;
        self.atom(depth)
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("natural number out of range"))
    }
}

/// `α·c` for a natural `c`: multiplies the leading coefficient.
fn scale(o: &Ordinal, c: u64) -> Ordinal {
    if c == 0 || o.is_zero() {
        return Ordinal::zero();
    }
    let mut terms = o.terms.clone();
    terms[0].coefficient = terms[0]
        .coefficient
        .checked_mul(c)
        .expect("ordinal coefficient overflow");
    // α·c = ω^β·(a·c) + rest for c ≥ 1
    Ordinal { terms }
}
