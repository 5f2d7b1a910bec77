//! Ordinals below epsilon_0 in Cantor normal form.
//!
//! An ordinal is a finite list of (exponent, coefficient) terms with
//! strictly decreasing exponents and positive coefficients; the empty list
//! is 0. Canonical form is maintained eagerly by every constructor, so
//! structural equality is ordinal equality and the derived lexicographic
//! order on term lists agrees with the ordinal order.

use crate::error::Error;
use crate::Result;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from_nat(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(&Ordinal::one())
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    /// omega^a as a one-term normal form; omega^0 = 1.
    pub fn omega_pow(a: &Ordinal) -> Self {
        Ordinal {
            terms: vec![(a.clone(), 1)],
        }
    }

    /// Build from terms that are already strictly decreasing in exponent.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 >= 1));
        Ordinal { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn as_nat(&self) -> Option<u64> {
        if self.is_zero() {
            Some(0)
        } else if self.terms.len() == 1 && self.terms[0].0.is_zero() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }

    /// Ordinal comparison; same as the derived `Ord`.
    pub fn ord_cmp(&self, other: &Ordinal) -> Ordering {
        self.cmp(other)
    }

    /// Ordinal sum a + b in normal form. Terms of `a` with exponent below
    /// the leading exponent of `b` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        if other.is_zero() {
            return self.clone();
        }
        let lead = &other.terms[0].0;
        let mut terms: Vec<(Ordinal, u64)> = self
            .terms
            .iter()
            .take_while(|(e, _)| e >= lead)
            .cloned()
            .collect();
        let mut rest = other.terms.clone();
        if let Some(last) = terms.last_mut() {
            if last.0 == *lead {
                last.1 += rest[0].1;
                rest.remove(0);
            }
        }
        terms.extend(rest);
        Ordinal { terms }
    }

    /// Successor a + 1.
    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// The degree function: delta(0) = 1 and
    /// delta(a) = (sum over terms of (delta(exponent) + 2) * coefficient) - 1.
    pub fn delta(&self) -> u64 {
        if self.is_zero() {
            return 1;
        }
        self.terms
            .iter()
            .map(|(e, n)| (e.delta() + 2) * n)
            .sum::<u64>()
            - 1
    }

    /// The reverse-polish word over {'0', 'p', '+'} whose length is delta.
    /// 'p' is the operator x -> omega^x and '+' is binary ordinal sum.
    pub fn phi_word(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut count = 0usize;
        for (e, n) in &self.terms {
            let part = e.phi_word();
            for _ in 0..*n {
                out.push_str(&part);
                out.push('p');
                count += 1;
            }
        }
        for _ in 0..count - 1 {
            out.push('+');
        }
        out
    }

    /// mu_0(a, b): the coefficient of omega^b in the normal form of a.
    pub fn mu0(&self, b: &Ordinal) -> u64 {
        self.terms
            .iter()
            .find(|(e, _)| e == b)
            .map_or(0, |(_, n)| *n)
    }

    /// mu(a, b) = max(mu_0(a, b), mu_0(b, a)); undefined on the diagonal.
    pub fn mu(&self, b: &Ordinal) -> Result<u64> {
        if self == b {
            return Err(Error::MuDiagonal);
        }
        Ok(self.mu0(b).max(b.mu0(self)))
    }
}

/// Decode a reverse-polish word produced by `phi_word`. Returns None if the
/// word is not a valid expression (stack error or leftovers).
pub fn phi_decode(word: &str) -> Option<Ordinal> {
    let mut stack: Vec<Ordinal> = Vec::new();
    for c in word.chars() {
        match c {
            '0' => stack.push(Ordinal::zero()),
            'p' => {
                let x = stack.pop()?;
                stack.push(Ordinal::omega_pow(&x));
            }
            '+' => {
                let b = stack.pop()?;
                let a = stack.pop()?;
                stack.push(a.add(&b));
            }
            _ => return None,
        }
    }
    if stack.len() == 1 {
        stack.pop()
    } else {
        None
    }
}

/// A fresh ordinal a with a not in J and mu(a, b) = nu(b) for every b in J.
/// `targets` must list (b, nu(b)) with the b strictly decreasing; for empty
/// J the fresh default is omega.
pub fn extension_witness(targets: &[(Ordinal, u64)]) -> Result<Ordinal> {
    if targets.is_empty() {
        return Ok(Ordinal::omega());
    }
    for w in targets.windows(2) {
        if w[0].0 <= w[1].0 {
            return Err(Error::pre("extension targets must be strictly decreasing"));
        }
    }
    let lead = Ordinal::omega_pow(&targets[0].0.succ());
    let mut terms = lead.terms;
    for (b, nu) in targets {
        if *nu > 0 {
            terms.push((b.clone(), *nu));
        }
    }
    Ok(Ordinal { terms })
}

/// All ordinals with delta <= d, by budgeted recursion over expanded
/// normal forms. A nonzero ordinal with expanded exponents b_1 >= ... >= b_m
/// has delta = sum (delta(b_i) + 2) - 1, so terms are chosen from smaller
/// fibers against the budget d + 1.
pub fn enumerate_delta_le(d: u64) -> Vec<Ordinal> {
    let mut fibers: Vec<Vec<Ordinal>> = vec![Vec::new(); (d + 1) as usize];
    if d >= 1 {
        fibers[1].push(Ordinal::zero());
    }
    for n in 2..=d {
        // exponents usable in an ordinal of delta = n cost delta(b) + 2 each
        let mut exps: Vec<(Ordinal, u64)> = Vec::new();
        for (dd, fiber) in fibers.iter().enumerate().take(n as usize) {
            for b in fiber {
                exps.push((b.clone(), dd as u64 + 2));
            }
        }
        // exponents sorted descending so generated term lists are canonical
        exps.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<Ordinal> = Vec::new();
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        build_terms(&exps, 0, n + 1, &mut terms, &mut out);
        fibers[n as usize] = out;
    }
    let mut all: Vec<Ordinal> = fibers.into_iter().flatten().collect();
    all.sort();
    all
}

fn build_terms(
    exps: &[(Ordinal, u64)],
    start: usize,
    budget: u64,
    terms: &mut Vec<(Ordinal, u64)>,
    out: &mut Vec<Ordinal>,
) {
    if budget == 0 && !terms.is_empty() {
        out.push(Ordinal::from_terms(terms.clone()));
        return;
    }
    for i in start..exps.len() {
        let (b, cost) = &exps[i];
        if *cost > budget {
            continue;
        }
        let max_count = budget / cost;
        for count in 1..=max_count {
            terms.push((b.clone(), count));
            if count * cost == budget {
                out.push(Ordinal::from_terms(terms.clone()));
            } else {
                build_terms(exps, i + 1, budget - count * cost, terms, out);
            }
            terms.pop();
        }
    }
}

// ---------------------------------------------------------------------------
// textual syntax: `0`, `w`, `w^(expr)*n`, sums with `+`, e.g. `w^2+w*3+1`
// ---------------------------------------------------------------------------

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, n) in &self.terms {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{n}")?;
            } else if e.as_nat() == Some(1) {
                write!(f, "w")?;
                if *n > 1 {
                    write!(f, "*{n}")?;
                }
            } else {
                match e.as_nat() {
                    Some(k) => write!(f, "w^{k}")?,
                    None => {
                        if *e == Ordinal::omega() {
                            write!(f, "w^w")?;
                        } else {
                            write!(f, "w^({e})")?;
                        }
                    }
                }
                if *n > 1 {
                    write!(f, "*{n}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn parse_ordinal(s: &str) -> Result<Ordinal> {
    let mut p = Parser {
        chars: s.chars().collect(),
        pos: 0,
    };
    let o = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::parse(format!("trailing input in ordinal `{s}`")));
    }
    Ok(o)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let t = self.term()?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some('w') => {
                self.pos += 1;
                let exp = if self.peek() == Some('^') {
                    self.pos += 1;
                    self.base()?
                } else {
                    Ordinal::one()
                };
                let coeff = if self.peek() == Some('*') {
                    self.pos += 1;
                    self.nat()?
                } else {
                    1
                };
                if coeff == 0 {
                    return Ok(Ordinal::zero());
                }
                Ok(Ordinal {
                    terms: vec![(exp, coeff)],
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                Ok(Ordinal::from_nat(n))
            }
            other => Err(Error::parse(format!(
                "expected ordinal term, found {other:?}"
            ))),
        }
    }

    fn base(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from_nat(self.nat()?)),
            other => Err(Error::parse(format!(
                "expected exponent, found {other:?}"
            ))),
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>()
            .map_err(|e| Error::parse(format!("bad number `{s}`: {e}")))
    }
}
