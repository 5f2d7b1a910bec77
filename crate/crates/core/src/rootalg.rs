//! The root algebra with finite rational supports: series sum of
//! c * x^q with exact rational exponents q in [0, 1], over a prime field,
//! with x^q x^r = x^{q+r} and x^s = 0 for s > 1.
//!
//! This is the finite-support subring of the full root algebra; every
//! identity checked here (delta additivity, units and nilpotents, the
//! symbolic ideal calculus and the Baer witness construction) holds there
//! verbatim. The full ring's ideal lattice is uncountable and is not
//! modelled; ideals are handled symbolically as J_t (exponents > t) and
//! Jbar_t (exponents >= t).

use crate::error::Error;
use crate::Result;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootSeries {
    p: u64,
    terms: BTreeMap<BigRational, u64>,
}

impl RootSeries {
    pub fn zero(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::invalid(format!("{p} is not a usable prime")));
        }
        Ok(RootSeries {
            p,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(p: u64) -> Result<Self> {
        let mut s = Self::zero(p)?;
        s.terms.insert(BigRational::zero(), 1);
        Ok(s)
    }

    /// x^q; zero when q > 1 and an error when q < 0.
    pub fn x_pow(p: u64, q: BigRational) -> Result<Self> {
        let mut s = Self::zero(p)?;
        if q.is_negative() {
            return Err(Error::pre("exponents must be nonnegative"));
        }
        if q <= BigRational::one() {
            s.terms.insert(q, 1);
        }
        Ok(s)
    }

    pub fn field(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, u64)> {
        self.terms.iter().map(|(q, &c)| (q, c))
    }

    pub fn coeff(&self, q: &BigRational) -> u64 {
        self.terms.get(q).copied().unwrap_or(0)
    }

    fn insert(&mut self, q: BigRational, c: u64) {
        let c = c % self.p;
        if c != 0 {
            debug_assert!(!q.is_negative() && q <= BigRational::one());
            self.terms.insert(q, c);
        }
    }

    pub fn add(&self, other: &RootSeries) -> Result<RootSeries> {
        self.check_field(other)?;
        let mut out = RootSeries::zero(self.p)?;
        for (q, c) in self.terms.iter().chain(other.terms.iter()) {
            let cur = out.terms.get(q).copied().unwrap_or(0);
            let new = (cur + c) % self.p;
            if new == 0 {
                out.terms.remove(q);
            } else {
                out.terms.insert(q.clone(), new);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Result<RootSeries> {
        let mut out = RootSeries::zero(self.p)?;
        for (q, a) in &self.terms {
            out.insert(q.clone(), ((*a as u128 * c as u128) % self.p as u128) as u64);
        }
        Ok(out)
    }

    /// Convolution product; exponent sums above 1 are dropped.
    pub fn mul(&self, other: &RootSeries) -> Result<RootSeries> {
        self.check_field(other)?;
        let one = BigRational::one();
        let mut acc: BTreeMap<BigRational, u64> = BTreeMap::new();
        for (qa, ca) in &self.terms {
            for (qb, cb) in &other.terms {
                let q = qa + qb;
                if q > one {
                    continue;
                }
                let add = (*ca as u128 * *cb as u128 % self.p as u128) as u64;
                let cur = acc.entry(q).or_insert(0);
                *cur = (*cur + add) % self.p;
            }
        }
        let mut out = RootSeries::zero(self.p)?;
        for (q, c) in acc {
            if c != 0 {
                out.terms.insert(q, c);
            }
        }
        Ok(out)
    }

    fn check_field(&self, other: &RootSeries) -> Result<()> {
        if self.p != other.p {
            return Err(Error::pre("series live over different prime fields"));
        }
        Ok(())
    }

    /// delta(a) = min supp(a); None encodes infinity (the zero series).
    pub fn delta(&self) -> Option<BigRational> {
        self.terms.keys().next().cloned()
    }
}

impl fmt::Display for RootSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if q.is_zero() {
                write!(f, "{c}")?;
            } else {
                if *c != 1 {
                    write!(f, "{c}*")?;
                }
                if q.is_one() {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^({})", q)?;
                }
            }
        }
        Ok(())
    }
}

/// lambda_t: strip x^t off a series with delta(a) >= t, so that
/// a = x^t * lambda_t(a).
pub fn lambda_t(a: &RootSeries, t: &BigRational) -> Result<RootSeries> {
    if let Some(d) = a.delta() {
        if &d < t {
            return Err(Error::pre(format!(
                "lambda_{t} needs delta(a) >= {t}, got {d}"
            )));
        }
    }
    let mut out = RootSeries::zero(a.p)?;
    for (q, c) in &a.terms {
        out.insert(q - t, *c);
    }
    Ok(out)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a as u128 % p as u128;
    let mut exp = p - 2;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// The inverse of a series with delta(a) = 0, via the geometric series on
/// its nilpotent part. Verified by multiplication before returning.
pub fn root_inverse(a: &RootSeries) -> Result<RootSeries> {
    let Some(d) = a.delta() else {
        return Err(Error::pre("the zero series is not invertible"));
    };
    if !d.is_zero() {
        return Err(Error::pre("delta(a) > 0: the series is nilpotent, not a unit"));
    }
    let u = a.coeff(&BigRational::zero());
    let uinv = mod_inverse(u, a.p);
    // b = a - u, so a = u (1 + b/u)
    let mut b = a.clone();
    b.terms.remove(&BigRational::zero());
    let minus_b_over_u = b.scale((a.p - 1) % a.p)?.scale(uinv)?;
    let mut inv = RootSeries::zero(a.p)?;
    let mut pow = RootSeries::one(a.p)?;
    while !pow.is_zero() {
        inv = inv.add(&pow.scale(uinv)?)?;
        pow = pow.mul(&minus_b_over_u)?;
    }
    let check = a.mul(&inv)?;
    if check != RootSeries::one(a.p)? {
        return Err(Error::invalid("inverse verification failed"));
    }
    Ok(inv)
}

/// Smallest n with a^n = 0, for delta(a) > 0, found by direct powering.
pub fn nilpotency_index(a: &RootSeries) -> Result<u64> {
    let Some(d) = a.delta() else {
        return Ok(1); // the zero series
    };
    if d.is_zero() {
        return Err(Error::pre("delta(a) = 0: the series is a unit"));
    }
    // a^n = 0 once n * delta(a) > 1
    let mut n = 1u64;
    let mut pow = a.clone();
    while !pow.is_zero() {
        pow = pow.mul(a)?;
        n += 1;
        if n > 10_000 {
            return Err(Error::invalid("nilpotency index out of range"));
        }
    }
    Ok(n)
}

/// An ideal of the root algebra in symbolic form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicIdeal {
    pub t: BigRational,
    /// closed = Jbar_t = (x^t) = {delta >= t}; open = J_t = {delta > t}
    pub closed: bool,
}

impl SymbolicIdeal {
    pub fn zero_ideal() -> Self {
        // J_1 = {a : delta(a) > 1} = 0
        SymbolicIdeal {
            t: BigRational::one(),
            closed: false,
        }
    }

    pub fn unit_ideal() -> Self {
        SymbolicIdeal {
            t: BigRational::zero(),
            closed: true,
        }
    }

    pub fn contains(&self, a: &RootSeries) -> bool {
        match a.delta() {
            None => true,
            Some(d) => {
                if self.closed {
                    d >= self.t
                } else {
                    d > self.t
                }
            }
        }
    }
}

impl fmt::Display for SymbolicIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.closed {
            write!(f, "Jbar[{}]", self.t)
        } else {
            write!(f, "J[{}]", self.t)
        }
    }
}

/// Finitely generated nonzero ideals are closed with t = min delta.
pub fn classify_ideal(gens: &[RootSeries]) -> SymbolicIdeal {
    let min = gens.iter().filter_map(|g| g.delta()).min();
    match min {
        None => SymbolicIdeal::zero_ideal(),
        Some(t) => SymbolicIdeal { t, closed: true },
    }
}

/// ann(J_t) = Jbar_{1-t}, ann(Jbar_t) = J_{1-t}.
pub fn symbolic_ann(i: &SymbolicIdeal) -> SymbolicIdeal {
    SymbolicIdeal {
        t: BigRational::one() - &i.t,
        closed: !i.closed,
    }
}

/// The Baer witness for a module map on (x^t) sending x^t to a: the map is
/// multiplication by lambda_t(a), which requires delta(a) >= t.
pub fn baer_witness(t: &BigRational, a: &RootSeries) -> Result<RootSeries> {
    let w = lambda_t(a, t).map_err(|_| {
        Error::pre("map data is inconsistent: the image must lie in (x^t)")
    })?;
    let xt = RootSeries::x_pow(a.p, t.clone())?;
    if xt.mul(&w)? != *a {
        return Err(Error::invalid("witness verification failed"));
    }
    Ok(w)
}

/// Parse `c*x^(n/d)` terms joined by `+`; `1`, `x`, `x^(1/2)` etc.
pub fn parse_series(p: u64, s: &str) -> Result<RootSeries> {
    let mut out = RootSeries::zero(p)?;
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::parse("empty term in series"));
        }
        let (coeff, power) = match term.split_once('*') {
            Some((c, rest)) => (
                c.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::parse(format!("bad coefficient `{c}`: {e}")))?,
                rest.trim(),
            ),
            None => {
                if let Ok(c) = term.parse::<u64>() {
                    out = out.add(&RootSeries::one(p)?.scale(c)?)?;
                    continue;
                }
                (1, term)
            }
        };
        let q = if power == "x" {
            BigRational::one()
        } else {
            let inner = power
                .strip_prefix("x^(")
                .and_then(|t| t.strip_suffix(')'))
                .or_else(|| power.strip_prefix("x^"))
                .ok_or_else(|| Error::parse(format!("expected x^(n/d), got `{power}`")))?;
            parse_rational(inner)?
        };
        out = out.add(&RootSeries::x_pow(p, q)?.scale(coeff)?)?;
    }
    Ok(out)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|e| Error::parse(format!("bad numerator `{n}`: {e}")))?;
            let d: i64 = d
                .trim()
                .parse()
                .map_err(|e| Error::parse(format!("bad denominator `{d}`: {e}")))?;
            if d == 0 {
                return Err(Error::parse("zero denominator"));
            }
            Ok(rational(n, d))
        }
        None => {
            let n: i64 = s
                .parse()
                .map_err(|e| Error::parse(format!("bad rational `{s}`: {e}")))?;
            Ok(rational(n, 1))
        }
    }
}
