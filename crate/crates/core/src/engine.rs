//! Degreewise representation of Z-graded rings that are finite dimensional
//! over F2 in each degree.
//!
//! An engine answers three questions exactly, for every degree up to its
//! configured bound `dmax`: what is the monomial basis of R_d, what is the
//! product of two basis elements, and what are the algebra generators.
//! Everything else (ideals, annihilators, test pairs, quotients) is linear
//! algebra on top of those answers. Queries beyond the bound fail loudly.

use crate::error::Error;
use crate::gf2::{Mat, Row, Subspace};
use crate::Result;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Basis product table: table[i][j] = coordinates of the product of the
/// i-th and j-th basis monomials of two fixed degrees.
pub type MulTable = Arc<Vec<Vec<Row>>>;

/// A homogeneous element: an explicit degree plus the F2 coordinate support
/// over that degree's monomial basis. Zero elements in different degrees are
/// distinct values.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Element {
    pub degree: i64,
    pub support: Vec<usize>,
}

impl Element {
    pub fn zero(degree: i64) -> Self {
        Element {
            degree,
            support: Vec::new(),
        }
    }

    pub fn basis(degree: i64, index: usize) -> Self {
        Element {
            degree,
            support: vec![index],
        }
    }

    pub fn from_support(degree: i64, mut support: Vec<usize>) -> Self {
        support.sort_unstable();
        support.dedup();
        Element { degree, support }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Sum in F2: symmetric difference of supports. Degrees must agree.
    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = Vec::with_capacity(self.support.len() + other.support.len());
        let (mut i, mut j) = (0, 0);
        while i < self.support.len() || j < other.support.len() {
            match (self.support.get(i), other.support.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&b)) if a < b => {
                    out.push(a);
                    i += 1;
                }
                (Some(_), Some(&b)) => {
                    out.push(b);
                    j += 1;
                }
                (Some(&a), None) => {
                    out.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    out.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(Element {
            degree: self.degree,
            support: out,
        })
    }

    pub fn to_row(&self, dim: usize) -> Row {
        Row::from_support(dim, &self.support)
    }

    pub fn from_row(degree: i64, row: &Row) -> Element {
        Element {
            degree,
            support: row.support(),
        }
    }
}

/// Per-ring oracle: basis enumeration per degree, basis products, generators.
pub trait RingEngine: Send + Sync {
    /// Ring spec string, e.g. `cube(0,4)`.
    fn name(&self) -> String;

    /// All answers are certified for degrees 0..=dmax only.
    fn dmax(&self) -> i64;

    /// dim R_d; zero outside [0, dmax] is only reported for negative d,
    /// degrees above dmax panic (they are a programming error — public
    /// operations validate bounds first).
    fn dim(&self, d: i64) -> usize;

    /// Labels of the degree-d monomial basis, in the ring's canonical order.
    fn basis_labels(&self, d: i64) -> Vec<String>;

    /// Product of basis elements (d1, i1) * (d2, i2) in coordinates of
    /// degree d1 + d2. Callers guarantee d1 + d2 <= dmax.
    fn mul_basis(&self, d1: i64, i1: usize, d2: i64, i2: usize) -> Element;

    /// Algebra generators (label, degree), restricted to degree <= dmax.
    fn generators(&self) -> Vec<(String, i64)>;

    /// The generator with the given index in `generators()` order.
    fn generator(&self, idx: usize) -> Element;

    /// Parse a single monomial in this ring's syntax.
    fn parse_monomial(&self, s: &str) -> Result<Element> {
        Err(Error::parse(format!(
            "ring {} has no monomial syntax for `{s}`",
            self.name()
        )))
    }
}

/// Validate that a degree is inside the certified window of an engine.
pub fn check_degree(engine: &dyn RingEngine, d: i64) -> Result<()> {
    if d > engine.dmax() {
        Err(Error::BoundExceeded {
            degree: d,
            dmax: engine.dmax(),
        })
    } else {
        Ok(())
    }
}

/// Graded product of homogeneous elements. Errors past the engine bound.
pub fn mul(engine: &dyn RingEngine, a: &Element, b: &Element) -> Result<Element> {
    let d = a.degree + b.degree;
    check_degree(engine, d)?;
    let mut out = Element::zero(d);
    for &i in &a.support {
        for &j in &b.support {
            let p = engine.mul_basis(a.degree, i, b.degree, j);
            out = out.add(&p)?;
        }
    }
    Ok(out)
}

/// The multiplicative unit (degree-0 pieces are one dimensional in every
/// ring handled here).
pub fn unit(engine: &dyn RingEngine) -> Element {
    debug_assert_eq!(engine.dim(0), 1);
    Element::basis(0, 0)
}

/// [dim R_0, ..., dim R_dmax].
pub fn hilbert(engine: &dyn RingEngine, dmax: i64) -> Result<Vec<usize>> {
    check_degree(engine, dmax)?;
    Ok((0..=dmax).map(|d| engine.dim(d)).collect())
}

/// Matrix of multiplication by `a` from R_d to R_{d + |a|}, as a row map.
pub fn mul_operator(engine: &dyn RingEngine, a: &Element, d: i64) -> Result<Mat> {
    let target = d + a.degree;
    check_degree(engine, target)?;
    let (dd, dt) = (engine.dim(d), engine.dim(target));
    let mut m = Mat::new(dt);
    for i in 0..dd {
        let e = Element::basis(d, i);
        let p = mul(engine, &e, a)?;
        m.push_row(p.to_row(dt));
    }
    debug_assert_eq!(m.nrows(), dd);
    Ok(m)
}

/// Coordinates for a finite product of graded pieces, used for vectors of
/// homogeneous elements (syzygies, blocks).
#[derive(Clone, Debug)]
pub struct ProductSpace {
    pub degrees: Vec<i64>,
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl ProductSpace {
    pub fn new(engine: &dyn RingEngine, degrees: Vec<i64>) -> Result<Self> {
        let mut dims = Vec::with_capacity(degrees.len());
        for &d in &degrees {
            check_degree(engine, d)?;
            dims.push(if d < 0 { 0 } else { engine.dim(d) });
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for &d in &dims {
            offsets.push(total);
            total += d;
        }
        Ok(ProductSpace {
            degrees,
            dims,
            offsets,
            total,
        })
    }

    /// Split a packed row into one element per component.
    pub fn unpack(&self, row: &Row) -> Vec<Element> {
        self.degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let support = row
                    .support()
                    .into_iter()
                    .filter(|&c| c >= self.offsets[i] && c < self.offsets[i] + self.dims[i])
                    .map(|c| c - self.offsets[i])
                    .collect();
                Element { degree: d, support }
            })
            .collect()
    }

    /// Pack per-component elements into one row.
    pub fn pack(&self, parts: &[Element]) -> Row {
        debug_assert_eq!(parts.len(), self.degrees.len());
        let mut row = Row::zero(self.total);
        for (i, e) in parts.iter().enumerate() {
            debug_assert_eq!(e.degree, self.degrees[i]);
            for &c in &e.support {
                row.set(self.offsets[i] + c, true);
            }
        }
        row
    }
}

/// Format an element as a sum of basis labels.
pub fn format_element(engine: &dyn RingEngine, a: &Element) -> String {
    if a.is_zero() {
        return format!("0@{}", a.degree);
    }
    let labels = engine.basis_labels(a.degree);
    a.support
        .iter()
        .map(|&i| labels[i].clone())
        .collect::<Vec<_>>()
        .join("+")
}

/// Parse `mono+mono+...`, `0@d`, or `0` (degree 0) in the engine's syntax.
pub fn parse_element(engine: &dyn RingEngine, s: &str) -> Result<Element> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("0@") {
        let d: i64 = rest
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad zero degree `{rest}`: {e}")))?;
        return Ok(Element::zero(d));
    }
    let mut acc: Option<Element> = None;
    for term in split_top_level(s, '+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::parse("empty term"));
        }
        let e = engine.parse_monomial(term)?;
        acc = Some(match acc {
            None => e,
            Some(a) => a.add(&e)?,
        });
    }
    acc.ok_or_else(|| Error::parse("empty element"))
}

/// Split on `sep` at bracket depth 0 (for syntaxes with `[...]`, `(...)`,
/// `{...}` groups).
pub fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' | '(' | '{' => {
                depth += 1;
                cur.push(c);
            }
            ']' | ')' | '}' => {
                depth -= 1;
                cur.push(c);
            }
            c if c == sep && depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out
}

// ---------------------------------------------------------------------------
// free polynomial engine over named generators of positive degree
// ---------------------------------------------------------------------------

/// Monomial in named generators: exponent vector, lexicographic canonical
/// order.
pub type Expo = Vec<u32>;

pub struct PolyEngine {
    gens: Vec<(String, i64)>,
    dmax: i64,
    basis: Vec<Vec<Expo>>,
    index: Vec<HashMap<Expo, usize>>,
}

impl PolyEngine {
    pub fn new(gens: Vec<(String, i64)>, dmax: i64) -> Result<Arc<Self>> {
        if gens.iter().any(|(_, d)| *d <= 0) {
            return Err(Error::pre("polynomial generators must have positive degree"));
        }
        let mut names = std::collections::BTreeSet::new();
        for (n, _) in &gens {
            if !names.insert(n.clone()) {
                return Err(Error::invalid(format!("duplicate generator name `{n}`")));
            }
        }
        let mut basis: Vec<Vec<Expo>> = vec![Vec::new(); (dmax + 1) as usize];
        let mut cur = vec![0u32; gens.len()];
        enumerate_expos(&gens, 0, 0, dmax, &mut cur, &mut basis);
        for b in basis.iter_mut() {
            b.sort();
        }
        let index = basis
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .map(|(i, e)| (e.clone(), i))
                    .collect::<HashMap<_, _>>()
            })
            .collect();
        Ok(Arc::new(PolyEngine {
            gens,
            dmax,
            basis,
            index,
        }))
    }

    pub fn expo_degree(&self, e: &Expo) -> i64 {
        e.iter()
            .zip(&self.gens)
            .map(|(&k, (_, d))| k as i64 * d)
            .sum()
    }

    pub fn expo_index(&self, e: &Expo) -> Option<(i64, usize)> {
        let d = self.expo_degree(e);
        if d > self.dmax {
            return None;
        }
        self.index[d as usize].get(e).map(|&i| (d, i))
    }

    pub fn expo_at(&self, d: i64, i: usize) -> &Expo {
        &self.basis[d as usize][i]
    }

    pub fn gen_names(&self) -> &[(String, i64)] {
        &self.gens
    }

    fn format_expo(&self, e: &Expo) -> String {
        let mut parts = Vec::new();
        for (k, (name, _)) in e.iter().zip(&self.gens) {
            match k {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{k}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn enumerate_expos(
    gens: &[(String, i64)],
    gi: usize,
    degree: i64,
    dmax: i64,
    cur: &mut Expo,
    out: &mut [Vec<Expo>],
) {
    if gi == gens.len() {
        out[degree as usize].push(cur.clone());
        return;
    }
    let gd = gens[gi].1;
    let max = (dmax - degree) / gd;
    for k in 0..=max {
        cur[gi] = k as u32;
        enumerate_expos(gens, gi + 1, degree + k * gd, dmax, cur, out);
    }
    cur[gi] = 0;
}

impl RingEngine for PolyEngine {
    fn name(&self) -> String {
        let gens = self
            .gens
            .iter()
            .map(|(n, d)| format!("{n}:{d}"))
            .collect::<Vec<_>>()
            .join(",");
        format!("poly[{gens}]")
    }

    fn dmax(&self) -> i64 {
        self.dmax
    }

    fn dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        assert!(d <= self.dmax, "degree {d} beyond bound {}", self.dmax);
        self.basis[d as usize].len()
    }

    fn basis_labels(&self, d: i64) -> Vec<String> {
        self.basis[d as usize]
            .iter()
            .map(|e| self.format_expo(e))
            .collect()
    }

    fn mul_basis(&self, d1: i64, i1: usize, d2: i64, i2: usize) -> Element {
        let a = &self.basis[d1 as usize][i1];
        let b = &self.basis[d2 as usize][i2];
        let sum: Expo = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let (d, i) = self
            .expo_index(&sum)
            .expect("product degree beyond bound");
        Element::basis(d, i)
    }

    fn generators(&self) -> Vec<(String, i64)> {
        self.gens
            .iter()
            .filter(|(_, d)| *d <= self.dmax)
            .cloned()
            .collect()
    }

    fn generator(&self, idx: usize) -> Element {
        let mut e = vec![0u32; self.gens.len()];
        e[idx] = 1;
        let (d, i) = self.expo_index(&e).expect("generator beyond bound");
        Element::basis(d, i)
    }

    fn parse_monomial(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if s == "1" {
            return Ok(unit(self));
        }
        let mut expo = vec![0u32; self.gens.len()];
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, pow) = match factor.split_once('^') {
                Some((n, p)) => (
                    n.trim(),
                    p.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::parse(format!("bad power `{p}`: {e}")))?,
                ),
                None => (factor, 1),
            };
            let gi = self
                .gens
                .iter()
                .position(|(n, _)| n == name)
                .ok_or_else(|| Error::parse(format!("unknown generator `{name}`")))?;
            expo[gi] += pow;
        }
        let (d, i) = self
            .expo_index(&expo)
            .ok_or_else(|| Error::BoundExceeded {
                degree: self.expo_degree(&expo),
                dmax: self.dmax,
            })?;
        Ok(Element::basis(d, i))
    }
}

// ---------------------------------------------------------------------------
// quotient by homogeneous relators
// ---------------------------------------------------------------------------

/// Quotient of a base engine by the ideal generated by homogeneous relators
/// of positive degree. Per degree, the span of all monomial multiples of the
/// relators is row reduced; quotient coordinates are the non-pivot columns,
/// which makes dimensions and products independent of enumeration order.
pub struct QuotientEngine {
    base: Arc<dyn RingEngine>,
    relators: Vec<Element>,
    rel_span: Vec<Subspace>,
    nonpivot: Vec<Vec<usize>>,
    // product tables per (d1, d2), built lazily; pure cache
    tables: Mutex<HashMap<(i64, i64), MulTable>>,
}

impl QuotientEngine {
    pub fn new(base: Arc<dyn RingEngine>, relators: Vec<Element>) -> Result<Arc<Self>> {
        for r in &relators {
            if r.degree <= 0 {
                return Err(Error::pre(format!(
                    "relator of degree {} rejected (must be positive)",
                    r.degree
                )));
            }
            check_degree(base.as_ref(), r.degree)?;
        }
        let dmax = base.dmax();
        let mut rel_span = Vec::with_capacity((dmax + 1) as usize);
        let mut nonpivot = Vec::with_capacity((dmax + 1) as usize);
        for d in 0..=dmax {
            let dim = base.dim(d);
            let mut rows = Vec::new();
            for r in &relators {
                let md = d - r.degree;
                if md < 0 {
                    continue;
                }
                for i in 0..base.dim(md) {
                    let m = Element::basis(md, i);
                    let p = mul(base.as_ref(), &m, r)?;
                    rows.push(p.to_row(dim));
                }
            }
            let span = Subspace::from_rows(dim, rows);
            nonpivot.push(span.non_pivots());
            rel_span.push(span);
        }
        Ok(Arc::new(QuotientEngine {
            base,
            relators,
            rel_span,
            nonpivot,
            tables: Mutex::new(HashMap::new()),
        }))
    }

    pub fn base(&self) -> &Arc<dyn RingEngine> {
        &self.base
    }

    pub fn relators(&self) -> &[Element] {
        &self.relators
    }

    /// Lift a quotient element to canonical base coordinates (the span of
    /// the non-pivot monomials).
    pub fn lift(&self, a: &Element) -> Element {
        if a.degree < 0 {
            return Element::zero(a.degree);
        }
        let np = &self.nonpivot[a.degree as usize];
        Element::from_support(a.degree, a.support.iter().map(|&i| np[i]).collect())
    }

    /// Reduce a base element to quotient coordinates.
    pub fn reduce(&self, a: &Element) -> Element {
        if a.degree < 0 {
            return Element::zero(a.degree);
        }
        let d = a.degree as usize;
        let dim = self.base.dim(a.degree);
        let reduced = self.rel_span[d].reduce(&a.to_row(dim));
        let np = &self.nonpivot[d];
        let mut support = Vec::new();
        for (qi, &col) in np.iter().enumerate() {
            if reduced.get(col) {
                support.push(qi);
            }
        }
        Element {
            degree: a.degree,
            support,
        }
    }

    fn table(&self, d1: i64, d2: i64) -> MulTable {
        if let Some(t) = self.tables.lock().unwrap().get(&(d1, d2)) {
            return t.clone();
        }
        let n1 = self.dim(d1);
        let n2 = self.dim(d2);
        let nt = self.dim(d1 + d2);
        let mut table = Vec::with_capacity(n1);
        for i in 0..n1 {
            let mut row = Vec::with_capacity(n2);
            let a = self.lift(&Element::basis(d1, i));
            for j in 0..n2 {
                let b = self.lift(&Element::basis(d2, j));
                let p = mul(self.base.as_ref(), &a, &b).expect("base product in bound");
                row.push(self.reduce(&p).to_row(nt));
            }
            table.push(row);
        }
        let table = Arc::new(table);
        self.tables
            .lock()
            .unwrap()
            .entry((d1, d2))
            .or_insert(table)
            .clone()
    }
}

impl RingEngine for QuotientEngine {
    fn name(&self) -> String {
        format!("{}/({} relators)", self.base.name(), self.relators.len())
    }

    fn dmax(&self) -> i64 {
        self.base.dmax()
    }

    fn dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        assert!(d <= self.dmax(), "degree {d} beyond bound {}", self.dmax());
        self.nonpivot[d as usize].len()
    }

    fn basis_labels(&self, d: i64) -> Vec<String> {
        let base_labels = self.base.basis_labels(d);
        self.nonpivot[d as usize]
            .iter()
            .map(|&i| base_labels[i].clone())
            .collect()
    }

    fn mul_basis(&self, d1: i64, i1: usize, d2: i64, i2: usize) -> Element {
        let t = self.table(d1, d2);
        Element::from_row(d1 + d2, &t[i1][i2])
    }

    fn generators(&self) -> Vec<(String, i64)> {
        self.base.generators()
    }

    fn generator(&self, idx: usize) -> Element {
        self.reduce(&self.base.generator(idx))
    }

    fn parse_monomial(&self, s: &str) -> Result<Element> {
        let e = self.base.parse_monomial(s)?;
        Ok(self.reduce(&e))
    }
}
