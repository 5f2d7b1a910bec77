//! The Rado algebra Q: the exterior algebra modulo x_i x_j for every
//! non-edge (i, j) of the Rado graph. The graph has an edge between i and j
//! exactly when i occurs in the binary expansion of j or vice versa.
//!
//! Each degree d is spanned by the single monomial x_{B(d)} when B(d) is a
//! complete subgraph, and vanishes otherwise.

use crate::engine::{Element, RingEngine};
use crate::error::Error;
use crate::zoo::exterior::parse_index_set_degree;
use crate::Result;
use num::BigUint;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Binary expansion set B(n).
pub fn bset(n: u64) -> BTreeSet<u64> {
    (0..64).filter(|&i| (n >> i) & 1 == 1).collect()
}

/// Rado graph adjacency. No self-loops.
pub fn edge(i: u64, j: u64) -> Result<bool> {
    if i == j {
        return Err(Error::pre("the Rado graph has no self-loops"));
    }
    let in_b = |a: u64, b: u64| a < 64 && (b >> a) & 1 == 1;
    Ok(in_b(i, j) || in_b(j, i))
}

/// Is every pair of distinct members joined by an edge?
pub fn gamma_complete(set: &BTreeSet<u64>) -> bool {
    let v: Vec<u64> = set.iter().copied().collect();
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if !edge(v[a], v[b]).unwrap() {
                return false;
            }
        }
    }
    true
}

pub struct RadoEngine {
    dmax: i64,
    complete: Vec<bool>,
}

impl RadoEngine {
    pub fn new(dmax: i64) -> Arc<Self> {
        let complete = (0..=dmax)
            .map(|d| gamma_complete(&bset(d as u64)))
            .collect();
        Arc::new(RadoEngine { dmax, complete })
    }

    /// Construct the monomial with the given vertex set; rejected (not
    /// zeroed) when the set is not complete.
    pub fn monomial(&self, set: &BTreeSet<u64>) -> Result<Element> {
        if !gamma_complete(set) {
            return Err(Error::pre(format!(
                "vertex set {set:?} is not complete in the Rado graph"
            )));
        }
        let d: i64 = set.iter().map(|&i| 1i64 << i).sum();
        if d > self.dmax {
            return Err(Error::BoundExceeded {
                degree: d,
                dmax: self.dmax,
            });
        }
        Ok(Element::basis(d, 0))
    }

    pub fn vertex_set(&self, e: &Element) -> Option<BTreeSet<u64>> {
        if e.is_zero() {
            None
        } else {
            Some(bset(e.degree as u64))
        }
    }
}

impl RingEngine for RadoEngine {
    fn name(&self) -> String {
        "rado".to_string()
    }

    fn dmax(&self) -> i64 {
        self.dmax
    }

    fn dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        assert!(d <= self.dmax, "degree {d} beyond bound {}", self.dmax);
        usize::from(self.complete[d as usize])
    }

    fn basis_labels(&self, d: i64) -> Vec<String> {
        if self.dim(d) == 0 {
            return Vec::new();
        }
        if d == 0 {
            return vec!["1".to_string()];
        }
        let bits = bset(d as u64)
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",");
        vec![format!("x{{{bits}}}")]
    }

    fn mul_basis(&self, d1: i64, _i1: usize, d2: i64, _i2: usize) -> Element {
        let d = d1 + d2;
        if (d1 as u64) & (d2 as u64) == 0 && self.complete[d as usize] {
            Element::basis(d, 0)
        } else {
            Element::zero(d)
        }
    }

    fn generators(&self) -> Vec<(String, i64)> {
        let mut out = Vec::new();
        let mut i = 0u32;
        loop {
            let d = 1i64 << i;
            if d > self.dmax {
                break;
            }
            out.push((format!("x{{{i}}}"), d));
            i += 1;
        }
        out
    }

    fn generator(&self, idx: usize) -> Element {
        Element::basis(1i64 << idx, 0)
    }

    fn parse_monomial(&self, s: &str) -> Result<Element> {
        let d = parse_index_set_degree(s)?;
        if d > self.dmax {
            return Err(Error::BoundExceeded {
                degree: d,
                dmax: self.dmax,
            });
        }
        if d > 0 && !self.complete[d as usize] {
            return Err(Error::pre(format!(
                "monomial `{s}` has a non-complete vertex set"
            )));
        }
        Ok(Element::basis(d, 0))
    }
}

// ---------------------------------------------------------------------------
// graph embeddings into the Rado graph
// ---------------------------------------------------------------------------

/// A finite simple graph on vertices 0..n.
#[derive(Clone, Debug)]
pub struct Graph {
    pub n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::pre("no self-loops"));
            }
            if a >= n || b >= n {
                return Err(Error::invalid("edge endpoint out of range"));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }
}

/// Rado adjacency for arbitrarily large vertex labels.
pub fn edge_big(i: &BigUint, j: &BigUint) -> Result<bool> {
    if i == j {
        return Err(Error::pre("the Rado graph has no self-loops"));
    }
    Ok(in_bset_big(i, j) || in_bset_big(j, i))
}

fn in_bset_big(a: &BigUint, b: &BigUint) -> bool {
    // a indexes a bit of b; if a is at least b's bit length the bit is 0
    if a.bits() > 64 {
        return false;
    }
    let idx: u64 = a.try_into().unwrap_or(u64::MAX);
    idx < b.bits() && b.bit(idx)
}

/// Extend a full embedding of a subgraph to the whole graph, one vertex at
/// a time: the new vertex maps to 2^N + sum of 2^{f(v)} over its neighbours
/// already placed, where N is one more than the largest label used.
///
/// `partial` maps a subset of the graph's vertices into the Rado graph; it
/// is verified to be a full embedding before extension.
pub fn extend_embedding(
    g: &Graph,
    partial: &BTreeMap<usize, BigUint>,
) -> Result<BTreeMap<usize, BigUint>> {
    // injectivity
    let mut seen = BTreeSet::new();
    for v in partial.values() {
        if !seen.insert(v.clone()) {
            return Err(Error::pre("embedding is not injective"));
        }
    }
    for (&a, fa) in partial {
        for (&b, fb) in partial {
            if a < b && g.has_edge(a, b) != edge_big(fa, fb)? {
                return Err(Error::pre(format!(
                    "map is not a full embedding at ({a}, {b})"
                )));
            }
        }
    }
    let mut f = partial.clone();
    for x in 0..g.n {
        if f.contains_key(&x) {
            continue;
        }
        let n_big: BigUint = f
            .values()
            .max()
            .map_or(BigUint::from(0u32), |m| m + 1u32);
        let mut val = BigUint::from(1u32) << u64::try_from(&n_big).map_err(|_| {
            Error::invalid("embedding labels grew beyond what can be shifted")
        })?;
        for (&v, fv) in &f {
            if g.has_edge(x, v) {
                val += BigUint::from(1u32) << u64::try_from(fv).map_err(|_| {
                    Error::invalid("embedding labels grew beyond what can be shifted")
                })?;
            }
        }
        f.insert(x, val);
    }
    // re-verify the extension
    for (&a, fa) in &f {
        for (&b, fb) in &f {
            if a < b && g.has_edge(a, b) != edge_big(fa, fb)? {
                return Err(Error::invalid(format!(
                    "extension failed to be full at ({a}, {b})"
                )));
            }
        }
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// the constructive double-annihilator certificate for monomial ideals
// ---------------------------------------------------------------------------

/// A vertex of the form n = 2^N + sum_{t in T} 2^t with N above every
/// ordinary vertex in play, kept as its expansion set.
#[derive(Clone, Debug)]
pub struct BigVertex {
    pub bits: BTreeSet<u64>,
}

impl BigVertex {
    /// Adjacency against an ordinary vertex k: k is in B(n) by membership
    /// in `bits`; n is in B(k) only if n's numeric value is a bit position
    /// of k, impossible once n >= 64.
    pub fn edge_to(&self, k: u64) -> bool {
        if self.bits.contains(&k) {
            return true;
        }
        match self.value_small() {
            Some(v) if v < 64 => (k >> v) & 1 == 1,
            _ => false,
        }
    }

    fn value_small(&self) -> Option<u64> {
        let mut v: u64 = 0;
        for &b in &self.bits {
            if b >= 63 {
                return None;
            }
            v = v.checked_add(1u64 << b)?;
        }
        Some(v)
    }
}

/// Outcome for one monomial in the inspected window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialStatus {
    /// contained in the ideal (a generator divides it)
    InIdeal,
    /// excluded from the double annihilator by a verified witness vertex
    Excluded { witness_bits: Vec<u64> },
}

/// Exact double-annihilator check for a finitely generated monomial ideal
/// in Q, over every monomial of degree <= window. For each monomial x_T
/// outside the ideal, the witness vertex n with B(n) = {N} union T is built
/// and then *verified*: x_n kills every generator (a missing edge is
/// exhibited) while x_n x_T is nonzero (completeness of {n} union T is
/// checked pair by pair). This certifies ann^2(J) = J on the window without
/// any degree truncation in the annihilator.
pub fn monomial_dac_check(
    gens: &[BTreeSet<u64>],
    window: i64,
) -> Result<Vec<(i64, MonomialStatus)>> {
    for g in gens {
        if !gamma_complete(g) {
            return Err(Error::pre("ideal generators must be complete monomials"));
        }
        if g.is_empty() {
            return Err(Error::pre("unit ideal: the check is vacuous"));
        }
    }
    let mut out = Vec::new();
    for d in 0..=window {
        let t = bset(d as u64);
        if !gamma_complete(&t) {
            continue; // the monomial is zero in Q
        }
        if gens.iter().any(|g| g.is_subset(&t)) {
            out.push((d, MonomialStatus::InIdeal));
            continue;
        }
        // witness: N strictly above everything in sight
        let top = t
            .iter()
            .chain(gens.iter().flatten())
            .max()
            .copied()
            .unwrap_or(0);
        let big_n = top + 1;
        let mut bits = t.clone();
        bits.insert(big_n);
        let w = BigVertex { bits };

        // verified: the witness annihilates each generator
        for g in gens {
            let k = g
                .iter()
                .find(|k| !t.contains(k))
                .expect("generator does not divide the monomial");
            if w.edge_to(*k) {
                return Err(Error::invalid(format!(
                    "witness construction failed against generator {g:?}"
                )));
            }
        }
        // verified: the witness does not annihilate x_T
        for &v in &t {
            if !w.edge_to(v) {
                return Err(Error::invalid(format!(
                    "witness is not adjacent to vertex {v}"
                )));
            }
        }
        out.push((
            d,
            MonomialStatus::Excluded {
                witness_bits: w.bits.iter().copied().collect(),
            },
        ));
    }
    Ok(out)
}
