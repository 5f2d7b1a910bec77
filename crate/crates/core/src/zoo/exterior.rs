//! The exterior algebra E with one generator x_i of degree 2^i for every i,
//! and its finite stages E(n) generated by x_0, ..., x_{n-1}.
//!
//! Index sets are binary expansions: the degree-d piece is spanned by the
//! single square-free monomial x_I with I = B(d), when it exists. Products
//! are carry-free additions.

use crate::engine::{Element, RingEngine};
use crate::error::Error;
use crate::Result;
use std::sync::Arc;

/// Binary expansion set B(n): the bit positions of n.
pub fn bset(n: u64) -> Vec<u32> {
    (0..64).filter(|&i| (n >> i) & 1 == 1).collect()
}

pub struct ExteriorEngine {
    vars: Option<u32>,
    dmax: i64,
}

impl ExteriorEngine {
    pub fn full(dmax: i64) -> Arc<Self> {
        Arc::new(ExteriorEngine { vars: None, dmax })
    }

    pub fn truncated(n: u32, dmax: i64) -> Result<Arc<Self>> {
        if n >= 63 {
            return Err(Error::invalid("exterior stage too large"));
        }
        Ok(Arc::new(ExteriorEngine {
            vars: Some(n),
            dmax,
        }))
    }

    fn present(&self, d: i64) -> bool {
        if d < 0 {
            return false;
        }
        match self.vars {
            None => true,
            Some(n) => d < (1i64 << n),
        }
    }

    fn label(d: i64) -> String {
        if d == 0 {
            return "1".to_string();
        }
        let bits = bset(d as u64)
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("x{{{bits}}}")
    }
}

impl RingEngine for ExteriorEngine {
    fn name(&self) -> String {
        match self.vars {
            None => "exterior".to_string(),
            Some(n) => format!("exterior({n})"),
        }
    }

    fn dmax(&self) -> i64 {
        self.dmax
    }

    fn dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        assert!(d <= self.dmax, "degree {d} beyond bound {}", self.dmax);
        usize::from(self.present(d))
    }

    fn basis_labels(&self, d: i64) -> Vec<String> {
        if self.dim(d) == 0 {
            Vec::new()
        } else {
            vec![Self::label(d)]
        }
    }

    fn mul_basis(&self, d1: i64, _i1: usize, d2: i64, _i2: usize) -> Element {
        let d = d1 + d2;
        // disjoint index sets = carry-free addition of degrees
        if (d1 as u64) & (d2 as u64) == 0 && self.present(d) {
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
            if let Some(n) = self.vars {
                if i >= n {
                    break;
                }
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
        if !self.present(d) {
            return Err(Error::parse(format!(
                "monomial `{s}` uses variables outside {}",
                self.name()
            )));
        }
        Ok(Element::basis(d, 0))
    }
}

/// Parse `1` or `x{i,j,...}` and return the monomial degree (sum of 2^i).
pub fn parse_index_set_degree(s: &str) -> Result<i64> {
    let s = s.trim();
    if s == "1" {
        return Ok(0);
    }
    let inner = s
        .strip_prefix("x{")
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::parse(format!("expected `x{{i,...}}`, got `{s}`")))?;
    let mut seen = std::collections::BTreeSet::new();
    let mut d = 0i64;
    for part in inner.split(',') {
        let i: u32 = part
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad index `{part}`: {e}")))?;
        if i >= 62 {
            return Err(Error::parse("index too large"));
        }
        if !seen.insert(i) {
            return Err(Error::parse(format!("repeated index {i} in `{s}`")));
        }
        d += 1i64 << i;
    }
    Ok(d)
}
