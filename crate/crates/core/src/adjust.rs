//! The constructive self-injective adjustment: adjoin block variables for
//! transporter-free test pairs and iterate the tower.
//!
//! A presented ring is a free graded polynomial algebra over F2 on named
//! generators of positive degree, modulo homogeneous relators. Adjoining
//! blocks for the pairs (u_t, v_t) introduces variables b_{t,j} of degree
//! m + d_t - |u_{t,j}| and relators w_t = sum_j b_{t,j} u_{t,j}; the result
//! agrees with the input below degree m and gives every supplied pair a
//! block, which is re-verified by direct multiplication.

use crate::baer::{enumerate_bad_pairs, find_transporter, verify_block, TestPair};
use crate::engine::{mul, Element, PolyEngine, QuotientEngine, RingEngine};
use crate::error::Error;
use crate::Result;
use std::sync::Arc;

#[derive(Clone)]
pub struct PresentedRing {
    pub gens: Vec<(String, i64)>,
    /// relators as elements of the free polynomial engine
    pub relators: Vec<Element>,
    pub poly: Arc<PolyEngine>,
    pub engine: Arc<QuotientEngine>,
    pub dmax: i64,
    batch: u32,
}

impl PresentedRing {
    pub fn new(gens: Vec<(String, i64)>, relators: Vec<Element>, dmax: i64) -> Result<Self> {
        let poly = PolyEngine::new(gens.clone(), dmax)?;
        let engine = QuotientEngine::new(poly.clone() as Arc<dyn RingEngine>, relators.clone())?;
        Ok(PresentedRing {
            gens,
            relators,
            poly,
            engine,
            dmax,
            batch: 0,
        })
    }

    /// Build from textual relators like `x*y` or `x^2+y^2`.
    pub fn from_presentation(
        gens: Vec<(String, i64)>,
        relator_exprs: &[String],
        dmax: i64,
    ) -> Result<Self> {
        let poly = PolyEngine::new(gens.clone(), dmax)?;
        let relators: Vec<Element> = relator_exprs
            .iter()
            .map(|s| crate::engine::parse_element(poly.as_ref(), s))
            .collect::<Result<_>>()?;
        Self::new(gens, relators, dmax)
    }

    pub fn hilbert(&self, up_to: i64) -> Result<Vec<usize>> {
        crate::engine::hilbert(self.engine.as_ref(), up_to.min(self.dmax))
    }

    /// Map an element of this ring into an extension whose generator list
    /// starts with this ring's generators.
    fn embed_into(&self, bigger: &PresentedRing, a: &Element) -> Result<Element> {
        if a.degree < 0 {
            return Ok(Element::zero(a.degree));
        }
        let lifted = self.engine.lift(a);
        let mut out = Element::zero(a.degree);
        for &i in &lifted.support {
            let expo = self.poly.expo_at(a.degree, i);
            let mut padded = expo.clone();
            padded.resize(bigger.gens.len(), 0);
            let (d, idx) = bigger
                .poly
                .expo_index(&padded)
                .ok_or(Error::BoundExceeded {
                    degree: a.degree,
                    dmax: bigger.dmax,
                })?;
            out = out.add(&bigger.engine.reduce(&Element::basis(d, idx)))?;
        }
        Ok(out)
    }

    /// The retraction onto this ring from an extension built by
    /// `adjoin_blocks`: all added variables map to zero.
    fn retract_from(&self, bigger: &PresentedRing, a: &Element) -> Result<Element> {
        if a.degree < 0 || a.degree > self.dmax {
            return Ok(Element::zero(a.degree));
        }
        let lifted = bigger.engine.lift(a);
        let mut out = Element::zero(a.degree);
        for &i in &lifted.support {
            let expo = bigger.poly.expo_at(a.degree, i);
            if expo[self.gens.len()..].iter().any(|&e| e > 0) {
                continue;
            }
            let own: Vec<u32> = expo[..self.gens.len()].to_vec();
            let (d, idx) = self.poly.expo_index(&own).ok_or({
                Error::BoundExceeded {
                    degree: a.degree,
                    dmax: self.dmax,
                }
            })?;
            out = out.add(&self.engine.reduce(&Element::basis(d, idx)))?;
        }
        Ok(out)
    }
}

#[derive(Clone)]
pub struct AdjoinReport {
    pub ring: PresentedRing,
    pub new_generators: Vec<(String, i64)>,
    /// one verified block per supplied pair, in the new engine
    pub blocks: Vec<Vec<Element>>,
    /// dimensions agree with the input strictly below this degree
    pub agreement_below: i64,
}

/// Adjoin block variables for transporter-free pairs. `m` is the positive
/// agreement threshold: the new generators have degree m + d_t - |u_{t,j}|
/// where d_t is the largest entry degree of pair t.
pub fn adjoin_blocks(
    ring: &PresentedRing,
    pairs: &[TestPair],
    m: i64,
) -> Result<AdjoinReport> {
    if m <= 0 {
        return Err(Error::pre("the agreement threshold m must be positive"));
    }
    if pairs.is_empty() {
        return Ok(AdjoinReport {
            ring: ring.clone(),
            new_generators: Vec::new(),
            blocks: Vec::new(),
            agreement_below: ring.dmax + 1,
        });
    }
    for pair in pairs {
        if pair.is_empty() {
            return Err(Error::pre("empty test pair"));
        }
        if find_transporter(ring.engine.as_ref(), pair)?.is_some() {
            return Err(Error::pre(
                "a supplied pair has a transporter; only transporter-free pairs qualify",
            ));
        }
    }
    let batch = ring.batch + 1;
    let mut new_gens: Vec<(String, i64)> = Vec::new();
    let mut needed = ring.dmax;
    for (t, pair) in pairs.iter().enumerate() {
        let d_t = pair.us.iter().map(|u| u.degree).max().unwrap();
        for (j, u) in pair.us.iter().enumerate() {
            let deg = m + d_t - u.degree;
            debug_assert!(deg >= m);
            new_gens.push((format!("b{batch}_{t}_{j}"), deg));
        }
        // the relator w_t lives in degree m + d_t and the block pairing
        // b_t.v_t in degree m + d_t + max(0, d); the bound must cover both
        needed = needed.max(m + d_t + pair.degree.max(0));
    }

    let dmax = needed;
    let mut gens = ring.gens.clone();
    gens.extend(new_gens.iter().cloned());
    let poly = PolyEngine::new(gens.clone(), dmax)?;

    // translate the old relators
    let mut relators: Vec<Element> = Vec::new();
    for r in &ring.relators {
        let mut out = Element::zero(r.degree);
        for &i in &r.support {
            let mut expo = ring.poly.expo_at(r.degree, i).clone();
            expo.resize(gens.len(), 0);
            let (d, idx) = poly.expo_index(&expo).expect("old relator fits the new bound");
            out = out.add(&Element::basis(d, idx))?;
        }
        relators.push(out);
    }

    // w_t = sum_j b_{t,j} u_{t,j}, assembled in the free algebra
    let mut gi = ring.gens.len();
    for pair in pairs {
        let d_t = pair.us.iter().map(|u| u.degree).max().unwrap();
        let mut w = Element::zero(m + d_t);
        for u in &pair.us {
            let mut b_expo = vec![0u32; gens.len()];
            b_expo[gi] = 1;
            let (bd, bidx) = poly.expo_index(&b_expo).expect("block variable in bound");
            let b = Element::basis(bd, bidx);
            // lift u from the old quotient to the free algebra on all gens
            let lifted = ring.engine.lift(u);
            let mut u_poly = Element::zero(u.degree);
            for &i in &lifted.support {
                let mut expo = ring.poly.expo_at(u.degree, i).clone();
                expo.resize(gens.len(), 0);
                let (d, idx) = poly.expo_index(&expo).expect("entry fits the new bound");
                u_poly = u_poly.add(&Element::basis(d, idx))?;
            }
            w = w.add(&mul(poly.as_ref(), &b, &u_poly)?)?;
            gi += 1;
        }
        relators.push(w);
    }

    let engine = QuotientEngine::new(poly.clone() as Arc<dyn RingEngine>, relators.clone())?;
    let new_ring = PresentedRing {
        gens,
        relators,
        poly,
        engine,
        dmax,
        batch,
    };

    // (b) dimensions agree strictly below m
    for k in 0..m.min(ring.dmax + 1) {
        let (old, new) = (ring.engine.dim(k), new_ring.engine.dim(k));
        if old != new {
            return Err(Error::invalid(format!(
                "agreement failure at degree {k}: {old} vs {new}"
            )));
        }
    }

    // (c) each pair acquires a block, re-verified by direct multiplication
    let mut blocks = Vec::new();
    let mut gi = ring.gens.len();
    for pair in pairs {
        let embedded = TestPair::new(
            pair.us
                .iter()
                .map(|u| ring.embed_into(&new_ring, u))
                .collect::<Result<_>>()?,
            pair.vs
                .iter()
                .map(|v| ring.embed_into(&new_ring, v))
                .collect::<Result<_>>()?,
            pair.degree,
        )?;
        let block: Vec<Element> = (0..pair.len())
            .map(|j| {
                let g = new_ring.engine.generator(gi + j);
                debug_assert!(!g.is_zero());
                g
            })
            .collect();
        gi += pair.len();
        if !verify_block(new_ring.engine.as_ref(), &embedded, &block)? {
            return Err(Error::invalid(
                "adjoined variables failed the block verification",
            ));
        }
        blocks.push(block);
    }

    let new_generators = new_ring.gens[ring.gens.len()..].to_vec();
    Ok(AdjoinReport {
        ring: new_ring,
        new_generators,
        blocks,
        agreement_below: m,
    })
}

/// Check that sending the adjoined variables to zero is a ring map that
/// splits the inclusion, degree by degree within the old bound.
pub fn verify_retraction(old: &PresentedRing, new: &PresentedRing, pair_cap: i64) -> Result<()> {
    // retraction of the inclusion is the identity
    for d in 0..=old.dmax.min(new.dmax) {
        for i in 0..old.engine.dim(d) {
            let a = Element::basis(d, i);
            let image = old.embed_into(new, &a)?;
            let back = old.retract_from(new, &image)?;
            if back != a {
                return Err(Error::invalid(format!(
                    "retraction fails to split the inclusion at degree {d}"
                )));
            }
        }
    }
    // multiplicativity on basis pairs
    let cap = pair_cap.min(old.dmax);
    for d1 in 0..=cap {
        for d2 in d1..=cap - d1 {
            for i in 0..new.engine.dim(d1) {
                for j in 0..new.engine.dim(d2) {
                    let a = Element::basis(d1, i);
                    let b = Element::basis(d2, j);
                    let prod = mul(new.engine.as_ref(), &a, &b)?;
                    let lhs = old.retract_from(new, &prod)?;
                    let rhs = mul(
                        old.engine.as_ref(),
                        &old.retract_from(new, &a)?,
                        &old.retract_from(new, &b)?,
                    )?;
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "retraction is not multiplicative at ({d1}, {d2})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone)]
pub struct StageInfo {
    pub weight_handled: u64,
    pub pairs_adjoined: usize,
    pub agreement_below: i64,
    pub hilbert: Vec<usize>,
    pub sweep_bound: i64,
}

pub struct StepOutcome {
    pub ring: PresentedRing,
    pub info: StageInfo,
}

/// One tower step: enumerate the nondegenerate bad pairs of weight at most
/// k (bad meaning transporter-free and blockless up to k + m + slack) and
/// adjoin blocks for them with agreement threshold k + m.
pub fn adjust_step(ring: &PresentedRing, k: u64, m: i64, slack: i64) -> Result<StepOutcome> {
    let sweep = (k as i64 + m + slack).min(ring.dmax);
    let bad = enumerate_bad_pairs(ring.engine.as_ref(), k, sweep)?;
    let report = adjoin_blocks(ring, &bad, k as i64 + m)?;
    let hilbert = report.ring.hilbert(report.ring.dmax.min(ring.dmax))?;
    Ok(StepOutcome {
        info: StageInfo {
            weight_handled: k,
            pairs_adjoined: bad.len(),
            agreement_below: report.agreement_below,
            hilbert,
            sweep_bound: sweep,
        },
        ring: report.ring,
    })
}

pub struct TowerReport {
    pub stages: Vec<StageInfo>,
    pub rings: Vec<PresentedRing>,
}

/// The finite tower R'(w0) <= R'(w0+1) <= ... for `steps` steps; stage j
/// handles all bad pairs of weight at most w0 + j. The colimit itself is
/// never materialized: the report records per-stage Hilbert data and the
/// agreement thresholds, which identify the stabilized degrees.
pub fn adjust_tower(
    ring: &PresentedRing,
    steps: u32,
    m: i64,
    start_weight: u64,
    slack: i64,
) -> Result<TowerReport> {
    let mut rings = vec![ring.clone()];
    let mut stages = Vec::new();
    for j in 0..steps {
        let k = start_weight + j as u64;
        let cur = rings.last().unwrap();
        let out = adjust_step(cur, k, m, slack)?;
        stages.push(out.info);
        rings.push(out.ring);
    }
    Ok(TowerReport { stages, rings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baer::{classify, Classification};
    use crate::engine::parse_element;

    fn xy_ring(dmax: i64) -> PresentedRing {
        PresentedRing::from_presentation(
            vec![("x".into(), 1), ("y".into(), 1)],
            &["x*y".into()],
            dmax,
        )
        .unwrap()
    }

    fn xy_bad_pair(r: &PresentedRing) -> TestPair {
        let x = parse_element(r.engine.as_ref(), "x").unwrap();
        let y = parse_element(r.engine.as_ref(), "y").unwrap();
        TestPair::new(
            vec![x.clone(), y.clone()],
            vec![x, Element::zero(1)],
            0,
        )
        .unwrap()
    }

    #[test]
    fn adjoin_nothing_is_identity() {
        let r = xy_ring(10);
        let report = adjoin_blocks(&r, &[], 2).unwrap();
        assert_eq!(report.ring.gens.len(), 2);
        assert!(report.blocks.is_empty());
    }

    #[test]
    fn adjoin_rejects_transported_pairs() {
        let r = xy_ring(10);
        let x = parse_element(r.engine.as_ref(), "x").unwrap();
        let pair = TestPair::new(vec![x.clone()], vec![x], 0).unwrap();
        assert!(adjoin_blocks(&r, &[pair], 2).is_err());
    }

    #[test]
    fn block_variable_degrees() {
        // |u| = 3, d_t = 3, m = 5 gives |b| = 5
        let r = PresentedRing::from_presentation(
            vec![("x".into(), 1), ("y".into(), 3)],
            &["x^2*y".into()],
            14,
        )
        .unwrap();
        let y = parse_element(r.engine.as_ref(), "y").unwrap();
        let v = parse_element(r.engine.as_ref(), "x^5").unwrap();
        let pair = TestPair::new(vec![y], vec![v], 2).unwrap();
        assert!(find_transporter(r.engine.as_ref(), &pair).unwrap().is_none());
        let report = adjoin_blocks(&r, &[pair], 5).unwrap();
        assert_eq!(report.new_generators[0].1, 5);
    }

    #[test]
    fn xy_adjoin_block_works() {
        let r = xy_ring(12);
        let pair = xy_bad_pair(&r);
        let report = adjoin_blocks(&r, std::slice::from_ref(&pair), 2).unwrap();
        // two block variables of degree 2 + 1 - 1 = 2
        assert_eq!(
            report.new_generators.iter().map(|g| g.1).collect::<Vec<_>>(),
            vec![2, 2]
        );
        // agreement below 2
        for k in 0..2 {
            assert_eq!(report.ring.engine.dim(k), r.engine.dim(k));
        }
        // the old bad pair is now blocked
        let embedded = TestPair::new(
            pair.us
                .iter()
                .map(|u| r.embed_into(&report.ring, u).unwrap())
                .collect(),
            pair.vs
                .iter()
                .map(|v| r.embed_into(&report.ring, v).unwrap())
                .collect(),
            0,
        )
        .unwrap();
        match classify(report.ring.engine.as_ref(), &embedded, 10).unwrap() {
            Classification::GoodBlock { .. } => {}
            other => panic!("expected a block after adjoining, got {other:?}"),
        }
        verify_retraction(&r, &report.ring, 8).unwrap();
    }

    #[test]
    fn tower_two_stages() {
        let r = xy_ring(12);
        let tower = adjust_tower(&r, 2, 2, 6, 4).unwrap();
        assert_eq!(tower.stages.len(), 2);
        assert!(tower.stages[0].pairs_adjoined > 0);
        // stage agreement: dims below k + m agree with the previous stage
        for (j, stage) in tower.stages.iter().enumerate() {
            let prev = &tower.rings[j];
            let next = &tower.rings[j + 1];
            for d in 0..stage.agreement_below.min(prev.dmax + 1) {
                assert_eq!(
                    prev.engine.dim(d),
                    next.engine.dim(d),
                    "stage {j} degree {d}"
                );
            }
        }
        // stage 1's bad pairs of weight <= 6 acquired blocks in stage 2
        let bad0 = enumerate_bad_pairs(tower.rings[0].engine.as_ref(), 6, 12).unwrap();
        for pair in &bad0 {
            let embedded = TestPair::new(
                pair.us
                    .iter()
                    .map(|u| tower.rings[0].embed_into(&tower.rings[1], u).unwrap())
                    .collect(),
                pair.vs
                    .iter()
                    .map(|v| tower.rings[0].embed_into(&tower.rings[1], v).unwrap())
                    .collect(),
                pair.degree,
            )
            .unwrap();
            let sweep = tower.rings[1].dmax;
            if let Classification::BadUpTo(_) = classify(tower.rings[1].engine.as_ref(), &embedded, sweep).unwrap() { panic!("pair stayed bad after its stage") }
        }
    }
}
