//! Test pairs, blocks and transporters: the computational heart of the
//! finite Baer criterion.
//!
//! A test pair (u, v) of degree d has homogeneous entries with
//! |v_i| = |u_i| + d. A transporter is m in R_d with v_i = m u_i for all i;
//! a block is a vector b with b.u = 0 and b.v != 0. Transporter search is a
//! single linear solve; block search sweeps candidate degrees up to a bound,
//! so a negative answer is always reported as `BadUpTo(bound)`, never as a
//! proof of badness.

use crate::engine::{
    check_degree, mul, unit, Element, ProductSpace, RingEngine,
};
use crate::error::Error;
use crate::gf2::{left_kernel, solve_left, Mat, Row, Subspace};
use crate::Result;

/// Safety cap for the exponential bad-pair enumeration.
pub const MAX_WEIGHT_CAP: u64 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestPair {
    pub us: Vec<Element>,
    pub vs: Vec<Element>,
    pub degree: i64,
}

impl TestPair {
    pub fn new(us: Vec<Element>, vs: Vec<Element>, degree: i64) -> Result<TestPair> {
        if us.len() != vs.len() {
            return Err(Error::pre("u and v must have the same length"));
        }
        for (u, v) in us.iter().zip(&vs) {
            if v.degree != u.degree + degree {
                return Err(Error::DegreeMismatch {
                    expected: u.degree + degree,
                    got: v.degree,
                });
            }
        }
        Ok(TestPair { us, vs, degree })
    }

    pub fn len(&self) -> usize {
        self.us.len()
    }

    pub fn is_empty(&self) -> bool {
        self.us.is_empty()
    }

    /// Weight: sum of 1 + |u_i|_+ + |v_i|_+ with |x|_+ = max(0, |x|).
    pub fn weight(&self) -> u64 {
        self.us
            .iter()
            .zip(&self.vs)
            .map(|(u, v)| 1 + u.degree.max(0) as u64 + v.degree.max(0) as u64)
            .sum()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.us.iter().all(|u| !u.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    GoodTransporter(Element),
    GoodBlock { degree: i64, block: Vec<Element> },
    /// no transporter (exact) and no block in any sweep degree <= bound
    BadUpTo(i64),
}

/// Outcome of zero-stripping a possibly degenerate pair.
#[derive(Clone, Debug)]
pub enum Reduction {
    /// some u_i = 0 with v_i != 0: the standard basis vector is a block
    ImmediateBlock { degree: i64, block: Vec<Element> },
    /// zeros removed; blocks and transporters lift by reinserting zeros at
    /// the recorded positions
    Reduced { pair: TestPair, kept: Vec<usize> },
}

pub fn reduce_nondegenerate(pair: &TestPair) -> Reduction {
    for (i, (u, v)) in pair.us.iter().zip(&pair.vs).enumerate() {
        if u.is_zero() && !v.is_zero() {
            let e = u.degree;
            let block = pair
                .us
                .iter()
                .enumerate()
                .map(|(j, uj)| {
                    if j == i {
                        Element::basis(0, 0) // the unit
                    } else {
                        Element::zero(e - uj.degree)
                    }
                })
                .collect();
            return Reduction::ImmediateBlock { degree: e, block };
        }
    }
    let kept: Vec<usize> = (0..pair.len())
        .filter(|&i| !pair.us[i].is_zero())
        .collect();
    let pair = TestPair {
        us: kept.iter().map(|&i| pair.us[i].clone()).collect(),
        vs: kept.iter().map(|&i| pair.vs[i].clone()).collect(),
        degree: pair.degree,
    };
    Reduction::Reduced { pair, kept }
}

/// Search state shared across many pairs with the same u and degree.
/// Kernel slices of the block sweep are computed once per sweep degree.
pub struct PairContext<'a> {
    engine: &'a dyn RingEngine,
    pub us: Vec<Element>,
    pub degree: i64,
    transporter_op: Option<Mat>,
    target_space: Option<ProductSpace>,
    kernels: Vec<Option<SweepDegree>>,
    sweep_max: i64,
}

struct SweepDegree {
    space: ProductSpace,
    kernel: Subspace,
    tables: Option<Vec<Vec<Vec<Row>>>>,
}

impl<'a> PairContext<'a> {
    pub fn new(
        engine: &'a dyn RingEngine,
        us: Vec<Element>,
        degree: i64,
        sweep_max: i64,
    ) -> Result<Self> {
        let sweep_max = sweep_max.min(engine.dmax() - degree.max(0));
        for u in &us {
            check_degree(engine, u.degree + degree)?;
        }
        let (transporter_op, target_space) = if degree >= 0 && degree <= engine.dmax() {
            let space = ProductSpace::new(engine, us.iter().map(|u| u.degree + degree).collect())?;
            let mut m = Mat::new(space.total);
            for t in 0..engine.dim(degree) {
                let cand = Element::basis(degree, t);
                let parts: Vec<Element> = us
                    .iter()
                    .map(|u| mul(engine, &cand, u))
                    .collect::<Result<_>>()?;
                m.push_row(space.pack(&parts));
            }
            (Some(m), Some(space))
        } else {
            (None, None)
        };
        let kernels = (0..(sweep_max + 1).max(0)).map(|_| None).collect();
        Ok(PairContext {
            engine,
            us,
            degree,
            transporter_op,
            target_space,
            kernels,
            sweep_max,
        })
    }

    /// One transporter in canonical coordinates, or None (exact).
    pub fn find_transporter(&self, vs: &[Element]) -> Result<Option<Element>> {
        let d = self.degree;
        let all_zero = vs.iter().all(|v| v.is_zero());
        let (Some(m), Some(space)) = (&self.transporter_op, &self.target_space) else {
            // R_d = 0 outside the window of nonnegative degrees
            return Ok(all_zero.then(|| Element::zero(d)));
        };
        if self.engine.dim(d) == 0 {
            return Ok(all_zero.then(|| Element::zero(d)));
        }
        let target = space.pack(vs);
        match solve_left(m, &target) {
            None => Ok(None),
            Some(x) => {
                let t = Element::from_row(d, &x);
                // soundness: re-verify by multiplication
                for (u, v) in self.us.iter().zip(vs) {
                    if &mul(self.engine, &t, u)? != v {
                        return Err(Error::invalid("transporter verification failed"));
                    }
                }
                Ok(Some(t))
            }
        }
    }

    fn sweep_at(&mut self, e: i64) -> Result<&SweepDegree> {
        let idx = e as usize;
        if self.kernels[idx].is_none() {
            let space = ProductSpace::new(
                self.engine,
                self.us.iter().map(|u| e - u.degree).collect(),
            )?;
            let dim_e = self.engine.dim(e);
            let mut m = Mat::new(dim_e);
            for u in &self.us {
                let cd = e - u.degree;
                if cd < 0 {
                    continue;
                }
                for b in 0..self.engine.dim(cd) {
                    let p = mul(self.engine, &Element::basis(cd, b), u)?;
                    m.push_row(p.to_row(dim_e));
                }
            }
            debug_assert_eq!(m.nrows(), space.total);
            let kernel = left_kernel(&m);
            self.kernels[idx] = Some(SweepDegree {
                space,
                kernel,
                tables: None,
            });
        }
        Ok(self.kernels[idx].as_ref().unwrap())
    }

    /// Basis product tables for the pairing against v entries at sweep
    /// degree e: tables[i][t][j] = basis(e - |u_i|, t) * basis(|u_i| + d, j)
    /// in coordinates of R_{e + d}.
    fn tables_at(&mut self, e: i64) -> Result<&SweepDegree> {
        self.sweep_at(e)?;
        let d = self.degree;
        let idx = e as usize;
        if self.kernels[idx].as_ref().unwrap().tables.is_none() {
            let mut tables = Vec::with_capacity(self.us.len());
            for u in &self.us {
                let (cd, vd) = (e - u.degree, u.degree + d);
                let rows = if cd < 0 {
                    Vec::new()
                } else if vd < 0 {
                    // the v entry is a zero of negative degree: the pairing
                    // rows exist but are identically zero
                    (0..self.engine.dim(cd)).map(|_| Vec::new()).collect()
                } else {
                    (0..self.engine.dim(cd))
                        .map(|t| {
                            (0..self.engine.dim(vd))
                                .map(|j| {
                                    self.engine
                                        .mul_basis(cd, t, vd, j)
                                        .to_row(self.engine.dim(e + d))
                                })
                                .collect::<Vec<Row>>()
                        })
                        .collect()
                };
                tables.push(rows);
            }
            self.kernels[idx].as_mut().unwrap().tables = Some(tables);
        }
        Ok(self.kernels[idx].as_ref().unwrap())
    }

    /// First block in the sweep order, or None up to the sweep bound.
    pub fn find_block(&mut self, vs: &[Element]) -> Result<Option<(i64, Vec<Element>)>> {
        let d = self.degree;
        for e in 0..=self.sweep_max {
            let vd = e + d;
            if vd < 0 || vd > self.engine.dmax() || self.engine.dim(vd) == 0 {
                continue;
            }
            if self.sweep_at(e)?.kernel.dim() == 0 {
                continue;
            }
            let engine = self.engine;
            let sweep = self.tables_at(e)?;
            let tables = sweep.tables.as_ref().unwrap();
            // the pairing operator b |-> b.v, assembled from the tables
            let target_dim = engine.dim(vd);
            let mut op = Mat::new(target_dim);
            for (i, v) in vs.iter().enumerate() {
                for t_rows in &tables[i] {
                    let mut row = Row::zero(target_dim);
                    for &j in &v.support {
                        row.xor_in(&t_rows[j]);
                    }
                    op.push_row(row);
                }
            }
            debug_assert_eq!(op.nrows(), sweep.space.total);
            for row in sweep.kernel.rows() {
                let image = crate::gf2::apply(&op, row);
                if !image.is_zero() {
                    let parts = sweep.space.unpack(row);
                    // soundness: re-verify b.u = 0 and b.v != 0 directly
                    let mut bu = Element::zero(e);
                    let mut bv = Element::zero(vd);
                    for ((b, u), v) in parts.iter().zip(&self.us).zip(vs) {
                        bu = bu.add(&mul(engine, b, u)?)?;
                        bv = bv.add(&mul(engine, b, v)?)?;
                    }
                    if !bu.is_zero() || bv.is_zero() {
                        return Err(Error::invalid("block verification failed"));
                    }
                    return Ok(Some((e, parts)));
                }
            }
        }
        Ok(None)
    }

    pub fn classify(&mut self, vs: &[Element]) -> Result<Classification> {
        if let Some(t) = self.find_transporter(vs)? {
            return Ok(Classification::GoodTransporter(t));
        }
        if let Some((e, b)) = self.find_block(vs)? {
            return Ok(Classification::GoodBlock { degree: e, block: b });
        }
        Ok(Classification::BadUpTo(self.sweep_max))
    }
}

/// One transporter for the pair, or None (exact at the pair's degree).
pub fn find_transporter(engine: &dyn RingEngine, pair: &TestPair) -> Result<Option<Element>> {
    let ctx = PairContext::new(engine, pair.us.clone(), pair.degree, 0)?;
    ctx.find_transporter(&pair.vs)
}

/// First block with b.u = 0 and b.v != 0 in sweep degrees up to `sweep_max`.
pub fn find_block(
    engine: &dyn RingEngine,
    pair: &TestPair,
    sweep_max: i64,
) -> Result<Option<(i64, Vec<Element>)>> {
    let mut ctx = PairContext::new(engine, pair.us.clone(), pair.degree, sweep_max)?;
    ctx.find_block(&pair.vs)
}

/// Transporter search first, then the block sweep.
pub fn classify(
    engine: &dyn RingEngine,
    pair: &TestPair,
    sweep_max: i64,
) -> Result<Classification> {
    let mut ctx = PairContext::new(engine, pair.us.clone(), pair.degree, sweep_max)?;
    ctx.classify(&pair.vs)
}

/// All nonzero homogeneous elements of a degree, in mask order.
fn nonzero_elements(engine: &dyn RingEngine, d: i64) -> Vec<Element> {
    if d < 0 || d > engine.dmax() {
        return Vec::new();
    }
    let dim = engine.dim(d);
    if dim == 0 || dim > 20 {
        assert!(dim <= 20, "degree {d} has {dim} basis vectors; enumeration refused");
        return Vec::new();
    }
    (1..(1usize << dim))
        .map(|mask| {
            Element::from_support(d, (0..dim).filter(|b| (mask >> b) & 1 == 1).collect())
        })
        .collect()
}

fn all_elements(engine: &dyn RingEngine, d: i64) -> Vec<Element> {
    let mut out = vec![Element::zero(d)];
    out.extend(nonzero_elements(engine, d));
    out
}

/// Every nondegenerate test pair of weight at most `weight_cap` that is
/// neither transported nor blocked within `sweep_max`, canonicalized up to
/// simultaneous entry permutation.
pub fn enumerate_bad_pairs(
    engine: &dyn RingEngine,
    weight_cap: u64,
    sweep_max: i64,
) -> Result<Vec<TestPair>> {
    if weight_cap > MAX_WEIGHT_CAP {
        return Err(Error::WeightCap {
            requested: weight_cap,
            cap: MAX_WEIGHT_CAP,
        });
    }
    let mut bad = Vec::new();
    if weight_cap == 0 {
        return Ok(bad);
    }
    let kmax = (weight_cap - 1).min(engine.dmax() as u64) as i64;
    // u candidates per degree, in canonical order
    let u_cands: Vec<(i64, Vec<Element>)> = (0..=kmax)
        .map(|k| (k, nonzero_elements(engine, k)))
        .collect();

    for d in -kmax..=(weight_cap as i64) {
        // entries cost at least 1 + k + max(0, k + d)
        let feasible = |k: i64| 1 + k as u64 + (k + d).max(0) as u64 <= weight_cap;
        if !(0..=kmax).any(feasible) {
            continue;
        }
        let mut u_tuple: Vec<Element> = Vec::new();
        enumerate_u_tuples(
            engine,
            &u_cands,
            d,
            weight_cap,
            sweep_max,
            (0, 0),
            &mut u_tuple,
            &mut bad,
        )?;
    }
    Ok(bad)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_u_tuples(
    engine: &dyn RingEngine,
    u_cands: &[(i64, Vec<Element>)],
    d: i64,
    weight_cap: u64,
    sweep_max: i64,
    start: (usize, usize),
    u_tuple: &mut Vec<Element>,
    bad: &mut Vec<TestPair>,
) -> Result<()> {
    // classify every v-assignment for the current nonempty u-tuple
    if !u_tuple.is_empty() {
        let used: u64 = u_tuple
            .iter()
            .map(|u| 1 + u.degree as u64 + (u.degree + d).max(0) as u64)
            .sum();
        if used <= weight_cap {
            let mut ctx = PairContext::new(engine, u_tuple.clone(), d, sweep_max)?;
            let mut vs: Vec<Element> = Vec::new();
            enumerate_v_assignments(engine, &mut ctx, d, 0, &mut vs, bad)?;
        }
    }
    // extend the u-tuple canonically
    let min_used: u64 = u_tuple
        .iter()
        .map(|u| 1 + u.degree as u64 + (u.degree + d).max(0) as u64)
        .sum();
    for ki in start.0..u_cands.len() {
        let (k, cands) = &u_cands[ki];
        let entry_cost = 1 + *k as u64 + (*k + d).max(0) as u64;
        if min_used + entry_cost > weight_cap {
            continue;
        }
        let from = if ki == start.0 { start.1 } else { 0 };
        for (ui, cand) in cands.iter().enumerate().skip(from) {
            u_tuple.push(cand.clone());
            enumerate_u_tuples(
                engine,
                u_cands,
                d,
                weight_cap,
                sweep_max,
                (ki, ui),
                u_tuple,
                bad,
            )?;
            u_tuple.pop();
        }
    }
    Ok(())
}

fn enumerate_v_assignments(
    engine: &dyn RingEngine,
    ctx: &mut PairContext,
    d: i64,
    pos: usize,
    vs: &mut Vec<Element>,
    bad: &mut Vec<TestPair>,
) -> Result<()> {
    if pos == ctx.us.len() {
        if vs.iter().all(|v| v.is_zero()) {
            return Ok(()); // zero is a transporter
        }
        if let Classification::BadUpTo(_) = ctx.classify(vs)? {
            bad.push(TestPair {
                us: ctx.us.clone(),
                vs: vs.clone(),
                degree: d,
            });
        }
        return Ok(());
    }
    let vd = ctx.us[pos].degree + d;
    for v in all_elements(engine, vd) {
        // canonical: entries with equal u must carry nondecreasing v
        if pos > 0 && ctx.us[pos] == ctx.us[pos - 1] && v.support < vs[pos - 1].support {
            continue;
        }
        vs.push(v);
        enumerate_v_assignments(engine, ctx, d, pos + 1, vs, bad)?;
        vs.pop();
    }
    Ok(())
}

/// Brute-force transporter check over all of R_d, for cross-validation in
/// small degrees.
pub fn brute_force_transporter(
    engine: &dyn RingEngine,
    pair: &TestPair,
) -> Result<Option<Element>> {
    let d = pair.degree;
    if d < 0 || d > engine.dmax() || engine.dim(d) == 0 {
        return Ok(pair
            .vs
            .iter()
            .all(|v| v.is_zero())
            .then(|| Element::zero(d)));
    }
    let dim = engine.dim(d);
    assert!(dim <= 16, "brute force refused beyond 2^16 candidates");
    'cand: for mask in 0..(1usize << dim) {
        let m = Element::from_support(d, (0..dim).filter(|b| (mask >> b) & 1 == 1).collect());
        for (u, v) in pair.us.iter().zip(&pair.vs) {
            if &mul(engine, &m, u)? != v {
                continue 'cand;
            }
        }
        return Ok(Some(m));
    }
    Ok(None)
}

/// Check b.u = 0 and b.v != 0 by direct multiplication.
pub fn verify_block(
    engine: &dyn RingEngine,
    pair: &TestPair,
    block: &[Element],
) -> Result<bool> {
    if block.len() != pair.len() {
        return Ok(false);
    }
    let e = block
        .iter()
        .zip(&pair.us)
        .map(|(b, u)| b.degree + u.degree)
        .max()
        .ok_or_else(|| Error::pre("empty pair"))?;
    let mut bu = Element::zero(e);
    let mut bv = Element::zero(e + pair.degree);
    for (b, (u, v)) in block.iter().zip(pair.us.iter().zip(&pair.vs)) {
        bu = bu.add(&mul(engine, b, u)?)?;
        bv = bv.add(&mul(engine, b, v)?)?;
    }
    Ok(bu.is_zero() && !bv.is_zero())
}

/// The unit as a convenience for block constructions.
pub fn ring_unit(engine: &dyn RingEngine) -> Element {
    unit(engine)
}
