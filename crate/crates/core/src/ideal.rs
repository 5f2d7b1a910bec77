//! Degreewise ideal arithmetic: spans, annihilators, double-annihilator
//! reports, sums, intersections, conductors, socles, duality pairings,
//! incoherence probes and cube syzygy stability.
//!
//! Every result is a family of exact subspaces indexed by degree, certified
//! only up to the bound recorded in the result. Annihilator slices of a
//! sliced ideal use all pairings that fit under the engine bound, so they
//! contain the true annihilator slices; equality verdicts are exact, while
//! discrepancy witnesses are relative to the recorded bound.

use crate::engine::{
    check_degree, mul, mul_operator, Element, ProductSpace, RingEngine,
};
use crate::error::Error;
use crate::gf2::{left_kernel, Mat, Row, Subspace};
use crate::zoo::cube::CubeEngine;
use crate::Result;

/// Degreewise row-reduced slices of an ideal, complete for degrees up to
/// `bound`, plus the generator list when one exists.
#[derive(Clone, Debug)]
pub struct IdealSlice {
    pub gens: Vec<Element>,
    pub slices: Vec<Subspace>,
    pub bound: i64,
}

impl IdealSlice {
    pub fn dim(&self, d: i64) -> usize {
        if d < 0 || d > self.bound {
            0
        } else {
            self.slices[d as usize].dim()
        }
    }

    pub fn slice(&self, d: i64) -> &Subspace {
        &self.slices[d as usize]
    }
}

fn max_gen_degree(gens: &[Element]) -> i64 {
    gens.iter().map(|g| g.degree).max().unwrap_or(0)
}

/// The ideal generated by homogeneous elements, slicewise: the degree-d
/// piece is the span of all basis-monomial multiples of the generators.
pub fn ideal_span(engine: &dyn RingEngine, gens: &[Element], bound: i64) -> Result<IdealSlice> {
    check_degree(engine, bound)?;
    let mut slices = Vec::with_capacity((bound + 1) as usize);
    for d in 0..=bound {
        let dim = engine.dim(d);
        let mut rows = Vec::new();
        for g in gens {
            let md = d - g.degree;
            if md < 0 || g.is_zero() {
                continue;
            }
            for i in 0..engine.dim(md) {
                let m = Element::basis(md, i);
                rows.push(mul(engine, &m, g)?.to_row(dim));
            }
        }
        slices.push(Subspace::from_rows(dim, rows));
    }
    Ok(IdealSlice {
        gens: gens.to_vec(),
        slices,
        bound,
    })
}

/// The annihilator of a generator list: the degree-e slice is the
/// intersection of the kernels of multiplication by each generator.
/// Exact; requires bound + max generator degree <= engine bound.
pub fn ann(engine: &dyn RingEngine, gens: &[Element], bound: i64) -> Result<IdealSlice> {
    let gmax = max_gen_degree(gens);
    check_degree(engine, bound + gmax)?;
    let mut slices = Vec::with_capacity((bound + 1) as usize);
    for e in 0..=bound {
        let dim = engine.dim(e);
        let mut space = Subspace::full(dim);
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let op = mul_operator(engine, g, e)?;
            space = space.intersect(&left_kernel(&op));
        }
        slices.push(space);
    }
    Ok(IdealSlice {
        gens: gens.to_vec(),
        slices,
        bound,
    })
}

/// The annihilator of a sliced family: the degree-e slice kills every
/// slice of `k` whose pairing fits under the engine bound. It therefore
/// contains the annihilator of the full ideal; callers must treat members
/// as bound-relative.
pub fn ann_of_slices(engine: &dyn RingEngine, k: &IdealSlice, bound: i64) -> Result<IdealSlice> {
    check_degree(engine, bound)?;
    let mut slices = Vec::with_capacity((bound + 1) as usize);
    for e in 0..=bound {
        let dim = engine.dim(e);
        let mut space = Subspace::full(dim);
        let fmax = k.bound.min(engine.dmax() - e);
        for f in 0..=fmax {
            for row in k.slices[f as usize].rows() {
                let v = Element::from_row(f, row);
                let op = mul_operator(engine, &v, e)?;
                space = space.intersect(&left_kernel(&op));
                if space.dim() == 0 {
                    break;
                }
            }
            if space.dim() == 0 {
                break;
            }
        }
        slices.push(space);
    }
    Ok(IdealSlice {
        gens: Vec::new(),
        slices,
        bound,
    })
}

/// Degreewise sum.
pub fn ideal_sum(a: &IdealSlice, b: &IdealSlice) -> IdealSlice {
    let bound = a.bound.min(b.bound);
    let slices = (0..=bound)
        .map(|d| a.slices[d as usize].sum(&b.slices[d as usize]))
        .collect();
    let mut gens = a.gens.clone();
    gens.extend(b.gens.iter().cloned());
    IdealSlice { gens, slices, bound }
}

/// Degreewise intersection.
pub fn ideal_intersection(a: &IdealSlice, b: &IdealSlice) -> IdealSlice {
    let bound = a.bound.min(b.bound);
    let slices = (0..=bound)
        .map(|d| a.slices[d as usize].intersect(&b.slices[d as usize]))
        .collect();
    IdealSlice {
        gens: Vec::new(),
        slices,
        bound,
    }
}

/// The conductor (J : a) = { r | r a in J }, slicewise as a preimage.
pub fn conductor(
    engine: &dyn RingEngine,
    j: &IdealSlice,
    a: &Element,
    bound: i64,
) -> Result<IdealSlice> {
    let bound = bound.min(j.bound - a.degree).min(engine.dmax() - a.degree);
    let mut slices = Vec::new();
    for e in 0..=bound {
        if a.is_zero() {
            slices.push(Subspace::full(engine.dim(e)));
            continue;
        }
        let op = mul_operator(engine, a, e)?;
        slices.push(crate::gf2::preimage(&op, j.slice(e + a.degree)));
    }
    Ok(IdealSlice {
        gens: Vec::new(),
        slices,
        bound,
    })
}

// ---------------------------------------------------------------------------
// double annihilator report
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Discrepancy {
    pub degree: i64,
    pub witness: Element,
    pub ideal_dim: usize,
    pub dann_dim: usize,
    pub ideal_slice: Subspace,
    pub dann_slice: Subspace,
}

#[derive(Clone, Debug)]
pub struct DannReport {
    /// degrees 0..=compare_up_to agree
    pub equal: bool,
    pub first_discrepancy: Option<Discrepancy>,
    pub compare_up_to: i64,
    pub dmax: i64,
}

/// Compare the span of `gens` with the double annihilator, degree by
/// degree. The double annihilator is computed against every annihilator
/// slice that fits under the engine bound, so it contains the true double
/// annihilator: an `equal` verdict is exact on the compared window, while a
/// discrepancy witness is certified only relative to `dmax`.
pub fn dann_check(
    engine: &dyn RingEngine,
    gens: &[Element],
    compare_up_to: i64,
) -> Result<DannReport> {
    let dmax = engine.dmax();
    let gmax = max_gen_degree(gens);
    if compare_up_to > dmax {
        return Err(Error::BoundExceeded {
            degree: compare_up_to,
            dmax,
        });
    }
    let span = ideal_span(engine, gens, compare_up_to)?;
    let ann_bound = dmax - gmax;
    let a = ann(engine, gens, ann_bound)?;
    let a2 = ann_of_slices(engine, &a, compare_up_to)?;
    for e in 0..=compare_up_to {
        let (js, as2) = (span.slice(e), a2.slice(e));
        if js == as2 {
            continue;
        }
        // the span is always contained in the double annihilator; report
        // the first double-annihilator vector outside the span
        let witness_row = as2
            .rows()
            .iter()
            .find(|r| !js.contains(r))
            .expect("strictly larger slice has a row outside the span");
        return Ok(DannReport {
            equal: false,
            first_discrepancy: Some(Discrepancy {
                degree: e,
                witness: Element::from_row(e, witness_row),
                ideal_dim: js.dim(),
                dann_dim: as2.dim(),
                ideal_slice: js.clone(),
                dann_slice: as2.clone(),
            }),
            compare_up_to,
            dmax,
        });
    }
    Ok(DannReport {
        equal: true,
        first_discrepancy: None,
        compare_up_to,
        dmax,
    })
}

// ---------------------------------------------------------------------------
// socle and Poincare pairing
// ---------------------------------------------------------------------------

/// The socle: intersection of the kernels of multiplication by every
/// algebra generator (the annihilator of the maximal ideal). Constraints
/// beyond the engine bound cannot be imposed; slices above
/// dmax - max generator degree are bound-relative.
pub fn socle(engine: &dyn RingEngine, bound: i64) -> Result<IdealSlice> {
    check_degree(engine, bound)?;
    let gens: Vec<Element> = (0..engine.generators().len())
        .map(|i| engine.generator(i))
        .collect();
    let mut slices = Vec::new();
    for e in 0..=bound {
        let dim = engine.dim(e);
        let mut space = Subspace::full(dim);
        for g in &gens {
            if g.is_zero() || e + g.degree > engine.dmax() {
                continue;
            }
            let op = mul_operator(engine, g, e)?;
            space = space.intersect(&left_kernel(&op));
        }
        slices.push(space);
    }
    Ok(IdealSlice {
        gens: Vec::new(),
        slices,
        bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoincareReport {
    Pass {
        top: i64,
    },
    /// structured failure: which precondition or pairing broke
    Fail {
        top: Option<i64>,
        reason: String,
        degenerate_degree: Option<i64>,
    },
}

/// Check the Poincare duality pairings R_i x R_{top-i} -> R_top of a
/// finite graded algebra presented by an engine that vanishes above its
/// top degree within the bound.
pub fn poincare_check(engine: &dyn RingEngine) -> PoincareReport {
    let dmax = engine.dmax();
    let top = match (0..=dmax).rev().find(|&d| engine.dim(d) > 0) {
        Some(t) => t,
        None => {
            return PoincareReport::Fail {
                top: None,
                reason: "the ring is zero in every degree of the window".into(),
                degenerate_degree: None,
            }
        }
    };
    if engine.dim(0) != 1 {
        return PoincareReport::Fail {
            top: Some(top),
            reason: format!("dim R_0 = {} (need 1)", engine.dim(0)),
            degenerate_degree: None,
        };
    }
    if engine.dim(top) != 1 {
        return PoincareReport::Fail {
            top: Some(top),
            reason: format!("dim R_top = {} (need 1)", engine.dim(top)),
            degenerate_degree: None,
        };
    }
    for i in 0..=top {
        let (n1, n2) = (engine.dim(i), engine.dim(top - i));
        if n1 != n2 {
            return PoincareReport::Fail {
                top: Some(top),
                reason: format!("dim R_{i} = {n1} but dim R_{} = {n2}", top - i),
                degenerate_degree: Some(i),
            };
        }
        let mut pairing = Mat::new(n2);
        for a in 0..n1 {
            let mut row = Row::zero(n2);
            for b in 0..n2 {
                let p = engine.mul_basis(i, a, top - i, b);
                if !p.is_zero() {
                    row.set(b, true);
                }
            }
            pairing.push_row(row);
        }
        if pairing.rank() != n1 {
            return PoincareReport::Fail {
                top: Some(top),
                reason: format!("degenerate pairing between degrees {i} and {}", top - i),
                degenerate_degree: Some(i),
            };
        }
    }
    PoincareReport::Pass { top }
}

// ---------------------------------------------------------------------------
// incoherence probe
// ---------------------------------------------------------------------------

/// Wording attached to every probe report: the probe exhibits growth, it
/// does not prove incoherence.
pub const PROBE_LIMITATION: &str =
    "growth evidence up to the stated bound only; not a proof of incoherence";

#[derive(Clone, Debug)]
pub struct ProbeReport {
    /// (degree, dimension contributed, cumulative total)
    pub rows: Vec<(i64, usize, usize)>,
    pub bound: i64,
    pub zero_input: bool,
    pub limitation: &'static str,
}

/// Dimension growth of the image of ann(u) in m/m^2, degree by degree.
pub fn incoherence_probe(
    engine: &dyn RingEngine,
    u: &Element,
    bound: i64,
) -> Result<ProbeReport> {
    if u.is_zero() {
        return Ok(ProbeReport {
            rows: Vec::new(),
            bound,
            zero_input: true,
            limitation: PROBE_LIMITATION,
        });
    }
    let bound = bound.min(engine.dmax() - u.degree);
    let annu = ann(engine, std::slice::from_ref(u), bound)?;
    let mut rows = Vec::new();
    let mut cumulative = 0usize;
    for e in 1..=bound {
        let dim = engine.dim(e);
        // m^2 in degree e: span of products of positive-degree basis pairs
        let mut sq = Vec::new();
        for f in 1..e {
            for i in 0..engine.dim(f) {
                for j in 0..engine.dim(e - f) {
                    let p = engine.mul_basis(f, i, e - f, j);
                    sq.push(p.to_row(dim));
                }
            }
        }
        let msq = Subspace::from_rows(dim, sq);
        let image_dim = annu.slice(e).sum(&msq).dim() - msq.dim();
        cumulative += image_dim;
        rows.push((e, image_dim, cumulative));
    }
    Ok(ProbeReport {
        rows,
        bound,
        zero_input: false,
        limitation: PROBE_LIMITATION,
    })
}

// ---------------------------------------------------------------------------
// cube syzygy stability
// ---------------------------------------------------------------------------

/// Degreewise syzygies K(u, p) of a vector u over the truncation C[0, p],
/// plus the one-step stability comparison between p and p + 1.
pub struct SyzygyContext {
    pub full: std::sync::Arc<CubeEngine>,
    pub p: u32,
    pub dmax: i64,
}

fn check_entries_in_tilde(full: &CubeEngine, u: &[Element], p: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::pre("syzygy stability needs p >= 2"));
    }
    for (i, ui) in u.iter().enumerate() {
        for &idx in &ui.support {
            let mi = full.multiindex_at(ui.degree, idx);
            let ok = mi.iter().all(|&e| e < 3)
                && mi
                    .iter()
                    .enumerate()
                    .all(|(pos, &e)| e == 0 || (pos as u32) <= p.saturating_sub(3));
            if !ok {
                return Err(Error::pre(format!(
                    "entry {i} is not supported on the flat monomials of [0, p-3]"
                )));
            }
        }
    }
    Ok(())
}

/// K(u, p)_d for all d <= dmax, inside the truncation C[0, p].
pub fn syzygy_slices(
    full: &CubeEngine,
    u: &[Element],
    p: u32,
    dmax: i64,
) -> Result<Vec<(ProductSpace, Subspace)>> {
    check_entries_in_tilde(full, u, p)?;
    let trunc = CubeEngine::truncated(0, p, dmax)?;
    let ut: Vec<Element> = u
        .iter()
        .map(|e| trunc.convert_from(full, e))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for d in 0..=dmax {
        let space = ProductSpace::new(trunc.as_ref(), ut.iter().map(|e| d - e.degree).collect())?;
        let dim_t = trunc.dim(d);
        let mut m = Mat::new(dim_t);
        for ui in ut.iter() {
            let cd = d - ui.degree;
            if cd < 0 {
                continue;
            }
            for b in 0..trunc.dim(cd) {
                let prod = mul(trunc.as_ref(), &Element::basis(cd, b), ui)?;
                m.push_row(prod.to_row(dim_t));
            }
        }
        debug_assert_eq!(m.nrows(), space.total);
        out.push((space, left_kernel(&m)));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct StepReport {
    pub ok: bool,
    /// degree, dim of C[0,p+1].K(u,p), dim of K(u,p+1)
    pub per_degree: Vec<(i64, usize, usize)>,
    pub dmax: i64,
}

/// Verify K(u, p+1) = C[0, p+1] . K(u, p) in every degree <= dmax.
/// Both sides are computed independently: the left by spanning monomial
/// multiples of the lower kernel, the right as a fresh kernel.
pub fn step_check(full: &CubeEngine, u: &[Element], p: u32, dmax: i64) -> Result<StepReport> {
    let lower = syzygy_slices(full, u, p, dmax)?;
    let upper = syzygy_slices(full, u, p + 1, dmax)?;
    let trunc_low = CubeEngine::truncated(0, p, dmax)?;
    let trunc_high = CubeEngine::truncated(0, p + 1, dmax)?;
    let mut per_degree = Vec::new();
    let mut ok = true;
    for d in 0..=dmax {
        let (hi_space, hi_kernel) = &upper[d as usize];
        let mut rows = Vec::new();
        for f in 0..=d {
            let (lo_space, lo_kernel) = &lower[f as usize];
            if lo_kernel.dim() == 0 {
                continue;
            }
            for krow in lo_kernel.rows() {
                let parts = lo_space.unpack(krow);
                // re-express each component in C[0, p+1]
                let parts_high: Vec<Element> = parts
                    .iter()
                    .map(|e| trunc_high.convert_from(&trunc_low, e))
                    .collect::<Result<_>>()?;
                for m in 0..trunc_high.dim(d - f) {
                    let mono = Element::basis(d - f, m);
                    let scaled: Vec<Element> = parts_high
                        .iter()
                        .map(|e| mul(trunc_high.as_ref(), &mono, e))
                        .collect::<Result<_>>()?;
                    rows.push(hi_space.pack(&scaled));
                }
            }
        }
        let lhs = Subspace::from_rows(hi_space.total, rows);
        let (l, r) = (lhs.dim(), hi_kernel.dim());
        if lhs != *hi_kernel {
            ok = false;
        }
        per_degree.push((d, l, r));
    }
    Ok(StepReport {
        ok,
        per_degree,
        dmax,
    })
}
