//! The epsilon_0-algebra A: polynomial generators x_a for every ordinal
//! a below epsilon_0, graded by |x_a| = delta(a), modulo the relators
//! x_a x_b^{mu(a,b)+1} for all distinct a, b.
//!
//! A monomial survives exactly when, for every distinct pair (a, b) in its
//! support, both exponents are at most mu(a, b). The engine enumerates the
//! generators with delta up to its bound; that is exact for all degreewise
//! questions up to the bound because every exponent unit costs at least
//! delta(a).

use crate::engine::{unit, Element, RingEngine};
use crate::error::Error;
use crate::ordinal::{enumerate_delta_le, extension_witness, parse_ordinal, Ordinal};
use crate::Result;
use std::collections::HashMap;
use std::sync::Arc;

/// Monomial as sorted (generator index, positive exponent) pairs.
pub type EpsMono = Vec<(u32, u64)>;

/// Monomial over raw ordinals, for certificates that leave the engine's
/// generator window.
pub type OrdMono = Vec<(Ordinal, u64)>;

pub struct EpsilonEngine {
    dmax: i64,
    gens: Vec<Ordinal>,
    deltas: Vec<u64>,
    gen_index: HashMap<Ordinal, u32>,
    /// mu values for the pairs that can coexist in a monomial (mu >= 1),
    /// keyed by (min index, max index)
    compat: HashMap<(u32, u32), u64>,
    basis: Vec<Vec<EpsMono>>,
    index: Vec<HashMap<EpsMono, usize>>,
}

impl EpsilonEngine {
    pub fn new(dmax: i64) -> Arc<Self> {
        let dmax_u = dmax.max(0) as u64;
        let gens = enumerate_delta_le(dmax_u);
        let deltas: Vec<u64> = gens.iter().map(|g| g.delta()).collect();
        let gen_index: HashMap<Ordinal, u32> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();

        // mu(a, b) >= 1 exactly when one ordinal's normal form carries the
        // other as an exponent, so the compatibility graph is read off the
        // normal forms directly.
        let mut compat: HashMap<(u32, u32), u64> = HashMap::new();
        let mut neighbors: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        for (i, g) in gens.iter().enumerate() {
            for (exp, coeff) in g.terms() {
                if let Some(&j) = gen_index.get(exp) {
                    let key = ((i as u32).min(j), (i as u32).max(j));
                    compat.insert(key, *coeff);
                    neighbors[i].push(j);
                    neighbors[j as usize].push(i as u32);
                }
            }
        }
        for n in neighbors.iter_mut() {
            n.sort_unstable();
            n.dedup();
        }

        // enumerate the basis: cliques in the compatibility graph with
        // exponents capped by the pairwise mu values
        let mut basis: Vec<Vec<EpsMono>> = vec![Vec::new(); (dmax_u + 1) as usize];
        basis[0].push(Vec::new());
        let caps_for = |support: &[u32]| -> Vec<u64> {
            // exponent caps: min over co-members of mu
            support
                .iter()
                .map(|&i| {
                    support
                        .iter()
                        .filter(|&&j| j != i)
                        .map(|&j| compat[&(i.min(j), i.max(j))])
                        .min()
                        .unwrap_or(u64::MAX)
                })
                .collect()
        };
        let mut cliques: Vec<Vec<u32>> = Vec::new();
        let mut support: Vec<u32> = Vec::new();
        for i in 0..gens.len() {
            if deltas[i] > dmax_u {
                continue;
            }
            support.push(i as u32);
            cliques.push(support.clone());
            let cands: Vec<u32> = neighbors[i]
                .iter()
                .copied()
                .filter(|&j| j > i as u32)
                .collect();
            extend_cliques(
                &neighbors,
                &deltas,
                dmax_u - deltas[i],
                &cands,
                &mut support,
                &mut cliques,
            );
            support.pop();
        }
        for s in cliques {
            let caps = caps_for(&s);
            let mut mono: EpsMono = Vec::new();
            assign_exponents(&s, &caps, &deltas, 0, 0, dmax_u, &mut mono, &mut basis);
        }
        for b in basis.iter_mut() {
            b.sort();
        }
        let index = basis
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .map(|(i, m)| (m.clone(), i))
                    .collect::<HashMap<_, _>>()
            })
            .collect();
        Arc::new(EpsilonEngine {
            dmax,
            gens,
            deltas,
            gen_index,
            compat,
            basis,
            index,
        })
    }

    pub fn generators_ordinals(&self) -> &[Ordinal] {
        &self.gens
    }

    pub fn mu_by_index(&self, i: u32, j: u32) -> u64 {
        if i == j {
            return 0;
        }
        self.compat
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0)
    }

    /// Does the exponent map satisfy the basis condition?
    pub fn in_basis_set(&self, mono: &EpsMono) -> bool {
        for a in 0..mono.len() {
            for b in a + 1..mono.len() {
                let mu = self.mu_by_index(mono[a].0, mono[b].0);
                if mono[a].1 > mu || mono[b].1 > mu {
                    return false;
                }
            }
        }
        true
    }

    pub fn mono_degree(&self, mono: &EpsMono) -> i64 {
        mono.iter()
            .map(|&(i, e)| self.deltas[i as usize] as i64 * e as i64)
            .sum()
    }

    /// The monomial as an element; zero when a relator divides it.
    pub fn monomial(&self, mono: &EpsMono) -> Result<Element> {
        let d = self.mono_degree(mono);
        if d > self.dmax {
            return Err(Error::BoundExceeded {
                degree: d,
                dmax: self.dmax,
            });
        }
        if !self.in_basis_set(mono) {
            return Ok(Element::zero(d));
        }
        Ok(Element::basis(d, self.index[d as usize][mono]))
    }

    pub fn mono_at(&self, d: i64, i: usize) -> &EpsMono {
        &self.basis[d as usize][i]
    }

    pub fn mono_to_ordinals(&self, mono: &EpsMono) -> OrdMono {
        mono.iter()
            .map(|&(i, e)| (self.gens[i as usize].clone(), e))
            .collect()
    }

    /// The generator x_a as an element, for any a with delta(a) <= dmax.
    pub fn var(&self, a: &Ordinal) -> Result<Element> {
        let idx = self.gen_index.get(a).ok_or_else(|| Error::BoundExceeded {
            degree: a.delta() as i64,
            dmax: self.dmax,
        })?;
        self.monomial(&vec![(*idx, 1)])
    }

    fn label(&self, mono: &EpsMono) -> String {
        if mono.is_empty() {
            return "1".to_string();
        }
        mono.iter()
            .map(|&(i, e)| {
                let g = &self.gens[i as usize];
                if e == 1 {
                    format!("x[{g}]")
                } else {
                    format!("x[{g}]^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn extend_cliques(
    neighbors: &[Vec<u32>],
    deltas: &[u64],
    budget: u64,
    cands: &[u32],
    support: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    for (pos, &j) in cands.iter().enumerate() {
        let cost = deltas[j as usize];
        if cost > budget {
            continue;
        }
        support.push(j);
        out.push(support.clone());
        let next: Vec<u32> = cands[pos + 1..]
            .iter()
            .copied()
            .filter(|k| neighbors[j as usize].binary_search(k).is_ok())
            .collect();
        extend_cliques(neighbors, deltas, budget - cost, &next, support, out);
        support.pop();
    }
}

#[allow(clippy::too_many_arguments)]
fn assign_exponents(
    support: &[u32],
    caps: &[u64],
    deltas: &[u64],
    pos: usize,
    degree: u64,
    dmax: u64,
    mono: &mut EpsMono,
    out: &mut [Vec<EpsMono>],
) {
    if pos == support.len() {
        out[degree as usize].push(mono.clone());
        return;
    }
    let gi = support[pos];
    let cost = deltas[gi as usize];
    let max_e = caps[pos].min((dmax - degree) / cost);
    for e in 1..=max_e {
        mono.push((gi, e));
        assign_exponents(
            support,
            caps,
            deltas,
            pos + 1,
            degree + e * cost,
            dmax,
            mono,
            out,
        );
        mono.pop();
    }
}

impl RingEngine for EpsilonEngine {
    fn name(&self) -> String {
        "epsilon".to_string()
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
            .map(|m| self.label(m))
            .collect()
    }

    fn mul_basis(&self, d1: i64, i1: usize, d2: i64, i2: usize) -> Element {
        let a = &self.basis[d1 as usize][i1];
        let b = &self.basis[d2 as usize][i2];
        let mut sum: EpsMono = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0usize, 0usize);
        while x < a.len() || y < b.len() {
            match (a.get(x), b.get(y)) {
                (Some(&(i, e)), Some(&(j, f))) if i == j => {
                    sum.push((i, e + f));
                    x += 1;
                    y += 1;
                }
                (Some(&(i, e)), Some(&(j, _))) if i < j => {
                    sum.push((i, e));
                    x += 1;
                }
                (Some(_), Some(&(j, f))) => {
                    sum.push((j, f));
                    y += 1;
                }
                (Some(&(i, e)), None) => {
                    sum.push((i, e));
                    x += 1;
                }
                (None, Some(&(j, f))) => {
                    sum.push((j, f));
                    y += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let d = d1 + d2;
        if !self.in_basis_set(&sum) {
            return Element::zero(d);
        }
        Element::basis(d, self.index[d as usize][&sum])
    }

    fn generators(&self) -> Vec<(String, i64)> {
        self.gens
            .iter()
            .zip(&self.deltas)
            .map(|(g, &d)| (format!("x[{g}]"), d as i64))
            .collect()
    }

    fn generator(&self, idx: usize) -> Element {
        self.monomial(&vec![(idx as u32, 1)])
            .expect("generator within bound")
    }

    fn parse_monomial(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if s == "1" {
            return Ok(unit(self));
        }
        let mut mono: HashMap<u32, u64> = HashMap::new();
        for factor in crate::engine::split_top_level(s, '*') {
            let factor = factor.trim();
            let rest = factor
                .strip_prefix("x[")
                .ok_or_else(|| Error::parse(format!("expected x[ordinal], got `{factor}`")))?;
            let close = rest
                .rfind(']')
                .ok_or_else(|| Error::parse(format!("missing `]` in `{factor}`")))?;
            let ord = parse_ordinal(&rest[..close])?;
            let pow: u64 = match rest[close + 1..].trim() {
                "" => 1,
                p => p
                    .strip_prefix('^')
                    .ok_or_else(|| Error::parse(format!("bad suffix in `{factor}`")))?
                    .trim()
                    .parse()
                    .map_err(|e| Error::parse(format!("bad power: {e}")))?,
            };
            let idx = self
                .gen_index
                .get(&ord)
                .ok_or_else(|| Error::BoundExceeded {
                    degree: ord.delta() as i64,
                    dmax: self.dmax,
                })?;
            *mono.entry(*idx).or_insert(0) += pow;
        }
        let mut mono: EpsMono = mono.into_iter().collect();
        mono.sort();
        self.monomial(&mono)
    }
}

// ---------------------------------------------------------------------------
// ordinal-level monomial calculus (independent of the engine window)
// ---------------------------------------------------------------------------

/// Does the ordinal-level monomial survive the relators?
pub fn ord_mono_alive(mono: &OrdMono) -> Result<bool> {
    for a in 0..mono.len() {
        for b in a + 1..mono.len() {
            let mu = mono[a].0.mu(&mono[b].0)?;
            if mono[a].1 > mu || mono[b].1 > mu {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn ord_mono_mul(a: &OrdMono, b: &OrdMono) -> OrdMono {
    let mut map: std::collections::BTreeMap<Ordinal, u64> = a.iter().cloned().collect();
    for (g, e) in b {
        *map.entry(g.clone()).or_insert(0) += e;
    }
    map.into_iter().collect()
}

pub fn ord_mono_divides(a: &OrdMono, b: &OrdMono) -> bool {
    a.iter().all(|(g, e)| {
        b.iter()
            .find(|(h, _)| h == g)
            .is_some_and(|(_, f)| f >= e)
    })
}

/// Outcome for one window monomial in the double-annihilator certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpsMonomialStatus {
    InIdeal,
    /// excluded by a verified product of fresh variables
    Excluded { witness: OrdMono },
}

/// Exact double-annihilator certificate for a finitely generated monomial
/// ideal in A, over every basis monomial of degree <= window.
///
/// For a monomial x^beta outside the ideal, fresh indices k_1 < ... < k_r
/// are produced by the extension property, one per generator, prescribing
/// mu(k_t, i_t) = alpha_t(i_t) - 1 against an index i_t where the generator
/// exceeds beta, mu = N elsewhere on the support in play, and mu = 1 among
/// the fresh indices. The certificate is then *verified* with plain mu
/// computations: y = prod x_{k_t} is alive, kills every generator, and
/// y x^beta is alive. The fresh ordinals lie far outside any engine window;
/// no degree truncation is involved.
pub fn monomial_dac_check(
    engine: &EpsilonEngine,
    gens: &[OrdMono],
    window: i64,
) -> Result<Vec<(i64, usize, EpsMonomialStatus)>> {
    for g in gens {
        if g.is_empty() {
            return Err(Error::pre("unit ideal: the check is vacuous"));
        }
        if !ord_mono_alive(g)? {
            return Err(Error::pre("an ideal generator is zero in A"));
        }
    }
    let window = window.min(engine.dmax());
    let mut out = Vec::new();
    for d in 0..=window {
        for i in 0..engine.dim(d) {
            let beta = engine.mono_to_ordinals(engine.mono_at(d, i));
            if gens.iter().any(|g| ord_mono_divides(g, &beta)) {
                out.push((d, i, EpsMonomialStatus::InIdeal));
                continue;
            }
            let witness = build_dac_witness(gens, &beta)?;
            // verified: the witness is alive
            if !ord_mono_alive(&witness)? {
                return Err(Error::invalid("witness monomial is zero"));
            }
            // verified: it kills every generator
            for g in gens {
                if ord_mono_alive(&ord_mono_mul(&witness, g))? {
                    return Err(Error::invalid(format!(
                        "witness fails to annihilate generator {g:?}"
                    )));
                }
            }
            // verified: it does not kill x^beta
            if !ord_mono_alive(&ord_mono_mul(&witness, &beta))? {
                return Err(Error::invalid("witness annihilates the target monomial"));
            }
            out.push((d, i, EpsMonomialStatus::Excluded { witness }));
        }
    }
    Ok(out)
}

fn build_dac_witness(gens: &[OrdMono], beta: &OrdMono) -> Result<OrdMono> {
    // J = supp(beta) union supports of the generators
    let mut j_set: Vec<Ordinal> = beta.iter().map(|(g, _)| g.clone()).collect();
    for g in gens {
        for (o, _) in g {
            if !j_set.contains(o) {
                j_set.push(o.clone());
            }
        }
    }
    let beta_of = |o: &Ordinal| -> u64 {
        beta.iter().find(|(b, _)| b == o).map_or(0, |(_, e)| *e)
    };
    let cap = j_set.iter().map(&beta_of).max().unwrap_or(0);

    let mut fresh: Vec<Ordinal> = Vec::new();
    for g in gens {
        // an index where the generator exceeds beta
        let (i_t, alpha_it) = g
            .iter()
            .find(|(o, e)| *e > beta_of(o))
            .ok_or_else(|| Error::invalid("generator divides the monomial"))?;
        // prescriptions, sorted descending: fresh indices first (they are
        // built above everything), then J
        let mut targets: Vec<(Ordinal, u64)> =
            fresh.iter().rev().map(|k| (k.clone(), 1)).collect();
        let mut j_sorted = j_set.clone();
        j_sorted.sort();
        j_sorted.reverse();
        for o in j_sorted {
            let nu = if &o == i_t { alpha_it - 1 } else { cap };
            targets.push((o, nu));
        }
        let k_t = extension_witness(&targets)?;
        fresh.push(k_t);
    }
    let mut witness: OrdMono = fresh.into_iter().map(|k| (k, 1)).collect();
    witness.sort();
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{mul, parse_element};

    fn ord(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn small_dims() {
        let a = EpsilonEngine::new(6);
        assert_eq!(a.dim(0), 1);
        assert_eq!(a.dim(1), 1); // x_0
        assert_eq!(a.dim(2), 2); // x_0^2, x_1
    }

    #[test]
    fn relator_products() {
        let a = EpsilonEngine::new(14);
        let xw2 = a.var(&ord("w^2")).unwrap();
        let xw1 = a.var(&ord("w+1")).unwrap();
        assert!(mul(a.as_ref(), &xw2, &xw1).unwrap().is_zero());

        let xw = a.var(&ord("w")).unwrap();
        let x1 = a.var(&ord("1")).unwrap();
        let p = mul(a.as_ref(), &xw, &x1).unwrap();
        assert!(!p.is_zero()); // mu(w, 1) = 1 allows exponent 1
        let p2 = mul(a.as_ref(), &p, &x1).unwrap();
        assert!(p2.is_zero()); // exponent 2 exceeds mu
    }

    #[test]
    fn parse_and_labels() {
        let a = EpsilonEngine::new(18);
        // mu(w*2+1, 1) = 2 allows x_1-exponents up to 2
        let e = parse_element(a.as_ref(), "x[w*2+1]*x[1]^2").unwrap();
        assert!(!e.is_zero());
        let dead = parse_element(a.as_ref(), "x[1]^3*x[w*2+1]").unwrap();
        assert!(dead.is_zero());
    }

    #[test]
    fn basis_against_brute_force() {
        // brute force: enumerate all exponent maps on the generator list by
        // unbounded DFS with the mu filter applied at the end
        let dmax = 9i64;
        let a = EpsilonEngine::new(dmax);
        let gens = a.generators_ordinals().to_vec();
        let mut monos: Vec<EpsMono> = vec![Vec::new()];
        fn rec(
            gens: &[Ordinal],
            start: usize,
            left: i64,
            cur: &mut EpsMono,
            out: &mut Vec<EpsMono>,
        ) {
            for gi in start..gens.len() {
                let cost = gens[gi].delta() as i64;
                if cost > left {
                    continue;
                }
                let mut e = 1i64;
                while e * cost <= left {
                    cur.push((gi as u32, e as u64));
                    out.push(cur.clone());
                    rec(gens, gi + 1, left - e * cost, cur, out);
                    cur.pop();
                    e += 1;
                }
            }
        }
        let mut cur = Vec::new();
        rec(&gens, 0, dmax, &mut cur, &mut monos);
        let mut by_degree = vec![0usize; (dmax + 1) as usize];
        for m in monos {
            let deg = a.mono_degree(&m);
            let ords: OrdMono = a.mono_to_ordinals(&m);
            if ord_mono_alive(&ords).unwrap() {
                by_degree[deg as usize] += 1;
            }
        }
        for d in 0..=dmax {
            assert_eq!(a.dim(d), by_degree[d as usize], "degree {d}");
        }
    }

    #[test]
    fn nilpotent_cross_products() {
        let a = EpsilonEngine::new(18);
        // (x_i x_j)^{mu+1} = 0 for sampled pairs
        let pairs = [("w", "1"), ("w^w", "w"), ("w+1", "0"), ("2", "0")];
        for (i, j) in pairs {
            let (oi, oj) = (ord(i), ord(j));
            let mu = oi.mu(&oj).unwrap();
            let xi = a.var(&oi).unwrap();
            let xj = a.var(&oj).unwrap();
            let prod = mul(a.as_ref(), &xi, &xj).unwrap();
            assert!(!prod.is_zero(), "pair ({i},{j}) should have mu >= 1");
            let mut acc = unit(a.as_ref());
            for k in 0..=mu {
                acc = mul(a.as_ref(), &acc, &prod).unwrap();
                if k < mu {
                    assert!(!acc.is_zero(), "({i},{j})^{} vanished early", k + 1);
                }
            }
            assert!(acc.is_zero(), "pair ({i},{j})");
        }
    }

    #[test]
    fn dac_certificate_for_principal_monomial_ideal() {
        let a = EpsilonEngine::new(8);
        let gens: Vec<OrdMono> = vec![vec![(ord("1"), 2)]]; // (x_1^2)
        let report = monomial_dac_check(&a, &gens, 8).unwrap();
        assert!(!report.is_empty());
        for (d, i, status) in report {
            let beta = a.mono_to_ordinals(a.mono_at(d, i));
            let divisible = ord_mono_divides(&gens[0], &beta);
            match status {
                EpsMonomialStatus::InIdeal => assert!(divisible),
                EpsMonomialStatus::Excluded { .. } => assert!(!divisible),
            }
        }
    }
}
