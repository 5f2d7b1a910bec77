//! The cube algebra C = F2[y_0, y_1, ...]/(y_i^3 + y_i y_{i+1}) with
//! |y_i| = 2^i, together with the truncations C[n,m] and the Poincare
//! duality quotients Cbar[n,m] = C[n,m]/y_m.
//!
//! Basis conventions: C[n,infinity] uses flat multiindices (all entries
//! below 3); C[n,m] uses the capped-rewriting basis where the entry at m is
//! unbounded; Cbar[n,m] uses flat multiindices supported on [n, m-1].
//! Monomials are ordered lexicographically by exponent vector.

use crate::engine::{mul, unit, Element, RingEngine};
use crate::error::Error;
use crate::Result;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

/// Finitely supported exponent vector, trailing zeros trimmed.
pub type MultiIndex = Vec<u32>;

pub fn mi_degree(mi: &[u32]) -> i64 {
    mi.iter()
        .enumerate()
        .map(|(i, &e)| (e as i64) << i)
        .sum()
}

pub fn mi_trim(mut mi: MultiIndex) -> MultiIndex {
    while mi.last() == Some(&0) {
        mi.pop();
    }
    mi
}

pub fn mi_add(a: &[u32], b: &[u32]) -> MultiIndex {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

fn mi_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for i in 0..n {
        let (x, y) = (
            a.get(i).copied().unwrap_or(0),
            b.get(i).copied().unwrap_or(0),
        );
        match x.cmp(&y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Rewrite with y_k^3 = y_k y_{k+1} at the smallest offending index until
/// flat. Rewrites are capped at indices below `cap` when given, leaving the
/// entry at `cap` unbounded. Preserves degree; terminates by lexicographic
/// descent.
pub fn flatten_capped(mi: &[u32], cap: Option<u32>) -> MultiIndex {
    let mut v: MultiIndex = mi.to_vec();
    loop {
        let lim = cap.map_or(v.len(), |c| (c as usize).min(v.len()));
        match v[..lim].iter().position(|&e| e >= 3) {
            None => break,
            Some(k) => {
                v[k] -= 2;
                if k + 1 == v.len() {
                    v.push(0);
                }
                v[k + 1] += 1;
            }
        }
    }
    mi_trim(v)
}

/// The paper's flattening into the flat basis of C.
pub fn flatten(mi: &[u32]) -> MultiIndex {
    flatten_capped(mi, None)
}

/// theta[m, k]: the unique m-solid multiindex with y^theta = y_m^k.
/// Entries lie in {1, 2} on [m, m+r) where 2^r - 1 <= k < 2^{r+1} - 1 and
/// the positions with entry 2 encode the binary set of k - (2^r - 1).
pub fn theta(m: u32, k: u64) -> MultiIndex {
    if k == 0 {
        return Vec::new();
    }
    let mut r = 0u32;
    while (1u64 << (r + 1)) - 1 <= k {
        r += 1;
    }
    let j = k - ((1u64 << r) - 1);
    let mut mi = vec![0u32; (m + r) as usize];
    for off in 0..r {
        mi[(m + off) as usize] = if (j >> off) & 1 == 1 { 2 } else { 1 };
    }
    mi
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    /// C[n, infinity]
    Full { n: u32 },
    /// C[n, m] with the entry at m unbounded
    Truncated { n: u32, m: u32 },
    /// Cbar[n, m] = C[n, m]/y_m
    Bar { n: u32, m: u32 },
}

pub struct CubeEngine {
    mode: Mode,
    dmax: i64,
    basis: Vec<Vec<MultiIndex>>,
    index: Vec<HashMap<MultiIndex, usize>>,
}

impl CubeEngine {
    pub fn full(n: u32, dmax: i64) -> Result<Arc<Self>> {
        Self::build(Mode::Full { n }, dmax)
    }

    pub fn truncated(n: u32, m: u32, dmax: i64) -> Result<Arc<Self>> {
        if n > m {
            return Err(Error::invalid("cube(n,m) requires n <= m"));
        }
        Self::build(Mode::Truncated { n, m }, dmax)
    }

    pub fn bar(n: u32, m: u32, dmax: i64) -> Result<Arc<Self>> {
        if n > m {
            return Err(Error::invalid("cube-bar(n,m) requires n <= m"));
        }
        Self::build(Mode::Bar { n, m }, dmax)
    }

    fn build(mode: Mode, dmax: i64) -> Result<Arc<Self>> {
        if !(0..(1i64 << 40)).contains(&dmax) {
            return Err(Error::invalid("cube bound out of range"));
        }
        let mut basis: Vec<Vec<MultiIndex>> = vec![Vec::new(); (dmax + 1) as usize];
        let mut cur: Vec<(u32, u32)> = Vec::new();
        let lo = match mode {
            Mode::Full { n } | Mode::Truncated { n, .. } | Mode::Bar { n, .. } => n,
        };
        enumerate_basis(mode, lo, 0, dmax, &mut cur, &mut basis);
        for b in basis.iter_mut() {
            b.sort_by(|x, y| mi_cmp(x, y));
        }
        let index = basis
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .map(|(i, mi)| (mi.clone(), i))
                    .collect::<HashMap<_, _>>()
            })
            .collect();
        Ok(Arc::new(CubeEngine {
            mode,
            dmax,
            basis,
            index,
        }))
    }

    /// Normalize an arbitrary multiindex into this ring's basis; None means
    /// the monomial is zero here (only possible in the bar quotient).
    pub fn normalize(&self, mi: &[u32]) -> Option<MultiIndex> {
        match self.mode {
            Mode::Full { .. } => Some(flatten(mi)),
            Mode::Truncated { m, .. } => Some(flatten_capped(mi, Some(m))),
            Mode::Bar { m, .. } => {
                let v = flatten_capped(mi, Some(m));
                if v.get(m as usize).copied().unwrap_or(0) > 0 {
                    None
                } else {
                    Some(v)
                }
            }
        }
    }

    fn check_support(&self, mi: &[u32]) -> Result<()> {
        let (lo, hi) = match self.mode {
            Mode::Full { n } => (n, u32::MAX),
            Mode::Truncated { n, m } => (n, m),
            Mode::Bar { n, m } => (n, m),
        };
        for (i, &e) in mi.iter().enumerate() {
            if e > 0 && ((i as u32) < lo || (i as u32) > hi) {
                return Err(Error::invalid(format!(
                    "variable y{i} is outside {}",
                    self.name()
                )));
            }
        }
        Ok(())
    }

    /// The monomial y^mi as an element, after normalization. Errors if the
    /// support uses variables outside the ring or the degree exceeds the
    /// bound.
    pub fn monomial(&self, mi: &[u32]) -> Result<Element> {
        self.check_support(mi)?;
        let d = mi_degree(mi);
        if d > self.dmax {
            return Err(Error::BoundExceeded {
                degree: d,
                dmax: self.dmax,
            });
        }
        Ok(match self.normalize(mi) {
            None => Element::zero(d),
            Some(v) => Element::basis(d, self.index[d as usize][&v]),
        })
    }

    /// The generator x_k = y_k + y_{k-1}^2 (x_0 = y_0).
    pub fn x_element(&self, k: u32) -> Result<Element> {
        let mut yk = vec![0u32; (k + 1) as usize];
        yk[k as usize] = 1;
        let mut e = self.monomial(&yk)?;
        if k > 0 {
            let mut y2 = vec![0u32; k as usize];
            y2[(k - 1) as usize] = 2;
            e = e.add(&self.monomial(&y2)?)?;
        }
        Ok(e)
    }

    /// The square-free interval product y_a y_{a+1} ... y_b.
    pub fn y_interval(&self, a: u32, b: u32) -> Result<Element> {
        let mut mi = vec![0u32; (b + 1) as usize];
        for i in a..=b {
            mi[i as usize] = 1;
        }
        self.monomial(&mi)
    }

    pub fn multiindex_at(&self, d: i64, i: usize) -> &MultiIndex {
        &self.basis[d as usize][i]
    }

    /// Re-express an element of `src` in this engine. Valid along the split
    /// inclusions between cube rings and the projections onto the bar
    /// quotients: monomials transfer literally and are then normalized.
    pub fn convert_from(&self, src: &CubeEngine, a: &Element) -> Result<Element> {
        let mut out = Element::zero(a.degree);
        for &i in &a.support {
            let mi = src.multiindex_at(a.degree, i).clone();
            out = out.add(&self.monomial(&mi)?)?;
        }
        Ok(out)
    }

    /// The retraction C -> C[n,m]: kills y_i for i < n, keeps y_i for
    /// n <= i <= m, and sends y_i to y_m^{2^{i-m}} for i > m.
    pub fn tau_from_full(&self, src: &CubeEngine, a: &Element) -> Result<Element> {
        let Mode::Truncated { n, m } = self.mode else {
            return Err(Error::pre("tau lands in a truncated cube C[n,m]"));
        };
        let mut out = Element::zero(a.degree);
        'mono: for &idx in &a.support {
            let mi = src.multiindex_at(a.degree, idx);
            let mut target = vec![0u32; (m + 1) as usize];
            for (i, &e) in mi.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let i = i as u32;
                if i < n {
                    continue 'mono; // tau_0(y_i) = 0
                } else if i <= m {
                    target[i as usize] += e;
                } else {
                    target[m as usize] += e << (i - m);
                }
            }
            out = out.add(&self.monomial(&target)?)?;
        }
        Ok(out)
    }

    fn label(mi: &[u32]) -> String {
        if mi.is_empty() {
            return "1".to_string();
        }
        mi.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("y{i}")
                } else {
                    format!("y{i}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn enumerate_basis(
    mode: Mode,
    pos: u32,
    degree: i64,
    dmax: i64,
    cur: &mut Vec<(u32, u32)>,
    out: &mut [Vec<MultiIndex>],
) {
    let step = 1i64 << pos;
    let stopped = match mode {
        Mode::Full { .. } => step > dmax - degree,
        Mode::Truncated { m, .. } => pos > m || step > dmax - degree,
        Mode::Bar { m, .. } => pos >= m || step > dmax - degree,
    };
    if stopped {
        // all further entries are forced to zero: emit exactly once
        let mut mi: MultiIndex = Vec::new();
        for &(i, e) in cur.iter() {
            if mi.len() <= i as usize {
                mi.resize(i as usize + 1, 0);
            }
            mi[i as usize] = e;
        }
        out[degree as usize].push(mi);
        return;
    }
    let cap: i64 = match mode {
        Mode::Truncated { m, .. } if pos == m => (dmax - degree) / step,
        _ => 2,
    };
    let max_entry = cap.min((dmax - degree) / step);
    for e in 0..=max_entry {
        if e > 0 {
            cur.push((pos, e as u32));
        }
        enumerate_basis(mode, pos + 1, degree + e * step, dmax, cur, out);
        if e > 0 {
            cur.pop();
        }
    }
}

impl RingEngine for CubeEngine {
    fn name(&self) -> String {
        match self.mode {
            Mode::Full { n: 0 } => "cube".to_string(),
            Mode::Full { n } => format!("cube({n},inf)"),
            Mode::Truncated { n, m } => format!("cube({n},{m})"),
            Mode::Bar { n, m } => format!("cube-bar({n},{m})"),
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
        self.basis[d as usize].len()
    }

    fn basis_labels(&self, d: i64) -> Vec<String> {
        self.basis[d as usize].iter().map(|m| Self::label(m)).collect()
    }

    fn mul_basis(&self, d1: i64, i1: usize, d2: i64, i2: usize) -> Element {
        let a = &self.basis[d1 as usize][i1];
        let b = &self.basis[d2 as usize][i2];
        let sum = mi_add(a, b);
        let d = d1 + d2;
        match self.normalize(&sum) {
            None => Element::zero(d),
            Some(v) => Element::basis(d, self.index[d as usize][&v]),
        }
    }

    fn generators(&self) -> Vec<(String, i64)> {
        let (lo, hi) = match self.mode {
            Mode::Full { n } => (n, u32::MAX),
            Mode::Truncated { n, m } => (n, m),
            Mode::Bar { n, m } => (n, m.saturating_sub(1)),
        };
        let mut out = Vec::new();
        for i in lo..=hi.min(62) {
            let d = 1i64 << i;
            if d > self.dmax {
                break;
            }
            out.push((format!("y{i}"), d));
        }
        out
    }

    fn generator(&self, idx: usize) -> Element {
        let (label, d) = self.generators()[idx].clone();
        let i: usize = label[1..].parse().unwrap();
        let mut mi = vec![0u32; i + 1];
        mi[i] = 1;
        let _ = d;
        self.monomial(&mi).expect("generator within bound")
    }

    fn parse_monomial(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if s == "1" {
            return Ok(unit(self));
        }
        let mut acc = unit(self);
        for factor in s.split('*') {
            let factor = factor.trim();
            let (head, pow) = match factor.split_once('^') {
                Some((h, p)) => (
                    h.trim(),
                    p.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::parse(format!("bad power `{p}`: {e}")))?,
                ),
                None => (factor, 1),
            };
            let base = if let Some(k) = head.strip_prefix('y') {
                let k: u32 = k
                    .parse()
                    .map_err(|e| Error::parse(format!("bad variable `{head}`: {e}")))?;
                let mut mi = vec![0u32; k as usize + 1];
                mi[k as usize] = 1;
                self.monomial(&mi)?
            } else if let Some(k) = head.strip_prefix('x') {
                let k: u32 = k
                    .parse()
                    .map_err(|e| Error::parse(format!("bad variable `{head}`: {e}")))?;
                self.x_element(k)?
            } else {
                return Err(Error::parse(format!("expected y<i> or x<i>, got `{head}`")));
            };
            for _ in 0..pow {
                acc = mul(self, &acc, &base)?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{hilbert, parse_element};

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten(&[3]), vec![1, 1]);
        assert_eq!(flatten(&[5]), vec![1, 2]);
        assert_eq!(flatten(&[2, 1]), vec![2, 1]);
    }

    #[test]
    fn flatten_preserves_degree_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let len = rng.gen_range(1..=6usize);
            let mi: MultiIndex = (0..len).map(|_| rng.gen_range(0..=7u32)).collect();
            let f = flatten(&mi);
            assert_eq!(mi_degree(&f), mi_degree(&mi));
            assert!(f.iter().all(|&e| e < 3));
        }
    }

    #[test]
    fn hilbert_of_c() {
        let c = CubeEngine::full(0, 5).unwrap();
        assert_eq!(hilbert(c.as_ref(), 5).unwrap(), vec![1, 1, 2, 1, 3, 2]);
    }

    #[test]
    fn cube_relation() {
        let c = CubeEngine::full(0, 8).unwrap();
        let y0 = parse_element(c.as_ref(), "y0").unwrap();
        let y0sq = parse_element(c.as_ref(), "y0^2").unwrap();
        let y0y1 = parse_element(c.as_ref(), "y0*y1").unwrap();
        assert_eq!(mul(c.as_ref(), &y0sq, &y0).unwrap(), y0y1);
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(0, 0), Vec::<u32>::new());
        assert_eq!(theta(0, 3), vec![1, 1]);
        assert_eq!(theta(0, 4), vec![2, 1]);
    }

    #[test]
    fn theta_matches_powers() {
        // y_m^k computed by repeated multiplication equals y^theta[m,k]
        for m in 0..=3u32 {
            let c = CubeEngine::full(0, 22 << m).unwrap();
            let mut ym = vec![0u32; m as usize + 1];
            ym[m as usize] = 1;
            let ym = c.monomial(&ym).unwrap();
            let mut power = unit(c.as_ref());
            for k in 0..=20u64 {
                let want = c.monomial(&theta(m, k)).unwrap();
                assert_eq!(power, want, "y_{m}^{k}");
                if k < 20 {
                    power = mul(c.as_ref(), &power, &ym).unwrap();
                }
            }
        }
    }

    #[test]
    fn y_powers_square_free() {
        // y_m^{2^k - 1} is the square-free interval product
        let c = CubeEngine::full(0, 32).unwrap();
        let y0 = parse_element(c.as_ref(), "y0").unwrap();
        let mut p = unit(c.as_ref());
        for _ in 0..3 {
            p = mul(c.as_ref(), &p, &y0).unwrap();
        }
        assert_eq!(p, c.y_interval(0, 1).unwrap());
    }

    #[test]
    fn x_generators() {
        let c = CubeEngine::full(0, 16).unwrap();
        let x0 = c.x_element(0).unwrap();
        assert_eq!(x0, parse_element(c.as_ref(), "y0").unwrap());
        let y0 = parse_element(c.as_ref(), "y0").unwrap();
        let x1 = c.x_element(1).unwrap();
        assert!(mul(c.as_ref(), &y0, &x1).unwrap().is_zero());
        // y_2 = x_2 + x_1^2 + x_0^4
        let y2 = parse_element(c.as_ref(), "y2").unwrap();
        let sum = parse_element(c.as_ref(), "x2+x1^2+x0^4").unwrap();
        assert_eq!(sum, y2);
    }

    #[test]
    fn yyy_identity_p3() {
        // y_{[0,0]}^2 y_{[0,2]}^2 y_1 y_2 y_3 = y_{[0,3]}^2
        let c = CubeEngine::full(0, 32).unwrap();
        let lhs = [
            c.monomial(&[2]).unwrap(),
            {
                let i = c.y_interval(0, 2).unwrap();
                mul(c.as_ref(), &i, &i).unwrap()
            },
            c.monomial(&[0, 1]).unwrap(),
            c.monomial(&[0, 0, 1]).unwrap(),
            c.monomial(&[0, 0, 0, 1]).unwrap(),
        ]
        .into_iter()
        .try_fold(unit(c.as_ref()), |acc, f| mul(c.as_ref(), &acc, &f))
        .unwrap();
        let i03 = c.y_interval(0, 3).unwrap();
        let rhs = mul(c.as_ref(), &i03, &i03).unwrap();
        assert!(!rhs.is_zero());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncated_cap_and_bar_kill() {
        // in C[0,1] the entry at 1 is unbounded
        let t = CubeEngine::truncated(0, 1, 12).unwrap();
        assert_eq!(t.normalize(&[3]).unwrap(), vec![1, 1]);
        assert_eq!(t.normalize(&[0, 4]).unwrap(), vec![0, 4]);
        // in Cbar[0,2]: y1^2 * y1 = y1*y2 -> contains y2 -> zero
        let b = CubeEngine::bar(0, 2, 12).unwrap();
        let y1 = parse_element(b.as_ref(), "y1").unwrap();
        let y1sq = parse_element(b.as_ref(), "y1^2").unwrap();
        assert!(mul(b.as_ref(), &y1sq, &y1).unwrap().is_zero());
        // y0^2 * y0 = y0*y1, still alive in Cbar[0,2]
        let y0 = parse_element(b.as_ref(), "y0").unwrap();
        let y0sq = parse_element(b.as_ref(), "y0^2").unwrap();
        assert_eq!(
            mul(b.as_ref(), &y0sq, &y0).unwrap(),
            parse_element(b.as_ref(), "y0*y1").unwrap()
        );
    }

    #[test]
    fn bar_is_finite_poincare_shape() {
        let b = CubeEngine::bar(0, 2, 12).unwrap();
        let dims = hilbert(b.as_ref(), 12).unwrap();
        assert_eq!(dims.iter().sum::<usize>(), 9); // 3^2 monomials
        assert_eq!(dims[6], 1); // top degree 2*(2^2 - 2^0)
        assert!(dims[7..].iter().all(|&d| d == 0));
    }

    #[test]
    fn tau_retraction() {
        let c = CubeEngine::full(0, 32).unwrap();
        let t = CubeEngine::truncated(1, 2, 32).unwrap();
        // tau(y_0) = 0
        let y0 = parse_element(c.as_ref(), "y0").unwrap();
        assert!(t.tau_from_full(&c, &y0).unwrap().is_zero());
        // tau(y_3) = y_2^2 (m = 2)
        let y3 = parse_element(c.as_ref(), "y3").unwrap();
        assert_eq!(
            t.tau_from_full(&c, &y3).unwrap(),
            parse_element(t.as_ref(), "y2^2").unwrap()
        );
        // tau restricts to the identity on C[1,2]
        for d in 0..=16i64 {
            for i in 0..t.dim(d) {
                let a = Element::basis(d, i);
                let in_c = c.convert_from(&t, &a).unwrap();
                assert_eq!(t.tau_from_full(&c, &in_c).unwrap(), a);
            }
        }
    }

    #[test]
    fn flat_count_matches_series_oracle() {
        // independent oracle: coefficient DP for prod_i (1 + x^{2^i} + x^{2^{i+1}})
        let dmax = 40usize;
        let mut coeff = vec![0u64; dmax + 1];
        coeff[0] = 1;
        let mut i = 0;
        while (1usize << i) <= dmax {
            let step = 1usize << i;
            let mut next = vec![0u64; dmax + 1];
            for (d, &c) in coeff.clone().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for e in 0..=2usize {
                    if d + e * step <= dmax {
                        next[d + e * step] += c;
                    }
                }
            }
            coeff = next;
            i += 1;
        }
        let c = CubeEngine::full(0, dmax as i64).unwrap();
        for (d, &count) in coeff.iter().enumerate() {
            assert_eq!(c.dim(d as i64) as u64, count, "degree {d}");
        }
    }

    #[test]
    fn reduced_quotient_nilpotence() {
        // each cross product x_p x_q is nilpotent in C; the exact indices
        // are frozen below (the exponent 2^{q-1-p}+1 kills the class only
        // in the reduced quotient)
        let indices = [
            (0u32, 1u32, 1u64),
            (0, 2, 3),
            (0, 3, 7),
            (0, 4, 15),
            (1, 2, 2),
            (1, 3, 4),
            (1, 4, 8),
            (2, 3, 2),
            (2, 4, 4),
            (3, 4, 2),
        ];
        for (p, q, n) in indices {
            let deg = (((1i64 << p) + (1i64 << q)) * n as i64).max(4);
            let c = CubeEngine::full(0, deg).unwrap();
            let xp = c.x_element(p).unwrap();
            let xq = c.x_element(q).unwrap();
            let xpq = mul(c.as_ref(), &xp, &xq).unwrap();
            let mut acc = unit(c.as_ref());
            for k in 1..=n {
                acc = mul(c.as_ref(), &acc, &xpq).unwrap();
                if k < n {
                    assert!(!acc.is_zero(), "(x_{p}x_{q})^{k} vanished early");
                }
            }
            assert!(acc.is_zero(), "(x_{p}x_{q})^{n}");
        }
    }
}
