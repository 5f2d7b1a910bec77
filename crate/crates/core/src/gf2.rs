//! Exact linear algebra over F2 with bit-packed rows.
//!
//! A linear map V -> W is stored as a matrix whose j-th row is the image of
//! the j-th basis vector of V, so vectors act on the left: x maps to x*M.
//! All reductions are deterministic, which keeps every downstream report
//! byte-for-byte reproducible.

/// Bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Row {
    len: usize,
    words: Vec<u64>,
}

impl Row {
    pub fn zero(len: usize) -> Self {
        Row {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut r = Row::zero(len);
        for &i in support {
            r.set(i, true);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_in(&mut self, other: &Row) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn leading(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Concatenate two rows into one of length `self.len + other.len`.
    pub fn concat(&self, other: &Row) -> Row {
        let mut out = Row::zero(self.len + other.len);
        for i in self.support() {
            out.set(i, true);
        }
        for i in other.support() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Restrict to the columns in `cols` (in order).
    pub fn select(&self, cols: &[usize]) -> Row {
        let mut out = Row::zero(cols.len());
        for (j, &c) in cols.iter().enumerate() {
            if self.get(c) {
                out.set(j, true);
            }
        }
        out
    }
}

/// Matrix over F2; rows all share one length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    ncols: usize,
    rows: Vec<Row>,
}

impl Mat {
    pub fn new(ncols: usize) -> Self {
        Mat {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Row>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Mat { ncols, rows }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| Row::from_support(n, &[i])).collect();
        Mat { ncols: n, rows }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, r: Row) {
        debug_assert_eq!(r.len(), self.ncols);
        self.rows.push(r);
    }

    pub fn row(&self, i: usize) -> &Row {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// In-place reduced row echelon form. Returns the pivot columns in
    /// increasing order; zero rows are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        // incremental echelon: chase each row through the pivots collected
        // so far, then back-eliminate for the reduced (canonical) form
        let mut pivot_of_col: std::collections::BTreeMap<usize, usize> =
            std::collections::BTreeMap::new();
        let mut kept: Vec<Row> = Vec::new();
        for mut row in self.rows.drain(..) {
            while let Some(c) = row.leading() {
                match pivot_of_col.get(&c) {
                    Some(&ri) => row.xor_in(&kept[ri]),
                    None => {
                        pivot_of_col.insert(c, kept.len());
                        kept.push(row);
                        break;
                    }
                }
            }
        }
        let pivots: Vec<usize> = pivot_of_col.keys().copied().collect();
        let mut rows: Vec<Row> = pivot_of_col.values().map(|&ri| kept[ri].clone()).collect();
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            let c = pivots[i];
            for r in head.iter_mut() {
                if r.get(c) {
                    r.xor_in(pivot_row);
                }
            }
        }
        self.rows = rows;
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }
}

/// A subspace of F2^n in reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ncols: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ncols: usize) -> Self {
        Subspace {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ncols: usize) -> Self {
        Subspace::from_mat(Mat::identity(ncols))
    }

    pub fn from_mat(mut m: Mat) -> Self {
        let pivots = m.rref();
        Subspace {
            ncols: m.ncols,
            rows: m.rows,
            pivots,
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Row>) -> Self {
        Subspace::from_mat(Mat::from_rows(ncols, rows))
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo this subspace (pivot chasing).
    pub fn reduce(&self, v: &Row) -> Row {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_in(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &Row) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_rows(self.ncols, rows)
    }

    /// Intersection of subspaces via the kernel of the stacked matrix.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ncols, other.ncols);
        let mut stacked = Mat::new(self.ncols);
        for r in &self.rows {
            stacked.push_row(r.clone());
        }
        for r in &other.rows {
            stacked.push_row(r.clone());
        }
        let ker = left_kernel(&stacked);
        let mut rows = Vec::new();
        for k in ker.rows() {
            // the U-part of the combination spans the intersection
            let mut v = Row::zero(self.ncols);
            for i in k.support() {
                if i < self.rows.len() {
                    v.xor_in(&self.rows[i]);
                }
            }
            if !v.is_zero() {
                rows.push(v);
            }
        }
        Subspace::from_rows(self.ncols, rows)
    }

    /// Columns without pivots, i.e. coordinates of the quotient space.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut pi = 0;
        for c in 0..self.ncols {
            if pi < self.pivots.len() && self.pivots[pi] == c {
                pi += 1;
            } else {
                out.push(c);
            }
        }
        out
    }
}

/// Kernel of the row map x -> x*M, as a subspace of F2^nrows.
pub fn left_kernel(m: &Mat) -> Subspace {
    let n = m.nrows();
    let w = m.ncols();
    // chase each augmented row [r | e_i] through the pivots of the M part;
    // rows that vanish there have kernel combinations in the identity part
    let mut pivots: std::collections::HashMap<usize, Row> = std::collections::HashMap::new();
    let mut kernel_rows: Vec<Row> = Vec::new();
    let cols: Vec<usize> = (w..w + n).collect();
    for (i, r) in m.rows().iter().enumerate() {
        let mut aug = r.concat(&Row::from_support(n, &[i]));
        loop {
            match aug.leading() {
                Some(c) if c < w => {
                    if let Some(p) = pivots.get(&c) {
                        aug.xor_in(p);
                    } else {
                        pivots.insert(c, aug);
                        break;
                    }
                }
                _ => {
                    kernel_rows.push(aug.select(&cols));
                    break;
                }
            }
        }
    }
    Subspace::from_rows(n, kernel_rows)
}

/// One solution x of x*M = b, if any. Deterministic.
pub fn solve_left(m: &Mat, b: &Row) -> Option<Row> {
    debug_assert_eq!(b.len(), m.ncols());
    let n = m.nrows();
    let w = m.ncols();
    let mut pivots: std::collections::HashMap<usize, Row> = std::collections::HashMap::new();
    for (i, r) in m.rows().iter().enumerate() {
        let mut aug = r.concat(&Row::from_support(n, &[i]));
        loop {
            match aug.leading() {
                Some(c) if c < w => {
                    if let Some(p) = pivots.get(&c) {
                        aug.xor_in(p);
                    } else {
                        pivots.insert(c, aug);
                        break;
                    }
                }
                _ => break,
            }
        }
    }
    let mut target = b.concat(&Row::zero(n));
    loop {
        match target.leading() {
            Some(c) if c < w => {
                let p = pivots.get(&c)?;
                target.xor_in(p)
            },
            _ => break,
        }
    }
    let cols: Vec<usize> = (w..w + n).collect();
    Some(target.select(&cols))
}

/// Apply the row map: x*M.
pub fn apply(m: &Mat, x: &Row) -> Row {
    debug_assert_eq!(x.len(), m.nrows());
    let mut out = Row::zero(m.ncols());
    for i in x.support() {
        out.xor_in(m.row(i));
    }
    out
}

/// Preimage of a subspace S <= W under the row map M: V -> W.
pub fn preimage(m: &Mat, s: &Subspace) -> Subspace {
    debug_assert_eq!(m.ncols(), s.ncols());
    let reduced = Mat::from_rows(
        m.ncols(),
        m.rows().iter().map(|r| s.reduce(r)).collect(),
    );
    left_kernel(&reduced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, bits: &[usize]) -> Row {
        Row::from_support(n, bits)
    }

    #[test]
    fn rref_idempotent() {
        let m = Mat::from_rows(
            5,
            vec![row(5, &[0, 2]), row(5, &[0, 1]), row(5, &[1, 2]), row(5, &[3])],
        );
        let s1 = Subspace::from_mat(m.clone());
        let s2 = Subspace::from_rows(5, s1.rows().to_vec());
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 3);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let m = Mat::from_rows(4, vec![Row::zero(4); 3]);
        let k = left_kernel(&m);
        assert_eq!(k.dim(), 3);
    }

    #[test]
    fn solve_identity() {
        let m = Mat::identity(4);
        let b = row(4, &[1, 3]);
        let x = solve_left(&m, &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_reports_no_solution() {
        let m = Mat::from_rows(2, vec![row(2, &[0])]);
        assert!(solve_left(&m, &row(2, &[1])).is_none());
        assert!(solve_left(&m, &row(2, &[0])).is_some());
    }

    #[test]
    fn sum_and_intersection() {
        let u = Subspace::from_rows(4, vec![row(4, &[0]), row(4, &[1])]);
        let v = Subspace::from_rows(4, vec![row(4, &[1]), row(4, &[2])]);
        let s = u.sum(&v);
        assert_eq!(s.dim(), 3);
        let i = u.intersect(&v);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&row(4, &[1])));
    }

    #[test]
    fn preimage_of_subspace() {
        // map e0 -> f0, e1 -> f0 + f1, e2 -> 0
        let m = Mat::from_rows(2, vec![row(2, &[0]), row(2, &[0, 1]), Row::zero(2)]);
        let s = Subspace::from_rows(2, vec![row(2, &[0])]);
        let p = preimage(&m, &s);
        assert_eq!(p.dim(), 2);
        assert!(p.contains(&row(3, &[0])));
        assert!(p.contains(&row(3, &[2])));
        assert!(!p.contains(&row(3, &[1])));
    }
}
