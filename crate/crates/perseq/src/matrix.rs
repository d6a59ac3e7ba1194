//! Dense integer matrices with exact (arbitrary-precision) arithmetic, plus the
//! two normal forms everything else is built on: Smith and column Hermite.
//!
//! Entries are [`BigInt`]; coefficient growth during elimination is real even on
//! small inputs, so fixed-width integers are not an option here.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over the integers.
///
/// Zero-dimensional shapes (0 rows and/or 0 columns) are legal everywhere and
/// behave as rank-0 objects.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from rows of machine integers; rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        (0..self.cols).map(|j| self.column(j))
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.at(k, j);
                    let cur = out.at(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        IntMatrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                rhs.at(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, below: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, below.cols, "column mismatch in vstack");
        IntMatrix::from_fn(self.rows + below.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                below.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(idx.len(), self.cols, |i, j| self.at(idx[i], j).clone())
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
        for c in cols {
            assert_eq!(c.len(), rows, "column length mismatch");
        }
        IntMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            self.set(r, j, v);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// row[dst] += q * row[src]
    fn row_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(dst, j) + q * self.at(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += q * col[src]
    fn col_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, dst) + q * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    /// Column Hermite normal form of the column lattice, together with a
    /// unimodular `V` such that `self * V == hnf`. Pivot rows strictly
    /// increase, pivots are positive, entries left of a pivot lie in
    /// `[0, pivot)`, zero columns are trailing. The result depends only on the
    /// column span, which is what makes lattice equality a representation
    /// equality downstream.
    pub fn hermite_with_transform(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut v = IntMatrix::identity(self.cols);
        let mut t = 0usize; // next pivot column
        for r in 0..self.rows {
            if t == self.cols {
                break;
            }
            // Euclidean reduction across row r, columns >= t.
            loop {
                let mut best: Option<(BigInt, usize)> = None;
                for j in t..self.cols {
                    let e = h.at(r, j);
                    if e.is_zero() {
                        continue;
                    }
                    let a = e.abs();
                    match &best {
                        Some((b, _)) if *b <= a => {}
                        _ => best = Some((a, j)),
                    }
                }
                let Some((_, jstar)) = best else { break };
                h.swap_cols(t, jstar);
                v.swap_cols(t, jstar);
                let mut clean = true;
                for j in t + 1..self.cols {
                    if h.at(r, j).is_zero() {
                        continue;
                    }
                    let q = h.at(r, j) / h.at(r, t);
                    let nq = -q;
                    h.col_addmul(j, t, &nq);
                    v.col_addmul(j, t, &nq);
                    if !h.at(r, j).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if h.at(r, t).is_zero() {
                continue; // no pivot in this row
            }
            if h.at(r, t).is_negative() {
                h.negate_col(t);
                v.negate_col(t);
            }
            // Reduce entries left of the pivot into [0, pivot).
            let pivot = h.at(r, t).clone();
            for j in 0..t {
                if h.at(r, j).is_zero() {
                    continue;
                }
                let q = h.at(r, j).div_floor(&pivot);
                let nq = -q;
                h.col_addmul(j, t, &nq);
                v.col_addmul(j, t, &nq);
            }
            t += 1;
        }
        (h, v)
    }

    /// Column Hermite normal form (idempotent, span-preserving).
    pub fn hermite(&self) -> IntMatrix {
        self.hermite_with_transform().0
    }

    /// A saturated basis of `{x : self * x = 0}`, as matrix columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        let (h, v) = self.hermite_with_transform();
        let zero_cols: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).all(|i| h.at(i, j).is_zero()))
            .collect();
        v.select_columns(&zero_cols)
    }

    /// Rank of the column lattice (= rank over the rationals).
    pub fn rank(&self) -> usize {
        let h = self.hermite();
        (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !h.at(i, j).is_zero()))
            .count()
    }

    /// Smith normal form with both transforms and their inverses.
    pub fn smith(&self) -> SmithDecomposition {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut u_inv = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let mut v_inv = IntMatrix::identity(self.cols);

        // Row op helpers keep u = (ops applied to I) and u_inv = inverse.
        macro_rules! row_swap {
            ($a:expr, $b:expr) => {{
                d.swap_rows($a, $b);
                u.swap_rows($a, $b);
                u_inv.swap_cols($a, $b);
            }};
        }
        macro_rules! row_add {
            ($dst:expr, $src:expr, $q:expr) => {{
                let q: BigInt = $q;
                d.row_addmul($dst, $src, &q);
                u.row_addmul($dst, $src, &q);
                let nq = -q;
                u_inv.col_addmul($src, $dst, &nq);
            }};
        }
        macro_rules! col_swap {
            ($a:expr, $b:expr) => {{
                d.swap_cols($a, $b);
                v.swap_cols($a, $b);
                v_inv.swap_rows($a, $b);
            }};
        }
        macro_rules! col_add {
            ($dst:expr, $src:expr, $q:expr) => {{
                let q: BigInt = $q;
                d.col_addmul($dst, $src, &q);
                v.col_addmul($dst, $src, &q);
                let nq = -q;
                v_inv.row_addmul($src, $dst, &nq);
            }};
        }

        let mut t = 0usize;
        while t < self.rows.min(self.cols) {
            // Deterministic pivot: minimal |entry|, ties by lowest (row, col).
            let pick = |d: &IntMatrix| -> Option<(usize, usize)> {
                let mut best: Option<(BigInt, usize, usize)> = None;
                for i in t..d.rows {
                    for j in t..d.cols {
                        let e = d.at(i, j);
                        if e.is_zero() {
                            continue;
                        }
                        let a = e.abs();
                        match &best {
                            Some((b, _, _)) if *b <= a => {}
                            _ => best = Some((a, i, j)),
                        }
                    }
                }
                best.map(|(_, i, j)| (i, j))
            };
            let Some((pi, pj)) = pick(&d) else { break };
            row_swap!(t, pi);
            col_swap!(t, pj);
            loop {
                if d.at(t, t).is_negative() {
                    d.negate_row(t);
                    u.negate_row(t);
                    u_inv.negate_col(t);
                }
                let pivot = d.at(t, t).clone();
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if d.at(i, t).is_zero() {
                        continue;
                    }
                    let q = d.at(i, t).div_floor(&pivot);
                    row_add!(i, t, -q);
                    if !d.at(i, t).is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if d.at(t, j).is_zero() {
                        continue;
                    }
                    let q = d.at(t, j).div_floor(&pivot);
                    col_add!(j, t, -q);
                    if !d.at(t, j).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // A remainder smaller than the pivot appeared; re-pivot.
                    let (pi, pj) = pick(&d).expect("dirty state implies a nonzero entry");
                    row_swap!(t, pi);
                    col_swap!(t, pj);
                    continue;
                }
                // Row and column t are clear; enforce divisibility of the rest.
                let mut fix: Option<usize> = None;
                'scan: for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !d.at(i, j).mod_floor(&pivot).is_zero() {
                            fix = Some(i);
                            break 'scan;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        row_add!(t, i, BigInt::one());
                    }
                    None => break,
                }
            }
            t += 1;
        }

        SmithDecomposition {
            u,
            u_inv,
            d,
            v,
            v_inv,
        }
    }

    /// One exact integer solution of `self * x = b`, if any exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let snf = self.smith();
        let y = snf.u.mul_vec(b);
        let mut x = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            let di = if i < self.cols {
                snf.d.at(i, i).clone()
            } else {
                BigInt::zero()
            };
            if di.is_zero() {
                if !y[i].is_zero() {
                    return None;
                }
            } else {
                let (q, r) = y[i].div_rem(&di);
                if !r.is_zero() {
                    return None;
                }
                x[i] = q;
            }
        }
        Some(snf.v.mul_vec(&x))
    }

    /// |det| of a square matrix via the Smith form diagonal.
    pub fn abs_det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let snf = self.smith();
        let mut p = BigInt::one();
        for i in 0..self.rows {
            p *= snf.d.at(i, i);
        }
        p.abs()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` a divisor chain diagonal
/// (positive entries, each dividing the next, zeros trailing).
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries, including trailing zeros, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.at(i, i).clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn diag_i64(m: &IntMatrix) -> Vec<i64> {
        (0..m.rows().min(m.cols()))
            .map(|i| i64::try_from(m.at(i, i).clone()).unwrap())
            .collect()
    }

    #[test]
    fn smith_identity() {
        let a = IntMatrix::identity(3);
        let s = a.smith();
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn smith_diag_2_3() {
        // Independent hand reduction: [[2,0],[0,3]] has invariant factors 1, 6.
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = a.smith();
        assert_eq!(diag_i64(&s.d), vec![1, 6]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }

    #[test]
    fn smith_zero_matrix() {
        let a = IntMatrix::zeros(3, 2);
        let s = a.smith();
        assert!(s.d.is_zero());
    }

    #[test]
    fn smith_properties_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let rows = rng.gen_range(0..5);
            let cols = rng.gen_range(0..5);
            let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
            let s = a.smith();
            assert_eq!(s.u.mul(&a).mul(&s.v), s.d, "UAV = D");
            assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(rows));
            assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(cols));
            assert_eq!(s.u.abs_det(), BigInt::one(), "U unimodular");
            assert_eq!(s.v.abs_det(), BigInt::one(), "V unimodular");
            let diag = s.diagonal();
            let mut seen_zero = false;
            for w in 0..diag.len() {
                assert!(!diag[w].is_negative());
                if diag[w].is_zero() {
                    seen_zero = true;
                } else {
                    assert!(!seen_zero, "zeros must trail");
                    if w + 1 < diag.len() && !diag[w + 1].is_zero() {
                        assert!(diag[w + 1].mod_floor(&diag[w]).is_zero(), "divisor chain");
                    }
                }
            }
            for i in 0..rows.min(cols) {
                for j in 0..cols.min(rows) {
                    if i != j && i < s.d.rows() && j < s.d.cols() {
                        assert!(s.d.at(i, j).is_zero(), "off-diagonal zero");
                    }
                }
            }
        }
    }

    #[test]
    fn hermite_identity_and_signs() {
        let id = IntMatrix::identity(4);
        assert_eq!(id.hermite(), id);
        let a = IntMatrix::from_rows(&[vec![2], vec![4]]);
        let b = IntMatrix::from_rows(&[vec![-2], vec![-4]]);
        assert_eq!(a.hermite(), b.hermite());
    }

    #[test]
    fn hermite_rank_two_span() {
        // Columns (1,0),(0,1),(1,1) span all of Z^2; enumerate small
        // combinations of the HNF columns to confirm the span.
        let a = IntMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let h = a.hermite();
        let nz: Vec<usize> = (0..h.cols())
            .filter(|&j| !h.column(j).iter().all(|e| e.is_zero()))
            .collect();
        assert_eq!(nz.len(), 2);
        let c0 = h.column(nz[0]);
        let c1 = h.column(nz[1]);
        let mut hit = std::collections::HashSet::new();
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                let v = (
                    BigInt::from(x) * &c0[0] + BigInt::from(y) * &c1[0],
                    BigInt::from(x) * &c0[1] + BigInt::from(y) * &c1[1],
                );
                hit.insert(v);
            }
        }
        assert!(hit.contains(&(BigInt::one(), BigInt::zero())));
        assert!(hit.contains(&(BigInt::zero(), BigInt::one())));
    }

    #[test]
    fn hermite_idempotent_and_span_invariant_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-6i64..=6)));
            let h = a.hermite();
            assert_eq!(h.hermite(), h, "idempotent");
            // Random unimodular column operations preserve the HNF.
            let mut b = a.clone();
            for _ in 0..6 {
                let x = rng.gen_range(0..cols);
                let y = rng.gen_range(0..cols);
                if x != y {
                    let q = BigInt::from(rng.gen_range(-3i64..=3));
                    b.col_addmul(x, y, &q);
                }
            }
            assert_eq!(b.hermite(), h, "span-preserving ops leave HNF fixed");
        }
    }

    #[test]
    fn kernel_and_image_basics() {
        // The two boundary matrices of the three-group example complex.
        let d1 = IntMatrix::from_rows(&[vec![1, 0]]);
        let k = d1.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(k.at(0, 0).is_zero());
        assert_eq!(k.at(1, 0).abs(), BigInt::one());

        let inv = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(inv.kernel_basis().cols(), 0);
        assert_eq!(IntMatrix::zeros(2, 3).kernel_basis().cols(), 3);
    }

    #[test]
    fn kernel_maps_to_zero_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let rows = rng.gen_range(0..5);
            let cols = rng.gen_range(0..5);
            let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-5i64..=5)));
            let k = a.kernel_basis();
            if k.cols() > 0 {
                assert!(a.mul(&k).is_zero());
            }
            assert_eq!(k.rank(), k.cols(), "kernel basis is independent");
        }
    }

    #[test]
    fn solve_exact() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let x = a
            .solve(&[BigInt::from(4), BigInt::from(9)])
            .expect("solvable");
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(a.solve(&[BigInt::from(1), BigInt::zero()]).is_none());
        // Underdetermined systems still produce one valid solution.
        let b = IntMatrix::from_rows(&[vec![1, 2, 3]]);
        let x = b.solve(&[BigInt::from(7)]).expect("solvable");
        assert_eq!(b.mul_vec(&x), vec![BigInt::from(7)]);
    }
}
