//! Dense integer matrices and Smith normal form with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entries[r * self.cols + c])?;
            }
        }
        write!(f, "]")
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntegerMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntegerMatrix {
            rows,
            cols,
            entries: data.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Sub-matrix made of the given rows (in order).
    pub fn select_rows(&self, rows: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.entries[i * self.cols..(i + 1) * self.cols].clone_from_slice(self.row(r));
        }
        out
    }

    /// Sub-matrix made of the given columns (in order).
    pub fn select_cols(&self, cols: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.entries[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.entries[src * self.cols + c];
            if !s.is_zero() {
                let v = s * q;
                self.entries[dst * self.cols + c] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.entries[r * self.cols + src];
            if !s.is_zero() {
                let v = s * q;
                self.entries[r * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let e = &mut self.entries[r * self.cols + c];
            *e = -std::mem::take(e);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let e = &mut self.entries[r * self.cols + c];
            *e = -std::mem::take(e);
        }
    }
}

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal in Smith form.
///
/// The inverses of both transforms are carried along since homology
/// generators and class coordinates need them.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, followed by zeros up to
    /// `min(rows, cols)`.
    pub diag: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

struct SmithState {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl SmithState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += q row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
        self.u_inv.add_col_multiple(src, dst, &-q);
    }

    /// col[dst] += q col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
        self.v_inv.add_row_multiple(src, dst, &-q);
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    /// Smallest nonzero |entry| in the lower-right block starting at `t`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for r in t..self.a.rows {
            for c in t..self.a.cols {
                let e = self.a.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let mag = e.abs();
                if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                    best = Some((r, c, mag));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }
}

/// Smith normal form of `a` with unimodular transforms.
///
/// Pivot choice is the smallest nonzero absolute value in the remaining block,
/// ties broken by row-major position, so the transforms are reproducible.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut s = SmithState {
        a: a.clone(),
        u: IntegerMatrix::identity(rows),
        u_inv: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
        v_inv: IntegerMatrix::identity(cols),
    };
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let Some((pr, pc)) = s.smallest_in_block(t) else {
            break;
        };
        s.swap_rows(t, pr);
        s.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if s.a.get(r, t).is_zero() {
                    continue;
                }
                let q = s.a.get(r, t).div_floor(s.a.get(t, t));
                s.row_op(r, t, &-q);
                dirty |= !s.a.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                if s.a.get(t, c).is_zero() {
                    continue;
                }
                let q = s.a.get(t, c).div_floor(s.a.get(t, t));
                s.col_op(c, t, &-q);
                dirty |= !s.a.get(t, c).is_zero();
            }
            if dirty {
                // a remainder is now smaller than the pivot; move the smallest one in
                let mut best: Option<(bool, usize, BigInt)> = None;
                for r in t + 1..rows {
                    let e = s.a.get(r, t);
                    if !e.is_zero() && best.as_ref().is_none_or(|b| e.abs() < b.2) {
                        best = Some((true, r, e.abs()));
                    }
                }
                for c in t + 1..cols {
                    let e = s.a.get(t, c);
                    if !e.is_zero() && best.as_ref().is_none_or(|b| e.abs() < b.2) {
                        best = Some((false, c, e.abs()));
                    }
                }
                match best {
                    Some((true, r, _)) => s.swap_rows(t, r),
                    Some((false, c, _)) => s.swap_cols(t, c),
                    None => {}
                }
                continue;
            }
            // row and column t are clear; enforce divisibility on the rest of the block
            let p = s.a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&r| {
                (t + 1..cols).any(|c| !s.a.get(r, c).mod_floor(&p).is_zero())
            });
            match offender {
                Some(r) => s.row_op(t, r, &BigInt::one()),
                None => break,
            }
        }
        if s.a.get(t, t).is_negative() {
            s.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..n).map(|i| s.a.get(i, i).clone()).collect();
    SmithDecomposition {
        u: s.u,
        u_inv: s.u_inv,
        d: s.a,
        v: s.v,
        v_inv: s.v_inv,
        diag,
    }
}

/// Invariant factors as quotients of determinantal divisors (gcd of all k x k
/// minors). Exponential in the matrix size; a reference for small matrices.
pub fn invariant_factors_by_minors(a: &IntegerMatrix) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if n < k {
            return Vec::new();
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut factors = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=a.rows.min(a.cols) {
        let mut g = BigInt::zero();
        for rs in subsets(a.rows, k) {
            for cs in subsets(a.cols, k) {
                g = g.gcd(&a.select_rows(&rs).select_cols(&cs).determinant());
            }
        }
        if g.is_zero() {
            break;
        }
        factors.push(&g / &prev);
        prev = g;
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_i64(m: &IntegerMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .diag
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn two_by_two_example() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(diag_i64(&m), vec![2, 4]);
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(diag_i64(&IntegerMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(diag_i64(&IntegerMatrix::zeros(2, 3)), vec![0, 0]);
    }

    #[test]
    fn empty_dimensions() {
        let s = smith_normal_form(&IntegerMatrix::zeros(0, 4));
        assert!(s.diag.is_empty());
        assert_eq!(s.v.rows(), 4);
        let s = smith_normal_form(&IntegerMatrix::zeros(3, 0));
        assert_eq!(s.u.rows(), 3);
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn transforms_reconstruct() {
        let m = IntegerMatrix::from_rows(&[vec![0, 3, 6, 9], vec![4, 0, -2, 7], vec![12, 3, 0, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(3));
        assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(4));
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntegerMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(4));
        let m = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
    }
}
