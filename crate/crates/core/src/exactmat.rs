//! Dense exact linear algebra over a prime field `F_p`.
//!
//! Every rank, solve and kernel computation in the crate goes through
//! [`Matrix`]. Entries are stored as residues `0 <= x < p` in row-major order.
//! Pivoting is deterministic: the first nonzero entry scanning rows from the
//! top within the leftmost column that still has one.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Default characteristic used when nothing else is configured.
pub const DEFAULT_PRIME: u32 = 32003;

/// The prime field `F_p` for an odd prime `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    let n64 = u64::from(n);
    while d * d <= n64 {
        if n64 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    /// Validates that `p` is an odd prime below `2^31`.
    pub fn new(p: u32) -> Result<Self> {
        if p == 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotAnOddPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in {:?}", self);
        self.pow(a, u64::from(self.p) - 2)
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.p)) as u32
    }

    /// Symmetric lift into `(-p/2, p/2]`, used only for display.
    pub fn lift(self, x: u32) -> i64 {
        if x > self.p / 2 {
            i64::from(x) - i64::from(self.p)
        } else {
            i64::from(x)
        }
    }
}

/// A dense `rows x cols` matrix over a [`PrimeField`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.field.lift(self.get(r, c)))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (rows.len(), cols),
                right: (rows.len(), 0),
            });
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| field.reduce(x)))
            .collect();
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn trace(&self) -> u32 {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = self.field;
        Self {
            data: self.data.iter().map(|&x| f.mul(x, s)).collect(),
            ..self.clone()
        }
    }

    /// `self + s * other`, shapes must agree.
    pub fn add_scaled(&self, other: &Matrix, s: u32) -> Self {
        assert_eq!(self.shape(), other.shape(), "add_scaled shape mismatch");
        let f = self.field;
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, f.mul(s, b)))
                .collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Matrix) -> Self {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        self.add_scaled(other, self.field.p() - 1)
    }

    /// Matrix product; panics on an inner dimension mismatch (internal use).
    pub fn mul(&self, other: &Matrix) -> Self {
        self.try_mul(other).expect("matrix product dimension mismatch")
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let p = u64::from(self.field.p());
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = u64::from(self.get(r, k));
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (c, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        acc[c] = (acc[c] + a * u64::from(b)) % p;
                    }
                }
            }
            for (c, &x) in acc.iter().enumerate() {
                out.set(r, c, x as u32);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Sub-block with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = u64::from(f.p());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for c in 0..self.cols {
                    self.data.swap(piv * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col));
            for c in col..self.cols {
                let x = self.get(row, c);
                self.set(row, c, f.mul(x, inv));
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                let neg = u64::from(f.neg(factor));
                for c in col..self.cols {
                    let pv = self.data[row * self.cols + c];
                    if pv != 0 {
                        let idx = r * self.cols + c;
                        self.data[idx] =
                            ((u64::from(self.data[idx]) + neg * u64::from(pv)) % p) as u32;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space: one vector per free column, in column
    /// order, with that free variable set to 1 and the others to 0.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Kernel basis packed as the columns of a `cols x nullity` matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.cols, &self.kernel_basis())
    }

    /// Finds some `X` with `self * X == b`, or `Ok(None)` if none exists.
    /// Free variables are set to zero.
    pub fn solve_right(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch {
                op: "solve_right",
                left: self.shape(),
                right: b.shape(),
            });
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            if pc >= self.cols {
                return Ok(None);
            }
            for c in 0..b.cols {
                x.set(pc, c, r.get(i, self.cols + c));
            }
        }
        Ok(Some(x))
    }

    /// Basis (as columns) of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Matrix {
        let (_, pivots) = self.rref();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, &pivots)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve_right(&Matrix::identity(self.field, self.rows))
            .ok()
            .flatten()
            .filter(|x| self.mul(x) == Matrix::identity(self.field, self.rows))
    }

    /// `self^e` for a square matrix.
    pub fn pow(&self, mut e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Characteristic polynomial `det(x I - self)` as coefficients, lowest
    /// degree first (monic, length `n + 1`). Hessenberg reduction.
    pub fn charpoly(&self) -> Vec<u32> {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg form
        for k in 0..n.saturating_sub(2) {
            let Some(piv) = (k + 1..n).find(|&r| h.get(r, k) != 0) else {
                continue;
            };
            if piv != k + 1 {
                for c in 0..n {
                    let (a, b) = (h.get(piv, c), h.get(k + 1, c));
                    h.set(piv, c, b);
                    h.set(k + 1, c, a);
                }
                for r in 0..n {
                    let (a, b) = (h.get(r, piv), h.get(r, k + 1));
                    h.set(r, piv, b);
                    h.set(r, k + 1, a);
                }
            }
            let inv = f.inv(h.get(k + 1, k));
            for r in k + 2..n {
                let t = f.mul(h.get(r, k), inv);
                if t == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(r, c), f.mul(t, h.get(k + 1, c)));
                    h.set(r, c, v);
                }
                for rr in 0..n {
                    let v = f.add(h.get(rr, k + 1), f.mul(t, h.get(rr, r)));
                    h.set(rr, k + 1, v);
                }
            }
        }
        // p_m(x) = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} prod_{j} h_{j,j-1} p_{m-i-1}
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for m in 0..n {
            let mut next = vec![0u32; m + 2];
            let prev = &polys[m];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(h.get(m, m), c));
            }
            let mut prod = 1u32;
            for i in 1..=m {
                prod = f.mul(prod, h.get(m - i + 1, m - i));
                let coef = f.mul(h.get(m - i, m), prod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[m - i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap_or_else(|| vec![1])
    }
}

/// Determinant of a small square integer matrix (fraction-free Bareiss).
pub fn integer_determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
