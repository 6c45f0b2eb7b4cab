//! Exact dense linear algebra over any [`FieldSpec`].

mod quotient;
mod subspace;

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};

pub use quotient::{quotient_and_induced, Quotient};
pub use subspace::Subspace;

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `y += c·x`
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(c * xi);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a[0].field().zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Gauss–Jordan elimination of `rows` (each of length `ncols`). Returns the
/// nonzero rows of the reduced row-echelon form and the pivot columns.
/// Among admissible pivots the one with the smallest bit size is taken.
pub fn row_reduce(mut rows: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].size_hint());
        let Some(best) = best else { continue };
        rows.swap(r, best);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -&row[c];
                axpy(&mut row[c..], &f, &pivot_row[c..]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Kernel basis of the map whose RREF rows/pivots are given.
fn kernel_from_rref(field: FieldSpec, rref: &[Vector], pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(field, ncols);
        v[free] = field.one();
        for (row, &p) in rref.iter().zip(pivots) {
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        out.push(v);
    }
    out
}

/// Normalized representatives (first nonzero coordinate 1) of the lines of
/// `GF(p)^k`.
pub struct ProjectivePoints {
    field: FieldSpec,
    p: u32,
    k: usize,
    lead: usize,
    digits: Vec<u32>,
}

impl ProjectivePoints {
    pub fn new(field: FieldSpec, k: usize) -> Self {
        let p = field.order().expect("finite field");
        ProjectivePoints {
            field,
            p,
            k,
            lead: 0,
            digits: vec![0; k.saturating_sub(1)],
        }
    }

    pub fn count(p: u32, k: usize) -> u64 {
        (0..k).map(|i| (p as u64).pow(i as u32)).sum()
    }
}

impl Iterator for ProjectivePoints {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        if self.lead >= self.k {
            return None;
        }
        let mut v = zero_vector(self.field, self.k);
        v[self.lead] = self.field.one();
        for (slot, &d) in v[self.lead + 1..].iter_mut().zip(&self.digits) {
            *slot = self.field.from_int(d as i64);
        }
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.lead += 1;
                self.digits = vec![0; self.k.saturating_sub(self.lead + 1)];
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.p {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::AmbientMismatch(row.len(), cols));
            }
            if let Some(x) = row.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field, x.field()));
            }
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, nrows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn scalar_value(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(self.field.zero());
        }
        let c = self.get(0, 0).clone();
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(r, k);
                let ok = if r == k { *x == c } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn rank(&self) -> usize {
        row_reduce(self.rows(), self.cols).1.len()
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let (rref, pivots) = row_reduce(self.rows(), self.cols);
        kernel_from_rref(self.field, &rref, &pivots, self.cols)
    }

    /// One solution of `self·x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        let aug: Vec<Vector> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let (rref, pivots) = row_reduce(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.field, self.cols);
        for (row, &p) in rref.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    /// Monic minimal polynomial, coefficients from degree 0 upward.
    pub fn min_poly(&self) -> Vector {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let mut powers: Vec<Vector> = vec![Matrix::identity(self.field, n).data];
        let mut current = Matrix::identity(self.field, n);
        loop {
            current = current.mul(self);
            let a = Matrix::from_columns(self.field, n * n, &powers);
            if let Some(c) = a.solve(&current.data) {
                let mut poly: Vector = c.iter().map(|x| -x).collect();
                poly.push(self.field.one());
                return poly;
            }
            powers.push(current.data.clone());
        }
    }
}

pub struct Echelon {
    pub rref: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Kernel basis vectors as rows.
    pub kernel: Matrix,
}

/// Reduced row-echelon form, rank and a kernel basis.
pub fn echelonize(m: &Matrix) -> Echelon {
    let (rref, pivots) = row_reduce(m.rows(), m.ncols());
    let kernel = kernel_from_rref(m.field(), &rref, &pivots, m.ncols());
    let rank = pivots.len();
    let mut full = rref;
    while full.len() < m.nrows() {
        full.push(zero_vector(m.field(), m.ncols()));
    }
    Echelon {
        rref: Matrix::from_rows(m.field(), m.ncols(), full).expect("shape"),
        rank,
        pivots,
        kernel: Matrix::from_rows(m.field(), m.ncols(), kernel).expect("shape"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix {
        let f = FieldSpec::Rationals;
        let cols = rows[0].len();
        Matrix::from_rows(f, cols, rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let e = echelonize(&Matrix::identity(FieldSpec::Rationals, 3));
        assert_eq!(e.rank, 3);
        assert_eq!(e.kernel.nrows(), 0);
    }

    #[test]
    fn rank_one_kernel() {
        let e = echelonize(&qm(&[&[1, 2], &[2, 4]]));
        assert_eq!(e.rank, 1);
        let f = FieldSpec::Rationals;
        assert_eq!(e.kernel.rows(), vec![vec![f.from_int(-2), f.one()]]);
    }

    #[test]
    fn gf2_kernel() {
        let f = FieldSpec::prime(2).unwrap();
        let m = Matrix::from_rows(f, 2, vec![vec![f.one(), f.one()], vec![f.one(), f.one()]]).unwrap();
        let e = echelonize(&m);
        assert_eq!(e.rank, 1);
        assert_eq!(e.kernel.rows(), vec![vec![f.one(), f.one()]]);
    }

    #[test]
    fn projective_point_count() {
        let f = FieldSpec::prime(3).unwrap();
        let pts: Vec<Vector> = ProjectivePoints::new(f, 3).collect();
        assert_eq!(pts.len(), 13);
        assert_eq!(ProjectivePoints::count(3, 3), 13);
        let distinct: std::collections::BTreeSet<_> = pts.iter().cloned().collect();
        assert_eq!(distinct.len(), 13);
    }

    #[test]
    fn solve_and_min_poly() {
        let m = qm(&[&[2, 1], &[0, 2]]);
        let x = m.solve(&[FieldSpec::Rationals.from_int(3), FieldSpec::Rationals.from_int(4)]).unwrap();
        assert_eq!(m.apply(&x), vec![FieldSpec::Rationals.from_int(3), FieldSpec::Rationals.from_int(4)]);
        // (x − 2)²
        let f = FieldSpec::Rationals;
        assert_eq!(m.min_poly(), vec![f.from_int(4), f.from_int(-4), f.one()]);
        assert_eq!(Matrix::identity(f, 3).scale(&f.from_int(5)).min_poly(), vec![f.from_int(-5), f.one()]);
        assert!(qm(&[&[1, 1], &[1, 1]]).solve(&[f.one(), f.zero()]).is_none());
    }
}
