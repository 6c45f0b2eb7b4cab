use std::fmt;

use super::{is_zero_vector, kernel_from_rref, row_reduce, zero_vector, Vector};
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};

/// A subspace of `F^n`, stored as its unique reduced row-echelon basis.
/// Equality and hashing are structural on that basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "span[{}]", rows.join(", "))
    }
}

impl Subspace {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace {
            field,
            ambient: n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Self::span(field, n, (0..n).map(|i| super::unit_vector(field, n, i)))
    }

    /// Span of vectors of length `n`. Panics on a length mismatch.
    pub fn span(field: FieldSpec, n: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let rows: Vec<Vector> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), n, "vector length"))
            .filter(|v| !is_zero_vector(v))
            .collect();
        let (rows, pivots) = row_reduce(rows, n);
        Subspace {
            field,
            ambient: n,
            rows,
            pivots,
        }
    }

    pub fn try_span(field: FieldSpec, n: usize, vectors: Vec<Vector>) -> Result<Self> {
        for v in &vectors {
            if v.len() != n {
                return Err(Error::AmbientMismatch(v.len(), n));
            }
            if let Some(x) = v.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field, x.field()));
            }
        }
        Ok(Self::span(field, n, vectors))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Remainder of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = -&w[p];
                super::axpy(&mut w, &c, row);
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Coordinates of `v` in the RREF basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_coordinates(&self, c: &[Scalar]) -> Vector {
        let mut v = zero_vector(self.field, self.ambient);
        for (ci, row) in c.iter().zip(&self.rows) {
            super::axpy(&mut v, ci, row);
        }
        v
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(other.dim() <= self.dim() && other.rows.iter().all(|r| self.contains_vector(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::span(
            self.field,
            self.ambient,
            self.rows.iter().chain(&other.rows).cloned(),
        ))
    }

    /// Zassenhaus: reduce `[a | a]` and `[b | 0]`; rows with zero left half
    /// span the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for a in &self.rows {
            let mut r = a.clone();
            r.extend(a.iter().cloned());
            rows.push(r);
        }
        for b in &other.rows {
            let mut r = b.clone();
            r.extend(zero_vector(self.field, n));
            rows.push(r);
        }
        let (rref, pivots) = row_reduce(rows, 2 * n);
        let inter = rref
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r[n..].to_vec());
        Ok(Subspace::span(self.field, n, inter))
    }

    /// Coordinates not carrying a pivot; unit vectors there span a complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Linear functionals vanishing exactly on this subspace.
    pub fn annihilator(&self) -> Vec<Vector> {
        kernel_from_rref(self.field, &self.rows, &self.pivots, self.ambient)
    }

    /// Re-expresses a subspace contained in `self` in coordinates of `self`'s basis.
    pub fn relative(&self, inner: &Subspace) -> Result<Subspace> {
        self.check(inner)?;
        let coords: Option<Vec<Vector>> = inner.rows.iter().map(|r| self.coordinates(r)).collect();
        let coords = coords.ok_or_else(|| Error::BadParameters("subspace not contained in ambient subspace".into()))?;
        Ok(Subspace::span(self.field, self.dim(), coords))
    }

    /// Inverse of [`Subspace::relative`].
    pub fn absolute(&self, relative: &Subspace) -> Subspace {
        assert_eq!(relative.ambient, self.dim());
        Subspace::span(
            self.field,
            self.ambient,
            relative.rows.iter().map(|c| self.from_coordinates(c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vector;

    #[test]
    fn sum_and_intersection_of_axes() {
        let f = FieldSpec::Rationals;
        let a = Subspace::span(f, 3, [unit_vector(f, 3, 0)]);
        let b = Subspace::span(f, 3, [unit_vector(f, 3, 1)]);
        let s = a.sum(&b).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert!(s.contains(&a).unwrap());
        assert_eq!(
            a.sum(&Subspace::zero(f, 4)),
            Err(Error::AmbientMismatch(3, 4))
        );
    }

    #[test]
    fn modular_law_in_gf2_4() {
        let f = FieldSpec::prime(2).unwrap();
        let v = |xs: [i64; 4]| xs.iter().map(|&x| f.from_int(x)).collect::<Vector>();
        let a = Subspace::span(f, 4, [v([1, 1, 0, 0]), v([0, 0, 1, 0])]);
        let b = Subspace::span(f, 4, [v([0, 1, 1, 0]), v([1, 0, 0, 0])]);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        // e1+e2+e3 = (e1+e2) + e3 = (e2+e3) + e1 lies in both
        assert_eq!(i, Subspace::span(f, 4, [v([1, 1, 1, 0])]));
    }

    #[test]
    fn rref_is_canonical() {
        let f = FieldSpec::Rationals;
        let v = |xs: [i64; 3]| xs.iter().map(|&x| f.from_int(x)).collect::<Vector>();
        let a = Subspace::span(f, 3, [v([1, 2, 3]), v([4, 5, 6])]);
        let b = Subspace::span(f, 3, [v([5, 7, 9]), v([3, 3, 3]), v([0, 0, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.annihilator().len(), 1);
        let ann = &a.annihilator()[0];
        for r in a.basis() {
            assert!(crate::linalg::dot(ann, r).is_zero());
        }
    }
}
