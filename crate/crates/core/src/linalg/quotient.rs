use super::{zero_vector, Matrix, Subspace, Vector};
use crate::error::{Error, Result};
use crate::fields::Scalar;

/// Coordinates on `V/W` for subspaces `W ⊆ V ⊆ F^n`.
///
/// The quotient basis is formed by the basis vectors of `V` sitting at the
/// non-pivot columns of `W`'s echelon form written in `V`-coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    outer: Subspace,
    inner: Subspace,
    inner_rel: Subspace,
    complement: Vec<usize>,
}

impl Quotient {
    pub fn new(outer: &Subspace, inner: &Subspace) -> Result<Self> {
        let inner_rel = outer.relative(inner)?;
        let complement = inner_rel.complement_columns();
        Ok(Quotient {
            outer: outer.clone(),
            inner: inner.clone(),
            inner_rel,
            complement,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn outer(&self) -> &Subspace {
        &self.outer
    }

    pub fn inner(&self) -> &Subspace {
        &self.inner
    }

    /// Representative in `V` of a quotient coordinate vector.
    pub fn lift(&self, q: &[Scalar]) -> Vector {
        let mut rel = zero_vector(self.outer.field(), self.outer.dim());
        for (x, &c) in q.iter().zip(&self.complement) {
            rel[c] = x.clone();
        }
        self.outer.from_coordinates(&rel)
    }

    /// Quotient coordinates of `v ∈ V`; `None` when `v ∉ V`.
    pub fn project(&self, v: &[Scalar]) -> Option<Vector> {
        let rel = self.outer.coordinates(v)?;
        let red = self.inner_rel.reduce(&rel);
        Some(self.complement.iter().map(|&c| red[c].clone()).collect())
    }

    /// Image of a subspace `U` with `W ⊆ U ⊆ V` (or any `U ⊆ V`) in quotient coordinates.
    pub fn project_subspace(&self, u: &Subspace) -> Result<Subspace> {
        let rows: Option<Vec<Vector>> = u.basis().iter().map(|r| self.project(r)).collect();
        let rows = rows.ok_or_else(|| Error::BadParameters("subspace not inside the quotient numerator".into()))?;
        Ok(Subspace::span(self.outer.field(), self.dim(), rows))
    }

    /// Full preimage in `F^n` of a quotient subspace.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let lifted = s.basis().iter().map(|r| self.lift(r));
        Subspace::span(
            self.outer.field(),
            self.outer.ambient_dim(),
            lifted.chain(self.inner.basis().iter().cloned()),
        )
    }

    /// Matrix of the operator induced on `V/W` by `op` (acting on columns).
    pub fn induced(&self, op: &Matrix) -> Result<Matrix> {
        for w in self.inner.basis() {
            if !self.inner.contains_vector(&op.apply(w)) {
                return Err(Error::NotInvariant);
            }
        }
        let k = self.dim();
        let mut cols = Vec::with_capacity(k);
        for j in 0..k {
            let mut e = zero_vector(self.outer.field(), k);
            e[j] = self.outer.field().one();
            let image = op.apply(&self.lift(&e));
            cols.push(self.project(&image).ok_or(Error::NotInvariant)?);
        }
        Ok(Matrix::from_columns(self.outer.field(), k, &cols))
    }
}

/// Dimension of `V/W`, the induced operators and the coordinate maps.
pub fn quotient_and_induced(v: &Subspace, w: &Subspace, ops: &[Matrix]) -> Result<(usize, Vec<Matrix>, Quotient)> {
    let q = Quotient::new(v, w)?;
    let induced = ops.iter().map(|op| q.induced(op)).collect::<Result<Vec<_>>>()?;
    Ok((q.dim(), induced, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldSpec;
    use crate::linalg::unit_vector;

    #[test]
    fn shear_on_plane_mod_line() {
        let f = FieldSpec::Rationals;
        let v = Subspace::full(f, 2);
        let w = Subspace::span(f, 2, [unit_vector(f, 2, 0)]);
        let op = Matrix::from_rows(f, 2, vec![vec![f.one(), f.one()], vec![f.zero(), f.one()]]).unwrap();
        let (dim, induced, q) = quotient_and_induced(&v, &w, &[op.clone()]).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(induced[0], Matrix::identity(f, 1));
        // project ∘ lift = id
        let x = vec![f.from_int(7)];
        assert_eq!(q.project(&q.lift(&x)).unwrap(), x);
        // zero subspace: induced operator is the original one
        let (_, same, _) = quotient_and_induced(&v, &Subspace::zero(f, 2), &[op.clone()]).unwrap();
        assert_eq!(same[0], op);
    }

    #[test]
    fn non_invariant_operator_is_rejected() {
        let f = FieldSpec::Rationals;
        let v = Subspace::full(f, 2);
        let w = Subspace::span(f, 2, [unit_vector(f, 2, 0)]);
        let swap = Matrix::from_rows(f, 2, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]).unwrap();
        assert_eq!(quotient_and_induced(&v, &w, &[swap]).unwrap_err(), Error::NotInvariant);
    }
}
