use crate::error::{Error, Result};
use crate::fields::{roots_in_field, FieldSpec};
use crate::linalg::{Matrix, Subspace, Vector};

/// Outcome of the irreducibility test, with a witness when reducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Lines `Fv` with `A v ∈ Fv` for every operator, as a list of common
/// eigenspaces (possibly empty).
fn common_eigenspaces(field: FieldSpec, d: usize, ops: &[Matrix]) -> Result<Vec<Subspace>> {
    let mut spaces = vec![Subspace::full(field, d)];
    for a in ops {
        if a.scalar_value().is_some() {
            continue;
        }
        let mut next = Vec::new();
        let roots = roots_in_field(&a.min_poly())?;
        for lambda in roots {
            let shifted = a.sub(&Matrix::identity(field, d).scale(&lambda));
            let ker = Subspace::span(field, d, shifted.kernel());
            for e in &spaces {
                let meet = e.intersect(&ker)?;
                if !meet.is_zero() {
                    next.push(meet);
                }
            }
        }
        spaces = next;
        if spaces.is_empty() {
            break;
        }
    }
    Ok(spaces)
}

/// Irreducibility of `F^d` (d ≤ 3) under the given operators: a reducible
/// module of dimension ≤ 3 has an invariant line or an invariant plane, and
/// invariant planes are kernels of common eigenvectors of the transposes.
pub fn irreducible_module(field: FieldSpec, d: usize, action: &[Matrix]) -> Result<Irreducibility> {
    if d > 3 {
        return Err(Error::DimensionOutOfRange(d));
    }
    if d <= 1 {
        return Ok(Irreducibility::Irreducible);
    }
    if let Some(e) = common_eigenspaces(field, d, action)?.first() {
        return Ok(Irreducibility::Reducible(Subspace::span(field, d, [e.basis()[0].clone()])));
    }
    if d == 3 {
        let transposed: Vec<Matrix> = action.iter().map(Matrix::transpose).collect();
        if let Some(e) = common_eigenspaces(field, d, &transposed)?.first() {
            let phi = Matrix::from_rows(field, d, vec![e.basis()[0].clone()])?;
            return Ok(Irreducibility::Reducible(Subspace::span(field, d, phi.kernel())));
        }
    }
    Ok(Irreducibility::Irreducible)
}

/// Smallest invariant subspace containing `v`.
pub fn spin(field: FieldSpec, d: usize, ops: &[Matrix], v: &Vector) -> Subspace {
    let mut cur = Subspace::span(field, d, [v.clone()]);
    loop {
        let mut vs: Vec<Vector> = cur.basis().to_vec();
        for a in ops {
            for b in cur.basis() {
                vs.push(a.apply(b));
            }
        }
        let next = Subspace::span(field, d, vs);
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

fn candidate_vectors(field: FieldSpec, d: usize) -> Vec<Vector> {
    let e = |i: usize| crate::linalg::unit_vector(field, d, i);
    let mut out: Vec<Vector> = (0..d).map(e).collect();
    for i in 0..d {
        for j in i + 1..d {
            out.push(crate::linalg::add_vectors(&e(i), &e(j)));
        }
    }
    out
}

/// Operators induced on an invariant subspace `w` of `F^d`, in the
/// coordinates of its echelon basis.
pub fn restrict_ops(ops: &[Matrix], w: &Subspace) -> Result<Vec<Matrix>> {
    let k = w.dim();
    ops.iter()
        .map(|a| {
            let cols = w
                .basis()
                .iter()
                .map(|b| w.coordinates(&a.apply(b)).ok_or(Error::NotInvariant))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(w.field(), k, &cols))
        })
        .collect()
}

/// A minimal nonzero invariant subspace of the invariant subspace `w`,
/// certified irreducible. Fails as indeterminate when a candidate of
/// dimension above 3 cannot be split by spinning.
pub fn minimal_submodule(ops: &[Matrix], w: &Subspace) -> Result<Subspace> {
    let field = w.field();
    let mut cur = w.clone();
    loop {
        let local = restrict_ops(ops, &cur)?;
        let k = cur.dim();
        if k <= 3 {
            match irreducible_module(field, k, &local)? {
                Irreducibility::Irreducible => return Ok(cur),
                Irreducibility::Reducible(sub) => {
                    cur = cur.absolute(&sub);
                    continue;
                }
            }
        }
        let mut best: Option<Subspace> = None;
        for v in candidate_vectors(field, k) {
            let s = spin(field, k, &local, &v);
            if s.dim() < k && best.as_ref().map_or(true, |b| s.dim() < b.dim()) {
                best = Some(s);
            }
        }
        if best.is_none() {
            let transposed: Vec<Matrix> = local.iter().map(Matrix::transpose).collect();
            for v in candidate_vectors(field, k) {
                let s = spin(field, k, &transposed, &v);
                if s.dim() < k {
                    let m = Matrix::from_rows(field, k, s.basis().to_vec())?;
                    best = Some(Subspace::span(field, k, m.kernel()));
                    break;
                }
            }
        }
        match best {
            Some(sub) => cur = cur.absolute(&sub),
            None => {
                return Err(Error::Indeterminate(format!(
                    "cannot decide irreducibility of a module of dimension {k}"
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(f, rows[0].len(), rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rotation_is_irreducible_over_q_only() {
        let q = FieldSpec::Rationals;
        let rot = m(q, &[&[0, -1], &[1, 0]]);
        assert!(irreducible_module(q, 2, &[rot]).unwrap().is_irreducible());
        let g = FieldSpec::prime(5).unwrap();
        let rot5 = m(g, &[&[0, -1], &[1, 0]]);
        assert!(!irreducible_module(g, 2, &[rot5]).unwrap().is_irreducible());
    }

    #[test]
    fn identity_is_reducible() {
        let q = FieldSpec::Rationals;
        let r = irreducible_module(q, 2, &[Matrix::identity(q, 2)]).unwrap();
        assert!(matches!(r, Irreducibility::Reducible(ref s) if s.dim() == 1));
        assert_eq!(irreducible_module(q, 4, &[]), Err(Error::DimensionOutOfRange(4)));
    }

    #[test]
    fn invariant_plane_found_through_transpose() {
        // upper triangular action with irreducible 2-dim quotient on top
        let q = FieldSpec::Rationals;
        let a = m(q, &[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let b = m(q, &[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        // span(e1, e2) is invariant under a and b; e3 is not an eigenvector of b? it maps to e1.
        let r = irreducible_module(q, 3, &[a.clone(), b.clone()]).unwrap();
        let Irreducibility::Reducible(w) = r else { panic!("expected reducible") };
        for op in [&a, &b] {
            for v in w.basis() {
                assert!(w.contains_vector(&op.apply(v)));
            }
        }
    }

    #[test]
    fn minimal_submodule_of_direct_sum() {
        let q = FieldSpec::Rationals;
        let rot = m(q, &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let sub = minimal_submodule(&[rot], &Subspace::full(q, 4)).unwrap();
        assert_eq!(sub.dim(), 2);
    }
}
