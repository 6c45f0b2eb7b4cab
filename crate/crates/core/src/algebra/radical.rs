use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{sub_vectors, Matrix, Quotient, Subspace, Vector};

fn require_char0(alg: &LieAlgebra) -> Result<()> {
    if alg.field().characteristic() != 0 {
        return Err(Error::WrongCharacteristic);
    }
    Ok(())
}

/// Solvable radical in characteristic 0: the Killing-orthogonal of `[L, L]`.
pub fn radical0(alg: &LieAlgebra) -> Result<Subspace> {
    require_char0(alg)?;
    let k = alg.killing();
    let derived = alg.bracket_space(&alg.full(), &alg.full());
    let rows: Vec<Vector> = derived.basis().iter().map(|y| k.apply(y)).collect();
    let r = if rows.is_empty() {
        alg.full()
    } else {
        let m = Matrix::from_rows(alg.field(), alg.dim(), rows)?;
        alg.span(m.kernel())
    };
    if !alg.is_ideal(&r) || !alg.restrict(&r)?.is_solvable() {
        return Err(Error::VerificationFailed("radical is not a solvable ideal".into()));
    }
    Ok(r)
}

/// Span of all products of the generators (no identity adjoined).
fn associative_closure(gens: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = gens.first() else { return Vec::new() };
    let (field, n) = (first.field(), first.nrows());
    let mut space = Subspace::zero(field, n * n);
    let mut basis: Vec<Matrix> = Vec::new();
    let mut queue: Vec<Matrix> = Vec::new();
    let push = |m: Matrix, space: &mut Subspace, basis: &mut Vec<Matrix>, queue: &mut Vec<Matrix>| {
        let flat = m.entries().to_vec();
        if !space.contains_vector(&flat) {
            *space = space.sum(&Subspace::span(field, n * n, [flat])).unwrap();
            basis.push(m.clone());
            queue.push(m);
        }
    };
    for g in gens {
        push(g.clone(), &mut space, &mut basis, &mut queue);
    }
    while let Some(a) = queue.pop() {
        for g in gens {
            push(g.mul(&a), &mut space, &mut basis, &mut queue);
        }
    }
    basis
}

/// Nilradical in characteristic 0: elements of the radical whose adjoint
/// lies in the trace-form radical of the associative algebra generated by
/// `ad R`.
pub fn nilradical0(alg: &LieAlgebra) -> Result<Subspace> {
    let r = radical0(alg)?;
    let gens: Vec<Matrix> = r.basis().iter().map(|x| alg.ad(x)).collect();
    let assoc = associative_closure(&gens);
    let rows: Vec<Vector> = assoc
        .iter()
        .map(|b| gens.iter().map(|g| g.mul(b).trace()).collect())
        .collect();
    let n = if rows.is_empty() {
        r.clone()
    } else {
        let m = Matrix::from_rows(alg.field(), r.dim(), rows)?;
        alg.span(m.kernel().iter().map(|c| r.from_coordinates(c)))
    };
    let lr = alg.bracket_space(&alg.full(), &r);
    if !alg.is_ideal(&n) || !alg.restrict(&n)?.is_nilpotent() || !n.contains(&lr)? {
        return Err(Error::VerificationFailed("nilradical check failed".into()));
    }
    Ok(n)
}

/// Levi decomposition `L = R ∔ S` in characteristic 0.
pub fn levi0(alg: &LieAlgebra) -> Result<(Subspace, Subspace)> {
    let r = radical0(alg)?;
    let f = alg.field();
    let n = alg.dim();
    let mut t: Vec<Vector> = r.complement_columns().into_iter().map(|c| alg.basis_vector(c)).collect();
    let m = t.len();
    let mut series = vec![r.clone()];
    while !series.last().unwrap().is_zero() {
        let last = series.last().unwrap();
        series.push(alg.bracket_space(last, last));
    }
    for w in series.windows(2) {
        let (ri, rnext) = (&w[0], &w[1]);
        let q = Quotient::new(ri, rnext)?;
        let qd = q.dim();
        let rho = ri.basis();
        let k = rho.len();
        // columns t_1..t_m, then a basis of R
        let mut cols = t.clone();
        cols.extend(r.basis().iter().cloned());
        let decomp = Matrix::from_columns(f, n, &cols);
        let unknowns = m * k;
        let mut rows: Vec<Vector> = Vec::new();
        let mut rhs: Vector = Vec::new();
        let proj = |v: &[crate::fields::Scalar]| q.project(v).ok_or_else(|| Error::LiftFailed("bracket left the derived term".into()));
        let proj_rho: Vec<Vector> = rho.iter().map(|x| proj(x)).collect::<Result<_>>()?;
        for a in 0..m {
            for b in a + 1..m {
                let wab = alg.bracket(&t[a], &t[b]);
                let sol = decomp.solve(&wab).ok_or_else(|| Error::LiftFailed("complement decomposition".into()))?;
                let c = &sol[..m];
                let mut tpart = alg.zero_vector();
                for (cc, tc) in c.iter().zip(&t) {
                    crate::linalg::axpy(&mut tpart, cc, tc);
                }
                let rab = proj(&sub_vectors(&wab, &tpart))?;
                let ta_rho: Vec<Vector> = rho.iter().map(|x| proj(&alg.bracket(&t[a], x))).collect::<Result<_>>()?;
                let tb_rho: Vec<Vector> = rho.iter().map(|x| proj(&alg.bracket(&t[b], x))).collect::<Result<_>>()?;
                for coord in 0..qd {
                    let mut row = vec![f.zero(); unknowns];
                    for beta in 0..k {
                        row[b * k + beta] = &row[b * k + beta] + &ta_rho[beta][coord];
                        row[a * k + beta] = &row[a * k + beta] - &tb_rho[beta][coord];
                        for (cidx, cc) in c.iter().enumerate() {
                            if !cc.is_zero() {
                                let idx = cidx * k + beta;
                                row[idx] = &row[idx] - &(cc * &proj_rho[beta][coord]);
                            }
                        }
                    }
                    rows.push(row);
                    rhs.push(-&rab[coord]);
                }
            }
        }
        if rows.is_empty() {
            continue;
        }
        let sys = Matrix::from_rows(f, unknowns, rows)?;
        let d = sys.solve(&rhs).ok_or_else(|| Error::LiftFailed("cocycle system has no solution".into()))?;
        for a in 0..m {
            for beta in 0..k {
                crate::linalg::axpy(&mut t[a], &d[a * k + beta], &rho[beta]);
            }
        }
    }
    let s = alg.span(t);
    let ok = s.dim() == m && alg.is_subalgebra(&s) && s.intersect(&r)?.is_zero();
    if !ok {
        return Err(Error::LiftFailed("lifted complement is not a subalgebra".into()));
    }
    Ok((r, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{almost_abelian3, heisenberg, q, sl2};

    #[test]
    fn radical_examples() {
        let f = q();
        assert!(radical0(&sl2(f)).unwrap().is_zero());
        assert!(radical0(&almost_abelian3(f)).unwrap().is_full());
        let gf = crate::fields::FieldSpec::prime(5).unwrap();
        assert_eq!(radical0(&sl2(gf)), Err(Error::WrongCharacteristic));
    }

    #[test]
    fn nilradical_examples() {
        let f = q();
        let aa = almost_abelian3(f);
        assert_eq!(nilradical0(&aa).unwrap(), aa.span([aa.basis_vector(1), aa.basis_vector(2)]));
        assert!(nilradical0(&heisenberg(f)).unwrap().is_full());
        let s = sl2(f);
        let sd = LieAlgebra::semidirect(&s, s.ad_basis()).unwrap();
        let a = sd.span((0..3).map(|i| sd.basis_vector(i)));
        assert_eq!(nilradical0(&sd).unwrap(), a);
    }

    #[test]
    fn levi_of_twisted_semidirect() {
        let f = q();
        let s = sl2(f);
        let sd = LieAlgebra::semidirect(&s, s.ad_basis()).unwrap();
        // shear the basis so the Levi factor is not a coordinate subspace
        let mut p = Matrix::identity(f, 6);
        p.set(0, 3, f.one());
        p.set(1, 4, f.from_int(2));
        p.set(2, 5, f.from_int(-1));
        let twisted = sd.change_basis(&p).unwrap();
        let (r, levi) = levi0(&twisted).unwrap();
        assert_eq!(r.dim(), 3);
        assert_eq!(levi.dim(), 3);
        let sub = twisted.restrict(&levi).unwrap();
        assert!(sub.is_perfect());
        assert!(radical0(&sub).unwrap().is_zero());
        assert_eq!(sub.killing().rank(), 3);
        let (r2, s2) = levi0(&s).unwrap();
        assert!(r2.is_zero() && s2.is_full());
        let (r3, s3) = levi0(&heisenberg(f)).unwrap();
        assert!(r3.is_full() && s3.is_zero());
    }
}
