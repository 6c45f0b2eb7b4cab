use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::fields::roots_any_degree;
use crate::linalg::{Matrix, Subspace, Vector};

/// Basis of the centroid `{φ : φ[x,y] = [φx,y] for all x, y}`.
pub fn centroid(alg: &LieAlgebra) -> Vec<Matrix> {
    let n = alg.dim();
    let f = alg.field();
    let idx = |row: usize, col: usize| row * n + col;
    let mut rows: Vec<Vector> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![f.zero(); n * n];
                for (b, c) in alg.structure(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        row[idx(k, b)] = &row[idx(k, b)] + c;
                    }
                }
                for a in 0..n {
                    let c = &alg.structure(a, j)[k];
                    if !c.is_zero() {
                        row[idx(a, i)] = &row[idx(a, i)] - c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let m = Matrix::from_rows(f, n * n, rows).expect("shape");
    m.kernel()
        .into_iter()
        .map(|flat| Matrix::from_rows(f, n, flat.chunks(n).map(|c| c.to_vec()).collect()).expect("shape"))
        .collect()
}

fn sweep(basis: &[Matrix]) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push(basis[i].add(&basis[j]));
            let two = basis[j].field().from_int(2);
            out.push(basis[i].add(&basis[j].scale(&two)));
        }
    }
    out
}

fn split_ideal(alg: &LieAlgebra, ideal: &Subspace, out: &mut Vec<Subspace>) -> Result<()> {
    let sub = alg.restrict(ideal)?;
    let cent = centroid(&sub);
    if cent.len() <= 1 {
        out.push(ideal.clone());
        return Ok(());
    }
    let k = sub.dim();
    for phi in sweep(&cent) {
        let mp = phi.min_poly();
        let deg = mp.len() - 1;
        if deg <= 1 {
            continue;
        }
        let roots = match roots_any_degree(&mp) {
            Ok(r) => r,
            Err(e) if e.is_indeterminate() => continue,
            Err(e) => return Err(e),
        };
        if let Some(lambda) = roots.first() {
            let shifted = phi.sub(&Matrix::identity(sub.field(), k).scale(lambda));
            let ker = Subspace::span(sub.field(), k, shifted.kernel());
            let im = Subspace::span(sub.field(), k, (0..k).map(|c| shifted.column(c)));
            if ker.is_zero() || im.is_zero() || !ker.intersect(&im)?.is_zero() {
                continue;
            }
            split_ideal(alg, &ideal.absolute(&ker), out)?;
            split_ideal(alg, &ideal.absolute(&im), out)?;
            return Ok(());
        }
        if deg == cent.len() && deg <= 3 {
            // an element with irreducible minimal polynomial generating the
            // whole centroid: the centroid is a field
            out.push(ideal.clone());
            return Ok(());
        }
    }
    Err(Error::Indeterminate(format!(
        "centroid of dimension {} could not be split",
        cent.len()
    )))
}

/// Decomposition of a semisimple algebra into its simple ideals, ordered by
/// dimension and then by echelon basis.
pub fn simple_ideals(alg: &LieAlgebra) -> Result<Vec<Subspace>> {
    if alg.dim() == 0 {
        return Ok(Vec::new());
    }
    if !alg.is_perfect() || !alg.center().is_zero() {
        return Err(Error::BadParameters("algebra is not semisimple".into()));
    }
    let mut out = Vec::new();
    split_ideal(alg, &alg.full(), &mut out)?;
    for s in &out {
        if !alg.is_ideal(s) {
            return Err(Error::VerificationFailed("centroid splitting produced a non-ideal".into()));
        }
    }
    out.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{q, sl2};

    #[test]
    fn sl2_centroid_is_scalars() {
        assert_eq!(centroid(&sl2(q())).len(), 1);
        assert_eq!(simple_ideals(&sl2(q())).unwrap().len(), 1);
    }

    #[test]
    fn sum_of_three_copies_splits() {
        let s = sl2(q());
        let l = s.direct_sum(&s).unwrap().direct_sum(&s).unwrap();
        let parts = simple_ideals(&l).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| p.dim() == 3));
        let total = parts.iter().fold(l.zero(), |acc, p| acc.sum(p).unwrap());
        assert!(total.is_full());
    }

    #[test]
    fn rotation_algebra_over_q_i_viewed_over_q() {
        // sl2(ℚ(i)) as a 6-dimensional rational algebra: simple with centroid ℚ(i)
        let f = q();
        let s = sl2(f);
        // basis x, ix for x in (e,h,f); [ix, iy] = −[x,y]
        let l = LieAlgebra::from_fn(f, (0..6).map(|i| format!("b{i}")).collect(), |a, b| {
            let (xa, ia) = (a % 3, a >= 3);
            let (xb, ib) = (b % 3, b >= 3);
            let br = s.structure(xa, xb);
            let mut out = vec![f.zero(); 6];
            let sign = if ia && ib { f.from_int(-1) } else { f.one() };
            let shift = if ia ^ ib { 3 } else { 0 };
            for (k, c) in br.iter().enumerate() {
                out[k + shift] = &sign * c;
            }
            out
        })
        .unwrap();
        assert_eq!(centroid(&l).len(), 2);
        assert_eq!(simple_ideals(&l).unwrap().len(), 1);
    }
}
