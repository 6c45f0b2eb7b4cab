use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::linalg::{zero_vector, ProjectivePoints, Subspace, Vector};

/// `w ∈ Q + F v`, given the reductions of `v` and `w` modulo `Q`.
fn parallel(v_red: &[Scalar], w_red: &[Scalar]) -> bool {
    let Some(i) = v_red.iter().position(|x| !x.is_zero()) else {
        return w_red.iter().all(Scalar::is_zero);
    };
    let c = &w_red[i] / &v_red[i];
    v_red.iter().zip(w_red).all(|(a, b)| &c * a == *b)
}

fn check_vector(alg: &LieAlgebra, q: &Subspace, v: &[Scalar]) -> bool {
    let v_red = q.reduce(v);
    if v_red.iter().all(Scalar::is_zero) {
        return true;
    }
    q.basis().iter().all(|b| parallel(&v_red, &q.reduce(&alg.bracket(b, v))))
}

/// Definitional test over GF(p): `[Q, v] ⊆ Q + F v` for every line `Fv`.
/// Only lines modulo `Q` matter, since `[Q, Q] ⊆ Q`.
pub fn quasi_ideal_lines(alg: &LieAlgebra, q: &Subspace) -> Result<bool> {
    if !alg.field().is_finite() {
        return Err(Error::UnsupportedField(alg.field().to_string()));
    }
    if !alg.is_subalgebra(q) {
        return Ok(false);
    }
    let comp = q.complement_columns();
    for pt in ProjectivePoints::new(alg.field(), comp.len()) {
        let mut v = alg.zero_vector();
        for (x, &c) in pt.into_iter().zip(&comp) {
            v[c] = x;
        }
        if !check_vector(alg, q, &v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Polynomial-identity form of the same condition: the rank of
/// `[basis(Q); v; [q, v]]` is at most `dim Q + 1` at every point of the grid
/// `{0,1,2}^m` in the complement coordinates of `Q`. The minors have degree
/// at most 2 in each variable, so the grid decides the identity exactly
/// whenever 0, 1, 2 are distinct in the field.
pub fn quasi_ideal_grid(alg: &LieAlgebra, q: &Subspace) -> bool {
    if !alg.is_subalgebra(q) {
        return false;
    }
    let f = alg.field();
    let comp = q.complement_columns();
    let m = comp.len();
    let values = [f.zero(), f.one(), f.from_int(2)];
    let mut digits = vec![0usize; m];
    loop {
        let mut v: Vector = zero_vector(f, alg.dim());
        for (d, &c) in digits.iter().zip(&comp) {
            v[c] = values[*d].clone();
        }
        if !check_vector(alg, q, &v) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == m {
                return true;
            }
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Line enumeration over finite fields, the grid identity otherwise.
pub fn quasi_ideal_test(alg: &LieAlgebra, q: &Subspace) -> bool {
    if alg.field().is_finite() {
        quasi_ideal_lines(alg, q).expect("finite field")
    } else {
        quasi_ideal_grid(alg, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{heisenberg, q as rationals, sl2};
    use crate::fields::FieldSpec;

    #[test]
    fn sl2_examples() {
        let s = sl2(rationals());
        let borel = s.span([s.basis_vector(0), s.basis_vector(1)]);
        assert!(quasi_ideal_test(&s, &borel));
        assert!(!quasi_ideal_test(&s, &s.span([s.basis_vector(0)])));
        assert!(quasi_ideal_test(&s, &s.zero()));
        assert!(quasi_ideal_test(&s, &s.full()));
    }

    #[test]
    fn abelian_subspaces_are_quasi_ideals() {
        let f = FieldSpec::prime(3).unwrap();
        let a = LieAlgebra::abelian(f, 3).unwrap();
        for pt in ProjectivePoints::new(f, 3) {
            let line = a.span([pt]);
            assert!(quasi_ideal_lines(&a, &line).unwrap());
        }
    }

    #[test]
    fn lines_agree_with_grid_over_gf5() {
        let f = FieldSpec::prime(5).unwrap();
        for alg in [sl2(f), heisenberg(f)] {
            for pt in ProjectivePoints::new(f, 3) {
                let line = alg.span([pt]);
                assert_eq!(quasi_ideal_lines(&alg, &line).unwrap(), quasi_ideal_grid(&alg, &line));
            }
        }
    }
}
