use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::fields::{
    factor_integer, hilbert_symbol, roots_in_field, square_free_part, ternary_isotropic_rational, FieldSpec, Place,
    Scalar,
};
use crate::linalg::{Matrix, Quotient, Vector};

/// Diagonal of a form congruent to the symmetric matrix `m` (char ≠ 2).
pub fn diagonalize_symmetric(m: &Matrix) -> Vec<Scalar> {
    let n = m.nrows();
    let mut a = m.clone();
    let add_row_col = |a: &mut Matrix, dst: usize, src: usize, c: &Scalar| {
        for j in 0..n {
            let v = a.get(dst, j) + &(c * a.get(src, j));
            a.set(dst, j, v);
        }
        for i in 0..n {
            let v = a.get(i, dst) + &(c * a.get(i, src));
            a.set(i, dst, v);
        }
    };
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                let one = m.field().one();
                add_row_col(&mut a, k, j, &one);
                if a.get(k, k).is_zero() {
                    // e_k + e_j became isotropic; e_k − e_j works instead
                    add_row_col(&mut a, k, j, &-&m.field().from_int(2));
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                let one = m.field().one();
                add_row_col(&mut a, k, j, &one);
            }
        }
        let pivot = a.get(k, k).clone();
        if pivot.is_zero() {
            continue;
        }
        for i in k + 1..n {
            if !a.get(i, k).is_zero() {
                let c = -&(a.get(i, k) / &pivot);
                add_row_col(&mut a, i, k, &c);
            }
        }
    }
    (0..n).map(|i| a.get(i, i).clone()).collect()
}

/// Isometry invariants of a nondegenerate rational quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInvariants {
    pub dim: usize,
    pub discriminant: BigInt,
    pub negative_index: usize,
    /// Hasse invariants at primes where they may differ from 1.
    pub hasse: BTreeMap<BigUint, i32>,
}

impl FormInvariants {
    pub fn hasse_at(&self, p: &BigUint) -> i32 {
        self.hasse.get(p).copied().unwrap_or(1)
    }

    /// Hasse–Minkowski: equal invariants iff the forms are isometric over ℚ.
    pub fn isometric(&self, other: &FormInvariants) -> bool {
        if self.dim != other.dim || self.discriminant != other.discriminant || self.negative_index != other.negative_index {
            return false;
        }
        self.hasse.keys().chain(other.hasse.keys()).all(|p| self.hasse_at(p) == other.hasse_at(p))
    }
}

pub fn form_invariants_q(gram: &Matrix) -> Result<FormInvariants> {
    if gram.field() != FieldSpec::Rationals {
        return Err(Error::UnsupportedField(gram.field().to_string()));
    }
    let diag = diagonalize_symmetric(gram);
    let mut ints = Vec::new();
    for d in &diag {
        let q = d.as_rational().unwrap();
        if q.is_zero() {
            return Err(Error::BadParameters("degenerate form".into()));
        }
        ints.push(square_free_part(&(q.numer() * q.denom()))?);
    }
    let mut disc = BigInt::from(1);
    for a in &ints {
        disc *= a;
    }
    let disc = square_free_part(&disc)?;
    let mut primes: Vec<BigUint> = vec![BigUint::from(2u32)];
    for a in &ints {
        for (p, _) in factor_integer(a)? {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    let mut hasse = BTreeMap::new();
    for p in primes {
        let place = Place::Prime(p.clone());
        let mut s = 1;
        for i in 0..ints.len() {
            for j in i + 1..ints.len() {
                s *= hilbert_symbol(&ints[i], &ints[j], &place);
            }
        }
        hasse.insert(p, s);
    }
    Ok(FormInvariants {
        dim: diag.len(),
        discriminant: disc,
        negative_index: ints.iter().filter(|a| a.is_negative()).count(),
        hasse,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeDimKind {
    NotSimple,
    SplitSimple,
    NonsplitSimple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification3 {
    pub kind: ThreeDimKind,
    /// `x` spanning a one-dimensional maximal subalgebra, when one was found.
    pub special_witness: Option<Vector>,
}

impl Classification3 {
    pub fn is_simple(&self) -> bool {
        self.kind != ThreeDimKind::NotSimple
    }

    pub fn is_special(&self) -> bool {
        self.special_witness.is_some()
    }
}

pub(crate) fn candidate_sweep(f: FieldSpec) -> Vec<Vector> {
    let e = |i: usize| crate::linalg::unit_vector(f, 3, i);
    let mut out: Vec<Vector> = (0..3).map(e).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            out.push(crate::linalg::add_vectors(&e(i), &e(j)));
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            out.push(crate::linalg::sub_vectors(&e(i), &e(j)));
        }
    }
    let range: Vec<i64> = match f.order() {
        Some(q) => (0..q as i64).collect(),
        None => (-2..=2).collect(),
    };
    for &a in &range {
        for &b in &range {
            for &c in &range {
                out.push(vec![f.from_int(a), f.from_int(b), f.from_int(c)]);
            }
        }
    }
    out
}

/// Whether `F x` is a maximal subalgebra of the 3-dimensional algebra:
/// the operator induced by `ad x` on `L/Fx` has no eigenvalue in `F`.
pub fn induced_has_no_eigenvalue(alg: &LieAlgebra, x: &[Scalar]) -> Result<bool> {
    if alg.dim() != 3 {
        return Err(Error::WrongDimension { expected: 3, got: alg.dim() });
    }
    if crate::linalg::is_zero_vector(x) {
        return Ok(false);
    }
    let line = alg.span([x.to_vec()]);
    let q = Quotient::new(&alg.full(), &line)?;
    let m = q.induced(&alg.ad(x))?;
    let (tr, det) = (m.trace(), &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0)));
    let roots = roots_in_field(&[det, -&tr, alg.field().one()])?;
    Ok(roots.is_empty())
}

pub fn classify_3dim(alg: &LieAlgebra) -> Result<Classification3> {
    if alg.dim() != 3 {
        return Err(Error::WrongDimension { expected: 3, got: alg.dim() });
    }
    // A proper ideal would leave a solvable quotient of dimension ≤ 2,
    // so in dimension 3 simple is the same as perfect.
    if !alg.is_perfect() {
        return Ok(Classification3 {
            kind: ThreeDimKind::NotSimple,
            special_witness: None,
        });
    }
    let f = alg.field();
    let sweep = candidate_sweep(f);
    let mut special_witness = None;
    for x in &sweep {
        if induced_has_no_eigenvalue(alg, x)? {
            special_witness = Some(x.clone());
            break;
        }
    }
    let split = match f {
        FieldSpec::PrimeField { .. } => true,
        FieldSpec::Rationals => {
            let d = diagonalize_symmetric(&alg.killing());
            let qs: Vec<_> = d.iter().map(|x| x.as_rational().unwrap()).collect();
            ternary_isotropic_rational(&qs[0], &qs[1], &qs[2])?
        }
        FieldSpec::QuadExt { .. } => {
            let two = f.from_int(2);
            let found = sweep.iter().any(|x| {
                let k = &alg.killing_form(x, x) / &two;
                !k.is_zero() && k.is_square().0
            });
            if !found {
                return Err(Error::Indeterminate("no split element found in the candidate sweep".into()));
            }
            true
        }
    };
    Ok(Classification3 {
        kind: if split { ThreeDimKind::SplitSimple } else { ThreeDimKind::NonsplitSimple },
        special_witness,
    })
}
