//! Structure-constant Lie algebras and their basic ideal theory.

mod centroid;
mod chain;
mod quasi;
mod radical;
mod three;

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, Matrix, Quotient, Subspace, Vector};

pub use centroid::{centroid, simple_ideals};
pub use chain::{
    il, ChainKind, ChainRecord, FlagSource, IdealChainLength, StepCertificate, SubalgebraHandle,
};
pub(crate) use chain::minimal_ideal_step_gf;
pub(crate) use three::candidate_sweep;
pub use quasi::{quasi_ideal_grid, quasi_ideal_lines, quasi_ideal_test};
pub use radical::{levi0, nilradical0, radical0};
pub use three::{
    classify_3dim, diagonalize_symmetric, form_invariants_q, induced_has_no_eigenvalue, Classification3, FormInvariants,
    ThreeDimKind,
};

pub const MAX_DIM: usize = 12;

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    field: FieldSpec,
    dim: usize,
    names: Vec<String>,
    // table[i * dim + j] = [e_i, e_j]
    table: Vec<Vector>,
    ad: Vec<Matrix>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {} over {}", self.dim, self.field)?;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.table[i * self.dim + j];
                if !is_zero_vector(v) {
                    write!(f, "; [{},{}]={}", self.names[i], self.names[j], self.format_vector(v))?;
                }
            }
        }
        write!(f, ")")
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl LieAlgebra {
    /// Builds an algebra from the products `[e_i, e_j]` with `i < j` and
    /// checks the Jacobi identity. Unlisted products are zero.
    pub fn new(field: FieldSpec, names: Vec<String>, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let n = names.len();
        if n > MAX_DIM {
            return Err(Error::DimensionOutOfRange(n));
        }
        let mut table = vec![zero_vector(field, n); n * n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= n {
                return Err(Error::BadParameters(format!("bracket index pair ({i}, {j}) must satisfy i < j < {n}")));
            }
            if v.len() != n {
                return Err(Error::AmbientMismatch(v.len(), n));
            }
            if let Some(x) = v.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field, x.field()));
            }
            table[i * n + j] = v.clone();
            table[j * n + i] = v.iter().map(|x| -x).collect();
        }
        let alg = Self::from_table(field, names, table);
        alg.validate()?;
        Ok(alg)
    }

    /// Builds an algebra from a closure giving `[e_i, e_j]` for `i < j`.
    pub fn from_fn(field: FieldSpec, names: Vec<String>, f: impl Fn(usize, usize) -> Vector) -> Result<Self> {
        let n = names.len();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                if !is_zero_vector(&v) {
                    brackets.push((i, j, v));
                }
            }
        }
        Self::new(field, names, &brackets)
    }

    fn from_table(field: FieldSpec, names: Vec<String>, table: Vec<Vector>) -> Self {
        let n = names.len();
        let ad = (0..n)
            .map(|i| {
                let cols: Vec<Vector> = (0..n).map(|j| table[i * n + j].clone()).collect();
                Matrix::from_columns(field, n, &cols)
            })
            .collect();
        LieAlgebra {
            field,
            dim: n,
            names,
            table,
            ad,
        }
    }

    pub fn abelian(field: FieldSpec, n: usize) -> Result<Self> {
        Self::new(field, default_names(n), &[])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim);
        self.names = names;
        self
    }

    /// `[e_i, e_j]`
    pub fn structure(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn zero_vector(&self) -> Vector {
        zero_vector(self.field, self.dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        Subspace::span(self.field, self.dim, vectors)
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (x, name) in v.iter().zip(&self.names) {
            if x.is_zero() {
                continue;
            }
            if x.is_one() {
                parts.push(name.clone());
            } else {
                parts.push(format!("({x}){name}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.ad[i].apply(self.structure(j, k));
                    let b = self.ad[j].apply(self.structure(k, i));
                    let c = self.ad[k].apply(self.structure(i, j));
                    let sum: Vector = a.iter().zip(&b).zip(&c).map(|((x, y), z)| &(x + y) + z).collect();
                    if !is_zero_vector(&sum) {
                        return Err(Error::JacobiViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                axpy(&mut out, &c, self.structure(i, j));
            }
        }
        out
    }

    /// Matrix of `ad x` acting on column vectors.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.ad[i].scale(xi));
            }
        }
        m
    }

    pub fn ad_basis(&self) -> &[Matrix] {
        &self.ad
    }

    pub fn bracket_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(self.bracket(x, y));
            }
        }
        self.span(vs)
    }

    /// Subalgebra generated by `s`.
    pub fn closure(&self, s: &Subspace) -> Subspace {
        let mut cur = s.clone();
        loop {
            let next = cur.sum(&self.bracket_space(&cur, &cur)).expect("same ambient");
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    /// Ideal generated by `s`.
    pub fn ideal_generated(&self, s: &Subspace) -> Subspace {
        let mut cur = s.clone();
        loop {
            let mut vs: Vec<Vector> = cur.basis().to_vec();
            for op in &self.ad {
                for v in cur.basis() {
                    vs.push(op.apply(v));
                }
            }
            let next = self.span(vs);
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_subalgebra(&self, u: &Subspace) -> bool {
        let b = u.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !u.contains_vector(&self.bracket(&b[i], &b[j])) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_ideal(&self, u: &Subspace) -> bool {
        self.ad.iter().all(|op| u.basis().iter().all(|v| u.contains_vector(&op.apply(v))))
    }

    /// `{x ∈ X : op(x) ∈ W for every op}`
    pub fn preimage_under(&self, x: &Subspace, ops: &[Matrix], w: &Subspace) -> Subspace {
        let ann = w.annihilator();
        if ann.is_empty() || x.is_zero() {
            return x.clone();
        }
        let mut rows = Vec::new();
        for op in ops {
            let images: Vec<Vector> = x.basis().iter().map(|b| op.apply(b)).collect();
            for f in &ann {
                rows.push(images.iter().map(|im| crate::linalg::dot(f, im)).collect::<Vector>());
            }
        }
        let m = Matrix::from_rows(self.field, x.dim(), rows).expect("shape");
        let ker = m.kernel();
        self.span(ker.iter().map(|c| x.from_coordinates(c)))
    }

    /// `{x ∈ X : [x, V] ⊆ W}`
    pub fn centralizer_mod(&self, x: &Subspace, v: &Subspace, w: &Subspace) -> Subspace {
        let ops: Vec<Matrix> = v.basis().iter().map(|b| self.ad(b)).collect();
        self.preimage_under(x, &ops, w)
    }

    pub fn center(&self) -> Subspace {
        self.centralizer_mod(&self.full(), &self.full(), &self.zero())
    }

    /// Largest ideal of `L` inside `u`.
    pub fn core(&self, u: &Subspace) -> Subspace {
        let mut cur = u.clone();
        loop {
            let next = self.preimage_under(&cur, &self.ad, &cur);
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![self.full()];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_space(last, last);
            if next == *last {
                return out;
            }
            out.push(next);
        }
    }

    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = self.full();
        let mut out = vec![full.clone()];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_space(&full, last);
            if next == *last {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| is_zero_vector(v))
    }

    pub fn is_perfect(&self) -> bool {
        self.bracket_space(&self.full(), &self.full()).is_full()
    }

    pub fn killing_form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.ad(x).mul(&self.ad(y)).trace()
    }

    pub fn killing(&self) -> Matrix {
        let n = self.dim;
        let mut k = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in i..n {
                let mut t = self.field.zero();
                for a in 0..n {
                    for b in 0..n {
                        let x = self.ad[i].get(a, b);
                        let y = self.ad[j].get(b, a);
                        if !x.is_zero() && !y.is_zero() {
                            t = &t + &(x * y);
                        }
                    }
                }
                k.set(i, j, t.clone());
                k.set(j, i, t);
            }
        }
        k
    }

    /// `L/I` together with the coordinate maps. Basis names are inherited
    /// from the complement coordinates.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Quotient)> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let q = Quotient::new(&self.full(), ideal)?;
        let k = q.dim();
        let comp = ideal.complement_columns();
        let names: Vec<String> = comp.iter().map(|&c| self.names[c].clone()).collect();
        let lifts: Vec<Vector> = (0..k).map(|a| q.lift(&unit_vector(self.field, k, a))).collect();
        let mut table = vec![zero_vector(self.field, k); k * k];
        for a in 0..k {
            for b in a + 1..k {
                let v = q.project(&self.bracket(&lifts[a], &lifts[b])).expect("inside L");
                table[b * k + a] = v.iter().map(|x| -x).collect();
                table[a * k + b] = v;
            }
        }
        Ok((LieAlgebra::from_table(self.field, names, table), q))
    }

    /// The subalgebra `u` as an algebra in the coordinates of its echelon basis.
    pub fn restrict(&self, u: &Subspace) -> Result<LieAlgebra> {
        let b = u.basis();
        let k = b.len();
        let mut table = vec![zero_vector(self.field, k); k * k];
        for a in 0..k {
            for c in a + 1..k {
                let v = u.coordinates(&self.bracket(&b[a], &b[c])).ok_or(Error::NotASubalgebra)?;
                table[c * k + a] = v.iter().map(|x| -x).collect();
                table[a * k + c] = v;
            }
        }
        let names = (0..k).map(|a| self.format_vector(&b[a])).collect();
        Ok(LieAlgebra::from_table(self.field, names, table))
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let (n, m) = (self.dim, other.dim);
        if n + m > MAX_DIM {
            return Err(Error::DimensionOutOfRange(n + m));
        }
        let mut names = self.names.clone();
        for name in &other.names {
            let mut name = name.clone();
            while names.contains(&name) {
                name.push('\'');
            }
            names.push(name);
        }
        let f = self.field;
        let mut table = vec![zero_vector(f, n + m); (n + m) * (n + m)];
        for i in 0..n {
            for j in 0..n {
                let mut v = self.structure(i, j).clone();
                v.extend(zero_vector(f, m));
                table[i * (n + m) + j] = v;
            }
        }
        for i in 0..m {
            for j in 0..m {
                let mut v = zero_vector(f, n);
                v.extend(other.structure(i, j).iter().cloned());
                table[(n + i) * (n + m) + n + j] = v;
            }
        }
        Ok(LieAlgebra::from_table(f, names, table))
    }

    /// `A ⋊ S` for an abelian `A = F^m` on which `S` acts through `action`
    /// (one matrix per basis element of `S`). Basis: `a1..am` then `S`'s basis.
    pub fn semidirect(s: &LieAlgebra, action: &[Matrix]) -> Result<LieAlgebra> {
        let f = s.field;
        let k = s.dim;
        if action.len() != k {
            return Err(Error::NotARepresentation(format!("expected {k} action matrices, got {}", action.len())));
        }
        let m = action.first().map(|a| a.nrows()).unwrap_or(0);
        for a in action {
            if a.nrows() != m || a.ncols() != m || a.field() != f {
                return Err(Error::NotARepresentation("action matrices must be square of one size over the algebra's field".into()));
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let comm = action[i].mul(&action[j]).sub(&action[j].mul(&action[i]));
                let mut image = Matrix::zeros(f, m, m);
                for (c, coef) in s.structure(i, j).iter().enumerate() {
                    if !coef.is_zero() {
                        image = image.add(&action[c].scale(coef));
                    }
                }
                if comm != image {
                    return Err(Error::NotARepresentation(format!(
                        "action of [{}, {}] differs from the commutator",
                        s.names[i], s.names[j]
                    )));
                }
            }
        }
        let n = m + k;
        if n > MAX_DIM {
            return Err(Error::DimensionOutOfRange(n));
        }
        let mut names: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
        names.extend(s.names.iter().cloned());
        let mut table = vec![zero_vector(f, n); n * n];
        for i in 0..k {
            for c in 0..m {
                let mut v = action[i].column(c);
                v.extend(zero_vector(f, k));
                table[c * n + m + i] = v.iter().map(|x| -x).collect();
                table[(m + i) * n + c] = v;
            }
            for j in 0..k {
                let mut v = zero_vector(f, m);
                v.extend(s.structure(i, j).iter().cloned());
                table[(m + i) * n + m + j] = v;
            }
        }
        let alg = LieAlgebra::from_table(f, names, table);
        alg.validate()?;
        Ok(alg)
    }

    /// Same algebra read over another field of the same kind of integers
    /// (used to transplant rational structure constants to GF(p)).
    pub fn reduce_to(&self, target: FieldSpec) -> Result<LieAlgebra> {
        let mut table = Vec::with_capacity(self.table.len());
        for v in &self.table {
            let mut w = Vec::with_capacity(v.len());
            for x in v {
                let q = x
                    .as_rational()
                    .ok_or_else(|| Error::UnsupportedField(format!("cannot transplant coefficients from {}", self.field)))?;
                w.push(target.from_rational(&q)?);
            }
            table.push(w);
        }
        let alg = LieAlgebra::from_table(target, self.names.clone(), table);
        alg.validate()?;
        Ok(alg)
    }

    /// Change of basis: the new basis vectors are the columns of `p` (invertible).
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
        let span = self.span(cols.clone());
        if !span.is_full() {
            return Err(Error::BadParameters("change of basis matrix is singular".into()));
        }
        let mut table = vec![zero_vector(self.field, n); n * n];
        for a in 0..n {
            for b in a + 1..n {
                let v = p.solve(&self.bracket(&cols[a], &cols[b])).expect("invertible");
                table[b * n + a] = v.iter().map(|x| -x).collect();
                table[a * n + b] = v;
            }
        }
        Ok(LieAlgebra::from_table(self.field, default_names(n), table))
    }

    /// Basis of the derivation algebra `{D : D[x,y] = [Dx,y] + [x,Dy]}`.
    pub fn derivations(&self) -> Vec<Matrix> {
        let n = self.dim;
        let f = self.field;
        let idx = |row: usize, col: usize| row * n + col;
        let mut rows: Vec<Vector> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut row = vec![f.zero(); n * n];
                    for (b, c) in self.structure(i, j).iter().enumerate() {
                        if !c.is_zero() {
                            row[idx(k, b)] = &row[idx(k, b)] + c;
                        }
                    }
                    for a in 0..n {
                        let c = &self.structure(a, j)[k];
                        if !c.is_zero() {
                            row[idx(a, i)] = &row[idx(a, i)] - c;
                        }
                        let c = &self.structure(i, a)[k];
                        if !c.is_zero() {
                            row[idx(a, j)] = &row[idx(a, j)] - c;
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..n * n).map(|i| unit_vector(f, n * n, i)).collect()
        } else {
            Matrix::from_rows(f, n * n, rows).expect("shape").kernel()
        };
        kernel
            .into_iter()
            .map(|flat| Matrix::from_rows(f, n, flat.chunks(n).map(|c| c.to_vec()).collect()).expect("shape"))
            .collect()
    }

    /// Extension by one element `t` acting through the derivation `d`:
    /// basis `e_1..e_n, t` with `[t, x] = d x`.
    pub fn extend_by_derivation(&self, d: &Matrix, name: &str) -> Result<LieAlgebra> {
        let n = self.dim;
        if n + 1 > MAX_DIM {
            return Err(Error::DimensionOutOfRange(n + 1));
        }
        let f = self.field;
        let mut brackets = Vec::new();
        for (i, j, v) in self.nonzero_brackets() {
            let mut w = v;
            w.push(f.zero());
            brackets.push((i, j, w));
        }
        for i in 0..n {
            // [e_i, t] = −d e_i
            let mut w: Vector = d.column(i).iter().map(|x| -x).collect();
            w.push(f.zero());
            if !is_zero_vector(&w) {
                brackets.push((i, n, w));
            }
        }
        let mut names = self.names.clone();
        names.push(name.to_string());
        LieAlgebra::new(f, names, &brackets)
    }

    /// `(i, j, [e_i, e_j])` for all nonzero products with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.structure(i, j);
                if !is_zero_vector(v) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    pub fn v(f: FieldSpec, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    /// e, h, f with [h,e]=2e, [h,f]=−2f, [e,f]=h
    pub fn sl2(f: FieldSpec) -> LieAlgebra {
        let names = vec!["e".into(), "h".into(), "f".into()];
        LieAlgebra::new(
            f,
            names,
            &[(0, 1, v(f, &[-2, 0, 0])), (0, 2, v(f, &[0, 1, 0])), (1, 2, v(f, &[0, 0, -2]))],
        )
        .unwrap()
    }

    /// x, y, z with [x,y]=z
    pub fn heisenberg(f: FieldSpec) -> LieAlgebra {
        LieAlgebra::new(f, vec!["x".into(), "y".into(), "z".into()], &[(0, 1, v(f, &[0, 0, 1]))]).unwrap()
    }

    /// x, a1, a2 with [x, a_i] = a_i
    pub fn almost_abelian3(f: FieldSpec) -> LieAlgebra {
        LieAlgebra::new(
            f,
            vec!["x".into(), "a1".into(), "a2".into()],
            &[(0, 1, v(f, &[0, 1, 0])), (0, 2, v(f, &[0, 0, 1]))],
        )
        .unwrap()
    }

    #[test]
    fn jacobi_violation_detected() {
        let f = q();
        let err = LieAlgebra::new(
            f,
            vec!["x".into(), "y".into(), "z".into()],
            &[(0, 1, v(f, &[0, 0, 1])), (1, 2, v(f, &[1, 0, 0])), (0, 2, v(f, &[-1, 0, 0]))],
        )
        .unwrap_err();
        assert_eq!(err, Error::JacobiViolation(0, 1, 2));
        assert!(LieAlgebra::abelian(f, 4).unwrap().validate().is_ok());
    }

    #[test]
    fn bad_bracket_index_rejected() {
        let f = q();
        let r = LieAlgebra::new(f, vec!["x".into(), "y".into()], &[(1, 1, v(f, &[1, 0]))]);
        assert!(matches!(r, Err(Error::BadParameters(_))));
    }

    #[test]
    fn closure_and_series() {
        let f = q();
        let s = sl2(f);
        let ef = s.span([s.basis_vector(0), s.basis_vector(2)]);
        assert!(s.closure(&ef).is_full());
        let line = s.span([v(f, &[1, 2, 3])]);
        assert_eq!(s.closure(&line), line);
        assert!(!s.is_solvable());
        let h = heisenberg(f);
        let lcs = h.lower_central_series();
        assert_eq!(lcs.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3, 1, 0]);
        assert!(h.is_nilpotent());
        let ab = LieAlgebra::abelian(f, 3).unwrap();
        assert!(ab.bracket_space(&ab.full(), &ab.full()).is_zero());
        assert!(ab.is_solvable() && ab.is_nilpotent());
    }

    #[test]
    fn killing_of_sl2() {
        let f = q();
        let k = sl2(f).killing();
        assert_eq!(k.get(1, 1), &f.from_int(8));
        assert_eq!(k.get(0, 2), &f.from_int(4));
        assert!(k.get(0, 0).is_zero());
    }

    #[test]
    fn core_examples() {
        let f = q();
        let s = sl2(f);
        let borel = s.span([s.basis_vector(0), s.basis_vector(1)]);
        assert!(s.core(&borel).is_zero());
        let h = heisenberg(f);
        let xz = h.span([h.basis_vector(0), h.basis_vector(2)]);
        assert_eq!(h.core(&xz), xz);
        assert_eq!(h.center(), h.span([h.basis_vector(2)]));
    }

    #[test]
    fn build_operations() {
        let f = q();
        let s = sl2(f);
        let ss = s.direct_sum(&s).unwrap();
        assert_eq!(ss.dim(), 6);
        assert!(ss.validate().is_ok());
        let h = heisenberg(f);
        let (quot, _) = h.quotient(&h.center()).unwrap();
        assert!(quot.is_abelian() && quot.dim() == 2);
        let adj: Vec<Matrix> = s.ad_basis().to_vec();
        let sd = LieAlgebra::semidirect(&s, &adj).unwrap();
        assert_eq!(sd.dim(), 6);
        assert!(matches!(
            h.quotient(&h.span([h.basis_vector(0)])),
            Err(Error::NotAnIdeal)
        ));
        let bad = vec![Matrix::identity(f, 2); 3];
        assert!(matches!(LieAlgebra::semidirect(&s, &bad), Err(Error::NotARepresentation(_))));
    }

    #[test]
    fn derivations_of_small_algebras() {
        let f = q();
        assert_eq!(LieAlgebra::abelian(f, 2).unwrap().derivations().len(), 4);
        // sl2: all derivations are inner
        assert_eq!(sl2(f).derivations().len(), 3);
        // Heisenberg: dim Der = 6
        assert_eq!(heisenberg(f).derivations().len(), 6);
    }

    #[test]
    fn quotient_heisenberg_induced_action_is_zero() {
        let f = q();
        let h = heisenberg(f);
        let (_, induced, _) =
            crate::linalg::quotient_and_induced(&h.full(), &h.center(), &[h.ad(&h.basis_vector(0))]).unwrap();
        assert!(induced[0].is_zero());
    }
}
