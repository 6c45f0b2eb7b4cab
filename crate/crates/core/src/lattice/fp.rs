//! Small-prime arithmetic on `u32` vectors, used by the enumeration hot loops.

use crate::algebra::LieAlgebra;
use crate::fields::FieldSpec;
use crate::linalg::{Subspace, Vector};

pub(crate) type FVec = Vec<u32>;

/// Structure constants of an algebra over GF(p) in machine integers.
#[derive(Clone, Debug)]
pub(crate) struct FpAlgebra {
    pub p: u32,
    pub n: usize,
    // table[(i * n + j) * n + k] = coefficient of e_k in [e_i, e_j]
    table: Vec<u32>,
    inv: Vec<u32>,
}

/// Row-reduced basis of a subspace of GF(p)^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct FpSpace {
    pub rows: Vec<FVec>,
    pub pivots: Vec<usize>,
}

impl FpAlgebra {
    pub fn new(alg: &LieAlgebra) -> Option<Self> {
        let p = alg.field().order()?;
        let n = alg.dim();
        let mut table = vec![0u32; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for (k, x) in alg.structure(i, j).iter().enumerate() {
                    table[(i * n + j) * n + k] = x.residue().unwrap_or(0);
                }
            }
        }
        let mut inv = vec![0u32; p as usize];
        for a in 1..p {
            inv[a as usize] = (1..p).find(|b| a * b % p == 1).unwrap_or(1);
        }
        Some(FpAlgebra { p, n, table, inv })
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec::PrimeField { p: self.p }
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> FVec {
        let (n, p) = (self.n, self.p as u64);
        let mut acc = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 || i == j {
                    continue;
                }
                let c = (xi as u64 * yj as u64) % p;
                let base = (i * n + j) * n;
                for (k, a) in acc.iter_mut().enumerate() {
                    *a += c * self.table[base + k] as u64;
                }
            }
        }
        acc.into_iter().map(|a| (a % p) as u32).collect()
    }

    /// Residue of `v` modulo the span of a reduced basis.
    pub fn reduce(&self, s: &FpSpace, v: &[u32]) -> FVec {
        let p = self.p;
        let mut v = v.to_vec();
        for (row, &c) in s.rows.iter().zip(&s.pivots) {
            let a = v[c];
            if a != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - a) * r) % p;
                }
            }
        }
        v
    }

    pub fn in_span(&self, s: &FpSpace, v: &[u32]) -> bool {
        self.reduce(s, v).iter().all(|&x| x == 0)
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = FVec>) -> FpSpace {
        let p = self.p;
        let mut rows: Vec<FVec> = vectors.into_iter().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.n {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let s = self.inv[rows[r][c] as usize];
            for x in rows[r].iter_mut() {
                *x = *x * s % p;
            }
            let pivot_row = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let a = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + (p - a) * y) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        FpSpace { rows, pivots }
    }

    pub fn contains(&self, big: &FpSpace, small: &FpSpace) -> bool {
        small.rows.len() <= big.rows.len() && small.rows.iter().all(|v| self.in_span(big, v))
    }

    pub fn is_subalgebra(&self, s: &FpSpace) -> bool {
        let k = s.rows.len();
        (0..k).all(|a| (a + 1..k).all(|b| self.in_span(s, &self.bracket(&s.rows[a], &s.rows[b]))))
    }

    /// `[x, s] ⊆ s` for every `x` spanning `outer`.
    pub fn normalizes(&self, outer: &FpSpace, s: &FpSpace) -> bool {
        outer
            .rows
            .iter()
            .all(|x| s.rows.iter().all(|y| self.in_span(s, &self.bracket(x, y))))
    }

    /// `[Q, v] ⊆ Q + F v` for every `v`.
    pub fn is_quasi_ideal(&self, q: &FpSpace) -> bool {
        let p = self.p;
        let comp: Vec<usize> = (0..self.n).filter(|c| !q.pivots.contains(c)).collect();
        let m = comp.len();
        if m == 0 {
            return true;
        }
        // projective points: first nonzero coordinate equal to one
        let mut v = vec![0u32; self.n];
        for lead in 0..m {
            let free = m - lead - 1;
            let count = (p as u64).pow(free as u32);
            for idx in 0..count {
                v.iter_mut().for_each(|x| *x = 0);
                v[comp[lead]] = 1;
                let mut t = idx;
                for &c in &comp[lead + 1..] {
                    v[c] = (t % p as u64) as u32;
                    t /= p as u64;
                }
                for b in &q.rows {
                    let w = self.reduce(q, &self.bracket(b, &v));
                    // v is already reduced: it lives on non-pivot columns
                    let c = w[comp[lead]];
                    if w.iter().zip(&v).any(|(&wi, &vi)| wi != c * vi % p) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn from_subspace(&self, s: &Subspace) -> FpSpace {
        self.span(s.basis().iter().map(|v| v.iter().map(|x| x.residue().unwrap_or(0)).collect()))
    }

    pub fn to_subspace(&self, s: &FpSpace) -> Subspace {
        let f = self.field();
        Subspace::span(
            f,
            self.n,
            s.rows.iter().map(|r| r.iter().map(|&x| f.from_int(x as i64)).collect::<Vector>()),
        )
    }
}

/// Every `k`-subset of `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Free entries of a reduced basis with the given pivot columns.
pub(crate) fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &c) in pivots.iter().enumerate() {
        for j in c + 1..n {
            if !pivots.contains(&j) {
                out.push((r, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{heisenberg, sl2};

    #[test]
    fn bracket_and_span_match_exact_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let s = sl2(f);
        let fa = FpAlgebra::new(&s).unwrap();
        let x = vec![1, 2, 3];
        let y = vec![4, 0, 1];
        let exact = s.bracket(
            &x.iter().map(|&a| f.from_int(a)).collect::<Vec<_>>(),
            &y.iter().map(|&a| f.from_int(a)).collect::<Vec<_>>(),
        );
        let fast = fa.bracket(&x.iter().map(|&a| a as u32).collect::<Vec<_>>(), &y.iter().map(|&a| a as u32).collect::<Vec<_>>());
        assert_eq!(exact.iter().map(|a| a.residue().unwrap()).collect::<Vec<_>>(), fast);
        let sp = fa.span([vec![2, 4, 0], vec![1, 2, 1], vec![3, 1, 1]]);
        assert_eq!(sp.pivots, vec![0, 2]);
        assert_eq!(fa.to_subspace(&sp).dim(), 2);
    }

    #[test]
    fn heisenberg_center_is_quasi_ideal() {
        let f = FieldSpec::prime(3).unwrap();
        let h = heisenberg(f);
        let fa = FpAlgebra::new(&h).unwrap();
        let z = fa.from_subspace(&h.center());
        assert!(fa.is_quasi_ideal(&z));
    }

    #[test]
    fn counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(free_positions(4, &[0, 2]).len(), 3);
    }
}
