//! Constructors for the named algebra families.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{classify_3dim, ChainRecord, LieAlgebra};
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{zero_vector, Matrix, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Abelian(usize),
    AlmostAbelian(usize),
    Sl2,
    /// Quaternion-type parameters `(a, b)`.
    CrossProduct(String, String),
    L1Gamma(String),
    /// `m` and `γ_0, …, γ_m` (missing entries are zero).
    LmGamma(usize, Vec<String>),
    Witt,
    SemidirectAdjoint(Box<Family>),
    DirectPower(Box<Family>, usize),
    DiagonalTower(Box<Family>, usize),
    RandomSolvable(usize, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogSpec {
    pub family: Family,
    pub field: FieldSpec,
}

/// Structural data known from the construction itself.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogMeta {
    pub radical: Option<Subspace>,
    pub nilradical: Option<Subspace>,
    pub frattini: Option<Subspace>,
}

pub struct FamilyInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub constraints: &'static str,
}

pub const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo { name: "abelian", params: "n", constraints: "1 <= n <= 12" },
    FamilyInfo {
        name: "almost_abelian",
        params: "n",
        constraints: "1 <= n <= 12; basis x, a1..a(n-1) with [x,a_i] = a_i",
    },
    FamilyInfo { name: "sl2", params: "", constraints: "basis e, h, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h" },
    FamilyInfo {
        name: "cross_product",
        params: "a, b",
        constraints: "a, b nonzero; [e1,e2] = e3, [e2,e3] = -a e1, [e3,e1] = -b e2",
    },
    FamilyInfo { name: "l1_gamma", params: "gamma0", constraints: "any gamma0" },
    FamilyInfo {
        name: "lm_gamma",
        params: "m, gamma0, ..., gamma_m",
        constraints: "m = 1, or m = p^r - 2 (p odd), or m = 2^r - 2, 2^r - 3 (p = 2, r >= 2); (m+1-i) gamma_i = 0, gamma_m = 0, lambda_{i,k+1-i} gamma_{k+1} = 0",
    },
    FamilyInfo { name: "witt", params: "", constraints: "field GF(p) with 5 <= p <= 11; basis e_-1..e_(p-2)" },
    FamilyInfo { name: "semidirect_adjoint", params: "base", constraints: "2 dim(base) <= 12" },
    FamilyInfo { name: "direct_power", params: "base, k", constraints: "k >= 1, k dim(base) <= 12" },
    FamilyInfo { name: "diagonal_tower", params: "base, k", constraints: "base 3-dimensional simple, 1 <= k <= 4" },
    FamilyInfo { name: "random_solvable", params: "n, seed", constraints: "1 <= n <= 8, field GF(p) with p <= 7" },
];

fn ints(f: FieldSpec, xs: &[i64]) -> Vector {
    xs.iter().map(|&x| f.from_int(x)).collect()
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Structure constant `λ_ij` of `[v_i, v_j] = λ_ij v_{i+j}`.
pub fn lambda(i: i64, j: i64) -> i64 {
    binomial(i + j + 1, j) - binomial(i + j + 1, i)
}

fn nonzero(x: &Scalar, what: &str) -> Result<()> {
    if x.is_zero() {
        return Err(Error::BadParameters(format!("{what} must be nonzero")));
    }
    Ok(())
}

pub fn abelian(field: FieldSpec, n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::BadParameters("dimension must be at least 1".into()));
    }
    LieAlgebra::abelian(field, n)
}

pub fn almost_abelian(field: FieldSpec, n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::BadParameters("dimension must be at least 1".into()));
    }
    let mut names = vec!["x".to_string()];
    names.extend((1..n).map(|i| format!("a{i}")));
    LieAlgebra::from_fn(field, names, |i, j| {
        let mut v = zero_vector(field, n);
        if i == 0 {
            v[j] = field.one();
        }
        v
    })
}

pub fn sl2(field: FieldSpec) -> Result<LieAlgebra> {
    let names = vec!["e".into(), "h".into(), "f".into()];
    LieAlgebra::new(
        field,
        names,
        &[(0, 1, ints(field, &[-2, 0, 0])), (0, 2, ints(field, &[0, 1, 0])), (1, 2, ints(field, &[0, 0, -2]))],
    )
}

pub fn cross_product(field: FieldSpec, a: &Scalar, b: &Scalar) -> Result<LieAlgebra> {
    nonzero(a, "a")?;
    nonzero(b, "b")?;
    let z = field.zero();
    LieAlgebra::new(
        field,
        vec!["e1".into(), "e2".into(), "e3".into()],
        &[
            (0, 1, vec![z.clone(), z.clone(), field.one()]),
            (0, 2, vec![z.clone(), b.clone(), z.clone()]),
            (1, 2, vec![-a, z.clone(), z]),
        ],
    )
}

pub fn l1_gamma(field: FieldSpec, gamma0: &Scalar) -> Result<LieAlgebra> {
    let z = field.zero();
    LieAlgebra::new(
        field,
        vec!["u-1".into(), "u0".into(), "u1".into()],
        &[
            (0, 1, vec![field.one(), z.clone(), gamma0.clone()]),
            (0, 2, vec![z.clone(), field.one(), z.clone()]),
            (1, 2, vec![z.clone(), z, field.one()]),
        ],
    )
}

fn admissible_m(field: FieldSpec, m: usize) -> bool {
    if m == 1 {
        return true;
    }
    let p = field.characteristic() as usize;
    if p == 0 {
        return false;
    }
    let mut q = p;
    while q <= m + 3 {
        if p % 2 == 1 && q >= 3 && q - 2 == m {
            return true;
        }
        if p == 2 && q >= 4 && (q - 2 == m || q - 3 == m) {
            return true;
        }
        q *= p;
    }
    false
}

/// `L_m(Γ)` with basis `v_{-1}, v_0, …, v_m`.
pub fn lm_gamma(field: FieldSpec, m: usize, gammas: &[Scalar]) -> Result<LieAlgebra> {
    if m == 0 || !admissible_m(field, m) {
        return Err(Error::BadParameters(format!("m = {m} is not admissible over {field}")));
    }
    if gammas.len() > m + 1 {
        return Err(Error::BadParameters("at most m + 1 gamma values".into()));
    }
    let gamma = |i: usize| gammas.get(i).cloned().unwrap_or_else(|| field.zero());
    for i in 1..=m {
        if !(&field.from_int((m + 1 - i) as i64) * &gamma(i)).is_zero() {
            return Err(Error::BadParameters(format!("(m + 1 - {i}) gamma_{i} must vanish")));
        }
    }
    if !gamma(m).is_zero() && m >= 1 {
        return Err(Error::BadParameters(format!("gamma_{m} must vanish")));
    }
    for k in 1..m {
        for i in 1..=k {
            let l = field.from_int(lambda(i as i64, (k + 1 - i) as i64));
            if !(&l * &gamma(k + 1)).is_zero() {
                return Err(Error::BadParameters(format!("lambda_{{{i},{}}} gamma_{} must vanish", k + 1 - i, k + 1)));
            }
        }
    }
    let n = m + 2;
    // basis index of v_i is i + 1
    let names: Vec<String> = (-1..=m as i64).map(|i| format!("v{i}")).collect();
    LieAlgebra::from_fn(field, names, |a, b| {
        let mut v = zero_vector(field, n);
        let (i, j) = (a as i64 - 1, b as i64 - 1);
        if i == -1 {
            v[(j - 1 + 1) as usize] = field.one();
            v[n - 1] = &v[n - 1] + &gamma(j as usize);
        } else if i + j <= m as i64 {
            v[(i + j + 1) as usize] = field.from_int(lambda(i, j));
        }
        v
    })
}

/// Witt algebra `W(1:1)` over GF(p): `[e_i, e_j] = (j − i) e_{i+j}`.
pub fn witt(field: FieldSpec) -> Result<LieAlgebra> {
    let p = field.characteristic() as i64;
    if !field.is_finite() || p < 5 {
        return Err(Error::BadParameters("the Witt algebra needs GF(p) with p >= 5".into()));
    }
    let n = p as usize;
    let names: Vec<String> = (-1..=p - 2).map(|i| format!("e{i}")).collect();
    LieAlgebra::from_fn(field, names, |a, b| {
        let mut v = zero_vector(field, n);
        let (i, j) = (a as i64 - 1, b as i64 - 1);
        if (-1..=p - 2).contains(&(i + j)) {
            v[(i + j + 1) as usize] = field.from_int(j - i);
        }
        v
    })
}

pub fn semidirect_adjoint(base: &LieAlgebra) -> Result<LieAlgebra> {
    LieAlgebra::semidirect(base, base.ad_basis())
}

pub fn direct_power(base: &LieAlgebra, k: usize) -> Result<LieAlgebra> {
    if k == 0 {
        return Err(Error::BadParameters("k must be at least 1".into()));
    }
    if base.dim() * k > crate::algebra::MAX_DIM {
        return Err(Error::DimensionOutOfRange(base.dim() * k));
    }
    let mut out = base.clone();
    for copy in 2..=k {
        let renamed = base.clone().with_names(base.basis_names().iter().map(|n| format!("{n}_{copy}")).collect());
        out = out.direct_sum(&renamed)?;
    }
    if k > 1 {
        let names = out
            .basis_names()
            .iter()
            .enumerate()
            .map(|(i, n)| if i < base.dim() { format!("{n}_1") } else { n.clone() })
            .collect();
        out = out.with_names(names);
    }
    Ok(out)
}

/// Solvable algebra built as a tower: each step adjoins an element acting
/// by a random derivation of the previous algebra.
pub fn random_solvable(field: FieldSpec, n: usize, seed: u64) -> Result<LieAlgebra> {
    let p = match field.order() {
        Some(p) if p <= 7 => p,
        _ => return Err(Error::BadParameters("random_solvable needs GF(p) with p <= 7".into())),
    };
    if n == 0 || n > 8 {
        return Err(Error::BadParameters("random_solvable needs 1 <= n <= 8".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alg = LieAlgebra::abelian(field, 1)?;
    while alg.dim() < n {
        let ders = alg.derivations();
        let d = alg.dim();
        let mut der = Matrix::zeros(field, d, d);
        for basis_der in &ders {
            let c = field.from_int(rng.gen_range(0..p) as i64);
            der = der.add(&basis_der.scale(&c));
        }
        alg = alg.extend_by_derivation(&der, &format!("x{}", d + 1))?;
    }
    Ok(alg)
}

/// Chain `0 < F·diag(s) < Δ < S ⊕ Δ' < … < S^k` in `direct_power(base, k)`.
/// Dimensions are 0, 1, 3, 6, …, 3k.
pub fn diagonal_chain(base: &LieAlgebra, k: usize, s: &[Scalar]) -> Result<ChainRecord> {
    let class = classify_3dim(base)?;
    if !class.is_simple() {
        return Err(Error::BadParameters("base must be simple".into()));
    }
    if !crate::algebra::induced_has_no_eigenvalue(base, s)? {
        return Err(Error::NotSpecialWitness);
    }
    let l = direct_power(base, k)?;
    let copies: Vec<Vec<Vector>> = (0..k).map(|c| (0..3).map(|t| l.basis_vector(3 * c + t)).collect()).collect();
    crate::structural::diagonal_chain_in(&l, &copies, s)
}

impl CatalogSpec {
    pub fn new(family: Family, field: FieldSpec) -> Self {
        CatalogSpec { family, field }
    }

    pub fn make(&self) -> Result<LieAlgebra> {
        Ok(self.make_with_meta()?.0)
    }

    pub fn make_with_meta(&self) -> Result<(LieAlgebra, CatalogMeta)> {
        make_family(&self.family, self.field)
    }
}

fn make_family(family: &Family, f: FieldSpec) -> Result<(LieAlgebra, CatalogMeta)> {
    let scalar = |s: &str| f.parse_scalar(s);
    let mut meta = CatalogMeta::default();
    let alg = match family {
        Family::Abelian(n) => {
            let a = abelian(f, *n)?;
            meta.radical = Some(a.full());
            meta.nilradical = Some(a.full());
            meta.frattini = Some(a.zero());
            a
        }
        Family::AlmostAbelian(n) => {
            let a = almost_abelian(f, *n)?;
            meta.radical = Some(a.full());
            meta.nilradical = Some(if *n == 1 { a.full() } else { a.span((1..*n).map(|i| a.basis_vector(i))) });
            meta.frattini = Some(a.zero());
            a
        }
        Family::Sl2 => sl2(f)?,
        Family::CrossProduct(a, b) => cross_product(f, &scalar(a)?, &scalar(b)?)?,
        Family::L1Gamma(g) => l1_gamma(f, &scalar(g)?)?,
        Family::LmGamma(m, gs) => {
            let gs = gs.iter().map(|g| scalar(g)).collect::<Result<Vec<_>>>()?;
            lm_gamma(f, *m, &gs)?
        }
        Family::Witt => witt(f)?,
        Family::SemidirectAdjoint(base) => {
            let (b, bm) = make_family(base, f)?;
            let a = semidirect_adjoint(&b)?;
            if bm.radical.as_ref().map_or(false, Subspace::is_zero) {
                let abel = a.span((0..b.dim()).map(|i| a.basis_vector(i)));
                meta.radical = Some(abel.clone());
                meta.nilradical = Some(abel);
                if f.characteristic() == 0 {
                    // the module is completely reducible, so every chief factor is complemented
                    meta.frattini = Some(a.zero());
                }
            }
            a
        }
        Family::DirectPower(base, k) | Family::DiagonalTower(base, k) => {
            let (b, bm) = make_family(base, f)?;
            if matches!(family, Family::DiagonalTower(..)) {
                if b.dim() != 3 || !classify_3dim(&b)?.is_simple() {
                    return Err(Error::BadParameters("diagonal_tower needs a 3-dimensional simple base".into()));
                }
                if *k > 4 {
                    return Err(Error::BadParameters("diagonal_tower supports k <= 4".into()));
                }
            }
            let a = direct_power(&b, *k)?;
            if bm.radical.as_ref().map_or(false, Subspace::is_zero) {
                meta.radical = Some(a.zero());
                meta.nilradical = Some(a.zero());
                if f.characteristic() == 0 {
                    meta.frattini = Some(a.zero());
                }
            }
            a
        }
        Family::RandomSolvable(n, seed) => {
            let a = random_solvable(f, *n, *seed)?;
            meta.radical = Some(a.full());
            a
        }
    };
    if matches!(family, Family::Sl2 | Family::CrossProduct(..)) && f.characteristic() == 0 {
        meta.radical = Some(alg.zero());
        meta.nilradical = Some(alg.zero());
        meta.frattini = Some(alg.zero());
    }
    if matches!(family, Family::Witt) {
        meta.frattini = Some(alg.zero());
    }
    Ok((alg, meta))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Abelian(n) => write!(f, "abelian({n})"),
            Family::AlmostAbelian(n) => write!(f, "almost_abelian({n})"),
            Family::Sl2 => write!(f, "sl2"),
            Family::CrossProduct(a, b) => write!(f, "cross_product({a},{b})"),
            Family::L1Gamma(g) => write!(f, "l1_gamma({g})"),
            Family::LmGamma(m, gs) => {
                write!(f, "lm_gamma({m}")?;
                for g in gs {
                    write!(f, ",{g}")?;
                }
                write!(f, ")")
            }
            Family::Witt => write!(f, "witt"),
            Family::SemidirectAdjoint(b) => write!(f, "semidirect_adjoint({b})"),
            Family::DirectPower(b, k) => write!(f, "direct_power({b},{k})"),
            Family::DiagonalTower(b, k) => write!(f, "diagonal_tower({b},{k})"),
            Family::RandomSolvable(n, s) => write!(f, "random_solvable({n},{s})"),
        }
    }
}

/// Splits `a,b(c,d),e` at top-level commas.
fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur).trim().to_string()),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], split_args(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(Error::parse(s, "unbalanced parentheses")),
            None => (s, Vec::new()),
        };
        let bad = |msg: &str| Error::parse(s, msg);
        let int = |i: usize| -> Result<u64> {
            args.get(i)
                .ok_or_else(|| bad("missing argument"))?
                .parse::<u64>()
                .map_err(|_| bad("expected a nonnegative integer"))
        };
        let arity = |n: usize| -> Result<()> {
            if args.len() != n {
                return Err(bad(&format!("expected {n} argument(s)")));
            }
            Ok(())
        };
        let fam = match name.trim() {
            "abelian" => {
                arity(1)?;
                Family::Abelian(int(0)? as usize)
            }
            "almost_abelian" => {
                arity(1)?;
                Family::AlmostAbelian(int(0)? as usize)
            }
            "sl2" => {
                arity(0)?;
                Family::Sl2
            }
            "cross_product" => {
                arity(2)?;
                Family::CrossProduct(args[0].clone(), args[1].clone())
            }
            "l1_gamma" => {
                arity(1)?;
                Family::L1Gamma(args[0].clone())
            }
            "lm_gamma" => {
                if args.is_empty() {
                    return Err(bad("expected m"));
                }
                Family::LmGamma(int(0)? as usize, args[1..].to_vec())
            }
            "witt" => {
                arity(0)?;
                Family::Witt
            }
            "semidirect_adjoint" => {
                arity(1)?;
                Family::SemidirectAdjoint(Box::new(args[0].parse()?))
            }
            "direct_power" => {
                arity(2)?;
                Family::DirectPower(Box::new(args[0].parse()?), int(1)? as usize)
            }
            "diagonal_tower" => {
                arity(2)?;
                Family::DiagonalTower(Box::new(args[0].parse()?), int(1)? as usize)
            }
            "random_solvable" => {
                arity(2)?;
                Family::RandomSolvable(int(0)? as usize, int(1)?)
            }
            other => return Err(bad(&format!("unknown family '{other}'"))),
        };
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ThreeDimKind;

    fn gf(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn l1_gamma_zero_over_gf2() {
        let f = gf(2);
        let l = l1_gamma(f, &f.zero()).unwrap();
        assert_eq!(l.structure(0, 1), &ints(f, &[1, 0, 0]));
        assert_eq!(l.structure(0, 2), &ints(f, &[0, 1, 0]));
        assert_eq!(l.structure(1, 2), &ints(f, &[0, 0, 1]));
        // the general family reproduces it
        assert_eq!(lm_gamma(f, 1, &[]).unwrap().nonzero_brackets(), l.nonzero_brackets());
    }

    #[test]
    fn witt5_products() {
        let f = gf(5);
        let w = witt(f).unwrap();
        assert_eq!(w.dim(), 5);
        // [e_-1, e_1] = 2 e_0
        assert_eq!(w.structure(0, 2), &ints(f, &[0, 2, 0, 0, 0]));
    }

    #[test]
    fn lm_gamma_admissible_sizes_validate() {
        for (p, m) in [(2, 2), (2, 5), (2, 6), (3, 7), (5, 3), (7, 5), (3, 1)] {
            let f = gf(p);
            let l = lm_gamma(f, m, &[]).unwrap();
            assert_eq!(l.dim(), m + 2);
        }
        assert!(lm_gamma(FieldSpec::Rationals, 3, &[]).is_err());
        assert!(lm_gamma(gf(5), 2, &[]).is_err());
    }

    #[test]
    fn lm_gamma_rejects_bad_gamma() {
        let f = gf(5);
        let g = vec![f.zero(), f.one()];
        assert!(matches!(lm_gamma(f, 3, &g), Err(Error::BadParameters(_))));
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda(0, 1), 1);
        assert_eq!(lambda(1, 0), -1);
        assert_eq!(lambda(1, 1), 0);
        assert_eq!(lambda(0, 2), 2);
    }

    #[test]
    fn cross_products_split_and_nonsplit() {
        let q = FieldSpec::Rationals;
        let c = |a: i64, b: i64| cross_product(q, &q.from_int(a), &q.from_int(b)).unwrap();
        assert_eq!(classify_3dim(&c(1, 1)).unwrap().kind, ThreeDimKind::SplitSimple);
        assert_eq!(classify_3dim(&c(-1, -1)).unwrap().kind, ThreeDimKind::NonsplitSimple);
    }

    #[test]
    fn diagonal_chain_dims() {
        let q = FieldSpec::Rationals;
        let s = cross_product(q, &q.from_int(-1), &q.from_int(-1)).unwrap();
        let w = classify_3dim(&s).unwrap().special_witness.unwrap();
        for k in 1..=3 {
            let ch = diagonal_chain(&s, k, &w).unwrap();
            assert_eq!(ch.length(), k + 1);
            let mut dims = vec![0, 1];
            dims.extend((1..=k).map(|j| 3 * j));
            assert_eq!(ch.dims(), dims);
        }
        let sl = sl2(q).unwrap();
        let h = ints(q, &[0, 1, 0]);
        assert_eq!(diagonal_chain(&sl, 2, &h).unwrap_err(), Error::NotSpecialWitness);
    }

    #[test]
    fn random_solvable_is_deterministic_and_solvable() {
        let f = gf(3);
        let a = random_solvable(f, 4, 42).unwrap();
        let b = random_solvable(f, 4, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.is_solvable());
        assert_eq!(random_solvable(f, 1, 7).unwrap().dim(), 1);
    }

    #[test]
    fn family_text_round_trip() {
        for text in [
            "abelian(3)",
            "sl2",
            "cross_product(-1,-1)",
            "lm_gamma(3,0,0)",
            "direct_power(cross_product(-1,-3),2)",
            "semidirect_adjoint(sl2)",
            "random_solvable(4,42)",
        ] {
            let fam: Family = text.parse().unwrap();
            assert_eq!(fam.to_string(), text);
        }
        assert!("nonsense(1)".parse::<Family>().is_err());
    }
}
