use serde::Serialize;

use super::{minimal_ideal_in0, minimal_ideal_step0};
use crate::algebra::{
    classify_3dim, form_invariants_q, il, induced_has_no_eigenvalue, nilradical0, radical0, simple_ideals,
    ChainKind, ChainRecord, LieAlgebra, StepCertificate, ThreeDimKind,
};
use crate::error::{Error, Result};
use crate::fields::{roots_in_field, FieldSpec, Scalar};
use crate::linalg::{add_vectors, axpy, zero_vector, Matrix, Subspace, Vector};

fn require_char0(alg: &LieAlgebra) -> Result<()> {
    if alg.field().characteristic() != 0 {
        return Err(Error::WrongCharacteristic);
    }
    Ok(())
}

fn require_subalgebra(alg: &LieAlgebra, u: &Subspace) -> Result<()> {
    if u.ambient_dim() != alg.dim() {
        return Err(Error::AmbientMismatch(u.ambient_dim(), alg.dim()));
    }
    if !alg.is_subalgebra(u) {
        return Err(Error::NotASubalgebra);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefSeries {
    pub ell: usize,
    pub series: ChainRecord,
}

impl ChiefSeries {
    pub fn factor_dims(&self) -> Vec<usize> {
        self.series.codims()
    }
}

/// Chief series in characteristic 0: abelian factors are found by spinning
/// inside the nilradical and certified irreducible, semisimple factors come
/// from the decomposition into simple ideals.
pub fn chief_series0(alg: &LieAlgebra) -> Result<ChiefSeries> {
    require_char0(alg)?;
    let chain = il(alg, &alg.full())?;
    let certs = vec![StepCertificate::IdealStep; chain.value];
    Ok(ChiefSeries {
        ell: chain.value,
        series: ChainRecord::new(ChainKind::Chief, chain.witness, certs)?,
    })
}

/// Whether `b/c` is a chief factor (both ideals, `b/c` minimal in `L/c`).
pub fn is_chief_step(alg: &LieAlgebra, c: &Subspace, b: &Subspace) -> Result<bool> {
    if !alg.is_ideal(c) || !alg.is_ideal(b) || !b.contains(c)? || b.dim() == c.dim() {
        return Ok(false);
    }
    let m = if alg.field().is_finite() {
        crate::algebra::minimal_ideal_step_gf(alg, c, b)?
    } else {
        minimal_ideal_step0(alg, c, b)?
    };
    Ok(m.dim() == b.dim())
}

/// `L = Fx ∔ A` with `A` abelian and `ad x` the identity on `A`
/// (up to rescaling `x`). One-dimensional algebras count.
pub fn is_almost_abelian(alg: &LieAlgebra) -> bool {
    let d = alg.bracket_space(&alg.full(), &alg.full());
    if alg.dim() - d.dim() != 1 {
        return false;
    }
    if d.is_zero() {
        return true;
    }
    if !alg.bracket_space(&d, &d).is_zero() {
        return false;
    }
    let Some(&c) = d.complement_columns().first() else { return false };
    let x = alg.basis_vector(c);
    let first = alg.bracket(&x, &d.basis()[0]);
    let Some(i) = d.pivots().first().copied() else { return false };
    let lambda = &first[i] / &d.basis()[0][i];
    !lambda.is_zero()
        && d.basis().iter().all(|y| {
            let z = alg.bracket(&x, y);
            z.iter().zip(y).all(|(a, b)| *a == &lambda * b)
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModularCase {
    Ideal,
    AlmostAbelianCase,
    Split3Case,
    Nonsplit3Case,
    NotModular,
}

impl ModularCase {
    pub fn label(&self) -> &'static str {
        match self {
            ModularCase::Ideal => "ideal",
            ModularCase::AlmostAbelianCase => "almost_abelian_case",
            ModularCase::Split3Case => "split3_case",
            ModularCase::Nonsplit3Case => "nonsplit3_case",
            ModularCase::NotModular => "not_modular",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularVerdict {
    pub modular: bool,
    pub case: ModularCase,
}

/// Modularity by the characteristic-0 classification of modular
/// subalgebras, applied to the structure constants as given. Exact in
/// characteristic 0; over other fields it only reports which case matches.
pub fn modular_by_classification(alg: &LieAlgebra, u: &Subspace) -> Result<ModularVerdict> {
    require_subalgebra(alg, u)?;
    let verdict = |case| {
        Ok(ModularVerdict {
            modular: case != ModularCase::NotModular,
            case,
        })
    };
    if alg.is_ideal(u) {
        return verdict(ModularCase::Ideal);
    }
    let core = alg.core(u);
    let (q, quo) = alg.quotient(&core)?;
    let uq = quo.project_subspace(u)?;
    if q.dim() == 3 {
        let class = classify_3dim(&q)?;
        match (class.kind, uq.dim()) {
            (ThreeDimKind::SplitSimple, 2) => return verdict(ModularCase::Split3Case),
            (ThreeDimKind::NonsplitSimple, 1) if induced_has_no_eigenvalue(&q, &uq.basis()[0])? => {
                return verdict(ModularCase::Nonsplit3Case)
            }
            _ => {}
        }
    }
    if uq.dim() == 1 && is_almost_abelian(&q) {
        // the spanning element must act as the identity on [Q, Q], up to scale
        let d = q.bracket_space(&q.full(), &q.full());
        let x = &uq.basis()[0];
        if !d.contains_vector(x) {
            return verdict(ModularCase::AlmostAbelianCase);
        }
    }
    verdict(ModularCase::NotModular)
}

pub fn modular_test0(alg: &LieAlgebra, u: &Subspace) -> Result<ModularVerdict> {
    require_char0(alg)?;
    modular_by_classification(alg, u)
}

/// Quasi-ideal test by classification: `U/U_L` has codimension at most one
/// in `L/U_L`, or `L/U_L` is almost abelian.
pub fn quasi_ideal_by_classification(alg: &LieAlgebra, u: &Subspace) -> Result<bool> {
    require_subalgebra(alg, u)?;
    if alg.dim() - u.dim() <= 1 || alg.is_ideal(u) {
        return Ok(true);
    }
    let core = alg.core(u);
    let (q, _) = alg.quotient(&core)?;
    Ok(is_almost_abelian(&q))
}

pub fn quasi_ideal_test0(alg: &LieAlgebra, u: &Subspace) -> Result<bool> {
    require_char0(alg)?;
    quasi_ideal_by_classification(alg, u)
}

/// A 2-dimensional subalgebra of a split 3-dimensional simple algebra.
pub fn borel_of_split3(alg: &LieAlgebra) -> Result<Subspace> {
    let f = alg.field();
    for x in crate::algebra::candidate_sweep(f) {
        if crate::linalg::is_zero_vector(&x) {
            continue;
        }
        let ad = alg.ad(&x);
        for lambda in roots_in_field(&ad.min_poly())? {
            if lambda.is_zero() {
                continue;
            }
            let shifted = ad.sub(&Matrix::identity(f, alg.dim()).scale(&lambda));
            if let Some(y) = shifted.kernel().into_iter().next() {
                let b = alg.span([x.clone(), y]);
                if b.dim() == 2 && alg.is_subalgebra(&b) {
                    return Ok(b);
                }
            }
        }
    }
    Err(Error::Indeterminate("no two-dimensional subalgebra found in the sweep".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainValue {
    pub value: usize,
    pub witness: ChainRecord,
}

struct TopSimple {
    // ideal K with L/K 3-dimensional simple
    kernel: Subspace,
    quotient: LieAlgebra,
    quo: crate::linalg::Quotient,
    kind: ThreeDimKind,
    witness: Option<Vector>,
}

/// Ideals `K` with `L/K` a 3-dimensional simple algebra, one per
/// 3-dimensional simple ideal of `L/R`.
fn three_dim_tops(alg: &LieAlgebra) -> Result<Vec<TopSimple>> {
    let r = radical0(alg)?;
    let (s, sq) = alg.quotient(&r)?;
    let parts = simple_ideals(&s)?;
    let mut out = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if p.dim() != 3 {
            continue;
        }
        let others = parts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .try_fold(s.zero(), |acc, (_, o)| acc.sum(o))?;
        let kernel = sq.preimage(&others);
        let (quotient, quo) = alg.quotient(&kernel)?;
        let class = classify_3dim(&quotient)?;
        out.push(TopSimple {
            kernel,
            quotient,
            quo,
            kind: class.kind,
            witness: class.special_witness,
        });
    }
    Ok(out)
}

fn chain_through_top(alg: &LieAlgebra, top: &TopSimple, middle: &Subspace, kind: ChainKind) -> Result<ChainRecord> {
    let below = il(alg, &top.kernel)?;
    let mut members = below.witness;
    let mut certs = vec![StepCertificate::IdealStep; members.len() - 1];
    members.push(top.quo.preimage(middle));
    certs.push(StepCertificate::Theory("classified-step".into()));
    members.push(alg.full());
    certs.push(if middle.dim() == 2 {
        StepCertificate::Codim1
    } else {
        StepCertificate::one_dim(&top.quo.lift(&middle.basis()[0]))
    });
    ChainRecord::new(kind, members, certs)
}

/// `modℓ(L)` in characteristic 0 with a verified witness chain.
pub fn modl0(alg: &LieAlgebra) -> Result<ChainValue> {
    require_char0(alg)?;
    let chief = chief_series0(alg)?;
    let tops = three_dim_tops(alg)?;
    let witness = match tops.first() {
        None => {
            let mut w = chief.series.clone();
            w.kind = ChainKind::Modular;
            w
        }
        Some(top) => {
            let middle = match top.kind {
                ThreeDimKind::SplitSimple => borel_of_split3(&top.quotient)?,
                _ => {
                    let x = top
                        .witness
                        .clone()
                        .ok_or_else(|| Error::Indeterminate("no one-dimensional maximal subalgebra found".into()))?;
                    top.quotient.span([x])
                }
            };
            chain_through_top(alg, top, &middle, ChainKind::Modular)?
        }
    };
    for m in &witness.members {
        if !modular_test0(alg, m)?.modular {
            return Err(Error::VerificationFailed("witness member is not modular".into()));
        }
    }
    Ok(ChainValue {
        value: witness.length(),
        witness,
    })
}

/// `qiℓ(L)` in characteristic 0 with a verified witness chain.
pub fn qil0(alg: &LieAlgebra) -> Result<ChainValue> {
    require_char0(alg)?;
    let chief = chief_series0(alg)?;
    let tops = three_dim_tops(alg)?;
    let witness = match tops.iter().find(|t| t.kind == ThreeDimKind::SplitSimple) {
        None => {
            let mut w = chief.series.clone();
            w.kind = ChainKind::Quasiideal;
            w
        }
        Some(top) => {
            let borel = borel_of_split3(&top.quotient)?;
            chain_through_top(alg, top, &borel, ChainKind::Quasiideal)?
        }
    };
    for m in &witness.members {
        if !quasi_ideal_test0(alg, m)? {
            return Err(Error::VerificationFailed("witness member is not a quasi-ideal".into()));
        }
    }
    Ok(ChainValue {
        value: witness.length(),
        witness,
    })
}

/// A subalgebra `M ⊇ c` with `M + a = L` and `M ∩ a = c`, for ideals
/// `c ⊂ a` with `a/c` abelian. `None` when no such complement exists.
pub fn complement_of_factor(alg: &LieAlgebra, c: &Subspace, a: &Subspace) -> Result<Option<Subspace>> {
    let (q, quo) = alg.quotient(c)?;
    let abar = quo.project_subspace(a)?;
    let f = q.field();
    let comp = abar.complement_columns();
    let piv = abar.pivots().to_vec();
    let (k, m) = (comp.len(), piv.len());
    let w: Vec<Vector> = comp.iter().map(|&i| q.basis_vector(i)).collect();
    // A-coordinates of a vector lying in abar
    let acoords = |v: &[Scalar]| -> Vector { piv.iter().map(|&p| v[p].clone()).collect() };
    let unknowns = k * m;
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let b = q.bracket(&w[i], &w[j]);
            let wpart = abar.reduce(&b);
            let apart = acoords(&crate::linalg::sub_vectors(&b, &wpart));
            let wcoef: Vec<Scalar> = comp.iter().map(|&cidx| wpart[cidx].clone()).collect();
            let mut block = vec![vec![f.zero(); unknowns]; m];
            for u in 0..unknowns {
                let (i0, t0) = (u / m, u % m);
                let at = &abar.basis()[t0];
                let mut e = zero_vector(f, q.dim());
                if i0 == j {
                    e = add_vectors(&e, &q.bracket(&w[i], at));
                }
                if i0 == i {
                    e = crate::linalg::sub_vectors(&e, &q.bracket(&w[j], at));
                }
                if !wcoef[i0].is_zero() {
                    axpy(&mut e, &-&wcoef[i0], at);
                }
                for (t, x) in acoords(&e).into_iter().enumerate() {
                    block[t][u] = x;
                }
            }
            for (t, row) in block.into_iter().enumerate() {
                rows.push(row);
                rhs.push(-&apart[t]);
            }
        }
    }
    let delta = if rows.is_empty() {
        vec![f.zero(); unknowns]
    } else {
        match Matrix::from_rows(f, unknowns, rows)?.solve(&rhs) {
            Some(d) => d,
            None => return Ok(None),
        }
    };
    let mbar = q.span((0..k).map(|i| {
        let mut v = w[i].clone();
        for t in 0..m {
            axpy(&mut v, &delta[i * m + t], &abar.basis()[t]);
        }
        v
    }));
    if !q.is_subalgebra(&mbar) {
        return Err(Error::VerificationFailed("complement is not a subalgebra".into()));
    }
    Ok(Some(quo.preimage(&mbar)))
}

/// A maximal subalgebra `M` complementing a chief factor `A/C` inside the
/// radical, with `C` inside the Frattini ideal.
fn peel_radical(alg: &LieAlgebra) -> Result<(Subspace, usize)> {
    let mut c = alg.zero();
    loop {
        let (q, quo) = alg.quotient(&c)?;
        let n = nilradical0(&q)?;
        if n.is_zero() {
            return Err(Error::ConstructionUnavailable("radical exhausted without a complement".into()));
        }
        let a = quo.preimage(&minimal_ideal_in0(&q, &n)?);
        if let Some(m) = complement_of_factor(alg, &c, &a)? {
            return Ok((m, a.dim() - c.dim()));
        }
        c = a;
    }
}

fn lift_chain(u: &Subspace, chain: &ChainRecord) -> Vec<Subspace> {
    chain.members.iter().map(|m| u.absolute(m)).collect()
}

fn step_cert(codim: usize) -> StepCertificate {
    if codim == 1 {
        StepCertificate::Codim1
    } else {
        StepCertificate::Theory("complement-of-chief-factor".into())
    }
}

/// Maximal chain of a solvable algebra whose codimensions are the chief
/// factor dimensions, built top-down from complements of chief factors.
pub fn solvable_maxchain0(alg: &LieAlgebra) -> Result<ChainRecord> {
    require_char0(alg)?;
    if !alg.is_solvable() {
        return Err(Error::BadParameters("algebra is not solvable".into()));
    }
    maxchain0(alg)
}

/// Maximal chain in characteristic 0: complements peel off the radical
/// one chief factor at a time, and the semisimple part is handled by
/// diagonal or one-dimensional steps through 3-dimensional simple ideals.
pub fn maxchain0(alg: &LieAlgebra) -> Result<ChainRecord> {
    require_char0(alg)?;
    if alg.dim() == 0 {
        return ChainRecord::new(ChainKind::Maximal, vec![alg.zero()], vec![]);
    }
    let r = radical0(alg)?;
    if r.is_zero() {
        return semisimple_maxchain0(alg);
    }
    let (m, codim) = peel_radical(alg)?;
    let sub = alg.restrict(&m)?;
    let inner = maxchain0(&sub)?;
    let mut members = lift_chain(&m, &inner);
    members.push(alg.full());
    let mut certs = inner.certificates;
    certs.push(step_cert(codim));
    ChainRecord::new(ChainKind::Maximal, members, certs)
}

/// Chain `0 < F s < Δ < S_1 ⊕ Δ' < … < L` through the diagonals of
/// aligned copies. `copies[c]` lists the images of a common basis in copy
/// `c`; `s` is given in that basis.
pub fn diagonal_chain_in(alg: &LieAlgebra, copies: &[Vec<Vector>], s: &[Scalar]) -> Result<ChainRecord> {
    let k = copies.len();
    let f = alg.field();
    let embed = |range: std::ops::Range<usize>, x: &[Scalar]| -> Vector {
        let mut v = zero_vector(f, alg.dim());
        for c in range {
            for (coef, b) in x.iter().zip(&copies[c]) {
                axpy(&mut v, coef, b);
            }
        }
        v
    };
    let d = copies[0].len();
    let unit = |t: usize| crate::linalg::unit_vector(f, d, t);
    let stage = |j: usize| -> Subspace {
        let mut vs: Vec<Vector> = copies[..j].iter().flatten().cloned().collect();
        vs.extend((0..d).map(|t| embed(j..k, &unit(t))));
        alg.span(vs)
    };
    let sd = embed(0..k, s);
    let mut members = vec![alg.zero(), alg.span([sd.clone()]), stage(0)];
    let mut certs = vec![StepCertificate::Codim1, StepCertificate::one_dim(&sd)];
    for j in 1..k {
        members.push(stage(j));
        certs.push(StepCertificate::Theory("diagonal-maximal".into()));
    }
    for m in &members {
        if !alg.is_subalgebra(m) {
            return Err(Error::VerificationFailed("diagonal chain member is not a subalgebra".into()));
        }
    }
    ChainRecord::new(ChainKind::Maximal, members, certs)
}

fn semisimple_maxchain0(alg: &LieAlgebra) -> Result<ChainRecord> {
    let parts = simple_ideals(alg)?;
    let mut algs = Vec::new();
    let mut witnesses = Vec::new();
    for p in &parts {
        if p.dim() != 3 {
            return Err(Error::Indeterminate(format!("simple ideal of dimension {}", p.dim())));
        }
        let sub = alg.restrict(p)?;
        let w = classify_3dim(&sub)?
            .special_witness
            .ok_or_else(|| Error::Indeterminate("no one-dimensional maximal subalgebra found".into()))?;
        algs.push(sub);
        witnesses.push(w);
    }
    let aligned = algs.iter().all(|a| a.nonzero_brackets() == algs[0].nonzero_brackets());
    if aligned {
        let copies: Vec<Vec<Vector>> = parts.iter().map(|p| p.basis().to_vec()).collect();
        return diagonal_chain_in(alg, &copies, &witnesses[0]);
    }
    // S_1 ⊕ … ⊕ S_{j-1} < … ⊕ F s_j < S_1 ⊕ … ⊕ S_j
    let mut members = vec![alg.zero()];
    let mut certs = Vec::new();
    let mut acc = alg.zero();
    for (p, w) in parts.iter().zip(&witnesses) {
        let s = p.from_coordinates(w);
        members.push(acc.sum(&alg.span([s.clone()]))?);
        certs.push(StepCertificate::Codim1);
        acc = acc.sum(p)?;
        members.push(acc.clone());
        certs.push(StepCertificate::one_dim(&s));
    }
    ChainRecord::new(ChainKind::Maximal, members, certs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundReason {
    /// minmax ≥ ℓ for every algebra
    ChiefLength,
    /// minmax ≥ ℓ + 1 for nonsolvable algebras
    Nonsolvable,
    /// minmax ≥ ℓ + 2 unless `L/R` is a sum of isomorphic 3-dimensional simples
    NotIsotypic,
    /// minmax ≥ 2n for a sum of n pairwise non-isomorphic non-split
    /// 3-dimensional simples: every maximal subalgebra drops one summand to a line
    DistinctNonsplit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinmaxBracket {
    pub ell: usize,
    pub lower: usize,
    pub lower_reason: LowerBoundReason,
    pub upper: Option<usize>,
    pub witness: Option<ChainRecord>,
    pub note: Option<String>,
}

impl MinmaxBracket {
    pub fn exact(&self) -> Option<usize> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }
}

/// Whether `L/R` is certainly not a direct sum of pairwise isomorphic
/// 3-dimensional simple algebras.
fn certainly_not_isotypic(alg: &LieAlgebra) -> Result<bool> {
    let r = radical0(alg)?;
    let (s, _) = alg.quotient(&r)?;
    let parts = simple_ideals(&s)?;
    if parts.iter().any(|p| p.dim() != 3) {
        return Ok(true);
    }
    if s.field() != FieldSpec::Rationals {
        return Ok(false);
    }
    let invariants = parts
        .iter()
        .map(|p| form_invariants_q(&s.restrict(p)?.killing()))
        .collect::<Result<Vec<_>>>()?;
    Ok(invariants.iter().any(|i| !i.isometric(&invariants[0])))
}

/// `Some(n)` when `L` is semisimple with `n > 1` simple ideals, all
/// 3-dimensional non-split with pairwise non-isometric Killing forms over ℚ.
fn distinct_nonsplit_count(alg: &LieAlgebra) -> Result<Option<usize>> {
    if alg.field() != FieldSpec::Rationals || !radical0(alg)?.is_zero() {
        return Ok(None);
    }
    let parts = simple_ideals(alg)?;
    if parts.len() < 2 || parts.iter().any(|p| p.dim() != 3) {
        return Ok(None);
    }
    let mut forms = Vec::new();
    for p in &parts {
        let s = alg.restrict(p)?;
        if classify_3dim(&s)?.kind != ThreeDimKind::NonsplitSimple {
            return Ok(None);
        }
        forms.push(form_invariants_q(&s.killing())?);
    }
    let distinct = (0..forms.len()).all(|i| (i + 1..forms.len()).all(|j| !forms[i].isometric(&forms[j])));
    Ok(distinct.then_some(parts.len()))
}

/// Lower and upper bounds for minmax in characteristic 0; exact when they meet.
pub fn minmax_bracket0(alg: &LieAlgebra) -> Result<MinmaxBracket> {
    require_char0(alg)?;
    let ell = chief_series0(alg)?.ell;
    let (lower, lower_reason) = if alg.is_solvable() {
        (ell, LowerBoundReason::ChiefLength)
    } else if let Some(n) = distinct_nonsplit_count(alg)? {
        (2 * n, LowerBoundReason::DistinctNonsplit)
    } else if certainly_not_isotypic(alg)? {
        (ell + 2, LowerBoundReason::NotIsotypic)
    } else {
        (ell + 1, LowerBoundReason::Nonsolvable)
    };
    let (upper, witness, note) = match maxchain0(alg) {
        Ok(chain) => (Some(chain.length()), Some(chain), None),
        Err(e) if e.is_indeterminate() || matches!(e, Error::ConstructionUnavailable(_)) => (None, None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    if let Some(u) = upper {
        if u < lower {
            return Err(Error::VerificationFailed(format!("maximal chain of length {u} below the lower bound {lower}")));
        }
    }
    Ok(MinmaxBracket {
        ell,
        lower,
        lower_reason,
        upper,
        witness,
        note,
    })
}

/// Outcome of checking one step of a claimed chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepVerdict {
    Holds(StepCertificate),
    Fails(String),
    Undecided(String),
}

/// Is `lower` a maximal subalgebra of `upper`?
pub fn check_maximal_step(alg: &LieAlgebra, lower: &Subspace, upper: &Subspace) -> Result<StepVerdict> {
    if !alg.is_subalgebra(lower) || !alg.is_subalgebra(upper) {
        return Ok(StepVerdict::Fails("not a subalgebra".into()));
    }
    if !upper.contains(lower)? || upper.dim() == lower.dim() {
        return Ok(StepVerdict::Fails("not a strict inclusion".into()));
    }
    if upper.dim() - lower.dim() == 1 {
        return Ok(StepVerdict::Holds(StepCertificate::Codim1));
    }
    let ua = alg.restrict(upper)?;
    let v = upper.relative(lower)?;
    if alg.field().is_finite() {
        let lat = crate::lattice::SubalgebraLattice::enumerate(&ua, &crate::lattice::LatticeBudget::default())?;
        let i = lat.index_of(&v).ok_or_else(|| Error::VerificationFailed("subalgebra missing from lattice".into()))?;
        return Ok(if lat.is_maximal(i) {
            StepVerdict::Holds(StepCertificate::BruteMaximal)
        } else {
            StepVerdict::Fails("an intermediate subalgebra exists".into())
        });
    }
    let core = ua.core(&v);
    let (q, quo) = ua.quotient(&core)?;
    let vq = quo.project_subspace(&v)?;
    if q.dim() == 3 && vq.dim() == 1 && classify_3dim(&q)?.is_simple() {
        let x = &vq.basis()[0];
        return Ok(if induced_has_no_eigenvalue(&q, x)? {
            StepVerdict::Holds(StepCertificate::one_dim(&upper.from_coordinates(&quo.lift(x))))
        } else {
            StepVerdict::Fails("ad x has an eigenvalue on the quotient".into())
        });
    }
    let rq = radical0(&q)?;
    if !rq.is_zero() {
        let a = minimal_ideal_in0(&q, &rq)?;
        let sum = vq.sum(&a)?;
        return Ok(if sum.dim() < q.dim() {
            StepVerdict::Fails("lower plus a minimal ideal is intermediate".into())
        } else {
            StepVerdict::Holds(StepCertificate::Theory("complement-of-chief-factor".into()))
        });
    }
    let parts = simple_ideals(&q)?;
    if parts.len() == 2 && parts[0].dim() == vq.dim() && parts[1].dim() == vq.dim() {
        if vq.intersect(&parts[0])?.is_zero() && vq.intersect(&parts[1])?.is_zero() {
            return Ok(StepVerdict::Holds(StepCertificate::Theory("diagonal-maximal".into())));
        }
    }
    Ok(StepVerdict::Undecided("no maximality criterion applies".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{almost_abelian3, heisenberg, q, sl2, v};
    use crate::catalog;

    fn cross(a: i64, b: i64) -> LieAlgebra {
        let f = q();
        catalog::cross_product(f, &f.from_int(a), &f.from_int(b)).unwrap()
    }

    #[test]
    fn chief_lengths() {
        let a = LieAlgebra::abelian(q(), 4).unwrap();
        assert_eq!(chief_series0(&a).unwrap().ell, 4);
        let s = sl2(q());
        assert_eq!(chief_series0(&s.direct_sum(&s).unwrap()).unwrap().ell, 2);
        let h = heisenberg(q());
        assert_eq!(chief_series0(&h).unwrap().factor_dims(), vec![1, 1, 1]);
    }

    #[test]
    fn sl2_modular_cases() {
        let s = sl2(q());
        let borel = s.span([s.basis_vector(0), s.basis_vector(1)]);
        assert_eq!(modular_test0(&s, &borel).unwrap().case, ModularCase::Split3Case);
        let e = s.span([s.basis_vector(0)]);
        assert_eq!(modular_test0(&s, &e).unwrap().case, ModularCase::NotModular);
        assert!(!quasi_ideal_test0(&s, &e).unwrap());
        assert!(quasi_ideal_test0(&s, &borel).unwrap());
        let ef = s.span([v(q(), &[1, 0, -1])]);
        assert!(!modular_test0(&s, &ef).unwrap().modular);
    }

    #[test]
    fn nonsplit_special_line_is_modular() {
        let c = cross(-1, -1);
        let w = classify_3dim(&c).unwrap().special_witness.unwrap();
        let line = c.span([w]);
        assert_eq!(modular_test0(&c, &line).unwrap().case, ModularCase::Nonsplit3Case);
        assert!(!quasi_ideal_test0(&c, &line).unwrap());
    }

    #[test]
    fn almost_abelian_lines() {
        let a = almost_abelian3(q());
        assert!(is_almost_abelian(&a));
        let x = a.span([a.basis_vector(0)]);
        assert_eq!(modular_test0(&a, &x).unwrap().case, ModularCase::AlmostAbelianCase);
        assert!(quasi_ideal_test0(&a, &x).unwrap());
        assert!(!is_almost_abelian(&heisenberg(q())));
    }

    #[test]
    fn modl_and_qil_values() {
        let s = sl2(q());
        assert_eq!(modl0(&s).unwrap().value, 2);
        assert_eq!(qil0(&s).unwrap().value, 2);
        let c = cross(-1, -1);
        assert_eq!(modl0(&c).unwrap().value, 2);
        assert_eq!(qil0(&c).unwrap().value, 1);
        let a = LieAlgebra::abelian(q(), 3).unwrap();
        assert_eq!((modl0(&a).unwrap().value, qil0(&a).unwrap().value), (3, 3));
    }

    #[test]
    fn solvable_chain_codims_match_chief_factors() {
        let a = almost_abelian3(q());
        let ch = solvable_maxchain0(&a).unwrap();
        assert_eq!(ch.codims(), vec![1, 1, 1]);
        // rotation module: A = Q^2 with x acting by a rotation
        let f = q();
        let rot = LieAlgebra::new(
            f,
            vec!["a1".into(), "a2".into(), "x".into()],
            &[(0, 2, v(f, &[0, 1, 0])), (1, 2, v(f, &[-1, 0, 0]))],
        )
        .unwrap();
        let ch = solvable_maxchain0(&rot).unwrap();
        let mut codims = ch.codims();
        codims.sort();
        assert_eq!(codims, vec![1, 2]);
        let mut chief = chief_series0(&rot).unwrap().factor_dims();
        chief.sort();
        assert_eq!(codims, chief);
    }

    #[test]
    fn minmax_brackets() {
        let s = sl2(q());
        let b = minmax_bracket0(&s).unwrap();
        assert_eq!((b.ell, b.exact()), (1, Some(2)));
        let c = cross(-1, -1);
        let cc = c.direct_sum(&c).unwrap();
        assert_eq!(minmax_bracket0(&cc).unwrap().exact(), Some(3));
        let d = c.direct_sum(&cross(-1, -3)).unwrap();
        let b = minmax_bracket0(&d).unwrap();
        assert_eq!((b.ell, b.exact()), (2, Some(4)));
        let h = heisenberg(q());
        assert_eq!(minmax_bracket0(&h).unwrap().exact(), Some(3));
    }

    #[test]
    fn maximal_step_checks() {
        let s = sl2(q());
        let e = s.span([s.basis_vector(0)]);
        assert!(matches!(check_maximal_step(&s, &e, &s.full()).unwrap(), StepVerdict::Fails(_)));
        let ef = s.span([v(q(), &[1, 0, -1])]);
        assert!(matches!(
            check_maximal_step(&s, &ef, &s.full()).unwrap(),
            StepVerdict::Holds(StepCertificate::OneDimIn3Simple { .. })
        ));
        let c = cross(-1, -1);
        let cc = c.direct_sum(&c).unwrap();
        let diag = cc.span((0..3).map(|t| {
            let mut x = cc.basis_vector(t);
            x[t + 3] = q().one();
            x
        }));
        assert_eq!(
            check_maximal_step(&cc, &diag, &cc.full()).unwrap(),
            StepVerdict::Holds(StepCertificate::Theory("diagonal-maximal".into()))
        );
    }

    #[test]
    fn chief_step_detection() {
        let h = heisenberg(q());
        assert!(is_chief_step(&h, &h.zero(), &h.center()).unwrap());
        assert!(!is_chief_step(&h, &h.zero(), &h.full()).unwrap());
    }
}
