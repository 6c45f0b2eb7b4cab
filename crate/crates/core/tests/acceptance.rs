//! The twelve acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};

use liechains::algebra::{classify_3dim, form_invariants_q, StepCertificate, ThreeDimKind};
use liechains::catalog::{self, CatalogSpec};
use liechains::lattice::{LatticeBudget, SubalgebraLattice};
use liechains::structural::{
    check_maximal_step, chief_series0, minmax_bracket0, modl0, modular_test0, qil0, ModularCase, StepVerdict,
};
use liechains::verify::{self, CheckStatus, VerifyConfig};
use liechains::{FieldSpec, LieAlgebra, Scalar};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn gf(p: u32) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn cross(a: i64, b: i64) -> LieAlgebra {
    catalog::cross_product(q(), &q().from_int(a), &q().from_int(b)).unwrap()
}

fn embed(total: usize, offset: usize, v: &[Scalar]) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = (0..total).map(|_| v[0].field().zero()).collect();
    out[offset..offset + v.len()].clone_from_slice(v);
    out
}

fn maximal_chain_verified(alg: &LieAlgebra, members: &[liechains::Subspace]) -> Result<(), String> {
    for (k, w) in members.windows(2).enumerate() {
        match check_maximal_step(alg, &w[0], &w[1]).map_err(e)? {
            StepVerdict::Holds(_) => {}
            other => return Err(format!("step {} not certified: {other:?}", k + 1)),
        }
    }
    Ok(())
}

fn semidirect() -> Outcome {
    let c = cross(-1, -1);
    let l = catalog::semidirect_adjoint(&c).map_err(e)?;
    let w = classify_3dim(&c).map_err(e)?.special_witness.ok_or("no special witness")?;
    let m = l.span((0..3).map(|i| l.basis_vector(i)).chain([embed(6, 3, &w)]));
    ensure(l.is_subalgebra(&m), "A + Fw is not a subalgebra")?;
    let ell = chief_series0(&l).map_err(e)?.ell;
    let ell_m = chief_series0(&l.restrict(&m).map_err(e)?).map_err(e)?.ell;
    ensure(ell == 2 && ell_m >= 3, format!("l = {ell}, l(A + Fw) = {ell_m}"))?;
    Ok(format!("l = {ell}, l(A + Fw) = {ell_m}"))
}

fn square() -> Outcome {
    let l = catalog::direct_power(&cross(-1, -1), 2).map_err(e)?;
    let b = minmax_bracket0(&l).map_err(e)?;
    ensure(b.ell == 2 && b.exact() == Some(3), format!("l = {}, bracket [{}, {:?}]", b.ell, b.lower, b.upper))?;
    let w = b.witness.ok_or("no witness chain")?;
    ensure(w.length() == 3, "witness length differs")?;
    maximal_chain_verified(&l, &w.members)?;
    Ok(format!("l = 2, minmax = 3, witness dims {:?}", w.dims()))
}

fn distinct_sum() -> Outcome {
    let (a, b) = (cross(-1, -1), cross(-1, -3));
    let ia = form_invariants_q(&a.killing()).map_err(e)?;
    let ib = form_invariants_q(&b.killing()).map_err(e)?;
    ensure(!ia.isometric(&ib), "Killing forms are isometric")?;
    let l = a.direct_sum(&b).map_err(e)?;
    let br = minmax_bracket0(&l).map_err(e)?;
    ensure(br.ell == 2 && br.exact() == Some(4), format!("l = {}, bracket [{}, {:?}]", br.ell, br.lower, br.upper))?;
    Ok("l = 2, minmax = 4, Killing forms not isometric".into())
}

fn sl2_values() -> Outcome {
    let s = catalog::sl2(q()).map_err(e)?;
    let ell = chief_series0(&s).map_err(e)?.ell;
    let mm = minmax_bracket0(&s).map_err(e)?.exact();
    let ml = modl0(&s).map_err(e)?.value;
    let ql = qil0(&s).map_err(e)?.value;
    ensure((ell, mm, ml, ql) == (1, Some(2), 2, 2), format!("{ell}/{mm:?}/{ml}/{ql}"))?;
    let borel = s.span([s.basis_vector(0), s.basis_vector(1)]);
    let v = modular_test0(&s, &borel).map_err(e)?;
    ensure(v.modular && v.case == ModularCase::Split3Case, format!("Borel: {:?}", v.case))?;
    let f = q();
    let x = vec![f.one(), f.zero(), -f.one()];
    let line = s.span([x]);
    match check_maximal_step(&s, &line, &s.full()).map_err(e)? {
        StepVerdict::Holds(StepCertificate::OneDimIn3Simple { .. }) => {}
        other => return Err(format!("F(e - f) step: {other:?}")),
    }
    Ok("l/minmax/modl/qil = 1/2/2/2, Borel split case, F(e - f) maximal".into())
}

fn nonsplit_values() -> Outcome {
    let c = cross(-1, -1);
    ensure(classify_3dim(&c).map_err(e)?.kind == ThreeDimKind::NonsplitSimple, "not non-split")?;
    let (m, qi) = (modl0(&c).map_err(e)?.value, qil0(&c).map_err(e)?.value);
    ensure(m == 2 && qi == 1, format!("modl = {m}, qil = {qi}"))?;
    Ok("modl = 2, qil = 1".into())
}

fn l1_gf2() -> Outcome {
    let f = gf(2);
    let alg = catalog::l1_gamma(f, &f.zero()).map_err(e)?;
    let lat = SubalgebraLattice::enumerate(&alg, &LatticeBudget::default()).map_err(e)?;
    let (l, qi) = (lat.ell(), lat.qil().length());
    ensure(l == 1 && qi == 3, format!("l = {l}, qil = {qi}"))?;
    Ok(format!("l = {l}, qil = {qi}"))
}

fn lattice(alg: &LieAlgebra) -> Result<SubalgebraLattice, String> {
    SubalgebraLattice::enumerate(alg, &LatticeBudget::default()).map_err(e)
}

fn from_family(text: &str, field: FieldSpec) -> Result<LieAlgebra, String> {
    CatalogSpec::new(text.parse().map_err(e)?, field).make().map_err(e)
}

fn codim_one() -> Outcome {
    let l3 = from_family("lm_gamma(3)", gf(5))?;
    let lat = lattice(&l3)?;
    let c3 = lat.nodes().iter().filter(|s| s.dim() + 1 == l3.dim()).count();
    ensure(lat.ell() == 1 && c3 == 1, format!("L3(0)/GF(5): l = {}, {c3} codim-1", lat.ell()))?;

    let l2 = from_family("lm_gamma(2)", gf(2))?;
    let lat = lattice(&l2)?;
    let codim1: Vec<usize> = (0..lat.len()).filter(|&i| lat.node(i).dim() + 1 == l2.dim()).collect();
    let ideals: Vec<usize> = codim1.iter().copied().filter(|&i| lat.is_ideal(i)).collect();
    ensure(codim1.len() == 2 && ideals.len() == 1, format!("L2(0)/GF(2): {} codim-1, {} ideals", codim1.len(), ideals.len()))?;
    let ideal = l2.restrict(lat.node(ideals[0])).map_err(e)?;
    ensure(lattice(&ideal)?.ell() == 1 && !ideal.is_abelian(), "codim-1 ideal is not simple")?;
    Ok("L3(0)/GF(5): simple, one codim-1; L2(0)/GF(2): two codim-1, one a simple ideal".into())
}

fn suites(names: &[&str], min_instances: usize) -> Outcome {
    let cfg = VerifyConfig::default();
    let r = verify::run(names, &cfg).map_err(e)?;
    let fails: Vec<_> = r.checks.iter().filter(|c| c.status == CheckStatus::Fail).collect();
    if let Some(f) = fails.first() {
        return Err(format!("{} failures, first {} / {}: {}", fails.len(), f.suite, f.instance, f.details));
    }
    for n in names {
        let count = r.checks.iter().filter(|c| c.suite == *n && c.status == CheckStatus::Pass).count();
        ensure(count >= min_instances, format!("{n}: only {count} passing instances"))?;
    }
    Ok(format!("{} checks, {} pass, {} indeterminate", r.checks.len(), r.summary.pass, r.summary.indeterminate))
}

fn random_solvables() -> Outcome {
    let mut count = 0;
    for seed in 0..60u64 {
        let (p, n) = (if seed % 2 == 0 { 2 } else { 3 }, 2 + (seed as usize % 3));
        let alg = catalog::random_solvable(gf(p), n, 1000 + seed).map_err(e)?;
        let lat = SubalgebraLattice::enumerate(&alg, &LatticeBudget::default()).map_err(e)?;
        let (chief, short) = (lat.chief_series(false), lat.minmax());
        let (mut a, mut b) = (chief.codims(), short.codims());
        a.sort();
        b.sort();
        ensure(short.length() == lat.ell() && a == b, format!("seed {seed}: minmax {} vs l {}", short.length(), lat.ell()))?;
        count += 1;
    }
    Ok(format!("{count} algebras, minmax = l and codimensions match"))
}

fn witt5() -> Outcome {
    let alg = catalog::witt(gf(5)).map_err(e)?;
    let lat = SubalgebraLattice::enumerate(&alg, &LatticeBudget::default()).map_err(e)?;
    let (l, m, qi) = (lat.ell(), lat.modl().length(), lat.qil().length());
    ensure(l == 1 && qi <= l + 2, format!("l = {l}, qil = {qi}"))?;
    Ok(format!("l = {l}; measured modl = {m}, qil = {qi}"))
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("semidirect product with non-split simple: l = 2, subalgebra with l >= 3", Box::new(semidirect)),
        ("direct square of non-split simple: l = 2, minmax = 3", Box::new(square)),
        ("sum of two non-isomorphic non-split simples: minmax = 4", Box::new(distinct_sum)),
        ("sl2 over Q: 1/2/2/2 with certificates", Box::new(sl2_values)),
        ("non-split simple: modl = 2, qil = 1", Box::new(nonsplit_values)),
        ("L1(0) over GF(2): l = 1, qil = 3", Box::new(l1_gf2)),
        ("codimension-one subalgebras of L3(0)/GF(5) and L2(0)/GF(2)", Box::new(codim_one)),
        ("random solvables over GF(2), GF(3): minmax = l", Box::new(random_solvables)),
        ("coatom identity and bounds on the brute corpus", Box::new(|| suites(&["coatom-identity", "coatom-bounds"], 20))),
        ("minmax lower bounds, quasi-ideal and modular lengths", Box::new(|| suites(&["minmax-lower", "quasi-ideal-length", "modular-length"], 1))),
        ("brute and structural engines agree", Box::new(|| suites(&["engine-agreement"], 1))),
        ("Witt algebra over GF(5) within the default budget", Box::new(witt5)),
    ];
    let mut failed = Vec::new();
    for (n, (desc, f)) in criteria.iter().enumerate() {
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match out {
            Ok(d) => println!("PASS {}: {desc} ({d})", n + 1),
            Err(d) => {
                println!("FAIL {}: {desc} ({d})", n + 1);
                failed.push(n + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
