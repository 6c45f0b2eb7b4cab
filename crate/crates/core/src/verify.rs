//! Replays the structural statements about chain lengths on catalog and
//! random instances, computing both sides independently where possible.
//!
//! Every check ends as `pass`, `fail`, `indeterminate` or `measured`. The
//! last is used over fields where a statement's hypotheses do not hold, so
//! the value is recorded without a claim.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    classify_3dim, il, nilradical0, quasi_ideal_grid, quasi_ideal_lines, radical0, simple_ideals, LieAlgebra,
};
use crate::catalog::{self, CatalogMeta, CatalogSpec};
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::lattice::{LatticeBudget, SubalgebraLattice};
use crate::linalg::{Subspace, Vector};
use crate::structural::{
    check_maximal_step, chief_series0, minmax_bracket0, modl0, modular_by_classification, qil0,
    quasi_ideal_by_classification, solvable_maxchain0, MinmaxBracket, StepVerdict,
};

pub const SCHEMA: &str = "suite/1";

/// Statements that are not replayed, with the reason.
pub const OUT_OF_SCOPE: &[&str] = &[
    "statements over algebraically closed fields of characteristic zero: no such field is available; \
     the suites only assert that no decisive instance contradicts them",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Indeterminate,
    Measured,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub instance: String,
    pub status: CheckStatus,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub measured: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub seed: u64,
    pub suites: Vec<&'static str>,
    pub out_of_scope: Vec<&'static str>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out += &format!("{:<13} {:<20} {:<44} {}\n", format!("{:?}", c.status).to_lowercase(), c.suite, c.instance, c.details);
        }
        let s = &self.summary;
        out += &format!(
            "pass {}  fail {}  indeterminate {}  measured {}\n",
            s.pass, s.fail, s.indeterminate, s.measured
        );
        out
    }
}

pub struct SuiteInfo {
    pub name: &'static str,
    pub statement: &'static str,
    run: fn(&Ctx) -> Vec<CheckRecord>,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo { name: "coatom-identity", statement: "l(M) - l(L) = il_M(M_L) - il_L(M_L) + il_{M/M_L}((M^B)/M_L) - 1 for maximal M", run: coatom_identity },
    SuiteInfo { name: "coatom-bounds", statement: "l(M) >= l(L) - 1; M^B != M_L gives l(M) >= l(L); non-minimal (M^B)/M_L gives l(M) >= l(L) + 1", run: coatom_bounds },
    SuiteInfo { name: "nilradical-coatom", statement: "N not in maximal M gives l(M) = l(L) - 1 and il_M(phi) = il_L(phi)", run: nilradical_coatom },
    SuiteInfo { name: "ell-formula", statement: "l(L) = il_L(phi) + il_{L/phi}(N/phi) + dim R/N + l(S) in characteristic 0", run: ell_formula },
    SuiteInfo { name: "semisimple-coatom", statement: "maximal subalgebras of S_1 + ... + S_n not containing S_n", run: semisimple_coatom },
    SuiteInfo { name: "solvable-coatom", statement: "a solvable maximal M of a nonsolvable L has l(M) >= l(L)", run: solvable_coatom },
    SuiteInfo { name: "semidirect-example", statement: "A x| S with S non-split acting irreducibly on A, dim A >= 3: l(L) = 2 and l(A + Fs) >= 3", run: semidirect_example },
    SuiteInfo { name: "solvable-chain-dims", statement: "a solvable L has a maximal chain whose step dimensions are the chief factor dimensions", run: solvable_chain_dims },
    SuiteInfo { name: "solvable-minmax", statement: "a shortest maximal chain of a solvable L has length l(L) and the chief factor dimensions", run: solvable_minmax },
    SuiteInfo { name: "minmax-lower", statement: "minmax(L) >= l(L)", run: minmax_lower },
    SuiteInfo { name: "radical-bound", statement: "minmax(L) <= il_L(R) + minmax(S) in characteristic 0", run: radical_bound },
    SuiteInfo { name: "nonsolvable-lower", statement: "minmax(L) >= l(L) + 1 for nonsolvable L in characteristic 0", run: nonsolvable_lower },
    SuiteInfo { name: "solvable-iff", statement: "minmax(L) = l(L) iff L is solvable", run: solvable_iff },
    SuiteInfo { name: "split-iff", statement: "minmax(L) = l(L) + 1 iff sqrt F not in F and L/R is a sum of isomorphic 3-dimensional simples", run: split_iff },
    SuiteInfo { name: "nonsplit-sum", statement: "sum of n pairwise non-isomorphic non-split 3-dimensional simples: l = n, minmax = 2n", run: nonsplit_sum },
    SuiteInfo { name: "modular-length", statement: "l <= modl <= l + 1, with modl = l + 1 iff L/R has a 3-dimensional simple ideal", run: modular_length },
    SuiteInfo { name: "modular-iff", statement: "modl(L) = minmax(L) iff L is solvable or L/R is a sum of isomorphic special simples", run: modular_iff },
    SuiteInfo { name: "codim-one", statement: "codimension-one subalgebras of L_m(Gamma) for m > 1", run: codim_one },
    SuiteInfo { name: "quasi-ideal-length", statement: "l <= qil <= l + 2, with qil = l + 2 iff char 2 and some L/B is L_1(0)", run: quasi_ideal_length },
    SuiteInfo { name: "witt-measure", statement: "modl and qil of sl2 and the Witt algebra over GF(p), recorded only", run: witt_measure },
    SuiteInfo { name: "engine-agreement", statement: "independent quasi-ideal and modularity tests agree", run: engine_agreement },
];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub budget: LatticeBudget,
    /// Number of random solvable algebras in the solvable suites.
    pub random_count: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 2024,
            budget: LatticeBudget::default(),
            random_count: 60,
        }
    }
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs the named suites (all when `names` is empty).
pub fn run(names: &[&str], cfg: &VerifyConfig) -> Result<SuiteReport> {
    let chosen: Vec<&SuiteInfo> = if names.is_empty() {
        SUITES.iter().collect()
    } else {
        names
            .iter()
            .map(|n| {
                SUITES
                    .iter()
                    .find(|s| s.name == *n)
                    .ok_or_else(|| Error::BadParameters(format!("unknown suite `{n}`")))
            })
            .collect::<Result<_>>()?
    };
    let ctx = Ctx::new(cfg.clone());
    let checks: Vec<CheckRecord> = chosen.par_iter().flat_map_iter(|s| (s.run)(&ctx)).collect();
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            CheckStatus::Pass => summary.pass += 1,
            CheckStatus::Fail => summary.fail += 1,
            CheckStatus::Indeterminate => summary.indeterminate += 1,
            CheckStatus::Measured => summary.measured += 1,
        }
    }
    Ok(SuiteReport {
        schema: SCHEMA,
        seed: cfg.seed,
        suites: chosen.iter().map(|s| s.name).collect(),
        out_of_scope: OUT_OF_SCOPE.to_vec(),
        checks,
        summary,
    })
}

// ---------------------------------------------------------------------------
// instances

pub struct BruteInstance {
    pub name: String,
    pub alg: LieAlgebra,
    pub lat: SubalgebraLattice,
}

pub struct Char0Instance {
    pub name: String,
    pub alg: LieAlgebra,
    pub meta: CatalogMeta,
}

struct Ctx {
    cfg: VerifyConfig,
    brute: OnceLock<Vec<std::result::Result<BruteInstance, (String, String)>>>,
    random: OnceLock<Vec<std::result::Result<BruteInstance, (String, String)>>>,
    char0: OnceLock<Vec<Char0Instance>>,
}

fn gf(p: u32) -> FieldSpec {
    FieldSpec::prime(p).expect("prime")
}

fn family(text: &str, field: FieldSpec) -> Result<(LieAlgebra, CatalogMeta)> {
    CatalogSpec::new(text.parse()?, field).make_with_meta()
}

/// Fixed catalog part of the brute-force corpus.
pub const BRUTE_CORPUS: &[(&str, u32)] = &[
    ("abelian(3)", 2),
    ("abelian(2)", 3),
    ("almost_abelian(3)", 2),
    ("almost_abelian(3)", 3),
    ("almost_abelian(2)", 5),
    ("sl2", 2),
    ("sl2", 3),
    ("sl2", 5),
    ("sl2", 7),
    ("cross_product(1,2)", 3),
    ("l1_gamma(0)", 2),
    ("l1_gamma(1)", 2),
    ("l1_gamma(0)", 3),
    ("lm_gamma(2)", 2),
    ("lm_gamma(3)", 5),
    ("direct_power(l1_gamma(0),2)", 2),
    ("direct_power(sl2,2)", 3),
    ("semidirect_adjoint(l1_gamma(0))", 2),
];

/// Random solvable instances: `(n, p, seed)` for the `k`-th draw.
fn random_params(seed: u64, k: usize) -> (usize, u32, u64) {
    let p = if k % 2 == 0 { 2 } else { 3 };
    (2 + k % 3, p, seed.wrapping_add(k as u64))
}

impl Ctx {
    fn new(cfg: VerifyConfig) -> Self {
        Ctx {
            cfg,
            brute: OnceLock::new(),
            random: OnceLock::new(),
            char0: OnceLock::new(),
        }
    }

    fn lattice(&self, name: String, alg: Result<LieAlgebra>) -> std::result::Result<BruteInstance, (String, String)> {
        let alg = alg.map_err(|e| (name.clone(), e.to_string()))?;
        let lat = SubalgebraLattice::enumerate(&alg, &self.cfg.budget).map_err(|e| (name.clone(), e.to_string()))?;
        Ok(BruteInstance { name, alg, lat })
    }

    fn random(&self) -> &[std::result::Result<BruteInstance, (String, String)>] {
        self.random.get_or_init(|| {
            (0..self.cfg.random_count)
                .into_par_iter()
                .map(|k| {
                    let (n, p, s) = random_params(self.cfg.seed, k);
                    self.lattice(format!("random_solvable({n},{s}) over GF({p})"), catalog::random_solvable(gf(p), n, s))
                })
                .collect()
        })
    }

    /// Catalog corpus plus the first dozen random solvables.
    fn brute(&self) -> Vec<&std::result::Result<BruteInstance, (String, String)>> {
        let fixed = self.brute.get_or_init(|| {
            BRUTE_CORPUS
                .par_iter()
                .map(|(fam, p)| self.lattice(format!("{fam} over GF({p})"), family(fam, gf(*p)).map(|x| x.0)))
                .collect()
        });
        fixed.iter().chain(self.random().iter().take(12)).collect()
    }

    fn char0(&self) -> &[Char0Instance] {
        self.char0.get_or_init(char0_corpus)
    }
}

fn char0_corpus() -> Vec<Char0Instance> {
    let q = FieldSpec::Rationals;
    let mut out: Vec<Char0Instance> = [
        "abelian(3)",
        "almost_abelian(3)",
        "sl2",
        "cross_product(-1,-1)",
        "cross_product(-1,-3)",
        "cross_product(1,1)",
        "semidirect_adjoint(sl2)",
        "semidirect_adjoint(cross_product(-1,-1))",
        "direct_power(sl2,2)",
        "direct_power(cross_product(-1,-1),2)",
    ]
    .iter()
    .map(|fam| {
        let (alg, meta) = family(fam, q).expect("catalog instance");
        Char0Instance { name: fam.to_string(), alg, meta }
    })
    .collect();
    let sum = |a: &str, b: &str| -> Char0Instance {
        let (x, xm) = family(a, q).expect("catalog instance");
        let (y, ym) = family(b, q).expect("catalog instance");
        let alg = x.direct_sum(&y).expect("direct sum");
        let zero_phi = |m: &CatalogMeta| m.frattini.as_ref().map_or(false, Subspace::is_zero);
        // the Frattini ideal of a direct sum is the sum of the Frattini ideals
        let meta = CatalogMeta {
            frattini: (zero_phi(&xm) && zero_phi(&ym)).then(|| alg.zero()),
            ..CatalogMeta::default()
        };
        Char0Instance { name: format!("{a} + {b}"), alg, meta }
    };
    out.push(sum("sl2", "cross_product(-1,-1)"));
    out.push(sum("cross_product(-1,-1)", "cross_product(-1,-3)"));
    out.push(sum("sl2", "abelian(1)"));
    out.push(sum("cross_product(-1,-1)", "almost_abelian(2)"));
    out
}

// ---------------------------------------------------------------------------
// helpers

fn rec(suite: &'static str, instance: impl Into<String>, status: CheckStatus, details: impl Into<String>) -> CheckRecord {
    CheckRecord {
        suite,
        instance: instance.into(),
        status,
        details: details.into(),
    }
}

fn pass_fail(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn skipped(suite: &'static str, err: &(String, String)) -> CheckRecord {
    rec(suite, err.0.clone(), CheckStatus::Indeterminate, format!("instance unavailable: {}", err.1))
}

fn err_record(suite: &'static str, instance: &str, e: &Error) -> CheckRecord {
    let status = if e.is_indeterminate() || matches!(e, Error::ConstructionUnavailable(_) | Error::BudgetExceeded { .. }) {
        CheckStatus::Indeterminate
    } else {
        CheckStatus::Fail
    };
    rec(suite, instance, status, e.to_string())
}

/// Per-instance fold over brute lattices: the closure returns `Err(msg)` on
/// the first violation and `Ok(summary)` otherwise.
fn over_brute<'a>(
    suite: &'static str,
    items: impl IntoIterator<Item = &'a std::result::Result<BruteInstance, (String, String)>>,
    check: impl Fn(&BruteInstance) -> std::result::Result<String, String> + Sync,
) -> Vec<CheckRecord> {
    let items: Vec<_> = items.into_iter().collect();
    items
        .par_iter()
        .map(|inst| match inst {
            Err(e) => skipped(suite, e),
            Ok(b) => match check(b) {
                Ok(msg) => rec(suite, b.name.clone(), CheckStatus::Pass, msg),
                Err(msg) => rec(suite, b.name.clone(), CheckStatus::Fail, msg),
            },
        })
        .collect()
}

fn ell_of(lat: &SubalgebraLattice, x: usize) -> usize {
    lat.ideal_chain_length(x, lat.bottom(), x)
}

/// Largest ideal whose restriction satisfies `keep` (solvable, nilpotent).
fn largest_ideal(b: &BruteInstance, keep: fn(&LieAlgebra) -> bool) -> usize {
    (0..b.lat.len())
        .filter(|&i| b.lat.is_ideal(i))
        .filter(|&i| b.alg.restrict(b.lat.node(i)).map(|s| keep(&s)).unwrap_or(false))
        .max_by_key(|&i| b.lat.node(i).dim())
        .unwrap_or(b.lat.bottom())
}

/// Ideals `B` of `L` with `B / core` a minimal ideal of `L / core`.
fn minimal_over(lat: &SubalgebraLattice, core: usize) -> Vec<usize> {
    (0..lat.len())
        .filter(|&b| b != core && lat.is_ideal(b) && lat.leq(core, b))
        .filter(|&b| lat.ideal_chain_length(lat.top(), core, b) == 1)
        .collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

// ---------------------------------------------------------------------------
// lattice-based suites

fn coatom_identity(ctx: &Ctx) -> Vec<CheckRecord> {
    over_brute("coatom-identity", ctx.brute(), |b| {
        let lat = &b.lat;
        let ell_l = ell_of(lat, lat.top()) as i64;
        let mut pairs = 0;
        for m in lat.maximal_subalgebras() {
            let c = lat.core(m);
            let ell_m = ell_of(lat, m) as i64;
            for bb in minimal_over(lat, c) {
                let mb = lat.meet(m, bb);
                let rhs = lat.ideal_chain_length(m, 0, c) as i64 - lat.ideal_chain_length(lat.top(), 0, c) as i64
                    + lat.ideal_chain_length(m, c, mb) as i64
                    - 1;
                if ell_m - ell_l != rhs {
                    return Err(format!("maximal node {m}, B = node {bb}: lhs {} rhs {rhs}", ell_m - ell_l));
                }
                pairs += 1;
            }
        }
        Ok(format!("{} maximal subalgebras, {pairs} (M, B) pairs", lat.maximal_subalgebras().len()))
    })
}

fn coatom_bounds(ctx: &Ctx) -> Vec<CheckRecord> {
    over_brute("coatom-bounds", ctx.brute(), |b| {
        let lat = &b.lat;
        let ell_l = ell_of(lat, lat.top());
        let mut pairs = 0;
        for m in lat.maximal_subalgebras() {
            let c = lat.core(m);
            let ell_m = ell_of(lat, m);
            if ell_m + 1 < ell_l {
                return Err(format!("maximal node {m}: l(M) = {ell_m} < l(L) - 1"));
            }
            for bb in minimal_over(lat, c) {
                let mb = lat.meet(m, bb);
                if mb != c && ell_m < ell_l {
                    return Err(format!("maximal node {m}: M^B above the core but l(M) = {ell_m}"));
                }
                if lat.ideal_chain_length(m, c, mb) >= 2 && ell_m < ell_l + 1 {
                    return Err(format!("maximal node {m}: (M^B)/M_L not minimal but l(M) = {ell_m}"));
                }
                pairs += 1;
            }
        }
        Ok(format!("{pairs} pairs checked"))
    })
}

fn nilradical_coatom(ctx: &Ctx) -> Vec<CheckRecord> {
    over_brute("nilradical-coatom", ctx.brute(), |b| {
        let lat = &b.lat;
        let n = largest_ideal(b, LieAlgebra::is_nilpotent);
        let phi = lat.index_of(&lat.frattini()).expect("frattini is a node");
        let ell_l = ell_of(lat, lat.top());
        let mut hits = 0;
        for m in lat.maximal_subalgebras() {
            if lat.leq(n, m) {
                continue;
            }
            hits += 1;
            if ell_of(lat, m) + 1 != ell_l {
                return Err(format!("maximal node {m} misses N but l(M) = {}", ell_of(lat, m)));
            }
            if lat.ideal_chain_length(m, 0, phi) != lat.ideal_chain_length(lat.top(), 0, phi) {
                return Err(format!("maximal node {m}: il_M(phi) differs from il_L(phi)"));
            }
        }
        Ok(format!("{hits} maximal subalgebras not containing N"))
    })
}

fn solvable_chain_dims(ctx: &Ctx) -> Vec<CheckRecord> {
    let solv = ctx.brute().into_iter().filter(|i| i.as_ref().map_or(true, |b| b.alg.is_solvable()));
    let mut out = over_brute("solvable-chain-dims", solv, |b| {
        let chief = sorted(b.lat.chief_series(false).codims());
        let found = sorted(b.lat.minmax().codims());
        if chief == found {
            Ok(format!("step dims {found:?}"))
        } else {
            Err(format!("chief dims {chief:?}, chain dims {found:?}"))
        }
    });
    for inst in ctx.char0().iter().filter(|i| i.alg.is_solvable()) {
        let r = (|| -> Result<(Vec<usize>, Vec<usize>)> {
            let chain = solvable_maxchain0(&inst.alg)?;
            for w in chain.members.windows(2) {
                if !matches!(check_maximal_step(&inst.alg, &w[0], &w[1])?, StepVerdict::Holds(_)) {
                    return Err(Error::VerificationFailed("a step is not maximal".into()));
                }
            }
            Ok((sorted(chief_series0(&inst.alg)?.factor_dims()), sorted(chain.codims())))
        })();
        out.push(match r {
            Ok((a, b)) => rec("solvable-chain-dims", &inst.name, pass_fail(a == b), format!("chief {a:?}, chain {b:?}")),
            Err(e) => err_record("solvable-chain-dims", &inst.name, &e),
        });
    }
    out
}

fn solvable_minmax(ctx: &Ctx) -> Vec<CheckRecord> {
    over_brute("solvable-minmax", ctx.random(), |b| {
        let chief = b.lat.chief_series(false);
        let short = b.lat.minmax();
        if short.length() != chief.length() {
            return Err(format!("minmax {} but l {}", short.length(), chief.length()));
        }
        let (c, s) = (sorted(chief.codims()), sorted(short.codims()));
        if c != s {
            return Err(format!("chief dims {c:?}, shortest chain dims {s:?}"));
        }
        Ok(format!("l = minmax = {}, dims {s:?}", chief.length()))
    })
}

fn char0_brackets(ctx: &Ctx) -> Vec<(&Char0Instance, Result<MinmaxBracket>)> {
    ctx.char0().par_iter().map(|i| (i, minmax_bracket0(&i.alg))).collect()
}

fn minmax_lower(ctx: &Ctx) -> Vec<CheckRecord> {
    let mut out = over_brute("minmax-lower", ctx.brute(), |b| {
        let (l, m) = (b.lat.ell(), b.lat.minmax().length());
        if m >= l {
            Ok(format!("l = {l}, minmax = {m}"))
        } else {
            Err(format!("minmax {m} < l {l}"))
        }
    });
    for (inst, br) in char0_brackets(ctx) {
        out.push(match br {
            Ok(b) => match b.upper {
                Some(u) => rec("minmax-lower", &inst.name, pass_fail(u >= b.ell), format!("l = {}, witness length {u}", b.ell)),
                None => rec("minmax-lower", &inst.name, CheckStatus::Indeterminate, "no witness chain"),
            },
            Err(e) => err_record("minmax-lower", &inst.name, &e),
        });
    }
    out
}

fn nonsolvable_lower(ctx: &Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for (inst, br) in char0_brackets(ctx) {
        if inst.alg.is_solvable() {
            continue;
        }
        out.push(match br {
            Ok(b) => match b.exact() {
                Some(v) => rec("nonsolvable-lower", &inst.name, pass_fail(v > b.ell), format!("l = {}, minmax = {v}", b.ell)),
                None => rec("nonsolvable-lower", &inst.name, CheckStatus::Indeterminate, format!("minmax in [{}, {:?}]", b.lower, b.upper)),
            },
            Err(e) => err_record("nonsolvable-lower", &inst.name, &e),
        });
    }
    for inst in ctx.brute() {
        if let Ok(b) = inst {
            if !b.alg.is_solvable() {
                let (l, m) = (b.lat.ell(), b.lat.minmax().length());
                out.push(rec("nonsolvable-lower", &b.name, CheckStatus::Measured, format!("l = {l}, minmax = {m}")));
            }
        }
    }
    out
}

fn solvable_iff(ctx: &Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for (inst, br) in char0_brackets(ctx) {
        out.push(match br {
            Ok(b) => match b.exact() {
                Some(v) => rec(
                    "solvable-iff",
                    &inst.name,
                    pass_fail((v == b.ell) == inst.alg.is_solvable()),
                    format!("solvable {}, l = {}, minmax = {v}", inst.alg.is_solvable(), b.ell),
                ),
                None => rec("solvable-iff", &inst.name, CheckStatus::Indeterminate, "minmax not decided"),
            },
            Err(e) => err_record("solvable-iff", &inst.name, &e),
        });
    }
    for inst in ctx.brute() {
        match inst {
            Err(e) => out.push(skipped("solvable-iff", e)),
            Ok(b) => {
                let (l, m) = (b.lat.ell(), b.lat.minmax().length());
                let d = format!("solvable {}, l = {l}, minmax = {m}", b.alg.is_solvable());
                // over GF(p) only the solvable direction holds unconditionally
                out.push(if b.alg.is_solvable() {
                    rec("solvable-iff", &b.name, pass_fail(l == m), d)
                } else {
                    rec("solvable-iff", &b.name, CheckStatus::Measured, d)
                });
            }
        }
    }
    out
}

fn codim_one(ctx: &Ctx) -> Vec<CheckRecord> {
    let cases: &[(&str, u32, usize)] = &[("lm_gamma(2)", 2, 2), ("lm_gamma(3)", 5, 3), ("lm_gamma(5)", 2, 5), ("lm_gamma(6)", 2, 6), ("witt", 5, 3)];
    let mut budget = ctx.cfg.budget.clone();
    budget.max_subspace_count = budget.max_subspace_count.max(1_000_000);
    budget.max_node_count = budget.max_node_count.max(20_000);
    cases
        .par_iter()
        .map(|&(fam, p, m)| {
            let name = format!("{fam} over GF({p})");
            let r = (|| -> Result<std::result::Result<String, String>> {
                let alg = family(fam, gf(p))?.0;
                let lat = SubalgebraLattice::enumerate(&alg, &budget)?;
                let n = alg.dim();
                let codim1: Vec<usize> = (0..lat.len()).filter(|&i| lat.node(i).dim() + 1 == n).collect();
                let ideals: Vec<usize> = codim1.iter().copied().filter(|&i| lat.is_ideal(i)).collect();
                let d = format!("{} codimension-one subalgebras, {} ideals", codim1.len(), ideals.len());
                if m % 2 == 1 {
                    let simple = lat.ell() == 1;
                    return Ok(if simple && codim1.len() == 1 { Ok(format!("simple, {d}")) } else { Err(format!("simple {simple}, {d}")) });
                }
                if codim1.len() != 2 || ideals.len() != 1 {
                    return Ok(Err(d));
                }
                let ideal = alg.restrict(lat.node(ideals[0]))?;
                let sub = SubalgebraLattice::enumerate(&ideal, &budget)?;
                let simple = sub.ell() == 1 && !ideal.is_abelian();
                Ok(if simple { Ok(format!("{d}, the ideal is simple")) } else { Err(format!("{d}, the ideal is not simple")) })
            })();
            match r {
                Ok(Ok(d)) => rec("codim-one", name, CheckStatus::Pass, d),
                Ok(Err(d)) => rec("codim-one", name, CheckStatus::Fail, d),
                Err(e) => err_record("codim-one", &name, &e),
            }
        })
        .collect()
}

/// Brute-force isomorphism test for algebras of dimension at most 3 over GF(p).
pub fn isomorphic_small(a: &LieAlgebra, b: &LieAlgebra) -> Result<bool> {
    let f = a.field();
    let elems = f.elements().ok_or_else(|| Error::UnsupportedField(f.to_string()))?;
    let n = a.dim();
    if n != b.dim() || f != b.field() {
        return Ok(false);
    }
    if n > 3 || (elems.len() as u64).pow((n * n) as u32) > 1 << 20 {
        return Err(Error::DimensionOutOfRange(n));
    }
    let vectors: Vec<Vector> = (0..(elems.len() as u64).pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let x = elems[(k % elems.len() as u64) as usize].clone();
                    k /= elems.len() as u64;
                    x
                })
                .collect()
        })
        .collect();
    // images of the basis of `a` inside `b`
    let mut idx = vec![0usize; n];
    loop {
        let imgs: Vec<&Vector> = idx.iter().map(|&k| &vectors[k]).collect();
        if b.span(imgs.iter().map(|v| (*v).clone())).dim() == n {
            let phi = |v: &[crate::fields::Scalar]| -> Vector {
                let mut out = b.zero_vector();
                for (c, img) in v.iter().zip(&imgs) {
                    crate::linalg::axpy(&mut out, c, img);
                }
                out
            };
            let ok = (0..n).all(|i| (i + 1..n).all(|j| phi(a.structure(i, j)) == b.bracket(imgs[i], imgs[j])));
            if ok {
                return Ok(true);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(false);
            }
            idx[i] += 1;
            if idx[i] < vectors.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Expected `qil - l` for `L_m(Γ)` itself, from the classification of
/// core-free quasi-ideals.
fn lm_excess(fam: &str, p: u32) -> Option<usize> {
    let f: catalog::Family = fam.parse().ok()?;
    let m = match f {
        catalog::Family::L1Gamma(_) => 1,
        catalog::Family::LmGamma(m, _) => m,
        _ => return None,
    };
    Some(match (m, p) {
        (1, 2) => 2, // every element of GF(2) is a square
        (m, _) if m % 2 == 1 => 1,
        _ => 0,
    })
}

fn quasi_ideal_length(ctx: &Ctx) -> Vec<CheckRecord> {
    let l10 = catalog::l1_gamma(gf(2), &gf(2).zero()).expect("L1(0)");
    let mut out = over_brute("quasi-ideal-length", ctx.brute(), |b| {
        let lat = &b.lat;
        let (l, q) = (lat.ell(), lat.qil().length());
        if q < l || q > l + 2 {
            return Err(format!("l = {l}, qil = {q} outside [l, l+2]"));
        }
        let mut has_l10 = false;
        if b.alg.field().characteristic() == 2 {
            for i in (0..lat.len()).filter(|&i| lat.is_ideal(i) && lat.node(i).dim() + 3 == b.alg.dim()) {
                let (quo, _) = b.alg.quotient(lat.node(i)).map_err(|e| e.to_string())?;
                if isomorphic_small(&quo, &l10).map_err(|e| e.to_string())? {
                    has_l10 = true;
                    break;
                }
            }
        }
        if (q == l + 2) != has_l10 {
            return Err(format!("l = {l}, qil = {q}, quotient L1(0) present: {has_l10}"));
        }
        if let Some(fam) = BRUTE_CORPUS.iter().find(|(f, p)| b.name == format!("{f} over GF({p})")) {
            if let Some(ex) = lm_excess(fam.0, fam.1) {
                if q - l != ex {
                    return Err(format!("qil - l = {}, expected {ex}", q - l));
                }
            }
        }
        Ok(format!("l = {l}, qil = {q}"))
    });
    for inst in ctx.char0() {
        out.push(match (chief_series0(&inst.alg), qil0(&inst.alg)) {
            (Ok(c), Ok(q)) => rec(
                "quasi-ideal-length",
                &inst.name,
                pass_fail(q.value >= c.ell && q.value <= c.ell + 1),
                format!("l = {}, qil = {}", c.ell, q.value),
            ),
            (Err(e), _) | (_, Err(e)) => err_record("quasi-ideal-length", &inst.name, &e),
        });
    }
    out
}

fn witt_measure(ctx: &Ctx) -> Vec<CheckRecord> {
    let cases: &[(&str, u32)] = &[("witt", 5), ("sl2", 5), ("sl2", 7)];
    cases
        .par_iter()
        .map(|&(fam, p)| {
            let name = format!("{fam} over GF({p})");
            let r = (|| -> Result<(usize, usize, usize)> {
                let alg = family(fam, gf(p))?.0;
                let lat = SubalgebraLattice::enumerate(&alg, &ctx.cfg.budget)?;
                Ok((lat.ell(), lat.modl().length(), lat.qil().length()))
            })();
            match r {
                Ok((l, m, q)) => {
                    let d = format!("l = {l}, modl = {m}, qil = {q}");
                    if l != 1 || q > l + 2 {
                        rec("witt-measure", name, CheckStatus::Fail, d)
                    } else {
                        rec("witt-measure", name, CheckStatus::Measured, d)
                    }
                }
                Err(e) => err_record("witt-measure", &name, &e),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// characteristic-zero suites

fn ell_formula(ctx: &Ctx) -> Vec<CheckRecord> {
    ctx.char0()
        .par_iter()
        .map(|inst| {
            let Some(phi) = inst.meta.frattini.clone() else {
                return rec("ell-formula", &inst.name, CheckStatus::Indeterminate, "Frattini ideal not known from the construction");
            };
            let r = (|| -> Result<(usize, usize)> {
                let alg = &inst.alg;
                let r = radical0(alg)?;
                let n = nilradical0(alg)?;
                let ell = chief_series0(alg)?.ell;
                let a = il(alg, &phi)?.value;
                let (q, quo) = alg.quotient(&phi)?;
                let b = il(&q, &quo.project_subspace(&n)?)?.value;
                let (s, _) = alg.quotient(&r)?;
                let ls = if s.dim() == 0 { 0 } else { simple_ideals(&s)?.len() };
                Ok((ell, a + b + (r.dim() - n.dim()) + ls))
            })();
            match r {
                Ok((l, f)) => rec("ell-formula", &inst.name, pass_fail(l == f), format!("l = {l}, formula = {f}")),
                Err(e) => err_record("ell-formula", &inst.name, &e),
            }
        })
        .collect()
}

fn cross(a: i64, b: i64) -> LieAlgebra {
    let q = FieldSpec::Rationals;
    catalog::cross_product(q, &q.from_int(a), &q.from_int(b)).expect("cross product")
}

fn embed(total: usize, offset: usize, v: &[crate::fields::Scalar]) -> Vector {
    let f = v[0].field();
    let mut out = crate::linalg::zero_vector(f, total);
    out[offset..offset + v.len()].clone_from_slice(v);
    out
}

fn semisimple_coatom(_ctx: &Ctx) -> Vec<CheckRecord> {
    let q = FieldSpec::Rationals;
    let s = catalog::sl2(q).expect("sl2");
    let c = cross(-1, -1);
    let pairs = [("sl2 + sl2", s.clone(), s.clone()), ("so3 + so3", c.clone(), c.clone()), ("sl2 + so3", s.clone(), c.clone())];
    let mut out = Vec::new();
    for (name, a, b) in pairs {
        let l = a.direct_sum(&b).expect("sum");
        let s1 = l.span((0..3).map(|i| l.basis_vector(i)));
        // maximal subalgebras of the second summand, lifted by S_1
        let mut cands: Vec<(String, Subspace, Subspace)> = Vec::new();
        let cls = classify_3dim(&b).expect("3-dim");
        if let Some(w) = &cls.special_witness {
            cands.push(("S_1 + F w".into(), s1.sum(&l.span([embed(6, 3, w)])).unwrap(), l.span([embed(6, 3, w)])));
        }
        if cls.kind == crate::algebra::ThreeDimKind::SplitSimple {
            if let Ok(bor) = crate::structural::borel_of_split3(&b) {
                let lifted = l.span(bor.basis().iter().map(|v| embed(6, 3, v)));
                cands.push(("S_1 + Borel".into(), s1.sum(&lifted).unwrap(), lifted));
            }
        }
        for (label, m, part) in cands {
            let inst = format!("{name}: {label}");
            let r = (|| -> Result<(bool, String)> {
                let maximal = matches!(check_maximal_step(&l, &m, &l.full())?, StepVerdict::Holds(_));
                let lm = chief_series0(&l.restrict(&m)?)?.ell;
                let ls = 2;
                let part_alg = l.restrict(&part)?;
                let part_simple = part_alg.dim() > 1 && chief_series0(&part_alg)?.ell == 1 && !part_alg.is_solvable();
                let special = part.dim() == 1;
                let ok = maximal && lm >= ls && ((lm == ls) == (special || part_simple));
                Ok((ok, format!("maximal {maximal}, l(M) = {lm}, l(S) = {ls}, dim(M^S_2) = {}", part.dim())))
            })();
            out.push(match r {
                Ok((ok, d)) => rec("semisimple-coatom", inst, pass_fail(ok), d),
                Err(e) => err_record("semisimple-coatom", &inst, &e),
            });
        }
        // both summands missed: a diagonal, only when the summands are isomorphic
        if name != "sl2 + so3" {
            let diag = l.span((0..3).map(|t| {
                let mut x = l.basis_vector(t);
                x[t + 3] = q.one();
                x
            }));
            let inst = format!("{name}: diagonal");
            let r = (|| -> Result<(bool, String)> {
                let maximal = matches!(check_maximal_step(&l, &diag, &l.full())?, StepVerdict::Holds(_));
                let lm = chief_series0(&l.restrict(&diag)?)?.ell;
                Ok((maximal && lm == 1, format!("maximal {maximal}, l(M) = {lm}")))
            })();
            out.push(match r {
                Ok((ok, d)) => rec("semisimple-coatom", inst, pass_fail(ok), d),
                Err(e) => err_record("semisimple-coatom", &inst, &e),
            });
        }
    }
    out
}

/// `(name, L, M)` with `M` a solvable maximal subalgebra of nonsolvable `L`.
fn solvable_maximals() -> Vec<(String, LieAlgebra, Subspace)> {
    let q = FieldSpec::Rationals;
    let s = catalog::sl2(q).expect("sl2");
    let c = cross(-1, -1);
    let mut out = vec![
        ("sl2: Borel".to_string(), s.clone(), s.span([s.basis_vector(0), s.basis_vector(1)])),
        ("sl2: F(e - f)".to_string(), s.clone(), s.span([vec![q.one(), q.zero(), -q.one()]])),
    ];
    let w = classify_3dim(&c).expect("3-dim").special_witness.expect("special");
    out.push(("cross_product(-1,-1): F w".into(), c.clone(), c.span([w.clone()])));
    let sd = catalog::semidirect_adjoint(&c).expect("semidirect");
    let m = sd.span((0..3).map(|i| sd.basis_vector(i)).chain([embed(6, 3, &w)]));
    out.push(("semidirect_adjoint(cross_product(-1,-1)): A + F w".into(), sd, m));
    let sds = catalog::semidirect_adjoint(&s).expect("semidirect");
    let m = sds.span((0..3).map(|i| sds.basis_vector(i)).chain([embed(6, 3, &s.basis_vector(0)), embed(6, 3, &s.basis_vector(1))]));
    out.push(("semidirect_adjoint(sl2): A + Borel".into(), sds, m));
    out
}

fn solvable_coatom(ctx: &Ctx) -> Vec<CheckRecord> {
    let mut out: Vec<CheckRecord> = solvable_maximals()
        .into_iter()
        .map(|(name, l, m)| {
            let r = (|| -> Result<(bool, String)> {
                let maximal = matches!(check_maximal_step(&l, &m, &l.full())?, StepVerdict::Holds(_));
                let ma = l.restrict(&m)?;
                let (ll, lm) = (chief_series0(&l)?.ell, chief_series0(&ma)?.ell);
                // equality forces L/R to be 3-dimensional simple and M to meet a Levi factor in a line
                let r = radical0(&l)?;
                let eq_shape = lm != ll || (l.dim() - r.dim() == 3 && m.dim() == r.dim() + 1);
                Ok((
                    maximal && ma.is_solvable() && lm >= ll && eq_shape,
                    format!("maximal {maximal}, l(L) = {ll}, l(M) = {lm}"),
                ))
            })();
            match r {
                Ok((ok, d)) => rec("solvable-coatom", name, pass_fail(ok), d),
                Err(e) => err_record("solvable-coatom", &name, &e),
            }
        })
        .collect();
    for inst in ctx.brute().into_iter().flatten() {
        if inst.alg.is_solvable() {
            continue;
        }
        let lat = &inst.lat;
        let ell = lat.ell();
        let worst = lat
            .maximal_subalgebras()
            .into_iter()
            .filter(|&m| inst.alg.restrict(lat.node(m)).map_or(false, |a| a.is_solvable()))
            .map(|m| ell_of(lat, m) as i64 - ell as i64)
            .min();
        out.push(rec(
            "solvable-coatom",
            &inst.name,
            CheckStatus::Measured,
            match worst {
                Some(d) => format!("min over solvable maximal M of l(M) - l(L) = {d}"),
                None => "no solvable maximal subalgebra".into(),
            },
        ));
    }
    out
}

fn semidirect_example(_ctx: &Ctx) -> Vec<CheckRecord> {
    let c = cross(-1, -1);
    let name = "semidirect_adjoint(cross_product(-1,-1)) over Q";
    let r = (|| -> Result<(usize, usize)> {
        let l = catalog::semidirect_adjoint(&c)?;
        let w = classify_3dim(&c)?.special_witness.ok_or_else(|| Error::VerificationFailed("no special witness".into()))?;
        let m = l.span((0..3).map(|i| l.basis_vector(i)).chain([embed(6, 3, &w)]));
        Ok((chief_series0(&l)?.ell, chief_series0(&l.restrict(&m)?)?.ell))
    })();
    vec![match r {
        Ok((l, m)) => rec("semidirect-example", name, pass_fail(l == 2 && m >= 3), format!("l(L) = {l}, l(A + Fw) = {m}")),
        Err(e) => err_record("semidirect-example", name, &e),
    }]
}

fn radical_bound(ctx: &Ctx) -> Vec<CheckRecord> {
    ctx.char0()
        .par_iter()
        .map(|inst| {
            let r = (|| -> Result<CheckRecord> {
                let alg = &inst.alg;
                let b = minmax_bracket0(alg)?;
                let r = radical0(alg)?;
                let ilr = il(alg, &r)?.value;
                let ms = if r.dim() == alg.dim() {
                    Some(0)
                } else {
                    minmax_bracket0(&alg.quotient(&r)?.0)?.exact()
                };
                let Some(ms) = ms else {
                    return Ok(rec("radical-bound", &inst.name, CheckStatus::Indeterminate, "minmax(S) not decided"));
                };
                let bound = ilr + ms;
                let d = format!("minmax in [{}, {:?}], il(R) + minmax(S) = {bound}", b.lower, b.upper);
                Ok(match b.exact() {
                    Some(v) => rec("radical-bound", &inst.name, pass_fail(v <= bound), d),
                    None if b.lower > bound => rec("radical-bound", &inst.name, CheckStatus::Fail, d),
                    None => rec("radical-bound", &inst.name, CheckStatus::Indeterminate, d),
                })
            })();
            r.unwrap_or_else(|e| err_record("radical-bound", &inst.name, &e))
        })
        .collect()
}

/// Whether `L/R` is a nonzero sum of pairwise isomorphic 3-dimensional
/// simple algebras, decided by Killing-form isometry over ℚ.
fn isotypic_three(alg: &LieAlgebra) -> Result<Option<bool>> {
    let r = radical0(alg)?;
    if r.dim() == alg.dim() {
        return Ok(Some(false));
    }
    let (s, _) = alg.quotient(&r)?;
    let parts = simple_ideals(&s)?;
    if parts.iter().any(|p| p.dim() != 3) {
        return Ok(Some(false));
    }
    let inv = parts
        .iter()
        .map(|p| crate::algebra::form_invariants_q(&s.restrict(p)?.killing()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(inv.iter().all(|i| i.isometric(&inv[0]))))
}

fn split_iff(ctx: &Ctx) -> Vec<CheckRecord> {
    char0_brackets(ctx)
        .into_iter()
        .map(|(inst, br)| {
            let r = (|| -> Result<CheckRecord> {
                let b = br?;
                let Some(v) = b.exact() else {
                    return Ok(rec("split-iff", &inst.name, CheckStatus::Indeterminate, "minmax not decided"));
                };
                let Some(iso) = isotypic_three(&inst.alg)? else {
                    return Ok(rec("split-iff", &inst.name, CheckStatus::Indeterminate, "isotypic test undecided"));
                };
                Ok(rec(
                    "split-iff",
                    &inst.name,
                    pass_fail((v == b.ell + 1) == iso),
                    format!("l = {}, minmax = {v}, isotypic 3-dim {iso}", b.ell),
                ))
            })();
            r.unwrap_or_else(|e| err_record("split-iff", &inst.name, &e))
        })
        .collect()
}

fn nonsplit_sum(_ctx: &Ctx) -> Vec<CheckRecord> {
    let params: &[&[(i64, i64)]] = &[&[(-1, -1), (-1, -3)], &[(-1, -1), (-1, -3), (-2, -5)]];
    params
        .par_iter()
        .map(|ps| {
            let n = ps.len();
            let name = format!("sum of {n} non-split cross products over Q");
            let r = (|| -> Result<CheckRecord> {
                let algs: Vec<LieAlgebra> = ps.iter().map(|&(a, b)| cross(a, b)).collect();
                let inv = algs
                    .iter()
                    .map(|a| crate::algebra::form_invariants_q(&a.killing()))
                    .collect::<Result<Vec<_>>>()?;
                let distinct = (0..n).all(|i| (i + 1..n).all(|j| !inv[i].isometric(&inv[j])));
                let nonsplit = algs.iter().all(|a| classify_3dim(a).map_or(false, |c| c.kind == crate::algebra::ThreeDimKind::NonsplitSimple));
                let l = algs[1..].iter().try_fold(algs[0].clone(), |acc, a| acc.direct_sum(a))?;
                let b = minmax_bracket0(&l)?;
                let d = format!("pairwise non-isometric {distinct}, l = {}, minmax = {:?}", b.ell, b.exact());
                Ok(rec("nonsplit-sum", name.clone(), pass_fail(distinct && nonsplit && b.ell == n && b.exact() == Some(2 * n)), d))
            })();
            r.unwrap_or_else(|e| err_record("nonsplit-sum", &name, &e))
        })
        .collect()
}

fn has_three_dim_simple_quotient_ideal(alg: &LieAlgebra) -> Result<bool> {
    let r = radical0(alg)?;
    if r.dim() == alg.dim() {
        return Ok(false);
    }
    let (s, _) = alg.quotient(&r)?;
    Ok(simple_ideals(&s)?.iter().any(|p| p.dim() == 3))
}

fn modular_length(ctx: &Ctx) -> Vec<CheckRecord> {
    let mut out: Vec<CheckRecord> = ctx
        .char0()
        .par_iter()
        .map(|inst| {
            let r = (|| -> Result<CheckRecord> {
                let l = chief_series0(&inst.alg)?.ell;
                let m = modl0(&inst.alg)?.value;
                let three = has_three_dim_simple_quotient_ideal(&inst.alg)?;
                let ok = l <= m && m <= l + 1 && ((m == l + 1) == three);
                Ok(rec("modular-length", &inst.name, pass_fail(ok), format!("l = {l}, modl = {m}, 3-dim simple in L/R {three}")))
            })();
            r.unwrap_or_else(|e| err_record("modular-length", &inst.name, &e))
        })
        .collect();
    for b in ctx.brute().into_iter().flatten() {
        let (l, m) = (b.lat.ell(), b.lat.modl().length());
        out.push(rec("modular-length", &b.name, CheckStatus::Measured, format!("l = {l}, modl = {m}")));
    }
    out
}

fn modular_iff(ctx: &Ctx) -> Vec<CheckRecord> {
    char0_brackets(ctx)
        .into_iter()
        .map(|(inst, br)| {
            let r = (|| -> Result<CheckRecord> {
                let b = br?;
                let Some(v) = b.exact() else {
                    return Ok(rec("modular-iff", &inst.name, CheckStatus::Indeterminate, "minmax not decided"));
                };
                let m = modl0(&inst.alg)?.value;
                let rhs = inst.alg.is_solvable() || isotypic_three(&inst.alg)? == Some(true);
                Ok(rec(
                    "modular-iff",
                    &inst.name,
                    pass_fail((m == v) == rhs),
                    format!("modl = {m}, minmax = {v}, solvable or isotypic {rhs}"),
                ))
            })();
            r.unwrap_or_else(|e| err_record("modular-iff", &inst.name, &e))
        })
        .collect()
}

/// Subalgebras of a characteristic-0 algebra: closures of random small
/// integer vectors and pairs.
fn sample_subalgebras(alg: &LieAlgebra, seed: u64, count: usize) -> Vec<Subspace> {
    let f = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: BTreeMap<Vec<Vector>, Subspace> = BTreeMap::new();
    for i in 0..alg.dim() {
        let s = alg.closure(&alg.span([alg.basis_vector(i)]));
        seen.insert(s.basis().to_vec(), s);
    }
    for _ in 0..count {
        let k = rng.gen_range(1..=2);
        let vs: Vec<Vector> = (0..k)
            .map(|_| (0..alg.dim()).map(|_| f.from_int(rng.gen_range(-2..=2))).collect())
            .collect();
        let s = alg.closure(&alg.span(vs));
        seen.insert(s.basis().to_vec(), s);
    }
    seen.into_values().collect()
}

fn engine_agreement(ctx: &Ctx) -> Vec<CheckRecord> {
    let mut out: Vec<CheckRecord> = ctx
        .char0()
        .par_iter()
        .enumerate()
        .map(|(k, inst)| {
            let subs = sample_subalgebras(&inst.alg, ctx.cfg.seed.wrapping_add(k as u64), 40);
            let mut mismatch = None;
            let mut decided = 0;
            for s in &subs {
                match quasi_ideal_by_classification(&inst.alg, s) {
                    Ok(c) => {
                        decided += 1;
                        if c != quasi_ideal_grid(&inst.alg, s) {
                            mismatch = Some(format!("subalgebra of dim {} disagrees", s.dim()));
                            break;
                        }
                    }
                    Err(e) if e.is_indeterminate() => {}
                    Err(e) => {
                        mismatch = Some(e.to_string());
                        break;
                    }
                }
            }
            let d = mismatch.clone().unwrap_or(format!("{decided} of {} sampled subalgebras decided, all agree", subs.len()));
            rec("engine-agreement", format!("{} (grid vs classification)", inst.name), pass_fail(mismatch.is_none()), d)
        })
        .collect();
    let odd = ctx.brute().into_iter().filter(|i| i.as_ref().map_or(false, |b| b.alg.field().characteristic() >= 3));
    out.extend(over_brute("engine-agreement", odd, |b| {
        let fast = b.lat.quasi_ideal_flags();
        for i in 0..b.lat.len() {
            let s = b.lat.node(i);
            let lines = quasi_ideal_lines(&b.alg, s).map_err(|e| e.to_string())?;
            if lines != quasi_ideal_grid(&b.alg, s) || lines != fast[i] {
                return Err(format!("node {i}: engines disagree"));
            }
        }
        Ok(format!("{} subalgebras, lines = grid = lattice", b.lat.len()))
    }));
    // modularity: classification read over GF(p) against the lattice definition
    for (fam, p) in [("sl2", 5), ("sl2", 7), ("almost_abelian(3)", 5), ("almost_abelian(3)", 7)] {
        let name = format!("{fam} over GF({p}) (modular: classification vs lattice)");
        let r = (|| -> Result<std::result::Result<usize, String>> {
            let alg = family(fam, gf(p))?.0;
            let lat = SubalgebraLattice::enumerate(&alg, &ctx.cfg.budget)?;
            let flags = lat.modular_flags();
            for i in 0..lat.len() {
                if modular_by_classification(&alg, lat.node(i))?.modular != flags[i] {
                    return Ok(Err(format!("node {i} (dim {}) disagrees", lat.node(i).dim())));
                }
            }
            Ok(Ok(lat.len()))
        })();
        out.push(match r {
            Ok(Ok(n)) => rec("engine-agreement", name, CheckStatus::Pass, format!("{n} subalgebras agree")),
            Ok(Err(d)) => rec("engine-agreement", name, CheckStatus::Fail, d),
            Err(e) => err_record("engine-agreement", &name, &e),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism_brute_force() {
        let f = gf(2);
        let a = catalog::l1_gamma(f, &f.zero()).unwrap();
        let b = catalog::l1_gamma(f, &f.one()).unwrap();
        assert!(isomorphic_small(&a, &b).unwrap());
        let ab = catalog::abelian(f, 3).unwrap();
        assert!(!isomorphic_small(&a, &ab).unwrap());
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run(&["nope"], &VerifyConfig::default()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let cfg = VerifyConfig { random_count: 6, ..VerifyConfig::default() };
        let r = run(&["semidirect-example", "nonsplit-sum"], &cfg).unwrap();
        assert!(!r.failed(), "{}", r.to_table());
        assert_eq!(r.summary.pass, 3);
    }
}
