//! Step-by-step checks of a claimed chain `0 = U_0 < … < U_r = L`.

use serde::Serialize;

use crate::algebra::{quasi_ideal_grid, quasi_ideal_lines, LieAlgebra};
use crate::error::{Error, Result};
use crate::lattice::{LatticeBudget, SubalgebraLattice};
use crate::linalg::Subspace;
use crate::structural::{check_maximal_step, is_chief_step, modular_test0, quasi_ideal_test0, StepVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Maximal,
    Chief,
    Modular,
    Quasiideal,
}

impl std::str::FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maximal" => Ok(Claim::Maximal),
            "chief" => Ok(Claim::Chief),
            "modular" => Ok(Claim::Modular),
            "quasiideal" | "quasi-ideal" => Ok(Claim::Quasiideal),
            _ => Err(Error::BadParameters(format!("unknown claim `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    Holds,
    Fails,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    /// 1-based: step `i` goes from `U_{i-1}` to `U_i`.
    pub step: usize,
    pub dims: (usize, usize),
    pub status: StepStatus,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainVerdict {
    pub claim: Claim,
    pub steps: Vec<StepReport>,
}

impl ChainVerdict {
    pub fn holds(&self) -> bool {
        self.steps.iter().all(|s| s.status == StepStatus::Holds)
    }

    pub fn failed(&self) -> bool {
        self.steps.iter().any(|s| s.status == StepStatus::Fails)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.steps.iter().find(|s| s.status == StepStatus::Fails).map(|s| s.step)
    }
}

fn verdict(ok: bool, how: &str) -> (StepStatus, String) {
    (if ok { StepStatus::Holds } else { StepStatus::Fails }, how.to_string())
}

/// Checks every step with the strongest method available for the field.
pub fn check_chain(alg: &LieAlgebra, chain: &[Subspace], claim: Claim, budget: &LatticeBudget) -> Result<ChainVerdict> {
    if chain.len() < 2 {
        return Err(Error::BadParameters("a chain needs at least two members".into()));
    }
    for w in chain.windows(2) {
        if !(w[1].contains(&w[0])? && w[1].dim() > w[0].dim()) {
            return Err(Error::BadParameters("chain is not strictly increasing".into()));
        }
    }
    let finite = alg.field().is_finite();
    let lattice = if finite && matches!(claim, Claim::Modular) {
        Some(SubalgebraLattice::enumerate(alg, budget)?)
    } else {
        None
    };
    let mut steps = Vec::new();
    for (k, w) in chain.windows(2).enumerate() {
        let (lo, hi) = (&w[0], &w[1]);
        let (status, certificate) = if !alg.is_subalgebra(hi) {
            verdict(false, "not a subalgebra")
        } else {
            match claim {
                Claim::Maximal => match check_maximal_step(alg, lo, hi)? {
                    StepVerdict::Holds(c) => (StepStatus::Holds, c.label()),
                    StepVerdict::Fails(why) => (StepStatus::Fails, why),
                    StepVerdict::Undecided(why) => (StepStatus::Undecided, why),
                },
                Claim::Chief => match is_chief_step(alg, lo, hi) {
                    Ok(ok) => verdict(ok, if ok { "minimal_ideal" } else { "not a chief factor" }),
                    Err(e) if e.is_indeterminate() => (StepStatus::Undecided, e.to_string()),
                    Err(e) => return Err(e),
                },
                Claim::Modular => match &lattice {
                    Some(lat) => {
                        let i = lat.index_of(hi).ok_or_else(|| Error::VerificationFailed("subalgebra missing from lattice".into()))?;
                        verdict(lat.modular_flags()[i], "brute_modular")
                    }
                    None => match modular_test0(alg, hi) {
                        Ok(v) => (if v.modular { StepStatus::Holds } else { StepStatus::Fails }, v.case.label().to_string()),
                        Err(e) if e.is_indeterminate() => (StepStatus::Undecided, e.to_string()),
                        Err(e) => return Err(e),
                    },
                },
                Claim::Quasiideal => {
                    if finite {
                        verdict(quasi_ideal_lines(alg, hi)?, "line_enumeration")
                    } else {
                        match quasi_ideal_test0(alg, hi) {
                            Ok(ok) => {
                                if ok != quasi_ideal_grid(alg, hi) {
                                    return Err(Error::VerificationFailed("quasi-ideal engines disagree".into()));
                                }
                                verdict(ok, "classification+grid")
                            }
                            Err(e) if e.is_indeterminate() => verdict(quasi_ideal_grid(alg, hi), "grid"),
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        };
        steps.push(StepReport {
            step: k + 1,
            dims: (lo.dim(), hi.dim()),
            status,
            certificate,
        });
    }
    Ok(ChainVerdict { claim, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{heisenberg, q, sl2};

    #[test]
    fn heisenberg_chief_chain() {
        let h = heisenberg(q());
        let z = h.center();
        let mid = z.sum(&h.span([h.basis_vector(0)])).unwrap();
        let v = check_chain(&h, &[h.zero(), z, mid, h.full()], Claim::Chief, &LatticeBudget::default()).unwrap();
        assert!(v.holds(), "{v:?}");
    }

    #[test]
    fn sl2_claims() {
        let s = sl2(q());
        let borel = s.span([s.basis_vector(0), s.basis_vector(1)]);
        let b = LatticeBudget::default();
        let v = check_chain(&s, &[s.zero(), borel, s.full()], Claim::Modular, &b).unwrap();
        assert!(v.holds());
        assert_eq!(v.steps[0].certificate, "split3_case");
        let e = s.span([s.basis_vector(0)]);
        let v = check_chain(&s, &[s.zero(), e, s.full()], Claim::Quasiideal, &b).unwrap();
        assert_eq!(v.first_failure(), Some(1));
    }

    #[test]
    fn rejects_non_increasing() {
        let s = sl2(q());
        assert!(check_chain(&s, &[s.full(), s.zero()], Claim::Maximal, &LatticeBudget::default()).is_err());
    }
}
