use std::sync::OnceLock;

use serde::Serialize;

use super::{quasi_ideal_test, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{ProjectivePoints, Quotient, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagSource {
    Brute,
    Classification,
    Definitional,
}

/// A subspace with write-once cached structural flags.
#[derive(Debug)]
pub struct SubalgebraHandle {
    space: Subspace,
    subalgebra: OnceLock<bool>,
    ideal: OnceLock<bool>,
    quasi_ideal: OnceLock<(bool, FlagSource)>,
    modular: OnceLock<(bool, FlagSource)>,
}

impl SubalgebraHandle {
    pub fn new(space: Subspace) -> Self {
        SubalgebraHandle {
            space,
            subalgebra: OnceLock::new(),
            ideal: OnceLock::new(),
            quasi_ideal: OnceLock::new(),
            modular: OnceLock::new(),
        }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn is_subalgebra(&self, alg: &LieAlgebra) -> bool {
        *self.subalgebra.get_or_init(|| alg.is_subalgebra(&self.space))
    }

    pub fn is_ideal(&self, alg: &LieAlgebra) -> bool {
        *self.ideal.get_or_init(|| alg.is_ideal(&self.space))
    }

    /// Runs the definitional quasi-ideal test unless a verdict is cached.
    pub fn is_quasi_ideal(&self, alg: &LieAlgebra) -> (bool, FlagSource) {
        *self
            .quasi_ideal
            .get_or_init(|| (quasi_ideal_test(alg, &self.space), FlagSource::Definitional))
    }

    pub fn quasi_ideal_flag(&self) -> Option<(bool, FlagSource)> {
        self.quasi_ideal.get().copied()
    }

    pub fn modular_flag(&self) -> Option<(bool, FlagSource)> {
        self.modular.get().copied()
    }

    /// Records a verdict; a second, conflicting verdict is an error.
    pub fn set_quasi_ideal(&self, value: bool, source: FlagSource) -> Result<()> {
        Self::set(&self.quasi_ideal, value, source, "quasi-ideal")
    }

    pub fn set_modular(&self, value: bool, source: FlagSource) -> Result<()> {
        Self::set(&self.modular, value, source, "modular")
    }

    fn set(cell: &OnceLock<(bool, FlagSource)>, value: bool, source: FlagSource, what: &str) -> Result<()> {
        let stored = cell.get_or_init(|| (value, source));
        if stored.0 != value {
            return Err(Error::VerificationFailed(format!("conflicting {what} verdicts")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    Maximal,
    Chief,
    Modular,
    Quasiideal,
    Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepCertificate {
    Codim1,
    IdealStep,
    OneDimIn3Simple { witness: Vec<String> },
    BruteMaximal,
    Theory(String),
}

impl StepCertificate {
    pub fn one_dim(witness: &Vector) -> Self {
        StepCertificate::OneDimIn3Simple {
            witness: witness.iter().map(|x| x.to_literal()).collect(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            StepCertificate::Codim1 => "codim1".into(),
            StepCertificate::IdealStep => "ideal_step".into(),
            StepCertificate::OneDimIn3Simple { .. } => "one_dim_in_3simple".into(),
            StepCertificate::BruteMaximal => "brute_maximal".into(),
            StepCertificate::Theory(name) => format!("theory({name})"),
        }
    }
}

/// A strictly increasing chain `0 = M_0 < … < M_r = L` with one certificate
/// per step (the certificate of step `i` concerns `M_{i+1}` over `M_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRecord {
    pub kind: ChainKind,
    pub members: Vec<Subspace>,
    pub certificates: Vec<StepCertificate>,
}

impl ChainRecord {
    pub fn new(kind: ChainKind, members: Vec<Subspace>, certificates: Vec<StepCertificate>) -> Result<Self> {
        if members.is_empty() || certificates.len() + 1 != members.len() {
            return Err(Error::BadParameters("one certificate per step required".into()));
        }
        for w in members.windows(2) {
            if !(w[1].contains(&w[0])? && w[1].dim() > w[0].dim()) {
                return Err(Error::BadParameters("chain is not strictly increasing".into()));
            }
        }
        Ok(ChainRecord {
            kind,
            members,
            certificates,
        })
    }

    pub fn length(&self) -> usize {
        self.members.len() - 1
    }

    pub fn codims(&self) -> Vec<usize> {
        self.members.windows(2).map(|w| w[1].dim() - w[0].dim()).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.members.iter().map(Subspace::dim).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealChainLength {
    pub value: usize,
    pub witness: Vec<Subspace>,
}

/// Minimal ideals of `L` over the ideal `c` inside the ideal `b`, found by
/// spinning every line of `b/c` to the ideal it generates.
pub(crate) fn minimal_ideal_step_gf(alg: &LieAlgebra, c: &Subspace, b: &Subspace) -> Result<Subspace> {
    let q = Quotient::new(b, c)?;
    let mut best: Option<Subspace> = None;
    for pt in ProjectivePoints::new(alg.field(), q.dim()) {
        let v = q.lift(&pt);
        let gen = alg.ideal_generated(&c.sum(&alg.span([v]))?);
        if best.as_ref().map_or(true, |cur| gen.dim() < cur.dim()) {
            let done = gen.dim() == c.dim() + 1;
            best = Some(gen);
            if done {
                break;
            }
        }
    }
    best.ok_or_else(|| Error::BadParameters("no room for a minimal ideal".into()))
}

/// Longest chain of ideals of `L` from 0 to the ideal `b`.
pub fn il(alg: &LieAlgebra, b: &Subspace) -> Result<IdealChainLength> {
    if !alg.is_ideal(b) {
        return Err(Error::NotAnIdeal);
    }
    let mut chain = vec![alg.zero()];
    let mut cur = alg.zero();
    while cur.dim() < b.dim() {
        let next = if alg.field().is_finite() {
            minimal_ideal_step_gf(alg, &cur, b)?
        } else {
            crate::structural::minimal_ideal_step0(alg, &cur, b)?
        };
        chain.push(next.clone());
        cur = next;
    }
    Ok(IdealChainLength {
        value: chain.len() - 1,
        witness: chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{heisenberg, sl2};
    use crate::fields::FieldSpec;

    #[test]
    fn il_examples_over_gf() {
        let f = FieldSpec::prime(3).unwrap();
        let a = LieAlgebra::abelian(f, 4).unwrap();
        assert_eq!(il(&a, &a.full()).unwrap().value, 4);
        let s = sl2(f);
        assert_eq!(il(&s, &s.full()).unwrap().value, 1);
        let h = heisenberg(f);
        let r = il(&h, &h.full()).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.witness[1], h.center());
    }

    #[test]
    fn chain_record_checks_strictness() {
        let f = FieldSpec::Rationals;
        let h = heisenberg(f);
        let ok = ChainRecord::new(
            ChainKind::Ideal,
            vec![h.zero(), h.center(), h.full()],
            vec![StepCertificate::IdealStep, StepCertificate::IdealStep],
        )
        .unwrap();
        assert_eq!(ok.codims(), vec![1, 2]);
        assert!(ChainRecord::new(ChainKind::Ideal, vec![h.zero(), h.zero()], vec![StepCertificate::IdealStep]).is_err());
    }

    #[test]
    fn handle_flags_are_write_once() {
        let h = heisenberg(FieldSpec::Rationals);
        let handle = SubalgebraHandle::new(h.center());
        assert!(handle.is_ideal(&h));
        assert_eq!(handle.is_quasi_ideal(&h), (true, FlagSource::Definitional));
        handle.set_modular(true, FlagSource::Classification).unwrap();
        assert!(handle.set_modular(false, FlagSource::Brute).is_err());
    }
}
