//! Invariant reports (`report/1`).

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{nilradical0, radical0, ChainRecord, LieAlgebra};
use crate::error::{Error, Result};
use crate::lattice::{LatticeBudget, SubalgebraLattice};
use crate::structural::{chief_series0, minmax_bracket0, modl0, qil0};

pub const SCHEMA: &str = "report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    Structural,
    Auto,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "structural" => Ok(Method::Structural),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::BadParameters(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueStatus {
    Exact,
    Bracket,
    Measured,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub dims: Vec<usize>,
    pub certificates: Vec<String>,
}

impl From<&ChainRecord> for Witness {
    fn from(c: &ChainRecord) -> Self {
        Witness {
            dims: c.dims(),
            certificates: c.certificates.iter().map(|x| x.label()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantValue {
    pub status: ValueStatus,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl InvariantValue {
    fn exact(method: &'static str, value: usize, witness: Option<Witness>) -> Self {
        InvariantValue {
            status: ValueStatus::Exact,
            method,
            value: Some(value),
            lower: None,
            upper: None,
            witness,
            note: None,
        }
    }

    fn indeterminate(method: &'static str, note: String) -> Self {
        InvariantValue {
            status: ValueStatus::Indeterminate,
            method,
            value: None,
            lower: None,
            upper: None,
            witness: None,
            note: Some(note),
        }
    }

    /// Downgrade an exact value to `measured`, for values whose theory does
    /// not apply to the field at hand.
    pub fn measured(mut self) -> Self {
        if self.status == ValueStatus::Exact {
            self.status = ValueStatus::Measured;
        }
        self
    }

    fn render(&self) -> String {
        match (self.status, self.value, self.lower, self.upper) {
            (ValueStatus::Exact | ValueStatus::Measured, Some(v), _, _) => v.to_string(),
            (ValueStatus::Bracket, _, Some(l), Some(u)) => format!("[{l}, {u}]"),
            (ValueStatus::Bracket, _, Some(l), None) => format!(">= {l}"),
            _ => "indeterminate".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub field: String,
    pub dim: usize,
    pub solvable: bool,
    pub nilpotent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub schema: &'static str,
    pub algebra: AlgebraSummary,
    pub method: Method,
    pub ell: InvariantValue,
    pub minmax: InvariantValue,
    pub modl: InvariantValue,
    pub qil: InvariantValue,
    pub radical_dim: InvariantValue,
    pub nilradical_dim: InvariantValue,
    pub frattini_dim: InvariantValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_nodes: Option<usize>,
}

fn wrap<T>(method: &'static str, r: Result<T>, f: impl FnOnce(T) -> InvariantValue) -> Result<InvariantValue> {
    match r {
        Ok(t) => Ok(f(t)),
        Err(e) if e.is_indeterminate() || matches!(e, Error::ConstructionUnavailable(_)) => {
            Ok(InvariantValue::indeterminate(method, e.to_string()))
        }
        Err(e) => Err(e),
    }
}

impl InvariantReport {
    pub fn compute(alg: &LieAlgebra, method: Method, budget: &LatticeBudget) -> Result<Self> {
        let method = match method {
            Method::Auto if alg.field().is_finite() => Method::Brute,
            Method::Auto => Method::Structural,
            m => m,
        };
        match method {
            Method::Brute => Self::brute(alg, budget),
            _ => Self::structural(alg),
        }
    }

    fn summary(alg: &LieAlgebra) -> AlgebraSummary {
        AlgebraSummary {
            field: alg.field().to_string(),
            dim: alg.dim(),
            solvable: alg.is_solvable(),
            nilpotent: alg.is_nilpotent(),
        }
    }

    pub fn brute(alg: &LieAlgebra, budget: &LatticeBudget) -> Result<Self> {
        if !alg.field().is_finite() {
            return Err(Error::UnsupportedField(format!("brute force needs GF(p), got {}", alg.field())));
        }
        let lat = SubalgebraLattice::enumerate(alg, budget)?;
        let m = "brute";
        let chief = lat.chief_series(false);
        let minmax = lat.minmax();
        let modl = lat.modl();
        let qil = lat.qil();
        let ideals: Vec<usize> = (0..lat.len()).filter(|&i| lat.is_ideal(i)).collect();
        let largest = |keep: &dyn Fn(&LieAlgebra) -> bool| {
            ideals
                .iter()
                .filter(|&&i| alg.restrict(lat.node(i)).map(|s| keep(&s)).unwrap_or(false))
                .map(|&i| lat.node(i).dim())
                .max()
                .unwrap_or(0)
        };
        Ok(InvariantReport {
            schema: SCHEMA,
            algebra: Self::summary(alg),
            method: Method::Brute,
            ell: InvariantValue::exact(m, chief.length(), Some((&chief).into())),
            minmax: InvariantValue::exact(m, minmax.length(), Some((&minmax).into())),
            modl: InvariantValue::exact(m, modl.length(), Some((&modl).into())),
            qil: InvariantValue::exact(m, qil.length(), Some((&qil).into())),
            radical_dim: InvariantValue::exact(m, largest(&LieAlgebra::is_solvable), None),
            nilradical_dim: InvariantValue::exact(m, largest(&LieAlgebra::is_nilpotent), None),
            frattini_dim: InvariantValue::exact(m, lat.frattini().dim(), None),
            lattice_nodes: Some(lat.len()),
        })
    }

    pub fn structural(alg: &LieAlgebra) -> Result<Self> {
        if alg.field().is_finite() {
            return Err(Error::WrongCharacteristic);
        }
        let m = "structural";
        let ell = wrap(m, chief_series0(alg), |c| {
            InvariantValue::exact(m, c.ell, Some((&c.series).into()))
        })?;
        let minmax = wrap(m, minmax_bracket0(alg), |b| match b.exact() {
            Some(v) => InvariantValue {
                note: Some(format!("lower bound: {:?}", b.lower_reason).to_lowercase()),
                ..InvariantValue::exact(m, v, b.witness.as_ref().map(Into::into))
            },
            None => InvariantValue {
                status: ValueStatus::Bracket,
                method: m,
                value: None,
                lower: Some(b.lower),
                upper: b.upper,
                witness: b.witness.as_ref().map(Into::into),
                note: b.note.clone(),
            },
        })?;
        let modl = wrap(m, modl0(alg), |c| InvariantValue::exact(m, c.value, Some((&c.witness).into())))?;
        let qil = wrap(m, qil0(alg), |c| InvariantValue::exact(m, c.value, Some((&c.witness).into())))?;
        let radical_dim = wrap(m, radical0(alg), |r| InvariantValue::exact(m, r.dim(), None))?;
        let nilradical_dim = wrap(m, nilradical0(alg), |r| InvariantValue::exact(m, r.dim(), None))?;
        let frattini_dim = InvariantValue::indeterminate(m, "Frattini ideal is only computed by brute force".into());
        Ok(InvariantReport {
            schema: SCHEMA,
            algebra: Self::summary(alg),
            method: Method::Structural,
            ell,
            minmax,
            modl,
            qil,
            radical_dim,
            nilradical_dim,
            frattini_dim,
            lattice_nodes: None,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        let _ = writeln!(
            out,
            "algebra: dim {} over {}{}{}",
            a.dim,
            a.field,
            if a.solvable { ", solvable" } else { "" },
            if a.nilpotent { ", nilpotent" } else { "" }
        );
        let rows = [
            ("ell", &self.ell),
            ("minmax", &self.minmax),
            ("modl", &self.modl),
            ("qil", &self.qil),
            ("radical dim", &self.radical_dim),
            ("nilradical dim", &self.nilradical_dim),
            ("frattini dim", &self.frattini_dim),
        ];
        for (name, v) in rows {
            let _ = write!(out, "{name:<15} {:<14} {:?}/{}", v.render(), v.status, v.method);
            if let Some(w) = &v.witness {
                let _ = write!(out, "  dims {:?}", w.dims);
            }
            if let Some(n) = &v.note {
                let _ = write!(out, "  ({n})");
            }
            out.push('\n');
        }
        if let Some(n) = self.lattice_nodes {
            let _ = writeln!(out, "lattice nodes   {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogSpec;
    use crate::fields::FieldSpec;

    fn make(fam: &str, field: FieldSpec) -> LieAlgebra {
        CatalogSpec::new(fam.parse().unwrap(), field).make().unwrap()
    }

    #[test]
    fn abelian_gf2_cube() {
        let a = make("abelian(3)", FieldSpec::prime(2).unwrap());
        let r = InvariantReport::compute(&a, Method::Auto, &LatticeBudget::default()).unwrap();
        assert_eq!(r.method, Method::Brute);
        for v in [&r.ell, &r.minmax, &r.modl, &r.qil] {
            assert_eq!(v.value, Some(3));
        }
        assert_eq!(r.frattini_dim.value, Some(0));
    }

    #[test]
    fn l1_zero_gf2() {
        let a = make("l1_gamma(0)", FieldSpec::prime(2).unwrap());
        let r = InvariantReport::brute(&a, &LatticeBudget::default()).unwrap();
        assert_eq!((r.ell.value, r.qil.value), (Some(1), Some(3)));
    }

    #[test]
    fn sl2_rationals() {
        let a = make("sl2", FieldSpec::Rationals);
        let r = InvariantReport::compute(&a, Method::Auto, &LatticeBudget::default()).unwrap();
        assert_eq!(r.ell.value, Some(1));
        assert_eq!(r.minmax.status, ValueStatus::Exact);
        assert_eq!((r.minmax.value, r.modl.value, r.qil.value), (Some(2), Some(2), Some(2)));
        assert_eq!(r.frattini_dim.status, ValueStatus::Indeterminate);
    }

    #[test]
    fn json_is_stable() {
        let a = make("sl2", FieldSpec::Rationals);
        let one = InvariantReport::structural(&a).unwrap().to_json();
        let two = InvariantReport::structural(&a).unwrap().to_json();
        assert_eq!(one, two);
        assert!(one.contains("\"schema\": \"report/1\""));
    }
}
