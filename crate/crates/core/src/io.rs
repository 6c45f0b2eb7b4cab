//! The `liealg/1` JSON file format.
//!
//! ```json
//! {
//!   "basis": ["e", "h", "f"],
//!   "brackets": [{"i": 0, "j": 1, "terms": [[0, "-2/1"]]}],
//!   "chains": {"borel": ["0", "B", "L"]},
//!   "dim": 3,
//!   "field": "Q",
//!   "schema": "liealg/1",
//!   "subspaces": {"B": [["1/1", "0/1", "0/1"], ["0/1", "1/1", "0/1"]]}
//! }
//! ```
//!
//! Scalars are strings in the field's literal syntax. Only pairs `i < j`
//! may be listed; missing pairs are zero. The names `0` and `L` always
//! denote the zero subspace and the whole algebra.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::linalg::{is_zero_vector, Subspace, Vector};

pub const SCHEMA: &str = "liealg/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: LieAlgebra,
    pub subspaces: BTreeMap<String, Subspace>,
    pub chains: BTreeMap<String, Vec<String>>,
}

fn perr(loc: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::parse(loc, msg)
}

fn as_obj<'a>(v: &'a Value, loc: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(loc, "expected an object"))
}

fn as_arr<'a>(v: &'a Value, loc: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(loc, "expected an array"))
}

fn as_str<'a>(v: &'a Value, loc: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| perr(loc, "expected a string"))
}

fn as_index(v: &Value, loc: &str, bound: usize) -> Result<usize> {
    let i = v.as_u64().ok_or_else(|| perr(loc, "expected a nonnegative integer"))? as usize;
    if i >= bound {
        return Err(perr(loc, format!("index {i} out of range (dim {bound})")));
    }
    Ok(i)
}

fn parse_vector(v: &Value, field: FieldSpec, n: usize, loc: &str) -> Result<Vector> {
    let items = as_arr(v, loc)?;
    if items.len() != n {
        return Err(perr(loc, format!("vector has length {}, expected {n}", items.len())));
    }
    items
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let l = format!("{loc}[{k}]");
            field.parse_scalar(as_str(x, &l)?).map_err(|e| perr(l, e.to_string()))
        })
        .collect()
}

impl AlgebraFile {
    pub fn new(algebra: LieAlgebra) -> Self {
        AlgebraFile {
            algebra,
            subspaces: BTreeMap::new(),
            chains: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(text)
            .map_err(|e| perr(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        let top = as_obj(&root, "document")?;
        let get = |k: &str| top.get(k).ok_or_else(|| perr(k, "missing field"));
        let schema = as_str(get("schema")?, "schema")?;
        if schema != SCHEMA {
            return Err(perr("schema", format!("unsupported schema `{schema}`")));
        }
        let field: FieldSpec = as_str(get("field")?, "field")?
            .parse()
            .map_err(|e: Error| perr("field", e.to_string()))?;
        let dim = get("dim")?.as_u64().ok_or_else(|| perr("dim", "expected an integer"))? as usize;
        let names: Vec<String> = match top.get("basis") {
            Some(b) => as_arr(b, "basis")?
                .iter()
                .enumerate()
                .map(|(k, x)| as_str(x, &format!("basis[{k}]")).map(str::to_string))
                .collect::<Result<_>>()?,
            None => (1..=dim).map(|i| format!("x{i}")).collect(),
        };
        if names.len() != dim {
            return Err(perr("basis", format!("{} names for dimension {dim}", names.len())));
        }
        let mut brackets: Vec<(usize, usize, Vector)> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (k, entry) in as_arr(get("brackets")?, "brackets")?.iter().enumerate() {
            let loc = format!("brackets[{k}]");
            let e = as_obj(entry, &loc)?;
            let fld = |name: &str| e.get(name).ok_or_else(|| perr(format!("{loc}.{name}"), "missing field"));
            let i = as_index(fld("i")?, &format!("{loc}.i"), dim)?;
            let j = as_index(fld("j")?, &format!("{loc}.j"), dim)?;
            if i >= j {
                return Err(perr(&loc, format!("bracket entries need i < j, got ({i}, {j})")));
            }
            if !seen.insert((i, j)) {
                return Err(perr(&loc, format!("duplicate entry for ({i}, {j})")));
            }
            let mut v = vec![field.zero(); dim];
            for (t, term) in as_arr(fld("terms")?, &format!("{loc}.terms"))?.iter().enumerate() {
                let tl = format!("{loc}.terms[{t}]");
                let pair = as_arr(term, &tl)?;
                if pair.len() != 2 {
                    return Err(perr(&tl, "expected [index, scalar]"));
                }
                let idx = as_index(&pair[0], &tl, dim)?;
                let c = field
                    .parse_scalar(as_str(&pair[1], &tl)?)
                    .map_err(|e| perr(&tl, e.to_string()))?;
                v[idx] = &v[idx] + &c;
            }
            brackets.push((i, j, v));
        }
        let algebra = LieAlgebra::new(field, names, &brackets)?;
        let mut subspaces = BTreeMap::new();
        if let Some(s) = top.get("subspaces") {
            for (name, vecs) in as_obj(s, "subspaces")? {
                let loc = format!("subspaces.{name}");
                if name == "0" || name == "L" {
                    return Err(perr(&loc, "the names `0` and `L` are reserved"));
                }
                let rows = as_arr(vecs, &loc)?
                    .iter()
                    .enumerate()
                    .map(|(k, v)| parse_vector(v, field, dim, &format!("{loc}[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                subspaces.insert(name.clone(), algebra.span(rows));
            }
        }
        let mut chains = BTreeMap::new();
        if let Some(c) = top.get("chains") {
            for (name, members) in as_obj(c, "chains")? {
                let loc = format!("chains.{name}");
                let list = as_arr(members, &loc)?
                    .iter()
                    .enumerate()
                    .map(|(k, m)| {
                        let l = format!("{loc}[{k}]");
                        let m = as_str(m, &l)?;
                        if m != "0" && m != "L" && !subspaces.contains_key(m) {
                            return Err(perr(l, format!("unknown subspace `{m}`")));
                        }
                        Ok(m.to_string())
                    })
                    .collect::<Result<Vec<_>>>()?;
                chains.insert(name.clone(), list);
            }
        }
        Ok(AlgebraFile {
            algebra,
            subspaces,
            chains,
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| perr(path.display().to_string(), e.to_string()))?;
        Self::parse(&text)
    }

    /// Looks up a named subspace; `0` and `L` are built in.
    pub fn subspace(&self, name: &str) -> Result<Subspace> {
        match name {
            "0" => Ok(self.algebra.zero()),
            "L" => Ok(self.algebra.full()),
            _ => self
                .subspaces
                .get(name)
                .cloned()
                .ok_or_else(|| perr(name, "unknown subspace")),
        }
    }

    pub fn chain(&self, name: &str) -> Result<Vec<Subspace>> {
        let names = self.chains.get(name).ok_or_else(|| Error::UnknownChain(name.to_string()))?;
        names.iter().map(|n| self.subspace(n)).collect()
    }

    pub fn to_value(&self) -> Value {
        let alg = &self.algebra;
        let n = alg.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = alg.structure(i, j);
                if is_zero_vector(v) {
                    continue;
                }
                let terms: Vec<Value> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| json!([k, x.to_literal()]))
                    .collect();
                brackets.push(json!({"i": i, "j": j, "terms": terms}));
            }
        }
        let subspaces: Map<String, Value> = self
            .subspaces
            .iter()
            .map(|(name, s)| {
                let rows: Vec<Value> = s
                    .basis()
                    .iter()
                    .map(|r| Value::from(r.iter().map(|x| x.to_literal()).collect::<Vec<_>>()))
                    .collect();
                (name.clone(), Value::from(rows))
            })
            .collect();
        let chains: Map<String, Value> = self
            .chains
            .iter()
            .map(|(name, m)| (name.clone(), Value::from(m.clone())))
            .collect();
        let mut root = Map::new();
        root.insert("basis".into(), Value::from(alg.basis_names().to_vec()));
        root.insert("brackets".into(), Value::from(brackets));
        if !chains.is_empty() {
            root.insert("chains".into(), Value::Object(chains));
        }
        root.insert("dim".into(), Value::from(n));
        root.insert("field".into(), Value::from(alg.field().to_string()));
        root.insert("schema".into(), Value::from(SCHEMA));
        if !subspaces.is_empty() {
            root.insert("subspaces".into(), Value::Object(subspaces));
        }
        Value::Object(root)
    }

    /// Canonical text: sorted keys, lowest-term scalars, trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogSpec};

    const SL2: &str = r#"{
      "schema": "liealg/1", "field": "Q", "dim": 3, "basis": ["e", "h", "f"],
      "brackets": [
        {"i": 0, "j": 1, "terms": [[0, "-2"]]},
        {"i": 0, "j": 2, "terms": [[1, "1"]]},
        {"i": 1, "j": 2, "terms": [[2, "-2"]]}
      ],
      "subspaces": {"B": [["1", "0", "0"], ["0", "1", "0"]]},
      "chains": {"borel": ["0", "B", "L"]}
    }"#;

    #[test]
    fn parses_sl2() {
        let f = AlgebraFile::parse(SL2).unwrap();
        assert_eq!(f.algebra, catalog::sl2(FieldSpec::Rationals).unwrap());
        assert_eq!(f.chain("borel").unwrap().len(), 3);
        assert_eq!(f.chain("nope"), Err(Error::UnknownChain("nope".into())));
    }

    #[test]
    fn diagonal_entry_is_rejected() {
        let bad = SL2.replace(r#""i": 0, "j": 1"#, r#""i": 1, "j": 1"#);
        assert!(matches!(AlgebraFile::parse(&bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let text = r#"{"schema": "liealg/1", "field": "Q", "dim": 3,
          "brackets": [{"i": 0, "j": 1, "terms": [[1, "1"]]}, {"i": 1, "j": 2, "terms": [[0, "1"]]}]}"#;
        assert!(matches!(AlgebraFile::parse(text), Err(Error::JacobiViolation(..))));
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let first = AlgebraFile::parse(SL2).unwrap().to_json_string();
        let second = AlgebraFile::parse(&first).unwrap().to_json_string();
        assert_eq!(first, second);
        let w = CatalogSpec::new("witt".parse().unwrap(), FieldSpec::prime(5).unwrap()).make().unwrap();
        let text = AlgebraFile::new(w.clone()).to_json_string();
        assert_eq!(AlgebraFile::parse(&text).unwrap().algebra, w);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = AlgebraFile::parse("{\n  \"schema\": }").unwrap_err();
        let Error::Parse { location, .. } = err else { panic!() };
        assert!(location.starts_with("line 2"));
    }
}
