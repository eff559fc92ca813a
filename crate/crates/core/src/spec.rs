//! Ring construction trees and the versioned JSON spec document.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, Ast, ElementExpr};
use crate::ideal::Ideal;
use crate::module::ModuleTable;
use crate::ring::{build_algebra, build_product, build_quotient, build_trivial_extension, build_zmod, RingTable};
use crate::Limits;

pub const SPEC_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSpec {
    Zmod {
        n: usize,
    },
    /// Basis products are given either as `relations` (`"x*y": "y2"`, one per
    /// unordered pair of non-identity basis names) or as raw `constants`.
    Algebra {
        modulus: usize,
        basis: Vec<String>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        relations: BTreeMap<String, ElementExpr>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        constants: Option<Vec<Vec<Vec<u64>>>>,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    Quotient {
        base: Box<RingSpec>,
        gens: Vec<ElementExpr>,
    },
    TrivialExtension {
        base: Box<RingSpec>,
        module: ModuleSpec,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleSpec {
    #[serde(rename = "self")]
    Regular,
    QuotientModule {
        gens: Vec<ElementExpr>,
    },
    DirectSum {
        summands: Vec<ModuleSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    pub version: u32,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, Vec<ElementExpr>>,
}

/// Parses a JSON spec document; syntax errors carry line and column.
pub fn parse_spec(text: &str) -> Result<SpecDocument> {
    let doc: SpecDocument = serde_json::from_str(text).map_err(|e| Error::Spec {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.version != SPEC_VERSION {
        return Err(Error::Spec {
            line: 1,
            column: 1,
            message: format!("unsupported version {} (expected {SPEC_VERSION})", doc.version),
        });
    }
    Ok(doc)
}

impl SpecDocument {
    pub fn new(ring: RingSpec) -> Self {
        SpecDocument {
            version: SPEC_VERSION,
            ring,
            ideals: BTreeMap::new(),
        }
    }

    /// Builds the ring and resolves every named ideal.
    pub fn build(&self, limits: Limits) -> Result<(Arc<RingTable>, BTreeMap<String, Ideal>)> {
        let ring = self.ring.build(limits)?;
        let mut ideals = BTreeMap::new();
        for (name, gens) in &self.ideals {
            let elems = gens
                .iter()
                .map(|g| expr::resolve_expr(&ring, g))
                .collect::<Result<Vec<_>>>()?;
            ideals.insert(name.clone(), ring.generate_ideal(&elems));
        }
        Ok((ring, ideals))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec documents serialize")
    }
}

fn linear_to_vector(
    src: &str,
    modulus: usize,
    basis: &[String],
) -> Result<Vec<u64>> {
    let ast = expr::parse(src)?;
    let Ast::Linear(terms) = ast else {
        return Err(Error::expr(src, "relations must be linear combinations"));
    };
    let mut v = vec![0i64; basis.len()];
    for (c, name) in terms {
        if c.unsigned_abs() >= modulus as u64 {
            return Err(Error::CoefficientOutOfRange { value: c, modulus });
        }
        let k = match name.as_deref() {
            None => 0,
            Some(n) => basis
                .iter()
                .position(|b| b == n)
                .ok_or_else(|| Error::UnknownName(n.to_string()))?,
        };
        v[k] += c;
    }
    Ok(v.into_iter().map(|c| c.rem_euclid(modulus as i64) as u64).collect())
}

/// Structure constants from `"a*b": expr` relations.
pub fn relations_to_constants(
    modulus: usize,
    basis: &[String],
    relations: &BTreeMap<String, ElementExpr>,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let find = |n: &str| {
        basis
            .iter()
            .position(|b| b == n.trim())
            .ok_or_else(|| Error::UnknownName(n.trim().to_string()))
    };
    let mut table: Vec<Vec<Option<Vec<u64>>>> = vec![vec![None; d]; d];
    let unit = |j: usize| -> Vec<u64> { (0..d).map(|k| (k == j) as u64).collect() };
    for (j, row) in table.iter_mut().enumerate() {
        row[0] = Some(unit(j));
    }
    for (j, slot) in table[0].iter_mut().enumerate() {
        *slot = Some(unit(j));
    }
    for (key, value) in relations {
        let (l, r) = key
            .split_once('*')
            .or_else(|| key.split_once('·'))
            .ok_or_else(|| Error::expr(key, "relation keys look like `x*y`"))?;
        let (i, j) = (find(l)?, find(r)?);
        if i == 0 || j == 0 {
            return Err(Error::expr(key, "products with `1` are implied"));
        }
        let v = linear_to_vector(&value.to_text(), modulus, basis)?;
        for (a, b) in [(i, j), (j, i)] {
            if let Some(prev) = &table[a][b] {
                if *prev != v {
                    return Err(Error::expr(key, "conflicting relation"));
                }
            }
            table[a][b] = Some(v.clone());
        }
    }
    let mut out = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            out[i][j] = table[i][j].clone().ok_or_else(|| {
                Error::expr(
                    &format!("{}*{}", basis[i], basis[j]),
                    "missing product relation",
                )
            })?;
        }
    }
    Ok(out)
}

impl RingSpec {
    pub fn build(&self, limits: Limits) -> Result<Arc<RingTable>> {
        match self {
            RingSpec::Zmod { n } => build_zmod(*n, limits),
            RingSpec::Algebra {
                modulus,
                basis,
                relations,
                constants,
            } => {
                let c = match constants {
                    Some(c) if relations.is_empty() => c.clone(),
                    Some(_) => {
                        return Err(Error::InvalidArgument(
                            "give either relations or constants, not both".into(),
                        ))
                    }
                    None => relations_to_constants(*modulus, basis, relations)?,
                };
                build_algebra(*modulus, basis.clone(), c, limits)
            }
            RingSpec::Product { factors } => {
                let built = factors
                    .iter()
                    .map(|f| f.build(limits))
                    .collect::<Result<Vec<_>>>()?;
                build_product(&built)
            }
            RingSpec::Quotient { base, gens } => {
                let b = base.build(limits)?;
                let elems = gens
                    .iter()
                    .map(|g| expr::resolve_expr(&b, g))
                    .collect::<Result<Vec<_>>>()?;
                let ideal = b.generate_ideal(&elems);
                Ok(build_quotient(&b, &ideal)?.0)
            }
            RingSpec::TrivialExtension { base, module } => {
                let b = base.build(limits)?;
                let m = module.build(&b)?;
                build_trivial_extension(&b, &m)
            }
        }
    }

    pub fn zmod(n: usize) -> Self {
        RingSpec::Zmod { n }
    }

    pub fn product(factors: Vec<RingSpec>) -> Self {
        RingSpec::Product { factors }
    }

    pub fn trivial_extension(base: RingSpec, module: ModuleSpec) -> Self {
        RingSpec::TrivialExtension {
            base: Box::new(base),
            module,
        }
    }

    /// `Z_m[vars] / (monomials outside `standard`)`, where `standard` is a set
    /// of exponent vectors closed under division, listed with `0` first.
    pub fn monomial_quotient(modulus: usize, vars: &[&str], standard: &[Vec<u32>]) -> Self {
        let name = |exps: &[u32]| -> String {
            let mut s = String::new();
            for (v, &e) in vars.iter().zip(exps) {
                match e {
                    0 => {}
                    1 => s.push_str(v),
                    e => s.push_str(&format!("{v}^{e}")),
                }
            }
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        };
        let basis: Vec<String> = standard.iter().map(|m| name(m)).collect();
        let mut relations = BTreeMap::new();
        for i in 1..standard.len() {
            for j in i..standard.len() {
                let prod: Vec<u32> = standard[i]
                    .iter()
                    .zip(&standard[j])
                    .map(|(a, b)| a + b)
                    .collect();
                let value = if standard.contains(&prod) {
                    name(&prod)
                } else {
                    "0".into()
                };
                relations.insert(
                    format!("{}*{}", basis[i], basis[j]),
                    ElementExpr::Text(value),
                );
            }
        }
        RingSpec::Algebra {
            modulus,
            basis,
            relations,
            constants: None,
        }
    }

    /// `F_p[X] / (X^k)`.
    pub fn truncated_poly(p: usize, k: u32) -> Self {
        let standard: Vec<Vec<u32>> = (0..k).map(|e| vec![e]).collect();
        Self::monomial_quotient(p, &["x"], &standard)
    }

    /// `F_p[x, y] / (x, y)^k`.
    pub fn truncated_bivariate(p: usize, k: u32) -> Self {
        let mut standard = Vec::new();
        for total in 0..k {
            for a in (0..=total).rev() {
                standard.push(vec![a, total - a]);
            }
        }
        Self::monomial_quotient(p, &["x", "y"], &standard)
    }

    /// `Z_2[X, Y] / (X^2, XY, Y^4)` with basis `1, x, y, y^2, y^3`.
    pub fn two_variable_example() -> Self {
        Self::monomial_quotient(
            2,
            &["x", "y"],
            &[vec![0, 0], vec![1, 0], vec![0, 1], vec![0, 2], vec![0, 3]],
        )
    }
}

impl ModuleSpec {
    pub fn build(&self, ring: &Arc<RingTable>) -> Result<Arc<ModuleTable>> {
        match self {
            ModuleSpec::Regular => ModuleTable::regular(ring),
            ModuleSpec::QuotientModule { gens } => {
                let elems = gens
                    .iter()
                    .map(|g| expr::resolve_expr(ring, g))
                    .collect::<Result<Vec<_>>>()?;
                ModuleTable::quotient(ring, &ring.generate_ideal(&elems))
            }
            ModuleSpec::DirectSum { summands } => {
                let built = summands
                    .iter()
                    .map(|s| s.build(ring))
                    .collect::<Result<Vec<_>>>()?;
                ModuleTable::direct_sum(ring, &built)
            }
        }
    }

    pub fn quotient(gens: &[i64]) -> Self {
        ModuleSpec::QuotientModule {
            gens: gens.iter().map(|&g| ElementExpr::Int(g)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_document() {
        let doc = parse_spec(r#"{"version":1,"ring":{"kind":"zmod","n":12}}"#).unwrap();
        let (r, _) = doc.build(Limits::default()).unwrap();
        assert_eq!(r.size(), 12);
    }

    #[test]
    fn example_algebra_document() {
        let text = r#"{
          "version": 1,
          "ring": {
            "kind": "algebra", "modulus": 2, "basis": ["1","x","y","y2","y3"],
            "relations": {
              "x*x": "0", "x*y": "0", "y*y": "y2", "y*y2": "y3", "y*y3": "0",
              "y2*y2": "0", "y2*y3": "0", "y3*y3": "0", "x*y2": "0", "x*y3": "0"
            }
          },
          "ideals": { "M": ["x", "y"] }
        }"#;
        let doc = parse_spec(text).unwrap();
        let (r, ideals) = doc.build(Limits::default()).unwrap();
        assert_eq!(r.size(), 32);
        assert!(r.is_local());
        assert_eq!(r.units().len(), 16);
        assert_eq!(ideals["M"].size(), 16);
        let builtin = RingSpec::two_variable_example().build(Limits::default()).unwrap();
        assert_eq!(builtin.size(), 32);
    }

    #[test]
    fn trivial_extension_document() {
        let text = r#"{"version":1,"ring":{"kind":"trivial_extension",
            "base":{"kind":"zmod","n":4},
            "module":{"kind":"quotient_module","gens":[2]}}}"#;
        let (r, _) = parse_spec(text).unwrap().build(Limits::default()).unwrap();
        assert_eq!(r.size(), 8);
        assert!(r.is_local());
        assert_eq!(r.label(r.one()), "(1, 0)");
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_spec("{\"version\": 1,\n  \"ring\": {\"kind\": \"zmod\", \"n\": }}").unwrap_err();
        match err {
            Error::Spec { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
        assert!(matches!(
            parse_spec(r#"{"version":2,"ring":{"kind":"zmod","n":3}}"#),
            Err(Error::Spec { .. })
        ));
    }

    #[test]
    fn unknown_basis_name_and_missing_relation() {
        let mut rel = BTreeMap::new();
        rel.insert("x*x".to_string(), ElementExpr::from("z"));
        let spec = RingSpec::Algebra {
            modulus: 2,
            basis: vec!["1".into(), "x".into()],
            relations: rel,
            constants: None,
        };
        assert_eq!(
            spec.build(Limits::default()).unwrap_err(),
            Error::UnknownName("z".into())
        );
        let spec = RingSpec::Algebra {
            modulus: 2,
            basis: vec!["1".into(), "x".into()],
            relations: BTreeMap::new(),
            constants: None,
        };
        assert!(matches!(spec.build(Limits::default()), Err(Error::Expression { .. })));
    }

    #[test]
    fn round_trips_through_json() {
        let doc = SpecDocument::new(RingSpec::trivial_extension(
            RingSpec::truncated_poly(2, 2),
            ModuleSpec::Regular,
        ));
        let back = parse_spec(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn truncated_rings_have_expected_sizes() {
        let l = Limits::default();
        assert_eq!(RingSpec::truncated_poly(3, 4).build(l).unwrap().size(), 81);
        assert_eq!(RingSpec::truncated_bivariate(2, 2).build(l).unwrap().size(), 8);
        assert_eq!(RingSpec::truncated_bivariate(2, 3).build(l).unwrap().size(), 64);
    }
}
