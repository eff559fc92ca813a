//! Element expressions: `x+y^2`, `3`, `2*x`, tuples `(1, 2)` for products and
//! pairs `(a, e)` for trivial extensions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::{ModuleOrigin, ModuleTable};
use crate::ring::{Elem, Origin, RingTable};

/// Element expression as it appears in spec documents: a number, a text
/// expression, or a nested tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementExpr {
    Int(i64),
    Text(String),
    Tuple(Vec<ElementExpr>),
}

impl ElementExpr {
    pub fn to_text(&self) -> String {
        match self {
            ElementExpr::Int(v) => v.to_string(),
            ElementExpr::Text(s) => s.clone(),
            ElementExpr::Tuple(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_text()).collect();
                format!("({})", inner.join(","))
            }
        }
    }
}

impl From<&str> for ElementExpr {
    fn from(s: &str) -> Self {
        ElementExpr::Text(s.to_string())
    }
}

impl From<i64> for ElementExpr {
    fn from(v: i64) -> Self {
        ElementExpr::Int(v)
    }
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    /// Sum of `coefficient * name` terms; `None` is the constant term.
    Linear(Vec<(i64, Option<String>)>),
    Tuple(Vec<Ast>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Name(String),
    Plus,
    Minus,
    Star,
    Open,
    Close,
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '(' => {
                out.push(Tok::Open);
                i += 1
            }
            ')' => {
                out.push(Tok::Close);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse::<i64>()
                    .map_err(|_| Error::expr(src, format!("integer `{text}` too large")))?;
                out.push(Tok::Int(v));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '^')
                {
                    i += 1;
                }
                out.push(Tok::Name(chars[start..i].iter().collect()));
            }
            other => return Err(Error::expr(src, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Ast> {
        if self.peek() == Some(&Tok::Open) {
            self.bump();
            let mut parts = vec![self.expr()?];
            loop {
                match self.bump() {
                    Some(Tok::Comma) => parts.push(self.expr()?),
                    Some(Tok::Close) => break,
                    _ => return Err(Error::expr(self.src, "expected `,` or `)`")),
                }
            }
            return Ok(if parts.len() == 1 {
                parts.pop().unwrap()
            } else {
                Ast::Tuple(parts)
            });
        }
        self.linear()
    }

    fn linear(&mut self) -> Result<Ast> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            sign = -1;
        } else if self.peek() == Some(&Tok::Plus) {
            self.bump();
        }
        loop {
            let (c, name) = self.term()?;
            terms.push((sign * c, name));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(Ast::Linear(terms))
    }

    fn term(&mut self) -> Result<(i64, Option<String>)> {
        match self.bump() {
            Some(Tok::Int(v)) => {
                if self.peek() == Some(&Tok::Star) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Name(n)) => Ok((v, Some(n))),
                        _ => Err(Error::expr(self.src, "expected a name after `*`")),
                    }
                } else if let Some(Tok::Name(n)) = self.peek().cloned() {
                    self.bump();
                    Ok((v, Some(n)))
                } else {
                    Ok((v, None))
                }
            }
            Some(Tok::Name(n)) => Ok((1, Some(n))),
            _ => Err(Error::expr(self.src, "expected a term")),
        }
    }
}

pub fn parse(src: &str) -> Result<Ast> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::expr(src, "empty expression"));
    }
    let mut p = Parser { src, toks, pos: 0 };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::expr(src, "trailing input"));
    }
    Ok(ast)
}

/// Splits a comma-separated list at parenthesis depth zero.
pub fn split_list(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = src[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

fn check_coefficient(c: i64, modulus: usize) -> Result<()> {
    if c.unsigned_abs() >= modulus as u64 {
        Err(Error::CoefficientOutOfRange { value: c, modulus })
    } else {
        Ok(())
    }
}

fn constant_only(terms: &[(i64, Option<String>)]) -> Result<i64> {
    let mut total = 0i64;
    for (c, name) in terms {
        match name.as_deref() {
            None | Some("1") => total = total.saturating_add(*c),
            Some(other) => return Err(Error::UnknownName(other.to_string())),
        }
    }
    Ok(total)
}

fn render(ast: &Ast) -> String {
    match ast {
        Ast::Tuple(parts) => {
            let inner: Vec<String> = parts.iter().map(render).collect();
            format!("({})", inner.join(","))
        }
        Ast::Linear(terms) => terms
            .iter()
            .map(|(c, n)| match n {
                Some(n) => format!("{c}*{n}"),
                None => c.to_string(),
            })
            .collect::<Vec<_>>()
            .join("+"),
    }
}

/// Resolves a parsed expression to an element of `ring`.
pub fn resolve(ring: &RingTable, ast: &Ast) -> Result<Elem> {
    match (ring.origin(), ast) {
        (Origin::Tables, Ast::Linear(terms)) => {
            let v = constant_only(terms)?;
            if v < 0 || v as usize >= ring.size() {
                return Err(Error::expr(&render(ast), "index out of range"));
            }
            Ok(v as usize)
        }
        (Origin::Zmod { n }, Ast::Linear(terms)) => {
            for (c, _) in terms {
                check_coefficient(*c, *n)?;
            }
            let v = constant_only(terms)?;
            Ok(v.rem_euclid(*n as i64) as usize)
        }
        (Origin::Algebra { modulus, basis }, Ast::Linear(terms)) => {
            let mut coeffs = vec![0i64; basis.len()];
            for (c, name) in terms {
                check_coefficient(*c, *modulus)?;
                let k = match name.as_deref() {
                    None => 0,
                    Some(n) => basis
                        .iter()
                        .position(|b| b == n)
                        .ok_or_else(|| Error::UnknownName(n.to_string()))?,
                };
                coeffs[k] += c;
            }
            let m = *modulus as i64;
            Ok(coeffs
                .iter()
                .fold(0usize, |acc, &c| acc * *modulus + c.rem_euclid(m) as usize))
        }
        (Origin::Product { factors }, Ast::Tuple(parts)) => {
            if parts.len() != factors.len() {
                return Err(Error::expr(
                    &render(ast),
                    format!("expected a {}-tuple", factors.len()),
                ));
            }
            let comps = factors
                .iter()
                .zip(parts)
                .map(|(f, p)| resolve(f, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(ring.tuple_index(&comps).unwrap())
        }
        (Origin::Quotient { base, projection, .. }, _) => Ok(projection[resolve(base, ast)?]),
        (Origin::TrivialExtension { base, module }, Ast::Tuple(parts)) if parts.len() == 2 => {
            let a = resolve(base, &parts[0])?;
            let e = resolve_module(module, &parts[1])?;
            Ok(a * module.size() + e)
        }
        (Origin::TrivialExtension { base, module }, Ast::Linear(_)) => {
            Ok(resolve(base, ast)? * module.size() + module.zero())
        }
        (_, Ast::Linear(terms)) => {
            let v = constant_only(terms)?;
            Ok(ring.scale(ring.one(), v))
        }
        (_, Ast::Tuple(_)) => Err(Error::expr(&render(ast), "tuple does not fit this ring")),
    }
}

/// Resolves a parsed expression to an element of a module.
pub fn resolve_module(module: &ModuleTable, ast: &Ast) -> Result<Elem> {
    match (module.origin(), ast) {
        (ModuleOrigin::Regular, _) => resolve(module.ring(), ast),
        (ModuleOrigin::Quotient { projection, .. }, _) => {
            Ok(projection[resolve(module.ring(), ast)?])
        }
        (ModuleOrigin::DirectSum { summands }, Ast::Tuple(parts)) if parts.len() == summands.len() => {
            let mut idx = 0;
            for (s, p) in summands.iter().zip(parts) {
                idx = idx * s.size() + resolve_module(s, p)?;
            }
            Ok(idx)
        }
        (ModuleOrigin::Tables, Ast::Linear(terms)) => {
            let v = constant_only(terms)?;
            if v < 0 || v as usize >= module.size() {
                return Err(Error::expr(&render(ast), "index out of range"));
            }
            Ok(v as usize)
        }
        _ => Err(Error::expr(&render(ast), "expression does not fit this module")),
    }
}

pub fn parse_element(ring: &RingTable, src: &str) -> Result<Elem> {
    resolve(ring, &parse(src)?)
}

/// Parses `a, b, c` (commas inside parentheses belong to tuples).
pub fn parse_element_list(ring: &RingTable, src: &str) -> Result<Vec<Elem>> {
    split_list(src)
        .into_iter()
        .map(|part| parse_element(ring, part))
        .collect()
}

pub fn resolve_expr(ring: &RingTable, e: &ElementExpr) -> Result<Elem> {
    parse_element(ring, &e.to_text())
}

pub fn resolve_module_expr(module: &ModuleTable, e: &ElementExpr) -> Result<Elem> {
    resolve_module(module, &parse(&e.to_text())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_product, build_zmod};
    use crate::Limits;

    #[test]
    fn parses_linear_forms() {
        assert_eq!(
            parse("x + 2*y^2 - 1").unwrap(),
            Ast::Linear(vec![
                (1, Some("x".into())),
                (2, Some("y^2".into())),
                (-1, None)
            ])
        );
        assert_eq!(parse("3y").unwrap(), Ast::Linear(vec![(3, Some("y".into()))]));
        assert!(parse("x +").is_err());
        assert!(parse("").is_err());
        assert!(parse("x $ y").is_err());
    }

    #[test]
    fn zmod_elements_and_range() {
        let z12 = build_zmod(12, Limits::default()).unwrap();
        assert_eq!(parse_element(&z12, "4").unwrap(), 4);
        assert_eq!(parse_element(&z12, "-1").unwrap(), 11);
        assert_eq!(
            parse_element(&z12, "13").unwrap_err(),
            Error::CoefficientOutOfRange {
                value: 13,
                modulus: 12
            }
        );
        assert_eq!(
            parse_element(&z12, "x").unwrap_err(),
            Error::UnknownName("x".into())
        );
    }

    #[test]
    fn product_tuples() {
        let z4 = build_zmod(4, Limits::default()).unwrap();
        let z9 = build_zmod(9, Limits::default()).unwrap();
        let p = build_product(&[z4, z9]).unwrap();
        let x = parse_element(&p, "(2, 3)").unwrap();
        assert_eq!(p.components(x), Some(vec![2, 3]));
        assert_eq!(p.label(x), "(2, 3)");
        assert_eq!(parse_element(&p, "1").unwrap(), p.one());
        assert_eq!(
            parse_element_list(&p, "(2,0), (0,3)").unwrap().len(),
            2
        );
    }

    #[test]
    fn list_splitting_respects_parentheses() {
        assert_eq!(split_list("x, (1,2), y"), vec!["x", "(1,2)", "y"]);
        assert!(split_list("").is_empty());
    }
}
