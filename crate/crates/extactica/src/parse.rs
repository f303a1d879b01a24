//! Text grammar and JSON schema for polynomials and vector fields.
//!
//! Grammar (no implicit multiplication, `xy` is a single identifier):
//!
//! ```text
//! poly     := '-'? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | ident | '(' poly ')'
//! rational := uint ('/' uint)?
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MPoly, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Affine,
    Projective,
}

/// A validated vector field as read from text or JSON, before being promoted
/// to a `VectorField`. Coefficients are aligned with `vars`; every polynomial
/// lives over `vars ++ params`.
#[derive(Clone, Debug)]
pub struct ParsedField {
    pub vars: Vec<String>,
    pub params: Vec<String>,
    pub coeffs: Vec<MPoly>,
    pub kind: FieldKind,
}

/// On-disk JSON schema for a vector field.
#[derive(Serialize, Deserialize)]
pub struct FieldJson {
    pub kind: FieldKind,
    pub vars: Vec<String>,
    pub coeffs: std::collections::BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '0'..='9' => {
                let mut s = String::new();
                while matches!(chars.peek(), Some('0'..='9')) {
                    s.push(bump(&mut chars));
                }
                out.push(Spanned {
                    tok: Tok::Int(s.parse().expect("digits")),
                    line: tl,
                    col: tc,
                });
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    s.push(bump(&mut chars));
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    line: tl,
                    col: tc,
                });
            }
            _ => {
                let c = bump(&mut chars);
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(Error::Syntax {
                            line: tl,
                            col: tc,
                            msg: format!("unexpected character `{other}`"),
                        })
                    }
                };
                out.push(Spanned { tok, line: tl, col: tc });
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a Arc<Vec<String>>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn poly(&mut self) -> Result<MPoly> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.advance() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => {
                    self.pos -= 1;
                    Err(self.err("expected a non-negative integer exponent"))
                }
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MPoly> {
        let at = self.here();
        match self.advance() {
            Some(Tok::Int(n)) => {
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.advance() {
                        Some(Tok::Int(d)) if !num_traits::Zero::is_zero(&d) => {
                            value /= Rational::from_integer(d);
                        }
                        _ => {
                            self.pos -= 1;
                            return Err(self.err("expected a positive integer denominator"));
                        }
                    }
                }
                Ok(MPoly::constant(self.vars, value))
            }
            Some(Tok::Ident(name)) => {
                MPoly::var(self.vars, &name).map_err(|_| Error::Syntax {
                    line: at.0,
                    col: at.1,
                    msg: format!("undeclared identifier `{name}`"),
                })
            }
            Some(Tok::LParen) => {
                let inner = self.poly()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a number, identifier or `(`"))
            }
        }
    }
}

/// Parse a polynomial over the declared (ordered) variable list.
pub fn parse_polynomial(text: &str, vars: &Arc<Vec<String>>) -> Result<MPoly> {
    let toks = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map(|l| l.len()).unwrap_or(0);
    let mut parser = Parser {
        toks,
        pos: 0,
        vars,
        end: (lines, last_len + 1),
    };
    let p = parser.poly()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(p)
}

/// Canonical rendering; `parse_polynomial(render(p)) == p`.
pub fn render(p: &MPoly) -> String {
    p.to_string()
}

fn syntax_at(msg: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        col: 1,
        msg: msg.into(),
    }
}

/// Parse a vector field from either the text form
/// `vars x y z [; params s t]; dx: <poly>; dy: <poly>; dz: <poly>`
/// or the JSON schema (`FieldJson`). Text fields are classified projective
/// when every nonzero coefficient is homogeneous of one common degree in the
/// geometric variables, affine otherwise; JSON declares the kind explicitly.
pub fn parse_vector_field(input: &str) -> Result<ParsedField> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let json: FieldJson = serde_json::from_str(input)
            .map_err(|e| syntax_at(format!("invalid field JSON: {e}")))?;
        build_field(
            json.vars,
            json.params,
            |var, all| {
                let text = json
                    .coeffs
                    .get(var)
                    .map(String::as_str)
                    .unwrap_or("0");
                parse_polynomial(text, all)
            },
            Some(json.kind),
        )
    } else {
        parse_field_text(input)
    }
}

fn parse_field_text(input: &str) -> Result<ParsedField> {
    let mut vars: Vec<String> = Vec::new();
    let mut params: Vec<String> = Vec::new();
    let mut coeff_texts: Vec<(String, String)> = Vec::new();
    let mut kind: Option<FieldKind> = None;
    for clause in input.split(';') {
        let clause = clause.trim();
        if clause.is_empty() {
            continue;
        }
        if let Some(rest) = clause.strip_prefix("vars ") {
            vars = rest.split_whitespace().map(str::to_string).collect();
        } else if let Some(rest) = clause.strip_prefix("params ") {
            params = rest.split_whitespace().map(str::to_string).collect();
        } else if clause == "affine" {
            kind = Some(FieldKind::Affine);
        } else if clause == "projective" {
            kind = Some(FieldKind::Projective);
        } else if let Some((lhs, rhs)) = clause.split_once(':') {
            let lhs = lhs.trim();
            let var = lhs
                .strip_prefix('d')
                .filter(|v| !v.is_empty())
                .ok_or_else(|| syntax_at(format!("expected `d<var>:`, got `{lhs}:`")))?;
            coeff_texts.push((var.to_string(), rhs.trim().to_string()));
        } else {
            return Err(syntax_at(format!("unrecognized clause `{clause}`")));
        }
    }
    if vars.is_empty() {
        return Err(syntax_at("missing `vars` header"));
    }
    build_field(
        vars,
        params,
        |var, all| {
            let text = coeff_texts
                .iter()
                .find(|(v, _)| v == var)
                .map(|(_, t)| t.as_str())
                .unwrap_or("0");
            parse_polynomial(text, all)
        },
        kind,
    )
}

fn build_field<F>(
    vars: Vec<String>,
    params: Vec<String>,
    mut coeff_of: F,
    kind: Option<FieldKind>,
) -> Result<ParsedField>
where
    F: FnMut(&str, &Arc<Vec<String>>) -> Result<MPoly>,
{
    let mut all: Vec<String> = vars.clone();
    all.extend(params.iter().cloned());
    let n = all.len();
    if all
        .iter()
        .enumerate()
        .any(|(i, v)| all[i + 1..].contains(v))
    {
        return Err(Error::InvalidField("duplicate variable name".into()));
    }
    let _ = n;
    let all = Arc::new(all);
    let coeffs: Vec<MPoly> = vars
        .iter()
        .map(|v| coeff_of(v, &all))
        .collect::<Result<_>>()?;

    let geo_idx: Vec<usize> = (0..vars.len()).collect();
    let common = homogeneous_common_degree(&coeffs, &geo_idx);
    let kind = match kind {
        Some(k) => k,
        None => {
            if common.is_some() {
                FieldKind::Projective
            } else {
                FieldKind::Affine
            }
        }
    };
    if kind == FieldKind::Projective && common.is_none() {
        return Err(Error::InvalidField(
            "projective field requires all nonzero coefficients homogeneous of one common degree"
                .into(),
        ));
    }
    Ok(ParsedField {
        vars,
        params,
        coeffs,
        kind,
    })
}

/// Common homogeneous degree of the nonzero coefficients in the given
/// variables, if any. All-zero coefficient lists report degree 0.
pub(crate) fn homogeneous_common_degree(coeffs: &[MPoly], geo_idx: &[usize]) -> Option<u32> {
    let mut common: Option<u32> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let d = c.homogeneous_degree_in(geo_idx)?;
        match common {
            None => common = Some(d),
            Some(prev) if prev != d => return None,
            _ => {}
        }
    }
    common.or(Some(0))
}
