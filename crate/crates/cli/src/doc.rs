//! Source documents: one ring, named ideals, equidimensionality assertions
//! and decomposition claims.
//!
//! ```text
//! ring Q[t, x, y] uniformizer t   # or F7[...]
//! ideal I = t - x^2, t - y^2
//! ideal P = x; ideal Q = y
//! equidim I
//! claim D for I = P^2, Q
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serrelab_core::groebner::Ideal;
use serrelab_core::localalg::DecompositionClaim;
use serrelab_core::polyalg::{FieldSpec, Polynomial, RingSignature};
use serrelab_core::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedIdeal {
    pub name: String,
    pub ideal: Ideal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub ideal: String,
    pub components: Vec<(String, u64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceDocument {
    pub ring: Arc<RingSignature>,
    pub ideals: Vec<NamedIdeal>,
    pub equidim: BTreeSet<String>,
    pub claims: Vec<Claim>,
}

impl SourceDocument {
    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.iter().find(|i| i.name == name).map(|i| &i.ideal)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    /// Resolves a claim's component names into ideals.
    pub fn decomposition(&self, claim: &Claim) -> DecompositionClaim {
        let components = claim
            .components
            .iter()
            .map(|(n, m)| (self.ideal(n).expect("checked at parse time").clone(), *m))
            .collect();
        DecompositionClaim { components }
    }
}

/// Byte-indexed cursor over one statement; `base` locates it in the file.
struct Stmt<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Stmt<'a> {
    fn err_at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        let column = self.column + self.text[..offset.min(self.text.len())].chars().count();
        ParseError { line: self.line, column, message: message.into() }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        self.err_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn ident(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let mut end = 0;
        for (i, c) in rest.char_indices() {
            let ok = if i == 0 { c.is_ascii_alphabetic() || c == '_' } else { c.is_ascii_alphanumeric() || c == '_' || c == '\'' };
            if !ok {
                break;
            }
            end = i + c.len_utf8();
        }
        if end == 0 {
            return Err(self.err(format!("expected {what}")));
        }
        self.pos += end;
        Ok((start, &rest[..end]))
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn parse_field(s: &Stmt, at: usize, name: &str) -> Result<FieldSpec, ParseError> {
    if name == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = name.strip_prefix('F') {
        if let Ok(p) = p.parse::<u64>() {
            return FieldSpec::prime(p).map_err(|e| s.err_at(at, e.to_string()));
        }
    }
    Err(s.err_at(at, format!("unknown field `{name}`; expected Q or Fp")))
}

fn parse_ring(s: &mut Stmt) -> Result<Arc<RingSignature>, ParseError> {
    let (at, field) = s.ident("a field")?;
    let field = parse_field(s, at, field)?;
    s.expect('[')?;
    let mut vars = Vec::new();
    if !s.eat(']') {
        loop {
            let (at, v) = s.ident("a variable name")?;
            if vars.iter().any(|(_, w)| w == v) {
                return Err(s.err_at(at, format!("duplicate variable {v}")));
            }
            vars.push((at, v.to_string()));
            if s.eat(']') {
                break;
            }
            s.expect(',')?;
        }
    }
    let mut uniformizer = None;
    if !s.at_end() {
        let (at, kw) = s.ident("`uniformizer`")?;
        if kw != "uniformizer" {
            return Err(s.err_at(at, format!("expected `uniformizer`, found `{kw}`")));
        }
        let (at, u) = s.ident("a variable name")?;
        if !vars.iter().any(|(_, v)| v == u) {
            return Err(s.err_at(at, format!("unknown variable {u}")));
        }
        uniformizer = Some(u.to_string());
    }
    s.finish()?;
    let names: Vec<&str> = vars.iter().map(|(_, v)| v.as_str()).collect();
    RingSignature::new(field, &names, uniformizer.as_deref()).map_err(|e| s.err_at(0, e.to_string()))
}

/// Position of `name` as a whole identifier inside `src`.
fn find_ident(src: &str, name: &str) -> Option<usize> {
    let bytes = src.as_bytes();
    let is_id = |b: u8| b.is_ascii_alphanumeric() || b == b'_' || b == b'\'';
    let mut from = 0;
    while let Some(k) = src[from..].find(name) {
        let at = from + k;
        let end = at + name.len();
        let before = at == 0 || !is_id(bytes[at - 1]);
        let after = end == bytes.len() || !is_id(bytes[end]);
        if before && after {
            return Some(at);
        }
        from = at + 1;
    }
    None
}

fn parse_poly(s: &Stmt, ring: &Arc<RingSignature>, start: usize, end: usize) -> Result<Polynomial, ParseError> {
    let src = &s.text[start..end];
    if src.trim().is_empty() {
        return Err(s.err_at(start, "expected a polynomial"));
    }
    Polynomial::parse(ring, src).map_err(|e| match e {
        Error::Syntax { offset, message } => s.err_at(start + offset, message),
        Error::UnknownVariable(v) => s.err_at(start + find_ident(src, &v).unwrap_or(0), format!("unknown variable {v}")),
        other => s.err_at(start, other.to_string()),
    })
}

struct Builder {
    ring: Option<Arc<RingSignature>>,
    ideals: Vec<NamedIdeal>,
    equidim: BTreeSet<String>,
    claims: Vec<Claim>,
}

impl Builder {
    fn name_taken(&self, name: &str) -> bool {
        self.ideals.iter().any(|i| i.name == name) || self.claims.iter().any(|c| c.name == name)
    }

    fn ring(&self, s: &Stmt) -> Result<Arc<RingSignature>, ParseError> {
        self.ring.clone().ok_or_else(|| s.err_at(0, "no ring declared"))
    }

    fn known_ideal(&self, s: &Stmt, at: usize, name: &str) -> Result<(), ParseError> {
        if self.ideals.iter().any(|i| i.name == name) {
            Ok(())
        } else {
            Err(s.err_at(at, format!("unknown ideal {name}")))
        }
    }

    fn fresh_name<'a>(&self, s: &mut Stmt<'a>) -> Result<&'a str, ParseError> {
        let (at, name) = s.ident("a name")?;
        if self.name_taken(name) {
            return Err(s.err_at(at, format!("duplicate name {name}")));
        }
        Ok(name)
    }

    fn statement(&mut self, s: &mut Stmt) -> Result<(), ParseError> {
        let (at, kw) = s.ident("a declaration")?;
        match kw {
            "ring" => {
                if self.ring.is_some() {
                    return Err(s.err_at(at, "duplicate ring declaration"));
                }
                self.ring = Some(parse_ring(s)?);
            }
            "ideal" => {
                let ring = self.ring(s)?;
                let name = self.fresh_name(s)?.to_string();
                s.expect('=')?;
                let mut gens = Vec::new();
                let mut start = s.pos;
                for (k, c) in s.text[s.pos..].char_indices() {
                    if c == ',' {
                        let end = s.pos + k;
                        gens.push(parse_poly(s, &ring, start, end)?);
                        start = end + 1;
                    }
                }
                gens.push(parse_poly(s, &ring, start, s.text.len())?);
                let ideal = Ideal::new(&ring, gens).map_err(|e| s.err_at(0, e.to_string()))?;
                self.ideals.push(NamedIdeal { name, ideal });
            }
            "equidim" => {
                self.ring(s)?;
                loop {
                    let (at, name) = s.ident("an ideal name")?;
                    self.known_ideal(s, at, name)?;
                    self.equidim.insert(name.to_string());
                    if s.at_end() {
                        break;
                    }
                    s.expect(',')?;
                }
            }
            "claim" => {
                self.ring(s)?;
                let name = self.fresh_name(s)?.to_string();
                let (at, kw) = s.ident("`for`")?;
                if kw != "for" {
                    return Err(s.err_at(at, format!("expected `for`, found `{kw}`")));
                }
                let (at, ideal) = s.ident("an ideal name")?;
                self.known_ideal(s, at, ideal)?;
                let ideal = ideal.to_string();
                s.expect('=')?;
                let mut components = Vec::new();
                loop {
                    let (at, comp) = s.ident("an ideal name")?;
                    self.known_ideal(s, at, comp)?;
                    let mut mult = 1;
                    if s.eat('^') {
                        s.skip_ws();
                        let digits: String = s.text[s.pos..].chars().take_while(|c| c.is_ascii_digit()).collect();
                        mult = digits.parse::<u64>().map_err(|_| s.err("expected a positive multiplicity"))?;
                        if mult == 0 {
                            return Err(s.err("expected a positive multiplicity"));
                        }
                        s.pos += digits.len();
                    }
                    components.push((comp.to_string(), mult));
                    if s.at_end() {
                        break;
                    }
                    s.expect(',')?;
                }
                self.claims.push(Claim { name, ideal, components });
            }
            other => return Err(s.err_at(at, format!("unknown declaration `{other}`"))),
        }
        Ok(())
    }
}

/// Parses a whole document, stopping at the first error.
pub fn parse_source(text: &str) -> Result<SourceDocument, ParseError> {
    let mut b = Builder { ring: None, ideals: Vec::new(), equidim: BTreeSet::new(), claims: Vec::new() };
    for (lineno, raw) in text.lines().enumerate() {
        let code = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in code.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let body = piece.trim();
            if !body.is_empty() {
                let column = 1 + code[..offset + lead].chars().count();
                let mut s = Stmt { text: body, pos: 0, line: lineno + 1, column };
                b.statement(&mut s)?;
            }
            offset += piece.len() + 1;
        }
    }
    let ring = b.ring.ok_or(ParseError { line: 1, column: 1, message: "no ring declared".into() })?;
    Ok(SourceDocument { ring, ideals: b.ideals, equidim: b.equidim, claims: b.claims })
}

fn write_ideal(f: &mut fmt::Formatter<'_>, i: &NamedIdeal) -> fmt::Result {
    write!(f, "ideal {} = ", i.name)?;
    if i.ideal.is_zero() {
        return writeln!(f, "0");
    }
    for (k, g) in i.ideal.generators().iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{g}")?;
    }
    writeln!(f)
}

/// Normalized source text; parsing it gives back the same document.
impl fmt::Display for SourceDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {}", self.ring)?;
        for i in &self.ideals {
            write_ideal(f, i)?;
        }
        if !self.equidim.is_empty() {
            let names: Vec<&str> = self.equidim.iter().map(String::as_str).collect();
            writeln!(f, "equidim {}", names.join(", "))?;
        }
        for c in &self.claims {
            let comps: Vec<String> = c
                .components
                .iter()
                .map(|(n, m)| if *m == 1 { n.clone() } else { format!("{n}^{m}") })
                .collect();
            writeln!(f, "claim {} for {} = {}", c.name, c.ideal, comps.join(", "))?;
        }
        Ok(())
    }
}
