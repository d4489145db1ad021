//! One function per subcommand. Each resolves names in the document, calls
//! the kernel and returns the structured result.

use std::fmt;

use serde_json::{json, Value};

use serrelab_core::groebner::{self, Ideal};
use serrelab_core::intersect;
use serrelab_core::localalg;
use serrelab_core::polyalg::MonomialOrder;
use serrelab_core::{Error, ErrorKind, Settings};

use crate::doc::{ParseError, SourceDocument};
use crate::json;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(ParseError),
    Kernel(Error),
    /// Corpus assertions that did not hold.
    Mismatch(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 2,
            Failure::Kernel(e) => match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Precondition => 1,
                ErrorKind::Budget => 3,
            },
            Failure::Mismatch(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Parse(e) => write!(f, "parse error: {e}"),
            Failure::Kernel(e) => write!(f, "error: {e}"),
            Failure::Mismatch(m) => write!(f, "corpus failure: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Kernel(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

pub type CmdResult = Result<Value, Failure>;

pub fn lookup<'a>(doc: &'a SourceDocument, name: &str) -> Result<&'a Ideal, Failure> {
    doc.ideal(name).ok_or_else(|| Failure::Usage(format!("no ideal named {name}")))
}

pub fn parse_order(flag: &str) -> Result<MonomialOrder, Failure> {
    match flag {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        other => Err(Failure::Usage(format!("unknown order `{other}`; expected grevlex or lex"))),
    }
}

pub fn gb(doc: &SourceDocument, name: &str, order: &MonomialOrder, s: &Settings) -> CmdResult {
    let gb = groebner::buchberger(lookup(doc, name)?, order, s.budget)?;
    Ok(json!({ "ideal": name, "basis": json::basis(&gb) }))
}

pub fn mult(doc: &SourceDocument, name: &str, s: &Settings) -> CmdResult {
    let c = localalg::multiplicity(lookup(doc, name)?, s)?;
    Ok(json!({ "ideal": name, "multiplicity": json::certificate(&c) }))
}

pub fn tangent(doc: &SourceDocument, name: &str, s: &Settings) -> CmdResult {
    let tc = localalg::tangent_cone(lookup(doc, name)?, s)?;
    Ok(json!({ "ideal": name, "tangent_cone": json::tangent(&tc) }))
}

pub fn chi(doc: &SourceDocument, i: &str, j: &str, s: &Settings) -> CmdResult {
    let c = intersect::chi(lookup(doc, i)?, lookup(doc, j)?, s)?;
    Ok(json!({ "pair": [i, j], "chi": c.value, "certificate": json::certificate(&c) }))
}

/// `--equidim` on the command line, or both ideals asserted in the document.
pub fn report(doc: &SourceDocument, i: &str, j: &str, equidim_flag: bool, s: &Settings) -> CmdResult {
    let equidim = equidim_flag || (doc.equidim.contains(i) && doc.equidim.contains(j));
    let r = intersect::serre_report(lookup(doc, i)?, lookup(doc, j)?, equidim, s)?;
    Ok(json!({ "pair": [i, j], "report": json::chi_report(&r) }))
}

pub fn samuel(doc: &SourceDocument, i: &str, j: &str, s: &Settings) -> CmdResult {
    let c = intersect::samuel_check(lookup(doc, i)?, lookup(doc, j)?, s)?;
    Ok(json!({ "pair": [i, j], "samuel": json::samuel(&c) }))
}

pub fn psi(doc: &SourceDocument, i: &str, j: &str, s: &Settings) -> CmdResult {
    let d = intersect::psi_defect(lookup(doc, i)?, lookup(doc, j)?, s)?;
    Ok(json!({ "pair": [i, j], "psi_defect": json::psi(&d) }))
}

pub fn dimcut(doc: &SourceDocument, i: &str, j: &str, s: &Settings) -> CmdResult {
    let d = intersect::dimcut_check(lookup(doc, i)?, lookup(doc, j)?, s)?;
    Ok(json!({ "pair": [i, j], "dimcut": json::dimcut(&d) }))
}

pub fn additivity(doc: &SourceDocument, claim: &str, s: &Settings) -> CmdResult {
    let c = doc.claim(claim).ok_or_else(|| Failure::Usage(format!("no claim named {claim}")))?;
    let a = localalg::additivity_check(lookup(doc, &c.ideal)?, &doc.decomposition(c), s)?;
    Ok(json!({ "claim": claim, "ideal": c.ideal, "additivity": json::additivity(&a) }))
}
