//! Built-in fixture suites. Each fixture is a source document plus a list of
//! asserted values; every ideal in it is also run through the tangent-cone
//! certificate and the exact/finite-difference multiplicity comparison.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use serrelab_core::groebner::{self, Ideal};
use serrelab_core::intersect::{self, Verdict};
use serrelab_core::localalg;
use serrelab_core::polyalg::{MonomialOrder, Polynomial};
use serrelab_core::{Error, Settings};

use crate::commands::{parse_order, Failure};
use crate::doc::{parse_source, SourceDocument};
use crate::json;

pub const SUITES: &[(&str, &str)] = &[
    ("paper", include_str!("../corpus/paper.toml")),
    ("complementary", include_str!("../corpus/complementary.toml")),
    ("flat", include_str!("../corpus/flat.toml")),
    ("samuel", include_str!("../corpus/samuel.toml")),
    ("equidim", include_str!("../corpus/equidim.toml")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Tag {
    #[serde(rename = "PAPER")]
    Paper,
    #[serde(rename = "TRIVIAL")]
    Trivial,
    #[serde(rename = "DERIVED")]
    Derived,
}

impl Tag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tag::Paper => "PAPER",
            Tag::Trivial => "TRIVIAL",
            Tag::Derived => "DERIVED",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum CheckKind {
    Gb { ideal: String, order: Option<String>, basis: Option<Vec<String>> },
    Mult { ideal: String, e: Option<u64>, dim: Option<usize> },
    MultWrt { ideal: String, by: String, d: usize, e: u64 },
    Tangent { ideal: String, cone: Option<Vec<String>>, dim: Option<usize> },
    Colength { ideal: String, value: u64 },
    Eliminate { ideal: String, vars: Vec<String>, #[serde(default)] contains: Vec<String>, equals: Option<String> },
    Flat { ideal: String, value: bool },
    Chi { left: String, right: String, chi: u64 },
    Excess { left: String, right: String, value: i64 },
    TangentDim { left: String, right: String, value: usize },
    Report {
        left: String,
        right: String,
        #[serde(default)]
        equidim: bool,
        chi: Option<u64>,
        excess: Option<i64>,
        tangent_dim: Option<usize>,
        #[serde(default)]
        verdicts: BTreeMap<String, String>,
        #[serde(default)]
        flags: BTreeMap<String, bool>,
    },
    Samuel { left: String, right: String, total: Option<u64> },
    DvrTensor { left: String, right: String, e: u64 },
    FlatCriterion { left: String, right: String },
    Psi { left: String, right: String, containment: Option<bool>, dim_src: Option<usize>, dim_tgt: Option<usize> },
    Dimcut { left: String, right: String, lhs_dim: Option<usize>, rhs_dim: Option<usize> },
    Additivity { claim: String, matches: bool },
}

#[derive(Debug, Clone, Deserialize)]
pub struct Check {
    #[serde(flatten)]
    pub kind: CheckKind,
    /// Name of the expected error variant, e.g. `NotComplementary`.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub tag: Tag,
    pub note: Option<String>,
    pub source: String,
    #[serde(default)]
    pub check: Vec<Check>,
}

#[derive(Debug, Clone, Deserialize)]
struct SuiteFile {
    fixture: Vec<Fixture>,
}

#[derive(Debug, Clone)]
pub struct LoadedFixture {
    pub suite: &'static str,
    pub fixture: Fixture,
    pub doc: SourceDocument,
}

/// Parses the embedded suites; `None` selects all of them.
pub fn load(suite: Option<&str>) -> Result<Vec<LoadedFixture>, Failure> {
    if let Some(s) = suite {
        if !SUITES.iter().any(|(n, _)| *n == s) {
            let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
            return Err(Failure::Usage(format!("unknown suite `{s}`; expected one of {}", names.join(", "))));
        }
    }
    let mut out = Vec::new();
    for (name, text) in SUITES {
        if suite.is_some_and(|s| s != *name) {
            continue;
        }
        let file: SuiteFile = toml::from_str(text).map_err(|e| Failure::Usage(format!("suite {name}: {e}")))?;
        for fixture in file.fixture {
            let doc = parse_source(&fixture.source)
                .map_err(|e| Failure::Usage(format!("fixture {}: {e}", fixture.name)))?;
            out.push(LoadedFixture { suite: name, fixture, doc });
        }
    }
    out.sort_by(|a, b| a.fixture.name.cmp(&b.fixture.name));
    if let Some(w) = out.windows(2).find(|w| w[0].fixture.name == w[1].fixture.name) {
        return Err(Failure::Usage(format!("duplicate fixture name {}", w[0].fixture.name)));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct FixtureOutcome {
    pub name: String,
    pub suite: &'static str,
    pub tag: Tag,
    pub failures: Vec<String>,
    pub candidates: Vec<String>,
    pub record: Value,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.candidates.is_empty()
    }
}

struct Ctx<'a> {
    doc: &'a SourceDocument,
    s: &'a Settings,
    failures: Vec<String>,
    candidates: Vec<String>,
}

fn variant_name(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

impl<'a> Ctx<'a> {
    fn ideal(&self, name: &str) -> Result<&'a Ideal, Error> {
        self.doc.ideal(name).ok_or_else(|| Error::InvalidArgument(format!("no ideal named {name}")))
    }

    fn poly(&self, src: &str) -> Result<Polynomial, Error> {
        Polynomial::parse(&self.doc.ring, src)
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, expected: Option<T>, observed: &T) {
        if let Some(e) = expected {
            if &e != observed {
                self.failures.push(format!("{what}: expected {e:?}, observed {observed:?}"));
            }
        }
    }

    fn require(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn ideal_list(&self, gens: &[String]) -> Result<Ideal, Error> {
        let polys = gens.iter().map(|g| self.poly(g)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.doc.ring, polys)
    }

    fn run(&mut self, kind: &CheckKind) -> Result<Value, Error> {
        let s = self.s;
        let budget = s.budget;
        Ok(match kind {
            CheckKind::Gb { ideal, order, basis } => {
                let order = match order {
                    Some(o) => parse_order(o).map_err(|e| Error::InvalidArgument(e.to_string()))?,
                    None => MonomialOrder::GrevLex,
                };
                let gb = groebner::buchberger(self.ideal(ideal)?, &order, budget)?;
                let elements: Vec<String> = gb.elements().iter().map(|g| g.to_string()).collect();
                if let Some(b) = basis {
                    let expected = b.iter().map(|g| self.poly(g).map(|p| p.to_string())).collect::<Result<Vec<_>, _>>()?;
                    self.expect("basis", Some(expected), &elements);
                }
                self.require("basis is confluent", gb.is_confluent());
                self.require("basis is reduced", gb.is_reduced());
                json::basis(&gb)
            }
            CheckKind::Mult { ideal, e, dim } => {
                let c = localalg::multiplicity(self.ideal(ideal)?, s)?;
                self.expect("e", *e, &c.value);
                self.expect("dim", *dim, &c.dim);
                json::certificate(&c)
            }
            CheckKind::MultWrt { ideal, by, d, e } => {
                let c = localalg::multiplicity_wrt(self.ideal(ideal)?, self.ideal(by)?, *d, s)?;
                self.expect("e", Some(*e), &c.value);
                json::certificate(&c)
            }
            CheckKind::Tangent { ideal, cone, dim } => {
                let tc = localalg::tangent_cone(self.ideal(ideal)?, s)?;
                if let Some(c) = cone {
                    let expected = self.ideal_list(c)?;
                    let same = groebner::ideal_equal(&tc.ideal, &expected, budget)?;
                    self.require(&format!("tangent cone equals ({})", c.join(", ")), same);
                }
                self.expect("dim", *dim, &tc.dim);
                json::tangent(&tc)
            }
            CheckKind::Colength { ideal, value } => {
                let c = groebner::colength(self.ideal(ideal)?, budget)?;
                self.expect("colength", Some(Some(*value)), &c);
                json!({ "colength": c })
            }
            CheckKind::Eliminate { ideal, vars, contains, equals } => {
                let drop = vars
                    .iter()
                    .map(|v| self.doc.ring.index_of(v).ok_or_else(|| Error::UnknownVariable(v.clone())))
                    .collect::<Result<Vec<_>, _>>()?;
                let e = groebner::eliminate(self.ideal(ideal)?, &drop, budget)?;
                let gb = e.grevlex(budget)?;
                for rel in contains {
                    let inside = gb.contains(&self.poly(rel)?)?;
                    self.require(&format!("eliminant contains {rel}"), inside);
                }
                if let Some(other) = equals {
                    let same = groebner::ideal_equal(&e, self.ideal(other)?, budget)?;
                    self.require(&format!("eliminant equals {other}"), same);
                }
                json!({ "eliminant": json::ideal(&e) })
            }
            CheckKind::Flat { ideal, value } => {
                let f = intersect::flatness_over_uniformizer(self.ideal(ideal)?, s)?;
                self.expect("flat", Some(*value), &f);
                json!({ "flat": f })
            }
            CheckKind::Chi { left, right, chi } => {
                let (i, j) = (self.ideal(left)?, self.ideal(right)?);
                let c = intersect::chi(i, j, s)?;
                let swapped = intersect::chi(j, i, s)?;
                self.expect("chi", Some(*chi), &c.value);
                self.expect("chi(J, I)", Some(c.value), &swapped.value);
                json!({ "chi": c.value, "chi_swapped": swapped.value, "certificate": json::certificate(&c) })
            }
            CheckKind::Excess { left, right, value } => {
                let x = intersect::excess(self.ideal(left)?, self.ideal(right)?, s)?;
                self.expect("excess", Some(*value), &x);
                json!({ "excess": x })
            }
            CheckKind::TangentDim { left, right, value } => {
                let d = intersect::tangent_tensor_dim(self.ideal(left)?, self.ideal(right)?, s)?;
                self.expect("tangent_dim", Some(*value), &d);
                json!({ "tangent_dim": d })
            }
            CheckKind::Report { left, right, equidim, chi, excess, tangent_dim, verdicts, flags } => {
                let r = intersect::serre_report(self.ideal(left)?, self.ideal(right)?, *equidim, s)?;
                let v = json::chi_report(&r);
                self.expect("chi", *chi, &r.chi);
                self.expect("excess", *excess, &r.excess);
                self.expect("tangent_dim", *tangent_dim, &r.tangent_dim);
                for (k, want) in verdicts {
                    let got = v["verdicts"][k].as_str().unwrap_or("missing").to_string();
                    self.expect(&format!("verdict {k}"), Some(want.clone()), &got);
                }
                for (k, want) in flags {
                    let got = v["flags"][k].as_bool();
                    self.expect(&format!("flag {k}"), Some(Some(*want)), &got);
                }
                let rv = &r.verdicts;
                for (k, verdict) in [
                    ("theorem_a", rv.theorem_a),
                    ("vanishing", rv.vanishing),
                    ("theorem_d", rv.theorem_d),
                    ("tennison", rv.tennison),
                ] {
                    self.require(&format!("{k} does not fail"), verdict != Verdict::Fails);
                }
                for (k, verdict) in [("conjecture_i", rv.conjecture_i), ("theorem_c", rv.theorem_c), ("theorem_e", rv.theorem_e)] {
                    if verdict == Verdict::CounterexampleCandidate {
                        self.candidates.push(format!(
                            "{k}: excess {} with tangent_dim {} for ({left}, {right})",
                            r.excess, r.tangent_dim
                        ));
                    }
                }
                v
            }
            CheckKind::Samuel { left, right, total } => {
                let c = intersect::samuel_check(self.ideal(left)?, self.ideal(right)?, s)?;
                self.require("tangent cone of the tensor product is in(I) + in(J)", c.ideal_match);
                self.require("Hilbert function is the convolution", c.convolution_match);
                if total.is_some() {
                    let sum: u64 = c.tensor_hf.iter().sum();
                    self.expect("total", *total, &sum);
                }
                json::samuel(&c)
            }
            CheckKind::DvrTensor { left, right, e } => {
                let (_, t) = intersect::tensor_over_dvr(self.ideal(left)?, self.ideal(right)?)?;
                let c = localalg::multiplicity(&t, s)?;
                self.expect("e_tensor", Some(*e), &c.value);
                json!({ "tensor": json::ideal(&t), "multiplicity": json::certificate(&c) })
            }
            CheckKind::FlatCriterion { left, right } => {
                let (i, j) = (self.ideal(left)?, self.ideal(right)?);
                let t_ideal = Ideal::new(&self.doc.ring, vec![self.uniformizer()?])?;
                let (_, t) = intersect::tensor_over_dvr(i, j)?;
                let et = localalg::multiplicity(&t, s)?.value;
                let em = localalg::multiplicity(i, s)?.value;
                let en = localalg::multiplicity(j, s)?.value;
                let emt = localalg::multiplicity(&groebner::ideal_sum(i, &t_ideal)?, s)?.value;
                let ent = localalg::multiplicity(&groebner::ideal_sum(j, &t_ideal)?, s)?.value;
                let equality = et == em * en;
                let criterion = em == emt || en == ent;
                self.require("e_tensor >= e(M) e(N)", et >= em * en);
                self.require("e_tensor = e(M) e(N) iff e(M) = e(M/tM) or e(N) = e(N/tN)", equality == criterion);
                let d = intersect::dimcut_check(i, j, s)?;
                self.require("dimension cut is consistent", d.consistent);
                json!({
                    "e_tensor": et, "e_M": em, "e_N": en, "e_M_mod_t": emt, "e_N_mod_t": ent,
                    "dimcut": json::dimcut(&d),
                })
            }
            CheckKind::Psi { left, right, containment, dim_src, dim_tgt } => {
                let d = intersect::psi_defect(self.ideal(left)?, self.ideal(right)?, s)?;
                self.expect("containment", *containment, &d.containment);
                self.expect("dim_src", *dim_src, &d.dim_src);
                self.expect("dim_tgt", *dim_tgt, &d.dim_tgt);
                json::psi(&d)
            }
            CheckKind::Dimcut { left, right, lhs_dim, rhs_dim } => {
                let d = intersect::dimcut_check(self.ideal(left)?, self.ideal(right)?, s)?;
                self.require("dimension cut is consistent", d.consistent);
                self.expect("lhs_dim", *lhs_dim, &d.lhs_dim);
                self.expect("rhs_dim", *rhs_dim, &d.rhs_dim);
                json::dimcut(&d)
            }
            CheckKind::Additivity { claim, matches } => {
                let c = self.doc.claim(claim).ok_or_else(|| Error::InvalidArgument(format!("no claim named {claim}")))?;
                let a = localalg::additivity_check(self.ideal(&c.ideal)?, &self.doc.decomposition(c), s)?;
                self.expect("matches", Some(*matches), &a.matches);
                json::additivity(&a)
            }
        })
    }

    fn uniformizer(&self) -> Result<Polynomial, Error> {
        let ring = &self.doc.ring;
        Ok(Polynomial::var(ring, ring.uniformizer().ok_or(Error::MissingUniformizer)?))
    }

    /// Tangent-cone certificate plus exact versus finite-difference multiplicity.
    fn certify(&mut self, name: &str, ideal: &Ideal) -> Value {
        if ideal.is_zero() || ideal.generators().iter().any(|g| !g.constant_term().is_zero()) {
            return json!({ "ideal": name, "skipped": true });
        }
        let s = self.s;
        let result = (|| -> Result<Value, Error> {
            let tc = localalg::tangent_cone(ideal, s)?;
            let exact = localalg::multiplicity(ideal, s)?;
            let fd = localalg::multiplicity_wrt(ideal, &Ideal::maximal(&self.doc.ring), exact.dim, s)?;
            Ok(json!({
                "ideal": name,
                "certified_degrees": s.certificate_degree,
                "cone_dim": tc.dim,
                "e_exact": exact.value,
                "e_finite_difference": fd.value,
            }))
        })();
        match result {
            Ok(v) => {
                if v["e_exact"] != v["e_finite_difference"] {
                    self.failures.push(format!("{name}: exact and finite-difference multiplicities differ"));
                }
                v
            }
            Err(e) => {
                self.failures.push(format!("{name}: certification failed: {e}"));
                json!({ "ideal": name, "error": e.to_string() })
            }
        }
    }
}

fn variant_name_of(kind: &CheckKind) -> String {
    let dbg = format!("{kind:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn check_label(kind: &CheckKind) -> (String, Vec<String>) {
    let v: Value = match kind {
        CheckKind::Gb { ideal, .. }
        | CheckKind::Mult { ideal, .. }
        | CheckKind::MultWrt { ideal, .. }
        | CheckKind::Tangent { ideal, .. }
        | CheckKind::Colength { ideal, .. }
        | CheckKind::Eliminate { ideal, .. }
        | CheckKind::Flat { ideal, .. } => json!([ideal]),
        CheckKind::Chi { left, right, .. }
        | CheckKind::Excess { left, right, .. }
        | CheckKind::TangentDim { left, right, .. }
        | CheckKind::Report { left, right, .. }
        | CheckKind::Samuel { left, right, .. }
        | CheckKind::DvrTensor { left, right, .. }
        | CheckKind::FlatCriterion { left, right }
        | CheckKind::Psi { left, right, .. }
        | CheckKind::Dimcut { left, right, .. } => json!([left, right]),
        CheckKind::Additivity { claim, .. } => json!([claim]),
    };
    let mut op = String::new();
    for (k, c) in variant_name_of(kind).chars().enumerate() {
        if c.is_ascii_uppercase() && k > 0 {
            op.push('-');
        }
        op.push(c.to_ascii_lowercase());
    }
    let args = v.as_array().unwrap().iter().map(|a| a.as_str().unwrap_or_default().to_string()).collect();
    (op, args)
}

/// Evaluates one fixture; never panics on kernel errors.
pub fn evaluate(f: &LoadedFixture, s: &Settings) -> FixtureOutcome {
    let mut ctx = Ctx { doc: &f.doc, s, failures: Vec::new(), candidates: Vec::new() };
    let mut checks = Vec::new();
    for c in &f.fixture.check {
        let before = ctx.failures.len();
        let (op, args) = check_label(&c.kind);
        let observed = match (ctx.run(&c.kind), &c.error) {
            (Ok(v), None) => v,
            (Ok(v), Some(want)) => {
                ctx.failures.push(format!("{op}: expected error {want}, got a result"));
                v
            }
            (Err(e), Some(want)) if variant_name(&e) == *want => json!({ "error": variant_name(&e) }),
            (Err(e), _) => {
                ctx.failures.push(format!("{op}: {e}"));
                json!({ "error": e.to_string() })
            }
        };
        let failures: Vec<String> = ctx.failures[before..].to_vec();
        checks.push(json!({ "op": op, "args": args, "observed": observed, "failures": failures }));
    }
    let certificates: Vec<Value> = f.doc.ideals.iter().map(|i| ctx.certify(&i.name, &i.ideal)).collect();
    let status = if !ctx.candidates.is_empty() {
        "counterexample-candidate"
    } else if ctx.failures.is_empty() {
        "pass"
    } else {
        "fail"
    };
    let record = json!({
        "suite": f.suite,
        "fixture": f.fixture.name,
        "tag": f.fixture.tag.as_str(),
        "status": status,
        "checks": checks,
        "certificates": certificates,
        "failures": ctx.failures,
        "candidates": ctx.candidates,
    });
    FixtureOutcome {
        name: f.fixture.name.clone(),
        suite: f.suite,
        tag: f.fixture.tag,
        failures: ctx.failures,
        candidates: ctx.candidates,
        record,
    }
}

/// Runs fixtures concurrently; results come back ordered by fixture name.
pub fn run(fixtures: &[LoadedFixture], s: &Settings) -> Vec<FixtureOutcome> {
    let mut out: Vec<FixtureOutcome> = fixtures.par_iter().map(|f| evaluate(f, s)).collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Appends one JSON line per fixture, in name order, under a lock.
pub fn append_ledger(path: &Path, outcomes: &[FixtureOutcome]) -> std::io::Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let file = Mutex::new(file);
    let mut guard = file.lock().expect("ledger lock");
    for o in outcomes {
        let line = serde_json::to_string(&o.record).expect("serializable");
        writeln!(guard, "{line}")?;
    }
    guard.flush()
}

pub fn summary(outcomes: &[FixtureOutcome]) -> Value {
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let candidates: usize = outcomes.iter().map(|o| o.candidates.len()).sum();
    json!({
        "fixtures": outcomes.len(),
        "passed": passed,
        "failed": outcomes.len() - passed,
        "counterexample_candidates": candidates,
    })
}

/// One line per fixture, then totals.
pub fn table(outcomes: &[FixtureOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for o in outcomes {
        let status = if !o.candidates.is_empty() {
            "CANDIDATE"
        } else if o.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        out.push_str(&format!("{status:<9} {:<width$}  {:<13} {}\n", o.name, o.suite, o.tag.as_str()));
        for f in &o.failures {
            out.push_str(&format!("          - {f}\n"));
        }
        for c in &o.candidates {
            out.push_str(&format!("          ! COUNTEREXAMPLE-CANDIDATE {c}\n"));
        }
    }
    let s = summary(outcomes);
    out.push_str(&format!(
        "{} fixtures, {} passed, {} failed, {} counterexample candidates\n",
        s["fixtures"], s["passed"], s["failed"], s["counterexample_candidates"]
    ));
    out
}
