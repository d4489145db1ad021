//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! fails. Every numeric comparison is exact.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serrelab::corpus::{self, LoadedFixture};
use serrelab::json;
use serrelab_core::groebner::{self, eliminate, ideal_equal, ideal_sum, Ideal};
use serrelab_core::intersect;
use serrelab_core::localalg;
use serrelab_core::polyalg::{FieldSpec, Polynomial, RingSignature};
use serrelab_core::{Error, Settings};

#[path = "../../core/tests/support/macaulay.rs"]
#[allow(dead_code)]
mod macaulay;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err(e: Error) -> String {
    format!("kernel error: {e}")
}

fn ring(vars: &[&str], t: Option<&str>) -> Arc<RingSignature> {
    RingSignature::new(FieldSpec::Rationals, vars, t).unwrap()
}

fn ideal(sig: &Arc<RingSignature>, gens: &[&str]) -> Ideal {
    Ideal::parse(sig, gens).unwrap()
}

fn within(clock: Instant, limit: Duration) -> Result<(), String> {
    let took = clock.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn pair<'a>(f: &'a LoadedFixture) -> Result<(&'a Ideal, &'a Ideal), String> {
    match (f.doc.ideal("I"), f.doc.ideal("J")) {
        (Some(i), Some(j)) => Ok((i, j)),
        _ => Err(format!("{}: no I/J pair", f.fixture.name)),
    }
}

fn suite_passes(all: &[LoadedFixture], suite: &str, s: &Settings) -> Result<Vec<LoadedFixture>, String> {
    let fixtures: Vec<LoadedFixture> = all.iter().filter(|f| f.suite == suite).cloned().collect();
    for o in corpus::run(&fixtures, s) {
        ensure(o.passed(), format!("{}: {:?} {:?}", o.name, o.failures, o.candidates))?;
    }
    Ok(fixtures)
}

fn parabolas(s: &Settings) -> Outcome {
    let clock = Instant::now();
    let (a, b) = (ring(&["t", "x"], Some("t")), ring(&["t", "y"], Some("t")));
    let (i, j) = (ideal(&a, &["t - x^2"]), ideal(&b, &["t - y^2"]));
    let em = localalg::multiplicity(&i, s).map_err(err)?.value;
    let en = localalg::multiplicity(&j, s).map_err(err)?.value;
    let (_, t) = intersect::tensor_over_dvr(&i, &j).map_err(err)?;
    let et = localalg::multiplicity(&t, s).map_err(err)?.value;
    ensure((em, en, et) == (1, 1, 2), format!("e(M), e(N), e(tensor) = {em}, {en}, {et}"))?;
    within(clock, Duration::from_secs(1))?;
    Ok(format!("e(M) = e(N) = 1, e(tensor) = 2 in {:?}", clock.elapsed()))
}

fn embedded_line(s: &Settings) -> Outcome {
    let clock = Instant::now();
    let r = ring(&["x", "y", "z"], None);
    let (i, j) = (ideal(&r, &["x*y - x^3", "x*z"]), ideal(&r, &["y", "z"]));
    let rep = intersect::serre_report(&i, &j, false, s).map_err(err)?;
    let got = (rep.chi, rep.e_m.value, rep.e_n.value, rep.excess, rep.tangent_dim);
    ensure(got == (1, 1, 1, 0, 1), format!("(chi, e_M, e_N, excess, tangent_dim) = {got:?}"))?;
    let v = json::chi_report(&rep);
    ensure(v["flags"]["missing_equidim_assertion"] == true, "equidimensionality flag missing")?;
    within(clock, Duration::from_secs(5))?;
    Ok(format!("chi 1, e 1/1, excess 0, tangent_dim 1, flagged, in {:?}", clock.elapsed()))
}

fn monomial_curve(s: &Settings) -> Outcome {
    let clock = Instant::now();
    let r4 = ring(&["t", "x", "y", "z"], None);
    let c = ideal(&r4, &["t - z^4", "x - z^5", "y - z^11"]);
    let p = eliminate(&c, &[3], s.budget).map_err(err)?;
    let rels = ["t^4 - x*y", "x^3 - t*y", "x^4 - t^5", "y^2 - t^3*x^2"];
    let gb = p.grevlex(s.budget).map_err(err)?;
    for g in ideal(&r4, &rels).generators() {
        ensure(gb.contains(g).map_err(err)?, format!("{g} not in the elimination ideal"))?;
    }
    let r3 = ring(&["t", "x", "y"], None);
    let p3 = p.rename_embed(&r3, &[Some(0), Some(1), Some(2), None]).map_err(err)?;
    ensure(ideal_equal(&p3, &ideal(&r3, &rels), s.budget).map_err(err)?, "relations do not generate")?;
    let t = ideal(&r3, &["t"]);
    let e = localalg::multiplicity(&p3, s).map_err(err)?.value;
    let et = localalg::multiplicity_wrt(&p3, &t, 1, s).map_err(err)?.value;
    let ec = localalg::multiplicity(&ideal_sum(&p3, &t).map_err(err)?, s).map_err(err)?.value;
    ensure((e, et, ec) == (4, 4, 4), format!("e, e_(t), e(p + (t)) = {e}, {et}, {ec}"))?;
    within(clock, Duration::from_secs(10))?;
    Ok(format!("four relations present, e = 4 three ways, in {:?}", clock.elapsed()))
}

fn complementary(all: &[LoadedFixture], s: &Settings) -> Outcome {
    let fixtures = suite_passes(all, "complementary", s)?;
    let (mut comp, mut flat, mut non_flat, mut sub) = (0, 0, 0, 0);
    for f in &fixtures {
        let (i, j) = pair(f)?;
        let name = &f.fixture.name;
        if name.starts_with("comp-") {
            let x = intersect::excess(i, j, s).map_err(err)?;
            ensure(x >= 0, format!("{name}: excess {x}"))?;
            comp += 1;
            let both_flat = f.doc.ring.uniformizer().is_some()
                && intersect::flatness_over_uniformizer(i, s).map_err(err)?
                && intersect::flatness_over_uniformizer(j, s).map_err(err)?;
            if both_flat {
                flat += 1;
            } else {
                non_flat += 1;
            }
        } else if name.starts_with("sub-") {
            let chi = intersect::chi(i, j, s).map_err(err)?.value;
            ensure(chi == 0, format!("{name}: chi {chi}"))?;
            sub += 1;
        }
    }
    ensure(comp >= 10 && sub >= 5, format!("{comp} complementary, {sub} sub-complementary pairs"))?;
    ensure(flat > 0 && non_flat > 0, format!("{flat} flat, {non_flat} non-flat"))?;
    Ok(format!("excess >= 0 on {comp} pairs ({flat} flat, {non_flat} not), chi = 0 on {sub}"))
}

fn flat_criterion(all: &[LoadedFixture], s: &Settings) -> Outcome {
    let fixtures = suite_passes(all, "flat", s)?;
    let mut pairs = 0;
    for f in &fixtures {
        let name = &f.fixture.name;
        let (i, j) = pair(f)?;
        let u = f.doc.ring.uniformizer().ok_or(format!("{name}: no uniformizer"))?;
        ensure(
            intersect::flatness_over_uniformizer(i, s).map_err(err)?
                && intersect::flatness_over_uniformizer(j, s).map_err(err)?,
            format!("{name}: not flat over the uniformizer"),
        )?;
        let t = Ideal::new(&f.doc.ring, vec![Polynomial::var(&f.doc.ring, u)]).map_err(err)?;
        let (_, tensor) = intersect::tensor_over_dvr(i, j).map_err(err)?;
        let e = |k: &Ideal| localalg::multiplicity(k, s).map(|c| c.value).map_err(err);
        let (et, em, en) = (e(&tensor)?, e(i)?, e(j)?);
        let (emt, ent) = (e(&ideal_sum(i, &t).map_err(err)?)?, e(&ideal_sum(j, &t).map_err(err)?)?);
        ensure((et == em * en) == (em == emt || en == ent), format!("{name}: biconditional fails"))?;
        ensure(intersect::dimcut_check(i, j, s).map_err(err)?.consistent, format!("{name}: dimension cut"))?;
        pairs += 1;
    }
    ensure(pairs >= 8, format!("only {pairs} pairs"))?;
    let strict = fixtures.iter().find(|f| f.fixture.name == "flat-10-strict-pair").ok_or("strict pair missing")?;
    let (i, j) = pair(strict)?;
    let chi = intersect::chi(i, j, s).map_err(err)?.value;
    let x = intersect::excess(i, j, s).map_err(err)?;
    ensure((chi, x) == (2, 1), format!("strict pair: chi {chi}, excess {x}"))?;
    Ok(format!("criterion and dimension cut hold on {pairs} flat pairs; strict pair chi 2, excess 1"))
}

fn samuel(all: &[LoadedFixture], s: &Settings) -> Outcome {
    let fixtures = suite_passes(all, "samuel", s)?;
    let mut pairs = 0;
    for f in &fixtures {
        let (i, j) = pair(f)?;
        let c = intersect::samuel_check(i, j, s).map_err(err)?;
        ensure(c.ideal_match && c.convolution_match, format!("{}: {c:?}", f.fixture.name))?;
        ensure(c.convolution.len() >= 16, format!("{}: only {} degrees", f.fixture.name, c.convolution.len()))?;
        if f.fixture.name == "samuel-01-x2-y3" {
            let total: u64 = c.convolution.iter().sum();
            ensure(total == 6, format!("(x^2)/(y^3) total {total}"))?;
        }
        pairs += 1;
    }
    ensure(pairs >= 10, format!("only {pairs} pairs"))?;
    Ok(format!("ideal and convolution match through degree 15 on {pairs} pairs; (x^2)/(y^3) total 6"))
}

/// Every named ideal of the corpus, once per (ring, generators).
fn corpus_ideals(all: &[LoadedFixture]) -> Vec<(String, Ideal)> {
    let mut seen = BTreeMap::new();
    for f in all {
        for n in &f.doc.ideals {
            let key = format!("{} | {}", f.doc.ring, n.ideal);
            seen.entry(key).or_insert_with(|| (format!("{}:{}", f.fixture.name, n.name), n.ideal.clone()));
        }
    }
    seen.into_values().collect()
}

fn tangent_cones(ideals: &[(String, Ideal)], s: &Settings) -> Outcome {
    let mut certified = 0;
    for (name, i) in ideals {
        if i.is_zero() || i.is_unit(s.budget).map_err(err)? {
            continue;
        }
        let tc = match localalg::tangent_cone(i, s) {
            Err(Error::UnitIdeal) => continue,
            r => r.map_err(|e| format!("{name}: {e}"))?,
        };
        let exact = localalg::multiplicity(i, s).map_err(err)?.value;
        let m = Ideal::maximal(i.signature());
        let fd = localalg::multiplicity_wrt(i, &m, tc.dim, s).map_err(|e| format!("{name}: {e}"))?.value;
        ensure(exact == fd, format!("{name}: exact {exact}, finite differences {fd}"))?;
        certified += 1;
    }
    Ok(format!("{certified} ideals certified for n <= {}, exact e = finite-difference e", s.certificate_degree))
}

fn oracles(all: &[LoadedFixture], ideals: &[(String, Ideal)], s: &Settings) -> Outcome {
    let mut checked = 0;
    for (name, i) in ideals {
        let gb = i.grevlex(s.budget).map_err(err)?;
        ensure(gb.is_confluent() && gb.is_reduced(), format!("{name}: basis not reduced and confluent"))?;
        let arity = i.signature().arity();
        let Some(c) = groebner::colength(i, s.budget).map_err(err)? else { continue };
        if arity > 4 || c > 60 {
            continue;
        }
        let top = i.generators().iter().map(|g| g.total_degree().unwrap_or(0)).max().unwrap_or(0);
        let oracle = macaulay::colength(i, (2 * top).max(8), 6);
        ensure(oracle == Some(c), format!("{name}: colength {c}, oracle {oracle:?}"))?;
        checked += 1;
    }
    let mut symmetric = 0;
    for f in all {
        let (Some(i), Some(j)) = (f.doc.ideal("I"), f.doc.ideal("J")) else { continue };
        let (a, b) = (intersect::chi(i, j, s), intersect::chi(j, i, s));
        match (a, b) {
            (Ok(a), Ok(b)) => ensure(a.value == b.value, format!("{}: chi {} vs {}", f.fixture.name, a.value, b.value))?,
            (Err(a), Err(b)) => ensure(a == b, format!("{}: {a} vs {b}", f.fixture.name))?,
            (a, b) => return Err(format!("{}: {a:?} vs {b:?}", f.fixture.name)),
        }
        symmetric += 1;
    }
    ensure(checked > 0, "no zero-dimensional ideals")?;
    Ok(format!("{checked} colengths match the oracle, {} bases confluent, chi symmetric on {symmetric} pairs", ideals.len()))
}

fn equidim(all: &[LoadedFixture], s: &Settings) -> Outcome {
    let fixtures = suite_passes(all, "equidim", s)?;
    let mut pairs = 0;
    for f in &fixtures {
        let (i, j) = pair(f)?;
        let r = intersect::serre_report(i, j, true, s).map_err(err)?;
        ensure(
            (r.excess == 0) == (r.tangent_dim == 0),
            format!("{}: counterexample candidate, excess {} tangent_dim {}", f.fixture.name, r.excess, r.tangent_dim),
        )?;
        pairs += 1;
    }
    Ok(format!("excess = 0 iff tangent_dim = 0 on {pairs} pairs, no candidates"))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("serrelab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut ledgers = Vec::new();
    for k in 0..2 {
        let path = dir.join(format!("ledger-{k}.jsonl"));
        let _ = std::fs::remove_file(&path);
        let status = Command::new(env!("CARGO_BIN_EXE_serrelab"))
            .args(["--json", "corpus", "--ledger"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), format!("corpus run exited with {:?}", status.status.code()))?;
        ledgers.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(!ledgers[0].is_empty() && ledgers[0] == ledgers[1], "ledgers differ")?;
    Ok(format!("two ledgers of {} bytes are identical", ledgers[0].len()))
}

fn main() -> ExitCode {
    let s = Settings::default();
    let all = corpus::load(None).expect("embedded corpus parses");
    let ideals = corpus_ideals(&all);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("two parabolas over a line", Box::new(|| parabolas(&s))),
        ("plane with embedded line", Box::new(|| embedded_line(&s))),
        ("monomial curve (4, 5, 11)", Box::new(|| monomial_curve(&s))),
        ("complementary suite", Box::new(|| complementary(&all, &s))),
        ("flat criterion suite", Box::new(|| flat_criterion(&all, &s))),
        ("samuel suite", Box::new(|| samuel(&all, &s))),
        ("tangent cone certificates", Box::new(|| tangent_cones(&ideals, &s))),
        ("kernel oracles", Box::new(|| oracles(&all, &ideals, &s))),
        ("equidimensional check", Box::new(|| equidim(&all, &s))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
