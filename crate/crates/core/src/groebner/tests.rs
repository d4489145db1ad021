use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::*;
use crate::polyalg::FieldSpec;

fn ring(vars: &[&str]) -> Arc<RingSignature> {
    RingSignature::new(FieldSpec::Rationals, vars, None).unwrap()
}

fn p(sig: &Arc<RingSignature>, s: &str) -> Polynomial {
    Polynomial::parse(sig, s).unwrap()
}

fn ideal(sig: &Arc<RingSignature>, gens: &[&str]) -> Ideal {
    Ideal::parse(sig, gens).unwrap()
}

fn b() -> Budget {
    Budget::default()
}

#[test]
fn linear_system_reduces_to_variables() {
    let r = ring(&["x", "y"]);
    let gb = buchberger(&ideal(&r, &["x + y", "x - y"]), &MonomialOrder::GrevLex, b()).unwrap();
    assert_eq!(gb.elements(), &[p(&r, "y"), p(&r, "x")]);
}

#[test]
fn lex_basis_already_reduced() {
    let r = ring(&["z", "y", "x"]);
    let gb = buchberger(&ideal(&r, &["y - x^2", "z"]), &MonomialOrder::Lex, b()).unwrap();
    assert_eq!(gb.elements(), &[p(&r, "y - x^2"), p(&r, "z")]);
}

#[test]
fn two_parabolas() {
    let r = ring(&["t", "x", "y"]);
    let i = ideal(&r, &["t - x^2", "t - y^2"]);
    let gb = buchberger(&i, &MonomialOrder::GrevLex, b()).unwrap();
    // the reduced basis; {t - y^2, x^2 - y^2} generates the same ideal
    assert_eq!(gb.elements(), &[p(&r, "y^2 - t"), p(&r, "x^2 - t")]);
    assert!(gb.contains(&p(&r, "t - x^2")).unwrap());
    assert!(ideal_equal(&i, &ideal(&r, &["t - y^2", "x^2 - y^2"]), b()).unwrap());
    assert!(gb.is_confluent() && gb.is_reduced());
}

#[test]
fn normal_forms() {
    let r = ring(&["t", "x", "y", "z"]);
    let gy = ideal(&r, &["y"]).grevlex(b()).unwrap();
    assert_eq!(normal_form(&p(&r, "x"), &gy).unwrap(), p(&r, "x"));
    let gx = ideal(&r, &["x"]).grevlex(b()).unwrap();
    assert!(normal_form(&p(&r, "x^2 + x"), &gx).unwrap().is_zero());
}

fn monomial_curve() -> (Arc<RingSignature>, Ideal) {
    let r = ring(&["t", "x", "y", "z"]);
    let i = ideal(&r, &["t - z^4", "x - z^5", "y - z^11"]);
    let pr = eliminate(&i, &[3], b()).unwrap();
    (r, pr)
}

#[test]
fn monomial_curve_relations() {
    let (r, pr) = monomial_curve();
    let gb = pr.grevlex(b()).unwrap();
    for rel in ["t^4 - x*y", "x^3 - t*y", "x^4 - t^5", "y^2 - t^3*x^2"] {
        assert!(normal_form(&p(&r, rel), &gb).unwrap().is_zero(), "{rel}");
    }
    assert!(pr.generators().iter().all(|g| g.terms().iter().all(|(m, _)| m.exponent(3) == 0)));
}

#[test]
fn elimination_examples() {
    let r = ring(&["x", "y"]);
    assert!(eliminate(&ideal(&r, &["x - y"]), &[0], b()).unwrap().is_zero());
    let e = eliminate(&ideal(&r, &["x", "y"]), &[0], b()).unwrap();
    assert!(ideal_equal(&e, &ideal(&r, &["y"]), b()).unwrap());
}

#[test]
fn sums_powers_equality() {
    let r = ring(&["x", "y", "z"]);
    let sq = ideal_power(&ideal(&r, &["x", "y"]), 2);
    assert_eq!(sq.generators(), &[p(&r, "x^2"), p(&r, "x*y"), p(&r, "y^2")]);
    assert!(ideal_equal(&ideal(&r, &["x", "y"]), &ideal(&r, &["y", "x + y"]), b()).unwrap());
    let s = ideal_sum(&ideal(&r, &["x*y - x^3", "x*z"]), &ideal(&r, &["y", "z"])).unwrap();
    assert_eq!(s.to_string(), "(x*y - x^3, x*z, y, z)");
}

#[test]
fn colengths() {
    let r2 = ring(&["x", "y"]);
    assert_eq!(colength(&ideal(&r2, &["x^2", "y"]), b()).unwrap(), Some(2));
    let r3 = ring(&["x", "y", "z"]);
    assert_eq!(colength(&ideal(&r3, &["x*y - x^3", "x*z", "y", "z"]), b()).unwrap(), Some(3));
    assert_eq!(colength(&ideal(&r3, &["y - x^2", "z"]), b()).unwrap(), None);
}

#[test]
fn krull_dimensions() {
    let r3 = ring(&["x", "y", "z"]);
    assert_eq!(krull_dim(&ideal(&r3, &["x*y", "x*z"]), b()).unwrap(), 2);
    assert_eq!(krull_dim(&Ideal::zero(&r3), b()).unwrap(), 3);
    let r2 = ring(&["x", "y"]);
    assert_eq!(krull_dim(&ideal(&r2, &["x", "y"]), b()).unwrap(), 0);
    assert_eq!(krull_dim(&ideal(&r2, &["x", "1 + y"]), b()), Ok(0));
    assert_eq!(krull_dim(&ideal(&r2, &["x", "1 + x"]), b()), Err(Error::UnitIdeal));
}

#[test]
fn hilbert_series_examples() {
    use num_bigint::BigInt;
    let r = ring(&["x", "y"]);
    let hs = hilbert_series(&ideal(&r, &["x^2"]), b()).unwrap();
    assert_eq!((hs.dim, hs.multiplicity()), (1, BigInt::from(2)));
    let hs = hilbert_series(&ideal(&r, &["x^2", "y^3"]), b()).unwrap();
    assert_eq!(hs.numerator, [1, 2, 2, 1].map(BigInt::from).to_vec());
    assert_eq!((hs.dim, hs.multiplicity()), (0, BigInt::from(6)));
    let r1 = ring(&["x"]);
    let hs = hilbert_series(&Ideal::zero(&r1), b()).unwrap();
    assert_eq!((hs.dim, hs.numerator.clone()), (1, alloc::vec![BigInt::from(1)]));
    assert!(matches!(hilbert_series(&ideal(&r, &["y - x^2"]), b()), Err(Error::NotHomogeneous(_))));
}

#[test]
fn quotients() {
    let r = ring(&["x", "y", "z"]);
    let q = ideal_quotient_by_poly(&ideal(&r, &["x*y", "x*z"]), &p(&r, "x"), b()).unwrap();
    assert!(ideal_equal(&q, &ideal(&r, &["y", "z"]), b()).unwrap());
    let rt = ring(&["t", "x"]);
    let i = ideal(&rt, &["t - x^2"]);
    let q = ideal_quotient_by_poly(&i, &p(&rt, "t"), b()).unwrap();
    assert!(ideal_equal(&q, &i, b()).unwrap());
    let q = ideal_quotient_by_poly(&ideal(&rt, &["t"]), &p(&rt, "t"), b()).unwrap();
    assert!(q.is_unit(b()).unwrap());
    assert_eq!(ideal_quotient_by_poly(&i, &p(&rt, "0"), b()).unwrap_err(), Error::ZeroPolynomial);
}

#[test]
fn radicals() {
    let r = ring(&["x", "y", "z"]);
    assert!(radical_membership(&p(&r, "x"), &ideal(&r, &["x^2"]), b()).unwrap());
    assert!(!radical_membership(&p(&r, "x"), &ideal(&r, &["y"]), b()).unwrap());
    assert!(radical_membership(&p(&r, "x"), &ideal(&r, &["x*y - x^3", "x*z", "y", "z"]), b()).unwrap());
}

#[test]
fn truncated_counts_match_global_colengths() {
    let r = ring(&["t", "x", "y"]);
    let i = ideal(&r, &["t - x^2", "t - y^2"]);
    let counts = truncated_standard_counts(&i, 0b111, 6, b()).unwrap().unwrap().counts;
    let partial: Vec<u64> = counts.iter().scan(0, |s, c| {
        *s += c;
        Some(*s)
    }).collect();
    assert_eq!(&partial[..3], &[1, 3, 5]);
    for n in 1..=6u32 {
        let global = colength(&ideal_sum(&i, &ideal_power(&Ideal::maximal(&r), n)).unwrap(), b()).unwrap();
        assert_eq!(global, Some(partial[n as usize - 1]));
    }
}

#[test]
fn budget_is_enforced() {
    let r = ring(&["t", "x", "y"]);
    let no_pairs = Budget { max_degree: 40, max_pairs: 0 };
    let i = ideal(&r, &["x^2 - y", "x*y - t"]);
    assert!(matches!(i.grevlex(no_pairs), Err(Error::BudgetExceeded(_))));
    let low = Budget { max_degree: 2, max_pairs: 1000 };
    let j = ideal(&r, &["x^2 - y", "x*y - 1"]);
    assert!(matches!(j.grevlex(low), Err(Error::BudgetExceeded(_))));
}
