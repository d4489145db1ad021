use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::groebner::{eliminate, ideal_equal};
use crate::polyalg::{FieldSpec, RingSignature};

fn ring(vars: &[&str]) -> Arc<RingSignature> {
    RingSignature::new(FieldSpec::Rationals, vars, None).unwrap()
}

fn ideal(sig: &Arc<RingSignature>, gens: &[&str]) -> Ideal {
    Ideal::parse(sig, gens).unwrap()
}

fn p(sig: &Arc<RingSignature>, s: &str) -> Polynomial {
    Polynomial::parse(sig, s).unwrap()
}

fn s() -> Settings {
    Settings::default()
}

fn curve_4_5_11() -> Ideal {
    let r = ring(&["t", "x", "y", "z"]);
    let i = ideal(&r, &["t - z^4", "x - z^5", "y - z^11"]);
    let e = eliminate(&i, &[3], s().budget).unwrap();
    let r3 = ring(&["t", "x", "y"]);
    e.rename_embed(&r3, &[Some(0), Some(1), Some(2), None]).unwrap()
}

#[test]
fn samuel_function_values() {
    let r = ring(&["t", "x", "y"]);
    let i = ideal(&r, &["t - x^2", "t - y^2"]);
    let m = Ideal::maximal(&r);
    let vals: Vec<u64> = (1..=3).map(|n| hs_function(&i, &m, n, &s()).unwrap()).collect();
    assert_eq!(vals, vec![1, 3, 5]);
    assert_eq!(hs_function(&i, &m, 0, &s()).unwrap(), 0);

    let r1 = ring(&["x"]);
    for n in 0..6 {
        assert_eq!(hs_function(&Ideal::zero(&r1), &Ideal::maximal(&r1), n, &s()).unwrap(), n as u64);
    }

    let r2 = ring(&["x", "y"]);
    let i = ideal(&r2, &["x^2", "y"]);
    for n in 2..8 {
        assert_eq!(hs_function(&i, &Ideal::maximal(&r2), n, &s()).unwrap(), 2);
    }
}

#[test]
fn samuel_rejects_support_away_from_origin() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2 - x"]);
    let a = ideal(&r, &["y"]);
    assert_eq!(hs_function(&i, &a, 2, &s()), Err(Error::SupportNotOrigin));
    assert_eq!(hs_function(&ideal(&r, &["x"]), &ideal(&r, &["x"]), 2, &s()), Err(Error::SupportNotOrigin));
}

#[test]
fn samuel_with_non_monomial_filtration() {
    let r = ring(&["x", "y"]);
    let a = ideal(&r, &["x + y", "x - y"]);
    assert_eq!(hs_function(&Ideal::zero(&r), &a, 3, &s()).unwrap(), 6);
    let a = ideal(&r, &["x", "y^2"]);
    assert_eq!(hs_function(&Ideal::zero(&r), &a, 2, &s()).unwrap(), 6);
}

#[test]
fn tangent_cones() {
    let r = ring(&["t", "x", "y"]);
    let tc = tangent_cone(&ideal(&r, &["t - x^2"]), &s()).unwrap();
    assert_eq!(tc.ideal.generators(), &[p(&r, "t")]);

    let tc = tangent_cone(&ideal(&r, &["t - x^2", "t - y^2"]), &s()).unwrap();
    assert!(ideal_equal(&tc.ideal, &ideal(&r, &["t", "x^2 - y^2"]), s().budget).unwrap());
    assert_eq!(tc.dim, 1);

    let r3 = ring(&["x", "y", "z"]);
    let tc = tangent_cone(&ideal(&r3, &["x*y - x^3", "x*z"]), &s()).unwrap();
    assert!(ideal_equal(&tc.ideal, &ideal(&r3, &["x*y", "x*z"]), s().budget).unwrap());
    assert_eq!(tc.dim, 2);

    assert_eq!(tangent_cone(&Ideal::zero(&r), &s()).unwrap_err(), Error::ZeroIdeal);
    assert_eq!(tangent_cone(&ideal(&r, &["1 + x"]), &s()).unwrap_err(), Error::UnitIdeal);
}

#[test]
fn principal_cone_is_initial_form() {
    let r = ring(&["x", "y"]);
    for (f, e) in [("y^2 - x^3", 2), ("x^3 + y^5 + x*y^3", 3), ("x*y + x^4", 2), ("x^2 - y^2 + y^7", 2)] {
        let i = ideal(&r, &[f]);
        let tc = tangent_cone(&i, &s()).unwrap();
        assert_eq!(tc.ideal.generators(), &[p(&r, f).initial_form().unwrap()]);
        assert_eq!(multiplicity(&i, &s()).unwrap().value, e);
    }
}

#[test]
fn dimensions() {
    let r = ring(&["t", "x", "y"]);
    assert_eq!(local_dim(&ideal(&r, &["t - x^2", "t - y^2"]), &s()).unwrap(), 1);
    assert_eq!(local_dim(&Ideal::zero(&r), &s()).unwrap(), 3);
    assert_eq!(local_dim(&curve_4_5_11(), &s()).unwrap(), 1);
}

#[test]
fn multiplicities() {
    let r2 = ring(&["t", "x"]);
    assert_eq!(multiplicity(&ideal(&r2, &["t - x^2"]), &s()).unwrap().value, 1);
    let r = ring(&["t", "x", "y"]);
    let e = multiplicity(&ideal(&r, &["t - x^2", "t - y^2"]), &s()).unwrap();
    assert_eq!((e.value, e.dim), (2, 1));
    assert!(matches!(e.method, Method::ExactHilbertSeries { .. }));
    assert_eq!(multiplicity(&curve_4_5_11(), &s()).unwrap().value, 4);
    assert_eq!(multiplicity(&Ideal::zero(&r), &s()).unwrap().value, 1);
}

#[test]
fn finite_difference_multiplicities() {
    let r = ring(&["x", "y"]);
    let e = multiplicity_wrt(&Ideal::zero(&r), &Ideal::maximal(&r), 2, &s()).unwrap();
    assert_eq!(e.value, 1);
    assert!(matches!(e.method, Method::FiniteDifference { width: 3, .. }));

    let pr = curve_4_5_11();
    let rt = pr.signature().clone();
    let e = multiplicity_wrt(&pr, &ideal(&rt, &["t"]), 1, &s()).unwrap();
    assert_eq!(e.value, 4);
    let with_t = crate::groebner::ideal_sum(&pr, &ideal(&rt, &["t"])).unwrap();
    assert_eq!(multiplicity(&with_t, &s()).unwrap().value, 4);

    let r3 = ring(&["x", "y", "z"]);
    let line = ideal(&r3, &["y", "z"]);
    assert_eq!(multiplicity_wrt(&line, &Ideal::maximal(&r3), 2, &s()).unwrap().value, 0);
    assert_eq!(multiplicity_wrt(&line, &Ideal::maximal(&r3), 1, &s()).unwrap().value, 1);
}

#[test]
fn late_leads_are_waited_for() {
    // H(n) = n^2 up to n = 8, so a window ending at 8 sees a false plateau;
    // the degree 8 lead y^4 z^4 only shows up from there on
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, &["x*z + y^2*z^2", "x*y^2*z^3"]);
    let fd = multiplicity_wrt(&i, &Ideal::maximal(&r), 2, &s()).unwrap();
    assert_eq!(fd.value, 1);
    assert_eq!(fd.value, multiplicity(&i, &s()).unwrap().value);
    let Method::FiniteDifference { start, .. } = fd.method else { panic!("expected samples") };
    assert!(start > 8);
}

#[test]
fn non_stabilization_is_an_error() {
    let r = ring(&["x", "y"]);
    let tight = Settings { max_n: 2, ..Settings::default() };
    assert_eq!(
        multiplicity_wrt(&Ideal::zero(&r), &Ideal::maximal(&r), 2, &tight).unwrap_err(),
        Error::NotStabilized { max_n: 2 }
    );
}

#[test]
fn divisor_checks() {
    let r = ring(&["x", "y"]);
    let c = mod_divisor_check(&Ideal::zero(&r), &p(&r, "x^2"), 2, &s()).unwrap();
    assert_eq!(c, DivisorCheck { lhs: 2, rhs: 2, dim_dropped: true, consistent: true });

    let rt = ring(&["t", "x"]);
    let c = mod_divisor_check(&ideal(&rt, &["t - x^2"]), &p(&rt, "t"), 1, &s()).unwrap();
    assert_eq!(c, DivisorCheck { lhs: 2, rhs: 1, dim_dropped: false, consistent: true });

    let r1 = ring(&["x"]);
    let c = mod_divisor_check(&Ideal::zero(&r1), &p(&r1, "x"), 1, &s()).unwrap();
    assert_eq!(c, DivisorCheck { lhs: 1, rhs: 1, dim_dropped: true, consistent: true });

    assert_eq!(
        mod_divisor_check(&Ideal::zero(&r), &p(&r, "x"), 2, &s()).unwrap_err(),
        Error::OrderTooLow { ord: 1, required: 2 }
    );
    assert_eq!(mod_divisor_check(&ideal(&r, &["x*y"]), &p(&r, "x"), 1, &s()).unwrap_err(), Error::ZeroDivisor);
}

#[test]
fn additivity() {
    let r3 = ring(&["x", "y", "z"]);
    let claim = DecompositionClaim { components: vec![(ideal(&r3, &["x"]), 1), (ideal(&r3, &["y - x^2", "z"]), 1)] };
    let c = additivity_check(&ideal(&r3, &["x*y - x^3", "x*z"]), &claim, &s()).unwrap();
    assert_eq!(c, AdditivityCheck { e_total: 1, e_sum: 1, matches: true });

    let r = ring(&["x", "y"]);
    let claim = DecompositionClaim { components: vec![(ideal(&r, &["x"]), 2), (ideal(&r, &["y"]), 1)] };
    let c = additivity_check(&ideal(&r, &["x^2*y"]), &claim, &s()).unwrap();
    assert_eq!(c, AdditivityCheck { e_total: 3, e_sum: 3, matches: true });

    let claim = DecompositionClaim { components: vec![(ideal(&r, &["x"]), 2)] };
    let c = additivity_check(&ideal(&r, &["x^2"]), &claim, &s()).unwrap();
    assert_eq!(c, AdditivityCheck { e_total: 2, e_sum: 2, matches: true });
}
