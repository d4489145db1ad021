//! JSON and text rendering of kernel results. Objects use `serde_json`'s
//! default sorted maps, so output is byte-stable.

use serde_json::{json, Value};

use serrelab_core::groebner::{GroebnerBasis, Ideal};
use serrelab_core::intersect::{ChiReport, DimCut, PsiDefect, SamuelCheck, Verdict};
use serrelab_core::polyalg::{MonomialOrder, Polynomial};
use serrelab_core::localalg::{backward_difference, AdditivityCheck, Method, MultiplicityCertificate, TangentCone};

pub fn ideal(i: &Ideal) -> Value {
    Value::Array(i.generators().iter().map(|g| Value::String(g.to_string())).collect())
}

pub fn order_name(o: &MonomialOrder) -> &'static str {
    match o {
        MonomialOrder::GrevLex => "grevlex",
        MonomialOrder::Lex => "lex",
        MonomialOrder::Block { .. } => "block",
        MonomialOrder::WeightRefined { .. } => "weighted",
    }
}

pub fn basis(gb: &GroebnerBasis) -> Value {
    json!({
        "order": order_name(gb.order()),
        "elements": gb.elements().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "leads": gb
            .lead_monomials()
            .iter()
            .map(|m| Polynomial::monomial(gb.signature(), *m, gb.signature().field().one()).to_string())
            .collect::<Vec<_>>(),
        "confluent": gb.is_confluent(),
        "reduced": gb.is_reduced(),
    })
}

pub fn certificate(c: &MultiplicityCertificate) -> Value {
    match &c.method {
        Method::ExactHilbertSeries { series } => json!({
            "e": c.value,
            "dim": c.dim,
            "method": "exact-hilbert-series",
            "series": series.to_string(),
        }),
        Method::FiniteDifference { start, width, samples } => {
            let window: Vec<Value> = (*start..start + width)
                .map(|n| json!({ "n": n, "hs": samples[n], "difference": backward_difference(samples, c.dim, n) as i64 }))
                .collect();
            json!({
                "e": c.value,
                "dim": c.dim,
                "method": "finite-difference",
                "samples": samples,
                "window": window,
            })
        }
    }
}

pub fn tangent(tc: &TangentCone) -> Value {
    json!({
        "cone": ideal(&tc.ideal),
        "witnesses": tc.witnesses.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "dim": tc.dim,
        "series": tc.series.to_string(),
        "certified_samuel_values": tc.samuel,
    })
}

fn verdict(v: Verdict) -> Value {
    Value::String(v.as_str().to_string())
}

pub fn chi_report(r: &ChiReport) -> Value {
    let f = &r.flags;
    let v = &r.verdicts;
    let mut flags = json!({
        "complementary": f.complementary,
        "finite_colength": f.finite_colength,
        "origin_supported": f.origin_supported,
        "m_flat_over_t": f.m_flat_over_t,
        "n_flat_over_t": f.n_flat_over_t,
        "equidim_asserted": f.equidim_asserted,
        "non_closed_field": f.non_closed_field,
    });
    if !f.equidim_asserted {
        flags["missing_equidim_assertion"] = Value::Bool(true);
    }
    let e_conditions = r.e_conditions.map(|e| {
        json!({
            "ii_e_n_equals_e_n_mod_t": e.e_n_equals_e_n_mod_t,
            "iii_dim_m_is_codim_one": e.dim_m_is_codim_one,
            "iv_dim_m_is_one": e.dim_m_is_one,
            "v_cones_meet_t_at_point": e.cones_meet_t_at_point,
        })
    });
    json!({
        "chi": r.chi,
        "chi_certificate": certificate(&r.chi_certificate),
        "e_M": certificate(&r.e_m),
        "e_N": certificate(&r.e_n),
        "e_tensor": r.e_tensor.as_ref().map(certificate),
        "e_M_mod_t": r.e_m_mod_t,
        "e_N_mod_t": r.e_n_mod_t,
        "dim_M": r.dim_m,
        "dim_N": r.dim_n,
        "dim_A": r.dim_a,
        "excess": r.excess,
        "tangent_dim": r.tangent_dim,
        "flags": flags,
        "e_conditions": e_conditions,
        "verdicts": {
            "theorem_a": verdict(v.theorem_a),
            "vanishing": verdict(v.vanishing),
            "conjecture_i": verdict(v.conjecture_i),
            "theorem_c": verdict(v.theorem_c),
            "theorem_d": verdict(v.theorem_d),
            "theorem_e": verdict(v.theorem_e),
            "tennison": verdict(v.tennison),
        },
    })
}

pub fn samuel(c: &SamuelCheck) -> Value {
    json!({
        "ideal_match": c.ideal_match,
        "convolution_match": c.convolution_match,
        "tensor_hf": c.tensor_hf,
        "convolution": c.convolution,
    })
}

pub fn psi(d: &PsiDefect) -> Value {
    json!({
        "containment": d.containment,
        "dim_src": d.dim_src,
        "dim_tgt": d.dim_tgt,
        "e_src": d.e_src,
        "e_tgt": d.e_tgt,
        "homeomorphic_proxy": d.homeomorphic_proxy,
    })
}

pub fn dimcut(d: &DimCut) -> Value {
    json!({
        "lhs_dim": d.lhs_dim,
        "rhs_dim": d.rhs_dim,
        "e_tensor": d.e_tensor,
        "e_product": d.e_product,
        "consistent": d.consistent,
    })
}

pub fn additivity(a: &AdditivityCheck) -> Value {
    json!({ "e_total": a.e_total, "e_sum": a.e_sum, "matches": a.matches })
}

/// Indented `key: value` lines for the human-readable output.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_text(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(out, x, indent + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
