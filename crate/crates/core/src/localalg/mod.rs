//! Local algebra at the origin: tangent cones, Hilbert–Samuel functions and
//! multiplicities.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::groebner::monomial_ideal::HilbertSeries;
use crate::groebner::{self, Ideal};
use crate::polyalg::{MonomialOrder, Polynomial};
use crate::settings::{Budget, Settings};

/// The associated graded ring `k[x]/in(I)` of `A/I`.
#[derive(Debug, Clone)]
pub struct TangentCone {
    /// Generated by initial forms of `witnesses`, one each.
    pub ideal: Ideal,
    /// Elements of `I` whose initial forms generate `ideal`.
    pub witnesses: Vec<Polynomial>,
    pub dim: usize,
    pub series: HilbertSeries,
    /// Hilbert–Samuel values `hs(0..=degree+1)` the certificate was checked against.
    pub samuel: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Method {
    ExactHilbertSeries { series: HilbertSeries },
    /// `samples[n]` is the Hilbert–Samuel value at `n`; the `d`-th difference
    /// is constant on `start..start + width`.
    FiniteDifference { start: usize, width: usize, samples: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityCertificate {
    pub value: u64,
    pub dim: usize,
    pub method: Method,
}

/// User-supplied decomposition data `[(P_i, m_i)]`.
#[derive(Debug, Clone)]
pub struct DecompositionClaim {
    pub components: Vec<(Ideal, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorCheck {
    pub lhs: u64,
    pub rhs: u64,
    pub dim_dropped: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdditivityCheck {
    pub e_total: u64,
    pub e_sum: u64,
    pub matches: bool,
}

fn full_mask(arity: usize) -> u32 {
    if arity >= 32 {
        u32::MAX
    } else {
        (1u32 << arity) - 1
    }
}

fn check_local_proper(ideal: &Ideal) -> Result<()> {
    if ideal.generators().iter().any(|g| !g.constant_term().is_zero()) {
        return Err(Error::UnitIdeal);
    }
    Ok(())
}

/// `hs(n)` for `n = 0..=level` from the truncated local basis of `I + (mask)^level`.
fn samuel_values(ideal: &Ideal, mask: u32, level: u32, budget: Budget) -> Result<Sample> {
    let t = groebner::truncated_standard_counts(ideal, mask, level, budget)?.ok_or(Error::SupportNotOrigin)?;
    Ok(Sample::from_counts(t))
}

/// Cumulative values `H(0..=level)` and the level past which the
/// generating lead ideal counts polynomially.
pub(crate) struct Sample {
    pub values: Vec<u64>,
    pub settle: usize,
}

impl Sample {
    pub(crate) fn from_counts(t: groebner::TruncatedCounts) -> Sample {
        let mut values = Vec::with_capacity(t.counts.len() + 1);
        values.push(0);
        let mut acc = 0;
        for c in t.counts {
            acc += c;
            values.push(acc);
        }
        Sample { values, settle: t.settle as usize }
    }
}

fn bigint_u64(n: &BigInt) -> Result<u64> {
    n.to_u64().ok_or_else(|| Error::BudgetExceeded(format!("value {n} out of range")))
}

/// Lowest-degree forms of a local standard basis, computed by homogenizing
/// with a fresh variable `h` and ordering by `h`-degree first.
fn lazard_initial_forms(ideal: &Ideal, budget: Budget) -> Result<Vec<(Polynomial, Polynomial)>> {
    let sig = ideal.signature();
    let (ext, h) = sig.with_fresh_variable("h")?;
    let embed: Vec<Option<usize>> = (0..sig.arity()).map(Some).collect();
    let mut back = embed.clone();
    back.push(None);
    let homog = ideal
        .generators()
        .iter()
        .map(|g| g.homogenize(&ext, &embed, h))
        .collect::<Result<Vec<_>>>()?;
    let mut weights = vec![0u32; ext.arity()];
    weights[h] = 1;
    let order = MonomialOrder::WeightRefined { weights, tie: Box::new(MonomialOrder::GrevLex) };
    let gb = Ideal::new(&ext, homog)?.groebner_with(&order, budget)?;
    let mut out: Vec<(Polynomial, Polynomial)> = Vec::new();
    for g in gb.elements() {
        let f = g.dehomogenize(h, sig, &back)?;
        let form = f.initial_form()?;
        if !out.iter().any(|(_, existing)| *existing == form) {
            out.push((f, form));
        }
    }
    Ok(out)
}

/// `in(I)`, with the zero ideal mapping to the zero ideal.
fn initial_ideal(ideal: &Ideal, budget: Budget) -> Result<(Ideal, Vec<Polynomial>)> {
    if ideal.is_zero() {
        return Ok((Ideal::zero(ideal.signature()), Vec::new()));
    }
    check_local_proper(ideal)?;
    let pairs = lazard_initial_forms(ideal, budget)?;
    let (witnesses, forms): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    Ok((Ideal::new(ideal.signature(), forms)?, witnesses))
}

/// Tangent cone `in(I)`, certified against independently computed
/// Hilbert–Samuel values.
pub fn tangent_cone(ideal: &Ideal, settings: &Settings) -> Result<TangentCone> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let budget = settings.budget;
    let (cone, witnesses) = initial_ideal(ideal, budget)?;
    let arity = ideal.signature().arity();

    let global = ideal.grevlex(budget)?;
    for (w, form) in witnesses.iter().zip(cone.generators()) {
        if !global.contains(w)? || w.initial_form()? != *form {
            return Err(Error::CertificateFailure { degree: form.ord()? as usize, graded: 0, samuel: 0 });
        }
    }

    let series = groebner::hilbert_series(&cone, budget)?;
    let top = settings.certificate_degree;
    let samuel = samuel_values(ideal, full_mask(arity), top as u32 + 1, budget)?.values;
    for n in 0..=top {
        let graded = bigint_u64(&series.coefficient(n))?;
        let diff = samuel[n + 1] - samuel[n];
        if graded != diff {
            return Err(Error::CertificateFailure { degree: n, graded, samuel: diff });
        }
    }
    Ok(TangentCone { dim: series.dim, ideal: cone, witnesses, series, samuel })
}

/// Krull dimension of the local ring `(k[x]/I)` at the origin.
pub fn local_dim(ideal: &Ideal, settings: &Settings) -> Result<usize> {
    if ideal.is_zero() {
        return Ok(ideal.signature().arity());
    }
    Ok(tangent_cone(ideal, settings)?.dim)
}

/// Multiplicity with respect to the maximal ideal, from the tangent cone.
pub fn multiplicity(ideal: &Ideal, settings: &Settings) -> Result<MultiplicityCertificate> {
    let series = if ideal.is_zero() {
        HilbertSeries::of_monomial_ideal(ideal.signature().arity(), &[])
    } else {
        tangent_cone(ideal, settings)?.series
    };
    Ok(MultiplicityCertificate { value: bigint_u64(&series.multiplicity())?, dim: series.dim, method: Method::ExactHilbertSeries { series } })
}

/// If `a` is generated by variables, their bitmask.
fn variable_mask(a: &Ideal, budget: Budget) -> Result<Option<u32>> {
    let gb = a.grevlex(budget)?;
    let mut mask = 0u32;
    for g in gb.elements() {
        let [(m, _)] = g.terms() else { return Ok(None) };
        if m.degree() != 1 {
            return Ok(None);
        }
        mask |= m.support();
    }
    Ok(Some(mask))
}

fn check_samuel_preconditions(ideal: &Ideal, a: &Ideal, budget: Budget) -> Result<()> {
    if ideal.signature() != a.signature() {
        return Err(Error::SignatureMismatch);
    }
    let sum = groebner::ideal_sum(ideal, a)?;
    if groebner::colength(&sum, budget)?.is_none() {
        return Err(Error::SupportNotOrigin);
    }
    let sig = ideal.signature();
    for i in 0..sig.arity() {
        if !groebner::radical_membership(&Polynomial::var(sig, i), &sum, budget)? {
            return Err(Error::SupportNotOrigin);
        }
    }
    Ok(())
}

/// Values `hs(0..=level)` of `n -> dim_k A/(I + a^n)`. Preconditions are the caller's.
fn samuel_sample(ideal: &Ideal, a: &Ideal, mask: Option<u32>, level: u32, budget: Budget) -> Result<Sample> {
    match mask {
        Some(mask) => samuel_values(ideal, mask, level, budget),
        None => {
            let mut out = vec![0];
            for n in 1..=level {
                let s = groebner::ideal_sum(ideal, &groebner::ideal_power(a, n))?;
                out.push(groebner::colength(&s, budget)?.ok_or(Error::SupportNotOrigin)?);
            }
            Ok(Sample { values: out, settle: 0 })
        }
    }
}

/// Hilbert–Samuel function `n -> length A/(I + a^n)`.
pub fn hs_function(ideal: &Ideal, a: &Ideal, n: u32, settings: &Settings) -> Result<u64> {
    check_samuel_preconditions(ideal, a, settings.budget)?;
    if n == 0 {
        return Ok(0);
    }
    let mask = variable_mask(a, settings.budget)?;
    Ok(samuel_sample(ideal, a, mask, n, settings.budget)?.values[n as usize])
}

/// Backward `d`-th difference of `values` at `n` (requires `n >= d`).
pub fn backward_difference(values: &[u64], d: usize, n: usize) -> i128 {
    let mut acc: i128 = 0;
    let mut binom: i128 = 1;
    for k in 0..=d {
        let term = binom * values[n - k] as i128;
        acc += if k % 2 == 0 { term } else { -term };
        binom = binom * (d - k) as i128 / (k + 1) as i128;
    }
    acc
}

/// Sample at growing levels until the `d`-th difference is constant over
/// the last `window` values. The window has to lie past the sample's settle
/// level, and that level has to agree with the previous sample, since leads
/// at or above the truncation level are invisible.
pub(crate) fn stabilize<F>(d: usize, settings: &Settings, mut sample: F) -> Result<MultiplicityCertificate>
where
    F: FnMut(u32) -> Result<Sample>,
{
    let max_n = settings.max_n;
    let window = settings.window.max(1);
    // the window must start at or after d
    let min_level = d + window - 1;
    if min_level > max_n {
        return Err(Error::NotStabilized { max_n });
    }
    let mut level = 8.max(min_level).min(max_n);
    let mut previous = None;
    loop {
        let Sample { values, settle } = sample(level as u32)?;
        let needed = settle + d + window - 1;
        if previous == Some(settle) && needed <= level {
            let start = level + 1 - window;
            let v = backward_difference(&values, d, level);
            if v >= 0 && (start..level).all(|n| backward_difference(&values, d, n) == v) {
                return Ok(MultiplicityCertificate {
                    value: v as u64,
                    dim: d,
                    method: Method::FiniteDifference { start, width: window, samples: values },
                });
            }
        }
        if level == max_n {
            return Err(Error::NotStabilized { max_n });
        }
        previous = Some(settle);
        level = needed.max(2 * level).min(max_n);
    }
}

/// The stabilized `d`-th difference of `n -> hs_function(I, a, n)`.
pub fn multiplicity_wrt(ideal: &Ideal, a: &Ideal, d: usize, settings: &Settings) -> Result<MultiplicityCertificate> {
    let budget = settings.budget;
    check_samuel_preconditions(ideal, a, budget)?;
    let mask = variable_mask(a, budget)?;
    stabilize(d, settings, |level| samuel_sample(ideal, a, mask, level, budget))
}

/// Checks `e(I + (x)) >= t e(I)` with equality iff `x` cuts the tangent cone down.
pub fn mod_divisor_check(ideal: &Ideal, x: &Polynomial, t: u32, settings: &Settings) -> Result<DivisorCheck> {
    let budget = settings.budget;
    let ord = x.ord()?;
    if ord < t {
        return Err(Error::OrderTooLow { ord, required: t });
    }
    let colon = groebner::ideal_quotient_by_poly(ideal, x, budget)?;
    if !groebner::ideal_equal(&colon, ideal, budget)? {
        return Err(Error::ZeroDivisor);
    }
    let with_x = groebner::ideal_sum(ideal, &Ideal::new(ideal.signature(), vec![x.clone()])?)?;
    let lhs = multiplicity(&with_x, settings)?.value;
    let base = multiplicity(ideal, settings)?;
    let rhs = t as u64 * base.value;
    // the image of x in degree t vanishes when ord(x) > t
    let dim_dropped = if ord > t {
        false
    } else {
        let (cone, _) = initial_ideal(ideal, budget)?;
        let cut = groebner::ideal_sum(&cone, &Ideal::new(ideal.signature(), vec![x.initial_form()?])?)?;
        groebner::krull_dim(&cut, budget)? < base.dim
    };
    let consistent = lhs >= rhs && ((lhs == rhs) == dim_dropped);
    Ok(DivisorCheck { lhs, rhs, dim_dropped, consistent })
}

/// Compares `e(A/I)` with `sum m_i e(A/P_i)` over top-dimensional claimed components.
pub fn additivity_check(ideal: &Ideal, claim: &DecompositionClaim, settings: &Settings) -> Result<AdditivityCheck> {
    for (p, m) in &claim.components {
        if *m == 0 {
            return Err(Error::InvalidArgument("component multiplicities must be positive".into()));
        }
        if p.signature() != ideal.signature() {
            return Err(Error::SignatureMismatch);
        }
        check_local_proper(p)?;
    }
    let total = multiplicity(ideal, settings)?;
    let mut e_sum = 0;
    for (p, m) in &claim.components {
        let ep = multiplicity(p, settings)?;
        if ep.dim == total.dim {
            e_sum += m * ep.value;
        }
    }
    Ok(AdditivityCheck { e_total: total.value, e_sum, matches: total.value == e_sum })
}

/// `in(I)` as an ideal, accepting the zero ideal.
pub fn initial_ideal_of(ideal: &Ideal, settings: &Settings) -> Result<Ideal> {
    Ok(initial_ideal(ideal, settings.budget)?.0)
}

#[cfg(test)]
mod tests;
