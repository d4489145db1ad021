//! Reduced Gröbner bases and the ideal toolbox built on them.

mod basis;
pub(crate) mod engine;
mod ideal;
pub mod monomial_ideal;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub use basis::GroebnerBasis;
pub use ideal::Ideal;
pub use monomial_ideal::HilbertSeries;

use crate::error::{Error, Result};
use crate::polyalg::{LocalTruncation, Monomial, MonomialOrder, Polynomial, RingSignature};
use crate::settings::Budget;

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder, budget: Budget) -> Result<Arc<GroebnerBasis>> {
    ideal.groebner_with(order, budget)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

fn same_ring(a: &Ideal, b: &Ideal) -> Result<()> {
    if a.signature() == b.signature() {
        Ok(())
    } else {
        Err(Error::SignatureMismatch)
    }
}

pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same_ring(a, b)?;
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    Ideal::new(a.signature(), gens)
}

/// Generated by all `n`-fold products of generators.
pub fn ideal_power(a: &Ideal, n: u32) -> Ideal {
    if n == 0 {
        return Ideal::unit(a.signature());
    }
    let g = a.generators();
    let mut out = Vec::new();
    // nondecreasing index sequences of length n
    let mut idx = vec![0usize; n as usize];
    if g.is_empty() {
        return Ideal::zero(a.signature());
    }
    loop {
        let mut p = g[idx[0]].clone();
        for &i in &idx[1..] {
            p = &p * &g[i];
        }
        out.push(p);
        let mut k = n as usize;
        loop {
            if k == 0 {
                return a.with_generators(out);
            }
            k -= 1;
            if idx[k] + 1 < g.len() {
                let v = idx[k] + 1;
                for slot in &mut idx[k..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// Equality as ideals, by mutual containment.
pub fn ideal_equal(a: &Ideal, b: &Ideal, budget: Budget) -> Result<bool> {
    same_ring(a, b)?;
    let ga = a.grevlex(budget)?;
    let gb = b.grevlex(budget)?;
    for g in b.generators() {
        if !ga.contains(g)? {
            return Ok(false);
        }
    }
    for g in a.generators() {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim_k k[x]/I`, or `None` when infinite.
pub fn colength(ideal: &Ideal, budget: Budget) -> Result<Option<u64>> {
    let gb = ideal.grevlex(budget)?;
    monomial_ideal::colength_of_leads(ideal.signature().arity(), gb.lead_monomials())
}

/// Krull dimension of `k[x]/I`.
pub fn krull_dim(ideal: &Ideal, budget: Budget) -> Result<usize> {
    let gb = ideal.grevlex(budget)?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(monomial_ideal::max_independent_set(ideal.signature().arity(), gb.lead_monomials()))
}

/// Hilbert series of `k[x]/I` for homogeneous `I`.
pub fn hilbert_series(ideal: &Ideal, budget: Budget) -> Result<HilbertSeries> {
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(alloc::format!("{g}")));
    }
    let gb = ideal.grevlex(budget)?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(HilbertSeries::of_monomial_ideal(ideal.signature().arity(), gb.lead_monomials()))
}

/// `I ∩ k[remaining variables]`, returned in the original ring.
pub fn eliminate(ideal: &Ideal, drop: &[usize], budget: Budget) -> Result<Ideal> {
    let sig = ideal.signature();
    let n = sig.arity();
    if drop.iter().any(|&i| i >= n) {
        return Err(Error::InvalidArgument("variable index out of range".into()));
    }
    let mut perm: Vec<usize> = (0..n).filter(|i| drop.contains(i)).collect();
    let split = perm.len();
    perm.extend((0..n).filter(|i| !drop.contains(i)));
    let psig = sig.permuted(&perm)?;
    let mut forward = vec![None; n];
    for (new, &old) in perm.iter().enumerate() {
        forward[old] = Some(new);
    }
    let back: Vec<Option<usize>> = perm.iter().map(|&old| Some(old)).collect();
    let moved = ideal.rename_embed(&psig, &forward)?;
    let gb = moved.groebner_with(&MonomialOrder::Block { split }, budget)?;
    let mask: u32 = (0..split).fold(0, |m, i| m | 1 << i);
    let kept = gb
        .elements()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.support() & mask == 0))
        .map(|g| g.rename_embed(sig, &back))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(sig, kept)
}

/// Extend `sig` by a fresh variable and embed `ideal` into the result.
fn with_auxiliary(sig: &Arc<RingSignature>) -> Result<(Arc<RingSignature>, usize, Vec<Option<usize>>)> {
    let (ext, w) = sig.with_fresh_variable("w")?;
    let map = (0..sig.arity()).map(Some).collect();
    Ok((ext, w, map))
}

/// `(I : f) = {g : g f ∈ I}`, via `I ∩ (f)` computed by elimination.
pub fn ideal_quotient_by_poly(ideal: &Ideal, f: &Polynomial, budget: Budget) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sig = ideal.signature();
    if f.signature() != sig {
        return Err(Error::SignatureMismatch);
    }
    if ideal.is_zero() {
        return Ok(Ideal::zero(sig));
    }
    let (ext, w, map) = with_auxiliary(sig)?;
    let wp = Polynomial::var(&ext, w);
    let one_minus_w = &Polynomial::one(&ext) - &wp;
    let fe = f.rename_embed(&ext, &map)?;
    let mut gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.rename_embed(&ext, &map).map(|g| &g * &wp))
        .collect::<Result<_>>()?;
    gens.push(&one_minus_w * &fe);
    let inter = eliminate(&Ideal::new(&ext, gens)?, &[w], budget)?;
    let mut back: Vec<Option<usize>> = (0..sig.arity()).map(Some).collect();
    back.push(None);
    let quotients = inter
        .generators()
        .iter()
        .map(|h| h.rename_embed(sig, &back)?.div_exact(f))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(sig, quotients)
}

/// Whether `f ∈ √I`, by testing `1 ∈ I + (1 - w f)`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal, budget: Budget) -> Result<bool> {
    let sig = ideal.signature();
    if f.signature() != sig {
        return Err(Error::SignatureMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let (ext, w, map) = with_auxiliary(sig)?;
    let mut gens = ideal.rename_embed(&ext, &map)?.generators().to_vec();
    gens.push(&Polynomial::one(&ext) - &(&Polynomial::var(&ext, w) * &f.rename_embed(&ext, &map)?));
    Ideal::new(&ext, gens)?.is_unit(budget)
}

/// Standard-monomial counts of `I + (z)^level`, where `z` is the variable set
/// `mask`, bucketed by `z`-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCounts {
    /// Entry `d` counts monomials of `z`-degree `d`, so partial sums give
    /// `dim_k k[x]/(I + (z)^n)` for every `n <= level`.
    pub counts: Vec<u64>,
    /// From this `z`-degree on, the counts of the ideal of lead monomials
    /// found below `level` follow a polynomial: `deg_z lcm - |z| + 1`.
    pub settle: u32,
}

/// Returns `None` when some quotient is infinite-dimensional, i.e. some
/// variable outside `mask` is not nilpotent modulo `I + (z)`.
pub fn truncated_standard_counts(ideal: &Ideal, mask: u32, level: u32, budget: Budget) -> Result<Option<TruncatedCounts>> {
    let arity = ideal.signature().arity();
    let order = LocalTruncation { mask, level, tie: MonomialOrder::GrevLex };
    let leads = engine::leads_of(&order, budget, ideal.generators().iter().map(|g| g.terms().to_vec()).collect())?;
    if leads.iter().any(|m| m.is_one()) {
        return Ok(Some(TruncatedCounts { counts: vec![0; level as usize], settle: 0 }));
    }
    let bounded = (0..arity).all(|i| mask & (1 << i) != 0 || leads.iter().any(|m| m.support() == 1 << i));
    if !bounded {
        return Ok(None);
    }
    let settle = leads
        .iter()
        .filter(|m| m.partial_degree(mask) < level)
        .fold(None::<Monomial>, |acc, m| Some(acc.map_or(*m, |a| a.lcm(m))))
        .map_or(0, |l| (l.partial_degree(mask) + 1).saturating_sub(mask.count_ones()));
    let counts = monomial_ideal::count_standard(arity, &leads, mask, level)?;
    Ok(Some(TruncatedCounts { counts, settle }))
}

#[cfg(test)]
mod tests;
