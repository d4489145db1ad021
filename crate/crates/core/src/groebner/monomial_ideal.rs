//! Combinatorics of monomial ideals: standard monomials, independent sets,
//! Hilbert series.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::Monomial;

/// Drop generators divisible by another generator; keep a sorted, deduplicated list.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut g: Vec<Monomial> = gens.to_vec();
    g.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    g.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(g.len());
    for m in g {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Whether every variable has a pure power among `leads`.
pub fn is_artinian(arity: usize, leads: &[Monomial]) -> bool {
    (0..arity).all(|i| leads.iter().any(|m| m.support() == 1 << i))
}

/// Hard cap on enumerated standard monomials.
const ENUMERATION_CAP: u64 = 20_000_000;

/// Count standard monomials (outside the ideal of `leads`), bucketed by
/// partial degree in `mask`, for partial degrees below `level`.
///
/// The caller must ensure finiteness: every variable outside `mask` needs a
/// pure power in `leads`, and `level` bounds the rest.
pub fn count_standard(arity: usize, leads: &[Monomial], mask: u32, level: u32) -> Result<Vec<u64>> {
    let leads = minimalize(leads);
    let mut counts = vec![0u64; level as usize];
    if level == 0 || leads.iter().any(|m| m.is_one()) {
        return Ok(counts);
    }
    let mut total = 0u64;
    // canonical generation: only multiply by variables at or after the last one used
    let mut stack: Vec<(Monomial, usize)> = vec![(Monomial::one(arity), 0)];
    while let Some((m, first)) = stack.pop() {
        let pd = m.partial_degree(mask) as usize;
        counts[pd] += 1;
        total += 1;
        if total > ENUMERATION_CAP {
            return Err(Error::BudgetExceeded("too many standard monomials to enumerate".into()));
        }
        for v in first..arity {
            let child = m.mul(&Monomial::var(arity, v));
            if child.partial_degree(mask) >= level {
                continue;
            }
            if leads.iter().any(|l| l.divides(&child)) {
                continue;
            }
            stack.push((child, v));
        }
    }
    Ok(counts)
}

/// Number of standard monomials, or `None` when infinite.
pub fn colength_of_leads(arity: usize, leads: &[Monomial]) -> Result<Option<u64>> {
    if leads.iter().any(|m| m.is_one()) {
        return Ok(Some(0));
    }
    if !is_artinian(arity, leads) {
        return Ok(None);
    }
    let bound = leads.iter().map(|m| m.degree()).max().unwrap_or(0) * arity as u32 + 1;
    // every standard monomial has total degree < bound; use mask = all variables
    let mask = if arity == 32 { u32::MAX } else { (1u32 << arity) - 1 };
    Ok(Some(count_standard(arity, leads, mask, bound)?.iter().sum()))
}

/// Largest set of variables containing the support of no lead monomial.
pub fn max_independent_set(arity: usize, leads: &[Monomial]) -> usize {
    let supports: Vec<u32> = minimalize(leads).iter().map(|m| m.support()).collect();
    if supports.contains(&0) {
        return 0;
    }
    let mut best = 0;
    fn rec(i: usize, arity: usize, set: u32, size: usize, supports: &[u32], best: &mut usize) {
        if size + (arity - i) <= *best {
            return;
        }
        if i == arity {
            *best = size;
            return;
        }
        let with = set | (1 << i);
        if !supports.iter().any(|s| s & !with == 0) {
            rec(i + 1, arity, with, size + 1, supports, best);
        }
        rec(i + 1, arity, set, size, supports, best);
    }
    rec(0, arity, 0, 0, &supports, &mut best);
    best
}

/// Hilbert series `numerator / (1 - u)^dim` of a standard graded quotient,
/// with all common factors `1 - u` cancelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    /// Coefficients of the numerator, lowest degree first.
    pub numerator: Vec<BigInt>,
    pub dim: usize,
}

impl HilbertSeries {
    /// Series of `k[x_1..x_n] / (leads)`.
    pub fn of_monomial_ideal(arity: usize, leads: &[Monomial]) -> HilbertSeries {
        let mut num = kpoly(minimalize(leads), arity);
        let mut dim = arity;
        while dim > 0 && !num.iter().all(|c| c.is_zero()) && eval_one(&num).is_zero() {
            num = divide_one_minus_u(&num);
            dim -= 1;
        }
        trim(&mut num);
        HilbertSeries { numerator: num, dim }
    }

    /// The multiplicity: numerator evaluated at 1.
    pub fn multiplicity(&self) -> BigInt {
        eval_one(&self.numerator)
    }

    /// Coefficient of `u^n` in the power series expansion.
    pub fn coefficient(&self, n: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for (k, c) in self.numerator.iter().enumerate() {
            if k > n {
                break;
            }
            acc += c * binom_multiset(self.dim, n - k);
        }
        acc
    }

    /// Values of the Hilbert function for degrees `0..=up_to`.
    pub fn hilbert_function(&self, up_to: usize) -> Vec<BigInt> {
        (0..=up_to).map(|n| self.coefficient(n)).collect()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        let mut first = true;
        for (k, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("u")?,
                _ => write!(f, "u^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")?;
        match self.dim {
            0 => Ok(()),
            1 => f.write_str("/(1 - u)"),
            d => write!(f, "/(1 - u)^{d}"),
        }
    }
}

/// Number of monomials of degree `n` in `d` variables.
fn binom_multiset(d: usize, n: usize) -> BigInt {
    if d == 0 {
        return if n == 0 { BigInt::one() } else { BigInt::zero() };
    }
    // C(n + d - 1, d - 1)
    let mut acc = BigInt::one();
    for i in 1..d {
        acc = acc * BigInt::from(n + i) / BigInt::from(i);
    }
    acc
}

fn eval_one(p: &[BigInt]) -> BigInt {
    p.iter().sum()
}

fn trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigInt::zero());
    }
}

fn divide_one_minus_u(p: &[BigInt]) -> Vec<BigInt> {
    // q(u)(1 - u) = p(u): q_k = p_0 + ... + p_k
    let mut q = Vec::with_capacity(p.len());
    let mut acc = BigInt::zero();
    for c in p.iter().take(p.len().saturating_sub(1)) {
        acc += c;
        q.push(acc.clone());
    }
    if q.is_empty() {
        q.push(BigInt::zero());
    }
    q
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<BigInt>, b: &[BigInt], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigInt::zero());
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn one_minus_u_pow(d: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = BigInt::one();
    p[d as usize] -= BigInt::one();
    p
}

/// Numerator `K` with `HS(k[x]/M) = K / (1 - u)^arity`, by pivoting.
fn kpoly(gens: Vec<Monomial>, arity: usize) -> Vec<BigInt> {
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)));
    if coprime {
        return gens.iter().fold(vec![BigInt::one()], |acc, m| poly_mul(&acc, &one_minus_u_pow(m.degree())));
    }
    // pivot on the variable shared by the most generators
    let mut best = (0usize, 0usize);
    for v in 0..arity {
        let c = gens.iter().filter(|m| m.exponent(v) > 0).count();
        if c > best.1 {
            best = (v, c);
        }
    }
    let v = best.0;
    let e = gens.iter().map(|m| m.exponent(v)).filter(|&e| e > 0).min().expect("shared variable");
    let pivot = Monomial::var(arity, v).pow(e);
    let mut sum_gens = gens.clone();
    sum_gens.push(pivot);
    let quotient_gens: Vec<Monomial> = gens
        .iter()
        .map(|m| m.with_exponent(v, m.exponent(v).saturating_sub(e)))
        .collect();
    let mut k = kpoly(minimalize(&sum_gens), arity);
    let kq = kpoly(minimalize(&quotient_gens), arity);
    poly_add_shifted(&mut k, &kq, e as usize);
    k
}
