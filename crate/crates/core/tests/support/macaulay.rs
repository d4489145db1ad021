//! Colength by linear algebra: the span of `m * g` with `deg(m * g) <= top`,
//! intersected with polynomials of degree `<= d`, has codimension equal to
//! the colength once both degrees are large. Arithmetic is modulo a prime.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serrelab_core::groebner::Ideal;
use serrelab_core::polyalg::Coeff;

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce(n: &BigInt, p: u64) -> u64 {
    let r = (n.abs() % BigInt::from(p)).to_u64().unwrap();
    if n.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

fn coeff_mod(c: &Coeff, p: u64) -> u64 {
    match c {
        Coeff::Rational(q) => mulmod(reduce(q.numer(), p), powmod(reduce(q.denom(), p), p - 2, p), p),
        Coeff::Modular { value, .. } => *value as u64,
    }
}

/// Exponent vectors of total degree `<= top`.
fn monomials(arity: usize, top: u32) -> Vec<Vec<u32>> {
    fn go(k: usize, arity: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == arity {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(k + 1, arity, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, arity, top, &mut Vec::new(), &mut out);
    out
}

/// Codimension of `span{m g : deg <= top} ∩ P_d` in `P_d`.
fn codim(ideal: &Ideal, d: u32, top: u32) -> u64 {
    let sig = ideal.signature();
    let p = match ideal.generators().first().map(|g| &g.terms()[0].1) {
        Some(Coeff::Modular { modulus, .. }) => *modulus as u64,
        _ => P,
    };
    let n = sig.arity();
    let all = monomials(n, top);
    // columns ordered by descending degree so elimination leaves the low-degree part
    let mut cols: Vec<Vec<u32>> = all.clone();
    cols.sort_by(|a, b| b.iter().sum::<u32>().cmp(&a.iter().sum::<u32>()).then(b.cmp(a)));
    let index: BTreeMap<Vec<u32>, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for g in ideal.generators() {
        let gdeg = g.total_degree().unwrap();
        if gdeg > top {
            continue;
        }
        for m in monomials(n, top - gdeg) {
            let mut row: BTreeMap<usize, u64> = BTreeMap::new();
            for (mono, c) in g.terms() {
                let e: Vec<u32> = (0..n).map(|i| mono.exponent(i) + m[i]).collect();
                let col = index[&e];
                let v = coeff_mod(c, p);
                let slot = row.entry(col).or_insert(0);
                *slot = (*slot + v) % p;
            }
            row.retain(|_, v| *v != 0);
            while let Some((&lead, &lv)) = row.iter().next() {
                match pivots.get(&lead) {
                    Some(prow) => {
                        let f = mulmod(lv, powmod(prow[&lead], p - 2, p), p);
                        for (&c, &v) in prow {
                            let slot = row.entry(c).or_insert(0);
                            *slot = (*slot + p - mulmod(f, v, p)) % p;
                        }
                        row.retain(|_, v| *v != 0);
                    }
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
    }
    let low_cols = cols.iter().filter(|m| m.iter().sum::<u32>() <= d).count() as u64;
    let low_pivots = pivots.keys().filter(|&&c| cols[c].iter().sum::<u32>() <= d).count() as u64;
    low_cols - low_pivots
}

/// Colength of a zero-dimensional ideal, or `None` when the estimate has
/// not settled within the degree range.
pub fn colength(ideal: &Ideal, d: u32, slack: u32) -> Option<u64> {
    let a = codim(ideal, d, d + slack);
    let b = codim(ideal, d + 1, d + 1 + slack);
    (a == b).then_some(a)
}

/// Hilbert function of a homogeneous ideal in degrees `0..=up_to`.
pub fn graded_hilbert_function(ideal: &Ideal, up_to: u32) -> Vec<u64> {
    let mut out = Vec::new();
    let mut prev = 0;
    for k in 0..=up_to {
        let c = codim(ideal, k, k);
        out.push(c - prev);
        prev = c;
    }
    out
}
