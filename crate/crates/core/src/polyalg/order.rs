use alloc::boxed::Box;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::monomial::Monomial;

/// Global monomial orders. Variable `0` is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// Variables `0..split` form a block compared first (by grevlex), the
    /// rest break ties (by grevlex). Eliminates the first block.
    Block { split: usize },
    /// Compare the weighted degree first, then fall back to `tie`.
    /// Weights are non-negative so the order stays a well-order.
    WeightRefined { weights: Vec<u32>, tie: Box<MonomialOrder> },
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex_range(a, b, 0, a.arity()),
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Block { split } => {
                let split = (*split).min(a.arity());
                grevlex_range(a, b, 0, split).then_with(|| grevlex_range(a, b, split, a.arity()))
            }
            MonomialOrder::WeightRefined { weights, tie } => {
                weighted(a, weights).cmp(&weighted(b, weights)).then_with(|| tie.compare(a, b))
            }
        }
    }

    /// Whether every monomial comparison begins with total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}

fn weighted(m: &Monomial, w: &[u32]) -> u64 {
    m.exponents()
        .iter()
        .zip(w)
        .map(|(&e, &w)| e as u64 * w as u64)
        .sum()
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exponents().cmp(b.exponents())
}

fn grevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let (ea, eb) = (&a.exponents()[lo..hi], &b.exponents()[lo..hi]);
    let da: u32 = ea.iter().map(|&e| e as u32).sum();
    let db: u32 = eb.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in ea.iter().zip(eb).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Comparison strategy used by the Gröbner engine. Besides the global
/// [`MonomialOrder`]s this admits the truncated local orders used for
/// Hilbert–Samuel computations.
pub trait TermOrder {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering;

    /// Whether `m` survives truncation. Global orders keep everything.
    #[inline]
    fn keeps(&self, _m: &Monomial) -> bool {
        true
    }

    /// Degree that counts against the budget cap.
    #[inline]
    fn budget_degree(&self, m: &Monomial) -> u32 {
        m.degree()
    }

    /// Global well-orders admit the coprime-lead criterion; local ones do not.
    fn is_global(&self) -> bool {
        true
    }
}

impl TermOrder for MonomialOrder {
    #[inline]
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        MonomialOrder::compare(self, a, b)
    }
}

/// Order on `k[x]/(z)^level` where `z` is the variable set `mask`: smaller
/// `z`-degree is larger, ties go to a global order. On monomials of
/// `z`-degree below `level` this is a multiplicative well-order, which is all
/// the engine needs once higher terms are discarded.
#[derive(Debug, Clone)]
pub struct LocalTruncation {
    pub mask: u32,
    pub level: u32,
    pub tie: MonomialOrder,
}

impl TermOrder for LocalTruncation {
    #[inline]
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        b.partial_degree(self.mask)
            .cmp(&a.partial_degree(self.mask))
            .then_with(|| self.tie.compare(a, b))
    }

    #[inline]
    fn keeps(&self, m: &Monomial) -> bool {
        m.partial_degree(self.mask) < self.level
    }

    #[inline]
    fn budget_degree(&self, m: &Monomial) -> u32 {
        m.degree() - m.partial_degree(self.mask)
    }

    fn is_global(&self) -> bool {
        false
    }
}

/// The canonical storage order for polynomials: ascending total degree, ties
/// descending in grevlex. The first terms of a stored polynomial are
/// therefore its initial form.
#[inline]
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| grevlex_range(b, a, 0, a.arity()))
}
