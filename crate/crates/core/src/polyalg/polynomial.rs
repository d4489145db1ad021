use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::field::Coeff;
use super::monomial::Monomial;
use super::order::{canonical_cmp, MonomialOrder};
use super::signature::RingSignature;
use crate::error::{Error, Result};

/// A sparse polynomial with exact coefficients.
///
/// Terms are kept sorted by [`canonical_cmp`] (ascending total degree), carry
/// no zero coefficients, and all share the arity of `sig`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    sig: Arc<RingSignature>,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(sig: &Arc<RingSignature>) -> Self {
        Polynomial { sig: sig.clone(), terms: Vec::new() }
    }

    pub fn constant(sig: &Arc<RingSignature>, c: Coeff) -> Self {
        assert!(sig.field().owns(&c), "coefficient from a foreign field");
        Self::from_sorted(sig, if c.is_zero() { Vec::new() } else { alloc::vec![(Monomial::one(sig.arity()), c)] })
    }

    pub fn one(sig: &Arc<RingSignature>) -> Self {
        Self::constant(sig, sig.field().one())
    }

    pub fn integer(sig: &Arc<RingSignature>, n: i64) -> Self {
        Self::constant(sig, sig.field().from_i64(n))
    }

    pub fn var(sig: &Arc<RingSignature>, index: usize) -> Self {
        Self::from_sorted(sig, alloc::vec![(Monomial::var(sig.arity(), index), sig.field().one())])
    }

    pub fn var_named(sig: &Arc<RingSignature>, name: &str) -> Result<Self> {
        let i = sig.index_of(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Self::var(sig, i))
    }

    pub fn monomial(sig: &Arc<RingSignature>, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.arity(), sig.arity());
        Self::from_terms(sig, alloc::vec![(m, c)])
    }

    /// Build from arbitrary terms: like monomials are combined and zeros dropped.
    pub fn from_terms(sig: &Arc<RingSignature>, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        terms.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), sig.arity());
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if matches!(out.last(), Some((_, c)) if c.is_zero()) {
            out.pop();
        }
        Self::from_sorted(sig, out)
    }

    pub(crate) fn from_sorted(sig: &Arc<RingSignature>, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| canonical_cmp(&w[0].0, &w[1].0) == Ordering::Less));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { sig: sig.clone(), terms }
    }

    pub fn signature(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Coeff {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.sig.field().zero(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match canonical_cmp(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial::from_sorted(&self.sig, out)
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(&self.sig, prods)
    }

    fn neg_ref(&self) -> Polynomial {
        Polynomial::from_sorted(&self.sig, self.terms.iter().map(|(m, c)| (*m, -c)).collect())
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.sig);
        }
        Polynomial::from_sorted(&self.sig, self.terms.iter().map(|(m, d)| (*m, d * c)).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // multiplication by a monomial shifts degrees uniformly but can reorder ties
        Polynomial::from_terms(&self.sig, self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect())
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.sig);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Largest total degree of a term.
    pub fn total_degree(&self) -> Result<u32> {
        self.terms.last().map(|(m, _)| m.degree()).ok_or(Error::ZeroPolynomial)
    }

    /// Smallest total degree of a term: the largest `a` with `f` in `m^a`.
    pub fn ord(&self) -> Result<u32> {
        self.terms.first().map(|(m, _)| m.degree()).ok_or(Error::ZeroPolynomial)
    }

    /// The homogeneous component of least total degree.
    pub fn initial_form(&self) -> Result<Polynomial> {
        let a = self.ord()?;
        let n = self.terms.iter().take_while(|(m, _)| m.degree() == a).count();
        Ok(Polynomial::from_sorted(&self.sig, self.terms[..n].to_vec()))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.first().map(|(m, _)| m.degree()) == self.terms.last().map(|(m, _)| m.degree())
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&(Monomial, Coeff)> {
        self.terms.iter().max_by(|a, b| order.compare(&a.0, &b.0))
    }

    /// Image under the ring morphism sending variable `i` to variable `map[i]`
    /// of `target`. Maps need not be injective.
    pub fn rename_embed(&self, target: &Arc<RingSignature>, map: &[Option<usize>]) -> Result<Polynomial> {
        if target.field() != self.sig.field() {
            return Err(Error::SignatureMismatch);
        }
        if map.iter().flatten().any(|&j| j >= target.arity()) {
            return Err(Error::InvalidArgument("variable map points outside the target ring".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let image = m
                .remap(target.arity(), map)
                .map_err(|i| Error::UnmappedVariable(self.sig.variable(i).into()))?;
            terms.push((image, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Substitute `images[i]` for variable `i`; all images live in one ring.
    pub fn compose(&self, target: &Arc<RingSignature>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.sig.arity() || images.iter().any(|p| p.sig != *target) {
            return Err(Error::SignatureMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| alloc::vec![Polynomial::one(target), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e]);
            }
            acc = acc.add_unchecked(&t);
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(divisor)?;
        let order = MonomialOrder::GrevLex;
        let (lm, lc) = divisor.leading_term(&order).cloned().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term(&order).cloned() {
            let q = lm.quotient_of(&m).ok_or(Error::NotDivisible)?;
            let qc = &c * &lc_inv;
            rest = rest.add_unchecked(&divisor.mul_monomial(&q).scale(&-&qc));
            quotient.push((q, qc));
        }
        Ok(Polynomial::from_terms(&self.sig, quotient))
    }

    /// Homogenize with respect to variable `h` of `target`, into which this
    /// ring embeds by `map`.
    pub fn homogenize(&self, target: &Arc<RingSignature>, map: &[Option<usize>], h: usize) -> Result<Polynomial> {
        let embedded = self.rename_embed(target, map)?;
        let top = match embedded.total_degree() {
            Ok(d) => d,
            Err(_) => return Ok(embedded),
        };
        let terms = embedded
            .terms
            .iter()
            .map(|(m, c)| {
                let lift = m.with_exponent(h, m.exponent(h) + top - m.degree());
                (lift, c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Set variable `h` to 1 and re-express in `target` via `map`.
    pub fn dehomogenize(&self, h: usize, target: &Arc<RingSignature>, map: &[Option<usize>]) -> Result<Polynomial> {
        let terms: Vec<_> = self.terms.iter().map(|(m, c)| (m.without(h), c.clone())).collect();
        Polynomial::from_terms(&self.sig, terms).rename_embed(target, map)
    }

    /// Divide by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }
}

fn same_ring_or_panic(a: &Polynomial, b: &Polynomial) {
    if a.check_same_ring(b).is_err() {
        panic!("polynomial arithmetic across different rings");
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        same_ring_or_panic(self, rhs);
        self.add_unchecked(rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        same_ring_or_panic(self, rhs);
        self.add_unchecked(&rhs.neg_ref())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        same_ring_or_panic(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(alloc::format!("{abs}"));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.sig.variable(i).into()),
                    _ => factors.push(alloc::format!("{}^{}", self.sig.variable(i), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::polyalg::field::FieldSpec;

    fn ring(vars: &[&str]) -> Arc<RingSignature> {
        RingSignature::new(FieldSpec::Rationals, vars, None).unwrap()
    }

    fn p(sig: &Arc<RingSignature>, s: &str) -> Polynomial {
        crate::polyalg::parse::parse_polynomial(sig, s).unwrap()
    }

    #[test]
    fn additive_inverse_and_difference_of_squares() {
        let r = ring(&["x", "y"]);
        let x = p(&r, "x");
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(&p(&r, "x + y") * &p(&r, "x - y"), p(&r, "x^2 - y^2"));
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let r = RingSignature::new(FieldSpec::prime(2).unwrap(), &["x", "y"], None).unwrap();
        assert_eq!(p(&r, "(x + y)^2"), p(&r, "x^2 + y^2"));
    }

    #[test]
    fn degrees() {
        let r = ring(&["t", "x", "y", "z"]);
        assert_eq!(p(&r, "t - x^2").total_degree(), Ok(2));
        assert_eq!(p(&r, "1").total_degree(), Ok(0));
        assert_eq!(p(&r, "x^3*y + z^2").total_degree(), Ok(4));
        assert_eq!(p(&r, "0").total_degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn initial_forms() {
        let r = ring(&["t", "x", "y"]);
        assert_eq!(p(&r, "t - x^2").initial_form().unwrap(), p(&r, "t"));
        assert_eq!(p(&r, "x^2 - y^2").initial_form().unwrap(), p(&r, "x^2 - y^2"));
        assert_eq!(p(&r, "t^4 - x*y").initial_form().unwrap(), p(&r, "-x*y"));
        assert_eq!(p(&r, "0").initial_form(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rename_embed_examples() {
        let src = ring(&["t", "x"]);
        let dst = ring(&["t1", "x1", "t2", "x2"]);
        let f = p(&src, "t - x^2");
        assert_eq!(f.rename_embed(&dst, &[Some(0), Some(1)]).unwrap(), p(&dst, "t1 - x1^2"));
        assert_eq!(f.rename_embed(&src, &[Some(0), Some(1)]).unwrap(), f);
        let collapsed = ring(&["t"]);
        let g = p(&dst, "t1 - t2");
        assert!(g.rename_embed(&collapsed, &[Some(0), None, Some(0), None]).unwrap().is_zero());
        assert_eq!(
            f.rename_embed(&dst, &[Some(0), None]),
            Err(Error::UnmappedVariable("x".into()))
        );
    }

    #[test]
    fn exact_division_and_composition() {
        let r = ring(&["x", "y"]);
        let q = p(&r, "x^2 - y^2").div_exact(&p(&r, "x - y")).unwrap();
        assert_eq!(q, p(&r, "x + y"));
        assert_eq!(p(&r, "x^2 + 1").div_exact(&p(&r, "x")), Err(Error::NotDivisible));
        let shifted = p(&r, "x*y").compose(&r, &[p(&r, "x + y"), p(&r, "y")]).unwrap();
        assert_eq!(shifted, p(&r, "x*y + y^2"));
    }

    #[test]
    fn homogenization_round_trip() {
        let r = ring(&["x", "y"]);
        let rh = ring(&["x", "y", "h"]);
        let f = p(&r, "y - x^2");
        let fh = f.homogenize(&rh, &[Some(0), Some(1)], 2).unwrap();
        assert_eq!(fh, p(&rh, "y*h - x^2"));
        assert_eq!(fh.dehomogenize(2, &r, &[Some(0), Some(1), None]).unwrap(), f);
    }

    #[test]
    fn display_lists_initial_form_first() {
        let r = ring(&["t", "x", "y"]);
        assert_eq!(p(&r, "-x^2 + t").to_string(), "t - x^2");
        assert_eq!(p(&r, "0").to_string(), "0");
        assert_eq!(p(&r, "2*x*y^3 - 1").to_string(), "-1 + 2*x*y^3");
    }
}
