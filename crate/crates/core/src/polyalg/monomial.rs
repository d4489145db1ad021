use core::fmt;

use crate::error::{Error, Result};

/// Largest ring arity supported. Doubled rings plus one auxiliary variable
/// must fit, so base rings of up to eleven variables are usable everywhere.
pub const MAX_VARS: usize = 24;

/// An exponent vector stored inline. Entries past `arity` are always zero.
///
/// The derived `Ord` is a fixed structural order used only for deterministic
/// container keys; term orders live in [`super::order`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    arity: u8,
    degree: u32,
    support: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        assert!(arity <= MAX_VARS, "arity {arity} exceeds MAX_VARS");
        Monomial {
            arity: arity as u8,
            degree: 0,
            support: 0,
            exps: [0; MAX_VARS],
        }
    }

    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity);
        let mut m = Self::one(arity);
        m.exps[index] = 1;
        m.degree = 1;
        m.support = 1 << index;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables { max: MAX_VARS, got: exps.len() });
        }
        let mut m = Self::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).map_err(|_| Error::ExponentOverflow)?;
        }
        m.refresh();
        Ok(m)
    }

    fn refresh(&mut self) {
        let mut degree = 0u32;
        let mut support = 0u32;
        for (i, &e) in self.exps[..self.arity as usize].iter().enumerate() {
            degree += e as u32;
            if e > 0 {
                support |= 1 << i;
            }
        }
        self.degree = degree;
        self.support = support;
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Bit `i` is set iff variable `i` occurs.
    #[inline]
    pub fn support(&self) -> u32 {
        self.support
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.arity as usize]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Sum of the exponents of the variables selected by `mask`.
    #[inline]
    pub fn partial_degree(&self, mask: u32) -> u32 {
        if mask & self.support == 0 {
            return 0;
        }
        let mut d = 0;
        for i in 0..self.arity as usize {
            if mask & (1 << i) != 0 {
                d += self.exps[i] as u32;
            }
        }
        d
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity, other.arity);
        let mut m = *self;
        for i in 0..self.arity as usize {
            m.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        m.degree = self.degree + other.degree;
        m.support = self.support | other.support;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.support & !other.support != 0 || self.degree > other.degree {
            return false;
        }
        self.exps[..self.arity as usize]
            .iter()
            .zip(&other.exps[..other.arity as usize])
            .all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..self.arity as usize {
            m.exps[i] -= self.exps[i];
        }
        m.refresh();
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..self.arity as usize {
            m.exps[i] = self.exps[i].max(other.exps[i]);
        }
        m.refresh();
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..self.arity as usize {
            m.exps[i] = self.exps[i].min(other.exps[i]);
        }
        m.refresh();
        m
    }

    #[inline]
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.support & other.support == 0
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let mut m = *self;
        for i in 0..self.arity as usize {
            m.exps[i] = u16::try_from(self.exps[i] as u32 * n).expect("monomial exponent overflow");
        }
        m.refresh();
        m
    }

    /// Re-index into a ring of arity `arity`, sending variable `i` to `map[i]`.
    /// Collisions add exponents. Returns `Err(i)` for the first occurring
    /// variable with no image.
    pub fn remap(&self, arity: usize, map: &[Option<usize>]) -> core::result::Result<Monomial, usize> {
        let mut m = Monomial::one(arity);
        for i in 0..self.arity as usize {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            match map.get(i).copied().flatten() {
                Some(j) => m.exps[j] = m.exps[j].checked_add(e).expect("monomial exponent overflow"),
                None => return Err(i),
            }
        }
        m.refresh();
        Ok(m)
    }

    /// Set variable `i` to 1 (drop it).
    pub fn without(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.exps[i] = 0;
        m.refresh();
        m
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.exps[i] = u16::try_from(e).expect("monomial exponent overflow");
        m.refresh();
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// All monomials of total degree exactly `degree` in `arity` variables, in a
/// fixed deterministic sequence.
pub fn monomials_of_degree(arity: usize, degree: u32) -> alloc::vec::Vec<Monomial> {
    let mut out = alloc::vec::Vec::new();
    let mut exps = alloc::vec![0u32; arity];
    fn rec(i: usize, left: u32, exps: &mut [u32], out: &mut alloc::vec::Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps).expect("valid exponents"));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
    }
    if arity == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, degree, &mut exps, &mut out);
    out
}
