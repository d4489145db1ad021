use alloc::sync::Arc;
use alloc::vec::Vec;

use super::engine::{reduce_full_with, sort_desc, sub_mul, Terms};
use crate::error::{Error, Result};
use crate::polyalg::{Monomial, MonomialOrder, Polynomial, RingSignature};

/// A reduced Gröbner basis: monic elements, each fully reduced against the
/// others, sorted ascending by lead monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    sig: Arc<RingSignature>,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    rows: Vec<Terms>,
    leads: Vec<Monomial>,
}

impl GroebnerBasis {
    pub(crate) fn from_rows(sig: &Arc<RingSignature>, order: MonomialOrder, rows: Vec<Terms>) -> Self {
        let elements = rows.iter().map(|r| Polynomial::from_terms(sig, r.clone())).collect();
        let leads = rows.iter().map(|r| r[0].0).collect();
        GroebnerBasis { sig: sig.clone(), order, elements, rows, leads }
    }

    pub fn signature(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lead_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    /// Whether the basis generates the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.leads.iter().any(|m| m.is_one())
    }

    /// Remainder of `f` on division by the basis: no term of the result is
    /// divisible by a lead monomial.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.signature() != &self.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut terms: Terms = f.terms().to_vec();
        sort_desc(&self.order, &mut terms);
        let r = reduce_full_with(&self.order, &self.leads, &self.rows, terms);
        Ok(Polynomial::from_terms(&self.sig, r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Check every S-polynomial reduces to zero, with no criteria applied.
    pub fn is_confluent(&self) -> bool {
        let n = self.rows.len();
        for i in 0..n {
            for j in i + 1..n {
                let lcm = self.leads[i].lcm(&self.leads[j]);
                let qi = self.leads[i].quotient_of(&lcm).expect("lcm");
                let qj = self.leads[j].quotient_of(&lcm).expect("lcm");
                let scaled: Terms = self.rows[i].iter().map(|(m, c)| (m.mul(&qi), c.clone())).collect();
                let one = self.rows[j][0].1.clone();
                let s = sub_mul(&self.order, &scaled, &one, &qj, &self.rows[j]);
                if !reduce_full_with(&self.order, &self.leads, &self.rows, s).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced: monic, and no term of an element is divisible by another lead.
    pub fn is_reduced(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            r[0].1.is_one()
                && r.iter().all(|(m, _)| self.leads.iter().enumerate().all(|(j, l)| j == i || !l.divides(m)))
        })
    }
}

impl core::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("GroebnerBasis").field("order", &self.order).field("elements", &self.elements).finish()
    }
}
