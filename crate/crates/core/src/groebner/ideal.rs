use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use spin::RwLock;

use super::basis::GroebnerBasis;
use super::engine::reduced_of;
use crate::error::{Error, Result};
use crate::polyalg::{parse_polynomial, MonomialOrder, Polynomial, RingSignature};
use crate::settings::Budget;

type Cache = Arc<RwLock<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>>;

/// An ideal given by generators, with reduced bases cached per order.
///
/// Clones share the cache. Inserting is idempotent since reduced bases are
/// unique, so concurrent readers never observe conflicting entries.
#[derive(Clone)]
pub struct Ideal {
    sig: Arc<RingSignature>,
    gens: Vec<Polynomial>,
    cache: Cache,
}

impl Ideal {
    /// Zero generators are dropped; an empty list gives the zero ideal.
    pub fn new(sig: &Arc<RingSignature>, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| g.signature() != sig) {
            return Err(Error::SignatureMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { sig: sig.clone(), gens, cache: Cache::default() })
    }

    pub fn zero(sig: &Arc<RingSignature>) -> Ideal {
        Ideal { sig: sig.clone(), gens: Vec::new(), cache: Cache::default() }
    }

    pub fn unit(sig: &Arc<RingSignature>) -> Ideal {
        Ideal { sig: sig.clone(), gens: alloc::vec![Polynomial::one(sig)], cache: Cache::default() }
    }

    /// Parse each string as a generator.
    pub fn parse(sig: &Arc<RingSignature>, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| parse_polynomial(sig, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(sig, polys)
    }

    /// The ideal generated by the given variables.
    pub fn of_variables(sig: &Arc<RingSignature>, vars: &[usize]) -> Ideal {
        Ideal::new(sig, vars.iter().map(|&i| Polynomial::var(sig, i)).collect()).expect("same ring")
    }

    /// The maximal ideal of the origin.
    pub fn maximal(sig: &Arc<RingSignature>) -> Ideal {
        Ideal::of_variables(sig, &(0..sig.arity()).collect::<Vec<_>>())
    }

    pub fn signature(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    /// Nonzero generators; empty exactly for the zero ideal.
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        self.groebner_with(order, Budget::default())
    }

    pub fn groebner_with(&self, order: &MonomialOrder, budget: Budget) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.read().get(order) {
            return Ok(gb.clone());
        }
        let rows = reduced_of(order, budget, self.gens.iter().map(|g| g.terms().to_vec()).collect())?;
        let gb = Arc::new(GroebnerBasis::from_rows(&self.sig, order.clone(), rows));
        Ok(self.cache.write().entry(order.clone()).or_insert(gb).clone())
    }

    pub fn grevlex(&self, budget: Budget) -> Result<Arc<GroebnerBasis>> {
        self.groebner_with(&MonomialOrder::GrevLex, budget)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.groebner(&MonomialOrder::GrevLex)?.contains(f)
    }

    pub fn is_unit(&self, budget: Budget) -> Result<bool> {
        Ok(self.grevlex(budget)?.is_unit())
    }

    /// Whether every generator is homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Image under a variable map into `target`.
    pub fn rename_embed(&self, target: &Arc<RingSignature>, map: &[Option<usize>]) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.rename_embed(target, map)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    pub(crate) fn with_generators(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(&self.sig, gens).expect("same ring")
    }
}

impl PartialEq for Ideal {
    /// Equality of generator lists; use `ideal_equal` for equality of ideals.
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.gens == other.gens
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self} in {}", self.sig)
    }
}
