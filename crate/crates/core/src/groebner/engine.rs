//! Buchberger's algorithm over an arbitrary [`TermOrder`].
//!
//! Polynomials are handled as term vectors sorted descending under the
//! order, so the lead term is always at index 0.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyalg::{Coeff, Monomial, TermOrder};
use crate::settings::Budget;

pub(crate) type Terms = Vec<(Monomial, Coeff)>;

pub(crate) fn sort_desc<O: TermOrder>(order: &O, terms: &mut Terms) {
    terms.sort_by(|a, b| order.compare(&b.0, &a.0));
}

/// Sort, drop truncated terms, and make monic. Input must have distinct monomials.
pub(crate) fn prepare<O: TermOrder>(order: &O, mut terms: Terms) -> Terms {
    terms.retain(|(m, c)| order.keeps(m) && !c.is_zero());
    sort_desc(order, &mut terms);
    make_monic(&mut terms);
    terms
}

pub(crate) fn make_monic(terms: &mut Terms) {
    if let Some((_, lc)) = terms.first() {
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero lead");
            for (_, c) in terms.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
}

/// `f - c * m * g`, both inputs sorted descending.
pub(crate) fn sub_mul<O: TermOrder>(order: &O, f: &[(Monomial, Coeff)], c: &Coeff, m: &Monomial, g: &[(Monomial, Coeff)]) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let neg = -c;
    for (gm, gc) in g {
        let pm = gm.mul(m);
        if !order.keeps(&pm) {
            // everything after is smaller and also truncated
            break;
        }
        let pc = gc * &neg;
        while i < f.len() && order.compare(&f[i].0, &pm) == Ordering::Greater {
            out.push(f[i].clone());
            i += 1;
        }
        if i < f.len() && f[i].0 == pm {
            let s = &f[i].1 + &pc;
            if !s.is_zero() {
                out.push((pm, s));
            }
            i += 1;
        } else {
            out.push((pm, pc));
        }
    }
    out.extend_from_slice(&f[i..]);
    out
}

/// The shortest reducer whose lead divides `m`.
fn find_reducer(lms: &[Monomial], polys: &[Terms], m: &Monomial) -> Option<usize> {
    (0..lms.len()).filter(|&k| lms[k].divides(m)).min_by_key(|&k| polys[k].len())
}

/// Reduce until the lead term is irreducible (or the result is zero).
pub(crate) fn reduce_top_with<O: TermOrder>(order: &O, lms: &[Monomial], polys: &[Terms], mut f: Terms) -> Terms {
    while let Some((lead, lc)) = f.first() {
        let Some(k) = find_reducer(lms, polys, lead) else { break };
        let q = lms[k].quotient_of(lead).expect("divides");
        let lc = lc.clone();
        f = sub_mul(order, &f, &lc, &q, &polys[k]);
    }
    f
}

/// Reduce every term.
pub(crate) fn reduce_full_with<O: TermOrder>(order: &O, lms: &[Monomial], polys: &[Terms], f: Terms) -> Terms {
    let mut out: Terms = Vec::new();
    let mut rest = f;
    loop {
        rest = reduce_top_with(order, lms, polys, rest);
        if rest.is_empty() {
            return out;
        }
        // the lead is irreducible; peel off the run of irreducible terms
        let mut k = 1;
        while k < rest.len() && find_reducer(lms, polys, &rest[k].0).is_none() {
            k += 1;
        }
        out.extend(rest.drain(..k));
    }
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) struct Engine<'a, O: TermOrder> {
    order: &'a O,
    budget: Budget,
    polys: Vec<Terms>,
    lms: Vec<Monomial>,
    live: Vec<bool>,
    pairs: Vec<Pair>,
    processed: usize,
}

impl<'a, O: TermOrder> Engine<'a, O> {
    pub fn new(order: &'a O, budget: Budget) -> Self {
        Engine { order, budget, polys: Vec::new(), lms: Vec::new(), live: Vec::new(), pairs: Vec::new(), processed: 0 }
    }

    /// Seed with a basis already known to be a Gröbner basis for this order.
    pub fn with_basis(order: &'a O, budget: Budget, basis: Vec<Terms>) -> Self {
        let mut e = Self::new(order, budget);
        for t in basis {
            e.lms.push(t[0].0);
            e.polys.push(t);
            e.live.push(true);
        }
        e
    }

    pub fn reduce_top(&self, f: Terms) -> Terms {
        reduce_top_with(self.order, &self.lms, &self.polys, f)
    }

    pub fn reduce_full(&self, f: Terms) -> Terms {
        reduce_full_with(self.order, &self.lms, &self.polys, f)
    }

    pub fn add_generators(&mut self, gens: Vec<Terms>) -> Result<()> {
        let mut gens: Vec<Terms> = gens.into_iter().map(|g| prepare(self.order, g)).filter(|g| !g.is_empty()).collect();
        // smallest leads first keeps the working basis small
        gens.sort_by(|a, b| self.order.compare(&a[0].0, &b[0].0));
        for g in gens {
            let mut r = self.reduce_top(g);
            if !r.is_empty() {
                make_monic(&mut r);
                self.insert(r);
            }
        }
        self.run()
    }

    fn pair_key_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        a.lcm
            .degree()
            .cmp(&b.lcm.degree())
            .then_with(|| self.order.compare(&a.lcm, &b.lcm))
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    }

    fn run(&mut self) -> Result<()> {
        while !self.pairs.is_empty() {
            let mut best = 0;
            for k in 1..self.pairs.len() {
                if self.pair_key_cmp(&self.pairs[k], &self.pairs[best]) == Ordering::Less {
                    best = k;
                }
            }
            let pair = self.pairs.swap_remove(best);
            if !self.order.keeps(&pair.lcm) {
                continue;
            }
            if self.order.budget_degree(&pair.lcm) > self.budget.max_degree {
                return Err(Error::BudgetExceeded(format!(
                    "S-pair degree {} exceeds the cap of {}",
                    self.order.budget_degree(&pair.lcm),
                    self.budget.max_degree
                )));
            }
            self.processed += 1;
            if self.processed > self.budget.max_pairs {
                return Err(Error::BudgetExceeded(format!("more than {} S-pairs", self.budget.max_pairs)));
            }
            let s = self.spoly(&pair);
            let mut r = self.reduce_full(s);
            if !r.is_empty() {
                make_monic(&mut r);
                self.insert(r);
            }
        }
        Ok(())
    }

    fn spoly(&self, p: &Pair) -> Terms {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let qf = self.lms[p.i].quotient_of(&p.lcm).expect("lcm");
        let qg = self.lms[p.j].quotient_of(&p.lcm).expect("lcm");
        let one = f[0].1.clone();
        let scaled: Terms = f[1..]
            .iter()
            .map(|(m, c)| (m.mul(&qf), c.clone()))
            .filter(|(m, _)| self.order.keeps(m))
            .collect();
        sub_mul(self.order, &scaled, &one, &qg, &g[1..])
    }

    /// Gebauer–Möller update for a new element `h`.
    fn insert(&mut self, h: Terms) {
        let k = self.polys.len();
        let hm = h[0].0;
        let global = self.order.is_global();

        // old pairs made redundant by the chain criterion
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm) && lms[p.i].lcm(&hm) != p.lcm && lms[p.j].lcm(&hm) != p.lcm)
        });

        let mut fresh: Vec<(Pair, bool)> = Vec::new();
        for i in 0..k {
            if self.live[i] {
                let lcm = self.lms[i].lcm(&hm);
                fresh.push((Pair { i, j: k, lcm }, self.lms[i].coprime(&hm)));
            }
        }
        // drop pairs whose lcm is properly divisible by another new lcm
        let snapshot: Vec<Monomial> = fresh.iter().map(|(p, _)| p.lcm).collect();
        fresh.retain(|(p, _)| !snapshot.iter().any(|l| *l != p.lcm && l.divides(&p.lcm)));
        // among equal lcms keep one; if any is coprime the whole class goes
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for (p, cop) in fresh {
            if let Some(slot) = kept.iter_mut().find(|(q, _)| q.lcm == p.lcm) {
                slot.1 |= cop && global;
            } else {
                kept.push((p, cop && global));
            }
        }
        self.pairs.extend(kept.into_iter().filter(|(_, cop)| !cop).map(|(p, _)| p));

        for i in 0..k {
            if self.live[i] && hm.divides(&self.lms[i]) {
                self.live[i] = false;
            }
        }
        self.lms.push(hm);
        self.polys.push(h);
        self.live.push(true);
    }

    /// Lead monomials of a minimal basis.
    pub fn minimal_leads(&self) -> Vec<Monomial> {
        self.minimal_indices().into_iter().map(|i| self.lms[i]).collect()
    }

    fn minimal_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = Vec::new();
        for i in 0..self.polys.len() {
            if !self.live[i] {
                continue;
            }
            let dominated = (0..self.polys.len()).any(|j| {
                j != i && self.live[j] && self.lms[j].divides(&self.lms[i]) && (self.lms[j] != self.lms[i] || j < i)
            });
            if !dominated {
                idx.push(i);
            }
        }
        idx
    }

    /// The reduced basis, sorted ascending by lead monomial.
    pub fn reduced_basis(&self) -> Vec<Terms> {
        let idx = self.minimal_indices();
        let minimal = Engine::with_basis(self.order, self.budget, idx.iter().map(|&i| self.polys[i].clone()).collect());
        let mut out: Vec<Terms> = Vec::with_capacity(idx.len());
        for (pos, p) in minimal.polys.iter().enumerate() {
            let lead = p[0].clone();
            let others = Engine::with_basis(
                self.order,
                self.budget,
                minimal.polys.iter().enumerate().filter(|(q, _)| *q != pos).map(|(_, t)| t.clone()).collect(),
            );
            let mut tail = others.reduce_full(p[1..].to_vec());
            let mut full = Vec::with_capacity(tail.len() + 1);
            full.push(lead);
            full.append(&mut tail);
            make_monic(&mut full);
            out.push(full);
        }
        out.sort_by(|a, b| self.order.compare(&a[0].0, &b[0].0));
        out
    }
}

/// Buchberger from scratch: minimal leads only (no tail reduction).
pub(crate) fn leads_of<O: TermOrder>(order: &O, budget: Budget, gens: Vec<Terms>) -> Result<Vec<Monomial>> {
    let mut e = Engine::new(order, budget);
    e.add_generators(gens)?;
    Ok(e.minimal_leads())
}

/// Buchberger from scratch: reduced basis.
pub(crate) fn reduced_of<O: TermOrder>(order: &O, budget: Budget, gens: Vec<Terms>) -> Result<Vec<Terms>> {
    let mut e = Engine::new(order, budget);
    e.add_generators(gens)?;
    Ok(e.reduced_basis())
}
