//! Buchberger's algorithm for submodules of free modules.
//!
//! Pairs are processed by the normal strategy (smallest lcm degree first).
//! The Gebauer–Möller update removes pairs by the chain criterion; the
//! coprimality criterion is used only for ideals under a plain order.

use crate::error::Result;
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::ring::{Budget, RingRef};

use super::vector::{merge_scaled, ModuleOrder, OrderKind, Term, Vector};

/// A set of monic vectors used as reducers.
#[derive(Clone, Debug)]
pub struct Reducers<C> {
    elems: Vec<Vector<C>>,
    leads: Vec<Term>,
    masks: Vec<u64>,
    active: Vec<bool>,
}

impl<C: Coeff> Default for Reducers<C> {
    fn default() -> Self {
        Reducers {
            elems: Vec::new(),
            leads: Vec::new(),
            masks: Vec::new(),
            active: Vec::new(),
        }
    }
}

impl<C: Coeff> Reducers<C> {
    /// Reducers from monic, nonzero vectors.
    pub fn new(elems: Vec<Vector<C>>) -> Self {
        let mut r = Reducers::default();
        for e in elems {
            r.push(e);
        }
        r
    }

    fn push(&mut self, v: Vector<C>) {
        let lead = v.lead().expect("reducers are nonzero").clone();
        self.masks.push(lead.mon.support_mask());
        self.leads.push(lead);
        self.elems.push(v);
        self.active.push(true);
    }

    pub fn elements(&self) -> &[Vector<C>] {
        &self.elems
    }

    fn find(&self, t: &Term) -> Option<usize> {
        let mask = t.mon.support_mask();
        (0..self.elems.len()).find(|&k| {
            self.active[k]
                && self.leads[k].comp == t.comp
                && self.masks[k] & !mask == 0
                && self.leads[k].mon.divides(&t.mon)
        })
    }

    /// Normal form of `v`. With `full` unset only the leading term is
    /// reduced until it is irreducible.
    pub fn reduce(&self, v: Vector<C>, order: &ModuleOrder, budget: &Budget, full: bool) -> Result<Vector<C>> {
        let mut work = v.terms;
        let mut pos = 0;
        while pos < work.len() {
            match self.find(&work[pos].0) {
                Some(k) => {
                    budget.charge(1)?;
                    let g = &self.elems[k];
                    let q = work[pos].0.mon.quotient(&self.leads[k].mon).expect("divisor");
                    let coef = work[pos].1.neg();
                    let tail = merge_scaled(&work[pos..], &coef, &q, &g.terms, order);
                    work.truncate(pos);
                    work.extend(tail);
                }
                None if full => pos += 1,
                None => break,
            }
        }
        Ok(Vector { terms: work })
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'a, C> {
    red: Reducers<C>,
    pairs: Vec<Pair>,
    product_criterion: bool,
    order: &'a ModuleOrder,
}

impl<C: Coeff> State<'_, C> {
    fn add(&mut self, h: Vector<C>) {
        let k = self.red.elems.len();
        let lk = h.lead().expect("nonzero").clone();
        let leads = &self.red.leads;

        self.pairs.retain(|p| {
            if leads[p.i].comp != lk.comp || !lk.mon.divides(&p.lcm) {
                return true;
            }
            leads[p.i].mon.lcm(&lk.mon) == p.lcm || leads[p.j].mon.lcm(&lk.mon) == p.lcm
        });

        let cands: Vec<(usize, Monomial, bool)> = (0..k)
            .filter(|&i| self.red.active[i] && leads[i].comp == lk.comp)
            .map(|i| {
                let l = leads[i].mon.lcm(&lk.mon);
                let coprime = self.product_criterion && leads[i].mon.is_coprime(&lk.mon);
                (i, l, coprime)
            })
            .collect();
        let kept: Vec<&(usize, Monomial, bool)> = cands
            .iter()
            .filter(|(i, l, _)| {
                !cands
                    .iter()
                    .any(|(j, l2, _)| j != i && l2 != l && l2.divides(l))
            })
            .collect();
        let mut done: Vec<&Monomial> = Vec::new();
        for (i, l, _) in kept.iter().map(|c| (c.0, &c.1, c.2)) {
            if done.contains(&l) {
                continue;
            }
            done.push(l);
            if kept.iter().any(|c| &c.1 == l && c.2) {
                continue;
            }
            self.pairs.push(Pair {
                i,
                j: k,
                lcm: l.clone(),
            });
        }

        for i in 0..k {
            if self.red.active[i] && self.red.leads[i].comp == lk.comp && lk.mon.divides(&self.red.leads[i].mon) {
                self.red.active[i] = false;
            }
        }
        self.red.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.lcm.degree(), p.j, p.i))
            .map(|(idx, _)| idx)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vector<C> {
        let gi = &self.red.elems[p.i];
        let gj = &self.red.elems[p.j];
        let mi = p.lcm.quotient(&self.red.leads[p.i].mon).unwrap();
        let mj = p.lcm.quotient(&self.red.leads[p.j].mon).unwrap();
        // both generators are monic
        let one = gi.lead_coeff().unwrap();
        let a = gi.mul_term(&mi, one);
        let minus_one = one.neg();
        let mut s = a.add_mul(&minus_one, &mj, gj, self.order);
        debug_assert!(s.terms.first().is_none_or(|(t, _)| t.mon != p.lcm || t.comp != self.red.leads[p.i].comp));
        s.terms.shrink_to_fit();
        s
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`, whose terms
/// must be sorted under `order`. Elements are monic and sorted by leading
/// term, smallest first.
pub fn groebner_basis<C: Coeff>(ring: &RingRef, order: &ModuleOrder, gens: Vec<Vector<C>>) -> Result<Vec<Vector<C>>> {
    let budget = ring.budget();
    let rank_one = gens.iter().all(|g| g.terms.iter().all(|(t, _)| t.comp == 0));
    let plain = matches!(order.kind, OrderKind::Base(_));
    let mut st = State {
        red: Reducers::default(),
        pairs: Vec::new(),
        product_criterion: rank_one && plain,
        order,
    };
    // Full reduction of module elements drags tails through every later
    // component under position-over-term, and their size explodes. Modules
    // are only top-reduced until the final pass.
    let full = rank_one;

    let mut gens: Vec<Vector<C>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| order.cmp(a.lead().unwrap(), b.lead().unwrap()));
    for g in gens {
        let h = st.red.reduce(g, order, budget, full)?;
        if h.is_zero() {
            continue;
        }
        if rank_one && plain && h.lead().unwrap().mon.is_one() {
            return Ok(vec![h.monic()]);
        }
        st.add(h.monic());
    }

    while let Some(p) = st.next_pair() {
        let s = st.spoly(&p);
        let h = st.red.reduce(s, order, budget, full)?;
        if h.is_zero() {
            continue;
        }
        if rank_one && plain && h.lead().unwrap().mon.is_one() {
            return Ok(vec![h.monic()]);
        }
        st.add(h.monic());
    }

    let red = st.red;
    let active: Vec<usize> = (0..red.elems.len()).filter(|&k| red.active[k]).collect();
    let mut out = Vec::with_capacity(active.len());
    for &k in &active {
        let g = &red.elems[k];
        let tail = Vector {
            terms: g.terms[1..].to_vec(),
        };
        let tail = red.reduce(tail, order, budget, true)?;
        let mut terms = Vec::with_capacity(tail.terms.len() + 1);
        terms.push(g.terms[0].clone());
        terms.extend(tail.terms);
        out.push(Vector { terms });
    }
    out.sort_by(|a, b| order.cmp(a.lead().unwrap(), b.lead().unwrap()));
    Ok(out)
}

/// Top-reduces `v` by `basis`, recording the multipliers: returns the
/// quotient terms `(index, monomial, coefficient)` and the remainder, so that
/// `v = sum q_k basis_k + remainder`.
pub(crate) fn divide_with_quotients<C: Coeff>(
    v: Vector<C>,
    basis: &[Vector<C>],
    order: &ModuleOrder,
    budget: &Budget,
) -> Result<(Vec<(usize, Monomial, C)>, Vector<C>)> {
    let leads: Vec<(&Term, u64)> = basis
        .iter()
        .map(|b| {
            let t = b.lead().expect("nonzero divisor");
            (t, t.mon.support_mask())
        })
        .collect();
    let mut quotients = Vec::new();
    let mut work = v;
    while let Some((t, c)) = work.terms.first().cloned() {
        let mask = t.mon.support_mask();
        let found = leads
            .iter()
            .position(|(l, lm)| l.comp == t.comp && lm & !mask == 0 && l.mon.divides(&t.mon));
        let Some(k) = found else { break };
        budget.charge(1)?;
        let q = t.mon.quotient(&leads[k].0.mon).unwrap();
        let coef = c.div(basis[k].lead_coeff().unwrap()).expect("nonzero lead");
        work = work.add_mul(&coef.neg(), &q, &basis[k], order);
        quotients.push((k, q, coef));
    }
    Ok((quotients, work))
}
