//! Elements of free modules `A^r` as sorted term lists, and module orders.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::field::Coeff;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// A module term `x^a e_comp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mon: Monomial,
    pub comp: u32,
}

impl Term {
    pub fn new(mon: Monomial, comp: u32) -> Term {
        Term { mon, comp }
    }

    pub fn mul(&self, m: &Monomial) -> Term {
        Term {
            mon: self.mon.mul(m),
            comp: self.comp,
        }
    }
}

/// How the free basis vectors of `F_0` are weighed against monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// Position over term: the component decides first.
    Pot,
    /// Term over position: the monomial decides first.
    Top,
}

/// Leading data of one generator in a Schreyer frame: the product of its
/// leading monomials down to `F_0`, the `F_0` component reached, and the
/// indices of the generators passed on the way (lowest level first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameLead {
    pub mon: Monomial,
    pub comp0: u32,
    pub path: Vec<u32>,
}

/// Induced order on a free module whose basis vectors map to the
/// generators described by `leads`. Ties are broken in favour of the smaller
/// generator index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreyerFrame {
    pub base: BaseKind,
    pub leads: Vec<FrameLead>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Base(BaseKind),
    /// Components below the bound outrank all others; term-over-position
    /// inside each block. Eliminates the upper block without the cost of
    /// separating every component.
    Split(u32),
    Schreyer(Arc<SchreyerFrame>),
}

/// A monomial order on a free module; smaller component indices are larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub ring_order: MonomialOrder,
    pub kind: OrderKind,
}

impl ModuleOrder {
    pub fn pot(ring: &RingRef) -> ModuleOrder {
        ModuleOrder {
            ring_order: ring.order().clone(),
            kind: OrderKind::Base(BaseKind::Pot),
        }
    }

    pub fn top(ring: &RingRef) -> ModuleOrder {
        ModuleOrder {
            ring_order: ring.order().clone(),
            kind: OrderKind::Base(BaseKind::Top),
        }
    }

    pub fn split(ring: &RingRef, bound: usize) -> ModuleOrder {
        ModuleOrder {
            ring_order: ring.order().clone(),
            kind: OrderKind::Split(bound as u32),
        }
    }

    pub fn schreyer(ring: &RingRef, frame: SchreyerFrame) -> ModuleOrder {
        ModuleOrder {
            ring_order: ring.order().clone(),
            kind: OrderKind::Schreyer(Arc::new(frame)),
        }
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        match &self.kind {
            OrderKind::Base(BaseKind::Pot) => b
                .comp
                .cmp(&a.comp)
                .then_with(|| self.ring_order.cmp(&a.mon, &b.mon)),
            OrderKind::Base(BaseKind::Top) => self
                .ring_order
                .cmp(&a.mon, &b.mon)
                .then_with(|| b.comp.cmp(&a.comp)),
            OrderKind::Split(bound) => (b.comp >= *bound)
                .cmp(&(a.comp >= *bound))
                .then_with(|| self.ring_order.cmp(&a.mon, &b.mon))
                .then_with(|| b.comp.cmp(&a.comp)),
            OrderKind::Schreyer(frame) => {
                let la = &frame.leads[a.comp as usize];
                let lb = &frame.leads[b.comp as usize];
                let by_mon = || self.ring_order.cmp_products(&a.mon, &la.mon, &b.mon, &lb.mon);
                let by_comp0 = || lb.comp0.cmp(&la.comp0);
                let first = match frame.base {
                    BaseKind::Pot => by_comp0().then_with(by_mon),
                    BaseKind::Top => by_mon().then_with(by_comp0),
                };
                first.then_with(|| {
                    for (x, y) in la.path.iter().zip(lb.path.iter()) {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// An element of `A^r`, terms sorted descending under some module order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector<C> {
    pub terms: Vec<(Term, C)>,
}

impl<C: Coeff> Vector<C> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    /// Builds a vector from one polynomial per component.
    pub fn from_column(column: &[Polynomial<C>], order: &ModuleOrder) -> Self {
        let mut terms: Vec<(Term, C)> = Vec::new();
        for (i, p) in column.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((Term::new(m.clone(), i as u32), c.clone()));
            }
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Vector { terms }
    }

    /// Builds a vector from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Term, C)>, order: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Term, C)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => *lc = lc.add(&c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Vector { terms: out }
    }

    pub fn to_column(&self, rank: usize, ring: &RingRef) -> Vec<Polynomial<C>> {
        let mut parts: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); rank];
        for (t, c) in &self.terms {
            parts[t.comp as usize].push((t.mon.clone(), c.clone()));
        }
        parts
            .into_iter()
            .map(|ts| Polynomial::from_terms(ring, ts))
            .collect()
    }

    /// Re-sorts under another order.
    pub fn resorted(mut self, order: &ModuleOrder) -> Self {
        self.terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        self
    }

    pub fn scale(&self, c: &C) -> Self {
        Vector {
            terms: self.terms.iter().map(|(t, d)| (t.clone(), d.mul(c))).collect(),
        }
    }

    pub fn monic(self) -> Self {
        match self.lead_coeff() {
            Some(c) if !c.is_one() => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self,
        }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|(t, d)| (t.mul(m), d.mul(c)))
                .collect(),
        }
    }

    /// `self + c * m * other`.
    pub fn add_mul(&self, c: &C, m: &Monomial, other: &Self, order: &ModuleOrder) -> Self {
        Vector {
            terms: merge_scaled(&self.terms, c, m, &other.terms, order),
        }
    }
}

/// Merges `a + c * m * b` where both inputs are sorted descending.
pub(crate) fn merge_scaled<C: Coeff>(
    a: &[(Term, C)],
    c: &C,
    m: &Monomial,
    b: &[(Term, C)],
    order: &ModuleOrder,
) -> Vec<(Term, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut scaled = b.iter().map(|(t, d)| (t.mul(m), d.mul(c))).peekable();
    while let Some((bt, _)) = scaled.peek() {
        if i >= a.len() {
            break;
        }
        match order.cmp(&a[i].0, bt) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => out.push(scaled.next().unwrap()),
            Ordering::Equal => {
                let (bt, bc) = scaled.next().unwrap();
                let s = a[i].1.add(&bc);
                if !s.is_zero() {
                    out.push((bt, s));
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(scaled);
    out
}
