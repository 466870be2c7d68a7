//! Ideals with cached reduced Gröbner bases, and ideal arithmetic.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};

use super::buchberger::{groebner_basis, Reducers};
use super::hilbert::{minimalize, HilbertSeries};
use super::vector::{ModuleOrder, Vector};

#[derive(Debug)]
struct GbCache<C: Coeff> {
    basis: Vec<Polynomial<C>>,
    reducers: Reducers<C>,
    order: ModuleOrder,
}

/// An ideal given by generators. The reduced Gröbner basis under the ring's
/// order is computed on first use and cached.
#[derive(Clone, Debug)]
pub struct Ideal<C: Coeff> {
    ring: RingRef,
    gens: Vec<Polynomial<C>>,
    gb: OnceLock<Arc<GbCache<C>>>,
}

impl<C: Coeff> Ideal<C> {
    /// Panics if a generator lives in another ring; see [`Ideal::try_new`].
    pub fn new(ring: &RingRef, gens: Vec<Polynomial<C>>) -> Self {
        Self::try_new(ring, gens).expect("generators must live in the ideal's ring")
    }

    pub fn try_new(ring: &RingRef, gens: Vec<Polynomial<C>>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)])
    }

    pub fn principal(f: Polynomial<C>) -> Self {
        let ring = f.ring().clone();
        Self::new(&ring, vec![f])
    }

    /// The ideal generated by the variables with the given indices.
    pub fn of_variables(ring: &RingRef, indices: &[usize]) -> Self {
        Self::new(ring, indices.iter().map(|&i| Polynomial::var(ring, i)).collect())
    }

    /// The maximal ideal of the origin.
    pub fn maximal(ring: &RingRef) -> Self {
        let all: Vec<usize> = (0..ring.nvars()).collect();
        Self::of_variables(ring, &all)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<C>] {
        &self.gens
    }

    fn cache(&self) -> Result<Arc<GbCache<C>>> {
        if let Some(c) = self.gb.get() {
            return Ok(c.clone());
        }
        let order = ModuleOrder::top(&self.ring);
        let vecs: Vec<Vector<C>> = self
            .gens
            .iter()
            .map(|g| Vector::from_column(std::slice::from_ref(g), &order))
            .collect();
        let gb = groebner_basis(&self.ring, &order, vecs)?;
        let basis = gb
            .iter()
            .map(|v| v.to_column(1, &self.ring).remove(0))
            .collect();
        let cache = Arc::new(GbCache {
            basis,
            reducers: Reducers::new(gb),
            order,
        });
        let _ = self.gb.set(cache);
        Ok(self.gb.get().expect("just set").clone())
    }

    /// Reduced Gröbner basis: monic, sorted by leading monomial ascending.
    pub fn groebner(&self) -> Result<Vec<Polynomial<C>>> {
        Ok(self.cache()?.basis.clone())
    }

    /// The ideal with its generators replaced by the reduced basis.
    pub fn reduced(&self) -> Result<Self> {
        let basis = self.groebner()?;
        let out = Ideal::new(&self.ring, basis);
        let _ = out.gb.set(self.cache()?);
        Ok(out)
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let cache = self.cache()?;
        let v = Vector::from_column(std::slice::from_ref(f), &cache.order);
        let r = cache.reducers.reduce(v, &cache.order, self.ring.budget(), true)?;
        Ok(r.to_column(1, &self.ring).remove(0))
    }

    pub fn contains(&self, f: &Polynomial<C>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, by comparing reduced bases.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner()? == other.groebner()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let b = self.groebner()?;
        Ok(b.len() == 1 && b[0].is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Whether every generator vanishes at the origin.
    pub fn in_maximal_ideal(&self) -> bool {
        self.gens.iter().all(|g| g.constant_term().is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn power(&self, n: u32) -> Self {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self).expect("same ring");
            acc = Ideal::new(&self.ring, dedup(acc.gens));
        }
        acc
    }

    /// `I ∩ J` as the `t`-free part of `t I + (1 - t) J`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let t = self.ring.fresh_name("t");
        let big = self.ring.prepend_vars(&[t], MonomialOrder::Elimination(1))?;
        let tv = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &tv;
        let n = 1;
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(&tv * &f.shift_into(&big, n));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.shift_into(&big, n));
        }
        let basis = Ideal::new(&big, gens).groebner()?;
        let kept = basis.iter().filter_map(|p| p.unshift(&self.ring, n)).collect();
        Ok(Ideal::new(&self.ring, kept))
    }

    /// `I : (f)`.
    pub fn quotient_by(&self, f: &Polynomial<C>) -> Result<Self> {
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let meet = self.intersection(&Ideal::principal(f.clone()))?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.div_exact(f).ok_or_else(|| Error::Internal("inexact quotient".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I : J`, the intersection of `I : g` over generators `g` of `J`.
    pub fn quotient(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.gens {
            let q = self.quotient_by(g)?;
            acc = if acc.is_unit()? { q } else { acc.intersection(&q)? };
        }
        Ok(acc)
    }

    /// `I : f^∞`, iterating the quotient until it stabilizes.
    pub fn saturation_by(&self, f: &Polynomial<C>) -> Result<Self> {
        let mut cur = self.reduced()?;
        loop {
            let next = cur.quotient_by(f)?.reduced()?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `I : J^∞`, iterating the quotient until it stabilizes.
    pub fn saturation(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut cur = self.reduced()?;
        loop {
            let next = cur.quotient(other)?.reduced()?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Minimal generators of the leading-term ideal.
    pub fn lead_monomials(&self) -> Result<Vec<Monomial>> {
        let basis = self.groebner()?;
        Ok(minimalize(
            &basis
                .iter()
                .map(|p| p.leading_monomial().unwrap().clone())
                .collect::<Vec<_>>(),
        ))
    }

    /// Hilbert series of `A/in(I)`; for homogeneous `I` under a degree order
    /// this is the Hilbert series of `A/I`.
    pub fn quotient_hilbert_series(&self) -> Result<HilbertSeries> {
        Ok(HilbertSeries::of_monomial_ideal(&self.lead_monomials()?, self.ring.nvars()))
    }

    /// Hilbert series of `A/I` for a monomial ideal.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let mut mons = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            if g.len() != 1 {
                return Err(Error::NonMonomial(g.to_string()));
            }
            mons.push(g.leading_monomial().unwrap().clone());
        }
        Ok(HilbertSeries::of_monomial_ideal(&mons, self.ring.nvars()))
    }

    /// `dim_k A/I`, or `None` when infinite.
    pub fn vector_space_dimension(&self) -> Result<Option<u64>> {
        Ok(self.quotient_hilbert_series()?.total().map(|t| t as u64))
    }

    /// Krull dimension of `A/I`: the largest set of variables independent
    /// modulo the leading ideal of a grevlex basis.
    pub fn krull_dimension(&self) -> Result<usize> {
        let lead = if *self.ring.order() == MonomialOrder::Grevlex {
            self.lead_monomials()?
        } else {
            let r = self.ring.with_order(MonomialOrder::Grevlex)?;
            let gens = self.gens.iter().map(|g| g.reorder(&r)).collect();
            Ideal::new(&r, gens).lead_monomials()?
        };
        if lead.iter().any(|m| m.is_one()) {
            return Err(Error::UnitIdeal);
        }
        Ok(max_independent_set(&lead, self.ring.nvars()))
    }

    /// Whether `V(I)` is contained in the origin. A variable vanishes on
    /// `V(I)` exactly when it is nilpotent in `A/I`; when `A/I` has finite
    /// dimension `N`, that means `x^N ∈ I`.
    pub fn support_at_origin(&self) -> Result<bool> {
        if self.is_unit()? {
            return Ok(true);
        }
        let Some(n) = self.vector_space_dimension()? else {
            return Ok(false);
        };
        for i in 0..self.ring.nvars() {
            let x = Polynomial::var(&self.ring, i);
            let mut p = Polynomial::one(&self.ring);
            for _ in 0..n {
                p = self.normal_form(&(&p * &x))?;
                if p.is_zero() {
                    break;
                }
            }
            if !p.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Applies a ring map to the generators.
    pub fn map(&self, images: &[Polynomial<C>], target: &RingRef) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(images, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, gens))
    }

    /// Same generators in a ring with the same variables and another order.
    pub fn reorder(&self, target: &RingRef) -> Self {
        Ideal::new(target, self.gens.iter().map(|g| g.reorder(target)).collect())
    }
}

fn dedup<C: Coeff>(gens: Vec<Polynomial<C>>) -> Vec<Polynomial<C>> {
    let mut out: Vec<Polynomial<C>> = Vec::with_capacity(gens.len());
    for g in gens {
        let g = g.monic();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Size of the largest variable subset containing the support of no
/// generator.
pub(crate) fn max_independent_set(lead: &[Monomial], nvars: usize) -> usize {
    let supports: Vec<u64> = lead.iter().map(|m| m.support_mask()).collect();
    assert!(nvars < 64, "too many variables for subset search");
    let mut best = 0;
    for s in 0u64..(1u64 << nvars) {
        let size = s.count_ones() as usize;
        if size > best && supports.iter().all(|&g| g & !s != 0) {
            best = size;
        }
    }
    best
}

impl<C: Coeff> std::fmt::Display for Ideal<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rational};
    use crate::ring::Ring;

    type P = Polynomial<Rational>;
    type I = Ideal<Rational>;

    fn setup() -> (RingRef, P, P) {
        let r = Ring::simple(Field::Rationals, &["x", "y"]).unwrap();
        let x = P::var(&r, 0);
        let y = P::var(&r, 1);
        (r, x, y)
    }

    #[test]
    fn groebner_examples() {
        let (r, x, y) = setup();
        let cusp = &y.pow(2) - &x.pow(3);
        assert_eq!(I::new(&r, vec![cusp, x.clone()]).groebner().unwrap(), vec![x.clone(), y.pow(2)]);
        assert!(I::zero(&r).groebner().unwrap().is_empty());
        assert_eq!(I::new(&r, vec![x.clone(), x.pow(2)]).groebner().unwrap(), vec![x]);
    }

    #[test]
    fn ideal_operation_examples() {
        let (r, x, y) = setup();
        let sat = I::principal(&x.pow(2) * &y).saturation_by(&y).unwrap();
        assert!(sat.equals(&I::principal(x.pow(2))).unwrap());
        let meet = I::principal(x.clone()).intersection(&I::principal(y.clone())).unwrap();
        assert!(meet.equals(&I::principal(&x * &y)).unwrap());
        let i = I::new(&r, vec![x.clone(), y.pow(3)]);
        assert!(i.sum(&I::zero(&r)).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn krull_dimension_examples() {
        let (r, x, y) = setup();
        assert_eq!(I::principal(&y.pow(2) - &x.pow(3)).krull_dimension().unwrap(), 1);
        let r3 = Ring::simple(Field::Rationals, &["x", "y", "z"]).unwrap();
        assert_eq!(I::zero(&r3).krull_dimension().unwrap(), 3);
        assert_eq!(I::maximal(&r).krull_dimension().unwrap(), 0);
        assert_eq!(I::unit(&r).krull_dimension(), Err(Error::UnitIdeal));
    }

    #[test]
    fn hilbert_series_examples() {
        let (r, x, y) = setup();
        let hs = I::principal(y.pow(2)).hilbert_series().unwrap().reduced();
        assert_eq!(hs.numerator, vec![1, 1]);
        assert_eq!(hs.denominator_exponent, 1);
        assert!(I::unit(&r).hilbert_series().unwrap().numerator.is_empty());
        let r1 = Ring::simple(Field::Rationals, &["x"]).unwrap();
        let z = I::zero(&r1).hilbert_series().unwrap();
        assert_eq!((z.numerator.clone(), z.denominator_exponent), (vec![1], 1));
        assert!(matches!(I::principal(&x + &y).hilbert_series(), Err(Error::NonMonomial(_))));
    }

    #[test]
    fn support_examples() {
        let (r, x, y) = setup();
        assert!(I::maximal(&r).support_at_origin().unwrap());
        let off = I::new(&r, vec![&x * &(&x - &P::one(&r)), y.clone()]);
        assert!(!off.support_at_origin().unwrap());
        assert!(I::unit(&r).support_at_origin().unwrap());
        assert!(!I::principal(x.clone()).support_at_origin().unwrap());
    }

    #[test]
    fn quotient_by_ideal() {
        let (r, x, y) = setup();
        let i = I::new(&r, vec![x.pow(2), &x * &y]);
        let q = i.quotient(&I::maximal(&r)).unwrap();
        assert!(q.equals(&I::principal(x.clone())).unwrap());
        assert!(i.quotient(&I::zero(&r)).unwrap().is_unit().unwrap());
    }
}
