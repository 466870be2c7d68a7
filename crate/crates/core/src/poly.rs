//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::ring::{same_ring, RingRef};

/// A polynomial with terms sorted by the ring's order, leading term first.
/// Zero coefficients are never stored.
#[derive(Clone)]
pub struct Polynomial<C> {
    ring: RingRef,
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Coeff> Eq for Polynomial<C> {}

impl<C: Coeff> std::hash::Hash for Polynomial<C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(ring: &RingRef) -> Self {
        assert!(
            C::supports(ring.field()),
            "coefficient type does not match field {}",
            ring.field()
        );
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: C) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    pub fn from_int(ring: &RingRef, n: i64) -> Self {
        Self::constant(ring, C::from_i64(n, ring.field()))
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::monomial(ring, Monomial::variable(ring.nvars(), i, 1), C::one(ring.field()))
    }

    /// The variable called `name`; panics when absent.
    pub fn var_named(ring: &RingRef, name: &str) -> Self {
        let i = ring
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable `{name}` in {ring}"));
        Self::var(ring, i)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: C) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(ring: &RingRef, terms: I) -> Self {
        let mut p = Self::zero(ring);
        p.terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        p.normalize();
        p
    }

    /// Builds a polynomial from terms already sorted descending and free of
    /// duplicates and zeros.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, C)>) -> Self {
        let p = Polynomial {
            ring: ring.clone(),
            terms,
        };
        debug_assert!(p.is_canonical());
        p
    }

    fn normalize(&mut self) {
        let order = self.ring.order().clone();
        self.terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        self.terms = out;
    }

    fn is_canonical(&self) -> bool {
        let order = self.ring.order();
        self.terms.iter().all(|(m, c)| !c.is_zero() && m.nvars() == self.ring.nvars())
            && self
                .terms
                .windows(2)
                .all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
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

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_unit()
    }

    pub fn constant_term(&self) -> C {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(self.ring.field()),
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff_of(&self, m: &Monomial) -> C {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or_else(|| C::zero(self.ring.field()), |(_, c)| c.clone())
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// The homogeneous component of lowest total degree.
    pub fn lowest_form(&self) -> Result<Self> {
        let d = self.order_at_origin().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_component(d))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| {
            (m.clone(), if negate { c.neg() } else { c.clone() })
        }));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if self.terms.len() < other.terms.len() {
            return other.try_mul(self);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        // all products at once, then one sort: merging term by term clones
        // the accumulator for every term of the shorter factor
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &other.terms {
            for (n, d) in &self.terms {
                terms.push((n.mul(m), d.mul(c)));
            }
        }
        Ok(Self::from_terms(&self.ring, terms))
    }

    /// `self * c * m`; multiplying by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, d)| (t.mul(m), d.mul(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.clone(), d.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            terms.push((t.quotient(m)?, c.clone()));
        }
        Some(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `self / divisor` when the division is exact, `None` otherwise.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, C)> = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let q = m.quotient(lm)?;
            let qc = c.div(lc).expect("nonzero leading coefficient");
            rem = &rem - &divisor.mul_term(&q, &qc);
            quot.push((q, qc));
        }
        // quotient terms were produced in descending order
        Some(Self::from_sorted_terms(&self.ring, quot))
    }

    /// Applies the ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial<C>], target: &RingRef) -> Result<Self> {
        if images.len() != self.ring.nvars() {
            let missing = self.ring.vars().get(images.len()).cloned().unwrap_or_default();
            return Err(Error::UnmappedVariable(missing));
        }
        if images.iter().any(|p| !same_ring(p.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial<C>>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Substitution given by variable names; unmapped source variables are
    /// an error.
    pub fn substitute_named(&self, map: &[(&str, Polynomial<C>)], target: &RingRef) -> Result<Self> {
        let mut images = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            match map.iter().find(|(n, _)| n == v) {
                Some((_, p)) => images.push(p.clone()),
                None => return Err(Error::UnmappedVariable(v.clone())),
            }
        }
        self.substitute(&images, target)
    }

    /// Re-expresses the polynomial in a ring with the same variables in the
    /// same positions but possibly another order.
    pub fn reorder(&self, target: &RingRef) -> Self {
        debug_assert_eq!(target.nvars(), self.ring.nvars());
        if same_ring(&self.ring, target) {
            return self.clone();
        }
        Self::from_terms(target, self.terms.iter().cloned())
    }

    /// Embeds into a ring whose variables are `extra` new ones followed by
    /// the variables of this ring.
    pub fn shift_into(&self, target: &RingRef, extra: usize) -> Self {
        debug_assert_eq!(target.nvars(), self.ring.nvars() + extra);
        Self::from_terms(target, self.terms.iter().map(|(m, c)| (m.shifted(extra), c.clone())))
    }

    /// Inverse of [`Polynomial::shift_into`]; `None` if a dropped variable
    /// occurs.
    pub fn unshift(&self, target: &RingRef, extra: usize) -> Option<Self> {
        if self
            .terms
            .iter()
            .any(|(m, _)| m.exponents()[..extra].iter().any(|&e| e > 0))
        {
            return None;
        }
        Some(Self::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.truncated_front(extra), c.clone())),
        ))
    }

    /// Moves `point` to the origin: `f(x) -> f(x + point)`.
    pub fn translate(&self, point: &[C]) -> Self {
        let images: Vec<Self> = (0..self.ring.nvars())
            .map(|i| {
                let v = Self::var(&self.ring, i);
                &v + &Self::constant(&self.ring, point[i].clone())
            })
            .collect();
        self.substitute(&images, &self.ring).expect("images live in the same ring")
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        let field = self.ring.field();
        let mut acc = C::zero(field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Whether variable `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[i] > 0)
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.var_name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.var_name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Operators panic on ring mismatch; the `try_*` methods report it instead.
impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.try_sub(rhs).expect("ring mismatch in -")
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}
