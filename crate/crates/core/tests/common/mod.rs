//! Oracles and instance builders shared by the integration tests.
#![allow(dead_code)]

use chiwb::corpus::{complementary_pair, homogeneous_ideal, homogeneous_pair, CorpusConfig, IdealPair};
use chiwb::homology::{in_column_span, syzygies};
use chiwb::{Coeff, Fp, Ideal, Matrix, Polynomial, PresentedModule, Rational, Result, Ring, RingRef};
use chiwb::{Field, Monomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn qq(vars: &[&str]) -> RingRef {
    Ring::simple(Field::Rationals, vars).unwrap()
}

pub fn ff(vars: &[&str]) -> RingRef {
    Ring::simple(Field::Prime(101), vars).unwrap()
}

pub fn poly<C: Coeff>(ring: &RingRef, text: &str) -> Polynomial<C> {
    chiwb::parse::parse_polynomial(text, ring).unwrap()
}

pub fn ideal<C: Coeff>(ring: &RingRef, gens: &[&str]) -> Ideal<C> {
    Ideal::new(ring, gens.iter().map(|g| poly(ring, g)).collect())
}

pub type Q = Rational;
pub type F = Fp;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Division of `f` by the list `g` in the given order, returning the
/// remainder. Written from scratch so that checks on computed bases do not
/// reuse the engine's reducer.
pub fn remainder<C: Coeff>(f: &Polynomial<C>, g: &[Polynomial<C>]) -> Polynomial<C> {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(&ring);
    while let Some((m, c)) = p.leading_term().cloned() {
        let divisor = g
            .iter()
            .find(|h| h.leading_monomial().is_some_and(|hm| hm.divides(&m)));
        match divisor {
            Some(h) => {
                let (hm, hc) = h.leading_term().unwrap();
                let q = m.quotient(hm).unwrap();
                p = &p - &h.mul_term(&q, &c.div(hc).unwrap());
            }
            None => {
                let t = Polynomial::monomial(&ring, m, c);
                rem = &rem + &t;
                p = &p - &t;
            }
        }
    }
    rem
}

pub fn s_polynomial<C: Coeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Polynomial<C> {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.quotient(fm).unwrap(), &fc.inv().unwrap());
    let b = g.mul_term(&l.quotient(gm).unwrap(), &gc.inv().unwrap());
    &a - &b
}

/// Every S-polynomial of `basis` leaves remainder zero on division by it.
pub fn buchberger_criterion<C: Coeff>(basis: &[Polynomial<C>]) -> bool {
    (0..basis.len()).all(|a| {
        (a + 1..basis.len()).all(|b| remainder(&s_polynomial(&basis[a], &basis[b]), basis).is_zero())
    })
}

/// `d_{i-1} d_i = 0`, by explicit entry sums.
pub fn composes_to_zero<C: Coeff>(d1: &Matrix<C>, d2: &Matrix<C>) -> bool {
    let ring = d1.ring();
    (0..d1.nrows()).all(|r| {
        (0..d2.ncols()).all(|c| {
            let mut acc = Polynomial::zero(ring);
            for k in 0..d1.ncols() {
                acc = &acc + &(d1.entry(r, k) * d2.entry(k, c));
            }
            acc.is_zero()
        })
    })
}

/// Checks that the resolution of `m` is a complex, that `ker d_i = im d_{i+1}`
/// for every `i >= 1` and, for an unpruned cyclic presentation, that
/// `im d_1` is the relation module.
pub fn resolution_is_exact<C: Coeff>(m: &PresentedModule<C>) -> Result<bool> {
    let res = m.resolution()?;
    let len = res.length();
    for i in 2..=len {
        if !composes_to_zero(res.differential(i - 1), res.differential(i)) {
            return Ok(false);
        }
    }
    for i in 1..=len {
        let kernel = syzygies(res.differential(i))?;
        for col in kernel.columns() {
            if col.iter().all(|p| p.is_zero()) {
                continue;
            }
            if i == len || !in_column_span(res.differential(i + 1), col)? {
                return Ok(false);
            }
        }
    }
    if len >= 1 && res.ranks()[0] == m.rank() {
        let d1 = res.differential(1);
        for col in m.relations().columns() {
            if !in_column_span(d1, col)? {
                return Ok(false);
            }
        }
        for col in d1.columns() {
            if !in_column_span(m.relations(), col)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A pair with finite-colength sum in two or three variables over `F_101`.
pub fn finite_pair(seed: u64) -> IdealPair<F> {
    let mut rng = rng(seed);
    let cfg = CorpusConfig::default();
    let ring = cfg.affine(rng.gen_range(2..=3)).unwrap();
    if rng.gen_bool(0.5) {
        homogeneous_pair(&ring, &mut rng).unwrap()
    } else {
        let codim = rng.gen_range(1..ring.nvars());
        complementary_pair(&ring, &mut rng, codim).unwrap()
    }
}

/// A random ideal of `F_101[x, y(, z)]` inside the maximal ideal.
pub fn random_ideal(seed: u64) -> Ideal<F> {
    let mut rng = rng(seed);
    let cfg = CorpusConfig::default();
    let ring = cfg.affine(rng.gen_range(2..=3)).unwrap();
    if rng.gen_bool(0.5) {
        homogeneous_ideal(&ring, &mut rng).unwrap()
    } else {
        let codim = rng.gen_range(1..ring.nvars());
        complementary_pair(&ring, &mut rng, codim).unwrap().0
    }
}

/// Standard monomials of a monomial ideal in each degree up to `top`, by
/// enumeration.
pub fn standard_monomial_counts(gens: &[Monomial], nvars: usize, top: u32) -> Vec<i64> {
    let mut counts = vec![0i64; top as usize + 1];
    let mut e = vec![0u16; nvars];
    loop {
        let d: u32 = e.iter().map(|&x| x as u32).sum();
        if d <= top {
            let m = Monomial::from_exponents(e.clone());
            if !gens.iter().any(|g| g.divides(&m)) {
                counts[d as usize] += 1;
            }
        }
        // odometer over exponents 0..=top
        let Some(pos) = e.iter().position(|&x| (x as u32) < top) else {
            break;
        };
        e[pos] += 1;
        e[..pos].iter_mut().for_each(|x| *x = 0);
    }
    counts
}

pub fn qv(values: &[i64]) -> Vec<Q> {
    values.iter().map(|&v| Q::from_integer(v.into())).collect()
}
