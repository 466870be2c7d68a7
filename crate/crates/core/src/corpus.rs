//! Seeded random instances for the conjecture scans, the acceptance suite and
//! the property tests.
//!
//! Every generator draws from a ChaCha stream keyed by the seed and by the
//! instance family, so a failing instance can be regenerated from its seed.
//! Pairs of ideals are built so that `V(I + J)` is the origin by construction
//! and then checked: a construction that does not meet its own guarantee is an
//! internal error, not something to filter away.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::blowup::{blowup_chi, chart, strict_transform};
use crate::diagonal::TensorModel;
use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::groebner::Ideal;
use crate::homology::{chi, PresentedModule};
use crate::monomial::{Monomial, MonomialOrder};
use crate::multiplicity::transversality_check;
use crate::parse::ScanKind;
use crate::poly::Polynomial;
use crate::ring::{Budget, Ring, RingRef};

pub type IdealPair<C> = (Ideal<C>, Ideal<C>);

/// Field, seed and step budget shared by all generated instances.
#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub field: Field,
    pub seed: u64,
    pub budget: Budget,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            field: Field::Prime(101),
            seed: 0,
            budget: Budget::unlimited(),
        }
    }
}

impl CorpusConfig {
    pub fn new(field: Field, seed: u64) -> Self {
        CorpusConfig {
            field,
            seed,
            ..CorpusConfig::default()
        }
    }

    fn rng(&self, family: Family) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(family as u64);
        rng
    }

    pub fn ring(&self, vars: &[&str], base: usize) -> Result<RingRef> {
        Ring::with_budget(self.field, vars, MonomialOrder::Grevlex, base, self.budget.clone())
    }

    /// `k[x]`, `k[x, y]` or `k[x, y, z]`.
    pub fn affine(&self, n: usize) -> Result<RingRef> {
        self.ring(&["x", "y", "z"][..n], 0)
    }
}

#[derive(Clone, Copy)]
enum Family {
    Conjecture = 1,
    LowerBound,
    Parameter,
    Diagonal,
    Depth,
    Primes,
    Blowup,
}

/// Upper bound on rejected draws per accepted instance.
const ATTEMPTS: usize = 2000;

fn exhausted(what: &str) -> Error {
    Error::Internal(format!("no {what} instance found within {ATTEMPTS} draws"))
}

fn coeff<C: Coeff>(rng: &mut ChaCha8Rng, field: Field) -> C {
    loop {
        let c = C::from_i64(rng.gen_range(-5..=5), field);
        if !c.is_zero() {
            return c;
        }
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, vars: &[usize], degree: u32) -> Monomial {
    let mut e = vec![0u16; nvars];
    for _ in 0..degree {
        e[vars[rng.gen_range(0..vars.len())]] += 1;
    }
    Monomial::from_exponents(e)
}

/// Sum of `terms` random terms in the variables `vars`, each of a degree
/// drawn from `degrees`. Cancellation may leave fewer terms, or zero.
pub fn random_polynomial<C: Coeff>(
    ring: &RingRef,
    rng: &mut ChaCha8Rng,
    vars: &[usize],
    degrees: RangeInclusive<u32>,
    terms: usize,
) -> Polynomial<C> {
    let field = ring.field();
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        (0..terms).map(|_| {
            let d = rng.gen_range(degrees.clone());
            (random_monomial(rng, n, vars, d), coeff(rng, field))
        }),
    )
}

/// A nonzero homogeneous form of degree `d` in all variables.
fn random_form<C: Coeff>(ring: &RingRef, rng: &mut ChaCha8Rng, d: u32) -> Polynomial<C> {
    let all: Vec<usize> = (0..ring.nvars()).collect();
    loop {
        let terms = rng.gen_range(1..=3);
        let f = random_polynomial(ring, rng, &all, d..=d, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Images of the variables under a random invertible linear substitution.
pub fn random_linear_change<C: Coeff>(ring: &RingRef, rng: &mut ChaCha8Rng) -> Vec<Polynomial<C>> {
    let n = ring.nvars();
    let field = ring.field();
    loop {
        let a: Vec<Vec<C>> = (0..n)
            .map(|_| (0..n).map(|_| C::from_i64(rng.gen_range(-2..=2), field)).collect())
            .collect();
        if !is_invertible(a.clone()) {
            continue;
        }
        return a
            .iter()
            .map(|row| {
                let terms = row
                    .iter()
                    .enumerate()
                    .map(|(j, c)| (Monomial::variable(n, j, 1), c.clone()));
                Polynomial::from_terms(ring, terms)
            })
            .collect();
    }
}

fn is_invertible<C: Coeff>(mut a: Vec<Vec<C>>) -> bool {
    let n = a.len();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return false;
        };
        a.swap(col, p);
        let inv = a[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            let f = a[r][col].mul(&inv);
            for c in col..n {
                let v = a[r][c].sub(&f.mul(&a[col][c]));
                a[r][c] = v;
            }
        }
    }
    true
}

fn retry<T>(what: &str, mut draw: impl FnMut() -> Result<Option<T>>) -> Result<T> {
    for _ in 0..ATTEMPTS {
        if let Some(t) = draw()? {
            return Ok(t);
        }
    }
    Err(exhausted(what))
}

/// A random homogeneous ideal: a complete intersection of forms, a linear
/// space, a union of two linear spaces, a monomial ideal, or zero.
pub fn homogeneous_ideal<C: Coeff>(ring: &RingRef, rng: &mut ChaCha8Rng) -> Result<Ideal<C>> {
    let n = ring.nvars();
    let all: Vec<usize> = (0..n).collect();
    let forms = |rng: &mut ChaCha8Rng, c: usize, deg: RangeInclusive<u32>| -> Vec<Polynomial<C>> {
        (0..c)
            .map(|_| {
                let d = rng.gen_range(deg.clone());
                random_form(ring, rng, d)
            })
            .collect()
    };
    Ok(match rng.gen_range(0..10) {
        0..=3 => {
            let c = rng.gen_range(1..=n);
            Ideal::new(ring, forms(rng, c, 1..=2))
        }
        4 | 5 => {
            let c = rng.gen_range(1..=n);
            Ideal::new(ring, forms(rng, c, 1..=1))
        }
        6 | 7 if n >= 2 => {
            let c = rng.gen_range(1..n);
            let a = Ideal::new(ring, forms(rng, c, 1..=1));
            let b = Ideal::new(ring, forms(rng, c, 1..=1));
            a.intersection(&b)?.reduced()?
        }
        8 | 6 | 7 => {
            let k = rng.gen_range(1..=3);
            let gens = (0..k)
                .map(|_| {
                    let d = rng.gen_range(1..=3);
                    Polynomial::monomial(ring, random_monomial(rng, n, &all, d), C::one(ring.field()))
                })
                .collect();
            Ideal::new(ring, gens)
        }
        _ => Ideal::zero(ring),
    })
}

/// Two homogeneous ideals meeting only at the origin. Every component of a
/// homogeneous ideal passes through the origin, so global and local
/// dimensions agree.
pub fn homogeneous_pair<C: Coeff>(ring: &RingRef, rng: &mut ChaCha8Rng) -> Result<IdealPair<C>> {
    retry("homogeneous pair", || {
        let i = homogeneous_ideal(ring, rng)?;
        let j = homogeneous_ideal(ring, rng)?;
        Ok(i.sum(&j)?.support_at_origin()?.then_some((i, j)))
    })
}

/// Complete intersections `I` of codimension `codim` and `J` of the
/// complementary codimension, not homogeneous in general, with
/// `V(I + J) = {0}`.
///
/// In coordinates `x_1..x_a, y_1..y_b`, `J` is generated by
/// `c y_j^e + (terms in y_{<j}) + (terms in the x ideal)` and `I` by
/// `c x_i^k + (terms in x_{<i}) + (combination of the generators of J)`.
/// Modulo `J` the generators of `I` are triangular in the `x`, and modulo
/// the `x` those of `J` are triangular in the `y`, so both vanish only at
/// the origin. A random linear change of coordinates follows.
pub fn complementary_pair<C: Coeff>(ring: &RingRef, rng: &mut ChaCha8Rng, codim: usize) -> Result<IdealPair<C>> {
    let n = ring.nvars();
    if codim == 0 || codim >= n {
        return Err(Error::Precondition(format!(
            "codimension {codim} is not strictly between 0 and {n}"
        )));
    }
    let field = ring.field();
    let all: Vec<usize> = (0..n).collect();
    let (xs, ys) = all.split_at(codim);
    let top = if n == 2 { 3 } else { 2 };
    let pure = |rng: &mut ChaCha8Rng, v: usize| {
        let e = rng.gen_range(1..=top);
        Polynomial::monomial(ring, Monomial::variable(n, v, e), coeff(rng, field))
    };
    retry("complementary pair", || {
        let mut g = Vec::new();
        for (j, &y) in ys.iter().enumerate() {
            let mut p = pure(rng, y);
            if j > 0 && rng.gen_bool(0.5) {
                p = &p + &random_polynomial(ring, rng, &ys[..j], 2..=2, 1);
            }
            for &x in xs {
                if rng.gen_bool(0.5) {
                    let h = random_polynomial(ring, rng, &all, 0..=1, 1);
                    p = &p + &(&Polynomial::var(ring, x) * &h);
                }
            }
            g.push(p);
        }
        let mut f = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            let mut p = pure(rng, x);
            if i > 0 && rng.gen_bool(0.5) {
                p = &p + &random_polynomial(ring, rng, &xs[..i], 2..=2, 1);
            }
            for gj in &g {
                if rng.gen_bool(0.6) {
                    let h = random_polynomial(ring, rng, &all, 0..=1, 1);
                    p = &p + &(gj * &h);
                }
            }
            f.push(p);
        }
        let (mut i, mut j) = (Ideal::new(ring, f), Ideal::new(ring, g));
        if rng.gen_bool(0.8) {
            let change = random_linear_change(ring, rng);
            i = i.map(&change, ring)?;
            j = j.map(&change, ring)?;
        }
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut i, &mut j);
        }
        if !i.sum(&j)?.support_at_origin()? {
            return Err(Error::Internal(format!(
                "constructed pair {i}, {j} meets away from the origin"
            )));
        }
        let complete = |id: &Ideal<C>| -> Result<bool> { Ok(id.krull_dimension()? + id.gens().len() == n) };
        Ok((complete(&i)? && complete(&j)?).then_some((i, j)))
    })
}

/// The corpus shared by the decency, vanishing and positivity scans: pairs
/// in two or three variables, half homogeneous and half complementary
/// complete intersections.
pub fn conjecture_corpus<C: Coeff>(cfg: &CorpusConfig, count: usize) -> Result<Vec<IdealPair<C>>> {
    let mut rng = cfg.rng(Family::Conjecture);
    let rings = [cfg.affine(2)?, cfg.affine(3)?];
    (0..count)
        .map(|_| {
            let ring = &rings[rng.gen_range(0..2)];
            if rng.gen_bool(0.5) {
                homogeneous_pair(ring, &mut rng)
            } else {
                let codim = rng.gen_range(1..ring.nvars());
                complementary_pair(ring, &mut rng, codim)
            }
        })
        .collect()
}

/// Complementary-dimension pairs for the lower-bound and transversality
/// scans.
pub fn lower_bound_corpus<C: Coeff>(cfg: &CorpusConfig, count: usize) -> Result<Vec<IdealPair<C>>> {
    let mut rng = cfg.rng(Family::LowerBound);
    let rings = [cfg.affine(2)?, cfg.affine(3)?];
    (0..count)
        .map(|_| {
            let ring = &rings[rng.gen_range(0..2)];
            let codim = rng.gen_range(1..ring.nvars());
            complementary_pair(ring, &mut rng, codim)
        })
        .collect()
}

/// `M = A/I` with `I` a complete intersection of forms and a system of
/// parameters `seq` for `M`: `#seq = dim M` and `M / (seq) M` has finite
/// length.
#[derive(Clone, Debug)]
pub struct ParameterInstance<C: Coeff> {
    pub ideal: Ideal<C>,
    pub module: PresentedModule<C>,
    pub seq: Vec<Polynomial<C>>,
}

impl<C: Coeff> ParameterInstance<C> {
    pub fn seq_ideal(&self) -> Ideal<C> {
        Ideal::new(self.ideal.ring(), self.seq.clone())
    }
}

pub fn parameter_corpus<C: Coeff>(cfg: &CorpusConfig, count: usize) -> Result<Vec<ParameterInstance<C>>> {
    let mut rng = cfg.rng(Family::Parameter);
    let rings = [cfg.affine(1)?, cfg.affine(2)?, cfg.affine(3)?];
    (0..count)
        .map(|_| {
            let ring = &rings[rng.gen_range(0..3)];
            let n = ring.nvars();
            let all: Vec<usize> = (0..n).collect();
            retry("parameter", || {
                let c = rng.gen_range(0..n);
                let gens: Vec<_> = (0..c)
                    .map(|_| {
                        let d = rng.gen_range(1..=2);
                        random_form(ring, &mut rng, d)
                    })
                    .collect();
                let ideal = Ideal::new(ring, gens);
                if ideal.krull_dimension()? != n - c {
                    return Ok(None);
                }
                let seq: Vec<_> = (c..n)
                    .map(|_| {
                        let d = rng.gen_range(1..=2);
                        let f = random_form(ring, &mut rng, d);
                        if rng.gen_bool(0.4) {
                            &f + &random_polynomial(ring, &mut rng, &all, d + 1..=d + 1, 1)
                        } else {
                            f
                        }
                    })
                    .collect();
                let q = Ideal::new(ring, seq.clone());
                if !ideal.sum(&q)?.support_at_origin()? {
                    return Ok(None);
                }
                Ok(Some(ParameterInstance {
                    module: PresentedModule::cyclic(&ideal),
                    ideal,
                    seq,
                }))
            })
        })
        .collect()
}

/// `I` in `A` and `J` in `B` of a tensor model.
#[derive(Clone, Debug)]
pub struct DiagonalInstance<C: Coeff> {
    pub model: TensorModel,
    pub i: Ideal<C>,
    pub j: Ideal<C>,
}

/// Pairs for the diagonal decomposition, alternating between `A = k[x, y]`
/// with no base and `A = k[s, t, x]` over `R = k[s, t]`. Instances are kept
/// when `C / (I + J)` has dimension at most the number of left variables,
/// the range where `e_Δ` is defined.
pub fn diagonal_corpus<C: Coeff>(cfg: &CorpusConfig, count: usize) -> Result<Vec<DiagonalInstance<C>>> {
    let mut rng = cfg.rng(Family::Diagonal);
    let models = [
        TensorModel::for_ring(&cfg.ring(&["x", "y"], 0)?)?,
        TensorModel::for_ring(&cfg.ring(&["s", "t", "x"], 2)?)?,
    ];
    (0..count)
        .map(|k| {
            let model = &models[k % 2];
            let a = model.left_ring();
            retry("diagonal", || {
                let (i, j_a) = if rng.gen_bool(0.5) {
                    homogeneous_pair(a, &mut rng)?
                } else {
                    let codim = rng.gen_range(1..a.nvars());
                    complementary_pair(a, &mut rng, codim)?
                };
                let j = model.right_copy(&j_a)?;
                let joint = model.embed_left(&i)?.sum(&model.embed_right(&j)?)?;
                if joint.krull_dimension()? > model.left_vars().len() {
                    return Ok(None);
                }
                Ok(Some(DiagonalInstance {
                    model: model.clone(),
                    i,
                    j,
                }))
            })
        })
        .collect()
}

/// Base `{s, t}`, left `{x}`, right `{y}`.
fn vanishing_model(cfg: &CorpusConfig) -> Result<TensorModel> {
    TensorModel::new(&["s", "t"], &["x"], &["y"], cfg.field, cfg.budget.clone())
}

/// Instances where `s` or `t` is a nonzerodivisor on `A/I`, so that the
/// kernel of `R -> A/I` is not the maximal ideal of `R`.
pub fn depth_vanishing_corpus<C: Coeff>(cfg: &CorpusConfig, count: usize) -> Result<Vec<DiagonalInstance<C>>> {
    let mut rng = cfg.rng(Family::Depth);
    let model = vanishing_model(cfg)?;
    let a = model.left_ring().clone();
    let random_ideal = |rng: &mut ChaCha8Rng| -> Result<Ideal<C>> {
        if rng.gen_bool(0.5) {
            homogeneous_ideal(&a, rng)
        } else {
            let codim = rng.gen_range(1..3);
            Ok(complementary_pair(&a, rng, codim)?.0)
        }
    };
    (0..count)
        .map(|_| {
            retry("depth vanishing", || {
                let i = random_ideal(&mut rng)?;
                if i.is_zero() {
                    return Ok(None);
                }
                let s = Polynomial::var(&a, rng.gen_range(0..2));
                if !i.quotient_by(&s)?.equals(&i)? {
                    return Ok(None);
                }
                let j = model.right_copy(&random_ideal(&mut rng)?)?;
                Ok(Some(DiagonalInstance {
                    model: model.clone(),
                    i,
                    j,
                }))
            })
        })
        .collect()
}

/// `a + q(b)` with `q` a univariate polynomial without constant term: linear
/// in `a`, hence prime.
fn base_prime<C: Coeff>(ring: &RingRef, rng: &mut ChaCha8Rng) -> Polynomial<C> {
    let a = rng.gen_range(0..2);
    let terms = rng.gen_range(0..=2);
    let q = random_polynomial(ring, rng, &[1 - a], 1..=2, terms);
    &Polynomial::var(ring, a) + &q
}

/// `v^e + c_{e-1} v^{e-1} + ... + c_0` with `c_k` in the base variables and
/// `c_0` in their maximal ideal.
fn monic_in<C: Coeff>(ring: &RingRef, rng: &mut ChaCha8Rng, v: usize) -> Polynomial<C> {
    let n = ring.nvars();
    let e = rng.gen_range(1..=2u16);
    let mut p = Polynomial::monomial(ring, Monomial::variable(n, v, e), C::one(ring.field()));
    for k in 0..e {
        let lo = if k == 0 { 1 } else { 0 };
        let terms = rng.gen_range(0..=2);
        let c = random_polynomial(ring, rng, &[0, 1], lo..=2, terms);
        p = &p + &(&c * &Polynomial::monomial(ring, Monomial::variable(n, v, k), C::one(ring.field())));
    }
    p
}

/// `I = (p_1, monic in x)` and `J = (p_2, monic in y)` with `p_1`, `p_2`
/// distinct principal primes of `k[s, t]`: `A/I` is free over `R/(p_1)`, so
/// the kernels of `R -> A/I` and `R -> B/J` are `(p_1) != (p_2)`.
pub fn prime_vanishing_corpus<C: Coeff>(cfg: &CorpusConfig, count: usize) -> Result<Vec<DiagonalInstance<C>>> {
    let mut rng = cfg.rng(Family::Primes);
    let model = vanishing_model(cfg)?;
    let (a, b) = (model.left_ring().clone(), model.right_ring().clone());
    (0..count)
        .map(|_| {
            retry("prime vanishing", || {
                let p1 = base_prime::<C>(&a, &mut rng);
                let p2 = base_prime::<C>(&b, &mut rng);
                let p2_in_a = model.identify_right(&Ideal::principal(p2.clone()))?;
                if Ideal::principal(p1.clone()).equals(&p2_in_a)? {
                    return Ok(None);
                }
                let i = Ideal::new(&a, vec![p1, monic_in(&a, &mut rng, 2)]);
                let j = Ideal::new(&b, vec![p2, monic_in(&b, &mut rng, 2)]);
                Ok(Some(DiagonalInstance {
                    model: model.clone(),
                    i,
                    j,
                }))
            })
        })
        .collect()
}

/// A pair with the points where its strict transforms meet, given per chart.
#[derive(Clone, Debug)]
pub struct BlowupInstance<C: Coeff> {
    pub i: Ideal<C>,
    pub j: Ideal<C>,
    pub points: Vec<(usize, Vec<C>)>,
}

/// Field elements tried as coordinates on the exceptional divisor: all of
/// `F_p` for small `p`, small fractions otherwise.
fn candidates<C: Coeff>(field: Field) -> Vec<C> {
    match field {
        Field::Prime(p) if p <= 1000 => (0..p as i64).map(|v| C::from_i64(v, field)).collect(),
        _ => {
            let mut out: Vec<C> = Vec::new();
            for d in 1..=4i64 {
                for n in -8..=8i64 {
                    if let Some(c) = C::from_fraction(&BigInt::from(n), &BigInt::from(d), field) {
                        if !out.contains(&c) {
                            out.push(c);
                        }
                    }
                }
            }
            out
        }
    }
}

/// Chart points on the exceptional divisor where the strict transforms meet,
/// found by trying every candidate coordinate. Only rational points are
/// found; `blowup_chi` reports any that are missed.
pub fn exceptional_points<C: Coeff>(i: &Ideal<C>, j: &Ideal<C>) -> Result<Vec<(usize, Vec<C>)>> {
    let ring = i.ring();
    let d = ring.nvars();
    if d > 3 {
        return Err(Error::Precondition("point search is limited to three variables".into()));
    }
    let values = candidates::<C>(ring.field());
    let zero = C::zero(ring.field());
    let mut points = Vec::new();
    for k in 1..=d {
        let c = chart::<C>(ring, k)?;
        let sum = strict_transform(i, &c)?.sum(&strict_transform(j, &c)?)?;
        if sum.is_unit()? {
            continue;
        }
        let mut u = vec![0usize; d - 1];
        loop {
            let p: Vec<C> = std::iter::once(zero.clone())
                .chain(u.iter().map(|&k| values[k].clone()))
                .collect();
            if sum.gens().iter().all(|g| g.evaluate(&p).is_zero()) {
                points.push((k, p));
            }
            // next tuple
            let Some(pos) = u.iter().position(|&x| x + 1 < values.len()) else {
                break;
            };
            u[pos] += 1;
            u[..pos].iter_mut().for_each(|x| *x = 0);
        }
    }
    Ok(points)
}

fn blowup_instance<C: Coeff>(i: Ideal<C>, j: Ideal<C>) -> Result<Option<BlowupInstance<C>>> {
    let points = exceptional_points(&i, &j)?;
    match blowup_chi(&i, &j, &points) {
        Ok(_) => Ok(Some(BlowupInstance { i, j, points })),
        Err(Error::ResidualSupport(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Hand-picked plane and space pairs with both `chi = e·e` and
/// `chi > e·e`.
pub fn curated_blowup_corpus<C: Coeff>(cfg: &CorpusConfig) -> Result<Vec<BlowupInstance<C>>> {
    let plane = cfg.affine(2)?;
    let space = cfg.affine(3)?;
    let parse = |r: &RingRef, gens: &[&str]| -> Result<Ideal<C>> {
        let gens = gens
            .iter()
            .map(|g| crate::parse::parse_polynomial(g, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(r, gens))
    };
    let pairs: [(&RingRef, &[&str], &[&str]); 10] = [
        (&plane, &["y^2 - x^3"], &["y"]),
        (&plane, &["y^2 - x^3"], &["x"]),
        (&plane, &["x"], &["y"]),
        (&plane, &["y - x^2"], &["y"]),
        (&plane, &["y^2 - x^4"], &["y"]),
        (&plane, &["y^2 - x^3"], &["y^2 - x^3 - x^4"]),
        (&plane, &["x*y"], &["x + y^2"]),
        (&plane, &["y^2 - x^3"], &["y^2 + x^3"]),
        (&space, &["y"], &["x", "y - z^2"]),
        (&space, &["z"], &["x", "y"]),
    ];
    let mut out = Vec::new();
    for (r, a, b) in pairs {
        let inst = blowup_instance(parse(r, a)?, parse(r, b)?)?
            .ok_or_else(|| Error::Internal(format!("curated pair {a:?}, {b:?} has irrational points")))?;
        out.push(inst);
    }
    Ok(out)
}

/// Random plane curve pairs meeting only at the origin, with their rational
/// intersection points on the blowup. Pairs whose blowup points are not all
/// rational are redrawn.
pub fn blowup_corpus<C: Coeff>(cfg: &CorpusConfig, count: usize) -> Result<Vec<BlowupInstance<C>>> {
    let mut rng = cfg.rng(Family::Blowup);
    let plane = cfg.affine(2)?;
    (0..count)
        .map(|_| {
            retry("blowup", || {
                let (i, j) = complementary_pair(&plane, &mut rng, 1)?;
                blowup_instance(i, j)
            })
        })
        .collect()
}

/// One instance of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRecord {
    pub ambient: usize,
    pub dims: (usize, usize),
    pub chi: i64,
    pub e_values: Option<(u64, u64)>,
    pub transverse: Option<bool>,
    /// Whether the hypothesis of the scanned statement holds here.
    pub applies: bool,
    /// Whether the statement holds (vacuously when it does not apply).
    pub holds: bool,
    /// `I; J` as text, to reproduce a violation.
    pub pair: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub seed: u64,
    pub count: usize,
    /// Instances where the hypothesis applies.
    pub checked: usize,
    pub violations: usize,
    pub records: Vec<ScanRecord>,
}

/// Runs one of the conjecture scans on `count` seeded pairs.
pub fn scan<C: Coeff>(kind: ScanKind, cfg: &CorpusConfig, count: usize) -> Result<ScanReport> {
    let records = match kind {
        ScanKind::Decency | ScanKind::Vanishing | ScanKind::Positivity => conjecture_corpus::<C>(cfg, count)?
            .iter()
            .map(|(i, j)| {
                let rep = chi(i, j)?;
                let c = rep.classification;
                let (applies, holds) = match kind {
                    ScanKind::Decency => (true, c.decent),
                    ScanKind::Vanishing => (c.vanishing_case, rep.chi == 0),
                    _ => (c.positivity_case, rep.chi > 0),
                };
                Ok(ScanRecord {
                    ambient: rep.ambient_dim,
                    dims: rep.dims,
                    chi: rep.chi,
                    e_values: None,
                    transverse: None,
                    applies,
                    holds: !applies || holds,
                    pair: format!("{i}; {j}"),
                })
            })
            .collect::<Result<Vec<_>>>()?,
        ScanKind::LowerBound | ScanKind::Tennison => lower_bound_corpus::<C>(cfg, count)?
            .iter()
            .map(|(i, j)| {
                let rep = transversality_check(i, j)?;
                let transverse = rep.classification.transverse;
                let (applies, holds) = if kind == ScanKind::LowerBound {
                    (true, rep.lower_bound_holds() == Some(true))
                } else {
                    (transverse == Some(true), rep.equality_holds() == Some(true))
                };
                Ok(ScanRecord {
                    ambient: rep.ambient_dim,
                    dims: rep.dims,
                    chi: rep.chi,
                    e_values: rep.e_values,
                    transverse,
                    applies,
                    holds: !applies || holds,
                    pair: format!("{i}; {j}"),
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(ScanReport {
        kind,
        seed: cfg.seed,
        count,
        checked: records.iter().filter(|r| r.applies).count(),
        violations: records.iter().filter(|r| !r.holds).count(),
        records,
    })
}
