//! Hilbert–Samuel functions, tangent cones and point multiplicities.

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::Ideal;
use crate::homology::{chi, PresentedModule};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::report::MultiplicityReport;
use crate::ring::same_ring;

/// When to accept a run of finite differences as the limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stabilization {
    /// Number of consecutive equal differences required.
    pub window: usize,
    /// Largest power of the ideal tried.
    pub cap: usize,
}

impl Default for Stabilization {
    fn default() -> Self {
        Stabilization { window: 3, cap: 30 }
    }
}

/// `dim_k M / q^n M`.
pub fn hs_length<C: Coeff>(m: &PresentedModule<C>, q: &Ideal<C>, n: u32) -> Result<u64> {
    if !same_ring(m.ring(), q.ring()) {
        return Err(Error::RingMismatch);
    }
    m.quotient_by_ideal(&q.power(n))?.k_dimension()
}

/// `e_q(M, d)`: zero when `dim M < d`, otherwise the stabilized `d`-th
/// difference of `n -> dim_k M / q^n M`.
pub fn hs_multiplicity<C: Coeff>(m: &PresentedModule<C>, q: &Ideal<C>, d: usize) -> Result<u64> {
    hs_multiplicity_with(m, q, d, Stabilization::default())
}

pub fn hs_multiplicity_with<C: Coeff>(
    m: &PresentedModule<C>,
    q: &Ideal<C>,
    d: usize,
    stab: Stabilization,
) -> Result<u64> {
    if !same_ring(m.ring(), q.ring()) {
        return Err(Error::RingMismatch);
    }
    let Some(dim) = m.krull_dimension()? else {
        return Ok(0);
    };
    if dim < d {
        return Ok(0);
    }
    if dim > d {
        return Err(Error::DimensionExceedsDegree { dim, degree: d });
    }
    let mut values: Vec<i64> = Vec::new();
    let mut last: Option<i64> = None;
    let mut run = 0;
    for n in 0..=stab.cap {
        values.push(hs_length(m, q, n as u32)? as i64);
        if values.len() <= d {
            continue;
        }
        let diff = finite_difference(&values[values.len() - d - 1..]);
        if last == Some(diff) {
            run += 1;
        } else {
            last = Some(diff);
            run = 1;
        }
        if run >= stab.window {
            return u64::try_from(diff)
                .map_err(|_| Error::Internal(format!("negative Hilbert–Samuel difference {diff}")));
        }
    }
    Err(Error::NoStabilization { cap: stab.cap })
}

/// `d`-th forward difference at the start of `window` (length `d + 1`).
fn finite_difference(window: &[i64]) -> i64 {
    let mut v = window.to_vec();
    while v.len() > 1 {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
    }
    v[0]
}

/// Ideal of lowest forms of the elements of `I` localized at the origin.
///
/// The generators are homogenized by a new leading variable `h` and a basis
/// is computed for the degree order that breaks ties by higher powers of `h`,
/// so that dehomogenized basis elements form a standard basis for the local
/// degree order; their lowest forms generate the tangent cone.
pub fn tangent_cone<C: Coeff>(i: &Ideal<C>) -> Result<Ideal<C>> {
    let ring = i.ring();
    if !i.in_maximal_ideal() {
        return Err(Error::NotInMaximalIdeal);
    }
    if i.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if i.is_homogeneous() {
        return Ok(i.clone());
    }
    let h = ring.fresh_name("h");
    let big = ring.prepend_vars(&[h], MonomialOrder::DegLex)?;
    let gens = i.gens().iter().map(|f| homogenize(f, &big)).collect();
    let basis = Ideal::new(&big, gens).groebner()?;
    let forms = basis
        .iter()
        .map(|g| {
            let f = dehomogenize(g, ring);
            f.lowest_form()
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, forms).reduced()
}

fn homogenize<C: Coeff>(f: &Polynomial<C>, big: &crate::ring::RingRef) -> Polynomial<C> {
    let top = f.degree().unwrap_or(0);
    Polynomial::from_terms(
        big,
        f.terms().iter().map(|(m, c)| {
            let e = (top - m.degree()) as u16;
            let exps = std::iter::once(e).chain(m.exponents().iter().copied());
            (Monomial::from_exponents(exps), c.clone())
        }),
    )
}

fn dehomogenize<C: Coeff>(f: &Polynomial<C>, ring: &crate::ring::RingRef) -> Polynomial<C> {
    Polynomial::from_terms(ring, f.terms().iter().map(|(m, c)| (m.truncated_front(1), c.clone())))
}

/// `e(A/I)` at the origin, read off the Hilbert series of the tangent cone.
pub fn point_multiplicity<C: Coeff>(i: &Ideal<C>) -> Result<u64> {
    let cone = tangent_cone(i)?;
    let hs = cone.quotient_hilbert_series()?.reduced();
    u64::try_from(hs.multiplicity()).map_err(|_| Error::Internal("non-positive multiplicity".into()))
}

/// `chi`, the point multiplicities of both sides and the dimension of the
/// intersection of their tangent cones; the pair is transverse when that
/// dimension is zero.
pub fn transversality_check<C: Coeff>(i: &Ideal<C>, j: &Ideal<C>) -> Result<MultiplicityReport<C>> {
    let mut report = chi(i, j)?;
    let ci = tangent_cone(i)?;
    let cj = tangent_cone(j)?;
    let cone_sum = ci.sum(&cj)?;
    let t = cone_sum.krull_dimension()?;
    report.e_values = Some((point_multiplicity(i)?, point_multiplicity(j)?));
    report.cone_dimension = Some(t);
    report.classification.transverse = Some(t == 0);
    report.witnesses.insert("cone_left".into(), ci);
    report.witnesses.insert("cone_right".into(), cj);
    report.witnesses.insert("cone_sum".into(), cone_sum);
    Ok(report)
}

impl<C: Coeff> MultiplicityReport<C> {
    /// Whether `chi = e(A/I) e(A/J)`; `None` before multiplicities are known.
    pub fn equality_holds(&self) -> Option<bool> {
        self.e_product().map(|e| self.chi == e as i64)
    }

    /// Whether `chi >= e(A/I) e(A/J)`.
    pub fn lower_bound_holds(&self) -> Option<bool> {
        self.e_product().map(|e| self.chi >= e as i64)
    }

    /// Whether "transverse implies equality" holds on this instance.
    pub fn tennison_holds(&self) -> Option<bool> {
        let transverse = self.classification.transverse?;
        Some(!transverse || self.equality_holds()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rational};
    use crate::ring::{Ring, RingRef};

    type P = Polynomial<Rational>;
    type M = PresentedModule<Rational>;

    fn plane() -> (RingRef, P, P) {
        let r = Ring::simple(Field::Rationals, &["x", "y"]).unwrap();
        let x = P::var(&r, 0);
        let y = P::var(&r, 1);
        (r, x, y)
    }

    #[test]
    fn hs_length_examples() {
        let (r, x, y) = plane();
        let m = Ideal::maximal(&r);
        assert_eq!(hs_length(&M::free(&r, 1), &m, 2).unwrap(), 3);
        let cusp = M::cyclic(&Ideal::principal(&y.pow(2) - &x.pow(3)));
        assert_eq!(hs_length(&cusp, &m, 3).unwrap(), 5);
        assert_eq!(hs_length(&cusp, &m, 0).unwrap(), 0);
    }

    #[test]
    fn hs_multiplicity_examples() {
        let (r, x, y) = plane();
        let m = Ideal::maximal(&r);
        assert_eq!(hs_multiplicity(&M::free(&r, 1), &m, 2).unwrap(), 1);
        let cusp = M::cyclic(&Ideal::principal(&y.pow(2) - &x.pow(3)));
        assert_eq!(hs_multiplicity(&cusp, &m, 1).unwrap(), 2);
        assert_eq!(hs_multiplicity(&M::cyclic(&Ideal::principal(x.clone())), &m, 2).unwrap(), 0);
        assert_eq!(
            hs_multiplicity(&M::free(&r, 1), &m, 1),
            Err(Error::DimensionExceedsDegree { dim: 2, degree: 1 })
        );
        let tight = Stabilization { window: 3, cap: 2 };
        assert_eq!(
            hs_multiplicity_with(&cusp, &m, 1, tight),
            Err(Error::NoStabilization { cap: 2 })
        );
    }

    #[test]
    fn tangent_cone_examples() {
        let (r, x, y) = plane();
        let cusp = Ideal::principal(&y.pow(2) - &x.pow(3));
        assert!(tangent_cone(&cusp).unwrap().equals(&Ideal::principal(y.pow(2))).unwrap());
        let parabola = Ideal::principal(&y - &x.pow(2));
        assert!(tangent_cone(&parabola).unwrap().equals(&Ideal::principal(y.clone())).unwrap());
        let homog = Ideal::new(&r, vec![&x * &y]);
        assert!(tangent_cone(&homog).unwrap().equals(&homog).unwrap());
        // not principal: the cone of (y - x^2, x y) is (y, x^3)
        let i = Ideal::new(&r, vec![&y - &x.pow(2), &x * &y]);
        let expected = Ideal::new(&r, vec![y.clone(), x.pow(3)]);
        assert!(tangent_cone(&i).unwrap().equals(&expected).unwrap());
    }

    #[test]
    fn point_multiplicity_examples() {
        let (r, x, y) = plane();
        assert_eq!(point_multiplicity(&Ideal::principal(&y.pow(2) - &x.pow(3))).unwrap(), 2);
        assert_eq!(point_multiplicity(&Ideal::<Rational>::zero(&r)).unwrap(), 1);
        assert_eq!(point_multiplicity(&Ideal::principal(&y - &x.pow(2))).unwrap(), 1);
    }

    #[test]
    fn transversality_examples() {
        let (_, x, y) = plane();
        let cusp = Ideal::principal(&y.pow(2) - &x.pow(3));
        let rep = transversality_check(&cusp, &Ideal::principal(x.clone())).unwrap();
        assert_eq!((rep.chi, rep.e_product(), rep.cone_dimension), (2, Some(2), Some(0)));
        assert_eq!(rep.classification.transverse, Some(true));
        assert_eq!(rep.equality_holds(), Some(true));

        let rep = transversality_check(&cusp, &Ideal::principal(y.clone())).unwrap();
        assert_eq!((rep.chi, rep.e_product(), rep.cone_dimension), (3, Some(2), Some(1)));
        assert_eq!(rep.classification.transverse, Some(false));
        assert_eq!(rep.tennison_holds(), Some(true));

        let rep = transversality_check(&Ideal::principal(x), &Ideal::principal(y)).unwrap();
        assert_eq!((rep.chi, rep.e_product()), (1, Some(1)));
        assert_eq!(rep.classification.transverse, Some(true));
    }
}
