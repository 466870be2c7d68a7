//! Tor, Koszul homology and intersection multiplicities.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::report::{Classification, MultiplicityReport};
use crate::ring::{same_ring, Ring};

use super::module::PresentedModule;
use super::resolution::koszul_complex;

/// `Tor_i(M, N)`, from a resolution of `M`.
pub fn tor<C: Coeff>(m: &PresentedModule<C>, n: &PresentedModule<C>, i: usize) -> Result<PresentedModule<C>> {
    if !same_ring(m.ring(), n.ring()) {
        return Err(Error::RingMismatch);
    }
    m.resolution()?.homology_with(n, i)
}

/// `Tor_i(M, N)` for `i` from 0 to the length of the resolution of `M`.
pub fn tor_all<C: Coeff>(m: &PresentedModule<C>, n: &PresentedModule<C>) -> Result<Vec<PresentedModule<C>>> {
    if !same_ring(m.ring(), n.ring()) {
        return Err(Error::RingMismatch);
    }
    let res = m.resolution()?;
    (0..=res.length()).map(|i| res.homology_with(n, i)).collect()
}

/// `dim_k Tor_i(M, N)` for every `i` and their alternating sum.
pub fn euler_characteristic<C: Coeff>(m: &PresentedModule<C>, n: &PresentedModule<C>) -> Result<(Vec<u64>, i64)> {
    let lengths = tor_all(m, n)?
        .iter()
        .map(|t| t.k_dimension())
        .collect::<Result<Vec<_>>>()?;
    Ok((lengths.clone(), alternating_sum(&lengths)))
}

pub(crate) fn alternating_sum(values: &[u64]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Serre's intersection multiplicity of `A/I` and `A/J` at the origin.
pub fn chi<C: Coeff>(i: &Ideal<C>, j: &Ideal<C>) -> Result<MultiplicityReport<C>> {
    if !same_ring(i.ring(), j.ring()) {
        return Err(Error::RingMismatch);
    }
    if !i.in_maximal_ideal() || !j.in_maximal_ideal() {
        return Err(Error::NotInMaximalIdeal);
    }
    let sum = i.sum(j)?;
    if !sum.support_at_origin()? {
        return Err(Error::SupportNotAtOrigin);
    }
    let (lengths, chi) = euler_characteristic(&PresentedModule::cyclic(i), &PresentedModule::cyclic(j))
        .map_err(|e| match e {
            Error::InfiniteLength => Error::Internal("Tor of an origin-supported pair has infinite length".into()),
            e => e,
        })?;
    let dims = (i.krull_dimension()?, j.krull_dimension()?);
    let ambient = i.ring().nvars();
    let mut witnesses = BTreeMap::new();
    witnesses.insert("sum".to_string(), sum);
    Ok(MultiplicityReport {
        dims,
        ambient_dim: ambient,
        tor_lengths: lengths,
        chi,
        e_values: None,
        cone_dimension: None,
        classification: Classification::from_dims(dims.0, dims.1, ambient),
        witnesses,
    })
}

/// `H_i` of the Koszul complex on `seq` tensored with `M`.
pub fn koszul_homology<C: Coeff>(seq: &[Polynomial<C>], m: &PresentedModule<C>, i: usize) -> Result<PresentedModule<C>> {
    if seq.iter().any(|f| !same_ring(f.ring(), m.ring())) {
        return Err(Error::RingMismatch);
    }
    koszul_complex(m.ring(), seq).homology_with(m, i)
}

/// `sum_i (-1)^i dim_k H_i(seq; M)`.
pub fn koszul_euler<C: Coeff>(seq: &[Polynomial<C>], m: &PresentedModule<C>) -> Result<i64> {
    if seq.iter().any(|f| !same_ring(f.ring(), m.ring())) {
        return Err(Error::RingMismatch);
    }
    let k = koszul_complex(m.ring(), seq);
    let mut lengths = Vec::new();
    for i in 0..=k.length() {
        lengths.push(k.homology_with(m, i)?.k_dimension()?);
    }
    Ok(alternating_sum(&lengths))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatBaseChangeReport {
    /// `dim_k B / m_A B`.
    pub rank: u64,
    pub chi_a: i64,
    pub chi_b: i64,
}

/// Compares `chi` over `A` with `chi` over `B = A[w]/ext`.
///
/// `ext` lives in a ring whose leading variables are those of `A`, followed
/// by the adjoined ones. `B` must be module-finite over `A`; flatness is the
/// caller's claim, and a failure of `chi_B = r chi_A` is reported as
/// `AssertionFailed`.
pub fn flat_base_change_check<C: Coeff>(i: &Ideal<C>, j: &Ideal<C>, ext: &Ideal<C>) -> Result<FlatBaseChangeReport> {
    let a = i.ring();
    let p = ext.ring();
    let n = a.nvars();
    if !same_ring(a, j.ring()) || p.field() != a.field() || p.nvars() < n || p.vars()[..n] != a.vars()[..] {
        return Err(Error::RingMismatch);
    }
    let extra = p.nvars() - n;
    check_module_finite(ext, n, extra)?;

    let x_ideal = Ideal::of_variables(p, &(0..n).collect::<Vec<_>>());
    let rank = ext
        .sum(&x_ideal)?
        .vector_space_dimension()?
        .ok_or(Error::NotModuleFinite)?;

    let chi_a = chi(i, j)?.chi;

    let embed: Vec<Polynomial<C>> = (0..n).map(|k| Polynomial::var(p, k)).collect();
    let res_a = PresentedModule::cyclic(i).resolution()?;
    let res_p = res_a.map_entries(p, |f| f.substitute(&embed, p).expect("variables map into the extension"));
    let n_b = PresentedModule::cyclic(&ext.sum(&j.map(&embed, p)?)?);
    let mut lengths = Vec::new();
    for k in 0..=res_p.length() {
        lengths.push(res_p.homology_with(&n_b, k)?.k_dimension()?);
    }
    let chi_b = alternating_sum(&lengths);
    let report = FlatBaseChangeReport { rank, chi_a, chi_b };
    if chi_b != rank as i64 * chi_a {
        return Err(Error::AssertionFailed(format!(
            "flat base change: chi_B = {chi_b}, r = {rank}, chi_A = {chi_a}"
        )));
    }
    Ok(report)
}

/// `k[x, w]/ext` is finite over `k[x]` when, under an order eliminating
/// `w`, every `w_j` has a pure power among the leading monomials.
fn check_module_finite<C: Coeff>(ext: &Ideal<C>, n: usize, extra: usize) -> Result<()> {
    let p = ext.ring();
    let mut names: Vec<String> = p.vars()[n..].to_vec();
    names.extend(p.vars()[..n].iter().cloned());
    let q = Ring::with_budget(p.field(), &names, MonomialOrder::Elimination(extra), 0, p.budget().clone())?;
    let images: Vec<Polynomial<C>> = (0..p.nvars())
        .map(|k| Polynomial::var(&q, if k < n { k + extra } else { k - n }))
        .collect();
    let lead = ext.map(&images, &q)?.lead_monomials()?;
    for w in 0..extra {
        let pure = lead.iter().any(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(k, &e)| (k == w) == (e > 0))
        });
        if !pure {
            return Err(Error::NotModuleFinite);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rational};
    use crate::homology::Matrix;
    use crate::ring::RingRef;

    type P = Polynomial<Rational>;
    type M = PresentedModule<Rational>;

    fn ring(vars: &[&str]) -> RingRef {
        Ring::simple(Field::Rationals, vars).unwrap()
    }

    #[test]
    fn tor_examples() {
        let r = ring(&["x", "y"]);
        let x = P::var(&r, 0);
        let y = P::var(&r, 1);
        let ax = M::cyclic(&Ideal::principal(x.clone()));
        let ay = M::cyclic(&Ideal::principal(y.clone()));
        assert_eq!(tor(&ax, &ay, 0).unwrap().k_dimension().unwrap(), 1);
        assert!(tor(&ax, &ay, 1).unwrap().is_canonical_zero());
        assert!(tor(&ax, &ay, 5).unwrap().is_canonical_zero());

        let r1 = ring(&["x"]);
        let x1 = M::cyclic(&Ideal::principal(P::var(&r1, 0)));
        assert_eq!(tor(&x1, &x1, 1).unwrap().k_dimension().unwrap(), 1);
    }

    #[test]
    fn chi_examples() {
        let r = ring(&["x", "y"]);
        let x = P::var(&r, 0);
        let y = P::var(&r, 1);
        let cusp = Ideal::principal(&y.pow(2) - &x.pow(3));
        assert_eq!(chi(&Ideal::principal(x.clone()), &Ideal::principal(y.clone())).unwrap().chi, 1);
        let rep = chi(&cusp, &Ideal::principal(y.clone())).unwrap();
        assert_eq!(rep.chi, 3);
        assert_eq!(rep.tor_lengths, vec![3, 0]);
        assert!(rep.classification.positivity_case);
        assert_eq!(chi(&cusp, &Ideal::principal(x.clone())).unwrap().chi, 2);

        let unit_line = Ideal::principal(&x - &P::one(&r));
        assert_eq!(chi(&unit_line, &Ideal::principal(y)).unwrap_err(), Error::NotInMaximalIdeal);
    }

    #[test]
    fn two_planes_meet_diagonal_plane_twice() {
        let r = ring(&["x", "y", "u", "v"]);
        let v = |i| P::var(&r, i);
        let i = Ideal::new(&r, vec![&v(0) * &v(2), &v(0) * &v(3), &v(1) * &v(2), &v(1) * &v(3)]);
        let j = Ideal::new(&r, vec![&v(0) - &v(2), &v(1) - &v(3)]);
        let rep = chi(&i, &j).unwrap();
        assert_eq!(rep.chi, 2);
        assert_eq!(rep.dims, (2, 2));
    }

    #[test]
    fn koszul_examples() {
        let r = ring(&["x", "y"]);
        let x = P::var(&r, 0);
        let y = P::var(&r, 1);
        let a = M::free(&r, 1);
        let seq = [x.clone(), y.clone()];
        assert_eq!(koszul_homology(&seq, &a, 0).unwrap().k_dimension().unwrap(), 1);
        assert!(koszul_homology(&seq, &a, 1).unwrap().is_canonical_zero());
        assert_eq!(koszul_euler(&seq, &a).unwrap(), 1);
        let sq = M::cyclic(&Ideal::principal(x.pow(2)));
        assert_eq!(koszul_euler(&[&x - &y], &sq).unwrap(), 2);
        let line = M::cyclic(&Ideal::principal(x.clone()));
        assert_eq!(koszul_euler(&seq, &line).unwrap(), 0);

        let r1 = ring(&["x"]);
        let x1 = P::var(&r1, 0);
        let m = M::new(Matrix::row(&r1, vec![x1.clone()]));
        assert_eq!(koszul_homology(&[x1], &m, 1).unwrap().k_dimension().unwrap(), 1);
    }

    #[test]
    fn flat_base_change_examples() {
        let a = ring(&["x"]);
        let x = P::var(&a, 0);
        let b = ring(&["x", "w"]);
        let w = P::var(&b, 1);
        let xb = P::var(&b, 0);
        let rep = flat_base_change_check(
            &Ideal::principal(x.pow(2)),
            &Ideal::zero(&a),
            &Ideal::principal(&w.pow(2) - &xb),
        )
        .unwrap();
        assert_eq!(rep, FlatBaseChangeReport { rank: 2, chi_a: 2, chi_b: 4 });

        let rep = flat_base_change_check(&Ideal::principal(x.clone()), &Ideal::zero(&a), &Ideal::zero(&a)).unwrap();
        assert_eq!((rep.rank, rep.chi_b), (1, rep.chi_a));

        let rep = flat_base_change_check(
            &Ideal::principal(x.clone()),
            &Ideal::zero(&a),
            &Ideal::principal(&w.pow(3) - &xb),
        )
        .unwrap();
        assert_eq!((rep.rank, rep.chi_a, rep.chi_b), (3, 1, 3));

        let not_finite = Ideal::principal(&(&xb * &w) - &P::one(&b));
        assert_eq!(
            flat_base_change_check(&Ideal::principal(x), &Ideal::zero(&a), &not_finite),
            Err(Error::NotModuleFinite)
        );
    }
}
