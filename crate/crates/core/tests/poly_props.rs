mod common;

use chiwb::corpus::{conjecture_corpus, CorpusConfig};
use chiwb::parse::{parse_polynomial, parse_session, Command};
use chiwb::{Coeff, Error, Field, Monomial, Polynomial, Rational, Result, RingRef};
use common::*;
use proptest::prelude::*;

type Terms = Vec<(Vec<u16>, i64)>;

/// Up to 6 terms of total degree at most 6 in `n` variables.
fn terms(n: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        (prop::collection::vec(0u16..=6, n), -9i64..=9).prop_filter_map("degree <= 6", |(mut e, c)| {
            while e.iter().map(|&x| x as u32).sum::<u32>() > 6 {
                let k = e.iter().position(|&x| x > 0).unwrap();
                e[k] -= 1;
            }
            Some((e, c))
        }),
        0..6,
    )
}

fn build(ring: &RingRef, t: &Terms) -> Polynomial<Q> {
    Polynomial::from_terms(
        ring,
        t.iter()
            .map(|(e, c)| (Monomial::from_exponents(e.clone()), Q::from_i64(*c, Field::Rationals))),
    )
}

fn ring_of(n: usize) -> RingRef {
    qq(&["a", "b", "c", "d"][..n])
}

fn triple() -> impl Strategy<Value = (usize, Terms, Terms, Terms)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), terms(n), terms(n), terms(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((n, a, b, c) in triple()) {
        let r = ring_of(n);
        let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f + &(-&f)).is_zero());
        prop_assert_eq!(&f - &g, &f + &(-&g));
        prop_assert_eq!(&f + &Polynomial::zero(&r), f.clone());
        prop_assert_eq!(&f * &Polynomial::one(&r), f.clone());
    }

    #[test]
    fn lowest_form_is_multiplicative((n, a, b, _) in triple()) {
        let r = ring_of(n);
        let (f, g) = (build(&r, &a), build(&r, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let lf = f.lowest_form().unwrap();
        let lg = g.lowest_form().unwrap();
        prop_assert!(lf.is_homogeneous());
        prop_assert_eq!(lf.degree(), f.order_at_origin());
        prop_assert_eq!((&f * &g).lowest_form().unwrap(), &lf * &lg);
    }

    #[test]
    fn printed_polynomials_reparse((n, a, _, _) in triple()) {
        let r = ring_of(n);
        let f = build(&r, &a);
        let back: Polynomial<Q> = parse_polynomial(&f.to_string(), &r).unwrap();
        prop_assert_eq!(back.terms(), f.terms());
    }
}

#[test]
fn arithmetic_examples() {
    let r = qq(&["x", "y"]);
    let p = |s: &str| poly::<Q>(&r, s);
    assert_eq!(&p("x + y") + &p("x - y"), p("2*x"));
    assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
    assert_eq!(p("y^2 - x^3").lowest_form().unwrap(), p("y^2"));
    assert_eq!(p("x + x^2").lowest_form().unwrap(), p("x"));
    assert!(Polynomial::<Q>::zero(&r).lowest_form().is_err());

    let target = qq(&["x", "u"]);
    let images = [poly::<Q>(&target, "x"), poly::<Q>(&target, "x*u")];
    let sub = p("y^2 - x^3").substitute(&images, &target).unwrap();
    assert_eq!(sub, poly::<Q>(&target, "x^2*u^2 - x^3"));
    let shift = [p("x + 1"), p("y")];
    assert_eq!(p("x").substitute(&shift, &r).unwrap(), p("x + 1"));
}

/// Both evaluations give the same terms, or both are rejected as too large
/// (positions move when the session is reprinted).
fn same_value<C: Coeff>(x: Result<Polynomial<C>>, y: Result<Polynomial<C>>) {
    match (x, y) {
        (Ok(x), Ok(y)) => assert_eq!(x.terms(), y.terms()),
        (Err(Error::TooLarge { msg: a, .. }), Err(Error::TooLarge { msg: b, .. })) => assert_eq!(a, b),
        (x, y) => panic!("evaluations differ: {x:?} vs {y:?}"),
    }
}

/// Reparsing a printed session gives the same statements, and every ideal
/// evaluates to the same term map.
fn assert_session_round_trip(text: &str) {
    let s = parse_session(text).unwrap();
    let printed = s.to_string();
    let again = parse_session(&printed).unwrap();
    assert!(s.commands().eq(again.commands()), "{printed}");
    let mut ring: Option<RingRef> = None;
    for (a, b) in s.commands().zip(again.commands()) {
        match (a, b) {
            (Command::Ring { vars, field, base, .. }, _) => {
                let f = match field {
                    chiwb::parse::FieldSpec::Rationals => Field::Rationals,
                    chiwb::parse::FieldSpec::Prime(p) => Field::prime(*p).unwrap(),
                };
                ring = Some(chiwb::Ring::new(f, vars, chiwb::MonomialOrder::Grevlex, base.len()).unwrap());
            }
            (Command::Ideal { gens: ga, .. }, Command::Ideal { gens: gb, .. }) => {
                let r = ring.as_ref().unwrap();
                for (x, y) in ga.iter().zip(gb) {
                    if r.field() == Field::Rationals {
                        same_value(x.to_polynomial::<Rational>(r), y.to_polynomial::<Rational>(r));
                    } else {
                        same_value(x.to_polynomial::<F>(r), y.to_polynomial::<F>(r));
                    }
                }
            }
            _ => {}
        }
    }
}

#[test]
fn corpus_sessions_round_trip() {
    let cfg = CorpusConfig::default();
    let mut checked = 0;
    for (k, (i, j)) in conjecture_corpus::<F>(&cfg, 30).unwrap().iter().enumerate() {
        let vars = i.ring().vars().join(",");
        let gens = |id: &chiwb::Ideal<F>| {
            if id.gens().is_empty() {
                "0".to_string()
            } else {
                id.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
            }
        };
        let text = format!(
            "# corpus pair {k}\nring A = FF(101)[{vars}];\nideal I = {};\nideal J = {};\nchi I J;\ntransversal I J;\n\
             assert chi I J = 1;\nblowupchi I J points = [ (1: 0, 1/2, -3) (2: 0, 0) ];\nscan decency count=4;\n",
            gens(i),
            gens(j)
        );
        assert_session_round_trip(&text);
        checked += 1;
    }
    assert_eq!(checked, 30);
}

#[test]
fn fixture_sessions_round_trip() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        if parse_session(&text).is_ok() {
            assert_session_round_trip(&text);
            seen += 1;
        }
    }
    assert!(seen >= 5);
}
