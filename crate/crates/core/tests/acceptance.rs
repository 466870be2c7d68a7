//! Acceptance criteria. Each criterion runs on its own thread and prints one
//! PASS/FAIL line; the process exits nonzero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::thread;

use chiwb::blowup::{blowup_chi, chart, fulton_verify, ramification_check, vbar_locus};
use chiwb::corpus::{
    blowup_corpus, curated_blowup_corpus, depth_vanishing_corpus, diagonal_corpus, parameter_corpus,
    prime_vanishing_corpus, scan, CorpusConfig,
};
use chiwb::diagonal::{completed_tor, diagonal_decompose};
use chiwb::homology::{chi, euler_characteristic, flat_base_change_check, koszul_euler, tor_all};
use chiwb::multiplicity::hs_multiplicity;
use chiwb::parse::ScanKind;
use chiwb::{Ideal, PresentedModule};
use common::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

macro_rules! tri {
    ($e:expr) => {
        $e.map_err(|e| format!("{}: {e}", stringify!($e)))?
    };
}

fn cfg() -> CorpusConfig {
    CorpusConfig::default()
}

/// Exact chi values, each with an independent oracle.
fn exact_chi() -> Outcome {
    let r = qq(&["x", "y"]);
    let cases: [(&[&str], &[&str], i64); 3] = [(&["x"], &["y"], 1), (&["y^2 - x^3"], &["y"], 3), (&["y^2 - x^3"], &["x"], 2)];
    for (a, b, want) in cases {
        let (i, j) = (ideal::<Q>(&r, a), ideal::<Q>(&r, b));
        let rep = tri!(chi(&i, &j));
        ensure!(rep.chi == want, "chi({i}, {j}) = {}, expected {want}", rep.chi);
        // both are hypersurfaces meeting properly: Tor_0 is all of chi
        let colength = tri!(i.sum(&j)).vector_space_dimension().unwrap().unwrap();
        ensure!(colength as i64 == want, "length of A/(I+J) is {colength}, expected {want}");
    }

    let r4 = qq(&["x", "y", "u", "v"]);
    let i = ideal::<Q>(&r4, &["x*u", "x*v", "y*u", "y*v"]);
    let j = ideal::<Q>(&r4, &["x - u", "y - v"]);
    let two_planes = tri!(chi(&i, &j)).chi;
    ensure!(two_planes == 2, "two planes: chi = {two_planes}");
    // 0 -> A/I -> A/(x,y) + A/(u,v) -> A/(x,y,u,v) -> 0
    let n = PresentedModule::cyclic(&j);
    let term = |gens: &[&str]| -> Result<i64, String> {
        Ok(tri!(euler_characteristic(&PresentedModule::cyclic(&ideal::<Q>(&r4, gens)), &n)).1)
    };
    let (p1, p2, pt) = (term(&["x", "y"])?, term(&["u", "v"])?, term(&["x", "y", "u", "v"])?);
    ensure!((p1, p2, pt) == (1, 1, 0), "additivity terms {p1}, {p2}, {pt}");
    ensure!(two_planes == p1 + p2 - pt, "additivity: {two_planes} != {p1} + {p2} - {pt}");
    Ok("1, 3, 2, 2 with length and additivity oracles".into())
}

fn koszul_equals_hilbert_samuel() -> Outcome {
    let corpus = tri!(parameter_corpus::<F>(&cfg(), 20));
    for inst in &corpus {
        let k = tri!(koszul_euler(&inst.seq, &inst.module));
        let e = tri!(hs_multiplicity(&inst.module, &inst.seq_ideal(), inst.seq.len()));
        ensure!(k == e as i64, "M = A/{}, seq {:?}: Koszul {k}, Hilbert-Samuel {e}", inst.ideal, inst.seq);
    }
    Ok(format!("{} parameter ideals over F_101", corpus.len()))
}

fn diagonal_identity() -> Outcome {
    let corpus = tri!(diagonal_corpus::<F>(&cfg(), 30));
    let mut bases = [0usize; 3];
    for inst in &corpus {
        let rep = tri!(diagonal_decompose(&inst.model, &inst.i, &inst.j));
        ensure!(
            rep.chi_via_diagonal == rep.chi_direct,
            "I = {}, J = {}: {} != {}",
            inst.i,
            inst.j,
            rep.chi_via_diagonal,
            rep.chi_direct
        );
        bases[inst.model.base_vars().len()] += 1;
    }
    ensure!(bases[0] > 0 && bases[2] > 0, "base sizes not both covered: {bases:?}");
    Ok(format!("{} instances, base 0: {}, base 2: {}", corpus.len(), bases[0], bases[2]))
}

fn vanishing_lemmas() -> Outcome {
    for (name, corpus, q) in [
        ("depth", tri!(depth_vanishing_corpus::<F>(&cfg(), 20)), 2),
        ("distinct primes", tri!(prime_vanishing_corpus::<F>(&cfg(), 20)), 1),
    ] {
        ensure!(corpus.len() == 20, "{name}: {} instances", corpus.len());
        for inst in &corpus {
            let t = tri!(completed_tor(&inst.model, &inst.i, &inst.j, q));
            ensure!(
                t.is_canonical_zero(),
                "{name}: completed Tor_{q} of {}, {} is not zero",
                inst.i,
                inst.j
            );
        }
    }
    Ok("Tor_2 = 0 on 20 depth instances, Tor_1 = 0 on 20 prime instances".into())
}

fn conjecture_scans() -> Outcome {
    let mut parts = Vec::new();
    for kind in [ScanKind::Decency, ScanKind::Vanishing, ScanKind::Positivity] {
        let rep = tri!(scan::<F>(kind, &cfg(), 100));
        if let Some(bad) = rep.records.iter().find(|r| !r.holds) {
            return Err(format!("{}: violation on {}", kind.name(), bad.pair));
        }
        ensure!(rep.checked > 0, "{}: no instance applies", kind.name());
        parts.push(format!("{} {}/{}", kind.name(), rep.checked, rep.count));
    }
    Ok(format!("0 violations ({})", parts.join(", ")))
}

fn lower_bound_and_tennison() -> Outcome {
    let lower = tri!(scan::<F>(ScanKind::LowerBound, &cfg(), 50));
    let tennison = tri!(scan::<F>(ScanKind::Tennison, &cfg(), 50));
    for rep in [&lower, &tennison] {
        if let Some(bad) = rep.records.iter().find(|r| !r.holds) {
            return Err(format!("{}: violation on {}", rep.kind.name(), bad.pair));
        }
    }
    let strict = lower
        .records
        .iter()
        .filter(|r| r.chi > r.e_values.map_or(0, |(a, b)| (a * b) as i64))
        .count();
    ensure!(tennison.checked > 0, "no transverse pair in the corpus");
    Ok(format!(
        "50 pairs, {strict} strict, {} transverse, 0 violations",
        tennison.checked
    ))
}

fn fulton() -> Outcome {
    let r = qq(&["x", "y"]);
    let rep = tri!(fulton_verify(&ideal::<Q>(&r, &["y^2 - x^3"]), &ideal(&r, &["y"]), &[(1, qv(&[0, 0]))]));
    let (e1, e2) = rep.e_values.unwrap();
    ensure!(
        (rep.fulton_lhs, e1, e2, rep.total_blowup_chi) == (Some(3), 2, 1, 1),
        "cusp and tangent: {:?} = {e1}*{e2} + {}",
        rep.fulton_lhs,
        rep.total_blowup_chi
    );
    let mut corpus = tri!(curated_blowup_corpus::<F>(&cfg()));
    corpus.extend(tri!(blowup_corpus::<F>(&cfg(), 10)));
    let (mut equal, mut strict) = (0, 0);
    for inst in &corpus {
        let rep = tri!(fulton_verify(&inst.i, &inst.j, &inst.points));
        let (e1, e2) = rep.e_values.unwrap();
        if rep.fulton_lhs == Some((e1 * e2) as i64) {
            equal += 1;
        } else {
            strict += 1;
        }
    }
    ensure!(equal > 0 && strict > 0, "corpus does not span both cases: {equal} equal, {strict} strict");
    Ok(format!("3 = 2*1 + 1; {} corpus instances ({equal} with chi = e*e, {strict} with chi > e*e)", corpus.len()))
}

fn blowup_positivity() -> Outcome {
    let mut corpus = tri!(curated_blowup_corpus::<F>(&cfg()));
    corpus.extend(tri!(blowup_corpus::<F>(&cfg(), 10)));
    let mut points = 0;
    for inst in &corpus {
        let rep = tri!(blowup_chi(&inst.i, &inst.j, &inst.points));
        for p in &rep.chart_points {
            ensure!(p.local_chi > 0, "local chi {} at {:?} for {}, {}", p.local_chi, p.coords, inst.i, inst.j);
            points += 1;
        }
    }
    ensure!(points > 0, "no blowup points in the corpus");
    Ok(format!("{points} local values over {} instances, all positive", corpus.len()))
}

fn ramification_locus() -> Outcome {
    let r = qq(&["x", "y"]);
    let x = poly::<Q>(&r, "x");
    let x_chart = tri!(chart::<Q>(&r, 1));
    let y_chart = tri!(chart::<Q>(&r, 2));
    ensure!(tri!(tri!(vbar_locus(&x, &x_chart)).is_unit()), "V(f) meets the x-chart");
    let locus = tri!(vbar_locus(&x, &y_chart));
    let origin = Ideal::maximal(y_chart.ring());
    ensure!(tri!(locus.equals(&origin)), "V(f) in the y-chart is {locus}, expected the chart origin");
    ensure!(tri!(ramification_check(&x, &y_chart, &qv(&[0, 0]))), "x is not in m^2 at the y-chart origin");
    for u in [1, -1, 2, 5] {
        ensure!(!tri!(ramification_check(&x, &y_chart, &qv(&[0, u]))), "order 2 at (0, {u})");
        ensure!(!tri!(ramification_check(&x, &x_chart, &qv(&[0, u]))), "order 2 in the x-chart at (0, {u})");
    }
    // order-2 membership by hand: x = v*u lies in (v, u)^2
    let pulled = tri!(y_chart.pullback(&x));
    ensure!(tri!(origin.power(2).contains(&pulled)), "pullback {pulled} is not in m^2");
    Ok("empty in the x-chart, the origin in the y-chart".into())
}

fn flat_base_change() -> Outcome {
    let a = qq(&["x"]);
    let p = qq(&["x", "w"]);
    let cases: [(&[&str], &str, u64, i64); 3] = [(&["x^2"], "w^2 - x", 2, 2), (&["x^2"], "w", 1, 2), (&["x"], "w^3 - x", 3, 1)];
    for (i, ext, r, chi_a) in cases {
        let rep = tri!(flat_base_change_check(&ideal::<Q>(&a, i), &Ideal::zero(&a), &ideal(&p, &[ext])));
        ensure!(
            (rep.rank, rep.chi_a, rep.chi_b) == (r, chi_a, r as i64 * chi_a),
            "{ext}: r = {}, chi_A = {}, chi_B = {}",
            rep.rank,
            rep.chi_a,
            rep.chi_b
        );
    }
    Ok("(r, chi_A, chi_B) = (2, 2, 4), (1, 2, 2), (3, 1, 3)".into())
}

fn kernel_health() -> Outcome {
    let mut bases = 0;
    for seed in 0..50 {
        let i = random_ideal(seed);
        let basis = tri!(i.groebner());
        ensure!(buchberger_criterion(&basis), "S-polynomials of the basis of {i} do not reduce to zero");
        ensure!(i.gens().iter().all(|g| remainder(g, &basis).is_zero()), "generators of {i} do not reduce");
        bases += 1;

        let m = PresentedModule::cyclic(&i);
        ensure!(tri!(resolution_is_exact(&m)), "resolution of A/{i} is not an exact complex");
    }
    for seed in 100..150 {
        let (i, j) = finite_pair(seed);
        let (m, n) = (PresentedModule::cyclic(&i), PresentedModule::cyclic(&j));
        let ab: Vec<u64> = tri!(tor_all(&m, &n)).iter().map(|t| t.k_dimension().unwrap()).collect();
        let ba: Vec<u64> = tri!(tor_all(&n, &m)).iter().map(|t| t.k_dimension().unwrap()).collect();
        let trim = |v: &[u64]| v.iter().rposition(|&d| d > 0).map_or(vec![], |k| v[..=k].to_vec());
        ensure!(trim(&ab) == trim(&ba), "Tor lengths {ab:?} vs {ba:?} for {i}, {j}");
    }
    for seed in 200..250 {
        let (i, j) = finite_pair(seed);
        let ring = i.ring().clone();
        let mut rng = rng(seed);
        let all: Vec<usize> = (0..ring.nvars()).collect();
        let f = chiwb::corpus::random_polynomial(&ring, &mut rng, &all, 1..=2, 2);
        let n = PresentedModule::cyclic(&j);
        let chi_of = |id: &Ideal<F>| euler_characteristic(&PresentedModule::cyclic(id), &n).map(|r| r.1);
        let whole = tri!(chi_of(&i));
        let colon = tri!(chi_of(&tri!(i.quotient_by(&f))));
        let plus = tri!(chi_of(&tri!(i.sum(&Ideal::principal(f.clone())))));
        ensure!(whole == colon + plus, "additivity along {f} for {i}, {j}: {whole} != {colon} + {plus}");
    }
    Ok(format!("{bases} bases, 50 resolutions, 50 Tor symmetry, 50 additivity cases"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("exact chi corpus", exact_chi),
        ("Koszul = Hilbert-Samuel", koszul_equals_hilbert_samuel),
        ("diagonal identity", diagonal_identity),
        ("vanishing lemmas", vanishing_lemmas),
        ("conjecture scans", conjecture_scans),
        ("lower bound and transversality", lower_bound_and_tennison),
        ("Fulton identity", fulton),
        ("blowup positivity", blowup_positivity),
        ("ramification locus", ramification_locus),
        ("flat base change ratio", flat_base_change),
        ("kernel health", kernel_health),
    ];
    // optional criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let selected = |k: usize| only.is_empty() || only.contains(&(k + 1));
    let outcomes: Vec<Option<Outcome>> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .enumerate()
            .map(|(k, (_, run))| {
                let run = *run;
                let on = selected(k);
                s.spawn(move || {
                    if !on {
                        return None;
                    }
                    let start = std::time::Instant::now();
                    let out = match catch_unwind(AssertUnwindSafe(run)) {
                        Ok(o) => o,
                        Err(p) => Err(p
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_else(|| "panicked".into())),
                    };
                    eprintln!("criterion {} finished in {:.1?}", k + 1, start.elapsed());
                    Some(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let (mut passed, mut failed) = (0, 0);
    for (k, ((name, _), outcome)) in criteria.iter().zip(&outcomes).enumerate() {
        let Some(outcome) = outcome else { continue };
        match outcome {
            Ok(detail) => {
                passed += 1;
                println!("criterion {:>2} {name}: PASS ({detail})", k + 1);
            }
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", k + 1);
            }
        }
    }
    println!("acceptance: {passed} passed, {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
