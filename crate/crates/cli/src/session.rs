//! Executes a parsed session against the engine.

use std::collections::HashMap;
use std::time::Instant;

use chiwb::blowup::{blowup_chi, corollary_d_check, fulton_verify, BlowupIntersectionReport};
use chiwb::corpus::{scan, CorpusConfig};
use chiwb::diagonal::{diagonal_decompose, r_flatness_check, TensorModel};
use chiwb::homology::{chi, tor};
use chiwb::multiplicity::{point_multiplicity, tangent_cone, transversality_check};
use chiwb::parse::{Command, FieldSpec, PointSpec, Session};
use chiwb::{Budget, Coeff, Error, Field, Fp, Ideal, MonomialOrder, PresentedModule, Rational, Ring, RingRef};
use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::report::{int, Outcome, Status};

pub struct Options {
    pub field: Option<Field>,
    pub budget: u64,
    pub seed: u64,
    pub timing: bool,
}

/// An ideal bound by name, tagged with its coefficient type.
#[derive(Clone)]
enum Bound {
    Q(Ideal<Rational>),
    F(Ideal<Fp>),
}

struct Env<'a> {
    opts: &'a Options,
    budget: Budget,
    ring: Option<RingRef>,
    ideals: HashMap<String, Bound>,
}

/// Runs every statement in order. Declarations yield a result only when
/// they fail; commands always yield one.
pub fn run(session: &Session, opts: &Options) -> Vec<Outcome> {
    let mut env = Env {
        opts,
        budget: Budget::limited(opts.budget),
        ring: None,
        ideals: HashMap::new(),
    };
    let mut out = Vec::new();
    for st in &session.statements {
        let start = Instant::now();
        let result = match &st.command {
            Command::Ring { .. } | Command::Ideal { .. } => match env.declare(&st.command) {
                Ok(()) => continue,
                Err(e) => Err(e),
            },
            cmd => env.execute(cmd),
        };
        let mut outcome = match result {
            Ok(fields) => Outcome::new(st.command.to_string(), Status::Ok, fields),
            Err(Failure::Assertion(fields)) => Outcome::new(st.command.to_string(), Status::AssertionFailed, fields),
            Err(Failure::Engine(Error::AssertionFailed(msg))) => {
                Outcome::message(st.command.to_string(), Status::AssertionFailed, msg)
            }
            Err(Failure::Engine(e)) => Outcome::message(st.command.to_string(), Status::Error, e.to_string()),
        };
        if opts.timing {
            outcome.timing_ms = Some(start.elapsed().as_millis());
        }
        out.push(outcome);
    }
    out
}

enum Failure {
    /// An `assert` whose value disagreed; carries the report.
    Assertion(Map<String, Value>),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Fields = Map<String, Value>;

impl Env<'_> {
    fn declare(&mut self, cmd: &Command) -> Result<(), Failure> {
        match cmd {
            Command::Ring { field, vars, base, .. } => {
                if vars[..base.len().min(vars.len())] != base[..] {
                    return Err(Error::InvalidRing("base variables must be a prefix of the variable list".into()).into());
                }
                let field = match (self.opts.field, field) {
                    (Some(f), _) => f,
                    (None, FieldSpec::Rationals) => Field::Rationals,
                    (None, FieldSpec::Prime(p)) => Field::prime(*p)?,
                };
                let ring = Ring::with_budget(field, vars, MonomialOrder::Grevlex, base.len(), self.budget.clone())?;
                self.ring = Some(ring);
                Ok(())
            }
            Command::Ideal { name, gens } => {
                let ring = self
                    .ring
                    .clone()
                    .ok_or_else(|| Error::Precondition("no ring declared before this ideal".into()))?;
                let bound = match ring.field() {
                    Field::Rationals => Bound::Q(Ideal::try_new(
                        &ring,
                        gens.iter().map(|g| g.to_polynomial(&ring)).collect::<Result<_, _>>()?,
                    )?),
                    Field::Prime(_) => Bound::F(Ideal::try_new(
                        &ring,
                        gens.iter().map(|g| g.to_polynomial(&ring)).collect::<Result<_, _>>()?,
                    )?),
                };
                self.ideals.insert(name.clone(), bound);
                Ok(())
            }
            _ => unreachable!("not a declaration"),
        }
    }

    fn lookup(&self, name: &str) -> Result<&Bound, Error> {
        self.ideals.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    fn execute(&self, cmd: &Command) -> Result<Fields, Failure> {
        match cmd {
            Command::Assert(inner, expected) => {
                let (mut fields, actual) = self.evaluate(inner)?;
                fields.insert("expected".into(), big(expected));
                fields.insert("actual".into(), big(&actual));
                if &actual == expected {
                    Ok(fields)
                } else {
                    Err(Failure::Assertion(fields))
                }
            }
            Command::Scan(kind, count) => {
                let field = self.opts.field.unwrap_or(Field::Prime(101));
                let cfg = CorpusConfig {
                    field,
                    seed: self.opts.seed,
                    budget: self.budget.clone(),
                };
                let rep = match field {
                    Field::Rationals => scan::<Rational>(*kind, &cfg, *count)?,
                    Field::Prime(_) => scan::<Fp>(*kind, &cfg, *count)?,
                };
                let mut f = Fields::new();
                f.insert("kind".into(), kind.name().into());
                f.insert("field".into(), field.to_string().into());
                f.insert("seed".into(), int(rep.seed));
                f.insert("count".into(), int(rep.count as u64));
                f.insert("checked".into(), int(rep.checked as u64));
                f.insert("violations".into(), int(rep.violations as u64));
                let bad: Vec<Value> = rep
                    .records
                    .iter()
                    .filter(|r| !r.holds)
                    .map(|r| r.pair.clone().into())
                    .collect();
                f.insert("counterexamples".into(), bad.into());
                Ok(f)
            }
            cmd => Ok(self.evaluate(cmd)?.0),
        }
    }

    /// A command's report together with its headline number, the value an
    /// `assert` compares against.
    fn evaluate(&self, cmd: &Command) -> Result<(Fields, BigInt), Failure> {
        let names: Vec<&String> = match cmd {
            Command::Chi(a, b)
            | Command::Tor(a, b, _)
            | Command::Transversal(a, b)
            | Command::Diagonal(a, b)
            | Command::BlowupChi(a, b, _)
            | Command::Fulton(a, b, _)
            | Command::CorollaryD(a, b, _) => vec![a, b],
            Command::Resolution(a) | Command::Multiplicity(a) | Command::TangentCone(a) | Command::FlatCheck(a) => {
                vec![a]
            }
            Command::Scan(..) => {
                return Err(Error::Precondition("`scan` has no single value to assert".into()).into());
            }
            Command::Ring { .. } | Command::Ideal { .. } | Command::Assert(..) => unreachable!("rejected by the parser"),
        };
        let bound = names.iter().map(|n| self.lookup(n)).collect::<Result<Vec<_>, _>>()?;
        if bound.iter().all(|b| matches!(b, Bound::Q(_))) {
            let ideals: Vec<&Ideal<Rational>> = bound
                .iter()
                .map(|b| match b {
                    Bound::Q(i) => i,
                    Bound::F(_) => unreachable!(),
                })
                .collect();
            evaluate_with(cmd, &ideals)
        } else if bound.iter().all(|b| matches!(b, Bound::F(_))) {
            let ideals: Vec<&Ideal<Fp>> = bound
                .iter()
                .map(|b| match b {
                    Bound::F(i) => i,
                    Bound::Q(_) => unreachable!(),
                })
                .collect();
            evaluate_with(cmd, &ideals)
        } else {
            Err(Error::RingMismatch.into())
        }
    }
}

fn big(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => int(v),
        Err(_) => n.to_string().into(),
    }
}

fn list<T: Copy + Into<i128>>(v: &[T]) -> Value {
    v.iter().map(|&x| int(x)).collect::<Vec<_>>().into()
}

fn points<C: Coeff>(ring: &RingRef, specs: &[PointSpec]) -> Result<Vec<(usize, Vec<C>)>, Error> {
    specs
        .iter()
        .map(|p| {
            let coords = p.coords.iter().map(|c| c.to_constant(ring)).collect::<Result<Vec<C>, _>>()?;
            Ok((p.chart, coords))
        })
        .collect()
}

fn blowup_fields<C: Coeff>(f: &mut Fields, rep: &BlowupIntersectionReport<C>) {
    let pts: Vec<Value> = rep
        .chart_points
        .iter()
        .map(|p| {
            let mut m = Fields::new();
            m.insert("chart".into(), int(p.chart as u64));
            m.insert(
                "coords".into(),
                p.coords.iter().map(|c| Value::from(c.to_string())).collect::<Vec<_>>().into(),
            );
            m.insert("tor_lengths".into(), list(&p.tor_lengths));
            m.insert("local_chi".into(), int(p.local_chi));
            m.into()
        })
        .collect();
    f.insert("chart_points".into(), pts.into());
    f.insert("total_blowup_chi".into(), int(rep.total_blowup_chi));
}

fn evaluate_with<C: Coeff>(cmd: &Command, ideals: &[&Ideal<C>]) -> Result<(Fields, BigInt), Failure> {
    let mut f = Fields::new();
    let ring = ideals[0].ring();
    let headline: i64 = match cmd {
        Command::Chi(..) => {
            let rep = chi(ideals[0], ideals[1])?;
            f.insert("chi".into(), int(rep.chi));
            f.insert("tor_lengths".into(), list(&rep.tor_lengths));
            f.insert("dims".into(), list(&[rep.dims.0 as u64, rep.dims.1 as u64]));
            f.insert("ambient_dim".into(), int(rep.ambient_dim as u64));
            let c = rep.classification;
            f.insert("decent".into(), c.decent.into());
            f.insert("vanishing_case".into(), c.vanishing_case.into());
            f.insert("positivity_case".into(), c.positivity_case.into());
            rep.chi
        }
        Command::Tor(_, _, i) => {
            let m = PresentedModule::cyclic(ideals[0]);
            let n = PresentedModule::cyclic(ideals[1]);
            let t = tor(&m, &n, *i)?;
            let length = t.k_dimension()?;
            f.insert("index".into(), int(*i as u64));
            f.insert("generators".into(), int(t.rank() as u64));
            f.insert("length".into(), int(length));
            length as i64
        }
        Command::Resolution(_) => {
            let res = PresentedModule::cyclic(ideals[0]).resolution()?;
            f.insert("ranks".into(), list(&res.ranks().iter().map(|&r| r as u64).collect::<Vec<_>>()));
            f.insert("length".into(), int(res.length() as u64));
            res.length() as i64
        }
        Command::Multiplicity(_) => {
            let e = point_multiplicity(ideals[0])?;
            f.insert("multiplicity".into(), int(e));
            f.insert("dimension".into(), int(ideals[0].krull_dimension()? as u64));
            e as i64
        }
        Command::TangentCone(_) => {
            let cone = tangent_cone(ideals[0])?;
            let dim = cone.krull_dimension()?;
            f.insert(
                "cone".into(),
                cone.gens().iter().map(|g| Value::from(g.to_string())).collect::<Vec<_>>().into(),
            );
            f.insert("dimension".into(), int(dim as u64));
            dim as i64
        }
        Command::Transversal(..) => {
            let rep = transversality_check(ideals[0], ideals[1])?;
            let (e1, e2) = rep.e_values.expect("set by the transversality check");
            f.insert("chi".into(), int(rep.chi));
            f.insert("tor_lengths".into(), list(&rep.tor_lengths));
            f.insert("dims".into(), list(&[rep.dims.0 as u64, rep.dims.1 as u64]));
            f.insert("e_values".into(), list(&[e1, e2]));
            f.insert("e_product".into(), int(e1 * e2));
            f.insert("cone_dimension".into(), int(rep.cone_dimension.unwrap_or(0) as u64));
            f.insert("transverse".into(), rep.classification.transverse.unwrap_or(false).into());
            f.insert("lower_bound_holds".into(), rep.lower_bound_holds().unwrap_or(false).into());
            f.insert("equality_holds".into(), rep.equality_holds().unwrap_or(false).into());
            rep.chi
        }
        Command::Diagonal(..) => {
            let model = TensorModel::for_ring(ring)?;
            let j = model.right_copy(ideals[1])?;
            let rep = diagonal_decompose(&model, ideals[0], &j)?;
            f.insert("e_values".into(), list(&rep.e_values));
            f.insert("chi_via_diagonal".into(), int(rep.chi_via_diagonal));
            f.insert("chi_direct".into(), int(rep.chi_direct));
            rep.chi_via_diagonal
        }
        Command::FlatCheck(_) => {
            let model = TensorModel::for_ring(ring)?;
            let rep = r_flatness_check(&model, ideals[0], false)?;
            f.insert("h1_zero".into(), rep.h1_zero.into());
            f.insert("h2_zero".into(), rep.h2_zero.into());
            f.insert("flat".into(), rep.flat.into());
            f.insert(
                "fiber_dimension".into(),
                rep.fiber_dimension.map_or(Value::Null, |d| int(d as u64)),
            );
            f.insert("expected_fiber_dimension".into(), int(rep.expected_fiber_dimension));
            i64::from(rep.flat)
        }
        Command::BlowupChi(_, _, p) => {
            let rep = blowup_chi(ideals[0], ideals[1], &points(ring, p)?)?;
            blowup_fields(&mut f, &rep);
            rep.total_blowup_chi
        }
        Command::Fulton(_, _, p) => {
            let rep = fulton_verify(ideals[0], ideals[1], &points(ring, p)?)?;
            let lhs = rep.fulton_lhs.expect("set by the Fulton check");
            let (e1, e2) = rep.e_values.expect("set by the Fulton check");
            f.insert("chi".into(), int(lhs));
            f.insert("e_values".into(), list(&[e1, e2]));
            f.insert("rhs".into(), int(rep.fulton_rhs.expect("set by the Fulton check")));
            blowup_fields(&mut f, &rep);
            lhs
        }
        Command::CorollaryD(_, _, p) => {
            let rep = corollary_d_check(ideals[0], ideals[1], &points(ring, p)?)?;
            f.insert("chi".into(), int(rep.chi));
            f.insert("e_product".into(), int(rep.e_product));
            f.insert("cone_dimension".into(), int(rep.cone_dimension as u64));
            f.insert("equality".into(), rep.equality.into());
            blowup_fields(&mut f, &rep.blowup);
            rep.chi
        }
        Command::Scan(..) | Command::Ring { .. } | Command::Ideal { .. } | Command::Assert(..) => {
            unreachable!("handled by the caller")
        }
    };
    Ok((f, BigInt::from(headline)))
}
