#![no_main]

use chiwb::parse::{Command, Expr, FieldSpec};
use chiwb::{Coeff, Field, Fp, MonomialOrder, Rational, Ring, RingRef};
use libfuzzer_sys::fuzz_target;

fn evaluate<C: Coeff>(ring: &RingRef, gens: &[Expr]) {
    for g in gens {
        let _ = g.to_polynomial::<C>(ring);
    }
}

fn constants<C: Coeff>(ring: &RingRef, coords: &[Expr]) {
    for c in coords {
        let _ = c.to_constant::<C>(ring);
    }
}

// Evaluates every generator and point coordinate of a session in the ring
// declared before it, without running the commands.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(session) = chiwb::parse::parse_session(text) else {
        return;
    };
    let mut ring: Option<RingRef> = None;
    for cmd in session.commands() {
        let cmd = match cmd {
            Command::Assert(inner, _) => inner.as_ref(),
            c => c,
        };
        match cmd {
            Command::Ring { field, vars, base, .. } => {
                let field = match field {
                    FieldSpec::Rationals => Ok(Field::Rationals),
                    FieldSpec::Prime(p) => Field::prime(*p),
                };
                ring = field
                    .and_then(|f| Ring::new(f, vars, MonomialOrder::Grevlex, base.len()))
                    .ok();
            }
            Command::Ideal { gens, .. } => {
                if let Some(r) = &ring {
                    match r.field() {
                        Field::Rationals => evaluate::<Rational>(r, gens),
                        Field::Prime(_) => evaluate::<Fp>(r, gens),
                    }
                }
            }
            Command::BlowupChi(_, _, points) | Command::Fulton(_, _, points) | Command::CorollaryD(_, _, points) => {
                if let Some(r) = &ring {
                    for p in points {
                        match r.field() {
                            Field::Rationals => constants::<Rational>(r, &p.coords),
                            Field::Prime(_) => constants::<Fp>(r, &p.coords),
                        }
                    }
                }
            }
            _ => {}
        }
    }
});
