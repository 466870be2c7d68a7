//! Polynomial expressions and session files.
//!
//! Polynomials use identifiers, integer literals, `+ - * / ^` and
//! parentheses; `*` is never implicit, exponents are positive integers and
//! `/` divides by constants only. A session is a sequence of `;`-terminated
//! statements with `#` comments.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 1000;

/// Largest total degree of an evaluated expression; monomial exponents are
/// 16-bit.
pub const MAX_DEGREE: u32 = 1000;

/// Largest number of term products one multiplication may form while an
/// expression is evaluated.
pub const MAX_PRODUCTS: u64 = 1_000_000;

/// Largest coefficient size, in bits, of an evaluated expression.
pub const MAX_COEFF_BITS: u64 = 1 << 14;

/// Bound on term products times the squared coefficient size in 64-bit
/// words. Fractions count 64 times over: their binary gcd is quadratic in
/// the size in bits.
pub const MAX_WORK: u64 = 1_000_000_000;

/// A 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

/// A parsed polynomial expression, not yet tied to a ring. Equality ignores
/// source positions.
#[derive(Clone, Debug)]
pub enum Expr {
    Int(BigInt),
    Var(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        use Expr::*;
        match (self, other) {
            (Int(a), Int(b)) => a == b,
            (Var(a, _), Var(b, _)) => a == b,
            (Neg(a), Neg(b)) => a == b,
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Mul(a, b), Mul(c, d)) | (Div(a, b, _), Div(c, d, _)) => {
                a == c && b == d
            }
            (Pow(a, m), Pow(b, n)) => a == b && m == n,
            _ => false,
        }
    }
}

impl Eq for Expr {}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(..) => 5,
        }
    }

    /// Evaluates the expression in `ring`.
    pub fn to_polynomial<C: Coeff>(&self, ring: &RingRef) -> Result<Polynomial<C>> {
        Ok(match self {
            Expr::Int(n) => Polynomial::constant(ring, C::from_bigint(n, ring.field())),
            Expr::Var(name, pos) => match ring.var_index(name) {
                Some(i) => Polynomial::var(ring, i),
                None => {
                    return Err(Error::UnknownVariable {
                        name: name.clone(),
                        line: pos.line,
                        col: pos.col,
                    })
                }
            },
            Expr::Neg(e) => -&e.to_polynomial::<C>(ring)?,
            Expr::Add(a, b) => self.bounded(&a.to_polynomial::<C>(ring)? + &b.to_polynomial::<C>(ring)?)?,
            Expr::Sub(a, b) => self.bounded(&a.to_polynomial::<C>(ring)? - &b.to_polynomial::<C>(ring)?)?,
            Expr::Mul(a, b) => self.product(&a.to_polynomial::<C>(ring)?, &b.to_polynomial::<C>(ring)?)?,
            Expr::Div(a, b, pos) => {
                let num = a.to_polynomial::<C>(ring)?;
                let den = b.to_polynomial::<C>(ring)?;
                if !den.is_constant() {
                    return Err(Error::Syntax {
                        line: pos.line,
                        col: pos.col,
                        msg: "only division by constants is supported".into(),
                    });
                }
                let inv = den.constant_term().inv().ok_or_else(|| Error::CoefficientNotInField {
                    field: ring.field().to_string(),
                    line: pos.line,
                    col: pos.col,
                    msg: "division by zero".into(),
                })?;
                self.bounded(num.scale(&inv))?
            }
            Expr::Pow(e, n) => {
                let base = e.to_polynomial::<C>(ring)?;
                if base.degree().unwrap_or(0) as u64 * *n as u64 > MAX_DEGREE as u64 {
                    return Err(self.too_large(format!("degree above {MAX_DEGREE}")));
                }
                // square and multiply, checking the size before each product
                let mut result = Polynomial::one(ring);
                let mut square = base;
                let mut n = *n;
                while n > 0 {
                    if n & 1 == 1 {
                        result = self.product(&result, &square)?;
                    }
                    n >>= 1;
                    if n > 0 {
                        square = self.product(&square, &square)?;
                    }
                }
                result
            }
        })
    }

    fn too_large(&self, msg: String) -> Error {
        let pos = self.first_position();
        Error::TooLarge {
            line: pos.line,
            col: pos.col,
            msg,
        }
    }

    /// `a * b`, refused when the degree, the number of term products or the
    /// coefficient size would pass the evaluation limits.
    fn product<C: Coeff>(&self, a: &Polynomial<C>, b: &Polynomial<C>) -> Result<Polynomial<C>> {
        if a.degree().unwrap_or(0) + b.degree().unwrap_or(0) > MAX_DEGREE {
            return Err(self.too_large(format!("degree above {MAX_DEGREE}")));
        }
        if a.len() as u64 * b.len() as u64 > MAX_PRODUCTS {
            return Err(self.too_large(format!("more than {MAX_PRODUCTS} term products")));
        }
        let bits = max_bits(a) + max_bits(b);
        if bits > MAX_COEFF_BITS {
            return Err(self.too_large(format!("coefficients above {MAX_COEFF_BITS} bits")));
        }
        let words = bits / 64 + 1;
        let fractions = [a, b].iter().any(|p| p.terms().iter().any(|(_, c)| !c.is_integral()));
        let weight = if fractions { 64 } else { 1 };
        if a.len() as u64 * b.len() as u64 * words * words * weight > MAX_WORK {
            return Err(self.too_large("product too expensive to expand".into()));
        }
        self.bounded(a * b)
    }

    /// Sums of many products, and sums of fractions, can still pass the
    /// coefficient limit.
    fn bounded<C: Coeff>(&self, p: Polynomial<C>) -> Result<Polynomial<C>> {
        if max_bits(&p) > MAX_COEFF_BITS {
            return Err(self.too_large(format!("coefficients above {MAX_COEFF_BITS} bits")));
        }
        Ok(p)
    }

    /// Evaluates a constant expression.
    pub fn to_constant<C: Coeff>(&self, ring: &RingRef) -> Result<C> {
        let p = self.to_polynomial::<C>(ring)?;
        if !p.is_constant() {
            let pos = self.first_position();
            return Err(Error::Syntax {
                line: pos.line,
                col: pos.col,
                msg: format!("`{self}` is not a constant"),
            });
        }
        Ok(p.constant_term())
    }

    fn first_position(&self) -> Pos {
        match self {
            Expr::Int(_) => Pos::default(),
            Expr::Var(_, p) => *p,
            Expr::Neg(e) | Expr::Pow(e, _) => e.first_position(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                let p = a.first_position();
                if p.line > 0 {
                    p
                } else {
                    b.first_position()
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // left operands need parentheses below their operator's precedence,
        // right operands also at equal precedence (operators associate left)
        let side = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v, _) => write!(f, "{v}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                side(f, e, 3)
            }
            Expr::Add(a, b) => {
                side(f, a, 1)?;
                write!(f, " + ")?;
                side(f, b, 2)
            }
            Expr::Sub(a, b) => {
                side(f, a, 1)?;
                write!(f, " - ")?;
                side(f, b, 2)
            }
            Expr::Mul(a, b) => {
                side(f, a, 2)?;
                write!(f, "*")?;
                side(f, b, 3)
            }
            Expr::Div(a, b, _) => {
                side(f, a, 2)?;
                write!(f, "/")?;
                side(f, b, 3)
            }
            Expr::Pow(e, n) => {
                side(f, e, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

fn max_bits<C: Coeff>(p: &Polynomial<C>) -> u64 {
    p.terms().iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn lex(text: &str) -> Result<(Vec<Token>, Pos)> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                pos,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), pos });
        } else if "+-*/^(),;=[]:".contains(c) {
            chars.next();
            col += 1;
            out.push(Token { tok: Tok::Sym(c), pos });
        } else {
            return Err(Error::Syntax {
                line,
                col,
                msg: format!("unexpected character `{}`", c.escape_debug()),
            });
        }
    }
    Ok((out, Pos { line, col }))
}

/// Deepest nesting of parentheses and unary minus accepted.
const MAX_DEPTH: usize = 200;
/// Most binary operators accepted in one statement.
const MAX_OPERATORS: usize = 4096;

struct Parser {
    toks: Vec<Token>,
    at: usize,
    end: Pos,
    depth: usize,
    operators: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let (toks, end) = lex(text)?;
        Ok(Parser {
            toks,
            at: 0,
            end,
            depth: 0,
            operators: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let p = self.pos();
        Err(Error::Syntax {
            line: p.line,
            col: p.col,
            msg: msg.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Int(n)) => format!("`{n}`"),
            Some(Tok::Sym(c)) => format!("`{c}`"),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.error(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.at += 1;
                Ok(())
            }
            _ => self.error(format!("expected `{kw}`, found {}", self.describe())),
        }
    }

    fn integer(&mut self, what: &str) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.error(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn small_integer<T: TryFrom<BigInt>>(&mut self, what: &str) -> Result<T> {
        let pos = self.pos();
        let n = self.integer(what)?;
        T::try_from(n).map_err(|_| Error::Syntax {
            line: pos.line,
            col: pos.col,
            msg: format!("{what} is too large"),
        })
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                self.operator()?;
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                self.operator()?;
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                self.operator()?;
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                self.operator()?;
                e = Expr::Div(Box::new(e), Box::new(self.unary()?), pos);
            } else {
                return Ok(e);
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            self.descend()?;
            let e = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(e)));
        }
        self.power()
    }

    fn operator(&mut self) -> Result<()> {
        self.operators += 1;
        if self.operators > MAX_OPERATORS {
            return self.error("expression too long");
        }
        Ok(())
    }

    fn descend(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.error("expression nested too deeply");
        }
        Ok(())
    }

    // power := atom ('^' integer)?
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let n = self.integer("an exponent")?;
        let n = u32::try_from(&n).ok().filter(|&n| (1..=MAX_EXPONENT).contains(&n));
        let Some(n) = n else {
            return Err(Error::Syntax {
                line: pos.line,
                col: pos.col,
                msg: format!("exponents must lie between 1 and {MAX_EXPONENT}"),
            });
        };
        if self.peek() == Some(&Tok::Sym('^')) {
            return self.error("write repeated powers with parentheses");
        }
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.at += 1;
                if matches!(self.peek(), Some(Tok::Ident(_) | Tok::Int(_))) || self.peek() == Some(&Tok::Sym('(')) {
                    return self.error("missing `*` (multiplication must be explicit)");
                }
                Ok(Expr::Var(s, pos))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                self.descend()?;
                let e = self.expr()?;
                self.depth -= 1;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.error(format!("expected a polynomial, found {}", self.describe())),
        }
    }
}

/// Parses a polynomial expression.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error(format!("unexpected {}", p.describe()));
    }
    Ok(e)
}

/// Parses a polynomial in `ring`.
pub fn parse_polynomial<C: Coeff>(text: &str, ring: &RingRef) -> Result<Polynomial<C>> {
    parse_expr(text)?.to_polynomial(ring)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "FF({p})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanKind {
    Decency,
    Vanishing,
    Positivity,
    LowerBound,
    Tennison,
}

impl ScanKind {
    pub const ALL: [ScanKind; 5] = [
        ScanKind::Decency,
        ScanKind::Vanishing,
        ScanKind::Positivity,
        ScanKind::LowerBound,
        ScanKind::Tennison,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScanKind::Decency => "decency",
            ScanKind::Vanishing => "vanishing",
            ScanKind::Positivity => "positivity",
            ScanKind::LowerBound => "lowerbound",
            ScanKind::Tennison => "tennison",
        }
    }
}

/// `(chart: c_1, ..., c_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpec {
    pub chart: usize,
    pub coords: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Ring {
        name: String,
        field: FieldSpec,
        vars: Vec<String>,
        base: Vec<String>,
    },
    Ideal {
        name: String,
        gens: Vec<Expr>,
    },
    Chi(String, String),
    Tor(String, String, usize),
    Resolution(String),
    Multiplicity(String),
    TangentCone(String),
    Transversal(String, String),
    Diagonal(String, String),
    FlatCheck(String),
    BlowupChi(String, String, Vec<PointSpec>),
    Fulton(String, String, Vec<PointSpec>),
    CorollaryD(String, String, Vec<PointSpec>),
    Scan(ScanKind, usize),
    /// `assert <command> = <integer>`: the command's headline number must
    /// equal the given value.
    Assert(Box<Command>, BigInt),
}

impl Command {
    /// The statement keyword.
    pub fn keyword(&self) -> &'static str {
        match self {
            Command::Ring { .. } => "ring",
            Command::Ideal { .. } => "ideal",
            Command::Chi(..) => "chi",
            Command::Tor(..) => "tor",
            Command::Resolution(_) => "resolution",
            Command::Multiplicity(_) => "multiplicity",
            Command::TangentCone(_) => "tangentcone",
            Command::Transversal(..) => "transversal",
            Command::Diagonal(..) => "diagonal",
            Command::FlatCheck(_) => "flatcheck",
            Command::BlowupChi(..) => "blowupchi",
            Command::Fulton(..) => "fulton",
            Command::CorollaryD(..) => "corollaryd",
            Command::Scan(..) => "scan",
            Command::Assert(..) => "assert",
        }
    }
}

fn write_points(f: &mut fmt::Formatter<'_>, points: &[PointSpec]) -> fmt::Result {
    write!(f, " points = [")?;
    for p in points {
        let coords: Vec<String> = p.coords.iter().map(|c| c.to_string()).collect();
        write!(f, " ({}: {})", p.chart, coords.join(", "))?;
    }
    write!(f, " ]")
}

impl fmt::Display for Command {
    /// The statement text without the terminating `;`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Ring { name, field, vars, base } => {
                write!(f, "ring {name} = {field}[{}]", vars.join(","))?;
                if !base.is_empty() {
                    write!(f, " base={}", base.join(","))?;
                }
                Ok(())
            }
            Command::Ideal { name, gens } => {
                let gens: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "ideal {name} = {}", gens.join(", "))
            }
            Command::Chi(a, b) => write!(f, "chi {a} {b}"),
            Command::Tor(a, b, i) => write!(f, "tor {a} {b} {i}"),
            Command::Resolution(a) => write!(f, "resolution {a}"),
            Command::Multiplicity(a) => write!(f, "multiplicity {a}"),
            Command::TangentCone(a) => write!(f, "tangentcone {a}"),
            Command::Transversal(a, b) => write!(f, "transversal {a} {b}"),
            Command::Diagonal(a, b) => write!(f, "diagonal {a} {b}"),
            Command::FlatCheck(a) => write!(f, "flatcheck {a}"),
            Command::BlowupChi(a, b, p) => {
                write!(f, "blowupchi {a} {b}")?;
                write_points(f, p)
            }
            Command::Fulton(a, b, p) => {
                write!(f, "fulton {a} {b}")?;
                write_points(f, p)
            }
            Command::CorollaryD(a, b, p) => {
                write!(f, "corollaryd {a} {b}")?;
                write_points(f, p)
            }
            Command::Scan(kind, n) => write!(f, "scan {} count={n}", kind.name()),
            Command::Assert(c, n) => write!(f, "assert {c} = {n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Statement {
    pub pos: Pos,
    pub command: Command,
}

#[derive(Clone, Debug, Default)]
pub struct Session {
    pub statements: Vec<Statement>,
}

impl Session {
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.statements.iter().map(|s| &s.command)
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{};", s.command)?;
        }
        Ok(())
    }
}

/// Parses a session file.
pub fn parse_session(text: &str) -> Result<Session> {
    let mut p = Parser::new(text)?;
    let mut statements = Vec::new();
    while p.peek().is_some() {
        let pos = p.pos();
        let command = p.command()?;
        p.expect(';')?;
        statements.push(Statement { pos, command });
    }
    Ok(Session { statements })
}

impl Parser {
    fn command(&mut self) -> Result<Command> {
        self.operators = 0;
        let kw = self.ident("a command")?;
        let name = |p: &mut Parser| p.ident("a name");
        Ok(match kw.as_str() {
            "ring" => self.ring()?,
            "ideal" => {
                let name = name(self)?;
                self.expect('=')?;
                Command::Ideal {
                    name,
                    gens: self.generators()?,
                }
            }
            "chi" => Command::Chi(name(self)?, name(self)?),
            "tor" => Command::Tor(name(self)?, name(self)?, self.small_integer("a homological degree")?),
            "resolution" => Command::Resolution(name(self)?),
            "multiplicity" => Command::Multiplicity(name(self)?),
            "tangentcone" => Command::TangentCone(name(self)?),
            "transversal" => Command::Transversal(name(self)?, name(self)?),
            "diagonal" => Command::Diagonal(name(self)?, name(self)?),
            "flatcheck" => Command::FlatCheck(name(self)?),
            "blowupchi" => Command::BlowupChi(name(self)?, name(self)?, self.points()?),
            "fulton" => Command::Fulton(name(self)?, name(self)?, self.points()?),
            "corollaryd" => Command::CorollaryD(name(self)?, name(self)?, self.points()?),
            "scan" => {
                let kind_pos = self.pos();
                let kind = self.ident("a scan kind")?;
                let Some(kind) = ScanKind::ALL.into_iter().find(|k| k.name() == kind) else {
                    return Err(Error::Syntax {
                        line: kind_pos.line,
                        col: kind_pos.col,
                        msg: format!(
                            "unknown scan kind `{kind}` (expected decency, vanishing, positivity, lowerbound or tennison)"
                        ),
                    });
                };
                self.keyword("count")?;
                self.expect('=')?;
                Command::Scan(kind, self.small_integer("a count")?)
            }
            "assert" => {
                if self.peek() == Some(&Tok::Ident("assert".into())) {
                    return self.error("`assert` statements cannot be asserted");
                }
                let inner = self.command()?;
                if matches!(inner, Command::Ring { .. } | Command::Ideal { .. } | Command::Assert(..)) {
                    return self.error(format!("`{}` statements cannot be asserted", inner.keyword()));
                }
                self.expect('=')?;
                let negative = self.eat('-');
                let n = self.integer("an integer")?;
                Command::Assert(Box::new(inner), if negative { -n } else { n })
            }
            other => {
                self.at -= 1;
                return self.error(format!("unknown command `{other}`"));
            }
        })
    }

    fn ring(&mut self) -> Result<Command> {
        let name = self.ident("a ring name")?;
        self.expect('=')?;
        let field = match self.ident("QQ or FF")?.as_str() {
            "QQ" => FieldSpec::Rationals,
            "FF" => {
                self.expect('(')?;
                let p: u64 = self.small_integer("a prime")?;
                Field::prime(p)?;
                self.expect(')')?;
                FieldSpec::Prime(p)
            }
            other => {
                self.at -= 1;
                return self.error(format!("unknown field `{other}` (expected QQ or FF(p))"));
            }
        };
        self.expect('[')?;
        let mut vars = vec![self.ident("a variable")?];
        while self.eat(',') {
            vars.push(self.ident("a variable")?);
        }
        self.expect(']')?;
        let mut base = Vec::new();
        if self.peek() == Some(&Tok::Ident("base".into())) {
            self.at += 1;
            self.expect('=')?;
            base.push(self.ident("a base variable")?);
            while self.eat(',') {
                base.push(self.ident("a base variable")?);
            }
        }
        Ok(Command::Ring { name, field, vars, base })
    }

    /// `g, g, ...`, optionally wrapped in one pair of parentheses.
    fn generators(&mut self) -> Result<Vec<Expr>> {
        let wrapped = self.peek() == Some(&Tok::Sym('(')) && self.outer_parens_hold_list();
        if wrapped {
            self.at += 1;
        }
        let mut gens = vec![self.expr()?];
        while self.eat(',') {
            gens.push(self.expr()?);
        }
        if wrapped {
            self.expect(')')?;
        }
        Ok(gens)
    }

    /// Whether the group opening at the current `(` closes right before `;`
    /// and contains a comma at depth one.
    fn outer_parens_hold_list(&self) -> bool {
        let mut depth = 0;
        let mut comma = false;
        for (k, t) in self.toks[self.at..].iter().enumerate() {
            match t.tok {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => {
                    depth -= 1;
                    if depth == 0 {
                        let next = self.toks.get(self.at + k + 1).map(|t| &t.tok);
                        return comma && next == Some(&Tok::Sym(';'));
                    }
                }
                Tok::Sym(',') if depth == 1 => comma = true,
                Tok::Sym(';') => return false,
                _ => {}
            }
        }
        false
    }

    fn points(&mut self) -> Result<Vec<PointSpec>> {
        self.keyword("points")?;
        self.expect('=')?;
        self.expect('[')?;
        let mut out = Vec::new();
        while !self.eat(']') {
            self.expect('(')?;
            let chart = self.small_integer("a chart index")?;
            self.expect(':')?;
            let mut coords = vec![self.expr()?];
            while self.eat(',') {
                coords.push(self.expr()?);
            }
            self.expect(')')?;
            self.eat(',');
            out.push(PointSpec { chart, coords });
        }
        Ok(out)
    }
}
