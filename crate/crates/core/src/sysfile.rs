//! Plain-text system descriptions.
//!
//! ```text
//! indep t;                 # independent variables (none: algebraic system)
//! dep x1 x2 u1;            # differential indeterminates (`var` is a synonym)
//! param m g;               # transcendental constants
//! constant c1;             # indeterminates with vanishing derivatives
//! ranking blocks [x1, x2] [u1];
//! trig x3 as cx3 sx3;      # sin(x3), cos(x3) become sx3, cx3
//! eq x1[t] - cx3*u1;
//! ineq u1;
//! ```
//!
//! Jets are written `u[t,t]`, `u[(2,0)]` or `u[2,0]`; with one independent
//! variable `u[2]` is also accepted.  `{}` may be used like parentheses.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::control::encode_trig;
use crate::diffring::{DiffRing, Ranking};
use crate::error::Error;
use crate::janet::format_admissible;
use crate::polyring::{is_ground, Poly, Var, VarOrder};
use crate::system::{SimpleSystem, System};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Jet {
    Named(Vec<String>),
    Orders(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Sym { name: String, jet: Option<Jet>, line: usize, col: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Call { func: String, arg: Box<Expr>, line: usize, col: usize },
}

impl Expr {
    pub fn sym(name: &str) -> Expr {
        Expr::Sym { name: name.to_string(), jet: None, line: 0, col: 0 }
    }

    pub fn jet(name: &str, orders: Vec<u32>) -> Expr {
        Expr::Sym { name: name.to_string(), jet: Some(Jet::Orders(orders)), line: 0, col: 0 }
    }

    pub fn num(k: i64) -> Expr {
        Expr::Num(BigInt::from(k))
    }

    /// Rewrites every node bottom-up with `f`.
    pub fn map(&self, f: &dyn Fn(&Expr) -> Option<Expr>) -> Expr {
        if let Some(e) = f(self) {
            return e;
        }
        let b = |e: &Expr| Box::new(e.map(f));
        match self {
            Expr::Num(_) | Expr::Sym { .. } => self.clone(),
            Expr::Add(a, c) => Expr::Add(b(a), b(c)),
            Expr::Sub(a, c) => Expr::Sub(b(a), b(c)),
            Expr::Mul(a, c) => Expr::Mul(b(a), b(c)),
            Expr::Div(a, c) => Expr::Div(b(a), b(c)),
            Expr::Neg(a) => Expr::Neg(b(a)),
            Expr::Pow(a, k) => Expr::Pow(b(a), *k),
            Expr::Call { func, arg, line, col } => Expr::Call { func: func.clone(), arg: b(arg), line: *line, col: *col },
        }
    }

    /// Whether `pred` holds for some node.
    pub fn any(&self, pred: &dyn Fn(&Expr) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Expr::Num(_) | Expr::Sym { .. } => false,
            Expr::Add(a, c) | Expr::Sub(a, c) | Expr::Mul(a, c) | Expr::Div(a, c) => a.any(pred) || c.any(pred),
            Expr::Neg(a) | Expr::Pow(a, _) => a.any(pred),
            Expr::Call { arg, .. } => arg.any(pred),
        }
    }

    fn position(&self) -> (usize, usize) {
        match self {
            Expr::Sym { line, col, .. } | Expr::Call { line, col, .. } => (*line, *col),
            Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) | Expr::Div(a, _) | Expr::Neg(a) | Expr::Pow(a, _) => {
                a.position()
            }
            Expr::Num(_) => (0, 0),
        }
    }
}

/// `trig angle as cos sin;`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trig {
    pub angle: String,
    pub cos: String,
    pub sin: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Roles {
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

/// A parsed system description.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemFile {
    pub indeps: Vec<String>,
    pub deps: Vec<String>,
    pub params: Vec<String>,
    /// Ranking blocks by name, highest first; `None` means one block in
    /// declaration order.
    pub ranking: Option<Vec<Vec<String>>>,
    pub equations: Vec<Expr>,
    pub inequations: Vec<Expr>,
    pub constants: Vec<String>,
    pub roles: Roles,
    pub trig: Vec<Trig>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Punct(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer, Error> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
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
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            toks.push((Tok::Ident(s), l0, c0));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            toks.push((Tok::Num(s.parse().unwrap()), l0, c0));
        } else if "+-*/^()[]{},;".contains(c) {
            chars.next();
            col += 1;
            toks.push((Tok::Punct(c), l0, c0));
        } else {
            return Err(Error::Parse { line, col, msg: format!("unexpected character '{}'", c) });
        }
    }
    Ok(Lexer { toks, pos: 0, end: (line, col) })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.1, t.2))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, Error> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c))
        }
    }

    fn ident(&mut self) -> Result<String, Error> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Names separated by commas or blanks, up to `;` or `]`.
    fn names(&mut self) -> Result<Vec<String>, Error> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(_)) => out.push(self.ident()?),
                Some(Tok::Punct(',')) => {
                    self.pos += 1;
                }
                _ => return Ok(out),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.next() {
                Some(Tok::Num(k)) => {
                    let k: u32 = k.try_into().or_else(|_| self.err("exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => {
                    self.pos -= 1;
                    return self.err("expected a nonnegative integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let (line, col) = self.here();
        match self.next() {
            Some(Tok::Num(k)) => Ok(Expr::Num(k)),
            Some(Tok::Punct('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Punct('{')) => {
                let e = self.expr()?;
                self.expect('}')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if self.eat('(') {
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::Call { func: name, arg: Box::new(arg), line, col });
                }
                let jet = if self.eat('[') { Some(self.jet()?) } else { None };
                Ok(Expr::Sym { name, jet, line, col })
            }
            _ => {
                self.pos -= 1;
                self.err("expected an expression")
            }
        }
    }

    fn jet(&mut self) -> Result<Jet, Error> {
        if self.eat(']') {
            return Ok(Jet::Orders(Vec::new()));
        }
        let paren = self.eat('(');
        let jet = match self.peek() {
            Some(Tok::Num(_)) => {
                let mut v = Vec::new();
                loop {
                    match self.next() {
                        Some(Tok::Num(k)) => v.push(k.try_into().or_else(|_| self.err("jet order too large"))?),
                        _ => {
                            self.pos -= 1;
                            return self.err("expected a derivative order");
                        }
                    }
                    if !self.eat(',') {
                        break;
                    }
                }
                Jet::Orders(v)
            }
            _ => {
                let v = self.names()?;
                if v.is_empty() {
                    return self.err("expected derivation names or orders");
                }
                Jet::Named(v)
            }
        };
        if paren {
            self.expect(')')?;
        }
        self.expect(']')?;
        Ok(jet)
    }
}

/// Parses and validates a system description.
pub fn parse(text: &str) -> Result<SystemFile, Error> {
    let mut lx = lex(text)?;
    let mut f = SystemFile::default();
    while lx.peek().is_some() {
        let kw = lx.ident()?;
        match kw.as_str() {
            "indep" => f.indeps.extend(lx.names()?),
            "dep" | "var" => f.deps.extend(lx.names()?),
            "param" => f.params.extend(lx.names()?),
            "constant" => f.constants.extend(lx.names()?),
            "state" => f.roles.states.extend(lx.names()?),
            "input" => f.roles.inputs.extend(lx.names()?),
            "output" => f.roles.outputs.extend(lx.names()?),
            "eq" => f.equations.push(lx.expr()?),
            "ineq" => f.inequations.push(lx.expr()?),
            "trig" => {
                let angle = lx.ident()?;
                if !lx.keyword("as") {
                    return lx.err("expected 'as'");
                }
                let cos = lx.ident()?;
                lx.eat(',');
                let sin = lx.ident()?;
                f.trig.push(Trig { angle, cos, sin });
            }
            "ranking" => {
                lx.keyword("blocks");
                let mut blocks = Vec::new();
                if lx.peek() == Some(&Tok::Punct('[')) {
                    while lx.eat('[') {
                        blocks.push(lx.names()?);
                        lx.expect(']')?;
                    }
                } else {
                    blocks.push(lx.names()?);
                }
                lx.keyword("degrevlex");
                f.ranking = Some(blocks);
            }
            _ => {
                lx.pos -= 1;
                return lx.err(format!("unknown statement '{}'", kw));
            }
        }
        lx.expect(';')?;
    }
    f.validate()?;
    Ok(f)
}

impl SystemFile {
    fn declared_deps(&self) -> Vec<String> {
        let mut deps = Vec::new();
        for d in &self.deps {
            if let Some(t) = self.trig.iter().find(|t| &t.angle == d) {
                deps.push(t.cos.clone());
                deps.push(t.sin.clone());
            }
            deps.push(d.clone());
        }
        deps
    }

    fn validate(&self) -> Result<(), Error> {
        let mut seen = HashMap::new();
        for name in self.params.iter().chain(&self.indeps).chain(&self.declared_deps()) {
            if seen.insert(name.clone(), ()).is_some() {
                return Err(Error::Invalid(format!("'{}' is declared twice", name)));
            }
        }
        let check = |name: &String| {
            if self.deps.contains(name) || self.declared_deps().contains(name) {
                Ok(())
            } else {
                Err(Error::UndeclaredSymbol { name: name.clone(), line: 0, col: 0 })
            }
        };
        for name in self.constants.iter().chain(&self.roles.states).chain(&self.roles.inputs).chain(&self.roles.outputs) {
            check(name)?;
        }
        for t in &self.trig {
            if !self.deps.contains(&t.angle) {
                return Err(Error::UndeclaredSymbol { name: t.angle.clone(), line: 0, col: 0 });
            }
        }
        if let Some(blocks) = &self.ranking {
            for name in blocks.iter().flatten() {
                if !self.deps.contains(name) {
                    return Err(Error::UndeclaredSymbol { name: name.clone(), line: 0, col: 0 });
                }
            }
        }
        for e in self.equations.iter().chain(&self.inequations) {
            check_expr(e, self)?;
        }
        Ok(())
    }

    /// Replaces the ranking by a single block in `order`.
    pub fn set_order(&mut self, order: Vec<String>) {
        self.ranking = Some(vec![order]);
    }

    pub fn set_blocks(&mut self, blocks: Vec<Vec<String>>) {
        self.ranking = Some(blocks);
    }

    pub fn is_differential(&self) -> bool {
        !self.indeps.is_empty()
    }

    /// The file after applying its `trig` declarations.
    pub fn encoded(&self) -> SystemFile {
        let mut f = self.clone();
        for t in &self.trig {
            f = encode_trig(&f, &t.angle, &t.cos, &t.sin);
        }
        f.trig.clear();
        f
    }

    /// The ring declared by the file (after trig encoding).
    pub fn ring(&self) -> Result<DiffRing, Error> {
        if !self.trig.is_empty() {
            return self.encoded().ring();
        }
        let index = |name: &String| {
            self.deps
                .iter()
                .position(|d| d == name)
                .ok_or_else(|| Error::UndeclaredSymbol { name: name.clone(), line: 0, col: 0 })
        };
        let blocks = match &self.ranking {
            None => vec![(0..self.deps.len()).collect()],
            Some(b) => {
                let mut out = Vec::new();
                for block in b {
                    out.push(block.iter().map(index).collect::<Result<Vec<_>, _>>()?);
                }
                out
            }
        };
        let listed: usize = blocks.iter().map(|b: &Vec<usize>| b.len()).sum();
        if listed != self.deps.len() {
            return Err(Error::Invalid("the ranking must list every dependent variable exactly once".into()));
        }
        let ranking = Ranking::blocks(self.indeps.len(), blocks)?;
        DiffRing::new(self.params.clone(), self.indeps.clone(), self.deps.clone(), ranking)
    }

    /// Polynomial system of the file.
    pub fn system(&self) -> Result<System, Error> {
        if !self.trig.is_empty() {
            return self.encoded().system();
        }
        let ring = self.ring()?;
        let mut eqs = Vec::new();
        for e in &self.equations {
            eqs.push(to_poly(e, self, &ring)?);
        }
        for c in &self.constants {
            let k = self.deps.iter().position(|d| d == c).unwrap();
            for j in 0..self.indeps.len() {
                eqs.push(Poly::var(Var::indet_var(k).derive(j)));
            }
        }
        let mut ineqs = Vec::new();
        for e in &self.inequations {
            ineqs.push(to_poly(e, self, &ring)?);
        }
        Ok(System::new(ring, eqs, ineqs))
    }

    /// Parses a polynomial in the symbols of this file.
    pub fn parse_poly(&self, ring: &DiffRing, text: &str) -> Result<Poly, Error> {
        let mut lx = lex(text)?;
        let e = lx.expr()?;
        if lx.peek().is_some() {
            return lx.err("unexpected trailing input");
        }
        let mut f = self.encoded();
        f.deps = ring.indets.clone();
        to_poly(&e, &f, ring)
    }
}

/// First offending symbol of `e`, left to right.
fn check_expr(e: &Expr, f: &SystemFile) -> Result<(), Error> {
    let n = f.indeps.len();
    let mut stack = vec![e];
    while let Some(x) = stack.pop() {
        symbol_check(x, f, n)?;
        match x {
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                stack.push(b);
                stack.push(a);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => stack.push(a),
            Expr::Call { arg, .. } => stack.push(arg),
            _ => {}
        }
    }
    Ok(())
}

fn symbol_check(x: &Expr, f: &SystemFile, n: usize) -> Result<(), Error> {
    match x {
        Expr::Sym { name, jet, line, col } => {
            let known = f.params.contains(name) || f.indeps.contains(name) || f.deps.contains(name);
            if !known {
                return Err(Error::UndeclaredSymbol { name: name.clone(), line: *line, col: *col });
            }
            if let Some(j) = jet {
                if !f.deps.contains(name) {
                    return Err(Error::BadJetIndex { line: *line, col: *col, msg: format!("'{}' is not a dependent variable", name) });
                }
                jet_orders(j, &f.indeps, n, *line, *col)?;
            }
            Ok(())
        }
        Expr::Call { func, line, col, .. } if func != "sin" && func != "cos" => {
            Err(Error::Parse { line: *line, col: *col, msg: format!("unknown function '{}'", func) })
        }
        _ => Ok(()),
    }
}

fn jet_orders(jet: &Jet, indeps: &[String], n: usize, line: usize, col: usize) -> Result<Vec<u32>, Error> {
    let bad = |msg: String| Error::BadJetIndex { line, col, msg };
    match jet {
        Jet::Named(names) => {
            let mut o = vec![0u32; n];
            for s in names {
                let j = indeps.iter().position(|x| x == s).ok_or_else(|| bad(format!("'{}' is not an independent variable", s)))?;
                o[j] += 1;
            }
            Ok(o)
        }
        Jet::Orders(v) if v.is_empty() => Ok(vec![0; n]),
        Jet::Orders(v) if v.len() == n => {
            if v.iter().any(|&k| k > 200) {
                return Err(bad("derivative order too large".into()));
            }
            Ok(v.clone())
        }
        Jet::Orders(v) => Err(bad(format!("expected {} orders, found {}", n, v.len()))),
    }
}

/// Numerator and ground denominator of an expression.
fn eval(e: &Expr, f: &SystemFile, ring: &DiffRing) -> Result<(Poly, Poly), Error> {
    let n = f.indeps.len();
    Ok(match e {
        Expr::Num(k) => (Poly::constant(k.clone()), Poly::one()),
        Expr::Sym { name, jet, line, col } => {
            symbol_check(e, f, n)?;
            let v = if let Some(i) = f.params.iter().position(|x| x == name) {
                Var::param(i)
            } else if let Some(j) = f.indeps.iter().position(|x| x == name) {
                Var::indep(j)
            } else {
                let k = ring.indet_index(name).ok_or_else(|| Error::UndeclaredSymbol { name: name.clone(), line: *line, col: *col })?;
                let o = match jet {
                    Some(j) => jet_orders(j, &f.indeps, n, *line, *col)?,
                    None => vec![0; n],
                };
                Var::jet(k, &o)
            };
            (Poly::var(v), Poly::one())
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (na, da) = eval(a, f, ring)?;
            let (nb, db) = eval(b, f, ring)?;
            let (x, y) = (&na * &db, &nb * &da);
            let num = if matches!(e, Expr::Add(..)) { &x + &y } else { &x - &y };
            (num, &da * &db)
        }
        Expr::Mul(a, b) => {
            let (na, da) = eval(a, f, ring)?;
            let (nb, db) = eval(b, f, ring)?;
            (&na * &nb, &da * &db)
        }
        Expr::Div(a, b) => {
            let (na, da) = eval(a, f, ring)?;
            let (nb, db) = eval(b, f, ring)?;
            let (line, col) = b.position();
            if !is_ground(&nb) {
                return Err(Error::Parse { line, col, msg: "denominators must not involve dependent variables".into() });
            }
            if nb.is_zero() {
                return Err(Error::Parse { line, col, msg: "division by zero".into() });
            }
            (&na * &db, &da * &nb)
        }
        Expr::Neg(a) => {
            let (na, da) = eval(a, f, ring)?;
            (-&na, da)
        }
        Expr::Pow(a, k) => {
            let (na, da) = eval(a, f, ring)?;
            (na.pow(*k), da.pow(*k))
        }
        Expr::Call { func, line, col, .. } => {
            return Err(Error::Parse { line: *line, col: *col, msg: format!("{}() needs a trig declaration", func) })
        }
    })
}

fn to_poly(e: &Expr, f: &SystemFile, ring: &DiffRing) -> Result<Poly, Error> {
    let (num, den) = eval(e, f, ring)?;
    debug_assert!(!den.is_zero());
    // The denominator is a ground unit; only the numerator matters, up to
    // a ground factor.  Clear integer content so inputs stay small.
    let _ = den;
    Ok(if num.is_zero() { num } else { num.primitive_int() })
}

/// Renders a polynomial in the input syntax; with `leader` set, that
/// variable is wrapped in braces.
pub fn format_poly(ring: &DiffRing, p: &Poly, leader: Option<Var>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let rk = &ring.ranking;
    let mut terms: Vec<(Vec<(u128, u32)>, &crate::polyring::Monomial, &BigInt)> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut key: Vec<(u128, u32)> = m.pairs().iter().map(|&(v, e)| (rk.rank_key(v), e)).collect();
            key.sort_by(|a, b| b.cmp(a));
            (key, m, c)
        })
        .collect();
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    let mut s = String::new();
    for (i, (_, m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mut factors: Vec<(u128, String)> = m
            .pairs()
            .iter()
            .map(|&(v, e)| {
                let name = ring.var_name(v);
                let name = if Some(v) == leader { format!("{{{}}}", name) } else { name };
                let f = if e == 1 { name } else { format!("{}^{}", name, e) };
                (rk.rank_key(v), f)
            })
            .collect();
        factors.sort_by_key(|x| std::cmp::Reverse(x.0));
        let mut parts: Vec<String> = Vec::new();
        if !a.is_one() || factors.is_empty() {
            parts.push(a.to_string());
        }
        parts.extend(factors.into_iter().map(|x| x.1));
        s.push_str(&parts.join("*"));
    }
    s
}

/// Declarations reproducing `ring`.
pub fn format_declarations(ring: &DiffRing) -> String {
    let mut s = String::new();
    if !ring.indeps.is_empty() {
        let _ = writeln!(s, "indep {};", ring.indeps.join(" "));
    }
    let _ = writeln!(s, "dep {};", ring.indets.join(" "));
    if !ring.params.is_empty() {
        let _ = writeln!(s, "param {};", ring.params.join(" "));
    }
    let blocks: Vec<String> = ring
        .ranking
        .block_list()
        .iter()
        .map(|b| format!("[{}]", b.iter().map(|&k| ring.indets[k].as_str()).collect::<Vec<_>>().join(", ")))
        .collect();
    let _ = writeln!(s, "ranking blocks {};", blocks.join(" "));
    s
}

/// The equations and inequations of a simple system, one per line, with
/// leaders in braces and admissible derivations as trailing comments.
pub fn format_system(ring: &DiffRing, sys: &SimpleSystem) -> String {
    let mut s = String::new();
    let names: Vec<String> = ring.indeps.clone();
    for e in &sys.equations {
        let _ = write!(s, "eq {};", format_poly(ring, &e.poly, Some(e.leader)));
        if !e.admissible.is_empty() {
            let _ = write!(s, "  # {}", format_admissible(&e.admissible, &names));
        }
        s.push('\n');
    }
    for q in &sys.inequations {
        let _ = writeln!(s, "ineq {};", format_poly(ring, &q.poly, Some(q.leader)));
    }
    s
}
