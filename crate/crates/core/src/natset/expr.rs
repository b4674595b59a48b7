//! Set-expression language.
//!
//! ```text
//! expr := term (('|' | '&' | '\') term)*
//! term := atom | atom '>>' nat | atom '<<' nat
//! atom := '{' nat (',' nat)* '}' | 'ap(' nat ',' nat ')' | 'per(' bits ';' bits ')'
//!       | 'interval(' nat ',' nat ')' | 'N' | 'empty' | 'pow2' | 'qset' | ident
//!       | '(' expr ')'
//! ```
//!
//! Binary operators are left associative and may not be mixed without
//! parentheses.

use super::{Corpus, NatSet};
use crate::bits::Bits;
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Union,
    Intersect,
    Difference,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Union => '|',
            BinOp::Intersect => '&',
            BinOp::Difference => '\\',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Finite(Vec<u64>),
    Ap(u64, u64),
    Per(Bits, Bits),
    Interval(u64, u64),
    Naturals,
    Empty,
    Named(String),
    ShiftRight(Box<Expr>, u64),
    ShiftLeft(Box<Expr>, u64),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, corpus: &Corpus) -> Result<NatSet> {
        Ok(match self {
            Expr::Finite(v) => NatSet::finite(v.iter().copied()),
            Expr::Ap(a, d) => NatSet::ap(*a, *d),
            Expr::Per(t, m) => {
                if m.is_empty() {
                    return Err(Error::Eval("period mask must be non-empty".into()));
                }
                NatSet::periodic(t.clone(), m.clone())
            }
            Expr::Interval(a, b) => NatSet::interval(*a, *b),
            Expr::Naturals => NatSet::naturals(),
            Expr::Empty => NatSet::empty(),
            Expr::Named(n) => corpus
                .get(n)
                .cloned()
                .ok_or_else(|| Error::Eval(format!("unknown set name `{n}`")))?,
            Expr::ShiftRight(e, k) => e.eval(corpus)?.shift_right(*k),
            Expr::ShiftLeft(e, k) => e.eval(corpus)?.shift_left(*k),
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.eval(corpus)?, b.eval(corpus)?);
                match op {
                    BinOp::Union => a.union(&b),
                    BinOp::Intersect => a.intersect(&b),
                    BinOp::Difference => a.difference(&b),
                }
            }
        })
    }

    fn is_atom(&self) -> bool {
        !matches!(self, Expr::Binary(..) | Expr::ShiftLeft(..) | Expr::ShiftRight(..))
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, parent: BinOp, left: bool) -> fmt::Result {
        match self {
            // left-associative chains of the same operator print flat
            Expr::Binary(op, ..) if *op == parent && left => write!(f, "{self}"),
            Expr::Binary(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Finite(v) => {
                f.write_str("{")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            Expr::Ap(a, d) => write!(f, "ap({a},{d})"),
            Expr::Per(t, m) => write!(f, "per({t};{m})"),
            Expr::Interval(a, b) => write!(f, "interval({a},{b})"),
            Expr::Naturals => f.write_str("N"),
            Expr::Empty => f.write_str("empty"),
            Expr::Named(n) => f.write_str(n),
            Expr::ShiftRight(e, k) | Expr::ShiftLeft(e, k) => {
                let sym = if matches!(self, Expr::ShiftRight(..)) { ">>" } else { "<<" };
                if e.is_atom() {
                    write!(f, "{e} {sym} {k}")
                } else {
                    write!(f, "({e}) {sym} {k}")
                }
            }
            Expr::Binary(op, a, b) => {
                a.fmt_operand(f, *op, true)?;
                write!(f, " {} ", op.symbol())?;
                b.fmt_operand(f, *op, false)
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            expected: expected.to_string(),
        })
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(&format!("`{tok}`"))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("natural number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("natural number that fits in 64 bits")
            })
    }

    fn bits(&mut self) -> Bits {
        self.skip_ws();
        let mut b = Bits::default();
        while let Some(&c) = self.src.get(self.pos) {
            match c {
                b'0' => b.push(false),
                b'1' => b.push(true),
                _ => break,
            }
            self.pos += 1;
        }
        b
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            self.pos = start;
            return None;
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        let mut chain_op: Option<BinOp> = None;
        loop {
            let op = match self.peek() {
                Some(b'|') => BinOp::Union,
                Some(b'&') => BinOp::Intersect,
                Some(b'\\') => BinOp::Difference,
                _ => break,
            };
            if chain_op.is_some_and(|c| c != op) {
                return self.err("parentheses when mixing different binary operators");
            }
            chain_op = Some(op);
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let atom = self.atom()?;
        if self.eat(">>") {
            Ok(Expr::ShiftRight(Box::new(atom), self.nat()?))
        } else if self.eat("<<") {
            Ok(Expr::ShiftLeft(Box::new(atom), self.nat()?))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(b'{') => {
                self.pos += 1;
                let mut v = vec![self.nat()?];
                while self.eat(",") {
                    v.push(self.nat()?);
                }
                self.expect("}")?;
                v.sort_unstable();
                v.dedup();
                Ok(Expr::Finite(v))
            }
            Some(_) => {
                let save = self.pos;
                let Some(id) = self.ident() else {
                    return self.err("set atom");
                };
                let call = self.peek() == Some(b'(');
                match (id.as_str(), call) {
                    ("ap", true) | ("interval", true) => {
                        self.pos += 1;
                        let a = self.nat()?;
                        self.expect(",")?;
                        let b = self.nat()?;
                        self.expect(")")?;
                        Ok(if id == "ap" { Expr::Ap(a, b) } else { Expr::Interval(a, b) })
                    }
                    ("per", true) => {
                        self.pos += 1;
                        let t = self.bits();
                        self.expect(";")?;
                        let m = self.bits();
                        if m.is_empty() {
                            return self.err("non-empty period mask");
                        }
                        self.expect(")")?;
                        Ok(Expr::Per(t, m))
                    }
                    ("N", _) => Ok(Expr::Naturals),
                    ("empty", _) => Ok(Expr::Empty),
                    (_, true) => {
                        self.pos = save;
                        self.err("`ap(`, `per(` or `interval(`")
                    }
                    _ => Ok(Expr::Named(id)),
                }
            }
            None => self.err("set atom"),
        }
    }
}

pub fn parse_ast(text: &str) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("end of input");
    }
    Ok(e)
}

/// Parses and evaluates against the built-in corpus.
pub fn parse_expr(text: &str) -> Result<NatSet> {
    parse_expr_with(text, &Corpus::builtin())
}

pub fn parse_expr_with(text: &str, corpus: &Corpus) -> Result<NatSet> {
    parse_ast(text)?.eval(corpus)
}
