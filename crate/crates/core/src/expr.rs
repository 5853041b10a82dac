//! A small expression language for polynomials, delta expansions, spinor
//! polynomials and differential operators.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := rational | 'i' | var | 'd[' uint,… ']' | 'D[' uint,… ']'
//!         | 'cov(' uint ')' | '(' expr ')'
//! var    := ('x' | 'p') digit | ('w' | 'wb') ('1' | '2')
//! ```
//!
//! `a/b` is a rational literal, not a division. `d[κ]` is `∂^κ δ`, `D[κ]` is
//! the operator `∂^κ`, `cov(s2)` is `(ω̄ x̃ ω)^{s2}`. Products follow the
//! operand types: polynomial times functional is the functional product,
//! operator times operator is composition. Every printed value parses back
//! to an equal value.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{DiffOp, MultiIndex, Poly, Scalar, VarSpace};
use crate::delta::DeltaExpansion;
use crate::error::{Error, Result};
use crate::spinor::{covariant_poly, SpinorPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(BigRational),
    ImaginaryUnit,
    Var {
        space: VarSpace,
        axis: usize,
    },
    /// `w1, w2` (`bar = false`) and `wb1, wb2`, zero-based index.
    SpinorVar {
        bar: bool,
        index: usize,
    },
    Delta(Vec<u32>),
    Derivative(Vec<u32>),
    Covariant(u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
            continue;
        }
        if "+-*^/()[],".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
            i += 1;
            column += 1;
            continue;
        }
        return Err(Error::Parse {
            line: l0,
            column: c0,
            message: format!("unexpected character '{c}'"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.error(&t, format!("expected '{c}'"))
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => {
                u32::try_from(n.clone()).or_else(|_| self.error(&t, "integer too large"))
            }
            _ => self.error(&t, "expected an unsigned integer"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.is_sym('-') {
            self.next();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.is_sym('+') {
                self.next();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.next();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.is_sym('*') {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.is_sym('^') {
            self.next();
            let e = self.uint()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn index_list(&mut self) -> Result<Vec<u32>> {
        self.expect_sym('[')?;
        let mut v = vec![self.uint()?];
        while self.is_sym(',') {
            self.next();
            v.push(self.uint()?);
        }
        self.expect_sym(']')?;
        Ok(v)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => {
                if self.is_sym('/') {
                    self.next();
                    let dt = self.next();
                    let Tok::Int(d) = &dt.tok else {
                        return self.error(&dt, "expected a denominator");
                    };
                    if d == &BigInt::from(0) {
                        return self.error(&dt, "zero denominator");
                    }
                    Ok(Expr::Number(BigRational::new(n.clone(), d.clone())))
                } else {
                    Ok(Expr::Number(BigRational::from_integer(n.clone())))
                }
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(&t, name),
            Tok::End => self.error(&t, "unexpected end of input"),
            Tok::Sym(c) => self.error(&t, format!("unexpected '{c}'")),
        }
    }

    fn ident(&mut self, t: &Token, name: &str) -> Result<Expr> {
        match name {
            "i" => return Ok(Expr::ImaginaryUnit),
            "d" | "D" if self.is_sym('[') => {
                let k = self.index_list()?;
                return Ok(if name == "d" {
                    Expr::Delta(k)
                } else {
                    Expr::Derivative(k)
                });
            }
            "cov" if self.is_sym('(') => {
                self.next();
                let s2 = self.uint()?;
                self.expect_sym(')')?;
                return Ok(Expr::Covariant(s2));
            }
            _ => {}
        }
        let (head, digits) = name.split_at(
            name.find(|c: char| c.is_ascii_digit())
                .unwrap_or(name.len()),
        );
        let index: Option<usize> = if digits.len() == 1 {
            digits.parse().ok()
        } else {
            None
        };
        match (head, index) {
            ("x", Some(a)) => Ok(Expr::Var {
                space: VarSpace::Position,
                axis: a,
            }),
            ("p", Some(a)) => Ok(Expr::Var {
                space: VarSpace::Momentum,
                axis: a,
            }),
            ("w", Some(a @ 1..=2)) => Ok(Expr::SpinorVar {
                bar: false,
                index: a - 1,
            }),
            ("wb", Some(a @ 1..=2)) => Ok(Expr::SpinorVar {
                bar: true,
                index: a - 1,
            }),
            _ => self.error(t, format!("unknown identifier '{name}'")),
        }
    }
}

/// Parses text into an expression tree.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    let t = p.next();
    if t.tok != Tok::End {
        return p.error(&t, "trailing input");
    }
    Ok(e)
}

/// Evaluation settings: the number of coordinates, and the variable space
/// used when the expression names no variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub dim: usize,
    pub default_space: VarSpace,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            dim: 4,
            default_space: VarSpace::Momentum,
        }
    }
}

/// A value of the expression language.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Poly(Poly),
    Delta(DeltaExpansion),
    SpinorPoly(SpinorPoly<Poly>),
    SpinorDelta(SpinorPoly<DeltaExpansion>),
    Op(DiffOp),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Poly(_) => "polynomial",
            Value::Delta(_) => "delta expansion",
            Value::SpinorPoly(_) => "spinor polynomial",
            Value::SpinorDelta(_) => "spinor delta expansion",
            Value::Op(_) => "operator",
        }
    }

    /// Constant polynomials become scalars, bidegree-(0,0) spinors become
    /// their coefficient, zero values become the scalar 0.
    fn normalize(self) -> Value {
        match self {
            Value::Poly(p) if p.degree().unwrap_or(0) == 0 => {
                Value::Scalar(p.coeff(&MultiIndex::zeros(p.dim())))
            }
            Value::Delta(d) if d.is_zero() => Value::Scalar(Scalar::zero()),
            Value::SpinorPoly(s) if s.is_zero() => Value::Scalar(Scalar::zero()),
            Value::SpinorDelta(s) if s.is_zero() => Value::Scalar(Scalar::zero()),
            Value::Op(o) if o.is_zero() => Value::Scalar(Scalar::zero()),
            Value::SpinorPoly(s) if s.bidegree() == (0, 0) => {
                let c = s.terms().next().map(|(_, c)| c.clone()).expect("nonzero");
                Value::Poly(c).normalize()
            }
            Value::SpinorDelta(s) if s.bidegree() == (0, 0) => {
                let c = s.terms().next().map(|(_, c)| c.clone()).expect("nonzero");
                Value::Delta(c)
            }
            v => v,
        }
    }

    pub fn as_poly(&self, opts: &EvalOptions, space: VarSpace) -> Result<Poly> {
        match self {
            Value::Scalar(c) => Ok(Poly::constant(opts.dim, space, c.clone())),
            Value::Poly(p) => Ok(p.clone()),
            other => Err(Error::Type(format!(
                "expected a polynomial, got a {}",
                other.kind()
            ))),
        }
    }

    pub fn as_delta(&self, dim: usize) -> Result<DeltaExpansion> {
        match self {
            Value::Delta(d) => Ok(d.clone()),
            Value::Scalar(c) if c.is_zero() => Ok(DeltaExpansion::zero(dim)),
            other => Err(Error::Type(format!(
                "expected a delta expansion, got a {}",
                other.kind()
            ))),
        }
    }

    pub fn as_spinor_delta(&self, s2: u32) -> Result<SpinorPoly<DeltaExpansion>> {
        match self {
            Value::SpinorDelta(s) => Ok(s.clone()),
            Value::Scalar(c) if c.is_zero() => Ok(SpinorPoly::new(s2, s2)),
            Value::Delta(d) if s2 == 0 => Ok(SpinorPoly::scalar(d.clone())),
            other => Err(Error::Type(format!(
                "expected a spinor delta expansion, got a {}",
                other.kind()
            ))),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Delta(d) => write!(f, "{d}"),
            Value::SpinorPoly(s) => write!(f, "{s}"),
            Value::SpinorDelta(s) => write!(f, "{s}"),
            Value::Op(o) => write!(f, "{o}"),
        }
    }
}

fn collect_spaces(e: &Expr, spaces: &mut Vec<VarSpace>, has_delta: &mut bool) {
    match e {
        Expr::Var { space, .. } => spaces.push(*space),
        Expr::Delta(_) => *has_delta = true,
        Expr::Neg(a) | Expr::Pow(a, _) => collect_spaces(a, spaces, has_delta),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            collect_spaces(a, spaces, has_delta);
            collect_spaces(b, spaces, has_delta);
        }
        _ => {}
    }
}

/// The variable space of an expression: the one its variables use, or
/// position space if it contains delta literals, or the default.
pub fn expression_space(e: &Expr, opts: &EvalOptions) -> Result<VarSpace> {
    let mut spaces = Vec::new();
    let mut has_delta = false;
    collect_spaces(e, &mut spaces, &mut has_delta);
    spaces.sort_by_key(|s| *s == VarSpace::Momentum);
    spaces.dedup();
    match spaces.as_slice() {
        [] if has_delta => Ok(VarSpace::Position),
        [] => Ok(opts.default_space),
        [s] => Ok(*s),
        _ => Err(Error::Type(
            "expression mixes position and momentum variables".into(),
        )),
    }
}

struct Evaluator {
    opts: EvalOptions,
    space: VarSpace,
}

fn mismatch(op: &str, a: &Value, b: &Value) -> Error {
    Error::Type(format!("cannot {op} a {} and a {}", a.kind(), b.kind()))
}

impl Evaluator {
    fn spinor_one(&self, bar: bool, index: usize) -> SpinorPoly<Poly> {
        let (a, b) = if bar {
            (MultiIndex::zeros(2), MultiIndex::unit(2, index))
        } else {
            (MultiIndex::unit(2, index), MultiIndex::zeros(2))
        };
        let mut s = SpinorPoly::new(a.order(), b.order());
        s.add_term(a, b, Poly::one(self.opts.dim, self.space))
            .expect("unit bidegree");
        s
    }

    fn eval(&self, e: &Expr) -> Result<Value> {
        let v = match e {
            Expr::Number(r) => Value::Scalar(Scalar::real(r.clone())),
            Expr::ImaginaryUnit => Value::Scalar(Scalar::i()),
            Expr::Var { space, axis } => {
                if *axis >= self.opts.dim {
                    return Err(Error::InvalidAxis(format!(
                        "variable index {axis} outside 0..{}",
                        self.opts.dim
                    )));
                }
                Value::Poly(Poly::var(self.opts.dim, *space, *axis))
            }
            Expr::SpinorVar { bar, index } => Value::SpinorPoly(self.spinor_one(*bar, *index)),
            Expr::Delta(k) => Value::Delta(DeltaExpansion::derivative(MultiIndex::new(k))),
            Expr::Derivative(k) => {
                if k.len() != self.opts.dim {
                    return Err(Error::DimensionMismatch {
                        left: self.opts.dim,
                        right: k.len(),
                    });
                }
                Value::Op(DiffOp::derivative(
                    self.opts.dim,
                    self.space,
                    MultiIndex::new(k),
                ))
            }
            Expr::Covariant(s2) => {
                if self.opts.dim != 4 {
                    return Err(Error::DimensionMismatch {
                        left: 4,
                        right: self.opts.dim,
                    });
                }
                Value::SpinorPoly(covariant_poly(*s2, self.space))
            }
            Expr::Neg(a) => self.scale(self.eval(a)?, &Scalar::from_int(-1))?,
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?)?,
            Expr::Sub(a, b) => {
                let rhs = self.scale(self.eval(b)?, &Scalar::from_int(-1))?;
                self.add(self.eval(a)?, rhs)?
            }
            Expr::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?)?,
            Expr::Pow(a, n) => self.pow(self.eval(a)?, *n)?,
        };
        Ok(v.normalize())
    }

    fn scale(&self, v: Value, c: &Scalar) -> Result<Value> {
        Ok(match v {
            Value::Scalar(s) => Value::Scalar(&s * c),
            Value::Poly(p) => Value::Poly(p.scale(c)),
            Value::Delta(d) => Value::Delta(d.scale(c)),
            Value::SpinorPoly(s) => Value::SpinorPoly(s.scale(c)),
            Value::SpinorDelta(s) => Value::SpinorDelta(s.scale(c)),
            Value::Op(o) => Value::Op(o.scale(c)),
        })
    }

    fn poly(&self, c: &Scalar) -> Poly {
        Poly::constant(self.opts.dim, self.space, c.clone())
    }

    fn add(&self, a: Value, b: Value) -> Result<Value> {
        use Value::*;
        Ok(match (a, b) {
            (Scalar(z), v) | (v, Scalar(z)) if z.is_zero() => v,
            (Scalar(x), Scalar(y)) => Scalar(&x + &y),
            (Scalar(x), Poly(p)) | (Poly(p), Scalar(x)) => Poly(p.checked_add(&self.poly(&x))?),
            (Poly(p), Poly(q)) => Poly(p.checked_add(&q)?),
            (Scalar(x), Op(o)) | (Op(o), Scalar(x)) => {
                Op(o.checked_add(&DiffOp::multiplication(self.poly(&x)))?)
            }
            (Poly(p), Op(o)) | (Op(o), Poly(p)) => Op(o.checked_add(&DiffOp::multiplication(p))?),
            (Op(o), Op(q)) => Op(o.checked_add(&q)?),
            (Delta(d), Delta(e)) => Delta(d.checked_add(&e)?),
            (SpinorPoly(s), SpinorPoly(t)) => SpinorPoly(s.checked_add(&t)?),
            (SpinorDelta(s), SpinorDelta(t)) => SpinorDelta(s.checked_add(&t)?),
            (x, y) => return Err(mismatch("add", &x, &y)),
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        use Value::*;
        Ok(match (a, b) {
            (Scalar(x), v) | (v, Scalar(x)) => self.scale(v, &x)?,
            (Poly(p), Poly(q)) => Poly(p.checked_mul(&q)?),
            (Poly(p), Delta(d)) | (Delta(d), Poly(p)) => Delta(d.mul_poly(&p)?),
            (Poly(p), SpinorPoly(s)) | (SpinorPoly(s), Poly(p)) => {
                SpinorPoly(s.map(|c| p.checked_mul(c))?)
            }
            (Poly(p), SpinorDelta(s)) | (SpinorDelta(s), Poly(p)) => {
                SpinorDelta(s.map(|c| c.mul_poly(&p))?)
            }
            (SpinorPoly(s), Delta(d)) | (Delta(d), SpinorPoly(s)) => {
                SpinorDelta(s.map(|c| d.mul_poly(c))?)
            }
            (SpinorPoly(s), SpinorPoly(t)) => SpinorPoly(s.mul(&t)?),
            (SpinorPoly(s), SpinorDelta(t)) | (SpinorDelta(t), SpinorPoly(s)) => {
                let mut out = crate::spinor::SpinorPoly::new(
                    s.bidegree().0 + t.bidegree().0,
                    s.bidegree().1 + t.bidegree().1,
                );
                for ((a1, b1), p) in s.terms() {
                    for ((a2, b2), d) in t.terms() {
                        out.add_term(a1.add(a2), b1.add(b2), d.mul_poly(p)?)?;
                    }
                }
                SpinorDelta(out)
            }
            (Poly(p), Op(o)) => Op(o.left_mul(&p)?),
            (Op(o), Poly(p)) => Op(o.compose(&DiffOp::multiplication(p))?),
            (Op(o), Op(q)) => Op(o.compose(&q)?),
            (x, y) => return Err(mismatch("multiply", &x, &y)),
        })
    }

    fn pow(&self, v: Value, n: u32) -> Result<Value> {
        if n == 1 {
            return Ok(v);
        }
        Ok(match v {
            Value::Scalar(s) => Value::Scalar(s.pow(n)),
            Value::Poly(p) => Value::Poly(p.pow(n)),
            Value::SpinorPoly(s) => Value::SpinorPoly(s.pow(n)?),
            Value::Op(o) => Value::Op(o.pow(n)?),
            _ if n == 0 => Value::Scalar(Scalar::one()),
            other => {
                return Err(Error::Type(format!(
                    "cannot raise a {} to a power",
                    other.kind()
                )))
            }
        })
    }
}

/// Evaluates a parsed expression.
pub fn eval(e: &Expr, opts: &EvalOptions) -> Result<Value> {
    let space = expression_space(e, opts)?;
    Evaluator { opts: *opts, space }.eval(e)
}

/// Parses and evaluates with default options (four coordinates).
pub fn parse_expression(text: &str) -> Result<Value> {
    parse_expression_with(text, &EvalOptions::default())
}

pub fn parse_expression_with(text: &str, opts: &EvalOptions) -> Result<Value> {
    eval(&parse(text)?, opts)
}
