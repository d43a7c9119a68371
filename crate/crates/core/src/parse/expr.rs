use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ParseError;
use crate::algebra::{fmt_rational, RatFunc, Rational, VarName};
use crate::field::FieldElement;

/// Nesting beyond this is rejected rather than risking the stack.
const MAX_DEPTH: usize = 256;

/// Largest exponent accepted when an expression is evaluated.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Num(Rational),
    Var(VarName),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {0} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge(u32),
}

impl ExprAst {
    /// Variables in first-occurrence order.
    pub fn variables(&self) -> Vec<VarName> {
        fn walk(e: &ExprAst, out: &mut Vec<VarName>) {
            match e {
                ExprAst::Num(_) => {}
                ExprAst::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                ExprAst::Neg(a) | ExprAst::Pow(a, _) => walk(a, out),
                ExprAst::Add(a, b) | ExprAst::Sub(a, b) | ExprAst::Mul(a, b) | ExprAst::Div(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Evaluates to a rational function, resolving each variable through
    /// `lookup`.
    pub fn eval_with(&self, lookup: &impl Fn(&VarName) -> Option<FieldElement>) -> Result<FieldElement, EvalError> {
        Ok(match self {
            ExprAst::Num(q) => RatFunc::constant(q.clone()),
            ExprAst::Var(v) => lookup(v).ok_or_else(|| EvalError::UnknownVariable(v.to_string()))?,
            ExprAst::Neg(a) => -&a.eval_with(lookup)?,
            ExprAst::Add(a, b) => &a.eval_with(lookup)? + &b.eval_with(lookup)?,
            ExprAst::Sub(a, b) => &a.eval_with(lookup)? - &b.eval_with(lookup)?,
            ExprAst::Mul(a, b) => &a.eval_with(lookup)? * &b.eval_with(lookup)?,
            ExprAst::Div(a, b) => {
                let d = b.eval_with(lookup)?;
                a.eval_with(lookup)?.checked_div(&d).map_err(|_| EvalError::DivisionByZero)?.normalize()
            }
            ExprAst::Pow(a, n) => {
                if *n > MAX_EXPONENT {
                    return Err(EvalError::ExponentTooLarge(*n));
                }
                a.eval_with(lookup)?.pow(*n)
            }
        })
    }

    /// Evaluates with every variable read as itself.
    pub fn eval(&self) -> Result<FieldElement, EvalError> {
        self.eval_with(&|v| Some(RatFunc::var(v.clone())))
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprAst::Add(..) | ExprAst::Sub(..) => 1,
            ExprAst::Mul(..) | ExprAst::Div(..) => 2,
            ExprAst::Num(q) if !q.is_integer() => 2,
            ExprAst::Neg(_) => 3,
            ExprAst::Num(q) if q.is_negative() => 3,
            ExprAst::Pow(..) => 4,
            ExprAst::Num(_) | ExprAst::Var(_) => 5,
        }
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &ExprAst, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "(")?;
        write!(f, "{e}")?;
        write!(f, ")")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &ExprAst, op: &str, b: &ExprAst, p: u8| {
            write_at(f, a, p)?;
            write!(f, "{op}")?;
            write_at(f, b, p + 1)
        };
        match self {
            ExprAst::Num(q) => write!(f, "{}", fmt_rational(q)),
            ExprAst::Var(v) => write!(f, "{v}"),
            ExprAst::Neg(a) => {
                write!(f, "-")?;
                write_at(f, a, 3)
            }
            ExprAst::Add(a, b) => binary(f, a, " + ", b, 1),
            ExprAst::Sub(a, b) => binary(f, a, " - ", b, 1),
            ExprAst::Mul(a, b) => binary(f, a, "*", b, 2),
            ExprAst::Div(a, b) => binary(f, a, "/", b, 2),
            ExprAst::Pow(a, n) => {
                write_at(f, a, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Op(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str, line0: usize, col0: usize) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (line0, col0);
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Lexed { tok: Tok::Int(s.parse().expect("digits")), line: l, col: k });
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Lexed { tok: Tok::Ident(s), line: l, col: k });
        } else if "+-*/^()".contains(c) {
            chars.next();
            col += 1;
            out.push(Lexed { tok: Tok::Op(c), line: l, col: k });
        } else {
            return Err(ParseError::Syntax {
                line: l,
                col: k,
                token: format!("{c:?}"),
                message: "unexpected character".into(),
            });
        }
    }
    out.push(Lexed { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    /// Open parentheses and pending unary minuses.
    nest: usize,
}

type Parsed = Result<(ExprAst, usize), ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, message: &str) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::Syntax { line: t.line, col: t.col, token: t.tok.to_string(), message: message.into() }
    }

    fn check_depth(&self, depth: usize) -> Result<(), ParseError> {
        if depth > MAX_DEPTH {
            Err(self.error("expression nested too deeply"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Parsed {
        let (mut lhs, mut depth) = self.term()?;
        while let Tok::Op(op @ ('+' | '-')) = *self.peek() {
            self.pos += 1;
            let (rhs, d) = self.term()?;
            depth = depth.max(d) + 1;
            self.check_depth(depth)?;
            lhs = if op == '+' { ExprAst::Add(lhs.into(), rhs.into()) } else { ExprAst::Sub(lhs.into(), rhs.into()) };
        }
        Ok((lhs, depth))
    }

    fn term(&mut self) -> Parsed {
        let (mut lhs, mut depth) = self.unary()?;
        while let Tok::Op(op @ ('*' | '/')) = *self.peek() {
            self.pos += 1;
            let (rhs, d) = self.unary()?;
            lhs = match (op, lhs, rhs) {
                ('/', ExprAst::Num(a), ExprAst::Num(b)) if a.is_integer() && b.is_integer() && !b.is_zero() => {
                    ExprAst::Num(a / b)
                }
                ('*', l, r) => ExprAst::Mul(l.into(), r.into()),
                (_, l, r) => ExprAst::Div(l.into(), r.into()),
            };
            depth = depth.max(d) + 1;
            self.check_depth(depth)?;
        }
        Ok((lhs, depth))
    }

    fn unary(&mut self) -> Parsed {
        if *self.peek() == Tok::Op('-') {
            self.check_depth(self.nest + 1)?;
            self.pos += 1;
            self.nest += 1;
            let (inner, d) = self.unary()?;
            self.nest -= 1;
            return Ok(match inner {
                ExprAst::Num(q) => (ExprAst::Num(-q), d),
                e => (ExprAst::Neg(e.into()), d + 1),
            });
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let e = u32::try_from(&n).map_err(|_| self.error("exponent does not fit in 32 bits"))?;
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected a nonnegative integer exponent")),
        }
    }

    fn power(&mut self) -> Parsed {
        let (base, depth) = self.atom()?;
        let mut exps = Vec::new();
        while *self.peek() == Tok::Op('^') {
            self.pos += 1;
            exps.push(self.exponent()?);
        }
        let Some(last) = exps.pop() else {
            return Ok((base, depth));
        };
        // a^b^c = a^(b^c); the tail is all literals, so fold it.
        let mut e = last;
        while let Some(b) = exps.pop() {
            e = b.checked_pow(e).ok_or_else(|| self.error("exponent does not fit in 32 bits"))?;
        }
        Ok((ExprAst::Pow(base.into(), e), depth + 1))
    }

    fn atom(&mut self) -> Parsed {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok((ExprAst::Num(Rational::from_integer(n)), 1))
            }
            Tok::Ident(s) => {
                let v = VarName::new(&s).map_err(|_| self.error("invalid identifier"))?;
                self.pos += 1;
                Ok((ExprAst::Var(v), 1))
            }
            Tok::Op('(') => {
                self.check_depth(self.nest + 1)?;
                self.pos += 1;
                self.nest += 1;
                let (e, d) = self.expr()?;
                self.nest -= 1;
                self.check_depth(d + 1)?;
                if *self.peek() != Tok::Op(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok((e, d + 1))
            }
            Tok::End => Err(self.error("unexpected end of input")),
            _ => Err(self.error("expected a number, a variable or `(`")),
        }
    }
}

/// Parses `input` as one expression.
pub fn parse_expr(input: &str) -> Result<ExprAst, ParseError> {
    parse_expr_at(input, 1, 1)
}

/// As [`parse_expr`] with positions offset to where `input` starts in a
/// larger text.
pub(crate) fn parse_expr_at(input: &str, line: usize, col: usize) -> Result<ExprAst, ParseError> {
    let toks = lex(input, line, col)?;
    let mut p = Parser { toks, pos: 0, nest: 0 };
    let (e, _) = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::Ident(_) | Tok::Int(_) | Tok::Op('(') => Err(p.error("implicit multiplication is not supported")),
        _ => Err(p.error("unexpected token")),
    }
}
