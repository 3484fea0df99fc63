//! Surface syntax for elements of `Gr(TL)`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := atom ('.' atom)*
//! atom    := scalar? primary
//! primary := '1' | 'cup' ('^' int)? | 'v[' int ',' int ']' | '(' expr ')'
//! scalar  := rational | 'q' '^' int | 'delta'
//! ```
//!
//! `*` is the stitch-sum product and `.` the bullet product.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::cup::cup_power;
use crate::graded::GradedElement;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarLit {
    Rational(BigRational),
    QPow(i64),
    Delta,
}

impl ScalarLit {
    pub fn value(&self) -> Scalar {
        match self {
            ScalarLit::Rational(r) => Scalar::from_rational(r),
            ScalarLit::QPow(k) => Scalar::q_pow(*k as i32),
            ScalarLit::Delta => Scalar::delta(),
        }
    }
}

impl fmt::Display for ScalarLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarLit::Rational(r) => write!(f, "{r}"),
            ScalarLit::QPow(k) => write!(f, "q^{k}"),
            ScalarLit::Delta => write!(f, "delta"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    One,
    Cup(i64),
    V { m: usize, i: usize },
    Scaled(ScalarLit, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mult(Box<Expr>, Box<Expr>),
    Bullet(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 0-based, in characters.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Word(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<(Vec<Token>, (usize, usize)), ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 0);
    // position of the last non-blank character, reported for a premature end
    let mut last = (1, 0);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c == '\n' {
            line += 1;
            col = 0;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let start = col;
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while k < chars.len() && chars[k].is_ascii_digit() {
                s.push(chars[k]);
                k += 1;
                col += 1;
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                s.push(chars[k]);
                k += 1;
                col += 1;
            }
            Tok::Word(s)
        } else if "+-*./^[],()".contains(c) {
            k += 1;
            col += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError { line, column: col, message: format!("unexpected character '{c}'") });
        };
        last = (line, col - 1);
        out.push(Token { tok, line, column: start });
    }
    Ok((out, last))
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column));
        let found = self.peek().map_or("end of input".to_string(), |t| t.to_string());
        ParseError { line, column, message: format!("{}, found {found}", message.into()) }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(x)) if x == w)
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        let n = self.nat()?;
        let n = if neg { -n } else { n };
        n.to_i64().ok_or_else(|| self.error("integer out of range"))
    }

    fn small(&mut self) -> Result<usize, ParseError> {
        let n = self.nat()?;
        n.to_usize().filter(|&x| x <= 64).ok_or_else(|| self.error("index out of range"))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
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

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mult(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.atom()?;
        while self.eat('.') {
            lhs = Expr::Bullet(Box::new(lhs), Box::new(self.atom()?));
        }
        Ok(lhs)
    }

    fn starts_primary(&self, offset: usize) -> bool {
        match self.toks.get(self.pos + offset).map(|t| &t.tok) {
            Some(Tok::Int(_)) => true,
            Some(Tok::Word(w)) => w == "cup" || w == "v",
            Some(Tok::Sym('(')) => true,
            _ => false,
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let scalar = self.scalar()?;
        let p = self.primary()?;
        Ok(match scalar {
            Some(s) => Expr::Scaled(s, Box::new(p)),
            None => p,
        })
    }

    /// A scalar prefix, if one is present. A bare integer is a scalar only
    /// when a primary follows it (`2 cup`); otherwise it is the primary `1`.
    fn scalar(&mut self) -> Result<Option<ScalarLit>, ParseError> {
        if self.is_word("delta") {
            self.pos += 1;
            return Ok(Some(ScalarLit::Delta));
        }
        if self.is_word("q") {
            self.pos += 1;
            self.expect('^')?;
            return Ok(Some(ScalarLit::QPow(self.int()?)));
        }
        if let Some(Tok::Int(_)) = self.peek() {
            let has_den = self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Sym('/'));
            if has_den {
                let num = self.nat()?;
                self.pos += 1;
                let den = self.nat()?;
                if den.is_zero() {
                    self.pos -= 1;
                    return Err(self.error("zero denominator"));
                }
                return Ok(Some(ScalarLit::Rational(BigRational::new(num, den))));
            }
            if self.starts_primary(1) {
                let num = self.nat()?;
                return Ok(Some(ScalarLit::Rational(BigRational::from_integer(num))));
            }
        }
        Ok(None)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) if n.is_one() => {
                self.pos += 1;
                Ok(Expr::One)
            }
            Some(Tok::Word(w)) if w == "cup" => {
                self.pos += 1;
                if self.eat('^') {
                    Ok(Expr::Cup(self.int()?))
                } else {
                    Ok(Expr::Cup(1))
                }
            }
            Some(Tok::Word(w)) if w == "v" => {
                self.pos += 1;
                self.expect('[')?;
                let m = self.small()?;
                self.expect(',')?;
                let i = self.nat()?.to_usize().ok_or_else(|| self.error("index out of range"))?;
                self.expect(']')?;
                Ok(Expr::V { m, i })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.error("expected '1', 'cup', 'v[m,i]' or '('")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let (toks, end) = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.error("expected an operator or end of input"));
    }
    Ok(e)
}

// binding strength for the printer
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 0,
        Expr::Mult(..) => 1,
        Expr::Bullet(..) => 2,
        Expr::Scaled(..) => 3,
        _ => 4,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "(")?;
        write!(f, "{e}")?;
        write!(f, ")")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::One => write!(f, "1"),
            Expr::Cup(1) => write!(f, "cup"),
            Expr::Cup(k) => write!(f, "cup^{k}"),
            Expr::V { m, i } => write!(f, "v[{m},{i}]"),
            Expr::Scaled(s, p) => {
                write!(f, "{s} ")?;
                write_at(f, p, 4)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_at(f, a, 0)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                write_at(f, b, 1)
            }
            Expr::Mult(a, b) => {
                write_at(f, a, 1)?;
                write!(f, " * ")?;
                write_at(f, b, 2)
            }
            Expr::Bullet(a, b) => {
                write_at(f, a, 2)?;
                write!(f, " . ")?;
                write_at(f, b, 3)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown basis vector v[{m},{i}]")]
    UnknownVector { m: usize, i: usize },
}

impl Expr {
    /// Every `v[m,i]` reference, left to right.
    pub fn vector_refs(&self) -> Vec<(usize, usize)> {
        match self {
            Expr::V { m, i } => vec![(*m, *i)],
            Expr::Scaled(_, p) => p.vector_refs(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mult(a, b) | Expr::Bullet(a, b) => {
                let mut out = a.vector_refs();
                out.extend(b.vector_refs());
                out
            }
            _ => Vec::new(),
        }
    }

    /// Largest `m` among the `v[m,i]` references.
    pub fn max_vector_grade(&self) -> Option<usize> {
        self.vector_refs().into_iter().map(|(m, _)| m).max()
    }

    /// Evaluate exactly; `lookup` resolves `v[m,i]`.
    pub fn eval(&self, lookup: &dyn Fn(usize, usize) -> Option<GradedElement>) -> Result<GradedElement, EvalError> {
        Ok(match self {
            Expr::One => GradedElement::one(),
            Expr::Cup(k) => cup_power(*k),
            Expr::V { m, i } => lookup(*m, *i).ok_or(EvalError::UnknownVector { m: *m, i: *i })?,
            Expr::Scaled(s, p) => p.eval(lookup)?.scale(&s.value()),
            Expr::Add(a, b) => a.eval(lookup)?.add(&b.eval(lookup)?),
            Expr::Sub(a, b) => a.eval(lookup)?.sub(&b.eval(lookup)?),
            Expr::Mult(a, b) => a.eval(lookup)?.multiply(&b.eval(lookup)?),
            Expr::Bullet(a, b) => a.eval(lookup)?.bullet(&b.eval(lookup)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("cup * cup").unwrap(), Expr::Mult(b(Expr::Cup(1)), b(Expr::Cup(1))));
        assert_eq!(
            parse("cup . v[2,0] . cup^2").unwrap(),
            Expr::Bullet(b(Expr::Bullet(b(Expr::Cup(1)), b(Expr::V { m: 2, i: 0 }))), b(Expr::Cup(2)))
        );
        assert_eq!(
            parse("1 + cup * cup . cup").unwrap(),
            Expr::Add(b(Expr::One), b(Expr::Mult(b(Expr::Cup(1)), b(Expr::Bullet(b(Expr::Cup(1)), b(Expr::Cup(1)))))))
        );
        assert_eq!(
            parse("q^-1 cup . 3/2 1").unwrap(),
            Expr::Bullet(
                b(Expr::Scaled(ScalarLit::QPow(-1), b(Expr::Cup(1)))),
                b(Expr::Scaled(ScalarLit::Rational(BigRational::new(3.into(), 2.into())), b(Expr::One)))
            )
        );
        assert_eq!(parse("cup - cup - 1").unwrap(), Expr::Sub(b(Expr::Sub(b(Expr::Cup(1)), b(Expr::Cup(1)))), b(Expr::One)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("q^-1 (cup + 1").unwrap_err();
        assert_eq!((e.line, e.column), (1, 12));
        let e = parse("cup +\n  * cup").unwrap_err();
        assert_eq!((e.line, e.column), (2, 2));
        assert!(parse("cup $").is_err());
        assert!(parse("2").is_err());
        assert!(parse("1/0 cup").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for s in ["cup * (cup + 1)", "(cup * cup) . cup", "delta (cup - 1) * v[2,0]", "cup - (cup - 1)", "q^2 cup^3"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s} -> {e}");
        }
        assert_eq!(parse("cup*(cup+1)").unwrap().to_string(), "cup * (cup + 1)");
    }

    #[test]
    fn evaluation() {
        let none = |_: usize, _: usize| None;
        let cc = parse("cup * cup").unwrap().eval(&none).unwrap();
        let want = cup_power(2).add(&cup_power(1)).add(&GradedElement::one().scale(&Scalar::delta()));
        assert_eq!(cc, want);
        assert_eq!(parse("1 . cup").unwrap().eval(&none).unwrap(), cup_power(1));
        assert!(parse("cup^-1").unwrap().eval(&none).unwrap().is_zero());
        assert!(matches!(parse("v[2,0]").unwrap().eval(&none), Err(EvalError::UnknownVector { m: 2, i: 0 })));
    }
}
