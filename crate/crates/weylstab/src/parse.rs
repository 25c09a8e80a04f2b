//! Expression grammar shared by the command line and problem files.
//!
//! ```text
//! expr   := ('-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := int ('/' int)? | 'p' | var | '(' expr ')'
//! ```
//!
//! Weyl expressions use the variables `x1..xd` and `d1..dd` (the derivations
//! at the ambient level); ideals of the commutative symbol ring use
//! `X1..Xd, Y1..Yd`. Products are evaluated left to right in the target
//! algebra, so `d1*x1` parses to `x1*d1 + 1`.

use num_bigint::BigInt;
use thiserror::Error;
use weylstab_core::coeff::{CoeffRing, LocalRational, PrimeField, RationalField};
use weylstab_core::cpoly::Poly;
use weylstab_core::weyl::{WeylAlgebra, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown variable `{name}`")]
    UnknownVariable { name: String, line: usize, column: usize },
    #[error("{line}:{column}: {source}")]
    Algebra {
        line: usize,
        column: usize,
        source: weylstab_core::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            Tok::Int(s.parse().unwrap())
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                s.push(bump(&mut chars));
            }
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            Tok::Ident(s)
        } else {
            bump(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError::Syntax {
                        line: l,
                        column: col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push(Spanned { tok, line: l, column: col });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// Where parsed expressions are evaluated.
trait Target {
    type Value: Clone;
    fn rational(&self, num: BigInt, den: BigInt) -> Result<Self::Value, weylstab_core::Error>;
    fn p(&self) -> Self::Value;
    /// `None` for names that are not variables of the target.
    fn var(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, weylstab_core::Error>;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, weylstab_core::Error>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, weylstab_core::Error>;
    fn pow(&self, a: &Self::Value, k: u32) -> Result<Self::Value, weylstab_core::Error>;
    fn neg(&self, a: &Self::Value) -> Self::Value;
}

struct Parser<'t, T: Target> {
    toks: Vec<Spanned>,
    pos: usize,
    target: &'t T,
}

impl<T: Target> Parser<'_, T> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn syntax(at: &Spanned, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn lift<V>(at: &Spanned, r: Result<V, weylstab_core::Error>) -> Result<V, ParseError> {
        r.map_err(|source| ParseError::Algebra {
            line: at.line,
            column: at.column,
            source,
        })
    }

    fn expr(&mut self) -> Result<T::Value, ParseError> {
        let negate = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = self.target.neg(&acc);
        }
        loop {
            let op = self.peek().clone();
            match op.tok {
                Tok::Plus => {
                    self.next();
                    let t = self.term()?;
                    acc = Self::lift(&op, self.target.add(&acc, &t))?;
                }
                Tok::Minus => {
                    self.next();
                    let t = self.term()?;
                    acc = Self::lift(&op, self.target.sub(&acc, &t))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<T::Value, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            let op = self.next();
            let f = self.factor()?;
            acc = Self::lift(&op, self.target.mul(&acc, &f))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<T::Value, ParseError> {
        let a = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(a);
        }
        let op = self.next();
        let at = self.next();
        let k = match &at.tok {
            Tok::Int(n) => u32::try_from(n).map_err(|_| Self::syntax(&at, "exponent too large"))?,
            _ => return Err(Self::syntax(&at, "expected a natural number exponent")),
        };
        Self::lift(&op, self.target.pow(&a, k))
    }

    fn atom(&mut self) -> Result<T::Value, ParseError> {
        let at = self.next();
        match at.tok.clone() {
            Tok::Int(num) => {
                let den = if self.peek().tok == Tok::Slash {
                    self.next();
                    let d = self.next();
                    match d.tok {
                        Tok::Int(n) => n,
                        _ => return Err(Self::syntax(&d, "expected a denominator")),
                    }
                } else {
                    BigInt::from(1)
                };
                Self::lift(&at, self.target.rational(num, den))
            }
            Tok::Ident(name) if name == "p" => Ok(self.target.p()),
            Tok::Ident(name) => self.target.var(&name).ok_or(ParseError::UnknownVariable {
                name,
                line: at.line,
                column: at.column,
            }),
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(Self::syntax(&close, "expected `)`"));
                }
                Ok(e)
            }
            Tok::End => Err(Self::syntax(&at, "unexpected end of input")),
            other => Err(Self::syntax(&at, format!("unexpected token {other:?}"))),
        }
    }
}

fn run<T: Target>(target: &T, text: &str) -> Result<T::Value, ParseError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        target,
    };
    let v = parser.expr()?;
    let end = parser.next();
    if end.tok != Tok::End {
        return Err(Parser::<T>::syntax(&end, "trailing input"));
    }
    Ok(v)
}

/// Index `k` of a name `<prefix>k` with `1 <= k <= d`.
fn index(name: &str, prefix: &str, d: usize) -> Option<usize> {
    let k: usize = name.strip_prefix(prefix)?.parse().ok()?;
    (1..=d).contains(&k).then(|| k - 1)
}

struct WeylTarget<'a>(&'a WeylAlgebra<RationalField>);

impl Target for WeylTarget<'_> {
    type Value = WeylElement<RationalField>;

    fn rational(&self, num: BigInt, den: BigInt) -> Result<Self::Value, weylstab_core::Error> {
        if den == BigInt::from(0) {
            return Err(weylstab_core::Error::DivisionByZero);
        }
        // p in the denominator is allowed: relations are only required to be
        // integral after the whole expression is formed.
        let p = self.0.descriptor().prime;
        let (mut num, mut den, mut k) = (num, den, 0i64);
        let pb = BigInt::from(p);
        while num != BigInt::from(0) && (&num % &pb) == BigInt::from(0) {
            num /= &pb;
            k += 1;
        }
        while (&den % &pb) == BigInt::from(0) {
            den /= &pb;
            k -= 1;
        }
        let c = LocalRational::with_p_power(k, num, den, p)?;
        Ok(self.0.constant(c))
    }

    fn p(&self) -> Self::Value {
        self.0.constant(self.0.ring().p_power(1))
    }

    fn var(&self, name: &str) -> Option<Self::Value> {
        let d = self.0.d();
        if let Some(i) = index(name, "x", d) {
            return self.0.x(i).ok();
        }
        index(name, "d", d).and_then(|i| self.0.eta(i).ok())
    }

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, weylstab_core::Error> {
        a.add(b)
    }

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, weylstab_core::Error> {
        a.sub(b)
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, weylstab_core::Error> {
        a.mul(b)
    }

    fn pow(&self, a: &Self::Value, k: u32) -> Result<Self::Value, weylstab_core::Error> {
        a.pow(k)
    }

    fn neg(&self, a: &Self::Value) -> Self::Value {
        a.neg()
    }
}

struct PolyTarget {
    ring: PrimeField,
    d: usize,
}

impl Target for PolyTarget {
    type Value = Poly<PrimeField>;

    fn rational(&self, num: BigInt, den: BigInt) -> Result<Self::Value, weylstab_core::Error> {
        let p = self.ring.prime();
        let c = LocalRational::new(num, den, p)?.residue()?;
        Ok(Poly::constant(self.ring, 2 * self.d, c))
    }

    fn p(&self) -> Self::Value {
        Poly::zero(self.ring, 2 * self.d)
    }

    fn var(&self, name: &str) -> Option<Self::Value> {
        let d = self.d;
        if let Some(i) = index(name, "X", d) {
            return Some(Poly::var(self.ring, 2 * d, i));
        }
        index(name, "Y", d).map(|i| Poly::var(self.ring, 2 * d, d + i))
    }

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, weylstab_core::Error> {
        Ok(a.add(b))
    }

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, weylstab_core::Error> {
        Ok(a.sub(b))
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, weylstab_core::Error> {
        Ok(a.mul(b))
    }

    fn pow(&self, a: &Self::Value, k: u32) -> Result<Self::Value, weylstab_core::Error> {
        if k > 4096 {
            return Err(weylstab_core::Error::ResourceExceeded {
                resource: "exponent",
                limit: 4096,
            });
        }
        Ok(a.pow(k))
    }

    fn neg(&self, a: &Self::Value) -> Self::Value {
        a.neg()
    }
}

/// Parses a Weyl expression into the given algebra.
pub fn parse_expression(alg: &WeylAlgebra<RationalField>, text: &str) -> Result<WeylElement<RationalField>, ParseError> {
    run(&WeylTarget(alg), text)
}

/// Parses a polynomial in `X1..Xd, Y1..Yd` over `F_p`.
pub fn parse_symbol_poly(ring: PrimeField, d: usize, text: &str) -> Result<Poly<PrimeField>, ParseError> {
    run(&PolyTarget { ring, d }, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(d: usize, p: u64) -> WeylAlgebra<RationalField> {
        WeylAlgebra::local(d, 0, p).unwrap()
    }

    fn show(text: &str) -> String {
        parse_expression(&alg(1, 5), text).unwrap().to_string()
    }

    #[test]
    fn normalizes_products() {
        assert_eq!(show("x1*d1 - 1"), "x1*d1 - 1");
        assert_eq!(show("d1*x1"), "x1*d1 + 1");
        assert_eq!(show("d1^2*x1^2"), "x1^2*d1^2 + 4*x1*d1 + 2");
        assert_eq!(show("-(x1 + 2)*3/5"), "-3/5*x1 - 6/5");
        assert_eq!(show("p*d1 - 1"), "5*d1 - 1");
        assert_eq!(show("1/5*p"), "1");
    }

    #[test]
    fn reports_positions() {
        let a = alg(1, 5);
        assert_eq!(
            parse_expression(&a, "x1 +\n  x2"),
            Err(ParseError::UnknownVariable {
                name: "x2".into(),
                line: 2,
                column: 3
            })
        );
        match parse_expression(&a, "x1 * (d1") {
            Err(ParseError::Syntax { line: 1, column: 9, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression(&a, "x1 $"), Err(ParseError::Syntax { column: 4, .. })));
        assert!(matches!(parse_expression(&a, "x0"), Err(ParseError::UnknownVariable { .. })));
        assert!(matches!(parse_expression(&a, "1/0"), Err(ParseError::Algebra { .. })));
    }

    #[test]
    fn symbol_polynomials() {
        let f = parse_symbol_poly(PrimeField::new(3).unwrap(), 1, "X1*Y1 + 4").unwrap();
        assert_eq!(f.to_string(), "X1*Y1 + 1");
        assert!(parse_symbol_poly(PrimeField::new(3).unwrap(), 1, "1/3").is_err());
    }
}
