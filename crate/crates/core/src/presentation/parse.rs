//! A small infix grammar for generator-ring expressions:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom
//! atom   := integer | X<j> | x<i> | '(' expr ')'
//! ```
//!
//! Identifiers are X1..Xn (generators) and x1..xn (base-ring variables).

use super::XPoly;
use crate::equivariant::EqError;
use crate::poly::Poly;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Gen(u32),
    Var(u32),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn bad(msg: impl Into<String>) -> EqError {
    EqError::BadInput(msg.into())
}

fn lex(input: &str, n: u32) -> Result<Vec<Token>, EqError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                tokens.push(Token::Int(digits.parse().expect("digit run")));
            }
            'X' | 'x' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == start + 1 {
                    return Err(bad(format!("expected an index after '{c}'")));
                }
                let digits: String = chars[start + 1..i].iter().collect();
                let idx: u32 = digits
                    .parse()
                    .map_err(|_| bad(format!("index too large in '{c}{digits}'")))?;
                if idx < 1 || idx > n {
                    return Err(bad(format!(
                        "'{c}{idx}' is out of range: indices run from 1 to {n}"
                    )));
                }
                if c == 'X' {
                    tokens.push(Token::Gen(idx));
                } else {
                    tokens.push(Token::Var(idx));
                }
            }
            _ => return Err(bad(format!("unexpected character '{c}'"))),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    n: u32,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<XPoly, EqError> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Token::Minus => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<XPoly, EqError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<XPoly, EqError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<XPoly, EqError> {
        match self.next() {
            Some(Token::Int(k)) => Ok(XPoly::term(super::XMonomial::one(), Poly::constant(k))),
            Some(Token::Gen(j)) => Ok(XPoly::gen(j, self.n)),
            Some(Token::Var(i)) => Ok(XPoly::term(super::XMonomial::one(), Poly::x(i))),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(bad("unbalanced parenthesis")),
                }
            }
            Some(tok) => Err(bad(format!("unexpected token {tok:?}"))),
            None => Err(bad("unexpected end of expression")),
        }
    }
}

/// Parse an expression over X1..Xn and x1..xn into the generator ring.
pub fn parse_xpoly(input: &str, n: u32) -> Result<XPoly, EqError> {
    let tokens = lex(input, n)?;
    if tokens.is_empty() {
        return Err(bad("empty expression"));
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        n,
    };
    let p = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(bad(format!("trailing input after position {}", parser.pos)));
    }
    Ok(p)
}
