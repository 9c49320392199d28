//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)?
//! factor := primary ("^" integer)*
//! primary:= rational | "x" | "e" digits | "conj" "(" expr ")"
//!         | "coord" "(" expr "," integer ")" | "(" expr ")"
//! ```
//!
//! A third unparenthesized factor in a term is rejected: grouping must be
//! explicit.

use num_bigint::BigInt;

use super::ast::Expr;
use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq)]
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
    Comma,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn syntax(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = line_col(src, offset);
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
            continue;
        }
        let simple = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            it.next();
            out.push(Token {
                tok,
                start: i,
                end: i + 1,
            });
            continue;
        }
        if ch.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, c)) = it.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                it.next();
            }
            let value: BigInt = src[i..end].parse().expect("digits");
            out.push(Token {
                tok: Tok::Int(value),
                start: i,
                end,
            });
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let mut end = i;
            while let Some(&(j, c)) = it.peek() {
                if !c.is_ascii_alphanumeric() {
                    break;
                }
                end = j + 1;
                it.next();
            }
            out.push(Token {
                tok: Tok::Ident(src[i..end].to_string()),
                start: i,
                end,
            });
            continue;
        }
        return Err(syntax(src, i, format!("unexpected character {ch:?}")));
    }
    out.push(Token {
        tok: Tok::End,
        start: src.len(),
        end: src.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        let t = self.peek();
        let found = match &t.tok {
            Tok::End => "end of input".to_string(),
            _ => format!("{:?}", &self.src[t.start..t.end]),
        };
        syntax(self.src, t.start, format!("expected {what}, found {found}"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let leading_sign = neg;
        loop {
            terms.push((neg, self.term()?));
            neg = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        if terms.len() == 1 && !leading_sign {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr> {
        let start = self.peek().start;
        let left = self.factor()?;
        if self.peek().tok != Tok::Star {
            return Ok(left);
        }
        self.bump();
        let right = self.factor()?;
        if self.peek().tok == Tok::Star {
            self.bump();
            self.factor()?;
            let end = self.toks[self.pos.saturating_sub(1)].end;
            return Err(Error::AmbiguousProduct { start, end });
        }
        Ok(Expr::product(left, right))
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.primary()?;
        while self.peek().tok == Tok::Caret {
            self.bump();
            let t = self.peek().clone();
            let n = match &t.tok {
                Tok::Int(v) => u32::try_from(v.clone()).ok().filter(|n| *n >= 1),
                _ => return Err(self.unexpected("an integer exponent")),
            };
            let n =
                n.ok_or_else(|| syntax(self.src, t.start, "exponent must be an integer >= 1"))?;
            self.bump();
            base = Expr::power(base, n);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.peek().clone();
                    match d.tok {
                        Tok::Int(den) if den != BigInt::from(0) => {
                            self.bump();
                            Ok(Expr::ScalarConst(Rational::new(n, den)))
                        }
                        Tok::Int(_) => Err(syntax(self.src, d.start, "zero denominator")),
                        _ => Err(self.unexpected("a denominator")),
                    }
                } else {
                    Ok(Expr::ScalarConst(Rational::from_integer(n)))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(e)
            }
            Tok::Ident(ref name) => {
                self.bump();
                match name.as_str() {
                    "x" => Ok(Expr::Variable),
                    "conj" => {
                        self.expect(Tok::LParen, "\"(\" after conj")?;
                        let e = self.expr()?;
                        self.expect(Tok::RParen, "\")\"")?;
                        Ok(Expr::conj(e))
                    }
                    "coord" => {
                        self.expect(Tok::LParen, "\"(\" after coord")?;
                        let e = self.expr()?;
                        self.expect(Tok::Comma, "\",\"")?;
                        let idx = self.peek().clone();
                        let mu = match idx.tok {
                            Tok::Int(v) => usize::try_from(v)
                                .map_err(|_| syntax(self.src, idx.start, "index too large"))?,
                            _ => return Err(self.unexpected("a coordinate index")),
                        };
                        self.bump();
                        self.expect(Tok::RParen, "\")\"")?;
                        Ok(Expr::CoordProj(Box::new(e), mu))
                    }
                    other => match other.strip_prefix('e') {
                        Some(digits)
                            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) =>
                        {
                            digits
                                .parse()
                                .map(Expr::BasisConst)
                                .map_err(|_| syntax(self.src, t.start, "basis index too large"))
                        }
                        _ => Err(syntax(
                            self.src,
                            t.start,
                            format!("unknown identifier {other:?}"),
                        )),
                    },
                }
            }
            _ => Err(self.unexpected("an operand")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        src: text,
        toks,
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}
