//! Recursive descent parser for the expression grammar.

use crate::algebra::{scan_number, DualReal};
use crate::error::{Error, Result};
use crate::function::{Expr, Primitive};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Number { value: f64, integral: bool },
    Eps,
    Var,
    Func(Primitive),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Number { value, .. } => format!("number {value}"),
            Tok::Eps => "'eps'".into(),
            Tok::Var => "'x'".into(),
            Tok::Func(p) => format!("'{}'", p.name()),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Returns the next token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let at = self.pos;
        if at >= self.src.len() {
            return Ok((Tok::End, at));
        }
        let c = self.src[at];
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((t, at));
        }
        if c.is_ascii_digit() || c == b'.' {
            let text = std::str::from_utf8(self.src).expect("lexer input is ASCII-checked");
            let (value, end, integral) = scan_number(text, at).ok_or(Error::Parse {
                offset: at,
                message: "malformed number".into(),
            })?;
            self.pos = end;
            return Ok((Tok::Number { value, integral }, at));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let mut end = at;
            while end < self.src.len()
                && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
            {
                end += 1;
            }
            let word = std::str::from_utf8(&self.src[at..end]).unwrap();
            self.pos = end;
            let tok = match word {
                "x" => Tok::Var,
                "eps" => Tok::Eps,
                "sin" => Tok::Func(Primitive::Sin),
                "cos" => Tok::Func(Primitive::Cos),
                "exp" => Tok::Func(Primitive::Exp),
                "log" => Tok::Func(Primitive::Log),
                _ => {
                    return Err(Error::Parse {
                        offset: at,
                        message: format!("unknown identifier '{word}'"),
                    })
                }
            };
            return Ok((tok, at));
        }
        Err(Error::Parse {
            offset: at,
            message: format!("unexpected character '{}'", c as char),
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Parser<'a>> {
        let mut lexer = Lexer::new(src);
        let (tok, at) = lexer.next()?;
        Ok(Parser { lexer, tok, at })
    }

    fn advance(&mut self) -> Result<()> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn unexpected(&self, wanted: &str) -> Error {
        Error::Parse {
            offset: self.at,
            message: format!("expected {wanted}, found {}", self.tok.describe()),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = self.tok;
            if op != Tok::Plus && op != Tok::Minus {
                return Ok(lhs);
            }
            self.advance()?;
            let rhs = self.term()?;
            lhs = if op == Tok::Plus {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = self.tok;
            if op != Tok::Star && op != Tok::Slash {
                return Ok(lhs);
            }
            self.advance()?;
            let rhs = self.factor()?;
            lhs = if op == Tok::Star {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.tok == Tok::Minus {
            self.advance()?;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.advance()?;
        let negative = if self.tok == Tok::Minus {
            self.advance()?;
            true
        } else {
            false
        };
        let (value, integral) = match self.tok {
            Tok::Number { value, integral } => (value, integral),
            _ => return Err(self.unexpected("an integer exponent")),
        };
        if !integral || value.fract() != 0.0 || value.abs() > f64::from(i32::MAX) {
            return Err(Error::Parse {
                offset: self.at,
                message: format!("exponent must be a plain integer, got {value}"),
            });
        }
        self.advance()?;
        let mut n = value as i32;
        if negative {
            n = -n;
        }
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.tok {
            Tok::Number { value, .. } => {
                self.advance()?;
                // `3eps` lexes as two adjacent tokens and denotes one literal.
                if self.tok == Tok::Eps {
                    self.advance()?;
                    return Ok(Expr::Const(DualReal::new(0.0, value)?));
                }
                Ok(Expr::Const(DualReal::new(value, 0.0)?))
            }
            Tok::Eps => {
                self.advance()?;
                Ok(Expr::Const(DualReal::EPS))
            }
            Tok::Var => {
                self.advance()?;
                Ok(Expr::Var)
            }
            Tok::Func(p) => {
                self.advance()?;
                if self.tok != Tok::LParen {
                    return Err(self.unexpected("'(' after function name"));
                }
                self.advance()?;
                let arg = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.advance()?;
                Ok(Expr::Apply(p, Box::new(arg)))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.advance()?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, 'eps', 'x', a function call, or '('")),
        }
    }
}

pub(crate) fn parse(src: &str) -> Result<Expr> {
    if !src.is_ascii() {
        let offset = src
            .char_indices()
            .find(|(_, c)| !c.is_ascii())
            .map(|(i, _)| i)
            .unwrap_or(0);
        return Err(Error::Parse {
            offset,
            message: "expressions must be ASCII".into(),
        });
    }
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(e)
}
