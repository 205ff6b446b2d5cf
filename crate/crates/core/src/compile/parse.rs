use crate::error::{Error, Result};
use crate::relation::{Formula, FormulaAst};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Const(bool),
    Not,
    And,
    Or,
    Xor,
    Implies,
    Equiv,
    LParen,
    RParen,
    End,
}

fn describe(t: Tok<'_>) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Const(b) => format!("`{}`", b as u8),
        Tok::Not => "`!`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Xor => "`+`".into(),
        Tok::Implies => "`->`".into(),
        Tok::Equiv => "`=`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok<'_>)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'+' => Tok::Xor,
            b'=' => Tok::Equiv,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'0' | b'1' if !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric()) => {
                Tok::Const(c == b'1')
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(&text[start..=i])
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    vars: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Tok<'a> {
        self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok<'a> {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        })
    }

    fn binary_left(
        &mut self,
        op: Tok<'a>,
        next: fn(&mut Self) -> Result<Formula>,
        build: fn(Box<Formula>, Box<Formula>) -> Formula,
    ) -> Result<Formula> {
        let mut lhs = next(self)?;
        while self.peek() == op {
            self.bump();
            let rhs = next(self)?;
            lhs = build(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn equiv(&mut self) -> Result<Formula> {
        self.binary_left(Tok::Equiv, Self::implies, Formula::Equiv)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        self.binary_left(Tok::Or, Self::xor, Formula::Or)
    }

    fn xor(&mut self) -> Result<Formula> {
        self.binary_left(Tok::Xor, Self::and, Formula::Xor)
    }

    fn and(&mut self) -> Result<Formula> {
        self.binary_left(Tok::And, Self::unary, Formula::And)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Tok::Ident(name) => {
                self.bump();
                let i = match self.vars.iter().position(|v| v == name) {
                    Some(i) => i,
                    None => {
                        self.vars.push(name.to_string());
                        self.vars.len() - 1
                    }
                };
                Ok(Formula::Var(i))
            }
            Tok::Const(b) => {
                self.bump();
                Ok(Formula::Const(b))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.equiv()?;
                if self.peek() != Tok::RParen {
                    return self.error("`)`");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.error("a variable, constant, `!` or `(`"),
        }
    }
}

/// Parses a formula; variables are ordered by first occurrence.
///
/// Operators by decreasing precedence: `!`, `&`, `+` (XOR), `|`, `->`
/// (right associative), `=` (equivalence).
pub fn parse_formula(text: &str) -> Result<FormulaAst> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars: Vec::new(),
    };
    let root = p.equiv()?;
    if p.peek() != Tok::End {
        return p.error("an operator or end of input");
    }
    FormulaAst::new(root, p.vars)
}
