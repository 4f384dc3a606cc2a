//! Grassmann expressions such as `2.5 + (1+3i)*e1^e2`.
//!
//! ```text
//! expr    := product (('+' | '-') product)*
//! product := unary (('*' | '^') unary)*
//! unary   := '-' unary | atom
//! atom    := number ['i'] | 'i' | 'e' index | '(' expr ')'
//! ```
//!
//! `^` and `*` are both the algebra product. Whitespace is ignored.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;

type G = GrassmannElement;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Imag(f64),
    Generator(usize),
    Plus,
    Minus,
    Times,
    Open,
    Close,
}

fn describe(t: &Token) -> String {
    match t {
        Token::Number(x) => format!("number {x}"),
        Token::Imag(x) => format!("imaginary {x}i"),
        Token::Generator(j) => format!("generator e{j}"),
        Token::Plus => "'+'".into(),
        Token::Minus => "'-'".into(),
        Token::Times => "'*'".into(),
        Token::Open => "'('".into(),
        Token::Close => "')'".into(),
    }
}

fn syntax(pos: usize, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("syntax error at column {}: {msg}", pos + 1))
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let start = i;
        match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Token::Plus)),
            '-' => out.push((start, Token::Minus)),
            '*' | '^' => out.push((start, Token::Times)),
            '(' => out.push((start, Token::Open)),
            ')' => out.push((start, Token::Close)),
            'i' => out.push((start, Token::Imag(1.0))),
            'e' => {
                i += 1;
                let from = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if from == i {
                    return Err(syntax(start, "expected a generator index after 'e'"));
                }
                let idx: String = chars[from..i].iter().collect();
                let j = idx.parse().map_err(|_| syntax(start, "generator index too large"))?;
                out.push((start, Token::Generator(j)));
                continue;
            }
            c if c.is_ascii_digit() || c == '.' => {
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                // An exponent needs a digit (after an optional sign) right
                // after the `e`; otherwise `e` starts a generator.
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut k = i + 1;
                    if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                        k += 1;
                    }
                    let signed = k > i + 1;
                    if k < chars.len() && chars[k].is_ascii_digit() && (signed || chars[i] == 'E') {
                        i = k;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lit: String = chars[start..i].iter().collect();
                let x: f64 = lit.parse().map_err(|_| syntax(start, format!("malformed number '{lit}'")))?;
                if i < chars.len() && chars[i] == 'i' {
                    i += 1;
                    out.push((start, Token::Imag(x)));
                } else {
                    out.push((start, Token::Number(x)));
                }
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    order: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn expr(&mut self) -> Result<G> {
        let mut acc = self.product()?;
        while let Some(t) = self.peek() {
            let minus = match t {
                Token::Plus => false,
                Token::Minus => true,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.product()?;
            acc = if minus { &acc - &rhs } else { &acc + &rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<G> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::Times) {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<G> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<G> {
        let col = self.column();
        let Some((_, t)) = self.tokens.get(self.pos).cloned() else {
            return Err(syntax(col, "unexpected end of input, expected a number, 'i', a generator or '('"));
        };
        self.pos += 1;
        match t {
            Token::Number(x) => Ok(G::scalar(self.order, x)),
            Token::Imag(x) => Ok(G::scalar(self.order, Complex64::new(0.0, x))),
            Token::Generator(j) => G::generator(self.order, j),
            Token::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(syntax(self.column(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(syntax(col, format!("unexpected {}, expected a number, 'i', a generator or '('", describe(&other)))),
        }
    }
}

/// Evaluates `text` in the algebra of order `order`.
pub fn parse_expr(text: &str, order: usize) -> Result<G> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.chars().count(), order };
    let out = p.expr()?;
    if let Some((c, t)) = p.tokens.get(p.pos) {
        return Err(syntax(*c, format!("unexpected {} after a complete expression", describe(t))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let x = parse_expr("2.5 + (1+3i)*e1^e2", 6).unwrap();
        assert_eq!(x.body(), Complex64::new(2.5, 0.0));
        assert_eq!(x.blade(0b11), Complex64::new(1.0, 3.0));
        assert_eq!(x.num_blades(), 2);
        assert_eq!(parse_expr("e2^e1", 6).unwrap().blade(0b11), Complex64::new(-1.0, 0.0));
        assert!(matches!(parse_expr("e7", 6), Err(Error::GeneratorOutOfRange { index: 7, order: 6 })));
    }

    #[test]
    fn literals() {
        assert_eq!(parse_expr("i", 2).unwrap().body(), Complex64::i());
        assert_eq!(parse_expr("-2.5i", 2).unwrap().body(), Complex64::new(0.0, -2.5));
        assert_eq!(parse_expr("1e-3", 2).unwrap().body(), Complex64::new(1e-3, 0.0));
        assert_eq!(parse_expr("1E2", 2).unwrap().body(), Complex64::new(100.0, 0.0));
        assert_eq!(parse_expr(" - ( 1 - 2 ) * 3 ", 2).unwrap().body(), Complex64::new(3.0, 0.0));
        let x = parse_expr("0.3*e1 + 0.2 e2", 2);
        assert!(x.is_err());
    }

    #[test]
    fn errors_carry_the_column() {
        let msg = parse_expr("1 + * 2", 2).unwrap_err().to_string();
        assert!(msg.contains("column 5"), "{msg}");
        let msg = parse_expr("(1 + e1", 2).unwrap_err().to_string();
        assert!(msg.contains("expected ')'"), "{msg}");
        let msg = parse_expr("1 + $", 2).unwrap_err().to_string();
        assert!(msg.contains("'$'"), "{msg}");
        assert!(parse_expr("", 2).is_err());
        assert!(parse_expr("e", 2).is_err());
    }
}
