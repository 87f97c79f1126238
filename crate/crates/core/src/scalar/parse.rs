//! A small expression grammar for writing exact scalars in text:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | atom
//! atom   := integer | 'i' | 'sqrt2' | 'sqrt3' | 'sqrt6' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Examples: `-1/3`, `1/sqrt2`, `(1 + i)*sqrt3/2`.

use num_bigint::BigInt;
use num_traits::Num;

use super::{ExactScalar, Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(input: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() {
            pos += 1;
        } else if c.is_ascii_digit() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            let n = BigInt::from_str_radix(&digits, 10).map_err(|e| e.to_string())?;
            tokens.push(Token::Int(n));
        } else if c.is_ascii_alphabetic() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            tokens.push(Token::Ident(chars[start..pos].iter().collect()));
        } else if "+-*/()".contains(c) {
            tokens.push(Token::Op(c));
            pos += 1;
        } else {
            return Err(format!("unexpected character {c:?} at offset {pos}"));
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<ExactScalar, String> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ExactScalar, String> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                acc * rhs
            } else {
                acc.checked_div(&rhs).map_err(|e| e.to_string())?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ExactScalar, String> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<ExactScalar, String> {
        let token = self.tokens.get(self.pos).cloned().ok_or("unexpected end of input")?;
        self.pos += 1;
        match token {
            Token::Int(n) => Ok(ExactScalar::rational(Rational::from_integer(n))),
            Token::Ident(name) => match name.as_str() {
                "i" => Ok(ExactScalar::imag_unit()),
                "sqrt2" => Ok(ExactScalar::sqrt2()),
                "sqrt3" => Ok(ExactScalar::sqrt3()),
                "sqrt6" => Ok(ExactScalar::sqrt6()),
                other => Err(format!("unknown identifier {other:?}")),
            },
            Token::Op('(') => {
                let inner = self.expr()?;
                match self.tokens.get(self.pos) {
                    Some(Token::Op(')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err("missing ')'".into()),
                }
            }
            Token::Op(c) => Err(format!("unexpected operator {c:?}")),
        }
    }
}

/// Parses an exact scalar; the output of `ExactScalar`'s `Display` parses back
/// to the same value.
pub fn parse_exact(input: &str) -> Result<ExactScalar, ScalarError> {
    let fail = |reason: String| ScalarError::Parse {
        input: input.to_string(),
        reason,
    };
    let tokens = tokenize(input).map_err(fail)?;
    if tokens.is_empty() {
        return Err(fail("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let value = parser.expr().map_err(fail)?;
    if parser.pos != parser.tokens.len() {
        return Err(fail(format!("trailing input at token {}", parser.pos)));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_constants() {
        let third = parse_exact("1/sqrt3").unwrap();
        assert_eq!(third.clone() * third, ExactScalar::from_ratio(1, 3));
        assert_eq!(parse_exact("-i").unwrap(), -ExactScalar::imag_unit());
        assert_eq!(
            parse_exact(" 2 * (1 + sqrt2) ").unwrap(),
            ExactScalar::from_i64(2) + ExactScalar::from_i64(2) * ExactScalar::sqrt2()
        );
        assert_eq!(parse_exact("sqrt2*sqrt3").unwrap(), ExactScalar::sqrt6());
    }

    #[test]
    fn display_round_trips() {
        let x = parse_exact("(3 - 2*i)/7 + (1+i)*sqrt2/5 - 4*sqrt3 + i*sqrt6").unwrap();
        assert_eq!(parse_exact(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "1/", "sqrt5", "(1+2", "1 2", "1/0", "0.5", "2^3"] {
            assert!(parse_exact(bad).is_err(), "{bad:?} should fail");
        }
    }
}
