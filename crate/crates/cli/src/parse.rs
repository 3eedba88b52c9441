//! Polynomial expressions: integers, declared variables, the literal `p`,
//! `+ - * ^` and parentheses. Multiplication must be written out.

use std::sync::Arc;

use pptlab_core::{Context, LiftPoly};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("{0}")]
    Arithmetic(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    /// Integer literal, already reduced modulo p^2, plus its exact value
    /// when it fits (used for exponents).
    Int { residue: i64, exact: Option<u64> },
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str, modulus: i64) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                let mut residue = 0i64;
                let mut exact = Some(0u64);
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    let d = (bytes[i] - b'0') as u64;
                    residue = (residue * 10 + d as i64) % modulus;
                    exact = exact.and_then(|e| e.checked_mul(10)?.checked_add(d));
                    i += 1;
                }
                out.push((start, Tok::Int { residue, exact }));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Arc<Context>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn arith<T>(r: pptlab_core::Result<T>) -> Result<T, ParseError> {
        r.map_err(|e| ParseError::Arithmetic(e.to_string()))
    }

    fn expr(&mut self) -> Result<LiftPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = Self::arith(acc.checked_add(&rhs))?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = Self::arith(acc.checked_sub(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LiftPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Self::arith(acc.checked_mul(&rhs))?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LiftPoly, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.scale(-1));
        }
        self.power()
    }

    fn power(&mut self) -> Result<LiftPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let k = match self.peek() {
                Some(Tok::Int {
                    exact: Some(k), ..
                }) if *k < (1 << 31) => *k,
                Some(Tok::Int { .. }) => return self.err("exponent too large"),
                _ => return self.err("expected a non-negative integer exponent"),
            };
            self.pos += 1;
            return Self::arith(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LiftPoly, ParseError> {
        let at = self.offset();
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        let value = match tok {
            Tok::Int { residue, .. } => LiftPoly::constant(self.ctx, residue),
            Tok::Ident(name) if name == "p" => LiftPoly::constant(self.ctx, self.ctx.p() as i64),
            Tok::Ident(name) => match self.ctx.names().iter().position(|n| *n == name) {
                Some(i) => LiftPoly::var(self.ctx, i),
                None => return Err(ParseError::UnknownVariable { name, pos: at }),
            },
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                return self.no_juxtaposition(inner);
            }
            _ => return self.err("expected a number, variable, or `(`"),
        };
        self.pos += 1;
        self.no_juxtaposition(value)
    }

    fn no_juxtaposition(&self, value: LiftPoly) -> Result<LiftPoly, ParseError> {
        match self.peek() {
            Some(Tok::Int { .. } | Tok::Ident(_) | Tok::LParen) => {
                self.err("implicit multiplication is not allowed; write `*`")
            }
            _ => Ok(value),
        }
    }
}

/// Parses an expression into its class modulo p^2.
pub fn parse_poly(src: &str, ctx: &Arc<Context>) -> Result<LiftPoly, ParseError> {
    let modulus = ctx.modulus(2) as i64;
    let toks = tokenize(src, modulus)?;
    let mut parser = Parser {
        ctx,
        toks,
        pos: 0,
        end: src.len(),
    };
    let value = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("unexpected trailing input");
    }
    Ok(value)
}

/// Expands a comma-separated variable list; `x1..x5` stands for
/// x1, x2, x3, x4, x5.
pub fn expand_vars(list: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(format!("empty variable name in `{list}`"));
        }
        match item.split_once("..") {
            None => out.push(item.to_string()),
            Some((lo, hi)) => {
                let (prefix_lo, a) = split_index(lo).ok_or(format!("bad range `{item}`"))?;
                let (prefix_hi, b) = split_index(hi).ok_or(format!("bad range `{item}`"))?;
                if prefix_lo != prefix_hi || a > b {
                    return Err(format!("bad range `{item}`"));
                }
                out.extend((a..=b).map(|i| format!("{prefix_lo}{i}")));
            }
        }
    }
    Ok(out)
}

fn split_index(s: &str) -> Option<(&str, u32)> {
    let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 || digits == s.len() {
        return None;
    }
    let (prefix, num) = s.split_at(s.len() - digits);
    Some((prefix, num.parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, vars: &str) -> Arc<Context> {
        Context::new(p, &expand_vars(vars).unwrap()).unwrap()
    }

    #[test]
    fn quartic_with_p_coefficient() {
        let c = ctx(2, "x1..x4");
        let f = parse_poly("x1^4 + x2^4 + x3^4 + x4^4 + p*x1*x2*x3*x4", &c).unwrap();
        assert_eq!(f.to_string(), "x1^4 + 2*x1*x2*x3*x4 + x2^4 + x3^4 + x4^4");
    }

    #[test]
    fn zero_and_negatives() {
        let c = ctx(3, "x,y");
        assert!(parse_poly("0", &c).unwrap().is_zero());
        assert_eq!(parse_poly("x^2 - y^2", &c).unwrap().to_string(), "x^2 + 8*y^2");
        assert_eq!(parse_poly("3 - x^2", &c).unwrap().to_string(), "8*x^2 + 3");
        assert_eq!(parse_poly("-(x+1)*2", &c).unwrap().to_string(), "7*x + 7");
        assert_eq!(parse_poly("100000000000000000000000", &c).unwrap().to_string(), "1");
    }

    #[test]
    fn syntax_errors() {
        let c = ctx(2, "x,y");
        assert!(matches!(
            parse_poly("2x", &c),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(parse_poly("x y", &c), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("(x+y)(x-y)", &c), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x +", &c), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("x^y", &c), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("(x", &c), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x $ y", &c), Err(ParseError::Syntax { pos: 2, .. })));
        assert_eq!(
            parse_poly("x + z", &c),
            Err(ParseError::UnknownVariable {
                name: "z".to_string(),
                pos: 4
            })
        );
    }

    #[test]
    fn variable_lists() {
        assert_eq!(expand_vars("x,y,z").unwrap(), vec!["x", "y", "z"]);
        assert_eq!(
            expand_vars("x1..x5").unwrap(),
            vec!["x1", "x2", "x3", "x4", "x5"]
        );
        assert_eq!(expand_vars("a, b1..b2").unwrap(), vec!["a", "b1", "b2"]);
        assert!(expand_vars("x1..y3").is_err());
        assert!(expand_vars("x3..x1").is_err());
        assert!(expand_vars("x,,y").is_err());
    }
}
