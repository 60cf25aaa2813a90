//! Polynomial expressions in `x` with integer coefficients.
//!
//! ```text
//! expr  := sign? term (sign term)*
//! term  := int ('*'? 'x' ('^' int)?)?  |  'x' ('^' int)?
//! sign  := '+' | '-'
//! ```
//!
//! Whitespace may appear between any two tokens. Repeated powers add up, so
//! `x^2 + x^2` is `2x^2`. Positions in errors are 0-based character offsets.

use num_bigint::BigInt;
use ramify_core::BigIntPoly;
use thiserror::Error;

/// Largest accepted exponent; keeps a typo from allocating gigabytes.
pub const MAX_EXPONENT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unknown symbol '{symbol}' at position {pos}")]
    UnknownSymbol { pos: usize, symbol: char },
    #[error("malformed exponent at position {pos}: {reason}")]
    MalformedExponent { pos: usize, reason: &'static str },
    #[error("expected {expected} at position {pos}, found {found}")]
    Unexpected {
        pos: usize,
        expected: &'static str,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    Caret,
    Star,
    Plus,
    Minus,
}

fn describe(tok: Option<&(usize, Tok)>) -> String {
    match tok {
        None => "end of input".into(),
        Some((_, Tok::Int(n))) => format!("'{n}'"),
        Some((_, Tok::X)) => "'x'".into(),
        Some((_, Tok::Caret)) => "'^'".into(),
        Some((_, Tok::Star)) => "'*'".into(),
        Some((_, Tok::Plus)) => "'+'".into(),
        Some((_, Tok::Minus)) => "'-'".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            'x' => Tok::X,
            '^' => Tok::Caret,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            symbol => return Err(ParseError::UnknownSymbol { pos: i, symbol }),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            pos: self.pos(),
            expected,
            found: describe(self.toks.get(self.at)),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(Tok::Plus) => {
                self.at += 1;
                Some(false)
            }
            Some(Tok::Minus) => {
                self.at += 1;
                Some(true)
            }
            _ => None,
        }
    }

    /// `x` already consumed; reads an optional `^k`.
    fn power(&mut self) -> Result<usize, ParseError> {
        if !self.eat(&Tok::Caret) {
            return Ok(1);
        }
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Int(k)) => {
                let k = usize::try_from(k)
                    .ok()
                    .filter(|k| *k <= MAX_EXPONENT)
                    .ok_or(ParseError::MalformedExponent {
                        pos,
                        reason: "exponent too large",
                    })?;
                self.at += 1;
                Ok(k)
            }
            Some(Tok::Minus) => Err(ParseError::MalformedExponent {
                pos,
                reason: "exponent must be nonnegative",
            }),
            _ => Err(ParseError::MalformedExponent {
                pos,
                reason: "expected a decimal exponent",
            }),
        }
    }

    fn term(&mut self) -> Result<(BigInt, usize), ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(c)) => {
                self.at += 1;
                let star = self.eat(&Tok::Star);
                if self.eat(&Tok::X) {
                    Ok((c, self.power()?))
                } else if star {
                    Err(self.unexpected("'x'"))
                } else {
                    Ok((c, 0))
                }
            }
            Some(Tok::X) => {
                self.at += 1;
                Ok((BigInt::from(1), self.power()?))
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

pub fn parse_poly(text: &str) -> Result<BigIntPoly, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
    };
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut negative = p.sign().unwrap_or(false);
    loop {
        let (c, k) = p.term()?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::from(0));
        }
        if negative {
            coeffs[k] -= c;
        } else {
            coeffs[k] += c;
        }
        if p.peek().is_none() {
            break;
        }
        negative = p.sign().ok_or_else(|| p.unexpected("'+' or '-'"))?;
    }
    Ok(BigIntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> BigIntPoly {
        BigIntPoly::from_i64s(c)
    }

    #[test]
    fn accepts_the_grammar() {
        assert_eq!(
            parse_poly("x^7 + 3x^5 + 18x^4 + 9x^3 + 6x^2 + 48x + 24").unwrap(),
            poly(&[24, 48, 6, 9, 18, 3, 0, 1])
        );
        assert_eq!(parse_poly("x - 3").unwrap(), poly(&[-3, 1]));
        assert_eq!(parse_poly("x^2 + x^2").unwrap(), poly(&[0, 0, 2]));
        assert_eq!(parse_poly("-2*x^3+x^0 - 7").unwrap(), poly(&[-6, 0, 0, -2]));
        assert_eq!(parse_poly("  + 5 x ^ 2 ").unwrap(), poly(&[0, 0, 5]));
        assert_eq!(parse_poly("0").unwrap(), BigIntPoly::zero());
        assert_eq!(parse_poly("x - x").unwrap(), BigIntPoly::zero());
        assert_eq!(
            parse_poly("123456789012345678901234567890x")
                .unwrap()
                .coeff(1)
                .to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn reports_positions() {
        assert_eq!(parse_poly(""), Err(ParseError::Empty));
        assert_eq!(parse_poly("   "), Err(ParseError::Empty));
        assert_eq!(
            parse_poly("x + y"),
            Err(ParseError::UnknownSymbol {
                pos: 4,
                symbol: 'y'
            })
        );
        assert!(matches!(
            parse_poly("x^ + 1"),
            Err(ParseError::MalformedExponent { pos: 3, .. })
        ));
        assert!(matches!(
            parse_poly("x^-2"),
            Err(ParseError::MalformedExponent { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x^99999999999999999999"),
            Err(ParseError::MalformedExponent { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x +"),
            Err(ParseError::Unexpected { pos: 3, .. })
        ));
        assert!(matches!(
            parse_poly("3 4"),
            Err(ParseError::Unexpected { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("2*3"),
            Err(ParseError::Unexpected { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x x"),
            Err(ParseError::Unexpected { pos: 2, .. })
        ));
    }
}
