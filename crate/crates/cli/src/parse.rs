//! Textual function specs.
//!
//! ```text
//! spec     := powersum | "piecewise:" segment (";" segment)*
//! powersum := term ("+" term)*
//! term     := coef ["*" "a^" exp] | "a^" exp
//! segment  := "[" lo "," hi "]" powersum
//! ```
//!
//! Coefficients are signed decimal literals, so `2*a^1 + -0.5*a^2` spells a
//! negative term. Whitespace is ignored everywhere.

use std::fmt;

use abel_core::{FunctionSpec, PiecewisePowerSum, PowerSum, Segment};

/// Where and why a spec failed to parse. `column` is 1-based and counts
/// characters of the original text.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { chars, pos: 0, text }
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i + 1)
            .unwrap_or_else(|| self.text.chars().count() + 1)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { column: self.column(), message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn starts_with(&self, word: &str) -> bool {
        let mut i = self.pos;
        for w in word.chars() {
            match self.chars.get(i) {
                Some(&(_, c)) if c == w => i += 1,
                _ => return false,
            }
        }
        true
    }

    fn number(&mut self) -> PResult<f64> {
        let start = self.pos;
        let column = self.column();
        let mut lexeme = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            lexeme.push(c);
            self.pos += 1;
        }
        let mut digits = 0;
        while let Some(c @ ('0'..='9' | '.')) = self.peek() {
            digits += usize::from(c.is_ascii_digit());
            lexeme.push(c);
            self.pos += 1;
        }
        if digits > 0 {
            if let Some(e @ ('e' | 'E')) = self.peek() {
                lexeme.push(e);
                self.pos += 1;
                if let Some(c @ ('+' | '-')) = self.peek() {
                    lexeme.push(c);
                    self.pos += 1;
                }
                while let Some(c @ '0'..='9') = self.peek() {
                    lexeme.push(c);
                    self.pos += 1;
                }
            }
        }
        match lexeme.parse::<f64>() {
            Ok(v) if digits > 0 && v.is_finite() => Ok(v),
            _ => {
                self.pos = start;
                Err(ParseError {
                    column,
                    message: match self.peek() {
                        Some(c) if lexeme.is_empty() => format!("expected a number, found '{c}'"),
                        None => "expected a number, found end of input".into(),
                        _ => format!("malformed number '{lexeme}'"),
                    },
                })
            }
        }
    }

    fn exponent(&mut self) -> PResult<f64> {
        let column = self.column();
        let e = self.number()?;
        if e < 0.0 {
            return Err(ParseError { column, message: format!("negative exponent {e}") });
        }
        Ok(e)
    }

    fn power(&mut self) -> PResult<f64> {
        self.expect('a')?;
        self.expect('^')?;
        self.exponent()
    }

    fn term(&mut self) -> PResult<(f64, f64)> {
        if self.peek() == Some('a') {
            return Ok((1.0, self.power()?));
        }
        let coef = self.number()?;
        if self.eat('*') {
            Ok((coef, self.power()?))
        } else {
            Ok((coef, 0.0))
        }
    }

    fn power_sum(&mut self) -> PResult<PowerSum> {
        let column = self.column();
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        PowerSum::new(terms).map_err(|e| ParseError { column, message: e.to_string() })
    }

    fn finish(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected '{c}'")),
        }
    }
}

/// Parses a function spec; piecewise continuity is checked here.
pub fn parse_function_spec(text: &str) -> PResult<FunctionSpec> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return cur.error("empty function spec");
    }
    if !cur.starts_with("piecewise") {
        let sum = cur.power_sum()?;
        cur.finish()?;
        return Ok(sum.into());
    }
    cur.pos += "piecewise".len();
    cur.expect(':')?;
    let mut segments = Vec::new();
    loop {
        cur.expect('[')?;
        let lo = cur.number()?;
        cur.expect(',')?;
        let hi = cur.number()?;
        cur.expect(']')?;
        let sum = cur.power_sum()?;
        segments.push(Segment { lo, hi, sum });
        if !cur.eat(';') {
            break;
        }
    }
    cur.finish()?;
    PiecewisePowerSum::new(segments)
        .map(Into::into)
        .map_err(|e| ParseError { column: 1, message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(text: &str) -> Vec<(f64, f64)> {
        parse_function_spec(text).unwrap().as_power_sum().unwrap().terms().to_vec()
    }

    #[test]
    fn power_sums() {
        assert_eq!(terms("1.0"), vec![(1.0, 0.0)]);
        assert_eq!(terms("2*a^0.5 + 1*a^2"), vec![(2.0, 0.5), (1.0, 2.0)]);
        assert_eq!(terms(" a^1 +a^1 "), vec![(2.0, 1.0)]);
        assert_eq!(terms("-1.5e-1*a^2+3"), vec![(3.0, 0.0), (-0.15, 2.0)]);
        assert_eq!(terms(".5"), vec![(0.5, 0.0)]);
    }

    #[test]
    fn piecewise() {
        let f = parse_function_spec("piecewise: [0,1] 1.0 ; [1,2] -2 + 3*a^1").unwrap();
        match f {
            FunctionSpec::Piecewise(p) => assert_eq!(p.segments().len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shifted_power_is_a_syntax_error() {
        let err = parse_function_spec("piecewise: [0,1] 1.0 ; [1,2] 1.0 + 3*(a-1)^1").unwrap_err();
        assert_eq!(err.column, 38);
        assert!(err.message.contains("'('"), "{err}");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_function_spec("2*a^-0.5").unwrap_err();
        assert_eq!(err.column, 5);
        assert!(err.message.contains("negative exponent"));
        assert_eq!(parse_function_spec("1 + ").unwrap_err().column, 5);
        assert_eq!(parse_function_spec("1 a^1").unwrap_err().column, 3);
        assert_eq!(parse_function_spec("2*b^1").unwrap_err().column, 3);
        assert!(parse_function_spec("").is_err());
        assert!(parse_function_spec("inf").is_err());
        assert!(parse_function_spec("1e400").is_err());
    }

    #[test]
    fn discontinuity_is_rejected() {
        let err = parse_function_spec("piecewise: [0,1] 1 ; [1,2] 2").unwrap_err();
        assert!(err.message.contains("discontinu") || err.message.contains("continu"), "{err}");
    }
}
