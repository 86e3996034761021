//! Tiny arithmetic-expression evaluator for configuration values like
//! `"sqrt(2)/3"`, `"2*pi/3"` or `"1.0"`. Supports `+ - * /`, unary minus,
//! parentheses, `pi`, and `sqrt(...)`.

use crate::error::{Error, Result};

pub fn eval(src: &str) -> Result<f64> {
    let mut p = Parser {
        bytes: src.as_bytes(),
        pos: 0,
        src,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.fail("trailing input"));
    }
    if !v.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "expression '{src}' does not evaluate to a finite number"
        )));
    }
    Ok(v)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn fail(&self, what: &str) -> Error {
        Error::InvalidConfig(format!(
            "{what} at byte {} of expression '{}'",
            self.pos, self.src
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<f64> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc -= self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<f64> {
        let mut acc = self.factor()?;
        while let Some(op) = self.peek() {
            match op {
                b'*' => {
                    self.pos += 1;
                    acc *= self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc /= d;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<f64> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.name(),
            _ => Err(self.fail("expected a value")),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' {
                self.pos += 1;
            } else if (c == b'+' || c == b'-')
                && matches!(self.bytes[self.pos - 1], b'e' | b'E')
            {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.fail("bad number"))
    }

    fn name(&mut self) -> Result<f64> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        match &self.src[start..self.pos] {
            "pi" => Ok(std::f64::consts::PI),
            "tau" => Ok(std::f64::consts::TAU),
            "sqrt" => {
                if self.peek() != Some(b'(') {
                    return Err(self.fail("sqrt needs parentheses"));
                }
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail("expected ')'"));
                }
                self.pos += 1;
                Ok(v.sqrt())
            }
            other => Err(Error::InvalidConfig(format!(
                "unknown name '{other}' in expression '{}'",
                self.src
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn known_forms() {
        assert_eq!(eval("1.0").unwrap(), 1.0);
        assert!((eval("sqrt(2)/3").unwrap() - 2.0f64.sqrt() / 3.0).abs() < 1e-15);
        assert!((eval("2*pi/3").unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((eval("pi/4").unwrap() - PI / 4.0).abs() < 1e-15);
        assert!((eval("-0.5 + 1").unwrap() - 0.5).abs() < 1e-15);
        assert!((eval("(1+2)*3").unwrap() - 9.0).abs() < 1e-15);
        assert!((eval("1e-3").unwrap() - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn rejects_garbage() {
        assert!(eval("").is_err());
        assert!(eval("2 +").is_err());
        assert!(eval("sqrt 2").is_err());
        assert!(eval("frob(3)").is_err());
        assert!(eval("1/0").is_err());
        assert!(eval("2 2").is_err());
    }
}
