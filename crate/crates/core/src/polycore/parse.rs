//! Recursive-descent parser for the polynomial input language.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := name | rational | '(' expr ')'
//! rational := uint ('/' uint)?
//! name   := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant. The optional leading sign is what lets the
//! printer's output (`-x^2+y`) parse back.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{is_identifier_start, Ambient, PolyError, Polynomial, Rational};

const MAX_EXPONENT: u32 = 10_000;

pub fn parse_polynomial(text: &str, ambient: &Ambient) -> Result<Polynomial, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ambient,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ambient: &'a Ambient,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: String) -> PolyError {
        PolyError::Syntax {
            position: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.src.get(at) {
            Some(b'-') => return Err(PolyError::NegativeExponent { position: at }),
            Some(c) if c.is_ascii_digit() => {}
            Some(_) => return Err(PolyError::NonIntegerExponent { position: at }),
            None => return Err(self.syntax("expected exponent".into())),
        }
        let digits = self.digits();
        if self.src.get(self.pos) == Some(&b'.') || self.src.get(self.pos) == Some(&b'/') {
            return Err(PolyError::NonIntegerExponent { position: at });
        }
        let e: u32 =
            digits
                .parse()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(PolyError::Syntax {
                    position: at,
                    message: format!("exponent larger than {MAX_EXPONENT}"),
                })?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input".into())),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digit run");
                let mut value = Rational::from_integer(num);
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(self.syntax("expected denominator".into()));
                    }
                    let den: BigInt = self.digits().parse().expect("digit run");
                    if den.is_zero() {
                        return Err(self.syntax("zero denominator".into()));
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(self.ambient, value))
            }
            Some(c) if is_identifier_start(c) => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match self.ambient.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.ambient, i)),
                    None => Err(PolyError::UndeclaredVariable {
                        name,
                        position: start,
                    }),
                }
            }
            Some(c) => Err(self.syntax(format!("unexpected `{}`", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(names: &[&str]) -> Ambient {
        Ambient::new(names).unwrap()
    }

    #[test]
    fn deformed_germ_has_four_terms() {
        let a = amb(&["x", "y", "z", "w"]);
        let f = parse_polynomial("x^2+y^2+z^2+w^6", &a).unwrap();
        assert_eq!(f.num_terms(), 4);
    }

    #[test]
    fn zero_has_no_terms() {
        let f = parse_polynomial("0", &amb(&["x"])).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.num_terms(), 0);
    }

    #[test]
    fn expands_products() {
        let a = amb(&["z", "w"]);
        let f = parse_polynomial("(z-w)*(z+w)", &a).unwrap();
        assert_eq!(f, parse_polynomial("z^2 - w^2", &a).unwrap());
    }

    #[test]
    fn rational_literals_and_whitespace() {
        let a = amb(&["x"]);
        let f = parse_polynomial(" 3/6 * x ^ 2 - ( 1/3 ) ", &a).unwrap();
        assert_eq!(f.to_string(), "1/2*x^2-1/3");
    }

    #[test]
    fn errors_carry_positions() {
        let a = amb(&["x", "y"]);
        assert!(matches!(
            parse_polynomial("x^2+", &a),
            Err(PolyError::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial("x+q", &a),
            Err(PolyError::UndeclaredVariable { position: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("x^-1", &a),
            Err(PolyError::NegativeExponent { position: 2 })
        ));
        assert!(matches!(
            parse_polynomial("x^1.5", &a),
            Err(PolyError::NonIntegerExponent { .. })
        ));
        assert!(matches!(
            parse_polynomial("x^y", &a),
            Err(PolyError::NonIntegerExponent { .. })
        ));
        assert!(matches!(
            parse_polynomial("2x", &a),
            Err(PolyError::Syntax { position: 1, .. })
        ));
        assert!(parse_polynomial("(x+y", &a).is_err());
        assert!(parse_polynomial("1/0", &a).is_err());
        assert!(parse_polynomial("", &a).is_err());
    }
}
