//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! poly   := term (("+"|"-") term)*
//! term   := [coeff "*"] factor ("*" factor)* | coeff
//! factor := base ["^" uint]
//! base   := var ["'"] | "(" poly ")"
//! var    := ("x"|"y") uint
//! coeff  := signed decimal, optionally "i"-suffixed, e.g. "2", "-0.5",
//!           "1i", "(1+2i)"
//! ```
//!
//! Whitespace is insignificant. A leading unary minus on the first term is
//! accepted. An adjoint tick on an `x` symbol is normalized to the symbol
//! itself.

use num_complex::Complex64 as C64;

use super::{NCPolynomial, PolyError, Symbol, Word};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alpha_star: u32,
    beta_star: u32,
}

/// Parses `text` into a canonical polynomial over the declared alphabet.
pub fn parse_poly(text: &str, alpha_star: u32, beta_star: u32) -> Result<NCPolynomial, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        alpha_star,
        beta_star,
    };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            offset: self.pos,
            msg: msg.to_string(),
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<NCPolynomial, PolyError> {
        let mut acc = NCPolynomial::zero(self.alpha_star, self.beta_star);
        let neg = self.eat(b'-');
        let t = self.term()?;
        acc = acc.add(&if neg { t.scale(C64::new(-1.0, 0.0)) } else { t });
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NCPolynomial, PolyError> {
        let mut acc = if self.starts_number() {
            let c = self.coeff()?;
            NCPolynomial::constant(self.alpha_star, self.beta_star, c)
        } else {
            self.factor()?
        };
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn starts_number(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'.')
    }

    fn factor(&mut self) -> Result<NCPolynomial, PolyError> {
        let base = self.base()?;
        if self.eat(b'^') {
            let n = self.uint()? as usize;
            let mut acc = NCPolynomial::one(self.alpha_star, self.beta_star);
            for _ in 0..n {
                acc = acc.mul(&base);
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<NCPolynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                // Disambiguate a parenthesized complex literal like (1+2i)
                // from a parenthesized subexpression; both are expressions,
                // so parsing as a poly is always correct.
                let inner = self.poly()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') | Some(b'y') => {
                let kind = self.bump().unwrap();
                let idx = self.uint()?;
                let adj = self.eat(b'\'');
                let sym = match (kind, adj) {
                    (b'x', _) => {
                        // x' normalizes to x: hermitian symbols are fixed
                        // points of the involution.
                        if idx > self.alpha_star {
                            return Err(PolyError::IndexOutOfRange {
                                var: format!("x{idx}"),
                                max: self.alpha_star,
                            });
                        }
                        Symbol::X(idx)
                    }
                    (b'y', false) => {
                        if idx > self.beta_star {
                            return Err(PolyError::IndexOutOfRange {
                                var: format!("y{idx}"),
                                max: self.beta_star,
                            });
                        }
                        Symbol::Y(idx)
                    }
                    (b'y', true) => {
                        if idx > self.beta_star {
                            return Err(PolyError::IndexOutOfRange {
                                var: format!("y{idx}'"),
                                max: self.beta_star,
                            });
                        }
                        Symbol::YAdj(idx)
                    }
                    _ => unreachable!(),
                };
                let mut p = NCPolynomial::zero(self.alpha_star, self.beta_star);
                p.add_term(Word(vec![sym]), C64::new(1.0, 0.0));
                Ok(p)
            }
            _ => Err(self.err("expected variable, literal, or '('")),
        }
    }

    fn uint(&mut self) -> Result<u32, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn coeff(&mut self) -> Result<C64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: f64 = text.parse().map_err(|_| self.err("malformed number"))?;
        if self.pos < self.src.len() && self.src[self.pos] == b'i' {
            self.pos += 1;
            Ok(C64::new(0.0, v))
        } else {
            Ok(C64::new(v, 0.0))
        }
    }
}
