//! Canonical polynomial text.
//!
//! ```text
//! poly   = term ("+" term)*
//! term   = "1" | factor ("*" factor)*
//! factor = "w" index ["^" exp]
//! ```
//!
//! Whitespace is insignificant. The zero polynomial is written `0`.

use super::monomial::{Monomial, PolyRing};
use super::polynomial::Polynomial;
use super::PolyError;

struct Parser<'a> {
    ring: PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn number(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| PolyError::Syntax { pos: start, msg: "number too large".into() })
    }

    fn factor(&mut self) -> Result<(u8, u32), PolyError> {
        match self.peek() {
            Some(b'w') => self.pos += 1,
            Some(c) => return Err(self.err(format!("expected 'w', found '{}'", c as char))),
            None => return Err(self.err("expected 'w', found end of input")),
        }
        let at = self.pos;
        let idx = self.number()?;
        if idx > u8::MAX as u64 || !self.ring.variables().contains(idx as u8) {
            return Err(PolyError::UnknownVariable { var: idx.min(u8::MAX as u64) as u8, pos: Some(at) });
        }
        let mut exp = 1u64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = self.number()?;
            if exp > u16::MAX as u64 {
                return Err(PolyError::ExponentOverflow);
            }
        }
        Ok((idx as u8, exp as u32))
    }

    fn term(&mut self) -> Result<Option<Monomial>, PolyError> {
        match self.peek() {
            Some(b'1') => {
                let at = self.pos;
                let n = self.number()?;
                if n != 1 {
                    return Err(PolyError::Syntax { pos: at, msg: format!("unexpected constant {n}") });
                }
                Ok(Some(self.ring.one()))
            }
            Some(b'0') => {
                let at = self.pos;
                let n = self.number()?;
                if n != 0 {
                    return Err(PolyError::Syntax { pos: at, msg: format!("unexpected constant {n}") });
                }
                Ok(None)
            }
            _ => {
                let mut factors = vec![self.factor()?];
                while self.peek() == Some(b'*') {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                Ok(Some(self.ring.monomial(&factors)?))
            }
        }
    }
}

/// Parses canonical text into a polynomial of `ring`. Repeated terms cancel.
pub fn parse(ring: PolyRing, text: &str) -> Result<Polynomial, PolyError> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    let mut monos = Vec::new();
    if let Some(m) = p.term()? {
        monos.push(m);
    }
    loop {
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.pos += 1;
                if let Some(m) = p.term()? {
                    monos.push(m);
                }
            }
            Some(c) => return Err(p.err(format!("unexpected '{}'", c as char))),
        }
    }
    Ok(Polynomial::from_monomials(ring, monos))
}

impl Polynomial {
    pub fn parse(ring: PolyRing, text: &str) -> Result<Polynomial, PolyError> {
        parse(ring, text)
    }
}

/// Parses a single monomial such as `w2^12*w4^3`.
pub fn parse_monomial(ring: PolyRing, text: &str) -> Result<Monomial, PolyError> {
    let p = parse(ring, text)?;
    match p.terms() {
        [m] => Ok(*m),
        _ => Err(PolyError::Syntax { pos: 0, msg: "expected a single monomial".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r4() -> PolyRing {
        PolyRing::standard(4).unwrap()
    }

    #[test]
    fn parses_examples() {
        let r = PolyRing::standard(3).unwrap();
        let p = parse(r, "w2^3 + w3^2").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_text(), "w2^3 + w3^2");
        assert!(parse(r, "1").unwrap().is_one());
        let q = parse(r4(), "w4^2 + w2^2*w4").unwrap();
        assert_eq!(q.to_text(), "w4^2 + w2^2*w4");
        assert_eq!(parse(r4(), "w2^2 * w4 +w4^2").unwrap(), q);
    }

    #[test]
    fn format_is_decreasing_under_order() {
        let p = parse(r4(), "w2^10 + w3^20 + w4").unwrap();
        assert_eq!(p.to_text(), "w4 + w2^10 + w3^20");
        let r3 = PolyRing::standard(3).unwrap();
        assert_eq!(parse(r3, "w3^5 + w2").unwrap().to_text(), "w2 + w3^5");
    }

    #[test]
    fn cancellation_and_zero() {
        assert!(parse(r4(), "w2 + w2").unwrap().is_zero());
        assert!(parse(r4(), "0").unwrap().is_zero());
        assert_eq!(parse(r4(), "0").unwrap().to_text(), "0");
        assert_eq!(parse(r4(), "w2*w2").unwrap().to_text(), "w2^2");
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse(r4(), "w2 + + w3") {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match parse(r4(), "w2^") {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse(r4(), "w5"), Err(PolyError::UnknownVariable { var: 5, pos: Some(1) })));
        assert!(matches!(parse(r4(), "w1"), Err(PolyError::UnknownVariable { .. })));
        assert!(matches!(parse(r4(), "2"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse(r4(), "w2 w3"), Err(PolyError::Syntax { .. })));
    }
}
