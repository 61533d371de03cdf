//! Text syntax for polynomials, matching the `Display` output:
//! `3/2 * a[1,2].b[2,1].D^-1 - x[1]@2 + 1`. Indices are 1-based.

use num_bigint::BigInt;

use super::{GenSymbol, NCPoly, Word};
use crate::error::{Error, Result};
use crate::linalg::Scalar;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn index(&mut self) -> Result<usize> {
        let d: usize = self.digits()?.parse().map_err(|_| self.error("index too large"))?;
        if d == 0 || d > u16::MAX as usize {
            return Err(self.error("indices are 1-based"));
        }
        Ok(d - 1)
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        if self.eat(b'/') {
            let den: BigInt = self.digits()?.parse().expect("digits");
            if den == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
            return Ok(Scalar::new(num, den));
        }
        Ok(Scalar::from_integer(num))
    }

    fn symbol(&mut self) -> Result<GenSymbol> {
        let sym = match self.peek() {
            Some(c @ (b'a' | b'b')) => {
                self.pos += 1;
                self.expect(b'[')?;
                let i = self.index()?;
                self.expect(b',')?;
                let j = self.index()?;
                self.expect(b']')?;
                if c == b'a' {
                    GenSymbol::a(i, j)
                } else {
                    GenSymbol::b(i, j)
                }
            }
            Some(b'x') => {
                self.pos += 1;
                self.expect(b'[')?;
                let i = self.index()?;
                self.expect(b']')?;
                GenSymbol::x(i)
            }
            Some(b'D') => {
                self.pos += 1;
                if self.eat(b'^') {
                    if self.eat(b'-') {
                        self.expect(b'1')?;
                        GenSymbol::d_inv()
                    } else {
                        self.expect(b'1')?;
                        GenSymbol::d()
                    }
                } else {
                    GenSymbol::d()
                }
            }
            _ => return Err(self.error("expected a generator")),
        };
        if self.eat(b'@') {
            let f: u8 = self.digits()?.parse().map_err(|_| self.error("factor tag too large"))?;
            if f == 0 {
                return Err(self.error("factor tags start at 1"));
            }
            return Ok(sym.in_factor(f));
        }
        Ok(sym)
    }

    fn word(&mut self) -> Result<Word> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Word::empty());
        }
        let mut syms = vec![self.symbol()?];
        while self.eat(b'.') {
            syms.push(self.symbol()?);
        }
        Ok(Word::from_symbols(syms))
    }

    fn term(&mut self) -> Result<(Word, Scalar)> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.coeff()?;
            self.skip_ws();
            let starred = self.eat(b'*');
            self.skip_ws();
            if starred || self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                return Ok((self.word()?, c));
            }
            return Ok((Word::empty(), c));
        }
        Ok((self.word()?, Scalar::from_integer(1.into())))
    }
}

/// Parses a polynomial in the `Display` syntax.
pub fn parse_poly(s: &str) -> Result<NCPoly> {
    let mut cur = Cursor { s: s.as_bytes(), pos: 0 };
    let mut out = NCPoly::zero();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let neg = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else if cur.peek().is_none() {
            break;
        } else {
            return Err(cur.error("expected '+' or '-'"));
        };
        first = false;
        cur.skip_ws();
        let (w, c) = cur.term()?;
        out.add_term(w, if neg { -c } else { c });
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

/// Parses one generator symbol such as `a[1,2]`, `D^-1` or `x[3]@2`.
pub fn parse_symbol(s: &str) -> Result<GenSymbol> {
    let mut cur = Cursor { s: s.trim().as_bytes(), pos: 0 };
    let sym = cur.symbol()?;
    if cur.peek().is_some() {
        return Err(cur.error("trailing input after symbol"));
    }
    Ok(sym)
}
