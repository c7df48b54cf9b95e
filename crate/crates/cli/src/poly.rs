//! Text form of Laurent polynomials in `t`, e.g. `2*t^2 - 5*t + 2`,
//! `-9 + 8*t^-1` or `1/2 t - 3`.

use anyhow::{anyhow, bail, Result};
use knotconc::laurent::LaurentPoly;
use num::{BigInt, BigRational, One, Zero};
use std::str::FromStr;

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

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
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

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).ok()?;
        BigInt::from_str(text).ok()
    }

    fn error(&self, what: &str) -> anyhow::Error {
        anyhow!("polynomial: {} at column {}", what, self.pos + 1)
    }
}

/// Parses a sum of terms `c*t^e`; the coefficient, the `*` and the
/// exponent are each optional, and coefficients may be fractions `p/q`.
pub fn parse_poly(text: &str) -> Result<LaurentPoly> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let mut terms: Vec<(i64, BigRational)> = Vec::new();
    let mut first = true;
    loop {
        let mut sign = BigInt::one();
        if c.eat(b'-') {
            sign = -sign;
        } else if !c.eat(b'+') && !first {
            break;
        }
        first = false;
        let coeff = match c.digits() {
            Some(n) => {
                let mut q = BigRational::from_integer(n);
                if c.eat(b'/') {
                    let d = c.digits().ok_or_else(|| c.error("expected a denominator"))?;
                    if d.is_zero() {
                        return Err(c.error("zero denominator"));
                    }
                    q /= BigRational::from_integer(d);
                }
                Some(q)
            }
            None => None,
        };
        let starred = c.eat(b'*');
        if starred && coeff.is_none() {
            return Err(c.error("'*' without a coefficient"));
        }
        let exp = if c.eat(b't') {
            if c.eat(b'^') {
                let neg = c.eat(b'-');
                let e = c.digits().ok_or_else(|| c.error("expected an exponent"))?;
                let e = i64::try_from(e).map_err(|_| c.error("exponent too large"))?;
                if neg {
                    -e
                } else {
                    e
                }
            } else {
                1
            }
        } else if starred || coeff.is_none() {
            return Err(c.error("expected a term"));
        } else {
            0
        };
        let coeff = coeff.unwrap_or_else(BigRational::one);
        terms.push((exp, coeff * BigRational::from_integer(sign)));
    }
    if c.peek().is_some() {
        bail!(c.error("unexpected character"));
    }
    Ok(LaurentPoly::from_terms(terms))
}
