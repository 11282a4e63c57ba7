//! Canonical text encoding.
//!
//! Elements print as nested coefficient lists (`[[1,0],[2,1]]` at level 2,
//! residues as decimals at level 0). When parsing, a bare integer at any level
//! is the constant it denotes. Polynomials are comma-separated ascending
//! coefficients; descriptors are `p; m1; m2; ...`.

use super::{FieldElement, Tower};
use crate::error::{Error, Result};
use crate::poly::Poly;

impl Tower {
    pub fn format(&self, a: &FieldElement) -> String {
        let mut s = String::new();
        self.format_into(a.level, &a.coeffs, &mut s);
        s
    }

    fn format_into(&self, level: usize, c: &[u32], out: &mut String) {
        if level == 0 {
            out.push_str(&c[0].to_string());
            return;
        }
        let sub = self.dim(level - 1);
        out.push('[');
        for (i, chunk) in c.chunks(sub).enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.format_into(level - 1, chunk, out);
        }
        out.push(']');
    }

    pub fn format_poly(&self, f: &Poly<FieldElement>) -> String {
        if f.coeffs().is_empty() {
            return "0".to_string();
        }
        f.coeffs()
            .iter()
            .map(|c| self.format(c))
            .collect::<Vec<_>>()
            .join(",")
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == b => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(Error::parse(
                self.pos,
                format!("expected '{}', found '{}'", b as char, c as char),
            )),
            None => Err(Error::parse(self.pos, format!("expected '{}'", b as char))),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse()
            .map_err(|_| Error::parse(start, "expected an integer"))
    }
}

fn element_at(tower: &Tower, level: usize, cur: &mut Cursor) -> Result<FieldElement> {
    if cur.peek() != Some(b'[') {
        let n = cur.integer()?;
        return Ok(tower.constant(level, n));
    }
    let start = cur.pos;
    if level == 0 {
        return Err(Error::parse(start, "nested list at the prime level"));
    }
    cur.expect(b'[')?;
    let e = tower.step_degree(level);
    let mut parts = Vec::with_capacity(e);
    for i in 0..e {
        if i > 0 {
            cur.expect(b',')?;
        }
        parts.push(element_at(tower, level - 1, cur)?);
    }
    cur.expect(b']')
        .map_err(|_| Error::parse(cur.pos, format!("level {level} elements have exactly {e} coefficients")))?;
    tower.element_from_parts(level, &parts)
}

/// Parse one element of `level`.
pub fn parse_element(tower: &Tower, level: usize, s: &str) -> Result<FieldElement> {
    let mut cur = Cursor::new(s);
    let a = element_at(tower, level, &mut cur)?;
    if !cur.at_end() {
        return Err(Error::parse(cur.pos, "trailing input"));
    }
    Ok(a)
}

/// Parse comma-separated ascending coefficients over `level`.
pub fn parse_poly(tower: &Tower, level: usize, s: &str) -> Result<Poly<FieldElement>> {
    let mut cur = Cursor::new(s);
    let mut coeffs = vec![element_at(tower, level, &mut cur)?];
    while !cur.at_end() {
        cur.expect(b',')?;
        coeffs.push(element_at(tower, level, &mut cur)?);
    }
    Ok(Poly::from_coeffs(coeffs, |c| c.is_zero()))
}

/// Parse `p; m1; m2; ...`, verifying each modulus.
pub fn parse_descriptor(s: &str) -> Result<Tower> {
    let mut parts = s.split(';');
    let head = parts.next().unwrap_or("").trim();
    let p: u32 = head
        .parse()
        .map_err(|_| Error::parse(0, "expected a prime"))?;
    let mut tower = Tower::prime(p)?;
    let mut offset = head.len() + 1;
    for part in parts {
        let level = tower.height();
        let m = parse_poly(&tower, level, part).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::parse(offset + pos, msg),
            other => other,
        })?;
        tower = tower.extend(&m)?;
        offset += part.len() + 1;
    }
    Ok(tower)
}
