//! Sparse polynomials in four variables over F_p.
//!
//! Used both for bihomogeneous forms in `s, t, u, v` and for implicit
//! equations in `x0..x3`. Terms are kept in descending lexicographic order of
//! the exponent vector, so for a form of fixed bidegree the iteration order
//! is s-exponent descending, then u-exponent descending.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Exponent vector. Ordered so that larger exponents come first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mono(pub [u32; 4]);

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    pub fn mul(self, o: Mono) -> Mono {
        Mono([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }

    pub fn divides(self, o: Mono) -> bool {
        (0..4).all(|i| self.0[i] <= o.0[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(self, o: Mono) -> Mono {
        Mono([
            o.0[0] - self.0[0],
            o.0[1] - self.0[1],
            o.0[2] - self.0[2],
            o.0[3] - self.0[3],
        ])
    }

    pub fn total_degree(self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly4 {
    terms: BTreeMap<Mono, u64>,
}

impl Poly4 {
    pub fn zero() -> Self {
        Poly4::default()
    }

    pub fn constant(c: u64, f: &PrimeField) -> Self {
        Poly4::monomial(c, [0; 4], f)
    }

    pub fn monomial(c: u64, e: [u32; 4], f: &PrimeField) -> Self {
        let mut p = Poly4::zero();
        p.add_term(Mono(e), c, f);
        p
    }

    /// Sums repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (Mono, u64)>>(it: I, f: &PrimeField) -> Self {
        let mut p = Poly4::zero();
        for (m, c) in it {
            p.add_term(m, c, f);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: u64, f: &PrimeField) {
        let c = f.reduce(c);
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = f.add(*old, c);
                if s == 0 {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending order.
    pub fn terms(&self) -> impl Iterator<Item = (Mono, u64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn coeff(&self, m: Mono) -> u64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(Mono, u64)> {
        self.terms.iter().next().map(|(m, c)| (*m, *c))
    }

    /// Is every term of the same total degree?
    pub fn total_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.total_degree();
        it.all(|m| m.total_degree() == d).then_some(d)
    }

    pub fn add(&self, o: &Poly4, f: &PrimeField) -> Poly4 {
        let mut r = self.clone();
        for (m, c) in o.terms() {
            r.add_term(m, c, f);
        }
        r
    }

    pub fn sub(&self, o: &Poly4, f: &PrimeField) -> Poly4 {
        let mut r = self.clone();
        for (m, c) in o.terms() {
            r.add_term(m, f.neg(c), f);
        }
        r
    }

    pub fn neg(&self, f: &PrimeField) -> Poly4 {
        Poly4 {
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u64, f: &PrimeField) -> Poly4 {
        let c = f.reduce(c);
        if c == 0 {
            return Poly4::zero();
        }
        Poly4 {
            terms: self.terms.iter().map(|(m, x)| (*m, f.mul(*x, c))).collect(),
        }
    }

    pub fn mul(&self, o: &Poly4, f: &PrimeField) -> Poly4 {
        let mut r = Poly4::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in o.terms() {
                r.add_term(m1.mul(m2), f.mul(c1, c2), f);
            }
        }
        r
    }

    pub fn mul_term(&self, m: Mono, c: u64, f: &PrimeField) -> Poly4 {
        let c = f.reduce(c);
        if c == 0 {
            return Poly4::zero();
        }
        Poly4 {
            terms: self.terms.iter().map(|(x, y)| (x.mul(m), f.mul(*y, c))).collect(),
        }
    }

    pub fn pow(&self, e: u32, f: &PrimeField) -> Poly4 {
        let mut r = Poly4::constant(1, f);
        for _ in 0..e {
            r = r.mul(self, f);
        }
        r
    }

    pub fn eval(&self, x: &[u64; 4], f: &PrimeField) -> u64 {
        let mut acc = 0;
        for (m, c) in self.terms() {
            let mut t = c;
            for i in 0..4 {
                t = f.mul(t, f.pow(x[i], m.0[i] as u64));
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Applies `e -> [e[perm[0]], .., e[perm[3]]]` to every exponent.
    pub fn permute_vars(&self, perm: [usize; 4]) -> Poly4 {
        Poly4 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono([m.0[perm[0]], m.0[perm[1]], m.0[perm[2]], m.0[perm[3]]]), *c))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self, f: &PrimeField) -> Poly4 {
        match self.leading() {
            Some((_, c)) => self.scale(f.inv(c), f),
            None => Poly4::zero(),
        }
    }

    /// Exact multivariate division with respect to the lex order.
    /// Returns `(quotient, remainder)`. Since a single polynomial is a
    /// Groebner basis of the ideal it generates, the remainder is zero
    /// exactly when `d` divides `self`.
    pub fn div_rem(&self, d: &Poly4, f: &PrimeField) -> (Poly4, Poly4) {
        let (lm, lc) = d.leading().expect("division by zero polynomial");
        let lc_inv = f.inv(lc);
        let mut q = Poly4::zero();
        let mut r = Poly4::zero();
        let mut p = self.clone();
        while let Some((m, c)) = p.leading() {
            if lm.divides(m) {
                let qm = lm.quotient_of(m);
                let qc = f.mul(c, lc_inv);
                q.add_term(qm, qc, f);
                p = p.sub(&d.mul_term(qm, qc, f), f);
            } else {
                r.add_term(m, c, f);
                p.terms.remove(&m);
            }
        }
        (q, r)
    }

    /// Prints with the given variable names, coefficients lifted to the
    /// symmetric range.
    pub fn display(&self, f: &PrimeField, names: &[&str; 4]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let sc = f.to_signed(c);
            let (neg, mag) = if sc < 0 { (true, (-sc) as u64) } else { (false, sc as u64) };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if mag != 1 || factors.is_empty() {
                factors.insert(0, mag.to_string());
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
    /// `factor := ('+'|'-') factor | atom ('^' integer)?`,
    /// `atom := integer | name | '(' expr ')'`.
    pub fn parse(src: &str, f: &PrimeField, names: &[&str; 4]) -> Result<Poly4> {
        let mut p = Parser { src: src.as_bytes(), pos: 0, f, names };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(r)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    f: &'a PrimeField,
    names: &'a [&'a str; 4],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Poly4> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, self.f);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?, self.f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly4> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?, self.f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly4> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg(self.f))
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    let e = self.integer_raw()?;
                    let e: u32 = e
                        .parse()
                        .map_err(|_| Error::Parse { pos: start, msg: "exponent too large".into() })?;
                    Ok(base.pow(e, self.f))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn integer_raw(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Poly4> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.integer_raw()?;
                let mut v = 0u64;
                for d in digits.bytes() {
                    v = self.f.mul_add((d - b'0') as u64, v, 10);
                }
                Ok(Poly4::constant(v, self.f))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => {
                        let mut e = [0u32; 4];
                        e[i] = 1;
                        Ok(Poly4::monomial(1, e, self.f))
                    }
                    None => Err(Error::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: [&str; 4] = ["x0", "x1", "x2", "x3"];

    #[test]
    fn exact_division() {
        let f = PrimeField::default();
        let a = Poly4::parse("x0*x3 - x1*x2", &f, &X).unwrap();
        let b = Poly4::parse("x0^2 + 3*x1*x3 - x2^2", &f, &X).unwrap();
        let prod = a.mul(&b, &f).mul(&a, &f);
        let (q, r) = prod.div_rem(&a, &f);
        assert!(r.is_zero());
        let (q2, r2) = q.div_rem(&a, &f);
        assert!(r2.is_zero());
        assert_eq!(q2, b);
        let (_, r3) = b.div_rem(&a, &f);
        assert!(!r3.is_zero());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let f = PrimeField::default();
        match Poly4::parse("x0 + y", &f, &X) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "y");
                assert_eq!(pos, 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(Poly4::parse("x0 + * x1", &f, &X), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(Poly4::parse("(x0", &f, &X), Err(Error::Parse { .. })));
    }
}
