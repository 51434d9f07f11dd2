//! Bihomogeneous forms in `K[s,t,u,v]` and binary forms in `u, v`.
//!
//! A form of bidegree `(a, b)` has degree `a` in `s, t` and degree `b` in
//! `u, v`. The global monomial order is s-exponent descending, then
//! u-exponent descending; `monomial_basis` and `coeff_vector` follow it.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly4::{Mono, Poly4};
use crate::upoly;
use serde::{Deserialize, Serialize};

pub type BiPoly = Poly4;

pub const ST_UV: [&str; 4] = ["s", "t", "u", "v"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiDegree {
    pub st: usize,
    pub uv: usize,
}

impl BiDegree {
    pub const fn new(st: usize, uv: usize) -> Self {
        BiDegree { st, uv }
    }

    pub fn dim(self) -> usize {
        (self.st + 1) * (self.uv + 1)
    }

    /// `self - o` when both components stay nonnegative.
    pub fn checked_sub(self, o: BiDegree) -> Option<BiDegree> {
        Some(BiDegree::new(self.st.checked_sub(o.st)?, self.uv.checked_sub(o.uv)?))
    }
}

impl std::fmt::Display for BiDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.st, self.uv)
    }
}

/// All monomials of the given bidegree in the global order.
pub fn monomial_basis(d: BiDegree) -> Vec<Mono> {
    let mut out = Vec::with_capacity(d.dim());
    for i in (0..=d.st).rev() {
        for k in (0..=d.uv).rev() {
            out.push(Mono([i as u32, (d.st - i) as u32, k as u32, (d.uv - k) as u32]));
        }
    }
    out
}

/// Position of `m` in `monomial_basis(d)`; `m` must have bidegree `d`.
pub fn basis_index(m: Mono, d: BiDegree) -> usize {
    (d.st - m.0[0] as usize) * (d.uv + 1) + (d.uv - m.0[2] as usize)
}

impl Poly4 {
    pub fn parse_st_uv(src: &str, f: &PrimeField) -> Result<BiPoly> {
        Poly4::parse(src, f, &ST_UV)
    }

    pub fn to_st_uv_string(&self, f: &PrimeField) -> String {
        self.display(f, &ST_UV)
    }

    /// Common bidegree of all terms; `None` for zero or mixed forms.
    pub fn bidegree(&self) -> Option<BiDegree> {
        let mut it = self.terms();
        let (m, _) = it.next()?;
        let d = mono_bidegree(m);
        it.all(|(m, _)| mono_bidegree(m) == d).then_some(d)
    }

    /// Zero counts as bihomogeneous of every bidegree.
    pub fn is_bihomogeneous_of(&self, d: BiDegree) -> bool {
        self.terms().all(|(m, _)| mono_bidegree(m) == d)
    }

    pub fn coeff_vector(&self, d: BiDegree) -> Vec<u64> {
        let mut v = vec![0; d.dim()];
        for (m, c) in self.terms() {
            debug_assert_eq!(mono_bidegree(m), d);
            v[basis_index(m, d)] = c;
        }
        v
    }

    pub fn from_coeff_vector(v: &[u64], d: BiDegree, f: &PrimeField) -> BiPoly {
        assert_eq!(v.len(), d.dim());
        Poly4::from_terms(monomial_basis(d).into_iter().zip(v.iter().copied()), f)
    }

    /// Swaps `s <-> u` and `t <-> v`.
    pub fn mirror(&self) -> BiPoly {
        self.permute_vars([2, 3, 0, 1])
    }

    /// Groups terms by their `s, t` part. Each slice is the binary form in
    /// `u, v` of degree `uv` multiplying `s^i t^j`.
    pub fn st_slices(&self, uv: usize) -> Vec<((u32, u32), UniHomPoly)> {
        let mut out: Vec<((u32, u32), UniHomPoly)> = Vec::new();
        for (m, c) in self.terms() {
            let key = (m.0[0], m.0[1]);
            if out.last().map(|(k, _)| *k) != Some(key) {
                out.push((key, UniHomPoly::zero(uv)));
            }
            let slot = &mut out.last_mut().unwrap().1;
            slot.coeffs[m.0[3] as usize] = c;
        }
        out
    }

    pub fn mul_uni(&self, g: &UniHomPoly, f: &PrimeField) -> BiPoly {
        self.mul(&g.to_bipoly(f), f)
    }

    /// `self / g` when `g` divides every `s, t` slice.
    pub fn exact_div_uni(&self, g: &UniHomPoly, f: &PrimeField) -> Option<BiPoly> {
        let Some(d) = self.bidegree() else {
            return self.is_zero().then(Poly4::zero);
        };
        let mut q = Poly4::zero();
        for ((i, j), slice) in self.st_slices(d.uv) {
            let qs = slice.exact_div(g, f)?;
            q = q.add(&qs.to_bipoly(f).mul_term(Mono([i, j, 0, 0]), 1, f), f);
        }
        Some(q)
    }
}

fn mono_bidegree(m: Mono) -> BiDegree {
    BiDegree::new((m.0[0] + m.0[1]) as usize, (m.0[2] + m.0[3]) as usize)
}

/// A binary form of a declared degree `d`. `coeffs[k]` multiplies
/// `u^(d-k) v^k`. The zero form keeps its declared degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniHomPoly {
    pub degree: usize,
    pub coeffs: Vec<u64>,
}

impl UniHomPoly {
    pub fn zero(degree: usize) -> Self {
        UniHomPoly { degree, coeffs: vec![0; degree + 1] }
    }

    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty());
        UniHomPoly { degree: coeffs.len() - 1, coeffs }
    }

    /// `c * u^(d-k) v^k`.
    pub fn monomial(degree: usize, k: usize, c: u64) -> Self {
        let mut p = UniHomPoly::zero(degree);
        p.coeffs[k] = c;
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Reads a form in `u, v` only; the declared degree is taken from `degree`
    /// so that zero entries can be represented.
    pub fn from_bipoly(p: &BiPoly, degree: usize) -> Result<Self> {
        let mut out = UniHomPoly::zero(degree);
        for (m, c) in p.terms() {
            if m.0[0] != 0 || m.0[1] != 0 || (m.0[2] + m.0[3]) as usize != degree {
                return Err(Error::NotBihomogeneous(format!(
                    "expected a binary form in u, v of degree {degree}"
                )));
            }
            out.coeffs[m.0[3] as usize] = c;
        }
        Ok(out)
    }

    pub fn to_bipoly(&self, f: &PrimeField) -> BiPoly {
        let d = self.degree as u32;
        Poly4::from_terms(
            self.coeffs.iter().enumerate().map(|(k, &c)| (Mono([0, 0, d - k as u32, k as u32]), c)),
            f,
        )
    }

    pub fn add(&self, o: &UniHomPoly, f: &PrimeField) -> UniHomPoly {
        assert_eq!(self.degree, o.degree, "adding binary forms of different degrees");
        UniHomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn neg(&self, f: &PrimeField) -> UniHomPoly {
        UniHomPoly { degree: self.degree, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: u64, f: &PrimeField) -> UniHomPoly {
        UniHomPoly { degree: self.degree, coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect() }
    }

    pub fn mul(&self, o: &UniHomPoly, f: &PrimeField) -> UniHomPoly {
        let mut r = UniHomPoly::zero(self.degree + o.degree);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                r.coeffs[i + j] = f.mul_add(r.coeffs[i + j], a, b);
            }
        }
        r
    }

    pub fn eval(&self, u: u64, v: u64, f: &PrimeField) -> u64 {
        let mut acc = 0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let t = f.mul(f.pow(u, (self.degree - k) as u64), f.pow(v, k as u64));
            acc = f.mul_add(acc, c, t);
        }
        acc
    }

    /// `self / g` if `g` divides `self` exactly.
    pub fn exact_div(&self, g: &UniHomPoly, f: &PrimeField) -> Option<UniHomPoly> {
        let t0 = g.coeffs.iter().position(|&c| c != 0)?;
        if g.degree > self.degree {
            return None;
        }
        let qd = self.degree - g.degree;
        let inv = f.inv(g.coeffs[t0]);
        let mut q = UniHomPoly::zero(qd);
        for k in 0..=qd {
            let mut acc = if k + t0 <= self.degree { self.coeffs[k + t0] } else { 0 };
            for j in 0..k {
                let gi = k + t0 - j;
                if gi <= g.degree {
                    acc = f.sub(acc, f.mul(q.coeffs[j], g.coeffs[gi]));
                }
            }
            q.coeffs[k] = f.mul(acc, inv);
        }
        (q.mul(g, f) == *self).then_some(q)
    }

    /// Powers of `v` dividing the form; `None` for zero.
    fn v_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Dehomogenization at `v = 1` as a polynomial in `u`, low to high.
    fn dehomogenize_v(&self) -> Vec<u64> {
        upoly::trim(self.coeffs.iter().rev().copied().collect())
    }

    /// Degree of the gcd of a family of forms, zero forms ignored.
    /// `None` when every form is zero.
    pub fn gcd_degree(forms: &[UniHomPoly], f: &PrimeField) -> Option<usize> {
        Self::gcd(forms, f).map(|g| g.degree)
    }

    /// Gcd of a family of forms up to a scalar; `None` when every form is zero.
    pub fn gcd(forms: &[UniHomPoly], f: &PrimeField) -> Option<UniHomPoly> {
        let nz: Vec<&UniHomPoly> = forms.iter().filter(|p| !p.is_zero()).collect();
        if nz.is_empty() {
            return None;
        }
        let vval = nz.iter().map(|p| p.v_valuation().unwrap()).min().unwrap();
        let mut g: Vec<u64> = Vec::new();
        for p in &nz {
            g = upoly::gcd(&g, &p.dehomogenize_v(), f);
        }
        // g(u) * v^vval, homogenized.
        let dg = upoly::degree(&g).unwrap_or(0);
        let degree = dg + vval;
        let mut out = UniHomPoly::zero(degree);
        for (i, &c) in g.iter().enumerate() {
            // u^i v^(dg - i) times v^vval.
            out.coeffs[dg - i + vval] = c;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn basis_order_and_index() {
        let d = BiDegree::new(1, 2);
        let b = monomial_basis(d);
        assert_eq!(b[0], Mono([1, 0, 2, 0]));
        assert_eq!(b[1], Mono([1, 0, 1, 1]));
        assert_eq!(b[3], Mono([0, 1, 2, 0]));
        for (i, m) in b.iter().enumerate() {
            assert_eq!(basis_index(*m, d), i);
        }
    }

    #[test]
    fn example_generator_prints_in_order() {
        let f = f();
        let p = BiPoly::parse_st_uv("s^2*u^5 - s^2*u^3*v^2 + s^2*u*v^4 - t^2*v^5", &f).unwrap();
        assert_eq!(p.bidegree(), Some(BiDegree::new(2, 5)));
        assert_eq!(p.to_st_uv_string(&f), "s^2*u^5 - s^2*u^3*v^2 + s^2*u*v^4 - t^2*v^5");
        let q = BiPoly::parse_st_uv("(s+t)^2*(u-v)", &f).unwrap();
        assert_eq!(q.to_st_uv_string(&f), "s^2*u - s^2*v + 2*s*t*u - 2*s*t*v + t^2*u - t^2*v");
    }

    #[test]
    fn mixed_bidegree_detected() {
        let f = f();
        let p = BiPoly::parse_st_uv("s*u + t", &f).unwrap();
        assert_eq!(p.bidegree(), None);
    }

    #[test]
    fn gcd_of_forms() {
        let f = f();
        let uv = |s: &str, d| UniHomPoly::from_bipoly(&BiPoly::parse_st_uv(s, &f).unwrap(), d).unwrap();
        let a = uv("u^2*v - v^3", 3);
        let b = uv("u*v^2 + v^3", 3);
        // common factor v*(u+v)
        assert_eq!(UniHomPoly::gcd_degree(&[a.clone(), b.clone()], &f), Some(2));
        let g = UniHomPoly::gcd(&[a.clone(), b], &f).unwrap();
        assert!(a.exact_div(&g, &f).is_some());
        assert_eq!(UniHomPoly::gcd_degree(&[uv("u^3", 3), uv("v^2", 2)], &f), Some(0));
        assert_eq!(UniHomPoly::gcd_degree(&[UniHomPoly::zero(2)], &f), None);
    }

    fn arb_uni(d: usize) -> impl Strategy<Value = UniHomPoly> {
        proptest::collection::vec(0u64..1000, d + 1).prop_map(UniHomPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(cs in proptest::collection::vec(0u64..crate::field::DEFAULT_PRIME, 12)) {
            let f = f();
            let d = BiDegree::new(2, 3);
            let p = BiPoly::from_coeff_vector(&cs, d, &f);
            let q = BiPoly::parse_st_uv(&p.to_st_uv_string(&f), &f).unwrap();
            prop_assert_eq!(&p, &q);
            prop_assert_eq!(q.coeff_vector(d), cs);
        }

        #[test]
        fn mirror_is_involution(cs in proptest::collection::vec(0u64..50, 12)) {
            let f = f();
            let p = BiPoly::from_coeff_vector(&cs, BiDegree::new(3, 2), &f);
            prop_assert_eq!(p.mirror().mirror(), p.clone());
            if !p.is_zero() {
                prop_assert_eq!(p.mirror().bidegree(), Some(BiDegree::new(2, 3)));
            }
        }

        #[test]
        fn exact_division_inverts_product(a in arb_uni(3), b in arb_uni(2)) {
            let f = f();
            prop_assume!(!b.is_zero());
            let prod = a.mul(&b, &f);
            prop_assert_eq!(prod.exact_div(&b, &f), Some(a));
        }
    }
}
