//! Dense univariate polynomials over F_p, coefficients low to high.
//! Support code for binary-form gcds, interpolation and root finding.

use crate::field::PrimeField;
use rand::Rng;

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(a: &[u64], b: &[u64], f: &PrimeField) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = f.mul_add(r[i + j], x, y);
        }
    }
    trim(r)
}

pub fn sub(a: &[u64], b: &[u64], f: &PrimeField) -> Vec<u64> {
    let n = a.len().max(b.len());
    let r = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(r)
}

/// Quotient and remainder. Panics if `b` is zero.
pub fn divrem(a: &[u64], b: &[u64], f: &PrimeField) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], inv);
        q[dr - db] = c;
        for i in 0..=db {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, b[i]));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(a: &[u64], f: &PrimeField) -> Vec<u64> {
    match degree(a) {
        Some(d) => {
            let inv = f.inv(a[d]);
            a[..=d].iter().map(|&c| f.mul(c, inv)).collect()
        }
        None => Vec::new(),
    }
}

/// Monic gcd; zero if both inputs are zero.
pub fn gcd(a: &[u64], b: &[u64], f: &PrimeField) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, f);
        x = y;
        y = r;
    }
    monic(&x, f)
}

pub fn eval(a: &[u64], x: u64, f: &PrimeField) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.mul_add(c, acc, x))
}

/// `base^e mod m`.
pub fn powmod(base: &[u64], mut e: u64, m: &[u64], f: &PrimeField) -> Vec<u64> {
    let mut result = divrem(&[1], m, f).1;
    let mut b = divrem(base, m, f).1;
    while e > 0 {
        if e & 1 == 1 {
            result = divrem(&mul(&result, &b, f), m, f).1;
        }
        b = divrem(&mul(&b, &b, f), m, f).1;
        e >>= 1;
    }
    result
}

/// Distinct roots in F_p, sorted ascending.
pub fn roots<R: Rng>(a: &[u64], f: &PrimeField, rng: &mut R) -> Vec<u64> {
    let a = monic(a, f);
    let Some(d) = degree(&a) else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    // Product of the distinct linear factors: gcd(a, x^p - x).
    let xp = powmod(&[0, 1], f.modulus(), &a, f);
    let h = gcd(&a, &sub(&xp, &[0, 1], f), f);
    let mut out = Vec::new();
    split_roots(h, f, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_roots<R: Rng>(h: Vec<u64>, f: &PrimeField, rng: &mut R, out: &mut Vec<u64>) {
    match degree(&h) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.mul(h[0], f.inv(h[1])))),
        Some(dh) => loop {
            let delta = rng.gen_range(0..f.modulus());
            let w = powmod(&[delta, 1], (f.modulus() - 1) / 2, &h, f);
            let g = gcd(&h, &sub(&w, &[1], f), f);
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 && dg < dh {
                let (q, _) = divrem(&h, &g, f);
                split_roots(g, f, rng, out);
                split_roots(monic(&q, f), f, rng, out);
                return;
            }
        },
    }
}

/// Coefficients of the unique polynomial of degree `< xs.len()` through the
/// points, by Newton divided differences.
pub fn interpolate(xs: &[u64], ys: &[u64], f: &PrimeField) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(dd[i], dd[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            dd[i] = f.div(num, den);
        }
    }
    let mut poly: Vec<u64> = vec![0; n];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + dd[k]
        let mut next = vec![0; n];
        for i in 0..n {
            if poly[i] == 0 {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = f.add(next[i + 1], poly[i]);
            }
            next[i] = f.sub(next[i], f.mul(poly[i], xs[k]));
        }
        next[0] = f.add(next[0], dd[k]);
        poly = next;
    }
    trim(poly)
}
