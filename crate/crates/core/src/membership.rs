//! Membership in ideals generated by binary forms, with explicit coefficients.
//!
//! For coprime forms `h0, h1` of degrees `m, n`, every form of degree at least
//! `m + n - 1` lies in `(h0, h1)`. The coefficients are found one `s, t`
//! monomial at a time by solving a linear system; the solution is not unique
//! and the free variables follow a [`Convention`].

use crate::bipoly::{BiDegree, BiPoly, UniHomPoly};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hburch::GradedSyzMatrix;
use crate::linalg::FieldMatrix;
use crate::poly4::Mono;
use serde::{Deserialize, Serialize};

/// Value given to free variables when a linear system has many solutions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    FreeZero,
    FreeOne,
}

impl Convention {
    fn value(self) -> u64 {
        match self {
            Convention::FreeZero => 0,
            Convention::FreeOne => 1,
        }
    }
}

/// The square matrix of `(q0, q1) -> q0 h0 + q1 h1` with `deg q0 = n - 1`,
/// `deg q1 = m - 1`, onto forms of degree `m + n - 1`.
pub fn sylvester(h0: &UniHomPoly, h1: &UniHomPoly, f: &PrimeField) -> FieldMatrix {
    let (m, n) = (h0.degree, h1.degree);
    assert!(m + n >= 1);
    let target = m + n - 1;
    let mut cols = Vec::with_capacity(m + n);
    for (h, qd) in [(h0, n.checked_sub(1)), (h1, m.checked_sub(1))] {
        if let Some(qd) = qd {
            for t in 0..=qd {
                cols.push(UniHomPoly::monomial(qd, t, 1).mul(h, f).coeffs);
            }
        }
    }
    FieldMatrix::from_cols(&cols, target + 1)
}

/// Coefficients `(q0, q1)` with `target = q0 h0 + q1 h1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGenCertificate {
    pub q0: BiPoly,
    pub q1: BiPoly,
    pub bidegree0: Option<BiDegree>,
    pub bidegree1: Option<BiDegree>,
}

/// Solves `target = q0 h0 + q1 h1` for a target of bidegree `(a, d)`.
pub fn two_gen_solve(
    target: &BiPoly,
    deg: BiDegree,
    h0: &UniHomPoly,
    h1: &UniHomPoly,
    conv: Convention,
    f: &PrimeField,
) -> Result<TwoGenCertificate> {
    if !target.is_bihomogeneous_of(deg) {
        return Err(Error::NotBihomogeneous(format!("target is not of bidegree {deg}")));
    }
    if UniHomPoly::gcd_degree(&[h0.clone(), h1.clone()], f) != Some(0) {
        return Err(Error::Hypothesis("h0 and h1 are not coprime".into()));
    }
    if deg.uv + 1 < h0.degree + h1.degree {
        return Err(Error::Hypothesis(format!(
            "degree {} is below the threshold {} for (h0, h1)",
            deg.uv,
            h0.degree + h1.degree - 1
        )));
    }
    let udeg = [deg.uv.checked_sub(h0.degree), deg.uv.checked_sub(h1.degree)];
    let sol = solve_graded(std::slice::from_ref(target), &[vec![h0.clone(), h1.clone()]], deg, &udeg, conv, f)?
        .ok_or_else(|| Error::Certificate("target not in (h0, h1)".into()))?;
    let cert = TwoGenCertificate {
        q0: sol[0].clone(),
        q1: sol[1].clone(),
        bidegree0: udeg[0].map(|d| BiDegree::new(deg.st, d)),
        bidegree1: udeg[1].map(|d| BiDegree::new(deg.st, d)),
    };
    let recon = cert.q0.mul_uni(h0, f).add(&cert.q1.mul_uni(h1, f), f);
    if recon != *target {
        return Err(Error::Certificate("two-generator decomposition does not reproduce target".into()));
    }
    Ok(cert)
}

/// Unique `alpha` with `fprime = psi * alpha`; `fprime` has bidegree `(a, b)`.
pub fn psi_solve(fprime: &[BiPoly], psi: &GradedSyzMatrix, deg: BiDegree, f: &PrimeField) -> Result<Vec<BiPoly>> {
    let k = psi.ncols();
    let udeg: Vec<Option<usize>> = (0..k).map(|j| deg.uv.checked_sub(psi.column_entry_degree(j))).collect();
    let h: Vec<Vec<UniHomPoly>> = (0..psi.nrows())
        .map(|i| {
            (0..k)
                .map(|j| {
                    let e = &psi.entries[i][j];
                    if e.is_zero() {
                        UniHomPoly::zero(psi.column_entry_degree(j))
                    } else {
                        e.clone()
                    }
                })
                .collect()
        })
        .collect();
    let alpha = solve_graded(fprime, &h, deg, &udeg, Convention::FreeZero, f)?
        .ok_or_else(|| Error::Certificate("f' is not in the image of psi".into()))?;
    let pm = psi.to_polymatrix(f);
    if pm.mul_vec(&alpha, f) != fprime {
        return Err(Error::Certificate("psi * alpha != f'".into()));
    }
    Ok(alpha)
}

/// Solves `targets[i] = sum_j h[i][j] x_j` where `x_j` has bidegree
/// `(deg.st, udeg[j])` (absent means `x_j = 0`). Fails with a certificate
/// error when the solution is required unique but is not.
fn solve_graded(
    targets: &[BiPoly],
    h: &[Vec<UniHomPoly>],
    deg: BiDegree,
    udeg: &[Option<usize>],
    conv: Convention,
    f: &PrimeField,
) -> Result<Option<Vec<BiPoly>>> {
    let nrows = targets.len();
    let mut cols: Vec<Vec<u64>> = Vec::new();
    for (j, ud) in udeg.iter().enumerate() {
        if let Some(ud) = ud {
            for t in 0..=*ud {
                let m = UniHomPoly::monomial(*ud, t, 1);
                let mut col = Vec::with_capacity(nrows * (deg.uv + 1));
                for row in h.iter() {
                    col.extend(m.mul(&row[j], f).coeffs);
                }
                cols.push(col);
            }
        }
    }
    let mut out: Vec<BiPoly> = vec![BiPoly::zero(); udeg.len()];
    if cols.is_empty() {
        return Ok(targets.iter().all(|t| t.is_zero()).then_some(out));
    }
    let sys = FieldMatrix::from_cols(&cols, nrows * (deg.uv + 1));
    let slices: Vec<Vec<((u32, u32), UniHomPoly)>> = targets.iter().map(|t| t.st_slices(deg.uv)).collect();
    for i in (0..=deg.st).rev() {
        let key = (i as u32, (deg.st - i) as u32);
        let mut rhs = Vec::with_capacity(nrows * (deg.uv + 1));
        for sl in &slices {
            match sl.iter().find(|(k, _)| *k == key) {
                Some((_, p)) => rhs.extend_from_slice(&p.coeffs),
                None => rhs.extend(std::iter::repeat_n(0, deg.uv + 1)),
            }
        }
        let Some(x) = sys.solve_with_free(&rhs, conv.value(), f) else { return Ok(None) };
        let mut off = 0;
        for (j, ud) in udeg.iter().enumerate() {
            if let Some(ud) = ud {
                let piece = UniHomPoly::from_coeffs(x[off..off + ud + 1].to_vec());
                out[j] = out[j].add(&piece.to_bipoly(f).mul_term(Mono([key.0, key.1, 0, 0]), 1, f), f);
                off += ud + 1;
            }
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn uv(s: &str, d: usize) -> UniHomPoly {
        UniHomPoly::from_bipoly(&BiPoly::parse_st_uv(s, &f()).unwrap(), d).unwrap()
    }

    #[test]
    fn sylvester_is_invertible_for_coprime_forms() {
        let f = f();
        let s = sylvester(&uv("u^2 + v^2", 2), &uv("u*v - 3*v^2", 2), &f);
        assert_eq!(s.rows(), 4);
        assert_ne!(s.det(&f), 0);
        let s = sylvester(&uv("u^2 - v^2", 2), &uv("u*v - v^2", 2), &f);
        assert_eq!(s.det(&f), 0);
    }

    #[test]
    fn example_h_vector_solutions() {
        // alpha_1 = t^2 u^4 + s^2 v^4 against h = (u, -v^3) and (-u^2, -v^2).
        let f = f();
        let alpha1 = BiPoly::parse_st_uv("t^2*u^4 + s^2*v^4", &f).unwrap();
        let d = BiDegree::new(2, 4);
        let c = two_gen_solve(&alpha1, d, &uv("u", 1), &uv("-v^3", 3), Convention::FreeZero, &f).unwrap();
        assert_eq!(c.q0.to_st_uv_string(&f), "t^2*u^3");
        assert_eq!(c.q1.to_st_uv_string(&f), "-s^2*v");
        let c = two_gen_solve(&alpha1, d, &uv("-u^2", 2), &uv("-v^2", 2), Convention::FreeZero, &f).unwrap();
        assert_eq!(c.q0.to_st_uv_string(&f), "-t^2*u^2");
        assert_eq!(c.q1.to_st_uv_string(&f), "-s^2*v^2");
    }

    #[test]
    fn threshold_and_coprimality_enforced() {
        let f = f();
        let tgt = BiPoly::parse_st_uv("s*u*v", &f).unwrap();
        let d = BiDegree::new(1, 2);
        assert!(matches!(
            two_gen_solve(&tgt, d, &uv("u^2", 2), &uv("v^2", 2), Convention::FreeZero, &f),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            two_gen_solve(&tgt, d, &uv("u", 1), &uv("u", 1), Convention::FreeZero, &f),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn conventions_differ_but_both_certify() {
        let f = f();
        let tgt = BiPoly::parse_st_uv("s*u^3 + t*v^3", &f).unwrap();
        let d = BiDegree::new(1, 3);
        let (h0, h1) = (uv("u", 1), uv("v", 1));
        let a = two_gen_solve(&tgt, d, &h0, &h1, Convention::FreeZero, &f).unwrap();
        let b = two_gen_solve(&tgt, d, &h0, &h1, Convention::FreeOne, &f).unwrap();
        assert_ne!(a, b);
    }
}
