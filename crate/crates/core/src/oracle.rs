//! Independent checks: the implicit equation by direct elimination, the
//! `det = c F^d` certificate, and basepoint detection.
//!
//! The elimination oracle finds the least `D` with a nonzero `F` of degree
//! `D` vanishing on the image, using the generators evaluated at random
//! parameter points. It does not use any syzygy.

use crate::bipoly::{BiDegree, BiPoly, UniHomPoly};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::FieldMatrix;
use crate::poly4::Mono;
use crate::strand::{StrandMatrix, XPoly};
use crate::syzygy::SurfaceInput;
use crate::upoly;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Monomials of total degree `e` in four variables, in descending lex order.
pub fn monomials_of_degree(e: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for i in (0..=e).rev() {
        for j in (0..=e - i).rev() {
            for k in (0..=e - i - j).rev() {
                out.push(Mono([i, j, k, e - i - j - k]));
            }
        }
    }
    out
}

fn binom3(n: usize) -> usize {
    // C(n + 3, 3)
    (n + 1) * (n + 2) * (n + 3) / 6
}

fn random_point<R: Rng>(f: &PrimeField, rng: &mut R) -> [u64; 4] {
    std::array::from_fn(|_| rng.gen_range(0..f.modulus()))
}

/// Images of random parameter points.
fn image_points<R: Rng>(input: &SurfaceInput, count: usize, rng: &mut R) -> Vec<[u64; 4]> {
    let f = &input.field;
    (0..count)
        .map(|_| {
            let p = random_point(f, rng);
            std::array::from_fn(|i| input.gens[i].eval(&p, f))
        })
        .collect()
}

/// Kernel of the evaluation matrix of degree-`e` monomials at image points.
fn kernel_at<R: Rng>(input: &SurfaceInput, e: u32, rng: &mut R) -> (Vec<Mono>, Vec<Vec<u64>>) {
    let f = &input.field;
    let monos = monomials_of_degree(e);
    let pts = image_points(input, monos.len() + 8, rng);
    let mut m = FieldMatrix::zeros(pts.len(), monos.len());
    let e = e as usize;
    for (r, x) in pts.iter().enumerate() {
        let pw: Vec<Vec<u64>> = x
            .iter()
            .map(|&xi| {
                let mut v = vec![1u64; e + 1];
                for k in 1..=e {
                    v[k] = f.mul(v[k - 1], xi);
                }
                v
            })
            .collect();
        for (c, mo) in monos.iter().enumerate() {
            let [a, b, cc, d] = mo.0.map(|t| t as usize);
            m.set(r, c, f.mul(f.mul(pw[0][a], pw[1][b]), f.mul(pw[2][cc], pw[3][d])));
        }
    }
    (monos, m.kernel_basis(f))
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Monic implicit equation.
    pub f_poly: XPoly,
    pub degree: usize,
}

/// Least-degree implicit equation, searched up to `cap` (normally `2ab`).
///
/// The kernel dimension at `cap` is `C(cap - D + 3, 3)` when the image is a
/// surface of degree `D`, which gives `D` directly; otherwise the degrees are
/// scanned upward.
pub fn implicit_by_elimination<R: Rng>(input: &SurfaceInput, cap: usize, rng: &mut R) -> Result<OracleResult> {
    let f = &input.field;
    let (monos, ker) = kernel_at(input, cap as u32, rng);
    if ker.is_empty() {
        return Err(Error::Hypothesis(format!("no implicit equation of degree <= {cap}")));
    }
    let guess = (1..=cap).find(|&d| binom3(cap - d) == ker.len());
    let found = match guess {
        Some(d) if d == cap => Some((monos, ker)),
        Some(d) => {
            let (m, k) = kernel_at(input, d as u32, rng);
            (k.len() == 1).then_some((m, k))
        }
        None => None,
    };
    let (monos, ker) = match found {
        Some(x) => x,
        None => {
            let mut hit = None;
            for e in 1..=cap {
                let (m, k) = kernel_at(input, e as u32, rng);
                if !k.is_empty() {
                    hit = Some((m, k));
                    break;
                }
            }
            hit.expect("kernel is nonempty at the cap")
        }
    };
    if ker.len() != 1 {
        return Err(Error::Hypothesis("image is not a surface".into()));
    }
    let poly = XPoly::from_terms(monos.iter().copied().zip(ker[0].iter().copied()), f).monic(f);
    let degree = poly.total_degree().expect("homogeneous kernel vector") as usize;
    for x in image_points(input, 20, rng) {
        if poly.eval(&x, f) != 0 {
            return Err(Error::Certificate("oracle equation does not vanish on the image".into()));
        }
    }
    Ok(OracleResult { f_poly: poly, degree })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub c: u64,
    pub d: usize,
    pub points_checked: usize,
}

/// Checks `det(strand(x)) = c F(x)^d` at `points` random points, with `c`
/// fitted at one further point.
pub fn verify_implicitization<R: Rng>(
    strand: &StrandMatrix,
    f_poly: &XPoly,
    points: usize,
    f: &PrimeField,
    rng: &mut R,
) -> Result<Certificate> {
    let deg_f = f_poly.total_degree().ok_or_else(|| Error::InvalidInput("F is not homogeneous".into()))? as usize;
    if deg_f == 0 || !strand.size().is_multiple_of(deg_f) {
        return Err(Error::Certificate(format!(
            "deg F = {deg_f} does not divide the strand size {}",
            strand.size()
        )));
    }
    let d = strand.size() / deg_f;
    let mut c = None;
    for _ in 0..64 {
        let x = random_point(f, rng);
        let fx = f_poly.eval(&x, f);
        if fx != 0 {
            c = Some(f.div(strand.eval_det(&x, f), f.pow(fx, d as u64)));
            break;
        }
    }
    let c = c.ok_or_else(|| Error::Certificate("F vanishes at every sampled point".into()))?;
    if c == 0 {
        return Err(Error::Certificate("strand determinant vanishes".into()));
    }
    for k in 0..points {
        let x = random_point(f, rng);
        let lhs = strand.eval_det(&x, f);
        let rhs = f.mul(c, f.pow(f_poly.eval(&x, f), d as u64));
        if lhs != rhs {
            return Err(Error::Certificate(format!("det != c F^{d} at check point {k}")));
        }
    }
    Ok(Certificate { c, d, points_checked: points })
}

/// `det = c F^d` as polynomials: divide by `F` `d` times and require a
/// constant quotient.
pub fn exact_power_check(det: &XPoly, f_poly: &XPoly, f: &PrimeField) -> Result<(u64, usize)> {
    let mut q = det.clone();
    let mut d = 0;
    while q.total_degree().is_some_and(|t| t > 0) {
        let (nq, r) = q.div_rem(f_poly, f);
        if !r.is_zero() {
            return Err(Error::Certificate(format!("F^{} does not divide det", d + 1)));
        }
        q = nq;
        d += 1;
    }
    match q.leading() {
        Some((m, c)) if m.total_degree() == 0 => Ok((c, d)),
        _ => Err(Error::Certificate("det is zero".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BasepointStatus {
    Free,
    /// A point of `P^1` in the named pair of variables over which the four
    /// forms share a common factor in the other pair.
    Found { chart: String, point: [u64; 2], common_factor: String },
    /// `G` has no root in the base field yet is not constant.
    Undetermined { g: String },
}

/// Pairwise resultants in `(u, v)`, gcd in `(s, t)`, and the mirrored pass.
pub fn basepoint_check<R: Rng>(input: &SurfaceInput, rng: &mut R) -> Result<BasepointStatus> {
    let f = &input.field;
    let first = resultant_gcd(input, f);
    let mirrored = input.mirror();
    let second = resultant_gcd(&mirrored, f);
    if first.as_ref().is_some_and(|g| g.degree == 0) || second.as_ref().is_some_and(|g| g.degree == 0) {
        return Ok(BasepointStatus::Free);
    }
    let mut report = None;
    for (inp, g, chart) in [(input, &first, "s,t"), (&mirrored, &second, "u,v")] {
        let Some(g) = g else { continue };
        for pt in projective_roots(g, f, rng) {
            let spec: Vec<UniHomPoly> = inp
                .gens
                .iter()
                .map(|p| specialize_st(p, pt, inp.bidegree(), f))
                .collect();
            let common = UniHomPoly::gcd(&spec, f);
            let nontrivial = common.as_ref().is_none_or(|c| c.degree > 0);
            if nontrivial {
                let factor = common.map_or("0".to_string(), |c| {
                    let p = c.to_bipoly(f);
                    if chart == "s,t" { p.to_st_uv_string(f) } else { p.mirror().to_st_uv_string(f) }
                });
                return Ok(BasepointStatus::Found { chart: chart.to_string(), point: pt, common_factor: factor });
            }
        }
        if report.is_none() {
            // `g` sits in the u, v slots; for the first pass it is a form in s, t.
            let p = g.to_bipoly(f);
            report = Some(if chart == "s,t" { p.mirror() } else { p }.to_st_uv_string(f));
        }
    }
    Ok(BasepointStatus::Undetermined { g: report.unwrap_or_else(|| "0".to_string()) })
}

/// `p(s0, t0, u, v)` as a binary form of degree `b`.
fn specialize_st(p: &BiPoly, pt: [u64; 2], d: BiDegree, f: &PrimeField) -> UniHomPoly {
    let mut out = UniHomPoly::zero(d.uv);
    for (m, c) in p.terms() {
        let w = f.mul(c, f.mul(f.pow(pt[0], m.0[0] as u64), f.pow(pt[1], m.0[1] as u64)));
        out.coeffs[m.0[3] as usize] = f.add(out.coeffs[m.0[3] as usize], w);
    }
    out
}

/// Gcd over all pairs of `Res_{u,v}(p_i, p_j)`, as a binary form in `s, t`
/// stored with `s` in the `u` slot. `None` when every resultant vanishes.
fn resultant_gcd(input: &SurfaceInput, f: &PrimeField) -> Option<UniHomPoly> {
    let d = input.bidegree();
    let rdeg = 2 * d.st * d.uv;
    let xs: Vec<u64> = (0..=rdeg as u64).collect();
    let mut forms = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let ys: Vec<u64> = xs
                .iter()
                .map(|&x| {
                    let a = specialize_st(&input.gens[i], [x, 1], d, f);
                    let b = specialize_st(&input.gens[j], [x, 1], d, f);
                    homogeneous_resultant(&a, &b, f)
                })
                .collect();
            // R(x, 1) = sum c_k x^k; as a form sum c_k s^k t^(rdeg-k).
            let c = upoly::interpolate(&xs, &ys, f);
            let mut form = UniHomPoly::zero(rdeg);
            for (k, &ck) in c.iter().enumerate() {
                form.coeffs[rdeg - k] = ck;
            }
            forms.push(form);
        }
    }
    UniHomPoly::gcd(&forms, f)
}

/// Sylvester resultant of two binary forms with their declared degrees.
pub fn homogeneous_resultant(a: &UniHomPoly, b: &UniHomPoly, f: &PrimeField) -> u64 {
    let (m, n) = (a.degree, b.degree);
    let size = m + n;
    if size == 0 {
        return 1;
    }
    let mut s = FieldMatrix::zeros(size, size);
    for r in 0..n {
        for (k, &c) in a.coeffs.iter().enumerate() {
            s.set(r, r + k, c);
        }
    }
    for r in 0..m {
        for (k, &c) in b.coeffs.iter().enumerate() {
            s.set(n + r, r + k, c);
        }
    }
    s.det(f)
}

/// Roots in `P^1(F_p)` of a binary form (first slot, second slot).
fn projective_roots<R: Rng>(g: &UniHomPoly, f: &PrimeField, rng: &mut R) -> Vec<[u64; 2]> {
    // coeffs[k] multiplies x^(d-k) y^k; roots (x : 1) come from sum coeffs[k] x^(d-k).
    let dehom: Vec<u64> = g.coeffs.iter().rev().copied().collect();
    let mut out: Vec<[u64; 2]> = upoly::roots(&dehom, f, rng).into_iter().map(|r| [r, 1]).collect();
    if g.coeffs[0] == 0 {
        out.push([1, 0]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn segre_oracle() {
        let f = PrimeField::default();
        let input = SurfaceInput::parse(f, 1, 1, &["s*u", "s*v", "t*u", "t*v"]).unwrap();
        let o = implicit_by_elimination(&input, 2, &mut rng()).unwrap();
        assert_eq!(o.degree, 2);
        assert_eq!(o.f_poly.display(&f, &crate::strand::X_VARS), "x0*x3 - x1*x2");
        assert_eq!(basepoint_check(&input, &mut rng()).unwrap(), BasepointStatus::Free);
    }

    #[test]
    fn basepoint_found_for_common_linear_factor() {
        let f = PrimeField::default();
        // Every generator vanishes along u = 0.
        let input = SurfaceInput::parse(f, 1, 2, &["s*u^2", "s*u*v", "t*u^2", "t*u*v + s*u^2"]).unwrap();
        match basepoint_check(&input, &mut rng()).unwrap() {
            BasepointStatus::Found { chart, point, .. } => {
                assert_eq!(chart, "u,v");
                assert_eq!(point, [0, 1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extension_field_basepoints_are_undetermined() {
        let f = PrimeField::default();
        // s^2 + t^2 is irreducible over F_p for p = 3 mod 4.
        let gens = ["(s^2 + t^2)*s*u", "(s^2 + t^2)*s*v", "(s^2 + t^2)*t*u", "(s^2 + t^2)*t*v"];
        let input = SurfaceInput::parse(f, 3, 1, &gens).unwrap();
        assert!(matches!(basepoint_check(&input, &mut rng()).unwrap(), BasepointStatus::Undetermined { .. }));
    }

    #[test]
    fn exact_power() {
        let f = PrimeField::default();
        let fx = XPoly::parse("x0*x3 - x1*x2", &f, &crate::strand::X_VARS).unwrap();
        let det = fx.mul(&fx, &f).scale(5, &f);
        assert_eq!(exact_power_check(&det, &fx, &f).unwrap(), (5, 2));
        let bad = det.add(&XPoly::monomial(1, [4, 0, 0, 0], &f), &f);
        assert!(exact_power_check(&bad, &fx, &f).is_err());
    }
}
