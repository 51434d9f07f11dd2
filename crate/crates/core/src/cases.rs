//! Syzygies completing `[g; 0]` to a square strand, by `dim V`.
//!
//! All syzygies here are expressed on `new_gens` from the `V` analysis.

use crate::bipoly::{BiDegree, BiPoly, UniHomPoly};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hburch::{self, GradedSyzMatrix};
use crate::membership::{psi_solve, two_gen_solve, Convention};
use crate::polymat::{dot, PolyMatrix};
use crate::syzygy::{SurfaceInput, SyzygyColumn, VAnalysis};

/// A decomposition `target = c0 h0 + c1 h1` recorded for reports.
#[derive(Clone, Debug)]
pub struct CoeffPair {
    pub name: String,
    pub h: [UniHomPoly; 2],
    pub c: [BiPoly; 2],
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub dim_v: usize,
    /// Entry degrees of the columns of `psi` (empty when `dim V = 2`).
    pub mu: Vec<usize>,
    /// `S` first, then the case-specific syzygies.
    pub syzygies: Vec<SyzygyColumn>,
    pub expected_counts: Vec<usize>,
    pub alpha: Vec<BiPoly>,
    pub psi: Option<GradedSyzMatrix>,
    pub phi: Vec<GradedSyzMatrix>,
    /// `((i, j), gamma_ij)` with 1-based column indices.
    pub gamma: Vec<((usize, usize), GradedSyzMatrix)>,
    pub pairs: Vec<CoeffPair>,
    pub theta: Option<PolyMatrix>,
    pub n_vector: Option<Vec<BiPoly>>,
    pub h_poly: Option<BiPoly>,
}

/// Number of strand columns contributed by a syzygy of bidegree `d`.
pub fn strand_column_count(a: usize, b: usize, d: BiDegree) -> usize {
    let nu = BiDegree::new(2 * a - 1, b - 1);
    nu.checked_sub(d).map_or(0, |m| m.dim())
}

/// Closed-form column counts per case.
pub fn expected_column_counts(a: usize, b: usize, n: usize, dim_v: usize, mu: &[usize]) -> Vec<usize> {
    let s = 2 * a * (b - n);
    match dim_v {
        2 => vec![s, a * n, a * n],
        3 => vec![s, a * n, a * (n - mu[0]), a * mu[0]],
        4 => vec![s, a * (n - mu[0]), a * (n - mu[1]), a * (mu[0] + mu[1])],
        _ => Vec::new(),
    }
}

fn check_hypothesis(input: &SurfaceInput, n: usize) -> Result<()> {
    if input.b + 1 < 2 * n {
        return Err(Error::Hypothesis(format!("b = {} is below 2n - 1 = {}", input.b, 2 * n - 1)));
    }
    Ok(())
}

/// Bidegree shared by all nonzero entries; checked against `expect`.
fn syzygy(entries: Vec<BiPoly>, expect: BiDegree, label: &str) -> Result<SyzygyColumn> {
    if entries.iter().all(|e| e.is_zero()) {
        return Err(Error::Certificate(format!("{label} is zero")));
    }
    if !entries.iter().all(|e| e.is_bihomogeneous_of(expect)) {
        return Err(Error::Certificate(format!("{label} is not of bidegree {expect}")));
    }
    Ok(SyzygyColumn::new(entries, expect))
}

fn uni(p: &BiPoly, d: usize) -> Result<UniHomPoly> {
    UniHomPoly::from_bipoly(p, d)
}

/// Dispatches on `dim V`.
pub fn run_case(input: &SurfaceInput, va: &VAnalysis, conv: Convention) -> Result<CaseResult> {
    let res = match va.dim_v {
        2 => run_dim2(input, va, conv),
        3 => run_dim3(input, va, conv),
        4 => run_dim4(input, va, conv),
        d => Err(Error::Hypothesis(format!("unsupported dim V = {d}"))),
    }?;
    if cfg!(debug_assertions) {
        res.verify(input, va)?;
    }
    Ok(res)
}

pub fn run_dim2(input: &SurfaceInput, va: &VAnalysis, conv: Convention) -> Result<CaseResult> {
    let f = &input.field;
    let (a, b, n) = (input.a, input.b, va.n);
    check_hypothesis(input, n)?;
    let (g0, g1) = (&va.g[0], &va.g[1]);
    let gens = &va.new_gens;
    let alpha = gens[0]
        .exact_div_uni(g1, f)
        .ok_or_else(|| Error::Certificate("g1 does not divide f'0".into()))?;
    if gens[1] != alpha.mul_uni(g0, f).neg(f) {
        return Err(Error::Certificate("f'1 != -alpha g0".into()));
    }
    let h = [g1.clone(), g0.neg(f)];
    let full = BiDegree::new(a, b);
    let q = two_gen_solve(&gens[2], full, &h[0], &h[1], conv, f)?;
    let r = two_gen_solve(&gens[3], full, &h[0], &h[1], conv, f)?;
    let d1 = BiDegree::new(a, b - n);
    let z = BiPoly::zero();
    let syzygies = vec![
        va.g_syzygy(f),
        syzygy(vec![q.q0.clone(), q.q1.clone(), alpha.neg(f), z.clone()], d1, "S1")?,
        syzygy(vec![r.q0.clone(), r.q1.clone(), z, alpha.neg(f)], d1, "S2")?,
    ];
    Ok(CaseResult {
        dim_v: 2,
        mu: Vec::new(),
        syzygies,
        expected_counts: expected_column_counts(a, b, n, 2, &[]),
        alpha: vec![alpha],
        psi: None,
        phi: Vec::new(),
        gamma: Vec::new(),
        pairs: vec![
            CoeffPair { name: "q".into(), h: h.clone(), c: [q.q0, q.q1] },
            CoeffPair { name: "r".into(), h, c: [r.q0, r.q1] },
        ],
        theta: None,
        n_vector: None,
        h_poly: None,
    })
}

pub fn run_dim3(input: &SurfaceInput, va: &VAnalysis, conv: Convention) -> Result<CaseResult> {
    let f = &input.field;
    let (a, b, n) = (input.a, input.b, va.n);
    check_hypothesis(input, n)?;
    let psi = hburch::hilbert_burch_psi(&va.g, f)?;
    let mu = psi.column_entry_degree(0);
    let full = BiDegree::new(a, b);
    let alpha = psi_solve(&va.fprime, &psi, full, f)?;
    let phi = hburch::column_resolutions(&psi, f)?;
    let hq = hburch::column_times_phi(&psi, &phi, 1, 0, f);
    let hr = hburch::column_times_phi(&psi, &phi, 0, 1, f);
    let d_a1 = BiDegree::new(a, b - mu);
    let d_a2 = BiDegree::new(a, b - (n - mu));
    let q = two_gen_solve(&alpha[0], d_a1, &hq[0], &hq[1], conv, f)?;
    let r = two_gen_solve(&alpha[1], d_a2, &hr[0], &hr[1], conv, f)?;
    let p3 = &va.new_gens[3];
    let m = two_gen_solve(p3, full, &hq[0], &hq[1], conv, f)?;
    let nn = two_gen_solve(p3, full, &hr[0], &hr[1], conv, f)?;

    let phi1 = phi[0].to_polymatrix(f);
    let phi2 = phi[1].to_polymatrix(f);
    let phi1q = phi1.mul_vec(&[q.q0.clone(), q.q1.clone()], f);
    let phi2r = phi2.mul_vec(&[r.q0.clone(), r.q1.clone()], f);
    let top: Vec<BiPoly> = phi1q.iter().zip(&phi2r).map(|(x, y)| x.sub(y, f)).collect();
    let g: Vec<BiPoly> = va.g.iter().map(|x| x.to_bipoly(f)).collect();
    let theta = PolyMatrix::from_cols(&[top.clone(), g]);

    let mut s1 = top;
    s1.push(BiPoly::zero());
    let mut s2 = phi1.mul_vec(&[m.q0.clone(), m.q1.clone()], f);
    s2.push(alpha[1].neg(f));
    let mut s3 = phi2.mul_vec(&[nn.q0.clone(), nn.q1.clone()], f);
    s3.push(alpha[0].neg(f));
    let syzygies = vec![
        va.g_syzygy(f),
        syzygy(s1, BiDegree::new(a, b - n), "S1")?,
        syzygy(s2, d_a2, "S2")?,
        syzygy(s3, d_a1, "S3")?,
    ];
    let cross = |x: &crate::membership::TwoGenCertificate, y: &crate::membership::TwoGenCertificate| {
        x.q0.mul(&y.q1, f).sub(&x.q1.mul(&y.q0, f), f)
    };
    let n0 = cross(&q, &m).add(&cross(&r, &nn), f);
    let n_vector = vec![n0, p3.clone(), alpha[0].neg(f), alpha[1].clone()];

    Ok(CaseResult {
        dim_v: 3,
        mu: vec![mu],
        syzygies,
        expected_counts: expected_column_counts(a, b, n, 3, &[mu]),
        alpha,
        psi: Some(psi),
        phi,
        gamma: Vec::new(),
        pairs: vec![
            CoeffPair { name: "q".into(), h: [hq[0].clone(), hq[1].clone()], c: [q.q0, q.q1] },
            CoeffPair { name: "r".into(), h: [hr[0].clone(), hr[1].clone()], c: [r.q0, r.q1] },
            CoeffPair { name: "m".into(), h: [hq[0].clone(), hq[1].clone()], c: [m.q0, m.q1] },
            CoeffPair { name: "n".into(), h: [hr[0].clone(), hr[1].clone()], c: [nn.q0, nn.q1] },
        ],
        theta: Some(theta),
        n_vector: Some(n_vector),
        h_poly: None,
    })
}

/// `C_row^T phi_j gamma` as two forms. `gamma` resolves `C_i^T phi_j`.
fn h_vector(
    psi: &GradedSyzMatrix,
    phi: &[GradedSyzMatrix],
    gamma: &GradedSyzMatrix,
    row: usize,
    i: usize,
    j: usize,
    f: &PrimeField,
) -> Result<[UniHomPoly; 2]> {
    let c_phi: Vec<BiPoly> =
        hburch::column_times_phi(psi, phi, row, j, f).iter().map(|x| x.to_bipoly(f)).collect();
    let shift = psi.column_entry_degree(row) as isize - psi.column_entry_degree(i) as isize;
    let g = gamma.to_polymatrix(f);
    let mut out = Vec::with_capacity(2);
    for c in 0..2 {
        let d = gamma.col_degrees[c] as isize + shift;
        let p = dot(&c_phi, &g.col(c), f);
        if d < 0 {
            return Err(Error::Certificate("h-vector entry of negative degree".into()));
        }
        out.push(uni(&p, d as usize)?);
    }
    Ok([out[0].clone(), out[1].clone()])
}

pub fn run_dim4(input: &SurfaceInput, va: &VAnalysis, conv: Convention) -> Result<CaseResult> {
    let f = &input.field;
    let (a, b, n) = (input.a, input.b, va.n);
    check_hypothesis(input, n)?;
    let psi = hburch::hilbert_burch_psi(&va.g, f)?;
    let mu: Vec<usize> = (0..3).map(|j| psi.column_entry_degree(j)).collect();
    let full = BiDegree::new(a, b);
    let alpha = psi_solve(&va.fprime, &psi, full, f)?;
    let phi = hburch::column_resolutions(&psi, f)?;
    let g12 = hburch::gamma(&psi, &phi, 0, 1, f)?;
    let g13 = hburch::gamma(&psi, &phi, 0, 2, f)?;
    let g23 = hburch::gamma(&psi, &phi, 1, 2, f)?;

    let h_a = h_vector(&psi, &phi, &g13, 1, 0, 2, f)?;
    let h_b = h_vector(&psi, &phi, &g12, 2, 0, 1, f)?;
    let h_c = h_vector(&psi, &phi, &g23, 0, 1, 2, f)?;
    let da: Vec<BiDegree> = mu.iter().map(|&m| BiDegree::new(a, b - m)).collect();
    let solve = |t: usize, h: &[UniHomPoly; 2]| two_gen_solve(&alpha[t], da[t], &h[0], &h[1], conv, f);
    let a2 = solve(0, &h_a)?;
    let c2 = solve(2, &h_a)?;
    let a3 = solve(0, &h_b)?;
    let b3 = solve(1, &h_b)?;
    let b1 = solve(1, &h_c)?;
    let c1 = solve(2, &h_c)?;

    let pg12 = phi[1].to_polymatrix(f).mul(&g12.to_polymatrix(f), f);
    let pg13 = phi[2].to_polymatrix(f).mul(&g13.to_polymatrix(f), f);
    let pg23 = phi[2].to_polymatrix(f).mul(&g23.to_polymatrix(f), f);
    let app = |m: &PolyMatrix, c: &crate::membership::TwoGenCertificate| m.mul_vec(&[c.q0.clone(), c.q1.clone()], f);
    let diff = |x: Vec<BiPoly>, y: Vec<BiPoly>| -> Vec<BiPoly> { x.iter().zip(&y).map(|(p, q)| p.sub(q, f)).collect() };
    let s1 = diff(app(&pg12, &b3), app(&pg13, &c2));
    let s2 = diff(app(&pg23, &c1), app(&pg12, &a3));
    let s3 = diff(app(&pg13, &a2), app(&pg23, &b1));
    let syzygies = vec![
        va.g_syzygy(f),
        syzygy(s1, BiDegree::new(a, b - n + mu[0]), "S1")?,
        syzygy(s2, BiDegree::new(a, b - n + mu[1]), "S2")?,
        syzygy(s3, BiDegree::new(a, b - mu[0] - mu[1]), "S3")?,
    ];
    let cross = |x: &crate::membership::TwoGenCertificate, y: &crate::membership::TwoGenCertificate| {
        x.q0.mul(&y.q1, f).sub(&x.q1.mul(&y.q0, f), f)
    };
    // Signs fixed by the identity alpha_1 S_1 + alpha_2 S_2 + alpha_3 S_3 + H S = 0.
    let h_poly = cross(&a2, &c2).add(&cross(&b1, &c1), f).add(&cross(&a3, &b3), f).neg(f);

    let pair = |name: &str, h: &[UniHomPoly; 2], c: crate::membership::TwoGenCertificate| CoeffPair {
        name: name.into(),
        h: h.clone(),
        c: [c.q0, c.q1],
    };
    Ok(CaseResult {
        dim_v: 4,
        mu: mu[..2].to_vec(),
        syzygies,
        expected_counts: expected_column_counts(a, b, n, 4, &mu),
        alpha,
        psi: Some(psi),
        phi,
        gamma: vec![((1, 2), g12), ((1, 3), g13), ((2, 3), g23)],
        pairs: vec![
            pair("a2", &h_a, a2),
            pair("c2", &h_a, c2),
            pair("a3", &h_b, a3),
            pair("b3", &h_b, b3),
            pair("b1", &h_c, b1),
            pair("c1", &h_c, c1),
        ],
        theta: None,
        n_vector: None,
        h_poly: Some(h_poly),
    })
}

impl CaseResult {
    /// Exact verification of every identity the construction relies on.
    pub fn verify(&self, input: &SurfaceInput, va: &VAnalysis) -> Result<()> {
        let f = &input.field;
        let fail = |m: String| Err(Error::Certificate(m));
        for (k, s) in self.syzygies.iter().enumerate() {
            if !s.annihilates(&va.new_gens, f) {
                return fail(format!("syzygy {k} does not annihilate the generators"));
            }
        }
        let counts: Vec<usize> =
            self.syzygies.iter().map(|s| strand_column_count(input.a, input.b, s.bidegree)).collect();
        if counts != self.expected_counts {
            return fail(format!("column counts {counts:?} differ from {:?}", self.expected_counts));
        }
        if counts.iter().sum::<usize>() != 2 * input.a * input.b {
            return fail("column counts do not sum to 2ab".into());
        }
        for m in self.psi.iter().chain(&self.phi).chain(self.gamma.iter().map(|(_, g)| g)) {
            m.check_syzygies(f)?;
            m.check_minors(f)?;
        }
        if let Some(theta) = &self.theta {
            if theta.signed_maximal_minors(f) != va.fprime {
                return fail("signed minors of Theta differ from f'".into());
            }
        }
        if let Some(nv) = &self.n_vector {
            if !self.combination_vanishes(nv, f) {
                return fail("M N != 0".into());
            }
        }
        if let Some(h) = &self.h_poly {
            let mut coeffs = self.alpha.clone();
            coeffs.insert(0, h.clone());
            if !self.combination_vanishes(&coeffs, f) {
                return fail("alpha_1 S_1 + alpha_2 S_2 + alpha_3 S_3 + H S != 0".into());
            }
        }
        Ok(())
    }

    /// `sum_k c_k S_k == 0`.
    fn combination_vanishes(&self, c: &[BiPoly], f: &PrimeField) -> bool {
        (0..4).all(|i| {
            let col: Vec<BiPoly> = self.syzygies.iter().map(|s| s.entries[i].clone()).collect();
            dot(&col, c, f).is_zero()
        })
    }
}
