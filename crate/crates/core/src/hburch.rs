//! Graded syzygy matrices of binary forms and their Hilbert-Burch normalization.
//!
//! For forms `h_1..h_k` in `u, v` with no common factor, the module of
//! syzygies is free of rank `k - 1`. Generators are found degree by degree
//! from canonical kernel bases, keeping a kernel vector only when it is not
//! already generated in that degree. After normalization the signed maximal
//! minors of the `k x (k-1)` matrix equal the input forms exactly.
//!
//! Zero entries are allowed in the input list. They carry a declared degree
//! and give unit columns.

use crate::bipoly::{BiPoly, UniHomPoly};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::FieldMatrix;
use crate::polymat::PolyMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSyzMatrix {
    /// The forms being resolved, with their declared degrees.
    pub gens: Vec<UniHomPoly>,
    pub row_degrees: Vec<usize>,
    pub col_degrees: Vec<usize>,
    /// `entries[i][j]` has degree `col_degrees[j] - row_degrees[i]`; when that
    /// is negative the entry is the zero form of degree 0.
    pub entries: Vec<Vec<UniHomPoly>>,
}

impl GradedSyzMatrix {
    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_degrees.len()
    }

    /// Degree of the entries in column `j` when all row degrees agree.
    pub fn column_entry_degree(&self, j: usize) -> usize {
        self.col_degrees[j] - self.row_degrees[0]
    }

    pub fn to_polymatrix(&self, f: &PrimeField) -> PolyMatrix {
        let cols: Vec<Vec<BiPoly>> = (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| self.entries[i][j].to_bipoly(f)).collect())
            .collect();
        PolyMatrix::from_cols(&cols)
    }

    pub fn column(&self, j: usize, f: &PrimeField) -> Vec<BiPoly> {
        (0..self.nrows()).map(|i| self.entries[i][j].to_bipoly(f)).collect()
    }

    /// A constant nonzero entry.
    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().flatten().any(|e| e.degree == 0 && !e.is_zero())
    }

    pub fn display(&self, f: &PrimeField) -> Vec<Vec<String>> {
        self.to_polymatrix(f).display(f)
    }

    /// Every column annihilates the generators and the degree sums match.
    pub fn check_syzygies(&self, f: &PrimeField) -> Result<()> {
        let gens: Vec<BiPoly> = self.gens.iter().map(|g| g.to_bipoly(f)).collect();
        for j in 0..self.ncols() {
            if !crate::polymat::dot(&self.column(j, f), &gens, f).is_zero() {
                return Err(Error::Certificate(format!("column {j} is not a syzygy")));
            }
        }
        if self.col_degrees.iter().sum::<usize>() != self.row_degrees.iter().sum::<usize>() {
            return Err(Error::Certificate("column and row degree sums differ".into()));
        }
        Ok(())
    }

    /// Signed maximal minors equal the generators.
    pub fn check_minors(&self, f: &PrimeField) -> Result<()> {
        let minors = self.to_polymatrix(f).signed_maximal_minors(f);
        for (i, (m, g)) in minors.iter().zip(&self.gens).enumerate() {
            if *m != g.to_bipoly(f) {
                return Err(Error::Certificate(format!("signed minor {i} does not reproduce generator {i}")));
            }
        }
        Ok(())
    }
}

/// Minimal graded generators of the syzygy module of `gens`, columns in
/// ascending degree, ties in canonical kernel order.
pub fn min_graded_syzygies(gens: &[UniHomPoly], f: &PrimeField) -> Result<GradedSyzMatrix> {
    let k = gens.len();
    if k < 2 {
        return Err(Error::InvalidInput("need at least two forms".into()));
    }
    match UniHomPoly::gcd_degree(gens, f) {
        None => return Err(Error::Hypothesis("all forms are zero".into())),
        Some(0) => {}
        Some(_) => return Err(Error::Hypothesis("forms share a common factor".into())),
    }
    let rdeg: Vec<usize> = gens.iter().map(|g| g.degree).collect();
    let lo = *rdeg.iter().min().unwrap();
    let hi = rdeg.iter().sum::<usize>() + 1;
    let mut found: Vec<(usize, Vec<UniHomPoly>)> = Vec::new();

    'outer: for delta in lo..=hi {
        let blocks: Vec<Option<usize>> = rdeg.iter().map(|&r| delta.checked_sub(r)).collect();
        let nunk: usize = blocks.iter().flatten().map(|d| d + 1).sum();
        if nunk == 0 {
            continue;
        }
        let mut cols = Vec::with_capacity(nunk);
        for (g, blk) in gens.iter().zip(&blocks) {
            if let Some(d) = blk {
                for t in 0..=*d {
                    cols.push(UniHomPoly::monomial(*d, t, 1).mul(g, f).coeffs);
                }
            }
        }
        let kernel = FieldMatrix::from_cols(&cols, delta + 1).kernel_basis(f);
        if kernel.is_empty() {
            continue;
        }
        // Degree-delta part of the submodule generated so far.
        let mut span: Vec<Vec<u64>> = Vec::new();
        for (d0, syz) in &found {
            let e = delta - d0;
            for t in 0..=e {
                let m = UniHomPoly::monomial(e, t, 1);
                let mut v = Vec::with_capacity(nunk);
                for (entry, blk) in syz.iter().zip(&blocks) {
                    if let Some(d) = blk {
                        if entry.is_zero() {
                            v.extend(std::iter::repeat_n(0, d + 1));
                        } else {
                            v.extend(m.mul(entry, f).coeffs);
                        }
                    }
                }
                span.push(v);
            }
        }
        let mut rank = rank_of(&span, nunk, f);
        for kv in kernel {
            span.push(kv.clone());
            let r = rank_of(&span, nunk, f);
            if r == rank {
                span.pop();
                continue;
            }
            rank = r;
            let mut entries = Vec::with_capacity(k);
            let mut off = 0;
            for blk in &blocks {
                match blk {
                    Some(d) => {
                        entries.push(UniHomPoly::from_coeffs(kv[off..off + d + 1].to_vec()));
                        off += d + 1;
                    }
                    None => entries.push(UniHomPoly::zero(0)),
                }
            }
            found.push((delta, entries));
            if found.len() == k - 1 {
                break 'outer;
            }
        }
    }
    if found.len() != k - 1 {
        return Err(Error::Certificate("syzygy module generators not found within degree bound".into()));
    }
    let col_degrees: Vec<usize> = found.iter().map(|(d, _)| *d).collect();
    let entries: Vec<Vec<UniHomPoly>> = (0..k).map(|i| found.iter().map(|(_, c)| c[i].clone()).collect()).collect();
    let m = GradedSyzMatrix { gens: gens.to_vec(), row_degrees: rdeg, col_degrees, entries };
    m.check_syzygies(f)?;
    Ok(m)
}

fn rank_of(vs: &[Vec<u64>], n: usize, f: &PrimeField) -> usize {
    if vs.is_empty() {
        return 0;
    }
    FieldMatrix::from_cols(vs, n).rank(f)
}

/// Scales the first column so the signed maximal minors equal the generators.
pub fn normalize_hilbert_burch(m: &mut GradedSyzMatrix, f: &PrimeField) -> Result<()> {
    let minors = m.to_polymatrix(f).signed_maximal_minors(f);
    let i = m.gens.iter().position(|g| !g.is_zero()).expect("nonzero generator");
    let g = m.gens[i].to_bipoly(f);
    let (lm, lc) = g.leading().unwrap();
    let mc = minors[i].coeff(lm);
    if mc == 0 {
        return Err(Error::Certificate("maximal minor does not match generator".into()));
    }
    let lambda = f.div(lc, mc);
    for row in m.entries.iter_mut() {
        row[0] = row[0].scale(lambda, f);
    }
    m.check_minors(f)
}

/// Hilbert-Burch matrix of `gens`: minimal syzygies, normalized.
pub fn hilbert_burch(gens: &[UniHomPoly], f: &PrimeField) -> Result<GradedSyzMatrix> {
    let mut m = min_graded_syzygies(gens, f)?;
    normalize_hilbert_burch(&mut m, f)?;
    Ok(m)
}

/// `psi` for the entries of `g`; a minimal resolution has no unit entries.
pub fn hilbert_burch_psi(g: &[UniHomPoly], f: &PrimeField) -> Result<GradedSyzMatrix> {
    let psi = hilbert_burch(g, f)?;
    if psi.has_unit_entry() {
        return Err(Error::Certificate("psi has a unit entry".into()));
    }
    Ok(psi)
}

/// `phi_j`: the Hilbert-Burch matrix of the entries of column `j` of `psi`.
pub fn column_resolutions(psi: &GradedSyzMatrix, f: &PrimeField) -> Result<Vec<GradedSyzMatrix>> {
    (0..psi.ncols())
        .map(|j| {
            let d = psi.column_entry_degree(j);
            let col: Vec<UniHomPoly> = (0..psi.nrows())
                .map(|i| if psi.entries[i][j].is_zero() { UniHomPoly::zero(d) } else { psi.entries[i][j].clone() })
                .collect();
            hilbert_burch(&col, f)
        })
        .collect()
}

/// The row `C_i^T phi_j` with declared degrees, `C_i` the `i`-th column of `psi`.
pub fn column_times_phi(
    psi: &GradedSyzMatrix,
    phis: &[GradedSyzMatrix],
    i: usize,
    j: usize,
    f: &PrimeField,
) -> Vec<UniHomPoly> {
    let ci = psi.column(i, f);
    let phi = &phis[j];
    let mu_i = psi.column_entry_degree(i);
    let mu_j = psi.column_entry_degree(j);
    (0..phi.ncols())
        .map(|c| {
            let d = mu_i + phi.col_degrees[c] - mu_j;
            let p = crate::polymat::dot(&ci, &phi.column(c, f), f);
            UniHomPoly::from_bipoly(&p, d).expect("product of graded forms has the declared degree")
        })
        .collect()
}

/// `gamma_ij`: Hilbert-Burch matrix of the entries of `C_i^T phi_j` (0-based).
pub fn gamma(psi: &GradedSyzMatrix, phis: &[GradedSyzMatrix], i: usize, j: usize, f: &PrimeField) -> Result<GradedSyzMatrix> {
    let row = column_times_phi(psi, phis, i, j, f);
    if row.iter().all(|x| x.is_zero()) {
        return Err(Error::Certificate(format!("C_{}^T phi_{} vanishes", i + 1, j + 1)));
    }
    hilbert_burch(&row, f)
}
