//! The linear strand matrix in bidegree `(2a-1, b-1)` and its determinant.
//!
//! Rows are indexed by monomials of bidegree `(2a-1, b-1)`. Each syzygy `S_k`
//! of bidegree `(c, d)` contributes one column per monomial `m` of bidegree
//! `(2a-1-c, b-1-d)`; the entry in row `w` is the linear form
//! `sum_i coeff(w, m S_k[i]) x_i`. The matrix is stored as four scalar
//! matrices `M_i` with `strand(x) = sum_i x_i M_i`.

use crate::bipoly::{basis_index, monomial_basis, BiDegree};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::FieldMatrix;
use crate::poly4::{Mono, Poly4};
use crate::syzygy::SyzygyColumn;
use crate::upoly;
use rand::Rng;

pub type XPoly = Poly4;

pub const X_VARS: [&str; 4] = ["x0", "x1", "x2", "x3"];

#[derive(Clone, Debug)]
pub struct StrandMatrix {
    pub nu: BiDegree,
    pub row_monomials: Vec<Mono>,
    /// `(syzygy index, multiplier monomial)` per column.
    pub col_labels: Vec<(usize, Mono)>,
    pub coeffs: [FieldMatrix; 4],
}

/// Builds the strand from syzygies on the input generators.
pub fn build_d1_strand(syzygies: &[SyzygyColumn], a: usize, b: usize) -> Result<StrandMatrix> {
    let nu = BiDegree::new(2 * a - 1, b - 1);
    let row_monomials = monomial_basis(nu);
    let nrows = row_monomials.len();
    let mut col_labels = Vec::new();
    let mut cols: [Vec<Vec<u64>>; 4] = Default::default();
    for (k, s) in syzygies.iter().enumerate() {
        let Some(mdeg) = nu.checked_sub(s.bidegree) else { continue };
        for m in monomial_basis(mdeg) {
            col_labels.push((k, m));
            for i in 0..4 {
                let mut col = vec![0; nrows];
                for (w, c) in s.entries[i].terms() {
                    col[basis_index(w.mul(m), nu)] = c;
                }
                cols[i].push(col);
            }
        }
    }
    if col_labels.len() != nrows {
        return Err(Error::Certificate(format!(
            "strand matrix is {} x {}, not square",
            nrows,
            col_labels.len()
        )));
    }
    let coeffs = cols.map(|c| FieldMatrix::from_cols(&c, nrows));
    Ok(StrandMatrix { nu, row_monomials, col_labels, coeffs })
}

impl StrandMatrix {
    pub fn size(&self) -> usize {
        self.row_monomials.len()
    }

    pub fn eval_matrix(&self, x: &[u64; 4], f: &PrimeField) -> FieldMatrix {
        let n = self.size();
        let mut m = FieldMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let v = (0..4).fold(0, |acc, i| f.mul_add(acc, x[i], self.coeffs[i].get(r, c)));
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn eval_det(&self, x: &[u64; 4], f: &PrimeField) -> u64 {
        self.eval_matrix(x, f).det(f)
    }

    /// Entry `(r, c)` as a linear form.
    pub fn entry(&self, r: usize, c: usize, f: &PrimeField) -> XPoly {
        let mut p = XPoly::zero();
        for i in 0..4 {
            let mut e = [0u32; 4];
            e[i] = 1;
            p.add_term(Mono(e), self.coeffs[i].get(r, c), f);
        }
        p
    }

    /// The determinant as a polynomial, by interpolation on the grid
    /// `x0 = 1`, `x1, x2, x3 in {0..D}` with `D = size`, then spot-checked at
    /// ten random points.
    pub fn reconstruct_det<R: Rng>(&self, cap: usize, f: &PrimeField, rng: &mut R) -> Result<XPoly> {
        let d = self.size();
        if d > cap {
            return Err(Error::TooLarge(format!("interpolation of degree {d} exceeds cap {cap}")));
        }
        if (d as u64) >= f.modulus() {
            return Err(Error::TooLarge("field too small for the interpolation grid".into()));
        }
        let g = d + 1;
        let xs: Vec<u64> = (0..g as u64).collect();
        // vals[i][j][k] at (1, i, j, k).
        let mut vals = vec![0u64; g * g * g];
        for i in 0..g {
            for j in 0..g {
                for k in 0..g {
                    vals[(i * g + j) * g + k] = self.eval_det(&[1, i as u64, j as u64, k as u64], f);
                }
            }
        }
        let interp_axis = |vals: &mut Vec<u64>, stride: usize| {
            let mut out = vec![0u64; vals.len()];
            for base in 0..g * g * g {
                if !(base / stride).is_multiple_of(g) {
                    continue;
                }
                let ys: Vec<u64> = (0..g).map(|t| vals[base + t * stride]).collect();
                let c = upoly::interpolate(&xs, &ys, f);
                for (t, &ct) in c.iter().enumerate() {
                    out[base + t * stride] = ct;
                }
            }
            *vals = out;
        };
        interp_axis(&mut vals, 1);
        interp_axis(&mut vals, g);
        interp_axis(&mut vals, g * g);
        let mut poly = XPoly::zero();
        for i in 0..g {
            for j in 0..g {
                for k in 0..g {
                    let c = vals[(i * g + j) * g + k];
                    if c == 0 {
                        continue;
                    }
                    if i + j + k > d {
                        return Err(Error::Certificate("interpolated determinant is not homogeneous".into()));
                    }
                    poly.add_term(Mono([(d - i - j - k) as u32, i as u32, j as u32, k as u32]), c, f);
                }
            }
        }
        for _ in 0..10 {
            let x: [u64; 4] = std::array::from_fn(|_| rng.gen_range(0..f.modulus()));
            if poly.eval(&x, f) != self.eval_det(&x, f) {
                return Err(Error::Certificate("interpolated determinant fails a spot check".into()));
            }
        }
        Ok(poly)
    }

    /// Rows of linear forms, for display.
    pub fn display(&self, f: &PrimeField) -> Vec<Vec<String>> {
        (0..self.size())
            .map(|r| (0..self.size()).map(|c| self.entry(r, c, f).display(f, &X_VARS)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::run_case;
    use crate::membership::Convention;
    use crate::syzygy::{analyze_v, SurfaceInput};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn segre_strand_gives_quadric() {
        let f = PrimeField::default();
        let input = SurfaceInput::parse(f, 1, 1, &["s*u", "s*v", "t*u", "t*v"]).unwrap();
        let va = analyze_v(&input, 1).unwrap();
        let case = run_case(&input, &va, Convention::FreeZero).unwrap();
        let lifted: Vec<_> = case.syzygies.iter().map(|s| s.pull_back(&va.transition, &f)).collect();
        let strand = build_d1_strand(&lifted, 1, 1).unwrap();
        assert_eq!(strand.size(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let det = strand.reconstruct_det(24, &f, &mut rng).unwrap();
        let expect = XPoly::parse("x0*x3 - x1*x2", &f, &X_VARS).unwrap();
        assert!(det == expect || det == expect.neg(&f), "{}", det.display(&f, &X_VARS));
    }
}
