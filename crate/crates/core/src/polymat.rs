//! Small matrices with polynomial entries.

use crate::bipoly::BiPoly;
use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    e: Vec<BiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, e: vec![BiPoly::zero(); rows * cols] }
    }

    pub fn from_cols(cols: &[Vec<BiPoly>]) -> Self {
        let nr = cols.first().map_or(0, |c| c.len());
        let mut m = PolyMatrix::zeros(nr, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nr);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn column_vector(v: &[BiPoly]) -> Self {
        PolyMatrix::from_cols(&[v.to_vec()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BiPoly {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BiPoly) {
        self.e[i * self.cols + j] = x;
    }

    pub fn col(&self, j: usize) -> Vec<BiPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &PolyMatrix, f: &PrimeField) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in polynomial matrix product");
        let mut r = PolyMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = BiPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j), f), f);
                }
                r.set(i, j, acc);
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[BiPoly], f: &PrimeField) -> Vec<BiPoly> {
        self.mul(&PolyMatrix::column_vector(v), f).col(0)
    }

    pub fn sub(&self, o: &PolyMatrix, f: &PrimeField) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b, f)).collect(),
        }
    }

    pub fn without_row(&self, r: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.rows - 1, self.cols);
        let mut k = 0;
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            for j in 0..self.cols {
                m.set(k, j, self.get(i, j).clone());
            }
            k += 1;
        }
        m
    }

    fn without_row_col(&self, r: usize, c: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.rows - 1, self.cols - 1);
        let mut k = 0;
        for i in (0..self.rows).filter(|&i| i != r) {
            let mut l = 0;
            for j in (0..self.cols).filter(|&j| j != c) {
                m.set(k, l, self.get(i, j).clone());
                l += 1;
            }
            k += 1;
        }
        m
    }

    /// Laplace expansion along the first row; sizes here are at most 4.
    pub fn det(&self, f: &PrimeField) -> BiPoly {
        assert_eq!(self.rows, self.cols);
        match self.rows {
            0 => BiPoly::constant(1, f),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = BiPoly::zero();
                for j in 0..self.cols {
                    if self.get(0, j).is_zero() {
                        continue;
                    }
                    let term = self.get(0, j).mul(&self.without_row_col(0, j).det(f), f);
                    acc = if j % 2 == 0 { acc.add(&term, f) } else { acc.sub(&term, f) };
                }
                acc
            }
        }
    }

    /// `(-1)^i det(M without row i)` for a `(k+1) x k` matrix.
    pub fn signed_maximal_minors(&self, f: &PrimeField) -> Vec<BiPoly> {
        assert_eq!(self.rows, self.cols + 1);
        (0..self.rows)
            .map(|i| {
                let d = self.without_row(i).det(f);
                if i % 2 == 0 {
                    d
                } else {
                    d.neg(f)
                }
            })
            .collect()
    }

    pub fn display(&self, f: &PrimeField) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_st_uv_string(f)).collect())
            .collect()
    }
}

/// `sum_i a_i b_i`.
pub fn dot(a: &[BiPoly], b: &[BiPoly], f: &PrimeField) -> BiPoly {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(BiPoly::zero(), |acc, (x, y)| acc.add(&x.mul(y, f), f))
}
