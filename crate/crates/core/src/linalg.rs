//! Dense exact linear algebra over F_p.
//!
//! Pivots are always chosen as the first usable row for the leftmost
//! remaining column. Kernel bases are in canonical free-variable form: one
//! vector per free column, in increasing column order, with a 1 in its own
//! free column and 0 in every other free column. That basis depends only on
//! the matrix, not on the elimination path.

use crate::field::{reduce_m31, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FieldMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        FieldMatrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<u64>], nrows: usize) -> Self {
        let mut m = FieldMatrix::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[u64], f: &PrimeField) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b)))
            .collect()
    }

    pub fn mul(&self, o: &FieldMatrix, f: &PrimeField) -> FieldMatrix {
        assert_eq!(self.cols, o.rows);
        let mut r = FieldMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    r.data[idx] = f.mul_add(r.data[idx], a, o.get(k, j));
                }
            }
        }
        r
    }

    /// Appends the given column.
    pub fn augment(&self, rhs: &[u64]) -> FieldMatrix {
        assert_eq!(rhs.len(), self.rows);
        let mut m = FieldMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            m.data[i * (self.cols + 1)..i * (self.cols + 1) + self.cols].copy_from_slice(self.row(i));
            m.set(i, self.cols, rhs[i]);
        }
        m
    }

    /// Row echelon form with unit pivots, rows sorted by pivot column, zero
    /// rows dropped. Returns the pivot columns; row `r` holds the pivot for
    /// `pivots[r]`.
    ///
    /// Rows are processed in blocks so that each pivot row is applied to a
    /// whole block while it is in cache.
    fn echelonize(&mut self, f: &PrimeField) -> Vec<usize> {
        const BLOCK: usize = 32;
        let cols = self.cols;
        let mut piv_cols: Vec<usize> = Vec::new();
        let mut piv_rows: Vec<Vec<u64>> = Vec::new();
        for start in (0..self.rows).step_by(BLOCK) {
            let end = (start + BLOCK).min(self.rows);
            let mut blk: Vec<Vec<u64>> = (start..end).map(|i| self.row(i).to_vec()).collect();
            // Ascending pivot columns keep every eliminated entry at zero.
            let mut order: Vec<usize> = (0..piv_cols.len()).collect();
            order.sort_unstable_by_key(|&k| piv_cols[k]);
            for &k in &order {
                let (pc, prow) = (piv_cols[k], &piv_rows[k]);
                for r in blk.iter_mut() {
                    let a = r[pc];
                    if a != 0 {
                        axpy(&mut r[pc..], &prow[pc..], f.neg(a), f);
                    }
                }
            }
            // New pivots in order of discovery; each is zero at earlier ones.
            let first_new = piv_cols.len();
            for mut r in blk {
                for k in first_new..piv_cols.len() {
                    let pc = piv_cols[k];
                    let a = r[pc];
                    if a != 0 {
                        axpy(&mut r[pc..], &piv_rows[k][pc..], f.neg(a), f);
                    }
                }
                if let Some(c) = r.iter().position(|&x| x != 0) {
                    let inv = f.inv(r[c]);
                    for x in r[c..].iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    piv_cols.push(c);
                    piv_rows.push(r);
                }
            }
        }
        let mut order: Vec<usize> = (0..piv_cols.len()).collect();
        order.sort_unstable_by_key(|&k| piv_cols[k]);
        let mut data = Vec::with_capacity(order.len() * cols);
        for &k in &order {
            data.extend_from_slice(&piv_rows[k]);
        }
        self.rows = order.len();
        self.data = data;
        order.iter().map(|&k| piv_cols[k]).collect()
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        self.clone().echelonize(f).len()
    }

    pub fn rref(&self, f: &PrimeField) -> Rref {
        let mut m = self.clone();
        let pivots = m.echelonize(f);
        let cols = m.cols;
        for (r, &c) in pivots.iter().enumerate().rev() {
            let (head, tail) = m.data.split_at_mut(r * cols);
            let prow = &tail[c..cols];
            for row in head.chunks_exact_mut(cols) {
                let a = row[c];
                if a != 0 {
                    axpy(&mut row[c..], prow, f.neg(a), f);
                }
            }
        }
        Rref { reduced: m, pivots }
    }

    pub fn kernel_basis(&self, f: &PrimeField) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.echelonize(f);
        let free = free_columns(&pivots, self.cols);
        free.iter().map(|&fc| back_substitute(&m, &pivots, |j| (j == fc) as u64, None, f)).collect()
    }

    /// Some solution of `self * x = rhs` with all free variables zero.
    pub fn solve_particular(&self, rhs: &[u64], f: &PrimeField) -> Option<Vec<u64>> {
        self.solve_with_free(rhs, 0, f)
    }

    /// Some solution of `self * x = rhs` with all free variables set to `free_value`.
    pub fn solve_with_free(&self, rhs: &[u64], free_value: u64, f: &PrimeField) -> Option<Vec<u64>> {
        let mut m = self.augment(rhs);
        let pivots = m.echelonize(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = back_substitute(&m, &pivots, |_| free_value, Some(self.cols), f);
        x.truncate(self.cols);
        Some(x)
    }

    /// Determinant of a square matrix.
    pub fn det(&self, f: &PrimeField) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else { return 0 };
            if pr != c {
                for j in c..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            let (head, tail) = m.data.split_at_mut((c + 1) * n);
            let prow = &head[c * n + c..c * n + n];
            for row in tail.chunks_exact_mut(n) {
                let a = row[c];
                if a != 0 {
                    axpy(&mut row[c..], prow, f.neg(f.mul(a, inv)), f);
                }
            }
        }
        det
    }
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: FieldMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn free_columns(pivots: &[usize], cols: usize) -> Vec<usize> {
    let mut is_piv = vec![false; cols];
    for &p in pivots {
        is_piv[p] = true;
    }
    (0..cols).filter(|&j| !is_piv[j]).collect()
}

/// Solves an echelon system from the bottom up. Free variables take
/// `free(j)`. With `rhs_col`, that column is the right-hand side.
fn back_substitute(
    m: &FieldMatrix,
    pivots: &[usize],
    free: impl Fn(usize) -> u64,
    rhs_col: Option<usize>,
    f: &PrimeField,
) -> Vec<u64> {
    let n = rhs_col.unwrap_or(m.cols);
    let mut is_piv = vec![false; n];
    for &p in pivots {
        is_piv[p] = true;
    }
    let mut x: Vec<u64> = (0..n).map(|j| if is_piv[j] { 0 } else { f.reduce(free(j)) }).collect();
    for (r, &c) in pivots.iter().enumerate().rev() {
        let row = m.row(r);
        let mut acc = rhs_col.map_or(0, |rc| row[rc]);
        for j in c + 1..n {
            if row[j] != 0 && x[j] != 0 {
                acc = f.sub(acc, f.mul(row[j], x[j]));
            }
        }
        x[c] = acc;
    }
    x
}

/// `dst += factor * src`, elementwise.
#[inline]
fn axpy(dst: &mut [u64], src: &[u64], factor: u64, f: &PrimeField) {
    #[cfg(target_arch = "x86_64")]
    {
        if f.is_mersenne31() && std::is_x86_feature_detected!("avx2") {
            // SAFETY: the CPU supports AVX2.
            unsafe { axpy_m31_avx2(dst, src, factor) };
            return;
        }
    }
    if f.is_mersenne31() {
        axpy_m31(dst, src, factor);
    } else {
        let p = f.modulus();
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = d.wrapping_add(factor.wrapping_mul(s)) % p;
        }
    }
}

// Operands are below 2^31, so the sums cannot wrap.
#[inline(always)]
fn axpy_m31(dst: &mut [u64], src: &[u64], factor: u64) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = reduce_m31(d.wrapping_add(factor.wrapping_mul(s)));
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn axpy_m31_avx2(dst: &mut [u64], src: &[u64], factor: u64) {
    axpy_m31(dst, src, factor);
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn canonical_kernel() {
        let f = small();
        // x0 + x1 + x2 = 0, x1 - x2 = 0: kernel spanned by (-2, 1, 1).
        let m = FieldMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 100]]);
        let k = m.kernel_basis(&f);
        assert_eq!(k, vec![vec![99, 1, 1]]);
        let r = m.rref(&f);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced.row(0), &[1, 0, 2]);
    }

    #[test]
    fn determinant_with_swaps() {
        let f = small();
        let m = FieldMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(&f), 100);
        let m = FieldMatrix::from_rows(&[vec![2, 3, 1], vec![4, 1, 0], vec![0, 5, 7]]);
        // 2*(7) - 3*(28) + 1*(20) = -50
        assert_eq!(m.det(&f), f.from_i64(-50));
    }

    fn arb_matrix(p: u64) -> impl Strategy<Value = FieldMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0..p, c), r)
                .prop_map(|rows| FieldMatrix::from_rows(&rows))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel(m in arb_matrix(7)) {
            let f = PrimeField::new(7).unwrap();
            let k = m.kernel_basis(&f);
            prop_assert_eq!(m.rank(&f) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v, &f).iter().all(|&x| x == 0));
            }
            let r = m.rref(&f);
            prop_assert_eq!(r.rank(), m.rank(&f));
        }

        #[test]
        fn particular_solution_solves(m in arb_matrix(11), x in proptest::collection::vec(0u64..11, 6)) {
            let f = PrimeField::new(11).unwrap();
            let x = &x[..m.cols()];
            let rhs = m.mul_vec(x, &f);
            for free in [0, 1] {
                let sol = m.solve_with_free(&rhs, free, &f).expect("consistent");
                prop_assert_eq!(m.mul_vec(&sol, &f), rhs.clone());
            }
        }

        #[test]
        fn det_matches_rank(m in (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u64..5, n), n)
                .prop_map(|rows| FieldMatrix::from_rows(&rows))
        })) {
            let f = PrimeField::new(5).unwrap();
            prop_assert_eq!(m.det(&f) != 0, m.rank(&f) == m.rows());
        }
    }
}
