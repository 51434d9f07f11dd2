//! Minimal syzygies of bidegree `(0, n)` and the space `V` they span.
//!
//! A syzygy of bidegree `(0, n)` is written `sum_i (sum_j a_ij u^(n-j) v^j) p_i = 0`.
//! Setting `f_j = sum_i a_ij p_i` gives `sum_j f_j u^(n-j) v^j = 0`, and `V` is
//! the span of the `f_j`.

use crate::bipoly::{BiDegree, BiPoly, UniHomPoly};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::FieldMatrix;
use crate::poly4::Mono;
use serde::{Deserialize, Serialize};

/// Four generators of a tensor-product surface parametrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInput {
    pub field: PrimeField,
    pub a: usize,
    pub b: usize,
    pub gens: Vec<BiPoly>,
}

impl SurfaceInput {
    /// Checks the bidegree of every generator and their linear independence.
    pub fn new(field: PrimeField, a: usize, b: usize, gens: Vec<BiPoly>) -> Result<Self> {
        if gens.len() != 4 {
            return Err(Error::InvalidInput(format!("expected 4 generators, got {}", gens.len())));
        }
        if a == 0 || b == 0 {
            return Err(Error::InvalidInput("bidegree components must be positive".into()));
        }
        let d = BiDegree::new(a, b);
        for (i, g) in gens.iter().enumerate() {
            if g.is_zero() {
                return Err(Error::InvalidInput(format!("generator p{i} is zero")));
            }
            if !g.is_bihomogeneous_of(d) {
                return Err(Error::NotBihomogeneous(format!("generator p{i} is not of bidegree {d}")));
            }
        }
        let m = FieldMatrix::from_cols(&gens.iter().map(|g| g.coeff_vector(d)).collect::<Vec<_>>(), d.dim());
        if m.rank(&field) < 4 {
            return Err(Error::InvalidInput("generators are linearly dependent".into()));
        }
        Ok(SurfaceInput { field, a, b, gens })
    }

    pub fn parse(field: PrimeField, a: usize, b: usize, srcs: &[impl AsRef<str>]) -> Result<Self> {
        let gens = srcs
            .iter()
            .map(|s| BiPoly::parse_st_uv(s.as_ref(), &field))
            .collect::<Result<Vec<_>>>()?;
        SurfaceInput::new(field, a, b, gens)
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.a, self.b)
    }

    /// The same surface with the roles of `(s, t)` and `(u, v)` exchanged.
    pub fn mirror(&self) -> SurfaceInput {
        SurfaceInput {
            field: self.field,
            a: self.b,
            b: self.a,
            gens: self.gens.iter().map(|g| g.mirror()).collect(),
        }
    }
}

/// A syzygy on four generators, with the common bidegree of its entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyColumn {
    pub entries: Vec<BiPoly>,
    pub bidegree: BiDegree,
}

impl SyzygyColumn {
    pub fn new(entries: Vec<BiPoly>, bidegree: BiDegree) -> Self {
        debug_assert!(entries.iter().all(|e| e.is_bihomogeneous_of(bidegree)));
        SyzygyColumn { entries, bidegree }
    }

    pub fn annihilates(&self, gens: &[BiPoly], f: &PrimeField) -> bool {
        crate::polymat::dot(&self.entries, gens, f).is_zero()
    }

    /// Re-expresses a syzygy on `new = old * t` as a syzygy on `old`.
    pub fn pull_back(&self, t: &FieldMatrix, f: &PrimeField) -> SyzygyColumn {
        let entries = (0..t.rows())
            .map(|i| {
                (0..t.cols()).fold(BiPoly::zero(), |acc, k| acc.add(&self.entries[k].scale(t.get(i, k), f), f))
            })
            .collect();
        SyzygyColumn { entries, bidegree: self.bidegree }
    }

    pub fn display(&self, f: &PrimeField) -> Vec<String> {
        self.entries.iter().map(|e| e.to_st_uv_string(f)).collect()
    }
}

/// The output of the `(0, n)` syzygy analysis.
#[derive(Clone, Debug)]
pub struct VAnalysis {
    pub n: usize,
    /// Dimension of the space of `(0, n)` syzygies found at the minimal `n`.
    pub kernel_dim: usize,
    /// `4 x (n+1)` coefficient matrix of the chosen syzygy.
    pub a_matrix: FieldMatrix,
    pub f_family: Vec<BiPoly>,
    pub dim_v: usize,
    /// Indices `j` of the `f_j` kept as the basis `f'`.
    pub basis_idx: Vec<usize>,
    pub fprime: Vec<BiPoly>,
    /// `[f_0 .. f_n] = [f'] * B`.
    pub b_matrix: FieldMatrix,
    /// `g = B * (u^n, u^(n-1) v, .., v^n)`.
    pub g: Vec<UniHomPoly>,
    /// `f'` followed by the original generators needed to complete a basis.
    pub new_gens: Vec<BiPoly>,
    /// Column `k` holds the coordinates of `new_gens[k]` in the input generators.
    pub transition: FieldMatrix,
}

/// Smallest `n <= cap` with a nonzero syzygy of bidegree `(0, n)`, and the
/// canonical kernel basis at that `n`. Each basis vector is a `4 x (n+1)`
/// coefficient matrix `a_ij`.
pub fn find_minimal_syzygy(input: &SurfaceInput, cap: usize) -> Result<(usize, Vec<FieldMatrix>)> {
    let f = &input.field;
    for n in 1..=cap {
        let target = BiDegree::new(input.a, input.b + n);
        let mut cols = Vec::with_capacity(4 * (n + 1));
        for p in &input.gens {
            for j in 0..=n {
                let m = Mono([0, 0, (n - j) as u32, j as u32]);
                cols.push(p.mul_term(m, 1, f).coeff_vector(target));
            }
        }
        let sys = FieldMatrix::from_cols(&cols, target.dim());
        let kernel = sys.kernel_basis(f);
        if !kernel.is_empty() {
            let mats = kernel
                .iter()
                .map(|v| FieldMatrix::from_rows(&v.chunks(n + 1).map(|c| c.to_vec()).collect::<Vec<_>>()))
                .collect();
            return Ok((n, mats));
        }
    }
    Err(Error::NoSyzygy { cap })
}

/// Builds `f_j = sum_i a_ij p_i`.
pub fn build_f_family(input: &SurfaceInput, a: &FieldMatrix) -> Vec<BiPoly> {
    let f = &input.field;
    (0..a.cols())
        .map(|j| {
            (0..4).fold(BiPoly::zero(), |acc, i| acc.add(&input.gens[i].scale(a.get(i, j), f), f))
        })
        .collect()
}

/// Full analysis at the minimal `n`, using the first canonical kernel vector.
pub fn analyze_v(input: &SurfaceInput, cap: usize) -> Result<VAnalysis> {
    let f = &input.field;
    let (n, cands) = find_minimal_syzygy(input, cap)?;
    let kernel_dim = cands.len();
    let a_matrix = cands.into_iter().next().expect("nonempty kernel");
    let f_family = build_f_family(input, &a_matrix);

    let rref = a_matrix.rref(f);
    let dim_v = rref.rank();
    let basis_idx = rref.pivots.clone();
    let fprime: Vec<BiPoly> = basis_idx.iter().map(|&j| f_family[j].clone()).collect();
    let b_matrix = FieldMatrix::from_rows(&(0..dim_v).map(|r| rref.reduced.row(r).to_vec()).collect::<Vec<_>>());
    let g: Vec<UniHomPoly> = (0..dim_v).map(|r| UniHomPoly::from_coeffs(b_matrix.row(r).to_vec())).collect();

    if UniHomPoly::gcd_degree(&g, f) != Some(0) {
        return Err(Error::Hypothesis("entries of g share a common factor".into()));
    }

    // Complete f' to a basis of the span of the generators.
    let mut basis_cols: Vec<Vec<u64>> = basis_idx.iter().map(|&j| a_matrix.col(j)).collect();
    let mut new_gens = fprime.clone();
    for i in 0..4 {
        if basis_cols.len() == 4 {
            break;
        }
        let mut e = vec![0; 4];
        e[i] = 1;
        let mut trial = basis_cols.clone();
        trial.push(e);
        if FieldMatrix::from_cols(&trial, 4).rank(f) == trial.len() {
            basis_cols = trial;
            new_gens.push(input.gens[i].clone());
        }
    }
    let transition = FieldMatrix::from_cols(&basis_cols, 4);

    let va = VAnalysis {
        n,
        kernel_dim,
        a_matrix,
        f_family,
        dim_v,
        basis_idx,
        fprime,
        b_matrix,
        g,
        new_gens,
        transition,
    };
    debug_assert!(va.check(input).is_ok());
    Ok(va)
}

impl VAnalysis {
    /// `[g; 0..0]` as a syzygy on `new_gens`.
    pub fn g_syzygy(&self, f: &PrimeField) -> SyzygyColumn {
        let mut entries: Vec<BiPoly> = self.g.iter().map(|x| x.to_bipoly(f)).collect();
        entries.resize(4, BiPoly::zero());
        SyzygyColumn::new(entries, BiDegree::new(0, self.n))
    }

    /// Exact checks of the defining relations.
    pub fn check(&self, input: &SurfaceInput) -> Result<()> {
        let f = &input.field;
        let fail = |m: &str| Err(Error::Certificate(m.to_string()));
        let n = self.n;
        let uv: Vec<BiPoly> =
            (0..=n).map(|j| BiPoly::monomial(1, [0, 0, (n - j) as u32, j as u32], f)).collect();
        if !crate::polymat::dot(&self.f_family, &uv, f).is_zero() {
            return fail("sum f_j u^(n-j) v^j is not zero");
        }
        for (j, fj) in self.f_family.iter().enumerate() {
            let recon = (0..self.dim_v)
                .fold(BiPoly::zero(), |acc, k| acc.add(&self.fprime[k].scale(self.b_matrix.get(k, j), f), f));
            if recon != *fj {
                return fail("[f] != [f'] B");
            }
        }
        if !self.g_syzygy(f).annihilates(&self.new_gens, f) {
            return fail("g is not a syzygy on f'");
        }
        for k in 0..4 {
            let recon = (0..4).fold(BiPoly::zero(), |acc, i| {
                acc.add(&input.gens[i].scale(self.transition.get(i, k), f), f)
            });
            if recon != self.new_gens[k] {
                return fail("new generators do not match the transition matrix");
            }
        }
        Ok(())
    }
}

/// Summary record for reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VSummary {
    pub n: usize,
    pub kernel_dim: usize,
    pub dim_v: usize,
    pub basis_idx: Vec<usize>,
    pub fprime: Vec<String>,
    pub g: Vec<String>,
    pub new_gens: Vec<String>,
}

impl VAnalysis {
    pub fn summary(&self, f: &PrimeField) -> VSummary {
        VSummary {
            n: self.n,
            kernel_dim: self.kernel_dim,
            dim_v: self.dim_v,
            basis_idx: self.basis_idx.clone(),
            fprime: self.fprime.iter().map(|p| p.to_st_uv_string(f)).collect(),
            g: self.g.iter().map(|p| p.to_bipoly(f).to_st_uv_string(f)).collect(),
            new_gens: self.new_gens.iter().map(|p| p.to_st_uv_string(f)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example() -> SurfaceInput {
        crate::fixtures::example()
    }

    #[test]
    fn example_has_n3_and_full_v() {
        let input = example();
        let va = analyze_v(&input, input.b).unwrap();
        let f = &input.field;
        assert_eq!(va.n, 3);
        assert_eq!(va.dim_v, 4);
        assert_eq!(va.kernel_dim, 1);
        let g: Vec<String> = va.g.iter().map(|x| x.to_bipoly(f).to_st_uv_string(f)).collect();
        assert_eq!(g, ["u^3", "u^2*v", "u*v^2", "v^3"]);
        assert_eq!(va.fprime, input.gens);
        va.check(&input).unwrap();
    }

    #[test]
    fn segre_has_two_dimensional_kernel() {
        let input = SurfaceInput::parse(PrimeField::default(), 1, 1, &["s*u", "s*v", "t*u", "t*v"]).unwrap();
        let va = analyze_v(&input, 1).unwrap();
        let f = &input.field;
        assert_eq!((va.n, va.kernel_dim, va.dim_v), (1, 2, 2));
        let g: Vec<String> = va.g.iter().map(|x| x.to_bipoly(f).to_st_uv_string(f)).collect();
        assert_eq!(g, ["u", "v"]);
        va.check(&input).unwrap();
    }

    #[test]
    fn rejects_dependent_and_mixed_generators() {
        let f = PrimeField::default();
        assert!(SurfaceInput::parse(f, 1, 1, &["s*u", "s*v", "t*u", "s*u+s*v"]).is_err());
        assert!(matches!(
            SurfaceInput::parse(f, 1, 1, &["s*u", "s*v", "t*u", "t*v*v"]),
            Err(Error::NotBihomogeneous(_))
        ));
    }

    #[test]
    fn no_syzygy_reported() {
        // Generic-looking forms of bidegree (1, 2) with no (0, 1) syzygy.
        let input = SurfaceInput::parse(
            PrimeField::default(),
            1,
            2,
            &["s*u^2 + t*v^2", "s*u*v + t*u^2", "s*v^2 + 2*t*u*v", "t*v^2 + 3*s*u^2 + s*u*v"],
        )
        .unwrap();
        assert_eq!(find_minimal_syzygy(&input, 1).unwrap_err(), Error::NoSyzygy { cap: 1 });
    }
}
