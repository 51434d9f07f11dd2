//! Seeded random instances with a prescribed syzygy profile.
//!
//! Instances are built backwards from the structure of each case: pick the
//! forms `g` (or a Hilbert-Burch matrix `psi`) and the multipliers `alpha`,
//! derive the generators, then mix them by a random invertible matrix so the
//! analyzer has to recover the structure on its own.

use crate::bipoly::{BiDegree, BiPoly, UniHomPoly};
use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_PRIME};
use crate::linalg::FieldMatrix;
use crate::membership::Convention;
use crate::oracle::BasepointStatus;
use crate::pipeline::{implicitize, Options};
use crate::polymat::PolyMatrix;
use crate::syzygy::{analyze_v, SurfaceInput};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_RETRIES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub a: usize,
    pub b: usize,
    pub n: usize,
    pub dim_v: usize,
    /// Empty for `dim V = 2`, `[mu]` for 3, `[mu1, mu2]` for 4.
    pub mu: Vec<usize>,
    pub seed: u64,
    #[serde(default = "default_prime")]
    pub prime: u64,
}

fn default_prime() -> u64 {
    DEFAULT_PRIME
}

impl GenSpec {
    pub fn new(a: usize, b: usize, n: usize, dim_v: usize, mu: Vec<usize>, seed: u64) -> Self {
        GenSpec { a, b, n, dim_v, mu, seed, prime: DEFAULT_PRIME }
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        let (a, b, n) = (self.a, self.b, self.n);
        if a == 0 || n == 0 {
            return bad("a and n must be positive".into());
        }
        if b + 1 < 2 * n {
            return bad(format!("b = {b} is below 2n - 1 = {}", 2 * n - 1));
        }
        match (self.dim_v, self.mu.as_slice()) {
            (2, []) => Ok(()),
            (3, &[m]) if m >= 1 && m <= n - m => Ok(()),
            (4, &[m1, m2]) if m1 >= 1 && m1 <= m2 && m1 + 2 * m2 <= n => Ok(()),
            (d, mu) => bad(format!("inconsistent profile: dim V = {d}, mu = {mu:?}, n = {n}")),
        }
    }

    /// Column degrees of `psi`, ascending.
    fn psi_degrees(&self) -> Vec<usize> {
        match *self.mu.as_slice() {
            [m] => vec![m, self.n - m],
            [m1, m2] => vec![m1, m2, self.n - m1 - m2],
            _ => Vec::new(),
        }
    }
}

fn random_vec<R: Rng>(len: usize, f: &PrimeField, rng: &mut R) -> Vec<u64> {
    (0..len).map(|_| rng.gen_range(0..f.modulus())).collect()
}

fn random_bipoly<R: Rng>(d: BiDegree, f: &PrimeField, rng: &mut R) -> BiPoly {
    BiPoly::from_coeff_vector(&random_vec(d.dim(), f, rng), d, f)
}

fn random_form<R: Rng>(degree: usize, f: &PrimeField, rng: &mut R) -> UniHomPoly {
    UniHomPoly::from_coeffs(random_vec(degree + 1, f, rng))
}

/// Generators before mixing.
fn raw_generators<R: Rng>(spec: &GenSpec, f: &PrimeField, rng: &mut R) -> Vec<BiPoly> {
    let (a, b, n) = (spec.a, spec.b, spec.n);
    let full = BiDegree::new(a, b);
    match spec.dim_v {
        2 => {
            let g0 = random_form(n, f, rng);
            let g1 = random_form(n, f, rng);
            let alpha = random_bipoly(BiDegree::new(a, b - n), f, rng);
            vec![
                alpha.mul_uni(&g1, f),
                alpha.mul_uni(&g0, f).neg(f),
                random_bipoly(full, f, rng),
                random_bipoly(full, f, rng),
            ]
        }
        _ => {
            let degs = spec.psi_degrees();
            let rows = degs.len() + 1;
            let cols: Vec<Vec<BiPoly>> = degs
                .iter()
                .map(|&d| (0..rows).map(|_| random_form(d, f, rng).to_bipoly(f)).collect())
                .collect();
            let psi = PolyMatrix::from_cols(&cols);
            let alpha: Vec<BiPoly> =
                degs.iter().map(|&d| random_bipoly(BiDegree::new(a, b - d), f, rng)).collect();
            let mut gens = psi.mul_vec(&alpha, f);
            if rows == 3 {
                gens.push(random_bipoly(full, f, rng));
            }
            gens
        }
    }
}

fn random_invertible<R: Rng>(k: usize, f: &PrimeField, rng: &mut R) -> FieldMatrix {
    loop {
        let m = FieldMatrix::from_rows(&(0..k).map(|_| random_vec(k, f, rng)).collect::<Vec<_>>());
        if m.det(f) != 0 {
            return m;
        }
    }
}

fn mix(gens: &[BiPoly], m: &FieldMatrix, f: &PrimeField) -> Vec<BiPoly> {
    (0..gens.len())
        .map(|j| {
            gens.iter()
                .enumerate()
                .fold(BiPoly::zero(), |acc, (i, g)| acc.add(&g.scale(m.get(i, j), f), f))
        })
        .collect()
}

/// Analyzer checks shared by generation and validation.
fn profile_failures(input: &SurfaceInput, spec: &GenSpec) -> Vec<String> {
    let mut out = Vec::new();
    let va = match analyze_v(input, input.b) {
        Ok(va) => va,
        Err(e) => return vec![format!("analysis failed: {e}")],
    };
    if va.n != spec.n {
        out.push(format!("minimal n mismatch: found {}, expected {}", va.n, spec.n));
    }
    if va.dim_v != spec.dim_v {
        out.push(format!("dim V mismatch: found {}, expected {}", va.dim_v, spec.dim_v));
    }
    out
}

/// One instance matching `spec`, with at most `retries` attempts.
pub fn generate_with_retries(spec: &GenSpec, retries: usize) -> Result<SurfaceInput> {
    spec.check()?;
    let f = PrimeField::new(spec.prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..retries {
        let raw = raw_generators(spec, &f, &mut rng);
        let t = random_invertible(4, &f, &mut rng);
        let Ok(input) = SurfaceInput::new(f, spec.a, spec.b, mix(&raw, &t, &f)) else {
            continue;
        };
        if !matches!(crate::oracle::basepoint_check(&input, &mut rng), Ok(BasepointStatus::Free)) {
            continue;
        }
        if !profile_failures(&input, spec).is_empty() {
            continue;
        }
        if mu_of(&input).as_deref() != Some(spec.mu.as_slice()) {
            continue;
        }
        return Ok(input);
    }
    Err(Error::InvalidInput(format!("no instance found in {retries} attempts; the profile may be infeasible over F_{}", spec.prime)))
}

pub fn generate(spec: &GenSpec) -> Result<SurfaceInput> {
    generate_with_retries(spec, DEFAULT_RETRIES)
}

fn mu_of(input: &SurfaceInput) -> Option<Vec<usize>> {
    let va = analyze_v(input, input.b).ok()?;
    let case = crate::cases::run_case(input, &va, Convention::FreeZero).ok()?;
    Some(case.mu)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_v: Option<usize>,
    pub mu: Vec<usize>,
    pub column_counts: Vec<usize>,
    pub strand_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_f: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<usize>,
}

/// Runs the whole pipeline on `input` and compares the outcome with `spec`.
pub fn validate_instance(input: &SurfaceInput, spec: &GenSpec, opts: &Options) -> ValidationReport {
    let mut rep = ValidationReport {
        pass: false,
        failures: profile_failures(input, spec),
        n: None,
        dim_v: None,
        mu: Vec::new(),
        column_counts: Vec::new(),
        strand_size: 0,
        degree_f: None,
        exponent: None,
    };
    match implicitize(input, opts) {
        Err(e) => rep.failures.push(format!("pipeline failed: {e}")),
        Ok(imp) => {
            rep.n = Some(imp.analysis.n);
            rep.dim_v = Some(imp.analysis.dim_v);
            rep.mu = imp.case.mu.clone();
            rep.column_counts = imp.case.expected_counts.clone();
            rep.strand_size = imp.strand.size();
            rep.degree_f = imp.oracle.as_ref().map(|o| o.degree);
            rep.exponent = imp.certificate.as_ref().map(|c| c.d);
            if imp.case.mu != spec.mu {
                rep.failures.push(format!("mu mismatch: found {:?}, expected {:?}", imp.case.mu, spec.mu));
            }
            if let Err(e) = imp.case.verify(&imp.input, &imp.analysis) {
                rep.failures.push(format!("identity check failed: {e}"));
            }
            if rep.column_counts.iter().sum::<usize>() != 2 * input.a * input.b {
                rep.failures.push("column counts do not sum to 2ab".into());
            }
        }
    }
    rep.pass = rep.failures.is_empty();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_are_checked() {
        assert!(GenSpec::new(2, 5, 3, 4, vec![1, 1], 0).check().is_ok());
        assert!(GenSpec::new(2, 4, 3, 2, vec![], 0).check().is_err());
        assert!(GenSpec::new(2, 5, 3, 3, vec![2], 0).check().is_err());
        assert!(GenSpec::new(2, 5, 3, 4, vec![1], 0).check().is_err());
    }

    #[test]
    fn small_dim2_instance_is_deterministic() {
        let spec = GenSpec::new(1, 1, 1, 2, vec![], 7);
        let x = generate(&spec).unwrap();
        let y = generate(&spec).unwrap();
        assert_eq!(x, y);
        let rep = validate_instance(&x, &spec, &Options::default());
        assert!(rep.pass, "{:?}", rep.failures);
        assert_eq!(rep.column_counts, vec![0, 1, 1]);
    }

    #[test]
    fn dim3_instance_matches_profile() {
        let spec = GenSpec::new(1, 3, 2, 3, vec![1], 3);
        let x = generate(&spec).unwrap();
        let rep = validate_instance(&x, &spec, &Options::default());
        assert!(rep.pass, "{:?}", rep.failures);
        assert_eq!(rep.strand_size, 6);
    }

    #[test]
    fn wrong_n_is_reported() {
        let spec = GenSpec::new(2, 3, 2, 2, vec![], 11);
        let x = generate(&spec).unwrap();
        let wrong = GenSpec { n: 1, ..spec };
        let rep = validate_instance(&x, &wrong, &Options::default());
        assert!(!rep.pass);
        assert!(rep.failures[0].starts_with("minimal n mismatch"));
    }
}
