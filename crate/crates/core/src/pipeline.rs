//! End-to-end implicitization with a JSON-ready report.

use crate::bipoly::BiDegree;
use crate::cases::{run_case, strand_column_count, CaseResult};
use crate::error::{Error, Result};
use crate::membership::Convention;
use crate::oracle::{
    basepoint_check, exact_power_check, implicit_by_elimination, verify_implicitization, BasepointStatus,
    Certificate, OracleResult,
};
use crate::strand::{build_d1_strand, StrandMatrix, XPoly, X_VARS};
use crate::syzygy::{analyze_v, SurfaceInput, VAnalysis, VSummary};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Syzygies of bidegree `(0, n)`: coefficients in `u, v`.
    #[default]
    Uv,
    /// The mirrored problem: coefficients in `s, t`.
    St,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetMode {
    /// Compare `det` and `c F^d` at random points.
    #[default]
    Eval,
    /// Interpolate `det` as a polynomial and divide by `F` exactly.
    Interpolate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    pub side: Side,
    pub det_mode: DetMode,
    /// Run the elimination oracle in `interpolate` mode. `eval` always runs it.
    pub oracle: bool,
    /// Continue when the basepoint check does not report `free`.
    pub force: bool,
    pub check_points: usize,
    pub seed: u64,
    pub convention: Convention,
    /// Largest strand size accepted by `interpolate`.
    pub interp_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            side: Side::Uv,
            det_mode: DetMode::Eval,
            oracle: false,
            force: false,
            check_points: 40,
            seed: 1,
            convention: Convention::FreeZero,
            interp_cap: 24,
        }
    }
}

/// Everything computed for one input.
#[derive(Clone, Debug)]
pub struct Implicitization {
    /// The input as processed (mirrored for `Side::St`).
    pub input: SurfaceInput,
    pub basepoints: BasepointStatus,
    pub analysis: VAnalysis,
    pub case: CaseResult,
    pub strand: StrandMatrix,
    pub oracle: Option<OracleResult>,
    pub det_poly: Option<XPoly>,
    pub certificate: Option<Certificate>,
}

/// `input` as seen from `side`.
pub fn working_input(input: &SurfaceInput, side: Side) -> SurfaceInput {
    match side {
        Side::Uv => input.clone(),
        Side::St => input.mirror(),
    }
}

/// The basepoint check exactly as [`build`] runs it.
pub fn basepoints(input: &SurfaceInput, opts: &Options) -> Result<BasepointStatus> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    basepoint_check(&working_input(input, opts.side), &mut rng)
}

/// Runs analysis and case construction and builds the strand.
pub fn build(input: &SurfaceInput, opts: &Options) -> Result<Implicitization> {
    let work = working_input(input, opts.side);
    let f = work.field;
    let basepoints = basepoints(input, opts)?;
    if !opts.force {
        match &basepoints {
            BasepointStatus::Free => {}
            BasepointStatus::Found { chart, point, .. } => {
                return Err(Error::Hypothesis(format!("basepoint over ({}:{}) in {chart}", point[0], point[1])))
            }
            BasepointStatus::Undetermined { .. } => {
                return Err(Error::Hypothesis("basepoint check undetermined (use force to continue)".into()))
            }
        }
    }
    let analysis = analyze_v(&work, work.b)?;
    let case = run_case(&work, &analysis, opts.convention)?;
    let lifted: Vec<_> = case.syzygies.iter().map(|s| s.pull_back(&analysis.transition, &f)).collect();
    let strand = build_d1_strand(&lifted, work.a, work.b)?;
    Ok(Implicitization {
        input: work,
        basepoints,
        analysis,
        case,
        strand,
        oracle: None,
        det_poly: None,
        certificate: None,
    })
}

/// Full run: build, oracle and certificate.
pub fn implicitize(input: &SurfaceInput, opts: &Options) -> Result<Implicitization> {
    let mut imp = build(input, opts)?;
    let f = imp.input.field;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let cap = 2 * imp.input.a * imp.input.b;
    if opts.oracle || opts.det_mode == DetMode::Eval {
        imp.oracle = Some(implicit_by_elimination(&imp.input, cap, &mut rng)?);
    }
    match opts.det_mode {
        DetMode::Eval => {
            let fx = &imp.oracle.as_ref().unwrap().f_poly;
            imp.certificate = Some(verify_implicitization(&imp.strand, fx, opts.check_points, &f, &mut rng)?);
        }
        DetMode::Interpolate => {
            let det = imp.strand.reconstruct_det(opts.interp_cap, &f, &mut rng)?;
            if let Some(o) = &imp.oracle {
                let (c, d) = exact_power_check(&det, &o.f_poly, &f)?;
                if d * o.degree != imp.strand.size() {
                    return Err(Error::Certificate("d deg F != 2ab".into()));
                }
                imp.certificate = Some(Certificate { c, d, points_checked: 0 });
            }
            imp.det_poly = Some(det);
        }
    }
    Ok(imp)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyReport {
    pub bidegree: [usize; 2],
    pub columns: usize,
    pub entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub name: String,
    pub h: [String; 2],
    pub coefficients: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub name: String,
    pub row_degrees: Vec<usize>,
    pub col_degrees: Vec<usize>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub dim_v: usize,
    pub mu: Vec<usize>,
    pub alpha: Vec<String>,
    pub matrices: Vec<MatrixReport>,
    pub pairs: Vec<PairReport>,
    pub syzygies: Vec<SyzygyReport>,
    pub expected_counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_vector: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReport {
    pub exponents: [u32; 4],
    pub coeff: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationReport {
    pub degree: usize,
    pub equation: String,
    pub terms: Vec<TermReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub a: usize,
    pub b: usize,
    pub prime: u64,
    pub side: Side,
    pub basepoints: BasepointStatus,
    pub analysis: VSummary,
    pub case: CaseReport,
    pub strand_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implicit: Option<EquationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<EquationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

fn equation_report(p: &XPoly, f: &crate::PrimeField) -> EquationReport {
    EquationReport {
        degree: p.total_degree().unwrap_or(0) as usize,
        equation: p.display(f, &X_VARS),
        terms: p.terms().map(|(m, c)| TermReport { exponents: m.0, coeff: c }).collect(),
    }
}

impl Implicitization {
    pub fn report(&self, side: Side) -> Report {
        let f = &self.input.field;
        let (a, b) = (self.input.a, self.input.b);
        let c = &self.case;
        let mut matrices = Vec::new();
        let mut push = |name: String, m: &crate::hburch::GradedSyzMatrix| {
            matrices.push(MatrixReport {
                name,
                row_degrees: m.row_degrees.clone(),
                col_degrees: m.col_degrees.clone(),
                entries: m.display(f),
            })
        };
        if let Some(psi) = &c.psi {
            push("psi".into(), psi);
        }
        for (k, phi) in c.phi.iter().enumerate() {
            push(format!("phi{}", k + 1), phi);
        }
        for ((i, j), g) in &c.gamma {
            push(format!("gamma{i}{j}"), g);
        }
        let uv_str = |u: &crate::bipoly::UniHomPoly| u.to_bipoly(f).to_st_uv_string(f);
        Report {
            a,
            b,
            prime: f.modulus(),
            side,
            basepoints: self.basepoints.clone(),
            analysis: self.analysis.summary(f),
            case: CaseReport {
                dim_v: c.dim_v,
                mu: c.mu.clone(),
                alpha: c.alpha.iter().map(|x| x.to_st_uv_string(f)).collect(),
                matrices,
                pairs: c
                    .pairs
                    .iter()
                    .map(|p| PairReport {
                        name: p.name.clone(),
                        h: [uv_str(&p.h[0]), uv_str(&p.h[1])],
                        coefficients: [p.c[0].to_st_uv_string(f), p.c[1].to_st_uv_string(f)],
                    })
                    .collect(),
                syzygies: c
                    .syzygies
                    .iter()
                    .map(|s| SyzygyReport {
                        bidegree: [s.bidegree.st, s.bidegree.uv],
                        columns: strand_column_count(a, b, s.bidegree),
                        entries: s.display(f),
                    })
                    .collect(),
                expected_counts: c.expected_counts.clone(),
                h_poly: c.h_poly.as_ref().map(|h| h.to_st_uv_string(f)),
                n_vector: c.n_vector.as_ref().map(|v| v.iter().map(|x| x.to_st_uv_string(f)).collect()),
            },
            strand_size: self.strand.size(),
            implicit: self.oracle.as_ref().map(|o| equation_report(&o.f_poly, f)),
            determinant: self.det_poly.as_ref().map(|d| equation_report(d, f)),
            certificate: self.certificate.clone(),
        }
    }

    pub fn nu(&self) -> BiDegree {
        self.strand.nu
    }
}
