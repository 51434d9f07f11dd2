//! Reference inputs and the golden checks run by `tpsurf selftest`.

use crate::error::Result;
use crate::field::PrimeField;
use crate::pipeline::{build, implicitize, Options};
use crate::strand::X_VARS;
use crate::syzygy::SurfaceInput;
use serde::{Deserialize, Serialize};

/// The worked `dim V = 4` example, bidegree (2, 5).
pub const EXAMPLE: [&str; 4] = [
    "-s^2*u^4*v - s^2*v^5",
    "s^2*u^5 - s^2*u^3*v^2 + s^2*u*v^4 - t^2*v^5",
    "-t^2*u^4*v + t^2*u*v^4",
    "s^2*u^5 + t^2*u^5",
];

/// `psi * alpha` for the Hilbert-Burch matrix and multipliers quoted with
/// [`EXAMPLE`]. Those multipliers and syzygies belong to these generators.
pub const EXAMPLE_PSI_ALPHA: [&str; 4] = [
    "-s^2*v^5 - t^2*u^4*v",
    "s^2*u*v^4 + t^2*u^5 - 2*t^2*v^5",
    "-s^2*u^4*v + 2*t^2*u*v^4 - t^2*v^5",
    "s^2*u^5 + t^2*u*v^4",
];

pub const EXAMPLE_ALPHA: [&str; 3] = ["s^2*v^4 + t^2*u^4", "2*t^2*v^4", "s^2*u^4 + t^2*v^4"];

pub const EXAMPLE_SYZYGIES: [[&str; 4]; 3] = [
    ["-2*t^2*u^2*v + t^2*u*v^2", "-2*t^2*u*v^2 + t^2*v^3", "-s^2*u^3 - 2*t^2*v^3", "-s^2*u^2*v"],
    ["s^2*u^2*v - t^2*v^3", "s^2*u^3 + s^2*u*v^2", "s^2*u^2*v + s^2*v^3", "s^2*u*v^2 - t^2*u^3"],
    ["-s^2*u*v^2 + 2*t^2*v^3", "-s^2*v^3", "t^2*u^3", "t^2*u^2*v"],
];

/// Parameterization of the quadric `x0 x3 = x1 x2`.
pub const SEGRE: [&str; 4] = ["s*u", "s*v", "t*u", "t*v"];

pub fn example() -> SurfaceInput {
    SurfaceInput::parse(PrimeField::default(), 2, 5, &EXAMPLE).expect("fixture parses")
}

pub fn example_psi_alpha() -> SurfaceInput {
    SurfaceInput::parse(PrimeField::default(), 2, 5, &EXAMPLE_PSI_ALPHA).expect("fixture parses")
}

pub fn segre() -> SurfaceInput {
    SurfaceInput::parse(PrimeField::default(), 1, 1, &SEGRE).expect("fixture parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, got: String, want: String) -> GoldenCheck {
    GoldenCheck { name: name.into(), pass: got == want, detail: format!("got {got}, expected {want}") }
}

/// Runs the reference inputs through the full pipeline.
pub fn golden_checks() -> Result<Vec<GoldenCheck>> {
    let opts = Options::default();
    let mut out = Vec::new();

    let imp = implicitize(&example(), &opts)?;
    let f = imp.input.field;
    let oracle = imp.oracle.as_ref().expect("eval mode runs the oracle");
    let cert = imp.certificate.as_ref().expect("eval mode certifies");
    out.push(check("example: n, dim V", format!("{:?}", (imp.analysis.n, imp.analysis.dim_v)), "(3, 4)".into()));
    out.push(check("example: mu", format!("{:?}", imp.case.mu), "[1, 1]".into()));
    out.push(check("example: strand size", imp.strand.size().to_string(), "20".into()));
    out.push(check("example: deg F", oracle.degree.to_string(), "10".into()));
    out.push(check("example: exponent d", cert.d.to_string(), "2".into()));
    out.push(check("example: points checked", (cert.points_checked >= 40).to_string(), "true".into()));

    let imp = build(&example_psi_alpha(), &opts)?;
    let alpha: Vec<String> = imp.case.alpha.iter().map(|a| a.to_st_uv_string(&f)).collect();
    out.push(check("psi alpha: alpha", format!("{alpha:?}"), format!("{EXAMPLE_ALPHA:?}")));
    for (k, want) in EXAMPLE_SYZYGIES.iter().enumerate() {
        let got = imp.case.syzygies[k + 1].display(&f);
        out.push(check(&format!("psi alpha: S{}", k + 1), format!("{got:?}"), format!("{want:?}")));
    }

    let imp = implicitize(&segre(), &opts)?;
    let oracle = imp.oracle.as_ref().expect("eval mode runs the oracle");
    out.push(check("segre: F", oracle.f_poly.display(&f, &X_VARS), "x0*x3 - x1*x2".into()));
    out.push(check("segre: d", imp.certificate.as_ref().map_or(0, |c| c.d).to_string(), "1".into()));
    let g: Vec<String> = imp.analysis.g.iter().map(|g| g.to_bipoly(&f).to_st_uv_string(&f)).collect();
    out.push(check("segre: g", format!("{g:?}"), "[\"u\", \"v\"]".into()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    #[test]
    fn golden_suite_passes() {
        for c in super::golden_checks().unwrap() {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
