use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tpsurf::bipoly::BiPoly;
use tpsurf::fixtures::golden_checks;
use tpsurf::gen::{generate_with_retries, validate_instance, GenSpec};
use tpsurf::job::Job;
use tpsurf::oracle::BasepointStatus;
use tpsurf::pipeline::{self, DetMode, Implicitization, Options, Side};
use tpsurf::strand::X_VARS;
use tpsurf::Error;

#[derive(Parser)]
#[command(name = "tpsurf", version, about = "Implicit equations of tensor product surfaces over a prime field")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Syzygy analysis and case construction, without the determinant.
    Analyze(JobArgs),
    /// Full pipeline: strand matrix, implicit equation and certificate.
    Implicitize(ImplicitizeArgs),
    /// Elimination oracle checked against the strand determinant.
    Verify(JobArgs),
    /// Write a random job with a prescribed syzygy profile.
    Generate(GenerateArgs),
    /// Golden checks on the built-in reference inputs.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct JobArgs {
    /// JSON job file.
    job: PathBuf,
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    /// Continue when the basepoint check is not conclusive.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the JSON report on standard output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ImplicitizeArgs {
    #[command(flatten)]
    common: JobArgs,
    #[arg(long, value_enum)]
    det_mode: Option<DetModeArg>,
    /// Also run the elimination oracle in interpolate mode.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    check_points: Option<usize>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    dimv: usize,
    /// Column degree profile: one value for dim V = 3, two for dim V = 4.
    #[arg(long, value_delimiter = ',')]
    mu: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = tpsurf::gen::DEFAULT_RETRIES)]
    retries: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the full pipeline on the result before writing it.
    #[arg(long)]
    validate: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Uv,
    St,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetModeArg {
    Eval,
    Interpolate,
}

/// Failure with its exit code; the message goes to standard error.
struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail { code: e.exit_code() as u8, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail { code: 1, msg: msg.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Fail { code, msg }) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Cmd) -> Result<String, Fail> {
    match cmd {
        Cmd::Analyze(args) => {
            let (job, opts) = load(&args, |_| {})?;
            let imp = build_checked(&job, &opts, args.json)?;
            if args.json {
                return to_json(&imp.report(opts.side));
            }
            Ok(analysis_text(&imp))
        }
        Cmd::Implicitize(args) => {
            let (job, opts) = load(&args.common, |o| {
                if let Some(m) = args.det_mode {
                    o.det_mode = match m {
                        DetModeArg::Eval => DetMode::Eval,
                        DetModeArg::Interpolate => DetMode::Interpolate,
                    };
                }
                o.oracle |= args.oracle;
                if let Some(k) = args.check_points {
                    o.check_points = k;
                }
            })?;
            preflight(&job, &opts, args.common.json)?;
            let imp = pipeline::implicitize(&job.input()?, &opts)?;
            if args.common.json {
                return to_json(&imp.report(opts.side));
            }
            let mut out = analysis_text(&imp);
            out.push_str(&equation_text(&imp));
            Ok(out)
        }
        Cmd::Verify(args) => {
            let (job, opts) = load(&args, |o| o.det_mode = DetMode::Eval)?;
            preflight(&job, &opts, args.json)?;
            let imp = pipeline::implicitize(&job.input()?, &opts)?;
            if args.json {
                return to_json(&imp.report(opts.side));
            }
            let o = imp.oracle.as_ref().expect("eval mode runs the oracle");
            let c = imp.certificate.as_ref().expect("eval mode certifies");
            Ok(format!(
                "deg F = {}\ndeg phi = {}\nstrand = {2}x{2}\ncertificate: {3}/{3} points PASS\n",
                o.degree,
                c.d,
                imp.strand.size(),
                c.points_checked
            ))
        }
        Cmd::Generate(args) => generate(args),
        Cmd::Selftest { json } => {
            let checks = golden_checks()?;
            let ok = checks.iter().all(|c| c.pass);
            let out = if json {
                to_json(&checks)?
            } else {
                let mut s = String::new();
                for c in &checks {
                    let _ = writeln!(s, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
                    if !c.pass {
                        let _ = writeln!(s, "     {}", c.detail);
                    }
                }
                s
            };
            if ok {
                Ok(out)
            } else {
                print!("{out}");
                Err(Fail { code: 3, msg: "selftest failed".into() })
            }
        }
    }
}

fn load(args: &JobArgs, tweak: impl FnOnce(&mut Options)) -> Result<(Job, Options), Fail> {
    let job = read_job(&args.job)?;
    let mut opts = job.options.clone();
    if let Some(s) = args.side {
        opts.side = match s {
            SideArg::Uv => Side::Uv,
            SideArg::St => Side::St,
        };
    }
    opts.force |= args.force;
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    tweak(&mut opts);
    Ok((job, opts))
}

fn read_job(path: &Path) -> Result<Job, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Fail> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Prints the basepoint report and exits 2 when the check does not pass.
fn preflight(job: &Job, opts: &Options, json: bool) -> Result<(), Fail> {
    let status = pipeline::basepoints(&job.input()?, opts)?;
    if status == BasepointStatus::Free || opts.force {
        return Ok(());
    }
    if json {
        print!("{}", to_json(&serde_json::json!({ "basepoints": status }))?);
    } else {
        println!("basepoints: {}", basepoint_text(&status));
    }
    Err(Fail { code: 2, msg: "basepoint hypothesis not satisfied (use --force to continue)".into() })
}

fn build_checked(job: &Job, opts: &Options, json: bool) -> Result<Implicitization, Fail> {
    preflight(job, opts, json)?;
    Ok(pipeline::build(&job.input()?, opts)?)
}

fn basepoint_text(s: &BasepointStatus) -> String {
    match s {
        BasepointStatus::Free => "free".into(),
        BasepointStatus::Found { chart, point, common_factor } if common_factor == "0" => {
            format!("found: every generator vanishes over ({}:{}) in {chart}", point[0], point[1])
        }
        BasepointStatus::Found { chart, point, common_factor } => {
            format!("found over ({}:{}) in {chart}, common factor {common_factor}", point[0], point[1])
        }
        BasepointStatus::Undetermined { g } => format!("undetermined, G = {g}"),
    }
}

fn analysis_text(imp: &Implicitization) -> String {
    let f = &imp.input.field;
    let (a, b) = (imp.input.a, imp.input.b);
    let mut s = String::new();
    let _ = writeln!(s, "bidegree ({a}, {b}) over F_{}", f.modulus());
    let _ = writeln!(s, "basepoints: {}", basepoint_text(&imp.basepoints));
    let _ = writeln!(s, "n = {}", imp.analysis.n);
    let _ = writeln!(s, "dim V = {}", imp.analysis.dim_v);
    let _ = writeln!(s, "case: dim{}", imp.case.dim_v);
    if !imp.case.mu.is_empty() {
        let _ = writeln!(s, "mu = {:?}", imp.case.mu);
    }
    let g: Vec<String> = imp.analysis.g.iter().map(|g| g.to_bipoly(f).to_st_uv_string(f)).collect();
    let _ = writeln!(s, "g = ({})", g.join(", "));
    for (k, a) in imp.case.alpha.iter().enumerate() {
        let _ = writeln!(s, "alpha{} = {}", k + 1, a.to_st_uv_string(f));
    }
    let _ = writeln!(s, "syzygies:");
    for (k, (syz, cols)) in imp.case.syzygies.iter().zip(&imp.case.expected_counts).enumerate() {
        let _ = writeln!(s, "  S{k} bidegree {} -> {cols} columns", syz.bidegree);
        for e in syz.display(f) {
            let _ = writeln!(s, "    {e}");
        }
    }
    let _ = writeln!(s, "strand = {0}x{0}", imp.strand.size());
    s
}

fn equation_text(imp: &Implicitization) -> String {
    let f = &imp.input.field;
    let mut s = String::new();
    if let Some(o) = &imp.oracle {
        let _ = writeln!(s, "deg F = {}", o.degree);
        let _ = writeln!(s, "F = {}", o.f_poly.display(f, &X_VARS));
        coefficient_table(&mut s, &o.f_poly, f);
    }
    if let Some(det) = &imp.det_poly {
        let _ = writeln!(s, "det = {}", det.display(f, &X_VARS));
    }
    if let Some(c) = &imp.certificate {
        let _ = writeln!(s, "deg phi = {}", c.d);
        let _ = writeln!(s, "c = {}", f.to_signed(c.c));
        if c.points_checked > 0 {
            let _ = writeln!(s, "certificate: {0}/{0} points PASS", c.points_checked);
        } else {
            let _ = writeln!(s, "certificate: exact division PASS");
        }
    }
    s
}

fn coefficient_table(s: &mut String, p: &BiPoly, f: &tpsurf::PrimeField) {
    let _ = writeln!(s, "coefficients (x0 x1 x2 x3: c):");
    for (m, c) in p.terms() {
        let e = m.0;
        let _ = writeln!(s, "  {} {} {} {}: {}", e[0], e[1], e[2], e[3], f.to_signed(c));
    }
}

fn generate(args: GenerateArgs) -> Result<String, Fail> {
    let mut spec = GenSpec::new(args.a, args.b, args.n, args.dimv, args.mu, args.seed);
    if let Some(p) = args.prime {
        spec.prime = p;
    }
    let input = generate_with_retries(&spec, args.retries)?;
    if args.validate {
        let rep = validate_instance(&input, &spec, &Options::default());
        if !rep.pass {
            return Err(Fail { code: 3, msg: format!("validation failed: {}", rep.failures.join("; ")) });
        }
        eprintln!("validation: PASS");
    }
    let text = to_json(&Job::from_input(&input, Options::default()))?;
    match args.out {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(text),
    }
}
