mod document;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use document::{ProblemDoc, SolutionDocument};
use willmore::dirichlet::enumerate_dirichlet;
use willmore::elliptic::{constants, m_k};
use willmore::navier::{default_k_max, enumerate, minimizer, solve_branch, solve_symmetric_catalog};
use willmore::oracle::{verify_solution, ProblemRef, Tolerances};
use willmore::{BranchSpec, DirichletProblem, NavierProblem, Point, Sign, Solution};

const EXIT_VERIFY: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_EMPTY: u8 = 3;

/// Residuals recomputed by `verify` must match the stored ones to this absolute tolerance.
const REPRODUCE_TOL: f64 = 1e-12;

#[derive(Parser)]
#[command(name = "willmore", version, about = "Planar Willmore curves with Navier or Dirichlet boundary data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print T, C and the peaks M_0..M_K.
    Constants {
        #[arg(long, default_value_t = 4)]
        kmax: u32,
    },
    /// Solve a boundary value problem and print a solution document.
    #[command(subcommand)]
    Solve(Solve),
    /// Sample one solution of a document.
    Sample(SampleArgs),
    /// Recompute residuals for every solution of a document.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Uniform tolerance for endpoint, curvature and angle residuals.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Args, Clone, Copy)]
#[command(allow_negative_numbers = true)]
struct Endpoints {
    #[arg(long)]
    ax: f64,
    #[arg(long)]
    ay: f64,
    #[arg(long)]
    bx: f64,
    #[arg(long)]
    by: f64,
}

impl Endpoints {
    fn points(&self) -> (Point, Point) {
        (Point::new(self.ax, self.ay), Point::new(self.bx, self.by))
    }
}

#[derive(Subcommand)]
enum Solve {
    /// General Navier data: one branch, or every branch up to --jmax.
    #[command(allow_negative_numbers = true)]
    Navier {
        #[command(flatten)]
        ends: Endpoints,
        #[arg(long)]
        k1: f64,
        #[arg(long)]
        k2: f64,
        #[arg(long, requires_all = ["sigma2", "j"], conflicts_with = "enumerate")]
        sigma1: Option<i8>,
        #[arg(long, requires_all = ["sigma1", "j"])]
        sigma2: Option<i8>,
        #[arg(long, requires_all = ["sigma1", "sigma2"])]
        j: Option<u32>,
        #[arg(long, requires = "jmax")]
        enumerate: bool,
        #[arg(long, requires = "enumerate")]
        jmax: Option<u32>,
    },
    /// Symmetric Navier data κ₁ = κ₂ = κ.
    #[command(allow_negative_numbers = true)]
    NavierSymmetric {
        #[command(flatten)]
        ends: Endpoints,
        #[arg(long)]
        kappa: f64,
        #[arg(long, conflicts_with = "minimizer")]
        catalog: bool,
        #[arg(long)]
        minimizer: bool,
        /// Last family F_k listed by --catalog.
        #[arg(long, conflicts_with = "minimizer")]
        kmax: Option<u32>,
    },
    /// Dirichlet data: end tangent angles in radians.
    #[command(allow_negative_numbers = true)]
    Dirichlet {
        #[command(flatten)]
        ends: Endpoints,
        #[arg(long)]
        theta1: f64,
        #[arg(long)]
        theta2: f64,
        #[arg(long)]
        jmax: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    index: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Self { code: EXIT_INVALID, message: message.to_string() }
    }
}

impl From<willmore::Error> for Failure {
    fn from(e: willmore::Error) -> Self {
        let code = match e {
            willmore::Error::Inconsistent(_) => EXIT_VERIFY,
            _ => EXIT_INVALID,
        };
        Self { code, message: e.to_string() }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Constants { kmax } => cmd_constants(kmax),
        Command::Solve(solve) => cmd_solve(solve),
        Command::Sample(args) => cmd_sample(&args),
        Command::Verify { input, tol } => cmd_verify(&input, tol),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure { code: EXIT_VERIFY, message: e.to_string() })?;
    println!("{text}");
    Ok(())
}

fn cmd_constants(kmax: u32) -> CmdResult {
    let k = constants::<f64>();
    let mut doc = serde_json::Map::new();
    doc.insert("T".into(), k.period.into());
    doc.insert("C".into(), k.c.into());
    doc.insert("two_C".into(), (2.0 * k.c).into());
    for i in 0..=kmax {
        doc.insert(format!("M{i}"), m_k::<f64>(i).0.into());
    }
    print_json(&doc)?;
    Ok(0)
}

fn sign_arg(v: i8, name: &str) -> Result<Sign, Failure> {
    Sign::try_from(v).map_err(|_| Failure::invalid(format!("--{name} must be -1 or 1, got {v}")))
}

/// Attaches residuals; returns whether all of them pass.
fn attach_residuals(problem: ProblemRef<'_>, solutions: &mut [Solution], tol: &Tolerances) -> bool {
    let mut ok = true;
    for s in solutions.iter_mut() {
        let r = verify_solution(problem, s, tol);
        ok &= r.pass;
        s.residuals = Some(r);
    }
    ok
}

fn finish(doc: &SolutionDocument, verified: bool) -> CmdResult {
    print_json(doc)?;
    if !verified {
        eprintln!("error: at least one solution failed verification");
        return Ok(EXIT_VERIFY);
    }
    if doc.solutions.is_empty() {
        eprintln!("no solutions");
        return Ok(EXIT_EMPTY);
    }
    Ok(0)
}

fn cmd_solve(solve: Solve) -> CmdResult {
    let tol = Tolerances::default();
    match solve {
        Solve::Navier { ends, k1, k2, sigma1, sigma2, j, enumerate: all, jmax } => {
            let (a, b) = ends.points();
            let problem = NavierProblem::new(a, b, k1, k2)?;
            let mut solutions = match (all, sigma1, sigma2, j) {
                (true, ..) => enumerate(&problem, jmax.unwrap_or(0))?,
                (false, Some(s1), Some(s2), Some(j)) => {
                    solve_branch(&problem, BranchSpec::new(sign_arg(s1, "sigma1")?, sign_arg(s2, "sigma2")?, j))?
                }
                _ => return Err(Failure::invalid("give either --sigma1 --sigma2 --j or --enumerate --jmax")),
            };
            let ok = attach_residuals(ProblemRef::Navier(&problem), &mut solutions, &tol);
            finish(&SolutionDocument::new(ProblemDoc::Navier(problem), &solutions), ok)
        }
        Solve::NavierSymmetric { ends, kappa, catalog: _, minimizer: min, kmax } => {
            let (a, b) = ends.points();
            let problem = NavierProblem::symmetric(a, b, kappa)?;
            if min {
                let mut solutions = vec![minimizer(a, b, kappa)?];
                let ok = attach_residuals(ProblemRef::Navier(&problem), &mut solutions, &tol);
                return finish(&SolutionDocument::new(ProblemDoc::Navier(problem), &solutions), ok);
            }
            let k_max = kmax.unwrap_or_else(|| default_k_max(kappa, problem.distance()));
            let mut solutions = solve_symmetric_catalog(a, b, kappa, Some(k_max))?;
            let ok = attach_residuals(ProblemRef::Navier(&problem), &mut solutions, &tol);
            let mut doc = SolutionDocument::new(ProblemDoc::Navier(problem), &solutions);
            let empty = (0..=k_max)
                .filter(|&k| !solutions.iter().any(|s| s.class_label.map(|l| l.k) == Some(k)))
                .collect();
            doc.empty_classes = Some(empty);
            finish(&doc, ok)
        }
        Solve::Dirichlet { ends, theta1, theta2, jmax } => {
            let (a, b) = ends.points();
            let problem = DirichletProblem::new(a, b, theta1, theta2)?;
            let mut solutions = enumerate_dirichlet(&problem, jmax)?;
            let ok = attach_residuals(ProblemRef::Dirichlet(&problem), &mut solutions, &tol);
            finish(&SolutionDocument::new(ProblemDoc::Dirichlet(problem), &solutions), ok)
        }
    }
}

fn read_document(path: &Path) -> Result<SolutionDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    let doc: SolutionDocument =
        serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    if doc.schema_version != document::SCHEMA_VERSION {
        return Err(Failure::invalid(format!("unsupported schema_version {:?}", doc.schema_version)));
    }
    Ok(doc)
}

fn cmd_sample(args: &SampleArgs) -> CmdResult {
    let doc = read_document(&args.input)?;
    let record = doc.solutions.get(args.index).ok_or_else(|| {
        Failure::invalid(format!("index {} out of range ({} solutions)", args.index, doc.solutions.len()))
    })?;
    let solution = record.to_solution()?;
    let points = solution.params.sample(args.n)?;
    let text = match args.format {
        Format::Csv => render::csv(&points),
        Format::Svg => render::svg(&points),
        Format::Json => render::json(&points).map_err(Failure::invalid)?,
    };
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn reproduces(old: &willmore::ResidualReport, new: &willmore::ResidualReport) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= REPRODUCE_TOL || (x.is_nan() && y.is_nan());
    let pair = |x: Option<(f64, f64)>, y: Option<(f64, f64)>| match (x, y) {
        (Some(x), Some(y)) => close(x.0, y.0) && close(x.1, y.1),
        (None, None) => true,
        _ => false,
    };
    close(old.endpoint_residual, new.endpoint_residual)
        && close(old.ode_defect, new.ode_defect)
        && pair(old.curvature_residuals, new.curvature_residuals)
        && pair(old.angle_residuals, new.angle_residuals)
}

fn cmd_verify(input: &Path, tol: Option<f64>) -> CmdResult {
    let mut doc = read_document(input)?;
    let tol = tol.map_or_else(Tolerances::default, Tolerances::uniform);
    let mut ok = true;
    for (i, record) in doc.solutions.iter_mut().enumerate() {
        let solution = record.to_solution()?;
        let problem = match &doc.problem {
            ProblemDoc::Navier(p) => ProblemRef::Navier(p),
            ProblemDoc::Dirichlet(p) => ProblemRef::Dirichlet(p),
        };
        let report = verify_solution(problem, &solution, &tol);
        if !report.pass {
            eprintln!("solution {i}: verification failed: {report:?}");
            ok = false;
        }
        if let Some(old) = &record.residuals {
            if !reproduces(old, &report) {
                eprintln!("solution {i}: stored residuals not reproduced");
                ok = false;
            }
        }
        record.residuals = Some(report);
    }
    print_json(&doc)?;
    Ok(if ok { 0 } else { EXIT_VERIFY })
}
