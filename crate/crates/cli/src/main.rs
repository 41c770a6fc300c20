use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use umbra::bisector::{export_mesh, manifold_verdict, slices, MeshFormat};
use umbra::body::{builtin, load_body, SymmetricBody, BUILTIN_NAMES};
use umbra::kernel::rational::{format_rational, int, parse_rational};
use umbra::kernel::{Point, Rational};
use umbra::report::{body_report, sphere_report, sweep, sweep_grid, write_atomic};
use umbra::shadow::{decompose, projection_check};
use umbra::spheres::{critical_lambdas, gamma_as_shadow_oracle, gamma_complex, lambda_zero};
use umbra::topology::{classify, manifold_check, CellComplex};
use umbra::verify::{run_suite, SuiteOptions};
use umbra::Error;

#[derive(Parser)]
#[command(name = "umbra", version, about = "Shadow boundaries, parameter spheres and bisectors of symmetric polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a body and print its face counts.
    Body {
        #[command(flatten)]
        src: BodySource,
        #[command(flatten)]
        out: Output,
    },
    /// Decompose the boundary into plus, minus and shadow faces.
    Shadow {
        #[command(flatten)]
        src: BodySource,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[command(flatten)]
        out: Output,
    },
    /// Compute the parameter sphere at one value of lambda.
    Sphere {
        #[command(flatten)]
        src: BodySource,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        out: Output,
    },
    /// Classify parameter spheres over a lambda grid.
    Sweep {
        #[command(flatten)]
        src: BodySource,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        out: Output,
    },
    /// Assemble bisector slices and decide whether the bisector is a manifold.
    Bisector {
        #[command(flatten)]
        src: BodySource,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        out: Output,
    },
    /// Run the property suite on random bodies.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Theorems)]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Theorems,
}

#[derive(Args)]
struct BodySource {
    /// Builtin body, e.g. `octahedron` or `diadic(6)`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    builtin: Option<String>,
    /// Body JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct Range {
    /// Defaults to lambda_0.
    #[arg(long)]
    lambda_min: Option<String>,
    /// Defaults to 4 lambda_0.
    #[arg(long)]
    lambda_max: Option<String>,
    #[arg(long, default_value_t = 12)]
    steps: u32,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Mesh output (OBJ or PLY).
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Mesh format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Obj,
    Ply,
}

enum Failure {
    Violation(String),
    Input(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => Failure::Io(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(src: &BodySource) -> Result<SymmetricBody, Failure> {
    match (&src.builtin, &src.input) {
        (Some(name), _) => Ok(builtin(name, None).map_err(|e| match e {
            Error::UnknownBody(n) => Failure::Input(format!("unknown builtin `{n}`; known: {}", BUILTIN_NAMES.join(", "))),
            other => other.into(),
        })?),
        (None, Some(path)) => Ok(load_body(path)?),
        (None, None) => Err(Failure::Input("one of --builtin or --input is required".into())),
    }
}

fn direction(s: &str) -> Result<Point, Failure> {
    let x = Point::parse_csv(s)?;
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: x.dim() }.into());
    }
    if x.is_zero() {
        return Err(Error::ZeroDirection.into());
    }
    Ok(x)
}

fn lambda_arg(s: Option<&String>, default: Rational) -> Result<Rational, Failure> {
    Ok(match s {
        Some(s) => parse_rational(s)?,
        None => default,
    })
}

fn emit(out: &Output, report: &Value) -> Outcome {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match &out.out {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(())
}

fn mesh(out: &Output, complexes: &[CellComplex]) -> Outcome {
    let Some(path) = &out.mesh else { return Ok(()) };
    let format = match out.format {
        Some(Format::Obj) => MeshFormat::Obj,
        Some(Format::Ply) => MeshFormat::Ply,
        None => MeshFormat::from_path(path)
            .ok_or_else(|| Failure::Input(format!("cannot infer mesh format of {}; pass --format", path.display())))?,
    };
    export_mesh(complexes, format, path)?;
    Ok(())
}

fn check(ok: bool, what: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation(what.into()))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Body { src, out } => {
            let body = load(&src)?;
            emit(&out, &body_report(&body))
        }
        Command::Shadow { src, direction: d, out } => {
            let body = load(&src)?;
            let x = direction(&d)?;
            let dec = decompose(&body, &x)?;
            let projection = projection_check(&dec)?;
            let mut report = dec.to_json();
            report["topology"] = json!(classify(&dec.shadow_complex));
            report["manifold_check"] = json!(manifold_check(&dec.shadow_complex));
            report["projection_check"] = json!(projection);
            emit(&out, &report)?;
            mesh(&out, std::slice::from_ref(&dec.shadow_complex))?;
            check(projection, "projection of the shadow is not the outline")
        }
        Command::Sphere { src, direction: d, lambda, out } => {
            let body = load(&src)?;
            let x = direction(&d)?;
            let lambda = parse_rational(&lambda)?;
            let g = gamma_complex(&body, &x, &lambda)?;
            let mut report = sphere_report(&body, &g);
            let mut lens_ok = true;
            if !g.degenerate {
                let (oracle, half) = gamma_as_shadow_oracle(&body, &x, &lambda)?;
                lens_ok = oracle.shadow_complex.translate(&half) == g.complex;
                report["lens_identity"] = json!(lens_ok);
            }
            emit(&out, &report)?;
            mesh(&out, std::slice::from_ref(&g.complex))?;
            check(lens_ok, "parameter sphere differs from the lens shadow boundary")
        }
        Command::Sweep { src, direction: d, range, out } => {
            let body = load(&src)?;
            let x = direction(&d)?;
            let l0 = lambda_zero(&body, &x)?;
            let lo = lambda_arg(range.lambda_min.as_ref(), l0.clone())?;
            let hi = lambda_arg(range.lambda_max.as_ref(), &l0 * int(4))?;
            let report = sweep(&body, &x, &lo, &hi, range.steps)?;
            emit(&out, &serde_json::to_value(&report).expect("sweep serializes"))
        }
        Command::Bisector { src, direction: d, range, out } => {
            let body = load(&src)?;
            let x = direction(&d)?;
            let l0 = lambda_zero(&body, &x)?;
            let lo = lambda_arg(range.lambda_min.as_ref(), l0.clone())?;
            let hi = lambda_arg(range.lambda_max.as_ref(), &l0 * int(4))?;
            let verdict = manifold_verdict(&body, &x, &hi)?;
            let criticals = critical_lambdas(&body, &x, &hi)?;
            let grid = sweep_grid(&lo, &hi, range.steps, &criticals, &l0);
            let slices = slices(&body, &x, &grid)?;
            let mut report = verdict.to_json();
            report["body"] = json!(body.name);
            report["direction"] = json!(x.to_strings());
            report["lambda_zero"] = json!(format_rational(&l0));
            report["mesh_slices"] = json!(grid.iter().map(format_rational).collect::<Vec<_>>());
            emit(&out, &report)?;
            let complexes: Vec<CellComplex> = slices.into_iter().map(|s| s.scaled_complex).collect();
            mesh(&out, &complexes)
        }
        Command::Verify { suite: Suite::Theorems, count, seed, out } => {
            let report = run_suite(count, seed, SuiteOptions::default())?;
            emit(&out, &serde_json::to_value(&report).expect("suite serializes"))?;
            check(report.passed(), &format!("{} property violations", report.violations.len()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Violation(m) => (1, m),
                Failure::Input(m) => (2, m),
                Failure::Io(m) => (3, m),
            };
            eprintln!("umbra: {msg}");
            ExitCode::from(code)
        }
    }
}
