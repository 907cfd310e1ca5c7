//! `skewgen`: generic eigenstructures, analysis, sampling, linearization,
//! codimensions and orbit closures of skew-symmetric matrix polynomials.
//!
//! Exit codes: 0 success, 1 validation, 2 inconclusive closure search,
//! 3 numeric failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use skewgen::canonical::{assemble_skew, BlockList};
use skewgen::codimension::{
    codim_blocksum, codim_pencil_closed, codim_poly_generic, codim_tangent, CodimMethod,
    CodimReport, CodimSpace,
};
use skewgen::degeneration::{closure_reachable, ClosureOptions, ClosureVerdict};
use skewgen::eigenstructure::{analyze, CompleteEigenstructure};
use skewgen::genericity::{
    format_minimal_indices, generic_pencil_structure, generic_poly_structure, minimal_index_table,
};
use skewgen::io::PolynomialFile;
use skewgen::linearization::{build_linearization, pad_grade};
use skewgen::sampling::numeric::{analyze_fp, FloatPolynomialMatrix, DEFAULT_TOL};
use skewgen::sampling::{monte_carlo_genericity, sample_bounded_rank, SampleSpec, DEFAULT_RANGE};
use skewgen::Error;

#[derive(Parser)]
#[command(
    name = "skewgen",
    version,
    about = "Generic eigenstructures of bounded-rank skew-symmetric matrix polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generic structure of m×m polynomials of grade d and rank ≤ 2r (2r ≤ m-1),
    /// or of n×n pencils of rank ≤ 2w with --pencil.
    Generic(GenericArgs),
    /// Complete eigenstructure of a polynomial file.
    Analyze(AnalyzeArgs),
    /// Random integer polynomial of rank exactly 2r.
    Sample(SampleArgs),
    /// Monte Carlo check that random samples have the generic structure.
    Mc(McArgs),
    /// Skew-symmetric strong linearization of an odd-grade polynomial file.
    Linearize(LinearizeArgs),
    /// Codimension of a generic orbit.
    Codim(CodimArgs),
    /// Search for a rule sequence degenerating the target into the source.
    Closure(ClosureArgs),
}

#[derive(Args)]
struct GenericArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Pencil variant, with --n --w --r.
    #[arg(long)]
    pencil: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    /// Table of left minimal indices for sizes up to --max-m at grade --d (default 2).
    #[arg(long)]
    table: bool,
    #[arg(long, default_value_t = 7)]
    max_m: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Grade to analyze at; defaults to the grade stored in the file.
    #[arg(long)]
    grade: Option<usize>,
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
    /// Relative rank tolerance of the float backend.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct SampleParams {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Entries of the factors are drawn from [-range, range].
    #[arg(long, default_value_t = DEFAULT_RANGE)]
    range: i64,
}

impl SampleParams {
    fn spec(&self) -> skewgen::Result<SampleSpec> {
        SampleSpec::new(self.m, self.d, self.r, self.range, self.seed)
    }
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    params: SampleParams,
    /// Write the polynomial file here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    params: SampleParams,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Args)]
struct LinearizeArgs {
    file: PathBuf,
    /// Raise the grade by one first; required for even grades.
    #[arg(long)]
    pad: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CodimArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    pencil: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    /// Compute from the exact rank of the tangent map at a representative.
    #[arg(long)]
    via_tangent: bool,
    /// Largest pencil size accepted by --via-tangent.
    #[arg(long, default_value_t = skewgen::codimension::DEFAULT_TANGENT_LIMIT)]
    limit: usize,
    /// Seed of the representative sample for polynomial --via-tangent.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClosureArgs {
    /// Block list JSON of the orbit whose closure is searched.
    #[arg(long)]
    target: PathBuf,
    /// Block list JSON of the orbit to reach.
    #[arg(long)]
    source: PathBuf,
    #[arg(long)]
    max_steps: Option<usize>,
    /// Apply single rules even to skew-realizable lists.
    #[arg(long)]
    unpaired: bool,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RankVerificationFailed(_) | Error::AttemptsExhausted(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn validation(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CliResult = Result<ExitCode, Failure>;

fn required(v: Option<usize>, flag: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| validation(format!("--{flag} is required")))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn read_polynomial(path: &Path) -> Result<PolynomialFile, Failure> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn read_blocks(path: &Path) -> Result<BlockList, Failure> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| validation(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn joined(v: &[usize]) -> String {
    if v.is_empty() {
        return "none".to_string();
    }
    format_minimal_indices(v)
        .trim_matches(|c| c == '{' || c == '}')
        .to_string()
}

fn describe(e: &CompleteEigenstructure) -> String {
    let finite = if e.finite.is_empty() {
        "none".to_string()
    } else {
        format!("{} classes", e.finite.len())
    };
    let infinite: Vec<usize> = e.infinite.iter().copied().filter(|&g| g > 0).collect();
    [
        format!("rank: {}", e.rank),
        format!("finite elementary divisors: {finite}"),
        format!("infinite elementary divisors: {}", joined(&infinite)),
        format!("left minimal indices: {}", joined(&e.left_minimal)),
        format!("right minimal indices: {}", joined(&e.right_minimal)),
    ]
    .join("\n")
}

fn cmd_generic(a: GenericArgs) -> CliResult {
    if a.table {
        let d = a.d.unwrap_or(2);
        let rows = minimal_index_table(d, 3..=a.max_m);
        if a.json {
            println!("{}", to_json(&rows));
            return Ok(ExitCode::SUCCESS);
        }
        let ranks = rows.first().map_or(0, |r| r.1.len());
        let header: Vec<String> = (1..=ranks).map(|i| format!("rank ≤ {}", 2 * i)).collect();
        println!("m\t{}", header.join("\t"));
        for (m, cells) in rows {
            let cells: Vec<String> = cells
                .into_iter()
                .map(|c| c.unwrap_or_else(|| "-".to_string()))
                .collect();
            println!("{m}\t{}", cells.join("\t"));
        }
        return Ok(ExitCode::SUCCESS);
    }
    if a.pencil {
        let (n, w, r) = (
            required(a.n, "n")?,
            required(a.w, "w")?,
            required(a.r, "r")?,
        );
        let list = generic_pencil_structure(n, w, r)?;
        println!(
            "{}",
            if a.json {
                to_json(&list)
            } else {
                list.to_string()
            }
        );
        return Ok(ExitCode::SUCCESS);
    }
    let (m, d, r) = (
        required(a.m, "m")?,
        required(a.d, "d")?,
        required(a.r, "r")?,
    );
    let e = generic_poly_structure(m, d, r)?;
    if a.json {
        println!("{}", to_json(&e));
    } else {
        println!(
            "generic {m}×{m} skew-symmetric polynomials of grade {d} and rank ≤ {}",
            2 * r
        );
        println!("{}", describe(&e));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(a: AnalyzeArgs) -> CliResult {
    let p = read_polynomial(&a.file)?.to_skew()?;
    let grade = a.grade.unwrap_or(p.grade());
    let p = p.with_grade(grade)?;
    match a.backend {
        Backend::Exact => println!("{}", to_json(&analyze(&p, grade)?)),
        Backend::Float => {
            let f = FloatPolynomialMatrix::from_exact(p.as_matrix());
            let e = analyze_fp(&f, grade, a.tol).ok_or_else(|| Failure {
                code: 3,
                message: format!("inconsistent ranks at tolerance {}", a.tol),
            })?;
            println!("{}", to_json(&e));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sample(a: SampleArgs) -> CliResult {
    let s = sample_bounded_rank(&a.params.spec()?)?;
    eprintln!("resamples: {}", s.resamples);
    emit(
        &to_json(&PolynomialFile::from_polynomial(s.polynomial.as_matrix())),
        a.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_mc(a: McArgs) -> CliResult {
    let report = monte_carlo_genericity(&a.params.spec()?, a.trials)?;
    eprintln!("elapsed: {:.3}s", report.elapsed);
    println!("{}", to_json(&report));
    Ok(ExitCode::SUCCESS)
}

fn cmd_linearize(a: LinearizeArgs) -> CliResult {
    let mut p = read_polynomial(&a.file)?.to_skew()?;
    if a.pad {
        p = pad_grade(&p);
    }
    let f = build_linearization(&p)?;
    emit(
        &to_json(&PolynomialFile::from_polynomial(f.pencil.as_matrix())),
        a.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_codim(a: CodimArgs) -> CliResult {
    let report = if a.pencil {
        let (n, w, r) = (
            required(a.n, "n")?,
            required(a.w, "w")?,
            required(a.r, "r")?,
        );
        let space = CodimSpace::PenSkew { n };
        if a.via_tangent {
            let p = assemble_skew(&generic_pencil_structure(n, w, r)?)?;
            CodimReport {
                space,
                value: codim_tangent(&p, a.limit)?,
                method: CodimMethod::TangentRank,
            }
        } else {
            let value = codim_pencil_closed(n, w, r)?;
            let blocksum = codim_blocksum(&generic_pencil_structure(n, w, r)?)?;
            if blocksum != value {
                return Err(Error::InternalInconsistency(format!(
                    "closed form {value}, block sum {blocksum}"
                ))
                .into());
            }
            CodimReport {
                space,
                value,
                method: CodimMethod::ClosedForm,
            }
        }
    } else {
        let (m, d, r) = (
            required(a.m, "m")?,
            required(a.d, "d")?,
            required(a.r, "r")?,
        );
        let space = CodimSpace::Pol { m, d };
        if a.via_tangent {
            // pencil codimension of the padded linearization, less the
            // dimension gap between the pencil and linearization spaces
            if d % 2 != 0 {
                return Err(validation(
                    "--via-tangent for polynomials needs an even grade",
                ));
            }
            codim_poly_generic(m, d, r)?;
            let sample = sample_bounded_rank(&SampleSpec::new(m, d, r, DEFAULT_RANGE, a.seed)?)?;
            let f = build_linearization(&pad_grade(&sample.polynomial))?;
            let value = codim_tangent(&f.pencil, a.limit)? - m * (m - 1) / 2;
            CodimReport {
                space,
                value,
                method: CodimMethod::TangentRank,
            }
        } else {
            CodimReport {
                space,
                value: codim_poly_generic(m, d, r)?.cod_pol,
                method: CodimMethod::ClosedForm,
            }
        }
    };
    println!(
        "{}",
        if a.json {
            to_json(&report)
        } else {
            report.to_string()
        }
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_closure(a: ClosureArgs) -> CliResult {
    let target = read_blocks(&a.target)?;
    let source = read_blocks(&a.source)?;
    let options = ClosureOptions {
        max_steps: a.max_steps,
        paired: a.unpaired.then_some(false),
        ..Default::default()
    };
    let verdict = closure_reachable(&target, &source, &options)?;
    println!("{}", to_json(&verdict));
    Ok(match verdict {
        ClosureVerdict::Yes { .. } => ExitCode::SUCCESS,
        ClosureVerdict::NoWithinBound { .. } => ExitCode::from(2),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generic(a) => cmd_generic(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Mc(a) => cmd_mc(a),
        Command::Linearize(a) => cmd_linearize(a),
        Command::Codim(a) => cmd_codim(a),
        Command::Closure(a) => cmd_closure(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
